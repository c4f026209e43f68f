use super::central::CentralExtension;
use super::ExtensionError;
use crate::algebra::AugmentedRack;
use crate::error::{AlgebraError, StructuralError};

/// A union of conjugacy classes of a central extension, as an augmented rack
/// over the base group acting through the section `s(g) = (g, 0)`.
#[derive(Debug, Clone)]
pub struct LiftedRack {
    /// Total-group elements, sorted; rack element `i` is `elements[i]`.
    pub elements: Vec<usize>,
    pub rack: AugmentedRack,
}

/// Lifts the union of the total-group conjugacy classes of `reps`.
pub fn conjugacy_lift(ext: &CentralExtension, reps: &[usize]) -> Result<LiftedRack, ExtensionError> {
    let t = ext.total();
    let mut elements: Vec<usize> = reps
        .iter()
        .flat_map(|&r| t.conjugacy_class(r))
        .collect();
    elements.sort_unstable();
    elements.dedup();
    conjugacy_lift_set(ext, &elements)
}

/// Lifts an explicit subset of the total group, rejecting sets that are not
/// closed under conjugation.
pub fn conjugacy_lift_set(
    ext: &CentralExtension,
    elements: &[usize],
) -> Result<LiftedRack, ExtensionError> {
    let t = ext.total();
    let mut elements = elements.to_vec();
    elements.sort_unstable();
    elements.dedup();
    if elements.is_empty() {
        return Err(AlgebraError::from(StructuralError::Empty("lifted set".into())).into());
    }
    for &p in &elements {
        if p >= t.order() {
            return Err(AlgebraError::from(StructuralError::OutOfRange {
                what: "lifted set".into(),
                position: p.to_string(),
                value: p,
                bound: t.order(),
            })
            .into());
        }
        for c in t.elements() {
            if elements.binary_search(&t.conj(p, c)).is_err() {
                return Err(AlgebraError::NotConjugationClosed { element: p, by: c }.into());
            }
        }
    }
    let pos = |p: usize| elements.binary_search(&p).expect("closed");
    let base = ext.base();
    let action = elements
        .iter()
        .map(|&p| base.elements().map(|g| pos(t.conj(p, ext.section(g)))).collect())
        .collect();
    let nu = elements.iter().map(|&p| ext.projection(p)).collect();
    let rack = AugmentedRack::new(base.clone(), action, nu, None)?;
    let rho: Option<Vec<usize>> = elements
        .iter()
        .map(|&p| elements.binary_search(&t.inv(p)).ok())
        .collect();
    let rack = match rho {
        Some(r) => rack.with_rho(r).unwrap_or(rack),
        None => rack,
    };
    Ok(LiftedRack { elements, rack })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{CoeffGroup, FiniteGroup};
    use crate::algebra::fixtures;
    use crate::cohomology::{cocycle_space, Cochain2, Flavor};
    use crate::extensions::build_central_extension;

    #[test]
    fn z4_lifts_of_generator() {
        let g = FiniteGroup::cyclic(2);
        let a = CoeffGroup::cyclic(2);
        let ext = build_central_extension(&g, &a, &Cochain2::indicator(2, 1, 1, 1)).unwrap();
        let lift = conjugacy_lift(&ext, &[ext.index(1, 0), ext.index(1, 1)]).unwrap();
        assert_eq!(lift.elements, vec![ext.index(1, 0), ext.index(1, 1)]);
        assert_eq!(lift.rack.size(), 2);
        assert_eq!(lift.rack.group().order(), 2);
    }

    #[test]
    fn product_lift_doubles() {
        let g = FiniteGroup::symmetric(3);
        let a = CoeffGroup::cyclic(2);
        let ext = build_central_extension(&g, &a, &Cochain2::zero(6)).unwrap();
        let lift = conjugacy_lift(&ext, &[ext.index(1, 0), ext.index(1, 1)]).unwrap();
        assert_eq!(lift.rack.size(), 6);
    }

    #[test]
    fn s3_transposition_lifts_project_onto_class() {
        let x = fixtures::q5();
        let a = CoeffGroup::cyclic(2);
        let g = x.group();
        let transpositions = g.conjugacy_class(1);
        for v in cocycle_space(Flavor::GN, &x, &a).members() {
            let ext = build_central_extension(g, &a, v.eta()).unwrap();
            let lift = conjugacy_lift(&ext, &[ext.index(1, 0)]).unwrap();
            let mut image: Vec<usize> = lift.elements.iter().map(|&p| ext.projection(p)).collect();
            image.sort_unstable();
            image.dedup();
            assert_eq!(image, transpositions);
        }
    }

    #[test]
    fn rejects_non_closed_set() {
        let g = FiniteGroup::symmetric(3);
        let a = CoeffGroup::cyclic(2);
        let ext = build_central_extension(&g, &a, &Cochain2::zero(6)).unwrap();
        assert!(conjugacy_lift_set(&ext, &[ext.index(1, 0)]).is_err());
    }
}
