use super::{check_size, pair_index, split_index, ExtensionError};
use crate::algebra::{AugmentedRack, Coeff, CoeffGroup, FiniteGroup};
use crate::cohomology::{additive, fibrant, phi_hat, Cochain2, PhiHat};

/// `X × A` over the subgroup `H` generated by the image of ν, acting by
/// `(x,a)·h = (x·h, a + φ̂(x,h))`.
///
/// When `H` is a proper subgroup the total is an augmented rack over `H`
/// (elements re-indexed by position in [`GRackExtension::acting_subgroup`]).
#[derive(Debug, Clone)]
pub struct GRackExtension {
    base: AugmentedRack,
    coeff: CoeffGroup,
    cocycle: Cochain2,
    subgroup: Vec<usize>,
    total: AugmentedRack,
}

/// Checks the fibrant-additive hypotheses and returns the telescoped table.
pub(crate) fn telescoped(
    x: &AugmentedRack,
    a: &CoeffGroup,
    phi: &Cochain2,
) -> Result<PhiHat, ExtensionError> {
    check_size(x.size(), phi.size())?;
    fibrant(x, phi).map_err(ExtensionError::Hypothesis)?;
    additive(x, a, phi).map_err(ExtensionError::Hypothesis)?;
    phi_hat(x, a, phi).map_err(ExtensionError::Hypothesis)
}

/// Action table of `X × A` by the subgroup, whose elements are listed in
/// `subgroup` and identified by position.
pub(crate) fn total_action(
    x: &AugmentedRack,
    a: &CoeffGroup,
    hat: &PhiHat,
    subgroup: &[usize],
    coeff_columns: usize,
    column_element: impl Fn(usize) -> usize,
) -> Vec<Vec<usize>> {
    let m = a.size();
    let cols = subgroup.len() * coeff_columns;
    (0..x.size() * m)
        .map(|i| {
            let (p, s) = split_index(i, m);
            (0..cols)
                .map(|c| {
                    let h = column_element(c);
                    let v = hat.get(p, h).expect("element of the acting subgroup");
                    pair_index(x.act(p, h), a.add(s as Coeff, v) as usize, m)
                })
                .collect()
        })
        .collect()
}

pub fn build_g_rack_extension(
    x: &AugmentedRack,
    a: &CoeffGroup,
    phi: &Cochain2,
) -> Result<GRackExtension, ExtensionError> {
    let hat = telescoped(x, a, phi)?;
    let subgroup = x.image_subgroup();
    let h: FiniteGroup = x.group().restrict(&subgroup);
    let pos = |g: usize| subgroup.binary_search(&g).expect("in subgroup");
    let action = total_action(x, a, &hat, &subgroup, 1, |c| subgroup[c]);
    let m = a.size();
    let nu = (0..x.size() * m).map(|i| pos(x.nu(i / m))).collect();
    let total = AugmentedRack::new(h, action, nu, None)?;
    Ok(GRackExtension {
        base: x.clone(),
        coeff: a.clone(),
        cocycle: phi.clone(),
        subgroup,
        total,
    })
}

impl GRackExtension {
    pub fn base(&self) -> &AugmentedRack {
        &self.base
    }

    pub fn coeff(&self) -> &CoeffGroup {
        &self.coeff
    }

    pub fn cocycle(&self) -> &Cochain2 {
        &self.cocycle
    }

    pub fn total(&self) -> &AugmentedRack {
        &self.total
    }

    /// Base group elements acting on the total, sorted; position `i` is
    /// element `i` of the total's group.
    pub fn acting_subgroup(&self) -> &[usize] {
        &self.subgroup
    }

    /// True when the image of ν does not generate the whole group.
    pub fn acts_through_subgroup(&self) -> bool {
        self.subgroup.len() != self.base.group().order()
    }

    pub fn index(&self, x: usize, a: Coeff) -> usize {
        pair_index(x, a as usize, self.coeff.size())
    }

    pub fn split(&self, i: usize) -> (usize, Coeff) {
        let (x, a) = split_index(i, self.coeff.size());
        (x, a as Coeff)
    }

    pub fn projection(&self, i: usize) -> usize {
        self.split(i).0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::fixtures;
    use crate::cohomology::{cocycle_space, Flavor};

    #[test]
    fn zero_cocycle_is_product() {
        let x = fixtures::r3s3();
        let a = CoeffGroup::cyclic(2);
        let ext = build_g_rack_extension(&x, &a, &Cochain2::zero(3)).unwrap();
        let t = ext.total();
        assert_eq!(t.size(), 6);
        for i in 0..6 {
            for g in 0..6 {
                let (p, s) = ext.split(i);
                assert_eq!(ext.split(t.act(i, g)), (x.act(p, g), s));
            }
        }
    }

    #[test]
    fn c2_all_ones() {
        let x = fixtures::c2();
        let a = CoeffGroup::cyclic(2);
        let phi = Cochain2::from_values(2, vec![1; 4]);
        let ext = build_g_rack_extension(&x, &a, &phi).unwrap();
        assert_eq!(ext.total().size(), 4);
        assert!(!ext.acts_through_subgroup());
    }

    #[test]
    fn derived_operation_is_the_rack_extension() {
        let x = fixtures::r3s3();
        let a = CoeffGroup::cyclic(2);
        for m in cocycle_space(Flavor::RFPlus, &x, &a).members() {
            let phi = m.phi();
            let ext = build_g_rack_extension(&x, &a, phi).unwrap();
            let t = ext.total();
            for i in 0..t.size() {
                for j in 0..t.size() {
                    let (p, s) = ext.split(i);
                    let (q, _) = ext.split(j);
                    let want = ext.index(x.op(p, q), a.add(s, phi.get(p, q)));
                    assert_eq!(t.op(i, j), want);
                    assert_eq!(ext.projection(t.op(i, j)), x.op(p, q));
                }
            }
        }
    }

    #[test]
    fn rejects_inconsistent_cochain() {
        let x = fixtures::c2();
        let a = CoeffGroup::cyclic(2);
        let phi = Cochain2::from_values(2, vec![1, 1, 0, 0]);
        assert!(matches!(
            build_g_rack_extension(&x, &a, &phi),
            Err(ExtensionError::Hypothesis(_))
        ));
    }

    #[test]
    fn trivial_fixture_acts_through_identity() {
        let x = fixtures::trivial();
        let a = CoeffGroup::cyclic(2);
        let ext = build_g_rack_extension(&x, &a, &Cochain2::zero(3)).unwrap();
        assert!(ext.acts_through_subgroup());
        assert_eq!(ext.total().group().order(), 1);
    }
}
