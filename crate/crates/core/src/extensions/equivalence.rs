use serde::{Deserialize, Serialize};

use super::augmented::{build_augmented_extension, AugmentedExtension};
use super::grack::{build_g_rack_extension, GRackExtension};
use super::ExtensionError;
use crate::algebra::{AugmentedRack, Coeff, CoeffGroup};
use crate::cohomology::{Cochain1, Cochain2};

/// Whether a 1-cochain is constant on the fibers of ν.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum XiClass {
    Fibrant,
    General,
}

/// Which rack 1-cochains an equivalence search may use.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchMode {
    Fibrant,
    All,
    /// Fibrant cochains first, then all of them.
    #[default]
    Both,
}

/// `F_X(x,a) = (x, a + ξ(x))` and, for augmented extensions,
/// `F_G(g,b) = (g, b + ζ(g))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionWitness {
    pub xi: Cochain1,
    pub zeta: Option<Cochain1>,
    pub xi_class: XiClass,
}

fn is_fibrant(x: &AugmentedRack, xi: &Cochain1) -> bool {
    (0..x.size()).all(|p| (0..x.size()).all(|q| x.nu(p) != x.nu(q) || xi.get(p) == xi.get(q)))
}

/// Candidate rack 1-cochains in search order.
fn xi_candidates<'a>(
    x: &'a AugmentedRack,
    a: &'a CoeffGroup,
    mode: SearchMode,
) -> Box<dyn Iterator<Item = Cochain1> + 'a> {
    let mut images: Vec<usize> = x.nu_map().to_vec();
    images.sort_unstable();
    images.dedup();
    let fibrant = move || {
        let images = images.clone();
        Cochain1::all(images.len(), a).map(move |v| {
            Cochain1::from_values(
                (0..x.size())
                    .map(|p| v.get(images.binary_search(&x.nu(p)).expect("image")))
                    .collect(),
            )
        })
    };
    let general = move || Cochain1::all(x.size(), a).filter(move |xi| !is_fibrant(x, xi));
    match mode {
        SearchMode::Fibrant => Box::new(fibrant()),
        SearchMode::All => Box::new(Cochain1::all(x.size(), a)),
        SearchMode::Both => Box::new(fibrant().chain(general())),
    }
}

fn shift(x: usize, m: usize, delta: &Cochain1, a: &CoeffGroup) -> usize {
    let (p, s) = (x / m, x % m);
    p * m + a.add(s as Coeff, delta.get(p)) as usize
}

/// Does `F(x,a) = (x, a + ξ(x))` intertwine the two actions?
fn intertwines(e1: &GRackExtension, e2: &GRackExtension, xi: &Cochain1) -> bool {
    let (t1, t2) = (e1.total(), e2.total());
    let a = e1.coeff();
    let m = a.size();
    (0..t1.size()).all(|i| {
        let fi = shift(i, m, xi, a);
        t1.group()
            .elements()
            .all(|g| shift(t1.act(i, g), m, xi, a) == t2.act(fi, g))
    })
}

/// Searches an isomorphism between the G-rack extensions by `phi1` and
/// `phi2`, checking the commuting conditions on the built totals.
pub fn equivalence_g_rack(
    x: &AugmentedRack,
    a: &CoeffGroup,
    phi1: &Cochain2,
    phi2: &Cochain2,
    mode: SearchMode,
) -> Result<Option<ExtensionWitness>, ExtensionError> {
    let e1 = build_g_rack_extension(x, a, phi1)?;
    let e2 = build_g_rack_extension(x, a, phi2)?;
    Ok(xi_candidates(x, a, mode)
        .find(|xi| intertwines(&e1, &e2, xi))
        .map(|xi| ExtensionWitness {
            xi_class: if is_fibrant(x, &xi) {
                XiClass::Fibrant
            } else {
                XiClass::General
            },
            xi,
            zeta: None,
        }))
}

fn group_shift(e: &AugmentedExtension, i: usize, zeta: &Cochain1) -> usize {
    let a = e.coeff();
    let (p, s) = e.group_extension().split(i);
    e.group_extension().index(p, a.add(s, zeta.get(p)))
}

/// Searches an isomorphism `(F_X, F_G)` between the augmented extensions by
/// `(phi1, eta1)` and `(phi2, eta2)`: `F_G` a group homomorphism and
/// `F_X(x̃·g̃) = F_X(x̃)·F_G(g̃)` on the totals.
pub fn augmented_isomorphism(
    x: &AugmentedRack,
    a: &CoeffGroup,
    first: (&Cochain2, &Cochain2),
    second: (&Cochain2, &Cochain2),
    mode: SearchMode,
) -> Result<Option<ExtensionWitness>, ExtensionError> {
    let e1 = build_augmented_extension(x, a, first.0, first.1)?;
    let e2 = build_augmented_extension(x, a, second.0, second.1)?;
    let (g1, g2) = (e1.group_extension().total(), e2.group_extension().total());
    let (t1, t2) = (e1.total(), e2.total());
    let m = a.size();
    let h = e1.acting_subgroup().len();
    for zeta_h in Cochain1::all(h, a) {
        let fg = |i: usize| group_shift(&e1, i, &zeta_h);
        let hom = g1
            .elements()
            .all(|i| g1.elements().all(|j| fg(g1.mul(i, j)) == g2.mul(fg(i), fg(j))));
        if !hom {
            continue;
        }
        let found = xi_candidates(x, a, mode).find(|xi| {
            (0..t1.size()).all(|i| {
                let fi = shift(i, m, xi, a);
                g1.elements()
                    .all(|c| shift(t1.act(i, c), m, xi, a) == t2.act(fi, fg(c)))
            })
        });
        if let Some(xi) = found {
            let mut zeta = Cochain1::zero(x.group().order());
            for (p, &g) in e1.acting_subgroup().iter().enumerate() {
                zeta.set(g, zeta_h.get(p));
            }
            return Ok(Some(ExtensionWitness {
                xi_class: if is_fibrant(x, &xi) {
                    XiClass::Fibrant
                } else {
                    XiClass::General
                },
                xi,
                zeta: Some(zeta),
            }));
        }
    }
    Ok(None)
}

/// Number of classes of `items` under an equivalence relation, by greedy
/// partition against one representative per class.
pub fn count_classes<T, E>(
    items: &[T],
    mut equivalent: impl FnMut(&T, &T) -> Result<bool, E>,
) -> Result<usize, E> {
    let mut reps: Vec<&T> = Vec::new();
    for item in items {
        let mut known = false;
        for r in &reps {
            if equivalent(r, item)? {
                known = true;
                break;
            }
        }
        if !known {
            reps.push(item);
        }
    }
    Ok(reps.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::fixtures;
    use crate::cohomology::delta_rack1;

    #[test]
    fn identical_cocycles_give_zero() {
        let x = fixtures::r3s3();
        let a = CoeffGroup::cyclic(2);
        let phi = Cochain2::zero(3);
        let w = equivalence_g_rack(&x, &a, &phi, &phi, SearchMode::Both)
            .unwrap()
            .unwrap();
        assert!(w.xi.values().iter().all(|&v| v == 0));
        assert_eq!(w.xi_class, XiClass::Fibrant);
    }

    #[test]
    fn coboundary_is_equivalent_to_zero() {
        let x = fixtures::r3s3();
        let a = CoeffGroup::cyclic(3);
        // R3S3 has a single fiber image class per element, so every ξ is fibrant
        let xi0 = Cochain1::from_values(vec![1, 2, 0]);
        let phi1 = delta_rack1(x.rack(), &a, &xi0);
        let w = equivalence_g_rack(&x, &a, &phi1, &Cochain2::zero(3), SearchMode::Fibrant)
            .unwrap()
            .unwrap();
        assert_eq!(delta_rack1(x.rack(), &a, &w.xi), phi1);
    }

    #[test]
    fn c2_classes_depend_on_search_mode() {
        let x = fixtures::c2();
        let a = CoeffGroup::cyclic(2);
        let zero = Cochain2::zero(2);
        let ones = Cochain2::from_values(2, vec![1; 4]);
        assert!(equivalence_g_rack(&x, &a, &ones, &zero, SearchMode::Fibrant)
            .unwrap()
            .is_none());
        let w = equivalence_g_rack(&x, &a, &ones, &zero, SearchMode::Both)
            .unwrap()
            .unwrap();
        assert_eq!(w.xi_class, XiClass::General);
    }

    #[test]
    fn augmented_z4_not_isomorphic_to_product() {
        let x = fixtures::c2();
        let a = CoeffGroup::cyclic(2);
        let zero = Cochain2::zero(2);
        let eta = Cochain2::indicator(2, 1, 1, 1);
        let none = augmented_isomorphism(&x, &a, (&zero, &eta), (&zero, &zero), SearchMode::All)
            .unwrap();
        assert!(none.is_none());
        let same = augmented_isomorphism(&x, &a, (&zero, &eta), (&zero, &eta), SearchMode::All)
            .unwrap();
        assert!(same.is_some());
    }

    #[test]
    fn greedy_partition() {
        let items = [0, 1, 2, 3, 4, 5];
        let n = count_classes(&items, |a, b| Ok::<_, ()>(a % 3 == b % 3)).unwrap();
        assert_eq!(n, 3);
    }
}
