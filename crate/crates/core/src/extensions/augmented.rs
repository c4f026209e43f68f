use super::central::{build_central_extension, CentralExtension};
use super::grack::{telescoped, total_action};
use super::{check_size, pair_index, split_index, ExtensionError};
use crate::algebra::{AugmentedRack, Coeff, CoeffGroup};
use crate::cohomology::{eta_derived, normalized, Check, Cochain2, PropertyKind, Witness};

/// `(X × A, G × A)` built from a normalized group 2-cocycle `η` and an
/// η-derived rack 2-cocycle `φ`; `ν(x,a) = (ν(x), a)` and
/// `(x,a)·(g,s) = (x·g, a + φ̂(x,g))`.
///
/// As for G-rack extensions, the group factor is the subgroup generated by
/// the image of ν.
#[derive(Debug, Clone)]
pub struct AugmentedExtension {
    base: AugmentedRack,
    coeff: CoeffGroup,
    phi: Cochain2,
    eta: Cochain2,
    subgroup: Vec<usize>,
    group: CentralExtension,
    total: AugmentedRack,
}

pub fn build_augmented_extension(
    x: &AugmentedRack,
    a: &CoeffGroup,
    phi: &Cochain2,
    eta: &Cochain2,
) -> Result<AugmentedExtension, ExtensionError> {
    let g = x.group();
    check_size(g.order(), eta.size())?;
    check_size(x.size(), phi.size())?;
    // Built first so a non-cocycle is reported as such.
    build_central_extension(g, a, eta)?;
    if normalized(g, eta).is_err() {
        return Err(ExtensionError::NotNormalized);
    }
    eta_derived(x, a, phi, eta).map_err(ExtensionError::Hypothesis)?;
    let hat = telescoped(x, a, phi)?;

    let subgroup = x.image_subgroup();
    let h = g.restrict(&subgroup);
    let pos = |e: usize| subgroup.binary_search(&e).expect("in subgroup");
    let eta_h = Cochain2::from_fn(subgroup.len(), |i, j| eta.get(subgroup[i], subgroup[j]));
    let group = build_central_extension(&h, a, &eta_h)?;
    let m = a.size();
    let action = total_action(x, a, &hat, &subgroup, m, |c| subgroup[c / m]);
    let nu = (0..x.size() * m)
        .map(|i| {
            let (p, s) = split_index(i, m);
            pair_index(pos(x.nu(p)), s, m)
        })
        .collect();
    let total = AugmentedRack::new(group.total().clone(), action, nu, None)?;
    Ok(AugmentedExtension {
        base: x.clone(),
        coeff: a.clone(),
        phi: phi.clone(),
        eta: eta.clone(),
        subgroup,
        group,
        total,
    })
}

impl AugmentedExtension {
    pub fn base(&self) -> &AugmentedRack {
        &self.base
    }

    pub fn coeff(&self) -> &CoeffGroup {
        &self.coeff
    }

    pub fn phi(&self) -> &Cochain2 {
        &self.phi
    }

    pub fn eta(&self) -> &Cochain2 {
        &self.eta
    }

    pub fn acting_subgroup(&self) -> &[usize] {
        &self.subgroup
    }

    /// The central extension of the acting subgroup by `η`.
    pub fn group_extension(&self) -> &CentralExtension {
        &self.group
    }

    pub fn total(&self) -> &AugmentedRack {
        &self.total
    }

    pub fn index(&self, x: usize, a: Coeff) -> usize {
        pair_index(x, a as usize, self.coeff.size())
    }

    pub fn split(&self, i: usize) -> (usize, Coeff) {
        let (x, a) = split_index(i, self.coeff.size());
        (x, a as Coeff)
    }

    /// Index in the total group of `(g, s)` for a base element `g` of the
    /// acting subgroup.
    pub fn group_index(&self, g: usize, s: Coeff) -> Option<usize> {
        let p = self.subgroup.binary_search(&g).ok()?;
        Some(self.group.index(p, s))
    }

    /// Base element and coefficient of a total group element.
    pub fn group_split(&self, i: usize) -> (usize, Coeff) {
        let (p, s) = self.group.split(i);
        (self.subgroup[p], s)
    }
}

/// `φ(x,w) + φ(y,w) + η(ν(x)^ν(w), ν(y)^ν(w)) = φ(z,w) + η(ν(x), ν(y))`
/// whenever `ν(x)ν(y) = ν(z)`; the witness is `(x, y, z, w)`.
pub fn compatibility_check(x: &AugmentedRack, a: &CoeffGroup, phi: &Cochain2, eta: &Cochain2) -> Check {
    let g = x.group();
    let n = x.size();
    for p in 0..n {
        for q in 0..n {
            let target = g.mul(x.nu(p), x.nu(q));
            for z in (0..n).filter(|&z| x.nu(z) == target) {
                for w in 0..n {
                    let c = x.nu(w);
                    let lhs = a.sum([
                        phi.get(p, w),
                        phi.get(q, w),
                        eta.get(g.conj(x.nu(p), c), g.conj(x.nu(q), c)),
                    ]);
                    let rhs = a.add(phi.get(z, w), eta.get(x.nu(p), x.nu(q)));
                    if lhs != rhs {
                        return Err(Witness {
                            property: PropertyKind::EtaDerived,
                            at: vec![p, q, z, w],
                        });
                    }
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::fixtures;
    use crate::cohomology::{cocycle_space, eta_derived_phi, Flavor};

    #[test]
    fn zero_pair_is_product() {
        let x = fixtures::q5();
        let a = CoeffGroup::cyclic(2);
        let ext =
            build_augmented_extension(&x, &a, &Cochain2::zero(5), &Cochain2::zero(6)).unwrap();
        assert_eq!(ext.total().size(), 10);
        assert_eq!(ext.total().group().order(), 12);
    }

    #[test]
    fn c2_with_z4_cocycle() {
        let x = fixtures::c2();
        let a = CoeffGroup::cyclic(2);
        let eta = Cochain2::indicator(2, 1, 1, 1);
        let phi = eta_derived_phi(&eta, &x, &a).unwrap();
        assert!(phi.is_zero());
        let ext = build_augmented_extension(&x, &a, &phi, &eta).unwrap();
        assert_eq!(ext.total().size(), 4);
        assert_eq!(ext.total().group().exponent(), 4);
        assert!(compatibility_check(&x, &a, &phi, &eta).is_ok());
    }

    #[test]
    fn every_derived_pair_on_q5_builds() {
        let x = fixtures::q5();
        let a = CoeffGroup::cyclic(2);
        for v in cocycle_space(Flavor::GN, &x, &a).members() {
            let eta = v.eta();
            let phi = eta_derived_phi(eta, &x, &a).unwrap();
            build_augmented_extension(&x, &a, &phi, eta).unwrap();
            assert!(compatibility_check(&x, &a, &phi, eta).is_ok());
        }
    }

    #[test]
    fn rejects_underived_phi() {
        let x = fixtures::c2();
        let a = CoeffGroup::cyclic(2);
        let phi = Cochain2::from_values(2, vec![1; 4]);
        let err = build_augmented_extension(&x, &a, &phi, &Cochain2::zero(2)).unwrap_err();
        assert!(matches!(err, ExtensionError::Hypothesis(w) if w.property == PropertyKind::EtaDerived));
    }
}
