//! Pointwise checks of the defining identities of the cocycle flavors.
//!
//! These evaluate the quantified identities directly over all tuples and are
//! kept independent of the linear-system solvers in `space`.

use std::fmt;

use serde::Serialize;

use super::cochain::Cochain2;
use super::delta::{delta_group2, delta_rack2};
use crate::algebra::{AugmentedRack, Coeff, CoeffGroup, FiniteGroup};
use crate::error::AlgebraError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PropertyKind {
    Cocycle,
    GroupCocycle,
    Additive,
    Fibrant,
    Consistent,
    PreAdditive,
    Symmetric,
    NormalizedGroup,
    EtaDerived,
}

impl fmt::Display for PropertyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            PropertyKind::Cocycle => "cocycle",
            PropertyKind::GroupCocycle => "group cocycle",
            PropertyKind::Additive => "additive",
            PropertyKind::Fibrant => "fibrant",
            PropertyKind::Consistent => "telescoping consistency",
            PropertyKind::PreAdditive => "pre-additive",
            PropertyKind::Symmetric => "symmetric",
            PropertyKind::NormalizedGroup => "normalized",
            PropertyKind::EtaDerived => "eta-derived",
        };
        write!(f, "{s}")
    }
}

/// A property to check; `EtaDerived` carries the group cochain it refers to.
#[derive(Debug, Clone, Copy)]
pub enum Property<'a> {
    Cocycle,
    GroupCocycle,
    Additive,
    Fibrant,
    Consistent,
    PreAdditive,
    Symmetric,
    NormalizedGroup,
    EtaDerived(&'a Cochain2),
}

impl Property<'_> {
    pub fn kind(&self) -> PropertyKind {
        match self {
            Property::Cocycle => PropertyKind::Cocycle,
            Property::GroupCocycle => PropertyKind::GroupCocycle,
            Property::Additive => PropertyKind::Additive,
            Property::Fibrant => PropertyKind::Fibrant,
            Property::Consistent => PropertyKind::Consistent,
            Property::PreAdditive => PropertyKind::PreAdditive,
            Property::Symmetric => PropertyKind::Symmetric,
            Property::NormalizedGroup => PropertyKind::NormalizedGroup,
            Property::EtaDerived(_) => PropertyKind::EtaDerived,
        }
    }
}

/// The first tuple at which a property fails.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub property: PropertyKind,
    pub at: Vec<usize>,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} fails at {:?}", self.property, self.at)
    }
}

pub type Check = Result<(), Witness>;

fn fail(property: PropertyKind, at: Vec<usize>) -> Check {
    Err(Witness { property, at })
}

/// Checks one property of a 2-cochain (rack or group flavored, by property).
pub fn check_property(
    x: &AugmentedRack,
    a: &CoeffGroup,
    c: &Cochain2,
    property: Property<'_>,
) -> Result<Check, AlgebraError> {
    let rack_sized = !matches!(
        property,
        Property::GroupCocycle | Property::NormalizedGroup
    );
    let expected = if rack_sized { x.size() } else { x.group().order() };
    if c.size() != expected {
        return Err(AlgebraError::Dimension(format!(
            "cochain on {} points, expected {expected}",
            c.size()
        )));
    }
    Ok(match property {
        Property::Cocycle => rack_cocycle(x, a, c),
        Property::GroupCocycle => group_cocycle(x.group(), a, c),
        Property::Additive => additive(x, a, c),
        Property::Fibrant => fibrant(x, c),
        Property::Consistent => phi_hat(x, a, c).map(|_| ()),
        Property::PreAdditive => pre_additive(x, a, c),
        Property::Symmetric => symmetric(x, a, c, x.require_rho()?),
        Property::NormalizedGroup => normalized(x.group(), c),
        Property::EtaDerived(eta) => {
            if eta.size() != x.group().order() {
                return Err(AlgebraError::Dimension("eta size".into()));
            }
            eta_derived(x, a, c, eta)
        }
    })
}

pub fn rack_cocycle(x: &AugmentedRack, a: &CoeffGroup, phi: &Cochain2) -> Check {
    match delta_rack2(x.rack(), a, phi).first_nonzero() {
        None => Ok(()),
        Some((p, q, r)) => fail(PropertyKind::Cocycle, vec![p, q, r]),
    }
}

pub fn group_cocycle(g: &FiniteGroup, a: &CoeffGroup, eta: &Cochain2) -> Check {
    match delta_group2(g, a, eta).first_nonzero() {
        None => Ok(()),
        Some((p, q, r)) => fail(PropertyKind::GroupCocycle, vec![p, q, r]),
    }
}

pub fn normalized(g: &FiniteGroup, eta: &Cochain2) -> Check {
    let e = g.identity();
    if eta.get(e, e) == 0 {
        Ok(())
    } else {
        fail(PropertyKind::NormalizedGroup, vec![e, e])
    }
}

/// Points of `X` grouped by their image under ν, indexed by group element.
pub(crate) fn fibers(x: &AugmentedRack) -> Vec<Vec<usize>> {
    let mut f = vec![Vec::new(); x.group().order()];
    for p in 0..x.size() {
        f[x.nu(p)].push(p);
    }
    f
}

/// `φ(w,x) + φ(w*x,y) = φ(w,z)` whenever `ν(x)ν(y) = ν(z)`.
pub fn additive(x: &AugmentedRack, a: &CoeffGroup, phi: &Cochain2) -> Check {
    let g = x.group();
    let fib = fibers(x);
    let n = x.size();
    for p in 0..n {
        for q in 0..n {
            for &z in &fib[g.mul(x.nu(p), x.nu(q))] {
                for w in 0..n {
                    let lhs = a.add(phi.get(w, p), phi.get(x.op(w, p), q));
                    if lhs != phi.get(w, z) {
                        return fail(PropertyKind::Additive, vec![w, p, q, z]);
                    }
                }
            }
        }
    }
    Ok(())
}

/// `φ(x,y) = φ(x,z)` whenever `ν(y) = ν(z)`.
pub fn fibrant(x: &AugmentedRack, phi: &Cochain2) -> Check {
    let n = x.size();
    for y in 0..n {
        for z in (y + 1)..n {
            if x.nu(y) != x.nu(z) {
                continue;
            }
            for p in 0..n {
                if phi.get(p, y) != phi.get(p, z) {
                    return fail(PropertyKind::Fibrant, vec![p, y, z]);
                }
            }
        }
    }
    Ok(())
}

/// `φ(x,w) + φ(y,w) = φ(z,w)` whenever `ν(x)ν(y) = ν(z)`.
pub fn pre_additive(x: &AugmentedRack, a: &CoeffGroup, phi: &Cochain2) -> Check {
    let g = x.group();
    let fib = fibers(x);
    let n = x.size();
    for p in 0..n {
        for q in 0..n {
            for &z in &fib[g.mul(x.nu(p), x.nu(q))] {
                for w in 0..n {
                    if a.add(phi.get(p, w), phi.get(q, w)) != phi.get(z, w) {
                        return fail(PropertyKind::PreAdditive, vec![p, q, z, w]);
                    }
                }
            }
        }
    }
    Ok(())
}

/// `φ(x,y) + φ(ρ(x),y) = 0` and `φ(x,y) + φ(x*y, ρ(y)) = 0`.
pub fn symmetric(x: &AugmentedRack, a: &CoeffGroup, phi: &Cochain2, rho: &[usize]) -> Check {
    let n = x.size();
    for p in 0..n {
        for q in 0..n {
            if a.add(phi.get(p, q), phi.get(rho[p], q)) != 0 {
                return fail(PropertyKind::Symmetric, vec![p, q, 0]);
            }
            if a.add(phi.get(p, q), phi.get(x.op(p, q), rho[q])) != 0 {
                return fail(PropertyKind::Symmetric, vec![p, q, 1]);
            }
        }
    }
    Ok(())
}

/// The four-term expression
/// `−η(e,e) − η(h,h⁻¹) + η(h⁻¹,g) + η(h⁻¹g,h)` with `g = ν(x)`, `h = ν(y)`.
pub fn eta_formula(x: &AugmentedRack, a: &CoeffGroup, eta: &Cochain2, p: usize, q: usize) -> Coeff {
    let g = x.group();
    let e = g.identity();
    let gx = x.nu(p);
    let h = x.nu(q);
    let hi = g.inv(h);
    let pos = a.add(eta.get(hi, gx), eta.get(g.mul(hi, gx), h));
    let neg = a.add(eta.get(e, e), eta.get(h, hi));
    a.sub(pos, neg)
}

pub fn eta_derived(x: &AugmentedRack, a: &CoeffGroup, phi: &Cochain2, eta: &Cochain2) -> Check {
    let n = x.size();
    for p in 0..n {
        for q in 0..n {
            if phi.get(p, q) != eta_formula(x, a, eta, p, q) {
                return fail(PropertyKind::EtaDerived, vec![p, q]);
            }
        }
    }
    Ok(())
}

/// The rack 2-cochain derived from a group 2-cocycle.
pub fn eta_derived_phi(
    eta: &Cochain2,
    x: &AugmentedRack,
    a: &CoeffGroup,
) -> Result<Cochain2, DerivationError> {
    if eta.size() != x.group().order() {
        return Err(DerivationError::Size);
    }
    group_cocycle(x.group(), a, eta).map_err(DerivationError::NotCocycle)?;
    Ok(Cochain2::from_fn(x.size(), |p, q| eta_formula(x, a, eta, p, q)))
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DerivationError {
    #[error("group cochain has the wrong size")]
    Size,
    #[error("group cochain is not a cocycle: {0}")]
    NotCocycle(Witness),
}

/// Telescoped values `φ̂(x, h)` for `h` in the subgroup generated by the image
/// of ν, or the first inconsistency `(x, h, y)`.
///
/// `φ̂(x, e) = 0` and `φ̂(x, h·ν(y)) = φ̂(x, h) + φ(x·h, y)` along every edge of
/// the Cayley graph of that subgroup; the table is indexed by group element
/// and holds `None` outside the subgroup.
pub fn phi_hat(x: &AugmentedRack, a: &CoeffGroup, phi: &Cochain2) -> Result<PhiHat, Witness> {
    let g = x.group();
    let n = x.size();
    let e = g.identity();
    let mut table = vec![vec![None; g.order()]; n];
    for p in 0..n {
        let row = &mut table[p];
        row[e] = Some(0);
        let mut queue = std::collections::VecDeque::from([e]);
        while let Some(h) = queue.pop_front() {
            let base = row[h].expect("visited");
            let ph = x.act(p, h);
            for q in 0..n {
                let next = g.mul(h, x.nu(q));
                let value = a.add(base, phi.get(ph, q));
                match row[next] {
                    None => {
                        row[next] = Some(value);
                        queue.push_back(next);
                    }
                    Some(v) if v != value => {
                        return Err(Witness {
                            property: PropertyKind::Consistent,
                            at: vec![p, h, q],
                        });
                    }
                    Some(_) => {}
                }
            }
        }
    }
    Ok(PhiHat { table })
}

/// Result of [`phi_hat`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhiHat {
    table: Vec<Vec<Option<Coeff>>>,
}

impl PhiHat {
    pub fn get(&self, x: usize, g: usize) -> Option<Coeff> {
        self.table[x][g]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::fixtures;

    #[test]
    fn zero_has_every_property() {
        let x = fixtures::r3s3();
        let a = CoeffGroup::cyclic(2);
        let z = Cochain2::zero(3);
        for p in [
            Property::Cocycle,
            Property::Additive,
            Property::Fibrant,
            Property::Consistent,
            Property::PreAdditive,
            Property::Symmetric,
        ] {
            assert!(check_property(&x, &a, &z, p).unwrap().is_ok());
        }
    }

    #[test]
    fn c2_everything_fibrant_and_vacuously_additive() {
        let x = fixtures::c2();
        let a = CoeffGroup::cyclic(2);
        for phi in Cochain2::all(2, &a) {
            assert!(additive(&x, &a, &phi).is_ok());
            let same_rows = phi.get(0, 0) == phi.get(0, 1) && phi.get(1, 0) == phi.get(1, 1);
            assert_eq!(fibrant(&x, &phi).is_ok(), same_rows);
        }
    }

    #[test]
    fn z4_cocycle_derives_zero_on_c2() {
        let x = fixtures::c2();
        let a = CoeffGroup::cyclic(2);
        let eta = Cochain2::indicator(2, 1, 1, 1);
        let phi = eta_derived_phi(&eta, &x, &a).unwrap();
        assert!(phi.is_zero());
        assert!(check_property(&x, &a, &Cochain2::zero(2), Property::EtaDerived(&eta))
            .unwrap()
            .is_ok());
    }

    #[test]
    fn non_cocycle_is_refused() {
        let x = fixtures::c2();
        let a = CoeffGroup::cyclic(2);
        let eta = Cochain2::indicator(2, 0, 1, 1);
        assert!(eta_derived_phi(&eta, &x, &a).is_err());
    }

    #[test]
    fn symmetric_needs_rho() {
        let x = fixtures::c2().without_rho();
        let a = CoeffGroup::cyclic(2);
        assert!(matches!(
            check_property(&x, &a, &Cochain2::zero(2), Property::Symmetric),
            Err(AlgebraError::MissingInvolution)
        ));
    }

    #[test]
    fn consistency_on_c2() {
        let x = fixtures::c2();
        let a = CoeffGroup::cyclic(2);
        let ones = Cochain2::from_fn(2, |_, _| 1);
        let hat = phi_hat(&x, &a, &ones).unwrap();
        assert_eq!(hat.get(0, 0), Some(0));
        assert_eq!(hat.get(0, 1), Some(1));
        let bad = Cochain2::from_fn(2, |p, _| if p == 0 { 1 } else { 0 });
        assert!(phi_hat(&x, &a, &bad).is_err());
    }
}
