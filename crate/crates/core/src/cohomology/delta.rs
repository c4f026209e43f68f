use super::cochain::{Cochain1, Cochain2, Cochain3};
use crate::algebra::{AugmentedRack, CoeffGroup, FiniteGroup, Rack};

/// `(δξ)(x, y) = ξ(x) − ξ(x*y)`.
pub fn delta_rack1(r: &Rack, a: &CoeffGroup, xi: &Cochain1) -> Cochain2 {
    Cochain2::from_fn(r.size(), |x, y| a.sub(xi.get(x), xi.get(r.op(x, y))))
}

/// `(δφ)(x, y, z) = φ(x,z) − φ(x*y,z) − φ(x,y) + φ(x*z, y*z)`.
pub fn delta_rack2(r: &Rack, a: &CoeffGroup, phi: &Cochain2) -> Cochain3 {
    Cochain3::from_fn(r.size(), |x, y, z| {
        let pos = a.add(phi.get(x, z), phi.get(r.op(x, z), r.op(y, z)));
        let neg = a.add(phi.get(r.op(x, y), z), phi.get(x, y));
        a.sub(pos, neg)
    })
}

/// `(δζ)(g, h) = ζ(g) − ζ(gh) + ζ(h)`.
pub fn delta_group1(g: &FiniteGroup, a: &CoeffGroup, zeta: &Cochain1) -> Cochain2 {
    Cochain2::from_fn(g.order(), |p, q| {
        a.add(a.sub(zeta.get(p), zeta.get(g.mul(p, q))), zeta.get(q))
    })
}

/// `(δη)(x, y, z) = η(y,z) + η(x,yz) − η(xy,z) − η(x,y)`.
pub fn delta_group2(g: &FiniteGroup, a: &CoeffGroup, eta: &Cochain2) -> Cochain3 {
    Cochain3::from_fn(g.order(), |x, y, z| {
        let pos = a.add(eta.get(y, z), eta.get(x, g.mul(y, z)));
        let neg = a.add(eta.get(g.mul(x, y), z), eta.get(x, y));
        a.sub(pos, neg)
    })
}

/// A 1- or 2-cochain, for the degree-dispatching differentials.
pub enum AnyCochain {
    One(Cochain1),
    Two(Cochain2),
}

pub enum DeltaImage {
    Two(Cochain2),
    Three(Cochain3),
}

pub fn delta_rack(x: &AugmentedRack, a: &CoeffGroup, c: &AnyCochain) -> DeltaImage {
    match c {
        AnyCochain::One(xi) => DeltaImage::Two(delta_rack1(x.rack(), a, xi)),
        AnyCochain::Two(phi) => DeltaImage::Three(delta_rack2(x.rack(), a, phi)),
    }
}

pub fn delta_group(g: &FiniteGroup, a: &CoeffGroup, c: &AnyCochain) -> DeltaImage {
    match c {
        AnyCochain::One(zeta) => DeltaImage::Two(delta_group1(g, a, zeta)),
        AnyCochain::Two(eta) => DeltaImage::Three(delta_group2(g, a, eta)),
    }
}
