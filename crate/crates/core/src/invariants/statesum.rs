use std::collections::BTreeMap;

use serde::ser::{SerializeMap, SerializeSeq};
use serde::{Serialize, Serializer};

use crate::algebra::{AugmentedRack, Coeff, CoeffGroup};
use crate::cohomology::{check_property, Cochain2, Property};
use crate::diagrams::{components, validate_diagram, Crossing, Dir, RibbonDiagram, Vertex};

use super::coloring::{enumerate_colorings, Coloring};
use super::InvariantError;

/// Whether hypotheses on the cocycles are verified before evaluating.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Checks {
    #[default]
    Enforce,
    Unchecked,
}

/// Per-component histograms of the total weight over all colorings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StateSum {
    pub coeff: CoeffGroup,
    pub components: Vec<BTreeMap<Coeff, usize>>,
}

impl StateSum {
    pub fn counts(&self) -> Vec<usize> {
        self.components.iter().map(|h| h.values().sum()).collect()
    }

    /// The histogram of a diagram with only trivial weights.
    pub fn is_trivial(&self) -> bool {
        self.components.iter().all(|h| h.keys().all(|&k| k == 0))
    }
}

struct Histogram<'a>(&'a CoeffGroup, &'a BTreeMap<Coeff, usize>);

struct Bin<'a>(&'a CoeffGroup, Coeff, usize);

impl Serialize for Bin<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(2))?;
        m.serialize_entry("value", &self.0.components(self.1))?;
        m.serialize_entry("count", &self.2)?;
        m.end()
    }
}

impl Serialize for Histogram<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.1.len()))?;
        for (&k, &n) in self.1 {
            seq.serialize_element(&Bin(self.0, k, n))?;
        }
        seq.end()
    }
}

impl Serialize for StateSum {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Entry<'a> {
            component: usize,
            histogram: Histogram<'a>,
        }
        let mut seq = s.serialize_seq(Some(self.components.len()))?;
        for (i, h) in self.components.iter().enumerate() {
            seq.serialize_element(&Entry {
                component: i,
                histogram: Histogram(&self.coeff, h),
            })?;
        }
        seq.end()
    }
}

/// Weight of one crossing: `±φ(x, y)` with `y` the over color and `x` the
/// under color on the side the over strand's normal points away from
/// (`under_in` at a positive crossing, `under_out` at a negative one).
pub fn crossing_weight(
    coloring: &Coloring,
    crossing: &Crossing,
    a: &CoeffGroup,
    phi: &Cochain2,
) -> Coeff {
    let y = coloring.get(crossing.over_in);
    if crossing.positive {
        phi.get(coloring.get(crossing.under_in), y)
    } else {
        a.neg(phi.get(coloring.get(crossing.under_out), y))
    }
}

/// Weight of one vertex: `η(g₀, g₁)` where `gₖ = ν(color)^{±1}` is the group
/// label of slot `k` read as pointing into the vertex.
pub fn vertex_weight(
    coloring: &Coloring,
    vertex: &Vertex,
    x: &AugmentedRack,
    eta: &Cochain2,
) -> Coeff {
    let g = x.group();
    let label = |k: usize| {
        let s = vertex.slots[k];
        let h = x.nu(coloring.get(s.arc));
        if s.dir == Dir::In {
            h
        } else {
            g.inv(h)
        }
    };
    eta.get(label(0), label(1))
}

fn check_all(
    x: &AugmentedRack,
    a: &CoeffGroup,
    c: &Cochain2,
    props: &[Property<'_>],
) -> Result<(), InvariantError> {
    for &p in props {
        check_property(x, a, c, p)?.map_err(InvariantError::Hypothesis)?;
    }
    Ok(())
}

fn check_size(c: &Cochain2, expected: usize, what: &str) -> Result<(), InvariantError> {
    if c.size() == expected {
        Ok(())
    } else {
        Err(InvariantError::Size(format!(
            "{what} is defined on {} points, expected {expected}",
            c.size()
        )))
    }
}

fn evaluate(
    d: &RibbonDiagram,
    x: &AugmentedRack,
    a: &CoeffGroup,
    weight: impl Fn(&RibbonDiagram, &Coloring) -> Coeff,
) -> Result<StateSum, InvariantError> {
    validate_diagram(d)?;
    let mut out = Vec::new();
    for comp in components(d) {
        let mut hist = BTreeMap::new();
        for c in enumerate_colorings(&comp, x)? {
            *hist.entry(weight(&comp, &c)).or_insert(0) += 1;
        }
        out.push(hist);
    }
    Ok(StateSum {
        coeff: a.clone(),
        components: out,
    })
}

/// Histogram of `Σ crossing_weight` over all colorings, per component.
///
/// Requires φ to be a fibrant, additive, consistent, pre-additive rack
/// 2-cocycle that is symmetric with respect to ρ.
pub fn state_sum_phi(
    d: &RibbonDiagram,
    x: &AugmentedRack,
    a: &CoeffGroup,
    phi: &Cochain2,
    checks: Checks,
) -> Result<StateSum, InvariantError> {
    check_size(phi, x.size(), "phi")?;
    if checks == Checks::Enforce {
        check_all(
            x,
            a,
            phi,
            &[
                Property::Cocycle,
                Property::Fibrant,
                Property::Additive,
                Property::Consistent,
                Property::PreAdditive,
                Property::Symmetric,
            ],
        )?;
    }
    evaluate(d, x, a, |comp, c| {
        a.sum(comp.crossings.iter().map(|t| crossing_weight(c, t, a, phi)))
    })
}

/// Histogram of `Σ crossing_weight + Σ vertex_weight`, per component.
///
/// Requires η to be a normalized group 2-cocycle and φ to be η-derived,
/// additive and symmetric with respect to ρ.
pub fn state_sum_phi_eta(
    d: &RibbonDiagram,
    x: &AugmentedRack,
    a: &CoeffGroup,
    phi: &Cochain2,
    eta: &Cochain2,
    checks: Checks,
) -> Result<StateSum, InvariantError> {
    check_size(phi, x.size(), "phi")?;
    check_size(eta, x.group().order(), "eta")?;
    if checks == Checks::Enforce {
        check_all(x, a, eta, &[Property::GroupCocycle, Property::NormalizedGroup])?;
        check_all(
            x,
            a,
            phi,
            &[Property::EtaDerived(eta), Property::Additive, Property::Symmetric],
        )?;
    }
    evaluate(d, x, a, |comp, c| {
        let crossings = comp.crossings.iter().map(|t| crossing_weight(c, t, a, phi));
        let vertices = comp.vertices.iter().map(|v| vertex_weight(c, v, x, eta));
        a.sum(crossings.chain(vertices))
    })
}
