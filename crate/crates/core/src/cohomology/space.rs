use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::cochain::Cochain2;
use super::predicates::{
    additive, eta_derived, fibrant, group_cocycle, normalized, phi_hat, rack_cocycle,
};
use crate::algebra::{AugmentedRack, Coeff, CoeffGroup};
use crate::linalg::{canonical_invariant_factors, kernel_mod, KernelBasis, Matrix};

/// The cocycle flavors: rack (R), additive (R+), fibrant (RF),
/// fibrant-additive (RF+), normalized group (GN) and augmented pairs (AR).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Flavor {
    #[serde(rename = "r")]
    R,
    #[serde(rename = "r+")]
    RPlus,
    #[serde(rename = "rf")]
    RF,
    #[serde(rename = "rf+")]
    RFPlus,
    #[serde(rename = "gn")]
    GN,
    #[serde(rename = "ar")]
    AR,
}

impl Flavor {
    pub const ALL: [Flavor; 6] = [
        Flavor::R,
        Flavor::RPlus,
        Flavor::RF,
        Flavor::RFPlus,
        Flavor::GN,
        Flavor::AR,
    ];

    fn has_phi(self) -> bool {
        self != Flavor::GN
    }

    fn has_eta(self) -> bool {
        matches!(self, Flavor::GN | Flavor::AR)
    }
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Flavor::R => "R",
            Flavor::RPlus => "R+",
            Flavor::RF => "RF",
            Flavor::RFPlus => "RF+",
            Flavor::GN => "GN",
            Flavor::AR => "AR",
        };
        write!(f, "{s}")
    }
}

impl FromStr for Flavor {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "r" => Ok(Flavor::R),
            "r+" => Ok(Flavor::RPlus),
            "rf" => Ok(Flavor::RF),
            "rf+" => Ok(Flavor::RFPlus),
            "gn" => Ok(Flavor::GN),
            "ar" => Ok(Flavor::AR),
            _ => Err(format!("unknown flavor {s:?}")),
        }
    }
}

/// A member of a cocycle space: a rack part, a group part, or both.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CocycleValue {
    pub phi: Option<Cochain2>,
    pub eta: Option<Cochain2>,
}

impl CocycleValue {
    pub fn rack(phi: Cochain2) -> Self {
        CocycleValue {
            phi: Some(phi),
            eta: None,
        }
    }

    pub fn group(eta: Cochain2) -> Self {
        CocycleValue {
            phi: None,
            eta: Some(eta),
        }
    }

    pub fn pair(phi: Cochain2, eta: Cochain2) -> Self {
        CocycleValue {
            phi: Some(phi),
            eta: Some(eta),
        }
    }

    /// The rack part; panics for group-only values.
    pub fn phi(&self) -> &Cochain2 {
        self.phi.as_ref().expect("cocycle has no rack part")
    }

    /// The group part; panics for rack-only values.
    pub fn eta(&self) -> &Cochain2 {
        self.eta.as_ref().expect("cocycle has no group part")
    }
}

/// How a flavor's unknowns are laid out in one flat vector: the rack
/// cochain (row-major) followed by the group cochain.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Layout {
    pub x: usize,
    pub g: usize,
    pub phi: bool,
    pub eta: bool,
}

impl Layout {
    pub fn new(flavor: Flavor, x: &AugmentedRack) -> Self {
        Layout {
            x: x.size(),
            g: x.group().order(),
            phi: flavor.has_phi(),
            eta: flavor.has_eta(),
        }
    }

    pub fn phi_len(&self) -> usize {
        if self.phi {
            self.x * self.x
        } else {
            0
        }
    }

    pub fn len(&self) -> usize {
        self.phi_len() + if self.eta { self.g * self.g } else { 0 }
    }

    pub fn phi_var(&self, p: usize, q: usize) -> usize {
        p * self.x + q
    }

    pub fn eta_var(&self, g: usize, h: usize) -> usize {
        self.phi_len() + g * self.g + h
    }

    pub fn unflatten(&self, flat: &[Coeff]) -> CocycleValue {
        let pl = self.phi_len();
        CocycleValue {
            phi: self
                .phi
                .then(|| Cochain2::from_values(self.x, flat[..pl].to_vec())),
            eta: self
                .eta
                .then(|| Cochain2::from_values(self.g, flat[pl..].to_vec())),
        }
    }

    pub fn flatten(&self, v: &CocycleValue) -> Option<Vec<Coeff>> {
        let mut out = Vec::with_capacity(self.len());
        if self.phi {
            let phi = v.phi.as_ref()?;
            if phi.size() != self.x {
                return None;
            }
            out.extend_from_slice(phi.values());
        }
        if self.eta {
            let eta = v.eta.as_ref()?;
            if eta.size() != self.g {
                return None;
            }
            out.extend_from_slice(eta.values());
        }
        Some(out)
    }
}

/// Integer constraint rows over the flat unknowns; the flavor's cocycles are
/// exactly the common zeros of these rows over `A`.
pub(crate) fn constraint_rows(flavor: Flavor, x: &AugmentedRack) -> Vec<Vec<i64>> {
    let lay = Layout::new(flavor, x);
    let mut rows = Vec::new();
    let n = x.size();
    let g = x.group();
    let len = lay.len();
    let v = |p, q| lay.phi_var(p, q);
    let cocycle = |rows: &mut Vec<Vec<i64>>| {
        for p in 0..n {
            for q in 0..n {
                for r in 0..n {
                    let mut row = vec![0i64; len];
                    row[v(p, r)] += 1;
                    row[v(x.op(p, q), r)] -= 1;
                    row[v(p, q)] -= 1;
                    row[v(x.op(p, r), x.op(q, r))] += 1;
                    rows.push(row);
                }
            }
        }
    };
    let fib = |rows: &mut Vec<Vec<i64>>| {
        for q in 0..n {
            for r in (q + 1)..n {
                if x.nu(q) == x.nu(r) {
                    for p in 0..n {
                        let mut row = vec![0i64; len];
                        row[v(p, q)] += 1;
                        row[v(p, r)] -= 1;
                        rows.push(row);
                    }
                }
            }
        }
    };
    let add = |rows: &mut Vec<Vec<i64>>| {
        for p in 0..n {
            for q in 0..n {
                let target = g.mul(x.nu(p), x.nu(q));
                for z in (0..n).filter(|&z| x.nu(z) == target) {
                    for w in 0..n {
                        let mut row = vec![0i64; len];
                        row[v(w, p)] += 1;
                        row[v(x.op(w, p), q)] += 1;
                        row[v(w, z)] -= 1;
                        rows.push(row);
                    }
                }
            }
        }
    };
    let consistent = |rows: &mut Vec<Vec<i64>>| {
        // Spanning-tree values of the telescoped map as linear forms; every
        // non-tree edge of the Cayley graph is a constraint.
        for p in 0..n {
            let mut form: Vec<Option<Vec<i64>>> = vec![None; g.order()];
            form[g.identity()] = Some(vec![0; len]);
            let mut queue = std::collections::VecDeque::from([g.identity()]);
            while let Some(h) = queue.pop_front() {
                let base = form[h].clone().expect("visited");
                for q in 0..n {
                    let next = g.mul(h, x.nu(q));
                    let mut f = base.clone();
                    f[v(x.act(p, h), q)] += 1;
                    match &form[next] {
                        None => {
                            form[next] = Some(f);
                            queue.push_back(next);
                        }
                        Some(existing) => {
                            let row: Vec<i64> = f.iter().zip(existing).map(|(a, b)| a - b).collect();
                            if row.iter().any(|&c| c != 0) {
                                rows.push(row);
                            }
                        }
                    }
                }
            }
        }
    };
    let group = |rows: &mut Vec<Vec<i64>>| {
        let e = g.identity();
        let mut row = vec![0i64; len];
        row[lay.eta_var(e, e)] = 1;
        rows.push(row);
        for a in g.elements() {
            for b in g.elements() {
                for c in g.elements() {
                    let mut row = vec![0i64; len];
                    row[lay.eta_var(b, c)] += 1;
                    row[lay.eta_var(a, g.mul(b, c))] += 1;
                    row[lay.eta_var(g.mul(a, b), c)] -= 1;
                    row[lay.eta_var(a, b)] -= 1;
                    rows.push(row);
                }
            }
        }
    };
    match flavor {
        Flavor::R => cocycle(&mut rows),
        Flavor::RPlus => {
            cocycle(&mut rows);
            add(&mut rows);
        }
        Flavor::RF => {
            cocycle(&mut rows);
            fib(&mut rows);
        }
        Flavor::RFPlus => {
            fib(&mut rows);
            add(&mut rows);
            consistent(&mut rows);
        }
        Flavor::GN => group(&mut rows),
        Flavor::AR => {
            fib(&mut rows);
            add(&mut rows);
            consistent(&mut rows);
            group(&mut rows);
            let e = g.identity();
            for p in 0..n {
                for q in 0..n {
                    let h = x.nu(q);
                    let hi = g.inv(h);
                    let gx = x.nu(p);
                    let mut row = vec![0i64; len];
                    row[v(p, q)] += 1;
                    row[lay.eta_var(e, e)] += 1;
                    row[lay.eta_var(h, hi)] += 1;
                    row[lay.eta_var(hi, gx)] -= 1;
                    row[lay.eta_var(g.mul(hi, gx), h)] -= 1;
                    rows.push(row);
                }
            }
        }
    }
    rows
}

pub(crate) fn to_matrix(rows: &[Vec<i64>], cols: usize) -> Matrix<i64> {
    if rows.is_empty() {
        return Matrix::zeros(0, cols);
    }
    Matrix::from_rows(rows.to_vec())
}

/// Kernel of the constraint system in one cyclic factor of `A`.
#[derive(Debug, Clone)]
pub(crate) struct FactorKernel {
    pub factor: usize,
    pub modulus: i64,
    pub basis: KernelBasis<i64>,
    /// Index of this factor's first generator in the space's generator list.
    pub offset: usize,
}

/// The solution group of a flavor's defining system, `⊕ Z/order_i · g_i`.
#[derive(Debug, Clone)]
pub struct CocycleSpace {
    pub flavor: Flavor,
    coeff: CoeffGroup,
    layout: Layout,
    generators: Vec<Vec<Coeff>>,
    orders: Vec<u64>,
    pub(crate) kernels: Vec<FactorKernel>,
}

/// Lifts a vector over `Z/n_i` into `A` along factor `i`.
pub(crate) fn embed(a: &CoeffGroup, factor: usize, v: &[i64]) -> Vec<Coeff> {
    v.iter().map(|&c| a.unit_in(factor, c)).collect()
}

/// The `factor`-th components of a flat vector over `A`.
pub(crate) fn project(a: &CoeffGroup, factor: usize, v: &[Coeff]) -> Vec<i64> {
    v.iter().map(|&c| a.components(c)[factor]).collect()
}

/// Solves a flavor's defining linear system over `A` by Smith decomposition.
pub fn cocycle_space(flavor: Flavor, x: &AugmentedRack, a: &CoeffGroup) -> CocycleSpace {
    let layout = Layout::new(flavor, x);
    let m = to_matrix(&constraint_rows(flavor, x), layout.len());
    let mut generators = Vec::new();
    let mut orders = Vec::new();
    let mut kernels = Vec::new();
    for (i, &n) in a.factors().iter().enumerate() {
        if n == 1 {
            continue;
        }
        let basis = kernel_mod(&m, n as i64);
        let offset = generators.len();
        for (gen, &o) in basis.generators.iter().zip(&basis.orders) {
            generators.push(embed(a, i, gen));
            orders.push(o as u64);
        }
        kernels.push(FactorKernel {
            factor: i,
            modulus: n as i64,
            basis,
            offset,
        });
    }
    CocycleSpace {
        flavor,
        coeff: a.clone(),
        layout,
        generators,
        orders,
        kernels,
    }
}

impl CocycleSpace {
    pub fn coeff(&self) -> &CoeffGroup {
        &self.coeff
    }

    pub(crate) fn layout(&self) -> Layout {
        self.layout
    }

    /// Number of cocycles.
    pub fn order(&self) -> u64 {
        self.orders.iter().product()
    }

    pub fn generator_orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn invariant_factors(&self) -> Vec<u64> {
        canonical_invariant_factors(&self.orders)
    }

    pub fn generators(&self) -> Vec<CocycleValue> {
        self.generators
            .iter()
            .map(|g| self.layout.unflatten(g))
            .collect()
    }

    /// `Σ c_i g_i`.
    pub(crate) fn combine(&self, coords: &[u64]) -> Vec<Coeff> {
        combine(&self.coeff, &self.generators, coords, self.layout.len())
    }

    /// Every cocycle, sorted in flat lexicographic order.
    pub fn members(&self) -> Vec<CocycleValue> {
        let mut flat: Vec<Vec<Coeff>> = combinations(&self.orders)
            .map(|c| self.combine(&c))
            .collect();
        flat.sort();
        flat.iter().map(|f| self.layout.unflatten(f)).collect()
    }

    pub fn contains(&self, v: &CocycleValue) -> bool {
        self.coordinates(v).is_some()
    }

    /// Coordinates with respect to [`CocycleSpace::generators`].
    pub fn coordinates(&self, v: &CocycleValue) -> Option<Vec<u64>> {
        let flat = self.layout.flatten(v)?;
        self.flat_coordinates(&flat)
    }

    pub(crate) fn flat_coordinates(&self, flat: &[Coeff]) -> Option<Vec<u64>> {
        let mut out = vec![0u64; self.generators.len()];
        for (i, &n) in self.coeff.factors().iter().enumerate() {
            let proj = project(&self.coeff, i, flat);
            match self.kernels.iter().find(|k| k.factor == i) {
                Some(k) => {
                    let c = k.basis.coordinates(&proj)?;
                    for (j, cj) in c.into_iter().enumerate() {
                        out[k.offset + j] = cj as u64;
                    }
                }
                None if n > 1 => {
                    if proj.iter().any(|&c| c != 0) {
                        return None;
                    }
                }
                None => {}
            }
        }
        Some(out)
    }
}

pub(crate) fn combine(a: &CoeffGroup, gens: &[Vec<Coeff>], coords: &[u64], len: usize) -> Vec<Coeff> {
    let mut out = vec![0 as Coeff; len];
    for (g, &c) in gens.iter().zip(coords) {
        if c == 0 {
            continue;
        }
        for (o, &v) in out.iter_mut().zip(g) {
            *o = a.add(*o, a.scale(c as i64, v));
        }
    }
    out
}

/// Every coordinate vector `c` with `0 <= c_i < orders_i`.
pub(crate) fn combinations(orders: &[u64]) -> impl Iterator<Item = Vec<u64>> + '_ {
    let total: u64 = orders.iter().product();
    (0..total).map(move |mut k| {
        let mut c = vec![0u64; orders.len()];
        for (slot, &o) in c.iter_mut().zip(orders).rev() {
            *slot = k % o;
            k /= o;
        }
        c
    })
}

/// Largest candidate count the exhaustive oracle will enumerate.
pub const EXHAUSTIVE_LIMIT: u64 = 1 << 20;

/// Every cocycle of the flavor found by brute force over all cochains, in
/// flat lexicographic order, or `None` when there are too many candidates.
pub fn cocycle_space_exhaustive(
    flavor: Flavor,
    x: &AugmentedRack,
    a: &CoeffGroup,
) -> Option<Vec<CocycleValue>> {
    let layout = Layout::new(flavor, x);
    let len = layout.len();
    let total = (a.size() as u64).checked_pow(len as u32)?;
    if total > EXHAUSTIVE_LIMIT {
        return None;
    }
    let base = a.size() as u64;
    let mut out = Vec::new();
    for mut k in 0..total {
        let mut flat = vec![0 as Coeff; len];
        for slot in flat.iter_mut().rev() {
            *slot = (k % base) as Coeff;
            k /= base;
        }
        let v = layout.unflatten(&flat);
        if satisfies(flavor, x, a, &v) {
            out.push(v);
        }
    }
    Some(out)
}

/// Direct predicate test of membership in a flavor's cocycle set.
pub fn satisfies(flavor: Flavor, x: &AugmentedRack, a: &CoeffGroup, v: &CocycleValue) -> bool {
    let rf_plus = |phi: &Cochain2| {
        fibrant(x, phi).is_ok() && additive(x, a, phi).is_ok() && phi_hat(x, a, phi).is_ok()
    };
    let gn = |eta: &Cochain2| {
        normalized(x.group(), eta).is_ok() && group_cocycle(x.group(), a, eta).is_ok()
    };
    match flavor {
        Flavor::R => rack_cocycle(x, a, v.phi()).is_ok(),
        Flavor::RPlus => rack_cocycle(x, a, v.phi()).is_ok() && additive(x, a, v.phi()).is_ok(),
        Flavor::RF => rack_cocycle(x, a, v.phi()).is_ok() && fibrant(x, v.phi()).is_ok(),
        Flavor::RFPlus => rf_plus(v.phi()),
        Flavor::GN => gn(v.eta()),
        Flavor::AR => {
            rf_plus(v.phi()) && gn(v.eta()) && eta_derived(x, a, v.phi(), v.eta()).is_ok()
        }
    }
}
