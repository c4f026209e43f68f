use std::collections::{BTreeSet, HashMap};

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::space::{
    cocycle_space, combinations, combine, constraint_rows, embed, to_matrix, CocycleSpace,
    CocycleValue, Flavor, Layout,
};
use crate::algebra::{AugmentedRack, Coeff, CoeffGroup};
use crate::linalg::{canonical_invariant_factors, kernel_mod, smith_decomposition, Matrix};

/// Which 1-cochains generate coboundaries.
///
/// `Default` uses all rack 1-cochains for R, R+ and AR and only fibrant ones
/// (constant on fibers of the augmentation) for RF and RF+. `Alternate`
/// swaps the two choices. Group 1-cochains are always normalized.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CoboundaryMode {
    #[default]
    Default,
    Alternate,
}

impl CoboundaryMode {
    fn fibrant(self, flavor: Flavor) -> bool {
        let default = matches!(flavor, Flavor::RF | Flavor::RFPlus);
        match self {
            CoboundaryMode::Default => default,
            CoboundaryMode::Alternate => !default,
        }
    }
}

/// The linear map from 1-cochain parameters to flat 2-cochains, as a
/// `len × params` integer matrix.
pub(crate) fn coboundary_map(flavor: Flavor, x: &AugmentedRack, mode: CoboundaryMode) -> Matrix<i64> {
    let lay = Layout::new(flavor, x);
    let n = x.size();
    let g = x.group();
    let mut rack_param = vec![0usize; n];
    let mut params = 0;
    if lay.phi {
        if mode.fibrant(flavor) {
            let mut by_image: HashMap<usize, usize> = HashMap::new();
            for (p, slot) in rack_param.iter_mut().enumerate() {
                let next = by_image.len();
                *slot = *by_image.entry(x.nu(p)).or_insert(next);
            }
            params = by_image.len();
        } else {
            for (p, slot) in rack_param.iter_mut().enumerate() {
                *slot = p;
            }
            params = n;
        }
    }
    let e = g.identity();
    let rack_params = params;
    let group_param = |h: usize| -> Option<usize> {
        (h != e).then(|| rack_params + if h < e { h } else { h - 1 })
    };
    if lay.eta {
        params += g.order() - 1;
    }
    let mut m = Matrix::zeros(lay.len(), params);
    if lay.phi {
        for p in 0..n {
            for q in 0..n {
                let row = lay.phi_var(p, q);
                m[(row, rack_param[p])] += 1;
                m[(row, rack_param[x.op(p, q)])] -= 1;
            }
        }
    }
    if lay.eta {
        for a in g.elements() {
            for b in g.elements() {
                let row = lay.eta_var(a, b);
                for (h, c) in [(a, 1), (g.mul(a, b), -1), (b, 1)] {
                    if let Some(col) = group_param(h) {
                        m[(row, col)] += c;
                    }
                }
            }
        }
    }
    m
}

#[derive(Debug, Clone)]
struct QuotientPart {
    /// Index into the cocycle space's kernels.
    kernel: usize,
    modulus: i64,
    /// Right transform of the relation matrix; class coordinates are `y V`.
    right: Matrix<i64>,
    /// Columns of `V` that carry a nontrivial cyclic factor, with its order.
    cyclic: Vec<(usize, u64)>,
}

/// `Z / B` for one flavor, with explicit generators.
#[derive(Debug, Clone)]
pub struct CohomologyGroup {
    pub flavor: Flavor,
    pub mode: CoboundaryMode,
    space: CocycleSpace,
    coboundaries: Vec<Vec<Coeff>>,
    parts: Vec<QuotientPart>,
    representatives: Vec<Vec<Coeff>>,
    orders: Vec<u64>,
}

/// Largest coboundary group searched for lexicographically least
/// representatives.
const COSET_SEARCH_LIMIT: usize = 1 << 16;

pub fn cohomology_group(
    flavor: Flavor,
    x: &AugmentedRack,
    a: &CoeffGroup,
    mode: CoboundaryMode,
) -> CohomologyGroup {
    let space = cocycle_space(flavor, x, a);
    let lay = space.layout();
    let constraints = to_matrix(&constraint_rows(flavor, x), lay.len());
    let lift = coboundary_map(flavor, x, mode);
    let restricted = constraints.mul(&lift);

    let mut coboundaries = Vec::new();
    let mut parts = Vec::new();
    let mut representatives = Vec::new();
    let mut orders = Vec::new();
    for (ki, fk) in space.kernels.iter().enumerate() {
        let n = fk.modulus;
        let params = kernel_mod(&restricted, n);
        let mut relations: Vec<Vec<i64>> = Vec::new();
        for p in &params.generators {
            let image: Vec<i64> = (0..lift.rows())
                .map(|r| {
                    lift.row(r)
                        .iter()
                        .zip(p)
                        .map(|(c, v)| c * v)
                        .sum::<i64>()
                        .mod_floor(&n)
                })
                .collect();
            if image.iter().all(|&v| v == 0) {
                continue;
            }
            let coords = fk
                .basis
                .coordinates(&image)
                .expect("coboundary of an admissible cochain is a cocycle");
            coboundaries.push(embed(a, fk.factor, &image));
            relations.push(coords);
        }
        let k = fk.basis.generators.len();
        for (i, &o) in fk.basis.orders.iter().enumerate() {
            let mut row = vec![0i64; k];
            row[i] = o;
            relations.push(row);
        }
        let sf = smith_decomposition(&to_matrix(&relations, k), Some(n));
        let mut cyclic = Vec::new();
        for j in 0..k {
            let d = if j < sf.rank { sf.diagonal[(j, j)] } else { 0 };
            let order = d.gcd(&n) as u64;
            if order == 1 {
                continue;
            }
            cyclic.push((j, order));
            let coords: Vec<u64> = sf
                .right_inv
                .row(j)
                .iter()
                .zip(&fk.basis.orders)
                .map(|(&c, &o)| c.mod_floor(&o) as u64)
                .collect();
            let mut full = vec![0u64; space.generator_orders().len()];
            full[fk.offset..fk.offset + k].copy_from_slice(&coords);
            representatives.push(space.combine(&full));
            orders.push(order);
        }
        parts.push(QuotientPart {
            kernel: ki,
            modulus: n,
            right: sf.right,
            cyclic,
        });
    }

    let mut group = CohomologyGroup {
        flavor,
        mode,
        space,
        coboundaries,
        parts,
        representatives,
        orders,
    };
    group.minimize_representatives();
    group
}

impl CohomologyGroup {
    pub fn space(&self) -> &CocycleSpace {
        &self.space
    }

    pub fn order(&self) -> u64 {
        self.orders.iter().product()
    }

    pub fn invariant_factors(&self) -> Vec<u64> {
        canonical_invariant_factors(&self.orders)
    }

    /// Orders of the cyclic factors generated by [`Self::representatives`].
    pub fn generator_orders(&self) -> &[u64] {
        &self.orders
    }

    /// One cocycle per cyclic factor; together they generate the quotient.
    pub fn representatives(&self) -> Vec<CocycleValue> {
        let lay = self.space.layout();
        self.representatives.iter().map(|r| lay.unflatten(r)).collect()
    }

    pub fn coboundary_generators(&self) -> Vec<CocycleValue> {
        let lay = self.space.layout();
        self.coboundaries.iter().map(|r| lay.unflatten(r)).collect()
    }

    /// Number of coboundaries, `|Z| / |H|`.
    pub fn coboundary_order(&self) -> u64 {
        self.space.order() / self.order()
    }

    /// Class coordinates of a cocycle, `None` if it is not one.
    pub fn class_of(&self, v: &CocycleValue) -> Option<Vec<u64>> {
        let flat = self.space.layout().flatten(v)?;
        self.flat_class(&flat)
    }

    fn flat_class(&self, flat: &[Coeff]) -> Option<Vec<u64>> {
        let y = self.space.flat_coordinates(flat)?;
        let mut out = Vec::with_capacity(self.orders.len());
        for part in &self.parts {
            let fk = &self.space.kernels[part.kernel];
            let k = fk.basis.generators.len();
            let ys = &y[fk.offset..fk.offset + k];
            for &(j, order) in &part.cyclic {
                let z: i64 = ys
                    .iter()
                    .enumerate()
                    .map(|(i, &yi)| yi as i64 * part.right[(i, j)])
                    .sum::<i64>()
                    .mod_floor(&part.modulus);
                out.push(z as u64 % order);
            }
        }
        Some(out)
    }

    pub fn is_coboundary(&self, v: &CocycleValue) -> bool {
        self.class_of(v).is_some_and(|c| c.iter().all(|&z| z == 0))
    }

    pub fn cohomologous(&self, u: &CocycleValue, v: &CocycleValue) -> bool {
        let lay = self.space.layout();
        let (Some(fu), Some(fv)) = (lay.flatten(u), lay.flatten(v)) else {
            return false;
        };
        let a = self.space.coeff();
        let diff: Vec<Coeff> = fu.iter().zip(&fv).map(|(&p, &q)| a.sub(p, q)).collect();
        self.flat_class(&diff).is_some_and(|c| c.iter().all(|&z| z == 0))
    }

    /// The cocycle with the given class coordinates built from the
    /// representatives.
    pub fn class_representative(&self, class: &[u64]) -> CocycleValue {
        let lay = self.space.layout();
        lay.unflatten(&combine(
            self.space.coeff(),
            &self.representatives,
            class,
            lay.len(),
        ))
    }

    /// One cocycle per class, indexed like [`Self::classes`].
    pub fn class_representatives(&self) -> Vec<CocycleValue> {
        self.classes()
            .map(|c| self.class_representative(&c))
            .collect()
    }

    /// Every class coordinate vector.
    pub fn classes(&self) -> impl Iterator<Item = Vec<u64>> + '_ {
        combinations(&self.orders)
    }

    fn coboundary_set(&self) -> Option<BTreeSet<Vec<Coeff>>> {
        if self.coboundary_order() as usize > COSET_SEARCH_LIMIT {
            return None;
        }
        let a = self.space.coeff();
        let len = self.space.layout().len();
        let mut set = BTreeSet::from([vec![0 as Coeff; len]]);
        let mut frontier = vec![vec![0 as Coeff; len]];
        while let Some(v) = frontier.pop() {
            for g in &self.coboundaries {
                let w: Vec<Coeff> = v.iter().zip(g).map(|(&p, &q)| a.add(p, q)).collect();
                if set.insert(w.clone()) {
                    frontier.push(w);
                }
            }
        }
        Some(set)
    }

    /// Replaces each representative by the least member of its coset.
    fn minimize_representatives(&mut self) {
        let Some(b) = self.coboundary_set() else {
            return;
        };
        let a = self.space.coeff().clone();
        for r in &mut self.representatives {
            if let Some(best) = b
                .iter()
                .map(|c| r.iter().zip(c).map(|(&p, &q)| a.add(p, q)).collect::<Vec<_>>())
                .min()
            {
                *r = best;
            }
        }
    }
}
