use super::{check_size, pair_index, split_index, ExtensionError};
use crate::algebra::{Coeff, CoeffGroup, FiniteGroup};
use crate::cohomology::{group_cocycle, Cochain2};

/// `G × A` with `(x,a)(y,b) = (xy, a + b + η(x,y))`.
#[derive(Debug, Clone)]
pub struct CentralExtension {
    base: FiniteGroup,
    coeff: CoeffGroup,
    cocycle: Cochain2,
    total: FiniteGroup,
}

pub fn build_central_extension(
    g: &FiniteGroup,
    a: &CoeffGroup,
    eta: &Cochain2,
) -> Result<CentralExtension, ExtensionError> {
    check_size(g.order(), eta.size())?;
    group_cocycle(g, a, eta).map_err(ExtensionError::NotGroupCocycle)?;
    let m = a.size();
    let n = g.order() * m;
    let mut table = vec![vec![0; n]; n];
    for (i, row) in table.iter_mut().enumerate() {
        let (x, p) = split_index(i, m);
        for (j, slot) in row.iter_mut().enumerate() {
            let (y, q) = split_index(j, m);
            let s = a.add(a.add(p as Coeff, q as Coeff), eta.get(x, y));
            *slot = pair_index(g.mul(x, y), s as usize, m);
        }
    }
    let e = g.identity();
    let identity = pair_index(e, a.neg(eta.get(e, e)) as usize, m);
    let total = FiniteGroup::from_table(table, identity)?;
    Ok(CentralExtension {
        base: g.clone(),
        coeff: a.clone(),
        cocycle: eta.clone(),
        total,
    })
}

impl CentralExtension {
    pub fn base(&self) -> &FiniteGroup {
        &self.base
    }

    pub fn coeff(&self) -> &CoeffGroup {
        &self.coeff
    }

    pub fn cocycle(&self) -> &Cochain2 {
        &self.cocycle
    }

    pub fn total(&self) -> &FiniteGroup {
        &self.total
    }

    pub fn index(&self, g: usize, s: Coeff) -> usize {
        pair_index(g, s as usize, self.coeff.size())
    }

    pub fn split(&self, i: usize) -> (usize, Coeff) {
        let (g, s) = split_index(i, self.coeff.size());
        (g, s as Coeff)
    }

    pub fn projection(&self, i: usize) -> usize {
        self.split(i).0
    }

    /// `s(g) = (g, 0)`.
    pub fn section(&self, g: usize) -> usize {
        self.index(g, 0)
    }
}
