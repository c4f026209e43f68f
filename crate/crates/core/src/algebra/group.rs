use serde::{Deserialize, Serialize};

use super::report::{check_table, ValidationReport, Violation};
use crate::error::{AlgebraError, StructuralError};

/// Raw multiplication table as read from input. `table[i][j] = i·j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupData {
    pub order: usize,
    pub table: Vec<Vec<usize>>,
    pub identity: usize,
}

/// A validated finite group with precomputed inverses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    table: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
}

/// Checks shape, identity, Latin-square and associativity axioms.
pub fn validate_group(g: &GroupData) -> Result<ValidationReport, StructuralError> {
    if g.order == 0 {
        return Err(StructuralError::Empty("group".into()));
    }
    check_table("group table", &g.table, g.order, g.order, g.order)?;
    if g.identity >= g.order {
        return Err(StructuralError::OutOfRange {
            what: "group identity".into(),
            position: "identity".into(),
            value: g.identity,
            bound: g.order,
        });
    }
    let n = g.order;
    let t = &g.table;
    let e = g.identity;
    let mut report = ValidationReport::default();
    for a in 0..n {
        if t[e][a] != a || t[a][e] != a {
            report.push(Violation::GroupIdentity { element: a });
        }
    }
    for i in 0..n {
        if !is_permutation((0..n).map(|j| t[i][j]), n) {
            report.push(Violation::GroupRowNotPermutation { row: i });
        }
        if !is_permutation((0..n).map(|j| t[j][i]), n) {
            report.push(Violation::GroupColumnNotPermutation { column: i });
        }
    }
    'outer: for a in 0..n {
        for b in 0..n {
            let ab = t[a][b];
            for c in 0..n {
                if t[ab][c] != t[a][t[b][c]] {
                    report.push(Violation::NonAssociative { a, b, c });
                    break 'outer;
                }
            }
        }
    }
    Ok(report)
}

pub(crate) fn is_permutation(it: impl Iterator<Item = usize>, n: usize) -> bool {
    let mut seen = vec![false; n];
    for v in it {
        if v >= n || seen[v] {
            return false;
        }
        seen[v] = true;
    }
    seen.iter().all(|&s| s)
}

impl TryFrom<GroupData> for FiniteGroup {
    type Error = AlgebraError;

    fn try_from(g: GroupData) -> Result<Self, AlgebraError> {
        let report = validate_group(&g)?;
        if !report.is_ok() {
            return Err(AlgebraError::Axioms(report));
        }
        Ok(FiniteGroup::from_valid_table(g.table, g.identity))
    }
}

impl FiniteGroup {
    /// Builds from a table that is known to satisfy the axioms.
    pub(crate) fn from_valid_table(table: Vec<Vec<usize>>, identity: usize) -> Self {
        let n = table.len();
        let mut inverse = vec![0; n];
        for a in 0..n {
            inverse[a] = (0..n)
                .find(|&b| table[a][b] == identity)
                .expect("group element without inverse");
        }
        FiniteGroup {
            table,
            identity,
            inverse,
        }
    }

    pub fn from_table(table: Vec<Vec<usize>>, identity: usize) -> Result<Self, AlgebraError> {
        FiniteGroup::try_from(GroupData {
            order: table.len(),
            table,
            identity,
        })
    }

    /// `Z/n` with element `k` at index `k`.
    pub fn cyclic(n: usize) -> Self {
        let table = (0..n)
            .map(|a| (0..n).map(|b| (a + b) % n).collect())
            .collect();
        Self::from_valid_table(table, 0)
    }

    /// Symmetric group on `k` points. Elements are the permutations in
    /// lexicographic order of their image lists, so the identity is index 0,
    /// and the product is composition `(p q)(i) = p(q(i))`.
    pub fn symmetric(k: usize) -> Self {
        let perms = permutations(k);
        let index = |p: &Vec<usize>| perms.binary_search(p).expect("permutation");
        let table = perms
            .iter()
            .map(|p| {
                perms
                    .iter()
                    .map(|q| index(&(0..k).map(|i| p[q[i]]).collect()))
                    .collect()
            })
            .collect();
        Self::from_valid_table(table, 0)
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    /// `g⁻¹ x g`.
    pub fn conj(&self, x: usize, g: usize) -> usize {
        self.mul(self.mul(self.inv(g), x), g)
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order()
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut k = 1;
        let mut p = a;
        while p != self.identity {
            p = self.mul(p, a);
            k += 1;
        }
        k
    }

    pub fn exponent(&self) -> usize {
        self.elements()
            .map(|a| self.element_order(a))
            .fold(1, num_integer::lcm)
    }

    pub fn is_abelian(&self) -> bool {
        self.elements()
            .all(|a| self.elements().all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Conjugacy class of `x`, sorted.
    pub fn conjugacy_class(&self, x: usize) -> Vec<usize> {
        let mut c: Vec<usize> = self.elements().map(|g| self.conj(x, g)).collect();
        c.sort_unstable();
        c.dedup();
        c
    }

    /// Sorted elements of the subgroup generated by `gens`.
    pub fn generated_subgroup(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order()];
        seen[self.identity] = true;
        let mut stack = vec![self.identity];
        while let Some(h) = stack.pop() {
            for &g in gens {
                let k = self.mul(h, g);
                if !seen[k] {
                    seen[k] = true;
                    stack.push(k);
                }
            }
        }
        self.elements().filter(|&g| seen[g]).collect()
    }

    /// Restriction to a subgroup given as a sorted element list. The result
    /// indexes elements by their position in `elements`.
    pub fn restrict(&self, elements: &[usize]) -> FiniteGroup {
        let pos = |g: usize| elements.binary_search(&g).expect("subgroup closed");
        let table = elements
            .iter()
            .map(|&a| elements.iter().map(|&b| pos(self.mul(a, b))).collect())
            .collect();
        FiniteGroup::from_valid_table(table, pos(self.identity))
    }

    pub fn to_data(&self) -> GroupData {
        GroupData {
            order: self.order(),
            table: self.table.clone(),
            identity: self.identity,
        }
    }
}

/// All permutations of `0..k` in lexicographic order.
pub fn permutations(k: usize) -> Vec<Vec<usize>> {
    fn rec(k: usize, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in 0..k {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                rec(k, cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(k, &mut Vec::new(), &mut vec![false; k], &mut out);
    out
}
