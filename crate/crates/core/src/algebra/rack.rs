use serde::{Deserialize, Serialize};

use super::group::is_permutation;
use super::report::{check_table, ValidationReport, Violation};
use crate::error::{AlgebraError, StructuralError};

/// Raw rack table as read from input. `op[x][y] = x*y`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RackData {
    pub size: usize,
    pub op: Vec<Vec<usize>>,
}

/// A validated rack with its inverse operation `x ∗̄ y` tabulated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rack {
    op: Vec<Vec<usize>>,
    op_inv: Vec<Vec<usize>>,
}

pub fn validate_rack(r: &RackData) -> Result<ValidationReport, StructuralError> {
    if r.size == 0 {
        return Err(StructuralError::Empty("rack".into()));
    }
    check_table("rack table", &r.op, r.size, r.size, r.size)?;
    Ok(rack_axioms(&r.op))
}

pub(crate) fn rack_axioms(op: &[Vec<usize>]) -> ValidationReport {
    let n = op.len();
    let mut report = ValidationReport::default();
    for y in 0..n {
        if !is_permutation((0..n).map(|x| op[x][y]), n) {
            report.push(Violation::RackColumnNotBijective { column: y });
        }
    }
    'outer: for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if op[op[x][y]][z] != op[op[x][z]][op[y][z]] {
                    report.push(Violation::NotSelfDistributive { x, y, z });
                    break 'outer;
                }
            }
        }
    }
    report
}

impl TryFrom<RackData> for Rack {
    type Error = AlgebraError;

    fn try_from(r: RackData) -> Result<Self, AlgebraError> {
        let report = validate_rack(&r)?;
        if !report.is_ok() {
            return Err(AlgebraError::Axioms(report));
        }
        Ok(Rack::from_valid_table(r.op))
    }
}

impl Rack {
    pub(crate) fn from_valid_table(op: Vec<Vec<usize>>) -> Self {
        let n = op.len();
        let mut op_inv = vec![vec![0; n]; n];
        for x in 0..n {
            for y in 0..n {
                op_inv[op[x][y]][y] = x;
            }
        }
        Rack { op, op_inv }
    }

    pub fn from_table(op: Vec<Vec<usize>>) -> Result<Self, AlgebraError> {
        Rack::try_from(RackData {
            size: op.len(),
            op,
        })
    }

    pub fn size(&self) -> usize {
        self.op.len()
    }

    #[inline]
    pub fn op(&self, x: usize, y: usize) -> usize {
        self.op[x][y]
    }

    /// The inverse operation: `op_inv(op(x, y), y) = x`.
    #[inline]
    pub fn op_inv(&self, x: usize, y: usize) -> usize {
        self.op_inv[x][y]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.op
    }

    pub fn to_data(&self) -> RackData {
        RackData {
            size: self.size(),
            op: self.op.clone(),
        }
    }
}

pub fn is_quandle(r: &Rack) -> bool {
    (0..r.size()).all(|x| r.op(x, x) == x)
}

/// Orbit closure of element 0 under every `S_y` and its inverse.
pub fn is_connected(r: &Rack) -> bool {
    let n = r.size();
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut stack = vec![0];
    while let Some(x) = stack.pop() {
        for y in 0..n {
            for z in [r.op(x, y), r.op_inv(x, y)] {
                if !seen[z] {
                    seen[z] = true;
                    stack.push(z);
                }
            }
        }
    }
    seen.into_iter().all(|s| s)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dihedral3() -> Vec<Vec<usize>> {
        (0..3)
            .map(|x| (0..3).map(|y| (2 * y + 3 - x) % 3).collect())
            .collect()
    }

    #[test]
    fn dihedral_and_cyclic_are_racks() {
        let d = Rack::from_table(dihedral3()).unwrap();
        assert!(is_quandle(&d));
        assert!(is_connected(&d));
        let c = Rack::from_table(vec![vec![1, 1], vec![0, 0]]).unwrap();
        assert!(!is_quandle(&c));
        assert!(is_connected(&c));
    }

    #[test]
    fn non_bijective_column() {
        let r = RackData {
            size: 2,
            op: vec![vec![0, 0], vec![0, 1]],
        };
        let rep = validate_rack(&r).unwrap();
        assert!(rep
            .violations()
            .contains(&Violation::RackColumnNotBijective { column: 0 }));
    }

    #[test]
    fn trivial_racks() {
        let one = Rack::from_table(vec![vec![0]]).unwrap();
        assert!(is_quandle(&one));
        let t2 = Rack::from_table(vec![vec![0, 0], vec![1, 1]]).unwrap();
        assert!(!is_connected(&t2));
    }

    #[test]
    fn inverse_operation_inverts() {
        let d = Rack::from_table(dihedral3()).unwrap();
        for x in 0..3 {
            for y in 0..3 {
                assert_eq!(d.op_inv(d.op(x, y), y), x);
                assert_eq!(d.op(d.op_inv(x, y), y), x);
            }
        }
    }
}
