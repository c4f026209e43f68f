use std::fmt;

use serde::Serialize;

use crate::error::StructuralError;

/// One failed axiom together with the witness that breaks it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "axiom", rename_all = "snake_case")]
pub enum Violation {
    GroupIdentity { element: usize },
    GroupRowNotPermutation { row: usize },
    GroupColumnNotPermutation { column: usize },
    NonAssociative { a: usize, b: usize, c: usize },
    RackColumnNotBijective { column: usize },
    NotSelfDistributive { x: usize, y: usize, z: usize },
    ActionIdentity { x: usize },
    ActionNotCompatible { x: usize, g: usize, h: usize },
    NotEquivariant { x: usize, g: usize },
    DerivedOperation { x: usize, y: usize },
    InvolutionNotInvolutive { x: usize },
    InvolutionNotRackInverse { x: usize, y: usize },
    InvolutionNotCompatible { x: usize, y: usize },
    InvolutionNotInverseAugmentation { x: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Violation::*;
        match *self {
            GroupIdentity { element } => {
                write!(f, "identity does not fix element {element}")
            }
            GroupRowNotPermutation { row } => write!(f, "row {row} is not a permutation"),
            GroupColumnNotPermutation { column } => {
                write!(f, "column {column} is not a permutation")
            }
            NonAssociative { a, b, c } => write!(f, "({a}{b}){c} != {a}({b}{c})"),
            RackColumnNotBijective { column } => {
                write!(f, "column {column} of the rack table is not bijective")
            }
            NotSelfDistributive { x, y, z } => {
                write!(f, "({x}*{y})*{z} != ({x}*{z})*({y}*{z})")
            }
            ActionIdentity { x } => write!(f, "{x}·e != {x}"),
            ActionNotCompatible { x, g, h } => write!(f, "({x}·{g})·{h} != {x}·({g}{h})"),
            NotEquivariant { x, g } => write!(f, "nu({x}·{g}) != {g}^-1 nu({x}) {g}"),
            DerivedOperation { x, y } => write!(f, "{x}*{y} != {x}·nu({y})"),
            InvolutionNotInvolutive { x } => write!(f, "rho(rho({x})) != {x}"),
            InvolutionNotRackInverse { x, y } => {
                write!(f, "{x}*rho({y}) != {x} inverse-op {y}")
            }
            InvolutionNotCompatible { x, y } => {
                write!(f, "rho({x}*{y}) != rho({x})*{y}")
            }
            InvolutionNotInverseAugmentation { x } => {
                write!(f, "nu(rho({x})) != nu({x})^-1")
            }
        }
    }
}

/// Result of an axiom check: empty means every axiom holds.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violations(&self) -> &[Violation] {
        &self.violations
    }

    pub(crate) fn push(&mut self, v: Violation) {
        self.violations.push(v);
    }

    pub(crate) fn extend(&mut self, other: ValidationReport) {
        self.violations.extend(other.violations);
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            return write!(f, "ok");
        }
        let parts: Vec<String> = self.violations.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", parts.join("; "))
    }
}

pub(crate) fn check_table(
    what: &str,
    table: &[Vec<usize>],
    rows: usize,
    cols: usize,
    bound: usize,
) -> Result<(), StructuralError> {
    if table.len() != rows {
        return Err(StructuralError::WrongLength {
            what: what.into(),
            expected: rows,
            found: table.len(),
        });
    }
    for (i, row) in table.iter().enumerate() {
        if row.len() != cols {
            return Err(StructuralError::WrongLength {
                what: format!("{what} row {i}"),
                expected: cols,
                found: row.len(),
            });
        }
        check_list(&format!("{what} row {i}"), row, cols, bound)?;
    }
    Ok(())
}

pub(crate) fn check_list(
    what: &str,
    list: &[usize],
    len: usize,
    bound: usize,
) -> Result<(), StructuralError> {
    if list.len() != len {
        return Err(StructuralError::WrongLength {
            what: what.into(),
            expected: len,
            found: list.len(),
        });
    }
    if let Some((j, &v)) = list.iter().enumerate().find(|(_, &v)| v >= bound) {
        return Err(StructuralError::OutOfRange {
            what: what.into(),
            position: j.to_string(),
            value: v,
            bound,
        });
    }
    Ok(())
}
