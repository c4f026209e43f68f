//! JSON formats and name resolution for command-line inputs.
//!
//! Structures and diagrams may be given as a file path or by name (a fixture
//! such as `R3S3`, or a catalog entry such as `theta`). Cochains are written
//! as `{"coeff":{"factors":[..]},"values":[..]}` with one integer vector per
//! entry; a bare integer is accepted when `A` is cyclic.

use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{
    fixtures, validate_augmented_rack, validate_group, validate_rack, AugmentedData, AugmentedRack,
    CoeffGroup, GroupData, RackData, ValidationReport,
};
use crate::cohomology::{Cochain1, Cochain2};
use crate::diagrams::{catalog_diagram, CatalogEntry, DiagramError, RibbonDiagram};
use crate::error::{AlgebraError, StructuralError};

#[derive(Debug, Error)]
pub enum InputError {
    /// Unreadable or malformed input.
    #[error("{0}")]
    Schema(String),
    /// Well-formed input that fails an axiom or a validity check.
    #[error("{0}")]
    Invalid(String),
}

impl From<StructuralError> for InputError {
    fn from(e: StructuralError) -> Self {
        InputError::Schema(e.to_string())
    }
}

impl From<AlgebraError> for InputError {
    fn from(e: AlgebraError) -> Self {
        match e {
            AlgebraError::Structural(s) => s.into(),
            other => InputError::Invalid(other.to_string()),
        }
    }
}

impl From<DiagramError> for InputError {
    fn from(e: DiagramError) -> Self {
        InputError::Invalid(e.to_string())
    }
}

fn read_json(path: &str) -> Result<serde_json::Value, InputError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| InputError::Schema(format!("cannot read {path}: {e}")))?;
    serde_json::from_str(&text).map_err(|e| InputError::Schema(format!("{path}: {e}")))
}

fn decode<T: for<'de> Deserialize<'de>>(v: serde_json::Value, what: &str) -> Result<T, InputError> {
    serde_json::from_value(v).map_err(|e| InputError::Schema(format!("not a valid {what}: {e}")))
}

fn is_file(arg: &str) -> bool {
    Path::new(arg).is_file()
}

/// Resolves a fixture name or reads an augmented rack file.
pub fn load_structure(arg: &str) -> Result<AugmentedRack, InputError> {
    if !is_file(arg) {
        if let Some(x) = fixtures::fixture(arg) {
            return Ok(x);
        }
    }
    let data: AugmentedData = decode(read_json(arg)?, "augmented rack")?;
    Ok(structure_from_data(&data)?)
}

pub fn structure_from_data(data: &AugmentedData) -> Result<AugmentedRack, AlgebraError> {
    let report = validate_augmented_rack(data)?;
    if !report.is_ok() {
        return Err(AlgebraError::Axioms(report));
    }
    let g = crate::algebra::FiniteGroup::from_table(data.group.table.clone(), data.group.identity)?;
    AugmentedRack::new(g, data.action.clone(), data.nu.clone(), data.rho.clone())
}

/// Resolves a catalog diagram name or reads a diagram file.
pub fn load_diagram(arg: &str) -> Result<RibbonDiagram, InputError> {
    if !is_file(arg) {
        if let Ok(entry) = catalog_diagram(arg) {
            return match entry {
                CatalogEntry::Diagram(d) => Ok(d),
                CatalogEntry::Pair(p) => Ok(p.before),
            };
        }
    }
    let raw: RibbonDiagram = decode(read_json(arg)?, "diagram")?;
    Ok(RibbonDiagram::new(raw.arcs, raw.crossings, raw.vertices, raw.closures)?)
}

/// What a JSON document holds, judged by its fields.
#[derive(Debug, Clone)]
pub enum Document {
    Group(GroupData),
    Rack(RackData),
    Structure(AugmentedData),
    Diagram(RibbonDiagram),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Group(_) => "group",
            Document::Rack(_) => "rack",
            Document::Structure(_) => "augmented rack",
            Document::Diagram(_) => "diagram",
        }
    }
}

/// Reads any input accepted by `validate`: a file, a fixture or a catalog name.
pub fn load_document(arg: &str) -> Result<Document, InputError> {
    if !is_file(arg) {
        if let Some(x) = fixtures::fixture(arg) {
            return Ok(Document::Structure(x.to_data()));
        }
        if let Ok(d) = load_diagram(arg) {
            return Ok(Document::Diagram(d));
        }
    }
    let v = read_json(arg)?;
    let has = |k: &str| v.get(k).is_some();
    if has("action") && has("nu") {
        Ok(Document::Structure(decode(v, "augmented rack")?))
    } else if has("table") && has("identity") {
        Ok(Document::Group(decode(v, "group")?))
    } else if has("op") && has("size") {
        Ok(Document::Rack(decode(v, "rack")?))
    } else if has("arcs") {
        Ok(Document::Diagram(decode(v, "diagram")?))
    } else {
        Err(InputError::Schema(format!(
            "{arg}: cannot tell what this document is (expected a group, rack, augmented rack or diagram)"
        )))
    }
}

/// Axiom check of a document; diagrams report their first defect.
pub fn validate_document(doc: &Document) -> Result<ValidationReport, InputError> {
    Ok(match doc {
        Document::Group(g) => validate_group(g)?,
        Document::Rack(r) => validate_rack(r)?,
        Document::Structure(x) => validate_augmented_rack(x)?,
        Document::Diagram(d) => {
            let mut d = d.clone();
            d.arcs.sort_unstable();
            d.closures.sort_unstable();
            crate::diagrams::validate_diagram(&d)?;
            ValidationReport::default()
        }
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoeffSpec {
    pub factors: Vec<u64>,
}

impl CoeffSpec {
    pub fn group(&self) -> Result<CoeffGroup, StructuralError> {
        CoeffGroup::new(self.factors.clone())
    }

    pub fn of(a: &CoeffGroup) -> Self {
        CoeffSpec {
            factors: a.factors().to_vec(),
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
enum Entry {
    Scalar(i64),
    Vector(Vec<i64>),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
enum Values {
    Table(Vec<Vec<Entry>>),
    List(Vec<Entry>),
}

#[derive(Debug, Clone, Deserialize)]
struct CochainDoc {
    coeff: CoeffSpec,
    values: Values,
}

#[derive(Serialize)]
struct CochainOut<T> {
    coeff: CoeffSpec,
    values: T,
}

fn entry(a: &CoeffGroup, e: &Entry) -> Result<u32, InputError> {
    let v = match e {
        Entry::Scalar(s) if a.factors().len() == 1 => vec![*s],
        Entry::Scalar(_) => {
            return Err(InputError::Schema(
                "scalar entry given for a non-cyclic coefficient group".into(),
            ))
        }
        Entry::Vector(v) => v.clone(),
    };
    if v.len() != a.factors().len() {
        return Err(InputError::Schema(format!(
            "entry {v:?} has {} components, expected {}",
            v.len(),
            a.factors().len()
        )));
    }
    Ok(a.from_components(&v))
}

/// A 2-cochain and its coefficient group.
pub fn cochain2_from_json(v: serde_json::Value) -> Result<(CoeffGroup, Cochain2), InputError> {
    let doc: CochainDoc = decode(v, "2-cochain")?;
    let a = doc.coeff.group()?;
    let Values::Table(rows) = doc.values else {
        return Err(InputError::Schema("2-cochain values must be a square table".into()));
    };
    let n = rows.len();
    if rows.iter().any(|r| r.len() != n) {
        return Err(InputError::Schema("2-cochain values must be a square table".into()));
    }
    let flat = rows
        .iter()
        .flatten()
        .map(|e| entry(&a, e))
        .collect::<Result<Vec<_>, _>>()?;
    Ok((a, Cochain2::from_values(n, flat)))
}

pub fn cochain1_from_json(v: serde_json::Value) -> Result<(CoeffGroup, Cochain1), InputError> {
    let doc: CochainDoc = decode(v, "1-cochain")?;
    let a = doc.coeff.group()?;
    let flat = match doc.values {
        Values::List(l) => l.iter().map(|e| entry(&a, e)).collect::<Result<Vec<_>, _>>()?,
        Values::Table(t) => t
            .iter()
            .map(|v| {
                let comps: Option<Vec<i64>> = v
                    .iter()
                    .map(|e| match e {
                        Entry::Scalar(s) => Some(*s),
                        Entry::Vector(_) => None,
                    })
                    .collect();
                comps
                    .ok_or_else(|| InputError::Schema("1-cochain entries must be vectors".into()))
                    .and_then(|c| entry(&a, &Entry::Vector(c)))
            })
            .collect::<Result<Vec<_>, _>>()?,
    };
    Ok((a, Cochain1::from_values(flat)))
}

pub fn cochain2_to_json(a: &CoeffGroup, c: &Cochain2) -> serde_json::Value {
    let n = c.size();
    let values: Vec<Vec<Vec<i64>>> = (0..n)
        .map(|p| (0..n).map(|q| a.components(c.get(p, q))).collect())
        .collect();
    serde_json::to_value(CochainOut {
        coeff: CoeffSpec::of(a),
        values,
    })
    .expect("serializable")
}

pub fn cochain1_to_json(a: &CoeffGroup, c: &Cochain1) -> serde_json::Value {
    let values: Vec<Vec<i64>> = c.values().iter().map(|&v| a.components(v)).collect();
    serde_json::to_value(CochainOut {
        coeff: CoeffSpec::of(a),
        values,
    })
    .expect("serializable")
}

/// Reads a 2-cochain file; `zero` gives the zero cochain on `n` points over `a`.
pub fn load_cochain2(arg: &str, n: usize, a: &CoeffGroup) -> Result<(CoeffGroup, Cochain2), InputError> {
    if arg.eq_ignore_ascii_case("zero") && !is_file(arg) {
        return Ok((a.clone(), Cochain2::zero(n)));
    }
    cochain2_from_json(read_json(arg)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn cochain_round_trip() {
        let a = CoeffGroup::new(vec![2, 3]).unwrap();
        let c = Cochain2::from_fn(3, |p, q| ((p * 3 + q) % 6) as u32);
        let v = cochain2_to_json(&a, &c);
        let (b, d) = cochain2_from_json(v).unwrap();
        assert_eq!(b, a);
        assert_eq!(d, c);
        let xi = Cochain1::from_values(vec![5, 0, 3]);
        let (_, back) = cochain1_from_json(cochain1_to_json(&a, &xi)).unwrap();
        assert_eq!(back, xi);
    }

    #[test]
    fn scalar_entries_for_cyclic_coefficients() {
        let (a, c) =
            cochain2_from_json(json!({"coeff":{"factors":[2]},"values":[[0,1],[1,3]]})).unwrap();
        assert_eq!(a.size(), 2);
        assert_eq!((c.get(0, 1), c.get(1, 1)), (1, 1));
        let bad = cochain2_from_json(json!({"coeff":{"factors":[2,2]},"values":[[0]]}));
        assert!(matches!(bad, Err(InputError::Schema(_))));
        let ragged = cochain2_from_json(json!({"coeff":{"factors":[2]},"values":[[0,1],[1]]}));
        assert!(matches!(ragged, Err(InputError::Schema(_))));
    }

    #[test]
    fn names_resolve() {
        assert_eq!(load_structure("Q5").unwrap().size(), 5);
        assert_eq!(load_diagram("theta").unwrap().vertex_count(), 2);
        assert!(matches!(load_document("R3S3"), Ok(Document::Structure(_))));
        assert!(matches!(load_structure("nope.json"), Err(InputError::Schema(_))));
    }

    #[test]
    fn documents_are_recognised() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("g.json");
        let g = crate::algebra::FiniteGroup::cyclic(3).to_data();
        std::fs::write(&path, serde_json::to_string(&g).unwrap()).unwrap();
        let doc = load_document(path.to_str().unwrap()).unwrap();
        assert_eq!(doc.kind(), "group");
        assert!(validate_document(&doc).unwrap().is_ok());
    }
}
