//! Command-line front end. [`run`] takes the arguments and output streams so
//! that it can be driven from tests; the binary only forwards to it.

use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use serde_json::{json, Value};

use crate::algebra::{is_connected, AugmentedRack, CoeffGroup};
use crate::cohomology::{
    check_property, cohomology_group, eta_derived_phi, Cochain2, CoboundaryMode, CocycleValue,
    Flavor, Property,
};
use crate::diagrams::{
    all_movepairs, catalog_diagram, reverse_arc_orientation, RibbonDiagram, CATALOG_NAMES,
};
use crate::extensions::{
    augmented_isomorphism, build_augmented_extension, build_central_extension,
    build_g_rack_extension, conjugacy_lift, equivalence_g_rack, ExtensionError, SearchMode,
};
use crate::invariants::{
    coloring_count, enumerate_colorings, state_sum_phi, state_sum_phi_eta, Checks,
    InvariantError, StateSum,
};
use crate::io::{
    cochain1_to_json, cochain2_from_json, cochain2_to_json, load_cochain2, load_diagram,
    load_document, load_structure, validate_document, InputError,
};

#[derive(Debug, Parser)]
#[command(name = "augrack", version, about = "Augmented racks, their cohomology, extensions and ribbon invariants")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ExtendKind {
    Grack,
    Central,
    Simultaneous,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModeArg {
    Fibrant,
    All,
    Both,
}

impl From<ModeArg> for SearchMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Fibrant => SearchMode::Fibrant,
            ModeArg::All => SearchMode::All,
            ModeArg::Both => SearchMode::Both,
        }
    }
}

fn parse_flavor(s: &str) -> Result<Flavor, String> {
    serde_json::from_value(Value::String(s.to_ascii_lowercase()))
        .map_err(|_| format!("unknown flavor {s:?} (expected rf+, r+, rf, r, gn or ar)"))
}

fn parse_coeff(s: &str) -> Result<CoeffGroup, String> {
    s.parse()
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Checks the axioms of a group, rack, augmented rack or diagram.
    Validate {
        /// File, fixture name or catalog name.
        input: String,
    },
    /// Cocycle space and second cohomology of one flavor.
    Cohomology {
        #[arg(long)]
        structure: String,
        #[arg(long, default_value = "2", value_parser = parse_coeff)]
        coeff: CoeffGroup,
        #[arg(long, value_parser = parse_flavor)]
        flavor: Flavor,
        /// Toggle the fibrant restriction on coboundaries.
        #[arg(long)]
        alt_coboundaries: bool,
        /// Also list every cocycle.
        #[arg(long)]
        members: bool,
    },
    /// The rack 2-cocycle derived from a group 2-cocycle.
    Derive {
        #[arg(long)]
        structure: String,
        #[arg(long)]
        eta: String,
    },
    /// Builds an extension and prints its total structure.
    Extend {
        #[arg(long, value_enum)]
        kind: ExtendKind,
        #[arg(long)]
        structure: String,
        #[arg(long)]
        phi: Option<String>,
        #[arg(long)]
        eta: Option<String>,
        /// For central extensions: lift these conjugacy-class representatives
        /// of the total group to an augmented rack instead.
        #[arg(long, value_delimiter = ',')]
        lift: Vec<usize>,
    },
    /// Searches an equivalence between two extensions.
    Equiv {
        #[arg(long)]
        structure: String,
        #[arg(long)]
        phi1: String,
        #[arg(long)]
        phi2: String,
        #[arg(long, requires = "eta2")]
        eta1: Option<String>,
        #[arg(long, requires = "eta1")]
        eta2: Option<String>,
        #[arg(long, value_enum, default_value = "both")]
        mode: ModeArg,
    },
    /// Lists the colorings of a diagram.
    Colorings {
        #[arg(long)]
        diagram: String,
        #[arg(long)]
        structure: String,
    },
    /// Coloring counts or a state sum of a diagram.
    Invariant {
        #[command(flatten)]
        weights: Weights,
        #[arg(long)]
        diagram: String,
    },
    /// Evaluates every catalog move pair on both sides.
    MovesCheck {
        #[command(flatten)]
        weights: Weights,
        /// Random arc reversals tried on each diagram.
        #[arg(long, default_value_t = 1)]
        reversals: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Named diagrams and move pairs.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
}

#[derive(Debug, clap::Args)]
struct Weights {
    #[arg(long)]
    structure: String,
    /// Rack 2-cocycle file, or `zero`.
    #[arg(long)]
    phi: Option<String>,
    /// Group 2-cocycle file; without `--phi` the derived cocycle is used.
    #[arg(long)]
    eta: Option<String>,
    /// Coefficients for `--phi zero`.
    #[arg(long, default_value = "2", value_parser = parse_coeff)]
    coeff: CoeffGroup,
    /// Skip the hypothesis checks on the cocycles.
    #[arg(long)]
    unchecked: bool,
}

#[derive(Debug, Subcommand)]
enum CatalogAction {
    List,
    Emit { name: String },
}

/// A failed command: exit code 2 for schema errors, 1 otherwise.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
    detail: Option<Value>,
}

impl Failure {
    fn invalid(message: impl Into<String>) -> Self {
        Failure {
            code: 1,
            message: message.into(),
            detail: None,
        }
    }

    fn schema(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            message: message.into(),
            detail: None,
        }
    }
}

impl From<InputError> for Failure {
    fn from(e: InputError) -> Self {
        match e {
            InputError::Schema(m) => Failure::schema(m),
            InputError::Invalid(m) => Failure::invalid(m),
        }
    }
}

impl From<InvariantError> for Failure {
    fn from(e: InvariantError) -> Self {
        match &e {
            InvariantError::Hypothesis(w) => Failure {
                code: 1,
                message: e.to_string(),
                detail: Some(json!(w)),
            },
            InvariantError::Size(_) => Failure::schema(e.to_string()),
            _ => Failure::invalid(e.to_string()),
        }
    }
}

impl From<ExtensionError> for Failure {
    fn from(e: ExtensionError) -> Self {
        match &e {
            ExtensionError::Size { .. } => Failure::schema(e.to_string()),
            ExtensionError::NotGroupCocycle(w) | ExtensionError::Hypothesis(w) => Failure {
                code: 1,
                message: e.to_string(),
                detail: Some(json!(w)),
            },
            _ => Failure::invalid(e.to_string()),
        }
    }
}

struct Output {
    json: Value,
    /// Human-readable text for stderr.
    note: Option<String>,
    code: i32,
}

impl Output {
    fn ok(json: Value) -> Self {
        Output {
            json,
            note: None,
            code: 0,
        }
    }
}

/// Parses `args` (including the program name), runs the command and returns
/// the exit code. Results go to `out` as JSON; warnings, tables and errors go
/// to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(err, "{e}");
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
        }
    };
    match execute(cli.command, err) {
        Ok(o) => {
            let _ = writeln!(out, "{}", pretty(&o.json));
            if let Some(n) = o.note {
                let _ = write!(err, "{n}");
            }
            o.code
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            if let Some(d) = f.detail {
                let _ = writeln!(out, "{}", pretty(&json!({"error": f.message, "witness": d})));
            }
            f.code
        }
    }
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("serializable")
}

fn read_cochain(path: &str) -> Result<(CoeffGroup, Cochain2), Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::schema(format!("cannot read {path}: {e}")))?;
    let v: Value =
        serde_json::from_str(&text).map_err(|e| Failure::schema(format!("{path}: {e}")))?;
    Ok(cochain2_from_json(v)?)
}

fn cocycle_json(a: &CoeffGroup, v: &CocycleValue) -> Value {
    let mut m = serde_json::Map::new();
    if let Some(phi) = &v.phi {
        m.insert("phi".into(), cochain2_to_json(a, phi));
    }
    if let Some(eta) = &v.eta {
        m.insert("eta".into(), cochain2_to_json(a, eta));
    }
    Value::Object(m)
}

fn warn_if_disconnected(x: &AugmentedRack, err: &mut dyn Write) {
    if !is_connected(x.rack()) {
        let _ = writeln!(
            err,
            "warning: the rack is not connected; coloring counts need not be invariant"
        );
    }
}

/// The cocycles requested by `--phi`/`--eta`, or `None` for plain counts.
enum Weighting {
    Counts,
    Phi(CoeffGroup, Cochain2),
    PhiEta(CoeffGroup, Cochain2, Cochain2),
}

fn weighting(w: &Weights, x: &AugmentedRack) -> Result<Weighting, Failure> {
    let eta = match &w.eta {
        Some(p) => Some(read_cochain(p)?),
        None => None,
    };
    let phi = match &w.phi {
        Some(p) => {
            let a = eta.as_ref().map_or(&w.coeff, |(a, _)| a);
            Some(load_cochain2(p, x.size(), a)?)
        }
        None => None,
    };
    Ok(match (phi, eta) {
        (None, None) => Weighting::Counts,
        (Some((a, phi)), None) => Weighting::Phi(a, phi),
        (Some((a, phi)), Some((b, eta))) => {
            if a != b {
                return Err(Failure::schema(format!(
                    "phi has coefficients {a}, eta has {b}"
                )));
            }
            Weighting::PhiEta(a, phi, eta)
        }
        (None, Some((a, eta))) => {
            let phi = eta_derived_phi(&eta, x, &a).map_err(|e| Failure::invalid(e.to_string()))?;
            Weighting::PhiEta(a, phi, eta)
        }
    })
}

fn evaluate(
    d: &RibbonDiagram,
    x: &AugmentedRack,
    w: &Weighting,
    checks: Checks,
) -> Result<StateSum, InvariantError> {
    match w {
        Weighting::Counts => {
            let a = CoeffGroup::cyclic(1);
            state_sum_phi(d, x, &a, &Cochain2::zero(x.size()), Checks::Unchecked)
        }
        Weighting::Phi(a, phi) => state_sum_phi(d, x, a, phi, checks),
        Weighting::PhiEta(a, phi, eta) => state_sum_phi_eta(d, x, a, phi, eta, checks),
    }
}

fn table(s: &StateSum) -> String {
    let mut t = String::from("component  value  count\n");
    for (i, h) in s.components.iter().enumerate() {
        for (&k, &n) in h {
            let v: Vec<String> = s.coeff.components(k).iter().map(i64::to_string).collect();
            t.push_str(&format!("{i:>9}  ({})  {n}\n", v.join(",")));
        }
    }
    t
}

fn checks_of(w: &Weights) -> Checks {
    if w.unchecked {
        Checks::Unchecked
    } else {
        Checks::Enforce
    }
}

fn execute(cmd: Command, err: &mut dyn Write) -> Result<Output, Failure> {
    match cmd {
        Command::Validate { input } => {
            let doc = load_document(&input)?;
            let report = validate_document(&doc)?;
            let code = if report.is_ok() { 0 } else { 1 };
            Ok(Output {
                json: json!({"kind": doc.kind(), "ok": report.is_ok(), "violations": report.violations()}),
                note: None,
                code,
            })
        }
        Command::Cohomology {
            structure,
            coeff,
            flavor,
            alt_coboundaries,
            members,
        } => {
            let x = load_structure(&structure)?;
            if matches!(flavor, Flavor::RPlus | Flavor::RFPlus | Flavor::AR) && x.rho().is_none() {
                let _ = writeln!(err, "note: structure has no good involution");
            }
            let mode = if alt_coboundaries {
                CoboundaryMode::Alternate
            } else {
                CoboundaryMode::Default
            };
            let h = cohomology_group(flavor, &x, &coeff, mode);
            let space = h.space();
            let mut cocycles = json!({
                "order": space.order(),
                "invariant_factors": space.invariant_factors(),
                "generators": space.generators().iter().map(|v| cocycle_json(&coeff, v)).collect::<Vec<_>>(),
            });
            if members {
                cocycles["members"] = space
                    .members()
                    .iter()
                    .map(|v| cocycle_json(&coeff, v))
                    .collect();
            }
            Ok(Output::ok(json!({
                "flavor": flavor,
                "coeff": coeff.factors(),
                "coboundaries": mode,
                "cocycles": cocycles,
                "cohomology": {
                    "order": h.order(),
                    "invariant_factors": h.invariant_factors(),
                    "representatives": h.representatives().iter().map(|v| cocycle_json(&coeff, v)).collect::<Vec<_>>(),
                },
            })))
        }
        Command::Derive { structure, eta } => {
            let x = load_structure(&structure)?;
            let (a, eta) = read_cochain(&eta)?;
            if eta.size() != x.group().order() {
                return Err(Failure::schema(format!(
                    "eta is defined on {} points, the group has {}",
                    eta.size(),
                    x.group().order()
                )));
            }
            let phi = eta_derived_phi(&eta, &x, &a).map_err(|e| Failure::invalid(e.to_string()))?;
            let mut props = vec![
                Property::Fibrant,
                Property::Additive,
                Property::Consistent,
                Property::PreAdditive,
            ];
            if x.rho().is_some() {
                props.push(Property::Symmetric);
            }
            let mut report = serde_json::Map::new();
            for p in props {
                let r = check_property(&x, &a, &phi, p).map_err(|e| Failure::invalid(e.to_string()))?;
                report.insert(
                    p.kind().to_string(),
                    match r {
                        Ok(()) => json!(true),
                        Err(w) => json!(w),
                    },
                );
            }
            Ok(Output::ok(json!({"phi": cochain2_to_json(&a, &phi), "properties": report})))
        }
        Command::Extend {
            kind,
            structure,
            phi,
            eta,
            lift,
        } => {
            let x = load_structure(&structure)?;
            let need = |o: &Option<String>, name: &str| {
                o.as_deref()
                    .ok_or_else(|| Failure::schema(format!("--{name} is required for this kind")))
                    .and_then(read_cochain)
            };
            let json = match kind {
                ExtendKind::Grack => {
                    let (a, phi) = need(&phi, "phi")?;
                    let e = build_g_rack_extension(&x, &a, &phi)?;
                    json!(e.total().to_data())
                }
                ExtendKind::Central => {
                    let (a, eta) = need(&eta, "eta")?;
                    let e = build_central_extension(x.group(), &a, &eta)?;
                    if lift.is_empty() {
                        json!(e.total().to_data())
                    } else {
                        json!(conjugacy_lift(&e, &lift)?.rack.to_data())
                    }
                }
                ExtendKind::Simultaneous => {
                    let (a, eta) = need(&eta, "eta")?;
                    let phi = match &phi {
                        Some(p) => read_cochain(p)?.1,
                        None => eta_derived_phi(&eta, &x, &a)
                            .map_err(|e| Failure::invalid(e.to_string()))?,
                    };
                    let e = build_augmented_extension(&x, &a, &phi, &eta)?;
                    json!(e.total().to_data())
                }
            };
            Ok(Output::ok(json))
        }
        Command::Equiv {
            structure,
            phi1,
            phi2,
            eta1,
            eta2,
            mode,
        } => {
            let x = load_structure(&structure)?;
            let (a, p1) = read_cochain(&phi1)?;
            let (_, p2) = read_cochain(&phi2)?;
            let found = match (eta1, eta2) {
                (Some(e1), Some(e2)) => {
                    let (_, e1) = read_cochain(&e1)?;
                    let (_, e2) = read_cochain(&e2)?;
                    augmented_isomorphism(&x, &a, (&p1, &e1), (&p2, &e2), mode.into())?
                }
                _ => equivalence_g_rack(&x, &a, &p1, &p2, mode.into())?,
            };
            Ok(Output::ok(match found {
                None => json!({"equivalent": false}),
                Some(w) => json!({
                    "equivalent": true,
                    "xi": cochain1_to_json(&a, &w.xi),
                    "xi_class": w.xi_class,
                    "zeta": w.zeta.as_ref().map(|z| cochain1_to_json(&a, z)),
                }),
            }))
        }
        Command::Colorings { diagram, structure } => {
            let x = load_structure(&structure)?;
            let d = load_diagram(&diagram)?;
            warn_if_disconnected(&x, err);
            let cs = enumerate_colorings(&d, &x)?;
            Ok(Output::ok(json!({
                "arcs": d.arcs,
                "counts": coloring_count(&d, &x)?,
                "colorings": cs.iter().map(|c| &c.colors).collect::<Vec<_>>(),
            })))
        }
        Command::Invariant { weights, diagram } => {
            let x = load_structure(&weights.structure)?;
            let d = load_diagram(&diagram)?;
            warn_if_disconnected(&x, err);
            let w = weighting(&weights, &x)?;
            let s = evaluate(&d, &x, &w, checks_of(&weights))?;
            Ok(Output {
                json: json!(s),
                note: Some(table(&s)),
                code: 0,
            })
        }
        Command::MovesCheck {
            weights,
            reversals,
            seed,
        } => {
            let x = load_structure(&weights.structure)?;
            warn_if_disconnected(&x, err);
            let w = weighting(&weights, &x)?;
            let checks = checks_of(&weights);
            let mut rng = StdRng::seed_from_u64(seed);
            let mut rows = Vec::new();
            let mut all_equal = true;
            let mut summary = String::new();
            for p in all_movepairs() {
                let counts = (coloring_count(&p.before, &x)?, coloring_count(&p.after, &x)?);
                let sums = (
                    evaluate(&p.before, &x, &w, checks)?,
                    evaluate(&p.after, &x, &w, checks)?,
                );
                let mut flips = Vec::new();
                for _ in 0..reversals {
                    let arc = *p.before.arcs.choose(&mut rng).expect("nonempty diagram");
                    let r = reverse_arc_orientation(&p.before, arc)
                        .map_err(|e| Failure::invalid(e.to_string()))?;
                    let equal = evaluate(&r, &x, &w, checks)? == sums.0;
                    flips.push(json!({"arc": arc, "equal": equal}));
                    all_equal &= equal;
                }
                let counts_equal = counts.0 == counts.1;
                let sums_equal = sums.0 == sums.1;
                all_equal &= counts_equal && sums_equal;
                summary.push_str(&format!(
                    "{}({}) counts {} state sum {}\n",
                    p.kind,
                    p.index,
                    if counts_equal { "equal" } else { "UNEQUAL" },
                    if sums_equal { "equal" } else { "UNEQUAL" },
                ));
                rows.push(json!({
                    "kind": p.kind,
                    "index": p.index,
                    "coloring_count": {"before": counts.0, "after": counts.1, "equal": counts_equal},
                    "state_sum": {"before": sums.0, "after": sums.1, "equal": sums_equal},
                    "reversals": flips,
                }));
            }
            Ok(Output {
                json: json!({"seed": seed, "all_equal": all_equal, "pairs": rows}),
                note: Some(summary),
                code: if all_equal { 0 } else { 1 },
            })
        }
        Command::Catalog { action } => match action {
            CatalogAction::List => Ok(Output::ok(json!(CATALOG_NAMES))),
            CatalogAction::Emit { name } => {
                let entry = catalog_diagram(&name).map_err(|e| Failure::schema(e.to_string()))?;
                Ok(Output::ok(json!(entry)))
            }
        },
    }
}
