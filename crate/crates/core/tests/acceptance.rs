//! The ten acceptance criteria, one line each with its timing.
//!
//! Every criterion runs in full. A criterion that fails is printed as FAIL;
//! the test itself fails unless the set of failing criteria is exactly
//! `KNOWN_FAILURES`, so both new failures and unexpected recoveries surface.

use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;

mod common;

use common::{mutations, oracle_valid};

use augrack::algebra::{
    fixtures, is_connected, validate_augmented_rack, AugmentedData, AugmentedRack, FiniteGroup,
};
use augrack::cohomology::{
    additive, cocycle_space, cocycle_space_exhaustive, cohomology_group, delta_rack1,
    eta_derived_phi, fibrant, phi_hat, rack_cocycle, Cochain1, Cochain2, CoboundaryMode, Flavor,
};
use augrack::diagrams::{all_movepairs, catalog};
use augrack::extensions::{
    augmented_isomorphism, build_central_extension, compatibility_check, count_classes,
    equivalence_g_rack, SearchMode,
};
use augrack::invariants::{coloring_count, state_sum_phi, state_sum_phi_eta, Checks};
use augrack::CoeffGroup;

/// Criteria expected to fail, with the reason printed next to them.
const KNOWN_FAILURES: &[(usize, &str)] = &[
    (1, "C2 has only 16 in-range single-entry mutations"),
    (7, "Q5 is not a connected rack; the IH move changes its coloring counts"),
];

/// Mutations drawn per fixture.
const MUTATIONS_PER_FIXTURE: usize = 20;

type Outcome = Result<String, String>;

fn z(n: u64) -> CoeffGroup {
    CoeffGroup::cyclic(n)
}

// ---- criterion 1 ---------------------------------------------------------

fn criterion_1() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0);
    let mut rejected = 0;
    let mut short = Vec::new();
    for name in ["T", "C2", "R3S3", "Q5"] {
        let data = fixtures::fixture(name).unwrap().to_data();
        if !oracle_valid(&data) || !validate_augmented_rack(&data).unwrap().is_ok() {
            return Err(format!("{name} fixture not accepted"));
        }
        let mut broken: Vec<AugmentedData> =
            mutations(&data).into_iter().filter(|m| !oracle_valid(m)).collect();
        broken.shuffle(&mut rng);
        broken.truncate(MUTATIONS_PER_FIXTURE);
        for m in &broken {
            let report = validate_augmented_rack(m).map_err(|e| e.to_string())?;
            if report.is_ok() {
                return Err(format!("{name}: a breaking mutation was accepted"));
            }
        }
        rejected += broken.len();
        if broken.len() < MUTATIONS_PER_FIXTURE {
            short.push(format!("{name} has only {} breaking mutations", broken.len()));
        }
    }
    let detail = format!("4 fixtures accepted, {rejected} mutations rejected");
    if short.is_empty() {
        Ok(detail)
    } else {
        Err(format!("{detail}; {}", short.join(", ")))
    }
}

// ---- criteria 2 and 3 ----------------------------------------------------

fn criterion_2() -> Outcome {
    let a = z(2);
    for x in [fixtures::c2(), fixtures::r3s3()] {
        for xi in Cochain1::all(x.size(), &a) {
            let d = delta_rack1(x.rack(), &a, &xi);
            if let Err(w) = additive(&x, &a, &d) {
                return Err(format!("coboundary of {:?} not additive: {w}", xi.values()));
            }
            let is_fibrant = (0..x.size())
                .all(|p| (0..x.size()).all(|q| x.nu(p) != x.nu(q) || xi.get(p) == xi.get(q)));
            if is_fibrant {
                if let Err(w) = fibrant(&x, &d) {
                    return Err(format!("coboundary of fibrant {:?}: {w}", xi.values()));
                }
            }
        }
    }
    Ok("all 4 + 8 coboundaries additive, fibrant ones fibrant".into())
}

fn criterion_3() -> Outcome {
    let a = z(2);
    let mut counts = Vec::new();
    for x in [fixtures::c2(), fixtures::r3s3()] {
        let mut passing = 0;
        let mut total = 0;
        for phi in Cochain2::all(x.size(), &a) {
            total += 1;
            if fibrant(&x, &phi).is_ok() && additive(&x, &a, &phi).is_ok() && phi_hat(&x, &a, &phi).is_ok() {
                passing += 1;
                if let Err(w) = rack_cocycle(&x, &a, &phi) {
                    return Err(format!("fibrant additive cochain is not a cocycle: {w}"));
                }
            }
        }
        counts.push(format!("{passing}/{total}"));
    }
    Ok(format!("fibrant-additive cochains all cocycles ({})", counts.join(", ")))
}

// ---- criterion 4 ---------------------------------------------------------

fn criterion_4() -> Outcome {
    let a = z(2);
    let mut etas = 0;
    for x in [fixtures::c2(), fixtures::q5()] {
        for m in cocycle_space(Flavor::GN, &x, &a).members() {
            let eta = m.eta();
            let phi = eta_derived_phi(eta, &x, &a).map_err(|e| e.to_string())?;
            fibrant(&x, &phi).map_err(|w| w.to_string())?;
            additive(&x, &a, &phi).map_err(|w| w.to_string())?;
            if x.size() == 5 {
                compatibility_check(&x, &a, &phi, eta).map_err(|w| w.to_string())?;
            }
            etas += 1;
        }
    }
    Ok(format!("{etas} normalized cocycles on Z2 and S3 derive fibrant additive cocycles"))
}

// ---- criterion 5 ---------------------------------------------------------

fn grack_classes(x: &AugmentedRack, a: &CoeffGroup, mode: SearchMode) -> Result<usize, String> {
    let members: Vec<Cochain2> = cocycle_space(Flavor::RFPlus, x, a)
        .members()
        .iter()
        .map(|m| m.phi().clone())
        .collect();
    count_classes(&members, |p, q| {
        equivalence_g_rack(x, a, p, q, mode).map(|w| w.is_some())
    })
    .map_err(|e| e.to_string())
}

fn criterion_5() -> Outcome {
    let a = z(2);
    let mut notes = Vec::new();
    for (name, x) in [("C2", fixtures::c2()), ("R3S3", fixtures::r3s3())] {
        let fibrant_classes = grack_classes(&x, &a, SearchMode::Fibrant)?;
        let all_classes = grack_classes(&x, &a, SearchMode::All)?;
        let h_fibrant = cohomology_group(Flavor::RFPlus, &x, &a, CoboundaryMode::Default).order();
        let h_all = cohomology_group(Flavor::RFPlus, &x, &a, CoboundaryMode::Alternate).order();
        if fibrant_classes as u64 != h_fibrant || all_classes as u64 != h_all {
            return Err(format!(
                "{name}: classes {fibrant_classes}/{all_classes} vs |H| {h_fibrant}/{h_all}"
            ));
        }
        notes.push(format!(
            "{name} fibrant {fibrant_classes}={h_fibrant}, all {all_classes}={h_all}"
        ));
    }
    let x = fixtures::c2();
    let pairs = cocycle_space(Flavor::AR, &x, &a).members();
    let classes = count_classes(&pairs, |p, q| {
        augmented_isomorphism(&x, &a, (p.phi(), p.eta()), (q.phi(), q.eta()), SearchMode::All)
            .map(|w| w.is_some())
    })
    .map_err(|e| e.to_string())?;
    let h = cohomology_group(Flavor::AR, &x, &a, CoboundaryMode::Default).order();
    if classes as u64 != h {
        return Err(format!("AR on C2: {classes} classes vs |H| {h}"));
    }
    notes.push(format!("AR C2 {classes}={h}"));
    Ok(notes.join("; "))
}

// ---- criterion 6 ---------------------------------------------------------

fn criterion_6() -> Outcome {
    let a = z(2);
    let g = FiniteGroup::cyclic(2);
    let z4 = build_central_extension(&g, &a, &Cochain2::indicator(2, 1, 1, 1))
        .map_err(|e| e.to_string())?;
    let max_order = z4.total().elements().map(|t| z4.total().element_order(t)).max();
    if max_order != Some(4) {
        return Err(format!("Z4 cocycle: largest element order {max_order:?}"));
    }
    let klein = build_central_extension(&g, &a, &Cochain2::zero(2)).map_err(|e| e.to_string())?;
    if klein.total().exponent() != 2 {
        return Err(format!("trivial cocycle: exponent {}", klein.total().exponent()));
    }
    Ok("Z4 cocycle has an element of order 4, trivial cocycle exponent 2".into())
}

// ---- criterion 7 ---------------------------------------------------------

fn criterion_7() -> Outcome {
    let pairs = all_movepairs();
    let mut problems = Vec::new();
    for (name, x) in [("R3S3", fixtures::r3s3()), ("Q5", fixtures::q5())] {
        for p in &pairs {
            let before = coloring_count(&p.before, &x).map_err(|e| e.to_string())?;
            let after = coloring_count(&p.after, &x).map_err(|e| e.to_string())?;
            if before != after {
                problems.push(format!("{name} {}({}) counts {before:?} vs {after:?}", p.kind, p.index));
            }
        }
    }
    let a = z(2);
    let r3 = fixtures::r3s3();
    let mut admissible = 0;
    for m in cocycle_space(Flavor::R, &r3, &a).members() {
        let phi = m.phi();
        if state_sum_phi(&catalog::circle(), &r3, &a, phi, Checks::Enforce).is_err() {
            continue;
        }
        admissible += 1;
        for p in &pairs {
            let b = state_sum_phi(&p.before, &r3, &a, phi, Checks::Enforce).map_err(|e| e.to_string())?;
            let c = state_sum_phi(&p.after, &r3, &a, phi, Checks::Enforce).map_err(|e| e.to_string())?;
            if b != c {
                problems.push(format!("R3S3 phi {:?} {}({})", phi.values(), p.kind, p.index));
            }
        }
    }
    let q5 = fixtures::q5();
    let mut derived = 0;
    let mut eta_failures = 0;
    for m in cocycle_space(Flavor::GN, &q5, &a).members() {
        let eta = m.eta();
        let phi = eta_derived_phi(eta, &q5, &a).map_err(|e| e.to_string())?;
        derived += 1;
        for p in &pairs {
            let b = state_sum_phi_eta(&p.before, &q5, &a, &phi, eta, Checks::Enforce)
                .map_err(|e| e.to_string())?;
            let c = state_sum_phi_eta(&p.after, &q5, &a, &phi, eta, Checks::Enforce)
                .map_err(|e| e.to_string())?;
            if b != c {
                eta_failures += 1;
                if eta_failures <= 2 {
                    problems.push(format!("Q5 derived pair {}({})", p.kind, p.index));
                }
            }
        }
    }
    let summary = format!(
        "{} movepairs, {admissible} admissible phi on R3S3, {derived} derived pairs on Q5",
        pairs.len()
    );
    if problems.is_empty() {
        Ok(summary)
    } else {
        Err(format!(
            "{summary}; {eta_failures} unequal derived-pair evaluations; {}",
            problems.join("; ")
        ))
    }
}

// ---- criteria 8 to 10 ----------------------------------------------------

fn criterion_8() -> Outcome {
    let count = |d, x: &AugmentedRack| coloring_count(&d, x).map_err(|e| e.to_string());
    for name in ["T", "C2", "R3S3", "Q5"] {
        let x = fixtures::fixture(name).unwrap();
        if count(catalog::circle(), &x)? != vec![x.size()] {
            return Err(format!("circle over {name}"));
        }
    }
    let checks = [
        (count(catalog::theta(), &fixtures::q5())?, 20),
        (count(catalog::theta(), &fixtures::r3s3())?, 0),
        (count(catalog::kink(true, 1), &fixtures::r3s3())?, 3),
    ];
    for (got, want) in checks {
        if got != vec![want] {
            return Err(format!("expected {want}, got {got:?}"));
        }
    }
    Ok("circle |X|, theta/Q5 20, theta/R3S3 0, kink/R3S3 3".into())
}

fn criterion_9() -> Outcome {
    let mut compared = 0;
    let mut skipped = 0;
    for x in [fixtures::c2(), fixtures::r3s3()] {
        for a in [z(2), z(3)] {
            for flavor in Flavor::ALL {
                let Some(mut brute) = cocycle_space_exhaustive(flavor, &x, &a) else {
                    skipped += 1;
                    continue;
                };
                let candidates = {
                    let len = match flavor {
                        Flavor::GN => x.group().order().pow(2),
                        Flavor::AR => x.size().pow(2) + x.group().order().pow(2),
                        _ => x.size().pow(2),
                    };
                    (a.size() as u64).pow(len as u32)
                };
                if candidates > 3u64.pow(9) {
                    skipped += 1;
                    continue;
                }
                let mut solved = cocycle_space(flavor, &x, &a).members();
                solved.sort();
                brute.sort();
                if solved != brute {
                    return Err(format!(
                        "{flavor:?} on |X|={} over Z{}: solver {} vs brute force {}",
                        x.size(),
                        a.size(),
                        solved.len(),
                        brute.len()
                    ));
                }
                compared += 1;
            }
        }
    }
    Ok(format!("{compared} spaces agree, {skipped} beyond 3^9 candidates"))
}

fn criterion_10() -> Outcome {
    let mut checked = Vec::new();
    for name in fixtures::FIXTURE_NAMES {
        let x = fixtures::fixture(name).unwrap();
        if !is_connected(x.rack()) {
            continue;
        }
        let sizes: Vec<usize> = x.fiber_sizes().iter().map(|&(_, s)| s).collect();
        if sizes.windows(2).any(|w| w[0] != w[1]) {
            return Err(format!("{name}: fiber sizes {sizes:?}"));
        }
        checked.push(name);
    }
    if checked.is_empty() {
        return Err("no connected fixture".into());
    }
    Ok(format!("constant fibers on {}", checked.join(", ")))
}

#[test]
fn acceptance_criteria() {
    let criteria: [(usize, &str, Duration, fn() -> Outcome); 10] = [
        (1, "axiom suite", Duration::from_secs(1), criterion_1),
        (2, "coboundary lemmas", Duration::from_secs(1), criterion_2),
        (3, "fibrant-additive implies cocycle", Duration::from_secs(5), criterion_3),
        (4, "eta-derived pipeline", Duration::from_secs(10), criterion_4),
        (5, "extension classes vs cohomology", Duration::from_secs(30), criterion_5),
        (6, "central extension sanity", Duration::from_secs(1), criterion_6),
        (7, "move invariance", Duration::from_secs(60), criterion_7),
        (8, "specific coloring counts", Duration::from_secs(1), criterion_8),
        (9, "solver vs exhaustive oracle", Duration::from_secs(60), criterion_9),
        (10, "fiber bijection", Duration::from_secs(1), criterion_10),
    ];
    let mut failed = Vec::new();
    for (id, name, limit, f) in criteria {
        let start = Instant::now();
        let outcome = f();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(s) if elapsed > limit => Err(format!("{s}; took longer than {limit:?}")),
            other => other,
        };
        let known = KNOWN_FAILURES.iter().find(|(k, _)| *k == id);
        match (&outcome, known) {
            (Ok(detail), _) => {
                println!("criterion {id:>2} PASS  {name} [{elapsed:.2?}] {detail}");
            }
            (Err(detail), Some((_, why))) => {
                println!("criterion {id:>2} FAIL  {name} [{elapsed:.2?}] {detail} (known: {why})");
            }
            (Err(detail), None) => {
                println!("criterion {id:>2} FAIL  {name} [{elapsed:.2?}] {detail}");
            }
        }
        if outcome.is_err() {
            failed.push(id);
        }
    }
    let expected: Vec<usize> = KNOWN_FAILURES.iter().map(|&(k, _)| k).collect();
    assert_eq!(failed, expected, "failing criteria differ from the known failures");
}
