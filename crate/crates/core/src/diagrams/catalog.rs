use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use super::diagram::{Crossing, DiagramError, Dir, RibbonDiagram, Vertex};
use super::moves::{apply_move, reverse_arc_orientation, riii_sites, MoveKind, MoveSite};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("unknown catalog entry {0:?}")]
    Unknown(String),
    #[error("bad parameters for {name}: {reason}")]
    Params { name: String, reason: String },
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

/// Names accepted by [`catalog_diagram`]; parameterized entries are written
/// `kink(+1,2)`, `braid(3;1,-2)`, `movepair(RII,0)`.
pub const CATALOG_NAMES: [&str; 12] = [
    "circle",
    "unlink",
    "hopf",
    "kink(sign,k)",
    "theta",
    "handcuff",
    "k4",
    "trefoil_ribbon",
    "encircled_theta",
    "encircled_theta_over",
    "braid(n;word)",
    "movepair(kind,i)",
];

/// Sites per move kind in [`movepair`].
pub const MOVEPAIRS_PER_KIND: usize = 2;

fn cr(over_in: usize, over_out: usize, under_in: usize, under_out: usize, positive: bool) -> Crossing {
    Crossing {
        over_in,
        over_out,
        under_in,
        under_out,
        positive,
    }
}

fn build(
    arcs: usize,
    crossings: Vec<Crossing>,
    vertices: Vec<Vertex>,
    closures: Vec<usize>,
) -> RibbonDiagram {
    RibbonDiagram::new((0..arcs).collect(), crossings, vertices, closures).expect("catalog diagram")
}

pub fn circle() -> RibbonDiagram {
    build(1, vec![], vec![], vec![0])
}

pub fn unlink() -> RibbonDiagram {
    circle().disjoint_union(&circle())
}

/// Two circles (arcs 0,1 and 2,3) linked by two positive crossings.
pub fn hopf() -> RibbonDiagram {
    build(
        4,
        vec![cr(0, 1, 2, 3, true), cr(3, 2, 1, 0, true)],
        vec![],
        vec![],
    )
}

/// A circle with `k` consecutive kinks of the given sign; kink `j` passes over
/// from arc `2j` to `2j+1` and comes back under onto arc `2j+2`.
pub fn kink(positive: bool, k: usize) -> RibbonDiagram {
    assert!(k >= 1);
    let n = 2 * k;
    let crossings = (0..k)
        .map(|j| cr(2 * j, 2 * j + 1, 2 * j + 1, (2 * j + 2) % n, positive))
        .collect();
    build(n, crossings, vec![], vec![])
}

/// Two vertices joined by three edges, all running into vertex 0.
pub fn theta() -> RibbonDiagram {
    build(
        3,
        vec![],
        vec![
            Vertex::new([(0, Dir::In), (1, Dir::In), (2, Dir::In)]),
            Vertex::new([(2, Dir::Out), (1, Dir::Out), (0, Dir::Out)]),
        ],
        vec![],
    )
}

/// Two loops (arcs 0 and 1) joined by the bar, arc 2.
pub fn handcuff() -> RibbonDiagram {
    build(
        3,
        vec![],
        vec![
            Vertex::new([(0, Dir::Out), (0, Dir::In), (2, Dir::Out)]),
            Vertex::new([(2, Dir::In), (1, Dir::In), (1, Dir::Out)]),
        ],
        vec![],
    )
}

/// The tetrahedral graph drawn as a triangle 0,1,2 around a centre 3.
pub fn k4() -> RibbonDiagram {
    build(
        6,
        vec![],
        vec![
            Vertex::new([(0, Dir::Out), (3, Dir::In), (2, Dir::In)]),
            Vertex::new([(1, Dir::Out), (4, Dir::In), (0, Dir::In)]),
            Vertex::new([(2, Dir::Out), (5, Dir::In), (1, Dir::In)]),
            Vertex::new([(3, Dir::Out), (4, Dir::Out), (5, Dir::Out)]),
        ],
        vec![],
    )
}

/// Positive trefoil with six arcs, alternating over and under.
pub fn trefoil_ribbon() -> RibbonDiagram {
    build(
        6,
        vec![cr(5, 0, 2, 3, true), cr(3, 4, 0, 1, true), cr(1, 2, 4, 5, true)],
        vec![],
        vec![],
    )
}

/// Theta whose three edges are encircled near vertex 0 by a loop passing
/// under them (over them when `over`). Edge `i` runs from far piece `3+i`
/// through crossing `i` to near piece `i`; the loop runs 8, 6, 7.
pub fn encircled_theta(over: bool) -> RibbonDiagram {
    let loop_pieces = [(8, 6), (6, 7), (7, 8)];
    let crossings = (0..3)
        .map(|i| {
            let (s_in, s_out) = loop_pieces[i];
            if over {
                cr(s_in, s_out, 3 + i, i, false)
            } else {
                cr(3 + i, i, s_in, s_out, true)
            }
        })
        .collect();
    build(
        9,
        crossings,
        vec![
            Vertex::new([(0, Dir::In), (1, Dir::In), (2, Dir::In)]),
            Vertex::new([(5, Dir::Out), (4, Dir::Out), (3, Dir::Out)]),
        ],
        vec![],
    )
}

/// Closure of a braid on `n` strands. Letter `i > 0` is the generator in
/// which the strand at position `i-1` passes over the one at `i` (a positive
/// crossing); `-i` is its inverse, right strand over and negative.
pub fn braid_closure(n: usize, word: &[i32]) -> Result<RibbonDiagram, CatalogError> {
    let bad = |reason: String| CatalogError::Params {
        name: "braid".into(),
        reason,
    };
    if n == 0 {
        return Err(bad("at least one strand".into()));
    }
    let mut at: Vec<usize> = (0..n).collect();
    let mut next = n;
    let mut crossings = Vec::new();
    for &letter in word {
        let i = letter.unsigned_abs() as usize;
        if i == 0 || i >= n {
            return Err(bad(format!("generator {letter} out of range")));
        }
        let (l, r) = (at[i - 1], at[i]);
        let (l2, r2) = (next, next + 1);
        next += 2;
        if letter > 0 {
            crossings.push(cr(l, l2, r, r2, true));
        } else {
            crossings.push(cr(r, r2, l, l2, false));
        }
        at[i - 1] = r2;
        at[i] = l2;
    }
    let mut d = RibbonDiagram {
        arcs: (0..next).collect(),
        crossings,
        vertices: vec![],
        closures: vec![],
    };
    let mut rename: BTreeMap<usize, usize> = BTreeMap::new();
    for (p, &last) in at.iter().enumerate() {
        if last == p {
            d.closures.push(p);
        } else {
            rename.insert(p, last);
        }
    }
    // the final arc at each position continues as the initial arc there
    d = d.renamed(&rename);
    d.arcs.dedup();
    d.closures.sort_unstable();
    let d = d.compacted();
    super::diagram::validate_diagram(&d)?;
    Ok(d)
}

/// A diagram, a move site on it, and the result of the move.
#[derive(Debug, Clone, Serialize)]
pub struct MovePair {
    pub kind: MoveKind,
    pub index: usize,
    pub before: RibbonDiagram,
    pub site: MoveSite,
    pub after: RibbonDiagram,
    /// Undoes the move on `after`.
    pub inverse: MoveSite,
}

fn pair_from(kind: MoveKind, index: usize, before: RibbonDiagram, site: MoveSite) -> MovePair {
    let out = apply_move(&before, &site).expect("catalog move applies");
    let c = &out.new_crossings;
    let inverse = match kind {
        MoveKind::RII => MoveSite::rii_back(c[0], c[1]),
        MoveKind::CL => MoveSite::cl_back(c[0], c[1]),
        MoveKind::RIII => MoveSite::riii(c[0], c[1], c[2]),
        MoveKind::YI => MoveSite::yi_back(site.vertices[0], c[0]),
        MoveKind::IY => MoveSite::iy_back(site.vertices[0], c[0]),
        MoveKind::IH => MoveSite::ih_back(site.arcs[0]),
        MoveKind::REV => site.clone(),
    };
    MovePair {
        kind,
        index,
        before,
        site,
        after: out.diagram,
        inverse,
    }
}

/// Hand-chosen move sites, `MOVEPAIRS_PER_KIND` per kind.
pub fn movepair(kind: MoveKind, index: usize) -> Result<MovePair, CatalogError> {
    let (before, site) = match (kind, index) {
        (MoveKind::RII, 0) => (unlink(), MoveSite::rii(0, 1, true, true)),
        (MoveKind::RII, 1) => {
            let t = reverse_arc_orientation(&theta(), 1)?;
            (t, MoveSite::rii(0, 1, false, false))
        }
        (MoveKind::RIII, 0 | 1) => {
            let word: &[i32] = if index == 0 { &[1, 2, 1] } else { &[-1, -2, -1] };
            let d = braid_closure(3, word)?;
            let site = riii_sites(&d).into_iter().next().expect("braid triangle");
            (d, site)
        }
        (MoveKind::CL, 0) => (circle(), MoveSite::cl(0, true)),
        (MoveKind::CL, 1) => (theta(), MoveSite::cl(0, false)),
        (MoveKind::YI, 0) => (encircled_theta(false), MoveSite::yi(0, 0)),
        (MoveKind::YI, 1) => {
            let d = reverse_arc_orientation(&encircled_theta(false), 6)?;
            (reverse_arc_orientation(&d, 1)?, MoveSite::yi(0, 1))
        }
        (MoveKind::IY, 0) => (encircled_theta(true), MoveSite::iy(0, 0)),
        (MoveKind::IY, 1) => {
            let d = reverse_arc_orientation(&encircled_theta(true), 6)?;
            (reverse_arc_orientation(&d, 2)?, MoveSite::iy(0, 1))
        }
        (MoveKind::IH, 0) => (theta(), MoveSite::ih(2)),
        (MoveKind::IH, 1) => (k4(), MoveSite::ih(3)),
        (MoveKind::REV, 0) => (trefoil_ribbon(), MoveSite::rev(0)),
        (MoveKind::REV, 1) => (encircled_theta(false), MoveSite::rev(1)),
        _ => {
            return Err(CatalogError::Params {
                name: "movepair".into(),
                reason: format!("index {index} out of range 0..{MOVEPAIRS_PER_KIND}"),
            })
        }
    };
    Ok(pair_from(kind, index, before, site))
}

/// Every catalog move pair.
pub fn all_movepairs() -> Vec<MovePair> {
    MoveKind::ALL
        .into_iter()
        .flat_map(|k| (0..MOVEPAIRS_PER_KIND).map(move |i| movepair(k, i).expect("catalog")))
        .collect()
}

/// A named catalog entry.
#[derive(Debug, Clone, Serialize)]
#[serde(untagged)]
pub enum CatalogEntry {
    Diagram(RibbonDiagram),
    Pair(Box<MovePair>),
}

fn split_call(name: &str) -> (String, Vec<String>) {
    let name = name.trim();
    match (name.find('('), name.strip_suffix(')')) {
        (Some(open), Some(body)) => {
            let args = body[open + 1..]
                .split([',', ';'])
                .map(|s| s.trim().to_string())
                .filter(|s| !s.is_empty())
                .collect();
            (name[..open].trim().to_ascii_lowercase(), args)
        }
        _ => (name.to_ascii_lowercase(), Vec::new()),
    }
}

fn int_arg<T: std::str::FromStr>(name: &str, s: &str) -> Result<T, CatalogError> {
    s.trim_start_matches('+').parse().map_err(|_| CatalogError::Params {
        name: name.into(),
        reason: format!("cannot read {s:?}"),
    })
}

/// Looks up a catalog entry by name, e.g. `theta`, `kink(-1,2)`,
/// `braid(3;1,2,1)`, `movepair(IH,0)`.
pub fn catalog_diagram(name: &str) -> Result<CatalogEntry, CatalogError> {
    let (head, args) = split_call(name);
    let plain = |d: RibbonDiagram| -> Result<CatalogEntry, CatalogError> {
        if args.is_empty() {
            Ok(CatalogEntry::Diagram(d))
        } else {
            Err(CatalogError::Params {
                name: head.clone(),
                reason: "takes no parameters".into(),
            })
        }
    };
    match head.as_str() {
        "circle" => plain(circle()),
        "unlink" => plain(unlink()),
        "hopf" => plain(hopf()),
        "theta" => plain(theta()),
        "handcuff" => plain(handcuff()),
        "k4" => plain(k4()),
        "trefoil_ribbon" | "trefoil" => plain(trefoil_ribbon()),
        "encircled_theta" => plain(encircled_theta(false)),
        "encircled_theta_over" => plain(encircled_theta(true)),
        "kink" => {
            let sign: i32 = int_arg("kink", args.first().map_or("1", String::as_str))?;
            let k: usize = int_arg("kink", args.get(1).map_or("1", String::as_str))?;
            if (sign != 1 && sign != -1) || k == 0 || args.len() > 2 {
                return Err(CatalogError::Params {
                    name: "kink".into(),
                    reason: "expected kink(+1|-1, k>=1)".into(),
                });
            }
            Ok(CatalogEntry::Diagram(kink(sign == 1, k)))
        }
        "braid" => {
            let n: usize = int_arg("braid", args.first().map_or("", String::as_str))?;
            let word = args[1..]
                .iter()
                .map(|s| int_arg("braid", s))
                .collect::<Result<Vec<i32>, _>>()?;
            Ok(CatalogEntry::Diagram(braid_closure(n, &word)?))
        }
        "movepair" => {
            if args.len() != 2 {
                return Err(CatalogError::Params {
                    name: "movepair".into(),
                    reason: "expected movepair(kind,i)".into(),
                });
            }
            let kind: MoveKind = args[0].parse().map_err(|reason| CatalogError::Params {
                name: "movepair".into(),
                reason,
            })?;
            let i: usize = int_arg("movepair", &args[1])?;
            Ok(CatalogEntry::Pair(Box::new(movepair(kind, i)?)))
        }
        _ => Err(CatalogError::Unknown(name.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagrams::canon::is_isomorphic;
    use crate::diagrams::components;

    #[test]
    fn basic_shapes() {
        let c = circle();
        assert_eq!((c.arc_count(), c.crossing_count(), c.vertex_count()), (1, 0, 0));
        let k = kink(true, 1);
        assert_eq!((k.arc_count(), k.crossing_count()), (2, 1));
        assert!(k.crossings[0].positive);
        let t = theta();
        assert_eq!((t.arc_count(), t.vertex_count()), (3, 2));
        assert_eq!(components(&hopf()).len(), 2);
        assert_eq!(components(&unlink()).len(), 2);
        assert_eq!(components(&trefoil_ribbon()).len(), 1);
    }

    #[test]
    fn braid_closures() {
        let trefoil = braid_closure(2, &[1, 1, 1]).unwrap();
        assert!(is_isomorphic(&trefoil, &trefoil_ribbon()));
        let hopf_braid = braid_closure(2, &[1, 1]).unwrap();
        assert!(is_isomorphic(&hopf_braid, &hopf()));
        assert_eq!(braid_closure(2, &[]).unwrap().closures, vec![0, 1]);
        assert!(braid_closure(2, &[2]).is_err());
    }

    #[test]
    fn riii_pairs_match_the_other_braid_word() {
        let p = movepair(MoveKind::RIII, 0).unwrap();
        assert!(is_isomorphic(&p.after, &braid_closure(3, &[2, 1, 2]).unwrap()));
        let p = movepair(MoveKind::RIII, 1).unwrap();
        assert!(is_isomorphic(&p.after, &braid_closure(3, &[-2, -1, -2]).unwrap()));
    }

    #[test]
    fn ih_on_theta_gives_handcuff() {
        let p = movepair(MoveKind::IH, 0).unwrap();
        assert!(is_isomorphic(&p.after, &handcuff()));
    }

    #[test]
    fn every_movepair_builds() {
        let pairs = all_movepairs();
        assert_eq!(pairs.len(), 14);
        for p in &pairs {
            assert_eq!(
                components(&p.before).len(),
                components(&p.after).len(),
                "{} {}",
                p.kind,
                p.index
            );
        }
    }

    #[test]
    fn names_resolve() {
        assert!(matches!(catalog_diagram("kink(+1,1)"), Ok(CatalogEntry::Diagram(d)) if d.arc_count() == 2));
        assert!(matches!(catalog_diagram("movepair(CL,1)"), Ok(CatalogEntry::Pair(_))));
        assert!(matches!(catalog_diagram("braid(3;1,-2)"), Ok(CatalogEntry::Diagram(_))));
        assert!(matches!(catalog_diagram("moebius"), Err(CatalogError::Unknown(_))));
        assert!(catalog_diagram("kink(2,1)").is_err());
        assert!(catalog_diagram("theta(1)").is_err());
    }
}
