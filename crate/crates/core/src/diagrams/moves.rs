use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::diagram::{
    validate_diagram, Crossing, DiagramError, Dir, Endpoint, RibbonDiagram, Role, Slot, Vertex,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum MoveKind {
    RII,
    RIII,
    CL,
    YI,
    IY,
    IH,
    REV,
}

impl MoveKind {
    pub const ALL: [MoveKind; 7] = [
        MoveKind::RII,
        MoveKind::RIII,
        MoveKind::CL,
        MoveKind::YI,
        MoveKind::IY,
        MoveKind::IH,
        MoveKind::REV,
    ];
}

impl fmt::Display for MoveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl FromStr for MoveKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        MoveKind::ALL
            .into_iter()
            .find(|k| k.to_string().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| format!("unknown move kind {s:?}"))
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    #[default]
    Forward,
    Backward,
}

/// Where and how to apply a move. Which fields are read depends on the kind;
/// the constructors below fill exactly those.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoveSite {
    pub kind: MoveKind,
    pub direction: Direction,
    #[serde(default)]
    pub arcs: Vec<usize>,
    #[serde(default)]
    pub crossings: Vec<usize>,
    #[serde(default)]
    pub vertices: Vec<usize>,
    #[serde(default)]
    pub slot: Option<usize>,
    /// Sign of the first inserted crossing (RII, CL).
    #[serde(default)]
    pub positive: bool,
    /// RII: whether the under strand meets the two new crossings in the same
    /// order as the over strand.
    #[serde(default)]
    pub parallel: bool,
}

impl MoveSite {
    fn base(kind: MoveKind, direction: Direction) -> Self {
        MoveSite {
            kind,
            direction,
            arcs: Vec::new(),
            crossings: Vec::new(),
            vertices: Vec::new(),
            slot: None,
            positive: true,
            parallel: true,
        }
    }

    /// Push arc `over` across arc `under`, creating a bigon.
    pub fn rii(over: usize, under: usize, positive: bool, parallel: bool) -> Self {
        MoveSite {
            arcs: vec![over, under],
            positive,
            parallel,
            ..Self::base(MoveKind::RII, Direction::Forward)
        }
    }

    /// Remove the bigon formed by crossings `first` and `second` (in the order
    /// met along the over strand).
    pub fn rii_back(first: usize, second: usize) -> Self {
        MoveSite {
            crossings: vec![first, second],
            ..Self::base(MoveKind::RII, Direction::Backward)
        }
    }

    /// Crossings of the top/middle, top/bottom and middle/bottom strands.
    pub fn riii(tm: usize, tb: usize, mb: usize) -> Self {
        MoveSite {
            crossings: vec![tm, tb, mb],
            ..Self::base(MoveKind::RIII, Direction::Forward)
        }
    }

    /// Insert two opposite kinks on `arc`, the first with sign `positive`.
    pub fn cl(arc: usize, positive: bool) -> Self {
        MoveSite {
            arcs: vec![arc],
            positive,
            ..Self::base(MoveKind::CL, Direction::Forward)
        }
    }

    pub fn cl_back(first: usize, second: usize) -> Self {
        MoveSite {
            crossings: vec![first, second],
            ..Self::base(MoveKind::CL, Direction::Backward)
        }
    }

    /// Slide vertex `vertex` across the strand passing under the edges at
    /// slots `slot` and `slot + 1`.
    pub fn yi(vertex: usize, slot: usize) -> Self {
        MoveSite {
            vertices: vec![vertex],
            slot: Some(slot),
            ..Self::base(MoveKind::YI, Direction::Forward)
        }
    }

    pub fn yi_back(vertex: usize, crossing: usize) -> Self {
        MoveSite {
            vertices: vec![vertex],
            crossings: vec![crossing],
            ..Self::base(MoveKind::YI, Direction::Backward)
        }
    }

    /// As [`MoveSite::yi`] with the strand passing over the edges.
    pub fn iy(vertex: usize, slot: usize) -> Self {
        MoveSite {
            kind: MoveKind::IY,
            ..Self::yi(vertex, slot)
        }
    }

    pub fn iy_back(vertex: usize, crossing: usize) -> Self {
        MoveSite {
            kind: MoveKind::IY,
            ..Self::yi_back(vertex, crossing)
        }
    }

    /// Rotate the internal edge `arc` between two distinct vertices.
    pub fn ih(arc: usize) -> Self {
        MoveSite {
            arcs: vec![arc],
            ..Self::base(MoveKind::IH, Direction::Forward)
        }
    }

    pub fn ih_back(arc: usize) -> Self {
        MoveSite {
            arcs: vec![arc],
            ..Self::base(MoveKind::IH, Direction::Backward)
        }
    }

    /// Reverse the strand through `arc`.
    pub fn rev(arc: usize) -> Self {
        MoveSite {
            arcs: vec![arc],
            ..Self::base(MoveKind::REV, Direction::Forward)
        }
    }
}

/// Result of a move: the new diagram, where each old arc went (arcs merged
/// away map to their survivor) and the indices of the crossings the move
/// created or rearranged.
#[derive(Debug, Clone)]
pub struct MoveOutcome {
    pub diagram: RibbonDiagram,
    pub arc_map: BTreeMap<usize, usize>,
    pub new_crossings: Vec<usize>,
}

fn mismatch<T>(msg: impl Into<String>) -> Result<T, DiagramError> {
    Err(DiagramError::Binding(msg.into()))
}

fn arg(list: &[usize], i: usize, what: &str) -> Result<usize, DiagramError> {
    list.get(i)
        .copied()
        .ok_or_else(|| DiagramError::Binding(format!("missing {what}")))
}

fn crossing_at(d: &RibbonDiagram, i: usize) -> Result<Crossing, DiagramError> {
    d.crossings
        .get(i)
        .copied()
        .ok_or_else(|| DiagramError::Binding(format!("no crossing {i}")))
}

fn known_arc(d: &RibbonDiagram, a: usize) -> Result<usize, DiagramError> {
    if d.has_arc(a) {
        Ok(a)
    } else {
        mismatch(format!("no arc {a}"))
    }
}

/// Applies a move, leaving `d` untouched on a binding mismatch.
pub fn apply_move(d: &RibbonDiagram, site: &MoveSite) -> Result<MoveOutcome, DiagramError> {
    validate_diagram(d)?;
    let before: Vec<usize> = d.arcs.clone();
    let mut out = d.clone();
    let (merged, new_crossings) = match (site.kind, site.direction) {
        (MoveKind::RII, Direction::Forward) => rii_forward(&mut out, site)?,
        (MoveKind::RII, Direction::Backward) => pair_removal(&mut out, site, rii_pair)?,
        (MoveKind::RIII, _) => riii(&mut out, site)?,
        (MoveKind::CL, Direction::Forward) => cl_forward(&mut out, site)?,
        (MoveKind::CL, Direction::Backward) => pair_removal(&mut out, site, kink_pair)?,
        (MoveKind::YI | MoveKind::IY, Direction::Forward) => slide_forward(&mut out, site)?,
        (MoveKind::YI | MoveKind::IY, Direction::Backward) => slide_backward(&mut out, site)?,
        (MoveKind::IH, direction) => ih(&mut out, site, direction)?,
        (MoveKind::REV, _) => {
            out = reverse_arc_orientation(d, arg(&site.arcs, 0, "arc")?)?;
            (BTreeMap::new(), Vec::new())
        }
    };
    validate_diagram(&out)?;
    let arc_map = before
        .into_iter()
        .map(|a| (a, *merged.get(&a).unwrap_or(&a)))
        .collect();
    Ok(MoveOutcome {
        diagram: out,
        arc_map,
        new_crossings,
    })
}

type Rewrite = (BTreeMap<usize, usize>, Vec<usize>);

fn rii_forward(d: &mut RibbonDiagram, site: &MoveSite) -> Result<Rewrite, DiagramError> {
    let a = known_arc(d, arg(&site.arcs, 0, "over arc")?)?;
    let b = known_arc(d, arg(&site.arcs, 1, "under arc")?)?;
    if a == b {
        return mismatch("RII needs two different arcs");
    }
    let o = d.subdivide(a, 3);
    let u = d.subdivide(b, 3);
    let (first_under, second_under) = if site.parallel {
        ((u[0], u[1]), (u[1], u[2]))
    } else {
        ((u[1], u[2]), (u[0], u[1]))
    };
    let n = d.crossings.len();
    d.crossings.push(Crossing {
        over_in: o[0],
        over_out: o[1],
        under_in: first_under.0,
        under_out: first_under.1,
        positive: site.positive,
    });
    d.crossings.push(Crossing {
        over_in: o[1],
        over_out: o[2],
        under_in: second_under.0,
        under_out: second_under.1,
        positive: !site.positive,
    });
    Ok((BTreeMap::new(), vec![n, n + 1]))
}

fn rii_pair(c1: &Crossing, c2: &Crossing) -> Result<(), String> {
    if c1.over_out != c2.over_in {
        return Err("the over strand does not run from the first crossing to the second".into());
    }
    if c1.under_out != c2.under_in && c2.under_out != c1.under_in {
        return Err("the under strand does not join the two crossings".into());
    }
    if c1.positive == c2.positive {
        return Err("RII crossings must have opposite signs".into());
    }
    let under_mid = if c1.under_out == c2.under_in {
        c1.under_out
    } else {
        c2.under_out
    };
    if under_mid == c1.over_out {
        return Err("the bigon sides coincide".into());
    }
    Ok(())
}

fn kink_pair(k1: &Crossing, k2: &Crossing) -> Result<(), String> {
    for k in [k1, k2] {
        if k.over_out != k.under_in {
            return Err("not an over-first kink".into());
        }
    }
    if k1.under_out != k2.over_in {
        return Err("the kinks are not adjacent".into());
    }
    if k1.positive == k2.positive {
        return Err("the kinks must have opposite signs".into());
    }
    Ok(())
}

fn pair_removal(
    d: &mut RibbonDiagram,
    site: &MoveSite,
    check: fn(&Crossing, &Crossing) -> Result<(), String>,
) -> Result<Rewrite, DiagramError> {
    let i = arg(&site.crossings, 0, "first crossing")?;
    let j = arg(&site.crossings, 1, "second crossing")?;
    if i == j {
        return mismatch("the two crossings must differ");
    }
    let (c1, c2) = (crossing_at(d, i)?, crossing_at(d, j)?);
    check(&c1, &c2).map_err(DiagramError::Binding)?;
    Ok((d.remove_crossings(&[i, j]), Vec::new()))
}

fn cl_forward(d: &mut RibbonDiagram, site: &MoveSite) -> Result<Rewrite, DiagramError> {
    let a = known_arc(d, arg(&site.arcs, 0, "arc")?)?;
    let p = d.subdivide(a, 5);
    let n = d.crossings.len();
    for (k, positive) in [(0, site.positive), (2, !site.positive)] {
        d.crossings.push(Crossing {
            over_in: p[k],
            over_out: p[k + 1],
            under_in: p[k + 1],
            under_out: p[k + 2],
            positive,
        });
    }
    Ok((BTreeMap::new(), vec![n, n + 1]))
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Level {
    Over,
    Under,
}

fn ends_of(c: &Crossing, level: Level) -> (usize, usize) {
    match level {
        Level::Over => (c.over_in, c.over_out),
        Level::Under => (c.under_in, c.under_out),
    }
}

fn set_ends(c: &mut Crossing, level: Level, (i, o): (usize, usize)) {
    match level {
        Level::Over => {
            c.over_in = i;
            c.over_out = o;
        }
        Level::Under => {
            c.under_in = i;
            c.under_out = o;
        }
    }
}

/// Order of a strand through two crossings: `Some(true)` if it meets
/// `first` before `second`.
fn order(c1: &Crossing, l1: Level, c2: &Crossing, l2: Level) -> Option<bool> {
    let (e1, e2) = (ends_of(c1, l1), ends_of(c2, l2));
    if e1.1 == e2.0 {
        Some(true)
    } else if e2.1 == e1.0 {
        Some(false)
    } else {
        None
    }
}

fn riii(d: &mut RibbonDiagram, site: &MoveSite) -> Result<Rewrite, DiagramError> {
    let idx = [
        arg(&site.crossings, 0, "top/middle crossing")?,
        arg(&site.crossings, 1, "top/bottom crossing")?,
        arg(&site.crossings, 2, "middle/bottom crossing")?,
    ];
    if idx[0] == idx[1] || idx[0] == idx[2] || idx[1] == idx[2] {
        return mismatch("RIII needs three different crossings");
    }
    let [tm, tb, mb] = [
        crossing_at(d, idx[0])?,
        crossing_at(d, idx[1])?,
        crossing_at(d, idx[2])?,
    ];
    // (first crossing, level, second crossing, level) along each strand
    let strands = [
        (0, Level::Over, 1, Level::Over),
        (0, Level::Under, 2, Level::Over),
        (1, Level::Under, 2, Level::Under),
    ];
    let cs = [tm, tb, mb];
    let mut options: Vec<Vec<i32>> = Vec::new();
    for &(i, li, j, lj) in &strands {
        let mut o = Vec::new();
        if ends_of(&cs[i], li).1 == ends_of(&cs[j], lj).0 {
            o.push(1);
        }
        if ends_of(&cs[j], lj).1 == ends_of(&cs[i], li).0 {
            o.push(-1);
        }
        if o.is_empty() {
            return mismatch("a strand does not pass its two crossings consecutively");
        }
        options.push(o);
    }
    // a strand closing up through just these two crossings admits both orders
    let mut found = None;
    for &t in &options[0] {
        for &m in &options[1] {
            for &b in &options[2] {
                if found.is_none() && tm.sign() * tb.sign() == m * b && tm.sign() * mb.sign() == t * b {
                    found = Some([t, m, b]);
                }
            }
        }
    }
    let dirs = match found {
        Some(d) => d,
        None => return mismatch("crossing signs do not fit a triangle with these orientations"),
    };
    let mut next = cs;
    for (s, &(i, li, j, lj)) in strands.iter().enumerate() {
        let ((fi, fl), (si, sl)) = if dirs[s] == 1 {
            ((i, li), (j, lj))
        } else {
            ((j, lj), (i, li))
        };
        let (s0, s1) = ends_of(&cs[fi], fl);
        let (_, s2) = ends_of(&cs[si], sl);
        set_ends(&mut next[si], sl, (s0, s1));
        set_ends(&mut next[fi], fl, (s1, s2));
    }
    for (k, &i) in idx.iter().enumerate() {
        d.crossings[i] = next[k];
    }
    Ok((BTreeMap::new(), idx.to_vec()))
}

/// Reverses the strand through `arc`: each of its passages through a
/// crossing swaps in/out and flips the sign, and its end slots flip.
pub fn reverse_arc_orientation(d: &RibbonDiagram, arc: usize) -> Result<RibbonDiagram, DiagramError> {
    validate_diagram(d)?;
    known_arc(d, arc)?;
    let strand: BTreeSet<usize> = d.strand_of(arc).into_iter().collect();
    let mut out = d.clone();
    for c in &mut out.crossings {
        if strand.contains(&c.over_in) {
            std::mem::swap(&mut c.over_in, &mut c.over_out);
            c.positive = !c.positive;
        }
        if strand.contains(&c.under_in) {
            std::mem::swap(&mut c.under_in, &mut c.under_out);
            c.positive = !c.positive;
        }
    }
    for v in &mut out.vertices {
        for s in &mut v.slots {
            if strand.contains(&s.arc) {
                s.dir = s.dir.flip();
            }
        }
    }
    Ok(out)
}

/// Level of the sliding strand: under the edges for YI, over them for IY.
fn strand_level(kind: MoveKind) -> Level {
    if kind == MoveKind::YI {
        Level::Under
    } else {
        Level::Over
    }
}

fn other(level: Level) -> Level {
    match level {
        Level::Over => Level::Under,
        Level::Under => Level::Over,
    }
}

/// The crossing next to vertex slot `s` on its edge, if the edge passes it at
/// `level`.
fn adjacent(d: &RibbonDiagram, s: Slot, level: Level) -> Option<usize> {
    let ends = d.endpoints();
    let (at, want) = match (s.dir, level) {
        (Dir::Out, Level::Over) => (ends.head(s.arc), Role::OverIn),
        (Dir::Out, Level::Under) => (ends.head(s.arc), Role::UnderIn),
        (Dir::In, Level::Over) => (ends.tail(s.arc), Role::OverOut),
        (Dir::In, Level::Under) => (ends.tail(s.arc), Role::UnderOut),
    };
    match at {
        Endpoint::Crossing { index, role } if role == want => Some(index),
        _ => None,
    }
}

fn vertex_at(d: &RibbonDiagram, site: &MoveSite) -> Result<(usize, Vertex), DiagramError> {
    let v = arg(&site.vertices, 0, "vertex")?;
    let vert = d
        .vertices
        .get(v)
        .copied()
        .ok_or_else(|| DiagramError::Binding(format!("no vertex {v}")))?;
    Ok((v, vert))
}

/// Sign convention shared by YI and IY: with `σ = +1` the strand meets the
/// slots in clockwise order. A crossing of the strand with the edge at a
/// slot of direction sign `ε` has sign `σ·ε` (YI) or `−σ·ε` (IY) on the near
/// side of the vertex, and the opposite on the far side.
fn edge_sign(kind: MoveKind, sigma: i32, eps: i32, near: bool) -> bool {
    let level = if kind == MoveKind::YI { 1 } else { -1 };
    let side = if near { 1 } else { -1 };
    level * side * sigma * eps > 0
}

fn slide_forward(d: &mut RibbonDiagram, site: &MoveSite) -> Result<Rewrite, DiagramError> {
    let (v, vert) = vertex_at(d, site)?;
    let i = site.slot.ok_or_else(|| DiagramError::Binding("missing slot".into()))? % 3;
    let level = strand_level(site.kind);
    let edge = other(level);
    let slots = vert.rotated(i);
    let find = |s: Slot| {
        adjacent(d, s, edge)
            .ok_or_else(|| DiagramError::Binding(format!("no crossing next to arc {}", s.arc)))
    };
    let (i1, i2) = (find(slots[0])?, find(slots[1])?);
    if i1 == i2 {
        return mismatch("both edges meet the strand at one crossing");
    }
    let (c1, c2) = (d.crossings[i1], d.crossings[i2]);
    let clockwise = order(&c1, level, &c2, level)
        .ok_or_else(|| DiagramError::Binding("the strand does not join the two crossings".into()))?;
    let (e1, e2, e3) = (slots[0].dir.sign(), slots[1].dir.sign(), slots[2].dir.sign());
    let sigma = if edge_sign(site.kind, 1, e1, true) == c1.positive { 1 } else { -1 };
    if edge_sign(site.kind, sigma, e2, true) != c2.positive {
        return mismatch("crossing signs do not fit a strand passing by the vertex");
    }
    if clockwise != (sigma == 1) {
        return mismatch("the strand meets the edges in the wrong order for these signs");
    }
    let (first, second) = if clockwise { (c1, c2) } else { (c2, c1) };
    let s_in = ends_of(&first, level).0;
    let s_mid = ends_of(&first, level).1;
    let s_out = ends_of(&second, level).1;
    let slot_arcs: Vec<usize> = vert.slots.iter().map(|s| s.arc).collect();
    if [s_in, s_mid, s_out].iter().any(|a| slot_arcs.contains(a)) {
        return mismatch("the strand touches the vertex");
    }
    let merged = d.remove_crossings(&[i1, i2]);
    let resolve = |a: usize| *merged.get(&a).unwrap_or(&a);
    let s = resolve(s_in);
    let w = d.vertices[v].slots[(i + 2) % 3].arc;
    if s == w {
        return mismatch("the strand continues into the third edge");
    }
    let sp = d.subdivide(s, 2);
    let w = d.vertices[v].slots[(i + 2) % 3].arc;
    let wp = d.subdivide(w, 2);
    let positive = edge_sign(site.kind, sigma, e3, false);
    let n = d.crossings.len();
    d.crossings.push(place(level, (sp[0], sp[1]), (wp[0], wp[1]), positive));
    Ok((merged, vec![n]))
}

fn place(level: Level, strand: (usize, usize), edge: (usize, usize), positive: bool) -> Crossing {
    let (over, under) = if level == Level::Over {
        (strand, edge)
    } else {
        (edge, strand)
    };
    Crossing {
        over_in: over.0,
        over_out: over.1,
        under_in: under.0,
        under_out: under.1,
        positive,
    }
}

fn slide_backward(d: &mut RibbonDiagram, site: &MoveSite) -> Result<Rewrite, DiagramError> {
    let (v, vert) = vertex_at(d, site)?;
    let c = arg(&site.crossings, 0, "crossing")?;
    let c3 = crossing_at(d, c)?;
    let level = strand_level(site.kind);
    let edge = other(level);
    let j = (0..3)
        .find(|&k| adjacent(d, vert.slots[k], edge) == Some(c))
        .ok_or_else(|| DiagramError::Binding(format!("crossing {c} is not next to vertex {v}")))?;
    let e3 = vert.slots[j].dir.sign();
    let sigma = if edge_sign(site.kind, 1, e3, false) == c3.positive { 1 } else { -1 };
    let (k1, k2) = if sigma == 1 {
        ((j + 1) % 3, (j + 2) % 3)
    } else {
        ((j + 2) % 3, (j + 1) % 3)
    };
    let s_in = ends_of(&c3, level).0;
    let merged = d.remove_crossings(&[c]);
    let s = *merged.get(&s_in).unwrap_or(&s_in);
    if d.vertices[v].slots.iter().any(|sl| sl.arc == s) {
        return mismatch("the strand touches the vertex");
    }
    let sp = d.subdivide(s, 3);
    let n = d.crossings.len();
    for (k, piece) in [(k1, (sp[0], sp[1])), (k2, (sp[1], sp[2]))] {
        let slot = d.vertices[v].slots[k];
        let wp = d.subdivide(slot.arc, 2);
        let positive = edge_sign(site.kind, sigma, slot.dir.sign(), true);
        d.crossings.push(place(level, piece, (wp[0], wp[1]), positive));
    }
    Ok((merged, vec![n, n + 1]))
}

fn ih(d: &mut RibbonDiagram, site: &MoveSite, direction: Direction) -> Result<Rewrite, DiagramError> {
    let m = known_arc(d, arg(&site.arcs, 0, "arc")?)?;
    let ends = d.endpoints();
    let (u, ku, v, kv) = match (ends.tail(m), ends.head(m)) {
        (
            Endpoint::Vertex { index: u, slot: ku },
            Endpoint::Vertex { index: v, slot: kv },
        ) if u != v => (u, ku, v, kv),
        _ => return mismatch(format!("arc {m} does not join two different vertices")),
    };
    let [a, b, _] = d.vertices[u].rotated((ku + 1) % 3);
    let [_, c, e] = d.vertices[v].rotated(kv);
    let out_m = Slot::new(m, Dir::Out);
    let in_m = Slot::new(m, Dir::In);
    let (nu, nv) = match direction {
        Direction::Forward => ([b, c, out_m], [in_m, e, a]),
        Direction::Backward => ([e, a, out_m], [in_m, b, c]),
    };
    d.vertices[u] = Vertex { slots: nu };
    d.vertices[v] = Vertex { slots: nv };
    Ok((BTreeMap::new(), Vec::new()))
}

/// Every RIII binding `(top/middle, top/bottom, middle/bottom)` that applies.
pub fn riii_sites(d: &RibbonDiagram) -> Vec<MoveSite> {
    let n = d.crossings.len();
    let mut sites = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if i == j || i == k || j == k {
                    continue;
                }
                let site = MoveSite::riii(i, j, k);
                if apply_move(d, &site).is_ok() {
                    sites.push(site);
                }
            }
        }
    }
    sites
}
