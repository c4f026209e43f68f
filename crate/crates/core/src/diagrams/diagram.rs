use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Direction of a vertex slot: `In` when the arc points into the vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Dir {
    In,
    Out,
}

impl Dir {
    pub fn flip(self) -> Dir {
        match self {
            Dir::In => Dir::Out,
            Dir::Out => Dir::In,
        }
    }

    /// `+1` for `In`, `-1` for `Out`.
    pub fn sign(self) -> i32 {
        match self {
            Dir::In => 1,
            Dir::Out => -1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Slot {
    pub arc: usize,
    pub dir: Dir,
}

impl Slot {
    pub fn new(arc: usize, dir: Dir) -> Self {
        Slot { arc, dir }
    }
}

/// A crossing consumes the heads of `over_in`, `under_in` and the tails of
/// `over_out`, `under_out`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Crossing {
    pub over_in: usize,
    pub over_out: usize,
    pub under_in: usize,
    pub under_out: usize,
    pub positive: bool,
}

impl Crossing {
    pub fn sign(&self) -> i32 {
        if self.positive {
            1
        } else {
            -1
        }
    }
}

/// Three slots in clockwise order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Vertex {
    pub slots: [Slot; 3],
}

impl Vertex {
    pub fn new(slots: [(usize, Dir); 3]) -> Self {
        Vertex {
            slots: slots.map(|(arc, dir)| Slot { arc, dir }),
        }
    }

    /// The slots rotated so that slot `k` comes first.
    pub fn rotated(&self, k: usize) -> [Slot; 3] {
        [0, 1, 2].map(|i| self.slots[(k + i) % 3])
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum End {
    Tail,
    Head,
}

impl fmt::Display for End {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            End::Tail => "tail",
            End::Head => "head",
        })
    }
}

/// Role of an arc at a crossing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Role {
    OverIn,
    OverOut,
    UnderIn,
    UnderOut,
}

/// What an arc end is attached to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Endpoint {
    Crossing { index: usize, role: Role },
    Vertex { index: usize, slot: usize },
    Closure,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("arc {arc} referenced at {place} is not declared")]
    UnknownArc { arc: usize, place: String },
    #[error("arc {0} is declared twice")]
    DuplicateArc(usize),
    #[error("the {end} of arc {arc} is not attached to anything")]
    DanglingEnd { arc: usize, end: End },
    #[error("the {end} of arc {arc} is attached twice")]
    ReusedEnd { arc: usize, end: End },
    #[error("move site does not match: {0}")]
    Binding(String),
}

#[derive(Deserialize)]
#[serde(untagged)]
enum ArcList {
    Count(usize),
    Ids(Vec<usize>),
}

fn arcs_from_json<'de, D: serde::Deserializer<'de>>(d: D) -> Result<Vec<usize>, D::Error> {
    Ok(match ArcList::deserialize(d)? {
        ArcList::Count(n) => (0..n).collect(),
        ArcList::Ids(ids) => ids,
    })
}

fn arcs_to_json<S: serde::Serializer>(arcs: &[usize], s: S) -> Result<S::Ok, S::Error> {
    if arcs.iter().enumerate().all(|(i, &a)| i == a) {
        s.serialize_u64(arcs.len() as u64)
    } else {
        arcs.serialize(s)
    }
}

/// An oriented trivalent-graph diagram with crossings, in segment form: arcs
/// run between consecutive crossings and vertices, and an arc listed in
/// `closures` has its head glued to its own tail.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RibbonDiagram {
    #[serde(deserialize_with = "arcs_from_json", serialize_with = "arcs_to_json")]
    pub arcs: Vec<usize>,
    #[serde(default)]
    pub crossings: Vec<Crossing>,
    #[serde(default)]
    pub vertices: Vec<Vertex>,
    #[serde(default)]
    pub closures: Vec<usize>,
}

/// Where each arc's tail and head are attached.
#[derive(Debug, Clone, Default)]
pub struct Endpoints {
    tails: BTreeMap<usize, Endpoint>,
    heads: BTreeMap<usize, Endpoint>,
}

impl Endpoints {
    pub fn tail(&self, arc: usize) -> Endpoint {
        self.tails[&arc]
    }

    pub fn head(&self, arc: usize) -> Endpoint {
        self.heads[&arc]
    }
}

impl RibbonDiagram {
    pub fn new(
        arcs: Vec<usize>,
        crossings: Vec<Crossing>,
        vertices: Vec<Vertex>,
        closures: Vec<usize>,
    ) -> Result<Self, DiagramError> {
        let mut d = RibbonDiagram {
            arcs,
            crossings,
            vertices,
            closures,
        };
        d.arcs.sort_unstable();
        d.closures.sort_unstable();
        validate_diagram(&d)?;
        Ok(d)
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn has_arc(&self, arc: usize) -> bool {
        self.arcs.binary_search(&arc).is_ok()
    }

    /// Position of an arc in the sorted arc list.
    pub fn arc_position(&self, arc: usize) -> Option<usize> {
        self.arcs.binary_search(&arc).ok()
    }

    pub(crate) fn fresh_arc(&self) -> usize {
        self.arcs.last().map_or(0, |&a| a + 1)
    }

    /// Attachment of every arc end. Panics on an invalid diagram.
    pub fn endpoints(&self) -> Endpoints {
        attachments(self).expect("valid diagram")
    }

    /// Arcs grouped into connected pieces of the underlying spatial graph:
    /// arcs meet through vertices and through the continuation of a strand
    /// across a crossing, not through the over/under incidence.
    pub fn component_arcs(&self) -> Vec<Vec<usize>> {
        let mut uf = UnionFind::new(self);
        for c in &self.crossings {
            uf.union(c.over_in, c.over_out);
            uf.union(c.under_in, c.under_out);
        }
        for v in &self.vertices {
            uf.union(v.slots[0].arc, v.slots[1].arc);
            uf.union(v.slots[0].arc, v.slots[2].arc);
        }
        uf.groups()
    }

    /// Arcs grouped into pieces connected through vertices and crossings,
    /// including over/under incidence.
    pub fn split_pieces(&self) -> Vec<Vec<usize>> {
        let mut uf = UnionFind::new(self);
        for c in &self.crossings {
            uf.union(c.over_in, c.over_out);
            uf.union(c.over_in, c.under_in);
            uf.union(c.over_in, c.under_out);
        }
        for v in &self.vertices {
            uf.union(v.slots[0].arc, v.slots[1].arc);
            uf.union(v.slots[0].arc, v.slots[2].arc);
        }
        uf.groups()
    }

    /// Maximal runs of arcs continuing through crossings, in traversal order.
    /// A run either starts and ends at vertices or closes up into a loop.
    pub fn strand_of(&self, arc: usize) -> Vec<usize> {
        let ends = self.endpoints();
        let next = |a: usize| -> Option<usize> {
            match ends.head(a) {
                Endpoint::Crossing { index, role } => {
                    let c = &self.crossings[index];
                    Some(match role {
                        Role::OverIn => c.over_out,
                        Role::UnderIn => c.under_out,
                        _ => unreachable!("head at an outgoing role"),
                    })
                }
                Endpoint::Vertex { .. } => None,
                Endpoint::Closure => Some(a),
            }
        };
        let prev = |a: usize| -> Option<usize> {
            match ends.tail(a) {
                Endpoint::Crossing { index, role } => {
                    let c = &self.crossings[index];
                    Some(match role {
                        Role::OverOut => c.over_in,
                        Role::UnderOut => c.under_in,
                        _ => unreachable!("tail at an incoming role"),
                    })
                }
                Endpoint::Vertex { .. } => None,
                Endpoint::Closure => Some(a),
            }
        };
        let mut start = arc;
        while let Some(p) = prev(start) {
            if p == arc {
                break;
            }
            start = p;
        }
        let mut run = vec![start];
        let mut cur = start;
        while let Some(n) = next(cur) {
            if n == start {
                break;
            }
            run.push(n);
            cur = n;
        }
        run
    }

    /// The same diagram with arcs renamed by `map` (missing ids are kept).
    pub fn renamed(&self, map: &BTreeMap<usize, usize>) -> RibbonDiagram {
        let r = |a: usize| *map.get(&a).unwrap_or(&a);
        let mut arcs: Vec<usize> = self.arcs.iter().map(|&a| r(a)).collect();
        arcs.sort_unstable();
        let mut closures: Vec<usize> = self.closures.iter().map(|&a| r(a)).collect();
        closures.sort_unstable();
        RibbonDiagram {
            arcs,
            crossings: self
                .crossings
                .iter()
                .map(|c| Crossing {
                    over_in: r(c.over_in),
                    over_out: r(c.over_out),
                    under_in: r(c.under_in),
                    under_out: r(c.under_out),
                    positive: c.positive,
                })
                .collect(),
            vertices: self
                .vertices
                .iter()
                .map(|v| Vertex {
                    slots: v.slots.map(|s| Slot::new(r(s.arc), s.dir)),
                })
                .collect(),
            closures,
        }
    }

    /// Arc ids renumbered to `0..n` in increasing order.
    pub fn compacted(&self) -> RibbonDiagram {
        let map = self.arcs.iter().enumerate().map(|(i, &a)| (a, i)).collect();
        self.renamed(&map)
    }

    /// Disjoint union; the arcs of `other` are shifted past those of `self`.
    pub fn disjoint_union(&self, other: &RibbonDiagram) -> RibbonDiagram {
        let shift = self.fresh_arc();
        let map = other.arcs.iter().map(|&a| (a, a + shift)).collect();
        let o = other.renamed(&map);
        let mut d = self.clone();
        d.arcs.extend(o.arcs);
        d.crossings.extend(o.crossings);
        d.vertices.extend(o.vertices);
        d.closures.extend(o.closures);
        d.closures.sort_unstable();
        d
    }
}

struct UnionFind {
    arcs: Vec<usize>,
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(d: &RibbonDiagram) -> Self {
        UnionFind {
            arcs: d.arcs.clone(),
            parent: (0..d.arcs.len()).collect(),
        }
    }

    fn find(&mut self, i: usize) -> usize {
        let mut r = i;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut c = i;
        while self.parent[c] != r {
            let n = self.parent[c];
            self.parent[c] = r;
            c = n;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let ia = self.arcs.binary_search(&a).expect("arc");
        let ib = self.arcs.binary_search(&b).expect("arc");
        let (ra, rb) = (self.find(ia), self.find(ib));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }

    /// Groups sorted by least arc id.
    fn groups(mut self) -> Vec<Vec<usize>> {
        let mut by_root: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for i in 0..self.arcs.len() {
            let r = self.find(i);
            by_root.entry(r).or_default().push(self.arcs[i]);
        }
        by_root.into_values().collect()
    }
}

fn attachments(d: &RibbonDiagram) -> Result<Endpoints, DiagramError> {
    let declared: BTreeSet<usize> = d.arcs.iter().copied().collect();
    if declared.len() != d.arcs.len() {
        let mut seen = BTreeSet::new();
        for &a in &d.arcs {
            if !seen.insert(a) {
                return Err(DiagramError::DuplicateArc(a));
            }
        }
    }
    let mut ends = Endpoints::default();
    let mut attach = |arc: usize, end: End, at: Endpoint, place: String| {
        if !declared.contains(&arc) {
            return Err(DiagramError::UnknownArc { arc, place });
        }
        let table = match end {
            End::Tail => &mut ends.tails,
            End::Head => &mut ends.heads,
        };
        if table.insert(arc, at).is_some() {
            return Err(DiagramError::ReusedEnd { arc, end });
        }
        Ok(())
    };
    for (i, c) in d.crossings.iter().enumerate() {
        let place = |r: &str| format!("crossing {i} {r}");
        let at = |role| Endpoint::Crossing { index: i, role };
        attach(c.over_in, End::Head, at(Role::OverIn), place("over_in"))?;
        attach(c.over_out, End::Tail, at(Role::OverOut), place("over_out"))?;
        attach(c.under_in, End::Head, at(Role::UnderIn), place("under_in"))?;
        attach(c.under_out, End::Tail, at(Role::UnderOut), place("under_out"))?;
    }
    for (i, v) in d.vertices.iter().enumerate() {
        for (k, s) in v.slots.iter().enumerate() {
            let end = match s.dir {
                Dir::In => End::Head,
                Dir::Out => End::Tail,
            };
            attach(
                s.arc,
                end,
                Endpoint::Vertex { index: i, slot: k },
                format!("vertex {i} slot {k}"),
            )?;
        }
    }
    for &a in &d.closures {
        attach(a, End::Head, Endpoint::Closure, "closures".into())?;
        attach(a, End::Tail, Endpoint::Closure, "closures".into())?;
    }
    for &a in &d.arcs {
        if !ends.tails.contains_key(&a) {
            return Err(DiagramError::DanglingEnd { arc: a, end: End::Tail });
        }
        if !ends.heads.contains_key(&a) {
            return Err(DiagramError::DanglingEnd { arc: a, end: End::Head });
        }
    }
    Ok(ends)
}

/// Every arc end attached exactly once, every referenced arc declared.
pub fn validate_diagram(d: &RibbonDiagram) -> Result<(), DiagramError> {
    attachments(d).map(|_| ())
}

/// Sub-diagrams of the spatial-graph components, ordered by least arc id.
///
/// Crossings between different components are dropped and the two halves of
/// each interrupted strand are glued back together, so a component is the
/// diagram obtained by erasing every other component.
pub fn components(d: &RibbonDiagram) -> Vec<RibbonDiagram> {
    let groups = d.component_arcs();
    if groups.len() == 1 {
        return vec![d.clone()];
    }
    groups
        .iter()
        .map(|arcs| restrict(d, arcs))
        .collect()
}

fn restrict(d: &RibbonDiagram, arcs: &[usize]) -> RibbonDiagram {
    let keep = |a: usize| arcs.binary_search(&a).is_ok();
    let mut out = RibbonDiagram {
        arcs: arcs.to_vec(),
        crossings: Vec::new(),
        vertices: d
            .vertices
            .iter()
            .filter(|v| keep(v.slots[0].arc))
            .copied()
            .collect(),
        closures: d.closures.iter().copied().filter(|&a| keep(a)).collect(),
    };
    let mut glue = Vec::new();
    for c in &d.crossings {
        match (keep(c.over_in), keep(c.under_in)) {
            (true, true) => out.crossings.push(*c),
            (true, false) => glue.push((c.over_in, c.over_out)),
            (false, true) => glue.push((c.under_in, c.under_out)),
            (false, false) => {}
        }
    }
    out.glue(glue);
    out
}

impl RibbonDiagram {
    /// Removes crossings and glues each interrupted strand back together.
    /// Returns, for every arc that disappeared, the arc it was merged into.
    pub(crate) fn remove_crossings(&mut self, indices: &[usize]) -> BTreeMap<usize, usize> {
        let mut idx = indices.to_vec();
        idx.sort_unstable();
        idx.dedup();
        let mut pairs = Vec::new();
        for &i in idx.iter().rev() {
            let c = self.crossings.remove(i);
            pairs.push((c.over_in, c.over_out));
            pairs.push((c.under_in, c.under_out));
        }
        self.glue(pairs)
    }

    /// Joins the head of `p` to the tail of `q` for each pair, merging `q`
    /// into `p`. Returns, for every arc that disappeared, its survivor.
    fn glue(&mut self, pairs: Vec<(usize, usize)>) -> BTreeMap<usize, usize> {
        let mut merged: BTreeMap<usize, usize> = BTreeMap::new();
        let resolve = |m: &BTreeMap<usize, usize>, mut a: usize| {
            while let Some(&b) = m.get(&a) {
                a = b;
            }
            a
        };
        for (p, q) in pairs {
            let (p, q) = (resolve(&merged, p), resolve(&merged, q));
            if p == q {
                self.closures.push(p);
                continue;
            }
            self.replace_head(q, p);
            self.arcs.retain(|&a| a != q);
            merged.insert(q, p);
        }
        self.closures.sort_unstable();
        merged
            .keys()
            .map(|&k| (k, resolve(&merged, k)))
            .collect()
    }

    /// Replaces `from` by `to` at the place consuming the head of `from`.
    pub(crate) fn replace_head(&mut self, from: usize, to: usize) {
        for c in &mut self.crossings {
            if c.over_in == from {
                c.over_in = to;
                return;
            }
            if c.under_in == from {
                c.under_in = to;
                return;
            }
        }
        for v in &mut self.vertices {
            for s in &mut v.slots {
                if s.arc == from && s.dir == Dir::In {
                    s.arc = to;
                    return;
                }
            }
        }
    }

    /// Cuts `arc` into `k >= 2` pieces joined head to tail; the joins are left
    /// open for the caller to attach. The first piece keeps the id and the
    /// tail; the last piece takes the head. For a closed loop the first and
    /// last piece coincide.
    pub(crate) fn subdivide(&mut self, arc: usize, k: usize) -> Vec<usize> {
        let closed = self.closures.contains(&arc);
        let fresh_count = if closed { k - 2 } else { k - 1 };
        let start = self.fresh_arc();
        let fresh: Vec<usize> = (start..start + fresh_count).collect();
        let mut pieces = vec![arc];
        pieces.extend(&fresh);
        if closed {
            self.closures.retain(|&a| a != arc);
            pieces.push(arc);
        } else {
            let last = *pieces.last().expect("pieces");
            if last != arc {
                self.replace_head(arc, last);
            }
        }
        self.arcs.extend(fresh);
        self.arcs.sort_unstable();
        pieces
    }
}
