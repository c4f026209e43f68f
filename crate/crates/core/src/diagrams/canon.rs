use std::collections::{BTreeMap, VecDeque};

use super::diagram::{Dir, Endpoint, RibbonDiagram};

type CrossingKey = (usize, usize, usize, usize, bool);
type VertexKey = [(usize, Dir); 3];

/// Relabelled serialization of one connected piece.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
struct PieceForm {
    arcs: usize,
    crossings: Vec<CrossingKey>,
    vertices: Vec<VertexKey>,
    closures: Vec<usize>,
}

/// A complete isomorphism invariant: two diagrams have equal forms exactly
/// when some bijection of arcs carries one onto the other, preserving
/// crossing roles and signs and the cyclic slot order at vertices.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct CanonicalForm(Vec<PieceForm>);

pub fn canonical_form(d: &RibbonDiagram) -> CanonicalForm {
    let ends = d.endpoints();
    let mut pieces: Vec<PieceForm> = d
        .split_pieces()
        .iter()
        .map(|arcs| {
            arcs.iter()
                .map(|&s| labelled(d, &ends, s))
                .min()
                .expect("nonempty piece")
        })
        .collect();
    pieces.sort();
    CanonicalForm(pieces)
}

pub fn is_isomorphic(a: &RibbonDiagram, b: &RibbonDiagram) -> bool {
    a.arc_count() == b.arc_count()
        && a.crossing_count() == b.crossing_count()
        && a.vertex_count() == b.vertex_count()
        && canonical_form(a) == canonical_form(b)
}

fn labelled(d: &RibbonDiagram, ends: &super::diagram::Endpoints, start: usize) -> PieceForm {
    let mut label: BTreeMap<usize, usize> = BTreeMap::new();
    let mut queue = VecDeque::new();
    let mut crossings = Vec::new();
    let mut vertices = Vec::new();
    let mut seen_c = vec![false; d.crossings.len()];
    let mut seen_v = vec![false; d.vertices.len()];
    let visit = |a: usize, label: &mut BTreeMap<usize, usize>, queue: &mut VecDeque<usize>| {
        if !label.contains_key(&a) {
            label.insert(a, label.len());
            queue.push_back(a);
        }
    };
    visit(start, &mut label, &mut queue);
    let mut order_c = Vec::new();
    let mut order_v = Vec::new();
    while let Some(a) = queue.pop_front() {
        for at in [ends.tail(a), ends.head(a)] {
            match at {
                Endpoint::Crossing { index, .. } => {
                    let c = &d.crossings[index];
                    for b in [c.over_in, c.over_out, c.under_in, c.under_out] {
                        visit(b, &mut label, &mut queue);
                    }
                    if !seen_c[index] {
                        seen_c[index] = true;
                        order_c.push(index);
                    }
                }
                Endpoint::Vertex { index, slot } => {
                    let v = &d.vertices[index];
                    for k in 1..3 {
                        visit(v.slots[(slot + k) % 3].arc, &mut label, &mut queue);
                    }
                    if !seen_v[index] {
                        seen_v[index] = true;
                        order_v.push(index);
                    }
                }
                Endpoint::Closure => {}
            }
        }
    }
    for i in order_c {
        let c = &d.crossings[i];
        crossings.push((
            label[&c.over_in],
            label[&c.over_out],
            label[&c.under_in],
            label[&c.under_out],
            c.positive,
        ));
    }
    for i in order_v {
        let v = &d.vertices[i];
        let best = (0..3)
            .map(|k| v.rotated(k).map(|s| (label[&s.arc], s.dir)))
            .min()
            .expect("three rotations");
        vertices.push(best);
    }
    crossings.sort();
    vertices.sort();
    let mut closures: Vec<usize> = d
        .closures
        .iter()
        .filter_map(|a| label.get(a).copied())
        .collect();
    closures.sort();
    PieceForm {
        arcs: label.len(),
        crossings,
        vertices,
        closures,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagrams::diagram::{Crossing, Vertex};

    fn theta(order: [usize; 3]) -> RibbonDiagram {
        RibbonDiagram::new(
            vec![0, 1, 2],
            vec![],
            vec![
                Vertex::new([(order[0], Dir::In), (order[1], Dir::In), (order[2], Dir::In)]),
                Vertex::new([(order[2], Dir::Out), (order[1], Dir::Out), (order[0], Dir::Out)]),
            ],
            vec![],
        )
        .unwrap()
    }

    #[test]
    fn relabelled_theta_is_isomorphic() {
        assert!(is_isomorphic(&theta([0, 1, 2]), &theta([2, 0, 1])));
        assert!(is_isomorphic(&theta([0, 1, 2]), &theta([1, 0, 2])));
    }

    #[test]
    fn slot_order_matters() {
        let mirror = RibbonDiagram::new(
            vec![0, 1, 2],
            vec![],
            vec![
                Vertex::new([(0, Dir::In), (1, Dir::In), (2, Dir::In)]),
                Vertex::new([(0, Dir::Out), (1, Dir::Out), (2, Dir::Out)]),
            ],
            vec![],
        )
        .unwrap();
        assert!(!is_isomorphic(&theta([0, 1, 2]), &mirror));
    }

    #[test]
    fn kink_sign_matters() {
        let kink = |positive| {
            RibbonDiagram::new(
                vec![0, 1],
                vec![Crossing {
                    over_in: 0,
                    over_out: 1,
                    under_in: 1,
                    under_out: 0,
                    positive,
                }],
                vec![],
                vec![],
            )
            .unwrap()
        };
        assert!(is_isomorphic(&kink(true), &kink(true).renamed(&[(0, 5), (1, 3)].into())));
        assert!(!is_isomorphic(&kink(true), &kink(false)));
    }
}
