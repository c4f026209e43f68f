use serde::Serialize;

use crate::algebra::AugmentedRack;
use crate::diagrams::{components, validate_diagram, Dir, RibbonDiagram};

use super::InvariantError;

/// Colors of the arcs of a diagram, in the order of its (sorted) arc ids.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Coloring {
    pub arcs: Vec<usize>,
    pub colors: Vec<usize>,
}

impl Coloring {
    pub fn get(&self, arc: usize) -> usize {
        self.colors[self.arcs.binary_search(&arc).expect("arc of the coloring")]
    }
}

struct Problem<'a> {
    x: &'a AugmentedRack,
    crossings: Vec<([usize; 4], bool)>,
    vertices: Vec<[(usize, Dir); 3]>,
}

impl Problem<'_> {
    /// Fills forced colors; `false` on a contradiction.
    fn propagate(&self, c: &mut [Option<usize>]) -> bool {
        let x = self.x;
        let mut changed = true;
        while changed {
            changed = false;
            for &([oi, oo, ui, uo], positive) in &self.crossings {
                match (c[oi], c[oo]) {
                    (Some(a), Some(b)) if a != b => return false,
                    (Some(a), None) => {
                        c[oo] = Some(a);
                        changed = true;
                    }
                    (None, Some(b)) => {
                        c[oi] = Some(b);
                        changed = true;
                    }
                    _ => {}
                }
                let Some(over) = c[oi] else { continue };
                let forward = |p: usize| if positive { x.op(p, over) } else { x.op_inv(p, over) };
                let backward = |q: usize| if positive { x.op_inv(q, over) } else { x.op(q, over) };
                match (c[ui], c[uo]) {
                    (Some(p), Some(q)) if forward(p) != q => return false,
                    (Some(p), None) => {
                        c[uo] = Some(forward(p));
                        changed = true;
                    }
                    (None, Some(q)) => {
                        c[ui] = Some(backward(q));
                        changed = true;
                    }
                    _ => {}
                }
            }
        }
        let g = x.group();
        self.vertices.iter().all(|slots| {
            let mut prod = g.identity();
            for &(p, dir) in slots {
                let Some(col) = c[p] else { return true };
                let h = x.nu(col);
                prod = g.mul(prod, if dir == Dir::In { h } else { g.inv(h) });
            }
            prod == g.identity()
        })
    }

    fn search(&self, c: Vec<Option<usize>>, out: &mut Vec<Vec<usize>>) {
        match c.iter().position(Option::is_none) {
            None => out.push(c.into_iter().map(|v| v.expect("assigned")).collect()),
            Some(i) => {
                for col in 0..self.x.size() {
                    let mut next = c.clone();
                    next[i] = Some(col);
                    if self.propagate(&mut next) {
                        self.search(next, out);
                    }
                }
            }
        }
    }
}

/// All colorings of `d` by `x`, sorted lexicographically by the colors of
/// arcs in increasing id order.
///
/// At a positive crossing the under strand leaves with `under_in * over`, at
/// a negative one with `under_in ∗̄ over`; around a vertex the product of
/// `ν(color)^{±1}` (+1 for arcs pointing in) in clockwise order is `e`.
pub fn enumerate_colorings(
    d: &RibbonDiagram,
    x: &AugmentedRack,
) -> Result<Vec<Coloring>, InvariantError> {
    validate_diagram(d)?;
    let pos = |a: usize| d.arc_position(a).expect("validated arc");
    let problem = Problem {
        x,
        crossings: d
            .crossings
            .iter()
            .map(|c| {
                (
                    [pos(c.over_in), pos(c.over_out), pos(c.under_in), pos(c.under_out)],
                    c.positive,
                )
            })
            .collect(),
        vertices: d
            .vertices
            .iter()
            .map(|v| v.slots.map(|s| (pos(s.arc), s.dir)))
            .collect(),
    };
    let mut found = Vec::new();
    let start = vec![None; d.arc_count()];
    if problem.vertices.is_empty() && problem.crossings.is_empty() {
        problem.search(start, &mut found);
    } else {
        let mut s = start;
        if problem.propagate(&mut s) {
            problem.search(s, &mut found);
        }
    }
    found.sort();
    Ok(found
        .into_iter()
        .map(|colors| Coloring {
            arcs: d.arcs.clone(),
            colors,
        })
        .collect())
}

/// Number of colorings of each component (see [`components`]).
pub fn coloring_count(d: &RibbonDiagram, x: &AugmentedRack) -> Result<Vec<usize>, InvariantError> {
    validate_diagram(d)?;
    components(d)
        .iter()
        .map(|c| enumerate_colorings(c, x).map(|v| v.len()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::fixtures;
    use crate::diagrams::catalog;

    /// Brute force over all maps arcs → X.
    fn oracle(d: &RibbonDiagram, x: &AugmentedRack) -> usize {
        let n = d.arc_count();
        let g = x.group();
        let total = x.size().pow(n as u32);
        (0..total)
            .filter(|&code| {
                let mut col = vec![0; n];
                let mut c = code;
                for slot in col.iter_mut() {
                    *slot = c % x.size();
                    c /= x.size();
                }
                let at = |a: usize| col[d.arc_position(a).unwrap()];
                let crossings_ok = d.crossings.iter().all(|c| {
                    let o = at(c.over_in);
                    let expected = if c.positive {
                        x.op(at(c.under_in), o)
                    } else {
                        x.op_inv(at(c.under_in), o)
                    };
                    at(c.over_out) == o && at(c.under_out) == expected
                });
                let vertices_ok = d.vertices.iter().all(|v| {
                    let p = v.slots.iter().fold(g.identity(), |acc, s| {
                        let h = x.nu(at(s.arc));
                        g.mul(acc, if s.dir == Dir::In { h } else { g.inv(h) })
                    });
                    p == g.identity()
                });
                crossings_ok && vertices_ok
            })
            .count()
    }

    #[test]
    fn counts_match_brute_force() {
        let diagrams = [
            catalog::circle(),
            catalog::theta(),
            catalog::handcuff(),
            catalog::kink(true, 1),
            catalog::kink(false, 2),
            catalog::hopf(),
            catalog::trefoil_ribbon(),
        ];
        for x in [fixtures::c2(), fixtures::r3s3(), fixtures::q5()] {
            for d in &diagrams {
                assert_eq!(enumerate_colorings(d, &x).unwrap().len(), oracle(d, &x));
            }
        }
    }

    #[test]
    fn specific_counts() {
        let r3 = fixtures::r3s3();
        let q5 = fixtures::q5();
        assert_eq!(coloring_count(&catalog::circle(), &r3).unwrap(), vec![3]);
        assert_eq!(coloring_count(&catalog::unlink(), &r3).unwrap(), vec![3, 3]);
        assert_eq!(coloring_count(&catalog::kink(true, 1), &r3).unwrap(), vec![3]);
        assert_eq!(coloring_count(&catalog::theta(), &q5).unwrap(), vec![20]);
        assert_eq!(coloring_count(&catalog::theta(), &r3).unwrap(), vec![0]);
        assert_eq!(coloring_count(&catalog::trefoil_ribbon(), &r3).unwrap(), vec![9]);
    }

    #[test]
    fn colorings_are_sorted() {
        let cs = enumerate_colorings(&catalog::trefoil_ribbon(), &fixtures::r3s3()).unwrap();
        assert!(cs.windows(2).all(|w| w[0] < w[1]));
        let kink = enumerate_colorings(&catalog::kink(true, 1), &fixtures::r3s3()).unwrap();
        for c in kink {
            assert_eq!(c.get(0), c.get(1));
        }
    }
}
