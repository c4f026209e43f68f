use augrack::diagrams::{
    all_movepairs, apply_move, canonical_form, catalog, components, is_isomorphic,
    reverse_arc_orientation, validate_diagram, MoveKind, MoveSite,
};

#[test]
fn forward_then_backward_is_identity() {
    for p in all_movepairs() {
        validate_diagram(&p.after).unwrap();
        let back = apply_move(&p.after, &p.inverse)
            .unwrap_or_else(|e| panic!("{} {}: {e}", p.kind, p.index))
            .diagram;
        assert!(is_isomorphic(&back, &p.before), "{} {}", p.kind, p.index);
    }
}

#[test]
fn moves_change_the_diagram() {
    for p in all_movepairs() {
        // the trefoil is invertible, so reversing it gives an isomorphic diagram
        if p.kind != MoveKind::REV {
            assert!(!is_isomorphic(&p.before, &p.after), "{} {}", p.kind, p.index);
        }
    }
}

#[test]
fn components_are_preserved() {
    for p in all_movepairs() {
        assert_eq!(components(&p.before).len(), components(&p.after).len());
    }
}

#[test]
fn crossing_counts_per_kind() {
    for p in all_movepairs() {
        let delta = p.after.crossing_count() as i64 - p.before.crossing_count() as i64;
        let expected = match p.kind {
            MoveKind::RII | MoveKind::CL => 2,
            MoveKind::YI | MoveKind::IY => -1,
            MoveKind::RIII | MoveKind::IH | MoveKind::REV => 0,
        };
        assert_eq!(delta, expected, "{} {}", p.kind, p.index);
    }
}

#[test]
fn vertex_slides_run_backward_first() {
    for p in all_movepairs() {
        if !matches!(p.kind, MoveKind::YI | MoveKind::IY) {
            continue;
        }
        // sliding back and then forward again at the recovered site
        let back = apply_move(&p.after, &p.inverse).unwrap().diagram;
        let v = p.site.vertices[0];
        let again = (0..3)
            .filter_map(|slot| {
                let site = if p.kind == MoveKind::YI {
                    MoveSite::yi(v, slot)
                } else {
                    MoveSite::iy(v, slot)
                };
                apply_move(&back, &site).ok()
            })
            .any(|o| is_isomorphic(&o.diagram, &p.after));
        assert!(again, "{} {}", p.kind, p.index);
    }
}

#[test]
fn reversal_of_a_kink_flips_nothing_but_orientation() {
    let k = catalog::kink(true, 1);
    let r = reverse_arc_orientation(&k, 0).unwrap();
    validate_diagram(&r).unwrap();
    // both strands through the crossing reverse, so its sign is kept
    assert!(r.crossings[0].positive);
    assert_eq!(reverse_arc_orientation(&r, 1).unwrap(), k);
}

#[test]
fn hand_encoded_results() {
    let rii = apply_move(&catalog::unlink(), &MoveSite::rii(0, 1, true, true)).unwrap();
    assert_eq!(rii.diagram.crossing_count(), 2);
    let expected = augrack::diagrams::RibbonDiagram::new(
        vec![0, 1, 2, 3],
        vec![
            augrack::diagrams::Crossing { over_in: 0, over_out: 2, under_in: 1, under_out: 3, positive: true },
            augrack::diagrams::Crossing { over_in: 2, over_out: 0, under_in: 3, under_out: 1, positive: false },
        ],
        vec![],
        vec![],
    )
    .unwrap();
    assert!(is_isomorphic(&rii.diagram, &expected));
    let ih = apply_move(&catalog::theta(), &MoveSite::ih(2)).unwrap();
    assert_eq!(canonical_form(&ih.diagram), canonical_form(&catalog::handcuff()));
}
