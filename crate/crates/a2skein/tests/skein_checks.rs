//! End-to-end checks of the diagrammatic evaluator against the closed
//! formulas: elementary closed webs, Reidemeister moves, the clasp algebra,
//! and the cabled torus-link diagrams.

use a2skein::jones::psi_closed_form;
use a2skein::qexact::{quantum_int, RationalQ, SixthPowerLaurent};
use a2skein::skein::{
    braid_diagram, canonical_signature, clasp_fragments, close_trace, compose, evaluate_closed,
    flatten_and_merge, flatten_fragment, identity_fragment, tensor, torus_invariant,
    torus_link_diagram, w_fragment, SkeinError, VertexKind, WebDiagram,
};
use a2skein::websym::delta;

fn rational(num: SixthPowerLaurent, den: SixthPowerLaurent) -> RationalQ {
    RationalQ::new(num, den).unwrap()
}

#[test]
fn unknot_closes_to_quantum_three() {
    let mut d = braid_diagram(1, &[]);
    close_trace(&mut d);
    assert_eq!(evaluate_closed(&d).unwrap(), quantum_int(3));
}

#[test]
fn theta_web_value() {
    let mut d = WebDiagram::new();
    let (_, sd) = d.add_vertex(VertexKind::Source, &[true, true, true]);
    let (_, rd) = d.add_vertex(VertexKind::Sink, &[false, false, false]);
    // opposite rotation senses; pairing i <-> i would be the toroidal gluing
    d.pair(sd[0], rd[0]);
    d.pair(sd[1], rd[2]);
    d.pair(sd[2], rd[1]);
    let expected = &quantum_int(2) * &quantum_int(3);
    assert_eq!(evaluate_closed(&d).unwrap(), expected);
}

/// The two closures appearing in the mixed-orientation clasp expansion:
/// parallel strands traced into two circles, and the turnback pair traced
/// into one. Their clasp-weighted combination is Delta(1,1).
#[test]
fn mixed_clasp_closure_recovers_delta() {
    // two antiparallel strands, traced
    let mut parallel = WebDiagram::new();
    let (pb0, db0) = parallel.add_port(true);
    let (pb1, db1) = parallel.add_port(false);
    let (pt0, dt0) = parallel.add_port(false);
    let (pt1, dt1) = parallel.add_port(true);
    parallel.pair(db0, dt0);
    parallel.pair(dt1, db1);
    parallel.bottom_ports = vec![pb0, pb1];
    parallel.top_ports = vec![pt0, pt1];
    parallel.glue_ports(pt0, pb0);
    parallel.glue_ports(pt1, pb1);
    let two_circles = evaluate_closed(&parallel).unwrap();
    assert_eq!(two_circles, quantum_int(3).pow(2));

    // turnback: bottom arc and top arc, traced into one circle
    let mut turnback = WebDiagram::new();
    let (pb0, db0) = turnback.add_port(true);
    let (pb1, db1) = turnback.add_port(false);
    let (pt0, dt0) = turnback.add_port(false);
    let (pt1, dt1) = turnback.add_port(true);
    turnback.pair(db0, db1);
    turnback.pair(dt1, dt0);
    turnback.bottom_ports = vec![pb0, pb1];
    turnback.top_ports = vec![pt0, pt1];
    turnback.glue_ports(pt0, pb0);
    turnback.glue_ports(pt1, pb1);
    let one_circle = evaluate_closed(&turnback).unwrap();
    assert_eq!(one_circle, quantum_int(3));

    // id - (1/[3]) turnback, closed: [3]^2 - (1/[3])[3] = Delta(1,1)
    let weighted = &RationalQ::from_laurent(two_circles)
        - &rational(one_circle, quantum_int(3));
    assert_eq!(weighted, RationalQ::from_laurent(delta(1, 1)));
}

#[test]
fn opposite_crossings_cancel() {
    let mut d = braid_diagram(2, &[(0, VertexKind::OverNw), (0, VertexKind::OverNe)]);
    close_trace(&mut d);
    assert_eq!(evaluate_closed(&d).unwrap(), quantum_int(3).pow(2));
}

#[test]
fn hopf_link_and_its_mirror() {
    let expected = SixthPowerLaurent::from_terms([(-10, 1.into()), (2, 1.into()), (8, 1.into())]);
    let value = torus_invariant(1, 1, 3).unwrap();
    assert_eq!(value, expected);
    assert_eq!(value, psi_closed_form(1, 1).unwrap().value);

    // the opposite crossing kind builds the mirror image
    let mut d = braid_diagram(2, &[(0, VertexKind::OverNe), (0, VertexKind::OverNe)]);
    close_trace(&mut d);
    let mirror = evaluate_closed(&d).unwrap();
    let framed = &delta(1, 0) * &expected;
    assert_eq!(mirror, framed.mirrored());
}

#[test]
fn torus_diagram_shapes() {
    assert_eq!(torus_link_diagram(1, 1, 3).unwrap().diagram.crossing_count(), 2);
    assert_eq!(torus_link_diagram(2, 1, 3).unwrap().diagram.crossing_count(), 4);
    assert_eq!(torus_link_diagram(1, 2, 3).unwrap().diagram.crossing_count(), 8);
    // zero-width cables leave the empty diagram
    let empty = torus_link_diagram(2, 0, 3).unwrap();
    assert_eq!(empty.diagram.crossing_count(), 0);
    assert!(torus_invariant(2, 0, 3).unwrap().is_one());
}

#[test]
fn oracle_agrees_with_the_closed_formula() {
    for n in 1..=2 {
        for m in 1..=2 {
            let oracle = torus_invariant(m, n, 3).unwrap();
            let formula = psi_closed_form(n, m).unwrap().value;
            assert_eq!(oracle, formula, "torus ({n},{m})");
        }
    }
}

/// Signature of the single reduced web a crossing-free fragment flattens to.
fn reduced_sig(frag: &WebDiagram) -> Vec<i64> {
    let terms = flatten_fragment(frag).unwrap();
    assert_eq!(terms.len(), 1);
    assert!(terms[0].0.is_one());
    canonical_signature(&terms[0].1)
}

#[test]
fn clasp_two_and_three_expansions() {
    let two = clasp_fragments(2, 3).unwrap();
    assert_eq!(two.len(), 2);
    let by_sig = |sig: &Vec<i64>, terms: &[(RationalQ, WebDiagram)]| -> Option<RationalQ> {
        terms
            .iter()
            .find(|(_, f)| &canonical_signature(f) == sig)
            .map(|(c, _)| c.clone())
    };
    let id2 = canonical_signature(&identity_fragment(2));
    let w = canonical_signature(&w_fragment());
    assert_eq!(by_sig(&id2, &two), Some(RationalQ::one()));
    assert_eq!(
        by_sig(&w, &two),
        Some(-&rational(SixthPowerLaurent::one(), quantum_int(2)))
    );

    // width 3: identity, two single-W terms, two double-W terms, and the
    // six-strand connector; six terms matching the dimension of the
    // invariant space
    let three = clasp_fragments(3, 3).unwrap();
    assert_eq!(three.len(), 6);
    let id1 = identity_fragment(1);
    let w12 = tensor(&w_fragment(), &id1);
    let w23 = tensor(&id1, &w_fragment());
    let s_id = canonical_signature(&identity_fragment(3));
    let s_w12 = canonical_signature(&w12);
    let s_w23 = canonical_signature(&w23);
    let s_w12w23 = reduced_sig(&compose(&w12, &w23));
    let s_w23w12 = reduced_sig(&compose(&w23, &w12));
    let minus_ratio = -&rational(quantum_int(2), quantum_int(3));
    assert_eq!(by_sig(&s_id, &three), Some(RationalQ::one()));
    assert_eq!(by_sig(&s_w12, &three), Some(minus_ratio.clone()));
    assert_eq!(by_sig(&s_w23, &three), Some(minus_ratio));
    let third = rational(SixthPowerLaurent::one(), quantum_int(3));
    assert_eq!(by_sig(&s_w12w23, &three), Some(third.clone()));
    assert_eq!(by_sig(&s_w23w12, &three), Some(third));
    // the remaining term is the fully connected web with coefficient
    // -1/([2][3])
    let known = [s_id, s_w12, s_w23, s_w12w23, s_w23w12];
    let rest: Vec<_> = three
        .iter()
        .filter(|(_, f)| !known.contains(&canonical_signature(f)))
        .collect();
    assert_eq!(rest.len(), 1);
    let expected = -&rational(SixthPowerLaurent::one(), &quantum_int(2) * &quantum_int(3));
    assert_eq!(rest[0].0, expected);
}

#[test]
fn triple_w_reduces_to_w_plus_connector() {
    let id1 = identity_fragment(1);
    let w12 = tensor(&w_fragment(), &id1);
    let w23 = tensor(&id1, &w_fragment());
    let triple = compose(&compose(&w12, &w23), &w12);
    let mut terms = flatten_fragment(&triple).unwrap();
    terms.sort_by_key(|(_, f)| canonical_signature(f));
    assert_eq!(terms.len(), 2);
    let sigs: Vec<_> = terms.iter().map(|(_, f)| canonical_signature(f)).collect();
    assert!(sigs.contains(&canonical_signature(&tensor(&w_fragment(), &id1))));
    for (c, _) in &terms {
        assert!(c.is_one(), "W12 W23 W12 = W12 + Y with unit coefficients");
    }
}

#[test]
fn clasps_are_idempotent() {
    for n in 2..=3i64 {
        let clasp = clasp_fragments(n, 3).unwrap();
        let mut squared = Vec::new();
        for (ca, fa) in &clasp {
            for (cb, fb) in &clasp {
                squared.push((ca * cb, compose(fa, fb)));
            }
        }
        let squared = flatten_and_merge(squared).unwrap();
        assert_eq!(squared.len(), clasp.len(), "term count at n={n}");
        for ((c1, f1), (c2, f2)) in squared.iter().zip(&clasp) {
            assert_eq!(canonical_signature(f1), canonical_signature(f2), "n={n}");
            assert_eq!(c1, c2, "n={n}");
        }
    }
}

#[test]
fn clasps_annihilate_attached_vertex_pairs() {
    for n in 2..=3i64 {
        let clasp = clasp_fragments(n, 3).unwrap();
        for pos in 0..(n as usize - 1) {
            let mut w = identity_fragment(pos);
            w = tensor(&w, &w_fragment());
            w = tensor(&w, &identity_fragment(n as usize - 2 - pos));
            let attached: Vec<_> = clasp
                .iter()
                .map(|(c, f)| (c.clone(), compose(f, &w)))
                .collect();
            let merged = flatten_and_merge(attached).unwrap();
            assert!(merged.is_empty(), "clasp {n} with vertex pair at {pos}");
        }
    }
}

#[test]
fn guard_rails() {
    match clasp_fragments(4, 3) {
        Err(SkeinError::ColorLimit { n: 4, limit: 3 }) => {}
        other => panic!("expected color-limit error, got {other:?}"),
    }
    assert!(matches!(
        torus_link_diagram(1, 4, 3),
        Err(SkeinError::ColorLimit { .. })
    ));
    // open fragments are rejected by the closed evaluator
    let open = identity_fragment(2);
    assert!(matches!(evaluate_closed(&open), Err(SkeinError::NotClosed)));
}
