//! Cross-route checks for the colored invariant: the three torus-link
//! formulas against each other, frozen values for the Hopf link and the
//! trefoil, word-reversal invariance, and the q = 1 and minimum-degree
//! specializations.

use a2skein::jones::{
    g_full_twist_form, jones_two_bridge, min_degree, psi_closed_form, TwoBridgeWord,
};
use a2skein::qexact::SixthPowerLaurent;
use num_bigint::BigInt;

fn from_terms(ts: &[(i64, i64)]) -> SixthPowerLaurent {
    SixthPowerLaurent::from_terms(ts.iter().map(|&(e, c)| (e, BigInt::from(c))))
}

fn word(entries: &[i64]) -> TwoBridgeWord {
    TwoBridgeWord::new(entries.to_vec()).unwrap()
}

#[test]
fn hopf_link_frozen_value() {
    // normalized invariant of the Hopf link at color 1:
    // q^{-5/3} + q^{1/3} + q^{4/3}
    let expected = from_terms(&[(-10, 1), (2, 1), (8, 1)]);
    assert_eq!(psi_closed_form(1, 1).unwrap().value, expected);
    assert_eq!(g_full_twist_form(1, 1).unwrap().value, expected);
    assert_eq!(jones_two_bridge(&word(&[1]), 1).unwrap().value, expected);
}

#[test]
fn trefoil_matches_the_rank_three_specialization() {
    // The word (1,1) closes to the right trefoil. Unframing by q^{2(n^2+3n)/3
    // * 2} at n = 1 must give q^2 + q^4 - q^6, the value of the fundamental
    // HOMFLY specialization 2a^2 - a^4 + a^2 z^2 at a = q^{3/2},
    // z = q^{1/2} - q^{-1/2}.
    let j = jones_two_bridge(&word(&[1, 1]), 1).unwrap();
    assert_eq!(j.value, from_terms(&[(-20, 1), (-8, 1), (4, -1)]));
    let unframed = j.value.shifted(4 * 4 * 2);
    assert_eq!(unframed, from_terms(&[(12, 1), (24, 1), (36, -1)]));
}

#[test]
fn three_torus_routes_agree() {
    for n in 0..=8 {
        for m in 1..=3 {
            let psi = psi_closed_form(n, m).unwrap().value;
            let g = g_full_twist_form(n, m).unwrap().value;
            let j = jones_two_bridge(&word(&[m]), n).unwrap().value;
            assert_eq!(psi, g, "psi vs g at ({n},{m})");
            assert_eq!(psi, j, "psi vs recoupling at ({n},{m})");
        }
    }
}

#[test]
fn reversed_words_give_the_same_invariant() {
    // rotating the diagram half a turn reverses the twist-region order
    let words: &[&[i64]] = &[&[1, 2], &[2, 1, 1], &[1, 2, 3], &[2, 2, 1, 1]];
    for entries in words {
        let rev: Vec<i64> = entries.iter().rev().cloned().collect();
        for n in 0..=2 {
            let a = jones_two_bridge(&word(entries), n).unwrap().value;
            let b = jones_two_bridge(&word(&rev), n).unwrap().value;
            assert_eq!(a, b, "word {entries:?} at color {n}");
        }
    }
}

#[test]
fn value_at_one_counts_components() {
    // the normalized invariant at q = 1 is dim^(components - 1) with
    // dim = (n+1)(n+2)/2
    for n in 0..=8i64 {
        let dim = BigInt::from((n + 1) * (n + 2) / 2);
        for m in 1..=3 {
            // single twist region: the (2,2m) torus link, two components
            let psi = psi_closed_form(n, m).unwrap();
            assert_eq!(psi.value.eval_at_one(), dim, "torus ({n},{m})");
        }
    }
    for n in 0..=4 {
        // (1,1) closes to a knot
        let j = jones_two_bridge(&word(&[1, 1]), n).unwrap();
        assert_eq!(j.value.eval_at_one(), BigInt::from(1), "trefoil at {n}");
    }
}

#[test]
fn minimum_degree_formula_holds() {
    for n in 0..=8 {
        for m in 1..=3 {
            let psi = psi_closed_form(n, m).unwrap();
            assert_eq!(
                psi.value.min_exp().unwrap(),
                min_degree(n, m),
                "min degree at ({n},{m})"
            );
        }
    }
}

#[test]
fn color_zero_is_constant_one() {
    for entries in [&[1][..], &[2, 3][..], &[1, 1, 1][..]] {
        let j = jones_two_bridge(&word(entries), 0).unwrap();
        assert!(j.value.is_one(), "word {entries:?}");
    }
}
