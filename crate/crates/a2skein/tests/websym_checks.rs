//! Checks for the closed-graph evaluations: classical specializations at
//! q = 1, agreement of independently derived forms, tetrahedral symmetry,
//! and orthogonality of the recoupling matrices.

use a2skein::qexact::{RationalQ, SixthPowerLaurent};
use a2skein::websym::{
    clasp_expansion_coeff, delta, sixj, tet, theta, theta_alternating, twist_eigenvalue, SixJTable,
};
use num_bigint::BigInt;

fn classical_binom(a: i64, b: i64) -> BigInt {
    if b < 0 || b > a {
        return BigInt::from(0);
    }
    let mut acc = BigInt::from(1);
    for k in 0..b {
        acc = acc * BigInt::from(a - k) / BigInt::from(k + 1);
    }
    acc
}

#[test]
fn delta_is_symmetric_palindromic_and_counts_dimensions() {
    for i in 0..=6 {
        for j in 0..=6 {
            let d = delta(i, j);
            assert_eq!(d, delta(j, i), "symmetry at ({i},{j})");
            assert_eq!(d.mirrored(), d, "palindromicity at ({i},{j})");
            // dim of the (i,j) irreducible: (i+1)(j+1)(i+j+2)/2
            let dim = BigInt::from((i + 1) * (j + 1) * (i + j + 2) / 2);
            assert_eq!(d.eval_at_one(), dim, "dimension at ({i},{j})");
        }
    }
}

#[test]
fn theta_forms_agree_and_are_positive_at_one() {
    for n in 0..=8 {
        for i in 0..=n {
            let closed = theta(n, i);
            assert_eq!(closed, theta_alternating(n, i), "forms at ({n},{i})");
            // positive rational at q=1 (integral only for small parameters)
            let num = closed.numerator().eval_at_one();
            let den = closed.denominator().eval_at_one();
            assert!(num > BigInt::from(0) && den > BigInt::from(0), "sign at ({n},{i})");
        }
    }
}

#[test]
fn tet_collapses_at_zero_and_is_symmetric() {
    for n in 0..=5 {
        for j in 0..=n {
            assert_eq!(tet(n, 0, j), theta(n, j), "boundary at ({n},{j})");
        }
        for i in 0..=n {
            for j in 0..=n {
                assert_eq!(tet(n, i, j), tet(n, j, i), "symmetry at ({n},{i},{j})");
            }
        }
    }
}

#[test]
fn sixj_matches_its_defining_ratio() {
    // entry = Tet * Delta(j,j) / theta(n,j)^2, computed here from the parts
    // rather than the reduced binomial form the library uses.
    for n in 0..=5 {
        for i in 0..=n {
            for j in 0..=n {
                let th = theta(n, j);
                let expected = &(&tet(n, i, j) * &RationalQ::from_laurent(delta(j, j)))
                    / &(&th * &th);
                assert_eq!(sixj(n, i, j), expected, "ratio at ({n},{i},{j})");
            }
        }
    }
}

#[test]
fn recoupling_matrix_squares_to_identity() {
    for n in 0..=6 {
        let table = SixJTable::build(n);
        for i in 0..=n {
            for j in 0..=n {
                let mut acc = RationalQ::zero();
                for k in 0..=n {
                    acc = &acc + &(table.entry(i, k) * table.entry(k, j));
                }
                let expected = if i == j { RationalQ::one() } else { RationalQ::zero() };
                assert_eq!(acc, expected, "(M^2)[{i}][{j}] at color {n}");
            }
        }
    }
}

#[test]
fn twist_eigenvalues_are_the_expected_monomials() {
    for n in 0..=6 {
        for i in 0..=n {
            let t = twist_eigenvalue(n, i);
            let (e, c) = t.as_monomial().expect("twist eigenvalue is a monomial");
            assert_eq!(c, &BigInt::from(1));
            assert_eq!(e, -4 * (n * n + 3 * n) + 6 * (i * i + 2 * i));
        }
    }
    // column of small frozen values
    assert_eq!(twist_eigenvalue(1, 0), SixthPowerLaurent::monomial(-16, 1.into()));
    assert_eq!(twist_eigenvalue(1, 1), SixthPowerLaurent::monomial(2, 1.into()));
    assert_eq!(twist_eigenvalue(2, 0), SixthPowerLaurent::monomial(-40, 1.into()));
}

#[test]
fn clasp_coefficients_specialize_to_classical_ratios() {
    // at q=1: (-1)^k C(n,k) C(m,k) / C(n+m+1,k)
    for n in 0..=6 {
        for m in 0..=6 {
            for k in 0..=n.min(m) {
                let c = clasp_expansion_coeff(n, m, k);
                let num = c.numerator().eval_at_one();
                let den = c.denominator().eval_at_one();
                let sign = if k % 2 == 0 { 1 } else { -1 };
                let expect_num = BigInt::from(sign) * classical_binom(n, k) * classical_binom(m, k);
                let expect_den = classical_binom(n + m + 1, k);
                // compare as fractions: num/den == expect_num/expect_den
                assert_eq!(num * expect_den, expect_num * den, "at ({n},{m},{k})");
            }
        }
    }
}
