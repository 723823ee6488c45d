//! Closed-form evaluations of colored closed graphs and the coefficient
//! families of the structural expansions.
//!
//! Public items:
//! - [`delta`]: the colored loop value Delta(i,j) = [i+1][j+1][i+j+2]/[2].
//! - [`theta`], [`theta_alternating`]: the doubled-theta value
//!   theta(n,n,(i,i)), by the binomial closed form and by the alternating
//!   sum (the two are asserted equal in debug builds).
//! - [`tet`]: the tetrahedral value Tet[n n (j,j); n n (i,i)] (rational in
//!   general: the tetrahedron contains clasps).
//! - [`sixj`], [`SixJTable`], [`ThetaKey`]: the recoupling coefficient
//!   {n n (j,j); n n (i,i)} = Tet*Delta(j,j)/theta(n,n,(j,j))^2 and its
//!   per-color table.
//! - [`twist_eigenvalue`]: the full-twist eigenvalue monomial
//!   q^{-2(n^2+3n)/3 + i^2+2i}.
//! - [`clasp_expansion_coeff`], [`bubble_coeff`], [`full_twist_coeffs`]:
//!   coefficients of the two-cable clasp expansion, the bubble expansion,
//!   and the m-full-twists expansion over terminal basis webs.

use crate::qexact::{quantum_binom, quantum_int, q_multinom, QError, RationalQ, SixthPowerLaurent};

/// Colored loop value Delta(i,j) = [i+1][j+1][i+j+2]/[2]; the division is
/// always exact.
pub fn delta(i: i64, j: i64) -> SixthPowerLaurent {
    assert!(i >= 0 && j >= 0, "delta({i},{j}) undefined for negative colors");
    let num = &(&quantum_int(i + 1) * &quantum_int(j + 1)) * &quantum_int(i + j + 2);
    num.exact_div(&quantum_int(2))
        .expect("[2] divides [i+1][j+1][i+j+2]")
}

/// Key (n, i) for theta(n,n,(i,i)) lookups; requires 0 <= i <= n.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ThetaKey {
    pub n: i64,
    pub i: i64,
}

impl ThetaKey {
    pub fn new(n: i64, i: i64) -> Self {
        assert!(0 <= i && i <= n, "theta key needs 0 <= i <= n, got ({n},{i})");
        Self { n, i }
    }
}

/// theta(n,n,(i,i)) by the closed binomial form
/// ([n+i+2 brack 2i+2]/[n brack i]^2) * Delta(i,i).
/// Rational in general: the junctions carry clasps, so closed evaluations
/// need not be Laurent polynomials (first at (3,1), where q=1 gives 40/3).
/// In debug builds the independent alternating-sum form is asserted equal.
pub fn theta(n: i64, i: i64) -> RationalQ {
    let key = ThetaKey::new(n, i);
    let num = &quantum_binom(key.n + key.i + 2, 2 * key.i + 2) * &delta(key.i, key.i);
    let value = RationalQ::new(num, quantum_binom(key.n, key.i).pow(2))
        .expect("theta denominator is nonzero");
    debug_assert_eq!(
        value,
        theta_alternating(n, i),
        "theta closed form and alternating sum disagree at ({n},{i})"
    );
    value
}

/// theta(n,n,(i,i)) by the alternating sum
/// sum_{k=0}^i (-1)^k ([i brack k]^2/[2i+1 brack k]) Delta(n,0)^2/Delta(n-i+k,0).
pub fn theta_alternating(n: i64, i: i64) -> RationalQ {
    let key = ThetaKey::new(n, i);
    let (n, i) = (key.n, key.i);
    let delta_n0_sq = delta(n, 0).pow(2);
    let mut acc = RationalQ::zero();
    for k in 0..=i {
        let num = &quantum_binom(i, k).pow(2) * &delta_n0_sq;
        let den = &quantum_binom(2 * i + 1, k) * &delta(n - i + k, 0);
        let mut term = RationalQ::new(num, den).expect("nonzero denominator");
        if k % 2 == 1 {
            term = -&term;
        }
        acc = &acc + &term;
    }
    acc
}

/// The alternating rational sum S with Tet = S * theta(n,n,(j,j)):
/// S = sum_{k=0}^i (-1)^k [i brack k]^2 [n-j brack i-k][n+j+2 brack i-k]
///     / ([2i+1 brack k][n brack i-k]^2).
fn tet_ratio_sum(n: i64, i: i64, j: i64) -> RationalQ {
    let mut acc = RationalQ::zero();
    for k in 0..=i {
        let num = &quantum_binom(i, k).pow(2)
            * &(&quantum_binom(n - j, i - k) * &quantum_binom(n + j + 2, i - k));
        if num.is_zero() {
            continue;
        }
        let den = &quantum_binom(2 * i + 1, k) * &quantum_binom(n, i - k).pow(2);
        let mut term = RationalQ::new(num, den).expect("nonzero denominator");
        if k % 2 == 1 {
            term = -&term;
        }
        acc = &acc + &term;
    }
    acc
}

/// Tetrahedral evaluation Tet[n n (j,j); n n (i,i)]. Rational in general
/// (e.g. Tet at (1,1,1) is -theta(1,1,(1,1))/[3]).
pub fn tet(n: i64, i: i64, j: i64) -> RationalQ {
    ThetaKey::new(n, i);
    ThetaKey::new(n, j);
    &tet_ratio_sum(n, i, j) * &theta(n, j)
}

/// Recoupling coefficient {n n (j,j); n n (i,i)} = Tet*Delta(j,j)/theta^2.
/// Computed by the cancelled form S * [n brack j]^2 / [n+j+2 brack 2j+2]
/// (substituting the closed form of theta); the defining ratio is kept as a
/// test-side cross-check.
pub fn sixj(n: i64, i: i64, j: i64) -> RationalQ {
    ThetaKey::new(n, i);
    ThetaKey::new(n, j);
    let s = tet_ratio_sum(n, i, j);
    let shape = RationalQ::new(
        quantum_binom(n, j).pow(2),
        quantum_binom(n + j + 2, 2 * j + 2),
    )
    .expect("nonzero denominator");
    &s * &shape
}

/// The (n+1) x (n+1) recoupling matrix for one color, with the theta values
/// the 2-bridge evaluation needs alongside it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SixJTable {
    n: i64,
    entries: Vec<Vec<RationalQ>>,
    thetas: Vec<RationalQ>,
}

impl SixJTable {
    /// Compute the full table for color n.
    pub fn build(n: i64) -> Self {
        assert!(n >= 0, "color must be nonnegative");
        let entries = (0..=n)
            .map(|i| (0..=n).map(|j| sixj(n, i, j)).collect())
            .collect();
        let thetas = (0..=n).map(|i| theta(n, i)).collect();
        Self { n, entries, thetas }
    }

    /// Rebuild bookkeeping around externally supplied entries (cache load).
    /// Shape is validated here; value validation is the caller's concern.
    pub fn from_entries(n: i64, entries: Vec<Vec<RationalQ>>) -> Result<Self, QError> {
        let len = (n + 1) as usize;
        if entries.len() != len || entries.iter().any(|row| row.len() != len) {
            return Err(QError::Domain(format!(
                "recoupling table for color {n} must be {len}x{len}"
            )));
        }
        let thetas = (0..=n).map(|i| theta(n, i)).collect();
        Ok(Self { n, entries, thetas })
    }

    pub fn color(&self) -> i64 {
        self.n
    }

    pub fn entry(&self, i: i64, j: i64) -> &RationalQ {
        &self.entries[i as usize][j as usize]
    }

    pub fn rows(&self) -> &[Vec<RationalQ>] {
        &self.entries
    }

    pub fn theta(&self, key: ThetaKey) -> &RationalQ {
        assert_eq!(key.n, self.n, "theta key color mismatch");
        &self.thetas[key.i as usize]
    }
}

/// Full-twist eigenvalue q^{-2(n^2+3n)/3 + i^2+2i} on the i-labeled basis web.
pub fn twist_eigenvalue(n: i64, i: i64) -> SixthPowerLaurent {
    ThetaKey::new(n, i);
    SixthPowerLaurent::monomial(-4 * (n * n + 3 * n) + 6 * (i * i + 2 * i), 1.into())
}

/// Coefficient (-1)^k [n brack k][m brack k]/[n+m+1 brack k] of the k-th term
/// of the two-cable clasp expansion.
pub fn clasp_expansion_coeff(n: i64, m: i64, k: i64) -> RationalQ {
    assert!(
        0 <= k && k <= n.min(m),
        "clasp expansion coefficient needs 0 <= k <= min(n,m), got ({n},{m},{k})"
    );
    let num = &quantum_binom(n, k) * &quantum_binom(m, k);
    let den = quantum_binom(n + m + 1, k);
    let mut c = RationalQ::new(num, den).expect("nonzero denominator");
    if k % 2 == 1 {
        c = -&c;
    }
    c
}

/// Coefficient of the t-indexed term of the bubble expansion.
pub fn bubble_coeff(n: i64, m: i64, k: i64, l: i64, t: i64) -> RationalQ {
    assert!(
        k <= n.min(m) && l <= n.min(m) && k >= 0 && l >= 0,
        "bubble legs need 0 <= k,l <= min(n,m), got ({n},{m},{k},{l})"
    );
    assert!(
        k.max(l) <= t && t <= (k + l).min(n).min(m),
        "bubble index t={t} outside [max(k,l), min(k+l,n,m)] for ({n},{m},{k},{l})"
    );
    let num = &(&(&quantum_binom(n, t) * &quantum_binom(m, t))
        * &(&quantum_binom(t, k) * &quantum_binom(t, l)))
        * &quantum_binom(n + m - t + 2, n + m - k - l + 2);
    let den = &(&quantum_binom(n, k) * &quantum_binom(m, k))
        * &(&quantum_binom(n, l) * &quantum_binom(m, l));
    RationalQ::new(num, den).expect("nonzero denominator")
}

/// Expansion of m full twists on two n-cables over the terminal basis webs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FullTwistCoeffs {
    /// The global monomial q^{-2m(n^2+3n)/3}, kept apart from the aggregates.
    pub global: SixthPowerLaurent,
    /// per_basis[k] is the total coefficient of the k-labeled basis web,
    /// aggregated over all chains with k_m = k; a polynomial in q.
    pub per_basis: Vec<SixthPowerLaurent>,
}

/// Aggregate the m-full-twists expansion per terminal index k_m:
/// each chain n >= k_1 >= ... >= k_m >= 0 contributes
/// q^{n-k_m} q^{sum_i (k_i^2+2k_i)} ((q)_n/(q)_{k_m})
/// (n choose n-k_1, k_1-k_2, ..., k_{m-1}-k_m, k_m)_q.
pub fn full_twist_coeffs(n: i64, m: i64) -> FullTwistCoeffs {
    assert!(n >= 0, "cable color must be nonnegative");
    assert!(m >= 1, "twist count must be positive");
    let mut per_basis = vec![SixthPowerLaurent::zero(); (n + 1) as usize];
    let mut chain = Vec::with_capacity(m as usize);
    enumerate_chains(n, m, n, &mut chain, &mut per_basis);
    FullTwistCoeffs {
        global: SixthPowerLaurent::monomial(-4 * m * (n * n + 3 * n), 1.into()),
        per_basis,
    }
}

fn enumerate_chains(
    n: i64,
    m: i64,
    upper: i64,
    chain: &mut Vec<i64>,
    per_basis: &mut [SixthPowerLaurent],
) {
    if chain.len() == m as usize {
        let km = *chain.last().unwrap();
        // (q)_n/(q)_{k_m} = prod_{l=k_m+1}^{n} (1-q^l)
        let mut term = SixthPowerLaurent::one();
        for l in (km + 1)..=n {
            term = &term * &SixthPowerLaurent::one_minus_q_pow(l);
        }
        let mut parts = Vec::with_capacity(chain.len() + 1);
        let mut prev = n;
        for &k in chain.iter() {
            parts.push(prev - k);
            prev = k;
        }
        parts.push(km);
        term = &term * &q_multinom(n, &parts);
        let exp: i64 = n - km + chain.iter().map(|&k| k * k + 2 * k).sum::<i64>();
        per_basis[km as usize] = &per_basis[km as usize] + &term.shifted(6 * exp);
        return;
    }
    for k in (0..=upper).rev() {
        chain.push(k);
        enumerate_chains(n, m, k, chain, per_basis);
        chain.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn mono(e: i64, c: i64) -> SixthPowerLaurent {
        SixthPowerLaurent::monomial(e, BigInt::from(c))
    }

    #[test]
    fn delta_values() {
        assert!(delta(0, 0).is_one());
        assert_eq!(delta(1, 0), quantum_int(3));
        // Delta(1,1) = [2][4] = q^2 + 2q + 2 + 2q^-1 + q^-2
        let expected = [(12, 1), (6, 2), (0, 2), (-6, 2), (-12, 1)]
            .iter()
            .fold(SixthPowerLaurent::zero(), |acc, &(e, c)| &acc + &mono(e, c));
        assert_eq!(delta(1, 1), expected);
    }

    #[test]
    fn theta_boundary_and_small_values() {
        for n in 0..=4 {
            assert_eq!(theta(n, 0), RationalQ::from_laurent(delta(n, 0)));
        }
        assert_eq!(theta(1, 1), RationalQ::from_laurent(delta(1, 1)));
        // theta(2,2,(1,1)) = ([5 brack 4]/[2 brack 1]^2) Delta(1,1) = [5][4]/[2]
        let expected = (&quantum_int(5) * &quantum_int(4))
            .exact_div(&quantum_int(2))
            .unwrap();
        assert_eq!(theta(2, 1), RationalQ::from_laurent(expected));
        // First genuinely rational value: at (3,1) the closed form keeps a
        // denominator ([3 brack 1]^2 does not divide the numerator); at q = 1
        // it is 15 * 8 / 9 = 40/3.
        let t = theta(3, 1);
        assert!(t.as_laurent().is_none());
        assert_eq!(
            (t.numerator().eval_at_one(), t.denominator().eval_at_one()),
            (BigInt::from(40), BigInt::from(3))
        );
    }

    #[test]
    fn tet_values() {
        // i=0 collapses to theta
        for n in 0..=3 {
            for j in 0..=n {
                assert_eq!(tet(n, 0, j), theta(n, j));
            }
        }
        assert_eq!(tet(1, 1, 0), RationalQ::from_laurent(delta(1, 1)));
        // Tet(1,1,1) = -theta(1,1,(1,1))/[3] = -Delta(1,1)/[3]
        let expected = RationalQ::new(-&delta(1, 1), quantum_int(3)).unwrap();
        assert_eq!(tet(1, 1, 1), expected);
    }

    #[test]
    fn sixj_values() {
        assert_eq!(sixj(1, 0, 1), RationalQ::one());
        let minus_third = RationalQ::new(SixthPowerLaurent::from_int(-1), quantum_int(3)).unwrap();
        assert_eq!(sixj(1, 1, 1), minus_third);
        // (n,0,j) -> Delta(j,j)/theta(n,n,(j,j))
        for n in 1..=3 {
            for j in 0..=n {
                let expected = &RationalQ::from_laurent(delta(j, j)) / &theta(n, j);
                assert_eq!(sixj(n, 0, j), expected);
            }
        }
    }

    #[test]
    fn twist_eigenvalue_values() {
        assert_eq!(twist_eigenvalue(1, 0), mono(-16, 1));
        assert_eq!(twist_eigenvalue(1, 1), mono(2, 1));
        // at i = n the exponent is -4(n^2+3n) + 6(n^2+2n) = 2n^2
        for n in 0..=5 {
            assert_eq!(twist_eigenvalue(n, n), mono(2 * n * n, 1));
        }
    }

    #[test]
    fn clasp_expansion_coeff_values() {
        assert_eq!(clasp_expansion_coeff(3, 2, 0), RationalQ::one());
        let minus_third = RationalQ::new(SixthPowerLaurent::from_int(-1), quantum_int(3)).unwrap();
        assert_eq!(clasp_expansion_coeff(1, 1, 1), minus_third);
        let expected = RationalQ::new(-&quantum_int(2), quantum_int(4)).unwrap();
        assert_eq!(clasp_expansion_coeff(2, 1, 1), expected);
    }

    #[test]
    fn bubble_coeff_values() {
        assert_eq!(bubble_coeff(2, 3, 0, 0, 0), RationalQ::one());
        assert_eq!(bubble_coeff(1, 1, 1, 1, 1), RationalQ::from_laurent(quantum_int(3)));
        assert_eq!(bubble_coeff(1, 1, 1, 0, 1), RationalQ::one());
    }

    #[test]
    fn full_twist_coeffs_small() {
        let c = full_twist_coeffs(1, 1);
        assert_eq!(c.global, mono(-16, 1));
        // k_1 = 0: q(1-q); k_1 = 1: q^3
        assert_eq!(c.per_basis[0], &mono(6, 1) - &mono(12, 1));
        assert_eq!(c.per_basis[1], mono(18, 1));

        let c0 = full_twist_coeffs(0, 3);
        assert_eq!(c0.per_basis, vec![SixthPowerLaurent::one()]);
    }
}
