//! Quantum integers, factorials and binomials, and the classical
//! q-Pochhammer / q-binomial / q-multinomial polynomials.
//!
//! Conventions:
//!  - [n] = (q^{n/2} - q^{-n/2})/(q^{1/2} - q^{-1/2}) = sum_{j=0}^{n-1} q^{(n-1)/2 - j}
//!  - [a brack b] = [a]!/([b]![a-b]!), defined as 0 when b < 0 or b > a
//!  - (q)_k = prod_{l=1}^{k} (1 - q^l)
//!  - (n choose k)_q = (q)_n/((q)_k (q)_{n-k}), 0 when k < 0 or k > n

use num_bigint::BigInt;
use num_traits::One;

use super::laurent::SixthPowerLaurent;

/// Quantum integer [n], a symmetric Laurent polynomial in q^{1/2}.
pub fn quantum_int(n: i64) -> SixthPowerLaurent {
    assert!(n >= 0, "quantum integer [{n}] undefined for negative n");
    let mut p = SixthPowerLaurent::zero();
    for j in 0..n {
        // exponent (n-1)/2 - j in sixths: 3(n-1) - 6j
        p = &p + &SixthPowerLaurent::monomial(3 * (n - 1) - 6 * j, BigInt::one());
    }
    p
}

/// Quantum factorial [n]! = [1][2]...[n].
pub fn quantum_factorial(n: i64) -> SixthPowerLaurent {
    assert!(n >= 0, "quantum factorial undefined for negative n");
    let mut p = SixthPowerLaurent::one();
    for j in 1..=n {
        p = &p * &quantum_int(j);
    }
    p
}

/// Quantum binomial [a brack b]; 0 outside 0 <= b <= a (sum-bound convention).
pub fn quantum_binom(a: i64, b: i64) -> SixthPowerLaurent {
    assert!(a >= 0, "quantum binomial with negative upper index {a}");
    if b < 0 || b > a {
        return SixthPowerLaurent::zero();
    }
    // [a]!/([b]![a-b]!) accumulated as prod_{j=1}^{b} [a-b+j]/[j]; division at
    // the end is exact.
    let mut num = SixthPowerLaurent::one();
    let mut den = SixthPowerLaurent::one();
    for j in 1..=b {
        num = &num * &quantum_int(a - b + j);
        den = &den * &quantum_int(j);
    }
    num.exact_div(&den)
        .expect("quantum binomial division is always exact")
}

/// (q)_k, a polynomial in integer powers of q of degree k(k+1)/2.
pub fn q_pochhammer(k: i64) -> SixthPowerLaurent {
    assert!(k >= 0, "q-Pochhammer undefined for negative k");
    let mut p = SixthPowerLaurent::one();
    for l in 1..=k {
        p = &p * &SixthPowerLaurent::one_minus_q_pow(l);
    }
    p
}

/// Gaussian binomial (n choose k)_q; 0 outside 0 <= k <= n.
pub fn q_binom(n: i64, k: i64) -> SixthPowerLaurent {
    assert!(n >= 0, "q-binomial with negative upper index {n}");
    if k < 0 || k > n {
        return SixthPowerLaurent::zero();
    }
    q_pochhammer(n)
        .exact_div(&(&q_pochhammer(k) * &q_pochhammer(n - k)))
        .expect("q-binomial division is always exact")
}

/// q-multinomial (n choose n_1,...,n_r)_q; the parts must sum to n.
pub fn q_multinom(n: i64, parts: &[i64]) -> SixthPowerLaurent {
    assert!(n >= 0, "q-multinomial with negative upper index {n}");
    assert!(
        parts.iter().all(|&p| p >= 0),
        "q-multinomial parts must be nonnegative"
    );
    assert_eq!(
        parts.iter().sum::<i64>(),
        n,
        "q-multinomial parts must sum to n"
    );
    let mut den = SixthPowerLaurent::one();
    for &p in parts {
        den = &den * &q_pochhammer(p);
    }
    q_pochhammer(n)
        .exact_div(&den)
        .expect("q-multinomial division is always exact")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mono(e: i64, c: i64) -> SixthPowerLaurent {
        SixthPowerLaurent::monomial(e, BigInt::from(c))
    }

    fn from_q_terms(terms: &[(i64, i64)]) -> SixthPowerLaurent {
        // exponents in units of q^{1/2} would be ambiguous; take sixths directly
        terms
            .iter()
            .fold(SixthPowerLaurent::zero(), |acc, &(e, c)| &acc + &mono(e, c))
    }

    #[test]
    fn quantum_int_values() {
        assert!(quantum_int(0).is_zero());
        assert!(quantum_int(1).is_one());
        // [2] = q^{1/2} + q^{-1/2}
        assert_eq!(quantum_int(2), from_q_terms(&[(3, 1), (-3, 1)]));
        // [3] = q + 1 + q^{-1}
        assert_eq!(quantum_int(3), from_q_terms(&[(6, 1), (0, 1), (-6, 1)]));
    }

    #[test]
    fn quantum_int_product() {
        // [2][3] = q^{3/2} + 2q^{1/2} + 2q^{-1/2} + q^{-3/2}
        let expected = from_q_terms(&[(9, 1), (3, 2), (-3, 2), (-9, 1)]);
        assert_eq!(&quantum_int(2) * &quantum_int(3), expected);
    }

    #[test]
    fn quantum_binom_values() {
        assert!(quantum_binom(3, 0).is_one());
        assert_eq!(quantum_binom(3, 1), quantum_int(3));
        // [4 brack 2] = [4][3]/[2] = q^2 + q + 2 + q^-1 + q^-2
        let expected = from_q_terms(&[(12, 1), (6, 1), (0, 2), (-6, 1), (-12, 1)]);
        assert_eq!(quantum_binom(4, 2), expected);
        assert!(quantum_binom(2, 3).is_zero());
        assert!(quantum_binom(2, -1).is_zero());
    }

    #[test]
    fn q_pochhammer_values() {
        assert!(q_pochhammer(0).is_one());
        assert_eq!(q_pochhammer(1), SixthPowerLaurent::one_minus_q_pow(1));
        // (q)_3 = 1 - q - q^2 + q^4 + q^5 - q^6
        let expected = from_q_terms(&[(0, 1), (6, -1), (12, -1), (24, 1), (30, 1), (36, -1)]);
        assert_eq!(q_pochhammer(3), expected);
    }

    #[test]
    fn q_binom_values() {
        assert!(q_binom(5, 0).is_one());
        // (4 choose 2)_q = 1 + q + 2q^2 + q^3 + q^4
        let expected = from_q_terms(&[(0, 1), (6, 1), (12, 2), (18, 1), (24, 1)]);
        assert_eq!(q_binom(4, 2), expected);
        assert!(q_binom(3, 4).is_zero());
    }

    #[test]
    fn q_multinom_values() {
        // (3; 1,1,1)_q = (1+q)(1+q+q^2) = 1 + 2q + 2q^2 + q^3
        let expected = from_q_terms(&[(0, 1), (6, 2), (12, 2), (18, 1)]);
        assert_eq!(q_multinom(3, &[1, 1, 1]), expected);
        assert_eq!(q_multinom(4, &[2, 2]), q_binom(4, 2));
    }

    #[test]
    #[should_panic(expected = "must sum to n")]
    fn q_multinom_rejects_bad_parts() {
        q_multinom(3, &[1, 1]);
    }
}
