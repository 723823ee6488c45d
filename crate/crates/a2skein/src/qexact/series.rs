//! Truncated formal power series in q: exact elements of Z[[q]]/q^{N+1}Z[[q]].

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::laurent::SixthPowerLaurent;
use super::QError;

/// Dense truncated series; coeffs[k] is the coefficient of q^k, 0 <= k <= order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    order: usize,
    coeffs: Vec<BigInt>,
}

impl TruncatedSeries {
    pub fn zero(order: usize) -> Self {
        Self { order, coeffs: vec![BigInt::zero(); order + 1] }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = BigInt::one();
        s
    }

    /// c * q^k truncated at the given order.
    pub fn monomial(order: usize, k: usize, c: BigInt) -> Self {
        let mut s = Self::zero(order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    pub fn from_coeffs(order: usize, coeffs: Vec<BigInt>) -> Self {
        assert_eq!(coeffs.len(), order + 1, "coefficient list must have length order+1");
        Self { order, coeffs }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeff(&self, k: usize) -> &BigInt {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Copy truncated to a lower (or equal) order.
    pub fn truncated(&self, order: usize) -> Self {
        assert!(order <= self.order, "cannot extend a truncated series");
        Self { order, coeffs: self.coeffs[..=order].to_vec() }
    }

    pub fn add_assign(&mut self, rhs: &Self) {
        assert_eq!(self.order, rhs.order, "order mismatch");
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
    }

    pub fn sub_assign(&mut self, rhs: &Self) {
        assert_eq!(self.order, rhs.order, "order mismatch");
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a -= b;
        }
    }

    pub fn scale_assign(&mut self, s: &BigInt) {
        for c in self.coeffs.iter_mut() {
            *c = &*c * s;
        }
    }

    /// Multiply in place by q^k (coefficients shift up; overflow truncated).
    pub fn shift_up_assign(&mut self, k: usize) {
        if k == 0 {
            return;
        }
        for i in (0..=self.order).rev() {
            self.coeffs[i] = if i >= k {
                std::mem::take(&mut self.coeffs[i - k])
            } else {
                BigInt::zero()
            };
        }
    }

    /// Multiply in place by (1 - q^l), l >= 1.
    pub fn mul_one_minus_assign(&mut self, l: usize) {
        assert!(l >= 1);
        for i in (l..=self.order).rev() {
            let lower = self.coeffs[i - l].clone();
            self.coeffs[i] -= lower;
        }
    }

    /// Multiply in place by 1/(1 - q^l) = 1 + q^l + q^{2l} + ..., l >= 1.
    pub fn mul_geometric_assign(&mut self, l: usize) {
        assert!(l >= 1);
        for i in l..=self.order {
            let lower = self.coeffs[i - l].clone();
            self.coeffs[i] += lower;
        }
    }

    /// Truncated product.
    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.order, rhs.order, "order mismatch");
        let mut out = Self::zero(self.order);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().take(self.order + 1 - i).enumerate() {
                if !b.is_zero() {
                    out.coeffs[i + j] += a * b;
                }
            }
        }
        out
    }

    /// (q)_inf = prod_{l>=1} (1-q^l) truncated, via the pentagonal number
    /// theorem: sum_{j in Z} (-1)^j q^{j(3j-1)/2}.
    pub fn euler_inf(order: usize) -> Self {
        let mut s = Self::zero(order);
        let mut j: i64 = 0;
        loop {
            let e1 = j * (3 * j - 1) / 2;
            let e2 = j * (3 * j + 1) / 2;
            if e1 as usize > order && e2 as usize > order && j > 0 {
                break;
            }
            let sign = if j % 2 == 0 { BigInt::one() } else { -BigInt::one() };
            if (e1 as usize) <= order {
                s.coeffs[e1 as usize] += &sign;
            }
            if j > 0 && (e2 as usize) <= order {
                s.coeffs[e2 as usize] += &sign;
            }
            j += 1;
        }
        s
    }

    /// Lift to a Laurent polynomial (integer powers of q).
    pub fn to_laurent(&self) -> SixthPowerLaurent {
        let mut p = SixthPowerLaurent::zero();
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                p = &p + &SixthPowerLaurent::monomial(6 * k as i64, c.clone());
            }
        }
        p
    }
}

impl SixthPowerLaurent {
    /// Truncate to a power series in q. Errors when any exponent is negative
    /// or not a multiple of 6 (not an integer power of q).
    pub fn to_series(&self, order: usize) -> Result<TruncatedSeries, QError> {
        let mut s = TruncatedSeries::zero(order);
        for (e, c) in self.iter_terms() {
            if e < 0 || e % 6 != 0 {
                return Err(QError::NotASeriesExponent(e));
            }
            let k = (e / 6) as usize;
            if k <= order {
                s.coeffs[k] = c.clone();
            }
        }
        Ok(s)
    }
}

impl std::fmt::Display for TruncatedSeries {
    /// Same term style as Laurent polynomials, ascending, zeros omitted;
    /// the zero series prints "0".
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let qp = super::laurent::q_power_string(6 * k as i64);
            if qp.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{qp}")?;
            } else {
                write!(f, "{mag}{qp}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}
