//! Sparse Laurent polynomials in u = q^{1/6} with arbitrary-precision
//! integer coefficients.
//!
//! Exponents are stored as integers counting sixths of a power of q, so every
//! scalar that appears in the theory (q^{1/2} in quantum integers, q^{1/3} in
//! crossing coefficients, q^{1/6} in web relations) has an integer exponent.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::QError;

/// A Laurent polynomial in u = q^{1/6}, kept canonical: no zero coefficients
/// are stored, and equality is term-map equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct SixthPowerLaurent {
    /// exponent in sixths of a power of q -> nonzero coefficient
    terms: BTreeMap<i64, BigInt>,
}

impl SixthPowerLaurent {
    /// The zero polynomial (empty term map).
    pub fn zero() -> Self {
        Self { terms: BTreeMap::new() }
    }

    /// The constant polynomial 1.
    pub fn one() -> Self {
        Self::monomial(0, BigInt::one())
    }

    /// c * u^exp_sixths. A zero coefficient yields the zero polynomial.
    pub fn monomial(exp_sixths: i64, coeff: BigInt) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exp_sixths, coeff);
        }
        Self { terms }
    }

    /// The constant polynomial n.
    pub fn from_int(n: i64) -> Self {
        Self::monomial(0, BigInt::from(n))
    }

    /// 1 - q^l (exponent given in whole powers of q).
    pub fn one_minus_q_pow(l: i64) -> Self {
        &Self::one() - &Self::monomial(6 * l, BigInt::one())
    }

    /// Build from (exponent in sixths, coefficient) pairs; repeated exponents
    /// accumulate and zero totals are dropped.
    pub fn from_terms<I: IntoIterator<Item = (i64, BigInt)>>(pairs: I) -> Self {
        let mut terms: BTreeMap<i64, BigInt> = BTreeMap::new();
        for (e, c) in pairs {
            if c.is_zero() {
                continue;
            }
            *terms.entry(e).or_default() += c;
        }
        terms.retain(|_, c| !c.is_zero());
        Self { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).map_or(false, |c| c.is_one())
    }

    /// Lowest stored exponent (in sixths); None for the zero polynomial.
    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    /// Highest stored exponent (in sixths); None for the zero polynomial.
    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Coefficient of u^exp_sixths (zero if absent).
    pub fn coeff(&self, exp_sixths: i64) -> BigInt {
        self.terms.get(&exp_sixths).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Term iterator in ascending exponent order.
    pub fn iter_terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Some((exponent, coefficient)) when the polynomial has exactly one term.
    pub fn as_monomial(&self) -> Option<(i64, &BigInt)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(&e, c)| (e, c))
        } else {
            None
        }
    }

    /// Multiply by u^exp_sixths.
    pub fn shifted(&self, exp_sixths: i64) -> Self {
        Self {
            terms: self.terms.iter().map(|(&e, c)| (e + exp_sixths, c.clone())).collect(),
        }
    }

    /// Multiply every coefficient by s.
    pub fn scaled(&self, s: &BigInt) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(&e, c)| (e, c * s)).collect(),
        }
    }

    /// Substitute q -> q^{-1} (negate all exponents).
    pub fn mirrored(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(&e, c)| (-e, c.clone())).collect(),
        }
    }

    /// Evaluate at q = 1, i.e. the coefficient sum.
    pub fn eval_at_one(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Nonnegative integer power.
    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    fn insert_add(terms: &mut BTreeMap<i64, BigInt>, e: i64, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Exact quotient self / div. Fails with a distinguished error when the
    /// division leaves a remainder; never truncates.
    pub fn exact_div(&self, div: &Self) -> Result<Self, QError> {
        if div.is_zero() {
            return Err(QError::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let (dlo, dlo_c) = div.terms.iter().next().map(|(&e, c)| (e, c.clone())).unwrap();
        let dhi = div.max_exp().unwrap();
        let rhi = self.max_exp().unwrap();
        // The quotient's top exponent cannot exceed rhi - dhi.
        let q_top = rhi - dhi;
        let mut rem = self.terms.clone();
        let mut quo: BTreeMap<i64, BigInt> = BTreeMap::new();
        while let Some((&rlo, rlo_c)) = rem.iter().next() {
            let qe = rlo - dlo;
            if qe > q_top {
                return Err(QError::NonDivisible {
                    context: format!("remainder with lowest exponent {rlo}/6 cannot be cancelled"),
                });
            }
            let (qc, r) = rlo_c.div_rem(&dlo_c);
            if !r.is_zero() {
                return Err(QError::NonDivisible {
                    context: format!(
                        "coefficient {rlo_c} at exponent {rlo}/6 not divisible by {dlo_c}"
                    ),
                });
            }
            for (&e, c) in &div.terms {
                let sub = c * &qc;
                Self::insert_add(&mut rem, e + qe, &(-sub));
            }
            quo.insert(qe, qc);
        }
        Ok(Self { terms: quo })
    }
}

impl std::ops::Add for &SixthPowerLaurent {
    type Output = SixthPowerLaurent;
    fn add(self, rhs: &SixthPowerLaurent) -> SixthPowerLaurent {
        let mut terms = self.terms.clone();
        for (&e, c) in &rhs.terms {
            SixthPowerLaurent::insert_add(&mut terms, e, c);
        }
        SixthPowerLaurent { terms }
    }
}

impl std::ops::Sub for &SixthPowerLaurent {
    type Output = SixthPowerLaurent;
    fn sub(self, rhs: &SixthPowerLaurent) -> SixthPowerLaurent {
        let mut terms = self.terms.clone();
        for (&e, c) in &rhs.terms {
            SixthPowerLaurent::insert_add(&mut terms, e, &(-c));
        }
        SixthPowerLaurent { terms }
    }
}

impl std::ops::Neg for &SixthPowerLaurent {
    type Output = SixthPowerLaurent;
    fn neg(self) -> SixthPowerLaurent {
        SixthPowerLaurent {
            terms: self.terms.iter().map(|(&e, c)| (e, -c)).collect(),
        }
    }
}

impl std::ops::Mul for &SixthPowerLaurent {
    type Output = SixthPowerLaurent;
    fn mul(self, rhs: &SixthPowerLaurent) -> SixthPowerLaurent {
        let mut terms = BTreeMap::new();
        for (&e1, c1) in &self.terms {
            for (&e2, c2) in &rhs.terms {
                SixthPowerLaurent::insert_add(&mut terms, e1 + e2, &(c1 * c2));
            }
        }
        SixthPowerLaurent { terms }
    }
}

/// Render the q-power factor for an exponent given in sixths; empty for
/// exponent 0. Integer powers print as q^k, fractional as q^(p/d) reduced.
pub(crate) fn q_power_string(exp_sixths: i64) -> String {
    if exp_sixths == 0 {
        return String::new();
    }
    if exp_sixths % 6 == 0 {
        let p = exp_sixths / 6;
        if p == 1 {
            "q".to_string()
        } else {
            format!("q^{p}")
        }
    } else {
        let g = exp_sixths.abs().gcd(&6);
        format!("q^({}/{})", exp_sixths / g, 6 / g)
    }
}

impl fmt::Display for SixthPowerLaurent {
    /// Ascending-exponent sum, e.g. "q^-2 + 2q^-1 + 2 + 2q + q^2"; fractional
    /// exponents as reduced "q^(a/b)".
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&e, c) in &self.terms {
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
            let qp = q_power_string(e);
            if qp.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{qp}")?;
            } else {
                write!(f, "{mag}{qp}")?;
            }
        }
        Ok(())
    }
}
