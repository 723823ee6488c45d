//! Rational functions in u = q^{1/6}, normalized eagerly at construction.
//!
//! Canonical form: the denominator is nonzero, has lowest exponent 0 and a
//! positive lowest coefficient, and shares no nonunit factor (including
//! integer content) with the numerator. Equality is then structural.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::laurent::SixthPowerLaurent;
use super::QError;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalQ {
    num: SixthPowerLaurent,
    den: SixthPowerLaurent,
}

impl RationalQ {
    pub fn zero() -> Self {
        Self { num: SixthPowerLaurent::zero(), den: SixthPowerLaurent::one() }
    }

    pub fn one() -> Self {
        Self { num: SixthPowerLaurent::one(), den: SixthPowerLaurent::one() }
    }

    pub fn from_laurent(p: SixthPowerLaurent) -> Self {
        Self { num: p, den: SixthPowerLaurent::one() }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_laurent(SixthPowerLaurent::from_int(n))
    }

    /// num/den in canonical form. Errors when den is zero.
    pub fn new(num: SixthPowerLaurent, den: SixthPowerLaurent) -> Result<Self, QError> {
        if den.is_zero() {
            return Err(QError::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let na = num.min_exp().unwrap();
        let nb = den.min_exp().unwrap();
        let ns = num.shifted(-na);
        let ds = den.shifted(-nb);
        let g = int_poly_gcd(&ns, &ds);
        let mut num = ns
            .exact_div(&g)
            .expect("gcd divides numerator")
            .shifted(na - nb);
        let mut den = ds.exact_div(&g).expect("gcd divides denominator");
        if den.coeff(den.min_exp().unwrap()).is_negative() {
            num = -&num;
            den = -&den;
        }
        Ok(Self { num, den })
    }

    pub fn numerator(&self) -> &SixthPowerLaurent {
        &self.num
    }

    pub fn denominator(&self) -> &SixthPowerLaurent {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Some(p) when the value is the Laurent polynomial p (denominator 1).
    pub fn as_laurent(&self) -> Option<&SixthPowerLaurent> {
        if self.den.is_one() {
            Some(&self.num)
        } else {
            None
        }
    }

    /// Laurent value or a non-divisibility error naming the caller's context.
    pub fn expect_laurent(&self, context: &str) -> Result<SixthPowerLaurent, QError> {
        self.as_laurent().cloned().ok_or_else(|| QError::NonDivisible {
            context: format!("{context}: denominator {} remains", self.den),
        })
    }

    pub fn inverse(&self) -> Result<Self, QError> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn scaled_laurent(&self, p: &SixthPowerLaurent) -> Self {
        Self::new(&self.num * p, self.den.clone()).expect("nonzero denominator")
    }
}

impl std::ops::Add for &RationalQ {
    type Output = RationalQ;
    fn add(self, rhs: &RationalQ) -> RationalQ {
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        let den = &self.den * &rhs.den;
        RationalQ::new(num, den).expect("nonzero denominator")
    }
}

impl std::ops::Sub for &RationalQ {
    type Output = RationalQ;
    fn sub(self, rhs: &RationalQ) -> RationalQ {
        self + &(-rhs)
    }
}

impl std::ops::Neg for &RationalQ {
    type Output = RationalQ;
    fn neg(self) -> RationalQ {
        RationalQ { num: -&self.num, den: self.den.clone() }
    }
}

impl std::ops::Mul for &RationalQ {
    type Output = RationalQ;
    fn mul(self, rhs: &RationalQ) -> RationalQ {
        // Cross-cancel before multiplying to keep gcd inputs small.
        let a = RationalQ::new(self.num.clone(), rhs.den.clone()).expect("nonzero denominator");
        let b = RationalQ::new(rhs.num.clone(), self.den.clone()).expect("nonzero denominator");
        RationalQ::new(&a.num * &b.num, &a.den * &b.den).expect("nonzero denominator")
    }
}

impl std::ops::Div for &RationalQ {
    type Output = RationalQ;
    fn div(self, rhs: &RationalQ) -> RationalQ {
        assert!(!rhs.is_zero(), "division by zero rational");
        self * &rhs.inverse().expect("nonzero")
    }
}

impl std::fmt::Display for RationalQ {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

/// Dense polynomial in u over BigInt, index = exponent. Used only inside gcd.
type Dense = Vec<BigInt>;

fn to_dense(p: &SixthPowerLaurent) -> Dense {
    debug_assert_eq!(p.min_exp(), Some(0));
    let deg = p.max_exp().unwrap() as usize;
    let mut d = vec![BigInt::zero(); deg + 1];
    for (e, c) in p.iter_terms() {
        d[e as usize] = c.clone();
    }
    d
}

fn from_dense(d: &[BigInt]) -> SixthPowerLaurent {
    let mut p = SixthPowerLaurent::zero();
    for (e, c) in d.iter().enumerate() {
        if !c.is_zero() {
            p = &p + &SixthPowerLaurent::monomial(e as i64, c.clone());
        }
    }
    p
}

fn trim(d: &mut Dense) {
    while d.last().map_or(false, |c| c.is_zero()) {
        d.pop();
    }
}

/// Integer content (gcd of coefficients); zero polynomial yields zero.
fn content(d: &[BigInt]) -> BigInt {
    let mut g = BigInt::zero();
    for c in d {
        if !c.is_zero() {
            g = g.gcd(c);
        }
    }
    g
}

/// Strip the integer content and any u^k monomial factor; normalize the
/// lowest coefficient positive. Empty input stays empty.
fn primitive(mut d: Dense) -> Dense {
    trim(&mut d);
    if d.is_empty() {
        return d;
    }
    let low = d.iter().position(|c| !c.is_zero()).unwrap();
    if low > 0 {
        d.drain(..low);
    }
    let mut cont = content(&d);
    if d[0].is_negative() {
        cont = -cont;
    }
    for c in d.iter_mut() {
        *c = &*c / &cont;
    }
    d
}

/// Pseudo-remainder of a by b (deg a >= deg b >= 0, b nonempty).
fn pseudo_rem(mut a: Dense, b: &Dense) -> Dense {
    let db = b.len() - 1;
    let lb = b[db].clone();
    while {
        trim(&mut a);
        a.len() > db
    } {
        let da = a.len() - 1;
        let la = a[da].clone();
        // a := lb*a - la*u^{da-db}*b cancels the top term.
        for c in a.iter_mut() {
            *c = &*c * &lb;
        }
        for (i, bc) in b.iter().enumerate() {
            let idx = da - db + i;
            a[idx] = &a[idx] - &(&la * bc);
        }
    }
    a
}

/// Gcd over Z[u] (primitive-PRS Euclid), including integer content. Inputs
/// must be nonzero with lowest exponent 0; the result has a positive lowest
/// coefficient.
fn int_poly_gcd(p: &SixthPowerLaurent, q: &SixthPowerLaurent) -> SixthPowerLaurent {
    let pc = content(&to_dense(p));
    let qc = content(&to_dense(q));
    let cont = pc.gcd(&qc);
    let mut a = primitive(to_dense(p));
    let mut b = primitive(to_dense(q));
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        let r = primitive(pseudo_rem(a, &b));
        a = b;
        b = r;
    }
    let mut g = from_dense(&a);
    if !cont.is_one() {
        g = g.scaled(&cont);
    }
    g
}
