//! The sl3 invariant J_{(n,0)} of 2-bridge links, via the recoupling sum
//! over internal colors, together with two specialized formulas for the
//! (2,2m) torus links and the minimum-degree formula.
//!
//! [`jones_two_bridge`], [`psi_closed_form`] and [`g_full_twist_form`] are
//! three independent assembly routes that must agree on torus links; the
//! integration tests treat that agreement as the module's central invariant.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::qexact::{QError, RationalQ, SixthPowerLaurent};
use crate::websym::{delta, theta, SixJTable};

/// Twist word (a_1, ..., a_l) describing the 2-bridge link
/// [2a_1, 2a_2, ..., 2a_l] with blackboard framing. Entries are nonzero;
/// negative entries are left-handed twist regions.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TwoBridgeWord {
    entries: Vec<i64>,
}

impl TwoBridgeWord {
    pub fn new(entries: Vec<i64>) -> Result<Self, QError> {
        if entries.is_empty() {
            return Err(QError::Domain(
                "twist word must have at least one entry".into(),
            ));
        }
        if entries.iter().any(|&a| a == 0) {
            return Err(QError::Domain("twist word entries must be nonzero".into()));
        }
        Ok(Self { entries })
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }
}

/// An exact invariant value together with the data it was computed from.
/// The value is always a genuine Laurent polynomial in q^{1/6}; rational
/// intermediates are checked to collapse during assembly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FramedInvariant {
    pub value: SixthPowerLaurent,
    pub color: i64,
    pub word: TwoBridgeWord,
}

/// J_{(n,0)} of the 2-bridge link described by `word`, evaluated by summing
/// over internal colors left to right with memoized partial sums; cost is
/// O(l (n+1)^2) recoupling-table multiplications instead of (n+1)^l terms.
pub fn jones_two_bridge(word: &TwoBridgeWord, n: i64) -> Result<FramedInvariant, QError> {
    assert!(n >= 0, "color must be nonnegative");
    if word.entries().len() == 1 {
        // Single twist region: no recoupling transition happens and the
        // theta ratio cancels termwise, so skip building the table.
        recoupling_sum(word, n, None)
    } else {
        let table = SixJTable::build(n);
        recoupling_sum(word, n, Some(&table))
    }
}

/// Same as [`jones_two_bridge`] with a caller-supplied recoupling table
/// (reused across words, or loaded from the on-disk cache).
pub fn jones_two_bridge_with_table(
    word: &TwoBridgeWord,
    table: &SixJTable,
) -> Result<FramedInvariant, QError> {
    recoupling_sum(word, table.color(), Some(table))
}

/// q^{a (j^2 + 2j)} as a rational factor.
fn twist_step(a: i64, j: i64) -> RationalQ {
    RationalQ::from_laurent(SixthPowerLaurent::monomial(
        6 * a * (j * j + 2 * j),
        BigInt::from(1),
    ))
}

fn recoupling_sum(
    word: &TwoBridgeWord,
    n: i64,
    table: Option<&SixJTable>,
) -> Result<FramedInvariant, QError> {
    let a = word.entries();
    let thetas: Vec<RationalQ> = (0..=n).map(|i| theta(n, i)).collect();
    let inv_delta_n0 = RationalQ::from_laurent(delta(n, 0))
        .inverse()
        .expect("Delta(n,0) is nonzero");

    // state[j] after step k: partial sum over (i_1..i_k) ending at i_k = j,
    // carrying the Delta(i_1,i_1)/(Delta(n,0) theta(i_1)) weight and the
    // twist exponents up to a_k.
    let mut state: Vec<RationalQ> = (0..=n)
        .map(|j| {
            let weight = &(&RationalQ::from_laurent(delta(j, j)) * &inv_delta_n0)
                / &thetas[j as usize];
            &weight * &twist_step(a[0], j)
        })
        .collect();

    for &ak in &a[1..] {
        let table = table.expect("multi-entry words carry a recoupling table");
        let mut next = Vec::with_capacity(state.len());
        for j in 0..=n {
            let mut acc = RationalQ::zero();
            for i in 0..=n {
                let u = &state[i as usize];
                if u.is_zero() {
                    continue;
                }
                acc = &acc + &(u * table.entry(i, j));
            }
            next.push(&acc * &twist_step(ak, j));
        }
        state = next;
    }

    let mut total = RationalQ::zero();
    for j in 0..=n {
        total = &total + &(&state[j as usize] * &thetas[j as usize]);
    }
    let twist_sum: i64 = a.iter().sum();
    let global = SixthPowerLaurent::monomial(-4 * (n * n + 3 * n) * twist_sum, BigInt::from(1));
    let value = total
        .scaled_laurent(&global)
        .expect_laurent("two-bridge recoupling sum")?;
    Ok(FramedInvariant {
        value,
        color: n,
        word: word.clone(),
    })
}

/// J_{(n,0)}(T(2,2m)) by the closed torus-link formula
/// q^{-2m(n^2+3n)/3} sum_i Delta(i,i) q^{m(i^2+2i)} / Delta(n,0).
/// The division is exact; failure would falsify the formula's integrality.
pub fn psi_closed_form(n: i64, m: i64) -> Result<FramedInvariant, QError> {
    assert!(n >= 0, "color must be nonnegative");
    assert!(m >= 1, "twist count must be positive");
    let mut num = SixthPowerLaurent::zero();
    for i in 0..=n {
        num = &num + &delta(i, i).shifted(6 * m * (i * i + 2 * i));
    }
    let value = num
        .exact_div(&delta(n, 0))?
        .shifted(-4 * m * (n * n + 3 * n));
    Ok(FramedInvariant {
        value,
        color: n,
        word: TwoBridgeWord::new(vec![m])?,
    })
}

/// J_{(n,0)}(T(2,2m)) by the full-twist chain expansion: the sum over
/// chains n >= k_1 >= ... >= k_m >= 0 of
/// q^{sum_j (k_j^2+2k_j) - 2k_m} (q)_n^2 (1-q^{n+1})(1-q^{n+2}) /
/// ((q)_{k_m}^2 (q)_{n-k_1} (q)_{k_1-k_2} ... (q)_{k_{m-1}-k_m}
///  (1-q^{n-k_m+1})(1-q^{n-k_m+2}))
/// times the global monomial q^{-2m(n^2+3n)/3 + n}. Every term is assembled
/// by exact division of the dense numerator (q)_n (q)_{n+2}; a remainder
/// anywhere is reported as an error rather than silently truncated.
pub fn g_full_twist_form(n: i64, m: i64) -> Result<FramedInvariant, QError> {
    assert!(n >= 0, "color must be nonnegative");
    assert!(m >= 1, "twist count must be positive");
    let acc = g_chain_sum(n, m)?;
    let global = -4 * m * (n * n + 3 * n) + 6 * n;
    let value = SixthPowerLaurent::from_terms(
        acc.into_iter()
            .enumerate()
            .map(|(i, c)| (6 * i as i64 + global, c)),
    );
    Ok(FramedInvariant {
        value,
        color: n,
        word: TwoBridgeWord::new(vec![m])?,
    })
}

/// The minimum q-degree of J_{(n,0)}(T(2,2m)), -2m(n^2+3n)/3 + n, returned
/// as an integer count of sixths.
pub fn min_degree(n: i64, m: i64) -> i64 {
    assert!(n >= 0, "color must be nonnegative");
    assert!(m >= 1, "twist count must be positive");
    -4 * m * (n * n + 3 * n) + 6 * n
}

/// Dense polynomials in integer powers of q (index = exponent) for the chain
/// expansion: multiplication and exact division by (1 - q^l) are linear scans.
fn dense_mul_one_minus(p: &mut Vec<BigInt>, l: usize) {
    let old = p.len();
    p.resize(old + l, BigInt::zero());
    for i in (l..old + l).rev() {
        let (lo, hi) = p.split_at_mut(i);
        hi[0] -= &lo[i - l];
    }
}

fn dense_div_one_minus(p: &mut Vec<BigInt>, l: usize, context: &str) -> Result<(), QError> {
    let len = p.len();
    let keep = len.saturating_sub(l);
    // quotient recurrence Q_i = P_i + Q_{i-l}, in place ascending
    for i in l..len {
        let (lo, hi) = p.split_at_mut(i);
        hi[0] += &lo[i - l];
    }
    if p[keep..].iter().any(|c| !c.is_zero()) {
        return Err(QError::NonDivisible {
            context: format!("{context} by 1-q^{l}"),
        });
    }
    p.truncate(keep);
    Ok(())
}

fn g_chain_sum(n: i64, m: i64) -> Result<Vec<BigInt>, QError> {
    // numerator (q)_n^2 (1-q^{n+1})(1-q^{n+2}) = (q)_n (q)_{n+2}
    let mut p = vec![BigInt::from(1)];
    for l in 1..=n {
        dense_mul_one_minus(&mut p, l as usize);
    }
    for l in 1..=(n + 2) {
        dense_mul_one_minus(&mut p, l as usize);
    }
    let max_shift = (m * (n * n + 2 * n)) as usize;
    let mut acc = vec![BigInt::zero(); p.len() + max_shift];
    let mut chain = Vec::with_capacity(m as usize);
    descend_chain(n, m, n, &p, &mut chain, &mut acc)?;
    Ok(acc)
}

/// Depth-first walk over chains k_1 >= ... >= k_m. The running dense state is
/// the numerator divided by the (q)-factors of the chain prefix; stepping the
/// current index down by one costs a single extra division by (1-q^diff).
fn descend_chain(
    n: i64,
    m: i64,
    prev: i64,
    state: &[BigInt],
    chain: &mut Vec<i64>,
    acc: &mut [BigInt],
) -> Result<(), QError> {
    let mut work = state.to_vec();
    for k in (0..=prev).rev() {
        chain.push(k);
        if chain.len() == m as usize {
            g_leaf_term(n, &work, chain, acc)?;
        } else {
            descend_chain(n, m, k, &work, chain, acc)?;
        }
        chain.pop();
        if k > 0 {
            dense_div_one_minus(&mut work, (prev - k + 1) as usize, "chain factor")?;
        }
    }
    Ok(())
}

fn g_leaf_term(n: i64, state: &[BigInt], chain: &[i64], acc: &mut [BigInt]) -> Result<(), QError> {
    let km = *chain.last().expect("chains are nonempty");
    let mut term = state.to_vec();
    for l in 1..=km {
        dense_div_one_minus(&mut term, l as usize, "terminal factor")?;
        dense_div_one_minus(&mut term, l as usize, "terminal factor")?;
    }
    dense_div_one_minus(&mut term, (n - km + 1) as usize, "boundary factor")?;
    dense_div_one_minus(&mut term, (n - km + 2) as usize, "boundary factor")?;
    // q^{sum (k_j^2+2k_j) - 2 k_m}; the exponent is >= k_m^2, never negative
    let shift = (chain.iter().map(|&k| k * k + 2 * k).sum::<i64>() - 2 * km) as usize;
    for (i, c) in term.iter().enumerate() {
        acc[i + shift] += c;
    }
    Ok(())
}
