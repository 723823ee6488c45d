//! Stabilized tails of the torus-link invariants: the normalized finite
//! series, their two limit families, the identity verifier relating them,
//! the stabilization check, and the coefficient-pattern analyzer.
//!
//! The two limits are computed along entirely separate routes: the psi
//! route sums a single-index series with telescoping factors, the g route
//! enumerates twist chains against a pentagonal-number expansion of
//! (q)_infinity. Their coefficientwise agreement is the identity under test.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::jones::{g_full_twist_form, min_degree, psi_closed_form, FramedInvariant};
use crate::qexact::{QError, TruncatedSeries};

/// Which route produced a tail series.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TailMethod {
    /// The limit series summed directly.
    PsiLimit,
    /// The limit series via the chain expansion against (q)_infinity.
    GLimit,
    /// normalize(psi_closed_form(n, m)) for the recorded n.
    PsiFinite(i64),
    /// normalize(g_full_twist_form(n, m)) for the recorded n.
    GFinite(i64),
}

/// A tail series exact modulo q^{order+1}, tagged with its provenance.
/// The constant coefficient is 1 for every m >= 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TailSeries {
    pub m: i64,
    pub order: usize,
    pub series: TruncatedSeries,
    pub method: TailMethod,
}

/// Maximal-run decomposition of a tail's coefficients and the verdict of
/// the run-length conjecture (nonzero runs of length 4n separated by zero
/// runs of length (2n+1)(m-2), signs in blocks +, --, +++, ...).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatternReport {
    pub m: i64,
    pub order: usize,
    /// Alternating (nonzero-run length, following zero-run length) pairs,
    /// concatenating to the full coefficient window.
    pub runs: Vec<(usize, usize)>,
    /// True iff the coefficients match the conjectured sequence on every
    /// degree up to `order`; the window is allowed to cut a run short.
    /// Always false for m = 1, where the conjectured zero-run lengths
    /// would be negative.
    pub verdict: bool,
}

/// Outcome of comparing the two limit routes coefficient by coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityReport {
    pub m: i64,
    pub order: usize,
    pub verdict: bool,
    pub mismatch: Option<IdentityMismatch>,
}

/// The lowest disagreeing degree and both coefficients there.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityMismatch {
    pub degree: usize,
    pub psi_coeff: BigInt,
    pub g_coeff: BigInt,
}

/// Strip the global monomial off a torus-link invariant: multiply by
/// q^{2m(n^2+3n)/3 - n} and convert to a series. Errors if any exponent is
/// negative or fractional afterwards, which would falsify the minimum-degree
/// formula the shift is based on.
pub fn normalize(j: &FramedInvariant, n: i64, m: i64) -> Result<TruncatedSeries, QError> {
    assert_eq!(j.color, n, "invariant color disagrees with n");
    let shifted = j.value.shifted(-min_degree(n, m));
    let top = shifted.max_exp().unwrap_or(0).max(0);
    shifted.to_series((top / 6) as usize)
}

/// normalize(psi_closed_form(n, m)) packaged with its provenance tag.
pub fn finite_psi(n: i64, m: i64) -> Result<TailSeries, QError> {
    let j = psi_closed_form(n, m)?;
    let series = normalize(&j, n, m)?;
    Ok(TailSeries {
        m,
        order: series.order(),
        series,
        method: TailMethod::PsiFinite(n),
    })
}

/// normalize(g_full_twist_form(n, m)) packaged with its provenance tag.
pub fn finite_g(n: i64, m: i64) -> Result<TailSeries, QError> {
    let j = g_full_twist_form(n, m)?;
    let series = normalize(&j, n, m)?;
    Ok(TailSeries {
        m,
        order: series.order(),
        series,
        method: TailMethod::GFinite(n),
    })
}

/// The limit tail summed directly:
/// sum_{i>=0} q^{m(i^2+2i)-2i} (1-q^{i+1})^3 (1+q^{i+1}) / (1-q),
/// with the i-th summand expanded as
/// (1 + q + ... + q^i)(1-q^{i+1})(1-q^{2i+2}).
/// The sum is cut at the first i whose minimal exponent m(i^2+2i)-2i
/// exceeds `order`; that bound is increasing in i.
pub fn tail_psi(m: i64, order: usize) -> TailSeries {
    assert!(m >= 1, "twist count must be positive");
    let mut acc = TruncatedSeries::zero(order);
    let mut i: i64 = 0;
    loop {
        let low = m * (i * i + 2 * i) - 2 * i;
        if low > order as i64 {
            break;
        }
        let mut coeffs = vec![BigInt::zero(); order + 1];
        for e in 0..=i.min(order as i64) {
            coeffs[e as usize] = BigInt::one();
        }
        let mut term = TruncatedSeries::from_coeffs(order, coeffs);
        term.mul_one_minus_assign((i + 1) as usize);
        term.mul_one_minus_assign((2 * i + 2) as usize);
        term.shift_up_assign(low as usize);
        acc.add_assign(&term);
        i += 1;
    }
    debug_assert!(acc.coeff(0).is_one(), "tail constant term must be 1");
    TailSeries {
        m,
        order,
        series: acc,
        method: TailMethod::PsiLimit,
    }
}

/// The limit tail via the chain expansion:
/// (q)_infinity * sum over chains k_1 >= ... >= k_m >= 0 of
/// q^{sum_j (k_j^2+2k_j) - 2k_m} / ((q)_{k_m}^2 (q)_{k_1-k_2} ... (q)_{k_{m-1}-k_m}).
/// k_1 is unbounded; a chain prefix is abandoned once its exponent lower
/// bound sum_{t<=j}(k_t^2+2k_t) - 2k_j exceeds `order` (every completion
/// only adds nonnegative exponent beyond that bound).
pub fn tail_g(m: i64, order: usize) -> TailSeries {
    assert!(m >= 1, "twist count must be positive");
    let mut max_k: i64 = 0;
    while (max_k + 1) * (max_k + 1) <= order as i64 {
        max_k += 1;
    }
    // inv_poch[d] = 1/(q)_d, extended one step per geometric multiplication
    let mut inv_poch: Vec<TruncatedSeries> = Vec::with_capacity(max_k as usize + 1);
    inv_poch.push(TruncatedSeries::one(order));
    for d in 1..=max_k {
        let mut next = inv_poch[(d - 1) as usize].clone();
        next.mul_geometric_assign(d as usize);
        inv_poch.push(next);
    }
    let inv_poch_sq: Vec<TruncatedSeries> = inv_poch.iter().map(|s| s.mul(s)).collect();

    let mut acc = TruncatedSeries::zero(order);
    let one = TruncatedSeries::one(order);
    for k1 in 0..=max_k {
        if m == 1 {
            let mut term = inv_poch_sq[k1 as usize].clone();
            term.shift_up_assign((k1 * k1) as usize);
            acc.add_assign(&term);
        } else {
            g_descend(
                m,
                order,
                2,
                k1,
                k1 * k1 + 2 * k1,
                &one,
                &inv_poch,
                &inv_poch_sq,
                &mut acc,
            );
        }
    }
    let series = acc.mul(&TruncatedSeries::euler_inf(order));
    debug_assert!(series.coeff(0).is_one(), "tail constant term must be 1");
    TailSeries {
        m,
        order,
        series,
        method: TailMethod::GLimit,
    }
}

/// Choose k_level below k_prev. `parent` carries the inverse Pochhammer
/// factors of the chain prefix; stepping k up by one multiplies the working
/// series by (1 - q^{k_prev-k+1}), turning 1/(q)_{k_prev-k+1} into
/// 1/(q)_{k_prev-k} without a fresh series multiplication.
#[allow(clippy::too_many_arguments)]
fn g_descend(
    m: i64,
    order: usize,
    level: i64,
    k_prev: i64,
    prefix_exp: i64,
    parent: &TruncatedSeries,
    inv_poch: &[TruncatedSeries],
    inv_poch_sq: &[TruncatedSeries],
    acc: &mut TruncatedSeries,
) {
    if prefix_exp > order as i64 {
        return;
    }
    let mut work = parent.mul(&inv_poch[k_prev as usize]);
    for k in 0..=k_prev {
        if k > 0 {
            work.mul_one_minus_assign((k_prev - k + 1) as usize);
        }
        if prefix_exp + k * k > order as i64 {
            break;
        }
        if level == m {
            let mut term = work.mul(&inv_poch_sq[k as usize]);
            term.shift_up_assign((prefix_exp + k * k) as usize);
            acc.add_assign(&term);
        } else {
            g_descend(
                m,
                order,
                level + 1,
                k,
                prefix_exp + k * k + 2 * k,
                &work,
                inv_poch,
                inv_poch_sq,
                acc,
            );
        }
    }
}

/// Compare the two limit routes coefficient by coefficient up to `order`.
pub fn verify_identity(m: i64, order: usize) -> IdentityReport {
    let psi = tail_psi(m, order);
    let g = tail_g(m, order);
    let mut mismatch = None;
    for k in 0..=order {
        if psi.series.coeff(k) != g.series.coeff(k) {
            mismatch = Some(IdentityMismatch {
                degree: k,
                psi_coeff: psi.series.coeff(k).clone(),
                g_coeff: g.series.coeff(k).clone(),
            });
            break;
        }
    }
    IdentityReport {
        m,
        order,
        verdict: mismatch.is_none(),
        mismatch,
    }
}

fn coeff_or_zero(s: &TruncatedSeries, k: usize) -> BigInt {
    if k <= s.order() {
        s.coeff(k).clone()
    } else {
        BigInt::zero()
    }
}

/// For every n < n_max, check that the normalized finite series of color n
/// and n+1 agree modulo q^{n+1} and that both families agree with their
/// limits to the same order. Covers the psi and g routes.
pub fn stabilization_check(m: i64, n_max: i64) -> Result<bool, QError> {
    assert!(m >= 1, "twist count must be positive");
    assert!(n_max >= 1, "n_max must be at least 1");
    let mut prev_psi = normalize(&psi_closed_form(0, m)?, 0, m)?;
    let mut prev_g = normalize(&g_full_twist_form(0, m)?, 0, m)?;
    for n in 0..n_max {
        let next_psi = normalize(&psi_closed_form(n + 1, m)?, n + 1, m)?;
        let next_g = normalize(&g_full_twist_form(n + 1, m)?, n + 1, m)?;
        let limit_psi = tail_psi(m, n as usize);
        let limit_g = tail_g(m, n as usize);
        for k in 0..=(n as usize) {
            let p = coeff_or_zero(&prev_psi, k);
            let g = coeff_or_zero(&prev_g, k);
            if p != coeff_or_zero(&next_psi, k)
                || p != *limit_psi.series.coeff(k)
                || g != coeff_or_zero(&next_g, k)
                || g != *limit_g.series.coeff(k)
            {
                return Ok(false);
            }
        }
        prev_psi = next_psi;
        prev_g = next_g;
    }
    Ok(true)
}

/// Conjectured coefficient sequence for m >= 2: the sign sequence in blocks
/// +, --, +++, ---- (block k has length k, blocks continue across gaps),
/// emitted in nonzero runs of length 4n with (2n+1)(m-2) zeros after run n.
fn conjectured_prefix(m: i64, order: usize) -> Vec<BigInt> {
    assert!(m >= 2);
    let gap = (m - 2) as u64;
    let mut out: Vec<BigInt> = Vec::with_capacity(order + 1);
    let mut block = 1u64;
    let mut used = 0u64;
    let mut run = 1u64;
    let mut in_run = 0u64;
    while out.len() <= order {
        out.push(if block % 2 == 1 {
            BigInt::one()
        } else {
            -BigInt::one()
        });
        used += 1;
        if used == block {
            block += 1;
            used = 0;
        }
        in_run += 1;
        if in_run == 4 * run {
            for _ in 0..(2 * run + 1) * gap {
                if out.len() > order {
                    break;
                }
                out.push(BigInt::zero());
            }
            run += 1;
            in_run = 0;
        }
    }
    out.truncate(order + 1);
    out
}

/// Decompose tail_psi(m, order) into maximal nonzero/zero runs and compare
/// against the conjectured run-and-sign sequence.
pub fn pattern_analysis(m: i64, order: usize) -> PatternReport {
    assert!(m >= 1, "twist count must be positive");
    let tail = tail_psi(m, order);
    let coeffs = tail.series.coeffs();
    let mut runs = Vec::new();
    let mut idx = 0usize;
    while idx <= order {
        let start = idx;
        while idx <= order && !coeffs[idx].is_zero() {
            idx += 1;
        }
        let nonzero_len = idx - start;
        let zero_start = idx;
        while idx <= order && coeffs[idx].is_zero() {
            idx += 1;
        }
        runs.push((nonzero_len, idx - zero_start));
    }
    let verdict = if m < 2 {
        false
    } else {
        let conjectured = conjectured_prefix(m, order);
        conjectured.as_slice() == coeffs
    };
    PatternReport {
        m,
        order,
        runs,
        verdict,
    }
}

/// The two-parameter false theta series
/// sum_{i>=0} q^{s i(i+1)/2 + t i(i-1)/2} - sum_{i>=0} q^{s i(i-1)/2 + t i(i+1)/2},
/// truncated at `order`. Antisymmetric in (s, t); the i=0 terms cancel.
pub fn false_theta(s: i64, t: i64, order: usize) -> TruncatedSeries {
    assert!(s >= 1 && t >= 1, "false theta parameters must be positive");
    let mut acc = TruncatedSeries::zero(order);
    let mut i: i64 = 0;
    loop {
        let up = i * (i + 1) / 2;
        let down = i * (i - 1) / 2;
        let e_plus = s * up + t * down;
        let e_minus = s * down + t * up;
        if e_plus > order as i64 && e_minus > order as i64 {
            break;
        }
        if e_plus <= order as i64 {
            acc.add_assign(&TruncatedSeries::monomial(
                order,
                e_plus as usize,
                BigInt::one(),
            ));
        }
        if e_minus <= order as i64 {
            acc.sub_assign(&TruncatedSeries::monomial(
                order,
                e_minus as usize,
                BigInt::one(),
            ));
        }
        i += 1;
    }
    acc
}
