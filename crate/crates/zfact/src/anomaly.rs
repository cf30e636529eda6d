//! Digit anomalies of Z_b(b^k) against the theta(b) digit stream:
//! alpha(b,k) = floor(theta(b) b^k) - Z_b(b^k), its base-b digit length
//! eta(b,k), the proven bounds on both, and the two sweep searches (tight
//! eta values and cross-base expansion coincidences).

use std::collections::HashMap;
use std::hash::{Hash, Hasher};

use num_traits::{CheckedSub, Zero};
use rayon::prelude::*;

use crate::arith::{self, floor_log_u64, Natural};
use crate::error::{Error, Result};
use crate::factor::{self, Factorization};
use crate::legendre;
use crate::theta::{self, expand_rational, rational, Rational, Representation};

/// Everything measured at one grid cell (b, k).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnomalyReport {
    pub b: u64,
    pub k: u64,
    /// Z_b(b^k).
    pub z_value: Natural,
    /// floor(theta(b) * b^k).
    pub theta_floor: Natural,
    /// theta_floor - z_value, always nonnegative.
    pub alpha: Natural,
    /// Base-b digit length of alpha; 0 when alpha = 0.
    pub eta: u64,
    /// floor(log_b k) + 2, the proven eta bound.
    pub eta_bound: u64,
    /// Length of the final digit block of z_value that disagrees with the
    /// theta digit stream (0 when all k digits agree).
    pub unequal_digits: u64,
    /// floor(log_b k) + 2 = digits(k) + 1, the conjectured unequal-digits
    /// bound.
    pub conjecture1_bound: u64,
    /// theta(b) b^k - Z_b(b^k) exactly, populated when b is square-free.
    pub squarefree_excess: Option<Rational>,
}

/// Per-base state shared by every k of a sweep: factorization, the
/// denominator of theta, and the theta digit stream.
pub(crate) struct BaseCtx {
    pub b: u64,
    pub f: Factorization,
    /// 1/theta(b) = max r(p-1).
    pub m: u64,
    stream_pre: Vec<u64>,
    stream_period: Vec<u64>,
}

impl BaseCtx {
    pub fn new(b: u64) -> Result<Self> {
        let f = factor::factorize(b)?;
        let m = theta::theta_weight(&f).0;
        let exp = expand_rational(
            &rational(Natural::from(1u32), Natural::from(m)),
            b,
            Representation::RepeatingTail,
        )?;
        Ok(BaseCtx {
            b,
            f,
            m,
            stream_pre: exp.preperiod().to_vec(),
            stream_period: exp.period().to_vec(),
        })
    }

    pub fn is_prime_power(&self) -> bool {
        factor::is_prime_power(&self.f).is_some()
    }

    pub fn is_squarefree(&self) -> bool {
        factor::is_squarefree(&self.f)
    }

    /// First k digits of the theta stream.
    pub fn stream_prefix(&self, k: u64) -> Vec<u64> {
        self.stream_pre
            .iter()
            .copied()
            .chain(self.stream_period.iter().copied().cycle())
            .take(k as usize)
            .collect()
    }
}

pub(crate) struct CellEta {
    pub z: Natural,
    pub theta_floor: Natural,
    pub alpha: Natural,
    pub eta: u64,
}

/// z, floor(theta b^k), alpha and eta for n = b^k, without the digit
/// comparison (the sweeps that only bound eta skip it).
pub(crate) fn cell_eta(ctx: &BaseCtx, n: &Natural) -> Result<CellEta> {
    let z = legendre::z_with_factorization(n, &ctx.f)?;
    let theta_floor = n / ctx.m;
    let alpha = theta_floor.checked_sub(&z).ok_or_else(|| {
        Error::Inconsistency(format!("Z exceeds floor(theta b^k) at b={}", ctx.b))
    })?;
    let eta = if alpha.is_zero() {
        0
    } else {
        arith::floor_log(ctx.b, &alpha)? + 1
    };
    Ok(CellEta {
        z,
        theta_floor,
        alpha,
        eta,
    })
}

/// Length of the mismatching final block: k minus the position of the
/// first disagreement scanning from the most significant digit.
pub(crate) fn unequal_tail_len(z_digits: &[u64], stream: &[u64]) -> u64 {
    let k = stream.len();
    if z_digits.len() > k {
        return k as u64;
    }
    let pad = k - z_digits.len();
    for i in 0..k {
        let zd = if i < pad { 0 } else { z_digits[i - pad] };
        if zd != stream[i] {
            return (k - i) as u64;
        }
    }
    0
}

/// Full anomaly report for the cell (b, k), all fields exact.
pub fn report(b: u64, k: u64) -> Result<AnomalyReport> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be >= 1".into()));
    }
    let ctx = BaseCtx::new(b)?;
    let n = arith::pow_u64(&Natural::from(b), k);
    report_in_ctx(&ctx, k, &n)
}

pub(crate) fn report_in_ctx(ctx: &BaseCtx, k: u64, n: &Natural) -> Result<AnomalyReport> {
    let cell = cell_eta(ctx, n)?;
    let stream = ctx.stream_prefix(k);
    let z_digits = arith::to_digits(&cell.z, ctx.b)?;
    let unequal_digits = unequal_tail_len(z_digits.digits(), &stream);
    let bound = floor_log_u64(ctx.b, k) + 2;
    let squarefree_excess = if ctx.is_squarefree() {
        let num = n - &cell.z * ctx.m;
        Some(rational(num, Natural::from(ctx.m)))
    } else {
        None
    };
    let report = AnomalyReport {
        b: ctx.b,
        k,
        z_value: cell.z,
        theta_floor: cell.theta_floor,
        alpha: cell.alpha,
        eta: cell.eta,
        eta_bound: bound,
        unequal_digits,
        conjecture1_bound: bound,
        squarefree_excess,
    };
    debug_assert!(report.unequal_digits <= report.eta + 1);
    Ok(report)
}

/// Theorem bound: eta(b,k) <= floor(log_b k) + 2.
pub fn check_eta_bound(r: &AnomalyReport) -> bool {
    r.eta <= r.eta_bound
}

/// Conjectured bound: the unequal final block has at most digits(k) + 1
/// digits. Violations are reported by the sweeps, never asserted.
pub fn check_conjecture1(r: &AnomalyReport) -> bool {
    r.unequal_digits <= r.conjecture1_bound
}

/// Outcome of the square-free checks at one cell.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquarefreeCheck {
    /// theta(b) b^k - Z_b(b^k) <= k(s-1), proven for square-free b.
    pub bound_holds: bool,
    /// eta(b,k) <= floor(log_b k) + 1, the open conjecture.
    pub conjecture2_holds: bool,
    /// The exact excess theta(b) b^k - Z_b(b^k).
    pub excess: Rational,
    /// Number of distinct primes of b.
    pub s: usize,
}

/// Evaluates the square-free excess bound and the square-free eta
/// conjecture at (b, k). Requires b square-free with at least two prime
/// factors.
pub fn check_squarefree_bound(b: u64, k: u64) -> Result<SquarefreeCheck> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be >= 1".into()));
    }
    let ctx = BaseCtx::new(b)?;
    let s = ctx.f.distinct_primes();
    if !ctx.is_squarefree() || s < 2 {
        return Err(Error::NotSquarefree(b));
    }
    let n = arith::pow_u64(&Natural::from(b), k);
    let cell = cell_eta(&ctx, &n)?;
    squarefree_check_in_ctx(&ctx, k, &n, &cell)
}

pub(crate) fn squarefree_check_in_ctx(
    ctx: &BaseCtx,
    k: u64,
    n: &Natural,
    cell: &CellEta,
) -> Result<SquarefreeCheck> {
    let s = ctx.f.distinct_primes();
    let excess_num = n - &cell.z * ctx.m;
    // excess <= k(s-1)  <=>  excess_num <= k(s-1) m
    let rhs = Natural::from(k) * (s as u64 - 1) * ctx.m;
    let bound_holds = excess_num <= rhs;
    let conjecture2_holds = cell.eta <= floor_log_u64(ctx.b, k) + 1;
    Ok(SquarefreeCheck {
        bound_holds,
        conjecture2_holds,
        excess: rational(excess_num, Natural::from(ctx.m)),
        s,
    })
}

/// All b below `b_limit` with eta(b, b-1) = 2, the cells where the eta
/// bound is tight.
pub fn find_tight_eta(b_limit: u64) -> Result<Vec<u64>> {
    if b_limit < 2 {
        return Ok(Vec::new());
    }
    (2..b_limit)
        .into_par_iter()
        .map(|b| {
            let ctx = BaseCtx::new(b)?;
            let k = b - 1;
            let n = arith::pow_u64(&Natural::from(b), k);
            let cell = cell_eta(&ctx, &n)?;
            Ok((b, cell.eta))
        })
        .collect::<Result<Vec<_>>>()
        .map(|cells| {
            cells
                .into_iter()
                .filter_map(|(b, eta)| (eta == 2).then_some(b))
                .collect()
        })
}

/// A pair of bases whose theta digit streams coincide as integer
/// sequences, together with the shared canonical expansion
/// (preperiod, least rotation of the period).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoincidencePair {
    pub b1: u64,
    pub b2: u64,
    pub preperiod: Vec<u64>,
    pub period: Vec<u64>,
}

/// Searches the prime-power bases 2..=b_limit for cross-base coincidences
/// of the theta digit stream, excluding the all-ones stream shared by
/// every prime (without that exclusion every pair of primes would match).
///
/// Prime powers are the bases whose stream digits equal the digits of
/// Z_b(b^k); outside them the identical stream [19,19,...] already turns
/// up for b = 96 and b = 343, so the composite universe makes the match
/// set explode.
///
/// Exact theta values enter in their repeating-tail form, matching the
/// stream convention. Bases are first bucketed by a hash of the canonical
/// form; only bucket collisions are re-expanded and compared exactly.
pub fn find_coincidence_pairs(b_limit: u64) -> Result<Vec<CoincidencePair>> {
    let keys: Vec<(u64, Option<(usize, usize, u64)>)> = (2..=b_limit.max(1))
        .into_par_iter()
        .map(|b| {
            if factor::is_prime_power(&factor::factorize(b)?).is_none() {
                return Ok((b, None));
            }
            let key = coincidence_key(b)?;
            Ok((b, key))
        })
        .collect::<Result<Vec<_>>>()?;

    let mut buckets: HashMap<(usize, usize, u64), Vec<u64>> = HashMap::new();
    for (b, key) in keys {
        if let Some(key) = key {
            buckets.entry(key).or_default().push(b);
        }
    }

    let mut pairs = Vec::new();
    for (_, members) in buckets {
        if members.len() < 2 {
            continue;
        }
        // Hash collision or real coincidence: compare exact canonical forms.
        let mut by_form: HashMap<(usize, Vec<u64>, Vec<u64>), Vec<u64>> = HashMap::new();
        for b in members {
            let exp = theta_stream_expansion(b)?;
            by_form.entry(exp.canonical_key()).or_default().push(b);
        }
        for ((_, pre, per), mut bases) in by_form {
            if bases.len() < 2 {
                continue;
            }
            bases.sort_unstable();
            for i in 0..bases.len() {
                for j in i + 1..bases.len() {
                    pairs.push(CoincidencePair {
                        b1: bases[i],
                        b2: bases[j],
                        preperiod: pre.clone(),
                        period: per.clone(),
                    });
                }
            }
        }
    }
    pairs.sort_unstable_by_key(|p| (p.b1, p.b2));
    Ok(pairs)
}

fn theta_stream_expansion(b: u64) -> Result<theta::BaseExpansion> {
    let m = theta::inverse_theta_u64(b)?;
    expand_rational(
        &rational(Natural::from(1u32), Natural::from(m)),
        b,
        Representation::RepeatingTail,
    )
}

/// Hash-sized canonical key of the theta stream of base b, or None for
/// the excluded all-ones stream.
fn coincidence_key(b: u64) -> Result<Option<(usize, usize, u64)>> {
    let exp = theta_stream_expansion(b)?;
    if exp.t() == 0 && exp.period() == [1] {
        return Ok(None);
    }
    let (t, pre, per) = exp.canonical_key();
    let mut hasher = std::collections::hash_map::DefaultHasher::new();
    pre.hash(&mut hasher);
    per.hash(&mut hasher);
    Ok(Some((t, per.len(), hasher.finish())))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nat(v: u64) -> Natural {
        Natural::from(v)
    }

    #[test]
    fn report_base_ten_k_nine() {
        let r = report(10, 9).unwrap();
        assert_eq!(r.z_value, nat(249_999_998));
        assert_eq!(r.theta_floor, nat(250_000_000));
        assert_eq!(r.alpha, nat(2));
        assert_eq!(r.eta, 1);
        assert_eq!(r.eta_bound, 2);
        assert_eq!(r.unequal_digits, 1);
        assert!(check_eta_bound(&r));
        assert!(check_conjecture1(&r));
    }

    #[test]
    fn report_odd_prime_has_no_anomaly() {
        for p in [3u64, 7, 13] {
            let r = report(p, 12).unwrap();
            assert_eq!(r.alpha, nat(0));
            assert_eq!(r.eta, 0);
            assert_eq!(r.unequal_digits, 0);
        }
    }

    #[test]
    fn report_fermat_base_alpha_one() {
        for k in [1u64, 2, 7, 20] {
            let r = report(4, k).unwrap();
            assert_eq!(r.alpha, nat(1), "k = {k}");
            assert_eq!(r.eta, 1);
        }
    }

    #[test]
    fn report_base_six_k_five() {
        let r = report(6, 5).unwrap();
        assert_eq!(r.z_value, nat(3886));
        assert_eq!(r.theta_floor, nat(3888));
        assert_eq!(r.alpha, nat(2));
        assert_eq!(r.unequal_digits, 1);
        let excess = r.squarefree_excess.unwrap();
        assert_eq!(excess, rational(nat(2), nat(1)));
    }

    #[test]
    fn report_base_thirteen_k_twenty() {
        let r = report(13, 20).unwrap();
        assert_eq!(r.alpha, nat(0));
    }

    #[test]
    fn unequal_counts_contiguous_tail() {
        // first mismatch from the most significant side pins the block
        assert_eq!(unequal_tail_len(&[2, 5, 5, 5, 4], &[2, 5, 5, 5, 5]), 1);
        assert_eq!(unequal_tail_len(&[2, 5, 4, 5, 5], &[2, 5, 5, 5, 5]), 3);
        assert_eq!(unequal_tail_len(&[2, 5, 5], &[2, 5, 5]), 0);
        // shorter z pads with leading zeros
        assert_eq!(unequal_tail_len(&[5, 5], &[2, 5, 5]), 3);
    }

    #[test]
    fn squarefree_examples() {
        let c = check_squarefree_bound(6, 5).unwrap();
        assert!(c.bound_holds);
        assert_eq!(c.excess, rational(nat(2), nat(1)));
        let c = check_squarefree_bound(10, 9).unwrap();
        assert!(c.bound_holds);
        let c = check_squarefree_bound(30, 20).unwrap();
        assert!(c.bound_holds);
        assert_eq!(c.s, 3);
        assert!(matches!(
            check_squarefree_bound(12, 5),
            Err(Error::NotSquarefree(12))
        ));
        assert!(matches!(
            check_squarefree_bound(7, 5),
            Err(Error::NotSquarefree(7))
        ));
    }

    #[test]
    fn tight_eta_below_121() {
        assert_eq!(find_tight_eta(121).unwrap(), vec![120]);
        assert_eq!(find_tight_eta(100).unwrap(), Vec::<u64>::new());
    }

    #[test]
    fn coincidences_small_limits() {
        let pairs = find_coincidence_pairs(80).unwrap();
        assert!(pairs.is_empty());
        let pairs = find_coincidence_pairs(361).unwrap();
        assert_eq!(pairs.len(), 1);
        assert_eq!((pairs[0].b1, pairs[0].b2), (81, 361));
        assert!(pairs[0].preperiod.is_empty());
        assert_eq!(pairs[0].period, vec![10]);
    }
}
