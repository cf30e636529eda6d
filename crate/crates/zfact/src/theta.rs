//! The trailing-zero density constant theta(b) = lim Z_b(n)/n, its exact
//! base-b expansion, and the prime-power period machinery.
//!
//! For b = p_1^{r_1} ... p_s^{r_s} the constant is the exact rational
//! `min_i 1/(r_i (p_i - 1))`. Its base-b expansion is eventually periodic;
//! this module computes the minimal preperiod and period, in either the
//! canonical (terminating) form or the repeating-(b-1)-tail form. The tail
//! form is the one whose digit prefixes agree with the digits of Z_b(b^k),
//! so it is the default stream representation whenever theta(b) is exact
//! in base b.

use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::arith::{self, DigitVector, Natural};
use crate::error::{check_base, Error, Result};
use crate::factor::{self, Factorization};

/// Exact reduced fraction over naturals. Carrier for theta(b) and for the
/// ratios gamma_k = Z_b(b^k)/b^k.
pub type Rational = num_rational::Ratio<Natural>;

/// Builds the reduced fraction num/den.
pub fn rational(num: Natural, den: Natural) -> Rational {
    Rational::new(num, den)
}

/// Weight r(p-1) of the factor attaining theta, with smallest-prime
/// tie-breaking (factors arrive sorted by prime).
pub(crate) fn theta_weight(f: &Factorization) -> (u64, (u64, u32)) {
    let mut best_w = 0u64;
    let mut best = (0u64, 0u32);
    for &(p, r) in f.factors() {
        let w = (p - 1) * r as u64;
        if w > best_w {
            best_w = w;
            best = (p, r);
        }
    }
    (best_w, best)
}

/// theta(b) = min_i 1/(r_i(p_i - 1)) together with the factor attaining
/// the minimum (ties broken by smallest prime).
pub fn theta(b: u64) -> Result<(Rational, (u64, u32))> {
    let f = factor::factorize(b)?;
    let (w, argmin) = theta_weight(&f);
    Ok((rational(Natural::one(), Natural::from(w)), argmin))
}

/// 1/theta(b) = max_i r_i(p_i - 1), the denominator of theta(b).
pub fn inverse_theta(b: u64) -> Result<Natural> {
    Ok(Natural::from(inverse_theta_u64(b)?))
}

pub(crate) fn inverse_theta_u64(b: u64) -> Result<u64> {
    let f = factor::factorize(b)?;
    Ok(theta_weight(&f).0)
}

/// gamma_k = Z_b(b^k)/b^k as an exact rational.
pub fn gamma(b: u64, k: u64) -> Result<Rational> {
    let z = crate::legendre::z_base_power(b, k)?;
    Ok(rational(z, arith::pow_u64(&Natural::from(b), k)))
}

/// True when every prime of q's denominator divides the base, i.e. some
/// power of the base clears the denominator.
pub fn is_exact(q: &Rational, base: u64) -> Result<bool> {
    check_base(base)?;
    Ok(base_coprime_part(q.denom(), base).is_one())
}

/// The part of `den` coprime to `base`.
fn base_coprime_part(den: &Natural, base: u64) -> Natural {
    let b = Natural::from(base);
    let mut d = den.clone();
    loop {
        let g = d.gcd(&b);
        if g.is_one() {
            return d;
        }
        d /= g;
    }
}

/// True iff b = 2^(2^m) for some m >= 0, i.e. b + 1 is a Fermat number.
/// These are exactly the bases whose theta(b) is exact in base b.
pub fn is_fermat_base(b: u64) -> bool {
    if b < 2 || !b.is_power_of_two() {
        return false;
    }
    let e = b.trailing_zeros();
    e.is_power_of_two()
}

/// Which of the two equivalent forms an exact expansion is written in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Representation {
    /// Terminating digits followed by repeating 0.
    Canonical,
    /// Last digit decremented, followed by repeating (b-1).
    RepeatingTail,
}

/// Base-b expansion of a rational in [0, 1]: integer digit, minimal
/// preperiod, minimal period, and whether the value is exact in the base.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BaseExpansion {
    base: u64,
    integer: DigitVector,
    preperiod: Vec<u64>,
    period: Vec<u64>,
    exact: bool,
    representation: Representation,
}

impl BaseExpansion {
    pub fn base(&self) -> u64 {
        self.base
    }

    pub fn integer_digits(&self) -> &DigitVector {
        &self.integer
    }

    pub fn preperiod(&self) -> &[u64] {
        &self.preperiod
    }

    pub fn period(&self) -> &[u64] {
        &self.period
    }

    /// Preperiod length t.
    pub fn t(&self) -> usize {
        self.preperiod.len()
    }

    /// Period length s.
    pub fn s(&self) -> usize {
        self.period.len()
    }

    pub fn is_exact(&self) -> bool {
        self.exact
    }

    pub fn representation(&self) -> Representation {
        self.representation
    }

    /// Fractional digits: the preperiod followed by the period repeated
    /// forever.
    pub fn digit_stream(&self) -> impl Iterator<Item = u64> + '_ {
        self.preperiod
            .iter()
            .copied()
            .chain(self.period.iter().copied().cycle())
    }

    /// Reconstructs the exact rational value of the expansion.
    pub fn value(&self) -> Rational {
        let b = Natural::from(self.base);
        let t = self.preperiod.len() as u64;
        let s = self.period.len() as u64;
        let pre_val = digits_value(&self.preperiod, self.base);
        let per_val = digits_value(&self.period, self.base);
        let cycle = arith::pow_u64(&b, s) - 1u32;
        let num = pre_val * &cycle + per_val;
        let den = arith::pow_u64(&b, t) * cycle;
        rational(self.integer.value() * &den + num, den)
    }

    /// Cross-base comparison key: (t, preperiod, lexicographically least
    /// rotation of the period), digits compared as plain integers.
    pub fn canonical_key(&self) -> (usize, Vec<u64>, Vec<u64>) {
        let shift = least_rotation(&self.period);
        let mut rotated = Vec::with_capacity(self.period.len());
        rotated.extend_from_slice(&self.period[shift..]);
        rotated.extend_from_slice(&self.period[..shift]);
        (self.preperiod.len(), self.preperiod.clone(), rotated)
    }
}

fn digits_value(digits: &[u64], base: u64) -> Natural {
    let mut acc = Natural::zero();
    for &d in digits {
        acc = acc * base + d;
    }
    acc
}

/// Index of the lexicographically least rotation (Booth's algorithm).
pub(crate) fn least_rotation(s: &[u64]) -> usize {
    let n = s.len();
    if n <= 1 {
        return 0;
    }
    let at = |i: usize| s[i % n];
    let mut f = vec![-1isize; 2 * n];
    let mut k = 0usize;
    for j in 1..2 * n {
        let sj = at(j);
        let mut i = f[j - k - 1];
        while i != -1 && sj != at(k + i as usize + 1) {
            if sj < at(k + i as usize + 1) {
                k = j - i as usize - 1;
            }
            i = f[i as usize];
        }
        if i == -1 && sj != at(k) {
            if sj < at(k) {
                k = j;
            }
            f[j - k] = -1;
        } else {
            f[j - k] = i + 1;
        }
    }
    k
}

struct RawDigits {
    preperiod: Vec<u64>,
    period: Vec<u64>,
    exact: bool,
}

/// Expands q in [0, 1] in the given base with minimal preperiod and
/// period.
///
/// Long division runs for exactly t + s steps: t is read off the
/// base-sharing part of the denominator and the period ends at the first
/// remainder recurrence, so no cycle table is needed. Cost is O(t + s)
/// divisions, which for a denominator d can reach the multiplicative
/// order of the base modulo d's base-coprime part.
pub fn expand_rational(
    q: &Rational,
    base: u64,
    representation: Representation,
) -> Result<BaseExpansion> {
    check_base(base)?;
    if q.numer() > q.denom() {
        return Err(Error::OutsideUnitInterval(q.to_string()));
    }
    let is_one = q.numer() == q.denom();
    let mut integer = DigitVector::new(base, vec![if is_one { 1 } else { 0 }])?;

    let frac_num = if is_one { Natural::zero() } else { q.numer().clone() };
    let raw = if frac_num.is_zero() {
        RawDigits {
            preperiod: Vec::new(),
            period: vec![0],
            exact: true,
        }
    } else if let (Some(num), Some(den)) = (frac_num.to_u64(), q.denom().to_u64()) {
        expand_digits_u64(num, den, base)
    } else {
        expand_digits_big(&frac_num, q.denom(), base)
    };

    let mut preperiod = raw.preperiod;
    let mut period = raw.period;
    let mut repr = Representation::Canonical;

    if raw.exact && representation == Representation::RepeatingTail {
        if let Some(last) = preperiod.last_mut() {
            *last -= 1;
            period = vec![base - 1];
            repr = Representation::RepeatingTail;
        } else if is_one {
            integer = DigitVector::new(base, vec![0])?;
            period = vec![base - 1];
            repr = Representation::RepeatingTail;
        }
        // q = 0 has no repeating-tail form; the canonical zeros stand.
    }

    Ok(BaseExpansion {
        base,
        integer,
        preperiod,
        period,
        exact: raw.exact,
        representation: repr,
    })
}

/// Minimal preperiod length: the least e with the base-sharing part of
/// `den` dividing base^e. Dividing out gcds once per step lands on e
/// without factoring anything.
fn preperiod_len_u64(den_shared: u64, base: u64) -> u64 {
    let mut cur = den_shared;
    let mut e = 0;
    while cur > 1 {
        cur /= gcd_u64(cur, base);
        e += 1;
    }
    e
}

fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = b;
        b = a % b;
        a = t;
    }
    a
}

fn expand_digits_u64(num: u64, den: u64, base: u64) -> RawDigits {
    let mut coprime = den;
    loop {
        let g = gcd_u64(coprime, base);
        if g == 1 {
            break;
        }
        coprime /= g;
    }
    let exact = coprime == 1;
    let t = preperiod_len_u64(den / coprime, base);

    let step = |r: u64| -> (u64, u64) {
        let prod = r as u128 * base as u128;
        ((prod / den as u128) as u64, (prod % den as u128) as u64)
    };

    let mut r = num;
    let mut preperiod = Vec::with_capacity(t as usize);
    for _ in 0..t {
        let (d, nr) = step(r);
        preperiod.push(d);
        r = nr;
    }
    if exact {
        debug_assert_eq!(r, 0);
        return RawDigits {
            preperiod,
            period: vec![0],
            exact,
        };
    }
    let anchor = r;
    let mut period = Vec::new();
    loop {
        let (d, nr) = step(r);
        period.push(d);
        r = nr;
        if r == anchor {
            break;
        }
    }
    RawDigits {
        preperiod,
        period,
        exact,
    }
}

fn expand_digits_big(num: &Natural, den: &Natural, base: u64) -> RawDigits {
    let coprime = base_coprime_part(den, base);
    let exact = coprime.is_one();
    let shared = den / &coprime;
    let big_base = Natural::from(base);
    let mut t = 0u64;
    let mut cur = shared;
    while !cur.is_one() {
        cur /= cur.gcd(&big_base);
        t += 1;
    }

    let mut r = num.clone();
    let mut preperiod = Vec::with_capacity(t as usize);
    for _ in 0..t {
        let (d, nr) = (r * base).div_rem(den);
        preperiod.push(d.to_u64().expect("digit below base"));
        r = nr;
    }
    if exact {
        debug_assert!(r.is_zero());
        return RawDigits {
            preperiod,
            period: vec![0],
            exact,
        };
    }
    let anchor = r.clone();
    let mut period = Vec::new();
    loop {
        let (d, nr) = (r * base).div_rem(den);
        period.push(d.to_u64().expect("digit below base"));
        r = nr;
        if r == anchor {
            break;
        }
    }
    RawDigits {
        preperiod,
        period,
        exact,
    }
}

/// First `count` fractional digits of theta(b) in base b, in the
/// repeating-tail representation whenever theta(b) is exact. These are the
/// digits the prefixes of Z_b(b^k) converge to.
pub fn theta_digit_stream(b: u64, count: u64) -> Result<Vec<u64>> {
    let (th, _) = theta(b)?;
    let exp = expand_rational(&th, b, Representation::RepeatingTail)?;
    Ok(exp.digit_stream().take(count as usize).collect())
}

/// Period data of theta(p^n) in base p^n, found by divisibility search.
///
/// `s_min` is the least s with `n | p^n * R_{sn}^(p)`; the expansion is
/// pure periodic exactly when `n | R_{s_min n}^(p)`, and `theta_int` is
/// the integer `p^n R_{s_min n}^(p) / n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimePowerPeriod {
    pub p: u64,
    pub n: u32,
    pub s_min: u64,
    pub theta_int: Natural,
    pub pure: bool,
}

pub fn prime_power_period(p: u64, n: u32) -> Result<PrimePowerPeriod> {
    if !factor::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if n == 0 {
        return Err(Error::InvalidArgument("exponent n must be >= 1".into()));
    }
    let n64 = n as u64;

    // s = ord of p modulo the p-free part of n always satisfies the
    // divisibility, so the search is bounded; the slack is pure paranoia.
    let mut p_free = n64;
    while p_free % p == 0 {
        p_free /= p;
    }
    let ord = multiplicative_order(p % p_free.max(1), p_free.max(1));
    let guard = 4 * ord + 8;

    let p_mod = p % n64;
    let pn_mod = factor::pow_mod(p_mod, n64, n64);
    let mut r_mod = 0u64; // R_j^(p) mod n, advanced digit by digit
    let mut found = None;
    for s in 1..=guard {
        for _ in 0..n64 {
            r_mod = (r_mod * p_mod + 1) % n64;
        }
        if (pn_mod as u128 * r_mod as u128) % n64 as u128 == 0 {
            found = Some((s, r_mod == 0));
            break;
        }
    }
    let (s_min, pure) = found.ok_or_else(|| {
        Error::Inconsistency(format!("period search exceeded guard for p={p}, n={n}"))
    })?;

    let theta_int =
        arith::pow_u64(&Natural::from(p), n64) * arith::repunit(p, s_min * n64)? / n64;
    Ok(PrimePowerPeriod {
        p,
        n,
        s_min,
        theta_int,
        pure,
    })
}

/// Order of a modulo m (m >= 1, gcd(a, m) = 1), by plain iteration; the
/// moduli here are machine-word sized divisor parts.
fn multiplicative_order(a: u64, m: u64) -> u64 {
    if m == 1 {
        return 1;
    }
    debug_assert_eq!(gcd_u64(a, m), 1);
    let mut cur = a % m;
    let mut ord = 1;
    while cur != 1 {
        cur = ((cur as u128 * a as u128) % m as u128) as u64;
        ord += 1;
    }
    ord
}

/// When n divides R_n^(p), the value Z_{p^n}(p^{nk}) is the base-p^n
/// repdigit `R_n^(p)/n * R_k^(p^n)`; returns that prediction, or None when
/// the divisibility fails.
pub fn repdigit_witness(p: u64, n: u32, k: u64) -> Result<Option<Natural>> {
    if !factor::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if n == 0 || k == 0 {
        return Err(Error::InvalidArgument("n and k must be >= 1".into()));
    }
    let rn = arith::repunit(p, n as u64)?;
    let (alpha, rem) = rn.div_rem(&Natural::from(n));
    if !rem.is_zero() {
        return Ok(None);
    }
    let big_base = arith::pow_u64(&Natural::from(p), n as u64);
    let rk = arith::repunit_in(&big_base, k)?;
    Ok(Some(alpha * rk))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::pow_u64;

    fn nat(v: u64) -> Natural {
        Natural::from(v)
    }

    fn rat(n: u64, d: u64) -> Rational {
        rational(nat(n), nat(d))
    }

    #[test]
    fn theta_examples() {
        let (th, argmin) = theta(10).unwrap();
        assert_eq!(th, rat(1, 4));
        assert_eq!(argmin, (5, 1));
        assert_eq!(theta(2).unwrap().0, rat(1, 1));
        let (th30, argmin30) = theta(30).unwrap();
        assert_eq!(th30, rat(1, 4));
        assert_eq!(argmin30, (5, 1));
    }

    #[test]
    fn theta_tie_breaks_to_smallest_prime() {
        // 12 = 2^2 * 3: both factors weigh 2.
        let (th, argmin) = theta(12).unwrap();
        assert_eq!(th, rat(1, 2));
        assert_eq!(argmin, (2, 2));
    }

    #[test]
    fn inverse_theta_examples() {
        assert_eq!(inverse_theta(2).unwrap(), nat(1));
        assert_eq!(inverse_theta(10).unwrap(), nat(4));
        assert_eq!(inverse_theta(8).unwrap(), nat(3));
    }

    #[test]
    fn expansion_quarter_base_ten() {
        let e = expand_rational(&rat(1, 4), 10, Representation::Canonical).unwrap();
        assert_eq!(e.preperiod(), &[2, 5]);
        assert_eq!(e.period(), &[0]);
        assert!(e.is_exact());
        assert_eq!(e.value(), rat(1, 4));

        let tail = expand_rational(&rat(1, 4), 10, Representation::RepeatingTail).unwrap();
        assert_eq!(tail.preperiod(), &[2, 4]);
        assert_eq!(tail.period(), &[9]);
        assert_eq!(tail.value(), rat(1, 4));
    }

    #[test]
    fn expansion_third_base_eight() {
        let e = expand_rational(&rat(1, 3), 8, Representation::Canonical).unwrap();
        assert_eq!(e.t(), 0);
        assert_eq!(e.period(), &[2, 5]);
        assert!(!e.is_exact());
        assert_eq!(e.value(), rat(1, 3));
    }

    #[test]
    fn expansion_eighth_base_81() {
        let e = expand_rational(&rat(1, 8), 81, Representation::Canonical).unwrap();
        assert_eq!(e.t(), 0);
        assert_eq!(e.period(), &[10]);
    }

    #[test]
    fn expansion_mixed_periodic() {
        // 1/6 = 0.1(6) in base 10
        let e = expand_rational(&rat(1, 6), 10, Representation::Canonical).unwrap();
        assert_eq!(e.preperiod(), &[1]);
        assert_eq!(e.period(), &[6]);
        assert_eq!(e.value(), rat(1, 6));
        // 1/7 has the classic 6-digit period
        let e = expand_rational(&rat(1, 7), 10, Representation::Canonical).unwrap();
        assert_eq!(e.period(), &[1, 4, 2, 8, 5, 7]);
    }

    #[test]
    fn expansion_of_one_and_zero() {
        let one = expand_rational(&rat(1, 1), 2, Representation::Canonical).unwrap();
        assert_eq!(one.integer_digits().digits(), &[1]);
        assert_eq!(one.t(), 0);
        assert_eq!(one.period(), &[0]);

        let tail = expand_rational(&rat(1, 1), 2, Representation::RepeatingTail).unwrap();
        assert_eq!(tail.integer_digits().digits(), &[0]);
        assert_eq!(tail.period(), &[1]);
        assert_eq!(tail.value(), rat(1, 1));

        let zero = expand_rational(&rat(0, 1), 5, Representation::RepeatingTail).unwrap();
        assert_eq!(zero.period(), &[0]);
        assert_eq!(zero.representation(), Representation::Canonical);
    }

    #[test]
    fn expansion_rejects_out_of_range() {
        assert!(matches!(
            expand_rational(&rat(3, 2), 10, Representation::Canonical),
            Err(Error::OutsideUnitInterval(_))
        ));
    }

    #[test]
    fn expansion_big_denominator_path() {
        // 10^30 - 1 forces the big-integer path; its period divides 30.
        let den = pow_u64(&nat(10), 30) - 1u32;
        let q = rational(nat(7), den.clone());
        let e = expand_rational(&q, 10, Representation::Canonical).unwrap();
        assert_eq!(e.value(), q);
        assert_eq!(e.s(), 30);
        // with a shared factor in the denominator the preperiod kicks in
        let q = rational(nat(7), den * 200u32);
        let e = expand_rational(&q, 10, Representation::Canonical).unwrap();
        assert_eq!(e.t(), 3);
        assert_eq!(e.value(), q);
    }

    #[test]
    fn exactness_examples() {
        assert!(is_exact(&rat(1, 4), 10).unwrap());
        assert!(!is_exact(&rat(1, 3), 10).unwrap());
        assert!(is_exact(&rat(1, 8), 16).unwrap()); // 1/(4*(2-1)) in base 2^4
        assert!(!is_exact(&rat(1, 2), 3).unwrap()); // 1/(1*(3-1)) in base 3
    }

    #[test]
    fn fermat_bases() {
        assert!(is_fermat_base(2));
        assert!(is_fermat_base(4));
        assert!(is_fermat_base(16));
        assert!(is_fermat_base(256));
        assert!(is_fermat_base(65_536));
        assert!(!is_fermat_base(8));
        assert!(!is_fermat_base(10));
        assert!(!is_fermat_base(32));
        assert!(!is_fermat_base(1));
    }

    #[test]
    fn stream_examples() {
        assert_eq!(theta_digit_stream(10, 5).unwrap(), vec![2, 4, 9, 9, 9]);
        assert_eq!(
            theta_digit_stream(22, 9).unwrap(),
            vec![2, 4, 8, 17, 13, 4, 8, 17, 13]
        );
        assert_eq!(theta_digit_stream(12, 4).unwrap(), vec![5, 11, 11, 11]);
    }

    #[test]
    fn prime_power_period_examples() {
        let pp = prime_power_period(2, 3).unwrap();
        assert_eq!((pp.s_min, pp.pure), (2, true));
        assert_eq!(pp.theta_int, nat(168));

        let pp = prime_power_period(3, 2).unwrap();
        assert_eq!((pp.s_min, pp.pure), (1, true));

        let pp = prime_power_period(2, 2).unwrap();
        assert_eq!((pp.s_min, pp.pure), (1, false));
        assert_eq!(pp.theta_int, nat(6));
    }

    #[test]
    fn repdigit_witness_examples() {
        // n = 1: plain repunit
        assert_eq!(
            repdigit_witness(7, 1, 5).unwrap(),
            Some(arith::repunit(7, 5).unwrap())
        );
        // (3, 2, 20): twenty 2s in base 9
        let w = repdigit_witness(3, 2, 20).unwrap().unwrap();
        assert_eq!(w, arith::repunit(9, 20).unwrap() * 2u32);
        // (3, 4, 5): 10 * R_5^(81)
        let w = repdigit_witness(3, 4, 5).unwrap().unwrap();
        assert_eq!(w, arith::repunit(81, 5).unwrap() * 10u32);
        // 2 does not divide R_2^(2) = 3
        assert_eq!(repdigit_witness(2, 2, 5).unwrap(), None);
    }

    #[test]
    fn least_rotation_cases() {
        assert_eq!(least_rotation(&[2, 1, 2, 0]), 3);
        assert_eq!(least_rotation(&[1, 1]), 0);
        assert_eq!(least_rotation(&[3, 11]), 0);
        assert_eq!(least_rotation(&[11, 3]), 1);
        assert_eq!(least_rotation(&[10]), 0);
        assert_eq!(least_rotation(&[5, 4, 5, 4, 3]), 4);
    }

    #[test]
    fn canonical_key_rotates_period() {
        let e = expand_rational(&rat(1, 7), 10, Representation::Canonical).unwrap();
        let (t, pre, per) = e.canonical_key();
        assert_eq!(t, 0);
        assert!(pre.is_empty());
        assert_eq!(per, vec![1, 4, 2, 8, 5, 7]);
    }

    #[test]
    fn gamma_is_exact_ratio() {
        // Z_10(100) = 24, so gamma_2 = 24/100 = 6/25.
        assert_eq!(gamma(10, 2).unwrap(), rat(6, 25));
    }
}
