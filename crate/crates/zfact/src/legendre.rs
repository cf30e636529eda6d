//! Trailing-zero counts Z_b(n): the number of trailing zeroes of n! in
//! base b, equivalently the largest e with b^e | n!.
//!
//! For a prime p, Legendre's formula gives
//! `Z_p(n) = sum_{i>=1} floor(n/p^i) = (n - sigma_p(n))/(p - 1)`.
//! The digit-sum form is the production path (one pass over digits); in
//! debug builds every call also evaluates the floor-sum form and the two
//! must agree, which catches radix bugs where they arise.

use num_integer::Integer;
use num_traits::{CheckedSub, One, Zero};

use crate::arith::{self, Natural};
use crate::error::{check_base, Error, Result};
use crate::factor::{self, Factorization};

/// Argument of a Z query: an explicit n, or the power form n = base^k.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ZArg {
    Explicit(Natural),
    Power(u64),
}

/// A request for Z_base(n).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZQuery {
    pub base: u64,
    pub arg: ZArg,
}

impl ZQuery {
    pub fn explicit(base: u64, n: Natural) -> Self {
        ZQuery {
            base,
            arg: ZArg::Explicit(n),
        }
    }

    pub fn power(base: u64, k: u64) -> Self {
        ZQuery {
            base,
            arg: ZArg::Power(k),
        }
    }
}

/// Z_p(n) for prime p via the digit-sum form of Legendre's formula.
pub fn z_prime(n: &Natural, p: u64) -> Result<Natural> {
    if !factor::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    z_prime_unchecked(n, p)
}

pub(crate) fn z_prime_unchecked(n: &Natural, p: u64) -> Result<Natural> {
    let sigma = arith::digit_sum(n, p)?;
    let z = (n - sigma) / (p - 1);
    #[cfg(debug_assertions)]
    {
        let alt = floor_sum(n, p);
        if alt != z {
            return Err(Error::Inconsistency(format!(
                "Legendre forms disagree for p = {p}"
            )));
        }
    }
    Ok(z)
}

/// Z_p(n) via the floor-sum `sum_{i>=1} floor(n/p^i)`, kept as an
/// independent route for cross-checking the digit-sum form.
pub fn z_prime_by_division(n: &Natural, p: u64) -> Result<Natural> {
    if !factor::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    Ok(floor_sum(n, p))
}

fn floor_sum(n: &Natural, p: u64) -> Natural {
    let mut total = Natural::zero();
    let mut q = n / p;
    while !q.is_zero() {
        total += &q;
        q /= p;
    }
    total
}

/// Z_{p^r}(n) = floor(Z_p(n) / r).
pub fn z_prime_power(n: &Natural, p: u64, r: u32) -> Result<Natural> {
    if r == 0 {
        return Err(Error::InvalidArgument("exponent r must be >= 1".into()));
    }
    if !factor::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    z_prime_power_unchecked(n, p, r)
}

pub(crate) fn z_prime_power_unchecked(n: &Natural, p: u64, r: u32) -> Result<Natural> {
    Ok(z_prime_unchecked(n, p)? / r as u64)
}

/// Z_b(n) = min_i Z_{p_i^{r_i}}(n) over the factorization of the base.
pub fn z_base(q: &ZQuery) -> Result<Natural> {
    let f = factor::factorize(q.base)?;
    match &q.arg {
        ZArg::Explicit(n) => z_with_factorization(n, &f),
        ZArg::Power(k) => {
            let n = arith::pow_u64(&Natural::from(q.base), *k);
            z_with_factorization(&n, &f)
        }
    }
}

/// Convenience wrapper for the power form Z_b(b^k).
pub fn z_base_power(base: u64, k: u64) -> Result<Natural> {
    z_base(&ZQuery::power(base, k))
}

/// Convenience wrapper for an explicit argument.
pub fn z_base_n(base: u64, n: &Natural) -> Result<Natural> {
    let f = factor::factorize(base)?;
    z_with_factorization(n, &f)
}

/// Core of Z_b(n) over a prepared factorization.
///
/// The minimum is attained at a factor maximizing r(p-1) except possibly
/// for tiny n, so those factors are evaluated exactly and the rest are
/// skipped whenever a cheap digit-sum lower bound already exceeds the
/// current minimum. The bound is exact arithmetic, so a failed skip just
/// falls back to the full evaluation.
pub(crate) fn z_with_factorization(n: &Natural, f: &Factorization) -> Result<Natural> {
    let weights: Vec<u64> = f
        .factors()
        .iter()
        .map(|&(p, r)| (p - 1) * r as u64)
        .collect();
    let max_weight = *weights.iter().max().expect("nonempty factorization");

    let mut min: Option<Natural> = None;
    for (&(p, r), &w) in f.factors().iter().zip(&weights) {
        if w != max_weight {
            continue;
        }
        let z = z_prime_power_unchecked(n, p, r)?;
        if min.as_ref().map_or(true, |m| z < *m) {
            min = Some(z);
        }
    }
    let mut min = min.expect("at least one factor attains the max weight");

    for (&(p, r), &w) in f.factors().iter().zip(&weights) {
        if w == max_weight {
            continue;
        }
        if z_lower_bound(n, p, r) > min {
            continue;
        }
        let z = z_prime_power_unchecked(n, p, r)?;
        if z < min {
            min = z;
        }
    }
    Ok(min)
}

/// A lower bound for Z_{p^r}(n): sigma_p(n) never exceeds (p-1) times the
/// digit count, and the bit length bounds the digit count for any p >= 2.
fn z_lower_bound(n: &Natural, p: u64, r: u32) -> Natural {
    let sigma_ub = Natural::from(p - 1) * (n.bits() + 1);
    if *n <= sigma_ub {
        return Natural::zero();
    }
    ((n - sigma_ub) / (p - 1)) / r as u64
}

/// The digit increment a_k of the Z stream: a_1 = Z_b(b) and
/// a_k = Z_b(b^k) - b * Z_b(b^{k-1}) for k >= 2. Positive for every b;
/// additionally below b when b is a prime power.
pub fn z_stream_delta(b: u64, k: u64) -> Result<Natural> {
    if k == 0 {
        return Err(Error::InvalidArgument("stream index k must be >= 1".into()));
    }
    if k == 1 {
        return z_base_power(b, 1);
    }
    let hi = z_base_power(b, k)?;
    let lo = z_base_power(b, k - 1)?;
    hi.checked_sub(&(lo * b))
        .ok_or_else(|| Error::Inconsistency(format!("Z stream delta underflow at b={b}, k={k}")))
}

/// Default cap on the brute-force factorial oracle.
pub const ORACLE_CAP: u64 = 2000;

/// Brute-force oracle: materializes n! and counts exact divisions by the
/// base. Independent of the Legendre path by construction.
pub fn oracle_trailing_zeros(n: u64, base: u64) -> Result<Natural> {
    oracle_trailing_zeros_with_cap(n, base, ORACLE_CAP)
}

/// Same oracle with an explicit cap on n.
pub fn oracle_trailing_zeros_with_cap(n: u64, base: u64, cap: u64) -> Result<Natural> {
    check_base(base)?;
    if n > cap {
        return Err(Error::CapExceeded { n, cap });
    }
    let mut fact = Natural::one();
    for i in 2..=n {
        fact *= i;
    }
    let big_base = Natural::from(base);
    let mut count = Natural::zero();
    loop {
        let (q, r) = fact.div_rem(&big_base);
        if !r.is_zero() {
            return Ok(count);
        }
        count += 1u32;
        fact = q;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{pow_u64, to_digits};

    fn nat(v: u64) -> Natural {
        Natural::from(v)
    }

    #[test]
    fn z_prime_examples() {
        assert_eq!(z_prime(&nat(100), 5).unwrap(), nat(24));
        assert_eq!(z_prime(&nat(4), 2).unwrap(), nat(3));
        assert_eq!(z_prime(&nat(6), 7).unwrap(), nat(0));
        assert_eq!(z_prime(&nat(100), 4), Err(Error::NotPrime(4)));
    }

    #[test]
    fn z_prime_routes_agree_on_big_arguments() {
        let n = pow_u64(&nat(10), 50);
        for p in [2u64, 3, 5, 7, 11, 101] {
            assert_eq!(
                z_prime(&n, p).unwrap(),
                z_prime_by_division(&n, p).unwrap()
            );
        }
    }

    #[test]
    fn z_prime_power_digit_patterns() {
        // floor(Z_2(4^20)/2) reads 1 then nineteen 3s in base 4.
        let z = z_prime_power(&pow_u64(&nat(4), 20), 2, 2).unwrap();
        let d = to_digits(&z, 4).unwrap();
        let mut expected = vec![3u64; 20];
        expected[0] = 1;
        assert_eq!(d.digits(), expected.as_slice());

        // floor(Z_2(8^20)/3) alternates 2,5 in base 8.
        let z = z_prime_power(&pow_u64(&nat(8), 20), 2, 3).unwrap();
        let d = to_digits(&z, 8).unwrap();
        let expected: Vec<u64> = (0..20).map(|i| if i % 2 == 0 { 2 } else { 5 }).collect();
        assert_eq!(d.digits(), expected.as_slice());
    }

    #[test]
    fn z_prime_power_r_one_is_z_prime() {
        let n = nat(123_456);
        assert_eq!(
            z_prime_power(&n, 7, 1).unwrap(),
            z_prime(&n, 7).unwrap()
        );
    }

    #[test]
    fn z_base_examples() {
        assert_eq!(z_base(&ZQuery::explicit(10, nat(10))).unwrap(), nat(2));
        assert_eq!(z_base(&ZQuery::explicit(7, nat(1))).unwrap(), nat(0));
        let z50 = z_base(&ZQuery::power(10, 50)).unwrap();
        assert_eq!(
            z50.to_string(),
            "24999999999999999999999999999999999999999999999989"
        );
    }

    #[test]
    fn z_base_intro_sequence() {
        let expected = [
            "2",
            "24",
            "249",
            "2499",
            "24999",
            "249998",
            "2499999",
            "24999999",
            "249999998",
            "2499999997",
        ];
        for (i, want) in expected.iter().enumerate() {
            let z = z_base_power(10, i as u64 + 1).unwrap();
            assert_eq!(z.to_string(), *want, "k = {}", i + 1);
        }
    }

    #[test]
    fn stream_delta_examples() {
        assert_eq!(z_stream_delta(10, 1).unwrap(), nat(2));
        assert_eq!(z_stream_delta(10, 3).unwrap(), nat(9));
        // 2499999 - 10 * 249998 = 19, at least b in the non-prime-power case.
        assert_eq!(z_stream_delta(10, 7).unwrap(), nat(19));
    }

    #[test]
    fn oracle_examples() {
        assert_eq!(oracle_trailing_zeros(10, 10).unwrap(), nat(2));
        assert_eq!(oracle_trailing_zeros(5, 2).unwrap(), nat(3));
        assert_eq!(oracle_trailing_zeros(0, 7).unwrap(), nat(0));
        assert_eq!(oracle_trailing_zeros(1, 7).unwrap(), nat(0));
        assert_eq!(
            oracle_trailing_zeros(2001, 10),
            Err(Error::CapExceeded { n: 2001, cap: 2000 })
        );
    }

    #[test]
    fn oracle_matches_z_base_spot() {
        for base in [2u64, 6, 10, 12, 30, 49] {
            for n in 0u64..=120 {
                let via_z = z_base(&ZQuery::explicit(base, nat(n))).unwrap();
                let via_oracle = oracle_trailing_zeros(n, base).unwrap();
                assert_eq!(via_z, via_oracle, "base {base}, n {n}");
            }
        }
    }

    #[test]
    fn corollary_one_spot() {
        // Z_p(l p^n) = l Z_p(p^n) + Z_p(l)
        for (p, l, n) in [(3u64, 17u64, 4u64), (5, 499, 3), (7, 30, 2)] {
            let pn = pow_u64(&nat(p), n);
            let lhs = z_prime(&(&pn * l), p).unwrap();
            let rhs = z_prime(&pn, p).unwrap() * l + z_prime(&nat(l), p).unwrap();
            assert_eq!(lhs, rhs);
        }
    }
}
