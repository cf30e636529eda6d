//! Arbitrary-precision helpers shared by the whole crate: radix digit
//! extraction, digit sums, repunits and exact floor-logarithms.
//!
//! Everything here is integer-only. Logarithms are digit lengths, never
//! floating point: the bounds downstream sit exactly on integer boundaries
//! where a float log would be unsafe.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use std::fmt;

use crate::error::{check_base, Error, Result};

/// Arbitrary-precision nonnegative integer. Carrier for n, b^k, Z values
/// and repunits.
pub type Natural = BigUint;

/// Base-b digits of a natural number, most significant first.
///
/// Digits are full machine integers (digit "10" in base 81 is the number
/// ten), matching the `{d_1,...,d_k}_b` convention used everywhere here.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DigitVector {
    base: u64,
    digits: Vec<u64>,
}

impl DigitVector {
    /// Builds a digit vector, validating digit bounds and the no-leading-zero
    /// rule (the value 0 is represented as `[0]`).
    pub fn new(base: u64, digits: Vec<u64>) -> Result<Self> {
        check_base(base)?;
        if digits.is_empty() {
            return Err(Error::InvalidArgument("empty digit vector".into()));
        }
        if digits.iter().any(|&d| d >= base) {
            return Err(Error::InvalidArgument(format!(
                "digit out of range for base {base}"
            )));
        }
        if digits.len() > 1 && digits[0] == 0 {
            return Err(Error::InvalidArgument("leading zero digit".into()));
        }
        Ok(DigitVector { base, digits })
    }

    pub fn base(&self) -> u64 {
        self.base
    }

    pub fn digits(&self) -> &[u64] {
        &self.digits
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    /// Reassembles the value `sum digits[i] * base^(len-1-i)`.
    pub fn value(&self) -> Natural {
        let base = BigUint::from(self.base);
        let mut acc = BigUint::zero();
        for &d in &self.digits {
            acc = acc * &base + d;
        }
        acc
    }

    /// `Some(d)` when every digit equals `d`.
    pub fn constant_digit(&self) -> Option<u64> {
        let first = self.digits[0];
        self.digits.iter().all(|&d| d == first).then_some(first)
    }
}

impl fmt::Display for DigitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, d) in self.digits.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{d}")?;
        }
        write!(f, "}}_{}", self.base)
    }
}

/// Largest power of `base` that fits in a u64, as `(base^m, m)`.
///
/// Radix conversion divides by this chunk so that each big-integer division
/// yields `m` digits extracted with machine arithmetic.
pub(crate) fn chunk_for(base: u64) -> (u64, u32) {
    let mut chunk = base;
    let mut m = 1u32;
    while let Some(next) = chunk.checked_mul(base) {
        chunk = next;
        m += 1;
    }
    (chunk, m)
}

fn u64_digits_msb(mut v: u64, base: u64) -> Vec<u64> {
    if v == 0 {
        return vec![0];
    }
    let mut out = Vec::new();
    while v > 0 {
        out.push(v % base);
        v /= base;
    }
    out.reverse();
    out
}

/// Writes exactly `width` base-`base` digits of `v` (leading zeros kept).
fn u64_digits_fixed(mut v: u64, base: u64, width: u32, out: &mut Vec<u64>) {
    let start = out.len();
    out.resize(start + width as usize, 0);
    for slot in out[start..].iter_mut().rev() {
        *slot = v % base;
        v /= base;
    }
    debug_assert_eq!(v, 0);
}

/// Base-`base` expansion of `n`, most significant digit first.
pub fn to_digits(n: &Natural, base: u64) -> Result<DigitVector> {
    check_base(base)?;
    if let Some(v) = n.to_u64() {
        return Ok(DigitVector {
            base,
            digits: u64_digits_msb(v, base),
        });
    }
    let (chunk, m) = chunk_for(base);
    let big_chunk = BigUint::from(chunk);
    // Least-significant chunk first; every chunk below the top one carries
    // exactly m digits.
    let mut groups: Vec<u64> = Vec::new();
    let mut q = n.clone();
    while !q.is_zero() {
        let (q2, r) = q.div_rem(&big_chunk);
        groups.push(r.to_u64().expect("chunk remainder fits u64"));
        q = q2;
    }
    let top = groups.len() - 1;
    let mut digits = u64_digits_msb(groups[top], base);
    digits.reserve(top * m as usize);
    for &g in groups[..top].iter().rev() {
        u64_digits_fixed(g, base, m, &mut digits);
    }
    Ok(DigitVector { base, digits })
}

/// Digit count of `n` in base `base` (1 for n = 0).
pub fn digit_count(base: u64, n: &Natural) -> Result<u64> {
    check_base(base)?;
    if let Some(v) = n.to_u64() {
        return Ok(u64_digit_count(base, v));
    }
    let (chunk, m) = chunk_for(base);
    let big_chunk = BigUint::from(chunk);
    let mut q = n.clone();
    let mut full = 0u64;
    loop {
        let (q2, r) = q.div_rem(&big_chunk);
        if q2.is_zero() {
            return Ok(full * m as u64 + u64_digit_count(base, r.to_u64().unwrap()));
        }
        full += 1;
        q = q2;
    }
}

fn u64_digit_count(base: u64, mut v: u64) -> u64 {
    let mut count = 1;
    while v >= base {
        v /= base;
        count += 1;
    }
    count
}

/// sigma_base(n): the sum of the base-`base` digits of `n`.
pub fn digit_sum(n: &Natural, base: u64) -> Result<Natural> {
    check_base(base)?;
    if base == 2 {
        // The binary digit sum is the population count.
        return Ok(Natural::from(n.count_ones()));
    }
    if let Some(v) = n.to_u64() {
        return Ok(Natural::from(u64_digit_sum(v, base)));
    }
    let (chunk, _) = chunk_for(base);
    let big_chunk = BigUint::from(chunk);
    let mut q = n.clone();
    let mut sum: u128 = 0;
    while !q.is_zero() {
        let (q2, r) = q.div_rem(&big_chunk);
        sum += u64_digit_sum(r.to_u64().unwrap(), base) as u128;
        q = q2;
    }
    Ok(Natural::from(sum))
}

fn u64_digit_sum(mut v: u64, base: u64) -> u64 {
    let mut sum = 0;
    while v > 0 {
        sum += v % base;
        v /= base;
    }
    sum
}

/// The base-`base` repunit with `k` digits, `(base^k - 1)/(base - 1)`.
///
/// `k = 0` yields the empty repunit 0.
pub fn repunit(base: u64, k: u64) -> Result<Natural> {
    check_base(base)?;
    repunit_in(&BigUint::from(base), k)
}

/// Repunit over an arbitrary-precision base (used for bases p^n that
/// overflow a machine word).
pub(crate) fn repunit_in(base: &Natural, k: u64) -> Result<Natural> {
    if k == 0 {
        return Ok(Natural::zero());
    }
    let numer = pow_u64(base, k) - 1u32;
    let denom = base - 1u32;
    if denom.is_zero() {
        return Err(Error::InvalidBase(1));
    }
    Ok(numer / denom)
}

pub(crate) fn pow_u64(base: &Natural, k: u64) -> Natural {
    if k == 0 {
        return Natural::one();
    }
    num_traits::pow::Pow::pow(base, k)
}

/// Exact floor(log_base(n)), computed from the digit length.
pub fn floor_log(base: u64, n: &Natural) -> Result<u64> {
    if n.is_zero() {
        check_base(base)?;
        return Err(Error::UndefinedLog);
    }
    Ok(digit_count(base, n)? - 1)
}

/// Machine-word floor(log_base(v)); v must be nonzero.
pub(crate) fn floor_log_u64(base: u64, v: u64) -> u64 {
    debug_assert!(base >= 2 && v >= 1);
    u64_digit_count(base, v) - 1
}

/// `Some(d)` when `n` is the repdigit `{d,d,...,d}_base` (n >= 1 and
/// 1 <= d < base); `None` otherwise, including for n = 0.
pub fn is_repdigit(n: &Natural, base: u64) -> Result<Option<u64>> {
    check_base(base)?;
    if n.is_zero() {
        return Ok(None);
    }
    Ok(to_digits(n, base)?.constant_digit())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nat(v: u64) -> Natural {
        Natural::from(v)
    }

    #[test]
    fn digits_of_zero() {
        let d = to_digits(&nat(0), 10).unwrap();
        assert_eq!(d.digits(), &[0]);
        assert_eq!(d.value(), nat(0));
    }

    #[test]
    fn digits_of_mersenne_in_base_two() {
        let d = to_digits(&nat(1_048_575), 2).unwrap();
        assert_eq!(d.digits(), vec![1u64; 20].as_slice());
    }

    #[test]
    fn digits_of_3886_in_base_six() {
        let d = to_digits(&nat(3886), 6).unwrap();
        assert_eq!(d.digits(), &[2, 5, 5, 5, 4]);
        assert_eq!(d.value(), nat(3886));
    }

    #[test]
    fn digits_roundtrip_large_value_large_base() {
        let n = pow_u64(&nat(81), 97) + nat(123456789);
        let d = to_digits(&n, 81).unwrap();
        assert_eq!(d.value(), n);
        let d = to_digits(&n, 40_000).unwrap();
        assert_eq!(d.value(), n);
    }

    #[test]
    fn rejects_bad_bases() {
        assert_eq!(to_digits(&nat(5), 1), Err(Error::InvalidBase(1)));
        assert_eq!(digit_sum(&nat(5), 0), Err(Error::InvalidBase(0)));
        assert!(repunit(u64::MAX, 3).is_err());
    }

    #[test]
    fn digit_sum_examples() {
        assert_eq!(digit_sum(&nat(0), 7).unwrap(), nat(0));
        assert_eq!(digit_sum(&nat(10), 2).unwrap(), nat(2));
        let p20 = pow_u64(&nat(3), 20);
        assert_eq!(digit_sum(&p20, 3).unwrap(), nat(1));
    }

    #[test]
    fn digit_sum_matches_digit_vector() {
        let n = pow_u64(&nat(7), 60) + nat(987654321);
        for base in [2u64, 3, 10, 37, 256, 1 << 40] {
            let via_digits: u128 = to_digits(&n, base)
                .unwrap()
                .digits()
                .iter()
                .map(|&d| d as u128)
                .sum();
            assert_eq!(digit_sum(&n, base).unwrap(), Natural::from(via_digits));
        }
    }

    #[test]
    fn repunit_examples() {
        assert_eq!(repunit(2, 3).unwrap(), nat(7));
        assert_eq!(repunit(10, 5).unwrap(), nat(11111));
        assert_eq!(repunit(9, 20).unwrap(), (pow_u64(&nat(9), 20) - 1u32) / nat(8));
        assert_eq!(repunit(10, 0).unwrap(), nat(0));
    }

    #[test]
    fn repunit_identity() {
        for base in [2u64, 3, 10, 81, 1 << 32] {
            for k in 1..=24 {
                let r = repunit(base, k).unwrap();
                assert_eq!(r * (base - 1) + 1u32, pow_u64(&nat(base), k));
            }
        }
    }

    #[test]
    fn floor_log_examples() {
        assert_eq!(floor_log(10, &nat(9)).unwrap(), 0);
        assert_eq!(floor_log(10, &nat(10)).unwrap(), 1);
        assert_eq!(floor_log(6, &nat(7775)).unwrap(), 4);
        assert_eq!(floor_log(10, &nat(0)), Err(Error::UndefinedLog));
    }

    #[test]
    fn floor_log_power_boundaries() {
        for base in [2u64, 3, 10, 1000] {
            for k in 1..=40u64 {
                let p = pow_u64(&nat(base), k);
                assert_eq!(floor_log(base, &p).unwrap(), k);
                assert_eq!(floor_log(base, &(&p - 1u32)).unwrap(), k - 1);
            }
        }
    }

    #[test]
    fn repdigit_detection() {
        let z9 = repunit(9, 20).unwrap() * 2u32;
        assert_eq!(is_repdigit(&z9, 9).unwrap(), Some(2));
        assert_eq!(is_repdigit(&nat(7), 2).unwrap(), Some(1));
        assert_eq!(is_repdigit(&nat(12), 10).unwrap(), None);
        assert_eq!(is_repdigit(&nat(0), 10).unwrap(), None);
    }

    #[test]
    fn digit_vector_display_and_validation() {
        let d = to_digits(&nat(3886), 6).unwrap();
        assert_eq!(d.to_string(), "{2,5,5,5,4}_6");
        assert!(DigitVector::new(6, vec![0, 1]).is_err());
        assert!(DigitVector::new(6, vec![6]).is_err());
        assert!(DigitVector::new(6, vec![0]).is_ok());
    }
}
