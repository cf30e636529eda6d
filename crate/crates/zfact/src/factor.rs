//! Deterministic factorization of the base b into its prime-power
//! decomposition. Bases are machine words; trial division handles the
//! small primes and a Brent-cycle rho finishes anything that survives.

use crate::error::{check_base, Result};

#[cfg(test)]
use crate::error::Error;

/// Sorted prime-power decomposition `b = p_1^{r_1} ... p_s^{r_s}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    factors: Vec<(u64, u32)>,
}

impl Factorization {
    /// `(prime, exponent)` pairs with strictly increasing primes.
    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    /// Number of distinct primes (the `s` of the decomposition).
    pub fn distinct_primes(&self) -> usize {
        self.factors.len()
    }

    /// Reconstructs the factored value.
    pub fn value(&self) -> u64 {
        self.factors
            .iter()
            .fold(1u64, |acc, &(p, r)| acc * p.pow(r))
    }
}

/// `Some((p, r))` when the factorization is a single prime power.
pub fn is_prime_power(f: &Factorization) -> Option<(u64, u32)> {
    match f.factors() {
        [only] => Some(*only),
        _ => None,
    }
}

/// True when every exponent is 1.
pub fn is_squarefree(f: &Factorization) -> bool {
    f.factors().iter().all(|&(_, r)| r == 1)
}

/// Factors `b` (2 <= b <= 2^63 - 1) deterministically.
pub fn factorize(b: u64) -> Result<Factorization> {
    check_base(b)?;
    let mut rest = b;
    let mut factors: Vec<(u64, u32)> = Vec::new();

    for p in TRIAL_PRIMES {
        if p * p > rest {
            break;
        }
        if rest % p == 0 {
            let mut r = 0;
            while rest % p == 0 {
                rest /= p;
                r += 1;
            }
            factors.push((p, r));
        }
    }

    if rest > 1 {
        let mut leftovers = Vec::new();
        split_into_primes(rest, &mut leftovers);
        leftovers.sort_unstable();
        let mut i = 0;
        while i < leftovers.len() {
            let p = leftovers[i];
            let mut r = 0;
            while i < leftovers.len() && leftovers[i] == p {
                r += 1;
                i += 1;
            }
            factors.push((p, r));
        }
    }

    factors.sort_unstable_by_key(|&(p, _)| p);
    let f = Factorization { factors };
    debug_assert_eq!(f.value(), b);
    Ok(f)
}

const TRIAL_PRIMES: [u64; 54] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89,
    97, 101, 103, 107, 109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173, 179, 181, 191,
    193, 197, 199, 211, 223, 227, 229, 233, 239, 241, 251,
];

fn split_into_primes(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        out.push(n);
        return;
    }
    let d = pollard_rho(n);
    split_into_primes(d, out);
    split_into_primes(n / d, out);
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for u64 (the 12 smallest prime witnesses
/// cover the full 64-bit range).
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Brent-cycle Pollard rho; returns a nontrivial factor of composite odd `n`.
fn pollard_rho(n: u64) -> u64 {
    debug_assert!(n > 1 && !is_prime(n) && n % 2 != 0);
    for c in 1u64.. {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut d) = (2u64, 2u64, 1u64);
        let mut saved = 2u64;
        let mut power = 1u64;
        let mut lam = 1u64;
        let mut q = 1u64;
        let mut steps = 0u64;
        while d == 1 {
            if power == lam {
                x = y;
                power *= 2;
                lam = 0;
            }
            saved = y;
            y = f(y);
            lam += 1;
            q = mul_mod(q, x.abs_diff(y), n);
            steps += 1;
            if steps % 128 == 0 {
                d = gcd(q, n);
            }
        }
        if d == n {
            // Backtrack one block with plain gcd per step.
            let mut y = saved;
            d = 1;
            while d == 1 {
                y = f(y);
                d = gcd(x.abs_diff(y), n);
            }
        }
        if d != n && d != 1 {
            return d;
        }
    }
    unreachable!()
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = b;
        b = a % b;
        a = t;
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorize_examples() {
        assert_eq!(factorize(10).unwrap().factors(), &[(2, 1), (5, 1)]);
        assert_eq!(factorize(81).unwrap().factors(), &[(3, 4)]);
        assert_eq!(
            factorize(360).unwrap().factors(),
            &[(2, 3), (3, 2), (5, 1)]
        );
    }

    #[test]
    fn rejects_out_of_range() {
        assert_eq!(factorize(0), Err(Error::InvalidBase(0)));
        assert_eq!(factorize(1), Err(Error::InvalidBase(1)));
        assert!(factorize(u64::MAX).is_err());
    }

    #[test]
    fn prime_power_detection() {
        assert_eq!(is_prime_power(&factorize(343).unwrap()), Some((7, 3)));
        assert_eq!(is_prime_power(&factorize(10).unwrap()), None);
        assert_eq!(is_prime_power(&factorize(2).unwrap()), Some((2, 1)));
    }

    #[test]
    fn squarefree_detection() {
        assert!(is_squarefree(&factorize(30).unwrap()));
        assert!(!is_squarefree(&factorize(12).unwrap()));
        assert!(is_squarefree(&factorize(2).unwrap()));
    }

    #[test]
    fn factors_large_semiprime() {
        let n = 1_000_003u64 * 1_000_033;
        let f = factorize(n).unwrap();
        assert_eq!(f.factors(), &[(1_000_003, 1), (1_000_033, 1)]);
        assert_eq!(f.value(), n);
    }

    #[test]
    fn factors_prime_power_word_sized() {
        // 3^37 is close to the 63-bit cap.
        let n = 3u64.pow(37);
        assert_eq!(factorize(n).unwrap().factors(), &[(3, 37)]);
    }

    #[test]
    fn primality_spot_checks() {
        assert!(is_prime(2));
        assert!(is_prime(65_537));
        assert!(!is_prime(65_536));
        assert!(is_prime(2_147_483_647));
        assert!(!is_prime(3_215_031_751)); // strong pseudoprime to bases 2,3,5,7
        assert!(is_prime((1 << 61) - 1));
    }

    #[test]
    fn agrees_with_naive_on_small_range() {
        for b in 2u64..=20_000 {
            let f = factorize(b).unwrap();
            assert_eq!(f.value(), b, "reconstruction failed for {b}");
            let mut rest = b;
            let mut naive = Vec::new();
            let mut d = 2u64;
            while d * d <= rest {
                if rest % d == 0 {
                    let mut r = 0;
                    while rest % d == 0 {
                        rest /= d;
                        r += 1;
                    }
                    naive.push((d, r));
                }
                d += 1;
            }
            if rest > 1 {
                naive.push((rest, 1));
            }
            assert_eq!(f.factors(), naive.as_slice(), "mismatch for {b}");
        }
    }
}
