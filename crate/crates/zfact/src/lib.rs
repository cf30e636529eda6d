//! Exact arithmetic for trailing zeroes of factorials in arbitrary bases.
//!
//! `Z_b(n)` is the number of trailing zeroes of n! written in base b. This
//! crate computes it through Legendre's formula over the prime-power
//! decomposition of b, together with the machinery that grows around it:
//!
//! - the density constant `theta(b) = lim Z_b(n)/n` as an exact rational,
//!   with its periodic base-b expansion (minimal preperiod and period);
//! - the digit stream of `theta(b)`, which for prime powers reproduces the
//!   base-b digits of `Z_b(b^k)` exactly;
//! - the anomaly quantities `alpha(b,k)` and `eta(b,k)` measuring how far
//!   the final digits of `Z_b(b^k)` drift from that stream in the general
//!   case, with the proven bounds and the open-conjecture sweeps;
//! - a brute-force factorial oracle and exhaustive verification suites.
//!
//! Everything is integer or rational arithmetic; no floating point is used
//! anywhere, including logarithms (computed as digit lengths).

pub mod anomaly;
pub mod arith;
pub mod cli;
pub mod error;
pub mod factor;
pub mod legendre;
pub mod suites;
pub mod theta;

pub use anomaly::{AnomalyReport, CoincidencePair};
pub use arith::{DigitVector, Natural};
pub use error::{Error, Result, MAX_BASE};
pub use factor::Factorization;
pub use legendre::{ZArg, ZQuery};
pub use theta::{BaseExpansion, PrimePowerPeriod, Rational, Representation};
