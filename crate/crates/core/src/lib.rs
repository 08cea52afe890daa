//! Exact-integer routines for factoring polynomial values through sieving
//! sequences.
//!
//! The central object is a *sieving sequence* `(x_1, ..., x_m)` for a
//! polynomial `F`: it drives a division-free recurrence producing integers
//! `f_0, ..., f_m` and partial sums `N_m = sum x_j * f_{j-1}` such that
//! `F(N_m) = f_{m-1} * f_m` holds at every prefix. Everything else in the
//! crate is a different presentation of that identity:
//!
//! * [`sieve`] evaluates sequences (general and quadratic recurrences) and
//!   rewrites them over the alphabet `{-1, 0, 1}`;
//! * [`gamma`] re-derives the factor pairs from 2x2 integer matrices with
//!   twisted determinant one, via a pair of binary quadratic forms and an
//!   exact factored identity telling when `F(eta) = phi0 * phi1`;
//! * [`conic`] maps those matrices to lattice points on the conic
//!   `aX^2 + bXY + cY^2 + X - nY = 0` and back, enumerates all points, and
//!   reduces them to generalized Pell solutions;
//! * [`descent`] runs the reverse direction: given a divisor of `F(n)` it
//!   searches for a sieving sequence by descent over smaller values, checks
//!   the recursively-factorable criterion pointwise, and emits interval
//!   certificates.
//!
//! All arithmetic is arbitrary precision ([`Int`] is an alias for
//! `num_bigint::BigInt`); nothing here rounds or overflows. The crate is
//! `no_std` (with `alloc`): input/output, file formats and parallelism live
//! in the companion CLI crate.
//!
//! Recoverable problems (bad degrees, divisibility failures, descent
//! stalls, unbounded enumerations) are reported through [`Error`].
//! Violations of the algebraic identities themselves are implementation
//! defects and panic.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod bigarith;
pub mod conic;
pub mod descent;
mod error;
pub mod gamma;
pub mod poly;
pub mod sieve;

pub use bigarith::Int;
pub use error::Error;
pub use poly::Polynomial;
