//! Arbitrary-precision scalar arithmetic: divisor lists, gcd, integer
//! square roots, and Hasse (divided) derivatives.
//!
//! [`Int`] aliases `num_bigint::BigInt`, which carries the ring operations;
//! this module adds the handful of number-theoretic helpers the rest of the
//! crate leans on. `trial_divisors` is deliberately naive trial division:
//! every value it is asked about at desk scale fits comfortably, and the
//! sorted, complete divisor list it returns is used as a test oracle as
//! much as a runtime component, so predictability beats cleverness.

use alloc::vec::Vec;

use num_integer::{binomial, Integer};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;
use crate::poly::Polynomial;

/// Signed arbitrary-precision integer used throughout the crate.
pub type Int = num_bigint::BigInt;

/// Non-negative greatest common divisor, with `gcd(0, 0) = 0`.
pub fn gcd(x: &Int, y: &Int) -> Int {
    x.gcd(y)
}

/// Floor of the square root of a non-negative value.
///
/// Negative input is an error, not a panic, so callers can surface it.
pub fn isqrt(v: &Int) -> Result<Int, Error> {
    if v.is_negative() {
        return Err(Error::NegativeSquareRoot(v.clone()));
    }
    Ok(v.sqrt())
}

/// Does `v` equal `s * s` for some integer `s`?
pub fn is_square(v: &Int) -> bool {
    if v.is_negative() {
        return false;
    }
    let s = v.sqrt();
    &s * &s == *v
}

/// All positive divisors of `|v|` in ascending order.
///
/// `v = 0` is an error (every integer divides zero). The list always starts
/// with 1 and ends with `|v|`, and `d` appears exactly once for each
/// divisor: callers pair `d` with `|v| / d` to walk the factorizations.
pub fn trial_divisors(v: &Int) -> Result<Vec<Int>, Error> {
    if v.is_zero() {
        return Err(Error::ZeroHasNoDivisors);
    }
    let m = v.abs();
    // Fast path: almost everything at desk scale fits in a machine word.
    match m.to_u64() {
        Some(small) => Ok(divisors_u64(small)),
        None => Ok(divisors_big(&m)),
    }
}

fn divisors_u64(m: u64) -> Vec<Int> {
    let mut low = Vec::new();
    let mut high = Vec::new();
    let mut d = 1u64;
    while d <= m / d {
        if m % d == 0 {
            low.push(d);
            if d != m / d {
                high.push(m / d);
            }
        }
        d += 1;
    }
    high.reverse();
    low.extend(high);
    low.into_iter().map(Int::from).collect()
}

fn divisors_big(m: &Int) -> Vec<Int> {
    let mut low = Vec::new();
    let mut high = Vec::new();
    let mut d: Int = Int::one();
    while &d * &d <= *m {
        if (m % &d).is_zero() {
            let q = m / &d;
            if q != d {
                high.push(q);
            }
            low.push(d.clone());
        }
        d += 1;
    }
    high.reverse();
    low.extend(high);
    low
}

/// The `j`-th Hasse derivative of `f`: coefficient `k` of the result is
/// `binomial(k + j, j) * a_{k+j}`.
///
/// Unlike the ordinary `j`-th derivative (which equals `j!` times this),
/// the Hasse derivative keeps the Taylor expansion of `f` integral:
/// `f(u + t) = sum_j (D^j f)(u) * t^j`. `j = 0` returns `f` itself and
/// `j > deg f` returns the zero polynomial.
pub fn hasse_derivative(f: &Polynomial, j: usize) -> Polynomial {
    let coeffs = f.coeffs();
    if j >= coeffs.len() {
        return Polynomial::zero();
    }
    let out: Vec<Int> = (0..coeffs.len() - j)
        .map(|k| binomial(Int::from(k + j), Int::from(j)) * &coeffs[k + j])
        .collect();
    Polynomial::new(out)
}
