//! Matrix presentation of sieving sequences.
//!
//! For a quadratic `F = ax^2 + bx + c`, the group of interest is
//! `Gamma_a`: 2x2 integer matrices `(alpha, beta; gamma, delta)` whose
//! *twisted determinant* `alpha*delta - a*beta*gamma` equals 1. Four
//! integer functionals of such a matrix reproduce a sieve step:
//!
//! ```text
//! det     = alpha*delta - a*beta*gamma
//! point   = alpha*gamma + b*beta*gamma + c*beta*delta      (eta)
//! factor0 = alpha^2 + b*alpha*beta + a*c*beta^2            (phi_0)
//! factor1 = a*gamma^2 + b*gamma*delta + c*delta^2          (phi_1)
//! ```
//!
//! The exact factored identity
//!
//! ```text
//! F(point) - factor0*factor1 = (1 - det) * (c*det + c + b*point)
//! ```
//!
//! holds for *every* integer matrix, so `F(point) = factor0 * factor1`
//! exactly when `det = 1` or `c*det + c + b*point = 0`. [`seq_to_matrix`]
//! walks a sieving sequence through `Gamma_a` so that `factor0`/`factor1`
//! (alternating by step parity) reproduce the sieve's `f_m`; for monic
//! quadratics the same walk is a word in the two transvections
//! `T = (1,1;0,1)` and `U = (1,0;1,1)`.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use crate::bigarith::Int;
use crate::error::Error;
use crate::poly::Polynomial;

/// A 2x2 integer matrix `(alpha, beta; gamma, delta)`, candidate member of
/// `Gamma_a`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GammaMatrix {
    pub alpha: Int,
    pub beta: Int,
    pub gamma: Int,
    pub delta: Int,
}

impl GammaMatrix {
    pub fn new(alpha: Int, beta: Int, gamma: Int, delta: Int) -> Self {
        GammaMatrix { alpha, beta, gamma, delta }
    }

    pub fn from_i64(alpha: i64, beta: i64, gamma: i64, delta: i64) -> Self {
        GammaMatrix::new(Int::from(alpha), Int::from(beta), Int::from(gamma), Int::from(delta))
    }

    pub fn identity() -> Self {
        GammaMatrix::from_i64(1, 0, 0, 1)
    }

    /// The twisted determinant `alpha*delta - a*beta*gamma` (the membership
    /// form of `Gamma_a`; the ordinary determinant is the case `a = 1`).
    pub fn det_for(&self, a: &Int) -> Int {
        &self.alpha * &self.delta - a * &self.beta * &self.gamma
    }

    /// Ordinary matrix product `self * rhs`.
    pub fn mul(&self, rhs: &GammaMatrix) -> GammaMatrix {
        GammaMatrix {
            alpha: &self.alpha * &rhs.alpha + &self.beta * &rhs.gamma,
            beta: &self.alpha * &rhs.beta + &self.beta * &rhs.delta,
            gamma: &self.gamma * &rhs.alpha + &self.delta * &rhs.gamma,
            delta: &self.gamma * &rhs.beta + &self.delta * &rhs.delta,
        }
    }

    /// `-self` (the other representative of the same conic point).
    pub fn negated(&self) -> GammaMatrix {
        GammaMatrix {
            alpha: -&self.alpha,
            beta: -&self.beta,
            gamma: -&self.gamma,
            delta: -&self.delta,
        }
    }
}

impl fmt::Display for GammaMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}; {}, {})", self.alpha, self.beta, self.gamma, self.delta)
    }
}

/// The four functionals of a matrix under a fixed quadratic; see the
/// module docs for the formulas. When `det == 1`, `F(point) = factor0 *
/// factor1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormEvaluation {
    pub det: Int,
    pub point: Int,
    pub factor0: Int,
    pub factor1: Int,
}

impl FormEvaluation {
    /// The factor playing the role of `f_m` after `m` sieve steps:
    /// `factor0` for even `m`, `factor1` for odd `m`.
    pub fn factor_for_step(&self, m: usize) -> &Int {
        if m % 2 == 0 {
            &self.factor0
        } else {
            &self.factor1
        }
    }
}

/// Evaluates the four functionals of `m` under the quadratic `poly`.
pub fn evaluate_forms(poly: &Polynomial, m: &GammaMatrix) -> Result<FormEvaluation, Error> {
    let (a, b, c) = poly.quad_coeffs()?;
    let GammaMatrix { alpha, beta, gamma, delta } = m;
    Ok(FormEvaluation {
        det: m.det_for(a),
        point: alpha * gamma + b * beta * gamma + c * beta * delta,
        factor0: alpha * alpha + b * alpha * beta + a * c * beta * beta,
        factor1: a * gamma * gamma + b * gamma * delta + c * delta * delta,
    })
}

/// Which branch of the factored identity makes `F(point) = factor0 *
/// factor1` hold.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IdentityBranch {
    /// `det = 1` (membership in `Gamma_a`).
    UnitDet,
    /// `c*det + c + b*point = 0` (the second factor vanishes).
    EtaRelation,
    /// Both conditions hold simultaneously.
    Both,
    /// Neither holds; the product identity fails.
    Neither,
}

/// Decides `F(point) == factor0 * factor1` and reports which branch of the
/// factored identity is responsible.
///
/// The boolean always equals `branch != Neither`; that equivalence is the
/// factored identity itself and is asserted.
pub fn identity_holds(
    poly: &Polynomial,
    m: &GammaMatrix,
) -> Result<(bool, IdentityBranch), Error> {
    let (_, b, c) = poly.quad_coeffs()?;
    let ev = evaluate_forms(poly, m)?;
    let holds = poly.eval(&ev.point) == &ev.factor0 * &ev.factor1;
    let unit = ev.det.is_one();
    // The second factor of the identity, evaluated as written even when
    // c = 0 (it degenerates to b*point = 0, still a valid branch).
    let eta_rel = (c * &ev.det + c + b * &ev.point).is_zero();
    let branch = match (unit, eta_rel) {
        (true, true) => IdentityBranch::Both,
        (true, false) => IdentityBranch::UnitDet,
        (false, true) => IdentityBranch::EtaRelation,
        (false, false) => IdentityBranch::Neither,
    };
    assert_eq!(
        holds,
        branch != IdentityBranch::Neither,
        "internal identity violation: factored identity disagrees with direct check at {m}"
    );
    Ok((holds, branch))
}

/// Walks `seq` through `Gamma_a`, returning the whole chain
/// `A_0 = I, A_1, ..., A_m`.
///
/// Step `k -> k+1` adds `x_{k+1}` times a rank-one matrix built from the
/// current row: for even `k` the bottom row gains `x * (alpha, a*beta)`,
/// for odd `k` the top row gains `x * (a*gamma, delta)`. Every member of
/// the chain stays in `Gamma_a` (asserted), and the alternating form value
/// `factor_for_step(k)` of `A_k` equals the sieve's `f_k`.
pub fn seq_to_matrix(poly: &Polynomial, seq: &[Int]) -> Result<Vec<GammaMatrix>, Error> {
    let (a, _, _) = poly.quad_coeffs()?;
    let mut chain = vec![GammaMatrix::identity()];
    for (k, x) in seq.iter().enumerate() {
        let cur = chain.last().expect("chain starts at identity");
        let next = if k % 2 == 0 {
            GammaMatrix {
                alpha: cur.alpha.clone(),
                beta: cur.beta.clone(),
                gamma: &cur.gamma + x * &cur.alpha,
                delta: &cur.delta + x * a * &cur.beta,
            }
        } else {
            GammaMatrix {
                alpha: &cur.alpha + x * a * &cur.gamma,
                beta: &cur.beta + x * &cur.delta,
                gamma: cur.gamma.clone(),
                delta: cur.delta.clone(),
            }
        };
        assert!(
            next.det_for(a).is_one(),
            "internal identity violation: sequence walk left Gamma_a at step {}",
            k + 1
        );
        chain.push(next);
    }
    Ok(chain)
}

/// A word in the transvections `T = (1, 1; 0, 1)` and `U = (1, 0; 1, 1)`:
/// exponent `x_k` applies to `U` for odd `k` and `T` for even `k`, newest
/// on the left, so the word for `(x_1, ..., x_m)` reads
/// `W^{x_m} ... T^{x_2} U^{x_1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransvectionWord {
    exponents: Vec<Int>,
}

impl TransvectionWord {
    /// The exponent list `x_1..x_m` (application order, oldest first).
    pub fn exponents(&self) -> &[Int] {
        &self.exponents
    }

    /// Multiplies the word out. Agrees with `seq_to_matrix` for every
    /// monic quadratic.
    pub fn matrix(&self) -> GammaMatrix {
        let mut acc = GammaMatrix::identity();
        for (i, e) in self.exponents.iter().enumerate() {
            let gen = if i % 2 == 0 {
                // U^e = (1, 0; e, 1)
                GammaMatrix::new(Int::one(), Int::zero(), e.clone(), Int::one())
            } else {
                // T^e = (1, e; 0, 1)
                GammaMatrix::new(Int::one(), e.clone(), Int::zero(), Int::one())
            };
            acc = gen.mul(&acc);
        }
        acc
    }
}

impl fmt::Display for TransvectionWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exponents.is_empty() {
            return write!(f, "I");
        }
        for (pos, (i, e)) in self.exponents.iter().enumerate().rev().enumerate() {
            if pos > 0 {
                write!(f, " ")?;
            }
            let letter = if i % 2 == 0 { "U" } else { "T" };
            write!(f, "{letter}^{e}")?;
        }
        Ok(())
    }
}

/// The transvection word for `seq` (monic case `a = 1`) together with its
/// product matrix.
pub fn transvection_word(seq: &[Int]) -> (TransvectionWord, GammaMatrix) {
    let word = TransvectionWord { exponents: seq.to_vec() };
    let m = word.matrix();
    (word, m)
}

/// Transports a matrix along the translation `G(x) = F(x - h)`.
///
/// For `A` in `Gamma_a` with functionals taken under `F`, the returned
/// `B = (alpha + h*a*beta, beta; gamma + h*delta, delta)` satisfies, under
/// `G`: `det_G[B] = 1`, `point_G[B] = point_F[A] + h`, and both factors
/// are unchanged.
pub fn shift_matrix(poly: &Polynomial, h: &Int, m: &GammaMatrix) -> Result<GammaMatrix, Error> {
    let (a, _, _) = poly.quad_coeffs()?;
    let det = m.det_for(a);
    if !det.is_one() {
        return Err(Error::NotInGammaGroup { det });
    }
    Ok(GammaMatrix {
        alpha: &m.alpha + h * a * &m.beta,
        beta: m.beta.clone(),
        gamma: &m.gamma + h * &m.delta,
        delta: m.delta.clone(),
    })
}

/// Brahmagupta-style composition: for any matrix,
/// `a*(alpha*gamma + c*beta*delta)^2 + c*(alpha*delta - a*beta*gamma)^2 ==
/// (alpha^2 + a*c*beta^2) * (a*gamma^2 + c*delta^2)`.
///
/// Returns whether the two sides agree (they always do; exposed as a
/// checkable predicate rather than an assertion so callers can sweep it).
pub fn brahmagupta_check(a: &Int, c: &Int, m: &GammaMatrix) -> bool {
    let GammaMatrix { alpha, beta, gamma, delta } = m;
    let s = alpha * gamma + c * beta * delta;
    let t = alpha * delta - a * beta * gamma;
    let lhs = a * &s * &s + c * &t * &t;
    let rhs = (alpha * alpha + a * c * beta * beta) * (a * gamma * gamma + c * delta * delta);
    lhs == rhs
}

/// The exceptional families whose form values are forced:
/// members map to the conic points with `Y = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KClass {
    /// `(s, 0; g, s)` with `s = +-1`: `factor0 = 1` (any `a`).
    K1,
    /// `(s, 1; -1, 0)` or `(s, -1; 1, 0)`, only in `Gamma_1`:
    /// `factor1 = 1`.
    K2,
    /// `(s, 1; 1, 0)` or `(s, -1; -1, 0)`, only in `Gamma_{-1}`:
    /// `factor1 = -1`.
    K3,
}

/// Classifies `m` into one of the exceptional families of `Gamma_a`, if it
/// belongs to any.
pub fn exceptional_class(a: &Int, m: &GammaMatrix) -> Option<KClass> {
    let one = Int::one();
    let neg = -Int::one();
    if m.beta.is_zero() && ((m.alpha == one && m.delta == one) || (m.alpha == neg && m.delta == neg))
    {
        return Some(KClass::K1);
    }
    if m.delta.is_zero() {
        if *a == one
            && ((m.beta == one && m.gamma == neg) || (m.beta == neg && m.gamma == one))
        {
            return Some(KClass::K2);
        }
        if *a == neg && ((m.beta == one && m.gamma == one) || (m.beta == neg && m.gamma == neg))
        {
            return Some(KClass::K3);
        }
    }
    None
}
