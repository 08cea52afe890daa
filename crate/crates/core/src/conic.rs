//! Lattice points on the factorization conic.
//!
//! For a quadratic `F = ax^2 + bx + c` and a target `n`, the conic is
//!
//! ```text
//! C(n): a X^2 + b X Y + c Y^2 + X - n Y = 0.
//! ```
//!
//! Matrices in `Gamma_a` (twisted determinant one) project onto integer
//! points of these conics by `(X, Y) = (beta*gamma, beta*delta)`; the
//! fibers are `{A, -A}` except over the exceptional points with `Y = 0`,
//! whose fibers are the whole K-classes. Pulling a point with `Y != 0`
//! back through [`point_to_matrix`] and evaluating the quadratic forms
//! turns each lattice point into a factorization `F(n) = factor0 *
//! factor1`, so enumerating `C(n)` enumerates presentations of `F(n)`.
//!
//! Which points exist with `Y = 0` depends only on `a`: `(0, 0)` always
//! (the trivial presentation `1 * F(n)`), `(-1, 0)` exactly when `a = 1`,
//! and `(1, 0)` exactly when `a = -1` (both give `F(n) * 1`).
//!
//! Substituting `U = D*Y + (b + 2an)` and `V = 2aX + bY + 1` (with
//! `D = b^2 - 4ac`) turns the conic into the generalized Pell equation
//! `U^2 - D V^2 = 4a F(n)`, which [`pell_reduce`] computes per point.

use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::bigarith::{gcd, isqrt, Int};
use crate::error::Error;
use crate::gamma::{evaluate_forms, GammaMatrix};
use crate::poly::{floor_div, Polynomial};

/// A quadratic together with the target value `n`: determines the conic
/// `C(n)` above.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConicInstance {
    poly: Polynomial,
    n: Int,
}

impl ConicInstance {
    /// Builds an instance; the polynomial must be an honest quadratic.
    pub fn new(poly: Polynomial, n: Int) -> Result<Self, Error> {
        poly.quad_coeffs()?;
        Ok(ConicInstance { poly, n })
    }

    pub fn poly(&self) -> &Polynomial {
        &self.poly
    }

    pub fn n(&self) -> &Int {
        &self.n
    }

    /// `b^2 - 4ac`, the conic's type: negative = ellipse (finite point
    /// set), zero = parabola, positive = hyperbola.
    pub fn discriminant(&self) -> Int {
        self.poly.quad_discriminant().expect("validated quadratic")
    }

    /// Exact membership test for `(X, Y)`.
    pub fn contains(&self, p: &LatticePoint) -> bool {
        let (a, b, c) = self.poly.quad_coeffs().expect("validated quadratic");
        let LatticePoint { x, y } = p;
        (a * x * x + b * x * y + c * y * y + x - &self.n * y).is_zero()
    }
}

/// An integer point `(X, Y)`; ordering is lexicographic, which is the
/// order [`enumerate_points`] returns.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LatticePoint {
    pub x: Int,
    pub y: Int,
}

impl LatticePoint {
    pub fn new(x: Int, y: Int) -> Self {
        LatticePoint { x, y }
    }

    pub fn from_i64(x: i64, y: i64) -> Self {
        LatticePoint { x: Int::from(x), y: Int::from(y) }
    }
}

/// A solution of `U^2 - D V^2 = 4a F(n)` obtained from a conic point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PellPoint {
    pub u: Int,
    pub v: Int,
    /// The Pell discriminant `D = b^2 - 4ac`.
    pub d: Int,
}

/// All integer points of the conic, sorted lexicographically with no
/// duplicates.
///
/// For an ellipse (`D < 0`) the Y-range is computed exactly from the
/// discriminant of the X-equation and no box is needed; otherwise a box
/// bound `B` is required and points are searched (and reported) within
/// `|X| <= B, |Y| <= B`. A supplied box also filters the elliptic case.
pub fn enumerate_points(
    inst: &ConicInstance,
    bound: Option<&Int>,
) -> Result<Vec<LatticePoint>, Error> {
    let (a, b, _) = inst.poly.quad_coeffs()?;
    let d = inst.discriminant();
    // X-equation per row Y: aX^2 + (bY + 1)X + (cY^2 - nY) = 0, whose
    // discriminant is D Y^2 + (2b + 4an) Y + 1.
    let e = Int::from(2) * b + Int::from(4) * a * &inst.n;

    let (y_lo, y_hi) = if d.is_negative() {
        // Downward parabola in Y: real-root window of D y^2 + e y + 1,
        // widened by one, then filtered exactly below.
        let inner = &e * &e - Int::from(4) * &d;
        let s = isqrt(&inner).expect("e^2 - 4d > 0 for d < 0");
        let den = Int::from(2) * &d;
        let r1 = floor_div(&(-&e - &s), &den);
        let r2 = floor_div(&(-&e + &s), &den);
        (r1.clone().min(r2.clone()) - 1, r1.max(r2) + 1)
    } else {
        match bound {
            Some(bb) => (-bb.abs(), bb.abs()),
            None => return Err(Error::UnboundedConic),
        }
    };

    let two_a = Int::from(2) * a;
    let mut points = Vec::new();
    let mut y = y_lo;
    while y <= y_hi {
        let disc = &d * &y * &y + &e * &y + Int::one();
        if !disc.is_negative() {
            let s = isqrt(&disc).expect("checked sign");
            if &s * &s == disc {
                let base = -(b * &y + Int::one());
                let numerators = [&base + &s, &base - &s];
                for (i, num) in numerators.iter().enumerate() {
                    if i == 1 && s.is_zero() {
                        continue; // double root: same X twice
                    }
                    if (num % &two_a).is_zero() {
                        let x = num / &two_a;
                        if bound.map_or(true, |bb| x.abs() <= bb.abs() && y.abs() <= bb.abs()) {
                            points.push(LatticePoint { x, y: y.clone() });
                        }
                    }
                }
            }
        }
        y += 1;
    }
    points.sort();
    points.dedup();
    for p in &points {
        assert!(inst.contains(p), "internal identity violation: enumerated point off the conic");
    }
    Ok(points)
}

/// Projects a `Gamma_a` member to its conic point `(beta*gamma,
/// beta*delta)`.
///
/// Errors if the matrix is not in `Gamma_a`. The image lies on `C(point)`
/// for the matrix's own evaluation point.
pub fn matrix_to_point(a: &Int, m: &GammaMatrix) -> Result<LatticePoint, Error> {
    let det = m.det_for(a);
    if !det.is_one() {
        return Err(Error::NotInGammaGroup { det });
    }
    Ok(LatticePoint { x: &m.beta * &m.gamma, y: &m.beta * &m.delta })
}

/// Inverts the projection at a non-exceptional point.
///
/// With `g = gcd(X, Y) > 0`, the canonical preimage is
///
/// ```text
/// ( (1 + aX) * g / Y,  g;  X / g,  Y / g )
/// ```
///
/// the representative of the fiber `{A, -A}` with `beta = g > 0`. `Y = 0`
/// is the exceptional fiber (a whole K-class) and is an error, as is a
/// point through which no `Gamma_a` member passes (`Y` must divide
/// `X * (1 + aX)`).
pub fn point_to_matrix(a: &Int, p: &LatticePoint) -> Result<GammaMatrix, Error> {
    if p.y.is_zero() {
        return Err(Error::ExceptionalPointPreimage);
    }
    let g = gcd(&p.x, &p.y);
    let lift = (Int::one() + a * &p.x) * &g;
    if !(&lift % &p.y).is_zero() {
        return Err(Error::NotOnConic { x: p.x.clone(), y: p.y.clone() });
    }
    let m = GammaMatrix {
        alpha: &lift / &p.y,
        beta: g.clone(),
        gamma: &p.x / &g,
        delta: &p.y / &g,
    };
    assert!(
        m.det_for(a).is_one(),
        "internal identity violation: preimage left Gamma_a"
    );
    Ok(m)
}

/// The factorization presented by a conic point: `(p, q, n)` with
/// `F(n) = p * q`.
///
/// Non-exceptional points go through the matrix preimage and the quadratic
/// forms; the `Y = 0` points give the trivial presentations `(1, F(n))`
/// at `(0, 0)` and `(F(n), 1)` at `(-+1, 0)`.
pub fn point_to_factorization(
    inst: &ConicInstance,
    p: &LatticePoint,
) -> Result<(Int, Int, Int), Error> {
    if !inst.contains(p) {
        return Err(Error::NotOnConic { x: p.x.clone(), y: p.y.clone() });
    }
    let (a, _, _) = inst.poly.quad_coeffs()?;
    let value = inst.poly.eval(&inst.n);
    if p.y.is_zero() {
        // On the conic with Y = 0: aX^2 + X = 0, so X = 0 or aX = -1.
        if p.x.is_zero() {
            return Ok((Int::one(), value, inst.n.clone()));
        }
        return Ok((value, Int::one(), inst.n.clone()));
    }
    let m = point_to_matrix(a, p)?;
    let ev = evaluate_forms(&inst.poly, &m)?;
    assert_eq!(
        ev.point, inst.n,
        "internal identity violation: preimage evaluation point moved"
    );
    assert_eq!(
        &ev.factor0 * &ev.factor1,
        value,
        "internal identity violation: factor pair does not multiply to F(n)"
    );
    Ok((ev.factor0, ev.factor1, inst.n.clone()))
}

/// Maps a conic point to the generalized Pell solution
/// `(U, V) = (D*Y + b + 2an, 2aX + bY + 1)` with `U^2 - D V^2 = 4a F(n)`.
///
/// The reduction degenerates when `D = 0` (error). The identity is
/// asserted before returning.
pub fn pell_reduce(inst: &ConicInstance, p: &LatticePoint) -> Result<PellPoint, Error> {
    let (a, b, _) = inst.poly.quad_coeffs()?;
    let d = inst.discriminant();
    if d.is_zero() {
        return Err(Error::DegeneratePell);
    }
    if !inst.contains(p) {
        return Err(Error::NotOnConic { x: p.x.clone(), y: p.y.clone() });
    }
    let u = &d * &p.y + b + Int::from(2) * a * &inst.n;
    let v = Int::from(2) * a * &p.x + b * &p.y + Int::one();
    let rhs = Int::from(4) * a * inst.poly.eval(&inst.n);
    assert_eq!(
        &u * &u - &d * &v * &v,
        rhs,
        "internal identity violation: Pell reduction off by a factor"
    );
    Ok(PellPoint { u, v, d })
}
