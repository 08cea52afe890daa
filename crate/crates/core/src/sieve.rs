//! Sieving-sequence evaluation.
//!
//! A sequence `(x_1, ..., x_m)` drives the division-free recurrence
//!
//! ```text
//! f_0 = 1,  f_1 = F(x_1),
//! f_m = f_{m-2} + x_m * sum_{j=1..d} (D^j F)(N_{m-1}) * (x_m * f_{m-1})^{j-1}
//! ```
//!
//! where `D^j F` is the `j`-th Hasse derivative and `N_k = sum_{i<=k} x_i *
//! f_{i-1}`. Every prefix satisfies the product identity `F(N_m) = f_{m-1}
//! * f_m`, so a sequence is a complete, division-free description of a
//! factorization of a polynomial value. For quadratics the inner sum
//! collapses to `x_m * F'(N_{m-1}) + a * x_m^2 * f_{m-1}`, which
//! [`eval_quadratic`] exploits.
//!
//! [`expand_to_binary`] rewrites a sequence with no zero entries over the
//! alphabet `{-1, 0, 1}`: each entry `x` becomes its sign repeated `|x|`
//! times with single zeros in between (`2|x| - 1` entries), leaving the
//! final triple `(f_{m-1}, f_m, N_m)` unchanged.
//!
//! Evaluation asserts the product identity at every step; a violation is an
//! implementation defect and panics.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::bigarith::{hasse_derivative, Int};
use crate::error::Error;
use crate::poly::Polynomial;

/// The complete result of evaluating a sieving sequence: the sequence, the
/// factor chain `f_0..f_m`, the partial sums `N_0..N_m`, and the polynomial
/// they belong to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SieveTrace {
    poly: Polynomial,
    seq: Vec<Int>,
    factors: Vec<Int>,
    partial_sums: Vec<Int>,
}

impl SieveTrace {
    /// The polynomial the trace was evaluated against.
    pub fn poly(&self) -> &Polynomial {
        &self.poly
    }

    /// The driving sequence `x_1..x_m`.
    pub fn seq(&self) -> &[Int] {
        &self.seq
    }

    /// The factor chain `f_0..f_m` (length `m + 1`, starts at 1).
    pub fn factors(&self) -> &[Int] {
        &self.factors
    }

    /// The partial sums `N_0..N_m` (length `m + 1`, starts at 0).
    pub fn partial_sums(&self) -> &[Int] {
        &self.partial_sums
    }

    /// Number of sequence entries `m`.
    pub fn len(&self) -> usize {
        self.seq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seq.is_empty()
    }

    /// `N_m`, the point whose value the trace factors.
    pub fn final_point(&self) -> &Int {
        self.partial_sums.last().expect("partial sums start at N_0")
    }

    /// `(f_{m-1}, f_m)` with `F(N_m) = f_{m-1} * f_m`; `None` when `m = 0`.
    pub fn final_pair(&self) -> Option<(&Int, &Int)> {
        match self.factors.as_slice() {
            [] | [_] => None,
            [.., a, b] => Some((a, b)),
        }
    }
}

fn check_product_identity(poly: &Polynomial, m: usize, point: &Int, f_prev: &Int, f_cur: &Int) {
    assert_eq!(
        poly.eval(point),
        f_prev * f_cur,
        "internal identity violation: F(N_{m}) != f_{} * f_{m} (N_{m} = {point})",
        m - 1,
    );
}

/// Evaluates `seq` against `poly` (any degree >= 1) with the general
/// Hasse-derivative recurrence.
pub fn eval(poly: &Polynomial, seq: &[Int]) -> Result<SieveTrace, Error> {
    let d = match poly.degree() {
        Some(d) if d >= 1 => d,
        _ => return Err(Error::DegreeTooLow),
    };
    let derivs: Vec<Polynomial> = (1..=d).map(|j| hasse_derivative(poly, j)).collect();

    let mut factors = vec![Int::one()];
    let mut sums = vec![Int::zero()];
    for (i, x) in seq.iter().enumerate() {
        let m = i + 1;
        let f_prev = factors[m - 1].clone();
        let f_cur = if m == 1 {
            poly.eval(x)
        } else {
            let t = x * &f_prev;
            let mut acc = Int::zero();
            let mut t_pow = Int::one();
            for dj in &derivs {
                acc += dj.eval(&sums[m - 1]) * &t_pow;
                t_pow *= &t;
            }
            &factors[m - 2] + x * acc
        };
        let point = &sums[m - 1] + x * &f_prev;
        check_product_identity(poly, m, &point, &f_prev, &f_cur);
        factors.push(f_cur);
        sums.push(point);
    }
    Ok(SieveTrace { poly: poly.clone(), seq: seq.to_vec(), factors, partial_sums: sums })
}

/// Evaluates `seq` against a quadratic with the short recurrence
/// `f_m = f_{m-2} + x_m * F'(N_{m-1}) + a * x_m^2 * f_{m-1}`.
///
/// Produces exactly the same trace as [`eval`]; errors unless the degree
/// is 2.
pub fn eval_quadratic(poly: &Polynomial, seq: &[Int]) -> Result<SieveTrace, Error> {
    let (a, _, _) = poly.quad_coeffs()?;
    let a = a.clone();
    let deriv = poly.derivative();

    let mut factors = vec![Int::one()];
    let mut sums = vec![Int::zero()];
    for (i, x) in seq.iter().enumerate() {
        let m = i + 1;
        let f_prev = factors[m - 1].clone();
        let f_cur = if m == 1 {
            poly.eval(x)
        } else {
            &factors[m - 2] + x * deriv.eval(&sums[m - 1]) + &a * x * x * &f_prev
        };
        let point = &sums[m - 1] + x * &f_prev;
        check_product_identity(poly, m, &point, &f_prev, &f_cur);
        factors.push(f_cur);
        sums.push(point);
    }
    Ok(SieveTrace { poly: poly.clone(), seq: seq.to_vec(), factors, partial_sums: sums })
}

/// The `{-1, 0, 1}` expansion of a single nonzero entry: its sign repeated
/// `|x|` times, separated by single zeros (`2|x| - 1` entries).
fn binary_run(x: &Int) -> Vec<Int> {
    let s = x.signum();
    let mut out = vec![s.clone()];
    let mut left: Int = x.abs() - 1;
    while left.is_positive() {
        out.push(Int::zero());
        out.push(s.clone());
        left -= 1;
    }
    out
}

/// Rewrites the trace's sequence over the alphabet `{-1, 0, 1}` and
/// re-evaluates.
///
/// Requires a nonempty sequence with no zero entries (a zero entry leaves
/// `N` unchanged and merely swaps the factor pair, so it carries no sign to
/// peel; strip such entries first). The expanded trace has length
/// `sum (2|x_i| - 1)` and the same final triple `(f_{m-1}, f_m, N_m)`.
pub fn expand_to_binary(trace: &SieveTrace) -> Result<SieveTrace, Error> {
    if trace.seq.is_empty() {
        return Err(Error::EmptySequence);
    }
    if let Some(index) = trace.seq.iter().position(Zero::is_zero) {
        return Err(Error::ZeroSequenceEntry { index });
    }

    let mut expanded = Vec::new();
    let mut expected_len = Int::zero();
    for x in &trace.seq {
        expanded.extend(binary_run(x));
        expected_len += Int::from(2) * x.abs() - 1;
    }
    assert_eq!(Int::from(expanded.len()), expected_len, "internal defect: expansion length");

    let out = eval(&trace.poly, &expanded)?;
    assert_eq!(
        out.final_point(),
        trace.final_point(),
        "internal identity violation: binary expansion moved N_m"
    );
    assert_eq!(
        out.final_pair(),
        trace.final_pair(),
        "internal identity violation: binary expansion changed the factor pair"
    );
    Ok(out)
}
