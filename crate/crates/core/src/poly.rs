//! Dense univariate polynomials over the integers.
//!
//! Coefficients are stored lowest degree first with no trailing zeros, so
//! the representation of each polynomial is unique and `==` means equality
//! as polynomials. The zero polynomial is the empty coefficient vector and
//! has no degree.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::bigarith::{hasse_derivative, Int};
use crate::error::Error;

/// Integer polynomial, coefficients lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    coeffs: Vec<Int>,
}

impl Polynomial {
    /// Builds a polynomial from `coeffs` (index = degree), trimming
    /// trailing zeros.
    pub fn new(mut coeffs: Vec<Int>) -> Self {
        while coeffs.last().map_or(false, Zero::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    /// Convenience constructor from machine integers, lowest degree first.
    pub fn from_i64(coeffs: &[i64]) -> Self {
        Polynomial::new(coeffs.iter().map(|&c| Int::from(c)).collect())
    }

    /// The quadratic `a x^2 + b x + c`.
    pub fn quadratic(a: Int, b: Int, c: Int) -> Self {
        Polynomial::new([c, b, a].into())
    }

    /// The zero polynomial.
    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of `x^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> Int {
        self.coeffs.get(k).cloned().unwrap_or_else(Int::zero)
    }

    /// All stored coefficients, lowest degree first, no trailing zeros.
    pub fn coeffs(&self) -> &[Int] {
        &self.coeffs
    }

    /// Leading coefficient, or `None` for the zero polynomial.
    pub fn leading(&self) -> Option<&Int> {
        self.coeffs.last()
    }

    /// `(a, b, c)` of `a x^2 + b x + c`; an error unless the degree is
    /// exactly 2.
    pub fn quad_coeffs(&self) -> Result<(&Int, &Int, &Int), Error> {
        if self.degree() == Some(2) {
            Ok((&self.coeffs[2], &self.coeffs[1], &self.coeffs[0]))
        } else {
            Err(Error::NotQuadratic { degree: self.degree() })
        }
    }

    /// `b^2 - 4ac` of a quadratic.
    pub fn quad_discriminant(&self) -> Result<Int, Error> {
        let (a, b, c) = self.quad_coeffs()?;
        Ok(b * b - Int::from(4) * a * c)
    }

    /// Horner evaluation at `x`.
    pub fn eval(&self, x: &Int) -> Int {
        let mut acc = Int::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Ordinary first derivative.
    pub fn derivative(&self) -> Polynomial {
        if self.coeffs.len() <= 1 {
            return Polynomial::zero();
        }
        Polynomial::new(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, c)| Int::from(i + 1) * c)
                .collect(),
        )
    }

    /// The translate `G(x) = F(x - h)`.
    ///
    /// Coefficient `k` of `G` is the `k`-th Hasse derivative of `F`
    /// evaluated at `-h`, which keeps everything integral.
    pub fn translated(&self, h: &Int) -> Polynomial {
        let minus_h = -h;
        let out: Vec<Int> = (0..self.coeffs.len())
            .map(|k| hasse_derivative(self, k).eval(&minus_h))
            .collect();
        Polynomial::new(out)
    }

    /// `-F`.
    pub fn negated(&self) -> Polynomial {
        Polynomial { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    /// Canonical comma-separated coefficient list, lowest degree first
    /// (used by file formats; `Display` is the human form).
    pub fn coeff_string(&self) -> String {
        use core::fmt::Write;
        let mut s = String::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                s.push(',');
            }
            let _ = write!(s, "{c}");
        }
        s
    }
}

impl fmt::Display for Polynomial {
    /// Human form, highest degree first: `3x^2 + 5x + 11`, `x^2 + x - 11`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let unit_coeff = mag.is_one() && k > 0;
            if !unit_coeff {
                write!(f, "{mag}")?;
            }
            match k {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{k}")?,
            }
        }
        Ok(())
    }
}

/// Floor of the rational `p / q` as an integer (`q != 0`).
pub(crate) fn floor_div(p: &Int, q: &Int) -> Int {
    p.div_floor(q)
}

/// Ceiling of the rational `p / q` as an integer (`q != 0`).
pub(crate) fn ceil_div(p: &Int, q: &Int) -> Int {
    p.div_ceil(q)
}
