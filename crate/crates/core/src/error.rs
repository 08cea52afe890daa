use core::fmt;

use crate::bigarith::Int;

/// Recoverable failures reported by the library.
///
/// Violations of internal algebraic identities (the sieve product identity,
/// determinant-one preservation, round-trip mismatches) are not represented
/// here: those always indicate an implementation defect and panic instead.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// `trial_divisors(0)` was requested; zero has no finite divisor list.
    ZeroHasNoDivisors,
    /// Integer square root of a negative value.
    NegativeSquareRoot(Int),
    /// An operation restricted to quadratics received a polynomial of a
    /// different degree (`None` means the zero polynomial).
    NotQuadratic { degree: Option<usize> },
    /// Sieve evaluation needs a polynomial of degree at least one.
    DegreeTooLow,
    /// Binary expansion of an empty sequence.
    EmptySequence,
    /// Binary expansion requires all entries nonzero; `index` is the first
    /// offender (zero entries never change `N_m` and must be pre-stripped).
    ZeroSequenceEntry { index: usize },
    /// The matrix is not in `Gamma_a`: its twisted determinant
    /// `alpha*delta - a*beta*gamma` is not 1.
    NotInGammaGroup { det: Int },
    /// `p` is not a positive divisor of `|F(n)|`.
    NotADivisor { p: Int, value: Int },
    /// `F(n) = 0`: no factorization sequence presents a zero value.
    ZeroPolynomialValue { n: Int },
    /// Descent stall: the recursively-factorable criterion fails at `at`
    /// (no admissible residue class contains a strictly smaller value).
    CriterionViolated { at: Int },
    /// Lemma-interval planning refused: the discriminant is a perfect
    /// square, so the closure argument does not apply.
    NotIrreducible,
    /// Lemma-interval planning refused: no finite cutoff is implemented for
    /// this polynomial shape (leading coefficient out of range).
    NoClosureBound,
    /// Range verification called with `lo > hi`.
    EmptyRange,
    /// Enumerating a conic with non-negative discriminant needs a search
    /// box; without one the solution set may be infinite.
    UnboundedConic,
    /// Preimage of an exceptional point (`Y = 0`): the fiber is a whole
    /// K-class, not a single matrix.
    ExceptionalPointPreimage,
    /// The point does not satisfy the conic equation.
    NotOnConic { x: Int, y: Int },
    /// Pell reduction of a conic whose discriminant is zero.
    DegeneratePell,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::ZeroHasNoDivisors => write!(f, "zero has no finite divisor list"),
            Error::NegativeSquareRoot(v) => {
                write!(f, "integer square root of negative value {v}")
            }
            Error::NotQuadratic { degree: Some(d) } => {
                write!(f, "operation requires a degree-2 polynomial (degree is {d})")
            }
            Error::NotQuadratic { degree: None } => {
                write!(f, "operation requires a degree-2 polynomial (got the zero polynomial)")
            }
            Error::DegreeTooLow => write!(f, "sieve evaluation requires degree >= 1"),
            Error::EmptySequence => write!(f, "binary expansion requires a nonempty sequence"),
            Error::ZeroSequenceEntry { index } => {
                write!(f, "zero entries must be pre-stripped (entry {index} is zero)")
            }
            Error::NotInGammaGroup { det } => {
                write!(f, "matrix is not in Gamma_a: determinant form is {det}, expected 1")
            }
            Error::NotADivisor { p, value } => {
                write!(f, "{p} is not a positive divisor of |F(n)| = {value}")
            }
            Error::ZeroPolynomialValue { n } => {
                write!(f, "F({n}) = 0 admits no factorization sequence")
            }
            Error::CriterionViolated { at } => {
                write!(f, "recursively-factorable criterion violated at n = {at}")
            }
            Error::NotIrreducible => write!(
                f,
                "discriminant is a perfect square (polynomial not irreducible): criterion cannot close"
            ),
            Error::NoClosureBound => write!(
                f,
                "no closure bound implemented for this shape: use exhaustive-range mode"
            ),
            Error::EmptyRange => write!(f, "empty verification range (lo > hi)"),
            Error::UnboundedConic => write!(f, "unbounded conic requires a search box"),
            Error::ExceptionalPointPreimage => {
                write!(f, "exceptional point: preimage is a K-class, not a single matrix")
            }
            Error::NotOnConic { x, y } => {
                write!(f, "({x}, {y}) does not satisfy the conic equation")
            }
            Error::DegeneratePell => {
                write!(f, "degenerate conic (b^2 - 4ac = 0): Pell reduction undefined")
            }
        }
    }
}

impl core::error::Error for Error {}
