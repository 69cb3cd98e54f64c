//! Exact scalar and polynomial arithmetic.
//!
//! Everything in this crate is computed over the rationals or over a finite
//! extension `Q[t]/(m)` with `m` squarefree. Extension arithmetic follows the
//! dynamic-evaluation discipline: a zero test either answers "zero" or
//! "invertible", or it reports a factorization of the modulus so the caller
//! can continue on each factor separately.

pub mod ext;
pub mod mpoly;
pub mod resultant;
pub mod upoly;
pub mod zpoly;

use std::fmt;

use num_traits::{One, Zero};

pub use ext::{evaluate_branches, ext_invert, ExtElem, Interrupt, Inversion, Modulus};
pub use mpoly::{ArithOp, Mono, MultiPoly, Poly};
pub use resultant::{
    bivariate_gcd, homogeneous_gcd, resultant_wrt, subresultant_chain_y, sylvester_matrix, ChainEntry, Domain,
};
pub use upoly::{QPoly, UniPoly};
pub use zpoly::ZPoly;

pub use num_bigint::BigInt;

/// Arbitrary-precision rational number, always stored in lowest terms with a
/// positive denominator.
pub type Rational = num_rational::BigRational;

/// Builds a rational from a machine integer.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Builds the rational `n / d`. Panics if `d == 0`.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// A factorization `modulus = left * right` found while testing a zero
/// divisor. Both factors are monic and non-constant.
#[derive(Clone, Debug, PartialEq)]
pub struct Split {
    pub left: QPoly,
    pub right: QPoly,
}

impl fmt::Display for Split {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "modulus splits as ({}) * ({})", self.left, self.right)
    }
}

/// Coefficient field used by the local and global algorithms.
///
/// Implementations carry whatever context they need inside each element, so
/// constants are produced from an existing element (`zero_like`, `lift`).
/// `zero_test` and `inverse` are the only operations allowed to fail, and only
/// by reporting a [`Split`].
pub trait Field: Clone + PartialEq + fmt::Debug + Send + Sync {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn lift(&self, q: &Rational) -> Self;
    /// Structural zero. For reduced representations this coincides with the
    /// mathematical zero.
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    /// `Ok(true)` for zero, `Ok(false)` for a unit.
    fn zero_test(&self) -> std::result::Result<bool, Split>;
    /// Inverse of a nonzero element.
    fn inverse(&self) -> std::result::Result<Self, Split>;

    fn mul_int(&self, k: i64) -> Self {
        self.mul(&self.lift(&rat(k)))
    }
}

impl Field for Rational {
    fn zero_like(&self) -> Self {
        Rational::zero()
    }
    fn one_like(&self) -> Self {
        Rational::one()
    }
    fn lift(&self, q: &Rational) -> Self {
        q.clone()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn zero_test(&self) -> std::result::Result<bool, Split> {
        Ok(Zero::is_zero(self))
    }
    fn inverse(&self) -> std::result::Result<Self, Split> {
        debug_assert!(!Zero::is_zero(self));
        Ok(self.recip())
    }
    fn mul_int(&self, k: i64) -> Self {
        self * BigInt::from(k)
    }
}

/// Squarefree part of a polynomial in a single variable, made monic.
pub fn squarefree_part(p: &MultiPoly) -> Result<MultiPoly> {
    if p.is_zero() {
        return Err(Error::DegenerateFactor);
    }
    let var = p
        .univariate_var()
        .ok_or_else(|| Error::InvalidParameters(format!("not univariate: {p}")))?;
    let u = p.to_univariate(var).expect("checked univariate");
    Ok(MultiPoly::from_univariate(&u.squarefree_q(), var, p.nvars()))
}

/// Crate-wide error type.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("arity mismatch: {0} vs {1}")]
    ArityMismatch(usize, usize),
    #[error("variable index {0} out of range for arity {1}")]
    BadVariable(usize, usize),
    #[error("both polynomials are constant in the eliminated variable")]
    ConstantInVariable,
    #[error("division by zero")]
    DivisionByZero,
    #[error("modulus must be a non-constant squarefree polynomial")]
    BadModulus,
    #[error("factor is not homogeneous: {0}")]
    Inhomogeneous(String),
    #[error("zero or constant factor")]
    DegenerateFactor,
    #[error("singular frame matrix")]
    SingularFrame,
    #[error("curve is not reduced")]
    NotReduced,
    #[error("curves share a common component")]
    CommonComponent,
    #[error("non-isolated singularity at the requested point")]
    NonIsolated,
    #[error("point does not lie on the curve")]
    NotOnCurve,
    #[error("genericity shear budget exhausted after {0} attempts")]
    ShearBudgetExhausted(usize),
    #[error("missing annotation field: {0}")]
    MissingAnnotation(&'static str),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
}

pub type Result<T> = std::result::Result<T, Error>;
