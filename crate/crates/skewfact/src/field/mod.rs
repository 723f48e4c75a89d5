//! Exact coefficient arithmetic for every ground field used in the crate.
//!
//! A [`Field`] value is a *descriptor* (it may carry context such as a prime
//! modulus or the name of an indeterminate); elements are plain data handled
//! through the descriptor, in the style of ring-object computer algebra
//! kernels. All arithmetic is exact: arbitrary-precision rationals, residues
//! mod p, Gaussian rationals and reduced rational functions. No floating
//! point anywhere.

pub mod gaussian;
pub mod poly;
pub mod prime;
pub mod ratfunc;
pub mod rational;

use std::cmp::Ordering;
use std::fmt;

use rand::RngCore;

pub use gaussian::{GaussianRational, GaussianRationals};
pub use poly::Poly;
pub use prime::PrimeField;
pub use ratfunc::{RatFunc, RatFuncField};
pub use rational::{Rational, Rationals};

/// Errors raised by field-level operations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FieldError {
    DivisionByZero,
    /// Modulus is not a prime in (1, 2^31].
    BadModulus(u64),
    /// Scalar literal could not be parsed.
    BadLiteral(String),
    ZeroPolynomial,
}

impl fmt::Display for FieldError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldError::DivisionByZero => write!(f, "division by zero"),
            FieldError::BadModulus(p) => write!(f, "{} is not a prime in (1, 2^31]", p),
            FieldError::BadLiteral(s) => write!(f, "cannot parse scalar literal {:?}", s),
            FieldError::ZeroPolynomial => write!(f, "zero polynomial"),
        }
    }
}

impl std::error::Error for FieldError {}

/// An exact field with canonical element representations.
///
/// Canonical forms are unique, so `a == b` is structural equality after the
/// canonicalization every operation performs. `cmp_elems` is an arbitrary but
/// deterministic total order used to sort outputs.
pub trait Field: Clone + PartialEq + fmt::Debug + Send + Sync + 'static {
    type Elem: Clone + PartialEq + Eq + std::hash::Hash + fmt::Debug + Send + Sync + 'static;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem, FieldError>;
    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem, FieldError> {
        Ok(self.mul(a, &self.inv(b)?))
    }
    fn from_i64(&self, n: i64) -> Self::Elem;

    /// Deterministic total order on canonical forms.
    fn cmp_elems(&self, a: &Self::Elem, b: &Self::Elem) -> Ordering;

    /// Small random element, used by randomized exactness checks.
    fn sample(&self, rng: &mut dyn RngCore) -> Self::Elem;

    /// Canonical display form, re-readable by [`Field::parse`].
    fn format(&self, a: &Self::Elem) -> String;

    /// True when `format` yields an expression that binds tighter than `*`
    /// (no top-level `+`/`-` after the first character).
    fn format_atomic(&self, a: &Self::Elem) -> bool;

    /// True when the element should display through a leading minus sign.
    fn display_negative(&self, _a: &Self::Elem) -> bool {
        false
    }

    fn parse(&self, s: &str) -> Result<Self::Elem, FieldError>;

    /// Short descriptor, e.g. `QQ`, `F5`, `QQ(i)`, `QQ(x)`.
    fn name(&self) -> String;
}

/// Roots of a univariate polynomial that lie in the base field.
#[derive(Clone, Debug)]
pub struct RootsResult<E> {
    /// Distinct roots with multiplicities.
    pub roots: Vec<(E, usize)>,
    /// True iff the polynomial splits into linear factors over the field,
    /// i.e. the multiplicities sum to the degree. When false, roots exist
    /// only over an extension.
    pub complete: bool,
}

/// Fields over which zero-dimensional polynomial systems can be solved
/// exactly (univariate root extraction within the field).
pub trait SolvableField: Field {
    fn univariate_roots(&self, f: &Poly<Self>) -> Result<RootsResult<Self::Elem>, FieldError>;
}

/// Fields usable as coefficient domains of the factorization backends.
///
/// Finite fields expose exhaustive element enumeration (the enumeration
/// solver); infinite fields return `None` and factor through the Groebner
/// route.
pub trait FactorField: SolvableField {
    fn element_count(&self) -> Option<u64>;
    /// Element with the given index in `0..element_count()`. Panics for
    /// infinite fields.
    fn element_at(&self, index: u64) -> Self::Elem;
}
