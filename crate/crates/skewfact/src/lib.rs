//! Exact factorization in filtered PBW algebras and univariate Ore rings.
//!
//! The crate factors elements of Weyl, shift, q-Weyl, quantum affine and
//! user-presented PBW algebras by expanding candidate factors over filtration
//! bases and solving the resulting bilinear systems exactly — by exhaustive
//! enumeration over prime fields and by lexicographic Groebner elimination
//! over the rationals. A brute-force census oracle, explicit factorization
//! bounds from the filtration growth function, and a gallery of
//! infinite-factorization identities over localized operator rings round out
//! the toolkit.

pub mod census;
pub mod expr;
pub mod factor;
pub mod field;
pub mod gallery;
pub mod ore;
pub mod pbw;
pub mod presentation;
pub mod report;
pub mod solve;

pub use field::{Field, FieldError};
pub use pbw::{GAlgebra, PbwError, PbwPoly};
