//! Exact solving backends: Buchberger/lexicographic elimination for
//! zero-dimensional systems, dense linear algebra, and in-field root
//! extraction for the supported coefficient fields.

pub mod groebner;
pub mod linalg;
pub mod roots;

pub use groebner::{MExp, MOrder, MPoly, PolyCtx, SolveError, SolveOutcome};
pub use linalg::{solve_linear, LinearSolution};
