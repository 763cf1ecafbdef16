//! Exact Euler characteristics (magnitudes) of finite categories, finite
//! bicategories and recursive hom-data towers, together with the supporting
//! constructions: composition-table validation, skeleta, products,
//! coproducts, equivalence testing, nerves and inner-horn filling.
//!
//! All arithmetic is over ℚ with arbitrary-precision integers.

pub mod arith;
pub mod catalog;
pub mod cli;
pub mod exec;
pub mod fincat;
pub mod format;
pub mod higher;
pub mod magnitude;
pub mod simplicial;

pub use arith::{q_canonical, solve_affine, ArithError, LinearSolution, QMatrix, Rational};
pub use exec::Exec;
pub use fincat::{FinCat, Functor, IsoPartition, RawCategory, SearchBudget};
pub use magnitude::{euler_char, EulerResult, Weighting};

/// Search budget used when none is supplied (nodes visited).
pub const DEFAULT_BUDGET: u64 = 10_000_000;
