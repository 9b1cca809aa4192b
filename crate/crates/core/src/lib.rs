//! Exact chain-level computations around cyclic group actions: homotopy
//! orbits, homotopy fixed points and Tate constructions for C_n acting on a
//! bounded complex, Hochschild / cyclic / negative cyclic / periodic homology
//! of algebras and small dgas, the combinatorics of the cyclic category, and
//! a graded fixed-point/Frobenius fiber calculator.
//!
//! All arithmetic is exact (arbitrary-precision integers, Smith normal form);
//! every answer is a finitely generated abelian group in canonical form.

pub mod abelian;
pub mod complex;
pub mod cyclic;
pub mod gen;
pub mod graded_tc;
pub mod lambda;
pub mod matrix;
pub mod mixed;
pub mod snf;

pub use abelian::{homology_at, localized_snf, FinGenAb, LinalgError, RingTag};
pub use complex::{ChainComplex, ChainMap, ComplexError};
pub use cyclic::{CyclicAction, CyclicError, GradedGroupTable, TateWindow};
pub use matrix::IntMatrix;
pub use snf::{smith_normal_form, SmithDecomposition};
