//! Exact Laurent expansions of cluster variables and cluster monomials in
//! skew-symmetric cluster algebras of rank 2 and 3.
//!
//! The closed-form formulas (maximal Dyck paths, the tau-sum "mixed" formula and
//! the hybrid of both) live in [`formulas`]; [`mutation`] provides a brute-force
//! oracle by iterated mutation; [`positivity`] checks the block-by-block
//! decomposition behind the positivity theorem for rank 3.

pub mod cli;
pub mod dyck;
pub mod error;
pub mod formulas;
pub mod laurent;
pub mod mutation;
pub mod positivity;
pub mod sequences;

pub use error::{Error, Result};
pub use laurent::LaurentPolynomial;
