//! Exact arithmetic for recurrence matrices: finitely presented sequences
//! of `2^n × 2^n` matrices closed under taking quarter blocks, together
//! with character-reduced binomial matrices and their determinants.

pub mod binom;
pub mod catalog;
pub mod dense;
pub mod error;
pub mod groups;
pub mod linalg;
pub mod recmat;
pub mod scalar;
pub mod solve;

pub use dense::DenseMatrix;
pub use error::{Error, Result};
pub use recmat::{Presentation, TensorElement};
pub use scalar::{Field, Scalar};
