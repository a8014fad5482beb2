//! Exact tridiagonal canonical forms for matrices under congruence and
//! *congruence, and for symmetric, skew-symmetric and Hermitian matrix
//! pairs, computed through Kronecker forms of the associated pencils.

pub mod error;
pub mod field;
pub mod matrix;
pub mod poly;
pub mod roots;
pub mod pencil;
pub mod summands;
pub mod canon;
pub mod witness;
pub mod io;

pub use canon::{canonicalize, CanonInput, CanonicalDecomposition, Relation};
pub use error::{Error, ErrorCategory, Result};
pub use field::{GaussianRational, Rational, Scalar, TowerElement};
pub use matrix::{ExactMatrix, GMatrix, TMatrix};
pub use pencil::{kronecker_decompose, KroneckerForm, PencilBlock};
pub use summands::{Family, SignTag, Summand, SummandDescriptor};
