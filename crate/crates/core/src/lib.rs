//! Exact verification engine for Lie bialgebra structures on current algebras g[x].

pub mod arith;
pub mod error;
pub mod double;
pub mod lie;
pub mod orders;
pub mod report;
pub mod rmatrix;
pub mod trace_ext;

pub use arith::{LaurentPoly, Matrix, MultiPoly, Scalar, TruncSeries};
pub use error::{Error, Result};
pub use lie::{build_algebra, AlgebraType, LieAlgebraData, TensorElem};
