pub mod laurent;
pub mod linalg;
pub mod poly;
pub mod scalar;
pub mod series;

pub use laurent::LaurentPoly;
pub use linalg::{Matrix, Vector};
pub use poly::MultiPoly;
pub use scalar::{parse_scalar, q, qf, to_pq, Scalar};
pub use series::{residue_pair, series_inverse, TruncSeries};
