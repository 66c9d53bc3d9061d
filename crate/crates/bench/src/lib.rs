//! Shared fixtures for the criterion benches.

use liecurrent::{build_algebra, AlgebraType, LieAlgebraData};

pub fn algebra(kind: AlgebraType) -> LieAlgebraData {
    build_algebra(kind).expect("supported algebra")
}
