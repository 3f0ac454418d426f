//! An independent cross-check route: explicit matrix models of the
//! rank-one algebras, with every derived quantity (Killing form, grading,
//! Casimir scalars, Iwasawa projections) recomputed from raw matrices
//! rather than read off the tables in [`crate::rootdata`] and
//! [`crate::reps`]. Agreement between the two routes is the point; nothing
//! here consults the closed-form constants except in tests that compare
//! the routes.
//!
//! Exact layers (bases, structure constants, gradings, Casimirs) use
//! rational and quadratic-extension arithmetic. The Iwasawa factorization
//! and the horospherical height function are numeric by nature (they
//! involve QR and logarithms) and live in [`iwasawa`] on top of f64
//! matrices, with explicit residual tolerances.

pub mod algebra;
pub mod casimir;
pub mod iwasawa;
pub mod matrix;

use crate::exactnum::ExactError;
use crate::rootdata::RankOneGroup;
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};
use thiserror::Error;

pub use algebra::{
    build_algebra, restricted_grading, verify_horocycle_brackets, weyl_representative,
    BracketCheck, Grading, GradingDims, MatrixLieAlgebra, MAX_N,
};
pub use casimir::{casimir_scalar, casimir_spectrum, RepKind, Subgroup};
pub use iwasawa::{exp_boost, exp_h0, iwasawa_opposite, phi, random_k, random_n_minus, IwasawaFactors};
pub use matrix::RatMat;

/// Failures of the matrix route.
#[derive(Debug, Error)]
pub enum OracleError {
    /// Guard for families the matrix models do not cover; unreachable with
    /// the current group type, kept so callers can match on it.
    #[error("no matrix model for family {0}")]
    UnsupportedFamily(String),
    #[error("rank parameter n = {n} exceeds the exact-computation limit {max}")]
    SizeLimit { n: u32, max: u32 },
    #[error("restricted-root grading failed: {0}")]
    GradingFailure(String),
    #[error("{0}")]
    NotInAlgebra(String),
    #[error("Casimir is not scalar: off-pattern entry at ({row}, {col})")]
    NotScalar { row: usize, col: usize },
    #[error("orthonormalization produced an out-of-range radicand")]
    RadicandOverflow,
    #[error("exact eigenvalue computation failed: {0}")]
    SpectrumFailure(String),
    #[error("Iwasawa factorization diverged (residual {residual:e})")]
    FactorizationDiverged { residual: f64 },
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// Builds the matrix model for a group once and shares it; repeated lookups
/// return the same immutable handle. Build failures are not cached.
pub fn cached_algebra(group: &RankOneGroup) -> Result<Arc<MatrixLieAlgebra>, OracleError> {
    static CACHE: OnceLock<Mutex<HashMap<RankOneGroup, Arc<MatrixLieAlgebra>>>> =
        OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = cache.lock().expect("algebra cache poisoned").get(group) {
        return Ok(Arc::clone(hit));
    }
    let built = Arc::new(build_algebra(group)?);
    let mut guard = cache.lock().expect("algebra cache poisoned");
    let entry = guard.entry(*group).or_insert_with(|| Arc::clone(&built));
    Ok(Arc::clone(entry))
}
