//! The short construction from a seed f₀ ∈ K_S with a large exterior value,
//! and the explicit Paley–Wiener example.

mod exterior;
mod paley_wiener;
mod witness;

pub use exterior::{find_exterior_point, sup_bounds, ExteriorPoint, ANGLES, RADII};
pub use paley_wiener::{
    pw_boundary_curve, pw_fixture_eval, pw_fixture_validate, pw_fixture_validate_with, pw_moments_at, PwReport,
    HALFPLANE_RADIUS, HALFPLANE_SAMPLES,
};
pub use witness::{build_short_univalent, default_seed, seed_for_measure, three_summands, ShortProofWitness, SummandCheck};

use thiserror::Error;

use crate::hardy_numerics::NumericsError;
use crate::pipeline::PipelineError;
use crate::univalence::UnivalenceError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ShortProofError {
    #[error(transparent)]
    Numerics(#[from] NumericsError),
    #[error(transparent)]
    Pipeline(#[from] PipelineError),
    #[error("no exterior point met the bound; best ratio |f₀(a)|/(‖f₀‖ + ‖f₀′‖) = {best_ratio:.3e}")]
    NotFound { best_ratio: f64 },
    #[error("membership residual {residual:e} above tolerance")]
    MembershipFailed { residual: f64 },
    #[error("certificate failed: {0}")]
    CertificateFailed(String),
    #[error(transparent)]
    Univalence(#[from] UnivalenceError),
}
