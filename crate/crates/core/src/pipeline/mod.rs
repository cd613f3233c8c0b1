//! The constructive route to a bounded univalent function in K_{S_μ}:
//! the smooth kernel function, symmetrization, desymmetrization and the
//! conformal correction, plus the existence decision and the asymptotic
//! diagnostics.

mod beta;
mod conformal;
mod decide;
mod diagnostic;
mod run;
mod smooth;
mod symmetry;

pub use beta::{compute_beta, s0_taylor, BetaReport, MAX_K};
pub use conformal::{conformal_correct, mobius, trim_len, ConformalResult};
pub use decide::{decide_existence, Decision};
pub use diagnostic::{arc_for_entropy, asymptotics_diagnostic, cantor_on_arc, slope, AsymptoticsReport};
pub use run::{
    mass_after_pushforward, run_pipeline, solve_radius, AdaptiveRetry, PipelineConfig, Provenance, StageCheck,
    UnivalentWitness,
};
pub use smooth::{build_smooth_function, SmoothFunction, SmoothSizes};
pub use symmetry::{branch_consistency, desymmetrize, symmetrize};

use thiserror::Error;

use crate::circle_geometry::GeometryError;
use crate::hardy_numerics::NumericsError;
use crate::univalence::UnivalenceError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PipelineError {
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
    #[error(transparent)]
    Univalence(#[from] UnivalenceError),
    #[error("invalid configuration: {0}")]
    BadConfig(String),
    #[error("k = {0} outside the supported range 10..=20")]
    BetaOutOfRange(u32),
    #[error("β vanishes for k = {0}")]
    BetaZero(u32),
    #[error("β routes disagree: quadrature {quadrature:e}, coefficients {coefficients:e}")]
    BetaMismatch { quadrature: f64, coefficients: f64 },
    #[error("coefficient {index} is not of the form Mj + 1 for M = {order}")]
    NotSymmetric { index: usize, order: usize },
    #[error("leading coefficient vanishes")]
    ZeroLeadingCoefficient,
    #[error("a = 0 in the conformal correction")]
    ZeroA,
    #[error("Θ(−a) = {0:e} vanishes")]
    ThetaVanishesAtMinusA(f64),
    #[error("pushforward mass {lo} .. {hi} does not bracket 1")]
    MassBracket { lo: f64, hi: f64 },
    #[error("pushforward mass not monotone in r: {0}")]
    MassNotMonotone(String),
    #[error("stage {stage} failed: {detail}")]
    StageFailed { stage: String, detail: String },
    #[error("no (ε, M) passed after {attempts} attempts: {last}")]
    AdaptiveExhausted { attempts: usize, last: String },
}
