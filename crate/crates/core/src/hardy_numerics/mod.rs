//! Boundary grids and transforms, Taylor series, inner and outer
//! functions, the Riesz projection, model-space membership and the
//! pseudocontinuation across the circle.

mod grid;
mod inner;
mod membership;
mod outer;
mod series;

pub use grid::{
    boundary_samples, fft_forward, fft_inverse, fourier_coefficients, riesz_project, roots_of_unity, series_to_grid,
    BoundaryGrid, FourierCoefficients,
};
pub use inner::{blaschke_factor, eval_singular_inner, InnerFunctionSpec};
pub use membership::{
    continue_with_witness, membership_from_coefficients, model_space_membership, pseudocontinuation_eval,
    theta_coefficients, theta_grid_size, MembershipReport,
};
pub use outer::{anchor_point, eval_outer_from_distance, log_distance_schwarz, log_ratio_coefficients, outer_coefficients};
pub use series::{convolve, correlate, eval_series, taylor_coefficients, taylor_radius, CoefficientSeries};

use num_complex::Complex64;
use thiserror::Error;

use crate::circle_geometry::GeometryError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum NumericsError {
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("grid size {0} is not a power of two at least 16")]
    GridSize(usize),
    #[error("aliasing: top-quarter frequencies carry {tail_energy:e} of the energy")]
    Aliasing { tail_energy: f64 },
    #[error("{count} coefficients requested from a grid of {grid}")]
    TooManyCoefficients { count: usize, grid: usize },
    #[error("grid too coarse: inner function coefficients carry energy {energy}")]
    GridTooCoarse { energy: f64 },
    #[error("Blaschke zero {0} not in the open disc")]
    ZeroOutsideDisc(Complex64),
    #[error("point {0} must lie in the open disc")]
    NotInDisc(Complex64),
    #[error("point {0} must lie outside the closed disc")]
    NotOutsideDisc(Complex64),
    #[error("non-finite value at {0}")]
    NonFinite(Complex64),
    #[error("H² norm {0} too large")]
    NormTooLarge(f64),
    #[error("membership residual {residual:e} above tolerance")]
    MembershipFailed { residual: f64 },
}
