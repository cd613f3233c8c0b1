use num_complex::Complex64;

use super::PipelineError;
use crate::circle_geometry::SingularMeasure;
use crate::hardy_numerics::{
    correlate, membership_from_coefficients, outer_coefficients, theta_coefficients, CoefficientSeries, InnerFunctionSpec,
};

/// Truncation sizes for the smooth function.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SmoothSizes {
    /// Number of coefficients of f kept.
    pub coeffs: usize,
    /// Terms of the outer function F.
    pub outer: usize,
    /// Fourier modes of log(dist/|ζ − e₀|) used to build F.
    pub log_modes: usize,
}

impl Default for SmoothSizes {
    fn default() -> Self {
        Self { coeffs: 2048, outer: 512, log_modes: 512 }
    }
}

/// f = P₊(z̄·F̄·S_μ) with |F| = dist(·, supp μ)^k on the circle.
#[derive(Clone, Debug)]
pub struct SmoothFunction {
    pub coeffs: CoefficientSeries,
    pub outer: CoefficientSeries,
    pub k: u32,
    /// Residual of f against K_{S_μ}, computed from the same coefficients.
    pub membership_residual: f64,
}

impl SmoothFunction {
    pub fn c1(&self) -> Complex64 {
        self.coeffs.get(1)
    }

    /// Σ_{j≥1} (Mj+1)|c_{Mj+1}|.
    pub fn lacunary_sum(&self, m: usize) -> f64 {
        self.coeffs.coeffs().iter().enumerate().skip(m + 1).step_by(m).map(|(n, c)| n as f64 * c.norm()).sum()
    }

    /// Smallest B with |c_j| ≤ B·j^{−p} for j ≥ j0.
    pub fn decay_constant(&self, p: f64, j0: usize) -> f64 {
        self.coeffs.coeffs().iter().enumerate().skip(j0.max(1)).map(|(j, c)| c.norm() * (j as f64).powf(p)).fold(0.0, f64::max)
    }
}

/// Builds f from its coefficients c_n = Σ_m conj(F̂_m)·ŝ_{n+1+m}, which is
/// the nonnegative-frequency part of z̄·F̄·S_μ without sampling S_μ on the
/// circle where it does not converge.
pub fn build_smooth_function(mu: &SingularMeasure, k: u32, sizes: SmoothSizes) -> Result<SmoothFunction, PipelineError> {
    if k < 10 {
        return Err(PipelineError::BadConfig(format!("k = {k} below 10")));
    }
    let set = mu.support()?;
    let outer = outer_coefficients(&set, k, sizes.log_modes, sizes.outer);
    let theta = InnerFunctionSpec::singular(mu.clone());
    let s = theta_coefficients(&theta, sizes.coeffs + sizes.outer + 1)?;
    let c = correlate(&s.coeffs()[1..], outer.coeffs(), sizes.coeffs);
    let membership_residual = membership_from_coefficients(&c, s.coeffs(), 1.0).residual;
    Ok(SmoothFunction { coeffs: CoefficientSeries::new(c, 1.0), outer, k, membership_residual })
}
