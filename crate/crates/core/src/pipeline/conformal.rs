use num_complex::Complex64;

use super::PipelineError;
use crate::hardy_numerics::{
    boundary_samples, fourier_coefficients, membership_from_coefficients, taylor_coefficients, theta_grid_size,
    CoefficientSeries, InnerFunctionSpec, NumericsError,
};

/// φ_a(z) = (z − a)/(1 − āz).
pub fn mobius(a: Complex64, z: Complex64) -> Complex64 {
    (z - a) / (1.0 - a.conj() * z)
}

/// Number of leading coefficients carrying all but `rel` of the energy.
pub fn trim_len(c: &[Complex64], rel: f64) -> usize {
    let total: f64 = c.iter().map(|x| x.norm_sqr()).sum();
    let mut tail = 0.0;
    for (i, x) in c.iter().enumerate().rev() {
        tail += x.norm_sqr();
        if tail > rel * total {
            return (i + 1).max(2);
        }
    }
    2
}

#[derive(Clone, Debug)]
pub struct ConformalResult {
    pub g: CoefficientSeries,
    pub c_f: Complex64,
    /// Taylor coefficients of Θ̃ = Θ∘φ_a, as many as g has.
    pub theta_tilde: CoefficientSeries,
    /// Residual of g against K_Θ̃.
    pub residual: f64,
    /// Energy fraction of f∘φ_a in the top-quarter frequencies.
    pub tail_energy: f64,
}

/// Lemma conf: for f ∈ K_Θ, g = f∘φ_a − c_f lies in K_{Θ∘φ_a}, where
/// c_f = conj(−a·h(0)/Θ̃(0)) and h = conj(φ_a·f∘φ_a)·Θ̃ on the circle.
pub fn conformal_correct(
    f: &CoefficientSeries,
    theta: &InnerFunctionSpec,
    a: Complex64,
    n_grid: usize,
) -> Result<ConformalResult, PipelineError> {
    if a.norm() == 0.0 {
        return Err(PipelineError::ZeroA);
    }
    if !(a.norm() < 1.0) {
        return Err(PipelineError::BadConfig(format!("|a| = {} not below 1", a.norm())));
    }
    let theta0 = theta.eval(-a)?;
    if !(theta0.norm() > 1e-300) {
        return Err(PipelineError::ThetaVanishesAtMinusA(theta0.norm()));
    }
    let raw = fourier_coefficients(&boundary_samples(|z| f.eval(mobius(a, z)), n_grid)?);
    raw.check_aliasing()?;
    let shifted = fourier_coefficients(&boundary_samples(|z| mobius(a, z) * f.eval(mobius(a, z)), n_grid)?);
    let half = n_grid / 2;
    let mut g: Vec<Complex64> = raw.values[..half].to_vec();
    let keep = trim_len(&g, 1e-30);
    g.truncate(keep);

    let tt = taylor_coefficients::<NumericsError, _>(|z| theta.eval(mobius(a, z)), theta_grid_size(keep), keep)?;
    let h0: Complex64 = tt.coeffs().iter().zip(&shifted.values[..keep]).map(|(t, u)| t * u.conj()).sum();
    let c_f = (-a * h0 / theta0).conj();
    g[0] -= c_f;
    let residual = membership_from_coefficients(&g, tt.coeffs(), 1.0).residual;
    Ok(ConformalResult { g: CoefficientSeries::new(g, 1.0), c_f, theta_tilde: tt, residual, tail_energy: raw.tail_energy })
}
