use num_complex::Complex64;

use super::inner::InnerFunctionSpec;
use super::series::{correlate, taylor_coefficients, CoefficientSeries};
use super::NumericsError;

/// Largest H² norm accepted by the membership test.
const MAX_NORM: f64 = 1e6;

#[derive(Clone, Debug)]
pub struct MembershipReport {
    /// Energy of the negative frequencies of z̄·f̄·Θ over ‖f‖².
    pub residual: f64,
    pub pass: bool,
    /// Nonnegative-frequency part of z̄·f̄·Θ, the H² witness.
    pub h: CoefficientSeries,
    /// Sample count used for the Taylor coefficients of Θ.
    pub theta_grid: usize,
}

/// Grid size for `count` Taylor coefficients of an inner function.
pub fn theta_grid_size(count: usize) -> usize {
    (6 * count + 6).next_power_of_two().max(4096)
}

/// Taylor coefficients θ̂_0..θ̂_{count−1} of Θ, read off an interior circle.
/// Fails when Σ|θ̂_n|² exceeds 1, which only happens when the grid does
/// not resolve Θ.
pub fn theta_coefficients(theta: &InnerFunctionSpec, count: usize) -> Result<CoefficientSeries, NumericsError> {
    let n_grid = theta_grid_size(count);
    let c = taylor_coefficients(|z| theta.eval(z), n_grid, count)?;
    let energy: f64 = c.coeffs().iter().map(|a| a.norm_sqr()).sum();
    if energy > 1.0 + 1e-8 {
        return Err(NumericsError::GridTooCoarse { energy });
    }
    Ok(c)
}

/// Membership from coefficients. With u = z̄ f̄ Θ on the circle the
/// coefficient of u at frequency −(j+1) is conj(Σ_{n≥j} c_n conj(θ̂_{n−j})),
/// and the witness is ĥ_n = Σ_m conj(c_m) θ̂_{m+n+1}. `theta` needs
/// len(f) terms for the residual and 2·len(f) + 1 for the full witness.
pub fn membership_from_coefficients(f: &[Complex64], theta: &[Complex64], tol: f64) -> MembershipReport {
    let n = f.len();
    let norm2: f64 = f.iter().map(|c| c.norm_sqr()).sum();
    let residual = if norm2 > 0.0 {
        let r = correlate(f, &theta[..n.min(theta.len())], n);
        r.iter().map(|c| c.norm_sqr()).sum::<f64>() / norm2
    } else {
        0.0
    };
    let h = if theta.len() > 1 { correlate(&theta[1..], f, n) } else { vec![Complex64::new(0.0, 0.0); n] };
    MembershipReport { residual, pass: residual < tol, h: CoefficientSeries::new(h, 1.0), theta_grid: 0 }
}

/// Tests f ∈ K_Θ, i.e. z̄ f̄ Θ ∈ H².
pub fn model_space_membership(
    f: &CoefficientSeries,
    theta: &InnerFunctionSpec,
    tol: f64,
) -> Result<MembershipReport, NumericsError> {
    let norm = f.h2_norm();
    if !(norm <= MAX_NORM) {
        return Err(NumericsError::NormTooLarge(norm));
    }
    let count = 2 * f.len() + 1;
    let tc = theta_coefficients(theta, count)?;
    let mut rep = membership_from_coefficients(f.coeffs(), tc.coeffs(), tol);
    rep.theta_grid = theta_grid_size(count);
    Ok(rep)
}

/// f(w) = w⁻¹·conj(h(1/w̄))·Θ(w) for |w| > 1, given the witness h.
pub fn continue_with_witness(h: &CoefficientSeries, theta: &InnerFunctionSpec, w: Complex64) -> Result<Complex64, NumericsError> {
    if !(w.norm() > 1.0) {
        return Err(NumericsError::NotOutsideDisc(w));
    }
    let inv = 1.0 / w.conj();
    Ok(h.eval(inv).conj() * theta.eval(w)? / w)
}

/// Value of the pseudocontinuation of f ∈ K_Θ at |w| > 1.
pub fn pseudocontinuation_eval(
    f: &CoefficientSeries,
    theta: &InnerFunctionSpec,
    w: Complex64,
    tol: f64,
) -> Result<Complex64, NumericsError> {
    let rep = model_space_membership(f, theta, tol)?;
    if !rep.pass {
        return Err(NumericsError::MembershipFailed { residual: rep.residual });
    }
    continue_with_witness(&rep.h, theta, w)
}
