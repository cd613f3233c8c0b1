use num_complex::Complex64;

use super::PipelineError;
use crate::hardy_numerics::roots_of_unity;

/// Largest k for which the exact integer route fits in i128.
pub const MAX_K: u32 = 20;
const QUADRATURE_POINTS: usize = 1 << 18;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BetaReport {
    pub k: u32,
    /// β from boundary quadrature of z̄²(1 − z̄)^k S₀.
    pub quadrature: f64,
    /// β from the Taylor coefficients of S₀.
    pub coefficients: f64,
    /// c₁ = Σ_j binom(k,j)(−1)^j ŝ_{j+2} (real).
    pub c1: f64,
}

impl BetaReport {
    pub fn beta(&self) -> f64 {
        self.coefficients
    }
}

/// n!·ŝ_n·e for S₀ = e^{−1} exp(−2z/(1−z)), exactly, n = 0..=n_max.
/// From m·b_m = Σ_{j=1..m} j·a_j·b_{m−j} with a_j = −2.
fn s0_scaled_integers(n_max: usize) -> Vec<i128> {
    let mut b = vec![1i128];
    for m in 1..=n_max {
        let mut s = 0i128;
        // (m−1)!/(m−j)! built up incrementally
        let mut falling = 1i128;
        for j in 1..=m {
            if j > 1 {
                falling *= (m - j + 1) as i128;
            }
            s += -2 * j as i128 * falling * b[m - j];
        }
        b.push(s);
    }
    b
}

fn factorial(n: usize) -> i128 {
    (1..=n as i128).product()
}

/// Taylor coefficients ŝ_0..ŝ_n of S₀ = exp((z+1)/(z−1)).
pub fn s0_taylor(n: usize) -> Vec<f64> {
    let e = (-1f64).exp();
    s0_scaled_integers(n).iter().enumerate().map(|(m, &b)| e * b as f64 / factorial(m) as f64).collect()
}

/// β = ½|∫ z̄²(1 − z̄)^k S₀ dm| by two independent routes.
pub fn compute_beta(k: u32) -> Result<BetaReport, PipelineError> {
    if !(10..=MAX_K).contains(&k) {
        return Err(PipelineError::BetaOutOfRange(k));
    }
    let ku = k as usize;
    // coefficient route, exact until the final division
    let b = s0_scaled_integers(ku + 2);
    let top = factorial(ku + 2);
    let mut binom = 1i128;
    let mut sum = 0i128;
    for j in 0..=ku {
        let sign = if j % 2 == 0 { 1 } else { -1 };
        sum += sign * binom * b[j + 2] * (top / factorial(j + 2));
        binom = binom * (ku - j) as i128 / (j + 1) as i128;
    }
    let c1 = (-1f64).exp() * sum as f64 / top as f64;
    let coefficients = 0.5 * c1.abs();

    // boundary route; the integrand vanishes to order k at z = 1
    let mut acc = Complex64::new(0.0, 0.0);
    for z in roots_of_unity(QUADRATURE_POINTS).into_iter().skip(1) {
        let s0 = ((z + 1.0) / (z - 1.0)).exp();
        acc += z.conj().powu(2) * (1.0 - z.conj()).powu(k) * s0;
    }
    let quadrature = 0.5 * (acc / QUADRATURE_POINTS as f64).norm();

    if !((quadrature - coefficients).abs() <= 1e-10) {
        return Err(PipelineError::BetaMismatch { quadrature, coefficients });
    }
    if coefficients == 0.0 {
        return Err(PipelineError::BetaZero(k));
    }
    Ok(BetaReport { k, quadrature, coefficients, c1 })
}
