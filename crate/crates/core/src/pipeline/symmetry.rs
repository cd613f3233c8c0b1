use num_complex::Complex64;
use std::f64::consts::TAU;

use super::PipelineError;
use crate::hardy_numerics::CoefficientSeries;

/// Keeps the coefficients of index ≡ 1 mod M, i.e. averages f(ωz)/ω over
/// the M-th roots of unity.
pub fn symmetrize(f: &CoefficientSeries, m: usize) -> Result<CoefficientSeries, PipelineError> {
    if m == 0 {
        return Err(PipelineError::BadConfig("symmetry order 0".into()));
    }
    let c = f.coeffs().iter().enumerate().map(|(n, &a)| if n % m == 1 % m { a } else { Complex64::new(0.0, 0.0) }).collect();
    Ok(CoefficientSeries::new(c, f.declared_radius))
}

/// For f̃ = z·P(z^M) returns f̌ = z·P(z)^M, truncated to `n` terms.
pub fn desymmetrize(f: &CoefficientSeries, m: usize, n: usize) -> Result<CoefficientSeries, PipelineError> {
    if m == 0 || n < 2 {
        return Err(PipelineError::BadConfig(format!("desymmetrize with M = {m}, n = {n}")));
    }
    let c = f.coeffs();
    if let Some((idx, _)) = c.iter().enumerate().find(|&(i, a)| i % m != 1 % m && a.norm() > 0.0) {
        return Err(PipelineError::NotSymmetric { index: idx, order: m });
    }
    let p: Vec<Complex64> = c.iter().skip(1).step_by(m).copied().collect();
    if p.first().map_or(true, |a| a.norm() == 0.0) {
        return Err(PipelineError::ZeroLeadingCoefficient);
    }
    let pm = CoefficientSeries::new(p, 1.0).power(m as u32, n - 1);
    let mut out = vec![Complex64::new(0.0, 0.0)];
    out.extend_from_slice(pm.coeffs());
    Ok(CoefficientSeries::new(out, f.declared_radius))
}

/// Largest |f̃(w)^M − f̌(z)| over all M roots w of each z, relative to
/// max |f̌(z)|. Zero when f̌ is well defined.
pub fn branch_consistency(tilde: &CoefficientSeries, check: &CoefficientSeries, m: usize, points: &[Complex64]) -> f64 {
    let mut worst: f64 = 0.0;
    let mut scale: f64 = 0.0;
    for &z in points {
        let target = check.eval(z);
        scale = scale.max(target.norm());
        let w0 = Complex64::from_polar(z.norm().powf(1.0 / m as f64), z.arg() / m as f64);
        for j in 0..m {
            let w = w0 * Complex64::from_polar(1.0, TAU * j as f64 / m as f64);
            worst = worst.max((tilde.eval(w).powu(m as u32) - target).norm());
        }
    }
    if scale > 0.0 {
        worst / scale
    } else {
        worst
    }
}
