use num_complex::Complex64;
use std::f64::consts::TAU;

use super::ShortProofError;
use crate::hardy_numerics::{continue_with_witness, model_space_membership, CoefficientSeries, InnerFunctionSpec};

pub const RADII: usize = 64;
pub const ANGLES: usize = 1024;
/// Required ratio |f₀(a)| / (‖f₀‖_∞ + ‖f₀′‖_∞).
const FACTOR: f64 = 100.0;
const MEMBERSHIP_TOL: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ExteriorPoint {
    pub a: Complex64,
    /// Value of the pseudocontinuation f₀(a).
    pub value: Complex64,
    pub ratio: f64,
}

/// Upper bounds Σ|c_j| ≥ ‖f₀‖_∞ and Σ j|c_j| ≥ ‖f₀′‖_∞ on the circle.
pub fn sup_bounds(f0: &CoefficientSeries) -> (f64, f64) {
    let s = f0.coeffs().iter().map(|c| c.norm()).sum();
    let d = f0.coeffs().iter().enumerate().map(|(j, c)| j as f64 * c.norm()).sum();
    (s, d)
}

/// Searches 1 < |a| < 2 for |f₀(a)| > 100(‖f₀‖_∞ + ‖f₀′‖_∞), scanning
/// log-spaced radii from the outside in (the pseudocontinuation grows
/// toward the support) and refining 4× around the best point if the
/// coarse grid fails.
pub fn find_exterior_point(f0: &CoefficientSeries, s: &InnerFunctionSpec) -> Result<ExteriorPoint, ShortProofError> {
    let (n0, n1) = sup_bounds(f0);
    let scale = n0 + n1;
    if f0.coeffs().iter().skip(1).all(|c| c.norm() == 0.0) {
        // a constant continues as itself
        return Err(ShortProofError::NotFound { best_ratio: if scale > 0.0 { 1.0 } else { 0.0 } });
    }
    let rep = model_space_membership(f0, s, MEMBERSHIP_TOL)?;
    if !rep.pass {
        return Err(ShortProofError::MembershipFailed { residual: rep.residual });
    }
    let eval = |a: Complex64| -> Option<ExteriorPoint> {
        let value = continue_with_witness(&rep.h, s, a).ok()?;
        let ratio = value.norm() / scale;
        ratio.is_finite().then_some(ExteriorPoint { a, value, ratio })
    };
    // |a| − 1 from 1 down to 1e-3
    let radius = |x: f64| 1.0 + 10f64.powf(-3.0 * x);
    let mut best: Option<ExteriorPoint> = None;
    for i in 0..RADII {
        let rad = radius(i as f64 / (RADII - 1) as f64);
        for j in 0..ANGLES {
            let Some(p) = eval(Complex64::from_polar(rad, TAU * j as f64 / ANGLES as f64)) else { continue };
            if p.ratio > FACTOR {
                return Ok(p);
            }
            if best.map_or(true, |b| p.ratio > b.ratio) {
                best = Some(p);
            }
        }
    }
    let Some(b) = best else {
        return Err(ShortProofError::NotFound { best_ratio: 0.0 });
    };
    // 4× finer patch around the best coarse point
    let (r0, t0) = (b.a.norm(), b.a.arg());
    let dt = TAU / ANGLES as f64;
    let mut top = b;
    for i in -8..=8 {
        let rad = 1.0 + (r0 - 1.0) * 10f64.powf(-3.0 * i as f64 / (4.0 * (RADII - 1) as f64));
        if !(rad > 1.0 && rad < 2.0) {
            continue;
        }
        for j in -8..=8 {
            let Some(p) = eval(Complex64::from_polar(rad, t0 + dt * j as f64 / 4.0)) else { continue };
            if p.ratio > FACTOR {
                return Ok(p);
            }
            if p.ratio > top.ratio {
                top = p;
            }
        }
    }
    Err(ShortProofError::NotFound { best_ratio: top.ratio })
}
