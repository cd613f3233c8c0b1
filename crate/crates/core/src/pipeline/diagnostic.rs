use num_complex::Complex64;
use std::f64::consts::TAU;

use super::PipelineError;
use crate::circle_geometry::{block_entropy, CantorComponent, SingularMeasure, UnitCircleArc, DEFAULT_DEPTH};
use crate::hardy_numerics::eval_outer_from_distance;

/// Radius standing in for the circle: boundary values of F are radial
/// limits, and 1e-9 inside the circle they agree to about k·1e-9/dist.
const EDGE: f64 = 1.0 - 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub struct AsymptoticsReport {
    /// sup |F/(1−z)^k − 1| over the sample set.
    pub outer_deviation: f64,
    /// sup |S_μ/S₀ − 1| over the sample set.
    pub inner_deviation: f64,
    /// Sample points used and skipped (too close to the support).
    pub used: usize,
    pub skipped: usize,
}

/// Cantor measure of mass 1 on [1, e^{2πi·len}].
pub fn cantor_on_arc(len_turns: f64, ratio: f64) -> Result<SingularMeasure, PipelineError> {
    let arc = UnitCircleArc::new(0.0, len_turns)?;
    Ok(SingularMeasure::new(vec![], vec![CantorComponent::new(arc, 1.0, ratio, DEFAULT_DEPTH)?])?)
}

/// Arc length whose Cantor set of the given ratio has entropy `eps`.
pub fn arc_for_entropy(eps: f64, ratio: f64) -> f64 {
    let (mut lo, mut hi) = (1e-300f64.ln(), 0.3f64.ln());
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if block_entropy(mid.exp(), ratio) > eps {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    (0.5 * (lo + hi)).exp()
}

/// Deviations of F from (1−z)^k and of S_μ from S₀ at the boundary points
/// `turns`; points where either side cannot be evaluated are skipped.
pub fn asymptotics_diagnostic(mu: &SingularMeasure, k: u32, turns: &[f64]) -> Result<AsymptoticsReport, PipelineError> {
    let set = mu.support()?;
    let mut rep = AsymptoticsReport { outer_deviation: 0.0, inner_deviation: 0.0, used: 0, skipped: 0 };
    for &t in turns {
        let z = Complex64::from_polar(EDGE, TAU * t);
        let outer = eval_outer_from_distance(&set, k, z);
        let schwarz = mu.schwarz_integral(z);
        let (Ok(f), Ok(s)) = (outer, schwarz) else {
            rep.skipped += 1;
            continue;
        };
        let base = (1.0 - z).powu(k);
        let dev_f = (f / base - 1.0).norm();
        let dev_s = ((-s + (1.0 + z) / (1.0 - z)).exp() - 1.0).norm();
        rep.outer_deviation = rep.outer_deviation.max(dev_f);
        rep.inner_deviation = rep.inner_deviation.max(dev_s);
        rep.used += 1;
    }
    Ok(rep)
}

/// Least-squares slope of log y against log x.
pub fn slope(x: &[f64], y: &[f64]) -> f64 {
    let lx: Vec<f64> = x.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = y.iter().map(|v| v.ln()).collect();
    let n = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let num: f64 = lx.iter().zip(&ly).map(|(a, b)| (a - mx) * (b - my)).sum();
    let den: f64 = lx.iter().map(|a| (a - mx).powi(2)).sum();
    num / den
}
