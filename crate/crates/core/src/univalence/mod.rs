//! Univalence certificates: the coefficient criterion, simplicity of the
//! sampled boundary curve, and winding counts by the argument principle.

mod curve;

pub use curve::{
    polygon_distance, polygon_winding, segment_distance, segments_intersect, ClosedPolyline, NearApproach, SweepOutcome,
    CLEARANCE_FACTOR,
};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::{PI, TAU};
use thiserror::Error;

use crate::hardy_numerics::CoefficientSeries;

/// Largest sample count the refinement policy goes to.
pub const MAX_SAMPLES: usize = 1 << 20;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum UnivalenceError {
    #[error("f'(0) = 0")]
    ZeroDerivativeAtOrigin,
    #[error("sample count {0} must be a power of two at least 16")]
    BadSampleCount(usize),
    #[error("radius {0} outside (0, 1)")]
    BadRadius(f64),
    #[error("curve crosses itself between parameters {t_a} and {t_b} (turns)")]
    SelfIntersection { t_a: f64, t_b: f64 },
    #[error("curve diameter {0:e} below 1e-12")]
    DegenerateCurve(f64),
    #[error("near approach {distance:e} not resolved at {samples} samples")]
    Inconclusive { distance: f64, samples: usize },
    #[error("winding number {count} around {target} (expected 1)")]
    WindingMismatch { target: Complex64, count: i64 },
    #[error("f − w vanishes within {0:e} of the contour")]
    ZeroOnContour(f64),
    #[error("argument increment not resolved at {0} samples")]
    WindingUnresolved(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CertificateMethod {
    CoefficientCriterion,
    BoundarySimplicity,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct UnivalenceCertificate {
    pub method: CertificateMethod,
    /// Disc radius, or the semidisc radius R for half-plane certificates.
    pub radius: f64,
    pub margin: f64,
    pub sample_count: usize,
    pub winding_checks: Vec<(Complex64, i64)>,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CriterionReport {
    pub pass: bool,
    /// |c₁| − Σ_{j≥2} j|c_j|.
    pub margin: f64,
    /// Size (N−1)|c_{N−1}| of the last term kept, a proxy for the tail.
    pub last_term: f64,
}

/// Σ_{j≥2} j|c_j| < |c₁| gives Re(f′/c₁) > 0 on the disc, hence
/// univalence.
pub fn coefficient_criterion(c: &CoefficientSeries) -> Result<CriterionReport, UnivalenceError> {
    let c1 = c.get(1).norm();
    if c1 == 0.0 {
        return Err(UnivalenceError::ZeroDerivativeAtOrigin);
    }
    let tail: f64 = c.coeffs().iter().enumerate().skip(2).map(|(j, a)| j as f64 * a.norm()).sum();
    let n = c.len();
    let last_term = if n > 2 { (n - 1) as f64 * c.get(n - 1).norm() } else { 0.0 };
    let margin = c1 - tail;
    Ok(CriterionReport { pass: margin > 0.0, margin, last_term })
}

impl CriterionReport {
    pub fn certificate(&self) -> UnivalenceCertificate {
        UnivalenceCertificate {
            method: CertificateMethod::CoefficientCriterion,
            radius: 1.0,
            margin: self.margin,
            sample_count: 0,
            winding_checks: Vec::new(),
        }
    }
}

fn check_count(n: usize) -> Result<(), UnivalenceError> {
    if n < 16 || !n.is_power_of_two() {
        Err(UnivalenceError::BadSampleCount(n))
    } else {
        Ok(())
    }
}

/// Certifies that a sampled closed curve is a Jordan polygon, refining by
/// 4× while a near approach is under CLEARANCE_FACTOR local steps.
/// `sample(n)` returns the n curve points; `interior` lists candidate
/// image points of the interior, the first with winding 1 is recorded.
fn certify_curve<S>(sample: S, mut n: usize, interior: &[Complex64]) -> Result<(Vec<Complex64>, f64, Vec<(Complex64, i64)>), UnivalenceError>
where
    S: Fn(usize) -> Vec<Complex64>,
{
    loop {
        let pts = sample(n);
        let poly = ClosedPolyline::new(&pts);
        let diam = poly.diameter_bound();
        if !(diam >= 1e-12) {
            return Err(UnivalenceError::DegenerateCurve(diam));
        }
        match poly.sweep() {
            SweepOutcome::Crossing { seg_a, seg_b } => {
                return Err(UnivalenceError::SelfIntersection {
                    t_a: seg_a as f64 / n as f64,
                    t_b: seg_b as f64 / n as f64,
                });
            }
            SweepOutcome::Simple { min_step, nearest } => {
                if let Some(m) = nearest {
                    if n * 4 > MAX_SAMPLES {
                        return Err(UnivalenceError::Inconclusive { distance: m.distance, samples: n });
                    }
                    n *= 4;
                    continue;
                }
                let mut checks = Vec::new();
                for &w in interior {
                    let count = polygon_winding(&pts, w);
                    checks.push((w, count));
                    if count == 1 {
                        return Ok((pts, min_step, checks));
                    }
                }
                let (target, count) = checks.first().copied().unwrap_or((Complex64::new(0.0, 0.0), 0));
                return Err(UnivalenceError::WindingMismatch { target, count });
            }
        }
    }
}

/// If f restricted to |z| = ρ traces a Jordan curve then f is univalent on
/// |z| < ρ. The margin is the smallest distance between distinct samples
/// of the accepted curve.
pub fn boundary_simplicity<F>(f: F, rho: f64, n: usize) -> Result<UnivalenceCertificate, UnivalenceError>
where
    F: Fn(Complex64) -> Complex64,
{
    check_count(n)?;
    if !(rho > 0.0 && rho < 1.0) {
        return Err(UnivalenceError::BadRadius(rho));
    }
    let sample = |m: usize| (0..m).map(|k| f(Complex64::from_polar(rho, TAU * k as f64 / m as f64))).collect::<Vec<_>>();
    let interior = [f(Complex64::new(0.0, 0.0)), f(Complex64::new(0.5 * rho, 0.0)), f(Complex64::new(0.0, 0.5 * rho))];
    let (pts, margin, checks) = certify_curve(sample, n, &interior)?;
    Ok(UnivalenceCertificate {
        method: CertificateMethod::BoundarySimplicity,
        radius: rho,
        margin,
        sample_count: pts.len(),
        winding_checks: checks,
    })
}

/// Boundary simplicity for a Taylor series, sampling the circle by one
/// transform per refinement instead of pointwise evaluation.
pub fn series_boundary_simplicity(c: &CoefficientSeries, rho: f64, n: usize) -> Result<UnivalenceCertificate, UnivalenceError> {
    check_count(n)?;
    if !(rho > 0.0 && rho < 1.0) {
        return Err(UnivalenceError::BadRadius(rho));
    }
    let interior = [c.eval(Complex64::new(0.0, 0.0)), c.eval(Complex64::new(0.5 * rho, 0.0)), c.eval(Complex64::new(0.0, 0.5 * rho))];
    let (pts, margin, checks) = certify_curve(|m| c.eval_on_circle(rho, m), n, &interior)?;
    Ok(UnivalenceCertificate {
        method: CertificateMethod::BoundarySimplicity,
        radius: rho,
        margin,
        sample_count: pts.len(),
        winding_checks: checks,
    })
}

/// Argument-principle count of w-points of f in |z| < ρ.
pub fn winding_count<F>(f: F, w: Complex64, rho: f64, n: usize) -> Result<i64, UnivalenceError>
where
    F: Fn(Complex64) -> Complex64,
{
    check_count(n)?;
    let mut m = n;
    loop {
        let vals: Vec<Complex64> = (0..m).map(|k| f(Complex64::from_polar(rho, TAU * k as f64 / m as f64)) - w).collect();
        let clear = vals.iter().map(|v| v.norm()).fold(f64::INFINITY, f64::min);
        if !(clear > 1e-10) {
            return Err(UnivalenceError::ZeroOnContour(clear));
        }
        let mut total = 0.0;
        let mut resolved = true;
        for k in 0..m {
            let d = (vals[(k + 1) % m] / vals[k]).arg();
            if d.abs() > 0.5 * PI {
                resolved = false;
                break;
            }
            total += d;
        }
        if resolved {
            let turns = total / TAU;
            let count = turns.round();
            if (turns - count).abs() < 0.1 {
                return Ok(count as i64);
            }
        }
        if m * 2 > MAX_SAMPLES {
            return Err(UnivalenceError::WindingUnresolved(m));
        }
        m *= 2;
    }
}

/// Boundary simplicity on the semidisc {|z| ≤ R, Im z ≥ 0}: the segment
/// [−R, R] followed by the upper semicircle, n/2 samples each.
pub fn halfplane_univalence<F>(f: F, r: f64, n: usize) -> Result<UnivalenceCertificate, UnivalenceError>
where
    F: Fn(Complex64) -> Complex64,
{
    check_count(n)?;
    let sample = |m: usize| {
        let h = m / 2;
        let mut pts = Vec::with_capacity(m);
        for k in 0..h {
            pts.push(f(Complex64::new(-r + 2.0 * r * k as f64 / h as f64, 0.0)));
        }
        for k in 0..h {
            pts.push(f(Complex64::from_polar(r, PI * k as f64 / h as f64)));
        }
        pts
    };
    let interior = [f(Complex64::new(0.0, 0.5 * r)), f(Complex64::new(0.0, 0.1 * r)), f(Complex64::new(0.3 * r, 0.3 * r))];
    let (pts, margin, checks) = certify_curve(sample, n, &interior)?;
    Ok(UnivalenceCertificate {
        method: CertificateMethod::BoundarySimplicity,
        radius: r,
        margin,
        sample_count: pts.len(),
        winding_checks: checks,
    })
}
