//! f(z) = ∫₀¹ φ(t)e^{izt} dt with φ(t) = 1 − e^{10(1−t)}, which in closed
//! form is (10(e^{iz} − 1) − iz(e^{10} − 1))/(z(z + 10i)).

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;

use crate::univalence::{halfplane_univalence, UnivalenceCertificate};

const SERIES_TERMS: usize = 12;
/// Below this distance to 0 or −10i the closed form loses digits to
/// cancellation and the Taylor series takes over.
const SERIES_RADIUS: f64 = 1e-3;
pub const HALFPLANE_RADIUS: f64 = 50.0;
pub const HALFPLANE_SAMPLES: usize = 1 << 17;
const BAND: f64 = 200.0;
const X_STEP: f64 = 0.01;
const T_STEP: f64 = 0.005;
const DUAL_OFFSET: f64 = 1e-4;

fn i() -> Complex64 {
    Complex64::new(0.0, 1.0)
}

fn e10() -> f64 {
    10f64.exp()
}

/// φ on [0, 1].
fn phi(t: f64) -> f64 {
    -(10.0 * (1.0 - t)).exp_m1()
}

/// ∫₀¹ φ(t)tⁿ e^{i·center·t} dt for n < 12, at center 0 or −10i.
pub fn pw_moments_at(at_zero: bool) -> [f64; SERIES_TERMS] {
    let mut m = [0.0; SERIES_TERMS];
    if at_zero {
        // J_n = ∫ e^{10(1−t)}tⁿ, J_n = −1/10 + (n/10)J_{n−1}
        let mut j = (e10() - 1.0) / 10.0;
        for (n, slot) in m.iter_mut().enumerate() {
            if n > 0 {
                j = -0.1 + 0.1 * n as f64 * j;
            }
            *slot = 1.0 / (n as f64 + 1.0) - j;
        }
    } else {
        // K_n = ∫ e^{10t}tⁿ, K_n = e^{10}/10 − (n/10)K_{n−1}
        let mut k = (e10() - 1.0) / 10.0;
        for (n, slot) in m.iter_mut().enumerate() {
            if n > 0 {
                k = 0.1 * e10() - 0.1 * n as f64 * k;
            }
            *slot = k - e10() / (n as f64 + 1.0);
        }
    }
    m
}

fn series(at_zero: bool, u: Complex64) -> Complex64 {
    let m = pw_moments_at(at_zero);
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = Complex64::new(0.0, 0.0);
    for (n, mn) in m.iter().enumerate() {
        if n > 0 {
            term *= i() * u / n as f64;
        }
        sum += term * mn;
    }
    sum
}

fn closed_form(z: Complex64) -> Complex64 {
    (10.0 * ((i() * z).exp() - 1.0) - i() * z * (e10() - 1.0)) / (z * (z + 10.0 * i()))
}

pub fn pw_fixture_eval(z: Complex64) -> Complex64 {
    let pole = Complex64::new(0.0, -10.0);
    if z.norm() < SERIES_RADIUS {
        series(true, z)
    } else if (z - pole).norm() < SERIES_RADIUS {
        series(false, z - pole)
    } else {
        closed_form(z)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PwReport {
    /// Semidisc certificate, or the reason it failed.
    pub halfplane: Result<UnivalenceCertificate, String>,
    /// Relative gap between series and closed form 1e-4 away from 0 and −10i.
    pub dual_route: [f64; 2],
    /// |(1/2πi)∮f dz| over max|f| on circles of radius 1/2 about 0 and −10i.
    pub residues: [f64; 2],
    /// Energy of the reconstructed φ on [−1, 0) ∪ (1, 2] over its energy on [0, 1].
    pub outside_energy: f64,
    /// Largest |φ_rec − φ| on [0.05, 0.95] relative to sup|φ|.
    pub interior_error: f64,
    /// Exponent p in |f(x)| ~ |x|^{−p} fitted on 50 ≤ |x| ≤ 200.
    pub decay_exponent: f64,
    /// ∫_{−T}^{T}|f|² dx against 2π∫₀¹|φ|².
    pub l2_band: f64,
    pub l2_plancherel: f64,
}

impl PwReport {
    pub fn pass(&self) -> bool {
        self.halfplane.is_ok()
            && self.dual_route.iter().all(|&d| d < 1e-6)
            && self.residues.iter().all(|&r| r < 1e-10)
            && self.outside_energy < 1e-3
            && self.decay_exponent > 0.5
            && self.l2_band <= self.l2_plancherel * (1.0 + 1e-6)
    }
}

fn dual_route(at_zero: bool) -> f64 {
    let center = if at_zero { Complex64::new(0.0, 0.0) } else { Complex64::new(0.0, -10.0) };
    (0..8)
        .map(|k| {
            let u = Complex64::from_polar(DUAL_OFFSET, TAU * k as f64 / 8.0);
            let s = series(at_zero, u);
            (s - closed_form(center + u)).norm() / s.norm()
        })
        .fold(0.0, f64::max)
}

fn residue(center: Complex64) -> f64 {
    let n = 256;
    let mut sum = Complex64::new(0.0, 0.0);
    let mut top = 0.0f64;
    for k in 0..n {
        let d = Complex64::from_polar(0.5, TAU * k as f64 / n as f64);
        let v = pw_fixture_eval(center + d);
        top = top.max(v.norm());
        sum += v * d;
    }
    (sum / n as f64).norm() / top
}

/// Reconstructs φ by inverse transform of f on [−T, T]. The slowly
/// decaying part −i(e^{10} − 1)/(x + 10i), the transform of
/// −(e^{10} − 1)e^{−10t} on t > 0, is subtracted before the cut and added
/// back exactly, so what is cut off decays like 1/x².
fn reconstruct(ts: &[f64]) -> Vec<f64> {
    let c = e10() - 1.0;
    let nx = (2.0 * BAND / X_STEP).round() as usize;
    let xs: Vec<f64> = (0..=nx).map(|j| -BAND + j as f64 * X_STEP).collect();
    let rem: Vec<Complex64> = xs
        .iter()
        .enumerate()
        .map(|(j, &x)| {
            let w = if j == 0 || j == nx { 0.5 } else { 1.0 };
            w * (pw_fixture_eval(Complex64::new(x, 0.0)) + i() * c / Complex64::new(x, 10.0))
        })
        .collect();
    ts.iter()
        .map(|&t| {
            let s: Complex64 = xs.iter().zip(&rem).map(|(&x, r)| r * Complex64::from_polar(1.0, -x * t)).sum();
            let tail = if t >= 0.0 { -c * (-10.0 * t).exp() } else { 0.0 };
            s.re * X_STEP / TAU + tail
        })
        .collect()
}

/// Validation at the default semidisc R = 50 with 2^17 samples.
pub fn pw_fixture_validate() -> PwReport {
    pw_fixture_validate_with(HALFPLANE_RADIUS, HALFPLANE_SAMPLES)
}

/// Samples of f along the boundary of {|z| ≤ R, Im z ≥ 0}: the segment
/// [−R, R], then the upper semicircle. The parameter runs over [0, 1).
pub fn pw_boundary_curve(r: f64, n: usize) -> (Vec<f64>, Vec<Complex64>) {
    let h = n / 2;
    let mut s = Vec::with_capacity(2 * h);
    let mut v = Vec::with_capacity(2 * h);
    for k in 0..h {
        s.push(0.5 * k as f64 / h as f64);
        v.push(pw_fixture_eval(Complex64::new(-r + 2.0 * r * k as f64 / h as f64, 0.0)));
    }
    for k in 0..h {
        s.push(0.5 + 0.5 * k as f64 / h as f64);
        v.push(pw_fixture_eval(Complex64::from_polar(r, std::f64::consts::PI * k as f64 / h as f64)));
    }
    (s, v)
}

pub fn pw_fixture_validate_with(radius: f64, samples: usize) -> PwReport {
    let halfplane = halfplane_univalence(pw_fixture_eval, radius, samples).map_err(|e| e.to_string());
    let ts: Vec<f64> = (0..=600).map(|j| -1.0 + j as f64 * T_STEP).collect();
    let rec = reconstruct(&ts);
    let (mut inside, mut outside, mut err) = (0.0, 0.0, 0.0f64);
    for (&t, &v) in ts.iter().zip(&rec) {
        if (0.0..=1.0).contains(&t) {
            inside += v * v;
        } else {
            outside += v * v;
        }
        if (0.05..=0.95).contains(&t) {
            err = err.max((v - phi(t)).abs());
        }
    }
    let xs: Vec<f64> = (0..16).map(|j| 50.0 + 10.0 * j as f64).collect();
    let ys: Vec<f64> = xs
        .iter()
        .map(|&x| 0.5 * (pw_fixture_eval(Complex64::new(x, 0.0)).norm() + pw_fixture_eval(Complex64::new(-x, 0.0)).norm()))
        .collect();
    let decay_exponent = -crate::pipeline::slope(&xs, &ys);
    let nx = (2.0 * BAND / X_STEP).round() as usize;
    let l2_band: f64 = (0..=nx)
        .map(|j| {
            let w = if j == 0 || j == nx { 0.5 } else { 1.0 };
            w * pw_fixture_eval(Complex64::new(-BAND + j as f64 * X_STEP, 0.0)).norm_sqr()
        })
        .sum::<f64>()
        * X_STEP;
    let phi_sq = 1.0 - 2.0 * (e10() - 1.0) / 10.0 + (e10() * e10() - 1.0) / 20.0;
    PwReport {
        halfplane,
        dual_route: [dual_route(true), dual_route(false)],
        residues: [residue(Complex64::new(0.0, 0.0)), residue(Complex64::new(0.0, -10.0))],
        outside_energy: outside / inside,
        interior_error: err / phi(0.0).abs(),
        decay_exponent,
        l2_band,
        l2_plancherel: TAU * phi_sq,
    }
}
