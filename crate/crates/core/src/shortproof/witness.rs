use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;

use super::exterior::sup_bounds;
use super::ShortProofError;
use crate::circle_geometry::SingularMeasure;
use crate::hardy_numerics::{convolve, model_space_membership, CoefficientSeries, InnerFunctionSpec};
use crate::pipeline::{build_smooth_function, SmoothSizes};
use crate::univalence::{series_boundary_simplicity, UnivalenceCertificate};

pub const MEMBERSHIP_TOL: f64 = 1e-6;
pub const SIMPLICITY_RADIUS: f64 = 0.999;
const SIMPLICITY_SAMPLES: usize = 1 << 16;
/// Each summand of the identity is bounded by 1/10 plus this slack.
const SUMMAND_SLACK: f64 = 1e-6;
const IDENTITY_TOL: f64 = 1e-10;
const MAX_TERMS: usize = 1 << 18;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SummandCheck {
    pub seed: u64,
    pub pairs: usize,
    /// Largest |aAΔ|, |AwΔ| and |Af₀(w)| over the pairs.
    pub max_summands: [f64; 3],
    /// Largest |1 − (aAΔ − AwΔ + Af₀(w)) − (f(z) − f(w))(z − a)(w − a)/(w − z)|.
    pub identity_residual: f64,
    /// Smallest |f(z) − f(w)| over pairs with |z − w| > 1e-4.
    pub min_separation: f64,
}

impl SummandCheck {
    pub fn pass(&self) -> bool {
        self.max_summands.iter().all(|&s| s <= 0.1 + SUMMAND_SLACK)
            && self.identity_residual < IDENTITY_TOL
            && self.min_separation > 0.0
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ShortProofWitness {
    pub f0: CoefficientSeries,
    pub a: Complex64,
    /// A = 1/f₀(a).
    pub big_a: Complex64,
    /// Taylor coefficients of (1 − A f₀(z))/(z − a).
    pub f: CoefficientSeries,
    /// Σ|c_j| and Σ j|c_j| for f₀.
    pub bounds: (f64, f64),
    pub membership_residual: f64,
    pub certificate: UnivalenceCertificate,
    pub summands: SummandCheck,
}

/// Seed for S₀: the smooth function of the point mass at 1 with k = 10.
pub fn default_seed() -> Result<(CoefficientSeries, InnerFunctionSpec), ShortProofError> {
    seed_for_measure(&SingularMeasure::point_mass(0.0, 1.0))
}

/// f₀ = P₊(z̄F̄S_μ) with k = 10, at the construction's default sizes.
pub fn seed_for_measure(mu: &SingularMeasure) -> Result<(CoefficientSeries, InnerFunctionSpec), ShortProofError> {
    let f0 = build_smooth_function(mu, 10, SmoothSizes::default())?.coeffs;
    Ok((f0, InnerFunctionSpec::singular(mu.clone())))
}

/// Coefficients of (1 − A p(z))/(z − a) for |a| > 1, long enough that
/// the geometric tail |a|^{-n} falls below 1e-18.
fn quotient(f0: &CoefficientSeries, a: Complex64, big_a: Complex64) -> CoefficientSeries {
    let extra = (41.5 / a.norm().ln()).ceil() as usize;
    let n = (f0.len() + extra).min(MAX_TERMS);
    let mut num: Vec<Complex64> = f0.coeffs().iter().map(|c| -big_a * c).collect();
    num[0] += 1.0;
    let inv = 1.0 / a;
    let geo: Vec<Complex64> = (0..n).map(|j| -inv * inv.powu(j as u32)).collect();
    CoefficientSeries::new(convolve(&num, &geo, n), 1.0)
}

/// Evaluates the three summands of the difference identity at random
/// pairs in the closed disc.
pub fn three_summands(
    f0: &CoefficientSeries,
    f: &CoefficientSeries,
    a: Complex64,
    big_a: Complex64,
    pairs: usize,
    seed: u64,
) -> SummandCheck {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut point = || Complex64::from_polar(rng.gen::<f64>().sqrt(), TAU * rng.gen::<f64>());
    let mut out = SummandCheck { seed, pairs, max_summands: [0.0; 3], identity_residual: 0.0, min_separation: f64::INFINITY };
    for _ in 0..pairs {
        let (z, w) = (point(), point());
        if z == w {
            continue;
        }
        let (f0z, f0w) = (f0.eval(z), f0.eval(w));
        let delta = (f0z - f0w) / (z - w);
        let s = [a * big_a * delta, -big_a * w * delta, big_a * f0w];
        for (m, v) in out.max_summands.iter_mut().zip(s) {
            *m = m.max(v.norm());
        }
        let diff = f.eval(z) - f.eval(w);
        let res = (1.0 - (s[0] + s[1] + s[2]) - diff * (z - a) * (w - a) / (w - z)).norm();
        out.identity_residual = out.identity_residual.max(res);
        if (z - w).norm() > 1e-4 {
            out.min_separation = out.min_separation.min(diff.norm());
        }
    }
    out
}

/// f = (1 − A f₀)/(z − a) with A = 1/f₀(a), checked for membership in K_S,
/// boundary simplicity at ρ = 0.999 and the summand bounds on 10³ pairs.
pub fn build_short_univalent(
    f0: &CoefficientSeries,
    a: Complex64,
    value: Complex64,
    s: &InnerFunctionSpec,
    seed: u64,
) -> Result<ShortProofWitness, ShortProofError> {
    if !(a.norm() > 1.0 && a.norm() < 2.0) {
        return Err(ShortProofError::CertificateFailed(format!("|a| = {} outside (1, 2)", a.norm())));
    }
    let big_a = 1.0 / value;
    let bounds = sup_bounds(f0);
    let f = quotient(f0, a, big_a);
    let rep = model_space_membership(&f, s, MEMBERSHIP_TOL)?;
    if !rep.pass {
        return Err(ShortProofError::MembershipFailed { residual: rep.residual });
    }
    let certificate = series_boundary_simplicity(&f, SIMPLICITY_RADIUS, SIMPLICITY_SAMPLES)
        .map_err(|e| ShortProofError::CertificateFailed(e.to_string()))?;
    let summands = three_summands(f0, &f, a, big_a, 1000, seed);
    if !summands.pass() {
        return Err(ShortProofError::CertificateFailed(format!(
            "summands {:?}, identity residual {:e}, separation {:e}",
            summands.max_summands, summands.identity_residual, summands.min_separation
        )));
    }
    Ok(ShortProofWitness {
        f0: f0.clone(),
        a,
        big_a,
        f,
        bounds,
        membership_residual: rep.residual,
        certificate,
        summands,
    })
}
