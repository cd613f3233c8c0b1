use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;

use super::beta::{compute_beta, MAX_K};
use super::conformal::conformal_correct;
use super::smooth::{build_smooth_function, SmoothSizes};
use super::symmetry::{branch_consistency, desymmetrize, symmetrize};
use super::PipelineError;
use crate::circle_geometry::{find_small_entropy_arc, SingularMeasure, UnitCircleArc};
use crate::hardy_numerics::{
    membership_from_coefficients, series_to_grid, theta_coefficients, CoefficientSeries, InnerFunctionSpec,
    MembershipReport,
};
use crate::univalence::{coefficient_criterion, series_boundary_simplicity, UnivalenceCertificate};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct PipelineConfig {
    /// Exponent of the outer factor, 10 ≤ k ≤ 20.
    pub k: u32,
    /// Entropy budget, below 1/e.
    pub eps: f64,
    /// First symmetrization order tried; doubled while the lacunary bound fails.
    pub m_start: usize,
    pub m_max: usize,
    pub adapt_m: bool,
    pub adapt_eps: bool,
    pub eps_shrinks: usize,
    pub eps_factor: f64,
    pub coeffs: usize,
    pub outer_terms: usize,
    pub log_modes: usize,
    /// Boundary grid for the final function.
    pub grid: usize,
    pub membership_tol: f64,
    /// Required β − lacunary sum, as a fraction of |c₁|.
    pub margin_floor: f64,
    /// Required |c₁| as a fraction of β.
    pub beta_safety: f64,
    pub mass_tol: f64,
    pub simplicity_radius: f64,
    pub simplicity_samples: usize,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        Self {
            k: 10,
            eps: 0.01,
            m_start: 2,
            m_max: 256,
            adapt_m: true,
            adapt_eps: true,
            eps_shrinks: 6,
            eps_factor: 0.1,
            coeffs: 2048,
            outer_terms: 512,
            log_modes: 512,
            grid: 1 << 17,
            membership_tol: 1e-6,
            margin_floor: 0.1,
            beta_safety: 0.5,
            mass_tol: 1e-10,
            simplicity_radius: 0.995,
            simplicity_samples: 1 << 16,
        }
    }
}

impl PipelineConfig {
    pub fn validate(&self) -> Result<(), PipelineError> {
        let bad = |s: String| Err(PipelineError::BadConfig(s));
        if !(10..=MAX_K).contains(&self.k) {
            return bad(format!("k = {} outside 10..={MAX_K}", self.k));
        }
        if !(self.eps > 0.0 && self.eps < (-1f64).exp()) {
            return bad(format!("ε = {} outside (0, 1/e)", self.eps));
        }
        if self.m_start < 1 || self.m_max < self.m_start {
            return bad(format!("M range {}..{}", self.m_start, self.m_max));
        }
        if !(self.eps_factor > 0.0 && self.eps_factor < 1.0) {
            return bad(format!("ε shrink factor {}", self.eps_factor));
        }
        if self.coeffs < 16 || self.outer_terms < 1 || self.log_modes < 1 {
            return bad("coefficient counts too small".into());
        }
        if self.grid < 1024 || !self.grid.is_power_of_two() {
            return bad(format!("grid {} must be a power of two ≥ 1024", self.grid));
        }
        if !(self.membership_tol > 0.0 && self.mass_tol > 0.0) {
            return bad("tolerances must be positive".into());
        }
        if !(self.simplicity_radius > 0.0 && self.simplicity_radius < 1.0) {
            return bad(format!("simplicity radius {}", self.simplicity_radius));
        }
        Ok(())
    }

    fn sizes(&self) -> SmoothSizes {
        SmoothSizes { coeffs: self.coeffs, outer: self.outer_terms, log_modes: self.log_modes }
    }
}

/// A re-choice of (ε, M) and why it happened.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AdaptiveRetry {
    pub eps: f64,
    pub m: usize,
    pub reason: String,
}

/// Named numeric self-check.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StageCheck {
    pub name: String,
    pub value: f64,
    pub bound: f64,
    pub pass: bool,
}

impl StageCheck {
    fn below(name: &str, value: f64, bound: f64) -> Self {
        Self { name: name.into(), value, bound, pass: value <= bound }
    }

    fn above(name: &str, value: f64, bound: f64) -> Self {
        Self { name: name.into(), value, bound, pass: value >= bound }
    }
}

/// Every intermediate object of a run.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Provenance {
    pub k: u32,
    pub beta: f64,
    pub eps: f64,
    pub m: usize,
    /// Rotation t₀ (turns) that moved the chosen arc to start at 1.
    pub rotation: f64,
    /// Chosen arc before rotation.
    pub arc: UnitCircleArc,
    pub arc_mass: f64,
    pub arc_entropy: f64,
    pub r: f64,
    pub mu1: SingularMeasure,
    pub mu2: SingularMeasure,
    pub mu3: SingularMeasure,
    pub entropy_i2: f64,
    pub entropy_i3: f64,
    /// c₁ of f before normalization.
    pub c1: Complex64,
    pub lacunary_sum: f64,
    pub decay_constant: f64,
    pub f: CoefficientSeries,
    pub f_sym: CoefficientSeries,
    pub f_desym: CoefficientSeries,
    pub c_f: Complex64,
    pub checks: Vec<StageCheck>,
    pub retries: Vec<AdaptiveRetry>,
}

#[derive(Clone, Debug)]
pub struct UnivalentWitness {
    pub g: CoefficientSeries,
    pub certificates: Vec<UnivalenceCertificate>,
    /// Membership of g in K_{S_μ} for the input μ.
    pub membership: MembershipReport,
    /// Residual of g against K_{S_{μ|I}}.
    pub divisor_residual: f64,
    /// Largest |g| over the boundary grid.
    pub sup_norm: f64,
    pub provenance: Provenance,
}

impl UnivalentWitness {
    pub fn all_checks_pass(&self) -> bool {
        self.membership.pass && !self.certificates.is_empty() && self.provenance.checks.iter().all(|c| c.pass)
    }
}

/// Total mass of the pushforward by φ_r.
pub fn mass_after_pushforward(mu: &SingularMeasure, r: f64) -> Result<f64, PipelineError> {
    Ok(mu.mobius_pushforward(r)?.total_mass())
}

/// r ∈ (0,1) with |μ∘φ_r(T) − 1| < tol, by bisection in log(1 − r).
/// The mass is asserted to increase with r along the way.
pub fn solve_radius(mu: &SingularMeasure, tol: f64) -> Result<f64, PipelineError> {
    let mass = |s: f64| mass_after_pushforward(mu, 1.0 - s);
    let (mut lo, mut hi) = (1e-16f64.ln(), 0.5f64.ln());
    let (m_lo, m_hi) = (mass(lo.exp())?, mass(hi.exp())?);
    if !(m_lo > 1.0 && m_hi < 1.0) {
        return Err(PipelineError::MassBracket { lo: m_hi, hi: m_lo });
    }
    let (mut top, mut bottom) = (m_lo, m_hi);
    for _ in 0..400 {
        let mid = 0.5 * (lo + hi);
        let s = mid.exp();
        let m = mass(s)?;
        if !(m <= top && m >= bottom) {
            return Err(PipelineError::MassNotMonotone(format!("mass {m} at 1 − r = {s:e} outside [{bottom}, {top}]")));
        }
        if (m - 1.0).abs() < tol {
            return Ok(1.0 - s);
        }
        if m > 1.0 {
            lo = mid;
            top = m;
        } else {
            hi = mid;
            bottom = m;
        }
    }
    Err(PipelineError::StageFailed { stage: "radius".into(), detail: "bisection did not reach the mass tolerance".into() })
}

/// Steps 1–4 for one choice of (ε, M).
struct Trial {
    rotation: f64,
    arc: UnitCircleArc,
    arc_mass: f64,
    arc_entropy: f64,
    r: f64,
    mu1: SingularMeasure,
    mu2: SingularMeasure,
    mu3: SingularMeasure,
    f: super::SmoothFunction,
}

enum Verdict {
    Accept,
    SmallC1(String),
    Lacunary(String),
}

fn hull_entropy(mu: &SingularMeasure) -> Result<f64, PipelineError> {
    let set = mu.support()?;
    let mut ent = 0.0;
    for b in &set.blocks {
        let (a, l) = b.hull();
        ent += set.local_entropy(&UnitCircleArc::new(a, l)?);
    }
    Ok(ent)
}

fn trial(mu: &SingularMeasure, eps: f64, m: usize, cfg: &PipelineConfig) -> Result<Trial, PipelineError> {
    let set = mu.support()?;
    let m2 = (m * m) as f64;
    // mass ≤ 1/4; the search bound is strict
    let found = find_small_entropy_arc(mu, &set, eps / (4.0 * m2), 0.25 * (1.0 + f64::EPSILON))?;
    let rotation = found.arc.start_turns();
    let restricted = SingularMeasure::new(vec![], mu.cantor[found.component..=found.component].iter().map(|c| c.sub_component(&found.cylinder)).collect())?;
    let mu_i = restricted.rotated(-rotation);
    let mu1 = mu_i.scaled(1.0 / m2);
    let r = solve_radius(&mu1, cfg.mass_tol)?;
    let mu2 = mu1.mobius_pushforward(r)?;
    let mu3 = mu2.dilate(m as u32)?;
    let f = build_smooth_function(&mu3, cfg.k, cfg.sizes())?;
    Ok(Trial {
        rotation,
        arc: found.arc,
        arc_mass: found.mass,
        arc_entropy: found.local_entropy,
        r,
        mu1,
        mu2,
        mu3,
        f,
    })
}

fn judge(t: &Trial, beta: f64, m: usize, cfg: &PipelineConfig) -> Verdict {
    let c1 = t.f.c1().norm();
    if c1 < cfg.beta_safety * beta {
        return Verdict::SmallC1(format!("|c₁| = {c1:.4e} below {}·β = {:.4e}", cfg.beta_safety, cfg.beta_safety * beta));
    }
    let lac = t.f.lacunary_sum(m);
    if beta - lac < cfg.margin_floor * c1 {
        return Verdict::Lacunary(format!("β − Σ(Mj+1)|c_(Mj+1)| = {:.4e} below {}·|c₁|", beta - lac, cfg.margin_floor));
    }
    Verdict::Accept
}

fn sample_points(n: usize) -> Vec<Complex64> {
    (0..n).map(|j| Complex64::from_polar(0.3 + 0.6 * j as f64 / n as f64, TAU * (0.137 + 0.61803398875 * j as f64))).collect()
}

/// Compares the exponents of S₅(z) = S₄(z^{1/M})^M and S₂(z)^{M²}.
fn s5_deviation(mu2: &SingularMeasure, mu3: &SingularMeasure, m: usize) -> Result<f64, PipelineError> {
    let mu4 = mu3.periodize(m as u32)?;
    let mf = m as f64;
    let mut worst: f64 = 0.0;
    for z in sample_points(16) {
        let w = Complex64::from_polar(z.norm().powf(1.0 / mf), z.arg() / mf);
        let e5 = mf * mu4.schwarz_integral(w)?;
        let e2 = mf * mf * mu2.schwarz_integral(z)?;
        worst = worst.max((e5 - e2).norm() / e2.norm().max(1.0));
    }
    Ok(worst)
}

/// The six steps: small-entropy arc, conformal move, dilation, smooth
/// kernel and symmetrization, desymmetrization, conformal correction.
pub fn run_pipeline(mu: &SingularMeasure, cfg: &PipelineConfig) -> Result<UnivalentWitness, PipelineError> {
    cfg.validate()?;
    mu.validate()?;
    if mu.has_atoms() {
        return Err(PipelineError::Geometry(crate::circle_geometry::GeometryError::AtomicMeasure));
    }
    let beta = compute_beta(cfg.k)?.beta();
    let mut retries = Vec::new();
    let mut eps = cfg.eps;
    let mut accepted = None;
    let mut last = String::new();
    'outer: for shrink in 0..=cfg.eps_shrinks {
        if shrink > 0 && !cfg.adapt_eps {
            break;
        }
        let mut m = cfg.m_start;
        while m <= cfg.m_max {
            let t = trial(mu, eps, m, cfg)?;
            match judge(&t, beta, m, cfg) {
                Verdict::Accept => {
                    accepted = Some((t, eps, m));
                    break 'outer;
                }
                Verdict::Lacunary(why) => {
                    retries.push(AdaptiveRetry { eps, m, reason: why.clone() });
                    last = why;
                    if !cfg.adapt_m {
                        break;
                    }
                    m *= 2;
                }
                Verdict::SmallC1(why) => {
                    retries.push(AdaptiveRetry { eps, m, reason: why.clone() });
                    last = why;
                    break;
                }
            }
        }
        eps *= cfg.eps_factor;
    }
    let (t, eps, m) = accepted.ok_or(PipelineError::AdaptiveExhausted { attempts: retries.len(), last })?;

    let mut checks = Vec::new();
    checks.push(StageCheck::below("arc mass ≤ 1/4", t.arc_mass, 0.25));
    checks.push(StageCheck::below("arc entropy ≤ εμ(I)/(4M²)", t.arc_entropy, eps * t.arc_mass / (4.0 * (m * m) as f64)));
    checks.push(StageCheck::below("|μ₂(T) − 1|", (t.mu2.total_mass() - 1.0).abs(), cfg.mass_tol));
    let entropy_i2 = hull_entropy(&t.mu2)?;
    let entropy_i3 = hull_entropy(&t.mu3)?;
    checks.push(StageCheck::below("Ent(E₂) ≤ ε", entropy_i2, eps));
    checks.push(StageCheck::below("Ent(E₃) ≤ ε", entropy_i3, eps));
    let c1 = t.f.c1();
    let lac = t.f.lacunary_sum(m);
    checks.push(StageCheck::above("|c₁| ≥ safety·β", c1.norm(), cfg.beta_safety * beta));
    checks.push(StageCheck::above("β − lacunary sum", beta - lac, cfg.margin_floor * c1.norm()));
    checks.push(StageCheck::below("f ∈ K_{S₃}", t.f.membership_residual, cfg.membership_tol));

    // Step 4: normalize so that the leading coefficient is 1
    let f = t.f.coeffs.scaled(1.0 / c1);
    let f_sym = symmetrize(&f, m)?;
    let crit = coefficient_criterion(&f_sym)?;
    checks.push(StageCheck::above("criterion margin on f̃", crit.margin, 0.0));
    let omega = Complex64::from_polar(1.0, TAU / m as f64);
    let equiv = sample_points(16).into_iter().map(|z| (f_sym.eval(omega * z) - omega * f_sym.eval(z)).norm()).fold(0.0, f64::max);
    checks.push(StageCheck::below("f̃(ωz) = ωf̃(z)", equiv, 1e-12));

    // Step 5
    let f_desym = desymmetrize(&f_sym, m, cfg.coeffs)?;
    checks.push(StageCheck::below("S₅ = S₂^(M²)", s5_deviation(&t.mu2, &t.mu3, m)?, 1e-8));
    checks.push(StageCheck::below("branches of z^(1/M)", branch_consistency(&f_sym, &f_desym, m, &sample_points(16)), 1e-10));

    // Step 6
    let theta2 = InnerFunctionSpec::singular(t.mu2.scaled((m * m) as f64));
    let conf = conformal_correct(&f_desym, &theta2, Complex64::new(t.r, 0.0), cfg.grid)?;
    checks.push(StageCheck::below("g ∈ K_{S₁^(M²)}", conf.residual, cfg.membership_tol));

    // undo the rotation: g(z) = g_rot(z e^{−2πi t₀})
    let g = CoefficientSeries::new(
        conf.g.coeffs().iter().enumerate().map(|(n, c)| c * Complex64::from_polar(1.0, -TAU * n as f64 * t.rotation)).collect(),
        1.0,
    );
    let theta = InnerFunctionSpec::singular(mu.clone());
    let s = theta_coefficients(&theta, g.len())?;
    let membership = membership_from_coefficients(g.coeffs(), s.coeffs(), cfg.membership_tol);
    let sup_norm = series_to_grid(&g, cfg.grid)?.samples().iter().map(|v| v.norm()).fold(0.0, f64::max);
    checks.push(StageCheck::below("sup |g| finite", sup_norm, f64::MAX));

    let simple = series_boundary_simplicity(&g, cfg.simplicity_radius, cfg.simplicity_samples)?;
    let certificates = vec![crit.certificate(), simple];

    Ok(UnivalentWitness {
        g,
        certificates,
        membership,
        divisor_residual: conf.residual,
        sup_norm,
        provenance: Provenance {
            k: cfg.k,
            beta,
            eps,
            m,
            rotation: t.rotation,
            arc: t.arc,
            arc_mass: t.arc_mass,
            arc_entropy: t.arc_entropy,
            r: t.r,
            mu1: t.mu1,
            mu2: t.mu2,
            mu3: t.mu3,
            entropy_i2,
            entropy_i3,
            c1,
            lacunary_sum: lac,
            decay_constant: t.f.decay_constant(3.0, 17),
            f: t.f.coeffs,
            f_sym,
            f_desym,
            c_f: conf.c_f,
            checks,
            retries,
        },
    })
}
