use num_complex::Complex64;
use serde::Serialize;
use serde_json::{json, Value};
use std::fmt::Write;

use super::schema::curve_csv;
use super::CliError;
use crate::circle_geometry::{CarlesonSet, SingularMeasure};
use crate::hardy_numerics::{model_space_membership, CoefficientSeries, InnerFunctionSpec};
use crate::pipeline::{decide_existence, run_pipeline, PipelineConfig, UnivalentWitness};
use crate::shortproof::{build_short_univalent, find_exterior_point, pw_boundary_curve, pw_fixture_validate_with, seed_for_measure};
use crate::univalence::UnivalenceCertificate;

/// Samples in exported boundary curves.
pub const CURVE_SAMPLES: usize = 4096;
/// Rows of the per-arc entropy table.
const TABLE_ROWS: usize = 32;
const TABLE_LEVEL: u32 = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Inconclusive => 2,
        }
    }

    fn from_pass(pass: bool) -> Self {
        if pass {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

#[derive(Clone, Debug)]
pub struct CommandOutput {
    pub status: Status,
    /// Human-readable lines.
    pub summary: String,
    /// Structured result, written as result.json.
    pub result: Value,
    /// Further output files by name.
    pub files: Vec<(String, Vec<u8>)>,
}

fn out(status: Status, summary: String, result: Value, files: Vec<(String, Vec<u8>)>) -> CommandOutput {
    CommandOutput { status, summary, result: json!({ "status": status, "result": result }), files }
}

pub fn cmd_entropy(set: &CarlesonSet) -> Result<CommandOutput, CliError> {
    let ent = set.entropy();
    let mut arcs = set.complementary_arcs(TABLE_LEVEL);
    arcs.sort_by(|a, b| b.length().total_cmp(&a.length()).then(a.start_turns().total_cmp(&b.start_turns())));
    let mut summary = format!("{ent}\n");
    writeln!(summary, "{:>24} {:>24} {:>24}", "start_turns", "len_turns", "|I|log(1/|I|)").unwrap();
    let mut rows = Vec::new();
    for a in arcs.iter().take(TABLE_ROWS) {
        let (s, l) = (a.start_turns(), a.length());
        let term = l * (1.0 / l).ln();
        writeln!(summary, "{s:>24} {l:>24} {term:>24}").unwrap();
        rows.push(json!({ "start_turns": s, "len_turns": l, "term": term }));
    }
    if arcs.len() > TABLE_ROWS {
        writeln!(summary, "({} further arcs down to level {TABLE_LEVEL})", arcs.len() - TABLE_ROWS).unwrap();
    }
    Ok(out(Status::Pass, summary, json!({ "entropy": ent, "arcs": rows }), vec![]))
}

pub fn cmd_inner_eval(mu: &SingularMeasure, points: &[Complex64]) -> Result<CommandOutput, CliError> {
    let spec = InnerFunctionSpec::singular(mu.clone());
    let mut rows = Vec::with_capacity(points.len());
    let mut summary = format!("{:>24} {:>24} {:>24} {:>24}\n", "re z", "im z", "re S", "im S");
    let mut failed = 0;
    for &z in points {
        match spec.eval(z) {
            Ok(v) => {
                writeln!(summary, "{:>24} {:>24} {:>24} {:>24}", z.re, z.im, v.re, v.im).unwrap();
                rows.push(json!({ "z": z, "value": v }));
            }
            Err(e) => {
                failed += 1;
                writeln!(summary, "{:>24} {:>24} {e}", z.re, z.im).unwrap();
                rows.push(json!({ "z": z, "error": e.to_string() }));
            }
        }
    }
    let status = if failed == 0 { Status::Pass } else { Status::Inconclusive };
    Ok(out(status, summary, json!({ "values": rows }), vec![]))
}

pub fn cmd_membership(f: &CoefficientSeries, theta: &InnerFunctionSpec, tol: f64) -> Result<CommandOutput, CliError> {
    let rep = model_space_membership(f, theta, tol)?;
    let summary = format!("residual {:e} (tolerance {tol:e}): {}\n", rep.residual, if rep.pass { "member" } else { "not a member" });
    Ok(out(Status::from_pass(rep.pass), summary, json!({ "residual": rep.residual, "tol": tol, "pass": rep.pass }), vec![]))
}

#[derive(Serialize)]
struct WitnessFile<'a> {
    g: &'a CoefficientSeries,
    sup_norm: f64,
    membership_residual: f64,
    divisor_residual: f64,
    certificates: &'a [UnivalenceCertificate],
    provenance: &'a crate::pipeline::Provenance,
}

fn witness_files(w: &UnivalentWitness, rho: f64) -> Result<Vec<(String, Vec<u8>)>, CliError> {
    let file = WitnessFile {
        g: &w.g,
        sup_norm: w.sup_norm,
        membership_residual: w.membership.residual,
        divisor_residual: w.divisor_residual,
        certificates: &w.certificates,
        provenance: &w.provenance,
    };
    let turns: Vec<f64> = (0..CURVE_SAMPLES).map(|k| k as f64 / CURVE_SAMPLES as f64).collect();
    let vals = w.g.eval_on_circle(rho, CURVE_SAMPLES);
    Ok(vec![
        ("witness.json".into(), serde_json::to_vec_pretty(&file)?),
        ("curve.csv".into(), curve_csv(&turns, &vals).into_bytes()),
    ])
}

pub fn cmd_construct(mu: &SingularMeasure, cfg: &PipelineConfig) -> Result<CommandOutput, CliError> {
    let w = run_pipeline(mu, cfg)?;
    let p = &w.provenance;
    let pass = w.all_checks_pass();
    let mut summary = format!(
        "witness g with {} coefficients: ε = {}, M = {}, 1 − r = {:e}, sup|g| = {:.6}, membership residual {:e}\n",
        w.g.len(),
        p.eps,
        p.m,
        1.0 - p.r,
        w.sup_norm,
        w.membership.residual
    );
    for r in &p.retries {
        writeln!(summary, "  retry: ε = {}, M = {}: {}", r.eps, r.m, r.reason).unwrap();
    }
    for c in &p.checks {
        writeln!(summary, "  [{}] {}: {:e} (bound {:e})", if c.pass { "ok" } else { "FAIL" }, c.name, c.value, c.bound).unwrap();
    }
    let result = json!({
        "pass": pass,
        "coefficients": w.g.len(),
        "eps": p.eps,
        "m": p.m,
        "r": p.r,
        "sup_norm": w.sup_norm,
        "membership_residual": w.membership.residual,
        "checks": p.checks,
        "retries": p.retries,
    });
    Ok(out(Status::from_pass(pass), summary, result, witness_files(&w, cfg.simplicity_radius)?))
}

pub fn cmd_shortproof(mu: &SingularMeasure, seed: u64) -> Result<CommandOutput, CliError> {
    let (f0, s) = seed_for_measure(mu)?;
    let p = find_exterior_point(&f0, &s)?;
    let w = build_short_univalent(&f0, p.a, p.value, &s, seed)?;
    let summary = format!(
        "a = {}, |f₀(a)| = {:e} ({}× the bound), membership residual {:e}, largest summands {:?}, identity residual {:e}\n",
        w.a,
        p.value.norm(),
        p.ratio,
        w.membership_residual,
        w.summands.max_summands,
        w.summands.identity_residual
    );
    let result = json!({ "a": w.a, "ratio": p.ratio, "membership_residual": w.membership_residual, "summands": w.summands });
    let files = vec![("witness.json".to_string(), serde_json::to_vec_pretty(&w)?)];
    Ok(out(Status::Pass, summary, result, files))
}

pub fn cmd_pw_example(radius: f64, samples: usize) -> Result<CommandOutput, CliError> {
    let rep = pw_fixture_validate_with(radius, samples);
    let summary = format!(
        "semidisc R = {radius}: {}\nseries vs closed form {:?}, residues {:?}\nenergy outside [0,1] {:e}, decay exponent {:.4}\n",
        match &rep.halfplane {
            Ok(c) => format!("simple boundary image, margin {:e}", c.margin),
            Err(e) => format!("not certified ({e})"),
        },
        rep.dual_route,
        rep.residues,
        rep.outside_energy,
        rep.decay_exponent
    );
    let (s, v) = pw_boundary_curve(radius, CURVE_SAMPLES);
    let files = vec![("curve.csv".to_string(), curve_csv(&s, &v).into_bytes())];
    Ok(out(Status::from_pass(rep.pass()), summary, serde_json::to_value(&rep)?, files))
}

pub fn cmd_decide(theta: &InnerFunctionSpec) -> Result<CommandOutput, CliError> {
    let d = decide_existence(theta);
    let summary = format!("{}: {}\n", d.verdict, d.reason);
    Ok(out(Status::from_pass(d.verdict), summary, serde_json::to_value(&d)?, vec![]))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_point_entropy() {
        let set = CarlesonSet::from_points(&[0.0, 0.5]).unwrap();
        let o = cmd_entropy(&set).unwrap();
        assert!(o.summary.starts_with("0.6931471805599453\n"), "{}", o.summary);
        assert_eq!(o.status, Status::Pass);
    }

    #[test]
    fn decide_single_zero() {
        let o = cmd_decide(&InnerFunctionSpec::blaschke(vec![Complex64::new(0.5, 0.0)]).unwrap()).unwrap();
        assert_eq!(o.status.exit_code(), 0);
        assert!(o.summary.contains("zero"));
        assert_eq!(cmd_decide(&InnerFunctionSpec::default()).unwrap().status.exit_code(), 1);
    }

    #[test]
    fn membership_exit_codes() {
        let theta = InnerFunctionSpec::blaschke(vec![Complex64::new(0.3, 0.0)]).unwrap();
        let k = CoefficientSeries::new((0..100).map(|n| Complex64::new(0.3f64.powi(n), 0.0)).collect(), 1.0);
        assert_eq!(cmd_membership(&k, &theta, 1e-8).unwrap().status, Status::Pass);
        let th = CoefficientSeries::from_real(&[-0.3, 1.0 - 0.09, 0.3 * 0.91, 0.09 * 0.91]);
        assert_eq!(cmd_membership(&th, &theta, 1e-8).unwrap().status, Status::Fail);
    }
}
