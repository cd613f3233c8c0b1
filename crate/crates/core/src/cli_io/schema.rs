use num_complex::Complex64;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use std::path::Path;

use super::CliError;
use crate::circle_geometry::{CantorBlock, CantorComponent, CarlesonSet, SingularMeasure, UnitCircleArc};
use crate::hardy_numerics::{CoefficientSeries, InnerFunctionSpec};
use crate::pipeline::PipelineConfig;

/// Set file: isolated points plus self-similar Cantor blocks, in turns.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SetFile {
    #[serde(default)]
    pub points: Vec<f64>,
    #[serde(default)]
    pub cantor: Vec<CantorSetEntry>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CantorSetEntry {
    pub arc: UnitCircleArc,
    pub ratio: f64,
}

/// Theta file: Blaschke zeros as [re, im] and an optional singular measure.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ThetaFile {
    #[serde(default)]
    zeros: Vec<Complex64>,
    #[serde(default)]
    measure: Option<SingularMeasure>,
}

pub fn read_input(path: &Path) -> Result<Vec<u8>, CliError> {
    std::fs::read(path).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

fn parse_json<T: DeserializeOwned>(path: &Path, bytes: &[u8]) -> Result<T, CliError> {
    serde_json::from_slice(bytes).map_err(|e| CliError::Schema {
        path: path.display().to_string(),
        line: e.line(),
        column: e.column(),
        msg: e.to_string(),
    })
}

fn field(path: &Path, field: String, msg: impl ToString) -> CliError {
    CliError::Field { path: path.display().to_string(), field, msg: msg.to_string() }
}

/// Deserialized arcs skip the constructor, so every arc is rebuilt to
/// get its range checks.
fn checked_arc(path: &Path, name: String, arc: &UnitCircleArc) -> Result<UnitCircleArc, CliError> {
    UnitCircleArc::new(arc.start_turns(), arc.length()).map_err(|e| field(path, name, e))
}

fn check_measure(path: &Path, mu: SingularMeasure, prefix: &str) -> Result<SingularMeasure, CliError> {
    for (i, a) in mu.atoms.iter().enumerate() {
        if !(a.mass > 0.0 && a.angle_turns.is_finite()) {
            return Err(field(path, format!("{prefix}atoms[{i}]"), "mass must be positive and the angle finite"));
        }
    }
    let mut cantor = Vec::with_capacity(mu.cantor.len());
    for (i, c) in mu.cantor.iter().enumerate() {
        let name = format!("{prefix}cantor[{i}]");
        if !c.transport.is_empty() {
            return Err(field(path, name, "transport chains are internal and not accepted in files"));
        }
        let arc = checked_arc(path, format!("{name}.arc"), &c.arc)?;
        cantor.push(CantorComponent::new(arc, c.mass, c.ratio, c.depth).map_err(|e| field(path, name, e))?);
    }
    SingularMeasure::new(mu.atoms, cantor).map_err(|e| field(path, format!("{prefix}measure"), e))
}

pub fn parse_measure(path: &Path, bytes: &[u8]) -> Result<SingularMeasure, CliError> {
    let mu: SingularMeasure = parse_json(path, bytes)?;
    check_measure(path, mu, "")
}

pub fn parse_set(path: &Path, bytes: &[u8]) -> Result<CarlesonSet, CliError> {
    let file: SetFile = parse_json(path, bytes)?;
    let mut blocks = Vec::with_capacity(file.cantor.len());
    for (i, b) in file.cantor.iter().enumerate() {
        let arc = checked_arc(path, format!("cantor[{i}].arc"), &b.arc)?;
        blocks.push(CantorBlock::new(arc, b.ratio).map_err(|e| field(path, format!("cantor[{i}]"), e))?);
    }
    CarlesonSet::new(file.points, blocks).map_err(|e| field(path, "set".into(), e))
}

pub fn parse_theta(path: &Path, bytes: &[u8]) -> Result<InnerFunctionSpec, CliError> {
    let file: ThetaFile = parse_json(path, bytes)?;
    let mut spec = InnerFunctionSpec::blaschke(file.zeros).map_err(|e| field(path, "zeros".into(), e))?;
    if let Some(mu) = file.measure {
        spec.singular_part = Some(check_measure(path, mu, "measure.")?);
    }
    Ok(spec)
}

/// Coefficient series: an array of [re, im].
pub fn parse_series(path: &Path, bytes: &[u8]) -> Result<CoefficientSeries, CliError> {
    let c: Vec<Complex64> = parse_json(path, bytes)?;
    if let Some(i) = c.iter().position(|x| !(x.re.is_finite() && x.im.is_finite())) {
        return Err(field(path, format!("[{i}]"), "non-finite coefficient"));
    }
    Ok(CoefficientSeries::new(c, 1.0))
}

pub fn parse_points(path: &Path, bytes: &[u8]) -> Result<Vec<Complex64>, CliError> {
    parse_json(path, bytes)
}

pub fn parse_config(path: &Path, bytes: &[u8]) -> Result<PipelineConfig, CliError> {
    let cfg: PipelineConfig = parse_json(path, bytes)?;
    cfg.validate().map_err(|e| field(path, "config".into(), e))?;
    Ok(cfg)
}

/// "theta,re,im" rows, theta in turns. Rust's float formatting is the
/// shortest string that reads back to the same value.
pub fn curve_csv(turns: &[f64], values: &[Complex64]) -> String {
    let mut s = String::from("theta,re,im\n");
    for (t, v) in turns.iter().zip(values) {
        s.push_str(&format!("{t},{},{}\n", v.re, v.im));
    }
    s
}

pub fn parse_curve_csv(path: &Path, text: &str) -> Result<Vec<(f64, Complex64)>, CliError> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, "theta,re,im")) => {}
        _ => return Err(CliError::Schema { path: path.display().to_string(), line: 1, column: 1, msg: "expected header theta,re,im".into() }),
    }
    lines
        .filter(|(_, l)| !l.is_empty())
        .map(|(i, l)| {
            let bad = |column: usize, msg: &str| CliError::Schema { path: path.display().to_string(), line: i + 1, column, msg: msg.into() };
            let parts: Vec<&str> = l.split(',').collect();
            if parts.len() != 3 {
                return Err(bad(1, "expected three fields"));
            }
            let num = |k: usize| parts[k].trim().parse::<f64>().map_err(|_| bad(k + 1, "not a number"));
            Ok((num(0)?, Complex64::new(num(1)?, num(2)?)))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p() -> &'static Path {
        Path::new("test.json")
    }

    #[test]
    fn measure_round_trip() {
        let text = br#"{"atoms":[{"angle_turns":0.25,"mass":0.5}],"cantor":[{"arc":{"start_turns":0.3,"len_turns":0.05},"mass":1.0,"ratio":0.001,"depth":30}]}"#;
        let mu = parse_measure(p(), text).unwrap();
        let again = parse_measure(p(), serde_json::to_string(&mu).unwrap().as_bytes()).unwrap();
        assert_eq!(mu, again);
    }

    #[test]
    fn schema_errors_carry_position() {
        let e = parse_measure(p(), b"{\n  \"atoms\": [{\"angle_turns\": 0.1}]\n}").unwrap_err();
        assert!(matches!(e, CliError::Schema { line: 2, .. }), "{e}");
        let e = parse_measure(p(), br#"{"atoms":[{"angle_turns":0.1,"mass":-1}]}"#).unwrap_err();
        assert!(matches!(e, CliError::Field { ref field, .. } if field == "atoms[0]"), "{e}");
        let e = parse_measure(p(), br#"{"cantor":[{"arc":{"start_turns":0.1,"len_turns":2},"mass":1,"ratio":0.3,"depth":5}]}"#).unwrap_err();
        assert!(matches!(e, CliError::Field { ref field, .. } if field == "cantor[0].arc"), "{e}");
    }

    #[test]
    fn theta_and_series() {
        let t = parse_theta(p(), br#"{"zeros":[[0.5,0.0]]}"#).unwrap();
        assert_eq!(t.blaschke_zeros.len(), 1);
        assert!(parse_theta(p(), br#"{"zeros":[[1.5,0.0]]}"#).is_err());
        let s = parse_series(p(), b"[[1,0],[0,2]]").unwrap();
        assert_eq!(s.get(1), Complex64::new(0.0, 2.0));
    }

    #[test]
    fn curve_round_trip() {
        let turns = [0.0, 0.1, 1.0 / 3.0];
        let vals = [Complex64::new(0.1, -0.2), Complex64::new(1e-300, 3.0), Complex64::new(-0.7, 1.0 / 7.0)];
        let back = parse_curve_csv(p(), &curve_csv(&turns, &vals)).unwrap();
        for ((t, v), (bt, bv)) in turns.iter().zip(&vals).zip(&back) {
            assert_eq!((t, v), (bt, bv));
        }
        assert!(parse_curve_csv(p(), "x,y\n").is_err());
    }
}
