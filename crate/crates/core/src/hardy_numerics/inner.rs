use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::NumericsError;
use crate::circle_geometry::SingularMeasure;

/// S_μ(z) = exp(−∫ (ζ+z)/(ζ−z) dμ(ζ)), on either side of the circle.
pub fn eval_singular_inner(mu: &SingularMeasure, z: Complex64) -> Result<Complex64, NumericsError> {
    Ok((-mu.schwarz_integral(z)?).exp())
}

/// Blaschke factor (|a|/a)(a − z)/(1 − āz), positive at the origin; z
/// when a = 0.
pub fn blaschke_factor(a: Complex64, z: Complex64) -> Complex64 {
    if a.norm() == 0.0 {
        return z;
    }
    (a.norm() / a) * (a - z) / (1.0 - a.conj() * z)
}

/// Θ = B·S_μ: a finite Blaschke product times an optional singular factor.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct InnerFunctionSpec {
    #[serde(default)]
    pub blaschke_zeros: Vec<Complex64>,
    #[serde(default)]
    pub singular_part: Option<SingularMeasure>,
}

impl InnerFunctionSpec {
    pub fn blaschke(zeros: Vec<Complex64>) -> Result<Self, NumericsError> {
        for z in &zeros {
            if z.norm() >= 1.0 {
                return Err(NumericsError::ZeroOutsideDisc(*z));
            }
        }
        Ok(Self { blaschke_zeros: zeros, singular_part: None })
    }

    pub fn singular(mu: SingularMeasure) -> Self {
        Self { blaschke_zeros: Vec::new(), singular_part: Some(mu) }
    }

    pub fn is_constant(&self) -> bool {
        self.blaschke_zeros.is_empty() && self.singular_part.is_none()
    }

    /// Θ(z) for |z| ≠ 1 off the support, including |z| > 1 where the
    /// Blaschke factors and the singular factor continue meromorphically.
    pub fn eval(&self, z: Complex64) -> Result<Complex64, NumericsError> {
        let mut v = Complex64::new(1.0, 0.0);
        for &a in &self.blaschke_zeros {
            v *= blaschke_factor(a, z);
        }
        if let Some(mu) = &self.singular_part {
            v *= eval_singular_inner(mu, z)?;
        }
        if !v.is_finite() {
            return Err(NumericsError::NonFinite(z));
        }
        Ok(v)
    }
}
