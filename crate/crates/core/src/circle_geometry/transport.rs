use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use super::arc::{wrap01, wrap_signed};

/// One stage of an orientation-preserving map of (part of) the circle,
/// acting on turn coordinates. A measure transported through a chain of
/// stages picks up the Poisson weight of every Möbius stage.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Transport {
    /// ζ ↦ (ζ − r)/(1 − rζ), mass density multiplied by (1−r²)/|ζ−r|².
    Mobius { r: f64 },
    /// e^{iθ} ↦ e^{iθ/M} for θ in [0, 2π); mass preserved.
    Compress { factor: u32 },
    /// ζ ↦ e^{2πi·turns} ζ.
    Rotate { turns: f64 },
}

impl Transport {
    /// Image of a point (turns). Unwrapped values are kept continuous so
    /// that arc endpoints map to an increasing pair.
    pub fn apply(&self, t: f64) -> f64 {
        match *self {
            Transport::Mobius { r } => {
                let k = (1.0 + r) / (1.0 - r);
                let base = t.round();
                let u = t - base;
                let half = PI * u;
                let out = if u.abs() >= 0.5 {
                    u
                } else {
                    (k * half.tan()).atan() / PI
                };
                base + out
            }
            Transport::Compress { factor } => {
                let mut w = wrap01(t);
                if w > 1.0 - 1e-12 {
                    w -= 1.0;
                }
                w / factor as f64
            }
            Transport::Rotate { turns } => t + turns,
        }
    }

    /// Inverse image of a point.
    pub fn invert(&self, t: f64) -> f64 {
        match *self {
            Transport::Mobius { r } => Transport::Mobius { r: -r }.apply(t),
            Transport::Compress { factor } => t * factor as f64,
            Transport::Rotate { turns } => t - turns,
        }
    }

    /// Mass density factor at a pre-image point (turns).
    pub fn weight(&self, t: f64) -> f64 {
        match *self {
            Transport::Mobius { r } => {
                let s = 1.0 - r;
                let sn = (PI * wrap_signed(t)).sin();
                (1.0 - r * r) / (s * s + 4.0 * r * sn * sn)
            }
            _ => 1.0,
        }
    }

    /// Chordal distance from the arc [a, b] (turns, a ≤ b) to the pole of the
    /// Möbius weight, or `None` for stages without a singular weight.
    pub fn pole_distance(&self, a: f64, b: f64) -> Option<f64> {
        match *self {
            Transport::Mobius { r } => {
                let s = 1.0 - r;
                if b - a >= 1.0 || wrap01(a) > wrap01(b) || wrap01(a) == 0.0 {
                    // the arc contains angle 0, the point closest to r
                    return Some(s);
                }
                let d = |t: f64| {
                    let sn = (PI * wrap_signed(t)).sin();
                    (s * s + 4.0 * r * sn * sn).sqrt()
                };
                Some(d(a).min(d(b)))
            }
            _ => None,
        }
    }
}

/// Applies a whole chain to a point.
pub fn apply_chain(chain: &[Transport], t: f64) -> f64 {
    chain.iter().fold(t, |acc, s| s.apply(acc))
}

/// Inverse of a whole chain.
pub fn invert_chain(chain: &[Transport], t: f64) -> f64 {
    chain.iter().rev().fold(t, |acc, s| s.invert(acc))
}

/// Product of the Möbius weights along the chain at base point `t`.
pub fn chain_weight(chain: &[Transport], t: f64) -> f64 {
    let mut w = 1.0;
    let mut x = t;
    for s in chain {
        w *= s.weight(x);
        x = s.apply(x);
    }
    w
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    #[test]
    fn mobius_matches_complex_formula() {
        let r = 0.7;
        let m = Transport::Mobius { r };
        for &t in &[0.01, 0.2, 0.45, -0.3, 0.7] {
            let z = Complex64::from_polar(1.0, 2.0 * PI * t);
            let w = (z - r) / (1.0 - r * z);
            let got = Complex64::from_polar(1.0, 2.0 * PI * m.apply(t));
            assert!((w - got).norm() < 1e-13, "t = {t}");
            let back = m.invert(m.apply(t));
            assert!((wrap_signed(back - t)).abs() < 1e-13);
            let dw = (1.0 - r * r) / (z - r).norm_sqr();
            assert!((dw - m.weight(t)).abs() < 1e-12 * dw);
        }
    }

    #[test]
    fn mobius_is_monotone() {
        let m = Transport::Mobius { r: 0.99 };
        let mut prev = m.apply(-0.49);
        for i in 1..100 {
            let t = -0.49 + 0.0098 * i as f64;
            let cur = m.apply(t);
            assert!(cur > prev);
            prev = cur;
        }
    }

    #[test]
    fn compress_and_rotate_invert() {
        let c = [Transport::Compress { factor: 4 }, Transport::Rotate { turns: 0.3 }];
        let t = 0.2;
        assert!((invert_chain(&c, apply_chain(&c, t)) - t).abs() < 1e-15);
        assert!((apply_chain(&c, t) - 0.35).abs() < 1e-15);
    }
}
