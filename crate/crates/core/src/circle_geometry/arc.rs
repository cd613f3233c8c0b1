use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;

use super::GeometryError;

/// Tolerance used when the closed arcs of the construction meet the
/// half-open storage convention.
pub const ENDPOINT_TOL: f64 = 1e-14;

/// Reduces a turn value into [0, 1).
pub fn wrap01(x: f64) -> f64 {
    let r = x.rem_euclid(1.0);
    if r >= 1.0 {
        0.0
    } else {
        r
    }
}

/// Reduces a turn value into [-1/2, 1/2).
pub fn wrap_signed(x: f64) -> f64 {
    let r = wrap01(x + 0.5) - 0.5;
    if r >= 0.5 {
        r - 1.0
    } else {
        r
    }
}

/// Chordal distance between e^{2πi a} and e^{2πi b} (a, b in turns).
pub fn chord(a: f64, b: f64) -> f64 {
    2.0 * (std::f64::consts::PI * wrap_signed(b - a)).sin().abs()
}

/// Positively oriented arc, stored as start and length in turns (fractions
/// of the full circle). Membership is half-open: start included, end
/// excluded.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct UnitCircleArc {
    start_turns: f64,
    len_turns: f64,
}

impl UnitCircleArc {
    pub fn new(start_turns: f64, len_turns: f64) -> Result<Self, GeometryError> {
        if !(len_turns > 0.0 && len_turns <= 1.0) || !start_turns.is_finite() {
            return Err(GeometryError::BadArc { start_turns, len_turns });
        }
        Ok(Self { start_turns: wrap01(start_turns), len_turns })
    }

    /// Arc from angles in radians, counter-clockwise from `start` to `end`.
    /// Equal angles give the full circle.
    pub fn from_angles(start: f64, end: f64) -> Result<Self, GeometryError> {
        let s = start / TAU;
        let mut len = wrap01(end / TAU - s);
        if len == 0.0 {
            len = 1.0;
        }
        Self::new(s, len)
    }

    pub fn full() -> Self {
        Self { start_turns: 0.0, len_turns: 1.0 }
    }

    pub fn start_turns(&self) -> f64 {
        self.start_turns
    }

    /// End in unwrapped turns (may exceed 1).
    pub fn end_turns(&self) -> f64 {
        self.start_turns + self.len_turns
    }

    pub fn start_angle(&self) -> f64 {
        self.start_turns * TAU
    }

    pub fn end_angle(&self) -> f64 {
        wrap01(self.end_turns()) * TAU
    }

    /// Normalized length m(I) in (0, 1].
    pub fn length(&self) -> f64 {
        self.len_turns
    }

    pub fn midpoint_turns(&self) -> f64 {
        wrap01(self.start_turns + 0.5 * self.len_turns)
    }

    /// Offset of `t` from the start, in [0, 1).
    pub fn offset(&self, t: f64) -> f64 {
        wrap01(t - self.start_turns)
    }

    /// Half-open membership.
    pub fn contains(&self, t: f64) -> bool {
        self.len_turns >= 1.0 || self.offset(t) < self.len_turns
    }

    /// Closed membership with endpoint tolerance.
    pub fn contains_closed(&self, t: f64) -> bool {
        let o = self.offset(t);
        o <= self.len_turns + ENDPOINT_TOL || o >= 1.0 - ENDPOINT_TOL
    }

    /// Pieces of the intersection of this arc with the arc that starts at
    /// `a` and has length `len` (turns), as offsets from this arc's start.
    pub fn clip(&self, a: f64, len: f64) -> Vec<(f64, f64)> {
        let mut out = Vec::new();
        if len <= 0.0 {
            return out;
        }
        let o = self.offset(a);
        let cap = self.len_turns;
        let mut push = |lo: f64, hi: f64| {
            let lo = lo.max(0.0);
            let hi = hi.min(cap);
            if hi > lo {
                out.push((lo, hi));
            }
        };
        if o + len <= 1.0 {
            push(o, o + len);
        } else {
            push(o, 1.0);
            push(0.0, o + len - 1.0);
        }
        out.sort_by(|x, y| x.0.partial_cmp(&y.0).unwrap());
        out
    }

    /// True when the arc [a, a+len] lies inside this arc (closed, with tolerance).
    pub fn covers(&self, a: f64, len: f64) -> bool {
        if self.len_turns >= 1.0 {
            return true;
        }
        let o = self.offset(a);
        let o = if o > 1.0 - ENDPOINT_TOL { o - 1.0 } else { o };
        o >= -ENDPOINT_TOL && o + len <= self.len_turns + ENDPOINT_TOL
    }

    /// True when [a, a+len] and this arc share no interior point.
    pub fn misses(&self, a: f64, len: f64) -> bool {
        self.clip(a, len).iter().all(|(lo, hi)| hi - lo <= ENDPOINT_TOL)
    }

    /// Rotated copy.
    pub fn rotated(&self, turns: f64) -> Self {
        Self { start_turns: wrap01(self.start_turns + turns), len_turns: self.len_turns }
    }
}
