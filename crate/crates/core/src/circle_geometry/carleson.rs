use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use super::arc::{wrap01, UnitCircleArc, ENDPOINT_TOL};
use super::cantor::{block_log_dist, CantorBlock, Cylinder, MAX_LEVEL};
use super::GeometryError;
use crate::quadrature::graded_panels;

/// Distance used inside log-distance integrals.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DistanceMetric {
    /// Euclidean distance in the plane, |ζ − w|.
    Chordal,
    /// Arc length in turns (normalized Lebesgue measure).
    NormalizedArc,
}

/// Closed, measure-zero subset of the circle: finitely many isolated points
/// and finitely many Cantor blocks with disjoint hulls. Its complementary
/// arcs are the gaps between those pieces plus the gaps inside each block.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize, Default)]
pub struct CarlesonSet {
    /// Isolated points, in turns.
    #[serde(default)]
    pub points: Vec<f64>,
    #[serde(default)]
    pub blocks: Vec<CantorBlock>,
}

/// One piece of I \ E: an open arc together with the complementary arc of E
/// it belongs to (both as start, length in turns).
#[derive(Clone, Copy, Debug)]
struct GapPiece {
    gap_start: f64,
    gap_len: f64,
    lo: f64,
    hi: f64,
}

fn xlogx(l: f64) -> f64 {
    if l > 0.0 {
        l * (1.0 / l).ln()
    } else {
        0.0
    }
}

impl CarlesonSet {
    pub fn new(points: Vec<f64>, blocks: Vec<CantorBlock>) -> Result<Self, GeometryError> {
        let set = Self { points: points.into_iter().map(wrap01).collect(), blocks };
        if set.points.is_empty() && set.blocks.is_empty() {
            return Err(GeometryError::EmptySet);
        }
        // hulls must not overlap
        let hulls = set.hulls();
        for i in 0..hulls.len() {
            let (a, la) = hulls[i];
            let (b, _) = hulls[(i + 1) % hulls.len()];
            if hulls.len() > 1 && wrap01(b - a) < la - ENDPOINT_TOL {
                return Err(GeometryError::OverlappingPieces);
            }
        }
        Ok(set)
    }

    pub fn from_points(points: &[f64]) -> Result<Self, GeometryError> {
        Self::new(points.to_vec(), Vec::new())
    }

    /// Hulls of the pieces (start, length), sorted by start in [0, 1).
    fn hulls(&self) -> Vec<(f64, f64)> {
        let mut h: Vec<(f64, f64)> = self.points.iter().map(|&p| (wrap01(p), 0.0)).collect();
        for b in &self.blocks {
            let (a, l) = b.hull();
            h.push((wrap01(a), l));
        }
        h.sort_by(|x, y| x.0.partial_cmp(&y.0).unwrap());
        h
    }

    /// Complementary arcs between consecutive pieces (start, length).
    pub fn outer_gaps(&self) -> Vec<(f64, f64)> {
        let h = self.hulls();
        let n = h.len();
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let (a, la) = h[i];
            let (b, _) = h[(i + 1) % n];
            let end = a + la;
            let mut len = wrap01(b - end);
            if n == 1 {
                len = 1.0 - la;
            }
            if len > 0.0 {
                out.push((end, len));
            }
        }
        out
    }

    /// Explicit complementary arcs: outer gaps plus block gaps resolved to
    /// `max_level`. The unresolved remainder has total length
    /// Σ (2·ratio)^max_level · |hull|.
    pub fn complementary_arcs(&self, max_level: u32) -> Vec<UnitCircleArc> {
        let mut out: Vec<UnitCircleArc> = self
            .outer_gaps()
            .into_iter()
            .filter_map(|(a, l)| UnitCircleArc::new(a, l.min(1.0)).ok())
            .collect();
        for b in &self.blocks {
            let (gaps, _) = b.gaps_and_leaves(max_level);
            out.extend(gaps.into_iter().filter_map(|(a, l)| UnitCircleArc::new(a, l).ok()));
        }
        out.sort_by(|x, y| x.start_turns().partial_cmp(&y.start_turns()).unwrap());
        out
    }

    /// Ent(E) = Σ |I_ℓ| log(1/|I_ℓ|) over all complementary arcs.
    pub fn entropy(&self) -> f64 {
        let outer: f64 = self.outer_gaps().iter().map(|g| xlogx(g.1)).sum();
        let inner: f64 = self.blocks.iter().map(|b| b.internal_entropy(&b.root())).sum();
        outer + inner
    }

    /// Ent_I(E): the same sum over the pieces of I \ E.
    pub fn local_entropy(&self, arc: &UnitCircleArc) -> f64 {
        let mut s = 0.0;
        for (a, l) in self.outer_gaps() {
            for (lo, hi) in arc.clip(a, l) {
                s += xlogx(hi - lo);
            }
        }
        for b in &self.blocks {
            s += block_local_entropy(b, &b.root(), arc);
        }
        s
    }

    /// Whether I meets E (closed arc, endpoint tolerance).
    pub fn meets(&self, arc: &UnitCircleArc) -> bool {
        if self.points.iter().any(|&p| arc.contains_closed(p)) {
            return true;
        }
        self.blocks.iter().any(|b| block_meets(b, &b.root(), arc))
    }

    /// ∫_I |log dist(ζ, E)| dm(ζ) by graded Gauss–Legendre quadrature on
    /// every piece of I \ E; cylinders lying inside I and small enough to
    /// be affine use the self-similar closed form.
    pub fn log_dist_integral(&self, arc: &UnitCircleArc, metric: DistanceMetric) -> Result<f64, GeometryError> {
        let mut pieces = Vec::new();
        for (a, l) in self.outer_gaps() {
            for (lo, hi) in arc.clip(a, l) {
                pieces.push(GapPiece { gap_start: a, gap_len: l, lo: arc.start_turns() + lo, hi: arc.start_turns() + hi });
            }
        }
        let mut closed = 0.0;
        for b in &self.blocks {
            collect_block_pieces(b, &b.root(), arc, metric, &mut pieces, &mut closed);
        }
        let limit = (-1f64).exp();
        let mut total = closed;
        for p in &pieces {
            if p.hi - p.lo > limit + ENDPOINT_TOL {
                return Err(GeometryError::PieceTooLong(p.hi - p.lo));
            }
            let coarse = piece_log_dist(p, metric, 1);
            let fine = piece_log_dist(p, metric, 2);
            let err = (coarse - fine).abs();
            if err > 1e-10 * (1.0 + fine.abs()) {
                return Err(GeometryError::QuadratureFailed { achieved: err });
            }
            total += fine;
        }
        Ok(total)
    }
}

/// Integrates |log dist| over one piece; `split` subdivides every panel to
/// provide the convergence estimate.
fn piece_log_dist(p: &GapPiece, metric: DistanceMetric, split: usize) -> f64 {
    // coordinates relative to the gap start, in turns
    let u0 = wrap01(p.lo - p.gap_start);
    let u0 = if u0 > p.gap_len { 0.0 } else { u0 };
    let g = p.gap_len;
    // rounding in the clip can push the far end just past the gap
    let u1 = (u0 + (p.hi - p.lo)).min(g);
    if !(u1 > u0) {
        return 0.0;
    }
    // |log dist| only depends on v = min(u, g − u); each half of the gap
    // becomes an interval [p, q] ⊂ [0, g/2] with the singularity at v = 0
    let f = |v: f64| -> f64 {
        let d = match metric {
            DistanceMetric::Chordal => 2.0 * (PI * v).sin(),
            DistanceMetric::NormalizedArc => v,
        };
        d.ln().abs()
    };
    let half = 0.5 * g;
    let mut parts = Vec::with_capacity(2);
    if u0 < half {
        parts.push((u0, u1.min(half)));
    }
    if u1 > half {
        parts.push((g - u1, g - u0.max(half)));
    }
    let mut total = 0.0;
    for (a, b) in parts {
        if !(b > a) {
            continue;
        }
        // grade toward 0 whenever it is closer than the interval is long
        let graded = a <= (ENDPOINT_TOL * g.max(1.0)).max(b - a);
        for (lo, hi) in graded_panels(a.max(0.0), b, graded, false, 1e-15) {
            let h = (hi - lo) / split as f64;
            for j in 0..split {
                let mut ff = f;
                total += crate::quadrature::panel(lo + j as f64 * h, lo + (j + 1) as f64 * h, &mut ff);
            }
        }
    }
    total
}

/// Cylinder endpoints lie in E, and an arc that meets a cylinder but
/// neither of its children lies inside the cylinder's gap.
fn block_meets(b: &CantorBlock, c: &Cylinder, arc: &UnitCircleArc) -> bool {
    let (a, l) = b.image_of(c);
    if arc.contains_closed(a) || arc.contains_closed(a + l) {
        return true;
    }
    if l <= 0.0 || arc.misses(a, l) {
        return false;
    }
    c.level >= MAX_LEVEL || c.children(b.ratio).iter().any(|ch| block_meets(b, ch, arc))
}

fn block_local_entropy(b: &CantorBlock, c: &Cylinder, arc: &UnitCircleArc) -> f64 {
    let (a, l) = b.image_of(c);
    if l <= 0.0 || arc.misses(a, l) {
        return 0.0;
    }
    if arc.covers(a, l) {
        return b.internal_entropy(c);
    }
    if c.level >= MAX_LEVEL {
        return 0.0;
    }
    let (g0, gl) = c.gap(b.ratio);
    let (ga, glen) = b.image(g0, gl);
    let mut s: f64 = arc.clip(ga, glen).iter().map(|(lo, hi)| xlogx(hi - lo)).sum();
    for ch in c.children(b.ratio) {
        s += block_local_entropy(b, &ch, arc);
    }
    s
}

fn collect_block_pieces(
    b: &CantorBlock,
    c: &Cylinder,
    arc: &UnitCircleArc,
    metric: DistanceMetric,
    pieces: &mut Vec<GapPiece>,
    closed: &mut f64,
) {
    let (a, l) = b.image_of(c);
    if l <= 0.0 || arc.misses(a, l) {
        return;
    }
    if arc.covers(a, l) && l < 1e-3 && b.affine_on(c) {
        // closed forms assume dist ≈ 2π·turns (chordal) or turns (arc)
        let v = match metric {
            DistanceMetric::Chordal => block_log_dist(l, b.ratio, true),
            DistanceMetric::NormalizedArc => block_log_dist(l, b.ratio, false),
        };
        *closed += v;
        return;
    }
    if c.level >= MAX_LEVEL {
        return;
    }
    let (g0, gl) = c.gap(b.ratio);
    let (ga, glen) = b.image(g0, gl);
    for (lo, hi) in arc.clip(ga, glen) {
        pieces.push(GapPiece { gap_start: ga, gap_len: glen, lo: arc.start_turns() + lo, hi: arc.start_turns() + hi });
    }
    for ch in c.children(b.ratio) {
        collect_block_pieces(b, &ch, arc, metric, pieces, closed);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn middle_thirds(start: f64, len: f64) -> CarlesonSet {
        let carrier = UnitCircleArc::new(start, len).unwrap();
        CarlesonSet::new(vec![], vec![CantorBlock::new(carrier, 1.0 / 3.0).unwrap()]).unwrap()
    }

    fn series_oracle(n_max: i32) -> f64 {
        (1..=n_max)
            .map(|n| 2f64.powi(n - 1) * 0.5 * 3f64.powi(-n) * (2.0 * 3f64.powi(n)).ln())
            .sum()
    }

    #[test]
    fn singleton_and_pair() {
        let one = CarlesonSet::from_points(&[0.0]).unwrap();
        assert_eq!(one.entropy(), 0.0);
        let two = CarlesonSet::from_points(&[0.0, 0.5]).unwrap();
        assert!((two.entropy() - 2f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn cantor_entropy_series() {
        let e = middle_thirds(0.25, 0.5);
        let series = series_oracle(200);
        let carrier = UnitCircleArc::new(0.25, 0.5).unwrap();
        assert!((e.local_entropy(&carrier) - series).abs() < 1e-12);
        // the outer gap of length 1/2 is part of Ent(E)
        assert!((e.entropy() - series - 0.5 * 2f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn local_entropy_split_piece() {
        let e = CarlesonSet::from_points(&[0.0]).unwrap();
        let i = UnitCircleArc::new(-0.1, 0.3).unwrap();
        let want = 0.1 * 10f64.ln() + 0.2 * 5f64.ln();
        assert!((e.local_entropy(&i) - want).abs() < 1e-14);
        let far = UnitCircleArc::new(0.4, 0.25).unwrap();
        assert!((e.local_entropy(&far) - 0.25 * 4f64.ln()).abs() < 1e-14);
    }

    #[test]
    fn log_dist_point_closed_form() {
        // I = [0, L] with E = {1}: ∫_0^L -log(2 sin πu) du
        let e = CarlesonSet::from_points(&[0.0]).unwrap();
        let l = 0.1;
        let i = UnitCircleArc::new(0.0, l).unwrap();
        let v = e.log_dist_integral(&i, DistanceMetric::NormalizedArc).unwrap();
        assert!((v - l * (1.0 - l.ln())).abs() < 1e-12);
    }

    #[test]
    fn log_dist_matches_closed_form_on_cantor() {
        let e = middle_thirds(0.1, 1e-4);
        let i = UnitCircleArc::new(0.1, 1e-4).unwrap();
        let v = e.log_dist_integral(&i, DistanceMetric::NormalizedArc).unwrap();
        assert!((v - block_log_dist(1e-4, 1.0 / 3.0, false)).abs() < 1e-15);
        assert!(v >= e.local_entropy(&i));
    }

    #[test]
    fn complementary_lengths_sum_to_one() {
        let e = middle_thirds(0.6, 0.3);
        let total: f64 = e.complementary_arcs(20).iter().map(|a| a.length()).sum();
        assert!((total - (1.0 - 0.3 * (2.0f64 / 3.0).powi(20))).abs() < 1e-12);
    }

    #[test]
    fn arcs_ending_at_gap_edges() {
        let carrier = UnitCircleArc::new(0.1, 0.3).unwrap();
        let e = CarlesonSet::new(vec![], vec![CantorBlock::new(carrier, 0.119).unwrap()]).unwrap();
        // inside a second-level gap
        assert!(!e.meets(&UnitCircleArc::new(0.125, 0.001).unwrap()));
        for (s, l) in [(0.13, 0.005), (0.125, 0.01), (0.1, 0.01)] {
            let i = UnitCircleArc::new(s, l).unwrap();
            assert!(e.meets(&i));
            let v = e.log_dist_integral(&i, DistanceMetric::NormalizedArc).unwrap();
            assert!(v.is_finite() && v >= e.local_entropy(&i), "{s} {l}: {v}");
        }
    }
}
