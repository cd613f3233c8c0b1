use serde::{Deserialize, Serialize};

use super::arc::{wrap01, UnitCircleArc};
use super::transport::{apply_chain, Transport};
use super::GeometryError;

/// Deepest level any traversal descends to.
pub const MAX_LEVEL: u32 = 60;

/// Relative tolerance under which a transported cylinder is treated as an
/// affine image of its base and closed forms are used.
const AFFINE_TOL: f64 = 1e-10;

/// Self-similar two-branch Cantor set: the carrier keeps its two outer
/// subarcs of relative length `ratio`, recursively. `transport` maps the
/// base set to its actual position.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CantorBlock {
    pub carrier: UnitCircleArc,
    pub ratio: f64,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub transport: Vec<Transport>,
}

/// A cylinder of the base construction: `level` halvings below the carrier.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Cylinder {
    pub level: u32,
    pub left: f64,
    pub len: f64,
}

impl Cylinder {
    pub fn children(&self, ratio: f64) -> [Cylinder; 2] {
        let l = self.len * ratio;
        [
            Cylinder { level: self.level + 1, left: self.left, len: l },
            Cylinder { level: self.level + 1, left: self.left + self.len - l, len: l },
        ]
    }

    /// Middle gap in base coordinates (start, length).
    pub fn gap(&self, ratio: f64) -> (f64, f64) {
        (self.left + self.len * ratio, self.len * (1.0 - 2.0 * ratio))
    }
}

/// Entropy contributed by the gaps inside a self-similar block of length
/// `len`: level m has 2^m gaps of length g·ratio^m with g = len(1 − 2·ratio).
pub fn block_entropy(len: f64, ratio: f64) -> f64 {
    if len <= 0.0 {
        return 0.0;
    }
    let q = 1.0 - 2.0 * ratio;
    let g = len * q;
    g * ((1.0 / g).ln() / q + (1.0 / ratio).ln() * 2.0 * ratio / (q * q))
}

/// ∫ over the gaps of a block of -log(distance to the set), with distance
/// either chordal (≈ 2π·turns at small scale) or normalized arc length.
pub fn block_log_dist(len: f64, ratio: f64, chordal: bool) -> f64 {
    if len <= 0.0 {
        return 0.0;
    }
    let q = 1.0 - 2.0 * ratio;
    let g = len * q;
    // one gap of length λ contributes λ(c − log λ)
    let c = if chordal { 1.0 - std::f64::consts::PI.ln() } else { 1.0 + 2f64.ln() };
    g * ((c - g.ln()) / q + (1.0 / ratio).ln() * 2.0 * ratio / (q * q))
}

impl CantorBlock {
    pub fn new(carrier: UnitCircleArc, ratio: f64) -> Result<Self, GeometryError> {
        if !(ratio > 0.0 && ratio < 0.5) {
            return Err(GeometryError::BadRatio(ratio));
        }
        if carrier.length() >= 1.0 {
            return Err(GeometryError::BadArc { start_turns: carrier.start_turns(), len_turns: carrier.length() });
        }
        Ok(Self { carrier, ratio, transport: Vec::new() })
    }

    pub fn root(&self) -> Cylinder {
        Cylinder { level: 0, left: self.carrier.start_turns(), len: self.carrier.length() }
    }

    pub fn has_mobius(&self) -> bool {
        self.transport.iter().any(|t| matches!(t, Transport::Mobius { .. }))
    }

    /// Maps a base point to its image (turns, unwrapped).
    pub fn map(&self, t: f64) -> f64 {
        apply_chain(&self.transport, t)
    }

    /// Image of a base interval: (start, length) in turns.
    pub fn image(&self, left: f64, len: f64) -> (f64, f64) {
        if self.transport.is_empty() {
            return (left, len);
        }
        let a = self.map(left);
        let b = self.map(left + len);
        let mut l = b - a;
        if l < 0.0 {
            l = wrap01(l);
        }
        (a, l)
    }

    pub fn image_of(&self, c: &Cylinder) -> (f64, f64) {
        self.image(c.left, c.len)
    }

    /// Convex hull of the block image as an arc.
    pub fn hull(&self) -> (f64, f64) {
        self.image_of(&self.root())
    }

    /// Whether the chain acts affinely on `c` to within tolerance.
    pub fn affine_on(&self, c: &Cylinder) -> bool {
        if !self.has_mobius() {
            return true;
        }
        let [l, r] = c.children(self.ratio);
        let a = self.image_of(&l).1;
        let b = self.image_of(&r).1;
        (a - b).abs() <= AFFINE_TOL * (a + b)
    }

    /// Gap entropy strictly inside the image of cylinder `c`.
    pub fn internal_entropy(&self, c: &Cylinder) -> f64 {
        let (_, len) = self.image_of(c);
        if len <= 0.0 {
            return 0.0;
        }
        if c.level >= MAX_LEVEL || self.affine_on(c) {
            return block_entropy(len, self.ratio);
        }
        let (g0, gl) = c.gap(self.ratio);
        let (_, glen) = self.image(g0, gl);
        let mut s = if glen > 0.0 { glen * (1.0 / glen).ln() } else { 0.0 };
        for ch in c.children(self.ratio) {
            s += self.internal_entropy(&ch);
        }
        s
    }

    /// Complementary arcs inside the hull down to `max_level` (as image
    /// start, length), plus the unresolved leaf cylinders.
    pub fn gaps_and_leaves(&self, max_level: u32) -> (Vec<(f64, f64)>, Vec<Cylinder>) {
        let mut gaps = Vec::new();
        let mut leaves = Vec::new();
        let mut stack = vec![self.root()];
        while let Some(c) = stack.pop() {
            if c.level >= max_level {
                leaves.push(c);
                continue;
            }
            let (g0, gl) = c.gap(self.ratio);
            gaps.push(self.image(g0, gl));
            let [a, b] = c.children(self.ratio);
            stack.push(b);
            stack.push(a);
        }
        (gaps, leaves)
    }
}
