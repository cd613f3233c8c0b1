use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::{PI, TAU};

use super::arc::{wrap01, UnitCircleArc, ENDPOINT_TOL};
use super::cantor::{CantorBlock, Cylinder};
use super::carleson::CarlesonSet;
use super::transport::{apply_chain, chain_weight, Transport};
use super::GeometryError;
use crate::quadrature::cantor_rule;

/// Default recursion depth of Cantor components.
pub const DEFAULT_DEPTH: u32 = 30;

/// A cylinder is integrated by its Gauss rule once its diameter is below
/// this fraction of the distance to every singularity.
const ACCEPT_RATIO: f64 = 0.15;
const RULE_POINTS: usize = 6;
const SUPPORT_FLOOR: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Atom {
    pub angle_turns: f64,
    pub mass: f64,
}

/// Self-similar Cantor measure: equal mass splitting on the two branches
/// of the generator with contraction `ratio`, truncated at `depth` levels.
/// `mass` is the mass before transport; Möbius stages reweight it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CantorComponent {
    pub arc: UnitCircleArc,
    pub mass: f64,
    pub ratio: f64,
    pub depth: u32,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub transport: Vec<Transport>,
}

/// Positive singular measure: atoms plus Cantor components.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize, Default)]
pub struct SingularMeasure {
    #[serde(default)]
    pub atoms: Vec<Atom>,
    #[serde(default)]
    pub cantor: Vec<CantorComponent>,
}

fn point(t: f64) -> Complex64 {
    let (s, c) = (TAU * t).sin_cos();
    Complex64::new(c, s)
}

/// Distance from z to the arc starting at `a` of length `len` (turns).
pub fn distance_to_arc(z: Complex64, a: f64, len: f64) -> f64 {
    let r = z.norm();
    if r > 0.0 {
        let tz = z.arg() / TAU;
        if wrap01(tz - a) <= len {
            return (r - 1.0).abs();
        }
    }
    (z - point(a)).norm().min((z - point(a + len)).norm())
}

fn chord_len(len: f64) -> f64 {
    2.0 * (PI * len.min(0.5)).sin()
}

impl CantorComponent {
    pub fn new(arc: UnitCircleArc, mass: f64, ratio: f64, depth: u32) -> Result<Self, GeometryError> {
        if !(mass > 0.0) {
            return Err(GeometryError::NonPositiveMass(mass));
        }
        CantorBlock::new(arc, ratio)?;
        Ok(Self { arc, mass, ratio, depth, transport: Vec::new() })
    }

    pub fn block(&self) -> CantorBlock {
        CantorBlock { carrier: self.arc, ratio: self.ratio, transport: self.transport.clone() }
    }

    fn cylinder_mass(&self, c: &Cylinder) -> f64 {
        self.mass * 0.5f64.powi(c.level as i32)
    }

    /// Decides whether the Gauss rule may be used on `c` for a kernel
    /// singular at `target`; returns the distance to the target image.
    fn accepts(&self, c: &Cylinder, target: Option<Complex64>) -> (bool, f64) {
        let mut a = c.left;
        let mut b = c.left + c.len;
        let mut ok = true;
        for s in &self.transport {
            if let Some(d) = s.pole_distance(a, b) {
                if chord_len(b - a) > ACCEPT_RATIO * d {
                    ok = false;
                }
            }
            a = s.apply(a);
            b = s.apply(b);
        }
        let len = wrap01(b - a);
        let len = if len == 0.0 && b > a { 1.0 } else { len };
        match target {
            Some(z) => {
                let d = distance_to_arc(z, a, len);
                (ok && chord_len(len) <= ACCEPT_RATIO * d, d)
            }
            None => (ok, f64::INFINITY),
        }
    }

    /// Visits quadrature points (image turn, mass) resolving the kernel
    /// singularity at `target` (none for plain mass integrals).
    pub fn quadrature<F: FnMut(f64, f64)>(&self, target: Option<Complex64>, visit: &mut F) -> Result<(), GeometryError> {
        let rule = cantor_rule(self.ratio, RULE_POINTS);
        let root = CantorBlock { carrier: self.arc, ratio: self.ratio, transport: Vec::new() }.root();
        let mut stack = vec![root];
        while let Some(c) = stack.pop() {
            let (ok, d) = self.accepts(&c, target);
            if !ok && c.level < self.depth {
                let [l, r] = c.children(self.ratio);
                stack.push(r);
                stack.push(l);
                continue;
            }
            if !ok && d < SUPPORT_FLOOR {
                return Err(GeometryError::PointOnSupport(d));
            }
            let m = self.cylinder_mass(&c);
            for (x, w) in rule.nodes.iter().zip(&rule.weights) {
                let t = c.left + c.len * x;
                let wt = if self.transport.is_empty() { 1.0 } else { chain_weight(&self.transport, t) };
                visit(apply_chain(&self.transport, t), m * w * wt);
            }
        }
        Ok(())
    }

    /// Mass after transport.
    pub fn effective_mass(&self) -> f64 {
        if !self.transport.iter().any(|t| matches!(t, Transport::Mobius { .. })) {
            return self.mass;
        }
        let mut total = 0.0;
        self.quadrature(None, &mut |_, m| total += m).expect("mass integral has no target");
        total
    }

    /// Sub-components covering the part of the measure inside `arc`.
    /// Cylinders straddling the arc boundary are split down to `depth`;
    /// a straddling leaf is kept when its image midpoint lies in the arc.
    pub fn restrict(&self, arc: &UnitCircleArc) -> Vec<CantorComponent> {
        let block = self.block();
        let mut out = Vec::new();
        let mut stack = vec![block.root()];
        while let Some(c) = stack.pop() {
            let (a, l) = block.image_of(&c);
            if arc.misses(a, l) {
                continue;
            }
            let inside = arc.covers(a, l);
            if inside || c.level >= self.depth {
                if inside || arc.contains(a + 0.5 * l) {
                    out.push(self.sub_component(&c));
                }
                continue;
            }
            let [lc, rc] = c.children(self.ratio);
            stack.push(rc);
            stack.push(lc);
        }
        out
    }

    /// The component carried by one base cylinder.
    pub fn sub_component(&self, c: &Cylinder) -> CantorComponent {
        CantorComponent {
            arc: UnitCircleArc::new(c.left, c.len).expect("cylinder length is positive"),
            mass: self.cylinder_mass(c),
            ratio: self.ratio,
            depth: self.depth.saturating_sub(c.level),
            transport: self.transport.clone(),
        }
    }
}

impl SingularMeasure {
    pub fn new(atoms: Vec<Atom>, cantor: Vec<CantorComponent>) -> Result<Self, GeometryError> {
        let m = Self { atoms, cantor };
        m.validate()?;
        Ok(m)
    }

    pub fn point_mass(angle_turns: f64, mass: f64) -> Self {
        Self { atoms: vec![Atom { angle_turns, mass }], cantor: Vec::new() }
    }

    pub fn validate(&self) -> Result<(), GeometryError> {
        for a in &self.atoms {
            if !(a.mass > 0.0) {
                return Err(GeometryError::NonPositiveMass(a.mass));
            }
        }
        for c in &self.cantor {
            if !(c.mass > 0.0) {
                return Err(GeometryError::NonPositiveMass(c.mass));
            }
            CantorBlock::new(c.arc, c.ratio)?;
        }
        if self.atoms.is_empty() && self.cantor.is_empty() {
            return Err(GeometryError::EmptySet);
        }
        Ok(())
    }

    pub fn has_atoms(&self) -> bool {
        !self.atoms.is_empty()
    }

    /// μ(T).
    pub fn total_mass(&self) -> f64 {
        self.atoms.iter().map(|a| a.mass).sum::<f64>() + self.cantor.iter().map(|c| c.effective_mass()).sum::<f64>()
    }

    /// Closed support as a Carleson set.
    pub fn support(&self) -> Result<CarlesonSet, GeometryError> {
        CarlesonSet::new(self.atoms.iter().map(|a| a.angle_turns).collect(), self.cantor.iter().map(|c| c.block()).collect())
    }

    /// ∫ (ζ + z)/(ζ − z) dμ(ζ), valid on both sides of the circle off the
    /// support.
    pub fn schwarz_integral(&self, z: Complex64) -> Result<Complex64, GeometryError> {
        let mut total = Complex64::new(0.0, 0.0);
        for a in &self.atoms {
            let zeta = point(a.angle_turns);
            let d = zeta - z;
            if d.norm() < SUPPORT_FLOOR {
                return Err(GeometryError::PointOnSupport(d.norm()));
            }
            total += a.mass * (zeta + z) / d;
        }
        for c in &self.cantor {
            c.quadrature(Some(z), &mut |t, m| {
                let zeta = point(t);
                total += m * (zeta + z) / (zeta - z);
            })?;
        }
        Ok(total)
    }

    /// ∫ g dμ for a smooth g of the boundary point (turns).
    pub fn integrate<G: FnMut(f64) -> f64>(&self, mut g: G) -> f64 {
        let mut total: f64 = self.atoms.iter().map(|a| a.mass * g(a.angle_turns)).sum();
        for c in &self.cantor {
            c.quadrature(None, &mut |t, m| total += m * g(t)).expect("no target");
        }
        total
    }

    /// μ restricted to a closed arc.
    pub fn restrict(&self, arc: &UnitCircleArc) -> SingularMeasure {
        SingularMeasure {
            atoms: self.atoms.iter().copied().filter(|a| arc.contains_closed(a.angle_turns)).collect(),
            cantor: self.cantor.iter().flat_map(|c| c.restrict(arc)).collect(),
        }
    }

    /// μ(I).
    pub fn mass_of(&self, arc: &UnitCircleArc) -> f64 {
        self.restrict(arc).total_mass()
    }

    pub fn scaled(&self, factor: f64) -> SingularMeasure {
        SingularMeasure {
            atoms: self.atoms.iter().map(|a| Atom { angle_turns: a.angle_turns, mass: a.mass * factor }).collect(),
            cantor: self.cantor.iter().map(|c| CantorComponent { mass: c.mass * factor, ..c.clone() }).collect(),
        }
    }

    fn push_stage(&self, stage: Transport) -> SingularMeasure {
        SingularMeasure {
            atoms: self
                .atoms
                .iter()
                .map(|a| Atom { angle_turns: wrap01(stage.apply(a.angle_turns)), mass: a.mass * stage.weight(a.angle_turns) })
                .collect(),
            cantor: self
                .cantor
                .iter()
                .map(|c| {
                    let mut c = c.clone();
                    c.transport.push(stage);
                    c
                })
                .collect(),
        }
    }

    pub fn rotated(&self, turns: f64) -> SingularMeasure {
        self.push_stage(Transport::Rotate { turns })
    }

    /// Measure of S_μ ∘ φ_{−r}: support moved by φ_r, density multiplied by
    /// the Poisson factor (1 − r²)/|ζ − r|².
    pub fn mobius_pushforward(&self, r: f64) -> Result<SingularMeasure, GeometryError> {
        if !(r > 0.0 && r < 1.0) {
            return Err(GeometryError::BadRadius(r));
        }
        Ok(self.push_stage(Transport::Mobius { r }))
    }

    /// Hull of the support as (start in [0,1), length), assuming the
    /// support is not spread around the whole circle.
    fn pieces(&self) -> Vec<(f64, f64)> {
        let mut v: Vec<(f64, f64)> = self.atoms.iter().map(|a| (wrap01(a.angle_turns), 0.0)).collect();
        for c in &self.cantor {
            let (a, l) = c.block().hull();
            v.push((wrap01(a), l));
        }
        v
    }

    /// Pulls the support of [1, e^{iγ}] back to [1, e^{iγ/M}] (θ ↦ θ/M),
    /// mass preserved.
    pub fn dilate(&self, factor: u32) -> Result<SingularMeasure, GeometryError> {
        if factor == 0 {
            return Err(GeometryError::BadFactor(factor));
        }
        for (a, l) in self.pieces() {
            let a = if a > 1.0 - 1e-12 { a - 1.0 } else { a };
            if a < -1e-12 || a + l > 1.0 + ENDPOINT_TOL {
                return Err(GeometryError::SupportNotAdmissible);
            }
        }
        if factor == 1 {
            return Ok(self.clone());
        }
        Ok(self.push_stage(Transport::Compress { factor }))
    }

    /// M rotated copies by multiples of 1/M turns.
    pub fn periodize(&self, factor: u32) -> Result<SingularMeasure, GeometryError> {
        if factor == 0 {
            return Err(GeometryError::BadFactor(factor));
        }
        if factor == 1 {
            return Ok(self.clone());
        }
        // the support must sit in an arc shorter than 1/M
        let mut starts: Vec<(f64, f64)> = self.pieces();
        starts.sort_by(|x, y| x.0.partial_cmp(&y.0).unwrap());
        let n = starts.len();
        let mut widest_gap = 0.0f64;
        let mut hull = 1.0;
        for i in 0..n {
            let (a, l) = starts[i];
            let (b, _) = starts[(i + 1) % n];
            let gap = if n == 1 { 1.0 - l } else { wrap01(b - a - l) };
            if gap > widest_gap {
                widest_gap = gap;
                hull = 1.0 - gap;
            }
        }
        if hull >= 1.0 / factor as f64 {
            return Err(GeometryError::SupportNotAdmissible);
        }
        let mut out = SingularMeasure::default();
        for k in 0..factor {
            let copy = self.rotated(k as f64 / factor as f64);
            out.atoms.extend(copy.atoms);
            out.cantor.extend(copy.cantor);
        }
        Ok(out)
    }
}
