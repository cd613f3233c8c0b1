use std::cmp::Ordering;
use std::collections::BinaryHeap;

use super::arc::UnitCircleArc;
use super::cantor::Cylinder;
use super::carleson::CarlesonSet;
use super::measure::{CantorComponent, SingularMeasure};
use super::GeometryError;

/// Arc returned by the small-entropy search, with the quantities that
/// certify it.
#[derive(Clone, Debug)]
pub struct SmallEntropyArc {
    pub arc: UnitCircleArc,
    pub mass: f64,
    pub local_entropy: f64,
    /// Component of the measure and base cylinder whose image is the arc.
    pub component: usize,
    pub cylinder: Cylinder,
    /// Number of largest gaps removed before splitting.
    pub removed_gaps: usize,
}

struct ByGap {
    gap: f64,
    cyl: Cylinder,
}

impl PartialEq for ByGap {
    fn eq(&self, other: &Self) -> bool {
        self.gap == other.gap
    }
}
impl Eq for ByGap {}
impl PartialOrd for ByGap {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for ByGap {
    fn cmp(&self, other: &Self) -> Ordering {
        self.gap.partial_cmp(&other.gap).unwrap_or(Ordering::Equal).then(other.cyl.left.partial_cmp(&self.cyl.left).unwrap_or(Ordering::Equal))
    }
}

const MAX_REMOVED: usize = 1 << 22;

/// Finds an arc J with 0 < μ(J) < δ and Ent_J(E)/μ(J) < ε.
///
/// Start from a cylinder I of mass below δ, remove the largest gaps of I
/// until the entropy of the rest drops below ε·μ(I), and return the first
/// remaining closed piece whose entropy-to-mass ratio is below ε.
pub fn find_small_entropy_arc(
    mu: &SingularMeasure,
    set: &CarlesonSet,
    eps: f64,
    delta: f64,
) -> Result<SmallEntropyArc, GeometryError> {
    if mu.has_atoms() {
        return Err(GeometryError::AtomicMeasure);
    }
    if !(eps > 0.0 && delta > 0.0) {
        return Err(GeometryError::BadThreshold { eps, delta });
    }
    let (index, comp) = mu.cantor.iter().enumerate().next().ok_or(GeometryError::EmptySet)?;
    let block = comp.block();

    // starting cylinder of mass below δ
    let mut start = block.root();
    let mut start_mass = comp.effective_mass();
    while start_mass >= delta {
        if start.level >= comp.depth {
            return Err(GeometryError::SearchExhausted(format!("no cylinder lighter than {delta} above depth {}", comp.depth)));
        }
        start = start.children(comp.ratio)[0];
        start_mass = comp.sub_component(&start).effective_mass();
    }
    let target = eps * start_mass;

    let gap_len = |c: &Cylinder| {
        let (g0, gl) = c.gap(comp.ratio);
        block.image(g0, gl).1
    };
    let mut tail = block.internal_entropy(&start);
    let mut heap = BinaryHeap::new();
    heap.push(ByGap { gap: gap_len(&start), cyl: start });
    let mut removed = 0usize;
    while tail >= target {
        let top = heap.pop().expect("heap never empties");
        if top.cyl.level + 1 >= comp.depth || removed >= MAX_REMOVED {
            return Err(GeometryError::SearchExhausted(format!(
                "tail entropy {tail:.3e} still above {target:.3e} after {removed} gaps"
            )));
        }
        if top.gap > 0.0 {
            tail -= top.gap * (1.0 / top.gap).ln();
        }
        for ch in top.cyl.children(comp.ratio) {
            heap.push(ByGap { gap: gap_len(&ch), cyl: ch });
        }
        removed += 1;
    }

    let mut pieces: Vec<Cylinder> = heap.into_iter().map(|b| b.cyl).collect();
    pieces.sort_by(|a, b| a.left.partial_cmp(&b.left).unwrap());
    for cyl in pieces {
        let sub: CantorComponent = comp.sub_component(&cyl);
        let mass = sub.effective_mass();
        let ent = block.internal_entropy(&cyl);
        if mass > 0.0 && ent < eps * mass {
            let (a, l) = block.image_of(&cyl);
            let arc = UnitCircleArc::new(a, l)?;
            // self-check against the generic functionals
            let m_check = mu.mass_of(&arc);
            let e_check = set.local_entropy(&arc);
            if !(m_check > 0.0 && m_check < delta && e_check < eps * m_check) {
                return Err(GeometryError::SearchExhausted(format!(
                    "post-check failed: mass {m_check:.3e}, entropy {e_check:.3e}"
                )));
            }
            return Ok(SmallEntropyArc {
                arc,
                mass: m_check,
                local_entropy: e_check,
                component: index,
                cylinder: cyl,
                removed_gaps: removed,
            });
        }
    }
    Err(GeometryError::SearchExhausted("no piece met the entropy bound".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circle_geometry::measure::DEFAULT_DEPTH;

    fn standard() -> SingularMeasure {
        let arc = UnitCircleArc::new(0.25, 0.5).unwrap();
        SingularMeasure::new(vec![], vec![CantorComponent::new(arc, 1.0, 1.0 / 3.0, DEFAULT_DEPTH).unwrap()]).unwrap()
    }

    #[test]
    fn standard_cantor_search() {
        let mu = standard();
        let e = mu.support().unwrap();
        let j = find_small_entropy_arc(&mu, &e, 0.1, 0.1).unwrap();
        assert!(j.mass > 0.0 && j.mass < 0.1);
        assert!(j.local_entropy / j.mass < 0.1);
    }

    #[test]
    fn large_delta_is_fine() {
        let mu = standard();
        let e = mu.support().unwrap();
        let j = find_small_entropy_arc(&mu, &e, 0.5, 10.0).unwrap();
        assert!(j.local_entropy < 0.5 * j.mass);
    }

    #[test]
    fn atoms_rejected() {
        let mu = SingularMeasure::point_mass(0.0, 1.0);
        let e = mu.support().unwrap();
        assert!(matches!(find_small_entropy_arc(&mu, &e, 0.1, 0.1), Err(GeometryError::AtomicMeasure)));
    }
}
