//! Arcs, Carleson sets, singular measures and the entropy functionals,
//! plus the measure transports used by the construction (Möbius
//! push-forward, angle compression, periodic expansion).

mod arc;
mod cantor;
mod carleson;
mod measure;
mod search;
mod transport;

pub use arc::{chord, wrap01, wrap_signed, UnitCircleArc, ENDPOINT_TOL};
pub use cantor::{block_entropy, block_log_dist, CantorBlock, Cylinder, MAX_LEVEL};
pub use carleson::{CarlesonSet, DistanceMetric};
pub use measure::{distance_to_arc, Atom, CantorComponent, SingularMeasure, DEFAULT_DEPTH};
pub use search::{find_small_entropy_arc, SmallEntropyArc};
pub use transport::{apply_chain, chain_weight, invert_chain, Transport};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeometryError {
    #[error("invalid arc: start {start_turns} turns, length {len_turns} turns")]
    BadArc { start_turns: f64, len_turns: f64 },
    #[error("contraction ratio {0} outside (0, 1/2)")]
    BadRatio(f64),
    #[error("mass must be positive, got {0}")]
    NonPositiveMass(f64),
    #[error("set or measure is empty")]
    EmptySet,
    #[error("pieces of the set overlap")]
    OverlappingPieces,
    #[error("radius {0} outside (0, 1)")]
    BadRadius(f64),
    #[error("factor must be positive, got {0}")]
    BadFactor(u32),
    #[error("support not contained in the admissible arc")]
    SupportNotAdmissible,
    #[error("point at distance {0:e} from the support")]
    PointOnSupport(f64),
    #[error("measure has atoms; a continuous measure is required")]
    AtomicMeasure,
    #[error("thresholds must be positive (eps {eps}, delta {delta})")]
    BadThreshold { eps: f64, delta: f64 },
    #[error("search exhausted: {0}")]
    SearchExhausted(String),
    #[error("complementary piece of length {0} exceeds 1/e")]
    PieceTooLong(f64),
    #[error("quadrature did not converge, achieved {achieved:e}")]
    QuadratureFailed { achieved: f64 },
}

/// Extreme stretch factors |φ_r(J)|/|J| over the complementary arcs J of a
/// set lying in `arc`, resolved to `max_level`.
pub fn mobius_arc_stretch(set: &CarlesonSet, arc: &UnitCircleArc, r: f64, max_level: u32) -> (f64, f64) {
    let m = Transport::Mobius { r };
    let mut lo = f64::INFINITY;
    let mut hi: f64 = 0.0;
    for j in set.complementary_arcs(max_level) {
        if !arc.covers(j.start_turns(), j.length()) {
            continue;
        }
        let a = m.apply(j.start_turns());
        let b = m.apply(j.start_turns() + j.length());
        let ratio = (b - a) / j.length();
        lo = lo.min(ratio);
        hi = hi.max(ratio);
    }
    (lo, hi)
}
