use num_complex::Complex64;

/// Segments per leaf of the box hierarchy.
const LEAF: usize = 8;
/// A pair of non-neighbouring pieces counts as a near approach when its
/// distance is below this multiple of the local sample step.
pub const CLEARANCE_FACTOR: f64 = 10.0;

#[derive(Clone, Copy, Debug)]
struct Bbox {
    x0: f64,
    x1: f64,
    y0: f64,
    y1: f64,
}

impl Bbox {
    fn of(a: Complex64, b: Complex64) -> Self {
        Self { x0: a.re.min(b.re), x1: a.re.max(b.re), y0: a.im.min(b.im), y1: a.im.max(b.im) }
    }

    fn union(&self, o: &Bbox) -> Self {
        Self { x0: self.x0.min(o.x0), x1: self.x1.max(o.x1), y0: self.y0.min(o.y0), y1: self.y1.max(o.y1) }
    }

    fn gap(&self, o: &Bbox) -> f64 {
        let dx = (o.x0 - self.x1).max(self.x0 - o.x1).max(0.0);
        let dy = (o.y0 - self.y1).max(self.y0 - o.y1).max(0.0);
        dx.hypot(dy)
    }
}

struct Node {
    lo: usize,
    hi: usize,
    bbox: Bbox,
    max_seg: f64,
    kids: Option<(usize, usize)>,
}

/// Closed polyline through the samples, with a box hierarchy over
/// consecutive index ranges.
pub struct ClosedPolyline<'a> {
    pts: &'a [Complex64],
    /// cum[i] = length of the path from vertex 0 to vertex i.
    cum: Vec<f64>,
    nodes: Vec<Node>,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NearApproach {
    pub seg_a: usize,
    pub seg_b: usize,
    pub distance: f64,
    pub local_step: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub enum SweepOutcome {
    Crossing { seg_a: usize, seg_b: usize },
    Simple {
        min_step: f64,
        /// Closest approach of non-neighbouring pieces, if any came within
        /// the clearance window.
        nearest: Option<NearApproach>,
    },
}

fn orient(a: Complex64, b: Complex64, c: Complex64) -> f64 {
    (b - a).re * (c - a).im - (b - a).im * (c - a).re
}

fn on_segment(a: Complex64, b: Complex64, p: Complex64) -> bool {
    p.re >= a.re.min(b.re) && p.re <= a.re.max(b.re) && p.im >= a.im.min(b.im) && p.im <= a.im.max(b.im)
}

/// Closed-segment intersection, collinear overlap included.
pub fn segments_intersect(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> bool {
    let d1 = orient(c, d, a);
    let d2 = orient(c, d, b);
    let d3 = orient(a, b, c);
    let d4 = orient(a, b, d);
    if ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0)) && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0)) {
        return true;
    }
    (d1 == 0.0 && on_segment(c, d, a))
        || (d2 == 0.0 && on_segment(c, d, b))
        || (d3 == 0.0 && on_segment(a, b, c))
        || (d4 == 0.0 && on_segment(a, b, d))
}

fn point_segment(p: Complex64, a: Complex64, b: Complex64) -> f64 {
    let ab = b - a;
    let l2 = ab.norm_sqr();
    let t = if l2 > 0.0 { (((p - a) * ab.conj()).re / l2).clamp(0.0, 1.0) } else { 0.0 };
    (p - (a + ab * t)).norm()
}

/// Distance between two non-intersecting segments.
pub fn segment_distance(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> f64 {
    point_segment(a, c, d).min(point_segment(b, c, d)).min(point_segment(c, a, b)).min(point_segment(d, a, b))
}

impl<'a> ClosedPolyline<'a> {
    pub fn new(pts: &'a [Complex64]) -> Self {
        let n = pts.len();
        let mut cum = Vec::with_capacity(n + 1);
        cum.push(0.0);
        for i in 0..n {
            let l = (pts[(i + 1) % n] - pts[i]).norm();
            cum.push(cum[i] + l);
        }
        let mut p = Self { pts, cum, nodes: Vec::new() };
        if n >= 3 {
            p.build(0, n);
        }
        p
    }

    fn seg(&self, i: usize) -> (Complex64, Complex64) {
        (self.pts[i], self.pts[(i + 1) % self.pts.len()])
    }

    fn seg_len(&self, i: usize) -> f64 {
        self.cum[i + 1] - self.cum[i]
    }

    fn build(&mut self, lo: usize, hi: usize) -> usize {
        let (kids, bbox, max_seg) = if hi - lo <= LEAF {
            let mut b = {
                let (a, c) = self.seg(lo);
                Bbox::of(a, c)
            };
            let mut m: f64 = 0.0;
            for i in lo..hi {
                let (a, c) = self.seg(i);
                b = b.union(&Bbox::of(a, c));
                m = m.max(self.seg_len(i));
            }
            (None, b, m)
        } else {
            let mid = (lo + hi) / 2;
            let l = self.build(lo, mid);
            let r = self.build(mid, hi);
            let b = self.nodes[l].bbox.union(&self.nodes[r].bbox);
            (Some((l, r)), b, self.nodes[l].max_seg.max(self.nodes[r].max_seg))
        };
        self.nodes.push(Node { lo, hi, bbox, max_seg, kids });
        self.nodes.len() - 1
    }

    pub fn total_length(&self) -> f64 {
        *self.cum.last().unwrap_or(&0.0)
    }

    pub fn diameter_bound(&self) -> f64 {
        match self.nodes.last() {
            Some(n) => (n.bbox.x1 - n.bbox.x0).hypot(n.bbox.y1 - n.bbox.y0),
            None => 0.0,
        }
    }

    /// Length of the shorter path along the curve between segments i < j.
    fn path_between(&self, i: usize, j: usize) -> f64 {
        let inner = self.cum[j] - self.cum[i + 1];
        let outer = self.total_length() - (self.cum[j + 1] - self.cum[i]);
        inner.min(outer).max(0.0)
    }

    fn adjacent(&self, i: usize, j: usize) -> bool {
        let n = self.pts.len();
        j == i + 1 || (i == 0 && j == n - 1)
    }

    /// Checks every pair of non-adjacent segments for a crossing and
    /// records the closest approach of pieces that are near in the plane
    /// but far along the curve.
    pub fn sweep(&self) -> SweepOutcome {
        let n = self.pts.len();
        let min_step = (0..n).map(|i| self.seg_len(i)).fold(f64::INFINITY, f64::min);
        if n < 3 {
            return SweepOutcome::Simple { min_step, nearest: None };
        }
        let root = self.nodes.len() - 1;
        let mut nearest: Option<NearApproach> = None;
        let mut stack = vec![(root, root)];
        while let Some((a, b)) = stack.pop() {
            let (na, nb) = (&self.nodes[a], &self.nodes[b]);
            if a == b {
                match na.kids {
                    Some((l, r)) => {
                        stack.push((l, l));
                        stack.push((r, r));
                        stack.push((l, r));
                    }
                    None => {
                        for i in na.lo..na.hi {
                            for j in i + 1..na.hi {
                                if let Some(c) = self.test_pair(i, j, &mut nearest) {
                                    return c;
                                }
                            }
                        }
                    }
                }
                continue;
            }
            let window = CLEARANCE_FACTOR * na.max_seg.max(nb.max_seg);
            if na.bbox.gap(&nb.bbox) > window {
                continue;
            }
            match (na.kids, nb.kids) {
                (None, None) => {
                    for i in na.lo..na.hi {
                        for j in nb.lo..nb.hi {
                            let (x, y) = if i < j { (i, j) } else { (j, i) };
                            if let Some(c) = self.test_pair(x, y, &mut nearest) {
                                return c;
                            }
                        }
                    }
                }
                (Some((l, r)), None) => {
                    stack.push((l, b));
                    stack.push((r, b));
                }
                (None, Some((l, r))) => {
                    stack.push((a, l));
                    stack.push((a, r));
                }
                (Some((l1, r1)), Some((l2, r2))) => {
                    if na.hi - na.lo >= nb.hi - nb.lo {
                        stack.push((l1, b));
                        stack.push((r1, b));
                    } else {
                        stack.push((a, l2));
                        stack.push((a, r2));
                    }
                }
            }
        }
        SweepOutcome::Simple { min_step, nearest }
    }

    fn test_pair(&self, i: usize, j: usize, nearest: &mut Option<NearApproach>) -> Option<SweepOutcome> {
        if self.adjacent(i, j) {
            return None;
        }
        let (a, b) = self.seg(i);
        let (c, d) = self.seg(j);
        if segments_intersect(a, b, c, d) {
            return Some(SweepOutcome::Crossing { seg_a: i, seg_b: j });
        }
        let local_step = self.seg_len(i).max(self.seg_len(j));
        let dist = segment_distance(a, b, c, d);
        // close in the plane, far along the curve
        if dist < CLEARANCE_FACTOR * local_step && dist < 0.5 * self.path_between(i, j) {
            if nearest.is_none_or(|m| dist < m.distance) {
                *nearest = Some(NearApproach { seg_a: i, seg_b: j, distance: dist, local_step });
            }
        }
        None
    }
}

/// Winding number of the closed polygon around w (exact for the polygon).
pub fn polygon_winding(pts: &[Complex64], w: Complex64) -> i64 {
    let n = pts.len();
    let mut wn = 0i64;
    for i in 0..n {
        let a = pts[i] - w;
        let b = pts[(i + 1) % n] - w;
        if a.im <= 0.0 {
            if b.im > 0.0 && orient(a, b, Complex64::new(0.0, 0.0)) > 0.0 {
                wn += 1;
            }
        } else if b.im <= 0.0 && orient(a, b, Complex64::new(0.0, 0.0)) < 0.0 {
            wn -= 1;
        }
    }
    wn
}

/// Smallest distance from w to the polygon.
pub fn polygon_distance(pts: &[Complex64], w: Complex64) -> f64 {
    let n = pts.len();
    (0..n).map(|i| point_segment(w, pts[i], pts[(i + 1) % n])).fold(f64::INFINITY, f64::min)
}
