use num_complex::Complex64;
use std::f64::consts::{PI, TAU};

use super::series::CoefficientSeries;
use super::NumericsError;
use crate::circle_geometry::{block_log_dist, distance_to_arc, wrap01, CantorBlock, CarlesonSet, MAX_LEVEL};
use crate::quadrature::{gauss_legendre, graded_panels};

/// Relative size of the innermost graded panel at a gap endpoint.
const GRADE_FLOOR: f64 = 1e-12;
/// Panels are split until their chord is below this fraction of the
/// distance to the evaluation point.
const NEAR_RATIO: f64 = 0.25;
/// Cylinders shorter than this fraction of their distance to z (and than
/// LEAF_MAX) are integrated in closed form.
const LEAF_RATIO: f64 = 0.01;
const LEAF_MAX: f64 = 1e-6;
/// Gaps with n·len below this use a moment expansion of the harmonics.
const SHORT_GAP: f64 = 0.05;
const MOMENTS: usize = 7;

fn point(t: f64) -> Complex64 {
    let (s, c) = (TAU * t).sin_cos();
    Complex64::new(c, s)
}

/// |1 − e^{2πiu}|.
fn chord_turns(u: f64) -> f64 {
    (2.0 * (PI * u).sin()).abs()
}

/// Walks the complement of E: explicit complementary arcs go to `gap`,
/// cylinders that `descend` declines go to `leaf` as (block, start, len).
fn walk_complement(
    set: &CarlesonSet,
    descend: &dyn Fn(f64, f64) -> bool,
    gap: &mut dyn FnMut(f64, f64),
    leaf: &mut dyn FnMut(&CantorBlock, f64, f64),
) {
    for (a, l) in set.outer_gaps() {
        gap(a, l);
    }
    for b in &set.blocks {
        let mut stack = vec![b.root()];
        while let Some(c) = stack.pop() {
            let (a, l) = b.image_of(&c);
            if c.level < MAX_LEVEL && l > 1e-300 && descend(a, l) {
                let (g0, gl) = c.gap(b.ratio);
                let (ga, glen) = b.image(g0, gl);
                gap(ga, glen);
                stack.extend(c.children(b.ratio));
            } else {
                leaf(b, a, l);
            }
        }
    }
}

/// Quadrature nodes (turn, weight) for one complementary arc: graded
/// toward both ends, with every panel shorter than `max_panel` and, when
/// `z` is given, resolved down to the distance from z.
fn gap_nodes(start: f64, len: f64, z: Option<Complex64>, max_panel: f64, visit: &mut dyn FnMut(f64, f64, f64)) {
    let rule = gauss_legendre(16);
    let mut stack: Vec<(f64, f64, u32)> = graded_panels(0.0, len, true, true, GRADE_FLOOR).into_iter().map(|(a, b)| (a, b, 0)).collect();
    while let Some((lo, hi, depth)) = stack.pop() {
        let h = hi - lo;
        let split = depth < 60
            && (h > max_panel
                || z.is_some_and(|z| 2.0 * (PI * h.min(0.5)).sin() > NEAR_RATIO * distance_to_arc(z, start + lo, h)));
        if split {
            let m = 0.5 * (lo + hi);
            stack.push((lo, m, depth + 1));
            stack.push((m, hi, depth + 1));
            continue;
        }
        for (x, w) in rule.nodes.iter().zip(&rule.weights) {
            let u = lo + h * x;
            // distance to E is the distance to the nearer end of the gap
            let d = chord_turns(u).min(chord_turns(len - u));
            visit(start + u, d, w * h);
        }
    }
}

/// log dist(e^{2πit}, E) when t lies in a complementary arc, else None.
fn log_dist_at(set: &CarlesonSet, t: f64) -> Option<f64> {
    let inside = |a: f64, l: f64| wrap01(t - a) <= l;
    let mut found = None;
    walk_complement(
        set,
        &|a, l| l > 1e-15 && inside(a, l),
        &mut |a, l| {
            if found.is_none() && inside(a, l) {
                let u = wrap01(t - a);
                found = Some(chord_turns(u).min(chord_turns(l - u)).ln());
            }
        },
        &mut |_, _, _| {},
    );
    found.filter(|v| v.is_finite())
}

/// ∫ (ζ+z)/(ζ−z) log dist(ζ, E) dm(ζ) for |z| < 1.
///
/// Near the circle the value c = log dist(z/|z|, E) is subtracted from the
/// integrand and added back (∫ (ζ+z)/(ζ−z) dm = 1), which keeps the
/// rounding of ζ − z from being amplified by the kernel.
pub fn log_distance_schwarz(set: &CarlesonSet, z: Complex64) -> Result<Complex64, NumericsError> {
    if !(z.norm() < 1.0) {
        return Err(NumericsError::NotInDisc(z));
    }
    let c = if z.norm() > 0.99 { log_dist_at(set, wrap01(z.arg() / TAU)).unwrap_or(0.0) } else { 0.0 };
    let kernel = |t: f64| {
        let zeta = point(t);
        (zeta + z) / (zeta - z)
    };
    let descend = |a: f64, l: f64| l > LEAF_MAX || l > LEAF_RATIO * distance_to_arc(z, a, l);
    let mut acc_gap = Complex64::new(0.0, 0.0);
    let mut acc_leaf = Complex64::new(0.0, 0.0);
    walk_complement(
        set,
        &descend,
        &mut |a, l| gap_nodes(a, l, Some(z), f64::INFINITY, &mut |t, d, w| acc_gap += kernel(t) * ((d.ln() - c) * w)),
        &mut |b, a, l| acc_leaf -= kernel(a + 0.5 * l) * (block_log_dist(l, b.ratio, true) + c * l),
    );
    let total = acc_gap + acc_leaf + c;
    if !total.is_finite() {
        return Err(NumericsError::NonFinite(z));
    }
    Ok(total)
}

/// Outer function with boundary modulus dist(·, E)^k, normalized positive
/// at the origin: exp(k ∫ (ζ+z)/(ζ−z) log dist(ζ,E) dm(ζ)).
pub fn eval_outer_from_distance(set: &CarlesonSet, k: u32, z: Complex64) -> Result<Complex64, NumericsError> {
    Ok((k as f64 * log_distance_schwarz(set, z)?).exp())
}

/// First point of E, used to split off the factor (1 − ē₀z)^k.
pub fn anchor_point(set: &CarlesonSet) -> f64 {
    let mut starts: Vec<f64> = set.points.iter().map(|&p| wrap01(p)).collect();
    starts.extend(set.blocks.iter().map(|b| wrap01(b.hull().0)));
    starts.into_iter().fold(f64::INFINITY, f64::min)
}

/// Fourier coefficients ψ̂_0..ψ̂_n of ψ = log(dist(ζ,E)/|ζ − e₀|).
pub fn log_ratio_coefficients(set: &CarlesonSet, anchor: f64, n: usize) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); n + 1];
    let scale = (n.max(1)) as f64;
    let near_anchor = |a: f64, l: f64| {
        let off = wrap01(anchor - a);
        off <= l || wrap01(a - anchor).min(off - l) < 100.0 * l
    };
    // below 1e-15 turns positions are not resolved in floating point
    let descend = |a: f64, l: f64| l * scale > 1e-4 || (l > 1e-15 && near_anchor(a, l));
    let push = |t: f64, v: f64, out: &mut Vec<Complex64>| {
        let e = point(-t);
        let mut p = Complex64::new(v, 0.0);
        for c in out.iter_mut() {
            *c += p;
            p *= e;
        }
    };
    let mut leaves: Vec<(f64, f64, f64)> = Vec::new();
    walk_complement(
        set,
        &descend,
        &mut |a, l| {
            let psi = |t: f64, d: f64| d.ln() - chord_turns(t - anchor).ln();
            if l * scale > SHORT_GAP {
                gap_nodes(a, l, None, 0.5 / scale, &mut |t, d, w| {
                    let v = psi(t, d) * w;
                    if v.is_finite() {
                        push(t, v, &mut out)
                    }
                });
                return;
            }
            // short gap: e^{−2πin(c+x)} expanded in x about the midpoint
            let c = a + 0.5 * l;
            let mut m = [0.0; MOMENTS];
            gap_nodes(a, l, None, f64::INFINITY, &mut |t, d, w| {
                let v = psi(t, d) * w;
                if v.is_finite() {
                    let x = t - c;
                    let mut p = v;
                    for mj in m.iter_mut() {
                        *mj += p;
                        p *= x;
                    }
                }
            });
            let e = point(-c);
            let mut rot = Complex64::new(1.0, 0.0);
            for (nn, o) in out.iter_mut().enumerate() {
                let q = Complex64::new(0.0, -TAU * nn as f64);
                let mut term = Complex64::new(0.0, 0.0);
                let mut qp = Complex64::new(1.0, 0.0);
                let mut fact = 1.0;
                for (j, mj) in m.iter().enumerate() {
                    if j > 0 {
                        fact *= j as f64;
                    }
                    term += qp * (mj / fact);
                    qp *= q;
                }
                *o += rot * term;
                rot *= e;
            }
        },
        &mut |b, a, l| leaves.push((a, l, b.ratio)),
    );
    for (a, l, ratio) in leaves {
        let c = a + 0.5 * l;
        let v = -block_log_dist(l, ratio, true) - l * chord_turns(c - anchor).ln();
        if v.is_finite() {
            push(c, v, &mut out);
        }
    }
    out
}

/// Taylor coefficients of the outer function F with |F| = dist(·,E)^k:
/// F = (1 − ē₀z)^k · exp(k(ψ̂₀ + 2Σ ψ̂_n zⁿ)), with `n_log` terms of the
/// log-ratio series and `n_out` output terms.
pub fn outer_coefficients(set: &CarlesonSet, k: u32, n_log: usize, n_out: usize) -> CoefficientSeries {
    let anchor = anchor_point(set);
    let psi = log_ratio_coefficients(set, anchor, n_log);
    let kf = k as f64;
    let mut g: Vec<Complex64> = psi.iter().map(|c| c * (2.0 * kf)).collect();
    g[0] = Complex64::new(kf * psi[0].re, 0.0);
    let e = CoefficientSeries::new(g, 1.0).exp(n_out);
    // (1 − ē₀z)^k by the binomial theorem
    let e0 = point(anchor).conj();
    let mut binom = Vec::with_capacity(k as usize + 1);
    let mut b = 1.0;
    for j in 0..=k {
        binom.push((-e0).powu(j) * b);
        b = b * (kf - j as f64) / (j as f64 + 1.0);
    }
    e.multiply(&CoefficientSeries::new(binom, 1.0), n_out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circle_geometry::UnitCircleArc;

    fn catalan() -> f64 {
        (0..200000).map(|n| (-1f64).powi(n) / ((2 * n + 1) as f64).powi(2)).sum()
    }

    #[test]
    fn single_point_gives_binomial() {
        let e = CarlesonSet::from_points(&[0.0]).unwrap();
        let f0 = eval_outer_from_distance(&e, 10, Complex64::new(0.0, 0.0)).unwrap();
        assert!((f0 - 1.0).norm() < 1e-12);
        let f = eval_outer_from_distance(&e, 10, Complex64::new(0.5, 0.0)).unwrap();
        assert!((f / 0.5f64.powi(10) - 1.0).norm() < 1e-10, "{f}");
        let z = Complex64::new(-0.3, 0.6);
        let f = eval_outer_from_distance(&e, 3, z).unwrap();
        assert!((f - (1.0 - z).powu(3)).norm() < 1e-11);
        let c = outer_coefficients(&e, 3, 16, 8);
        let want = [1.0, -3.0, 3.0, -1.0, 0.0];
        for (i, w) in want.iter().enumerate() {
            assert!((c.get(i) - w).norm() < 1e-14);
        }
    }

    #[test]
    fn antipodal_pair_at_origin() {
        // ∫ log dist dm = −2G/π for E = {1, −1}
        let e = CarlesonSet::from_points(&[0.0, 0.5]).unwrap();
        let v = log_distance_schwarz(&e, Complex64::new(0.0, 0.0)).unwrap();
        assert!((v.re + 2.0 * catalan() / PI).abs() < 1e-10 && v.im.abs() < 1e-14, "{v}");
    }

    #[test]
    fn coefficients_match_direct_evaluation() {
        let block = CantorBlock::new(UnitCircleArc::new(0.1, 0.2).unwrap(), 0.3).unwrap();
        let e = CarlesonSet::new(vec![0.7], vec![block]).unwrap();
        let c = outer_coefficients(&e, 2, 512, 1024);
        for z in [Complex64::new(0.0, 0.0), Complex64::new(0.4, -0.3), Complex64::new(-0.5, 0.2)] {
            let a = c.eval(z);
            let b = eval_outer_from_distance(&e, 2, z).unwrap();
            assert!((a - b).norm() < 1e-6 * b.norm(), "{a} {b}");
        }
    }
}
