//! Gauss rules and graded panel integration shared by the geometry and
//! function-evaluation modules.

use nalgebra::{DMatrix, SymmetricEigen};
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

/// Nodes and weights of a Gauss rule on a reference interval.
#[derive(Clone, Debug)]
pub struct GaussRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

/// Golub–Welsch: rule from the three-term recurrence of the orthonormal
/// polynomials (diagonal `alpha`, off-diagonal `beta`, total mass `mass`).
pub fn golub_welsch(alpha: &[f64], beta: &[f64], mass: f64) -> GaussRule {
    let n = alpha.len();
    let mut jac = DMatrix::<f64>::zeros(n, n);
    for i in 0..n {
        jac[(i, i)] = alpha[i];
        if i + 1 < n {
            jac[(i, i + 1)] = beta[i];
            jac[(i + 1, i)] = beta[i];
        }
    }
    let eig = SymmetricEigen::new(jac);
    let mut pairs: Vec<(f64, f64)> = (0..n)
        .map(|i| {
            let v0 = eig.eigenvectors[(0, i)];
            (eig.eigenvalues[i], mass * v0 * v0)
        })
        .collect();
    pairs.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    GaussRule {
        nodes: pairs.iter().map(|p| p.0).collect(),
        weights: pairs.iter().map(|p| p.1).collect(),
    }
}

/// Gauss–Legendre rule on [0, 1] (weights sum to 1).
pub fn gauss_legendre(n: usize) -> Arc<GaussRule> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<GaussRule>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().unwrap();
    guard
        .entry(n)
        .or_insert_with(|| {
            let alpha = vec![0.0; n];
            let beta: Vec<f64> = (1..n)
                .map(|k| {
                    let k = k as f64;
                    k / (4.0 * k * k - 1.0).sqrt()
                })
                .collect();
            let r = golub_welsch(&alpha, &beta, 2.0);
            Arc::new(GaussRule {
                nodes: r.nodes.iter().map(|x| 0.5 * (x + 1.0)).collect(),
                weights: r.weights.iter().map(|w| 0.5 * w).collect(),
            })
        })
        .clone()
}

/// Gauss rule for the self-similar two-branch Cantor measure on [0, 1]
/// with contraction `ratio` (probability weights).
///
/// Built by a discretised Stieltjes procedure on the 2^16 level-16 cylinder
/// centres; the moment error of that discretisation is O(ratio^32).
pub fn cantor_rule(ratio: f64, points: usize) -> Arc<GaussRule> {
    static CACHE: OnceLock<Mutex<HashMap<(u64, usize), Arc<GaussRule>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let key = (ratio.to_bits(), points);
    if let Some(r) = cache.lock().unwrap().get(&key) {
        return r.clone();
    }
    let rule = Arc::new(build_cantor_rule(ratio, points));
    cache.lock().unwrap().insert(key, rule.clone());
    rule
}

fn build_cantor_rule(ratio: f64, points: usize) -> GaussRule {
    const LEVEL: u32 = 16;
    let count = 1usize << LEVEL;
    let leaf = ratio.powi(LEVEL as i32);
    // Leaf left ends: binary digits select left (0) or right (1 - ratio) shifts.
    let mut xs = vec![0.0f64; count];
    for (i, x) in xs.iter_mut().enumerate() {
        let mut pos = 0.0;
        let mut scale = 1.0;
        for bit in (0..LEVEL).rev() {
            if (i >> bit) & 1 == 1 {
                pos += scale * (1.0 - ratio);
            }
            scale *= ratio;
        }
        *x = pos + 0.5 * leaf;
    }
    // Work centred at 1/2 for conditioning.
    for x in xs.iter_mut() {
        *x -= 0.5;
    }
    let w = 1.0 / count as f64;
    let mut alpha = Vec::with_capacity(points);
    let mut beta = Vec::with_capacity(points);
    let mut p_prev = vec![0.0f64; count];
    let mut p_cur = vec![1.0f64; count];
    let mut norm_prev = 1.0;
    let mut norm_cur: f64 = 1.0;
    for k in 0..points {
        let xp: f64 = xs.iter().zip(&p_cur).map(|(x, p)| x * p * p).sum::<f64>() * w;
        let a = xp / norm_cur;
        alpha.push(a);
        if k + 1 == points {
            break;
        }
        let b2 = if k == 0 { 0.0 } else { norm_cur / norm_prev };
        let mut p_next = vec![0.0f64; count];
        for i in 0..count {
            p_next[i] = (xs[i] - a) * p_cur[i] - b2 * p_prev[i];
        }
        let norm_next: f64 = p_next.iter().map(|p| p * p).sum::<f64>() * w;
        beta.push((norm_next / norm_cur).sqrt());
        p_prev = p_cur;
        p_cur = p_next;
        norm_prev = norm_cur;
        norm_cur = norm_next;
    }
    let r = golub_welsch(&alpha, &beta, 1.0);
    GaussRule {
        nodes: r.nodes.iter().map(|x| x + 0.5).collect(),
        weights: r.weights,
    }
}

/// Integrates `f` over [a, b] with panels graded geometrically (ratio 1/2)
/// toward whichever endpoints are flagged singular, down to `floor`
/// relative panel size. Each panel uses 16-point Gauss–Legendre.
pub fn graded_integral<F: FnMut(f64) -> f64>(
    a: f64,
    b: f64,
    sing_left: bool,
    sing_right: bool,
    floor: f64,
    mut f: F,
) -> f64 {
    let mut total = 0.0;
    for (lo, hi) in graded_panels(a, b, sing_left, sing_right, floor) {
        total += panel(lo, hi, &mut f);
    }
    total
}

/// Panel list used by [`graded_integral`]; exposed so callers can
/// accumulate several moments per quadrature point.
pub fn graded_panels(a: f64, b: f64, sing_left: bool, sing_right: bool, floor: f64) -> Vec<(f64, f64)> {
    let mut out = Vec::new();
    if b <= a {
        return out;
    }
    match (sing_left, sing_right) {
        (false, false) => out.push((a, b)),
        (true, false) => grade_toward_left(a, b, floor, &mut out),
        (false, true) => {
            let mut tmp = Vec::new();
            grade_toward_left(0.0, b - a, floor, &mut tmp);
            for (lo, hi) in tmp {
                out.push((b - hi, b - lo));
            }
        }
        (true, true) => {
            let m = 0.5 * (a + b);
            out.extend(graded_panels(a, m, true, false, floor));
            out.extend(graded_panels(m, b, false, true, floor));
        }
    }
    out
}

fn grade_toward_left(a: f64, b: f64, floor: f64, out: &mut Vec<(f64, f64)>) {
    let len = b - a;
    let mut hi = len;
    let stop = (len * floor).max(f64::MIN_POSITIVE);
    while hi > stop {
        let lo = 0.5 * hi;
        out.push((a + lo, a + hi));
        hi = lo;
    }
    out.push((a, a + hi));
}

/// 16-point Gauss–Legendre on one panel.
pub fn panel<F: FnMut(f64) -> f64>(lo: f64, hi: f64, f: &mut F) -> f64 {
    let rule = gauss_legendre(16);
    let h = hi - lo;
    rule.nodes
        .iter()
        .zip(&rule.weights)
        .map(|(x, w)| w * f(lo + h * x))
        .sum::<f64>()
        * h
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn legendre_integrates_polynomials() {
        let r = gauss_legendre(8);
        let s: f64 = r.nodes.iter().zip(&r.weights).map(|(x, w)| w * x.powi(15)).sum();
        assert!((s - 1.0 / 16.0).abs() < 1e-15);
    }

    #[test]
    fn cantor_rule_matches_moments() {
        // middle-thirds measure: mean 1/2, variance 1/8
        let r = cantor_rule(1.0 / 3.0, 6);
        let m1: f64 = r.nodes.iter().zip(&r.weights).map(|(x, w)| w * x).sum();
        let m2: f64 = r.nodes.iter().zip(&r.weights).map(|(x, w)| w * (x - 0.5).powi(2)).sum();
        assert!((m1 - 0.5).abs() < 1e-14);
        assert!((m2 - 0.125).abs() < 1e-12);
        assert!(r.nodes.iter().all(|x| (0.0..=1.0).contains(x)));
    }

    #[test]
    fn graded_log_integral() {
        let v = graded_integral(0.0, 1.0, true, false, 1e-14, |x| x.ln());
        assert!((v + 1.0).abs() < 1e-12);
    }
}
