use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;

use super::grid::{fft_forward, fft_inverse};
use super::NumericsError;

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };

/// Taylor coefficients c_0..c_{N−1}; evaluation is trusted for
/// |z| ≤ declared_radius.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoefficientSeries {
    coeffs: Vec<Complex64>,
    pub declared_radius: f64,
}

impl CoefficientSeries {
    pub fn new(coeffs: Vec<Complex64>, declared_radius: f64) -> Self {
        Self { coeffs, declared_radius }
    }

    pub fn from_real(c: &[f64]) -> Self {
        Self::new(c.iter().map(|&x| Complex64::new(x, 0.0)).collect(), 1.0)
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Complex64> {
        self.coeffs
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn get(&self, n: usize) -> Complex64 {
        self.coeffs.get(n).copied().unwrap_or(ZERO)
    }

    /// H² norm (Σ|c_n|²)^{1/2}.
    pub fn h2_norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        eval_series(self, z)
    }

    pub fn eval_derivative(&self, z: Complex64) -> Complex64 {
        let mut acc = ZERO;
        for (n, c) in self.coeffs.iter().enumerate().skip(1).rev() {
            acc = acc * z + c * n as f64;
        }
        acc
    }

    pub fn scaled(&self, s: Complex64) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * s).collect(), self.declared_radius)
    }

    pub fn truncated(&self, n: usize) -> Self {
        Self::new(self.coeffs[..n.min(self.len())].to_vec(), self.declared_radius)
    }

    /// Values at ρ·e^{2πik/N}, k = 0..N, by one transform.
    pub fn eval_on_circle(&self, rho: f64, n: usize) -> Vec<Complex64> {
        let mut buf = vec![ZERO; n];
        let mut p = 1.0;
        for (i, c) in self.coeffs.iter().enumerate() {
            buf[i % n] += c * p;
            p *= rho;
            if p == 0.0 {
                break;
            }
        }
        // unnormalized inverse transform = sum of c_n ρ^n ω^{nk}
        fft_inverse(&mut buf);
        for x in buf.iter_mut() {
            *x *= n as f64;
        }
        buf
    }

    /// Σ n|c_n| ρ^{n−1}, an upper bound for |f′| on |z| = ρ.
    pub fn derivative_bound(&self, rho: f64) -> f64 {
        let mut p = 1.0;
        let mut s = 0.0;
        for (n, c) in self.coeffs.iter().enumerate().skip(1) {
            s += n as f64 * c.norm() * p;
            p *= rho;
        }
        s
    }

    /// Product truncated to `n` terms.
    pub fn multiply(&self, other: &Self, n: usize) -> Self {
        Self::new(convolve(&self.coeffs, &other.coeffs, n), self.declared_radius.min(other.declared_radius))
    }

    /// exp of the series, truncated to `n` terms.
    pub fn exp(&self, n: usize) -> Self {
        let a = &self.coeffs;
        let mut b = vec![ZERO; n];
        if n == 0 {
            return Self::new(b, self.declared_radius);
        }
        b[0] = self.get(0).exp();
        // m b_m = Σ_{j=1..m} j a_j b_{m−j}
        for m in 1..n {
            let mut s = ZERO;
            for j in 1..=m.min(a.len().saturating_sub(1)) {
                s += a[j] * b[m - j] * j as f64;
            }
            b[m] = s / m as f64;
        }
        Self::new(b, self.declared_radius)
    }

    /// p-th power truncated to `n` terms, by repeated squaring.
    pub fn power(&self, p: u32, n: usize) -> Self {
        let mut result = vec![ZERO; n.max(1)];
        result[0] = Complex64::new(1.0, 0.0);
        let mut base = self.coeffs[..n.min(self.len())].to_vec();
        let mut e = p;
        while e > 0 {
            if e & 1 == 1 {
                result = convolve(&result, &base, n);
            }
            e >>= 1;
            if e > 0 {
                base = convolve(&base, &base, n);
            }
        }
        result.truncate(n);
        Self::new(result, self.declared_radius)
    }
}

/// Σ c_n z^n by Horner.
pub fn eval_series(c: &CoefficientSeries, z: Complex64) -> Complex64 {
    let mut acc = ZERO;
    for a in c.coeffs.iter().rev() {
        acc = acc * z + a;
    }
    acc
}

/// Linear convolution truncated to `n` terms.
pub fn convolve(a: &[Complex64], b: &[Complex64], n: usize) -> Vec<Complex64> {
    let la = a.len().min(n);
    let lb = b.len().min(n);
    if la == 0 || lb == 0 {
        return vec![ZERO; n];
    }
    if la.min(lb) <= 32 {
        let mut out = vec![ZERO; n];
        for i in 0..la {
            for j in 0..lb.min(n - i) {
                out[i + j] += a[i] * b[j];
            }
        }
        return out;
    }
    let size = (la + lb - 1).next_power_of_two();
    let mut fa = vec![ZERO; size];
    let mut fb = vec![ZERO; size];
    fa[..la].copy_from_slice(&a[..la]);
    fb[..lb].copy_from_slice(&b[..lb]);
    fft_forward(&mut fa);
    fft_forward(&mut fb);
    for (x, y) in fa.iter_mut().zip(&fb) {
        *x *= y;
    }
    fft_inverse(&mut fa);
    fa.resize(n, ZERO);
    fa
}

/// R_j = Σ_m a_{m+j} conj(b_m) for j = 0..n, via zero-padded transforms.
pub fn correlate(a: &[Complex64], b: &[Complex64], n: usize) -> Vec<Complex64> {
    let size = (a.len() + b.len()).next_power_of_two();
    let mut fa = vec![ZERO; size];
    let mut fb = vec![ZERO; size];
    fa[..a.len()].copy_from_slice(a);
    fb[..b.len()].copy_from_slice(b);
    fft_forward(&mut fa);
    fft_forward(&mut fb);
    for (x, y) in fa.iter_mut().zip(&fb) {
        *x *= y.conj();
    }
    fft_inverse(&mut fa);
    fa.truncate(n);
    fa
}

/// Radius of the sampling circle used by [`taylor_coefficients`].
pub fn taylor_radius(n_grid: usize) -> f64 {
    (1.0 - 36.0 / n_grid as f64).max(0.5)
}

/// Taylor coefficients of a function analytic in the disc, read off
/// samples on the circle of radius 1 − 36/N (no boundary values needed).
/// At most N/6 coefficients are returned so that the ρ^{−n} amplification
/// stays below e^6.
pub fn taylor_coefficients<E, F>(f: F, n_grid: usize, count: usize) -> Result<CoefficientSeries, E>
where
    F: Fn(Complex64) -> Result<Complex64, E>,
    E: From<NumericsError>,
{
    if n_grid < 16 || !n_grid.is_power_of_two() {
        return Err(NumericsError::GridSize(n_grid).into());
    }
    if count > n_grid / 6 {
        return Err(NumericsError::TooManyCoefficients { count, grid: n_grid }.into());
    }
    let rho = taylor_radius(n_grid);
    let mut buf = Vec::with_capacity(n_grid);
    for k in 0..n_grid {
        buf.push(f(Complex64::from_polar(rho, TAU * k as f64 / n_grid as f64))?);
    }
    fft_forward(&mut buf);
    let mut out = Vec::with_capacity(count);
    let mut scale = 1.0 / n_grid as f64;
    for x in buf.iter().take(count) {
        out.push(x * scale);
        scale /= rho;
    }
    Ok(CoefficientSeries::new(out, 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn horner() {
        let c = CoefficientSeries::from_real(&[1.0, 2.0]);
        assert_eq!(c.eval(Complex64::i()), Complex64::new(1.0, 2.0));
    }

    #[test]
    fn exp_and_power() {
        // exp(z) coefficients 1/n!
        let e = CoefficientSeries::from_real(&[0.0, 1.0]).exp(12);
        let mut f = 1.0;
        for n in 0..12 {
            if n > 0 {
                f *= n as f64;
            }
            assert!((e.get(n).re - 1.0 / f).abs() < 1e-15);
        }
        // (1 − z)^5 binomial
        let p = CoefficientSeries::from_real(&[1.0, -1.0]).power(5, 8);
        let want = [1.0, -5.0, 10.0, -10.0, 5.0, -1.0, 0.0, 0.0];
        for (a, b) in p.coeffs().iter().zip(want) {
            assert!((a.re - b).abs() < 1e-12 && a.im.abs() < 1e-12);
        }
    }

    #[test]
    fn fft_convolution_matches_direct() {
        let a: Vec<Complex64> = (0..100).map(|i| Complex64::new((i as f64).sin(), 0.1 * i as f64)).collect();
        let b: Vec<Complex64> = (0..70).map(|i| Complex64::new(1.0 / (1.0 + i as f64), (i as f64).cos())).collect();
        let fast = convolve(&a, &b, 150);
        let mut slow = vec![ZERO; 150];
        for i in 0..100 {
            for j in 0..70 {
                if i + j < 150 {
                    slow[i + j] += a[i] * b[j];
                }
            }
        }
        for (x, y) in fast.iter().zip(&slow) {
            assert!((x - y).norm() < 1e-11);
        }
    }

    #[test]
    fn circle_values_match_horner() {
        let c = CoefficientSeries::new((0..50).map(|i| Complex64::new(0.9f64.powi(i), 0.3)).collect(), 1.0);
        let v = c.eval_on_circle(0.7, 64);
        for k in [0usize, 5, 31] {
            let z = Complex64::from_polar(0.7, TAU * k as f64 / 64.0);
            assert!((v[k] - c.eval(z)).norm() < 1e-12);
        }
    }

    #[test]
    fn interior_circle_taylor() {
        // 1/(1 − a z) has coefficients a^n
        let a = Complex64::new(0.6, 0.7);
        let f = |z: Complex64| -> Result<Complex64, NumericsError> { Ok(1.0 / (1.0 - a * z)) };
        let c = taylor_coefficients(f, 1024, 170).unwrap();
        for n in 0..170 {
            assert!((c.get(n) - a.powu(n as u32)).norm() < 1e-12, "{n}");
        }
    }
}
