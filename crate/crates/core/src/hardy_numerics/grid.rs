use num_complex::Complex64;
use rustfft::FftPlanner;
use std::f64::consts::TAU;

use super::series::CoefficientSeries;
use super::NumericsError;

/// Forward DFT, X_k = Σ x_j e^{-2πijk/N}.
pub fn fft_forward(buf: &mut [Complex64]) {
    let mut planner = FftPlanner::new();
    planner.plan_fft_forward(buf.len()).process(buf);
}

/// Inverse DFT including the 1/N factor.
pub fn fft_inverse(buf: &mut [Complex64]) {
    let n = buf.len();
    let mut planner = FftPlanner::new();
    planner.plan_fft_inverse(n).process(buf);
    let s = 1.0 / n as f64;
    for x in buf.iter_mut() {
        *x *= s;
    }
}

/// Samples of a function at the N-th roots of unity.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundaryGrid {
    samples: Vec<Complex64>,
}

impl BoundaryGrid {
    pub fn new(samples: Vec<Complex64>) -> Result<Self, NumericsError> {
        let n = samples.len();
        if n < 16 || !n.is_power_of_two() {
            return Err(NumericsError::GridSize(n));
        }
        Ok(Self { samples })
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn samples(&self) -> &[Complex64] {
        &self.samples
    }

    /// Σ |g|² / N.
    pub fn energy(&self) -> f64 {
        self.samples.iter().map(|z| z.norm_sqr()).sum::<f64>() / self.len() as f64
    }
}

/// e^{2πik/N}, k = 0..N.
pub fn roots_of_unity(n: usize) -> Vec<Complex64> {
    (0..n).map(|k| Complex64::from_polar(1.0, TAU * k as f64 / n as f64)).collect()
}

/// Samples f on the N-th roots of unity.
pub fn boundary_samples<F: Fn(Complex64) -> Complex64>(f: F, n: usize) -> Result<BoundaryGrid, NumericsError> {
    BoundaryGrid::new(roots_of_unity(n).into_iter().map(f).collect())
}

/// Two-sided Fourier coefficients of a grid: index k holds frequency k for
/// k < N/2 and frequency k − N above.
#[derive(Clone, Debug)]
pub struct FourierCoefficients {
    pub values: Vec<Complex64>,
    /// Share of energy in the top quarter of frequencies (|freq| ≥ N/4).
    pub tail_energy: f64,
}

impl FourierCoefficients {
    pub fn at(&self, freq: i64) -> Complex64 {
        let n = self.values.len() as i64;
        if freq >= n / 2 || freq < -n / 2 {
            return Complex64::new(0.0, 0.0);
        }
        self.values[freq.rem_euclid(n) as usize]
    }

    /// Reports the aliasing warning of the transform contract.
    pub fn check_aliasing(&self) -> Result<(), NumericsError> {
        if self.tail_energy > 1e-8 {
            Err(NumericsError::Aliasing { tail_energy: self.tail_energy })
        } else {
            Ok(())
        }
    }
}

pub fn fourier_coefficients(g: &BoundaryGrid) -> FourierCoefficients {
    let n = g.len();
    let mut buf = g.samples.clone();
    fft_forward(&mut buf);
    let s = 1.0 / n as f64;
    for x in buf.iter_mut() {
        *x *= s;
    }
    let total: f64 = buf.iter().map(|z| z.norm_sqr()).sum();
    let tail: f64 = buf[n / 4..3 * n / 4].iter().map(|z| z.norm_sqr()).sum();
    FourierCoefficients { values: buf, tail_energy: if total > 0.0 { tail / total } else { 0.0 } }
}

/// P₊: keeps the frequencies 0..N/2 and drops the negative ones.
pub fn riesz_project(g: &BoundaryGrid) -> CoefficientSeries {
    let c = fourier_coefficients(g);
    let n = g.len();
    CoefficientSeries::new(c.values[..n / 2].to_vec(), 1.0)
}

/// Grid of a coefficient series at the roots of unity (inverse of the
/// projection on its range).
pub fn series_to_grid(c: &CoefficientSeries, n: usize) -> Result<BoundaryGrid, NumericsError> {
    let mut buf = vec![Complex64::new(0.0, 0.0); n];
    for (i, a) in c.coeffs().iter().enumerate() {
        buf[i % n] += a;
    }
    let mut planner = FftPlanner::new();
    planner.plan_fft_inverse(n).process(&mut buf);
    BoundaryGrid::new(buf)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn monomials() {
        let g = boundary_samples(|z| z * z * z, 64).unwrap();
        let c = fourier_coefficients(&g);
        for f in -32..32 {
            let want = if f == 3 { 1.0 } else { 0.0 };
            assert!((c.at(f) - want).norm() < 1e-14);
        }
        let g = boundary_samples(|z| z.conj(), 64).unwrap();
        assert!((fourier_coefficients(&g).at(-1) - 1.0).norm() < 1e-14);
    }

    #[test]
    fn projection_examples() {
        let g = boundary_samples(|z| z.conj(), 32).unwrap();
        assert!(riesz_project(&g).coeffs().iter().all(|c| c.norm() < 1e-15));
        let g = boundary_samples(|z| z + z.conj(), 32).unwrap();
        let p = riesz_project(&g);
        assert!((p.coeffs()[1] - 1.0).norm() < 1e-15);
        assert!(p.coeffs().iter().enumerate().all(|(i, c)| i == 1 || c.norm() < 1e-15));
    }

    #[test]
    fn too_small_grid() {
        assert!(BoundaryGrid::new(vec![Complex64::new(0.0, 0.0); 8]).is_err());
        assert!(BoundaryGrid::new(vec![Complex64::new(0.0, 0.0); 24]).is_err());
    }

    proptest! {
        #[test]
        fn projection_truncates_and_is_idempotent(seed in 0u64..1000) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let n = 256;
            let deg = n / 4 - 1;
            let coef: Vec<(i64, Complex64)> = (-(deg as i64)..=deg as i64)
                .map(|f| (f, Complex64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5)))
                .collect();
            let g = boundary_samples(|z| coef.iter().map(|(f, c)| c * z.powi(*f as i32)).sum(), n).unwrap();
            let p = riesz_project(&g);
            for (f, c) in &coef {
                if *f >= 0 {
                    prop_assert!((p.coeffs()[*f as usize] - c).norm() < 1e-13);
                }
            }
            let g2 = series_to_grid(&p, n).unwrap();
            let p2 = riesz_project(&g2);
            for (a, b) in p.coeffs().iter().zip(p2.coeffs()) {
                prop_assert!((a - b).norm() < 1e-14);
            }
            // Parseval
            let e_grid = g.energy();
            let e_coef: f64 = fourier_coefficients(&g).values.iter().map(|z| z.norm_sqr()).sum();
            prop_assert!((e_grid - e_coef).abs() < 1e-12 * e_grid);
        }
    }
}
