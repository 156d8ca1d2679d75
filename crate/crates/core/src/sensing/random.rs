use num_complex::Complex64;
use rand::Rng;
use rand_distr::{Distribution, Normal};

use super::{MatrixKind, SensingMatrix};
use crate::galois::root_of_unity;
use crate::rng::sample_distinct;
use crate::{Error, Result};

/// K·s i.i.d. N(0, 1/K) draws, column-major, before normalization.
pub fn gaussian_entries<R: Rng + ?Sized>(k: usize, s: usize, rng: &mut R) -> Vec<f64> {
    let normal = Normal::new(0.0, 1.0 / (k as f64).sqrt()).expect("positive variance");
    (0..k * s).map(|_| normal.sample(rng)).collect()
}

/// K×s Gaussian matrix with each column rescaled to unit l2 norm.
pub fn gaussian_matrix<R: Rng + ?Sized>(k: usize, s: usize, rng: &mut R) -> SensingMatrix {
    let raw = gaussian_entries(k, s, rng);
    let mut data = Vec::with_capacity(raw.len());
    for col in raw.chunks_exact(k) {
        let norm = col.iter().map(|x| x * x).sum::<f64>().sqrt();
        data.extend(col.iter().map(|x| Complex64::new(x / norm, 0.0)));
    }
    SensingMatrix::dense_raw(MatrixKind::Gaussian, k, s, data)
}

/// K distinct rows of the N-point DFT, drawn uniformly, scaled by 1/√K.
pub fn partial_fourier<R: Rng + ?Sized>(k: usize, n: usize, rng: &mut R) -> Result<SensingMatrix> {
    if k > n || k == 0 {
        return Err(Error::Precondition(format!(
            "partial Fourier needs 1 <= K <= N (K={k}, N={n})"
        )));
    }
    let rows = sample_distinct(n, k, rng);
    let scale = 1.0 / (k as f64).sqrt();
    let roots: Vec<Complex64> = (0..n as u64)
        .map(|t| root_of_unity(t, n as u32) * scale)
        .collect();
    let mut data = Vec::with_capacity(k * n);
    for col in 0..n {
        data.extend(rows.iter().map(|&row| roots[row * col % n]));
    }
    Ok(SensingMatrix::dense_raw(
        MatrixKind::PartialFourier,
        k,
        n,
        data,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{inner, norm_sqr};
    use crate::rng::SeedStream;

    #[test]
    fn gaussian_columns_are_unit_and_reproducible() {
        let s = SeedStream::new(9);
        let a = gaussian_matrix(81, 20, &mut s.trial(&[0], 0));
        let b = gaussian_matrix(81, 20, &mut s.trial(&[0], 0));
        for n in 0..20 {
            assert!((norm_sqr(&a.column(n)) - 1.0).abs() < 1e-12);
            assert_eq!(a.column(n), b.column(n));
        }
        assert_eq!(a.kind(), MatrixKind::Gaussian);
    }

    #[test]
    fn gaussian_raw_moments() {
        let mut rng = SeedStream::new(4).trial(&[], 0);
        let (k, s) = (100, 1000);
        let x = gaussian_entries(k, s, &mut rng);
        let n = x.len() as f64;
        let mean = x.iter().sum::<f64>() / n;
        let var = x.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n;
        let sigma = (1.0 / k as f64).sqrt();
        assert!(mean.abs() < 5.0 * sigma / n.sqrt(), "mean {mean}");
        assert!((var * k as f64 - 1.0).abs() < 0.02, "var {var}");
    }

    #[test]
    fn partial_fourier_magnitudes_and_full_dft() {
        let mut rng = SeedStream::new(1).trial(&[], 0);
        let a = partial_fourier(81, 6561, &mut rng).unwrap();
        for n in (0..6561).step_by(97) {
            let col = a.column(n);
            assert!(col.iter().all(|z| (z.norm() - 1.0 / 9.0).abs() < 1e-15));
            assert!((norm_sqr(&col) - 1.0).abs() < 1e-12);
        }
        let full = partial_fourier(16, 16, &mut rng).unwrap();
        for i in 0..16 {
            for j in 0..16 {
                let v = inner(&full.column(i), &full.column(j));
                let target = if i == j { 1.0 } else { 0.0 };
                assert!((v - Complex64::new(target, 0.0)).norm() < 1e-12);
            }
        }
        assert!(partial_fourier(10, 5, &mut rng).is_err());
    }
}
