use num_complex::Complex64;
use rand::Rng;
use rand_distr::{Distribution, Normal, StandardNormal};

use crate::linalg::norm_sqr;
use crate::rng::sample_distinct;
use crate::sensing::SensingMatrix;
use crate::{Error, Result};

/// An s-sparse real vector of dimension N.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseSignal {
    pub dimension: usize,
    pub support: Vec<usize>,
    pub values: Vec<f64>,
}

impl SparseSignal {
    pub fn zero(dimension: usize) -> Self {
        Self {
            dimension,
            support: Vec::new(),
            values: Vec::new(),
        }
    }

    pub fn sparsity(&self) -> usize {
        self.support.len()
    }

    pub fn to_dense(&self) -> Vec<f64> {
        let mut x = vec![0.0; self.dimension];
        for (&i, &v) in self.support.iter().zip(&self.values) {
            x[i] = v;
        }
        x
    }

    pub fn norm_sqr(&self) -> f64 {
        self.values.iter().map(|v| v * v).sum()
    }
}

/// Uniform random support of size s with i.i.d. N(0, 1) amplitudes.
pub fn random_sparse_signal<R: Rng + ?Sized>(
    n: usize,
    s: usize,
    rng: &mut R,
) -> Result<SparseSignal> {
    if s > n {
        return Err(Error::OutOfRange {
            what: "sparsity",
            value: s as u64,
            limit: n as u64,
        });
    }
    let support = sample_distinct(n, s, rng);
    let values = (0..s)
        .map(|_| loop {
            let v: f64 = StandardNormal.sample(rng);
            if v != 0.0 {
                break v;
            }
        })
        .collect();
    Ok(SparseSignal {
        dimension: n,
        support,
        values,
    })
}

/// y = A x.
pub fn measure(matrix: &SensingMatrix, x: &SparseSignal) -> Vec<Complex64> {
    assert_eq!(
        x.dimension,
        matrix.cols(),
        "signal dimension does not match matrix"
    );
    let mut y = vec![Complex64::new(0.0, 0.0); matrix.rows()];
    for (&n, &v) in x.support.iter().zip(&x.values) {
        matrix.add_scaled_column(n, Complex64::new(v, 0.0), &mut y);
    }
    y
}

/// Per-component noise variance σ² = ‖y‖²/(K·10^(snr/10)).
pub fn noise_variance(clean: &[Complex64], snr_db: f64) -> Result<f64> {
    if snr_db == f64::INFINITY {
        return Ok(0.0);
    }
    let power = norm_sqr(clean);
    if power == 0.0 {
        return Err(Error::DegenerateSnr);
    }
    Ok(power / (clean.len() as f64 * 10f64.powf(snr_db / 10.0)))
}

/// y = A x + z with circular complex Gaussian z calibrated to `snr_db`
/// from this signal's own ‖Ax‖². An infinite SNR returns A x unchanged.
pub fn measure_noisy<R: Rng + ?Sized>(
    matrix: &SensingMatrix,
    x: &SparseSignal,
    snr_db: f64,
    rng: &mut R,
) -> Result<Vec<Complex64>> {
    let mut y = measure(matrix, x);
    let var = noise_variance(&y, snr_db)?;
    if var > 0.0 {
        let part = Normal::new(0.0, (var / 2.0).sqrt()).expect("finite variance");
        for v in y.iter_mut() {
            *v += Complex64::new(part.sample(rng), part.sample(rng));
        }
    }
    Ok(y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SeedStream;
    use crate::sensing::construction_1a;

    #[test]
    fn signals_are_reproducible_and_sparse() {
        let s = SeedStream::new(2);
        let a = random_sparse_signal(6561, 5, &mut s.trial(&[1], 3)).unwrap();
        let b = random_sparse_signal(6561, 5, &mut s.trial(&[1], 3)).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_dense().iter().filter(|v| **v != 0.0).count(), 5);
        let full = random_sparse_signal(10, 10, &mut s.trial(&[1], 4)).unwrap();
        let mut sup = full.support.clone();
        sup.sort_unstable();
        assert_eq!(sup, (0..10).collect::<Vec<_>>());
        assert!(random_sparse_signal(10, 11, &mut s.trial(&[1], 4)).is_err());
    }

    #[test]
    fn amplitude_variance_is_one() {
        let mut rng = SeedStream::new(8).trial(&[], 0);
        let x = random_sparse_signal(100_000, 100_000, &mut rng).unwrap();
        let var = x.values.iter().map(|v| v * v).sum::<f64>() / 1e5;
        assert!((var - 1.0).abs() < 0.05, "{var}");
    }

    #[test]
    fn zero_signal_and_infinite_snr() {
        let m = construction_1a(3, 2).unwrap();
        let mut rng = SeedStream::new(1).trial(&[], 0);
        let y = measure(&m, &SparseSignal::zero(81));
        assert!(y.iter().all(|z| *z == Complex64::new(0.0, 0.0)));
        assert_eq!(
            measure_noisy(&m, &SparseSignal::zero(81), 20.0, &mut rng),
            Err(Error::DegenerateSnr)
        );
        let x = random_sparse_signal(81, 3, &mut rng).unwrap();
        assert_eq!(
            measure_noisy(&m, &x, f64::INFINITY, &mut rng).unwrap(),
            measure(&m, &x)
        );
    }

    #[test]
    fn noise_power_matches_calibration() {
        let m = construction_1a(3, 4).unwrap();
        let seeds = SeedStream::new(12);
        let mut ratio = 0.0;
        let trials = 10_000;
        for t in 0..trials {
            let mut rng = seeds.trial(&[0], t);
            let x = random_sparse_signal(m.cols(), 3, &mut rng).unwrap();
            let clean = measure(&m, &x);
            let var = noise_variance(&clean, 10.0).unwrap();
            let noisy = measure_noisy(&m, &x, 10.0, &mut rng).unwrap();
            let z2: f64 = noisy
                .iter()
                .zip(&clean)
                .map(|(a, b)| (a - b).norm_sqr())
                .sum();
            ratio += z2 / (m.rows() as f64 * var);
        }
        let ratio = ratio / trials as f64;
        assert!((ratio - 1.0).abs() < 0.05, "{ratio}");
    }
}
