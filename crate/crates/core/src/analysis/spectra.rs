use rayon::prelude::*;

use super::pairwise_sum;
use crate::linalg::{hermitian_eigenvalues, CMatrix};
use crate::rng::{sample_distinct, SeedStream};
use crate::sensing::{gaussian_matrix, MatrixKind, SensingMatrix};
use crate::{Error, Result};

/// Smallest Gram eigenvalue treated as nonzero.
pub const SINGULAR_EIGENVALUE: f64 = 1e-14;

#[derive(Clone, Debug, PartialEq)]
pub struct GramSpectrum {
    /// Eigenvalues of A_s^H A_s, ascending.
    pub eigenvalues: Vec<f64>,
    /// √(λ_max/λ_min), infinite when λ_min <= [`SINGULAR_EIGENVALUE`].
    pub condition_number: f64,
}

impl GramSpectrum {
    pub fn is_singular(&self) -> bool {
        self.condition_number.is_infinite()
    }
}

pub fn gram_eigenvalues(sub: &CMatrix) -> Result<Vec<f64>> {
    hermitian_eigenvalues(&sub.gram())
}

pub fn gram_spectrum(sub: &CMatrix) -> Result<GramSpectrum> {
    let eigenvalues = gram_eigenvalues(sub)?;
    let lo = eigenvalues[0];
    let hi = *eigenvalues.last().unwrap();
    let condition_number = if lo <= SINGULAR_EIGENVALUE {
        f64::INFINITY
    } else {
        (hi / lo).sqrt()
    };
    Ok(GramSpectrum {
        eigenvalues,
        condition_number,
    })
}

pub fn condition_number(sub: &CMatrix) -> Result<f64> {
    Ok(gram_spectrum(sub)?.condition_number)
}

/// Condition-number statistics of random K×s submatrices.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectralStats {
    pub family: MatrixKind,
    pub s: usize,
    pub trials: usize,
    pub cond_mean: f64,
    /// Sample standard deviation (n − 1 denominator).
    pub cond_std: f64,
    pub lambda_min_mean: f64,
    pub lambda_max_mean: f64,
    /// max over trials of max(λ_max − 1, 1 − λ_min): an empirical lower
    /// bound on the restricted isometry constant, not a certificate.
    pub delta_hat: f64,
}

pub(crate) fn family_tag(kind: MatrixKind) -> u64 {
    match kind {
        MatrixKind::AdditiveCharacter => 1,
        MatrixKind::Gaussian => 2,
        MatrixKind::PartialFourier => 3,
    }
}

fn validate(k: usize, s: usize, trials: usize) -> Result<()> {
    if s == 0 || s > k {
        return Err(Error::Precondition(format!(
            "submatrix size s = {s} must be in 1..={k}"
        )));
    }
    if trials == 0 {
        return Err(Error::Precondition("at least one trial is required".into()));
    }
    Ok(())
}

/// Draws `trials` sets of s distinct columns of `matrix` and summarizes the
/// spectra of the submatrices.
pub fn condition_stats(
    matrix: &SensingMatrix,
    s: usize,
    trials: usize,
    seeds: SeedStream,
) -> Result<SpectralStats> {
    validate(matrix.rows(), s, trials)?;
    let cond = [family_tag(matrix.kind()), s as u64];
    let spectra = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = seeds.trial(&cond, t as u64);
            let cols = sample_distinct(matrix.cols(), s, &mut rng);
            gram_spectrum(&matrix.select_columns(&cols))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(summarize(matrix.kind(), s, &spectra))
}

/// The same statistics for fresh K×s column-normalized Gaussian matrices.
pub fn compare_with_gaussian(
    k: usize,
    s: usize,
    trials: usize,
    seeds: SeedStream,
) -> Result<SpectralStats> {
    validate(k, s, trials)?;
    let cond = [family_tag(MatrixKind::Gaussian), s as u64];
    let spectra = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = seeds.trial(&cond, t as u64);
            gram_spectrum(&gaussian_matrix(k, s, &mut rng).to_dense())
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(summarize(MatrixKind::Gaussian, s, &spectra))
}

fn summarize(family: MatrixKind, s: usize, spectra: &[GramSpectrum]) -> SpectralStats {
    let n = spectra.len() as f64;
    let conds: Vec<f64> = spectra.iter().map(|g| g.condition_number).collect();
    let cond_mean = pairwise_sum(&conds) / n;
    let cond_std = if spectra.len() < 2 {
        0.0
    } else {
        let sq: Vec<f64> = conds.iter().map(|c| (c - cond_mean).powi(2)).collect();
        (pairwise_sum(&sq) / (n - 1.0)).sqrt()
    };
    let mins: Vec<f64> = spectra.iter().map(|g| g.eigenvalues[0]).collect();
    let maxs: Vec<f64> = spectra
        .iter()
        .map(|g| *g.eigenvalues.last().unwrap())
        .collect();
    let delta_hat = mins
        .iter()
        .zip(&maxs)
        .map(|(lo, hi)| (hi - 1.0).max(1.0 - lo))
        .fold(0.0, f64::max);
    SpectralStats {
        family,
        s,
        trials: spectra.len(),
        cond_mean,
        cond_std,
        lambda_min_mean: pairwise_sum(&mins) / n,
        lambda_max_mean: pairwise_sum(&maxs) / n,
        delta_hat,
    }
}
