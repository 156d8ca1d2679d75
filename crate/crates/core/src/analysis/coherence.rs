use num_complex::Complex64;
use rayon::prelude::*;

use super::bounds::welch_bound;
use crate::galois::root_of_unity;
use crate::linalg::inner;
use crate::sensing::SensingMatrix;

/// Inner products closer than this count as ties; ties go to the
/// lexicographically smallest pair.
pub const TIE_TOLERANCE: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq)]
pub struct CoherenceReport {
    pub mu: f64,
    /// First pair (n1 < n2) in lexicographic order attaining `mu`.
    pub argmax_pair: (usize, usize),
    /// `None` when N <= K.
    pub welch: Option<f64>,
    /// (d−1)/√K, for additive character matrices.
    pub weil_prediction: Option<f64>,
}

impl CoherenceReport {
    pub fn welch_ratio(&self) -> Option<f64> {
        self.welch.map(|w| self.mu / w)
    }
}

/// Maximum |⟨a_{n1}, a_{n2}⟩| over all distinct column pairs.
///
/// Additive character matrices are scanned on their integer phases: the
/// inner product of two columns is (1/K)·Σ_c count_c·ω^c where count_c is
/// the number of rows whose phase difference is c. Other matrices use the
/// complex route of [`coherence_dense`].
pub fn coherence(m: &SensingMatrix) -> CoherenceReport {
    let Some(p) = m.phase_modulus() else {
        return coherence_dense(m);
    };
    let k = m.rows();
    let owned;
    let phases: &[u16] = match m.stored_phases() {
        Some(ph) => ph,
        None => {
            let mut all = vec![0u16; k * m.cols()];
            for (n, chunk) in all.chunks_mut(k).enumerate() {
                m.column_phases_into(n, chunk);
            }
            owned = all;
            &owned
        }
    };
    let pu = p as usize;
    let diff: Vec<u16> = (0..pu * pu)
        .map(|i| ((i % pu + pu - i / pu) % pu) as u16)
        .collect();
    let roots: Vec<Complex64> = (0..p as u64).map(|t| root_of_unity(t, p)).collect();
    let inv_k = 1.0 / k as f64;

    let best_per_row = scan(m.cols(), |n1| {
        let a = &phases[n1 * k..(n1 + 1) * k];
        let mut counts = vec![0u32; pu];
        let mut best = (-1.0f64, 0usize);
        for n2 in n1 + 1..m.cols() {
            let b = &phases[n2 * k..(n2 + 1) * k];
            counts.fill(0);
            for (&x, &y) in a.iter().zip(b) {
                counts[diff[x as usize * pu + y as usize] as usize] += 1;
            }
            let v: Complex64 = counts.iter().zip(&roots).map(|(&c, w)| w * c as f64).sum();
            let v = v.norm() * inv_k;
            if v > best.0 + TIE_TOLERANCE {
                best = (v, n2);
            }
        }
        best
    });
    finish(m, best_per_row)
}

/// Coherence from complex Hermitian inner products of the stored entries.
pub fn coherence_dense(m: &SensingMatrix) -> CoherenceReport {
    let columns: Vec<Vec<Complex64>> = (0..m.cols()).map(|n| m.column(n)).collect();
    let best_per_row = scan(m.cols(), |n1| {
        let mut best = (-1.0f64, 0usize);
        for n2 in n1 + 1..columns.len() {
            let v = inner(&columns[n1], &columns[n2]).norm();
            if v > best.0 + TIE_TOLERANCE {
                best = (v, n2);
            }
        }
        best
    });
    finish(m, best_per_row)
}

fn scan(cols: usize, row_best: impl Fn(usize) -> (f64, usize) + Sync + Send) -> Vec<(f64, usize)> {
    (0..cols.saturating_sub(1))
        .into_par_iter()
        .map(row_best)
        .collect()
}

// Reduction in n1 order with strict comparison keeps the lexicographically
// first maximizing pair regardless of how the scan was scheduled.
fn finish(m: &SensingMatrix, rows: Vec<(f64, usize)>) -> CoherenceReport {
    let (mut mu, mut pair) = match rows.first() {
        Some(&(v, n2)) => (v, (0, n2)),
        None => (0.0, (0, 0)),
    };
    for (n1, &(v, n2)) in rows.iter().enumerate().skip(1) {
        if v > mu + TIE_TOLERANCE {
            mu = v;
            pair = (n1, n2);
        }
    }
    let welch = welch_bound(m.rows() as u64, m.cols() as u64).ok();
    let weil_prediction = m
        .construction()
        .map(|c| (c.spec().d() - 1) as f64 / (m.rows() as f64).sqrt());
    CoherenceReport {
        mu,
        argmax_pair: pair,
        welch,
        weil_prediction,
    }
}
