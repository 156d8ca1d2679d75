use num_complex::Complex64;

use super::signal::SparseSignal;
use crate::linalg::norm_sqr;
use crate::sensing::SensingMatrix;
use crate::{Error, Result};

/// Matching pursuit settings and the success criterion.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MpConfig {
    pub max_iterations: usize,
    /// Stop once ‖r‖ falls below this.
    pub residual_floor: f64,
    /// Success iff ‖x − x̂‖² < this.
    pub success_threshold: f64,
}

impl MpConfig {
    pub const NOISELESS_THRESHOLD: f64 = 1e-4;
    pub const NOISY_THRESHOLD: f64 = 1e-2;

    pub fn noiseless() -> Self {
        Self {
            max_iterations: 100,
            residual_floor: 1e-12,
            success_threshold: Self::NOISELESS_THRESHOLD,
        }
    }

    pub fn noisy() -> Self {
        Self {
            success_threshold: Self::NOISY_THRESHOLD,
            ..Self::noiseless()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_iterations == 0 {
            return Err(Error::Precondition(
                "max_iterations must be at least 1".into(),
            ));
        }
        if !(self.residual_floor > 0.0 && self.success_threshold > 0.0) {
            return Err(Error::Precondition("MP thresholds must be positive".into()));
        }
        Ok(())
    }
}

impl Default for MpConfig {
    fn default() -> Self {
        Self::noiseless()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MpOutcome {
    pub estimate: Vec<Complex64>,
    pub iterations: usize,
    /// ‖r‖ before the first step and after every step.
    pub residual_history: Vec<f64>,
}

impl MpOutcome {
    pub fn residual_norm(&self) -> f64 {
        *self.residual_history.last().unwrap()
    }
}

/// Classical matching pursuit: correlate, pick the strongest atom (ties to
/// the smallest index), add its correlation to the estimate and peel it off
/// the residual.
pub fn matching_pursuit(matrix: &SensingMatrix, y: &[Complex64], config: &MpConfig) -> MpOutcome {
    assert_eq!(
        y.len(),
        matrix.rows(),
        "measurement length does not match matrix"
    );
    let mut r = y.to_vec();
    let mut g = vec![Complex64::new(0.0, 0.0); matrix.cols()];
    let mut estimate = vec![Complex64::new(0.0, 0.0); matrix.cols()];
    let mut history = vec![norm_sqr(&r).sqrt()];
    let mut iterations = 0;
    while iterations < config.max_iterations && *history.last().unwrap() >= config.residual_floor {
        matrix.adjoint_apply(&r, &mut g);
        let (mut j, mut best) = (0, g[0].norm_sqr());
        for (i, z) in g.iter().enumerate().skip(1) {
            let v = z.norm_sqr();
            if v > best {
                best = v;
                j = i;
            }
        }
        let c = g[j];
        estimate[j] += c;
        matrix.add_scaled_column(j, -c, &mut r);
        iterations += 1;
        history.push(norm_sqr(&r).sqrt());
    }
    MpOutcome {
        estimate,
        iterations,
        residual_history: history,
    }
}

/// Outcome of one recovery trial.
#[derive(Clone, Debug, PartialEq)]
pub struct TrialResult {
    pub s: usize,
    pub snr_db: Option<f64>,
    /// Σ|x_n − x̂_n|² with x̂ kept complex.
    pub squared_error: f64,
    /// The same error after projecting x̂ onto the reals.
    pub squared_error_real: f64,
    pub iterations_used: usize,
    pub success: bool,
}

pub fn evaluate_success(x: &SparseSignal, x_hat: &[Complex64], threshold: f64) -> TrialResult {
    assert_eq!(x.dimension, x_hat.len());
    let mut err = 0.0;
    let mut err_real = 0.0;
    let dense = x.to_dense();
    for (xv, e) in dense.iter().zip(x_hat) {
        err += (Complex64::new(*xv, 0.0) - e).norm_sqr();
        err_real += (xv - e.re).powi(2);
    }
    TrialResult {
        s: x.sparsity(),
        snr_db: None,
        squared_error: err,
        squared_error_real: err_real,
        iterations_used: 0,
        success: err < threshold,
    }
}
