use std::io::{self, Write};

use rayon::prelude::*;

use super::mp::{evaluate_success, matching_pursuit, MpConfig, TrialResult};
use super::signal::{measure, measure_noisy, random_sparse_signal, SparseSignal};
use crate::analysis::pairwise_sum;
use crate::rng::{SeedStream, TrialRng};
use crate::sensing::{partial_fourier, MatrixKind, SensingMatrix};
use crate::Result;

/// Source of the sensing matrix for each trial.
#[derive(Clone, Copy, Debug)]
pub enum MatrixFamily<'a> {
    /// One matrix shared by every trial.
    Fixed(&'a SensingMatrix),
    /// A fresh random K×N partial Fourier matrix for every trial.
    PartialFourier { rows: usize, cols: usize },
}

impl MatrixFamily<'_> {
    pub fn kind(&self) -> MatrixKind {
        match self {
            MatrixFamily::Fixed(m) => m.kind(),
            MatrixFamily::PartialFourier { .. } => MatrixKind::PartialFourier,
        }
    }

    pub fn dims(&self) -> (usize, usize) {
        match *self {
            MatrixFamily::Fixed(m) => (m.rows(), m.cols()),
            MatrixFamily::PartialFourier { rows, cols } => (rows, cols),
        }
    }

    fn tag(&self) -> u64 {
        crate::analysis::family_tag(self.kind())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConditionResult {
    pub s: usize,
    pub snr_db: Option<f64>,
    pub trials: usize,
    pub successes: usize,
    /// Successes when the estimate is projected onto the reals first.
    pub successes_real: usize,
    pub mean_squared_error: f64,
    pub trial_results: Vec<TrialResult>,
}

impl ConditionResult {
    pub fn success_rate(&self) -> f64 {
        self.successes as f64 / self.trials as f64
    }

    pub fn success_rate_real(&self) -> f64 {
        self.successes_real as f64 / self.trials as f64
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentReport {
    pub family: MatrixKind,
    pub rows: usize,
    pub cols: usize,
    pub seed: u64,
    pub config: MpConfig,
    pub noisy: bool,
    pub conditions: Vec<ConditionResult>,
}

impl ExperimentReport {
    pub fn condition(&self, s: usize, snr_db: Option<f64>) -> Option<&ConditionResult> {
        self.conditions
            .iter()
            .find(|c| c.s == s && c.snr_db == snr_db)
    }

    /// `family,s,trials,success_rate` rows, or with `snr_db` for noisy runs.
    pub fn write_csv<W: Write>(&self, out: &mut W, header: bool) -> io::Result<()> {
        if header {
            if self.noisy {
                writeln!(out, "family,s,snr_db,trials,success_rate")?;
            } else {
                writeln!(out, "family,s,trials,success_rate")?;
            }
        }
        for c in &self.conditions {
            match c.snr_db {
                Some(snr) => writeln!(
                    out,
                    "{},{},{},{},{:.6}",
                    self.family,
                    c.s,
                    snr,
                    c.trials,
                    c.success_rate()
                )?,
                None => writeln!(
                    out,
                    "{},{},{},{:.6}",
                    self.family,
                    c.s,
                    c.trials,
                    c.success_rate()
                )?,
            }
        }
        Ok(())
    }

    /// One line per trial with both error variants.
    pub fn write_trial_log<W: Write>(&self, out: &mut W, header: bool) -> io::Result<()> {
        if header {
            writeln!(
                out,
                "family,s,snr_db,trial,squared_error,squared_error_real,iterations,success"
            )?;
        }
        for c in &self.conditions {
            let snr = c
                .snr_db
                .map(|v| v.to_string())
                .unwrap_or_else(|| "inf".into());
            for (t, r) in c.trial_results.iter().enumerate() {
                writeln!(
                    out,
                    "{},{},{},{},{:e},{:e},{},{}",
                    self.family,
                    c.s,
                    snr,
                    t,
                    r.squared_error,
                    r.squared_error_real,
                    r.iterations_used,
                    r.success as u8
                )?;
            }
        }
        Ok(())
    }
}

fn run_trial(
    family: &MatrixFamily<'_>,
    rng: &mut TrialRng,
    s: usize,
    snr_db: Option<f64>,
    config: &MpConfig,
) -> Result<TrialResult> {
    let fresh;
    let matrix = match *family {
        MatrixFamily::Fixed(m) => m,
        MatrixFamily::PartialFourier { rows, cols } => {
            fresh = partial_fourier(rows, cols, rng)?;
            &fresh
        }
    };
    let x: SparseSignal = random_sparse_signal(matrix.cols(), s, rng)?;
    let y = match snr_db {
        None => measure(matrix, &x),
        Some(snr) => measure_noisy(matrix, &x, snr, rng)?,
    };
    let out = matching_pursuit(matrix, &y, config);
    let mut res = evaluate_success(&x, &out.estimate, config.success_threshold);
    res.snr_db = snr_db;
    res.iterations_used = out.iterations;
    Ok(res)
}

// Signals for (family, s, trial) come from the same stream with or without
// noise, so noisy and noiseless runs see identical signals and matrices.
fn run_condition(
    family: &MatrixFamily<'_>,
    s: usize,
    snr_db: Option<f64>,
    trials: usize,
    config: &MpConfig,
    seeds: SeedStream,
) -> Result<ConditionResult> {
    let cond = [family.tag(), s as u64];
    let results = (0..trials)
        .into_par_iter()
        .map(|t| run_trial(family, &mut seeds.trial(&cond, t as u64), s, snr_db, config))
        .collect::<Result<Vec<_>>>()?;
    let successes = results.iter().filter(|r| r.success).count();
    let successes_real = results
        .iter()
        .filter(|r| r.squared_error_real < config.success_threshold)
        .count();
    let errs: Vec<f64> = results.iter().map(|r| r.squared_error).collect();
    Ok(ConditionResult {
        s,
        snr_db,
        trials,
        successes,
        successes_real,
        mean_squared_error: pairwise_sum(&errs) / trials as f64,
        trial_results: results,
    })
}

fn check(trials: usize, config: &MpConfig) -> Result<()> {
    config.validate()?;
    if trials == 0 {
        return Err(crate::Error::Precondition(
            "at least one trial is required".into(),
        ));
    }
    Ok(())
}

/// Success rates of noiseless recovery for each sparsity level.
pub fn run_noiseless_experiment(
    family: &MatrixFamily<'_>,
    s_values: &[usize],
    trials: usize,
    config: &MpConfig,
    seeds: SeedStream,
) -> Result<ExperimentReport> {
    check(trials, config)?;
    let conditions = s_values
        .iter()
        .map(|&s| run_condition(family, s, None, trials, config, seeds))
        .collect::<Result<Vec<_>>>()?;
    let (rows, cols) = family.dims();
    Ok(ExperimentReport {
        family: family.kind(),
        rows,
        cols,
        seed: seeds.seed(),
        config: *config,
        noisy: false,
        conditions,
    })
}

/// Success-rate surface over sparsity × SNR (dB).
pub fn run_noisy_experiment(
    family: &MatrixFamily<'_>,
    s_values: &[usize],
    snr_grid_db: &[f64],
    trials: usize,
    config: &MpConfig,
    seeds: SeedStream,
) -> Result<ExperimentReport> {
    check(trials, config)?;
    let mut conditions = Vec::with_capacity(s_values.len() * snr_grid_db.len());
    for &s in s_values {
        for &snr in snr_grid_db {
            conditions.push(run_condition(family, s, Some(snr), trials, config, seeds)?);
        }
    }
    let (rows, cols) = family.dims();
    Ok(ExperimentReport {
        family: family.kind(),
        rows,
        cols,
        seed: seeds.seed(),
        config: *config,
        noisy: true,
        conditions,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sensing::construction_1a;

    #[test]
    fn zero_sparsity_always_succeeds() {
        let m = construction_1a(3, 2).unwrap();
        let r = run_noiseless_experiment(
            &MatrixFamily::Fixed(&m),
            &[0],
            10,
            &MpConfig::noiseless(),
            SeedStream::new(1),
        )
        .unwrap();
        assert_eq!(r.conditions[0].success_rate(), 1.0);
    }

    #[test]
    fn reports_are_reproducible_and_csv_is_stable() {
        let m = construction_1a(3, 2).unwrap();
        let fam = MatrixFamily::Fixed(&m);
        let a = run_noiseless_experiment(
            &fam,
            &[1, 2, 3],
            25,
            &MpConfig::noiseless(),
            SeedStream::new(9),
        )
        .unwrap();
        let b = run_noiseless_experiment(
            &fam,
            &[1, 2, 3],
            25,
            &MpConfig::noiseless(),
            SeedStream::new(9),
        )
        .unwrap();
        assert_eq!(a, b);
        let mut csv = Vec::new();
        a.write_csv(&mut csv, true).unwrap();
        let text = String::from_utf8(csv).unwrap();
        assert!(
            text.starts_with("family,s,trials,success_rate\nadditive-character,1,25,1.000000\n")
        );
        let n = run_noisy_experiment(
            &fam,
            &[1],
            &[20.0, f64::INFINITY],
            5,
            &MpConfig::noisy(),
            SeedStream::new(9),
        )
        .unwrap();
        let mut csv = Vec::new();
        n.write_csv(&mut csv, true).unwrap();
        let text = String::from_utf8(csv).unwrap();
        assert!(text.contains("family,s,snr_db,trials,success_rate\n"));
        assert!(text.contains("additive-character,1,inf,5,1.000000"));
        let mut log = Vec::new();
        n.write_trial_log(&mut log, true).unwrap();
        assert_eq!(String::from_utf8(log).unwrap().lines().count(), 11);
    }

    #[test]
    fn fourier_family_draws_fresh_matrices() {
        let fam = MatrixFamily::PartialFourier { rows: 9, cols: 81 };
        let r =
            run_noiseless_experiment(&fam, &[1], 20, &MpConfig::noiseless(), SeedStream::new(4))
                .unwrap();
        assert_eq!(r.family, MatrixKind::PartialFourier);
        assert_eq!(r.conditions[0].success_rate(), 1.0);
    }

    #[test]
    fn bad_inputs() {
        let m = construction_1a(3, 2).unwrap();
        let fam = MatrixFamily::Fixed(&m);
        assert!(run_noiseless_experiment(
            &fam,
            &[1],
            0,
            &MpConfig::noiseless(),
            SeedStream::new(1)
        )
        .is_err());
        assert!(run_noiseless_experiment(
            &fam,
            &[82],
            1,
            &MpConfig::noiseless(),
            SeedStream::new(1)
        )
        .is_err());
        assert!(run_noisy_experiment(
            &fam,
            &[0],
            &[10.0],
            1,
            &MpConfig::noisy(),
            SeedStream::new(1)
        )
        .is_err());
    }
}
