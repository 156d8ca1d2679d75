use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use super::{CliError, Command, RunConfig};
use crate::analysis::{
    coherence, compare_with_gaussian, condition_stats, frame_test, SpectralStats,
};
use crate::galois::FieldContext;
use crate::recovery::{
    run_noiseless_experiment, run_noisy_experiment, ExperimentReport, MatrixFamily, MpConfig,
};
use crate::rng::SeedStream;
use crate::sensing::{
    build_matrix_with_layout, write_matrix, write_matrix_csv, Layout, SensingMatrix,
};

const FRAME_TOLERANCE: f64 = 1e-8;
const COHERENCE_TOLERANCE: f64 = 1e-9;

/// Files created by the current command, removed again if it fails.
#[derive(Default)]
pub(super) struct Outputs {
    created: Vec<PathBuf>,
}

impl Outputs {
    fn write(
        &mut self,
        config: &RunConfig,
        name: &str,
        body: impl FnOnce(&mut BufWriter<File>) -> io::Result<()>,
    ) -> Result<(), CliError> {
        let path = config.out.join(name);
        let file = File::create(&path).map_err(|e| CliError::io(&path, e))?;
        self.created.push(path.clone());
        let mut w = BufWriter::new(file);
        body(&mut w)
            .and_then(|_| w.flush())
            .map_err(|e| CliError::io(&path, e))
    }

    pub(super) fn discard(&mut self) {
        for path in self.created.drain(..) {
            let _ = std::fs::remove_file(path);
        }
    }

    pub(super) fn into_files(self) -> Vec<PathBuf> {
        self.created
    }
}

pub(super) fn run(config: &RunConfig, out: &mut Outputs) -> Result<Vec<String>, CliError> {
    let field = FieldContext::new(config.p, config.m, config.poly.clone())?;
    let layout = if config.lazy {
        Layout::Lazy
    } else {
        Layout::Auto
    };
    let matrix = build_matrix_with_layout(&config.spec()?, &field, layout)?;
    let lines = match config.command {
        Command::Build => build(config, &matrix, out)?,
        Command::Verify => verify(config, &matrix, out)?,
        Command::Spectra => spectra(config, &matrix, out)?,
        Command::Recover | Command::RecoverNoisy => recover(config, &matrix, out)?,
    };
    out.write(config, "manifest.txt", |w| {
        w.write_all(config.manifest(field.modulus()).as_bytes())
    })?;
    Ok(lines)
}

fn build(
    config: &RunConfig,
    matrix: &SensingMatrix,
    out: &mut Outputs,
) -> Result<Vec<String>, CliError> {
    out.write(config, "matrix.txt", |w| write_matrix(matrix, w))?;
    let mut lines = vec![format!(
        "wrote {} ({}x{} {})",
        config.out.join("matrix.txt").display(),
        matrix.rows(),
        matrix.cols(),
        matrix.kind()
    )];
    if config.csv {
        out.write(config, "matrix.csv", |w| write_matrix_csv(matrix, w))?;
        lines.push(format!("wrote {}", config.out.join("matrix.csv").display()));
    }
    Ok(lines)
}

fn verify(
    config: &RunConfig,
    matrix: &SensingMatrix,
    out: &mut Outputs,
) -> Result<Vec<String>, CliError> {
    let (k, n) = (matrix.rows(), matrix.cols());
    let d = *config.exponents.last().expect("h >= 2");
    let coh = coherence(matrix);
    let frame = frame_test(matrix);
    let welch = coh.welch.unwrap_or(f64::NAN);
    let weil = coh.weil_prediction.unwrap_or(f64::NAN);
    out.write(config, "coherence.csv", |w| {
        writeln!(w, "K,N,d,mu,welch,ratio,weil_bound,argmax_n1,argmax_n2")?;
        writeln!(
            w,
            "{k},{n},{d},{},{welch},{},{weil},{},{}",
            coh.mu,
            coh.mu / welch,
            coh.argmax_pair.0,
            coh.argmax_pair.1
        )
    })?;
    out.write(config, "frame.csv", |w| {
        writeln!(w, "K,N,redundancy,max_deviation,max_offdiag")?;
        writeln!(
            w,
            "{k},{n},{},{:e},{:e}",
            frame.redundancy, frame.max_deviation, frame.max_offdiag
        )
    })?;
    let lines = vec![
        format!("mu={:.6}", coh.mu),
        format!("welch={welch:.6}"),
        format!("ratio={:.6}", coh.mu / welch),
        format!("weil_bound={weil:.6}"),
        format!("frame_max_deviation={:e}", frame.max_deviation),
    ];

    if frame.max_deviation.is_nan() || frame.max_deviation >= FRAME_TOLERANCE {
        return Err(CliError::Invariant(format!(
            "frame deviation {:e} >= {FRAME_TOLERANCE:e}",
            frame.max_deviation
        )));
    }
    if coh.mu < welch - COHERENCE_TOLERANCE {
        return Err(CliError::Invariant(format!(
            "mu = {} below the Welch bound {welch}",
            coh.mu
        )));
    }
    // Quadratic character sums have modulus exactly √(p^m); in general the
    // Weil estimate is only an upper bound.
    let exact = config.exponents == [1, 2];
    let weil_ok = if exact {
        (coh.mu - weil).abs() <= COHERENCE_TOLERANCE
    } else {
        coh.mu <= weil + COHERENCE_TOLERANCE
    };
    if !weil_ok {
        return Err(CliError::Invariant(format!(
            "mu = {} inconsistent with (d-1)/sqrt(K) = {weil}",
            coh.mu
        )));
    }
    Ok(lines)
}

fn spectra(
    config: &RunConfig,
    matrix: &SensingMatrix,
    out: &mut Outputs,
) -> Result<Vec<String>, CliError> {
    let seeds = SeedStream::new(config.seed);
    let mut rows: Vec<SpectralStats> = Vec::new();
    let mut lines = Vec::new();
    for &s in &config.s_values {
        let a = condition_stats(matrix, s, config.trials, seeds)?;
        let g = compare_with_gaussian(matrix.rows(), s, config.trials, seeds)?;
        lines.push(format!(
            "s={s} {}={:.6} {}={:.6}",
            a.family, a.cond_mean, g.family, g.cond_mean
        ));
        rows.push(a);
        rows.push(g);
    }
    out.write(config, "condstats.csv", |w| {
        writeln!(
            w,
            "family,s,trials,cond_mean,cond_std,lambda_min_mean,lambda_max_mean,delta_hat"
        )?;
        for r in &rows {
            writeln!(
                w,
                "{},{},{},{},{},{},{},{}",
                r.family,
                r.s,
                r.trials,
                r.cond_mean,
                r.cond_std,
                r.lambda_min_mean,
                r.lambda_max_mean,
                r.delta_hat
            )?;
        }
        Ok(())
    })?;
    Ok(lines)
}

fn recover(
    config: &RunConfig,
    matrix: &SensingMatrix,
    out: &mut Outputs,
) -> Result<Vec<String>, CliError> {
    let seeds = SeedStream::new(config.seed);
    let noisy = config.command == Command::RecoverNoisy;
    let base = if noisy {
        MpConfig::noisy()
    } else {
        MpConfig::noiseless()
    };
    let mp = MpConfig {
        max_iterations: config.max_iterations,
        ..base
    };
    let families = [
        MatrixFamily::Fixed(matrix),
        MatrixFamily::PartialFourier {
            rows: matrix.rows(),
            cols: matrix.cols(),
        },
    ];
    let reports = families
        .iter()
        .map(|f| {
            if noisy {
                run_noisy_experiment(
                    f,
                    &config.s_values,
                    &config.snr_grid_db,
                    config.trials,
                    &mp,
                    seeds,
                )
            } else {
                run_noiseless_experiment(f, &config.s_values, config.trials, &mp, seeds)
            }
        })
        .collect::<crate::Result<Vec<ExperimentReport>>>()?;

    let stem = if noisy {
        "recovery_noisy"
    } else {
        "recovery_noiseless"
    };
    out.write(config, &format!("{stem}.csv"), |w| {
        for (i, r) in reports.iter().enumerate() {
            r.write_csv(w, i == 0)?;
        }
        Ok(())
    })?;
    if config.trial_log {
        out.write(config, &format!("{stem}_trials.csv"), |w| {
            for (i, r) in reports.iter().enumerate() {
                r.write_trial_log(w, i == 0)?;
            }
            Ok(())
        })?;
    }
    let mut lines = Vec::new();
    for r in &reports {
        for c in &r.conditions {
            let snr = c.snr_db.map(|v| format!(" snr_db={v}")).unwrap_or_default();
            lines.push(format!(
                "{} s={}{snr} success_rate={:.4} (real projection {:.4})",
                r.family,
                c.s,
                c.success_rate(),
                c.success_rate_real()
            ));
        }
    }
    Ok(lines)
}
