use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use super::CliError;
use crate::galois::PrimePoly;
use crate::sensing::ConstructionSpec;

/// Environment variable holding the worker-thread count.
pub const WORKERS_ENV: &str = "CHARSENSE_WORKERS";

pub const DEFAULT_SEED: u64 = 2011;
pub const DEFAULT_MAX_ITERATIONS: usize = 100;
pub const DEFAULT_RECOVERY_TRIALS: usize = 500;
pub const DEFAULT_SPECTRA_TRIALS: usize = 2000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Build,
    Verify,
    Spectra,
    Recover,
    RecoverNoisy,
}

impl Command {
    pub fn as_str(self) -> &'static str {
        match self {
            Command::Build => "build",
            Command::Verify => "verify",
            Command::Spectra => "spectra",
            Command::Recover => "recover",
            Command::RecoverNoisy => "recover-noisy",
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "charsense",
    version,
    about = "Additive character sensing matrices: build, verify, and run recovery experiments"
)]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Subcommand, Debug)]
enum Sub {
    /// Write the sensing matrix and a manifest.
    Build(Flags),
    /// Exhaustive coherence scan and tight-frame check.
    Verify(Flags),
    /// Condition-number statistics against Gaussian matrices.
    Spectra(Flags),
    /// Noiseless matching-pursuit recovery rates.
    Recover(Flags),
    /// Recovery rates over an SNR grid.
    RecoverNoisy(Flags),
}

#[derive(Args, Debug, Default)]
struct Flags {
    /// key=value file; flags given on the command line take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    p: Option<String>,
    #[arg(long)]
    m: Option<String>,
    /// Number of exponents.
    #[arg(long)]
    h: Option<String>,
    /// Largest exponent.
    #[arg(long)]
    d: Option<String>,
    /// Comma-separated exponents, e.g. 1,2.
    #[arg(long)]
    r: Option<String>,
    #[arg(long)]
    seed: Option<String>,
    #[arg(long)]
    trials: Option<String>,
    /// Sparsity levels: a..b[:step] or a comma list.
    #[arg(long)]
    s: Option<String>,
    /// SNR grid in dB: a..b[:step] or a comma list.
    #[arg(long)]
    snr: Option<String>,
    /// Output directory.
    #[arg(long)]
    out: Option<String>,
    /// Primitive polynomial over GF(p), constant coefficient first.
    #[arg(long)]
    poly: Option<String>,
    /// Generate columns on demand instead of storing them.
    #[arg(long)]
    lazy: bool,
    #[arg(long = "max-iter")]
    max_iter: Option<String>,
    /// Also write matrix.csv (build).
    #[arg(long)]
    csv: bool,
    /// Also write a per-trial log (recover, recover-noisy).
    #[arg(long = "trial-log")]
    trial_log: bool,
}

impl Flags {
    fn into_map(self) -> BTreeMap<&'static str, String> {
        let mut map = BTreeMap::new();
        let pairs = [
            ("p", self.p),
            ("m", self.m),
            ("h", self.h),
            ("d", self.d),
            ("r", self.r),
            ("seed", self.seed),
            ("trials", self.trials),
            ("s", self.s),
            ("snr", self.snr),
            ("out", self.out),
            ("poly", self.poly),
            ("max-iter", self.max_iter),
        ];
        for (k, v) in pairs {
            if let Some(v) = v {
                map.insert(k, v);
            }
        }
        for (k, set) in [
            ("lazy", self.lazy),
            ("csv", self.csv),
            ("trial-log", self.trial_log),
        ] {
            if set {
                map.insert(k, "true".to_string());
            }
        }
        map
    }
}

const KEYS: &[&str] = &[
    "p",
    "m",
    "h",
    "d",
    "r",
    "seed",
    "trials",
    "s",
    "snr",
    "out",
    "poly",
    "lazy",
    "max-iter",
    "csv",
    "trial-log",
];
// Written into manifests; accepted and ignored on input.
const INFORMATIONAL_KEYS: &[&str] = &["command", "version"];

/// Fully resolved, validated parameters of one command.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub p: u32,
    pub m: u32,
    pub exponents: Vec<u64>,
    pub seed: u64,
    pub trials: usize,
    pub s_values: Vec<usize>,
    pub snr_grid_db: Vec<f64>,
    pub out: PathBuf,
    pub poly: Option<PrimePoly>,
    pub lazy: bool,
    pub max_iterations: usize,
    pub csv: bool,
    pub trial_log: bool,
    /// Worker threads; `None` uses the rayon default.
    pub workers: Option<usize>,
}

impl RunConfig {
    /// Defaults for `command` with no flags and no config file.
    pub fn defaults(command: Command) -> Self {
        Self::resolve(command, &BTreeMap::new()).expect("defaults are valid")
    }

    pub fn spec(&self) -> crate::Result<ConstructionSpec> {
        ConstructionSpec::new(self.p, self.m, self.exponents.clone())
    }

    /// Parses `argv` (program name first). Reads `--config` if given; the
    /// worker count is left unset.
    pub fn from_args<I, T>(args: I) -> Result<Self, CliError>
    where
        I: IntoIterator<Item = T>,
        T: Into<OsString> + Clone,
    {
        let cli = Cli::try_parse_from(args).map_err(CliError::Usage)?;
        let (command, mut flags) = match cli.command {
            Sub::Build(f) => (Command::Build, f),
            Sub::Verify(f) => (Command::Verify, f),
            Sub::Spectra(f) => (Command::Spectra, f),
            Sub::Recover(f) => (Command::Recover, f),
            Sub::RecoverNoisy(f) => (Command::RecoverNoisy, f),
        };
        let mut map = match flags.config.take() {
            Some(path) => {
                let text = std::fs::read_to_string(&path).map_err(|e| CliError::io(&path, e))?;
                parse_config_file(&text)?
            }
            None => BTreeMap::new(),
        };
        map.extend(flags.into_map());
        Self::resolve(command, &map)
    }

    fn resolve(command: Command, map: &BTreeMap<&'static str, String>) -> Result<Self, CliError> {
        let get = |k: &str| map.get(k).map(String::as_str);
        let p: u32 = parse_or(get("p"), "p", 3)?;
        let m: u32 = parse_or(get("m"), "m", 4)?;
        let h: Option<usize> = get("h").map(|v| parse_value(v, "h")).transpose()?;
        let d: Option<u64> = get("d").map(|v| parse_value(v, "d")).transpose()?;
        let spec = match get("r") {
            Some(list) => {
                let exps: Vec<u64> = list
                    .split(',')
                    .map(|t| parse_value(t.trim(), "r"))
                    .collect::<Result<_, _>>()?;
                if h.is_some_and(|h| h != exps.len()) || d.is_some_and(|d| Some(&d) != exps.last())
                {
                    return Err(CliError::Validation(format!(
                        "--r {list} disagrees with --h/--d"
                    )));
                }
                ConstructionSpec::new(p, m, exps)?
            }
            None => {
                let h = h.unwrap_or(2);
                ConstructionSpec::with_default_exponents(p, m, h, d.unwrap_or(h as u64))?
            }
        };
        let field_order = spec.cols() as usize;
        let poly = get("poly").map(|v| PrimePoly::parse(p, v)).transpose()?;
        if let Some(g) = &poly {
            crate::galois::check_primitive(g)?;
            if g.degree() != m as usize {
                return Err(crate::Error::WrongDegree {
                    expected: m as usize,
                    got: g.degree(),
                }
                .into());
            }
        }

        let (default_trials, default_s) = match command {
            Command::Spectra => (DEFAULT_SPECTRA_TRIALS, "5..40:5"),
            Command::Recover => (DEFAULT_RECOVERY_TRIALS, "1..10"),
            Command::RecoverNoisy => (DEFAULT_RECOVERY_TRIALS, "1..5"),
            Command::Build | Command::Verify => (DEFAULT_RECOVERY_TRIALS, "1..10"),
        };
        let trials: usize = parse_or(get("trials"), "trials", default_trials)?;
        if trials == 0 {
            return Err(CliError::Validation("--trials must be positive".into()));
        }
        let s_values = parse_int_grid(get("s").unwrap_or(default_s))?;
        let s_cap = if command == Command::Spectra {
            spec.rows() as usize
        } else {
            field_order
        };
        if let Some(&bad) = s_values
            .iter()
            .find(|&&s| s == 0 && command == Command::Spectra || s > s_cap)
        {
            return Err(CliError::Validation(format!(
                "sparsity {bad} outside 1..={s_cap}"
            )));
        }
        let snr_grid_db = parse_float_grid(get("snr").unwrap_or("0..40:5"))?;
        if snr_grid_db.iter().any(|v| v.is_nan()) {
            return Err(CliError::Validation("SNR values must be numbers".into()));
        }
        let max_iterations = parse_or(get("max-iter"), "max-iter", DEFAULT_MAX_ITERATIONS)?;
        if max_iterations == 0 {
            return Err(CliError::Validation("--max-iter must be positive".into()));
        }
        Ok(Self {
            command,
            p,
            m,
            exponents: spec.exponents().to_vec(),
            seed: parse_or(get("seed"), "seed", DEFAULT_SEED)?,
            trials,
            s_values,
            snr_grid_db,
            out: PathBuf::from(get("out").unwrap_or("out")),
            poly,
            lazy: parse_or(get("lazy"), "lazy", false)?,
            max_iterations,
            csv: parse_or(get("csv"), "csv", false)?,
            trial_log: parse_or(get("trial-log"), "trial-log", false)?,
            workers: None,
        })
    }

    /// `key=value` lines that reproduce this run when passed to `--config`.
    pub fn manifest(&self, modulus: &PrimePoly) -> String {
        let join = |v: Vec<String>| v.join(",");
        let mut lines = vec![
            format!("command={}", self.command),
            format!("version={}", env!("CARGO_PKG_VERSION")),
            format!("p={}", self.p),
            format!("m={}", self.m),
            format!("h={}", self.exponents.len()),
            format!("d={}", self.exponents.last().expect("h >= 2")),
            format!(
                "r={}",
                join(self.exponents.iter().map(u64::to_string).collect())
            ),
            format!("poly={modulus}"),
            format!("seed={}", self.seed),
            format!("lazy={}", self.lazy),
        ];
        match self.command {
            Command::Build => lines.push(format!("csv={}", self.csv)),
            Command::Verify => {}
            Command::Spectra => {
                lines.push(format!("trials={}", self.trials));
                lines.push(format!(
                    "s={}",
                    join(self.s_values.iter().map(usize::to_string).collect())
                ));
            }
            Command::Recover | Command::RecoverNoisy => {
                lines.push(format!("trials={}", self.trials));
                lines.push(format!(
                    "s={}",
                    join(self.s_values.iter().map(usize::to_string).collect())
                ));
                if self.command == Command::RecoverNoisy {
                    lines.push(format!(
                        "snr={}",
                        join(self.snr_grid_db.iter().map(f64::to_string).collect())
                    ));
                }
                lines.push(format!("max-iter={}", self.max_iterations));
                lines.push(format!("trial-log={}", self.trial_log));
            }
        }
        lines.push(String::new());
        lines.join("\n")
    }
}

/// Reads `key = value` lines; `#` starts a comment.
pub fn parse_config_file(text: &str) -> Result<BTreeMap<&'static str, String>, CliError> {
    let mut map = BTreeMap::new();
    for (no, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line.split_once('=').ok_or_else(|| {
            CliError::Validation(format!("config line {}: expected key=value", no + 1))
        })?;
        let k = k.trim().trim_start_matches("--");
        if INFORMATIONAL_KEYS.contains(&k) {
            continue;
        }
        let key = KEYS.iter().find(|&&known| known == k).ok_or_else(|| {
            CliError::Validation(format!("config line {}: unknown key `{k}`", no + 1))
        })?;
        map.insert(*key, v.trim().to_string());
    }
    Ok(map)
}

fn parse_value<T: std::str::FromStr>(v: &str, key: &str) -> Result<T, CliError> {
    v.trim()
        .parse()
        .map_err(|_| CliError::Validation(format!("invalid value `{v}` for {key}")))
}

fn parse_or<T: std::str::FromStr>(v: Option<&str>, key: &str, default: T) -> Result<T, CliError> {
    v.map_or(Ok(default), |v| parse_value(v, key))
}

/// `a..b[:step]` (inclusive) or `a,b,c`.
pub fn parse_int_grid(text: &str) -> Result<Vec<usize>, CliError> {
    let bad = || CliError::Validation(format!("invalid sparsity list `{text}`"));
    if let Some((a, rest)) = text.split_once("..") {
        let (b, step) = rest.split_once(':').unwrap_or((rest, "1"));
        let (a, b, step): (usize, usize, usize) = (
            a.trim().parse().map_err(|_| bad())?,
            b.trim().parse().map_err(|_| bad())?,
            step.trim().parse().map_err(|_| bad())?,
        );
        if step == 0 || a > b {
            return Err(bad());
        }
        return Ok((a..=b).step_by(step).collect());
    }
    text.split(',')
        .map(|t| t.trim().parse().map_err(|_| bad()))
        .collect()
}

/// Same grammar as [`parse_int_grid`] with real endpoints. Range points are
/// a + i·step, so the grid carries no accumulated rounding.
pub fn parse_float_grid(text: &str) -> Result<Vec<f64>, CliError> {
    let bad = || CliError::Validation(format!("invalid SNR grid `{text}`"));
    if let Some((a, rest)) = text.split_once("..") {
        let (b, step) = rest.split_once(':').unwrap_or((rest, "1"));
        let (a, b, step): (f64, f64, f64) = (
            a.trim().parse().map_err(|_| bad())?,
            b.trim().parse().map_err(|_| bad())?,
            step.trim().parse().map_err(|_| bad())?,
        );
        if step.is_nan() || step <= 0.0 || !a.is_finite() || !b.is_finite() || a > b {
            return Err(bad());
        }
        let n = ((b - a) / step + 1e-9).floor() as usize;
        return Ok((0..=n).map(|i| a + i as f64 * step).collect());
    }
    text.split(',')
        .map(|t| t.trim().parse().map_err(|_| bad()))
        .collect()
}
