// Acceptance run: one PASS/FAIL line per criterion, non-zero exit if any fails.
//
// Expected values are recomputed here from first principles (character sums
// via the Frobenius trace, the cubic formula, the Welch formula) instead of
// trusting the library paths under test.

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use charsense::analysis::{
    coherence, coherence_dense, compare_with_gaussian, condition_stats, frame_test,
    gram_eigenvalues, welch_bound,
};
use charsense::cli::{execute, RunConfig};
use charsense::galois::{character_sum, root_of_unity, FieldContext, FieldElement, PrimePoly};
use charsense::lfsr::{CombinedGenerator, LfsrSpec};
use charsense::recovery::{run_noiseless_experiment, run_noisy_experiment, MatrixFamily, MpConfig};
use charsense::rng::{sample_distinct, SeedStream};
use charsense::sensing::{construction_1a, SensingMatrix};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

const SEED: u64 = 2011;

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn field81() -> FieldContext {
    FieldContext::new(3, 4, Some(PrimePoly::parse(3, "2,0,0,1,1").unwrap())).unwrap()
}

/// χ(c1·x + c2·x²) summed over the field, from the Frobenius trace.
fn quadratic_sum(f: &FieldContext, c1: FieldElement, c2: FieldElement) -> Complex64 {
    let mut counts = vec![0u64; f.p() as usize];
    for x in f.elements() {
        let v = f.add(f.mul(c1, x), f.mul(c2, f.mul(x, x)));
        counts[f.trace_via_frobenius(v) as usize] += 1;
    }
    counts
        .iter()
        .enumerate()
        .map(|(t, &c)| root_of_unity(t as u64, f.p()) * c as f64)
        .sum()
}

/// max over nonzero (c1, c2) of |Σ χ(c1 x + c2 x²)| / K: the coherence of the
/// column set {x ↦ χ(b1 x + b2 x²)/√K}, whose pairwise inner products are
/// exactly these sums.
fn oracle_coherence(f: &FieldContext) -> f64 {
    let k = f.order() as f64;
    let mut best = 0.0f64;
    for c1 in f.elements() {
        for c2 in f.elements() {
            if !(c1.is_zero() && c2.is_zero()) {
                best = best.max(quadratic_sum(f, c1, c2).norm() / k);
            }
        }
    }
    best
}

fn c1_coherence() -> Outcome {
    let mut detail = Vec::new();
    let mut ok = true;
    for (m, expected) in [(2u32, 1.0 / 3.0), (4, 1.0 / 9.0)] {
        let a = construction_1a(3, m).map_err(|e| e.to_string())?;
        let t = Instant::now();
        let rep = coherence(&a);
        let elapsed = t.elapsed().as_secs_f64();
        let f = FieldContext::new(3, m, None).map_err(|e| e.to_string())?;
        let oracle = oracle_coherence(&f);
        ok &= (rep.mu - expected).abs() < 1e-9 && (oracle - expected).abs() < 1e-9;
        if m == 2 {
            let dense = coherence_dense(&a);
            ok &= (dense.mu - rep.mu).abs() < 1e-12 && dense.argmax_pair == rep.argmax_pair;
        }
        detail.push(format!(
            "K={}: mu={:.12} oracle={:.12} ({elapsed:.1}s)",
            a.rows(),
            rep.mu,
            oracle
        ));
    }
    check(ok, detail.join("; "))
}

fn c2_welch() -> Outcome {
    let a = construction_1a(3, 4).map_err(|e| e.to_string())?;
    let (k, n) = (81.0f64, 6561.0f64);
    let oracle = ((n - k) / (k * (n - 1.0))).sqrt();
    let w = welch_bound(81, 6561).map_err(|e| e.to_string())?;
    let mu = coherence(&a).mu;
    let ratio = mu / w;
    check(
        (w - oracle).abs() < 1e-15 && (w - 0.110432).abs() < 5e-7 && (1.0..=1.01).contains(&ratio),
        format!("welch={w:.6} mu/welch={ratio:.6}"),
    )
}

// A·A^H from columns built directly out of the field, independent of the
// library's column indexing.
fn oracle_frame_deviation(f: &FieldContext) -> f64 {
    let xs: Vec<FieldElement> = f.elements().collect();
    let k = xs.len();
    let scale = 1.0 / (k as f64).sqrt();
    let mut gram = vec![Complex64::new(0.0, 0.0); k * k];
    let mut col = vec![Complex64::new(0.0, 0.0); k];
    for b1 in f.elements() {
        for b2 in f.elements() {
            for (c, &x) in col.iter_mut().zip(&xs) {
                let v = f.add(f.mul(b1, x), f.mul(b2, f.mul(x, x)));
                *c = root_of_unity(f.trace_via_frobenius(v) as u64, f.p()) * scale;
            }
            for i in 0..k {
                for j in 0..k {
                    gram[i * k + j] += col[i] * col[j].conj();
                }
            }
        }
    }
    let rho = k as f64;
    let mut dev = 0.0f64;
    for i in 0..k {
        for j in 0..k {
            let target = if i == j { rho } else { 0.0 };
            dev = dev.max((gram[i * k + j] - target).norm());
        }
    }
    dev
}

fn c3_tight_frame() -> Outcome {
    let mut ok = true;
    let mut detail = Vec::new();
    for m in [2u32, 4] {
        let a = construction_1a(3, m).map_err(|e| e.to_string())?;
        let rep = frame_test(&a);
        let oracle =
            oracle_frame_deviation(&FieldContext::new(3, m, None).map_err(|e| e.to_string())?);
        ok &= rep.max_deviation < 1e-8 && oracle < 1e-8 && rep.redundancy == a.rows() as f64;
        detail.push(format!(
            "K={}: max_dev={:.2e} oracle={:.2e}",
            a.rows(),
            rep.max_deviation,
            oracle
        ));
    }
    check(ok, detail.join("; "))
}

fn c4_lfsr_trace() -> Outcome {
    let f = field81();
    let g1 = LfsrSpec::from_exponent(&f, 1).map_err(|e| e.to_string())?;
    let g2 = LfsrSpec::from_exponent(&f, 2).map_err(|e| e.to_string())?;
    let polys_ok = g1.feedback() == &PrimePoly::parse(3, "2,0,0,1,1").unwrap()
        && g2.feedback() == &PrimePoly::parse(3, "1,0,1,2,1").unwrap();
    let powers: Vec<FieldElement> = (0..80).map(|k| f.exp(k)).collect();
    let mut mismatches = 0u64;
    let mut compared = 0u64;
    for b1 in f.elements() {
        for b2 in f.elements() {
            let seq = CombinedGenerator::for_coefficients(&f, &[1, 2], &[b1, b2])
                .and_then(|g| g.generate(80))
                .map_err(|e| e.to_string())?;
            for (k, &s) in seq.iter().enumerate() {
                let x = powers[k];
                let direct = (f.trace_via_frobenius(f.mul(b1, x))
                    + f.trace_via_frobenius(f.mul(b2, f.mul(x, x))))
                    % 3;
                mismatches += (s != direct) as u64;
                compared += 1;
            }
        }
    }
    check(
        polys_ok && mismatches == 0 && compared == 6561 * 80,
        format!(
            "g1={} g2={}; {compared} symbols, {mismatches} mismatches",
            g1.feedback().pretty(),
            g2.feedback().pretty()
        ),
    )
}

fn c5_weil() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut detail = Vec::new();
    let mut violations = 0;
    for m in [3u32, 4] {
        let f = FieldContext::new(3, m, None).map_err(|e| e.to_string())?;
        let q = f.order() as f64;
        let mut worst = 0.0f64;
        let mut tested = 0;
        while tested < 1000 {
            let r: u64 = rng.gen_range(1..=12);
            if r.is_multiple_of(3) {
                continue;
            }
            let mut poly = BTreeMap::new();
            for e in 1..r {
                let c = f.element(rng.gen_range(0..f.order())).unwrap();
                if !c.is_zero() {
                    poly.insert(e, c);
                }
            }
            poly.insert(r, f.element(rng.gen_range(1..f.order())).unwrap());
            let bound = (r - 1) as f64 * q.sqrt();
            let s = character_sum(&f, &poly).norm();
            if s > bound + 1e-9 {
                violations += 1;
            }
            worst = worst.max(s / bound.max(1.0));
            tested += 1;
        }
        detail.push(format!(
            "GF({}): {tested} polys, max |S|/bound={worst:.4}",
            f.order()
        ));
    }
    check(
        violations == 0,
        format!("{}; {violations} violations", detail.join("; ")),
    )
}

fn c6_noiseless_recovery() -> Outcome {
    let a = construction_1a(3, 4).map_err(|e| e.to_string())?;
    let s_values: Vec<usize> = (1..=7).collect();
    let rep = run_noiseless_experiment(
        &MatrixFamily::Fixed(&a),
        &s_values,
        2000,
        &MpConfig::noiseless(),
        SeedStream::new(SEED),
    )
    .map_err(|e| e.to_string())?;
    let mut ok = true;
    let mut rates = Vec::new();
    for c in &rep.conditions {
        let need = if c.s <= 4 { 0.99 } else { 0.95 };
        ok &= c.success_rate() > need;
        rates.push(format!("s={}:{:.4}", c.s, c.success_rate()));
    }
    check(ok, format!("2000 trials/s, {}", rates.join(" ")))
}

fn c7_condition_ordering() -> Outcome {
    let a = construction_1a(3, 4).map_err(|e| e.to_string())?;
    let seeds = SeedStream::new(SEED);
    let trials = 10_000;
    let mut ok = true;
    let mut detail = Vec::new();
    for s in (5..=40).step_by(5) {
        let x = condition_stats(&a, s, trials, seeds).map_err(|e| e.to_string())?;
        let g = compare_with_gaussian(81, s, trials, seeds).map_err(|e| e.to_string())?;
        ok &= x.cond_mean <= g.cond_mean;
        detail.push(format!("s={s}:{:.3}<={:.3}", x.cond_mean, g.cond_mean));
    }
    check(ok, format!("{trials} trials/s, {}", detail.join(" ")))
}

fn c8_noisy_consistency() -> Outcome {
    let a = construction_1a(3, 4).map_err(|e| e.to_string())?;
    let family = MatrixFamily::Fixed(&a);
    let seeds = SeedStream::new(SEED);
    let s_values = [1, 2, 3];
    let trials = 1000;
    let clean = run_noiseless_experiment(&family, &s_values, trials, &MpConfig::noiseless(), seeds)
        .map_err(|e| e.to_string())?;
    let noisy = run_noisy_experiment(
        &family,
        &s_values,
        &[30.0, 60.0],
        trials,
        &MpConfig::noisy(),
        seeds,
    )
    .map_err(|e| e.to_string())?;
    let mut ok = true;
    let mut detail = Vec::new();
    for s in s_values {
        let r0 = clean.condition(s, None).unwrap().success_rate();
        let r30 = noisy.condition(s, Some(30.0)).unwrap().success_rate();
        let r60 = noisy.condition(s, Some(60.0)).unwrap().success_rate();
        ok &= (r60 - r0).abs() <= 0.01 && r30 > 0.90;
        detail.push(format!("s={s}: clean={r0:.3} 60dB={r60:.3} 30dB={r30:.3}"));
    }
    check(ok, format!("{trials} trials, {}", detail.join("; ")))
}

/// a + b·ω with ω = e^{2πi/3}, ω² = −1 − ω.
#[derive(Clone, Copy, Debug, PartialEq)]
struct Eisenstein(i128, i128);

impl Eisenstein {
    fn mul(self, o: Self) -> Self {
        let (a, b, c, d) = (self.0, self.1, o.0, o.1);
        Eisenstein(a * c - b * d, a * d + b * c - b * d)
    }
    fn conj(self) -> Self {
        Eisenstein(self.0 - self.1, -self.1)
    }
    /// Integer value of a real element.
    fn real(self) -> i128 {
        assert_eq!(self.1, 0, "element is not real");
        self.0
    }
}

/// Eigenvalues of the 3×3 Gram matrix (1/9)·Z of three K=9 columns with
/// phase vectors `t`, from the exact integer characteristic polynomial of Z.
fn exact_gram_roots(t: [&[u16]; 3]) -> [f64; 3] {
    let z = |i: usize, j: usize| {
        let mut n = [0i128; 3];
        for (&x, &y) in t[i].iter().zip(t[j]) {
            n[((y + 3 - x) % 3) as usize] += 1;
        }
        Eisenstein(n[0] - n[2], n[1] - n[2])
    };
    let (z00, z11, z22) = (z(0, 0).real(), z(1, 1).real(), z(2, 2).real());
    let (z01, z12, z02) = (z(0, 1), z(1, 2), z(0, 2));
    let n01 = z01.mul(z01.conj()).real();
    let n12 = z12.mul(z12.conj()).real();
    let n02 = z02.mul(z02.conj()).real();
    let w = z01.mul(z12).mul(z02.conj());
    // μ³ − c2 μ² + c1 μ − c0
    let c2 = z00 + z11 + z22;
    let c1 = z00 * z11 + z11 * z22 + z00 * z22 - n01 - n12 - n02;
    let two_re_w = Eisenstein(w.0 + w.conj().0, w.1 + w.conj().1).real();
    let c0 = z00 * z11 * z22 + two_re_w - z00 * n12 - z11 * n02 - z22 * n01;
    // μ = τ + c2/3; 27·(depressed cubic) keeps everything integral.
    let (p3, q27) = (3 * c1 - c2 * c2, -2 * c2 * c2 * c2 + 9 * c2 * c1 - 27 * c0);
    let shift = c2 as f64 / 3.0;
    let (p, q) = (p3 as f64 / 3.0, q27 as f64 / 27.0);
    let disc = 4 * p3 * p3 * p3 + q27 * q27; // 729·(4p³ + 27q²)
    let mut roots = if p3 == 0 {
        [shift; 3]
    } else if disc == 0 {
        let (single, double) = (3.0 * q / p, -1.5 * q / p);
        [shift + single, shift + double, shift + double]
    } else {
        let r = 2.0 * (-p / 3.0).sqrt();
        let phi = (3.0 * q / (p * r)).clamp(-1.0, 1.0).acos() / 3.0;
        [0, 1, 2].map(|k| shift + r * (phi - 2.0 * std::f64::consts::PI * k as f64 / 3.0).cos())
    };
    for x in roots.iter_mut() {
        *x /= 9.0;
    }
    roots.sort_by(|x, y| x.total_cmp(y));
    roots
}

fn c9_gram_sanity() -> Outcome {
    let a: SensingMatrix = construction_1a(3, 2).map_err(|e| e.to_string())?;
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut worst_root = 0.0f64;
    let mut worst_sum = 0.0f64;
    let mut phases = vec![vec![0u16; 9]; 3];
    for _ in 0..1000 {
        let cols = sample_distinct(a.cols(), 3, &mut rng);
        let ev = gram_eigenvalues(&a.select_columns(&cols)).map_err(|e| e.to_string())?;
        for (t, &n) in phases.iter_mut().zip(&cols) {
            a.column_phases_into(n, t);
        }
        let roots = exact_gram_roots([&phases[0], &phases[1], &phases[2]]);
        for (x, y) in ev.iter().zip(&roots) {
            worst_root = worst_root.max((x - y).abs());
        }
        worst_sum = worst_sum.max((ev.iter().sum::<f64>() - 3.0).abs());
    }
    check(
        worst_root < 1e-8 && worst_sum < 1e-9,
        format!("1000 submatrices, max |λ - root|={worst_root:.2e}, max |Σλ - 3|={worst_sum:.2e}"),
    )
}

fn c10_determinism() -> Outcome {
    let commands: [&[&str]; 5] = [
        &["build", "--m", "4", "--csv"],
        &["verify", "--m", "4"],
        &["spectra", "--m", "4", "--trials", "200"],
        &[
            "recover",
            "--m",
            "4",
            "--s",
            "1..7:2",
            "--trials",
            "40",
            "--trial-log",
        ],
        &[
            "recover-noisy",
            "--m",
            "4",
            "--s",
            "1,3",
            "--snr",
            "0..40:10",
            "--trials",
            "20",
            "--trial-log",
        ],
    ];
    let mut compared = 0;
    for args in commands {
        let dirs = [
            tempfile::tempdir().map_err(|e| e.to_string())?,
            tempfile::tempdir().map_err(|e| e.to_string())?,
        ];
        let mut files = Vec::new();
        for (dir, workers) in dirs.iter().zip([1, 8]) {
            let mut cfg =
                RunConfig::from_args(std::iter::once("charsense").chain(args.iter().copied()))
                    .map_err(|e| e.to_string())?;
            cfg.out = dir.path().to_path_buf();
            cfg.workers = Some(workers);
            let rep = execute(&cfg).map_err(|e| e.to_string())?;
            files.push(rep.files);
        }
        for (x, y) in files[0].iter().zip(&files[1]) {
            if std::fs::read(x).map_err(|e| e.to_string())?
                != std::fs::read(y).map_err(|e| e.to_string())?
            {
                return Err(format!("{} differs between 1 and 8 workers", x.display()));
            }
            compared += 1;
        }
        if files[0].len() != files[1].len() {
            return Err(format!("`{}` wrote different file sets", args[0]));
        }
    }
    Ok(format!(
        "{compared} output files byte-identical across 1 and 8 workers"
    ))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("coherence exactness", c1_coherence),
        ("Welch near-optimality", c2_welch),
        ("tight frame", c3_tight_frame),
        ("LFSR-trace equivalence", c4_lfsr_trace),
        ("Weil bound", c5_weil),
        ("noiseless recovery", c6_noiseless_recovery),
        ("condition-number ordering", c7_condition_ordering),
        ("noisy recovery consistency", c8_noisy_consistency),
        ("Gram eigenvalue sanity", c9_gram_sanity),
        ("determinism", c10_determinism),
    ];
    let filter: Vec<String> = std::env::args()
        .skip(1)
        .filter(|a| !a.starts_with('-'))
        .collect();
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let label = format!("criterion {:>2}: {name}", i + 1);
        if !filter.is_empty() && !filter.iter().any(|f| label.contains(f.as_str())) {
            continue;
        }
        let t = Instant::now();
        let outcome =
            catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(d) => println!("PASS {label} [{secs:.1}s] {d}"),
            Err(d) => {
                failed += 1;
                println!("FAIL {label} [{secs:.1}s] {d}");
            }
        }
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
