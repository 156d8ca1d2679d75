// Matching pursuit on one sparse signal, then success rates over s.
//
// cargo run --release --example noiseless_recovery

use charsense::recovery::{
    evaluate_success, matching_pursuit, measure, random_sparse_signal, run_noiseless_experiment,
    MatrixFamily, MpConfig,
};
use charsense::rng::SeedStream;
use charsense::sensing::construction_1a;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let a = construction_1a(3, 4)?;
    let config = MpConfig::noiseless();
    let seeds = SeedStream::new(1);

    let x = random_sparse_signal(a.cols(), 3, &mut seeds.trial(&[0], 0))?;
    let out = matching_pursuit(&a, &measure(&a, &x), &config);
    let res = evaluate_success(&x, &out.estimate, config.success_threshold);
    println!(
        "support {:?}: {} iterations, error {:e}",
        x.support, out.iterations, res.squared_error
    );

    let report =
        run_noiseless_experiment(&MatrixFamily::Fixed(&a), &[1, 2, 3, 4], 40, &config, seeds)?;
    report.write_csv(&mut std::io::stdout().lock(), true)?;
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
