// Recovery under complex Gaussian noise, additive character vs. partial Fourier.
//
// cargo run --release --example noisy_recovery

use charsense::recovery::{run_noisy_experiment, MatrixFamily, MpConfig};
use charsense::rng::SeedStream;
use charsense::sensing::construction_1a;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let a = construction_1a(3, 2)?;
    let config = MpConfig::noisy();
    let seeds = SeedStream::new(3);
    let snr = [10.0, 20.0, 30.0, 60.0];
    let mut out = std::io::stdout().lock();
    for (i, family) in [
        MatrixFamily::Fixed(&a),
        MatrixFamily::PartialFourier { rows: 9, cols: 81 },
    ]
    .iter()
    .enumerate()
    {
        let report = run_noisy_experiment(family, &[1, 2], &snr, 100, &config, seeds)?;
        report.write_csv(&mut out, i == 0)?;
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
