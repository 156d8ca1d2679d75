// Condition numbers of random column subsets versus Gaussian matrices.
//
// cargo run --release --example condition_numbers

use charsense::analysis::{compare_with_gaussian, condition_stats};
use charsense::rng::SeedStream;
use charsense::sensing::construction_1a;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let a = construction_1a(3, 4)?;
    let seeds = SeedStream::new(7);
    println!("{:>3} {:>12} {:>12}", "s", "additive", "gaussian");
    for s in [5, 10, 20] {
        let x = condition_stats(&a, s, 100, seeds)?;
        let g = compare_with_gaussian(a.rows(), s, 100, seeds)?;
        println!(
            "{s:>3} {:>12.4} {:>12.4}   delta_hat {:.3} vs {:.3}",
            x.cond_mean, g.cond_mean, x.delta_hat, g.delta_hat
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
