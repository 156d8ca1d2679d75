// Coherence against the Welch bound, and the tight-frame property.
//
// cargo run --release --example coherence_frame -- 4   (K = 81, a few seconds)

use charsense::analysis::{coherence, frame_test, sparsity_bound};
use charsense::galois::FieldContext;
use charsense::sensing::{build_matrix, ConstructionSpec};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    run(2)
}

fn run(m: u32) -> Result<(), Box<dyn std::error::Error>> {
    let spec = ConstructionSpec::construction_1a(3, m)?;
    let a = build_matrix(&spec, &FieldContext::new(3, m, None)?)?;
    let c = coherence(&a);
    println!(
        "K={} N={}: mu={:.9} welch={:.9} ratio={:.6} pair={:?}",
        a.rows(),
        a.cols(),
        c.mu,
        c.welch.unwrap_or(f64::NAN),
        c.welch_ratio().unwrap_or(f64::NAN),
        c.argmax_pair
    );
    let f = frame_test(&a);
    println!("A·A^H = {}·I up to {:e}", f.redundancy, f.max_deviation);
    let b = sparsity_bound(&spec);
    println!(
        "unique recovery guaranteed for s <= {} (bound {})",
        b.guaranteed, b.bound
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    let m = std::env::args()
        .nth(1)
        .map(|s| s.parse())
        .transpose()?
        .unwrap_or(2);
    run(m)
}
