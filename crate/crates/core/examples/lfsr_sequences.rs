// Trace sequences Tr(b·α^{rk}) generated by shift registers.
//
// cargo run --example lfsr_sequences

use charsense::galois::{FieldContext, PrimePoly};
use charsense::lfsr::{CombinedGenerator, LfsrSpec};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let field = FieldContext::new(3, 4, Some(PrimePoly::parse(3, "2,0,0,1,1")?))?;
    for r in [1, 2] {
        let spec = LfsrSpec::from_exponent(&field, r)?;
        println!(
            "r={r}: feedback {} taps {:?}",
            spec.feedback().pretty(),
            spec.taps()
        );
    }

    let (b1, b2) = (field.exp(7), field.exp(33));
    let gen = CombinedGenerator::for_coefficients(&field, &[1, 2], &[b1, b2])?;
    let seq = gen.generate(80)?;
    for (k, &s) in seq.iter().enumerate() {
        let direct = (field.trace(field.mul(b1, field.exp(k as u64)))
            + field.trace(field.mul(b2, field.exp(2 * k as u64))))
            % 3;
        assert_eq!(s, direct);
    }
    let head: String = seq
        .iter()
        .take(40)
        .map(|d| char::from(b'0' + *d as u8))
        .collect();
    println!("first 40 of 80 digits: {head}");
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
