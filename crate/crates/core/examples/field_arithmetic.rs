// GF(3^4) arithmetic, the trace map, and an additive character sum.
//
// cargo run --example field_arithmetic

use std::collections::BTreeMap;

use charsense::galois::{character_sum, find_primitive_polynomial, FieldContext, PrimePoly};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let g = PrimePoly::parse(3, "2,0,0,1,1")?;
    let field = FieldContext::new(3, 4, Some(g))?;
    println!("GF({}) modulo {}", field.order(), field.modulus().pretty());

    let a = field.alpha();
    let a5 = field.pow(a, 5);
    let inv = field.inv(a5).ok_or("alpha^5 is invertible")?;
    assert_eq!(field.mul(a5, inv), field.from_prime(1));
    println!(
        "log(alpha^5) = {:?}, log(alpha^-5) = {:?}",
        field.log(a5),
        field.log(inv)
    );

    // Tr(x) = x + x^3 + x^9 + x^27 lands in GF(3); each value is hit 27 times.
    let mut hist = [0u32; 3];
    for x in field.elements() {
        hist[field.trace(x) as usize] += 1;
    }
    println!("trace histogram {hist:?}");

    // f(x) = alpha·x^2 + x: the sum of ω^Tr(f(x)) has modulus exactly 9.
    let f = BTreeMap::from([(1, field.from_prime(1)), (2, a)]);
    let s = character_sum(&field, &f);
    println!("|sum chi(f(x))| = {:.12}", s.norm());
    assert!((s.norm() - 9.0).abs() < 1e-9);

    println!(
        "default GF(3^4) modulus: {}",
        find_primitive_polynomial(3, 4)?.pretty()
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
