// Building the 9×81 additive character matrix and exporting it.
//
// cargo run --example sensing_matrix

use charsense::galois::FieldContext;
use charsense::sensing::{build_matrix, read_matrix, write_matrix, ConstructionSpec};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let spec = ConstructionSpec::construction_1a(3, 2)?;
    let field = FieldContext::new(3, 2, None)?;
    let a = build_matrix(&spec, &field)?;
    println!("{} matrix: {}x{}", a.kind(), a.rows(), a.cols());

    let col = a.column(10);
    let norm: f64 = col.iter().map(|z| z.norm_sqr()).sum();
    println!("column 10 has unit norm: {norm:.15}");
    if let Some(c) = a.construction() {
        assert_eq!(c.column_via_lfsr(10)?, col);
    }

    let mut text = Vec::new();
    write_matrix(&a, &mut text)?;
    let back = read_matrix(std::str::from_utf8(&text)?)?;
    println!(
        "export: {} bytes, header params {:?}",
        text.len(),
        back.parameters
    );
    assert_eq!((back.rows, back.cols), (9, 81));
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
