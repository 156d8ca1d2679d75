// Driving the command layer in-process: build, verify and recover into a
// scratch directory, then re-run from the manifest.
//
// cargo run --example cli_pipeline

use charsense::cli::{execute, RunConfig};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let dir = std::env::temp_dir().join(format!("charsense-example-{}", std::process::id()));
    let out = dir.to_str().ok_or("non-UTF-8 temp dir")?;
    for cmd in ["build", "verify"] {
        let report = execute(&RunConfig::from_args([
            "charsense",
            cmd,
            "--m",
            "2",
            "--out",
            out,
        ])?)?;
        report.lines.iter().for_each(|l| println!("{cmd}: {l}"));
    }
    let first = RunConfig::from_args([
        "charsense",
        "recover",
        "--m",
        "2",
        "--s",
        "1..3",
        "--trials",
        "30",
        "--out",
        out,
    ])?;
    execute(&first)?;
    let csv = std::fs::read_to_string(dir.join("recovery_noiseless.csv"))?;
    print!("{csv}");

    let manifest = dir.join("manifest.txt");
    let again = RunConfig::from_args([
        "charsense",
        "recover",
        "--config",
        manifest.to_str().ok_or("path")?,
        "--out",
        out,
    ])?;
    execute(&again)?;
    assert_eq!(
        std::fs::read_to_string(dir.join("recovery_noiseless.csv"))?,
        csv
    );
    std::fs::remove_dir_all(&dir)?;
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
