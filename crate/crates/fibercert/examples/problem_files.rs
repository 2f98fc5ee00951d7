//! Problem files end to end: write one, parse it back, run the analysis
//! pipeline through the same entry point the binary uses, and show the JSON
//! report format.
//!
//! Run with: cargo run --example problem_files

use fibercert::cli::{run, Cli, Command, OutputFormat};
use fibercert::parse::parse_problem_file;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let text = "\
# a cubic shear: certified onto by several rules
n = 2
p1 = x^3 - x
p2 = y
alpha = 1,1
target = 6,0
";
    println!("problem file:\n{text}");

    let spec = parse_problem_file(text)?;
    println!(
        "parsed: {} variables, defaults applied: {:?}",
        spec.nvars, spec.applied_defaults
    );

    let dir = std::env::temp_dir().join("fibercert_example");
    std::fs::create_dir_all(&dir)?;
    let path = dir.join("cubic.problem");
    std::fs::write(&path, text)?;

    let out = run(Cli {
        command: Command::Analyze { file: path.clone() },
        format: OutputFormat::Text,
        seed: 0,
        assume_det_nonvanishing: false,
    })?;
    println!("---- analyze (text) ----\n{}", out.output);

    let json = run(Cli {
        command: Command::Fiber { file: path, target: "6,0".into() },
        format: OutputFormat::Json,
        seed: 0,
        assume_det_nonvanishing: false,
    })?;
    println!("---- fiber --target 6,0 (json) ----\n{}", json.output);
    Ok(())
}
