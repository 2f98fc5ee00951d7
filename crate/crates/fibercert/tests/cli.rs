//! Command-line contract: exit codes on a fixed regression corpus, and
//! text/JSON agreement on random inputs.

use std::io::Write as _;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use fibercert::certify::Certificate;
use fibercert::cli::{run, Cli, CliError, Command, OutputFormat};
use fibercert::corpus::{random_poly, sample_opposite_sign_family, with_lower_order_noise};
use fibercert::parse::render_problem_file;
use fibercert::poly::{MultiPoly, PolyMap};

fn temp_file(contents: &str) -> tempfile::NamedTempFile {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    file.write_all(contents.as_bytes()).unwrap();
    file
}

fn cli_for(command: Command, format: OutputFormat) -> Cli {
    Cli { command, format, seed: 0, assume_det_nonvanishing: false }
}

fn analyze(path: &std::path::Path, format: OutputFormat) -> fibercert::cli::RunOutput {
    run(cli_for(Command::Analyze { file: path.to_path_buf() }, format)).unwrap()
}

/// Fixed regression corpus for the exit-code contract.
#[test]
fn exit_codes_follow_the_contract() {
    // Decisive: a surjectivity certificate.
    let surjective = temp_file("n = 2\np1 = x^3 - x\np2 = y\n");
    assert_eq!(analyze(surjective.path(), OutputFormat::Text).exit_code, 0);

    // Decisive: everything NotApplicable is still decisive.
    let not_applicable = temp_file("n = 2\np1 = x^2\np2 = y\n");
    let out = analyze(not_applicable.path(), OutputFormat::Text);
    assert_eq!(out.exit_code, 0);
    assert!(out.output.contains("no surjectivity certificate"));

    // Inconclusive-only: a three-variable necessary check whose component
    // systems cannot be decided exactly.
    let positive_definite = temp_file("n = 3\np1 = x^2 + y^2 + z^2\np2 = y^2 + 1\np3 = z^2 + 1\n");
    let out = run(cli_for(
        Command::Necessary { file: positive_definite.path().to_path_buf(), thm: Some(18), col: None },
        OutputFormat::Text,
    ))
    .unwrap();
    assert_eq!(out.exit_code, 2, "inconclusive-only run must exit 2: {}", out.output);

    // Input errors exit 1 (surfaced as CliError by the library; the binary
    // maps any CliError to exit 1).
    let missing = run(cli_for(
        Command::Analyze { file: std::path::PathBuf::from("/nonexistent/file.problem") },
        OutputFormat::Text,
    ));
    assert!(matches!(missing, Err(CliError::Io { .. })));

    let syntax = temp_file("n = 2\np1 = x +\np2 = y\n");
    let parse_err = run(cli_for(
        Command::Analyze { file: syntax.path().to_path_buf() },
        OutputFormat::Text,
    ));
    assert!(matches!(parse_err, Err(CliError::Parse { .. })));

    // Fiber on a three-variable problem is an input error.
    let cubic3 = temp_file("n = 3\np1 = x\np2 = y\np3 = z\n");
    let dim_err = run(cli_for(
        Command::Fiber { file: cubic3.path().to_path_buf(), target: "0,0,0".into() },
        OutputFormat::Text,
    ));
    assert!(matches!(dim_err, Err(CliError::FiberDimension { nvars: 3 })));
}

/// Text and JSON report identical verdicts on 50 random inputs.
#[test]
fn text_and_json_agree_on_random_inputs() {
    let mut rng = StdRng::seed_from_u64(50);
    let mut checked = 0usize;
    while checked < 50 {
        // Mix structured families with raw random maps.
        let map = if rng.gen_bool(0.5) {
            let family = sample_opposite_sign_family(&mut rng, 2);
            with_lower_order_noise(&family.leading_map(), &mut rng)
        } else {
            let components: Vec<MultiPoly> =
                (0..2).map(|_| random_poly(&mut rng, 2, 4, 4)).collect();
            if components.iter().any(MultiPoly::is_zero) {
                continue;
            }
            PolyMap::new(components)
        };
        let file = temp_file(&render_problem_file(&map, "random regression input"));

        let json_out = analyze(file.path(), OutputFormat::Json);
        let value: serde_json::Value = serde_json::from_str(&json_out.output).unwrap();
        let certs: Vec<Certificate> =
            serde_json::from_value(value["certificates"].clone()).unwrap();
        assert_eq!(certs.len(), 5);

        let text_out = analyze(file.path(), OutputFormat::Text);
        for cert in &certs {
            assert!(
                text_out.output.contains(&cert.verdict.to_string()),
                "verdict '{}' missing from text output:\n{}",
                cert.verdict,
                text_out.output
            );
        }
        assert_eq!(json_out.exit_code, text_out.exit_code);
        checked += 1;
    }
}

/// The emitted builtin round-trips through analyze.
#[test]
fn emitted_builtin_feeds_back_into_analyze() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("pinchuk.problem");
    run(cli_for(
        Command::Emit { builtin: "pinchuk".into(), path: path.clone() },
        OutputFormat::Text,
    ))
    .unwrap();
    let out = analyze(&path, OutputFormat::Text);
    // The pinchuk map has even-degree components, so no rule applies, but
    // the run is decisive.
    assert_eq!(out.exit_code, 0);
    assert!(out.output.contains("no surjectivity certificate"));
}

/// Seeds are plumbed through without changing exact verdicts on exact
/// two-variable paths.
#[test]
fn seed_does_not_change_exact_verdicts() {
    let file = temp_file("n = 2\np1 = x^3 + 2*y^3 + x\np2 = 3*x - y + 1\n");
    let a = run(Cli {
        command: Command::Analyze { file: file.path().to_path_buf() },
        format: OutputFormat::Json,
        seed: 0,
        assume_det_nonvanishing: false,
    })
    .unwrap();
    let b = run(Cli {
        command: Command::Analyze { file: file.path().to_path_buf() },
        format: OutputFormat::Json,
        seed: 12345,
        assume_det_nonvanishing: false,
    })
    .unwrap();
    assert_eq!(a.output, b.output);
}

/// The assume flag flows into certificates as a recorded assumption.
#[test]
fn assume_flag_is_recorded_not_silent() {
    // det = (x - 1/7)^2 + 1 expanded: positive everywhere, but neither a
    // constant nor an all-even pattern, and off-grid; the gate needs the
    // explicit assumption to pass.
    let text = "n = 2\n\
                p1 = x^3\n\
                p2 = y^3\n\
                g11 = x^2 - 2/7*x + 50/49\n\
                g12 = 0\n\
                g21 = 0\n\
                g22 = 1\n";
    let file = temp_file(text);
    let without = analyze(file.path(), OutputFormat::Text);
    assert!(without.output.contains("Inconclusive via thm12a"));

    let with_flag = run(Cli {
        command: Command::Analyze { file: file.path().to_path_buf() },
        format: OutputFormat::Text,
        seed: 0,
        assume_det_nonvanishing: true,
    })
    .unwrap();
    assert!(with_flag.output.contains("Surjective via thm12a"));
    assert!(with_flag.output.contains("assumed nonvanishing"));
}
