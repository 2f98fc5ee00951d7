//! Command-line front end: problem files in, certificates and fiber reports
//! out, as text or JSON.
//!
//! Exit codes: 0 for any decisive outcome (including `NotApplicable`), 2
//! when every produced verdict is inconclusive (or a fiber query hits the
//! refinement cap), 1 for input errors.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use serde_json::json;
use thiserror::Error;

use crate::certify::{
    check_thm17_seeded, check_thm18_seeded, run_pipeline, Certificate, Verdict,
};
use crate::corpus::{build_pinchuk, pinchuk_problem_file};
use crate::fiber::{solve_fiber, FiberError, FiberReport, FiberStatus};
use crate::parse::{
    parse_problem_file, parse_rational, render, ParseError, ProblemSpec,
};
use crate::serial::rat_to_string;
use crate::systems::{build_combined, homogenize, induced_homogeneous};

/// Parsed command line; the library-level entry point is [`run`].
#[derive(Parser, Debug, Clone)]
#[command(
    name = "fibercert",
    version,
    about = "Exact surjectivity certificates and fiber analysis for polynomial maps"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    pub format: OutputFormat,
    /// Seed for sampled sub-checks (the witness-search descent).
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Treat the combination-matrix determinant as nonvanishing (recorded
    /// as an assumption in every certificate that uses it).
    #[arg(long, global = true)]
    pub assume_det_nonvanishing: bool,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Run every certification rule on a problem file and report all
    /// certificates.
    Analyze { file: PathBuf },
    /// Count and isolate the real solutions of `map = target` (two
    /// variables only).
    Fiber {
        file: PathBuf,
        /// Target point, e.g. `--target 0,0` or `--target -1/2,3`.
        #[arg(long)]
        target: String,
    },
    /// Show component leading forms, the combined system, its induced
    /// leading-form system, and its homogenization.
    Leadform { file: PathBuf },
    /// Run the necessary-condition checks (rules thm17 and thm18).
    Necessary {
        file: PathBuf,
        /// Restrict to one rule: 17 (matrix column) or 18 (components).
        #[arg(long)]
        thm: Option<u32>,
        /// Column for rule thm17 (1-based); default: every column.
        #[arg(long)]
        col: Option<usize>,
    },
    /// The built-in pinchuk map: degree summary, optional checks, optional
    /// problem-file emission.
    Pinchuk {
        /// Named check to run (supported: thm18).
        #[arg(long)]
        check: Option<String>,
        /// Write the expanded map as a problem file to this path.
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Write a named builtin map as a problem file.
    Emit { builtin: String, path: PathBuf },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Parse {
        path: String,
        #[source]
        source: ParseError,
    },
    #[error("bad target '{text}': {reason}")]
    BadTarget { text: String, reason: String },
    #[error("fiber queries need a two-variable map; this problem has {nvars} variables")]
    FiberDimension { nvars: usize },
    #[error("unknown builtin '{name}' (available: pinchuk)")]
    UnknownBuiltin { name: String },
    #[error("unknown check '{name}' (available: thm18)")]
    UnknownCheck { name: String },
    #[error("column {col} out of range 1..={nvars}")]
    BadColumn { col: usize, nvars: usize },
    #[error("cannot write {path}: {source}")]
    Write {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

/// Rendered report plus the process exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunOutput {
    pub exit_code: i32,
    pub output: String,
}

fn load_spec(path: &Path, assume_flag: bool) -> Result<ProblemSpec, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })?;
    let mut spec = parse_problem_file(&text).map_err(|source| CliError::Parse {
        path: path.display().to_string(),
        source,
    })?;
    spec.assume_det_nonvanishing |= assume_flag;
    Ok(spec)
}

fn verdict_exit_code(certs: &[Certificate]) -> i32 {
    if certs.iter().all(|c| c.verdict.is_inconclusive()) {
        2
    } else {
        0
    }
}

fn certs_text(certs: &[Certificate]) -> String {
    let mut out = String::new();
    let surjective = certs.iter().find(|c| c.verdict.is_surjective());
    if let Some(cert) = surjective {
        let _ = writeln!(out, "result: {}", cert.verdict);
    } else {
        let _ = writeln!(out, "result: no surjectivity certificate");
    }
    for (k, cert) in certs.iter().enumerate() {
        let _ = writeln!(out, "\n--- certificate {} ({}) ---", k + 1, cert.verdict.rule());
        let _ = write!(out, "{cert}");
    }
    out
}

fn fiber_text(report: &FiberReport) -> String {
    let mut out = String::new();
    let target: Vec<String> = report.target.iter().map(rat_to_string).collect();
    let _ = writeln!(out, "target: ({})", target.join(", "));
    match &report.status {
        FiberStatus::Finite { count, points } => {
            let _ = writeln!(out, "status: finite, {count} real solution(s)");
            let _ = writeln!(out, "parity: {:?}", report.parity);
            if let Some(b) = report.bezout {
                let _ = writeln!(out, "degree product (complex count with multiplicity): {b}");
            }
            for (k, sol) in points.iter().enumerate() {
                let fmt_iso = |iso: &crate::realalg::Isolation| match &iso.exact_root {
                    Some(r) => format!("= {}", rat_to_string(r)),
                    None => format!("in [{}, {}]", rat_to_string(&iso.lo), rat_to_string(&iso.hi)),
                };
                let _ = writeln!(out, "  {}: x {}, y {}", k + 1, fmt_iso(&sol.x), fmt_iso(&sol.y));
            }
        }
        FiberStatus::InfiniteOverC => {
            let _ = writeln!(out, "status: infinite over the complex numbers");
            let _ = writeln!(out, "parity: not applicable");
        }
        FiberStatus::Empty => {
            let _ = writeln!(out, "status: empty (no real solutions)");
            let _ = writeln!(out, "parity: {:?}", report.parity);
        }
    }
    out
}

/// Execute one parsed command line.
pub fn run(cli: Cli) -> Result<RunOutput, CliError> {
    match &cli.command {
        Command::Analyze { file } => {
            let spec = load_spec(file, cli.assume_det_nonvanishing)?;
            let certs = run_pipeline(&spec, cli.seed);
            let exit_code = verdict_exit_code(&certs);
            let output = match cli.format {
                OutputFormat::Text => certs_text(&certs),
                OutputFormat::Json => pretty_json(&json!({
                    "command": "analyze",
                    "input": file.display().to_string(),
                    "nvars": spec.nvars,
                    "applied_defaults": spec.applied_defaults,
                    "certificates": serde_json::to_value(&certs).expect("serializable"),
                })),
            };
            Ok(RunOutput { exit_code, output })
        }
        Command::Fiber { file, target } => {
            let spec = load_spec(file, cli.assume_det_nonvanishing)?;
            if spec.nvars != 2 {
                return Err(CliError::FiberDimension { nvars: spec.nvars });
            }
            let coords: Vec<BigRational> = target
                .split(',')
                .map(|piece| {
                    parse_rational(piece).map_err(|e| CliError::BadTarget {
                        text: target.clone(),
                        reason: e.message,
                    })
                })
                .collect::<Result<_, _>>()?;
            if coords.len() != 2 {
                return Err(CliError::BadTarget {
                    text: target.clone(),
                    reason: format!("expected 2 coordinates, got {}", coords.len()),
                });
            }
            match solve_fiber(&spec.map, &coords) {
                Ok(report) => {
                    let output = match cli.format {
                        OutputFormat::Text => fiber_text(&report),
                        OutputFormat::Json => pretty_json(&json!({
                            "command": "fiber",
                            "input": file.display().to_string(),
                            "report": serde_json::to_value(&report).expect("serializable"),
                        })),
                    };
                    Ok(RunOutput { exit_code: 0, output })
                }
                Err(e @ FiberError::UnresolvedBox { .. }) => {
                    let output = match cli.format {
                        OutputFormat::Text => format!("inconclusive: {e}\n"),
                        OutputFormat::Json => pretty_json(&json!({
                            "command": "fiber",
                            "input": file.display().to_string(),
                            "inconclusive": e.to_string(),
                        })),
                    };
                    Ok(RunOutput { exit_code: 2, output })
                }
                Err(e) => {
                    let output = format!("inconclusive: {e}\n");
                    Ok(RunOutput { exit_code: 2, output })
                }
            }
        }
        Command::Leadform { file } => {
            let spec = load_spec(file, cli.assume_det_nonvanishing)?;
            let combined = build_combined(&spec, false);
            let induced = induced_homogeneous(&combined);
            let homog = homogenize(&combined, false);
            let output = match cli.format {
                OutputFormat::Text => {
                    let mut out = String::new();
                    let _ = writeln!(out, "components:");
                    for (j, p) in spec.map.components().iter().enumerate() {
                        let _ = writeln!(
                            out,
                            "  p{} = {} (degree {}), leading form {}",
                            j + 1,
                            render(p),
                            p.total_degree(),
                            render(&p.leading_form())
                        );
                    }
                    let _ = writeln!(out, "combined system:");
                    for (i, eq) in combined.equations.iter().enumerate() {
                        let _ = writeln!(
                            out,
                            "  [{}] {} (degree {})",
                            i + 1,
                            render(eq),
                            combined.degrees[i]
                        );
                    }
                    let _ = writeln!(out, "induced leading-form system:");
                    for (i, form) in induced.forms.iter().enumerate() {
                        let _ = writeln!(out, "  [{}] {}", i + 1, render(form));
                    }
                    match &homog {
                        Ok(h) => {
                            let _ = writeln!(
                                out,
                                "homogenized system ({} variables):",
                                h.nvars
                            );
                            for (i, form) in h.forms.iter().enumerate() {
                                let _ = writeln!(out, "  [{}] {}", i + 1, render(form));
                            }
                        }
                        Err(e) => {
                            let _ = writeln!(out, "homogenized system: degenerate ({e})");
                        }
                    }
                    out
                }
                OutputFormat::Json => pretty_json(&json!({
                    "command": "leadform",
                    "input": file.display().to_string(),
                    "components": spec.map.components().iter().map(|p| json!({
                        "expr": render(p),
                        "degree": p.total_degree(),
                        "leading_form": render(&p.leading_form()),
                    })).collect::<Vec<_>>(),
                    "combined": combined.equations.iter().map(render).collect::<Vec<_>>(),
                    "combined_degrees": combined.degrees,
                    "induced": induced.forms.iter().map(render).collect::<Vec<_>>(),
                    "homogenized": match &homog {
                        Ok(h) => json!(h.forms.iter().map(render).collect::<Vec<_>>()),
                        Err(e) => json!({"degenerate": e.to_string()}),
                    },
                })),
            };
            Ok(RunOutput { exit_code: 0, output })
        }
        Command::Necessary { file, thm, col } => {
            let spec = load_spec(file, cli.assume_det_nonvanishing)?;
            let mut certs = Vec::new();
            let run17 = thm.map_or(spec.gmatrix.is_some(), |t| t == 17);
            let run18 = thm.is_none_or(|t| t == 18);
            if let Some(t) = *thm {
                if t != 17 && t != 18 {
                    return Err(CliError::UnknownCheck { name: t.to_string() });
                }
            }
            if run17 {
                let g = spec.effective_gmatrix();
                let columns: Vec<usize> = match col {
                    Some(c) => {
                        if *c == 0 || *c > spec.nvars {
                            return Err(CliError::BadColumn { col: *c, nvars: spec.nvars });
                        }
                        vec![*c - 1]
                    }
                    None => (0..spec.nvars).collect(),
                };
                for j0 in columns {
                    certs.push(check_thm17_seeded(&g, j0, cli.seed));
                }
            }
            if run18 {
                certs.push(check_thm18_seeded(&spec.map, cli.seed));
            }
            let exit_code = verdict_exit_code(&certs);
            let output = match cli.format {
                OutputFormat::Text => certs_text(&certs),
                OutputFormat::Json => pretty_json(&json!({
                    "command": "necessary",
                    "input": file.display().to_string(),
                    "certificates": serde_json::to_value(&certs).expect("serializable"),
                })),
            };
            Ok(RunOutput { exit_code, output })
        }
        Command::Pinchuk { check, emit } => {
            let pinchuk = build_pinchuk();
            let mut cert: Option<Certificate> = None;
            if let Some(name) = check {
                if name != "thm18" {
                    return Err(CliError::UnknownCheck { name: name.clone() });
                }
                cert = Some(check_thm18_seeded(&pinchuk.map(), cli.seed));
            }
            if let Some(path) = emit {
                std::fs::write(path, pinchuk_problem_file()).map_err(|source| {
                    CliError::Write { path: path.display().to_string(), source }
                })?;
            }
            let exit_code = cert.as_ref().map_or(0, |c| verdict_exit_code(std::slice::from_ref(c)));
            let output = match cli.format {
                OutputFormat::Text => {
                    let mut out = String::new();
                    let _ = writeln!(out, "pinchuk map:");
                    let _ = writeln!(
                        out,
                        "  deg t = {}, deg s = {}, deg h = {}, deg f = {}, deg p = {}, deg q = {}",
                        pinchuk.t.total_degree(),
                        pinchuk.s.total_degree(),
                        pinchuk.h.total_degree(),
                        pinchuk.f.total_degree(),
                        pinchuk.p.total_degree(),
                        pinchuk.q.total_degree()
                    );
                    let _ = writeln!(
                        out,
                        "  leading form of p: {}",
                        render(&pinchuk.p.leading_form())
                    );
                    let _ = writeln!(
                        out,
                        "  leading form of q: {}",
                        render(&pinchuk.q.leading_form())
                    );
                    if let Some(c) = &cert {
                        let _ = writeln!(out, "\ncheck thm18:");
                        let _ = write!(out, "{c}");
                    }
                    if let Some(path) = emit {
                        let _ = writeln!(out, "\nwrote problem file: {}", path.display());
                    }
                    out
                }
                OutputFormat::Json => pretty_json(&json!({
                    "command": "pinchuk",
                    "degrees": {
                        "t": pinchuk.t.total_degree(),
                        "s": pinchuk.s.total_degree(),
                        "h": pinchuk.h.total_degree(),
                        "f": pinchuk.f.total_degree(),
                        "p": pinchuk.p.total_degree(),
                        "q": pinchuk.q.total_degree(),
                    },
                    "leading_form_p": render(&pinchuk.p.leading_form()),
                    "leading_form_q": render(&pinchuk.q.leading_form()),
                    "certificate": cert.as_ref().map(|c| serde_json::to_value(c).expect("serializable")),
                    "emitted": emit.as_ref().map(|p| p.display().to_string()),
                })),
            };
            Ok(RunOutput { exit_code, output })
        }
        Command::Emit { builtin, path } => {
            if builtin != "pinchuk" {
                return Err(CliError::UnknownBuiltin { name: builtin.clone() });
            }
            std::fs::write(path, pinchuk_problem_file()).map_err(|source| CliError::Write {
                path: path.display().to_string(),
                source,
            })?;
            let output = match cli.format {
                OutputFormat::Text => format!("wrote {}\n", path.display()),
                OutputFormat::Json => pretty_json(&json!({
                    "command": "emit",
                    "builtin": builtin,
                    "path": path.display().to_string(),
                })),
            };
            Ok(RunOutput { exit_code: 0, output })
        }
    }
}

fn pretty_json(value: &serde_json::Value) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("serializable");
    text.push('\n');
    text
}

/// Extract every verdict from a pipeline run; used by tests and examples
/// that compare text and JSON output.
pub fn verdicts_of(certs: &[Certificate]) -> Vec<Verdict> {
    certs.iter().map(|c| c.verdict.clone()).collect()
}
