//! Subcommands and the exit-code contract.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use engel_core::pipeline::{classify, find_witness, run_exact, AnalysisOptions, CheckStatus, ExactRun, Verdict};
use engel_core::PipelineError;

use crate::input::InputFile;
use crate::oracle::{run_oracle, OracleConfig, OracleError};
use crate::report::{invariant_map, CheckEntry, Invariants, OracleSummary, Report, Timing};

pub const EXIT_FLAT: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
/// A required identity failed or the oracle disagreed.
pub const EXIT_FAILURE: i32 = 2;
pub const EXIT_NON_FLAT: i32 = 10;
pub const EXIT_NOT_CLASS_II: i32 = 20;

#[derive(Debug, Parser)]
#[command(name = "engel", version, about = "Flatness classification of Engel CR-manifolds in C^3")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum RouteArg {
    Structural,
    Explicit,
    Both,
}

impl RouteArg {
    fn structural(self) -> bool {
        self != RouteArg::Explicit
    }

    fn explicit(self) -> bool {
        self != RouteArg::Structural
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide whether the manifold is locally equivalent to the cubic model.
    Classify {
        file: PathBuf,
        /// Write the structured report here; `-` for standard output.
        #[arg(long)]
        json: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = RouteArg::Both)]
        route: RouteArg,
        /// Include wall-clock timing in the structured report.
        #[arg(long)]
        timing: bool,
    },
    /// Run the identity suite.
    Verify {
        file: PathBuf,
        /// `all`, or a comma-separated list of name fragments selecting checks.
        #[arg(long, default_value = "all")]
        checks: String,
        #[arg(long)]
        json: Option<PathBuf>,
        #[arg(long)]
        timing: bool,
    },
    /// Print the invariants I0..I5.
    Invariants {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = RouteArg::Structural)]
        route: RouteArg,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Compare exact invariant values with jet arithmetic at sampled points.
    Oracle {
        file: PathBuf,
        #[arg(long, default_value_t = 20)]
        points: usize,
        /// Overrides the input file's seed.
        #[arg(long)]
        seed: Option<u64>,
        /// Overrides the input file's jet order.
        #[arg(long)]
        order: Option<u32>,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

/// Standard output and standard error of one invocation.
pub struct Io<'a> {
    pub out: &'a mut dyn Write,
    pub err: &'a mut dyn Write,
}

/// Writes a line; a closed stream is not an error worth reporting.
macro_rules! say {
    ($w:expr, $($arg:tt)*) => {{
        let _ = writeln!($w, $($arg)*);
    }};
}

pub fn run(cli: Cli, io: &mut Io<'_>) -> i32 {
    match cli.command {
        Command::Classify { file, json, route, timing } => run_classify(&file, json.as_deref(), route, timing, io),
        Command::Verify { file, checks, json, timing } => run_verify(&file, &checks, json.as_deref(), timing, io),
        Command::Invariants { file, route, json } => run_invariants(&file, route, json.as_deref(), io),
        Command::Oracle { file, points, seed, order, tol, json } => {
            run_oracle_command(&file, points, seed, order, tol, json.as_deref(), io)
        }
    }
}

fn read_input(file: &Path, io: &mut Io<'_>) -> Option<InputFile> {
    match InputFile::read(file) {
        Ok(f) => Some(f),
        Err(e) => {
            say!(io.err, "error: {e}");
            None
        }
    }
}

fn pipeline_failure(e: &PipelineError, io: &mut Io<'_>) -> i32 {
    say!(io.err, "error: {e}");
    EXIT_FAILURE
}

/// Sends the structured report to `json`; `true` when text output should
/// still go to standard output.
fn emit_json(json: Option<&Path>, body: &str, io: &mut Io<'_>) -> Result<bool, i32> {
    match json {
        None => Ok(true),
        Some(p) if p == Path::new("-") => {
            let _ = io.out.write_all(body.as_bytes());
            Ok(false)
        }
        Some(p) => match std::fs::write(p, body) {
            Ok(()) => Ok(true),
            Err(e) => {
                say!(io.err, "error: cannot write {}: {e}", p.display());
                Err(EXIT_INPUT)
            }
        },
    }
}

fn print_summary(report: &Report, io: &mut Io<'_>) {
    say!(io.out, "verdict: {}", report.verdict);
    if let Some(reason) = &report.reason {
        say!(io.out, "reason: {reason}");
    }
    match report.singular_locus.as_deref() {
        Some("1") => say!(io.out, "singular locus: none"),
        Some(locus) => say!(io.out, "singular locus: {locus} = 0"),
        None => {}
    }
    if let Some(w) = &report.witness {
        let pt = ["x", "y", "u1", "u2"].map(|k| format!("{k} = {}", w.point[k])).join(", ");
        say!(io.out, "witness: {} = {} at {pt}", w.invariant, w.value);
    }
}

fn print_invariants(inv: &Invariants, io: &mut Io<'_>) {
    for (route, map) in [("structural", &inv.structural), ("explicit", &inv.explicit)] {
        if let Some(map) = map {
            for (k, v) in map {
                say!(io.out, "{k} ({route}) = {v}");
            }
        }
    }
}

fn check_counts(checks: &[CheckEntry]) -> String {
    let n = |s: CheckStatus| checks.iter().filter(|c| c.status == s.as_str()).count();
    format!("{} passed, {} failed, {} diagnostic mismatches", n(CheckStatus::Pass), n(CheckStatus::Fail), n(CheckStatus::Mismatch))
}

/// Classification report; `Err` carries the exit code of a failed run.
fn classification_report(input: &InputFile, route: RouteArg, io: &mut Io<'_>) -> Result<Report, i32> {
    let opts = AnalysisOptions { checks: true, explicit: route.explicit() };
    let c = classify(&input.graph, input.branch, input.seed, opts).map_err(|e| pipeline_failure(&e, io))?;
    let mut report = Report::new(input, &c.verdict).with_locus(c.singular_locus.as_ref());
    if let Some(a) = &c.analysis {
        report.checks = a.log.items().iter().map(CheckEntry::from).collect();
        report.invariants = Invariants {
            structural: route.structural().then(|| invariant_map(&a.structural)),
            explicit: a.explicit.as_ref().map(invariant_map),
        };
    }
    Ok(report)
}

fn run_classify(file: &Path, json: Option<&Path>, route: RouteArg, timing: bool, io: &mut Io<'_>) -> i32 {
    let Some(input) = read_input(file, io) else { return EXIT_INPUT };
    let start = Instant::now();
    let mut report = match classification_report(&input, route, io) {
        Ok(r) => r,
        Err(code) => return code,
    };
    let elapsed = start.elapsed();
    if timing {
        report.timing = Some(Timing { total_ms: elapsed.as_millis() as u64 });
    }
    let text = match emit_json(json, &report.to_json(), io) {
        Ok(t) => t,
        Err(code) => return code,
    };
    if text {
        print_summary(&report, io);
        print_invariants(&report.invariants, io);
        if report.class_ii {
            say!(io.out, "checks: {}", check_counts(&report.checks));
        }
        say!(io.out, "time: {} ms", elapsed.as_millis());
    }
    exit_for(&report)
}

fn exit_for(report: &Report) -> i32 {
    match report.verdict.as_str() {
        "FLAT" => EXIT_FLAT,
        "NON-FLAT" => EXIT_NON_FLAT,
        _ => EXIT_NOT_CLASS_II,
    }
}

fn run_invariants(file: &Path, route: RouteArg, json: Option<&Path>, io: &mut Io<'_>) -> i32 {
    let Some(input) = read_input(file, io) else { return EXIT_INPUT };
    let report = match classification_report(&input, route, io) {
        Ok(r) => r,
        Err(code) => return code,
    };
    let text = match emit_json(json, &report.to_json(), io) {
        Ok(t) => t,
        Err(code) => return code,
    };
    if text {
        if report.class_ii {
            print_invariants(&report.invariants, io);
        } else {
            print_summary(&report, io);
        }
    }
    exit_for(&report)
}

/// Whether `name` is selected by `--checks`.
fn selected(filter: &str, name: &str) -> bool {
    filter == "all" || filter.split(',').map(str::trim).filter(|f| !f.is_empty()).any(|f| name.to_lowercase().contains(&f.to_lowercase()))
}

const WITNESS_CHECK: &str = "a nonzero invariant has a nonzero value at a sampled point";
const RANK_CHECK: &str = "class II: the frame fields span the complexified tangent space";

fn run_verify(file: &Path, filter: &str, json: Option<&Path>, timing: bool, io: &mut Io<'_>) -> i32 {
    let Some(input) = read_input(file, io) else { return EXIT_INPUT };
    let start = Instant::now();
    let run = match run_exact(&input.graph, input.branch, AnalysisOptions::default()) {
        Ok(r) => r,
        Err(e) => return pipeline_failure(&e, io),
    };
    let mut report;
    match run {
        ExactRun::NotClassII { reason } => {
            report = Report::new(&input, &Verdict::NotClassII { reason: reason.clone() });
            report.checks = vec![CheckEntry { name: RANK_CHECK.into(), residual: reason, status: CheckStatus::Fail.as_str().into() }];
        }
        ExactRun::Analyzed(a) => {
            let witness = (!a.structural.is_flat()).then(|| find_witness(&a, input.seed));
            report = Report::new(&input, &witness.clone().flatten().map_or(Verdict::Flat, |w| Verdict::NonFlat(Box::new(w))));
            report.singular_locus = Some(a.singular_locus().to_string());
            report.invariants.structural = Some(invariant_map(&a.structural));
            report.invariants.explicit = a.explicit.as_ref().map(invariant_map);
            let rank = CheckEntry { name: RANK_CHECK.into(), residual: "0".into(), status: CheckStatus::Pass.as_str().into() };
            report.checks = std::iter::once(rank).chain(a.log.items().iter().map(CheckEntry::from)).collect();
            if let Some(None) = witness {
                report.verdict = "NON-FLAT".into();
                report.checks.push(CheckEntry {
                    name: WITNESS_CHECK.into(),
                    residual: "no sampled point".into(),
                    status: CheckStatus::Fail.as_str().into(),
                });
            }
        }
    }
    report.checks.retain(|c| selected(filter, &c.name));
    if timing {
        report.timing = Some(Timing { total_ms: start.elapsed().as_millis() as u64 });
    }
    let text = match emit_json(json, &report.to_json(), io) {
        Ok(t) => t,
        Err(code) => return code,
    };
    if text {
        for c in &report.checks {
            if c.status == CheckStatus::Pass.as_str() {
                say!(io.out, "{:<8} {}", c.status, c.name);
            } else {
                say!(io.out, "{:<8} {}\n         residual: {}", c.status, c.name, c.residual);
            }
        }
        say!(io.out, "{}", check_counts(&report.checks));
    }
    if !report.class_ii {
        say!(io.err, "not class II: {}", report.reason.as_deref().unwrap_or(""));
        return EXIT_NOT_CLASS_II;
    }
    match report.checks.iter().find(|c| c.status == CheckStatus::Fail.as_str()) {
        Some(c) => {
            say!(io.err, "first failure: {}\nresidual: {}", c.name, c.residual);
            EXIT_FAILURE
        }
        None => EXIT_FLAT,
    }
}

fn run_oracle_command(
    file: &Path,
    points: usize,
    seed: Option<u64>,
    order: Option<u32>,
    tol: f64,
    json: Option<&Path>,
    io: &mut Io<'_>,
) -> i32 {
    let Some(input) = read_input(file, io) else { return EXIT_INPUT };
    if tol.is_nan() || tol <= 0.0 {
        say!(io.err, "error: --tol must be positive");
        return EXIT_INPUT;
    }
    if order == Some(0) {
        say!(io.err, "error: --order must be at least 1");
        return EXIT_INPUT;
    }
    let cfg = OracleConfig {
        points,
        seed: seed.unwrap_or(input.seed),
        order: order.unwrap_or(input.order),
        tolerance: tol,
        ..OracleConfig::default()
    };
    let analysis = match run_exact(&input.graph, input.branch, AnalysisOptions { checks: false, explicit: false }) {
        Ok(ExactRun::Analyzed(a)) => a,
        Ok(ExactRun::NotClassII { reason }) => {
            say!(io.err, "not class II: {reason}");
            return EXIT_NOT_CLASS_II;
        }
        Err(e) => return pipeline_failure(&e, io),
    };
    let report = match run_oracle(&input.graph, &analysis, cfg) {
        Ok(r) => r,
        Err(e @ (OracleError::InsufficientOrder { .. } | OracleError::TooFewPoints { .. })) => {
            say!(io.err, "error: {e}");
            return EXIT_FAILURE;
        }
        Err(OracleError::Pipeline(e)) => return pipeline_failure(&e, io),
    };
    let summary = OracleSummary::new(&input, &report);
    let text = match emit_json(json, &summary.to_json(), io) {
        Ok(t) => t,
        Err(code) => return code,
    };
    if text {
        say!(io.out, "{:<28} {:<4} {:>26} {:>26} {:>10}  status", "point (x, y, u1, u2)", "inv", "exact", "jet", "error");
        for p in &report.points {
            let pt = format!("({})", p.point.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "));
            for c in &p.invariants {
                say!(
                    io.out,
                    "{pt:<28} I{:<3} {:>26} {:>26} {:>10.3e}  {}",
                    c.invariant,
                    format!("{:.6e}{:+.6e}i", c.exact.re, c.exact.im),
                    format!("{:.6e}{:+.6e}i", c.numeric.re, c.numeric.im),
                    c.error,
                    if c.agrees { "pass" } else { "FAIL" }
                );
            }
        }
        say!(
            io.out,
            "{} points accepted, {} rejected, max error {:.3e}, tolerance {:e}, order {}: {}",
            report.points.len(),
            report.rejected,
            report.max_error(),
            cfg.tolerance,
            cfg.order,
            if report.agrees() { "agreement" } else { "DISAGREEMENT" }
        );
    }
    if report.agrees() {
        EXIT_FLAT
    } else {
        say!(io.err, "error: jet and exact values disagree beyond tolerance {:e}", cfg.tolerance);
        EXIT_FAILURE
    }
}
