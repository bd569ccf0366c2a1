//! Acceptance criteria AC1..AC8, one result line each.

use std::panic::{self, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::Command;
use std::sync::OnceLock;
use std::time::Instant;

use engel_core::corpus::{class_ii_corpus, CorpusSpec};
use engel_core::pipeline::{analyze, run_exact, Analysis, AnalysisOptions, CheckStatus, ExactRun, GraphData, ModelAlgebra};
use engel_core::{Branch, ExactDomain, ExtScalar, PipelineError};
use serde_json::Value;

type Outcome = Result<String, String>;
type Criterion = (&'static str, &'static str, fn() -> Outcome);
type Corpus = Result<Vec<(GraphData, Box<Analysis<ExtScalar>>)>, String>;

const CORPUS_SEED: u64 = 1;
const CORPUS_SIZE: usize = 6;
const CUBIC: (&str, &str) = ("x^2 + y^2", "2*x^3 + 2*x*y^2");
const PERTURBED: (&str, &str) = ("x^2 + y^2", "2*x^3 + 2*x*y^2 + x^4");

macro_rules! ensure {
    ($cond:expr, $($msg:tt)*) => {
        let ok: bool = $cond;
        if !ok {
            return Err(format!($($msg)*));
        }
    };
}

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

impl Run {
    fn json(&self) -> Result<Value, String> {
        serde_json::from_str(&self.stdout).map_err(|e| format!("report is not JSON: {e}"))
    }
}

fn engel(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_engel")).args(args).output().expect("engel runs");
    Run {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8_lossy(&out.stdout).into_owned(),
        stderr: String::from_utf8_lossy(&out.stderr).into_owned(),
    }
}

fn input_file(name: &str, (phi1, phi2): (&str, &str), branch: i64) -> String {
    let dir = std::env::temp_dir().join(format!("engel-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).expect("temp dir");
    let path: PathBuf = dir.join(format!("{name}.toml"));
    let text = format!("[manifold]\nphi1 = \"{phi1}\"\nphi2 = \"{phi2}\"\n\n[options]\nbranch = {branch}\nseed = 0\n");
    std::fs::write(&path, text).expect("write input");
    path.to_string_lossy().into_owned()
}

fn graph((phi1, phi2): (&str, &str)) -> GraphData {
    let p = |t: &str| engel_core::algebra::parse_polynomial(t).expect("valid polynomial");
    GraphData::new(p(phi1), p(phi2)).expect("real graph")
}

fn exact(g: &GraphData, branch: Branch) -> Result<Box<Analysis<ExtScalar>>, String> {
    match run_exact(g, branch, AnalysisOptions::default()).map_err(|e| e.to_string())? {
        ExactRun::Analyzed(a) => Ok(a),
        ExactRun::NotClassII { reason } => Err(format!("unexpectedly not class II: {reason}")),
    }
}

fn corpus() -> &'static Corpus {
    static CORPUS: OnceLock<Corpus> = OnceLock::new();
    CORPUS.get_or_init(|| {
        let graphs = class_ii_corpus(CORPUS_SEED, CORPUS_SIZE, CorpusSpec::default());
        if graphs.len() < CORPUS_SIZE {
            return Err(format!("only {} class II draws", graphs.len()));
        }
        graphs.into_iter().map(|g| exact(&g, Branch::Plus).map(|a| (g, a))).collect()
    })
}

/// Every named check passes on every corpus input, and no required check
/// fails anywhere.
fn corpus_checks(names: &[&str], prefixes: &[&str]) -> Outcome {
    let corpus = corpus().as_ref().map_err(Clone::clone)?;
    let mut count = 0;
    for (g, a) in corpus {
        let input = format!("phi1 = {}, phi2 = {}", g.phi1(), g.phi2());
        if let Some(c) = a.log.first_failure() {
            return Err(format!("{input}: required check '{}' failed: {}", c.name, c.residual));
        }
        for name in names {
            let c = a.log.items().iter().find(|c| c.name == *name).ok_or_else(|| format!("{input}: check '{name}' missing"))?;
            ensure!(c.status == CheckStatus::Pass, "{input}: '{name}' residual {}", c.residual);
            count += 1;
        }
        for prefix in prefixes {
            let hits: Vec<_> = a.log.items().iter().filter(|c| c.name.starts_with(prefix)).collect();
            ensure!(!hits.is_empty(), "{input}: no '{prefix}' checks");
            for c in hits {
                ensure!(c.status == CheckStatus::Pass, "{input}: '{}' residual {}", c.name, c.residual);
                count += 1;
            }
        }
    }
    Ok(format!("{count} checks over {} corpus inputs", corpus.len()))
}

fn ac1() -> Outcome {
    let start = Instant::now();
    let run = engel(&["classify", &input_file("cubic", CUBIC, 1), "--json", "-"]);
    let seconds = start.elapsed().as_secs_f64();
    ensure!(run.code == 0, "exit {} ({})", run.code, run.stderr.trim());
    let report = run.json()?;
    ensure!(report["verdict"] == "FLAT", "verdict {}", report["verdict"]);
    for k in 0..6 {
        let v = &report["invariants"]["structural"][format!("I{k}")];
        ensure!(v == "0", "I{k} = {v}");
    }
    let a = exact(&graph(CUBIC), Branch::Plus)?;
    ensure!(a.bundle.structure[0].is_zero(), "d(Lambda) = {}", a.bundle.structure[0]);
    ensure!(seconds <= 120.0, "took {seconds:.1} s");
    Ok(format!("I0..I5 = 0, d(Lambda) = 0, {seconds:.2} s"))
}

fn ac2() -> Outcome {
    corpus_checks(
        &[
            "conjugation: B conj(B) = 1",
            "conjugation: conj(A) + conj(B) A = 0",
            "conjugation: conj(Q)",
            "conjugation: conj(P)",
            "sigma1 is real",
            "coherency: conj(D0) = D0bar",
            "structure: E = L(A) + B P",
            "structure: F = L(B) + B Q + A",
        ],
        &[],
    )
}

fn ac3() -> Outcome {
    corpus_checks(
        &[
            "d(sigma) = 3 Lambda^sigma + rho^zeta + rho^conj(zeta)",
            "d(rho) = 2 Lambda^rho + i zeta^conj(zeta)",
            "d(zeta) has only the five invariant slots",
            "d(conj zeta) is the conjugate pattern",
            "Lambda has weight-zero base components",
            "invariant slots have a-weights (5, 4, 3, 3, 2, 2)",
        ],
        &["closure: "],
    )
}

fn ac4() -> Outcome {
    corpus_checks(&["Bianchi: I1 forced by d(d rho) = 0", "d(Lambda) matches the I0..I3 template", "closure: d(d Lambda) = 0"], &[])
}

fn ac5() -> Outcome {
    let detail = corpus_checks(
        &["equivariant: weights are (0, 3, 2, 1, 1)", "model algebra satisfies Jacobi"],
        &["vertical: ", "equivariant: ", "nondegenerate: "],
    )?;
    let flat = ModelAlgebra::flat_model();
    ensure!(flat.jacobi_violations().is_empty(), "Jacobi fails: {:?}", flat.jacobi_violations());
    let cubic = exact(&graph(CUBIC), Branch::Plus)?;
    let built = ModelAlgebra::from_structure(&cubic.bundle.structure).map_err(|e| e.to_string())?;
    ensure!(built == flat, "cubic structure equations give\n{built}");
    Ok(format!("{detail}; cubic reproduces the bracket table"))
}

fn ac6_branch(branch: i64) -> Outcome {
    let file = input_file(&format!("perturbed{branch}"), PERTURBED, branch);
    let run = engel(&["classify", &file, "--json", "-"]);
    ensure!(run.code == 10, "exit {} ({})", run.code, run.stderr.trim());
    let report = run.json()?;
    ensure!(report["verdict"] == "NON-FLAT", "verdict {}", report["verdict"]);
    let witness = &report["witness"];
    let value = witness["value"].as_str().ok_or("no witness value")?;
    ensure!(value != "0", "witness value is zero");
    let oracle = engel(&["oracle", &file, "--points", "20", "--tol", "1e-6", "--json", "-"]);
    ensure!(oracle.code == 0, "oracle exit {} ({})", oracle.code, oracle.stderr.trim());
    let table = oracle.json()?;
    let points = table["points"].as_array().ok_or("no oracle table")?;
    ensure!(points.len() == 20 && table["agrees"] == true, "oracle: {} points, agrees = {}", points.len(), table["agrees"]);
    let nonzero = points.iter().flat_map(|p| p["comparisons"].as_array().cloned().unwrap_or_default()).any(|c| {
        let n = &c["numeric"];
        n[0].as_f64().unwrap_or(0.0).hypot(n[1].as_f64().unwrap_or(0.0)) > 1e-6
    });
    ensure!(nonzero, "no numerically nonzero invariant");
    Ok(format!(
        "witness {} = {value}; oracle max error {:.1e} at 20 points",
        witness["invariant"].as_str().unwrap_or("?"),
        table["max_error"].as_f64().unwrap_or(f64::NAN)
    ))
}

fn ac6() -> Outcome {
    let detail = ac6_branch(1)?;
    let flat = engel(&["oracle", &input_file("cubic-oracle", CUBIC, 1), "--points", "20", "--tol", "1e-6", "--json", "-"]);
    ensure!(flat.code == 0, "cubic oracle exit {} ({})", flat.code, flat.stderr.trim());
    let table = flat.json()?;
    let max = table["points"]
        .as_array()
        .ok_or("no oracle table")?
        .iter()
        .flat_map(|p| p["comparisons"].as_array().cloned().unwrap_or_default())
        .map(|c| c["numeric"][0].as_f64().unwrap_or(f64::NAN).hypot(c["numeric"][1].as_f64().unwrap_or(f64::NAN)))
        .fold(0.0, f64::max);
    ensure!(max <= 1e-6, "cubic jet invariants reach {max:e}");
    Ok(format!("{detail}; cubic jet invariants <= {max:.1e}"))
}

fn ac7() -> Outcome {
    for (name, phis) in [("phi2-zero", ("x^2 + y^2", "0")), ("both-zero", ("0", "0"))] {
        let run = engel(&["classify", &input_file(name, phis, 1)]);
        ensure!(run.code == 20, "{name}: exit {} ({})", run.code, run.stderr.trim());
        ensure!(run.stdout.contains("NOT_CLASS_II"), "{name}: {}", run.stdout);
    }
    let run = engel(&["classify", &input_file("degenerate", ("-u2", "u1"), 1)]);
    ensure!(run.code == 20, "degenerate: exit {}", run.code);
    ensure!(run.stdout.contains("generator denominator"), "degenerate: no diagnostic in {}", run.stdout);
    let err = analyze(&graph(("-u2", "u1")), &ExactDomain::default(), AnalysisOptions::default()).err();
    ensure!(matches!(err, Some(PipelineError::DegenerateGraph { .. })), "library reports {err:?}");
    Ok("both zero inputs exit 20; -u2, u1 has a vanishing generator denominator".into())
}

fn ac8() -> Outcome {
    let run = engel(&["classify", &input_file("cubic-minus", CUBIC, -1), "--json", "-"]);
    ensure!(run.code == 0, "cubic on branch -1: exit {} ({})", run.code, run.stderr.trim());
    ensure!(run.json()?["verdict"] == "FLAT", "cubic on branch -1 is not FLAT");
    let detail = ac6_branch(-1)?;
    Ok(format!("branch -1: cubic FLAT; perturbed {detail}"))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("AC1", "flat model", ac1),
        ("AC2", "identity suite", ac2),
        ("AC3", "structure-equation closure", ac3),
        ("AC4", "Bianchi consistency", ac4),
        ("AC5", "Cartan connection", ac5),
        ("AC6", "non-flat detection", ac6),
        ("AC7", "degeneracy handling", ac7),
        ("AC8", "branch independence", ac8),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (id, title, check) in criteria {
        let outcome = panic::catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        match outcome {
            Ok(detail) => println!("{id} PASS  {title}: {detail}"),
            Err(reason) => {
                failed += 1;
                println!("{id} FAIL  {title}: {reason}");
            }
        }
    }
    let _ = std::fs::remove_dir_all(std::env::temp_dir().join(format!("engel-acceptance-{}", std::process::id())));
    println!("acceptance: {} passed, {failed} failed", 8 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
