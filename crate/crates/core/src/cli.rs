//! Command-line front end. Every command prints one JSON document on stdout
//! (or a text rendering with `--pretty`); failures print the error name.
//!
//! Exit codes: 0 success, 1 computation or validation failure, 2 unreadable
//! input or bad usage, 3 not perfect, 4 hypotheses not verifiable.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::sync::Arc;

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use crate::counterexample::brute_force_split_search;
use crate::covers::{minimal_resolution, verify_resolution, ProjectiveSystem};
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::graded::hom_space;
use crate::idempotents::DEFAULT_SEED;
use crate::perfectness::{check_perfect, PerfectnessVerdict};
use crate::radical::{
    hom_radical, module_radical, nilpotency_index, radical_method, GradedRadical,
};
use crate::scene::{Scene, SceneFile};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_NOT_PERFECT: i32 = 3;
pub const EXIT_NOT_VERIFIABLE: i32 = 4;

#[derive(Parser, Debug)]
#[command(
    name = "gradalg",
    about = "Exact computations with category-graded algebras"
)]
pub struct Cli {
    /// Human-readable text instead of JSON.
    #[arg(long, global = true)]
    pub pretty: bool,
    /// Seed for the randomized idempotent splitting (also GRADALG_SEED).
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check the category, algebra and module axioms.
    Validate { file: String },
    /// Jacobson radical of the total hom algebra, of a hom space, or of a module.
    Radical {
        file: String,
        /// `algebra`, `hom:M,N` or `module:M`.
        #[arg(long, default_value = "algebra")]
        target: String,
    },
    /// Minimal projective resolution and Betti table.
    Resolve {
        file: String,
        #[arg(long)]
        module: String,
        #[arg(long)]
        length: usize,
    },
    /// Perfectness verdict with per-arrow certificates.
    CheckPerfect { file: String },
    /// Exhaustive idempotent search on the integer window.
    Counterexample {
        #[arg(long)]
        d: i64,
        #[arg(long, default_value_t = 2)]
        field: u64,
    },
    /// Dimension and basis of the graded hom space.
    Hom {
        file: String,
        #[arg(long)]
        source: String,
        #[arg(long)]
        target: String,
    },
}

/// What a command produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn error(e: &Error) -> Outcome {
        let code = if matches!(e, Error::ParseError(_)) {
            EXIT_PARSE
        } else {
            EXIT_FAILURE
        };
        Outcome {
            code,
            stdout: String::new(),
            stderr: format!("error: {}\n{e}\n", e.name()),
        }
    }
}

struct Rendered {
    json: Value,
    text: String,
    code: i32,
}

fn ok(json: Value, text: String) -> Rendered {
    Rendered {
        json,
        text,
        code: EXIT_OK,
    }
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

fn vector_json(v: &[Scalar]) -> Value {
    Value::Array(v.iter().map(|x| Value::String(x.to_string())).collect())
}

fn seed_from_env() -> Result<Option<u64>> {
    match std::env::var("GRADALG_SEED") {
        Ok(s) => s
            .parse()
            .map(Some)
            .map_err(|_| Error::ParseError(format!("GRADALG_SEED={s:?} is not an integer"))),
        Err(_) => Ok(None),
    }
}

/// Applies `GRADALG_THREADS` to the global pool; only the first call takes effect.
pub fn configure_threads() -> Result<()> {
    let Ok(s) = std::env::var("GRADALG_THREADS") else {
        return Ok(());
    };
    let n: usize = s.parse().ok().filter(|&n| n > 0).ok_or_else(|| {
        Error::ParseError(format!("GRADALG_THREADS={s:?} is not a positive integer"))
    })?;
    let _ = rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global();
    Ok(())
}

fn read_scene_file(path: &str) -> Result<SceneFile> {
    let text =
        std::fs::read_to_string(path).map_err(|e| Error::ParseError(format!("{path}: {e}")))?;
    SceneFile::parse(&text)
}

fn load(path: &str) -> Result<Scene> {
    read_scene_file(path)?.load()
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    if let Err(e) = configure_threads() {
        return Outcome::error(&e);
    }
    let seed = match cli
        .seed
        .map(Ok)
        .or_else(|| seed_from_env().transpose())
        .transpose()
    {
        Ok(s) => s.unwrap_or(DEFAULT_SEED),
        Err(e) => return Outcome::error(&e),
    };
    match dispatch(&cli.command, seed) {
        Ok(r) => {
            let stdout = if cli.pretty {
                r.text
            } else {
                let mut s = serde_json::to_string_pretty(&r.json).expect("json");
                s.push('\n');
                s
            };
            Outcome {
                code: r.code,
                stdout,
                stderr: String::new(),
            }
        }
        Err(e) => Outcome::error(&e),
    }
}

fn dispatch(cmd: &Command, seed: u64) -> Result<Rendered> {
    match cmd {
        Command::Validate { file } => cmd_validate(file),
        Command::Radical { file, target } => cmd_radical(file, target),
        Command::Resolve {
            file,
            module,
            length,
        } => cmd_resolve(file, module, *length, seed),
        Command::CheckPerfect { file } => cmd_check_perfect(file, seed),
        Command::Counterexample { d, field } => cmd_counterexample(*d, *field),
        Command::Hom {
            file,
            source,
            target,
        } => cmd_hom(file, source, target),
    }
}

fn cmd_validate(file: &str) -> Result<Rendered> {
    let (report, _) = read_scene_file(file)?.validate()?;
    let mut text = String::new();
    let mut line = |stage: &str, n: Option<usize>| {
        let status = match n {
            None => "skipped".to_string(),
            Some(0) => "ok".to_string(),
            Some(k) => format!("{k} violation(s)"),
        };
        let _ = writeln!(text, "{stage:<12} {status}");
    };
    line(
        "category",
        report.category.as_ref().map(|r| r.violations.len()),
    );
    line(
        "algebra",
        report.algebra.as_ref().map(|r| r.violations.len()),
    );
    for (name, r) in &report.modules {
        line(&format!("module {name}"), Some(r.violations.len()));
    }
    let code = if report.clean { EXIT_OK } else { EXIT_FAILURE };
    Ok(Rendered {
        json: to_value(&report),
        text,
        code,
    })
}

fn cmd_radical(file: &str, target: &str) -> Result<Rendered> {
    let scene = load(file)?;
    let cat = scene.algebra.category();
    if target == "algebra" {
        let rad = GradedRadical::over_all_arrows(&scene.algebra)?;
        let b = rad.total.algebra();
        let index = nilpotency_index(b, &rad.radical);
        let gens = rad.total.generators();
        let mut blocks = Vec::new();
        let mut text = format!(
            "total dim {}  radical dim {}  nilpotency index {}\n",
            b.dim(),
            rad.radical.dim(),
            index.map_or("-".into(), |i| i.to_string())
        );
        for p in 0..gens.len() {
            for q in 0..gens.len() {
                let dim = rad.total.block_dim(p, q);
                if dim == 0 {
                    continue;
                }
                let r = rad.block(p, q).len();
                let (src, tgt) = (cat.arrow_id(gens[p]), cat.arrow_id(gens[q]));
                let _ = writeln!(text, "  {src:>8} -> {tgt:<8} {r}/{dim}");
                blocks.push(json!({"source": src, "target": tgt, "dim": dim, "radical_dim": r}));
            }
        }
        let json = json!({
            "target": "algebra",
            "method": to_value(&radical_method(b)),
            "total_dim": b.dim(),
            "radical_dim": rad.radical.dim(),
            "nilpotency_index": index,
            "blocks": blocks,
            "basis": rad.radical.basis().iter().map(|v| vector_json(v)).collect::<Vec<_>>(),
        });
        return Ok(ok(json, text));
    }
    if let Some(rest) = target.strip_prefix("hom:") {
        let (m, n) = rest
            .split_once(',')
            .ok_or_else(|| Error::ParseError(format!("expected hom:M,N, got {target:?}")))?;
        let (mm, nn) = (scene.module(m)?, scene.module(n)?);
        let hom = hom_space(mm, nn)?;
        let rad = hom_radical(mm, nn)?;
        let basis: Vec<Value> = rad
            .basis()
            .iter()
            .map(|f| vector_json(&f.flatten()))
            .collect();
        let text = format!("J({m}, {n}): dim {} of {}\n", rad.dim(), hom.dim());
        let json = json!({"target": "hom", "source_module": m, "target_module": n,
                          "hom_dim": hom.dim(), "radical_dim": rad.dim(), "basis": basis});
        return Ok(ok(json, text));
    }
    if let Some(m) = target.strip_prefix("module:") {
        let module = scene.module(m)?;
        let rad = GradedRadical::over_all_arrows(&scene.algebra)?;
        let parts = module_radical(module, &rad)?;
        let mut text = format!("rad {m}\n");
        let mut per_arrow = Vec::new();
        for (b, s) in parts.iter().enumerate() {
            if module.dim(b) == 0 {
                continue;
            }
            let id = cat.arrow_id(b);
            let _ = writeln!(text, "  {id:>8} {}/{}", s.dim(), module.dim(b));
            per_arrow.push(json!({
                "arrow": id, "dim": module.dim(b), "radical_dim": s.dim(),
                "basis": s.basis().iter().map(|v| vector_json(v)).collect::<Vec<_>>(),
            }));
        }
        let total: usize = parts.iter().map(|s| s.dim()).sum();
        let json =
            json!({"target": "module", "module": m, "radical_dim": total, "per_arrow": per_arrow});
        return Ok(ok(json, text));
    }
    Err(Error::ParseError(format!(
        "unknown radical target {target:?}"
    )))
}

fn cmd_resolve(file: &str, module: &str, length: usize, seed: u64) -> Result<Rendered> {
    let scene = load(file)?;
    let m = scene.module(module)?.clone();
    let sys = ProjectiveSystem::new(&scene.algebra, seed)?;
    let r = minimal_resolution(&sys, &m, length)?;
    let check = verify_resolution(&sys, &r)?;
    let betti = r.betti(&sys);
    let shifts: Vec<Vec<&str>> = betti
        .iter()
        .map(|row| row.iter().map(|e| e.generator.as_str()).collect())
        .collect();
    let mut text = format!("resolution of {module}, length {}\n", r.length());
    for (k, row) in betti.iter().enumerate() {
        let cells: Vec<String> = row
            .iter()
            .map(|e| format!("{}^{}", e.label, e.multiplicity))
            .collect();
        let _ = writeln!(text, "  P_{k:<3} {}", cells.join(" + "));
    }
    let _ = writeln!(
        text,
        "terminated: {}  verified: {}",
        r.terminated, check.passed
    );
    let json = json!({
        "module": module,
        "length": r.length(),
        "terminated": r.terminated,
        "classes": sys.labels(),
        "betti": to_value(&betti),
        "shifts": shifts,
        "check": to_value(&check),
    });
    let code = if check.passed { EXIT_OK } else { EXIT_FAILURE };
    Ok(Rendered { json, text, code })
}

/// Exit code for a perfectness verdict.
pub fn verdict_code(v: PerfectnessVerdict) -> i32 {
    match v {
        PerfectnessVerdict::Perfect => EXIT_OK,
        PerfectnessVerdict::NotPerfect => EXIT_NOT_PERFECT,
        PerfectnessVerdict::HypothesesNotVerifiable => EXIT_NOT_VERIFIABLE,
    }
}

fn cmd_check_perfect(file: &str, seed: u64) -> Result<Rendered> {
    let scene = load(file)?;
    let report = check_perfect(&scene.algebra, seed)?;
    let mut text = format!(
        "verdict: {}\n",
        to_value(&report.verdict).as_str().unwrap_or("?")
    );
    let _ = writeln!(
        text,
        "theorem: {}",
        to_value(&report.theorem_used).as_str().unwrap_or("?")
    );
    let _ = writeln!(text, "reason: {}", report.reason);
    for c in &report.per_arrow {
        let rad = c.radical.as_ref().map_or("-".into(), |r| {
            format!("{}/{}", r.radical_dim, r.algebra_dim)
        });
        let _ = writeln!(
            text,
            "  {:>8}  dim {:<3} rad {:<6} idempotents {:<3} split {}",
            c.arrow, c.divisor_dim, rad, c.primitive_idempotents, c.split
        );
    }
    Ok(Rendered {
        json: to_value(&report),
        text,
        code: verdict_code(report.verdict),
    })
}

fn cmd_counterexample(d: i64, p: u64) -> Result<Rendered> {
    let field = Field::prime(p).map_err(|e| Error::SearchSpaceTooLarge(e.to_string()))?;
    let report = brute_force_split_search(d, field)?;
    let text = format!(
        "window d = {} over {}\n  admissible e: {}\n  interior solutions: {}\n  diagonal idempotent: {}\n  \
         descent reaches edge: {}\n  interior-minimal I: {}\n  empty I: {}\n  descent violations: {}\n  \
         min over e of max descent depth: {}\n",
        report.d,
        report.field,
        report.admissible,
        report.interior_solutions,
        report.diagonal_idempotent,
        report.reaches_edge,
        report.interior_minimal,
        report.empty_i,
        report.descent_violations,
        report.min_max_descent_depth.map_or("-".into(), |x| x.to_string()),
    );
    let mut json = to_value(&report);
    json["consistent"] = Value::Bool(report.consistent());
    Ok(ok(json, text))
}

fn cmd_hom(file: &str, source: &str, target: &str) -> Result<Rendered> {
    let scene = load(file)?;
    let (m, n): (&Arc<_>, &Arc<_>) = (scene.module(source)?, scene.module(target)?);
    let hom = hom_space(m, n)?;
    let basis: Vec<Value> = hom
        .basis()
        .iter()
        .map(|f| vector_json(&f.flatten()))
        .collect();
    let text = format!("Hom({source}, {target}): dim {}\n", hom.dim());
    Ok(ok(
        json!({"source": source, "target": target, "dim": hom.dim(), "basis": basis}),
        text,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(run(["gradalg"]).code, EXIT_PARSE);
        assert_eq!(run(["gradalg", "frobnicate"]).code, EXIT_PARSE);
        assert_eq!(
            run(["gradalg", "validate", "/nonexistent/scene.json"]).code,
            EXIT_PARSE
        );
        assert_eq!(run(["gradalg", "--help"]).code, EXIT_OK);
    }

    #[test]
    fn counterexample_command() {
        let out = run(["gradalg", "counterexample", "--d", "1"]);
        assert_eq!(out.code, EXIT_OK);
        let v: Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(v["consistent"], Value::Bool(true));
        let out = run(["gradalg", "counterexample", "--d", "4"]);
        assert_eq!(out.code, EXIT_FAILURE);
        assert!(out.stderr.starts_with("error: SearchSpaceTooLarge"));
        assert_eq!(
            run(["gradalg", "counterexample", "--d", "1", "--field", "5"]).code,
            EXIT_FAILURE
        );
    }

    #[test]
    fn verdict_codes() {
        assert_eq!(verdict_code(PerfectnessVerdict::Perfect), 0);
        assert_eq!(verdict_code(PerfectnessVerdict::NotPerfect), 3);
        assert_eq!(verdict_code(PerfectnessVerdict::HypothesesNotVerifiable), 4);
    }
}
