//! Command-line driver: analyze one polytope, batch a directory into
//! JSONL, or cross-check the Fine interior against the brute-force
//! oracle.
//!
//! Exit codes: 0 success, 1 input error, 2 internal-consistency
//! failure (a panic inside the analysis, which theory says cannot
//! happen on valid input).

use clap::{Parser, Subcommand};
use polyfine::fine;
use polyfine::input::{parse_input, to_polytope};
use polyfine::invariants::{analyze, Analysis};
use polyfine::polytope::Polytope;
use rayon::prelude::*;
use serde_json::json;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "polyfine", version, about = "Fine interiors and canonical models of lattice polytopes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze a single polytope file and print a report
    Analyze {
        file: PathBuf,
        /// JSON output (the default)
        #[arg(long, conflicts_with = "text")]
        json: bool,
        /// aligned text output instead of JSON
        #[arg(long)]
        text: bool,
        /// skip the lambda_closed bisection
        #[arg(long)]
        no_thresholds: bool,
    },
    /// Analyze every file in a directory into a JSONL stream
    Batch {
        dir: PathBuf,
        /// output path for the JSONL report
        #[arg(long)]
        out: PathBuf,
        /// worker threads (default: all cores); output is
        /// byte-identical regardless
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Compare fine_interior against the brute-force oracle
    Oracle {
        file: PathBuf,
        /// sup-norm bound on the enumerated dual vectors
        #[arg(long)]
        radius: i64,
    },
}

fn load(path: &Path) -> Result<Polytope, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("{}: {e}", path.display()))?;
    let doc = parse_input(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    to_polytope(&doc).map_err(|e| format!("{}: {e}", path.display()))
}

fn guarded_analyze(p: &Polytope, with_thresholds: bool) -> Result<Analysis, ()> {
    std::panic::catch_unwind(|| analyze(p, with_thresholds)).map_err(|_| ())
}

fn stem(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

fn run_analyze(file: &Path, text: bool, no_thresholds: bool) -> ExitCode {
    let p = match load(file) {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    let Ok(a) = guarded_analyze(&p, !no_thresholds) else {
        eprintln!("error: internal consistency failure while analyzing {}", file.display());
        return ExitCode::from(2);
    };
    let name = stem(file);
    if text {
        print!("{}", polyfine::report::report_text(&name, &a));
    } else {
        let v = polyfine::report::report_json(&name, &a);
        println!("{}", serde_json::to_string_pretty(&v).unwrap());
    }
    ExitCode::SUCCESS
}

fn run_batch(dir: &Path, out: &Path, jobs: Option<usize>) -> ExitCode {
    let mut files: Vec<PathBuf> = match std::fs::read_dir(dir) {
        Ok(rd) => rd
            .filter_map(|e| e.ok())
            .map(|e| e.path())
            .filter(|p| p.is_file())
            .collect(),
        Err(e) => {
            eprintln!("error: {}: {e}", dir.display());
            return ExitCode::from(1);
        }
    };
    files.sort_by_key(|p| p.file_name().map(|s| s.to_os_string()));

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.unwrap_or(0))
        .build()
        .expect("thread pool");
    let lines: Vec<(String, serde_json::Value)> = pool.install(|| {
        files
            .par_iter()
            .map(|path| {
                let name = stem(path);
                let value = match load(path) {
                    Err(e) => json!({ "name": name, "error": e }),
                    Ok(p) => match guarded_analyze(&p, true) {
                        Ok(a) => polyfine::report::report_json(&name, &a),
                        Err(()) => {
                            json!({ "name": name, "error": "internal consistency failure" })
                        }
                    },
                };
                (name, value)
            })
            .collect()
    });

    let mut counts = std::collections::BTreeMap::new();
    for key in [
        "total",
        "errors",
        "with_fine_interior",
        "canonically_closed",
        "integrally_closed",
        "reflexive",
        "almost_reflexive",
        "pseudoreflexive",
    ] {
        counts.insert(key.to_string(), 0u64);
    }
    for (_, v) in &lines {
        *counts.get_mut("total").unwrap() += 1;
        if v.get("error").is_some() {
            *counts.get_mut("errors").unwrap() += 1;
            continue;
        }
        if v["fine_interior"]["dim"] != json!(-1) {
            *counts.get_mut("with_fine_interior").unwrap() += 1;
        }
        for flag in [
            "canonically_closed",
            "integrally_closed",
            "reflexive",
            "almost_reflexive",
            "pseudoreflexive",
        ] {
            if v["flags"][flag] == json!(true) {
                *counts.get_mut(flag).unwrap() += 1;
            }
        }
    }

    let mut body = String::new();
    for (_, v) in &lines {
        body.push_str(&serde_json::to_string(v).unwrap());
        body.push('\n');
    }
    body.push_str(&serde_json::to_string(&json!({ "summary": counts })).unwrap());
    body.push('\n');
    if let Err(e) = std::fs::write(out, body) {
        eprintln!("error: {}: {e}", out.display());
        return ExitCode::from(1);
    }
    ExitCode::SUCCESS
}

fn run_oracle(file: &Path, radius: i64) -> ExitCode {
    if radius < 1 {
        eprintln!("error: --radius must be at least 1");
        return ExitCode::from(1);
    }
    let p = match load(file) {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    let reduced = fine::fine_interior(&p);
    let oracle = fine::oracle_fine_interior(&p, radius);
    let max_norm = fine::candidate_normals(&p)
        .iter()
        .map(|nu| inf_norm(nu))
        .max()
        .unwrap();
    let verdict = if reduced == oracle {
        "EQUAL"
    } else {
        // below the candidate radius the oracle may only be coarser
        "CANDIDATE_SUBSET"
    };
    println!(
        "{verdict} radius={radius} sufficient_radius={max_norm} fine={} oracle={}",
        describe(&reduced),
        describe(&oracle)
    );
    ExitCode::SUCCESS
}

fn inf_norm(v: &[polyfine::num::Int]) -> polyfine::num::Int {
    use num_traits::Signed;
    v.iter().map(|x| x.abs()).max().unwrap()
}

fn describe(f: &Option<Polytope>) -> String {
    match f {
        None => "empty".into(),
        Some(f) => format!(
            "dim {} with {} vertices",
            f.adim,
            f.vertices.len()
        ),
    }
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Analyze {
            file,
            json: _,
            text,
            no_thresholds,
        } => run_analyze(&file, text, no_thresholds),
        Command::Batch { dir, out, jobs } => run_batch(&dir, &out, jobs),
        Command::Oracle { file, radius } => run_oracle(&file, radius),
    }
}
