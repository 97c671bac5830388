use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use rayon::prelude::*;

use selforth::combinatorics::fmt_rat;
use selforth::mendelsohn::{build_system, certify_no_dual_weight};
use selforth::registry::{compare, CaseRegistry};
use selforth::verifier::{case_design, case_in_range, verify_case, VerificationReport};

#[derive(Parser)]
#[command(name = "selforth", about = "Self-orthogonality checks for codes of 5-designs in extremal codes")]
struct Cli {
    /// Worker threads, 0 for one per core.
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print λ and λ_0..λ_5 of D_{24m,4k}.
    Lambda { m: usize, k: usize },
    /// Solve the intersection equations for dual words of weight w.
    Mendelsohn {
        m: usize,
        k: usize,
        w: u32,
        #[arg(long)]
        json: bool,
    },
    /// Verify one case, or every row of the case table.
    Verify {
        m: Option<usize>,
        k: Option<usize>,
        #[arg(long, conflicts_with_all = ["m", "k"])]
        all: bool,
        /// Report directory.
        #[arg(long, env = "SELFORTH_REPORT_DIR", default_value = "reports")]
        out: PathBuf,
        /// Expected-results file, defaults to the bundled table.
        #[arg(long)]
        expected: Option<PathBuf>,
    },
}

fn usage(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn write_atomic(path: &Path, body: &str) -> std::io::Result<()> {
    let tmp = path.with_extension("json.tmp");
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(body.as_bytes())?;
        f.sync_all()?;
    }
    fs::rename(tmp, path)
}

fn cmd_lambda(m: usize, k: usize) -> ExitCode {
    let d = match case_design(m, k) {
        Ok(d) => d,
        Err(e) => return usage(e),
    };
    println!("D_{{{},{}}}: t = {}, v = {}, k = {}", 24 * m, 4 * k, d.t, d.v, d.k);
    println!("lambda = {}", d.lambda);
    for (i, l) in d.lambda_index.iter().enumerate() {
        println!("lambda_{i} = {l}");
    }
    ExitCode::SUCCESS
}

fn cmd_mendelsohn(m: usize, k: usize, w: u32, json: bool) -> ExitCode {
    let d = match case_design(m, k) {
        Ok(d) => d,
        Err(e) => return usage(e),
    };
    if w == 0 || w >= d.v {
        return usage(format!("weight must satisfy 0 < w < {}", d.v));
    }
    let sys = build_system(&d, w);
    let check = certify_no_dual_weight(&d, w);
    if json {
        let mut v = check.to_json();
        v["system"] = sys.params_json();
        v["unique_solution"] = match &check.unique {
            Some(x) => serde_json::Value::Array(x.iter().map(|q| fmt_rat(q).into()).collect()),
            None => serde_json::Value::Null,
        };
        println!("{}", serde_json::to_string_pretty(&v).expect("serializable"));
        return ExitCode::SUCCESS;
    }
    println!("D_{{{},{}}}, w = {w}, unknowns n_i for i in {:?}", d.v, d.k, sys.unknowns);
    for (j, (row, rhs)) in sys.matrix.iter().zip(&sys.rhs).enumerate() {
        let terms: Vec<String> = row
            .iter()
            .zip(&sys.unknowns)
            .filter(|(c, _)| !num_traits::Zero::is_zero(*c))
            .map(|(c, i)| format!("{c} n_{i}"))
            .collect();
        println!("  j={j}: {} = {rhs}", terms.join(" + "));
    }
    if let Some(x) = &check.unique {
        let parts: Vec<String> = sys.unknowns.iter().zip(x).map(|(i, v)| format!("n_{i} = {}", fmt_rat(v))).collect();
        println!("unique solution: {}", parts.join(", "));
    }
    if check.absent {
        println!("no dual word of weight {w} ({})", check.reason.as_str());
    } else {
        println!("weight {w} not excluded ({})", check.reason.as_str());
    }
    ExitCode::SUCCESS
}

fn report_body(r: &VerificationReport) -> String {
    let mut s = serde_json::to_string_pretty(&r.to_json()).expect("serializable");
    s.push('\n');
    s
}

fn cmd_verify(m: Option<usize>, k: Option<usize>, all: bool, out: PathBuf, expected: Option<PathBuf>) -> ExitCode {
    let registry = match &expected {
        Some(p) => match fs::read_to_string(p).map_err(|e| e.to_string()).and_then(|t| CaseRegistry::parse(&t).map_err(|e| e.to_string())) {
            Ok(r) => r,
            Err(e) => return usage(format!("{}: {e}", p.display())),
        },
        None => CaseRegistry::bundled(),
    };
    let bad = registry.lambda_mismatches();
    if !bad.is_empty() {
        return usage(format!("lambda does not re-derive for rows {bad:?}"));
    }
    let cases: Vec<(usize, usize)> = match (all, m, k) {
        (true, _, _) => registry.rows.iter().map(|r| (r.m, r.k)).collect(),
        (false, Some(m), Some(k)) if case_in_range(m, k) => vec![(m, k)],
        (false, Some(m), Some(k)) => return usage(format!("no case ({m},{k})")),
        _ => return usage("give m and k, or --all"),
    };
    if let Err(e) = fs::create_dir_all(&out) {
        return usage(format!("{}: {e}", out.display()));
    }
    let start = Instant::now();
    let results: Vec<_> = cases
        .par_iter()
        .map(|&(m, k)| {
            let t = Instant::now();
            let r = verify_case(m, k);
            (m, k, r, t.elapsed())
        })
        .collect();
    let mut mismatches = 0;
    for (m, k, r, dt) in results {
        let r = match r {
            Ok(r) => r,
            Err(e) => {
                eprintln!("({m},{k}): {e}");
                mismatches += 1;
                continue;
            }
        };
        let path = out.join(format!("case_{m}_{k}.json"));
        if let Err(e) = write_atomic(&path, &report_body(&r)) {
            return usage(format!("{}: {e}", path.display()));
        }
        let diffs = registry.find(m, k).map(|row| compare(row, &r)).unwrap_or_default();
        let status = if diffs.is_empty() { "ok" } else { "MISMATCH" };
        println!(
            "({:>3},{:>2}) lambda={} self_dual={} min_weights={} [{:.1}s] {status}{}",
            24 * m,
            4 * k,
            r.lambda,
            r.self_dual.as_str(),
            r.min_weights.render(),
            dt.as_secs_f64(),
            if diffs.is_empty() { String::new() } else { format!(": {}", diffs.join("; ")) }
        );
        if !diffs.is_empty() {
            mismatches += 1;
        }
    }
    println!("{} case(s), {mismatches} mismatch(es), {:.1}s", cases.len(), start.elapsed().as_secs_f64());
    if mismatches == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.threads > 0 {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(cli.threads).build_global() {
            return usage(e);
        }
    }
    match cli.cmd {
        Cmd::Lambda { m, k } => cmd_lambda(m, k),
        Cmd::Mendelsohn { m, k, w, json } => cmd_mendelsohn(m, k, w, json),
        Cmd::Verify { m, k, all, out, expected } => cmd_verify(m, k, all, out, expected),
    }
}
