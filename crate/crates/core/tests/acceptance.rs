//! One PASS/FAIL line per acceptance criterion, written straight to stderr
//! so it shows up without --nocapture.

mod common;

use std::collections::BTreeSet;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};
use serde_json::Value;

use common::*;
use selforth::combinatorics::{binom, int, rat, rat_of};
use selforth::enumerator::{extremal_family, gleason_decompose, macwilliams, singly_even_family_with_shadow, GleasonForm};
use selforth::gf2code::{code_from_blocks, golay, BinaryCode, BlockList};
use selforth::lp::{self, FmOutcome};
use selforth::mendelsohn::certify_no_dual_weight;
use selforth::registry::CaseRegistry;
use selforth::verifier::{
    case_design, derive_lambda, elimination_72, replay_report, shadow_system, theorem2_with, SelfDual, ShadowConstraints,
};

struct Line {
    pass: bool,
    detail: String,
}

fn emit(n: usize, name: &str, budget: Duration, f: impl FnOnce() -> Line) -> bool {
    let t = Instant::now();
    let l = f();
    let dt = t.elapsed();
    let in_time = dt <= budget;
    let pass = l.pass && in_time;
    let mut detail = l.detail;
    if !in_time {
        detail = format!("{detail}; over budget {:.1}s", budget.as_secs_f64());
    }
    let line = format!(
        "criterion {n} {:<4} {name} [{:.2}s] {detail}\n",
        if pass { "PASS" } else { "FAIL" },
        dt.as_secs_f64()
    );
    let _ = std::io::stderr().write_all(line.as_bytes());
    pass
}

fn table_diffs(p: &selforth::enumerator::ParametricEnumerator, rows: &[(usize, &str)]) -> Vec<usize> {
    rows.iter().filter(|(w, s)| form_of(p, *w) != parse_form(s)).map(|(w, _)| *w).collect()
}

fn c1() -> Line {
    let reg = CaseRegistry::bundled();
    let bad = reg.lambda_mismatches();
    let spot = derive_lambda(6, 17).unwrap().1 == "21788133027489299328".parse::<BigInt>().unwrap();
    Line {
        pass: bad.is_empty() && spot && reg.rows.len() == 42,
        detail: format!("{} rows, {} mismatches", reg.rows.len(), bad.len()),
    }
}

fn c2() -> Line {
    let d = case_design(3, 7).unwrap();
    let t = Instant::now();
    let check = certify_no_dual_weight(&d, 10);
    let dt = t.elapsed();
    let want: Vec<BigRational> = [41076475i64, 1096595775, 2375199750, 834337350, 50284575, -151525].map(rat).to_vec();
    let ok = check.unique.as_ref() == Some(&want) && check.absent;
    Line {
        pass: ok && dt <= Duration::from_millis(10),
        detail: format!("unique solution {}, solve {:.2} ms", if ok { "matches" } else { "differs" }, dt.as_secs_f64() * 1e3),
    }
}

fn c3() -> Line {
    let chi: [[i64; 3]; 5] = [
        [-4831838127, -9663676335, -19327352751],
        [84557200770, 169114369410, 338228706690],
        [-958309695231, -1916624273151, -3833253428991],
        [7906469297760, 15812564565600, 31624755101280],
        [-50582253079512, -101181262793688, -202379282222040],
    ];
    let tuples: [[i64; 5]; 3] = [
        [30105, 2273040, 57830955, 549766080, 2075173947],
        [61497, 4534992, 115706955, 1099419840, 4150537083],
        [124281, 9058896, 231458955, 2198727360, 8301263355],
    ];
    let lin: [[i64; 6]; 5] = [
        [36, 25, 16, 9, 4, 1],
        [5640, 2450, 800, 114, -56, -30],
        [313060, 77385, 8976, -1223, 196, 433],
        [7582080, 811360, -43520, -5280, 1408, -4000],
        [86892960, 887656, -372096, 100584, -17248, 26536],
    ];
    let slopes = [-12, 66, -220, 495, -792].map(rat).to_vec();
    let mut bad = 0;
    for (j, l) in (33..=35).enumerate() {
        let e = elimination_72(l);
        for i in 0..5 {
            bad += usize::from(e.chi[i] != int(chi[i][j]));
            bad += usize::from(e.chi_coefficients[i] != lin[i].map(int).to_vec());
        }
        bad += usize::from(e.tuple != tuples[j].map(rat).to_vec());
        bad += usize::from(e.slopes != slopes);
        bad += usize::from(e.bound >= rat(4397342400));
    }
    Line {
        pass: bad == 0,
        detail: format!("15 chi values, 3 tuples, {bad} discrepancies"),
    }
}

fn c4() -> Line {
    let p = singly_even_family_with_shadow(120, 10, 12).unwrap();
    let rest: Vec<(usize, &str)> = C120.iter().copied().filter(|(w, _)| *w != 22 && *w != 24).collect();
    let mut code_bad = table_diffs(&p.code, &rest);
    code_bad.extend(table_diffs(&p.code, C120_PRINTED_22_24));
    let corrected_ok = table_diffs(&p.code, C120).is_empty();
    let shadow_bad = table_diffs(&p.shadow, S120);
    let cons = ShadowConstraints {
        code_weights: (10..=32).step_by(2).collect(),
        shadow_weights: (12..=36).step_by(4).collect(),
        absent: Vec::new(),
    };
    let (sys, obj) = shadow_system(120, 40, 10, 12, &cons).unwrap();
    let lam0: BigInt = "397450513031544".parse().unwrap();
    let fm_ok = match lp::fm_certify_below(&sys, &obj, &rat_of(&lam0), 20_000) {
        FmOutcome::Infeasible(f) => f.verify(&sys).is_ok(),
        _ => false,
    };
    let mut detail = format!(
        "C_120 rows differing {:?}, S_120 rows differing {:?}, FM bound on A_40 {}",
        code_bad,
        shadow_bad,
        if fm_ok { "certified" } else { "not certified" }
    );
    if !code_bad.is_empty() && corrected_ok {
        detail.push_str("; all C_120 rows agree once 26391755 is moved from A_22 to A_24");
    }
    Line {
        pass: code_bad.is_empty() && shadow_bad.is_empty() && fm_ok,
        detail,
    }
}

fn c5() -> Line {
    let mut bad = Vec::new();
    for (n, rows) in [(72, N72), (96, N96), (120, N120), (144, N144)] {
        let p = extremal_family(n, 12).unwrap();
        for w in table_diffs(&p, rows) {
            bad.push((n, w));
        }
    }
    Line {
        pass: bad.is_empty(),
        detail: format!("{} forms checked, differing {:?}", N72.len() + N96.len() + N120.len() + N144.len(), bad),
    }
}

fn report_dir() -> PathBuf {
    let p = std::env::temp_dir().join(format!("selforth-acceptance-{}", std::process::id()));
    let _ = fs::remove_dir_all(&p);
    p
}

fn load_reports(dir: &Path) -> Vec<Value> {
    let mut out: Vec<(String, Value)> = fs::read_dir(dir)
        .map(|it| {
            it.filter_map(|e| e.ok())
                .filter(|e| e.path().extension().is_some_and(|x| x == "json"))
                .map(|e| (e.file_name().to_string_lossy().into_owned(), serde_json::from_str(&fs::read_to_string(e.path()).unwrap()).unwrap()))
                .collect()
        })
        .unwrap_or_default();
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out.into_iter().map(|(_, v)| v).collect()
}

fn case_of(r: &Value) -> (usize, usize) {
    let g = |k: &str| r["case"][k].as_str().unwrap().parse().unwrap();
    (g("m"), g("k"))
}

fn c6(dir: &Path) -> Line {
    let out = Command::new(env!("CARGO_BIN_EXE_selforth"))
        .args(["verify", "--all", "--out", dir.to_str().unwrap()])
        .env_remove("SELFORTH_REPORT_DIR")
        .output()
        .expect("binary runs");
    let text = String::from_utf8_lossy(&out.stdout);
    let mismatched: Vec<String> = text
        .lines()
        .filter(|l| l.contains("MISMATCH"))
        .map(|l| l.split(" lambda").next().unwrap_or("").trim().to_string())
        .collect();
    let reports = load_reports(dir);
    let last = reports.iter().find(|r| case_of(r) == (6, 18));
    let last_unknown = last.is_some_and(|r| r["self_dual"] == "unknown");
    // every ℓ in 49..=58 for D_{120,40} carries a certificate that replays
    let r40 = reports.iter().find(|r| case_of(r) == (5, 10));
    let dims: BTreeSet<usize> = r40
        .map(|r| {
            r["steps"]
                .as_array()
                .unwrap()
                .iter()
                .filter(|s| s["kind"] == "dimension" && s["certificate"]["impossible"] == true)
                .map(|s| s["params"]["dim"].as_str().unwrap().parse().unwrap())
                .collect()
        })
        .unwrap_or_default();
    let steps_ok = (49..=58).all(|l| dims.contains(&l)) && r40.is_some_and(|r| replay_report(r).is_ok());
    Line {
        pass: out.status.code() == Some(0) && last_unknown && steps_ok && reports.len() == 42,
        detail: format!(
            "exit {:?}, {} reports, mismatches {:?}, (144,72) {}, l=49..58 certificates {}",
            out.status.code(),
            reports.len(),
            mismatched,
            if last_unknown { "unknown" } else { "not unknown" },
            if steps_ok { "replay" } else { "missing" }
        ),
    }
}

fn c7(dir: &Path) -> Line {
    let reports = load_reports(dir);
    let sd = |m: usize, k: usize| -> selforth::Result<SelfDual> {
        let r = reports
            .iter()
            .find(|r| case_of(r) == (m, k))
            .ok_or(selforth::Error::UnknownCase(m as u32, k as u32))?;
        SelfDual::parse(r["self_dual"].as_str().unwrap())
    };
    let extremal: BTreeSet<(usize, usize)> = reports
        .iter()
        .filter(|r| r["min_weights"]["extremal"] == true)
        .map(case_of)
        .filter(|&(m, k)| m >= 3 && k >= m + 2)
        .map(|(m, k)| (24 * m, 4 * k))
        .collect();
    let want: BTreeSet<(usize, usize)> = [(72, 24), (72, 32), (96, 36), (96, 44), (120, 56), (144, 68)].into();
    let mut failing = Vec::new();
    for m in 1..=6 {
        for k in m + 1..5 * m {
            if (m, k) == (6, 18) {
                continue;
            }
            match theorem2_with(m, k, sd) {
                Ok(c) if c.holds => {}
                _ => failing.push((24 * m, 4 * k)),
            }
        }
    }
    Line {
        pass: extremal == want && failing.is_empty(),
        detail: format!(
            "extremal triples {}, self-duality not shown for {:?}",
            if extremal == want { "match".to_string() } else { format!("{extremal:?}") },
            failing
        ),
    }
}

fn c8() -> Line {
    let octads = BlockList::new(24, golay().supports_of_weight(8).unwrap()).unwrap();
    let c = code_from_blocks(&octads);
    let w = c.weight_distribution().unwrap();
    let mut want = vec![int(0); 25];
    for (i, a) in [(0, 1), (8, 759), (12, 2576), (16, 759), (24, 1)] {
        want[i] = int(a);
    }
    let g = gleason_decompose(&w).unwrap();
    let ok = c.dimension() == 12
        && c.dual() == c
        && w.a == want
        && macwilliams(&w, 12).unwrap() == w
        && g.coeffs == vec![rat(1), rat(-42)]
        && derive_lambda(1, 2).unwrap().1 == int(1)
        && derive_lambda(1, 3).unwrap().1 == int(48);
    Line {
        pass: ok,
        detail: format!("dimension {}, A = {:?}", c.dimension(), [&w.a[8], &w.a[12], &w.a[16]]),
    }
}

fn c9(dir: &Path) -> Line {
    let mut runner = TestRunner::new(Config { cases: 100, ..Config::default() });
    let codes = (4usize..=14).prop_flat_map(|n| (Just(n), prop::collection::vec(prop::collection::vec(any::<bool>(), n), 1..=n)));
    let mw = runner.run(&codes, |(n, vecs)| {
        let c = BinaryCode::from_vectors(n, &vecs);
        let w = c.weight_distribution().unwrap();
        let b = macwilliams(&w, c.dimension()).unwrap();
        prop_assert_eq!(macwilliams(&b, n - c.dimension()).unwrap(), w);
        Ok(())
    });
    let mut runner = TestRunner::new(Config { cases: 100, ..Config::default() });
    let forms = (1usize..=18, prop::collection::vec(-1_000_000i64..1_000_000, 19));
    let gl = runner.run(&forms, |(j, seed)| {
        let n = 8 * j;
        let coeffs: Vec<BigRational> = (0..=n / 24).map(|i| rat(seed[i])).collect();
        let w = GleasonForm { n, coeffs: coeffs.clone() }.expand_integral().unwrap();
        prop_assert_eq!(gleason_decompose(&w).unwrap().coeffs, coeffs);
        Ok(())
    });
    let pascal = (1..=200i64).all(|n| (1..=n).all(|k| binom(n, k) == binom(n - 1, k - 1) + binom(n - 1, k)));
    let reports = load_reports(dir);
    let mut replayed = 0;
    let mut replay_fail = Vec::new();
    for r in &reports {
        match replay_report(r) {
            Ok(c) => replayed += c,
            Err(e) => replay_fail.push(format!("{:?}: {e}", case_of(r))),
        }
    }
    Line {
        pass: mw.is_ok() && gl.is_ok() && pascal && replay_fail.is_empty() && !reports.is_empty(),
        detail: format!(
            "macwilliams {}, gleason {}, pascal {}, {replayed} certificates replayed, failures {:?}",
            if mw.is_ok() { "ok" } else { "failed" },
            if gl.is_ok() { "ok" } else { "failed" },
            if pascal { "ok" } else { "failed" },
            replay_fail
        ),
    }
}

#[test]
fn acceptance() {
    let dir = report_dir();
    let s = Duration::from_secs;
    let results = [
        emit(1, "lambda reproduction", s(5), c1),
        emit(2, "unique solution for w=10", s(1), c2),
        emit(3, "length-72 elimination constants", s(1), c3),
        emit(4, "length-120 singly even tables", s(60), c4),
        emit(5, "parametric families", s(5), c5),
        emit(6, "verdict reproduction", s(900), || c6(&dir)),
        emit(7, "extremal triples and complements", s(900), || c7(&dir)),
        emit(8, "Golay oracle", s(1), c8),
        emit(9, "property suites and replay", s(30), || c9(&dir)),
    ];
    let passed = results.iter().filter(|p| **p).count();
    let _ = std::io::stderr().write_all(format!("acceptance: {passed}/9 PASS\n").as_bytes());
    let _ = fs::remove_dir_all(&dir);
}
