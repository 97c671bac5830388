//! The case table: parameters plus expected verdicts, and the comparison
//! rule used by `verify`.

use std::collections::BTreeSet;

use crate::combinatorics::{parse_int, Integer};
use crate::error::{Error, Result};
use crate::verifier::{derive_lambda, MinWeights, SelfDual, VerificationReport};

pub const TABLE1: &str = include_str!("../data/table1.txt");

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpectedMinWeights {
    pub extremal: bool,
    pub weights: Vec<usize>,
    pub star: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CaseRow {
    pub m: usize,
    pub k: usize,
    pub lambda: Integer,
    pub self_dual: Option<SelfDual>,
    /// None for "--".
    pub min_weights: Option<ExpectedMinWeights>,
    pub reference: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CaseRegistry {
    pub rows: Vec<CaseRow>,
}

fn parse_min_weights(s: &str, m: usize) -> Result<Option<ExpectedMinWeights>> {
    if s == "--" {
        return Ok(None);
    }
    let (body, star) = match s.strip_suffix('*') {
        Some(b) => (b, true),
        None => (s, false),
    };
    if body == "extremal" {
        return Ok(Some(ExpectedMinWeights {
            extremal: true,
            weights: vec![4 * m + 4],
            star,
        }));
    }
    let bad = || Error::Parse(format!("bad min-weight entry {s:?}"));
    let mut set = BTreeSet::new();
    for part in body.split(',') {
        if let Some((a, b)) = part.split_once('-') {
            let a: usize = a.parse().map_err(|_| bad())?;
            let b: usize = b.parse().map_err(|_| bad())?;
            if a % 4 != 0 || b % 4 != 0 || a > b {
                return Err(bad());
            }
            set.extend((a..=b).step_by(4));
        } else {
            set.insert(part.parse::<usize>().map_err(|_| bad())?);
        }
    }
    Ok(Some(ExpectedMinWeights {
        extremal: false,
        weights: set.into_iter().collect(),
        star,
    }))
}

impl CaseRegistry {
    pub fn parse(text: &str) -> Result<Self> {
        let mut rows = Vec::new();
        for (no, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let f: Vec<&str> = line.split_whitespace().collect();
            let bad = |what: &str| Error::Parse(format!("line {}: {what}", no + 1));
            if f.len() < 3 || f.len() > 6 {
                return Err(bad("expected m k lambda [self_dual] [min_weights] [ref]"));
            }
            let m: usize = f[0].parse().map_err(|_| bad("bad m"))?;
            let k: usize = f[1].parse().map_err(|_| bad("bad k"))?;
            let lambda = parse_int(f[2]).map_err(|_| bad("bad lambda"))?;
            let self_dual = f.get(3).map(|s| SelfDual::parse(s)).transpose()?;
            let min_weights = match f.get(4) {
                Some(s) => parse_min_weights(s, m)?,
                None => None,
            };
            rows.push(CaseRow {
                m,
                k,
                lambda,
                self_dual,
                min_weights,
                reference: f.get(5).map(|s| s.to_string()),
            });
        }
        Ok(CaseRegistry { rows })
    }

    pub fn bundled() -> Self {
        Self::parse(TABLE1).expect("bundled table parses")
    }

    pub fn find(&self, m: usize, k: usize) -> Option<&CaseRow> {
        self.rows.iter().find(|r| r.m == m && r.k == k)
    }

    /// Rows whose λ does not re-derive from the extremal enumerator.
    pub fn lambda_mismatches(&self) -> Vec<(usize, usize)> {
        self.rows
            .iter()
            .filter(|r| derive_lambda(r.m, r.k).map(|(_, l)| l != r.lambda).unwrap_or(true))
            .map(|r| (r.m, r.k))
            .collect()
    }
}

/// Differences between a report and a row, empty when they agree.
///
/// The self-dual verdict must match exactly. Minimum-weight sets must
/// match exactly on rows without a reference; on rows with one, the
/// certified set only has to contain the listed weights, and the star is
/// not compared.
pub fn compare(row: &CaseRow, report: &VerificationReport) -> Vec<String> {
    let mut out = Vec::new();
    if report.lambda != row.lambda {
        out.push(format!("lambda {} != {}", report.lambda, row.lambda));
    }
    if let Some(sd) = row.self_dual {
        if sd != report.self_dual {
            out.push(format!("self_dual {} != {}", report.self_dual.as_str(), sd.as_str()));
        }
    }
    if row.self_dual.is_none() {
        return out;
    }
    match (&row.min_weights, &report.min_weights) {
        (None, MinWeights::Undetermined) => {}
        (None, got) => out.push(format!("min_weights {} != --", got.render())),
        (Some(_), MinWeights::Undetermined) => out.push("min_weights undetermined".into()),
        (Some(exp), got) => {
            let have = got.weights(row.m);
            if row.reference.is_some() {
                let missing: Vec<usize> = exp.weights.iter().copied().filter(|w| !have.contains(w)).collect();
                if !missing.is_empty() {
                    out.push(format!("min_weights {} lacks {:?}", got.render(), missing));
                }
            } else if have != exp.weights || got.star() != exp.star {
                let s = if exp.star { "*" } else { "" };
                let want: Vec<String> = exp.weights.iter().map(|w| w.to_string()).collect();
                out.push(format!("min_weights {} != {}{}", got.render(), want.join(","), s));
            }
        }
    }
    out
}
