//! Case driver: λ derivation, the Lemma-style weight sweep, the dimension
//! sweep with the shadow fallback, the minimum-weight analysis, and the
//! complement argument.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::affine::Affine;
use crate::combinatorics::{
    bit_length, design_params, fmt_rat, lambda_from_block_count, parse_rat, pow2, rat, rat_of, DesignParams,
    Integer, Rational,
};
use crate::enumerator::{
    doubly_even_subcode_family_excluding, extremal_family, macwilliams_parametric, singly_even_family_with_shadow,
};
use crate::error::{Error, Result};
use crate::lp::{self, Claim, Constraint, Farkas, FmOutcome, LpOutcome, System};
use crate::mendelsohn::{self, certify_weights, AllOneReason, Certificate, DualWeightCheck};

const SHADOW_FM_ROWS: usize = 4_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    DoublyEven,
    Even,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodeHypothesis {
    pub n: usize,
    pub dim: usize,
    pub parity: Parity,
    pub code_min_weight: usize,
    pub dual_min_weight: usize,
    pub contains_all_one: bool,
    /// Weights certified absent from the dual (hence from the code as well).
    pub absent: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SelfDual {
    Yes,
    YesStar,
    Unknown,
}

impl SelfDual {
    pub fn as_str(&self) -> &'static str {
        match self {
            SelfDual::Yes => "yes",
            SelfDual::YesStar => "yes*",
            SelfDual::Unknown => "unknown",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "yes" => Ok(SelfDual::Yes),
            "yes*" => Ok(SelfDual::YesStar),
            "unknown" | "?" => Ok(SelfDual::Unknown),
            _ => Err(Error::Parse(format!("bad self-dual verdict {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MinWeights {
    Extremal { star: bool },
    Set { weights: Vec<usize>, star: bool },
    Undetermined,
}

impl MinWeights {
    pub fn weights(&self, m: usize) -> Vec<usize> {
        match self {
            MinWeights::Extremal { .. } => vec![4 * m + 4],
            MinWeights::Set { weights, .. } => weights.clone(),
            MinWeights::Undetermined => Vec::new(),
        }
    }

    pub fn star(&self) -> bool {
        match self {
            MinWeights::Extremal { star } | MinWeights::Set { star, .. } => *star,
            MinWeights::Undetermined => false,
        }
    }

    pub fn render(&self) -> String {
        let s = |b: &bool| if *b { "*" } else { "" };
        match self {
            MinWeights::Extremal { star } => format!("extremal{}", s(star)),
            MinWeights::Set { weights, star } => {
                let parts: Vec<String> = weights.iter().map(|w| w.to_string()).collect();
                format!("{}{}", parts.join(","), s(star))
            }
            MinWeights::Undetermined => "--".into(),
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            MinWeights::Extremal { star } => json!({ "extremal": true, "star": star, "weights": Value::Null }),
            MinWeights::Set { weights, star } => json!({
                "extremal": false,
                "star": star,
                "weights": weights.iter().map(|w| w.to_string()).collect::<Vec<_>>(),
            }),
            MinWeights::Undetermined => Value::Null,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Step {
    pub kind: String,
    pub params: Value,
    pub certificate: Value,
}

impl Step {
    fn to_json(&self) -> Value {
        json!({ "kind": self.kind, "params": self.params, "certificate": self.certificate })
    }
}

#[derive(Debug, Clone)]
pub struct VerificationReport {
    pub m: usize,
    pub k: usize,
    pub lambda: Integer,
    pub self_dual: SelfDual,
    pub min_weights: MinWeights,
    pub steps: Vec<Step>,
    pub derived_constants: BTreeMap<String, Value>,
    pub conditional: Option<Value>,
}

impl VerificationReport {
    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "case": {
                "m": self.m.to_string(),
                "k": self.k.to_string(),
                "n": (24 * self.m).to_string(),
                "block_size": (4 * self.k).to_string(),
            },
            "lambda": self.lambda.to_string(),
            "self_dual": self.self_dual.as_str(),
            "min_weights": self.min_weights.to_json(),
            "steps": self.steps.iter().map(Step::to_json).collect::<Vec<_>>(),
            "derived_constants": Value::Object(self.derived_constants.clone().into_iter().collect()),
        });
        if let Some(c) = &self.conditional {
            v["conditional"] = c.clone();
        }
        v
    }
}

fn strs<T: ToString>(xs: &[T]) -> Vec<String> {
    xs.iter().map(|x| x.to_string()).collect()
}

fn farkas_json(f: &Farkas) -> Value {
    json!({
        "claim": match f.claim { Claim::Infeasible => "infeasible", Claim::Below => "below", Claim::AtMost => "at-most" },
        "multipliers": f.multipliers.iter().map(fmt_rat).collect::<Vec<_>>(),
        "objective_weight": fmt_rat(&f.objective_weight),
        "threshold": fmt_rat(&f.threshold),
    })
}

fn farkas_from_json(v: &Value, objective: Option<Affine>) -> Option<Farkas> {
    let claim = match v["claim"].as_str()? {
        "infeasible" => Claim::Infeasible,
        "below" => Claim::Below,
        "at-most" => Claim::AtMost,
        _ => return None,
    };
    let multipliers = v["multipliers"]
        .as_array()?
        .iter()
        .map(|x| x.as_str().and_then(|s| parse_rat(s).ok()))
        .collect::<Option<Vec<_>>>()?;
    let objective = if claim == Claim::Infeasible { None } else { objective };
    Some(Farkas {
        claim,
        multipliers,
        objective,
        objective_weight: parse_rat(v["objective_weight"].as_str()?).ok()?,
        threshold: parse_rat(v["threshold"].as_str()?).ok()?,
    })
}

// ---------------------------------------------------------------------------
// λ and parameters

pub fn case_in_range(m: usize, k: usize) -> bool {
    (1..=6).contains(&m) && k > m && k <= 3 * m
}

/// λ of D_{24m,4k} from the block count of the extremal enumerator.
pub fn derive_lambda(m: usize, k: usize) -> Result<(Integer, Integer)> {
    let n = 24 * m;
    let fam = extremal_family(n, 4 * m + 4)?;
    let w = fam.concrete().ok_or(Error::Overconstrained)?;
    let b = w.a[4 * k].clone();
    let lam = lambda_from_block_count(n as u32, 4 * k as u32, &b)?;
    Ok((b, lam))
}

pub fn case_design(m: usize, k: usize) -> Result<DesignParams> {
    if !(1..=6).contains(&m) || k <= m || k >= 6 * m {
        return Err(Error::UnknownCase(m as u32, k as u32));
    }
    let (_, lam) = derive_lambda(m, k)?;
    design_params(5, 24 * m as u32, 4 * k as u32, lam)
}

/// v − ⌈log2(λ_0 + 1)⌉.
pub fn bound_dual_dimension(d: &DesignParams) -> usize {
    d.v as usize - bit_length(d.b()) as usize
}

// ---------------------------------------------------------------------------
// dimension sweep

/// Constraint system for a doubly even code D of dimension ℓ with 1 ∈ D,
/// D ⊆ D^⊥, and the hypothesis' weight restrictions. Variables are the
/// symmetric ansatz parameters; the objective is A_{target}.
pub fn dimension_system(h: &CodeHypothesis, target: usize) -> (System, Affine) {
    let n = h.n;
    let fam = doubly_even_subcode_family_excluding(n, h.dim, h.code_min_weight, &h.absent);
    let dual = macwilliams_parametric(&fam, h.dim);
    let np = fam.nparams();
    let mut sys = System::new(np);
    for w in 1..=n / 2 {
        let f = fam.coefficient(w);
        if f.is_zero() {
            continue;
        }
        if h.absent.contains(&w) {
            sys.push(Constraint::eq(f.clone(), format!("A_{w} = 0")));
        } else {
            sys.push(Constraint::ge(f.clone(), format!("A_{w} >= 0")));
        }
    }
    for j in 1..=n {
        let f = dual.coefficient(j);
        if f.is_zero() {
            continue;
        }
        if j < h.dual_min_weight || h.absent.contains(&j) {
            sys.push(Constraint::eq(f.clone(), format!("B_{j} = 0")));
        } else {
            sys.push(Constraint::ge(f.clone(), format!("B_{j} >= 0")));
        }
    }
    (sys, fam.coefficient(target).clone())
}

#[derive(Debug, Clone)]
pub enum DimensionVerdict {
    Impossible(Farkas),
    Possible(Vec<Rational>),
}

/// Can a code as in `h` contain at least λ_0 words of weight `target`?
pub fn rule_out_intermediate_dimension(h: &CodeHypothesis, target: usize, lambda0: &Integer) -> DimensionVerdict {
    assert!(h.contains_all_one && h.parity == Parity::DoublyEven);
    let (sys, obj) = dimension_system(h, target);
    match lp::certify_below(&sys, &obj, &rat_of(lambda0)) {
        Ok(f) => DimensionVerdict::Impossible(f),
        Err(x) => DimensionVerdict::Possible(x),
    }
}

fn hypothesis_json(h: &CodeHypothesis) -> Value {
    json!({
        "n": h.n.to_string(),
        "dim": h.dim.to_string(),
        "code_min": h.code_min_weight.to_string(),
        "dual_min": h.dual_min_weight.to_string(),
        "absent": strs(&h.absent),
    })
}

fn hypothesis_from_json(p: &Value) -> Option<CodeHypothesis> {
    let u = |k: &str| p[k].as_str().and_then(|s| s.parse::<usize>().ok());
    Some(CodeHypothesis {
        n: u("n")?,
        dim: u("dim")?,
        parity: Parity::DoublyEven,
        code_min_weight: u("code_min")?,
        dual_min_weight: u("dual_min")?,
        contains_all_one: true,
        absent: p["absent"]
            .as_array()?
            .iter()
            .map(|x| x.as_str().and_then(|s| s.parse().ok()))
            .collect::<Option<Vec<_>>>()?,
    })
}

// ---------------------------------------------------------------------------
// shadow step

/// Which coefficient constraints enter the shadow system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShadowConstraints {
    /// Code weights w with A_w >= 0 imposed.
    pub code_weights: Vec<usize>,
    /// Shadow weights w with B_w >= 0 imposed.
    pub shadow_weights: Vec<usize>,
    /// Weights forced to vanish in both the code and its shadow.
    pub absent: Vec<usize>,
}

impl ShadowConstraints {
    /// Every weight with a nonzero coefficient.
    pub fn all(n: usize, absent: &[usize]) -> Self {
        ShadowConstraints {
            code_weights: (1..=n).collect(),
            shadow_weights: (0..=n).collect(),
            absent: absent.to_vec(),
        }
    }
}

pub fn shadow_system(
    n: usize,
    target: usize,
    code_min: usize,
    shadow_min: usize,
    cons: &ShadowConstraints,
) -> Result<(System, Affine)> {
    let pair = singly_even_family_with_shadow(n, code_min, shadow_min)?;
    let np = pair.code.nparams();
    let mut sys = System::new(np);
    for &w in &cons.code_weights {
        let f = pair.code.coefficient(w);
        if f.is_constant() && !f.constant.is_negative() && !cons.absent.contains(&w) {
            continue;
        }
        if cons.absent.contains(&w) {
            sys.push(Constraint::eq(f.clone(), format!("A_{w} = 0")));
        } else {
            sys.push(Constraint::ge(f.clone(), format!("A_{w} >= 0")));
        }
    }
    for &w in &cons.shadow_weights {
        let f = pair.shadow.coefficient(w);
        if f.is_constant() && !f.constant.is_negative() && !cons.absent.contains(&w) {
            continue;
        }
        if cons.absent.contains(&w) {
            sys.push(Constraint::eq(f.clone(), format!("B_{w} = 0")));
        } else {
            sys.push(Constraint::ge(f.clone(), format!("B_{w} >= 0")));
        }
    }
    Ok((sys, pair.code.coefficient(target).clone()))
}

#[derive(Debug, Clone)]
pub enum ShadowVerdict {
    Impossible { certificate: Farkas, method: &'static str },
    Possible(Vec<Rational>),
}

/// Can a singly even self-dual code with the given minimum weights and
/// shadow minimum weight have at least λ_0 words of weight `target`?
pub fn rule_out_half_dimension_via_shadow(
    n: usize,
    target: usize,
    lambda0: &Integer,
    code_min: usize,
    shadow_min: usize,
    cons: &ShadowConstraints,
) -> Result<ShadowVerdict> {
    if lambda0.is_zero() {
        return Ok(ShadowVerdict::Possible(Vec::new()));
    }
    let (sys, obj) = shadow_system(n, target, code_min, shadow_min, cons)?;
    let thr = rat_of(lambda0);
    if let FmOutcome::Infeasible(f) = lp::fm_certify_below(&sys, &obj, &thr, SHADOW_FM_ROWS) {
        return Ok(ShadowVerdict::Impossible {
            certificate: f,
            method: "fourier-motzkin",
        });
    }
    Ok(match lp::certify_below(&sys, &obj, &thr) {
        Ok(f) => ShadowVerdict::Impossible {
            certificate: f,
            method: "simplex",
        },
        Err(x) => ShadowVerdict::Possible(x),
    })
}

fn shadow_mins(dual_min: usize, n: usize) -> (usize, usize) {
    let cmin = dual_min + dual_min % 2;
    let mut smin = dual_min;
    while smin % 4 != (n / 2) % 4 {
        smin += 1;
    }
    (cmin, smin)
}

// ---------------------------------------------------------------------------
// minimum weights

pub fn min_weight_system(n: usize, d: usize, target: usize, lambda0: &Integer, absent: &[usize]) -> Result<(System, Affine)> {
    let fam = extremal_family(n, d)?;
    let np = fam.nparams();
    let mut sys = System::new(np);
    for w in 1..=n {
        let f = fam.coefficient(w);
        if f.is_zero() {
            continue;
        }
        if absent.contains(&w) {
            sys.push(Constraint::eq(f.clone(), format!("A_{w} = 0")));
        } else {
            sys.push(Constraint::ge(f.clone(), format!("A_{w} >= 0")));
        }
    }
    let lam = Affine::constant(np, rat_of(lambda0));
    sys.push(Constraint::ge(fam.coefficient(target) - &lam, format!("A_{target} >= lambda_0")));
    Ok((sys, fam.coefficient(d).clone()))
}

#[derive(Debug, Clone)]
pub enum MinWeightVerdict {
    /// Certified absent from the dual by the intersection equations.
    ExcludedByDesign,
    /// A_d > 0 is incompatible with the enumerator constraints.
    Excluded(Farkas),
    Possible(Vec<Rational>),
}

pub fn check_min_weight(n: usize, d: usize, target: usize, lambda0: &Integer, absent: &[usize]) -> Result<MinWeightVerdict> {
    if absent.contains(&d) {
        return Ok(MinWeightVerdict::ExcludedByDesign);
    }
    let (sys, obj) = min_weight_system(n, d, target, lambda0, absent)?;
    Ok(match lp::maximize(&sys, &obj) {
        LpOutcome::Optimal { value, point, certificate } => {
            if value.is_positive() {
                MinWeightVerdict::Possible(point)
            } else {
                MinWeightVerdict::Excluded(certificate)
            }
        }
        LpOutcome::Unbounded { point, ray } => {
            let mut x = point;
            // walk along the ray until A_d is positive
            let step = obj.eval(&x);
            let slope: Rational = obj.coeffs.iter().zip(&ray).map(|(a, r)| a * r).sum();
            let t = if step.is_positive() { Rational::zero() } else { (-step) / &slope + Rational::one() };
            for (xi, ri) in x.iter_mut().zip(&ray) {
                *xi += ri * &t;
            }
            MinWeightVerdict::Possible(x)
        }
        LpOutcome::Infeasible(f) => MinWeightVerdict::Excluded(f),
    })
}

pub fn determine_possible_min_weights(
    m: usize,
    k: usize,
    lambda0: &Integer,
    absent: &[usize],
) -> Result<(MinWeights, Vec<(usize, MinWeightVerdict)>)> {
    let n = 24 * m;
    let ds: Vec<usize> = (1..=m + 1).map(|i| 4 * i).collect();
    let verdicts: Vec<(usize, MinWeightVerdict)> = ds
        .par_iter()
        .map(|&d| check_min_weight(n, d, 4 * k, lambda0, absent).map(|v| (d, v)))
        .collect::<Result<_>>()?;
    let possible: Vec<usize> = verdicts
        .iter()
        .filter(|(_, v)| matches!(v, MinWeightVerdict::Possible(_)))
        .map(|(d, _)| *d)
        .collect();
    let star = verdicts.iter().any(|(_, v)| matches!(v, MinWeightVerdict::Excluded(_)));
    let mw = if possible == vec![4 * m + 4] {
        MinWeights::Extremal { star }
    } else {
        MinWeights::Set { weights: possible, star }
    };
    Ok((mw, verdicts))
}

// ---------------------------------------------------------------------------
// derived constants for the length-72 elimination

/// χ_{2i,ℓ} for i = 1..=5 and the tuple (α_ℓ, .., ε_ℓ) with
/// b = α − 12a, c = β + 66a, d = γ − 220a, e = δ + 495a, f = ε − 792a.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Elimination72 {
    pub chi: Vec<Integer>,
    /// Linear parts of 2^ℓ B_{2i} / 2^6 in (a..f).
    pub chi_coefficients: Vec<Vec<Integer>>,
    pub tuple: Vec<Rational>,
    pub slopes: Vec<Rational>,
    /// Supremum of A_28 over a >= 0, b..f as eliminated, b >= 0.
    pub bound: Rational,
}

impl Elimination72 {
    /// "b = 30105 - 12a" and so on.
    pub fn relations(&self) -> Vec<String> {
        ["b", "c", "d", "e", "f"]
            .iter()
            .zip(self.tuple.iter().zip(&self.slopes))
            .map(|(name, (t, s))| {
                let sign = if s.is_negative() { '-' } else { '+' };
                format!("{name} = {} {sign} {}a", fmt_rat(t), fmt_rat(&s.abs()))
            })
            .collect()
    }
}

pub fn elimination_72(l: usize) -> Elimination72 {
    let fam = doubly_even_subcode_family_excluding(72, l, 12, &[]);
    let dual = macwilliams_parametric(&fam, l);
    let scale = rat_of(&pow2(l as u32)) / rat(64);
    let mut chi = Vec::new();
    let mut coeffs = Vec::new();
    for i in 1..=5 {
        let f = dual.coefficient(2 * i).scale(&scale);
        let (c, lin) = f.integer_coeffs().expect("integral after scaling");
        chi.push(c);
        coeffs.push(lin);
    }
    // solve B_2..B_10 = 0 for b..f in terms of a
    let rows: Vec<Vec<Rational>> = (1..=5).map(|i| dual.coefficient(2 * i).coeffs[1..].to_vec()).collect();
    let mut tuple = Vec::new();
    let mut slopes = Vec::new();
    let rhs0: Vec<Rational> = (1..=5).map(|i| -dual.coefficient(2 * i).constant.clone()).collect();
    let rhs1: Vec<Rational> = (1..=5).map(|i| -dual.coefficient(2 * i).coeffs[0].clone()).collect();
    let s0 = match crate::linalg::solve(&rows, &rhs0, 5) {
        crate::linalg::LinearSolution::Solved { particular, .. } => particular,
        _ => panic!("elimination system is singular"),
    };
    let s1 = match crate::linalg::solve(&rows, &rhs1, 5) {
        crate::linalg::LinearSolution::Solved { particular, .. } => particular,
        _ => panic!("elimination system is singular"),
    };
    tuple.extend(s0);
    slopes.extend(s1);
    // e = δ + 495a maximised subject to b = α − 12a >= 0
    let amax = &tuple[0] / -&slopes[0];
    let bound = &tuple[3] + &slopes[3] * &amax;
    Elimination72 {
        chi,
        chi_coefficients: coeffs,
        tuple,
        slopes,
        bound,
    }
}

// ---------------------------------------------------------------------------
// case driver

#[derive(Debug, Clone)]
pub struct SweepResult {
    pub proven: bool,
    pub steps: Vec<Step>,
    pub maxima: BTreeMap<String, Value>,
}

/// Rule out every dimension from ⌈log2(λ_0+1)⌉ to n/2 − 1 for C(D), using
/// the shadow pair at n/2 − 1 when the first step does not suffice.
pub fn dimension_sweep(n: usize, target: usize, lambda0: &Integer, dual_min: usize, absent: &[usize]) -> SweepResult {
    let code_min = dual_min.div_ceil(4) * 4;
    let lo = bit_length(lambda0) as usize;
    let hi = n / 2 - 1;
    let absent4: Vec<usize> = absent.to_vec();
    let outcomes: Vec<(usize, CodeHypothesis, DimensionVerdict)> = (lo..=hi)
        .into_par_iter()
        .map(|l| {
            let h = CodeHypothesis {
                n,
                dim: l,
                parity: Parity::DoublyEven,
                code_min_weight: code_min,
                dual_min_weight: dual_min,
                contains_all_one: true,
                absent: absent4.clone(),
            };
            let v = rule_out_intermediate_dimension(&h, target, lambda0);
            (l, h, v)
        })
        .collect();
    let mut steps = Vec::new();
    let mut proven = true;
    let maxima = BTreeMap::new();
    for (l, h, v) in outcomes {
        let mut params = hypothesis_json(&h);
        params["target"] = json!(target.to_string());
        params["lambda0"] = json!(lambda0.to_string());
        match v {
            DimensionVerdict::Impossible(f) => steps.push(Step {
                kind: "dimension".into(),
                params,
                certificate: json!({ "impossible": true, "farkas": farkas_json(&f) }),
            }),
            DimensionVerdict::Possible(x) => {
                steps.push(Step {
                    kind: "dimension".into(),
                    params,
                    certificate: json!({ "impossible": false, "witness": x.iter().map(fmt_rat).collect::<Vec<_>>() }),
                });
                if l != hi {
                    proven = false;
                    continue;
                }
                let (cmin, smin) = shadow_mins(dual_min, n);
                let cons = ShadowConstraints::all(n, absent);
                let sv = rule_out_half_dimension_via_shadow(n, target, lambda0, cmin, smin, &cons);
                let sparams = json!({
                    "n": n.to_string(),
                    "target": target.to_string(),
                    "lambda0": lambda0.to_string(),
                    "code_min": cmin.to_string(),
                    "shadow_min": smin.to_string(),
                    "absent": strs(absent),
                });
                match sv {
                    Ok(ShadowVerdict::Impossible { certificate, method }) => steps.push(Step {
                        kind: "shadow".into(),
                        params: sparams,
                        certificate: json!({ "impossible": true, "method": method, "farkas": farkas_json(&certificate) }),
                    }),
                    Ok(ShadowVerdict::Possible(x)) => {
                        proven = false;
                        steps.push(Step {
                            kind: "shadow".into(),
                            params: sparams,
                            certificate: json!({ "impossible": false, "witness": x.iter().map(fmt_rat).collect::<Vec<_>>() }),
                        });
                    }
                    Err(e) => {
                        proven = false;
                        steps.push(Step {
                            kind: "shadow".into(),
                            params: sparams,
                            certificate: json!({ "impossible": false, "error": e.to_string() }),
                        });
                    }
                }
            }
        }
    }
    SweepResult { proven, steps, maxima }
}

fn weight_step(d: &DesignParams, c: &DualWeightCheck) -> Step {
    Step {
        kind: "dual-weight".into(),
        params: json!({
            "v": d.v.to_string(),
            "k": d.k.to_string(),
            "t": d.t.to_string(),
            "lambda": d.lambda.to_string(),
            "w": c.w.to_string(),
        }),
        certificate: c.to_json(),
    }
}

pub fn verify_case(m: usize, k: usize) -> Result<VerificationReport> {
    if !case_in_range(m, k) {
        return Err(Error::UnknownCase(m as u32, k as u32));
    }
    let n = 24 * m;
    let target = 4 * k;
    let (blocks, lambda) = derive_lambda(m, k)?;
    let d = design_params(5, n as u32, target as u32, lambda.clone())?;
    let mut steps = vec![Step {
        kind: "lambda".into(),
        params: json!({ "n": n.to_string(), "d": (4 * m + 4).to_string(), "block_size": target.to_string() }),
        certificate: json!({
            "block_count": blocks.to_string(),
            "lambda": lambda.to_string(),
            "lambda_index": strs(&d.lambda_index),
        }),
    }];
    let mut derived = BTreeMap::new();

    let weights: Vec<u32> = (1..n as u32).collect();
    let checks = certify_weights(&d, &weights);
    for c in &checks {
        steps.push(weight_step(&d, c));
    }
    let absent: Vec<usize> = checks.iter().filter(|c| c.absent).map(|c| c.w as usize).collect();
    let lemma_sd = checks.iter().filter(|c| c.w % 4 != 0).all(|c| c.absent);
    let all_odd_absent = checks.iter().filter(|c| c.w % 2 == 1).all(|c| c.absent);
    let dual_min = checks.iter().find(|c| !c.absent).map(|c| c.w as usize).unwrap_or(n);
    derived.insert("dual_min_weight_bound".into(), json!(dual_min.to_string()));
    derived.insert("dual_dimension_bound".into(), json!(bound_dual_dimension(&d).to_string()));

    let mut conditional = None;
    let self_dual = if lemma_sd {
        SelfDual::Yes
    } else if !all_odd_absent {
        SelfDual::Unknown
    } else {
        let sweep = dimension_sweep(n, target, d.b(), dual_min, &absent);
        steps.extend(sweep.steps);
        if n == 72 {
            for l in bit_length(d.b()) as usize..n / 2 {
                let e = elimination_72(l);
                derived.insert(
                    format!("elimination_l{l}"),
                    json!({
                        "chi": strs(&e.chi),
                        "tuple": e.tuple.iter().map(fmt_rat).collect::<Vec<_>>(),
                        "slopes": e.slopes.iter().map(fmt_rat).collect::<Vec<_>>(),
                        "bound": fmt_rat(&e.bound),
                        "relations": e.relations(),
                    }),
                );
            }
        }
        if sweep.proven {
            SelfDual::YesStar
        } else {
            if dual_min < 10 {
                // the sweep again under the extra assumption of no dual words below weight 10
                let mut assumed: Vec<usize> = absent.clone();
                assumed.extend((1..10).filter(|w| !absent.contains(w)));
                assumed.sort_unstable();
                let cond = dimension_sweep(n, target, d.b(), 10, &assumed);
                conditional = Some(json!({
                    "assumption": "dual minimum weight >= 10",
                    "self_dual": if cond.proven { "yes*" } else { "unknown" },
                    "steps": cond.steps.iter().map(Step::to_json).collect::<Vec<_>>(),
                }));
            }
            SelfDual::Unknown
        }
    };

    let min_weights = if self_dual == SelfDual::Unknown {
        MinWeights::Undetermined
    } else {
        let (mw, verdicts) = determine_possible_min_weights(m, k, d.b(), &absent)?;
        for (dw, v) in verdicts {
            let params = json!({
                "n": n.to_string(),
                "d": dw.to_string(),
                "target": target.to_string(),
                "lambda0": d.b().to_string(),
                "absent": strs(&absent),
            });
            let certificate = match v {
                MinWeightVerdict::ExcludedByDesign => json!({ "possible": false, "by": "dual-weight" }),
                MinWeightVerdict::Excluded(f) => json!({ "possible": false, "by": "enumerator", "farkas": farkas_json(&f) }),
                MinWeightVerdict::Possible(x) => json!({
                    "possible": true,
                    "witness": x.iter().map(fmt_rat).collect::<Vec<_>>(),
                }),
            };
            steps.push(Step {
                kind: "min-weight".into(),
                params,
                certificate,
            });
        }
        mw
    };

    Ok(VerificationReport {
        m,
        k,
        lambda,
        self_dual,
        min_weights,
        steps,
        derived_constants: derived,
        conditional,
    })
}

// ---------------------------------------------------------------------------
// the complement argument

#[derive(Debug, Clone)]
pub struct Theorem2Check {
    pub holds: bool,
    pub via: String,
}

/// C(D_{24m,4k}) is self-dual, directly for k <= 3m and through the
/// complementary design for k > 3m.
pub fn verify_theorem2(m: usize, k: usize) -> Result<Theorem2Check> {
    theorem2_with(m, k, |m, k| verify_case(m, k).map(|r| r.self_dual))
}

/// As `verify_theorem2`, taking self-dual verdicts for k <= 3m from `self_dual`.
pub fn theorem2_with(
    m: usize,
    k: usize,
    self_dual: impl Fn(usize, usize) -> Result<SelfDual>,
) -> Result<Theorem2Check> {
    if !(1..=6).contains(&m) || k <= m || k >= 5 * m || (m, k) == (6, 18) {
        return Err(Error::UnknownCase(m as u32, k as u32));
    }
    if k <= 3 * m {
        let sd = self_dual(m, k)?;
        return Ok(Theorem2Check {
            holds: sd != SelfDual::Unknown,
            via: format!("self-dual ({})", sd.as_str()),
        });
    }
    let kc = 6 * m - k;
    if self_dual(m, kc)? == SelfDual::Unknown {
        return Ok(Theorem2Check {
            holds: false,
            via: format!("C(D_{{{},{}}}) not certified self-dual", 24 * m, 4 * kc),
        });
    }
    let d = case_design(m, kc)?;
    let (ok, why) = mendelsohn::certify_all_one_in_complement_code(&d);
    let via = match why {
        AllOneReason::OddReplication(r) => format!("complement of D_{{{},{}}}: odd r = {r}", 24 * m, 4 * kc),
        AllOneReason::NoOddDualWeights(_) => {
            format!("complement of D_{{{},{}}}: no odd dual weights", 24 * m, 4 * kc)
        }
        AllOneReason::NotShown(_) => "all-one vector not shown in the complementary code".into(),
    };
    Ok(Theorem2Check { holds: ok, via })
}

// ---------------------------------------------------------------------------
// replay

/// Re-verify every certificate in a serialized report. Returns the number
/// of certificates checked.
pub fn replay_report(report: &Value) -> std::result::Result<usize, String> {
    let steps = report["steps"].as_array().ok_or("missing steps")?;
    let mut checked = 0;
    for (i, s) in steps.iter().enumerate() {
        let fail = |why: &str| Err(format!("step {i} ({}): {why}", s["kind"]));
        let p = &s["params"];
        let c = &s["certificate"];
        let u32_of = |k: &str| p[k].as_str().and_then(|x| x.parse::<u32>().ok());
        let usize_of = |k: &str| p[k].as_str().and_then(|x| x.parse::<usize>().ok());
        match s["kind"].as_str() {
            Some("lambda") => {
                let n = usize_of("n").ok_or("bad n")?;
                let bs = usize_of("block_size").ok_or("bad block size")?;
                let b = c["block_count"].as_str().and_then(|x| x.parse::<Integer>().ok()).ok_or("bad count")?;
                let lam = lambda_from_block_count(n as u32, bs as u32, &b).map_err(|e| e.to_string())?;
                if lam.to_string() != c["lambda"].as_str().unwrap_or("") {
                    return fail("lambda mismatch");
                }
                checked += 1;
            }
            Some("dual-weight") => {
                if c["absent"] != json!(true) {
                    continue;
                }
                let lam = p["lambda"].as_str().and_then(|x| x.parse::<Integer>().ok()).ok_or("bad lambda")?;
                let d = design_params(u32_of("t").ok_or("t")?, u32_of("v").ok_or("v")?, u32_of("k").ok_or("k")?, lam)
                    .map_err(|e| e.to_string())?;
                let w = u32_of("w").ok_or("bad w")?;
                let cert = &c["certificate"];
                let mult = cert["multipliers"]
                    .as_array()
                    .ok_or("missing multipliers")?
                    .iter()
                    .map(|x| x.as_str().and_then(|s| parse_rat(s).ok()))
                    .collect::<Option<Vec<_>>>()
                    .ok_or("bad multiplier")?;
                let cert = match cert["type"].as_str() {
                    Some("farkas") => Certificate::Farkas(Farkas::infeasible(mult)),
                    Some("lattice") => Certificate::Lattice(mult),
                    _ => return fail("unknown certificate type"),
                };
                if !mendelsohn::replay(&d, w, &cert) {
                    return fail("certificate does not verify");
                }
                checked += 1;
            }
            Some("dimension") => {
                if c["impossible"] != json!(true) {
                    continue;
                }
                let h = hypothesis_from_json(p).ok_or("bad hypothesis")?;
                let target = usize_of("target").ok_or("bad target")?;
                let lam0 = p["lambda0"].as_str().and_then(|x| parse_rat(x).ok()).ok_or("bad lambda0")?;
                let (sys, obj) = dimension_system(&h, target);
                let f = farkas_from_json(&c["farkas"], Some(obj)).ok_or("bad farkas")?;
                if f.threshold != lam0 && f.claim != Claim::Infeasible {
                    return fail("threshold differs from lambda0");
                }
                f.verify(&sys).map_err(|e| format!("step {i}: {e:?}"))?;
                checked += 1;
            }
            Some("shadow") => {
                if c["impossible"] != json!(true) {
                    continue;
                }
                let n = usize_of("n").ok_or("bad n")?;
                let absent: Vec<usize> = p["absent"]
                    .as_array()
                    .ok_or("bad absent")?
                    .iter()
                    .filter_map(|x| x.as_str().and_then(|s| s.parse().ok()))
                    .collect();
                let lam0 = p["lambda0"].as_str().and_then(|x| parse_rat(x).ok()).ok_or("bad lambda0")?;
                let (sys, obj) = shadow_system(
                    n,
                    usize_of("target").ok_or("target")?,
                    usize_of("code_min").ok_or("code_min")?,
                    usize_of("shadow_min").ok_or("shadow_min")?,
                    &ShadowConstraints::all(n, &absent),
                )
                .map_err(|e| e.to_string())?;
                let f = farkas_from_json(&c["farkas"], Some(obj)).ok_or("bad farkas")?;
                if f.threshold != lam0 && f.claim != Claim::Infeasible {
                    return fail("threshold differs from lambda0");
                }
                f.verify(&sys).map_err(|e| format!("step {i}: {e:?}"))?;
                checked += 1;
            }
            Some("min-weight") => {
                if c["by"] != json!("enumerator") {
                    continue;
                }
                let n = usize_of("n").ok_or("bad n")?;
                let dw = usize_of("d").ok_or("bad d")?;
                let absent: Vec<usize> = p["absent"]
                    .as_array()
                    .ok_or("bad absent")?
                    .iter()
                    .filter_map(|x| x.as_str().and_then(|s| s.parse().ok()))
                    .collect();
                let lam0 = p["lambda0"].as_str().and_then(|x| x.parse::<Integer>().ok()).ok_or("bad lambda0")?;
                let (sys, obj) = min_weight_system(n, dw, usize_of("target").ok_or("target")?, &lam0, &absent)
                    .map_err(|e| e.to_string())?;
                let f = farkas_from_json(&c["farkas"], Some(obj)).ok_or("bad farkas")?;
                if f.claim == Claim::AtMost && f.threshold.is_positive() {
                    return fail("bound does not force A_d = 0");
                }
                f.verify(&sys).map_err(|e| format!("step {i}: {e:?}"))?;
                checked += 1;
            }
            _ => return fail("unknown step kind"),
        }
    }
    Ok(checked)
}

pub fn lambda_check(m: usize, k: usize, expected: &Integer) -> Result<bool> {
    Ok(&derive_lambda(m, k)?.1 == expected)
}
