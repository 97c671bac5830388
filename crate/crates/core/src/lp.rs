//! Exact linear feasibility and optimisation with replayable certificates.
//!
//! A system is a list of affine constraints `f(x) >= 0` or `f(x) = 0` over
//! free rational variables. Every negative answer comes with a [`Farkas`]
//! combination that can be checked without trusting the solver.

use num_traits::{One, Signed, Zero};

use crate::affine::Affine;
use crate::combinatorics::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Ge,
    Eq,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    pub form: Affine,
    pub sense: Sense,
    pub label: String,
}

impl Constraint {
    pub fn ge(form: Affine, label: impl Into<String>) -> Self {
        Constraint {
            form,
            sense: Sense::Ge,
            label: label.into(),
        }
    }

    pub fn eq(form: Affine, label: impl Into<String>) -> Self {
        Constraint {
            form,
            sense: Sense::Eq,
            label: label.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct System {
    pub nvars: usize,
    pub constraints: Vec<Constraint>,
}

impl System {
    pub fn new(nvars: usize) -> Self {
        System {
            nvars,
            constraints: Vec::new(),
        }
    }

    pub fn push(&mut self, c: Constraint) {
        assert_eq!(c.form.nvars(), self.nvars);
        self.constraints.push(c);
    }

    pub fn satisfied_by(&self, x: &[Rational]) -> bool {
        self.constraints.iter().all(|c| {
            let v = c.form.eval(x);
            match c.sense {
                Sense::Ge => !v.is_negative(),
                Sense::Eq => v.is_zero(),
            }
        })
    }
}

/// What a [`Farkas`] combination proves about the feasible set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Claim {
    /// No point satisfies the constraints.
    Infeasible,
    /// Every feasible point has objective < threshold.
    Below,
    /// Every feasible point has objective <= threshold.
    AtMost,
}

/// Σ μ_i f_i(x) + ν (objective(x) - threshold) is identically the constant κ,
/// with μ_i >= 0 on inequalities and ν >= 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Farkas {
    pub claim: Claim,
    pub multipliers: Vec<Rational>,
    pub objective: Option<Affine>,
    pub objective_weight: Rational,
    pub threshold: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ReplayError {
    Shape,
    NegativeMultiplier(usize),
    NotIdentity,
    WrongSign,
}

impl Farkas {
    pub fn infeasible(multipliers: Vec<Rational>) -> Self {
        Farkas {
            claim: Claim::Infeasible,
            multipliers,
            objective: None,
            objective_weight: Rational::zero(),
            threshold: Rational::zero(),
        }
    }

    /// Recompute κ and check the claim against it.
    pub fn verify(&self, sys: &System) -> Result<Rational, ReplayError> {
        if self.multipliers.len() != sys.constraints.len() {
            return Err(ReplayError::Shape);
        }
        let mut acc = Affine::zero(sys.nvars);
        for (i, (mu, c)) in self.multipliers.iter().zip(&sys.constraints).enumerate() {
            if c.sense == Sense::Ge && mu.is_negative() {
                return Err(ReplayError::NegativeMultiplier(i));
            }
            acc.add_scaled(&c.form, mu);
        }
        if self.objective_weight.is_negative() {
            return Err(ReplayError::WrongSign);
        }
        match &self.objective {
            Some(obj) => {
                if obj.nvars() != sys.nvars {
                    return Err(ReplayError::Shape);
                }
                let shifted = obj - &Affine::constant(sys.nvars, self.threshold.clone());
                acc.add_scaled(&shifted, &self.objective_weight);
            }
            None if !self.objective_weight.is_zero() => return Err(ReplayError::Shape),
            None => {}
        }
        if !acc.is_constant() {
            return Err(ReplayError::NotIdentity);
        }
        let kappa = acc.constant;
        let ok = match self.claim {
            Claim::Infeasible => self.objective_weight.is_zero() && kappa.is_negative(),
            Claim::Below => kappa.is_negative(),
            Claim::AtMost => {
                kappa.is_negative() || (kappa.is_zero() && self.objective_weight.is_positive())
            }
        };
        if ok {
            Ok(kappa)
        } else {
            Err(ReplayError::WrongSign)
        }
    }
}

#[derive(Debug, Clone)]
pub enum LpOutcome {
    Optimal {
        value: Rational,
        point: Vec<Rational>,
        certificate: Farkas,
    },
    Unbounded {
        point: Vec<Rational>,
        ray: Vec<Rational>,
    },
    Infeasible(Farkas),
}

// ---------------------------------------------------------------------------
// standard-form simplex: min cᵀy, A y = b, y >= 0

#[derive(Debug, Clone)]
enum StdOutcome {
    /// y optimal, z dual with zᵀA <= c and zᵀb = cᵀy.
    Optimal { y: Vec<Rational>, z: Vec<Rational> },
    /// zᵀA <= 0 and zᵀb > 0.
    Infeasible { z: Vec<Rational> },
    /// d >= 0, A d = 0, cᵀd < 0.
    Unbounded { ray: Vec<Rational> },
}

struct Tableau {
    rows: Vec<Vec<Rational>>, // m rows, n + m columns (real then artificial)
    rhs: Vec<Rational>,
    basis: Vec<usize>,
    n: usize,
    m: usize,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.rows[r][c].recip();
        for x in self.rows[r].iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        self.rhs[r] *= &inv;
        let prow = self.rows[r].clone();
        let prhs = self.rhs[r].clone();
        for i in 0..self.m {
            if i == r || self.rows[i][c].is_zero() {
                continue;
            }
            let f = self.rows[i][c].clone();
            for (x, p) in self.rows[i].iter_mut().zip(&prow) {
                if !p.is_zero() {
                    *x -= p * &f;
                }
            }
            self.rhs[i] -= &prhs * &f;
        }
        self.basis[r] = c;
    }

    /// z̃ᵀ = c_Bᵀ B⁻¹, read off the artificial block.
    fn duals(&self, cost: &dyn Fn(usize) -> Rational) -> Vec<Rational> {
        let mut z = vec![Rational::zero(); self.m];
        for (i, &bi) in self.basis.iter().enumerate() {
            let cb = cost(bi);
            if cb.is_zero() {
                continue;
            }
            for (k, zk) in z.iter_mut().enumerate() {
                let e = &self.rows[i][self.n + k];
                if !e.is_zero() {
                    *zk += &cb * e;
                }
            }
        }
        z
    }

    fn reduced_cost(&self, j: usize, cost: &dyn Fn(usize) -> Rational) -> Rational {
        let mut acc = cost(j);
        for (i, &bi) in self.basis.iter().enumerate() {
            let e = &self.rows[i][j];
            if !e.is_zero() {
                acc -= cost(bi) * e;
            }
        }
        acc
    }

    /// Bland-rule primal simplex over the allowed columns; returns an
    /// unbounded entering column if one is found.
    fn run(&mut self, cost: &dyn Fn(usize) -> Rational, allowed: usize) -> Option<usize> {
        loop {
            let mut entering = None;
            for j in 0..allowed {
                if self.basis.contains(&j) {
                    continue;
                }
                if self.reduced_cost(j, cost).is_negative() {
                    entering = Some(j);
                    break;
                }
            }
            let Some(c) = entering else {
                return None;
            };
            let mut best: Option<(usize, Rational)> = None;
            for i in 0..self.m {
                let e = &self.rows[i][c];
                if !e.is_positive() {
                    continue;
                }
                let ratio = &self.rhs[i] / e;
                let better = match &best {
                    None => true,
                    Some((bi, br)) => ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi]),
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            match best {
                None => return Some(c),
                Some((r, _)) => self.pivot(r, c),
            }
        }
    }
}

fn simplex_std(a: &[Vec<Rational>], b: &[Rational], c: &[Rational]) -> StdOutcome {
    let m = a.len();
    let n = c.len();
    let mut sign = vec![Rational::one(); m];
    let mut rows = Vec::with_capacity(m);
    let mut rhs = Vec::with_capacity(m);
    for i in 0..m {
        let s = if b[i].is_negative() { -Rational::one() } else { Rational::one() };
        let mut row: Vec<Rational> = a[i].iter().map(|x| x * &s).collect();
        row.extend((0..m).map(|k| if k == i { Rational::one() } else { Rational::zero() }));
        rows.push(row);
        rhs.push(&b[i] * &s);
        sign[i] = s;
    }
    let mut t = Tableau {
        rows,
        rhs,
        basis: (n..n + m).collect(),
        n,
        m,
    };
    let phase1 = |j: usize| if j >= n { Rational::one() } else { Rational::zero() };
    t.run(&phase1, n + m);
    let infeas: Rational = t
        .basis
        .iter()
        .zip(&t.rhs)
        .filter(|(bi, _)| **bi >= n)
        .fold(Rational::zero(), |acc, (_, v)| acc + v);
    if infeas.is_positive() {
        let zt = t.duals(&phase1);
        // phase-one duals satisfy z̃ᵀÃ <= 0 on real columns and z̃ᵀb̃ = infeas > 0
        let z: Vec<Rational> = zt.iter().zip(&sign).map(|(x, s)| x * s).collect();
        return StdOutcome::Infeasible { z };
    }
    // drive zero-level artificials out of the basis where possible
    for i in 0..m {
        if t.basis[i] >= n {
            if let Some(j) = (0..n).find(|&j| !t.rows[i][j].is_zero() && !t.basis.contains(&j)) {
                t.pivot(i, j);
            }
        }
    }
    let phase2 = |j: usize| if j < n { c[j].clone() } else { Rational::zero() };
    let unbounded = t.run(&phase2, n);
    if let Some(col) = unbounded {
        let mut ray = vec![Rational::zero(); n];
        ray[col] = Rational::one();
        for (i, &bi) in t.basis.iter().enumerate() {
            if bi < n {
                ray[bi] = -t.rows[i][col].clone();
            }
        }
        return StdOutcome::Unbounded { ray };
    }
    let mut y = vec![Rational::zero(); n];
    for (i, &bi) in t.basis.iter().enumerate() {
        if bi < n {
            y[bi] = t.rhs[i].clone();
        }
    }
    let zt = t.duals(&phase2);
    let z: Vec<Rational> = zt.iter().zip(&sign).map(|(x, s)| x * s).collect();
    StdOutcome::Optimal { y, z }
}

// ---------------------------------------------------------------------------
// inequality form over free variables

/// Each constraint becomes one or two rows g·x <= h.
struct Rows {
    g: Vec<Vec<Rational>>,
    h: Vec<Rational>,
    origin: Vec<(usize, Rational)>, // (constraint index, sign)
}

fn to_rows(sys: &System) -> Rows {
    let mut g = Vec::new();
    let mut h = Vec::new();
    let mut origin = Vec::new();
    for (idx, c) in sys.constraints.iter().enumerate() {
        // f >= 0  <=>  -a·x <= c0
        g.push(c.form.coeffs.iter().map(|x| -x).collect());
        h.push(c.form.constant.clone());
        origin.push((idx, Rational::one()));
        if c.sense == Sense::Eq {
            g.push(c.form.coeffs.clone());
            h.push(-c.form.constant.clone());
            origin.push((idx, -Rational::one()));
        }
    }
    Rows { g, h, origin }
}

fn fold_multipliers(rows: &Rows, y: &[Rational], ncons: usize) -> Vec<Rational> {
    let mut mu = vec![Rational::zero(); ncons];
    for (yi, (idx, s)) in y.iter().zip(&rows.origin) {
        if !yi.is_zero() {
            mu[*idx] += yi * s;
        }
    }
    mu
}

/// Solve max objective(x) subject to the system.
pub fn maximize(sys: &System, objective: &Affine) -> LpOutcome {
    let rows = to_rows(sys);
    let p = sys.nvars;
    let k = rows.g.len();
    // dual: min hᵀy  s.t.  gᵀy = c, y >= 0
    let a: Vec<Vec<Rational>> = (0..p).map(|j| (0..k).map(|i| rows.g[i][j].clone()).collect()).collect();
    match simplex_std(&a, &objective.coeffs, &rows.h) {
        StdOutcome::Optimal { y, z } => {
            let hy = y.iter().zip(&rows.h).fold(Rational::zero(), |acc, (a, b)| acc + a * b);
            let value = hy + &objective.constant;
            let mu = fold_multipliers(&rows, &y, sys.constraints.len());
            let certificate = Farkas {
                claim: Claim::AtMost,
                multipliers: mu,
                objective: Some(objective.clone()),
                objective_weight: Rational::one(),
                threshold: value.clone(),
            };
            LpOutcome::Optimal {
                value,
                point: z,
                certificate,
            }
        }
        StdOutcome::Unbounded { ray, .. } => {
            let mu = fold_multipliers(&rows, &ray, sys.constraints.len());
            LpOutcome::Infeasible(Farkas::infeasible(mu))
        }
        StdOutcome::Infeasible { z } => {
            // g z <= 0 and cᵀz > 0: an improving ray, provided the system is feasible
            match feasible_point(sys) {
                Ok(point) => LpOutcome::Unbounded { point, ray: z },
                Err(f) => LpOutcome::Infeasible(f),
            }
        }
    }
}

/// A feasible point, or a certificate that none exists.
pub fn feasible_point(sys: &System) -> Result<Vec<Rational>, Farkas> {
    let zero = Affine::zero(sys.nvars);
    let rows = to_rows(sys);
    let p = sys.nvars;
    let k = rows.g.len();
    let a: Vec<Vec<Rational>> = (0..p).map(|j| (0..k).map(|i| rows.g[i][j].clone()).collect()).collect();
    match simplex_std(&a, &zero.coeffs, &rows.h) {
        StdOutcome::Optimal { z, .. } => Ok(z),
        StdOutcome::Unbounded { ray, .. } => Err(Farkas::infeasible(fold_multipliers(
            &rows,
            &ray,
            sys.constraints.len(),
        ))),
        StdOutcome::Infeasible { .. } => unreachable!("y = 0 is always dual feasible"),
    }
}

/// Certificate that no feasible point has objective >= threshold, or a point
/// that reaches it.
pub fn certify_below(sys: &System, objective: &Affine, threshold: &Rational) -> Result<Farkas, Vec<Rational>> {
    let mut aug = sys.clone();
    aug.push(Constraint::ge(
        objective - &Affine::constant(sys.nvars, threshold.clone()),
        "objective >= threshold",
    ));
    match feasible_point(&aug) {
        Ok(x) => Err(x),
        Err(f) => {
            let mut mu = f.multipliers;
            let nu = mu.pop().unwrap();
            Ok(Farkas {
                claim: Claim::Below,
                multipliers: mu,
                objective: Some(objective.clone()),
                objective_weight: nu,
                threshold: threshold.clone(),
            })
        }
    }
}

/// Check that Σ u_j g_j over the equalities has integral variable
/// coefficients and a non-integral constant, so no integral point exists.
pub fn verify_lattice(sys: &System, u: &[Rational]) -> Result<(), ReplayError> {
    if u.len() != sys.constraints.len() {
        return Err(ReplayError::Shape);
    }
    let mut acc = Affine::zero(sys.nvars);
    for (uj, c) in u.iter().zip(&sys.constraints) {
        if uj.is_zero() {
            continue;
        }
        if c.sense != Sense::Eq {
            return Err(ReplayError::NegativeMultiplier(0));
        }
        acc.add_scaled(&c.form, uj);
    }
    if !acc.coeffs.iter().all(|c| c.is_integer()) {
        return Err(ReplayError::NotIdentity);
    }
    if acc.constant.is_integer() {
        return Err(ReplayError::WrongSign);
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Fourier–Motzkin elimination with multiplier tracking

#[derive(Debug, Clone)]
struct FmRow {
    form: Affine,
    mult: Vec<Rational>,
    support: Vec<bool>,
}

#[derive(Debug, Clone)]
pub enum FmOutcome {
    Infeasible(Farkas),
    Feasible,
    /// The row budget was exhausted before a verdict.
    GaveUp,
}

fn normalize(row: &mut FmRow) {
    let mut scale = Rational::zero();
    for c in row.form.coeffs.iter().chain(std::iter::once(&row.form.constant)) {
        let a = c.abs();
        if a > scale {
            scale = a;
        }
    }
    if scale.is_zero() || scale.is_one() {
        return;
    }
    let inv = scale.recip();
    row.form = row.form.scale(&inv);
    for m in row.mult.iter_mut() {
        *m *= &inv;
    }
}

/// Decide feasibility of the system by eliminating every variable. Rows that
/// derive from more than (eliminated + 1) originals are dropped (Chernikov).
pub fn fourier_motzkin(sys: &System, max_rows: usize) -> FmOutcome {
    let ncons = sys.constraints.len();
    let mut rows: Vec<FmRow> = Vec::new();
    for (idx, c) in sys.constraints.iter().enumerate() {
        let mut push = |form: Affine, s: Rational| {
            let mut mult = vec![Rational::zero(); ncons];
            mult[idx] = s;
            let mut support = vec![false; ncons];
            support[idx] = true;
            rows.push(FmRow { form, mult, support });
        };
        push(c.form.clone(), Rational::one());
        if c.sense == Sense::Eq {
            push(-&c.form, -Rational::one());
        }
    }
    for r in rows.iter_mut() {
        normalize(r);
    }
    let mut remaining: Vec<usize> = (0..sys.nvars).collect();
    let mut eliminated = 0usize;
    loop {
        if let Some(bad) = rows.iter().find(|r| r.form.is_constant() && r.form.constant.is_negative()) {
            return FmOutcome::Infeasible(Farkas::infeasible(bad.mult.clone()));
        }
        if remaining.is_empty() {
            return FmOutcome::Feasible;
        }
        // fewest pos × neg products first
        let (pick, _) = remaining
            .iter()
            .enumerate()
            .map(|(slot, &v)| {
                let pos = rows.iter().filter(|r| r.form.coeffs[v].is_positive()).count();
                let neg = rows.iter().filter(|r| r.form.coeffs[v].is_negative()).count();
                (slot, pos * neg + pos + neg)
            })
            .min_by_key(|(_, cost)| *cost)
            .unwrap();
        let v = remaining.remove(pick);
        eliminated += 1;
        let (mut pos, mut neg, mut keep) = (Vec::new(), Vec::new(), Vec::new());
        for r in rows.drain(..) {
            if r.form.coeffs[v].is_positive() {
                pos.push(r);
            } else if r.form.coeffs[v].is_negative() {
                neg.push(r);
            } else {
                keep.push(r);
            }
        }
        for p in &pos {
            for q in &neg {
                let support: Vec<bool> = p.support.iter().zip(&q.support).map(|(a, b)| *a || *b).collect();
                if support.iter().filter(|x| **x).count() > eliminated + 1 {
                    continue;
                }
                let a = p.form.coeffs[v].clone();
                let b = -q.form.coeffs[v].clone();
                let mut form = p.form.scale(&b);
                form.add_scaled(&q.form, &a);
                form.coeffs[v] = Rational::zero();
                let mult = p
                    .mult
                    .iter()
                    .zip(&q.mult)
                    .map(|(x, y)| x * &b + y * &a)
                    .collect();
                let mut row = FmRow { form, mult, support };
                normalize(&mut row);
                if row.form.is_constant() && !row.form.constant.is_negative() {
                    continue;
                }
                keep.push(row);
                if keep.len() > max_rows {
                    return FmOutcome::GaveUp;
                }
            }
        }
        // drop exact duplicates of the normalised forms
        keep.sort_by(|x, y| x.support.iter().filter(|s| **s).count().cmp(&y.support.iter().filter(|s| **s).count()));
        let mut seen = std::collections::HashSet::new();
        keep.retain(|r| seen.insert(r.form.clone()));
        rows = keep;
    }
}

/// Fourier–Motzkin bound: no feasible point has objective >= threshold.
pub fn fm_certify_below(sys: &System, objective: &Affine, threshold: &Rational, max_rows: usize) -> FmOutcome {
    let mut aug = sys.clone();
    aug.push(Constraint::ge(
        objective - &Affine::constant(sys.nvars, threshold.clone()),
        "objective >= threshold",
    ));
    match fourier_motzkin(&aug, max_rows) {
        FmOutcome::Infeasible(f) => {
            let mut mu = f.multipliers;
            let nu = mu.pop().unwrap();
            FmOutcome::Infeasible(Farkas {
                claim: Claim::Below,
                multipliers: mu,
                objective: Some(objective.clone()),
                objective_weight: nu,
                threshold: threshold.clone(),
            })
        }
        other => other,
    }
}
