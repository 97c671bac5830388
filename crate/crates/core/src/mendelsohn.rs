//! Intersection-number systems of a design against a fixed w-set, and the
//! resulting certificates that the dual code has no word of weight w.
//!
//! For a t-design and a w-set S, let n_i count blocks meeting S in i points.
//! Then Σ_i C(i,j) n_i = λ_j C(w,j) for j = 0..t. If S is the support of a
//! dual codeword of a self-orthogonal design only even i occur.

use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::affine::Affine;
use crate::combinatorics::{binom, fmt_rat, rat_of, DesignParams, Integer, Rational};
use crate::linalg::{self, LinearSolution};
use crate::lp::{self, Claim, Constraint, Farkas, FmOutcome, System};

/// Free dimensions up to which Fourier–Motzkin decides nonnegative feasibility.
pub const FM_MAX_FREE: usize = 12;
const FM_MAX_ROWS: usize = 20_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MendelsohnSystem {
    pub design: DesignParams,
    pub w: u32,
    pub unknowns: Vec<u32>,
    pub matrix: Vec<Vec<Integer>>,
    pub rhs: Vec<Integer>,
}

pub fn build_system(d: &DesignParams, w: u32) -> MendelsohnSystem {
    assert!(0 < w && w < d.v, "need 0 < w < v");
    let top = d.k.min(w);
    let unknowns: Vec<u32> = (0..=top).step_by(2).collect();
    let matrix = (0..=d.t)
        .map(|j| unknowns.iter().map(|&i| binom(i as i64, j as i64)).collect())
        .collect();
    let rhs = (0..=d.t)
        .map(|j| &d.lambda_index[j as usize] * binom(w as i64, j as i64))
        .collect();
    MendelsohnSystem {
        design: d.clone(),
        w,
        unknowns,
        matrix,
        rhs,
    }
}

impl MendelsohnSystem {
    pub fn nunknowns(&self) -> usize {
        self.unknowns.len()
    }

    /// Equations first (labelled "eq j"), then n_i >= 0.
    pub fn to_lp(&self) -> System {
        let p = self.nunknowns();
        let mut sys = System::new(p);
        for (j, (row, r)) in self.matrix.iter().zip(&self.rhs).enumerate() {
            let form = Affine {
                constant: -rat_of(r),
                coeffs: row.iter().map(rat_of).collect(),
            };
            sys.push(Constraint::eq(form, format!("eq {j}")));
        }
        for (s, i) in self.unknowns.iter().enumerate() {
            sys.push(Constraint::ge(Affine::var(p, s), format!("n_{i} >= 0")));
        }
        sys
    }

    pub fn params_json(&self) -> Value {
        json!({
            "v": self.design.v.to_string(),
            "k": self.design.k.to_string(),
            "t": self.design.t.to_string(),
            "lambda": self.design.lambda.to_string(),
            "w": self.w.to_string(),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    /// Nonnegative combination proving no nonnegative rational solution.
    Farkas(Farkas),
    /// Equation multipliers with integral coefficients and a non-integral constant.
    Lattice(Vec<Rational>),
}

impl Certificate {
    pub fn verify(&self, sys: &System) -> bool {
        match self {
            Certificate::Farkas(f) => f.verify(sys).is_ok() && f.claim == Claim::Infeasible,
            Certificate::Lattice(u) => lp::verify_lattice(sys, u).is_ok(),
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            Certificate::Farkas(f) => json!({
                "type": "farkas",
                "multipliers": f.multipliers.iter().map(fmt_rat).collect::<Vec<_>>(),
            }),
            Certificate::Lattice(u) => json!({
                "type": "lattice",
                "multipliers": u.iter().map(fmt_rat).collect::<Vec<_>>(),
            }),
        }
    }
}

#[derive(Debug, Clone)]
pub enum SolveOutcome {
    Infeasible(Certificate),
    Unique(Vec<Rational>),
    Underdetermined {
        nonneg_rational_feasible: bool,
        certificate: Option<Certificate>,
        witness: Option<Vec<Rational>>,
    },
}

fn equations(sys: &MendelsohnSystem) -> (linalg::Matrix, Vec<Rational>) {
    (linalg::to_rational(&sys.matrix), sys.rhs.iter().map(rat_of).collect())
}

/// Turn equation multipliers u with uᵀE = 0, uᵀe != 0 into a Farkas row.
fn inconsistency(sys: &MendelsohnSystem, u: Vec<Rational>) -> Farkas {
    let ue: Rational = u.iter().zip(&sys.rhs).map(|(a, b)| a * rat_of(b)).sum();
    let sign = if ue.is_positive() { Rational::one() } else { -Rational::one() };
    let mut mult: Vec<Rational> = u.iter().map(|x| x * &sign).collect();
    mult.extend(std::iter::repeat(Rational::zero()).take(sys.nunknowns()));
    Farkas::infeasible(mult)
}

/// Decide nonnegative rational feasibility of the equations. Small free
/// dimensions go through Fourier–Motzkin on the parametrised solution set,
/// larger ones through the simplex method.
fn nonneg_feasible(
    sys: &MendelsohnSystem,
    particular: &[Rational],
    nullspace: &[Vec<Rational>],
) -> Result<Vec<Rational>, Farkas> {
    let full = sys.to_lp();
    if nullspace.len() <= FM_MAX_FREE {
        let f = nullspace.len();
        let mut reduced = System::new(f);
        for (s, i) in sys.unknowns.iter().enumerate() {
            let form = Affine {
                constant: particular[s].clone(),
                coeffs: nullspace.iter().map(|v| v[s].clone()).collect(),
            };
            reduced.push(Constraint::ge(form, format!("n_{i} >= 0")));
        }
        match lp::fourier_motzkin(&reduced, FM_MAX_ROWS) {
            FmOutcome::Infeasible(cert) => {
                if let Some(lifted) = lift(sys, &cert.multipliers) {
                    return Err(lifted);
                }
            }
            FmOutcome::Feasible => {}
            FmOutcome::GaveUp => {}
        }
    }
    lp::feasible_point(&full)
}

/// Lift multipliers y on n_i >= 0 (valid on the solution set of the
/// equations) to a certificate over the full system.
fn lift(sys: &MendelsohnSystem, y: &[Rational]) -> Option<Farkas> {
    let (e, _) = equations(sys);
    let p = sys.nunknowns();
    let target: Vec<Rational> = y.iter().map(|x| -x.clone()).collect();
    let u = linalg::solve_left(&e, &target, p)?;
    let mut mult = u;
    mult.extend(y.iter().cloned());
    let f = Farkas::infeasible(mult);
    f.verify(&sys.to_lp()).ok()?;
    Some(f)
}

pub fn solve(sys: &MendelsohnSystem) -> SolveOutcome {
    let (e, b) = equations(sys);
    match linalg::solve(&e, &b, sys.nunknowns()) {
        LinearSolution::Inconsistent(u) => SolveOutcome::Infeasible(Certificate::Farkas(inconsistency(sys, u))),
        LinearSolution::Solved { particular, nullspace } if nullspace.is_empty() => SolveOutcome::Unique(particular),
        LinearSolution::Solved { particular, nullspace } => match nonneg_feasible(sys, &particular, &nullspace) {
            Ok(x) => SolveOutcome::Underdetermined {
                nonneg_rational_feasible: true,
                certificate: None,
                witness: Some(x),
            },
            Err(f) => SolveOutcome::Underdetermined {
                nonneg_rational_feasible: false,
                certificate: Some(Certificate::Farkas(f)),
                witness: None,
            },
        },
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Reason {
    /// The equations have no rational solution.
    Inconsistent,
    /// The unique solution has a negative entry.
    NegativeForced,
    /// The unique solution has a non-integral entry.
    NonIntegralForced,
    /// No nonnegative rational solution.
    NoNonnegative,
    /// No integral solution at all.
    NoIntegral,
    /// A nonnegative integral solution exists.
    UniqueFeasible,
    /// Rational-feasible and not excluded by the lattice test.
    Unknown,
}

impl Reason {
    pub fn as_str(&self) -> &'static str {
        match self {
            Reason::Inconsistent => "inconsistent",
            Reason::NegativeForced => "negative-forced",
            Reason::NonIntegralForced => "non-integral-forced",
            Reason::NoNonnegative => "no-nonnegative-solution",
            Reason::NoIntegral => "no-integral-solution",
            Reason::UniqueFeasible => "unique-feasible",
            Reason::Unknown => "unknown",
        }
    }
}

#[derive(Debug, Clone)]
pub struct DualWeightCheck {
    pub w: u32,
    pub absent: bool,
    pub reason: Reason,
    pub certificate: Option<Certificate>,
    pub unique: Option<Vec<Rational>>,
}

impl DualWeightCheck {
    pub fn to_json(&self) -> Value {
        json!({
            "w": self.w.to_string(),
            "absent": self.absent,
            "reason": self.reason.as_str(),
            "certificate": self.certificate.as_ref().map(Certificate::to_json).unwrap_or(Value::Null),
        })
    }
}

/// Certified absence of dual words of weight w. True only with a certificate.
pub fn certify_no_dual_weight(d: &DesignParams, w: u32) -> DualWeightCheck {
    let sys = build_system(d, w);
    let (e, _) = equations(&sys);
    let p = sys.nunknowns();
    let done = |absent, reason, certificate, unique| DualWeightCheck {
        w,
        absent,
        reason,
        certificate,
        unique,
    };
    match solve(&sys) {
        SolveOutcome::Infeasible(c) => done(true, Reason::Inconsistent, Some(c), None),
        SolveOutcome::Unique(x) => {
            let pick = x
                .iter()
                .position(|v| v.is_negative())
                .map(|i| (i, Reason::NegativeForced))
                .or_else(|| x.iter().position(|v| !v.is_integer()).map(|i| (i, Reason::NonIntegralForced)));
            let Some((i, reason)) = pick else {
                return done(false, Reason::UniqueFeasible, None, Some(x));
            };
            let mut unit = vec![Rational::zero(); p];
            unit[i] = Rational::one();
            let li = linalg::solve_left(&e, &unit, p).expect("unique solution means full column rank");
            let cert = if reason == Reason::NegativeForced {
                let mut mult: Vec<Rational> = li.iter().map(|x| -x.clone()).collect();
                let mut ys = vec![Rational::zero(); p];
                ys[i] = Rational::one();
                mult.extend(ys);
                Certificate::Farkas(Farkas::infeasible(mult))
            } else {
                let mut mult = li;
                mult.extend(std::iter::repeat(Rational::zero()).take(p));
                Certificate::Lattice(mult)
            };
            done(true, reason, Some(cert), Some(x))
        }
        SolveOutcome::Underdetermined {
            nonneg_rational_feasible: false,
            certificate,
            ..
        } => done(true, Reason::NoNonnegative, certificate, None),
        SolveOutcome::Underdetermined { .. } => match linalg::integer_obstruction(&sys.matrix, &sys.rhs, p) {
            Some(u) => {
                let mut mult = u;
                mult.extend(std::iter::repeat(Rational::zero()).take(p));
                done(true, Reason::NoIntegral, Some(Certificate::Lattice(mult)), None)
            }
            None => done(false, Reason::Unknown, None, None),
        },
    }
}

/// Replay a stored certificate against a freshly built system.
pub fn replay(d: &DesignParams, w: u32, cert: &Certificate) -> bool {
    cert.verify(&build_system(d, w).to_lp())
}

pub fn certify_weights(d: &DesignParams, weights: &[u32]) -> Vec<DualWeightCheck> {
    weights.par_iter().map(|&w| certify_no_dual_weight(d, w)).collect()
}

/// Lemma-style self-duality: every weight not divisible by 4 is certified absent.
pub fn certify_doubly_even_self_dual(d: &DesignParams) -> (bool, Vec<DualWeightCheck>) {
    assert!(d.k % 4 == 0);
    let weights: Vec<u32> = (1..d.v).filter(|w| w % 4 != 0).collect();
    let checks = certify_weights(d, &weights);
    (checks.iter().all(|c| c.absent), checks)
}

#[derive(Debug, Clone)]
pub enum AllOneReason {
    OddReplication(Integer),
    NoOddDualWeights(Vec<DualWeightCheck>),
    NotShown(Vec<DualWeightCheck>),
}

/// Whether the all-one vector lies in the code of the complementary design.
pub fn certify_all_one_in_complement_code(d: &DesignParams) -> (bool, AllOneReason) {
    let Ok(c) = d.complement() else {
        return (false, AllOneReason::NotShown(Vec::new()));
    };
    if c.r().is_odd() {
        return (true, AllOneReason::OddReplication(c.r().clone()));
    }
    let weights: Vec<u32> = (1..c.v).filter(|w| w % 2 == 1).collect();
    let checks = certify_weights(&c, &weights);
    if checks.iter().all(|x| x.absent) {
        (true, AllOneReason::NoOddDualWeights(checks))
    } else {
        (false, AllOneReason::NotShown(checks))
    }
}
