//! Weight enumerators: MacWilliams transforms, the Gleason basis for doubly
//! even self-dual codes, the Conway–Sloane singly even/shadow pair, and
//! parametric families with affine coefficients.
//!
//! A homogeneous polynomial Σ c_i x^{n-i} y^i is stored densely as (c_0..c_n).

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::affine::Affine;
use crate::combinatorics::{fmt_rat, is_integral, pow2, rat, rat_of, Integer, Rational};
use crate::error::{Error, Result};
use crate::linalg::{self, LinearSolution};

pub const GREEK: [&str; 10] = ["α", "β", "γ", "δ", "ε", "ζ", "η", "θ", "ι", "κ"];

pub fn poly_mul(a: &[Integer], b: &[Integer]) -> Vec<Integer> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Integer::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

pub fn poly_pow(a: &[Integer], e: usize) -> Vec<Integer> {
    let mut acc = vec![Integer::one()];
    for _ in 0..e {
        acc = poly_mul(&acc, a);
    }
    acc
}

fn pad(mut p: Vec<Integer>, n: usize) -> Vec<Integer> {
    assert!(p.len() <= n + 1 || p[n + 1..].iter().all(Zero::is_zero));
    p.resize(n + 1, Integer::zero());
    p
}

fn ints(xs: &[i64]) -> Vec<Integer> {
    xs.iter().map(|&x| Integer::from(x)).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightEnumerator {
    pub n: usize,
    pub a: Vec<Integer>,
}

impl WeightEnumerator {
    pub fn new(a: Vec<Integer>) -> Self {
        assert!(!a.is_empty());
        WeightEnumerator { n: a.len() - 1, a }
    }

    pub fn from_pairs(n: usize, pairs: &[(usize, i64)]) -> Self {
        let mut a = vec![Integer::zero(); n + 1];
        for &(w, c) in pairs {
            a[w] = Integer::from(c);
        }
        WeightEnumerator { n, a }
    }

    pub fn total(&self) -> Integer {
        self.a.iter().sum()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.a.iter().all(|x| !x.is_negative())
    }

    pub fn to_json(&self) -> Value {
        json!({
            "n": self.n.to_string(),
            "A": self.a.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
        })
    }
}

fn cached<T: Clone + Send + 'static>(
    cell: &'static OnceLock<Mutex<HashMap<usize, T>>>,
    n: usize,
    make: impl FnOnce() -> T,
) -> T {
    let map = cell.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = map.lock().unwrap().get(&n) {
        return v.clone();
    }
    let v = make();
    map.lock().unwrap().insert(n, v.clone());
    v
}

/// Table K[i][j]: coefficient of x^{n-j} y^j in (x+y)^{n-i} (x-y)^i.
pub fn krawtchouk(n: usize) -> Arc<Vec<Vec<Integer>>> {
    static CELL: OnceLock<Mutex<HashMap<usize, Arc<Vec<Vec<Integer>>>>>> = OnceLock::new();
    cached(&CELL, n, || {
        let mut rows = Vec::with_capacity(n + 1);
        let mut cur = poly_pow(&ints(&[1, 1]), n);
        rows.push(cur.clone());
        for _ in 0..n {
            // multiply by (1 - y), divide by (1 + y)
            let mut m = poly_mul(&cur, &ints(&[1, -1]));
            let mut q = vec![Integer::zero(); m.len() - 1];
            for d in (1..m.len()).rev() {
                q[d - 1] = m[d].clone();
                let t = m[d].clone();
                m[d - 1] -= t;
            }
            debug_assert!(m[0].is_zero());
            cur = q;
            rows.push(cur.clone());
        }
        Arc::new(rows)
    })
}

/// Enumerator of the dual of a dimension-ℓ code with enumerator W.
pub fn macwilliams(w: &WeightEnumerator, l: usize) -> Result<WeightEnumerator> {
    let n = w.n;
    assert!(l <= n);
    let k = krawtchouk(n);
    let scale = pow2(l as u32);
    let mut b = vec![Integer::zero(); n + 1];
    for (i, ai) in w.a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (bj, kij) in b.iter_mut().zip(&k[i]) {
            if !kij.is_zero() {
                *bj += ai * kij;
            }
        }
    }
    for (j, bj) in b.iter_mut().enumerate() {
        if !(&*bj % &scale).is_zero() {
            return Err(Error::NonIntegralTransform(j));
        }
        *bj /= &scale;
    }
    Ok(WeightEnumerator { n, a: b })
}

/// An enumerator whose coefficients are affine in named parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParametricEnumerator {
    pub n: usize,
    pub params: Vec<String>,
    pub a: Vec<Affine>,
}

impl ParametricEnumerator {
    pub fn nparams(&self) -> usize {
        self.params.len()
    }

    pub fn coefficient(&self, w: usize) -> &Affine {
        &self.a[w]
    }

    pub fn substitute(&self, x: &[Rational]) -> Vec<Rational> {
        self.a.iter().map(|f| f.eval(x)).collect()
    }

    /// Concrete enumerator when the parameter list is empty and everything is integral.
    pub fn concrete(&self) -> Option<WeightEnumerator> {
        if !self.params.is_empty() || !self.a.iter().all(Affine::is_integral) {
            return None;
        }
        Some(WeightEnumerator::new(self.a.iter().map(|f| f.constant.to_integer()).collect()))
    }

    pub fn render(&self, w: usize) -> String {
        self.a[w].render(&self.params)
    }

    /// Integer constant and integer coefficients at weight w, or None if not integral.
    pub fn integer_row(&self, w: usize) -> Option<(Integer, Vec<Integer>)> {
        self.a[w].integer_coeffs()
    }

    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = self
            .a
            .iter()
            .enumerate()
            .filter(|(_, f)| !f.is_zero())
            .map(|(w, f)| {
                json!({
                    "weight": w.to_string(),
                    "constant": fmt_rat(&f.constant),
                    "coefficients": f.coeffs.iter().map(fmt_rat).collect::<Vec<_>>(),
                })
            })
            .collect();
        json!({ "n": self.n.to_string(), "params": self.params, "rows": rows })
    }
}

/// Apply the MacWilliams transform to affine coefficients.
pub fn macwilliams_parametric(p: &ParametricEnumerator, l: usize) -> ParametricEnumerator {
    let n = p.n;
    let k = krawtchouk(n);
    let np = p.nparams();
    let inv = Rational::new(Integer::one(), pow2(l as u32));
    let mut b: Vec<Affine> = vec![Affine::zero(np); n + 1];
    for (i, ai) in p.a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (bj, kij) in b.iter_mut().zip(&k[i]) {
            if !kij.is_zero() {
                bj.add_scaled(ai, &rat_of(kij));
            }
        }
    }
    for bj in b.iter_mut() {
        *bj = bj.scale(&inv);
    }
    ParametricEnumerator {
        n,
        params: p.params.clone(),
        a: b,
    }
}

// ---------------------------------------------------------------------------
// Gleason basis

/// g1^{n/8-3i} g2^i for i = 0..=n/24, with g1 = x^8+14x^4y^4+y^8 and
/// g2 = x^4y^4(x^4-y^4)^4.
pub fn gleason_basis(n: usize) -> Arc<Vec<Vec<Integer>>> {
    assert!(n % 8 == 0, "Gleason basis needs n divisible by 8");
    static CELL: OnceLock<Mutex<HashMap<usize, Arc<Vec<Vec<Integer>>>>>> = OnceLock::new();
    cached(&CELL, n, || {
        let g1 = ints(&[1, 0, 0, 0, 14, 0, 0, 0, 1]);
        let g2 = poly_mul(&ints(&[0, 0, 0, 0, 1]), &poly_pow(&ints(&[1, 0, 0, 0, -1]), 4));
        let basis = (0..=n / 24)
            .map(|i| pad(poly_mul(&poly_pow(&g1, n / 8 - 3 * i), &poly_pow(&g2, i)), n))
            .collect();
        Arc::new(basis)
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GleasonForm {
    pub n: usize,
    pub coeffs: Vec<Rational>,
}

impl GleasonForm {
    pub fn expand(&self) -> Vec<Rational> {
        let basis = gleason_basis(self.n);
        let mut out = vec![Rational::zero(); self.n + 1];
        for (a, g) in self.coeffs.iter().zip(basis.iter()) {
            if a.is_zero() {
                continue;
            }
            for (o, c) in out.iter_mut().zip(g) {
                if !c.is_zero() {
                    *o += a * rat_of(c);
                }
            }
        }
        out
    }

    pub fn expand_integral(&self) -> Option<WeightEnumerator> {
        let e = self.expand();
        if e.iter().all(is_integral) {
            Some(WeightEnumerator::new(e.into_iter().map(|x| x.to_integer()).collect()))
        } else {
            None
        }
    }
}

pub fn gleason_decompose(w: &WeightEnumerator) -> Result<GleasonForm> {
    let n = w.n;
    if n % 8 != 0 || w.a.iter().enumerate().any(|(i, x)| i % 4 != 0 && !x.is_zero()) {
        return Err(Error::NotInSpan);
    }
    let basis = gleason_basis(n);
    let mut coeffs: Vec<Rational> = Vec::with_capacity(basis.len());
    for i in 0..basis.len() {
        let mut acc = rat_of(&w.a[4 * i]);
        for (j, aj) in coeffs.iter().enumerate() {
            acc -= aj * rat_of(&basis[j][4 * i]);
        }
        // basis[i] starts at y^{4i} with coefficient 1
        coeffs.push(acc);
    }
    let form = GleasonForm { n, coeffs };
    let back = form.expand();
    if back.iter().zip(&w.a).any(|(x, y)| *x != rat_of(y)) {
        return Err(Error::NotInSpan);
    }
    Ok(form)
}

/// Doubly even self-dual enumerators of length n with A_0 = 1 and
/// A_4 = ... = A_{d-4} = 0.
///
/// Each free Gleason coefficient a_i becomes a parameter p_i chosen so that
/// A_{4i} = p_i + (terms in parameters of lower index). The parameter of the
/// highest index is α, the next β, and so on.
pub fn extremal_family(n: usize, d: usize) -> Result<ParametricEnumerator> {
    if n % 8 != 0 || d % 4 != 0 || d < 4 {
        return Err(Error::Overconstrained);
    }
    let basis = gleason_basis(n);
    let jmax = basis.len() - 1;
    // conditions at weights 0, 4, ..., d-4
    let nfix = d / 4;
    if nfix > jmax + 1 {
        // every a_i is pinned; the remaining zero conditions must hold on their own
        let form = anchored_coefficients(n, &basis);
        let e = GleasonForm { n, coeffs: form }.expand();
        if (jmax + 1..nfix).any(|i| !e[4 * i].is_zero()) {
            return Err(Error::Overconstrained);
        }
    }
    let anchor = anchored_coefficients(n, &basis);
    let free: Vec<usize> = (nfix.min(jmax + 1)..=jmax).collect();
    let np = free.len();
    let params: Vec<String> = GREEK[..np].iter().map(|s| s.to_string()).collect();
    let mut a: Vec<Affine> = vec![Affine::zero(np); n + 1];
    for (i, g) in basis.iter().enumerate() {
        let slot = free.iter().position(|&f| f == i).map(|t| np - 1 - t);
        for (w, c) in g.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let c = rat_of(c);
            a[w].constant += &anchor[i] * &c;
            if let Some(s) = slot {
                a[w].coeffs[s] += c;
            }
        }
    }
    Ok(ParametricEnumerator { n, params, a })
}

/// Gleason coefficients with A_0 = 1 and A_4 = ... = A_{4J} = 0.
fn anchored_coefficients(n: usize, basis: &[Vec<Integer>]) -> Vec<Rational> {
    let mut target = vec![Integer::zero(); n + 1];
    target[0] = Integer::one();
    let mut coeffs: Vec<Rational> = Vec::new();
    for i in 0..basis.len() {
        let mut acc = rat_of(&target[4 * i]);
        for (j, aj) in coeffs.iter().enumerate() {
            acc -= aj * rat_of(&basis[j][4 * i]);
        }
        coeffs.push(acc);
    }
    coeffs
}

pub fn latin_name(i: usize) -> String {
    ((b'a' + i as u8) as char).to_string()
}

/// Symmetric doubly even enumerator of a dimension-ℓ code containing the
/// all-one vector, with unknowns at weights d, d+4, ..., n/2-4 (minus `absent`)
/// and the middle coefficient fixed by the total 2^ℓ.
pub fn doubly_even_subcode_family_excluding(
    n: usize,
    l: usize,
    d: usize,
    absent: &[usize],
) -> ParametricEnumerator {
    assert!(n % 8 == 0 && l < n / 2 + 1);
    let weights: Vec<usize> = (d..n / 2)
        .step_by(4)
        .filter(|w| w % 4 == 0 && !absent.contains(w))
        .collect();
    let np = weights.len();
    let params: Vec<String> = (0..np).map(latin_name).collect();
    let mut a = vec![Affine::zero(np); n + 1];
    a[0] = Affine::constant(np, rat(1));
    a[n] = Affine::constant(np, rat(1));
    let mut middle = Affine::constant(np, rat_of(&pow2(l as u32)) - rat(2));
    for (s, &w) in weights.iter().enumerate() {
        a[w] = Affine::var(np, s);
        a[n - w] = Affine::var(np, s);
        middle.coeffs[s] = rat(-2);
    }
    a[n / 2] = middle;
    ParametricEnumerator { n, params, a }
}

pub fn doubly_even_subcode_family(n: usize, l: usize, d: usize, contains_all_one: bool) -> ParametricEnumerator {
    assert!(contains_all_one, "the symmetric ansatz assumes the all-one vector");
    doubly_even_subcode_family_excluding(n, l, d, &[])
}

// ---------------------------------------------------------------------------
// Conway–Sloane singly even enumerator and its shadow

/// (x²+y²)^{n/2-4j} (x²y²(x²-y²)²)^j for j = 0..=n/8.
pub fn conway_sloane_code_basis(n: usize) -> Vec<Vec<Rational>> {
    let u = ints(&[1, 0, 1]);
    let v = ints(&[0, 0, 1, 0, -2, 0, 1]);
    (0..=n / 8)
        .map(|j| {
            pad(poly_mul(&poly_pow(&u, n / 2 - 4 * j), &poly_pow(&v, j)), n)
                .iter()
                .map(rat_of)
                .collect()
        })
        .collect()
}

/// (-1)^j 2^{n/2-6j} (xy)^{n/2-4j} (x⁴-y⁴)^{2j} for j = 0..=n/8.
pub fn conway_sloane_shadow_basis(n: usize) -> Vec<Vec<Rational>> {
    (0..=n / 8)
        .map(|j| {
            let mut p = vec![Integer::zero(); n / 2 - 4 * j];
            p.push(Integer::one());
            let p = pad(poly_mul(&p, &poly_pow(&ints(&[1, 0, 0, 0, -1]), 2 * j)), n);
            let e = n as i64 / 2 - 6 * j as i64;
            let mut s = if e >= 0 {
                rat_of(&pow2(e as u32))
            } else {
                Rational::new(Integer::one(), pow2((-e) as u32))
            };
            if j % 2 == 1 {
                s = -s;
            }
            p.iter().map(|c| rat_of(c) * &s).collect()
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShadowPair {
    pub n: usize,
    /// c_j as affine forms in the parameters.
    pub c: Vec<Affine>,
    pub code: ParametricEnumerator,
    pub shadow: ParametricEnumerator,
}

fn lcm_denominators(v: &[Rational]) -> Integer {
    use num_integer::Integer as _;
    v.iter().fold(Integer::one(), |acc, x| acc.lcm(x.denom()))
}

/// Singly even self-dual enumerators with code minimum weight >= cmin and
/// shadow minimum weight >= smin, with the shadow alongside.
///
/// The free c_j (ascending) attach to A_{2j}, except the last, which attaches
/// to the shadow weight n/2 - 4j; each parameter is the smallest integer
/// multiple of c_j that keeps every A_i and B_i integral in its direction,
/// and the particular solution vanishes at the attachment weights. The
/// shadow-attached parameter is `a`; the code-attached ones follow from the
/// highest weight down.
pub fn singly_even_family_with_shadow(n: usize, cmin: usize, smin: usize) -> Result<ShadowPair> {
    assert!(n % 2 == 0);
    let bc = conway_sloane_code_basis(n);
    let bs = conway_sloane_shadow_basis(n);
    let nc = bc.len();
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    let mut rhs: Vec<Rational> = Vec::new();
    rows.push((0..nc).map(|j| bc[j][0].clone()).collect());
    rhs.push(rat(1));
    for w in (2..cmin).step_by(2) {
        rows.push((0..nc).map(|j| bc[j][w].clone()).collect());
        rhs.push(rat(0));
    }
    for w in ((n / 2) % 4..smin).step_by(4) {
        rows.push((0..nc).map(|j| bs[j][w].clone()).collect());
        rhs.push(rat(0));
    }
    let LinearSolution::Solved { nullspace, .. } = linalg::solve(&rows, &rhs, nc) else {
        return Err(Error::Overconstrained);
    };
    // directions; each has a single nonzero among the free columns
    let mut free: Vec<(usize, Vec<Rational>)> = nullspace
        .into_iter()
        .map(|v| {
            let j = (0..nc).rev().find(|&j| !v[j].is_zero()).unwrap();
            (j, v)
        })
        .collect();
    free.sort_by_key(|(j, _)| *j);
    let np = free.len();
    // attachment equations
    let mut arows = rows.clone();
    let mut arhs = rhs.clone();
    for (t, (j, _)) in free.iter().enumerate() {
        if t + 1 == np {
            let w = n / 2 - 4 * j;
            arows.push((0..nc).map(|i| bs[i][w].clone()).collect());
        } else {
            arows.push((0..nc).map(|i| bc[i][2 * j].clone()).collect());
        }
        arhs.push(rat(0));
    }
    let particular = match linalg::solve(&arows, &arhs, nc) {
        LinearSolution::Solved { particular, nullspace } if nullspace.is_empty() => particular,
        _ => return Err(Error::Overconstrained),
    };
    let mut c: Vec<Affine> = particular.iter().map(|x| Affine::constant(np, x.clone())).collect();
    for (t, (_, dir)) in free.iter().enumerate() {
        let mut coeff_a = vec![Rational::zero(); n + 1];
        let mut coeff_b = vec![Rational::zero(); n + 1];
        for (i, di) in dir.iter().enumerate() {
            if di.is_zero() {
                continue;
            }
            for w in 0..=n {
                coeff_a[w] += di * &bc[i][w];
                coeff_b[w] += di * &bs[i][w];
            }
        }
        let mut all = coeff_a;
        all.extend(coeff_b);
        all.extend(dir.iter().cloned());
        let scale = rat_of(&lcm_denominators(&all));
        for (i, di) in dir.iter().enumerate() {
            c[i].coeffs[np - 1 - t] += di * &scale;
        }
    }
    let params: Vec<String> = (0..np).map(latin_name).collect();
    let expand = |basis: &[Vec<Rational>]| -> Vec<Affine> {
        let mut out = vec![Affine::zero(np); n + 1];
        for (j, cj) in c.iter().enumerate() {
            for (w, b) in basis[j].iter().enumerate() {
                if !b.is_zero() {
                    out[w].add_scaled(cj, b);
                }
            }
        }
        out
    };
    let code = ParametricEnumerator {
        n,
        params: params.clone(),
        a: expand(&bc),
    };
    let shadow = ParametricEnumerator {
        n,
        params,
        a: expand(&bs),
    };
    Ok(ShadowPair { n, c, code, shadow })
}
