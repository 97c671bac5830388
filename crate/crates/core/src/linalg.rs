//! Exact dense linear algebra over Q and Z.

use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use crate::combinatorics::{Integer, Rational};

pub type Matrix = Vec<Vec<Rational>>;

pub fn to_rational(m: &[Vec<Integer>]) -> Matrix {
    m.iter()
        .map(|row| row.iter().map(|x| Rational::from_integer(x.clone())).collect())
        .collect()
}

/// Reduced row echelon form with the row transform: `transform * a = reduced`.
#[derive(Debug, Clone)]
pub struct Rref {
    pub reduced: Matrix,
    pub transform: Matrix,
    pub pivots: Vec<usize>,
}

pub fn rref(a: &Matrix, ncols: usize) -> Rref {
    let m = a.len();
    let mut r: Matrix = a.to_vec();
    let mut t: Matrix = (0..m)
        .map(|i| {
            (0..m)
                .map(|j| if i == j { Rational::one() } else { Rational::zero() })
                .collect()
        })
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        if row == m {
            break;
        }
        let Some(p) = (row..m).find(|&i| !r[i][col].is_zero()) else {
            continue;
        };
        r.swap(row, p);
        t.swap(row, p);
        let inv = r[row][col].recip();
        for x in r[row].iter_mut() {
            *x *= &inv;
        }
        for x in t[row].iter_mut() {
            *x *= &inv;
        }
        for i in 0..m {
            if i == row || r[i][col].is_zero() {
                continue;
            }
            let f = r[i][col].clone();
            for j in 0..ncols {
                if !r[row][j].is_zero() {
                    let d = &r[row][j] * &f;
                    r[i][j] -= d;
                }
            }
            for j in 0..m {
                if !t[row][j].is_zero() {
                    let d = &t[row][j] * &f;
                    t[i][j] -= d;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    Rref {
        reduced: r,
        transform: t,
        pivots,
    }
}

pub fn mat_vec(t: &Matrix, b: &[Rational]) -> Vec<Rational> {
    t.iter()
        .map(|row| {
            row.iter()
                .zip(b)
                .fold(Rational::zero(), |acc, (x, y)| acc + x * y)
        })
        .collect()
}

pub fn transpose(a: &Matrix, ncols: usize) -> Matrix {
    (0..ncols)
        .map(|j| a.iter().map(|row| row[j].clone()).collect())
        .collect()
}

/// Outcome of solving a x = b.
#[derive(Debug, Clone)]
pub enum LinearSolution {
    /// Row multipliers u with uᵀa = 0 and uᵀb != 0.
    Inconsistent(Vec<Rational>),
    /// One particular solution plus a nullspace basis.
    Solved {
        particular: Vec<Rational>,
        nullspace: Vec<Vec<Rational>>,
    },
}

pub fn solve(a: &Matrix, b: &[Rational], ncols: usize) -> LinearSolution {
    let rr = rref(a, ncols);
    let tb = mat_vec(&rr.transform, b);
    let rank = rr.pivots.len();
    for i in rank..a.len() {
        if !tb[i].is_zero() {
            return LinearSolution::Inconsistent(rr.transform[i].clone());
        }
    }
    let mut particular = vec![Rational::zero(); ncols];
    for (i, &p) in rr.pivots.iter().enumerate() {
        particular[p] = tb[i].clone();
    }
    let mut nullspace = Vec::new();
    for free in (0..ncols).filter(|c| !rr.pivots.contains(c)) {
        let mut v = vec![Rational::zero(); ncols];
        v[free] = Rational::one();
        for (i, &p) in rr.pivots.iter().enumerate() {
            v[p] = -rr.reduced[i][free].clone();
        }
        nullspace.push(v);
    }
    LinearSolution::Solved {
        particular,
        nullspace,
    }
}

/// Find u with uᵀa = target, if one exists.
pub fn solve_left(a: &Matrix, target: &[Rational], ncols: usize) -> Option<Vec<Rational>> {
    let at = transpose(a, ncols);
    match solve(&at, target, a.len()) {
        LinearSolution::Solved { particular, .. } => Some(particular),
        LinearSolution::Inconsistent(_) => None,
    }
}

/// Indices of a maximal linearly independent subset of rows.
pub fn independent_rows(a: &Matrix, ncols: usize) -> Vec<usize> {
    let mut chosen: Vec<usize> = Vec::new();
    let mut basis: Matrix = Vec::new();
    for (i, row) in a.iter().enumerate() {
        let mut trial = basis.clone();
        trial.push(row.clone());
        if rref(&trial, ncols).pivots.len() > basis.len() {
            basis.push(row.clone());
            chosen.push(i);
        }
    }
    chosen
}

/// For a consistent integer system a x = b, return row multipliers u with
/// uᵀa integral and uᵀb non-integral when no integer solution exists.
///
/// Works on a column Hermite-style triangularisation of the independent rows.
pub fn integer_obstruction(a: &[Vec<Integer>], b: &[Integer], ncols: usize) -> Option<Vec<Rational>> {
    let ar = to_rational(a);
    let rows = independent_rows(&ar, ncols);
    let r = rows.len();
    let mut h: Vec<Vec<Integer>> = rows.iter().map(|&i| a[i].clone()).collect();
    for i in 0..r {
        // gather the gcd of h[i][i..] into column i with unimodular column moves
        for j in (i + 1)..ncols {
            if h[i][j].is_zero() {
                continue;
            }
            let x = h[i][i].clone();
            let y = h[i][j].clone();
            let eg = x.extended_gcd(&y);
            let (g, s, t) = (eg.gcd, eg.x, eg.y);
            let xg = &x / &g;
            let yg = &y / &g;
            for row in h.iter_mut() {
                let ci = row[i].clone();
                let cj = row[j].clone();
                row[i] = &s * &ci + &t * &cj;
                row[j] = &xg * &cj - &yg * &ci;
            }
        }
        if h[i][i].is_zero() {
            // rows were chosen independent; a zero pivot would mean they are not
            let p = (i + 1..ncols).find(|&j| !h[i][j].is_zero())?;
            for row in h.iter_mut() {
                row.swap(i, p);
            }
        }
        if h[i][i].is_negative() {
            for row in h.iter_mut() {
                row[i] = -row[i].clone();
            }
        }
    }
    // forward substitution on the lower-triangular r x r block
    let rhs: Vec<Rational> = rows.iter().map(|&i| Rational::from_integer(b[i].clone())).collect();
    let hr: Vec<Vec<Rational>> = h
        .iter()
        .map(|row| row[..r].iter().map(|x| Rational::from_integer(x.clone())).collect())
        .collect();
    let mut z: Vec<Rational> = Vec::with_capacity(r);
    for i in 0..r {
        let mut acc = rhs[i].clone();
        for (j, zj) in z.iter().enumerate() {
            acc -= &hr[i][j] * zj;
        }
        z.push(acc / &hr[i][i]);
    }
    let bad = z.iter().position(|zi| !zi.is_integer())?;
    // u solves uᵀ H = e_bad
    let mut u = vec![Rational::zero(); r];
    for i in (0..r).rev() {
        let mut acc = if i == bad { Rational::one() } else { Rational::zero() };
        for j in (i + 1)..r {
            acc -= &u[j] * &hr[j][i];
        }
        u[i] = acc / &hr[i][i];
    }
    let mut full = vec![Rational::zero(); a.len()];
    for (slot, &row) in rows.iter().enumerate() {
        full[row] = u[slot].clone();
    }
    Some(full)
}
