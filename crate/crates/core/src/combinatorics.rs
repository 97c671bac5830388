//! Exact integers, rationals and the parameter calculus of t-designs.

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Integer = BigInt;
pub type Rational = BigRational;

pub fn int(x: i64) -> Integer {
    Integer::from(x)
}

pub fn rat(x: i64) -> Rational {
    Rational::from_integer(Integer::from(x))
}

pub fn rat_of(x: &Integer) -> Rational {
    Rational::from_integer(x.clone())
}

pub fn pow2(e: u32) -> Integer {
    Integer::one() << e
}

/// C(n, k), zero outside 0 <= k <= n.
pub fn binom(n: i64, k: i64) -> Integer {
    assert!(n >= 0, "binom: n must be nonnegative");
    if k < 0 || k > n {
        return Integer::zero();
    }
    let k = k.min(n - k);
    let mut acc = Integer::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Pascal triangle rows 0..=n, for hot loops that need many binomials.
#[derive(Debug, Clone)]
pub struct BinomTable {
    rows: Vec<Vec<Integer>>,
}

impl BinomTable {
    pub fn new(n: usize) -> Self {
        let mut rows: Vec<Vec<Integer>> = Vec::with_capacity(n + 1);
        rows.push(vec![Integer::one()]);
        for i in 1..=n {
            let prev = &rows[i - 1];
            let mut row = Vec::with_capacity(i + 1);
            row.push(Integer::one());
            for j in 1..i {
                row.push(&prev[j - 1] + &prev[j]);
            }
            row.push(Integer::one());
            rows.push(row);
        }
        BinomTable { rows }
    }

    pub fn get(&self, n: usize, k: i64) -> Integer {
        if k < 0 || k as usize > n {
            Integer::zero()
        } else {
            self.rows[n][k as usize].clone()
        }
    }

    pub fn at(&self, n: usize, k: usize) -> &Integer {
        &self.rows[n][k]
    }
}

/// Smallest e with 2^e > x, i.e. ceil(log2(x + 1)) for x >= 0.
pub fn bit_length(x: &Integer) -> u64 {
    x.bits()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DesignParams {
    pub t: u32,
    pub v: u32,
    pub k: u32,
    pub lambda: Integer,
    pub lambda_index: Vec<Integer>,
}

impl DesignParams {
    pub fn b(&self) -> &Integer {
        &self.lambda_index[0]
    }

    pub fn r(&self) -> &Integer {
        &self.lambda_index[1]
    }

    /// Parameters of the complementary design (blocks replaced by complements).
    pub fn complement(&self) -> Result<DesignParams> {
        let kc = self.v - self.k;
        if kc < self.t {
            return Err(Error::InvalidParams(format!(
                "complement block size {kc} is below t = {}",
                self.t
            )));
        }
        let num = self.b() * binom(kc as i64, self.t as i64);
        let den = binom(self.v as i64, self.t as i64);
        let (q, rem) = num.div_rem(&den);
        if !rem.is_zero() {
            return Err(Error::NonIntegral);
        }
        design_params(self.t, self.v, kc, q)
    }
}

pub fn design_params(t: u32, v: u32, k: u32, lambda: Integer) -> Result<DesignParams> {
    if !(0 < t && t <= k && k < v) {
        return Err(Error::InvalidParams(format!(
            "need 0 < t <= k < v, got t={t}, v={v}, k={k}"
        )));
    }
    if !lambda.is_positive() {
        return Err(Error::InvalidParams("lambda must be positive".into()));
    }
    let mut lambda_index = Vec::with_capacity(t as usize + 1);
    for i in 0..=t {
        let num = &lambda * binom((v - i) as i64, (t - i) as i64);
        let den = binom((k - i) as i64, (t - i) as i64);
        let (q, rem) = num.div_rem(&den);
        if !rem.is_zero() {
            return Err(Error::NonIntegralIndex(i as usize));
        }
        lambda_index.push(q);
    }
    Ok(DesignParams {
        t,
        v,
        k,
        lambda,
        lambda_index,
    })
}

/// λ of the 5-design formed by b blocks of size k on v points.
pub fn lambda_from_block_count(v: u32, k: u32, b: &Integer) -> Result<Integer> {
    if !b.is_positive() || k < 5 || k >= v {
        return Err(Error::InvalidParams(format!(
            "need b > 0 and 5 <= k < v, got v={v}, k={k}, b={b}"
        )));
    }
    let num = b * binom(k as i64, 5);
    let den = binom(v as i64, 5);
    let (q, rem) = num.div_rem(&den);
    if !rem.is_zero() {
        return Err(Error::NonIntegral);
    }
    Ok(q)
}

pub fn is_integral(x: &Rational) -> bool {
    x.denom().is_one()
}

/// Render a rational as "p" or "p/q".
pub fn fmt_rat(x: &Rational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn parse_int(s: &str) -> Result<Integer> {
    s.trim()
        .parse::<Integer>()
        .map_err(|_| Error::Parse(format!("not an integer: {s:?}")))
}

pub fn parse_rat(s: &str) -> Result<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let q = parse_int(q)?;
            if q.is_zero() {
                return Err(Error::Parse(format!("zero denominator: {s:?}")));
            }
            Ok(Rational::new(parse_int(p)?, q))
        }
        None => Ok(Rational::from_integer(parse_int(s)?)),
    }
}
