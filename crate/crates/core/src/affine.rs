//! Affine forms c + Σ a_i x_i with exact rational coefficients.

use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::combinatorics::{fmt_rat, is_integral, Integer, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Affine {
    pub constant: Rational,
    pub coeffs: Vec<Rational>,
}

impl Affine {
    pub fn zero(nvars: usize) -> Self {
        Affine {
            constant: Rational::zero(),
            coeffs: vec![Rational::zero(); nvars],
        }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Affine {
            constant: c,
            coeffs: vec![Rational::zero(); nvars],
        }
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut a = Affine::zero(nvars);
        a.coeffs[i] = Rational::one();
        a
    }

    pub fn nvars(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_zero(&self) -> bool {
        self.constant.is_zero() && self.is_constant()
    }

    pub fn is_integral(&self) -> bool {
        is_integral(&self.constant) && self.coeffs.iter().all(is_integral)
    }

    pub fn scale(&self, s: &Rational) -> Affine {
        Affine {
            constant: &self.constant * s,
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    pub fn add_scaled(&mut self, other: &Affine, s: &Rational) {
        if s.is_zero() {
            return;
        }
        self.constant += &other.constant * s;
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            if !b.is_zero() {
                *a += b * s;
            }
        }
    }

    pub fn eval(&self, x: &[Rational]) -> Rational {
        let mut acc = self.constant.clone();
        for (a, xi) in self.coeffs.iter().zip(x) {
            if !a.is_zero() {
                acc += a * xi;
            }
        }
        acc
    }

    /// Substitute x_i = forms[i]; the result lives in the variables of `forms`.
    pub fn compose(&self, forms: &[Affine], nvars: usize) -> Affine {
        let mut out = Affine::constant(nvars, self.constant.clone());
        for (a, f) in self.coeffs.iter().zip(forms) {
            out.add_scaled(f, a);
        }
        out
    }

    pub fn integer_coeffs(&self) -> Option<(Integer, Vec<Integer>)> {
        if !self.is_integral() {
            return None;
        }
        Some((
            self.constant.to_integer(),
            self.coeffs.iter().map(|c| c.to_integer()).collect(),
        ))
    }

    /// Human-readable rendering with the given variable names.
    pub fn render(&self, names: &[String]) -> String {
        let mut parts: Vec<String> = Vec::new();
        if !self.constant.is_zero() {
            parts.push(fmt_rat(&self.constant));
        }
        for (a, name) in self.coeffs.iter().zip(names) {
            if a.is_zero() {
                continue;
            }
            let term = if a.is_one() {
                name.clone()
            } else if (-a).is_one() {
                format!("-{name}")
            } else {
                format!("{}{}", fmt_rat(a), name)
            };
            parts.push(term);
        }
        if parts.is_empty() {
            return "0".into();
        }
        let mut s = parts[0].clone();
        for p in &parts[1..] {
            match p.strip_prefix('-') {
                Some(rest) => {
                    s.push_str(" - ");
                    s.push_str(rest);
                }
                None => {
                    s.push_str(" + ");
                    s.push_str(p);
                }
            }
        }
        s
    }
}

impl Add for &Affine {
    type Output = Affine;
    fn add(self, rhs: &Affine) -> Affine {
        let mut out = self.clone();
        out.add_scaled(rhs, &Rational::one());
        out
    }
}

impl Sub for &Affine {
    type Output = Affine;
    fn sub(self, rhs: &Affine) -> Affine {
        let mut out = self.clone();
        out.add_scaled(rhs, &-Rational::one());
        out
    }
}

impl Neg for &Affine {
    type Output = Affine;
    fn neg(self) -> Affine {
        self.scale(&-Rational::one())
    }
}

impl Mul<&Rational> for &Affine {
    type Output = Affine;
    fn mul(self, rhs: &Rational) -> Affine {
        self.scale(rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::rat;

    #[test]
    fn render_signs() {
        let names: Vec<String> = ["a", "b", "c"].iter().map(|s| s.to_string()).collect();
        let f = Affine {
            constant: rat(17250),
            coeffs: vec![rat(-24), rat(-1), rat(0)],
        };
        assert_eq!(f.render(&names), "17250 - 24a - b");
        assert_eq!(Affine::zero(3).render(&names), "0");
    }

    #[test]
    fn compose_and_eval() {
        // f = 1 + 2x0 - x1, x0 = y0 + 1, x1 = 3y0
        let f = Affine {
            constant: rat(1),
            coeffs: vec![rat(2), rat(-1)],
        };
        let sub = [
            Affine {
                constant: rat(1),
                coeffs: vec![rat(1)],
            },
            Affine {
                constant: rat(0),
                coeffs: vec![rat(3)],
            },
        ];
        let g = f.compose(&sub, 1);
        assert_eq!(g.constant, rat(3));
        assert_eq!(g.coeffs, vec![rat(-1)]);
        assert_eq!(g.eval(&[rat(5)]), f.eval(&[rat(6), rat(15)]));
    }
}
