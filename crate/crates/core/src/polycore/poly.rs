use super::monomial::Monomial;
use super::{Error, LinearChange, Result};
use crate::Rat;
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// Sparse multivariate polynomial with exact rational coefficients.
///
/// No zero coefficient is ever stored; `terms` is keyed graded-lex so all
/// iteration is deterministic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    num_vars: usize,
    terms: BTreeMap<Monomial, Rat>,
}

impl Polynomial {
    pub fn zero(num_vars: usize) -> Self {
        assert!(num_vars >= 1, "at least one variable");
        Polynomial {
            num_vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(num_vars: usize, c: Rat) -> Self {
        let mut p = Self::zero(num_vars);
        p.add_term(Monomial::constant(num_vars), c);
        p
    }

    pub fn var(num_vars: usize, index: usize) -> Self {
        let mut p = Self::zero(num_vars);
        p.add_term(Monomial::var(num_vars, index), Rat::one());
        p
    }

    pub fn monomial(num_vars: usize, exps: &[u32], coeff: Rat) -> Self {
        assert_eq!(exps.len(), num_vars);
        let mut p = Self::zero(num_vars);
        p.add_term(Monomial(exps.to_vec()), coeff);
        p
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn constant_term(&self) -> Rat {
        self.coefficient(&Monomial::constant(self.num_vars))
    }

    /// Maximal total degree, or `None` for the zero polynomial.
    pub fn max_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    /// Minimal total degree over the support.
    pub fn min_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).min()
    }

    /// `Some(d)` when every monomial has total degree `d`.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let d = self.max_degree()?;
        if self.min_degree() == Some(d) {
            Some(d)
        } else {
            None
        }
    }

    /// Variables occurring with positive exponent somewhere.
    pub fn used_vars(&self) -> Vec<usize> {
        let mut used = vec![false; self.num_vars];
        for m in self.terms.keys() {
            for i in m.support() {
                used[i] = true;
            }
        }
        used.iter()
            .enumerate()
            .filter(|(_, &u)| u)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn add_term(&mut self, m: Monomial, c: Rat) {
        assert_eq!(m.num_vars(), self.num_vars);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        assert_eq!(self.num_vars, other.num_vars);
        let mut out = self.clone();
        for (m, c) in other.terms.iter() {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Polynomial {
        let mut out = Polynomial::zero(self.num_vars);
        for (m, c) in self.terms.iter() {
            out.terms.insert(m.clone(), -c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        assert_eq!(self.num_vars, other.num_vars);
        let mut out = Polynomial::zero(self.num_vars);
        for (ma, ca) in self.terms.iter() {
            for (mb, cb) in other.terms.iter() {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.num_vars);
        }
        let mut out = Polynomial::zero(self.num_vars);
        for (m, a) in self.terms.iter() {
            out.terms.insert(m.clone(), a * c);
        }
        out
    }

    pub fn pow(&self, n: u32) -> Polynomial {
        let mut out = Polynomial::constant(self.num_vars, Rat::one());
        for _ in 0..n {
            out = out.mul(self);
        }
        out
    }

    pub fn evaluate(&self, point: &[Rat]) -> Result<Rat> {
        if point.len() != self.num_vars {
            return Err(Error::DimensionMismatch {
                expected: self.num_vars,
                got: point.len(),
            });
        }
        let mut acc = Rat::zero();
        for (m, c) in self.terms.iter() {
            let mut v = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                for _ in 0..e {
                    v *= &point[i];
                }
            }
            acc += v;
        }
        Ok(acc)
    }

    /// Partial derivative with respect to `x_i`.
    pub fn derivative(&self, i: usize) -> Polynomial {
        let mut out = Polynomial::zero(self.num_vars);
        for (m, c) in self.terms.iter() {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut exps = m.0.clone();
            exps[i] = e - 1;
            out.add_term(Monomial(exps), c * Rat::from(crate::BigInt::from(e)));
        }
        out
    }

    /// Componentwise minimum of all exponent vectors (the monomial content).
    pub fn content_monomial(&self) -> Option<Monomial> {
        let mut iter = self.terms.keys();
        let first = iter.next()?;
        let mut min = first.0.clone();
        for m in iter {
            for (a, b) in min.iter_mut().zip(&m.0) {
                *a = (*a).min(*b);
            }
        }
        Some(Monomial(min))
    }

    /// Exact division by a monomial; every exponent must dominate.
    pub fn div_monomial(&self, m: &Monomial) -> Option<Polynomial> {
        let mut out = Polynomial::zero(self.num_vars);
        for (t, c) in self.terms.iter() {
            let mut exps = Vec::with_capacity(self.num_vars);
            for (a, b) in t.0.iter().zip(&m.0) {
                if a < b {
                    return None;
                }
                exps.push(a - b);
            }
            out.terms.insert(Monomial(exps), c.clone());
        }
        Some(out)
    }
}

/// Compose `f` with the linear change `g`: returns `f(Mx)` expanded exactly.
///
/// Degree and homogeneity are preserved since `M` is invertible.
pub fn substitute_linear(f: &Polynomial, g: &LinearChange) -> Result<Polynomial> {
    let n = f.num_vars();
    if g.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: g.dim(),
        });
    }
    // linear form replacing each variable
    let images: Vec<Polynomial> = (0..n)
        .map(|i| {
            let mut row = Polynomial::zero(n);
            for (j, c) in g.row(i).iter().enumerate() {
                if !c.is_zero() {
                    row.add_term(Monomial::var(n, j), c.clone());
                }
            }
            row
        })
        .collect();
    let mut out = Polynomial::zero(n);
    for (m, c) in f.terms() {
        let mut term = Polynomial::constant(n, c.clone());
        for (i, &e) in m.0.iter().enumerate() {
            if e > 0 {
                term = term.mul(&images[i].pow(e));
            }
        }
        out = out.add(&term);
    }
    Ok(out)
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        // highest graded-lex terms first
        for (m, c) in self.terms.iter().rev() {
            let neg = c < &Rat::zero();
            let abs = if neg { -c.clone() } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let coeff_one = abs.is_one();
            if m.is_constant() {
                write!(f, "{}", fmt_coeff(&abs))?;
            } else if coeff_one {
                write!(f, "{m}")?;
            } else {
                write!(f, "{}*{m}", fmt_coeff(&abs))?;
            }
        }
        Ok(())
    }
}

fn fmt_coeff(c: &Rat) -> String {
    if c.is_integer() {
        c.to_string()
    } else {
        format!("({})", c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::parse_polynomial;
    use crate::{rat, rat_int};

    #[test]
    fn arithmetic_and_display() {
        let f = parse_polynomial("x0^2 + 2*x0*x1 + x1^2", 2).unwrap();
        let g = parse_polynomial("x0 + x1", 2).unwrap();
        assert_eq!(g.mul(&g), f);
        assert_eq!(f.to_string(), "x0^2 + 2*x0*x1 + x1^2");
    }

    #[test]
    fn substitution_expands_square() {
        // x0^2 under x0 -> x0 + x1
        let f = parse_polynomial("x0^2", 2).unwrap();
        let g = LinearChange::new(vec![
            vec![rat_int(1), rat_int(1)],
            vec![rat_int(0), rat_int(1)],
        ])
        .unwrap();
        let h = substitute_linear(&f, &g).unwrap();
        assert_eq!(h, parse_polynomial("x0^2 + 2*x0*x1 + x1^2", 2).unwrap());
    }

    #[test]
    fn substitution_permutation_and_identity() {
        let f = parse_polynomial("x0^2", 2).unwrap();
        let swap = LinearChange::permutation(&[1, 0]);
        assert_eq!(
            substitute_linear(&f, &swap).unwrap(),
            parse_polynomial("x1^2", 2).unwrap()
        );
        let fxy = parse_polynomial("x0*x1", 2).unwrap();
        let id = LinearChange::identity(2);
        assert_eq!(substitute_linear(&fxy, &id).unwrap(), fxy);
    }

    #[test]
    fn evaluate_rational() {
        let f = parse_polynomial("x0^2*x1 + (3/2)*x1^3", 2).unwrap();
        let v = f.evaluate(&[rat_int(2), rat_int(1)]).unwrap();
        assert_eq!(v, rat(11, 2));
    }

    #[test]
    fn homogeneity_detection() {
        let f = parse_polynomial("x0^3 + x1^3 + x2^3", 3).unwrap();
        assert_eq!(f.homogeneous_degree(), Some(3));
        let g = parse_polynomial("x0^2 + x1", 2).unwrap();
        assert_eq!(g.homogeneous_degree(), None);
    }
}
