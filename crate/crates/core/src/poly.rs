//! Multivariate polynomials over `F_p` with a fixed, ordered variable list.
//!
//! Terms are kept in a `BTreeMap` from exponent vector to nonzero
//! coefficient, so iteration order (and printing) is deterministic.

use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

use crate::field::{is_supported_prime, FieldError, Fp};

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum PolynomialError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("variable index {0} out of range for {1} variables")]
    VariableOutOfRange(usize, usize),
    #[error("expected a univariate polynomial, found {0} variables")]
    NotUnivariate(usize),
    #[error("exponent vector length {0} does not match variable count {1}")]
    ExponentLength(usize, usize),
}

/// A polynomial in the ring `F_p[vars]`.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    p: u32,
    vars: Vec<String>,
    terms: BTreeMap<Vec<u32>, Fp>,
}

impl Polynomial {
    pub fn zero(p: u32, vars: &[&str]) -> Result<Self, PolynomialError> {
        if !is_supported_prime(p) {
            return Err(FieldError::UnsupportedModulus(p).into());
        }
        Ok(Polynomial {
            p,
            vars: vars.iter().map(|v| v.to_string()).collect(),
            terms: BTreeMap::new(),
        })
    }

    pub fn constant(p: u32, vars: &[&str], c: i64) -> Result<Self, PolynomialError> {
        let mut poly = Self::zero(p, vars)?;
        let coeff = Fp::new(p, c)?;
        if !coeff.is_zero() {
            poly.terms.insert(vec![0; poly.vars.len()], coeff);
        }
        Ok(poly)
    }

    /// The variable `vars[index]` as a polynomial.
    pub fn variable(p: u32, vars: &[&str], index: usize) -> Result<Self, PolynomialError> {
        let mut poly = Self::zero(p, vars)?;
        if index >= poly.vars.len() {
            return Err(PolynomialError::VariableOutOfRange(index, poly.vars.len()));
        }
        let mut exps = vec![0; poly.vars.len()];
        exps[index] = 1;
        poly.terms.insert(exps, Fp::one(p));
        Ok(poly)
    }

    /// Builds `c0 + c1 x + c2 x^2 + ...` in the single variable `var`.
    pub fn from_univariate_coeffs(
        p: u32,
        var: &str,
        coeffs: &[i64],
    ) -> Result<Self, PolynomialError> {
        let mut poly = Self::zero(p, &[var])?;
        for (e, &c) in coeffs.iter().enumerate() {
            let coeff = Fp::new(p, c)?;
            if !coeff.is_zero() {
                poly.terms.insert(vec![e as u32], coeff);
            }
        }
        Ok(poly)
    }

    /// Inserts a single term, accumulating with any existing coefficient.
    pub fn with_term(mut self, exps: &[u32], c: i64) -> Result<Self, PolynomialError> {
        if exps.len() != self.vars.len() {
            return Err(PolynomialError::ExponentLength(exps.len(), self.vars.len()));
        }
        let coeff = Fp::new(self.p, c)?;
        self.add_term(exps.to_vec(), coeff);
        Ok(self)
    }

    fn add_term(&mut self, exps: Vec<u32>, coeff: Fp) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(exps);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = *o.get() + coeff;
                if sum.is_zero() {
                    o.remove();
                } else {
                    o.insert(sum);
                }
            }
        }
    }

    fn assert_same_ring(&self, other: &Polynomial) {
        assert_eq!(self.p, other.p, "mixed prime moduli in polynomial ring");
        assert_eq!(self.vars, other.vars, "mixed variable lists");
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn variables(&self) -> &[String] {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `Some(c)` when the polynomial is the constant `c` (including zero).
    pub fn as_constant(&self) -> Option<Fp> {
        if self.terms.is_empty() {
            return Some(Fp::zero(self.p));
        }
        if self.terms.len() == 1 {
            let (exps, c) = self.terms.iter().next().unwrap();
            if exps.iter().all(|&e| e == 0) {
                return Some(*c);
            }
        }
        None
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Fp)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[u32]) -> Fp {
        self.terms
            .get(exps)
            .copied()
            .unwrap_or_else(|| Fp::zero(self.p))
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms
            .keys()
            .map(|e| e.iter().sum::<u32>())
            .max()
    }

    /// Degree in the variable at `index`; `None` for the zero polynomial.
    pub fn degree_in(&self, index: usize) -> Option<u32> {
        self.terms.keys().map(|e| e[index]).max()
    }

    pub fn add(&self, rhs: &Polynomial) -> Polynomial {
        self.assert_same_ring(rhs);
        let mut out = self.clone();
        for (exps, c) in &rhs.terms {
            out.add_term(exps.clone(), *c);
        }
        out
    }

    pub fn neg(&self) -> Polynomial {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = -*c;
        }
        out
    }

    pub fn sub(&self, rhs: &Polynomial) -> Polynomial {
        self.add(&rhs.neg())
    }

    pub fn scale(&self, c: Fp) -> Polynomial {
        if c.is_zero() {
            return Polynomial {
                p: self.p,
                vars: self.vars.clone(),
                terms: BTreeMap::new(),
            };
        }
        let mut out = self.clone();
        for coeff in out.terms.values_mut() {
            *coeff = *coeff * c;
        }
        out
    }

    pub fn mul(&self, rhs: &Polynomial) -> Polynomial {
        self.assert_same_ring(rhs);
        let mut out = Polynomial {
            p: self.p,
            vars: self.vars.clone(),
            terms: BTreeMap::new(),
        };
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let exps: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(exps, *ca * *cb);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::constant(self.p, &self.var_refs(), 1).unwrap();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    fn var_refs(&self) -> Vec<&str> {
        self.vars.iter().map(|s| s.as_str()).collect()
    }

    /// Evaluates at a full point; `point[i]` substitutes `vars[i]`.
    pub fn eval(&self, point: &[Fp]) -> Fp {
        assert_eq!(point.len(), self.vars.len(), "evaluation point arity");
        let mut acc = Fp::zero(self.p);
        for (exps, c) in &self.terms {
            let mut term = *c;
            for (x, &e) in point.iter().zip(exps) {
                term = term * x.pow(e as u64);
            }
            acc = acc + term;
        }
        acc
    }

    /// Evaluates a univariate polynomial at `x`.
    pub fn eval_univariate(&self, x: Fp) -> Result<Fp, PolynomialError> {
        if self.vars.len() != 1 {
            return Err(PolynomialError::NotUnivariate(self.vars.len()));
        }
        Ok(self.eval(&[x]))
    }

    /// Substitutes `images[i]` for `vars[i]`. All images must live in one
    /// common ring, which becomes the ring of the result.
    pub fn substitute(&self, images: &[Polynomial]) -> Polynomial {
        assert_eq!(images.len(), self.vars.len(), "substitution arity");
        for w in images.windows(2) {
            w[0].assert_same_ring(&w[1]);
        }
        let template = &images[0];
        let mut out = Polynomial {
            p: template.p,
            vars: template.vars.clone(),
            terms: BTreeMap::new(),
        };
        for (exps, c) in &self.terms {
            let mut term = Polynomial::constant(
                template.p,
                &template.var_refs(),
                c.value() as i64,
            )
            .unwrap();
            for (img, &e) in images.iter().zip(exps) {
                if e > 0 {
                    term = term.mul(&img.pow(e));
                }
            }
            out = out.add(&term);
        }
        out
    }

    /// Drops every monomial whose exponent in variable `index` reaches
    /// `bound`, for each `(index, bound)` pair. This is reduction modulo the
    /// relations `vars[index]^bound = 0`.
    pub fn reduce_nilpotent(&self, bounds: &[(usize, u32)]) -> Polynomial {
        let mut out = self.clone();
        out.terms
            .retain(|exps, _| bounds.iter().all(|&(i, b)| exps[i] < b));
        out
    }

    /// Coefficient list `[c0, c1, ...]` of a univariate polynomial.
    pub fn univariate_coeffs(&self) -> Result<Vec<Fp>, PolynomialError> {
        if self.vars.len() != 1 {
            return Err(PolynomialError::NotUnivariate(self.vars.len()));
        }
        let deg = self.degree_in(0).unwrap_or(0);
        let mut out = vec![Fp::zero(self.p); deg as usize + 1];
        for (exps, c) in &self.terms {
            out[exps[0] as usize] = *c;
        }
        Ok(out)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (exps, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mut factors: Vec<String> = Vec::new();
            for (v, &e) in self.vars.iter().zip(exps) {
                match e {
                    0 => {}
                    1 => factors.push(v.clone()),
                    _ => factors.push(format!("{v}^{e}")),
                }
            }
            if factors.is_empty() {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{c}*{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} over F_{}", self.p)
    }
}
