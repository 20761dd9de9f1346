//! Laurent polynomials in the coordinates, used as phases.

use crate::error::Result;
use crate::field::{LocalElem, LocalField};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    pub dim: usize,
    /// `(coefficient, exponent vector)`; negative exponents only on multiplicative coordinates.
    pub terms: Vec<(LocalElem, Vec<i32>)>,
}

impl Poly {
    pub fn zero(dim: usize) -> Self {
        Self {
            dim,
            terms: Vec::new(),
        }
    }

    pub fn constant(dim: usize, c: LocalElem) -> Self {
        Self {
            dim,
            terms: vec![(c, vec![0; dim])],
        }
    }

    /// `c·Π x_i^{e_i}`.
    pub fn monomial(c: LocalElem, exps: Vec<i32>) -> Self {
        Self {
            dim: exps.len(),
            terms: vec![(c, exps)],
        }
    }

    /// The coordinate function `x_i`.
    pub fn var(dim: usize, i: usize) -> Self {
        let mut e = vec![0; dim];
        e[i] = 1;
        Self::monomial(LocalElem::one(), e)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.iter().all(|(c, _)| c.is_exact_zero())
    }

    pub fn add(mut self, other: Poly) -> Self {
        self.terms.extend(other.terms);
        self
    }

    pub fn neg(&self, k: &LocalField) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(c, e)| (k.neg(c), e.clone()))
            .collect();
        Self {
            dim: self.dim,
            terms,
        }
    }

    pub fn scale(&self, k: &LocalField, s: &LocalElem) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(c, e)| (k.mul(c, s), e.clone()))
            .collect();
        Self {
            dim: self.dim,
            terms,
        }
    }

    pub fn mul(&self, k: &LocalField, other: &Poly) -> Self {
        let mut terms = Vec::new();
        for (c1, e1) in &self.terms {
            for (c2, e2) in &other.terms {
                terms.push((
                    k.mul(c1, c2),
                    e1.iter().zip(e2).map(|(a, b)| a + b).collect(),
                ));
            }
        }
        Self {
            dim: self.dim,
            terms,
        }
    }

    /// Evaluation with precision propagation.
    pub fn eval(&self, k: &LocalField, x: &[LocalElem]) -> Result<LocalElem> {
        let mut acc = LocalElem::zero();
        for (c, exps) in &self.terms {
            let mut m = c.clone();
            for (xi, &e) in x.iter().zip(exps) {
                if e != 0 {
                    m = k.mul(&m, &k.pow(xi, e)?);
                }
            }
            acc = k.add(&acc, &m);
        }
        Ok(acc)
    }
}
