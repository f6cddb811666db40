//! Sparse multivariate polynomials over the rationals.
//!
//! These carry the symbolic expansions behind nonexistence certificates: a
//! verdict of the form "no co-symplectic structure exists" is the statement
//! that a concrete polynomial in the coordinates of the closed cochains is
//! identically zero, and that polynomial is expanded here, never sampled.

use crate::rational::Rational;
use num_traits::Zero;
use std::collections::BTreeMap;
use std::fmt;

/// Exponent vector, one entry per variable.
type Exponents = Vec<u32>;

#[derive(Clone, PartialEq, Eq)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Exponents, Rational>,
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let rendered: Vec<String> = self
            .terms
            .iter()
            .map(|(exps, c)| {
                let mut parts = vec![crate::rational::display(c)];
                for (i, &e) in exps.iter().enumerate() {
                    match e {
                        0 => {}
                        1 => parts.push(format!("x{i}")),
                        _ => parts.push(format!("x{i}^{e}")),
                    }
                }
                parts.join("*")
            })
            .collect();
        write!(f, "{}", rendered.join(" + "))
    }
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = MultiPoly::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn variable(nvars: usize, index: usize) -> Self {
        assert!(index < nvars);
        let mut exps = vec![0; nvars];
        exps[index] = 1;
        let mut p = MultiPoly::zero(nvars);
        p.terms.insert(exps, Rational::from_integer(1.into()));
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &Rational)> {
        self.terms.iter()
    }

    fn insert(&mut self, exps: Exponents, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exps) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert(e.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, s: &Rational) -> MultiPoly {
        if s.is_zero() {
            return MultiPoly::zero(self.nvars);
        }
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * s)).collect(),
        }
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, other.nvars);
        let mut out = MultiPoly::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let exps: Exponents = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.insert(exps, ca * cb);
            }
        }
        out
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|e| e.iter().sum())
            .max()
            .unwrap_or(0)
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|e| e[var]).max().unwrap_or(0)
    }

    /// Substitute a value for one variable; the variable stays in place with
    /// exponent zero so indices remain stable.
    pub fn substitute(&self, var: usize, value: &Rational) -> MultiPoly {
        let mut out = MultiPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut factor = Rational::from_integer(1.into());
            for _ in 0..e[var] {
                factor *= value;
            }
            let mut exps = e.clone();
            exps[var] = 0;
            out.insert(exps, c * factor);
        }
        out
    }

    pub fn eval(&self, values: &[Rational]) -> Rational {
        assert_eq!(values.len(), self.nvars);
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (v, &exp) in values.iter().zip(e) {
                for _ in 0..exp {
                    term *= v;
                }
            }
            acc += term;
        }
        acc
    }

    /// Deterministic point where the polynomial is nonzero; `None` for the
    /// zero polynomial. Fixes variables one at a time, trying the values
    /// 0, 1, -1, 2, -2, ... and keeping the first that leaves a nonzero
    /// polynomial in the remaining variables. A univariate specialization of
    /// degree d has at most d roots, so the scan always terminates.
    pub fn nonzero_point(&self) -> Option<Vec<Rational>> {
        if self.is_zero() {
            return None;
        }
        let mut current = self.clone();
        let mut point = vec![Rational::zero(); self.nvars];
        for var in 0..self.nvars {
            let deg = current.degree_in(var);
            if deg == 0 {
                continue;
            }
            let mut chosen = None;
            for candidate in candidate_values(deg) {
                let next = current.substitute(var, &candidate);
                if !next.is_zero() {
                    chosen = Some((candidate, next));
                    break;
                }
            }
            let (value, next) = chosen.expect("nonzero polynomial ran out of candidate values");
            point[var] = value;
            current = next;
        }
        debug_assert!(!self.eval(&point).is_zero());
        Some(point)
    }
}

fn candidate_values(degree: u32) -> impl Iterator<Item = Rational> {
    (0..=degree as i64 * 2 + 2).map(|k| {
        let v = if k % 2 == 0 { k / 2 } else { -(k / 2 + 1) };
        crate::rational::int(v)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn arithmetic_and_eval() {
        let x = MultiPoly::variable(2, 0);
        let y = MultiPoly::variable(2, 1);
        // (x + y)(x - y) = x² - y²
        let p = x.add(&y).mul(&x.add(&y.scale(&int(-1))));
        assert_eq!(p.eval(&[int(3), int(2)]), int(5));
        assert_eq!(p.total_degree(), 2);
    }

    #[test]
    fn nonzero_point_avoids_roots() {
        let x = MultiPoly::variable(2, 0);
        let y = MultiPoly::variable(2, 1);
        // x·y vanishes on both axes; the search must leave them.
        let p = x.mul(&y);
        let pt = p.nonzero_point().unwrap();
        assert!(!p.eval(&pt).is_zero());

        let zero = MultiPoly::zero(3);
        assert!(zero.nonzero_point().is_none());
    }

    #[test]
    fn cancellation_is_removed() {
        let x = MultiPoly::variable(1, 0);
        let p = x.add(&x.scale(&int(-1)));
        assert!(p.is_zero());
        assert_eq!(p.num_terms(), 0);
    }
}
