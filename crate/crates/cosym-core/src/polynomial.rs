//! Dense univariate polynomials over the rationals.
//!
//! Used for characteristic polynomials and for the Sturm-chain test that
//! decides whether a rational polynomial has all of its roots real (the
//! complete-solvability check on basis elements).

use crate::rational::Rational;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Coefficients in ascending order; no trailing zeros. The zero polynomial is
/// the empty coefficient list.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| match k {
                0 => crate::rational::display(c),
                1 => format!("{}*x", crate::rational::display(c)),
                _ => format!("{}*x^{}", crate::rational::display(c), k),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        Poly::new(vec![c])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![Rational::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            out[i] += c;
        }
        Poly::new(out)
    }

    pub fn neg(&self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }

    pub fn scale(&self, s: &Rational) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    /// Euclidean division; divisor must be nonzero.
    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        assert!(!divisor.is_zero(), "polynomial division by zero");
        let mut rem = self.coeffs.clone();
        let d = divisor.degree();
        let lead = divisor.leading().unwrap().clone();
        if rem.len() <= d {
            return (Poly::zero(), Poly::new(rem));
        }
        let mut quot = vec![Rational::zero(); rem.len() - d];
        for k in (d..rem.len()).rev() {
            if rem[k].is_zero() {
                continue;
            }
            let q = &rem[k] / &lead;
            quot[k - d] = q.clone();
            for (j, c) in divisor.coeffs.iter().enumerate() {
                let v = &rem[k - d + j] - &q * c;
                rem[k - d + j] = v;
            }
        }
        (Poly::new(quot), Poly::new(rem))
    }

    pub fn derivative(&self) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero();
        }
        Poly::new(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, c)| c * crate::rational::int(i as i64 + 1))
                .collect(),
        )
    }

    /// Monic gcd.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        match a.leading() {
            Some(l) if !l.is_one() => {
                let inv = Rational::one() / l.clone();
                a.scale(&inv)
            }
            _ => a,
        }
    }

    /// Product of the distinct irreducible factors.
    pub fn squarefree_part(&self) -> Poly {
        if self.degree() == 0 || self.is_zero() {
            return self.clone();
        }
        let g = self.gcd(&self.derivative());
        let (q, r) = self.div_rem(&g);
        debug_assert!(r.is_zero());
        q
    }

    /// Number of distinct real roots, by Sturm's theorem.
    pub fn distinct_real_roots(&self) -> usize {
        let p = self.squarefree_part();
        if p.degree() == 0 {
            return 0;
        }
        let mut chain = vec![p.clone(), p.derivative()];
        while !chain.last().unwrap().is_zero() {
            let n = chain.len();
            let (_, r) = chain[n - 2].div_rem(&chain[n - 1]);
            chain.push(r.neg());
        }
        chain.pop();
        let variations = |at_neg_infinity: bool| {
            let mut count = 0;
            let mut prev: Option<bool> = None; // sign as "is positive"
            for q in &chain {
                if q.is_zero() {
                    continue;
                }
                let lead_positive = q.leading().unwrap().is_positive();
                let sign = if at_neg_infinity && q.degree() % 2 == 1 {
                    !lead_positive
                } else {
                    lead_positive
                };
                if let Some(p) = prev {
                    if p != sign {
                        count += 1;
                    }
                }
                prev = Some(sign);
            }
            count
        };
        variations(true) - variations(false)
    }

    /// True iff every complex root is real (with any multiplicity).
    pub fn all_roots_real(&self) -> bool {
        let q = self.squarefree_part();
        if q.degree() == 0 {
            return true;
        }
        self.distinct_real_roots() == q.degree()
    }

    /// Unique interpolating polynomial of degree < points.len().
    pub fn lagrange_interpolate(points: &[(Rational, Rational)]) -> Poly {
        let mut acc = Poly::zero();
        for (i, (xi, yi)) in points.iter().enumerate() {
            let mut basis = Poly::constant(Rational::one());
            let mut denom = Rational::one();
            for (j, (xj, _)) in points.iter().enumerate() {
                if i == j {
                    continue;
                }
                basis = basis.mul(&Poly::new(vec![-xj.clone(), Rational::one()]));
                denom *= xi - xj;
            }
            acc = acc.add(&basis.scale(&(yi / &denom)));
        }
        acc
    }
}
