//! Dense univariate polynomials over the rationals, enough for gcd and
//! square-free decomposition.

use num_traits::{One, Zero};

use super::multipoly::MultiPoly;
use super::scalar::Rational;

/// Coefficients in ascending order; no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        UniPoly::new(vec![Rational::one()])
    }

    /// Reads a one-variable [`MultiPoly`].
    ///
    /// Panics if `p` has more than one variable.
    pub fn from_multi(p: &MultiPoly<Rational>) -> Self {
        assert!(p.nvars() <= 1);
        if p.nvars() == 0 {
            return UniPoly::new(vec![p.constant_term()]);
        }
        let deg = p.degree().unwrap_or(0) as usize;
        let mut c = vec![Rational::zero(); deg + 1];
        for (m, v) in p.terms() {
            c[m.exponents()[0] as usize] = v.clone();
        }
        UniPoly::new(c)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(lc) => UniPoly::new(self.coeffs.iter().map(|c| c / lc).collect()),
        }
    }

    pub fn derivative(&self) -> Self {
        UniPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * Rational::from_integer(k.into()))
                .collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        UniPoly::new(
            (0..n)
                .map(|k| {
                    let a = self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero);
                    let b = other.coeffs.get(k).cloned().unwrap_or_else(Rational::zero);
                    a - b
                })
                .collect(),
        )
    }

    /// Euclidean division. Panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("division by zero polynomial");
        let lc = divisor.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        let Some(nd) = self.degree() else {
            return (Self::zero(), Self::zero());
        };
        if nd < dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let c = &rem[k + dd] / &lc;
            if !c.is_zero() {
                for (j, d) in divisor.coeffs.iter().enumerate() {
                    rem[k + j] -= &c * d;
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (UniPoly::new(quot), UniPoly::new(rem))
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Yun's square-free decomposition: `(factor, multiplicity)` pairs with
    /// monic, pairwise coprime, square-free factors of positive degree.
    pub fn squarefree(&self) -> Vec<(UniPoly, usize)> {
        let mut out = Vec::new();
        if self.degree().map_or(true, |d| d == 0) {
            return out;
        }
        let f = self.monic();
        let df = f.derivative();
        let a0 = f.gcd(&df);
        let mut b = f.div_rem(&a0).0;
        let mut c = df.div_rem(&a0).0;
        let mut d = c.sub(&b.derivative());
        let mut k = 1;
        while b.degree().is_some_and(|deg| deg > 0) {
            let a = b.gcd(&d);
            if a.degree().is_some_and(|deg| deg > 0) {
                out.push((a.clone(), k));
            }
            b = b.div_rem(&a).0;
            c = d.div_rem(&a).0;
            d = c.sub(&b.derivative());
            k += 1;
        }
        out
    }
}
