use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::scalar::Coeff;
use super::PolyError;

/// Exponent vector of a monomial, ordered graded-lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse multivariate polynomial over a coefficient field `C`.
///
/// Terms live in a graded-lex ordered map with no zero coefficients, so two
/// polynomials are equal exactly when their term maps are equal.
#[derive(Clone, PartialEq)]
pub struct MultiPoly<C> {
    nvars: usize,
    terms: BTreeMap<Monomial, C>,
}

impl<C: Coeff> MultiPoly<C> {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, C::one())
    }

    pub fn constant(nvars: usize, c: C) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(Monomial::one(nvars), c);
        p
    }

    /// The polynomial `x_index`.
    ///
    /// Panics if `index >= nvars`.
    pub fn var(nvars: usize, index: usize) -> Self {
        assert!(index < nvars, "variable index {index} out of range for {nvars} variables");
        let mut exps = vec![0; nvars];
        exps[index] = 1;
        let mut p = Self::zero(nvars);
        p.add_term(Monomial(exps), C::one());
        p
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs; repeated
    /// monomials are summed.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Result<Self, PolyError>
    where
        I: IntoIterator<Item = (Vec<u32>, C)>,
    {
        let mut p = Self::zero(nvars);
        for (exps, c) in terms {
            if exps.len() != nvars {
                return Err(PolyError::DimensionMismatch {
                    expected: nvars,
                    found: exps.len(),
                });
            }
            p.add_term(Monomial(exps), c);
        }
        Ok(p)
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: C) {
        debug_assert_eq!(m.0.len(), self.nvars);
        if c.is_negligible() {
            return;
        }
        match self.terms.remove(&m) {
            Some(old) => {
                let sum = old + c;
                if !sum.is_negligible() {
                    self.terms.insert(m, sum);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
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

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    /// Degree in a single variable; `None` for the zero polynomial.
    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.0[var]).max()
    }

    /// Terms in increasing graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[u32]) -> C {
        self.terms
            .get(&Monomial(exps.to_vec()))
            .cloned()
            .unwrap_or_else(C::zero)
    }

    /// The constant term.
    pub fn constant_term(&self) -> C {
        self.coeff(&vec![0; self.nvars])
    }

    pub fn is_constant(&self) -> bool {
        self.degree().map_or(true, |d| d == 0)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn max_coeff_magnitude(&self) -> f64 {
        self.terms.values().map(C::magnitude).fold(0.0, f64::max)
    }

    fn check_same(&self, other: &Self) -> Result<(), PolyError> {
        if self.nvars != other.nvars {
            return Err(PolyError::DimensionMismatch {
                expected: self.nvars,
                found: other.nvars,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_same(other)?;
        let mut out = Self::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca.clone() * cb.clone());
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut out = Self::zero(self.nvars);
        for (m, a) in &self.terms {
            out.add_term(m.clone(), a.clone() * c.clone());
        }
        out
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.nvars);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn eval(&self, point: &[C]) -> Result<C, PolyError> {
        if point.len() != self.nvars {
            return Err(PolyError::DimensionMismatch {
                expected: self.nvars,
                found: point.len(),
            });
        }
        let mut acc = C::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                for _ in 0..e {
                    t = t * x.clone();
                }
            }
            acc = acc + t;
        }
        Ok(acc)
    }

    /// Coefficients of `x_var^0, x_var^1, ...` as polynomials in the remaining
    /// variables (the variable is removed, so each has `nvars - 1` variables).
    /// The zero polynomial yields an empty list.
    pub fn coeffs_in_var(&self, var: usize) -> Result<Vec<Self>, PolyError> {
        if var >= self.nvars {
            return Err(PolyError::VarIndex {
                index: var,
                nvars: self.nvars,
            });
        }
        let Some(deg) = self.degree_in(var) else {
            return Ok(Vec::new());
        };
        let mut out = vec![Self::zero(self.nvars - 1); deg as usize + 1];
        for (m, c) in &self.terms {
            let k = m.0[var] as usize;
            let mut rest = m.0.clone();
            rest.remove(var);
            out[k].add_term(Monomial(rest), c.clone());
        }
        Ok(out)
    }

    /// Adds a fresh variable at position `index` (absent from every term).
    pub fn insert_var(&self, index: usize) -> Result<Self, PolyError> {
        if index > self.nvars {
            return Err(PolyError::VarIndex {
                index,
                nvars: self.nvars + 1,
            });
        }
        let mut out = Self::zero(self.nvars + 1);
        for (m, c) in &self.terms {
            let mut e = m.0.clone();
            e.insert(index, 0);
            out.add_term(Monomial(e), c.clone());
        }
        Ok(out)
    }

    /// Inserts a new variable at `index` and multiplies every term by the
    /// power of it that lifts the term to `target_degree`.
    pub fn homogenize(&self, index: usize, target_degree: u32) -> Result<Self, PolyError> {
        if let Some(d) = self.degree() {
            if d > target_degree {
                return Err(PolyError::DegreeTooLow {
                    target: target_degree,
                    degree: d,
                });
            }
        }
        if index > self.nvars {
            return Err(PolyError::VarIndex {
                index,
                nvars: self.nvars + 1,
            });
        }
        let mut out = Self::zero(self.nvars + 1);
        for (m, c) in &self.terms {
            let mut e = m.0.clone();
            e.insert(index, target_degree - m.degree());
            out.add_term(Monomial(e), c.clone());
        }
        Ok(out)
    }

    /// Substitutes `value` for `x_var` and removes the variable.
    pub fn eval_var(&self, var: usize, value: &C) -> Result<Self, PolyError> {
        let coeffs = self.coeffs_in_var(var)?;
        let mut out = Self::zero(self.nvars - 1);
        let mut power = C::one();
        for c in coeffs {
            out = &out + &c.scale(&power);
            power = power * value.clone();
        }
        Ok(out)
    }

    pub fn partial_derivative(&self, var: usize) -> Result<Self, PolyError> {
        if var >= self.nvars {
            return Err(PolyError::VarIndex {
                index: var,
                nvars: self.nvars,
            });
        }
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[var];
            if e == 0 {
                continue;
            }
            let mut exps = m.0.clone();
            exps[var] -= 1;
            out.add_term(Monomial(exps), c.clone() * C::from_i64(e as i64));
        }
        Ok(out)
    }

    pub fn map_coeffs<D: Coeff>(&self, mut f: impl FnMut(&C) -> D) -> MultiPoly<D> {
        let mut out = MultiPoly::zero(self.nvars);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c));
        }
        out
    }
}

impl<C: Coeff> Add for &MultiPoly<C> {
    type Output = MultiPoly<C>;

    /// Panics on a variable-count mismatch; use `checked_add` to handle it.
    fn add(self, rhs: Self) -> MultiPoly<C> {
        self.checked_add(rhs).expect("polynomial variable counts differ")
    }
}

impl<C: Coeff> Sub for &MultiPoly<C> {
    type Output = MultiPoly<C>;

    fn sub(self, rhs: Self) -> MultiPoly<C> {
        self.checked_sub(rhs).expect("polynomial variable counts differ")
    }
}

impl<C: Coeff> Mul for &MultiPoly<C> {
    type Output = MultiPoly<C>;

    fn mul(self, rhs: Self) -> MultiPoly<C> {
        self.checked_mul(rhs).expect("polynomial variable counts differ")
    }
}

impl<C: Coeff> Neg for &MultiPoly<C> {
    type Output = MultiPoly<C>;

    fn neg(self) -> MultiPoly<C> {
        self.scale(&-C::one())
    }
}

impl<C: Coeff> fmt::Debug for MultiPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly[{}]({})", self.nvars, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::scalar::{int, Rational};

    type P = MultiPoly<Rational>;

    fn x(n: usize, i: usize) -> P {
        P::var(n, i)
    }

    #[test]
    fn cancellation() {
        let (a, b) = (x(2, 0), x(2, 1));
        let sum = &(&a + &b) + &(&a - &b);
        assert_eq!(sum, a.scale(&int(2)));
    }

    #[test]
    fn difference_of_squares() {
        let a = x(1, 0);
        let one = P::one(1);
        let prod = &(&a + &one) * &(&a - &one);
        assert_eq!(prod, &a.pow(2) - &one);
    }

    #[test]
    fn hand_substitution() {
        let (z1, z2, z3) = (x(3, 0), x(3, 1), x(3, 2));
        let p = &(&z1.pow(3) + &(&z2.pow(2) * &z3)) - &(&z1 * &z3.pow(2));
        assert_eq!(p.eval(&[int(1), int(1), int(1)]).unwrap(), int(1));
    }

    #[test]
    fn mismatch_errors() {
        assert!(matches!(
            x(2, 0).checked_add(&x(3, 0)),
            Err(PolyError::DimensionMismatch { .. })
        ));
        assert!(x(2, 0).eval(&[int(1)]).is_err());
    }

    #[test]
    fn degree_of_zero_is_none() {
        assert_eq!(P::zero(3).degree(), None);
        assert_eq!(P::one(3).degree(), Some(0));
        assert_eq!((&x(2, 0) * &x(2, 1)).degree(), Some(2));
    }

    #[test]
    fn coefficients_in_s() {
        // s^2 z1 + s + z2 with variables (z1, z2, s)
        let (z1, z2, s) = (x(3, 0), x(3, 1), x(3, 2));
        let p = &(&(&s.pow(2) * &z1) + &s) + &z2;
        let c = p.coeffs_in_var(2).unwrap();
        assert_eq!(c, vec![P::var(2, 1), P::one(2), P::var(2, 0)]);
        assert!(P::zero(3).coeffs_in_var(2).unwrap().is_empty());

        let q = &(&s + &z1) * &(&s + &z2);
        let c = q.coeffs_in_var(2).unwrap();
        let (y1, y2) = (P::var(2, 0), P::var(2, 1));
        assert_eq!(c, vec![&y1 * &y2, &y1 + &y2, P::one(2)]);
        assert!(q.coeffs_in_var(3).is_err());
    }

    #[test]
    fn homogenize_examples() {
        let z1 = x(1, 0);
        let h = (&z1 + &P::one(1)).homogenize(0, 1).unwrap();
        assert_eq!(h, &x(2, 0) + &x(2, 1));

        let h = P::one(3).homogenize(0, 3).unwrap();
        assert_eq!(h, x(4, 0).pow(3));

        let (a, b, c) = (x(3, 0), x(3, 1), x(3, 2));
        let f = &(&a.pow(3) + &(&b.pow(2) * &c)) - &(&a * &c.pow(2));
        let h = f.homogenize(0, 3).unwrap();
        assert_eq!(h, f.insert_var(0).unwrap());
        assert!(h.is_homogeneous());
        assert!(matches!(f.homogenize(0, 2), Err(PolyError::DegreeTooLow { .. })));
    }

    #[test]
    fn derivative_and_partial_eval() {
        let (a, b) = (x(2, 0), x(2, 1));
        let p = &(&a.pow(3) * &b) + &b;
        assert_eq!(
            p.partial_derivative(0).unwrap(),
            (&a.pow(2) * &b).scale(&int(3))
        );
        let q = p.eval_var(0, &int(2)).unwrap();
        assert_eq!(q, P::var(1, 0).scale(&int(9)));
    }
}
