//! Flat polynomial representations for fast evaluation inside the tracker.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::poly::{Coeff, MultiPoly};

/// A polynomial as a list of `(coefficient, exponents)` pairs.
#[derive(Clone, Debug)]
pub(crate) struct CompiledPoly {
    nvars: usize,
    degree: u32,
    terms: Vec<(Complex64, Vec<u32>)>,
}

impl CompiledPoly {
    pub fn new<C: Coeff>(p: &MultiPoly<C>) -> Self {
        CompiledPoly {
            nvars: p.nvars(),
            degree: p.degree().unwrap_or(0),
            terms: p
                .terms()
                .map(|(m, c)| (c.to_complex(), m.exponents().to_vec()))
                .collect(),
        }
    }

    fn powers(&self, x: &[Complex64]) -> Vec<Vec<Complex64>> {
        x.iter()
            .map(|&xi| {
                let mut row = Vec::with_capacity(self.degree as usize + 1);
                let mut acc = Complex64::new(1.0, 0.0);
                for _ in 0..=self.degree {
                    row.push(acc);
                    acc *= xi;
                }
                row
            })
            .collect()
    }

    pub fn eval(&self, x: &[Complex64]) -> Complex64 {
        debug_assert_eq!(x.len(), self.nvars);
        let pw = self.powers(x);
        self.terms
            .iter()
            .map(|(c, e)| {
                e.iter()
                    .enumerate()
                    .fold(*c, |acc, (v, &k)| acc * pw[v][k as usize])
            })
            .sum()
    }

    /// The same polynomial divided by its largest coefficient magnitude.
    pub fn normalized(mut self) -> Self {
        let s = self.scale();
        if s > 0.0 {
            for (c, _) in &mut self.terms {
                *c /= s;
            }
        }
        self
    }

    /// `sum |a| |x^alpha|`: the size a value would have without cancellation.
    pub fn eval_abs(&self, x: &[Complex64]) -> f64 {
        let mag: Vec<f64> = x.iter().map(|v| v.norm()).collect();
        self.terms
            .iter()
            .map(|(c, e)| {
                e.iter()
                    .enumerate()
                    .fold(c.norm(), |acc, (v, &k)| acc * mag[v].powi(k as i32))
            })
            .sum()
    }

    /// Value and gradient.
    pub fn eval_grad(&self, x: &[Complex64]) -> (Complex64, Vec<Complex64>) {
        let pw = self.powers(x);
        let mut val = Complex64::new(0.0, 0.0);
        let mut grad = vec![Complex64::new(0.0, 0.0); self.nvars];
        for (c, e) in &self.terms {
            val += e
                .iter()
                .enumerate()
                .fold(*c, |acc, (v, &k)| acc * pw[v][k as usize]);
            for (v, &kv) in e.iter().enumerate() {
                if kv == 0 {
                    continue;
                }
                let mut d = *c * f64::from(kv) * pw[v][kv as usize - 1];
                for (w, &kw) in e.iter().enumerate() {
                    if w != v {
                        d *= pw[w][kw as usize];
                    }
                }
                grad[v] += d;
            }
        }
        (val, grad)
    }

    /// Largest coefficient magnitude.
    pub fn scale(&self) -> f64 {
        self.terms.iter().map(|(c, _)| c.norm()).fold(0.0, f64::max)
    }
}

/// Solves `J dx = rhs`; `None` if `J` is numerically singular.
pub(crate) fn solve_linear(j: DMatrix<Complex64>, rhs: DVector<Complex64>) -> Option<DVector<Complex64>> {
    let x = j.lu().solve(&rhs)?;
    x.iter().all(|v| v.re.is_finite() && v.im.is_finite()).then_some(x)
}

pub(crate) fn norm(x: &[Complex64]) -> f64 {
    x.iter().map(Complex64::norm_sqr).sum::<f64>().sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{default_names, Rational};

    #[test]
    fn value_and_gradient() {
        let p: MultiPoly<Rational> =
            MultiPoly::parse("3*z1^2*z2 - z2^3 + 2", &default_names(2)).unwrap();
        let cp = CompiledPoly::new(&p);
        let x = [Complex64::new(1.0, 1.0), Complex64::new(-0.5, 2.0)];
        let (v, g) = cp.eval_grad(&x);
        let expected = 3.0 * x[0] * x[0] * x[1] - x[1] * x[1] * x[1] + 2.0;
        assert!((v - expected).norm() < 1e-13);
        assert!((cp.eval(&x) - expected).norm() < 1e-13);
        assert!((g[0] - 6.0 * x[0] * x[1]).norm() < 1e-13);
        assert!((g[1] - (3.0 * x[0] * x[0] - 3.0 * x[1] * x[1])).norm() < 1e-13);
        assert_eq!(cp.scale(), 3.0);
    }

    #[test]
    fn singular_solve_is_none() {
        let j = DMatrix::from_element(2, 2, Complex64::new(1.0, 0.0));
        let r = DVector::from_element(2, Complex64::new(1.0, 0.0));
        assert!(solve_linear(j, r).is_none());
    }
}
