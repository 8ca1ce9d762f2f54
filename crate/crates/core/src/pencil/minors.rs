//! The minor polynomials `p_J(s)` of `[-sH - B | sE + A]` and the
//! characteristic map they define on Plücker space.

use crate::error::{Error, Result};
use crate::poly::{column_subsets, Coeff, DenseMatrix, MultiPoly, PolyMatrix, Rational};

use super::plucker::PluckerVector;
use super::system::MatrixPencil;

/// `P` with `P[k][J]` the `s^k` coefficient of `p_J(s)`, columns in
/// lexicographic order of the `m`-subsets `J` of the `m + n` columns.
///
/// Signs are fixed so that `sum_J f_J p_J(s) = det(s(E + HF) + (A + BF))`
/// whenever `f` is the Plücker vector of `rowsp [I | F]`.
#[derive(Clone, Debug, PartialEq)]
pub struct MinorSystem {
    m: usize,
    n: usize,
    subsets: Vec<Vec<usize>>,
    p: DenseMatrix<Rational>,
}

/// Value of the characteristic map at a Plücker point.
#[derive(Clone, Debug, PartialEq)]
pub enum CharImage<C> {
    /// Coefficients `c_0, ..., c_n` of the closed-loop polynomial, up to scale.
    Point(Vec<C>),
    /// The point lies in the center: every coefficient vanishes.
    BaseLocus,
}

/// Builds the minor system of a pencil.
pub fn minor_polys(pencil: &MatrixPencil) -> Result<MinorSystem> {
    let (m, n) = (pencil.m(), pencil.n());
    let q = PolyMatrix::<Rational>::from_fn(n, m + n, 1, |i, j| {
        let s = MultiPoly::var(1, 0);
        let (lin, cst) = if j < m {
            (-pencil.h()[(i, j)].clone(), -pencil.b()[(i, j)].clone())
        } else {
            (pencil.e()[(i, j - m)].clone(), pencil.a()[(i, j - m)].clone())
        };
        &s.scale(&lin) + &MultiPoly::constant(1, cst)
    })?;
    let complements = q.maximal_minors()?;
    let subsets = column_subsets(m + n, m);
    let parity0 = m * (m + 1) / 2;
    let mut p = DenseMatrix::zeros(n + 1, subsets.len());
    for (col, j) in subsets.iter().enumerate() {
        let comp: Vec<usize> = (0..m + n).filter(|c| !j.contains(c)).collect();
        let (_, minor) = complements
            .iter()
            .find(|(k, _)| *k == comp)
            .expect("every complement is a maximal column subset");
        let odd = (parity0 + j.iter().map(|c| c + 1).sum::<usize>()) % 2 == 1;
        for (k, ck) in minor.coeffs_in_var(0)?.iter().enumerate() {
            let v = ck.constant_term();
            p[(k, col)] = if odd { -v } else { v };
        }
    }
    Ok(MinorSystem { m, n, subsets, p })
}

impl MinorSystem {
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn subsets(&self) -> &[Vec<usize>] {
        &self.subsets
    }

    /// The `(n+1) x (N+1)` coefficient matrix.
    pub fn matrix(&self) -> &DenseMatrix<Rational> {
        &self.p
    }

    /// `p_J(s)` as coefficients `[s^0, ..., s^n]`.
    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..=self.n).map(|k| self.p[(k, j)].clone()).collect()
    }

    /// Indices of columns that are not identically zero.
    pub fn nonzero_columns(&self) -> Vec<usize> {
        (0..self.subsets.len())
            .filter(|&j| (0..=self.n).any(|k| !num_traits::Zero::is_zero(&self.p[(k, j)])))
            .collect()
    }

    /// `P * pv`, or `BaseLocus` if it vanishes.
    pub fn char_map_eval<C: Coeff>(&self, pv: &PluckerVector<C>) -> Result<CharImage<C>> {
        let c = self.apply(pv.entries())?;
        if c.iter().all(Coeff::is_negligible) {
            Ok(CharImage::BaseLocus)
        } else {
            Ok(CharImage::Point(c))
        }
    }

    /// `P * v` for a raw coordinate vector, including the zero result.
    pub fn apply<C: Coeff>(&self, v: &[C]) -> Result<Vec<C>> {
        if v.len() != self.subsets.len() {
            return Err(Error::Dimension {
                what: "Plücker vector length",
                expected: self.subsets.len(),
                found: v.len(),
            });
        }
        Ok((0..=self.n)
            .map(|k| {
                v.iter().enumerate().fold(C::zero(), |acc, (j, x)| {
                    let w = &self.p[(k, j)];
                    if num_traits::Zero::is_zero(w) {
                        acc
                    } else {
                        acc + C::from_rational(w) * x.clone()
                    }
                })
            })
            .collect())
    }
}
