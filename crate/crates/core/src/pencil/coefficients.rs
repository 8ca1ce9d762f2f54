//! The square polynomial system whose roots are pole-placing feedbacks.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::poly::{Coeff, MultiPoly, Rational};

use super::system::{FeedbackSubspace, MatrixPencil, MonicTarget};

/// `c_k(z) - c_n(z) phi_k = 0` for `k = 0, ..., n-1`, where `c_k(z)` is the
/// `s^k` coefficient of the closed-loop determinant at `F = sum_j z_j L_j`.
#[derive(Clone, Debug, PartialEq)]
pub struct CoefficientSystem<C: Coeff> {
    n: usize,
    raw: Vec<MultiPoly<C>>,
    equations: Vec<MultiPoly<C>>,
}

/// `c_0(z), ..., c_n(z)` over the coordinates of any subspace (square or not).
pub fn closed_loop_coefficients(
    pencil: &MatrixPencil,
    subspace: &FeedbackSubspace,
) -> Result<Vec<MultiPoly<Rational>>> {
    if subspace.m() != pencil.m() || subspace.n() != pencil.n() {
        return Err(Error::Dimension {
            what: "subspace matrix size m*n",
            expected: pencil.m() * pencil.n(),
            found: subspace.m() * subspace.n(),
        });
    }
    let d = subspace.dim();
    let nvars = d + 1;
    let f = subspace.symbolic_element::<Rational>(nvars);
    let det = pencil.closed_loop_matrix(&f, nvars)?.determinant()?;
    let mut raw = det.coeffs_in_var(d)?;
    raw.resize(pencil.n() + 1, MultiPoly::zero(d));
    Ok(raw)
}

/// Builds the square system; requires `dim L = n`.
pub fn coefficient_system(
    pencil: &MatrixPencil,
    subspace: &FeedbackSubspace,
    target: &MonicTarget,
) -> Result<CoefficientSystem<Rational>> {
    let n = pencil.n();
    if subspace.dim() != n {
        return Err(Error::NonSquare {
            d: subspace.dim(),
            n,
        });
    }
    target.check_degree(n)?;
    let raw = closed_loop_coefficients(pencil, subspace)?;
    CoefficientSystem::from_raw(raw, target.coeffs())
}

impl<C: Coeff> CoefficientSystem<C> {
    /// From `c_0, ..., c_n` (polynomials in `n` variables) and `phi_0..phi_{n-1}`.
    pub fn from_raw(raw: Vec<MultiPoly<C>>, phi: &[Rational]) -> Result<Self> {
        let n = phi.len();
        if raw.len() != n + 1 {
            return Err(Error::Dimension {
                what: "closed-loop coefficients",
                expected: n + 1,
                found: raw.len(),
            });
        }
        if let Some(bad) = raw.iter().find(|p| p.nvars() != n) {
            return Err(Error::Dimension {
                what: "coefficient polynomial variables",
                expected: n,
                found: bad.nvars(),
            });
        }
        let lead = &raw[n];
        let equations = raw[..n]
            .iter()
            .zip(phi)
            .map(|(ck, phik)| ck - &lead.scale(&C::from_rational(phik)))
            .collect();
        Ok(CoefficientSystem { n, raw, equations })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn equations(&self) -> &[MultiPoly<C>] {
        &self.equations
    }

    /// `c_n(z) = det(E + H F)`.
    pub fn leading(&self) -> &MultiPoly<C> {
        &self.raw[self.n]
    }

    /// `c_0, ..., c_n`.
    pub fn raw(&self) -> &[MultiPoly<C>] {
        &self.raw
    }

    /// Total degree of each equation (0 for an identically zero equation).
    pub fn degrees(&self) -> Vec<u32> {
        self.equations
            .iter()
            .map(|e| e.degree().unwrap_or(0))
            .collect()
    }

    /// Product of the equation degrees.
    pub fn bezout_number(&self) -> u64 {
        self.degrees().iter().map(|&d| u64::from(d)).product()
    }

    pub fn eval(&self, z: &[C]) -> Result<Vec<C>> {
        Ok(self
            .equations
            .iter()
            .map(|e| e.eval(z))
            .collect::<std::result::Result<_, _>>()?)
    }

    pub fn eval_raw(&self, z: &[C]) -> Result<Vec<C>> {
        Ok(self
            .raw
            .iter()
            .map(|e| e.eval(z))
            .collect::<std::result::Result<_, _>>()?)
    }

    pub fn to_complex(&self) -> CoefficientSystem<Complex64> {
        let conv = |p: &MultiPoly<C>| p.map_coeffs(Coeff::to_complex);
        CoefficientSystem {
            n: self.n,
            raw: self.raw.iter().map(conv).collect(),
            equations: self.equations.iter().map(conv).collect(),
        }
    }
}
