use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::pencil::{coefficient_system, normalize_monic, FeedbackSubspace, MatrixPencil, MonicTarget, Normalized};
use crate::poly::{exact_complex, Coeff, ExactComplex, MultiPoly};

use super::config::SolverConfig;
use super::eval::{solve_linear, CompiledPoly};
use super::solution::SolutionSet;

/// Largest admissible coefficient error of a verified feedback.
pub const PLACEMENT_TOL: f64 = 1e-8;

/// Newton steps with exactly evaluated residuals applied to each root.
const POLISH_STEPS: usize = 4;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifiedFeedback {
    /// Coordinates in the subspace basis.
    pub z: Vec<Complex64>,
    /// `F = sum_j z_j L_j`, row by row.
    pub f: Vec<Vec<Complex64>>,
    /// Monic closed-loop coefficients `phi_0, ..., phi_{n-1}` recomputed from `F`.
    pub achieved: Vec<Complex64>,
    /// `max_k |achieved_k - target_k|` (infinite if the degree drops).
    pub error: f64,
    pub multiplicity: usize,
    pub real: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Placement {
    pub verified: Vec<VerifiedFeedback>,
    /// Finite roots whose feedback failed the direct check.
    pub unverified: Vec<VerifiedFeedback>,
    pub solutions: SolutionSet,
}

/// Solves for every `F` in the subspace that places the closed-loop
/// polynomial at `target`, checking each candidate by recomputing the
/// determinant.
///
/// Each root is polished by Newton steps whose residuals are evaluated
/// exactly, and the check itself runs in exact arithmetic on the floating
/// point `z`, so the reported error reflects `z` rather than cancellation in
/// the determinant.
pub fn place_poles(
    pencil: &MatrixPencil,
    subspace: &FeedbackSubspace,
    target: &MonicTarget,
    cfg: &SolverConfig,
) -> Result<Placement> {
    let sys = coefficient_system(pencil, subspace, target)?;
    let solutions = super::solve_system(&sys.to_complex(), cfg)?;
    let exact: Vec<MultiPoly<ExactComplex>> = sys
        .equations()
        .iter()
        .map(|p| p.map_coeffs(ExactComplex::from_rational))
        .collect();
    let compiled: Vec<CompiledPoly> = sys.to_complex().equations().iter().map(CompiledPoly::new).collect();
    let phi: Vec<ExactComplex> = target.coeffs().iter().map(ExactComplex::from_rational).collect();
    let mut verified = Vec::new();
    let mut unverified = Vec::new();
    for root in &solutions.roots {
        let z = polish(&exact, &compiled, root.z.clone())?;
        let ze: Vec<ExactComplex> = z.iter().map(|&v| exact_complex(v)).collect();
        let f_exact = subspace.element(&ze)?;
        let (achieved, error) = match normalize_monic(&pencil.closed_loop_charpoly(&f_exact)?) {
            Normalized::Monic(c) => {
                let error = c
                    .iter()
                    .zip(&phi)
                    .map(|(a, b)| (a.clone() - b.clone()).magnitude())
                    .fold(0.0, f64::max);
                (c.iter().map(Coeff::to_complex).collect(), error)
            }
            _ => (Vec::new(), f64::INFINITY),
        };
        let fb = VerifiedFeedback {
            f: subspace.element(&z)?.to_rows(),
            z,
            achieved,
            error,
            multiplicity: root.multiplicity,
            real: root.real,
        };
        if error < PLACEMENT_TOL {
            verified.push(fb);
        } else {
            unverified.push(fb);
        }
    }
    Ok(Placement {
        verified,
        unverified,
        solutions,
    })
}

/// Newton iteration with the residual computed exactly and rounded once;
/// keeps the iterate with the smallest residual.
fn polish(
    exact: &[MultiPoly<ExactComplex>],
    compiled: &[CompiledPoly],
    mut z: Vec<Complex64>,
) -> Result<Vec<Complex64>> {
    let n = z.len();
    let residual = |z: &[Complex64]| -> Result<DVector<Complex64>> {
        let ze: Vec<ExactComplex> = z.iter().map(|&v| exact_complex(v)).collect();
        let vals = exact
            .iter()
            .map(|p| Ok(p.eval(&ze)?.to_complex()))
            .collect::<Result<Vec<_>>>()?;
        Ok(DVector::from_vec(vals))
    };
    let mut r = residual(&z)?;
    let mut best = (z.clone(), r.norm());
    for _ in 0..POLISH_STEPS {
        let mut j = DMatrix::zeros(n, n);
        for (i, e) in compiled.iter().enumerate() {
            for (k, g) in e.eval_grad(&z).1.into_iter().enumerate() {
                j[(i, k)] = g;
            }
        }
        let Some(dz) = solve_linear(j, -r) else { break };
        let next: Vec<Complex64> = z.iter().zip(dz.iter()).map(|(a, d)| a + d).collect();
        if next == z {
            break;
        }
        z = next;
        r = residual(&z)?;
        if r.norm() < best.1 {
            best = (z.clone(), r.norm());
        }
    }
    Ok(best.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{int, DenseMatrix, Rational};

    fn mat(rows: &[&[i64]]) -> DenseMatrix<Rational> {
        DenseMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect())
            .unwrap()
    }

    #[test]
    fn scalar_placement() {
        let p = MatrixPencil::state_feedback(mat(&[&[2]]), mat(&[&[1]])).unwrap();
        let l = FeedbackSubspace::full(1, 1).unwrap();
        let t = MonicTarget::new(vec![int(5)]).unwrap();
        let out = place_poles(&p, &l, &t, &SolverConfig::default()).unwrap();
        assert_eq!(out.verified.len(), 1);
        assert!((out.verified[0].f[0][0] - 3.0).norm() < 1e-10);
    }

    #[test]
    fn swap_matrix_diagonal_feedbacks() {
        let p = MatrixPencil::matrix_extension(mat(&[&[0, 1], &[1, 0]])).unwrap();
        let l = FeedbackSubspace::diagonal(2).unwrap();
        let t = MonicTarget::new(vec![int(0), int(0)]).unwrap();
        let out = place_poles(&p, &l, &t, &SolverConfig::with_seed(1)).unwrap();
        assert_eq!(out.verified.len(), 2);
        assert!(out.unverified.is_empty());
        let i = Complex64::new(0.0, 1.0);
        for fb in &out.verified {
            assert!((fb.f[0][0] + fb.f[1][1]).norm() < 1e-9);
            assert!((fb.f[0][0] * fb.f[0][0] + 1.0).norm() < 1e-9);
            assert!(fb.f[0][1].norm() == 0.0 && fb.f[1][0].norm() == 0.0);
            assert!((fb.f[0][0] - i).norm() < 1e-9 || (fb.f[0][0] + i).norm() < 1e-9);
        }
    }
}
