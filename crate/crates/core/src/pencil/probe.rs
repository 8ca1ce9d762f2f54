//! Searching the compactified feedback space for points of the center.

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{Coeff, MultiPoly, PolyMatrix, Rational};
use crate::solver::{solve_polynomials, SolverConfig};

use super::minors::minor_polys;
use super::system::{FeedbackSubspace, MatrixPencil};

/// Residual bound, relative to the largest coefficient, for a point to count
/// as a common root.
const ROOT_TOL: f64 = 1e-8;

/// Plücker vectors smaller than this (relative) mark the indeterminacy locus.
const PLUCKER_TOL: f64 = 1e-6;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DegenerateWitness {
    /// Homogeneous coordinates `(z0, z1, ..., zn)`.
    pub point: Vec<Complex64>,
    /// Largest normalized value of the closed-loop coefficients at `point`.
    pub residual: f64,
    /// Largest normalized Plücker coordinate at `point`.
    pub plucker_size: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum ProbeVerdict {
    /// A point of the closure of the subspace whose closed-loop polynomial
    /// vanishes identically.
    Degenerate(DegenerateWitness),
    /// No such point found; roots on the indeterminacy locus were skipped.
    ProbablyNondegenerate {
        roots_checked: usize,
        indeterminate_skipped: usize,
    },
}

/// The compactified characteristic map: homogeneous Plücker coordinates of
/// `[z0 I | sum z_j L_j]` and the closed-loop coefficients `P * pv`, all
/// polynomials in `z0, ..., zd`.
struct CompactMap {
    plucker: Vec<MultiPoly<Complex64>>,
    coefficients: Vec<MultiPoly<Complex64>>,
}

impl CompactMap {
    fn new(pencil: &MatrixPencil, subspace: &FeedbackSubspace) -> Result<Self> {
        let (m, n) = (pencil.m(), pencil.n());
        let d = subspace.dim();
        let nvars = d + 1;
        // subspace coordinates sit at 1..=d, z0 at 0
        let f: Vec<MultiPoly<Rational>> = subspace
            .symbolic_element::<Rational>(d)
            .iter()
            .map(|p| p.insert_var(0))
            .collect::<std::result::Result<_, _>>()?;
        let z0 = MultiPoly::<Rational>::var(nvars, 0);
        let frame = PolyMatrix::from_fn(m, m + n, nvars, |i, j| {
            if j < m {
                if i == j {
                    z0.clone()
                } else {
                    MultiPoly::zero(nvars)
                }
            } else {
                f[i * n + (j - m)].clone()
            }
        })?;
        let plucker: Vec<MultiPoly<Rational>> =
            frame.maximal_minors()?.into_iter().map(|(_, p)| p).collect();
        let ms = minor_polys(pencil)?;
        let p = ms.matrix();
        let coefficients = (0..=n)
            .map(|k| {
                plucker.iter().enumerate().fold(MultiPoly::zero(nvars), |acc, (j, pj)| {
                    let w = &p[(k, j)];
                    if num_traits::Zero::is_zero(w) {
                        acc
                    } else {
                        &acc + &pj.scale(w)
                    }
                })
            })
            .collect::<Vec<_>>();
        let to_c = |v: &[MultiPoly<Rational>]| v.iter().map(|q| q.map_coeffs(Coeff::to_complex)).collect();
        Ok(CompactMap {
            plucker: to_c(&plucker),
            coefficients: to_c(&coefficients),
        })
    }

    fn relative_max(polys: &[MultiPoly<Complex64>], x: &[Complex64]) -> f64 {
        let growth = 1.0 + x.iter().map(|v| v.norm()).fold(0.0, f64::max);
        polys
            .iter()
            .filter(|p| !p.is_zero())
            .map(|p| {
                let deg = p.degree().unwrap_or(0) as i32;
                p.eval(x).map_or(f64::INFINITY, |v| v.norm())
                    / (p.max_coeff_magnitude() * growth.powi(deg))
            })
            .fold(0.0, f64::max)
    }
}

/// Looks for a common root of the closed-loop coefficients on the closure of
/// the subspace in projective space, chart by chart. A returned witness has
/// been checked by substitution; the nondegenerate verdict is probabilistic.
pub fn nondegeneracy_probe(
    pencil: &MatrixPencil,
    subspace: &FeedbackSubspace,
    cfg: &SolverConfig,
) -> Result<ProbeVerdict> {
    let n = pencil.n();
    if subspace.dim() != n {
        return Err(Error::NonSquare {
            d: subspace.dim(),
            n,
        });
    }
    let map = CompactMap::new(pencil, subspace)?;
    let mut roots_checked = 0;
    let mut skipped = 0;
    for chart in 0..=n {
        let one = Complex64::new(1.0, 0.0);
        let restricted: Vec<MultiPoly<Complex64>> = map
            .coefficients
            .iter()
            .map(|q| q.eval_var(chart, &one))
            .collect::<std::result::Result<Vec<_>, _>>()?
            .into_iter()
            .filter(|q| !q.is_zero())
            .collect();
        let mut rng = cfg.rng(100 + chart as u64);
        let candidates: Vec<Vec<Complex64>> = if restricted.is_empty() {
            // every point is a common root; sample one
            vec![(0..n).map(|_| random_unit(&mut rng)).collect()]
        } else {
            let system = square_up(&restricted, n, &mut rng);
            let sol = solve_polynomials(&system, None, cfg)?;
            sol.roots.into_iter().map(|r| r.z).collect()
        };
        for z in candidates {
            roots_checked += 1;
            let mut x = z;
            x.insert(chart, one);
            let residual = CompactMap::relative_max(&map.coefficients, &x);
            if residual > ROOT_TOL {
                continue;
            }
            let plucker_size = plucker_size(&map.plucker, &x);
            if plucker_size < PLUCKER_TOL {
                skipped += 1;
                continue;
            }
            return Ok(ProbeVerdict::Degenerate(DegenerateWitness {
                point: x,
                residual,
                plucker_size,
            }));
        }
    }
    Ok(ProbeVerdict::ProbablyNondegenerate {
        roots_checked,
        indeterminate_skipped: skipped,
    })
}

fn plucker_size(plucker: &[MultiPoly<Complex64>], x: &[Complex64]) -> f64 {
    let growth = 1.0 + x.iter().map(|v| v.norm()).fold(0.0, f64::max);
    plucker
        .iter()
        .filter(|p| !p.is_zero())
        .map(|p| {
            let deg = p.degree().unwrap_or(0) as i32;
            p.eval(x).map_or(0.0, |v| v.norm()) / (p.max_coeff_magnitude() * growth.powi(deg))
        })
        .fold(0.0, f64::max)
}

fn random_unit<R: Rng>(rng: &mut R) -> Complex64 {
    Complex64::from_polar(1.0, rng.gen_range(0.0..std::f64::consts::TAU))
}

/// `n` equations whose roots contain the common roots of `polys`: random
/// combinations when there are enough polynomials, random hyperplanes
/// otherwise.
fn square_up<R: Rng>(polys: &[MultiPoly<Complex64>], n: usize, rng: &mut R) -> Vec<MultiPoly<Complex64>> {
    if polys.len() >= n {
        (0..n)
            .map(|_| {
                polys.iter().fold(MultiPoly::zero(n), |acc, p| {
                    &acc + &p.scale(&random_unit(rng))
                })
            })
            .collect()
    } else {
        let mut out = polys.to_vec();
        while out.len() < n {
            let mut slice = MultiPoly::constant(n, random_unit(rng));
            for v in 0..n {
                slice = &slice + &MultiPoly::var(n, v).scale(&random_unit(rng));
            }
            out.push(slice);
        }
        out
    }
}
