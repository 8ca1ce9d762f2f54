//! Total-degree homotopy continuation for square polynomial systems, the
//! exact two-variable resultant oracle, pole placement and counting
//! experiments.

mod config;
mod eval;
pub mod experiment;
mod place;
mod resultant;
mod solution;
mod tracker;

pub use config::SolverConfig;
pub use experiment::{count_experiment, CountTable, Family, TrialRecord};
pub use place::{place_poles, Placement, VerifiedFeedback};
pub use resultant::{resultant_oracle_2d, OracleResult};
pub use solution::{PathOutcome, PathRecord, Root, RunMeta, SolutionSet};

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::pencil::CoefficientSystem;
use crate::poly::{Coeff, MultiPoly};

use eval::{norm, CompiledPoly};
use tracker::{refine, Homotopy, PathEnd};

/// Largest number of unknowns accepted by the tracker.
pub const MAX_UNKNOWNS: usize = 5;

/// Largest Bézout number (path count) accepted by the tracker.
pub const MAX_PATHS: u64 = 100_000;

const REFINE_ITERATIONS: usize = 12;

/// Rounds of re-tracking for paths that share a nonsingular endpoint.
const RETRACK_ROUNDS: u32 = 2;

/// An unpolished endpoint whose `|x0| / |x|` fell below this fraction of its
/// value near the end of the path is heading to infinity.
const TREND: f64 = 0.1;

/// Roots whose Jacobian condition number is below this count as nonsingular.
const NONSINGULAR_COND: f64 = 1e8;

fn cluster_finite(paths: &[PathRecord], tol: f64) -> Vec<Root> {
    solution::cluster(
        paths
            .iter()
            .filter(|p| p.outcome == PathOutcome::Finite)
            .map(|p| {
                (
                    p.index,
                    p.endpoint.clone().expect("finite paths carry endpoints"),
                    p.residual.unwrap_or(0.0),
                )
            }),
        tol,
    )
}

/// Solves the pole-placement system, filtering roots where `c_n` vanishes.
pub fn solve_system<C: Coeff>(sys: &CoefficientSystem<C>, cfg: &SolverConfig) -> Result<SolutionSet> {
    solve_polynomials(sys.equations(), Some(sys.leading()), cfg)
}

/// Tracks every path of the total-degree homotopy for `eqs` (square, all in
/// `eqs.len()` variables). Endpoints where `leading` vanishes are reported as
/// base locus instead of finite roots.
pub fn solve_polynomials<C: Coeff>(
    eqs: &[MultiPoly<C>],
    leading: Option<&MultiPoly<C>>,
    cfg: &SolverConfig,
) -> Result<SolutionSet> {
    cfg.validate()?;
    let n = eqs.len();
    if n == 0 || n > MAX_UNKNOWNS {
        return Err(Error::Unsupported(format!(
            "solver handles 1..={MAX_UNKNOWNS} unknowns, got {n}"
        )));
    }
    for p in eqs.iter().chain(leading) {
        if p.nvars() != n {
            return Err(Error::Dimension {
                what: "equation variables",
                expected: n,
                found: p.nvars(),
            });
        }
    }
    if let Some(k) = eqs.iter().position(MultiPoly::is_zero) {
        return Err(Error::Unsupported(format!(
            "equation {k} vanishes identically; the solution set is not finite"
        )));
    }
    let degrees: Vec<u32> = eqs.iter().map(|p| p.degree().unwrap_or(0)).collect();
    let bezout: u64 = degrees.iter().map(|&d| u64::from(d)).product();
    if bezout > MAX_PATHS {
        return Err(Error::Unsupported(format!(
            "Bézout number {bezout} exceeds {MAX_PATHS} paths"
        )));
    }
    let meta = RunMeta {
        seed: cfg.seed,
        gamma: cfg.gamma(),
        degrees: degrees.clone(),
        bezout,
        config: cfg.clone(),
    };
    if bezout == 0 {
        // a nonzero constant equation: no roots and no paths
        return Ok(SolutionSet {
            roots: Vec::new(),
            diverged: 0,
            base_locus: 0,
            failed: 0,
            paths: Vec::new(),
            meta,
        });
    }

    let affine: Vec<CompiledPoly> = eqs.iter().map(CompiledPoly::new).collect();
    let homogeneous = eqs
        .iter()
        .zip(&degrees)
        // unit-size coefficients keep the target comparable to the start system
        .map(|(p, &d)| Ok(CompiledPoly::new(&p.homogenize(0, d)?).normalized()))
        .collect::<Result<Vec<_>>>()?;
    let lead = leading.map(CompiledPoly::new);
    let homotopy = Homotopy::new(homogeneous, degrees, cfg);
    let ctx = EndpointContext {
        affine: &affine,
        leading: lead.as_ref(),
        n,
        cfg,
    };

    let run = |index: u64, cfg: &SolverConfig| -> PathRecord {
        let tracked = homotopy.track(homotopy.start_point(index), cfg);
        ctx.classify(index as usize, tracked)
    };
    let mut paths: Vec<PathRecord> = if cfg.parallel {
        (0..bezout).into_par_iter().map(|k| run(k, cfg)).collect()
    } else {
        (0..bezout).map(|k| run(k, cfg)).collect()
    };
    let mut roots = cluster_finite(&paths, cfg.cluster_tol);

    // Several paths ending at one well-conditioned root means a path jumped
    // (typically one bound for a singular solution at infinity). Re-track
    // those paths with shorter steps.
    for round in 1..=RETRACK_ROUNDS {
        let suspects: Vec<usize> = roots
            .iter()
            .filter(|r| r.multiplicity > 1 && ctx.well_conditioned(&r.z))
            .flat_map(|r| r.paths.iter().copied())
            .collect();
        if suspects.is_empty() {
            break;
        }
        let shrink = 4f64.powi(round as i32);
        let tight = SolverConfig {
            step_max: cfg.step_max / shrink,
            max_steps: cfg.max_steps.saturating_mul(shrink as usize),
            ..cfg.clone()
        };
        let redone: Vec<PathRecord> = if cfg.parallel {
            suspects.par_iter().map(|&k| run(k as u64, &tight)).collect()
        } else {
            suspects.iter().map(|&k| run(k as u64, &tight)).collect()
        };
        for rec in redone {
            let k = rec.index;
            paths[k] = rec;
        }
        roots = cluster_finite(&paths, cfg.cluster_tol);
    }

    let count = |o: PathOutcome| paths.iter().filter(|p| p.outcome == o).count();
    Ok(SolutionSet {
        roots,
        diverged: count(PathOutcome::Diverged),
        base_locus: count(PathOutcome::BaseLocus),
        failed: count(PathOutcome::Failed),
        paths,
        meta,
    })
}

struct EndpointContext<'a> {
    affine: &'a [CompiledPoly],
    leading: Option<&'a CompiledPoly>,
    n: usize,
    cfg: &'a SolverConfig,
}

impl EndpointContext<'_> {
    /// `c_n(z)` is zero up to cancellation: small against the sum of the
    /// absolute values of its terms.
    fn leading_vanishes(&self, z: &[Complex64], tol: f64) -> bool {
        self.leading.is_some_and(|c| c.eval(z).norm() <= tol * c.eval_abs(z))
    }

    fn classify(&self, index: usize, tracked: tracker::Tracked) -> PathRecord {
        let record = |outcome, endpoint, residual| PathRecord {
            index,
            outcome,
            steps: tracked.steps,
            t: tracked.t,
            endpoint,
            residual,
        };
        if tracked.end == PathEnd::Failed {
            return record(PathOutcome::Failed, None, None);
        }
        let x = &tracked.x;
        let tail = norm(&x[1..]);
        if x[0].norm() * self.cfg.diverge_threshold <= tail {
            return record(PathOutcome::Diverged, None, None);
        }
        let z: Vec<Complex64> = x[1..].iter().map(|v| v / x[0]).collect();
        let tol = self.cfg.newton_tol;
        let loose = tol.sqrt();
        let growth = (1.0 + norm(&z)).powi(self.n as i32);
        if let Some((z, r)) = refine(self.affine, z.clone(), REFINE_ITERATIONS) {
            if r < tol * growth {
                let outcome = if self.leading_vanishes(&z, tol) {
                    PathOutcome::BaseLocus
                } else {
                    PathOutcome::Finite
                };
                return record(outcome, Some(z), Some(r));
            }
        }
        // A singular endpoint Newton cannot polish. Singular solutions at
        // infinity are only approached to about sqrt(tol), so a large but
        // finite |z|, or x0 still shrinking over the last stretch of the
        // path, already means infinity.
        let ratio = x[0].norm() / norm(x);
        if x[0].norm() * self.cfg.diverge_threshold.sqrt() <= tail || ratio < TREND * tracked.watch_ratio {
            return record(PathOutcome::Diverged, None, None);
        }
        if self.leading_vanishes(&z, loose) {
            return record(PathOutcome::BaseLocus, Some(z), None);
        }
        let r = self.residual(&z);
        if r < loose * growth {
            record(PathOutcome::Finite, Some(z), Some(r))
        } else {
            record(PathOutcome::Failed, None, None)
        }
    }

    fn well_conditioned(&self, z: &[Complex64]) -> bool {
        let n = self.n;
        let mut j = nalgebra::DMatrix::<Complex64>::zeros(n, n);
        for (i, e) in self.affine.iter().enumerate() {
            let s = e.scale().max(f64::MIN_POSITIVE);
            for (k, g) in e.eval_grad(z).1.into_iter().enumerate() {
                j[(i, k)] = g / s;
            }
        }
        let sv = j.singular_values();
        let (lo, hi) = (sv.min(), sv.max());
        lo > 0.0 && hi / lo < NONSINGULAR_COND
    }

    fn residual(&self, z: &[Complex64]) -> f64 {
        self.affine
            .iter()
            .map(|e| e.eval(z).norm() / e.scale().max(f64::MIN_POSITIVE))
            .fold(0.0, f64::max)
    }
}
