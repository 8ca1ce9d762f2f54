use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::config::SolverConfig;

/// How a homotopy path ended.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PathOutcome {
    /// Converged to an affine root with `c_n != 0`.
    Finite,
    /// Went to infinity.
    Diverged,
    /// Converged to an affine root where the leading coefficient vanishes.
    BaseLocus,
    /// Step underflow away from `t = 1` or step budget exhausted.
    Failed,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PathRecord {
    pub index: usize,
    pub outcome: PathOutcome,
    pub steps: usize,
    /// Homotopy parameter reached (1 unless the path failed early).
    pub t: f64,
    /// Affine endpoint when finite or base-locus.
    pub endpoint: Option<Vec<Complex64>>,
    pub residual: Option<f64>,
}

/// A cluster of finite endpoints.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Root {
    pub z: Vec<Complex64>,
    pub residual: f64,
    pub multiplicity: usize,
    pub real: bool,
    pub paths: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunMeta {
    pub seed: u64,
    pub gamma: Complex64,
    pub degrees: Vec<u32>,
    pub bezout: u64,
    pub config: SolverConfig,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolutionSet {
    pub roots: Vec<Root>,
    pub diverged: usize,
    pub base_locus: usize,
    pub failed: usize,
    pub paths: Vec<PathRecord>,
    pub meta: RunMeta,
}

impl SolutionSet {
    /// Finite roots counted with multiplicity.
    pub fn finite_count(&self) -> usize {
        self.roots.iter().map(|r| r.multiplicity).sum()
    }

    /// Real finite roots counted with multiplicity.
    pub fn real_count(&self) -> usize {
        self.roots
            .iter()
            .filter(|r| r.real)
            .map(|r| r.multiplicity)
            .sum()
    }

    /// Every path is accounted for exactly once.
    pub fn accounting_holds(&self) -> bool {
        let total = self.finite_count() + self.diverged + self.base_locus + self.failed;
        total as u64 == self.meta.bezout && self.paths.len() as u64 == self.meta.bezout
    }
}

/// Groups finite endpoints greedily in path order: an endpoint joins the first
/// root whose representative lies within `tol * (1 + |z|)`.
pub(crate) fn cluster(
    endpoints: impl IntoIterator<Item = (usize, Vec<Complex64>, f64)>,
    tol: f64,
) -> Vec<Root> {
    let mut roots: Vec<Root> = Vec::new();
    for (path, z, residual) in endpoints {
        let scale = 1.0 + super::eval::norm(&z);
        let hit = roots.iter_mut().find(|r| {
            let d: Vec<Complex64> = r.z.iter().zip(&z).map(|(a, b)| a - b).collect();
            super::eval::norm(&d) <= tol * scale
        });
        match hit {
            Some(r) => {
                r.multiplicity += 1;
                r.paths.push(path);
            }
            None => {
                let real = z.iter().all(|c| c.im.abs() <= tol * scale);
                roots.push(Root {
                    z,
                    residual,
                    multiplicity: 1,
                    real,
                    paths: vec![path],
                });
            }
        }
    }
    roots
}
