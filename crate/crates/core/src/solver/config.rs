use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Path-tracking parameters. Identical configs give bit-identical runs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SolverConfig {
    pub seed: u64,
    pub step_min: f64,
    pub step_max: f64,
    /// Newton step tolerance, relative to `1 + |x|`.
    pub newton_tol: f64,
    /// `|z|` beyond which an endpoint counts as a solution at infinity.
    pub diverge_threshold: f64,
    /// Relative distance under which two endpoints are the same root.
    pub cluster_tol: f64,
    pub max_steps: usize,
    /// Track paths on the rayon pool; results do not depend on this.
    pub parallel: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            seed: 0,
            step_min: 1e-13,
            step_max: 0.05,
            newton_tol: 1e-10,
            diverge_threshold: 1e8,
            cluster_tol: 1e-6,
            max_steps: 10_000,
            parallel: true,
        }
    }
}

impl SolverConfig {
    pub fn with_seed(seed: u64) -> Self {
        SolverConfig {
            seed,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("step_min", self.step_min),
            ("step_max", self.step_max),
            ("newton_tol", self.newton_tol),
            ("diverge_threshold", self.diverge_threshold),
            ("cluster_tol", self.cluster_tol),
        ];
        for (name, v) in positive {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::InvalidConfig(format!("{name} must be positive, got {v}")));
            }
        }
        if self.step_min > self.step_max {
            return Err(Error::InvalidConfig(format!(
                "step_min {} exceeds step_max {}",
                self.step_min, self.step_max
            )));
        }
        if self.max_steps == 0 {
            return Err(Error::InvalidConfig("max_steps must be positive".into()));
        }
        Ok(())
    }

    /// Unit complex number drawn from the seed.
    pub fn gamma(&self) -> Complex64 {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let theta: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
        Complex64::from_polar(1.0, theta)
    }

    /// Generator for the remaining random choices of a run (patch, slices).
    pub(crate) fn rng(&self, stream: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(stream + 1);
        rng
    }
}
