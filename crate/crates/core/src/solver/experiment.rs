//! Seeded Monte-Carlo counting: draw random instances of a family, solve each
//! and tabulate the finite solution counts.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pencil::{FeedbackSubspace, MatrixPencil, MonicTarget};
use crate::poly::{DenseMatrix, Rational};
use crate::sampling::{random_matrix, random_vector, rng, trial_seed};
use crate::schubert::{diagonal_degree, generic_degree, grassmannian_degree};

use super::config::SolverConfig;
use super::place::place_poles;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    /// A random `n`-dimensional subspace of `Mat(n x n)` and a random pencil.
    GenericSubspace(usize),
    /// Diagonal feedback for `E = I, H = 0, B = I` and random `A`.
    Diagonal(usize),
    /// `F = K C` with `E = I`, `H = 0`, random `A`, `B`, `C` and `n = m p`.
    OutputFeedback { m: usize, p: usize },
    /// The banded Toeplitz subspace of `Mat(3 x 3)` with a random pencil.
    PaperExample21,
    /// The cyclic cubic subspace of `Mat(3 x 3)` with a random pencil.
    PaperExample42,
}

/// One random instance of a family.
#[derive(Clone, Debug, PartialEq)]
pub struct Instance {
    pub pencil: MatrixPencil,
    pub subspace: FeedbackSubspace,
    pub target: MonicTarget,
}

impl Family {
    pub fn n(&self) -> usize {
        match *self {
            Family::GenericSubspace(n) | Family::Diagonal(n) => n,
            Family::OutputFeedback { m, p } => m * p,
            Family::PaperExample21 | Family::PaperExample42 => 3,
        }
    }

    /// The closed-form degree of the subspace closure, when one is known.
    pub fn predicted(&self) -> Option<BigUint> {
        match *self {
            Family::GenericSubspace(n) => generic_degree(n).ok().map(|c| c.degree),
            Family::Diagonal(n) => diagonal_degree(n).ok(),
            Family::OutputFeedback { m, p } => grassmannian_degree(m, p).ok(),
            Family::PaperExample21 => None,
            Family::PaperExample42 => generic_degree(3).ok().map(|c| c.degree),
        }
    }

    /// Draws the instance used by the trial seeded with `seed`.
    pub fn instance(&self, seed: u64) -> Result<Instance> {
        let mut r = rng(seed);
        let n = self.n();
        let identity = DenseMatrix::<Rational>::identity(n);
        let (pencil, subspace) = match *self {
            Family::GenericSubspace(n) => {
                let pencil = random_pencil(&mut r, n, n)?;
                let basis = (0..n).map(|_| random_matrix(&mut r, n, n)).collect();
                (pencil, FeedbackSubspace::new(basis)?)
            }
            Family::Diagonal(n) => {
                let a = random_matrix(&mut r, n, n);
                (MatrixPencil::state_feedback(a, identity)?, FeedbackSubspace::diagonal(n)?)
            }
            Family::OutputFeedback { m, p } => {
                let a = random_matrix(&mut r, n, n);
                let b = random_matrix(&mut r, n, m);
                let c = random_matrix(&mut r, p, n);
                (
                    MatrixPencil::state_feedback(a, b)?,
                    FeedbackSubspace::output_feedback(m, &c)?,
                )
            }
            Family::PaperExample21 => (random_pencil(&mut r, 3, 3)?, FeedbackSubspace::banded_toeplitz()),
            Family::PaperExample42 => (random_pencil(&mut r, 3, 3)?, FeedbackSubspace::cyclic_cubic()),
        };
        let target = MonicTarget::new(random_vector(&mut r, n))?;
        Ok(Instance {
            pencil,
            subspace,
            target,
        })
    }
}

fn random_pencil<R: Rng>(r: &mut R, n: usize, m: usize) -> Result<MatrixPencil> {
    MatrixPencil::new(
        random_matrix(r, n, n),
        random_matrix(r, n, n),
        random_matrix(r, n, m),
        random_matrix(r, n, m),
    )
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::GenericSubspace(n) => write!(f, "generic {n}"),
            Family::Diagonal(n) => write!(f, "diagonal {n}"),
            Family::OutputFeedback { m, p } => write!(f, "output-feedback {m} {p}"),
            Family::PaperExample21 => f.write_str("paper-example-2.1"),
            Family::PaperExample42 => f.write_str("paper-example-4.2"),
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    /// Accepts `generic N`, `diagonal N`, `output-feedback M P`,
    /// `paper-example-2.1` and `paper-example-4.2`.
    fn from_str(s: &str) -> Result<Self> {
        let words: Vec<&str> = s.split_whitespace().collect();
        let num = |w: &str| -> Result<usize> {
            match w.parse::<usize>() {
                Ok(v) if v > 0 => Ok(v),
                _ => Err(Error::Unsupported(format!("'{w}' is not a positive integer"))),
            }
        };
        let fam = match words.as_slice() {
            ["generic" | "generic-subspace", n] => Family::GenericSubspace(num(n)?),
            ["diagonal" | "friedland", n] => Family::Diagonal(num(n)?),
            ["output-feedback", m, p] => Family::OutputFeedback {
                m: num(m)?,
                p: num(p)?,
            },
            ["paper-example-2.1"] => Family::PaperExample21,
            ["paper-example-4.2"] => Family::PaperExample42,
            _ => return Err(Error::Unsupported(format!("unknown family '{s}'"))),
        };
        Ok(fam)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub trial: usize,
    pub seed: u64,
    /// Finite solutions counted with multiplicity.
    pub finite: usize,
    pub real: usize,
    pub diverged: usize,
    pub base_locus: usize,
    pub failed: usize,
    pub bezout: u64,
    /// Feedbacks that passed the direct determinant check.
    pub verified: usize,
    /// Set when the instance could not be solved at all.
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CountTable {
    pub family: Family,
    pub seed: u64,
    pub trials: Vec<TrialRecord>,
    /// Finite count to number of trials.
    pub histogram: BTreeMap<usize, usize>,
    /// Most frequent finite count; ties go to the smaller count.
    pub modal: Option<usize>,
    pub predicted: Option<BigUint>,
}

impl CountTable {
    fn new(family: Family, seed: u64, trials: Vec<TrialRecord>) -> Self {
        let mut histogram = BTreeMap::new();
        for t in &trials {
            *histogram.entry(t.finite).or_insert(0) += 1;
        }
        let modal = histogram
            .iter()
            .max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(a.0)))
            .map(|(&k, _)| k);
        CountTable {
            family,
            seed,
            trials,
            histogram,
            modal,
            predicted: family.predicted(),
        }
    }

    /// `Some(true)` when the modal count equals the prediction.
    pub fn matches(&self) -> Option<bool> {
        let predicted = self.predicted.as_ref()?;
        Some(self.modal.map(BigUint::from) == Some(predicted.clone()))
    }

    /// One CSV row per trial.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        for t in &self.trials {
            w.serialize(t).map_err(|e| Error::Unsupported(e.to_string()))?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Unsupported(e.to_string()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }
}

/// Runs `trials` seeded trials of `family`. Trial `k` uses
/// `trial_seed(cfg.seed, k)` both for the instance and for the solver.
pub fn count_experiment(family: Family, trials: usize, cfg: &SolverConfig) -> CountTable {
    let run = |k: usize| -> TrialRecord {
        let seed = trial_seed(cfg.seed, k as u64);
        let mut record = TrialRecord {
            trial: k,
            seed,
            finite: 0,
            real: 0,
            diverged: 0,
            base_locus: 0,
            failed: 0,
            bezout: 0,
            verified: 0,
            error: None,
        };
        let outcome = family.instance(seed).and_then(|inst| {
            let trial_cfg = SolverConfig { seed, ..cfg.clone() };
            place_poles(&inst.pencil, &inst.subspace, &inst.target, &trial_cfg)
        });
        match outcome {
            Ok(p) => {
                let s = &p.solutions;
                record.finite = s.finite_count();
                record.real = s.real_count();
                record.diverged = s.diverged;
                record.base_locus = s.base_locus;
                record.failed = s.failed;
                record.bezout = s.meta.bezout;
                record.verified = p.verified.iter().map(|v| v.multiplicity).sum();
            }
            Err(e) => record.error = Some(e.to_string()),
        }
        record
    };
    let records: Vec<TrialRecord> = if cfg.parallel {
        (0..trials).into_par_iter().map(run).collect()
    } else {
        (0..trials).map(run).collect()
    };
    CountTable::new(family, cfg.seed, records)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display_round_trip() {
        for s in ["generic 3", "diagonal 4", "output-feedback 2 2", "paper-example-2.1", "paper-example-4.2"] {
            let f: Family = s.parse().unwrap();
            assert_eq!(f.to_string(), s);
        }
        assert!("generic 0".parse::<Family>().is_err());
        assert!("spiral 3".parse::<Family>().is_err());
    }

    #[test]
    fn predictions() {
        let p = |s: &str| s.parse::<Family>().unwrap().predicted();
        assert_eq!(p("generic 3"), Some(BigUint::from(12u32)));
        assert_eq!(p("diagonal 4"), Some(BigUint::from(24u32)));
        assert_eq!(p("output-feedback 2 2"), Some(BigUint::from(2u32)));
        assert_eq!(p("paper-example-2.1"), None);
    }

    #[test]
    fn modal_ties_prefer_smaller() {
        let rec = |trial, finite| TrialRecord {
            trial,
            seed: 0,
            finite,
            real: 0,
            diverged: 0,
            base_locus: 0,
            failed: 0,
            bezout: 4,
            verified: finite,
            error: None,
        };
        let t = CountTable::new(Family::Diagonal(2), 0, vec![rec(0, 2), rec(1, 1), rec(2, 2), rec(3, 1)]);
        assert_eq!(t.modal, Some(1));
        assert_eq!(t.matches(), Some(false));
        assert!(t.to_csv().unwrap().starts_with("trial,seed,finite"));
    }

    #[test]
    fn diagonal_two_counts_two() {
        let t = count_experiment(Family::Diagonal(2), 5, &SolverConfig::with_seed(11));
        assert_eq!(t.modal, Some(2));
        assert_eq!(t.matches(), Some(true));
        for r in &t.trials {
            assert_eq!(r.finite + r.diverged + r.base_locus + r.failed, r.bezout as usize);
        }
    }

    #[test]
    fn instances_are_reproducible() {
        let f = Family::GenericSubspace(2);
        assert_eq!(f.instance(9).unwrap(), f.instance(9).unwrap());
        assert_ne!(f.instance(9).unwrap(), f.instance(10).unwrap());
    }
}
