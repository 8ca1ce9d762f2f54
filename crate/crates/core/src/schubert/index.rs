use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

use super::{factorial, SchubertError};

/// Strictly increasing `1 <= nu_1 < ... < nu_m <= m + n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SchubertIndex {
    nu: Vec<usize>,
    n: usize,
}

impl SchubertIndex {
    pub fn new(nu: Vec<usize>, n: usize) -> Result<Self, SchubertError> {
        let m = nu.len();
        if m == 0 {
            return Err(SchubertError::InvalidIndex("empty index".into()));
        }
        if nu[0] < 1 || nu[m - 1] > m + n {
            return Err(SchubertError::InvalidIndex(format!(
                "entries must lie in 1..={}, got {nu:?}",
                m + n
            )));
        }
        if nu.windows(2).any(|w| w[0] >= w[1]) {
            return Err(SchubertError::InvalidIndex(format!(
                "entries must increase strictly, got {nu:?}"
            )));
        }
        Ok(SchubertIndex { nu, n })
    }

    pub fn nu(&self) -> &[usize] {
        &self.nu
    }

    pub fn m(&self) -> usize {
        self.nu.len()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `sum_i (nu_i - i)`.
    pub fn dimension(&self) -> usize {
        self.nu.iter().enumerate().map(|(i, &v)| v - (i + 1)).sum()
    }

    /// `lambda_i = nu_{m+1-i} - (m+1-i)`, zero parts dropped.
    pub fn partition(&self) -> Vec<usize> {
        let m = self.m();
        (1..=m)
            .map(|i| self.nu[m - i] - (m + 1 - i))
            .filter(|&p| p > 0)
            .collect()
    }

    /// Every index of `Grass(m, m + n)` with dimension at most `max_dim`.
    pub fn enumerate(m: usize, n: usize, max_dim: usize) -> Vec<SchubertIndex> {
        fn rec(
            start: usize,
            m: usize,
            n: usize,
            max_dim: usize,
            cur: &mut Vec<usize>,
            out: &mut Vec<SchubertIndex>,
        ) {
            let dim: usize = cur.iter().enumerate().map(|(i, &v)| v - (i + 1)).sum();
            if dim > max_dim {
                return;
            }
            if cur.len() == m {
                out.push(SchubertIndex {
                    nu: cur.clone(),
                    n,
                });
                return;
            }
            for v in start..=m + n {
                cur.push(v);
                rec(v + 1, m, n, max_dim, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(1, m, n, max_dim, &mut Vec::new(), &mut out);
        out
    }
}

/// Degree of the Schubert variety `S(nu)` in the Plücker embedding:
/// `(sum (nu_i - i))! prod_{i<j} (nu_j - nu_i) / prod_i (nu_i - 1)!`.
pub fn schubert_degree(index: &SchubertIndex) -> BigUint {
    let nu = index.nu();
    let mut num = factorial(index.dimension());
    for j in 0..nu.len() {
        for i in 0..j {
            num *= BigUint::from(nu[j] - nu[i]);
        }
    }
    let den = nu
        .iter()
        .fold(BigUint::one(), |acc, &v| acc * factorial(v - 1));
    assert!(
        (&num % &den) == BigUint::from(0u32),
        "degree formula must divide exactly"
    );
    num / den
}

/// Non-decreasing `0 <= mu_1 <= ... <= mu_m <= n`: the span of `E_{i,j}`, `j <= mu_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FilledType {
    mu: Vec<usize>,
    n: usize,
}

impl FilledType {
    pub fn new(mu: Vec<usize>, n: usize) -> Result<Self, SchubertError> {
        if mu.is_empty() {
            return Err(SchubertError::InvalidType("empty type".into()));
        }
        if mu.windows(2).any(|w| w[0] > w[1]) {
            return Err(SchubertError::InvalidType(format!(
                "type must be non-decreasing, got {mu:?}"
            )));
        }
        if mu.iter().any(|&v| v > n) {
            return Err(SchubertError::InvalidType(format!(
                "type entries must be at most {n}, got {mu:?}"
            )));
        }
        Ok(FilledType { mu, n })
    }

    pub fn mu(&self) -> &[usize] {
        &self.mu
    }

    pub fn m(&self) -> usize {
        self.mu.len()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Dimension of the subspace, `sum mu_i`.
    pub fn dimension(&self) -> usize {
        self.mu.iter().sum()
    }

    /// The Schubert index `(mu_1 + 1, ..., mu_m + m)` of its closure.
    pub fn schubert_index(&self) -> SchubertIndex {
        let nu = self.mu.iter().enumerate().map(|(i, &v)| v + i + 1).collect();
        SchubertIndex::new(nu, self.n).expect("valid by construction")
    }

    pub fn degree(&self) -> BigUint {
        schubert_degree(&self.schubert_index())
    }
}

/// Blocks of a block-diagonal coordinate subspace.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockDecomposition {
    blocks: Vec<FilledType>,
}

impl BlockDecomposition {
    /// Checks the blocks fill an `m x n` ambient space.
    pub fn new(blocks: Vec<FilledType>, m: usize, n: usize) -> Result<Self, SchubertError> {
        let sm: usize = blocks.iter().map(FilledType::m).sum();
        let sn: usize = blocks.iter().map(FilledType::n).sum();
        if blocks.is_empty() || sm != m || sn != n {
            return Err(SchubertError::InconsistentBlocks {
                m,
                n,
                sum_m: sm,
                sum_n: sn,
            });
        }
        Ok(BlockDecomposition { blocks })
    }

    /// Ambient size is the sum of the block sizes.
    pub fn from_blocks(blocks: Vec<FilledType>) -> Result<Self, SchubertError> {
        let m = blocks.iter().map(FilledType::m).sum();
        let n = blocks.iter().map(FilledType::n).sum();
        Self::new(blocks, m, n)
    }

    pub fn blocks(&self) -> &[FilledType] {
        &self.blocks
    }

    pub fn m(&self) -> usize {
        self.blocks.iter().map(FilledType::m).sum()
    }

    pub fn n(&self) -> usize {
        self.blocks.iter().map(FilledType::n).sum()
    }

    pub fn dimension(&self) -> usize {
        self.blocks.iter().map(FilledType::dimension).sum()
    }
}
