use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

use super::index::{BlockDecomposition, FilledType};
use super::{factorial, SchubertError};

/// Degree of a product of Schubert varieties, computed by the closed product
/// formula and by composing per-block degrees under the Segre embedding.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductDegree {
    pub degree: BigUint,
    /// `(sum mu)! prod_l prod_{i<j} (mu_j + j - mu_i - i) / prod_{l,i} (mu_i + i - 1)!`.
    pub combined: BigUint,
    /// `(sum dim)! / prod dim! * prod deg`.
    pub segre: BigUint,
    pub block_dims: Vec<usize>,
    pub block_degrees: Vec<BigUint>,
}

pub fn product_degree(blocks: &BlockDecomposition) -> Result<ProductDegree, SchubertError> {
    let combined = combined_formula(blocks.blocks());
    let block_dims: Vec<usize> = blocks.blocks().iter().map(FilledType::dimension).collect();
    let block_degrees: Vec<BigUint> = blocks.blocks().iter().map(FilledType::degree).collect();
    let segre = segre_degree(&block_dims, &block_degrees);
    if combined != segre {
        return Err(SchubertError::Inconsistent(format!(
            "product formula {combined} vs Segre composition {segre}"
        )));
    }
    Ok(ProductDegree {
        degree: combined.clone(),
        combined,
        segre,
        block_dims,
        block_degrees,
    })
}

fn combined_formula(blocks: &[FilledType]) -> BigUint {
    let total: usize = blocks.iter().map(FilledType::dimension).sum();
    let mut num = factorial(total);
    let mut den = BigUint::one();
    for b in blocks {
        let mu = b.mu();
        for j in 0..mu.len() {
            for i in 0..j {
                num *= BigUint::from(mu[j] + j - mu[i] - i);
            }
            den *= factorial(mu[j] + j);
        }
    }
    num / den
}

/// Degree of `Z_1 x ... x Z_k` under Segre from the factor dimensions and degrees.
pub fn segre_degree(dims: &[usize], degrees: &[BigUint]) -> BigUint {
    let total: usize = dims.iter().sum();
    let den = dims.iter().fold(BigUint::one(), |acc, &d| acc * factorial(d));
    let prod = degrees.iter().fold(BigUint::one(), |acc, d| acc * d);
    factorial(total) / den * prod
}

/// `Mat(m1 x n1)` itself: type `(n1, ..., n1)`; equals `deg Grass(m1, m1 + n1)`.
pub fn grassmannian_degree(m1: usize, n1: usize) -> Result<BigUint, SchubertError> {
    let t = FilledType::new(vec![n1; m1], n1)?;
    Ok(product_degree(&BlockDecomposition::from_blocks(vec![t])?)?.degree)
}

/// `n` one-by-one blocks of type `(1)`: the diagonal matrices.
pub fn diagonal_degree(n: usize) -> Result<BigUint, SchubertError> {
    let unit = FilledType::new(vec![1], 1)?;
    Ok(product_degree(&BlockDecomposition::from_blocks(vec![unit; n])?)?.degree)
}
