//! Exact degrees of Schubert varieties, their products, and of the closure of
//! a generic feedback subspace.

mod filled;
mod generic;
mod index;
mod product;
mod young;

pub use filled::{coordinate_blocks, coordinate_support, lower_left_filled_check, FilledCheck, FilledWitness};
pub use generic::{generic_degree, intersection_table, weighted_table_sum, GenericCertificate};
pub use index::{schubert_degree, BlockDecomposition, FilledType, SchubertIndex};
pub use product::{diagonal_degree, grassmannian_degree, product_degree, segre_degree, ProductDegree};
pub use young::{hook_length_count, syt_count, MAX_SYT_CELLS};

use num_bigint::BigUint;
use num_traits::One;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SchubertError {
    #[error("invalid Schubert index: {0}")]
    InvalidIndex(String),
    #[error("invalid filled type: {0}")]
    InvalidType(String),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("blocks cover {sum_m}x{sum_n}, ambient is {m}x{n}")]
    InconsistentBlocks {
        m: usize,
        n: usize,
        sum_m: usize,
        sum_n: usize,
    },
    #[error("partition with {cells} cells exceeds the limit {max}")]
    TooLarge { cells: usize, max: usize },
    /// Two computations of the same number disagree.
    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}

pub(crate) fn factorial(k: usize) -> BigUint {
    (2..=k).fold(BigUint::one(), |acc, i| acc * BigUint::from(i))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hodge_agrees_with_tableaux_up_to_dimension_ten() {
        for m in 1..=10 {
            for n in 1..=10 {
                for idx in SchubertIndex::enumerate(m, n, 10) {
                    let lambda = idx.partition();
                    assert_eq!(
                        schubert_degree(&idx),
                        syt_count(&lambda).unwrap(),
                        "nu = {:?}",
                        idx.nu()
                    );
                }
            }
        }
    }
}
