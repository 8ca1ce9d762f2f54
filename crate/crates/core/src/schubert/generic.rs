//! The generic degree `n (n-1)^(n-1)` of an `n`-dimensional subspace of
//! `Mat(n x n)` and the intersection numbers that produce it.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::SchubertError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenericCertificate {
    pub n: usize,
    /// `n (n-1)^(n-1)`, with `0^0 = 1`.
    pub degree: BigUint,
    /// `n^n + sum_{k=2..n} (-1)^(k+1) C(n,k) n^(n-k+1) sum_{i=0..k-2} n^i`.
    pub alternating_sum: BigInt,
}

fn pow(base: usize, exp: usize) -> BigInt {
    num_traits::pow(BigInt::from(base), exp)
}

pub(crate) fn binomial(n: usize, k: usize) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}

/// `sum_{i=0}^{k-2} n^i`.
fn geometric(n: usize, k: usize) -> BigInt {
    (0..k.saturating_sub(1)).map(|i| pow(n, i)).sum()
}

/// Returns the degree together with the alternating-sum certificate; the two
/// must agree.
pub fn generic_degree(n: usize) -> Result<GenericCertificate, SchubertError> {
    if n == 0 {
        return Err(SchubertError::InvalidIndex("generic degree needs n >= 1".into()));
    }
    let degree = BigUint::from(n) * num_traits::pow(BigUint::from(n - 1), n - 1);
    let mut sum = pow(n, n);
    for k in 2..=n {
        let term = binomial(n, k) * pow(n, n - k + 1) * geometric(n, k);
        if k % 2 == 0 {
            sum -= term;
        } else {
            sum += term;
        }
    }
    if sum != BigInt::from(degree.clone()) {
        return Err(SchubertError::Inconsistent(format!(
            "alternating sum {sum} differs from n(n-1)^(n-1) = {degree} at n = {n}"
        )));
    }
    Ok(GenericCertificate {
        n,
        degree,
        alternating_sum: sum,
    })
}

/// Intersection numbers `D^(n-k) B^k` for `k = 0..=n`: `n^n`, `0`, and
/// `-n^(n-k+1) sum_{i=0}^{k-2} n^i` for `k >= 2`.
pub fn intersection_table(n: usize) -> Result<Vec<BigInt>, SchubertError> {
    if n < 2 {
        return Err(SchubertError::InvalidIndex(
            "intersection table needs n >= 2".into(),
        ));
    }
    Ok((0..=n)
        .map(|k| match k {
            0 => pow(n, n),
            1 => BigInt::zero(),
            _ => -(pow(n, n - k + 1) * geometric(n, k)),
        })
        .collect())
}

/// `(D - B)^n = sum_k (-1)^k C(n,k) D^(n-k) B^k`.
pub fn weighted_table_sum(table: &[BigInt]) -> BigInt {
    let n = table.len() - 1;
    table
        .iter()
        .enumerate()
        .map(|(k, v)| {
            let t = binomial(n, k) * v;
            if k % 2 == 1 {
                -t
            } else {
                t
            }
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn small_degrees() {
        assert_eq!(generic_degree(1).unwrap().degree, BigUint::from(1u32));
        assert_eq!(generic_degree(2).unwrap().degree, BigUint::from(2u32));
        assert_eq!(generic_degree(3).unwrap().degree, BigUint::from(12u32));
        assert_eq!(generic_degree(4).unwrap().degree, BigUint::from(108u32));
        assert!(generic_degree(0).is_err());
    }

    #[test]
    fn tables_for_three_and_four() {
        let t3 = intersection_table(3).unwrap();
        assert_eq!(t3, ints(&[27, 0, -9, -12]));
        assert_eq!(weighted_table_sum(&t3), BigInt::from(12));
        let t4 = intersection_table(4).unwrap();
        assert_eq!(t4, ints(&[256, 0, -64, -80, -84]));
        assert_eq!(weighted_table_sum(&t4), BigInt::from(108));
    }

    #[test]
    fn identity_up_to_twenty_five() {
        for n in 1..=25 {
            let c = generic_degree(n).unwrap();
            assert_eq!(c.alternating_sum, BigInt::from(c.degree.clone()));
            if n >= 2 {
                let t = intersection_table(n).unwrap();
                assert_eq!(weighted_table_sum(&t), BigInt::from(c.degree));
            }
        }
    }
}
