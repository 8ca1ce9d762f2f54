//! Standard Young tableaux counts, by hook lengths and by exhaustive
//! corner removal.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use super::{factorial, SchubertError};

/// Largest partition size accepted by [`syt_count`].
pub const MAX_SYT_CELLS: usize = 12;

/// Number of standard Young tableaux of shape `lambda` (weakly decreasing
/// parts; zeros ignored), computed two independent ways.
pub fn syt_count(lambda: &[usize]) -> Result<BigUint, SchubertError> {
    let shape: Vec<usize> = lambda.iter().copied().filter(|&p| p > 0).collect();
    if shape.windows(2).any(|w| w[0] < w[1]) {
        return Err(SchubertError::InvalidPartition(format!(
            "parts must be weakly decreasing, got {lambda:?}"
        )));
    }
    let cells: usize = shape.iter().sum();
    if cells > MAX_SYT_CELLS {
        return Err(SchubertError::TooLarge {
            cells,
            max: MAX_SYT_CELLS,
        });
    }
    let hooks = hook_length_count(&shape);
    let walk = enumerate_count(&shape, &mut HashMap::new());
    if hooks != walk {
        return Err(SchubertError::Inconsistent(format!(
            "hook length {hooks} vs enumeration {walk} for {shape:?}"
        )));
    }
    Ok(hooks)
}

/// `|lambda|! / prod hook(c)`.
pub fn hook_length_count(shape: &[usize]) -> BigUint {
    let cells: usize = shape.iter().sum();
    let mut den = BigUint::one();
    for (i, &row) in shape.iter().enumerate() {
        for j in 0..row {
            let arm = row - j - 1;
            let leg = shape[i + 1..].iter().filter(|&&r| r > j).count();
            den *= BigUint::from(arm + leg + 1);
        }
    }
    factorial(cells) / den
}

/// Counts fillings by removing the largest entry from every corner.
fn enumerate_count(shape: &[usize], memo: &mut HashMap<Vec<usize>, BigUint>) -> BigUint {
    if shape.iter().all(|&p| p == 0) {
        return BigUint::one();
    }
    if let Some(v) = memo.get(shape) {
        return v.clone();
    }
    let mut total = BigUint::zero();
    for i in 0..shape.len() {
        let corner = shape[i] > 0 && shape.get(i + 1).map_or(true, |&next| next < shape[i]);
        if corner {
            let mut smaller = shape.to_vec();
            smaller[i] -= 1;
            while smaller.last() == Some(&0) {
                smaller.pop();
            }
            total += enumerate_count(&smaller, memo);
        }
    }
    memo.insert(shape.to_vec(), total.clone());
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    fn count(l: &[usize]) -> u64 {
        u64::try_from(syt_count(l).unwrap()).unwrap()
    }

    #[test]
    fn small_shapes() {
        assert_eq!(count(&[2, 2]), 2);
        assert_eq!(count(&[1]), 1);
        assert_eq!(count(&[5]), 1);
        assert_eq!(count(&[1, 1, 1]), 1);
        assert_eq!(count(&[2, 1]), 2);
        assert_eq!(count(&[3, 2]), 5);
        assert_eq!(count(&[]), 1);
    }

    #[test]
    fn staircase_and_square() {
        assert_eq!(count(&[3, 2, 1]), 16);
        assert_eq!(count(&[3, 3, 3]), 42);
        assert_eq!(count(&[4, 4, 4]), 462);
    }

    #[test]
    fn rejects_bad_shapes() {
        assert!(syt_count(&[1, 2]).is_err());
        assert!(matches!(syt_count(&[13]), Err(SchubertError::TooLarge { .. })));
    }
}
