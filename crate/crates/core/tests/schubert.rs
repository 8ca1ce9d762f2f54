use num_bigint::{BigInt, BigUint};
use poleplace_core::schubert::{
    diagonal_degree, generic_degree, grassmannian_degree, hook_length_count, intersection_table,
    product_degree, schubert_degree, syt_count, weighted_table_sum, MAX_SYT_CELLS, BlockDecomposition, FilledType,
    SchubertIndex,
};
use proptest::prelude::*;

fn big(v: u64) -> BigUint {
    BigUint::from(v)
}

#[test]
fn generic_table_three() {
    let t = intersection_table(3).unwrap();
    assert_eq!(t, [27, 0, -9, -12].map(BigInt::from));
    assert_eq!(weighted_table_sum(&t), BigInt::from(12));
}

#[test]
fn generic_table_four() {
    let t = intersection_table(4).unwrap();
    assert_eq!(t, [256, 0, -64, -80, -84].map(BigInt::from));
    assert_eq!(weighted_table_sum(&t), BigInt::from(108));
}

#[test]
fn generic_degree_small_values() {
    let got: Vec<BigUint> = (1..=5).map(|n| generic_degree(n).unwrap().degree).collect();
    assert_eq!(got, [1, 2, 12, 108, 1280].map(big));
}

#[test]
fn diagonal_is_factorial() {
    let mut f = big(1);
    for n in 1..=12u64 {
        f *= n;
        assert_eq!(diagonal_degree(n as usize).unwrap(), f);
    }
}

#[test]
fn grassmannian_small_values() {
    // degrees of Grass(2, 4), Grass(2, 5), Grass(3, 6)
    assert_eq!(grassmannian_degree(2, 2).unwrap(), big(2));
    assert_eq!(grassmannian_degree(2, 3).unwrap(), big(5));
    assert_eq!(grassmannian_degree(3, 3).unwrap(), big(42));
}

#[test]
fn product_of_full_and_diagonal_blocks() {
    let full = FilledType::new(vec![2, 2], 2).unwrap();
    let unit = FilledType::new(vec![1], 1).unwrap();
    let pd = product_degree(&BlockDecomposition::from_blocks(vec![full, unit]).unwrap()).unwrap();
    // (4 + 1)! / (4! 1!) * 2 * 1
    assert_eq!(pd.degree, big(10));
    assert_eq!(pd.combined, pd.segre);
}

#[test]
fn identity_certificate_holds_to_twenty_five() {
    for n in 1..=25 {
        let c = generic_degree(n).unwrap();
        assert_eq!(c.alternating_sum, BigInt::from(c.degree.clone()), "n={n}");
        if n >= 2 {
            assert_eq!(weighted_table_sum(&intersection_table(n).unwrap()), BigInt::from(c.degree));
        }
    }
}

#[test]
fn invalid_indices_are_rejected() {
    assert!(SchubertIndex::new(vec![2, 2], 2).is_err());
    assert!(SchubertIndex::new(vec![0, 3], 2).is_err());
    assert!(SchubertIndex::new(vec![3, 5], 2).is_err());
    assert!(FilledType::new(vec![2, 1], 2).is_err());
}

fn index_strategy() -> impl Strategy<Value = SchubertIndex> {
    (1usize..=5, 1usize..=5)
        .prop_flat_map(|(m, n)| (Just(n), proptest::sample::subsequence((1..=m + n).collect::<Vec<_>>(), m)))
        .prop_map(|(n, nu)| SchubertIndex::new(nu, n).unwrap())
}

proptest! {
    #[test]
    fn hodge_matches_tableaux(idx in index_strategy()) {
        prop_assume!(idx.dimension() <= MAX_SYT_CELLS);
        let lambda = idx.partition();
        prop_assert_eq!(schubert_degree(&idx), syt_count(&lambda).unwrap());
        prop_assert_eq!(syt_count(&lambda).unwrap(), hook_length_count(&lambda));
    }

    #[test]
    fn grassmannian_duality(m in 1usize..=5, n in 1usize..=5) {
        prop_assert_eq!(grassmannian_degree(m, n).unwrap(), grassmannian_degree(n, m).unwrap());
    }

    #[test]
    fn product_paths_agree(blocks in proptest::collection::vec((1usize..=3, 1usize..=3), 1..=3), seed in any::<u64>()) {
        let blocks: Vec<FilledType> = blocks
            .iter()
            .enumerate()
            .map(|(k, &(m, n))| {
                let mut mu: Vec<usize> = (0..m).map(|i| ((seed >> (8 * k + i)) as usize) % (n + 1)).collect();
                mu.sort_unstable();
                FilledType::new(mu, n).unwrap()
            })
            .collect();
        let pd = product_degree(&BlockDecomposition::from_blocks(blocks).unwrap()).unwrap();
        prop_assert_eq!(&pd.combined, &pd.segre);
    }
}
