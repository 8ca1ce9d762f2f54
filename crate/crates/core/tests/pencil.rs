use poleplace_core::pencil::{
    banded_toeplitz_frame, banded_toeplitz_relations, coefficient_system, exterior_power,
    grass24_quadric, minor_polys, plucker_coords, plucker_of_feedback, FeedbackSubspace,
    MatrixPencil, MonicTarget,
};
use poleplace_core::poly::{DenseMatrix, Rational};
use poleplace_core::sampling::{random_matrix, random_rational, random_vector, rng};
use num_traits::Zero;
use proptest::prelude::*;

fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

fn random_pencil(seed: u64, n: usize, m: usize) -> MatrixPencil {
    let mut r = rng(seed);
    MatrixPencil::new(
        random_matrix(&mut r, n, n),
        random_matrix(&mut r, n, n),
        random_matrix(&mut r, n, m),
        random_matrix(&mut r, n, m),
    )
    .unwrap()
}

#[test]
fn scalar_closed_loop_polynomial() {
    // s + 2 + f with E = B = 1, H = 0
    let p = MatrixPencil::state_feedback(
        DenseMatrix::from_rows(vec![vec![q(2)]]).unwrap(),
        DenseMatrix::from_rows(vec![vec![q(1)]]).unwrap(),
    )
    .unwrap();
    let f = DenseMatrix::from_rows(vec![vec![q(3)]]).unwrap();
    assert_eq!(p.closed_loop_charpoly(&f).unwrap(), vec![q(5), q(1)]);
}

#[test]
fn diagonal_system_degrees() {
    let mut r = rng(3);
    let a = random_matrix(&mut r, 3, 3);
    let p = MatrixPencil::state_feedback(a, DenseMatrix::identity(3)).unwrap();
    let target = MonicTarget::new(random_vector(&mut r, 3)).unwrap();
    let sys = coefficient_system(&p, &FeedbackSubspace::diagonal(3).unwrap(), &target).unwrap();
    assert_eq!(sys.degrees(), vec![3, 2, 1]);
    assert_eq!(sys.bezout_number(), 6);
}

#[test]
fn toeplitz_example_point() {
    let pv = plucker_coords(&banded_toeplitz_frame(&q(1), &q(2), &q(3))).unwrap();
    let rel = banded_toeplitz_relations(&pv);
    assert_eq!(rel.len(), 15);
    assert!(rel.iter().all(|(_, v)| v.is_zero()));
}

#[test]
fn rank_deficient_rows_are_rejected() {
    let w = DenseMatrix::from_rows(vec![vec![q(1), q(2), q(3)], vec![q(2), q(4), q(6)]]).unwrap();
    assert!(plucker_coords(&w).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn determinant_identity(seed in any::<u64>(), n in 1usize..=3, m in 1usize..=3) {
        let p = random_pencil(seed, n, m);
        let f = random_matrix(&mut rng(seed ^ 1), m, n);
        let lhs = minor_polys(&p).unwrap().apply(plucker_of_feedback(&f).unwrap().entries()).unwrap();
        prop_assert_eq!(lhs, p.closed_loop_charpoly(&f).unwrap());
    }

    #[test]
    fn toeplitz_relations_vanish(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (a, b, c) = (random_rational(&mut r), random_rational(&mut r), random_rational(&mut r));
        let pv = plucker_coords(&banded_toeplitz_frame(&a, &b, &c)).unwrap();
        for (name, v) in banded_toeplitz_relations(&pv) {
            prop_assert!(v.is_zero(), "{} = {}", name, v);
        }
    }

    #[test]
    fn grass24_quadric_vanishes(seed in any::<u64>()) {
        let w = random_matrix(&mut rng(seed), 2, 4);
        let pv = plucker_coords(&w).unwrap();
        prop_assert!(grass24_quadric(&pv).unwrap().is_zero());
    }

    #[test]
    fn plucker_is_equivariant(seed in any::<u64>()) {
        // plucker(W G) = plucker(W) * ext^2(G)
        let mut r = rng(seed);
        let w = random_matrix(&mut r, 2, 4);
        let g = random_matrix(&mut r, 4, 4);
        let left = plucker_coords(&w.checked_mul(&g).unwrap()).unwrap();
        let ext = exterior_power(&g, 2).unwrap();
        let row = DenseMatrix::from_rows(vec![plucker_coords(&w).unwrap().entries().to_vec()]).unwrap();
        let right = row.checked_mul(&ext).unwrap();
        prop_assert_eq!(left.entries(), &right.to_rows()[0][..]);
    }

    #[test]
    fn row_operations_scale_coordinates(seed in any::<u64>()) {
        let mut r = rng(seed);
        let w = random_matrix(&mut r, 2, 5);
        let g = random_matrix(&mut r, 2, 2);
        prop_assume!(!g.det().unwrap().is_zero());
        let scaled = plucker_coords(&g.checked_mul(&w).unwrap()).unwrap();
        prop_assert_eq!(scaled, plucker_coords(&w).unwrap().scale(&g.det().unwrap()));
    }
}
