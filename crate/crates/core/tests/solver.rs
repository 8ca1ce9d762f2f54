use num_complex::Complex64;
use poleplace_core::pencil::{coefficient_system, nondegeneracy_probe, ProbeVerdict};
use poleplace_core::problem::{builtin, BUILTIN_PROBLEMS};
use poleplace_core::sampling::trial_seed;
use poleplace_core::solver::{
    count_experiment, place_poles, resultant_oracle_2d, solve_system, Family, SolverConfig,
};
use poleplace_core::Problem;
use proptest::prelude::*;

fn solve_family(family: Family, seed: u64, parallel: bool) -> poleplace_core::solver::SolutionSet {
    let inst = family.instance(seed).unwrap();
    let sys = coefficient_system(&inst.pencil, &inst.subspace, &inst.target).unwrap();
    let cfg = SolverConfig {
        parallel,
        ..SolverConfig::with_seed(seed)
    };
    solve_system(&sys.to_complex(), &cfg).unwrap()
}

#[test]
fn builtin_problems_solve_and_verify() {
    let expected = [("scalar", 1), ("friedland-2", 2), ("paper-example-2.1", 12), ("paper-example-4.2", 12)];
    assert_eq!(expected.len(), BUILTIN_PROBLEMS.len());
    for (name, count) in expected {
        let p = builtin(name).unwrap();
        let placed = place_poles(&p.pencil, &p.subspace, &p.target, &SolverConfig::with_seed(1)).unwrap();
        assert_eq!(placed.solutions.finite_count(), count, "{name}");
        assert!(placed.unverified.is_empty(), "{name}");
        assert!(placed.verified.iter().all(|v| v.error < 1e-8), "{name}");
    }
}

#[test]
fn scalar_feedback_is_closed_form() {
    let p = builtin("scalar").unwrap();
    let placed = place_poles(&p.pencil, &p.subspace, &p.target, &SolverConfig::default()).unwrap();
    let z = placed.verified[0].z[0];
    assert!((z - Complex64::new(3.0, 0.0)).norm() < 1e-12, "{z}");
}

#[test]
fn problem_json_round_trips_through_solver() {
    let inst = Family::GenericSubspace(2).instance(44).unwrap();
    let p = Problem {
        pencil: inst.pencil,
        subspace: inst.subspace,
        target: inst.target,
    };
    let back = Problem::from_json(&p.to_json()).unwrap();
    assert_eq!(back, p);
}

#[test]
fn oracle_agrees_on_two_dimensional_families() {
    for family in [Family::GenericSubspace(2), Family::Diagonal(2), Family::OutputFeedback { m: 1, p: 2 }] {
        for k in 0..6 {
            let seed = trial_seed(91, k);
            let inst = family.instance(seed).unwrap();
            let sys = coefficient_system(&inst.pencil, &inst.subspace, &inst.target).unwrap();
            let oracle = resultant_oracle_2d(&sys, seed).unwrap().count();
            let solved = solve_system(&sys.to_complex(), &SolverConfig::with_seed(seed)).unwrap();
            assert_eq!(oracle, Some(solved.finite_count()), "{family} seed {seed}");
        }
    }
}

#[test]
fn paper_example_families_count_twelve() {
    for family in [Family::PaperExample21, Family::PaperExample42] {
        let t = count_experiment(family, 4, &SolverConfig::with_seed(5));
        assert_eq!(t.modal, Some(12), "{family}: {:?}", t.histogram);
    }
}

#[test]
fn friedland_probe_is_nondegenerate() {
    let p = builtin("friedland-2").unwrap();
    let v = nondegeneracy_probe(&p.pencil, &p.subspace, &SolverConfig::with_seed(2)).unwrap();
    assert!(matches!(v, ProbeVerdict::ProbablyNondegenerate { .. }), "{v:?}");
}

#[test]
fn experiment_is_order_independent() {
    let cfg = SolverConfig::with_seed(8);
    let par = count_experiment(Family::Diagonal(3), 6, &cfg);
    let ser = count_experiment(Family::Diagonal(3), 6, &SolverConfig { parallel: false, ..cfg });
    assert_eq!(par.trials, ser.trials);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn paths_are_accounted(seed in any::<u64>(), n in 2usize..=3) {
        let s = solve_family(Family::Diagonal(n), seed, true);
        prop_assert!(s.accounting_holds());
        let total = s.finite_count() + s.diverged + s.base_locus + s.failed;
        prop_assert_eq!(total as u64, s.meta.bezout);
    }

    #[test]
    fn runs_are_deterministic(seed in any::<u64>()) {
        let a = solve_family(Family::GenericSubspace(2), seed, true);
        let mut b = solve_family(Family::GenericSubspace(2), seed, false);
        b.meta.config.parallel = true;
        prop_assert_eq!(a, b);
    }

    #[test]
    fn real_instances_are_conjugation_closed(seed in any::<u64>()) {
        let s = solve_family(Family::GenericSubspace(2), seed, true);
        prop_assert_eq!(s.real_count() % 2, s.finite_count() % 2);
        for r in &s.roots {
            let conj: Vec<Complex64> = r.z.iter().map(|v| v.conj()).collect();
            let scale = 1.0 + r.z.iter().map(|v| v.norm()).fold(0.0, f64::max);
            let closed = s.roots.iter().any(|w| {
                w.z.iter().zip(&conj).all(|(a, b)| (a - b).norm() <= 1e-6 * scale)
            });
            prop_assert!(closed, "no conjugate for {:?}", r.z);
        }
    }
}
