//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any
//! failure. Runs under `cargo test` as a plain binary.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};
use num_complex::Complex64;
use poleplace_core::pencil::{
    banded_toeplitz_frame, banded_toeplitz_relations, coefficient_system, minor_polys,
    plucker_coords, plucker_of_feedback, MatrixPencil,
};
use poleplace_core::poly::Rational;
use poleplace_core::sampling::{random_matrix, random_rational, rng, trial_seed};
use poleplace_core::schubert::{
    generic_degree, intersection_table, product_degree, schubert_degree, segre_degree, syt_count,
    weighted_table_sum, BlockDecomposition, FilledType, SchubertIndex,
};
use poleplace_core::solver::{
    count_experiment, place_poles, resultant_oracle_2d, solve_system, CountTable, Family,
    SolverConfig,
};
use rand::Rng;

const SEED: u64 = 20_240_601;

type Outcome = Result<String, String>;

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    check(elapsed < limit, || format!("took {elapsed:.1?}, limit {limit:?}"))
}

fn modal_is(table: &CountTable, expected: usize) -> Result<(), String> {
    check(table.modal == Some(expected), || {
        format!("modal {:?}, expected {expected}; histogram {:?}", table.modal, table.histogram)
    })
}

fn generic_two() -> Outcome {
    let start = Instant::now();
    let family = Family::GenericSubspace(2);
    let cfg = SolverConfig::with_seed(SEED);
    let table = count_experiment(family, 20, &cfg);
    modal_is(&table, 2)?;
    for t in &table.trials {
        let inst = family.instance(t.seed).map_err(|e| e.to_string())?;
        let sys = coefficient_system(&inst.pencil, &inst.subspace, &inst.target)
            .map_err(|e| e.to_string())?;
        let oracle = resultant_oracle_2d(&sys, t.seed).map_err(|e| e.to_string())?;
        check(oracle.count() == Some(t.finite), || {
            format!("trial {}: solver {} vs oracle {:?}", t.trial, t.finite, oracle.count())
        })?;
    }
    within(start.elapsed(), Duration::from_secs(10))?;
    Ok(format!("20/20 runs: 2 roots, oracle agrees ({:.1?})", start.elapsed()))
}

fn generic_three() -> Outcome {
    let start = Instant::now();
    let family = Family::GenericSubspace(3);
    let mut worst = 0.0f64;
    let mut finite = Vec::new();
    for k in 0..10u64 {
        let seed = trial_seed(SEED, k);
        let inst = family.instance(seed).map_err(|e| e.to_string())?;
        let p = place_poles(&inst.pencil, &inst.subspace, &inst.target, &SolverConfig::with_seed(seed))
            .map_err(|e| e.to_string())?;
        let s = &p.solutions;
        check(s.meta.bezout == 27, || format!("trial {k}: Bézout {}", s.meta.bezout))?;
        let tracked = s.paths.len() - s.failed;
        check(s.failed == 0 && tracked == 27, || {
            format!(
                "trial {k}: {} finite + {} diverged + {} base locus, {} failed",
                s.paths.len() - s.diverged - s.base_locus - s.failed,
                s.diverged,
                s.base_locus,
                s.failed
            )
        })?;
        check(p.unverified.is_empty(), || {
            format!("trial {k}: {} feedbacks failed the check", p.unverified.len())
        })?;
        worst = p.verified.iter().map(|v| v.error).fold(worst, f64::max);
        finite.push(s.finite_count());
    }
    let modal = modal(&finite);
    check(modal == 12, || format!("modal {modal}, counts {finite:?}"))?;
    check(worst < 1e-8, || format!("worst coefficient error {worst:e}"))?;
    within(start.elapsed(), Duration::from_secs(120))?;
    Ok(format!(
        "modal 12 of 27 paths, worst error {worst:.1e} ({:.1?})",
        start.elapsed()
    ))
}

fn modal(counts: &[usize]) -> usize {
    let mut best = (0, 0);
    for &c in counts {
        let f = counts.iter().filter(|&&x| x == c).count();
        if f > best.1 || (f == best.1 && c < best.0) {
            best = (c, f);
        }
    }
    best.0
}

fn generic_four() -> Outcome {
    let start = Instant::now();
    let table = count_experiment(Family::GenericSubspace(4), 3, &SolverConfig::with_seed(SEED));
    for t in &table.trials {
        check(t.bezout == 256, || format!("trial {}: Bézout {}", t.trial, t.bezout))?;
    }
    modal_is(&table, 108)?;
    within(start.elapsed(), Duration::from_secs(20 * 60))?;
    Ok(format!("{:?} of 256 paths ({:.1?}, slow suite)", table.histogram, start.elapsed()))
}

fn friedland() -> Outcome {
    let start = Instant::now();
    let mut seen = Vec::new();
    for (n, expected) in [(2, 2), (3, 6), (4, 24)] {
        let table = count_experiment(Family::Diagonal(n), 5, &SolverConfig::with_seed(SEED + n as u64));
        modal_is(&table, expected)?;
        seen.push(format!("n={n}: {expected}"));
    }
    Ok(format!("{} ({:.1?})", seen.join(", "), start.elapsed()))
}

fn output_feedback() -> Outcome {
    let start = Instant::now();
    let predicted = schubert_degree(&SchubertIndex::new(vec![3, 4], 2).map_err(|e| e.to_string())?);
    check(predicted == BigUint::from(2u32), || format!("schubert degree {predicted}"))?;
    let table = count_experiment(Family::OutputFeedback { m: 2, p: 2 }, 5, &SolverConfig::with_seed(SEED));
    modal_is(&table, 2)?;
    Ok(format!("modal 2 = deg Grass(2, 4) ({:.1?})", start.elapsed()))
}

fn identity_certificate() -> Outcome {
    let start = Instant::now();
    for n in 1..=25 {
        let cert = generic_degree(n).map_err(|e| e.to_string())?;
        check(cert.alternating_sum == BigInt::from(cert.degree.clone()), || {
            format!("n={n}: alternating sum {} vs {}", cert.alternating_sum, cert.degree)
        })?;
        if n < 2 {
            continue;
        }
        let table = intersection_table(n).map_err(|e| e.to_string())?;
        let weighted = weighted_table_sum(&table);
        check(weighted == BigInt::from(cert.degree.clone()), || {
            format!("n={n}: table sum {weighted} vs {}", cert.degree)
        })?;
    }
    within(start.elapsed(), Duration::from_secs(1))?;
    Ok(format!("n = 1..25 exact ({:.1?})", start.elapsed()))
}

fn hodge_vs_tableaux() -> Outcome {
    let start = Instant::now();
    let mut checked = 0;
    for m in 1..=10 {
        for n in 1..=10 {
            for idx in SchubertIndex::enumerate(m, n, 10) {
                let syt = syt_count(&idx.partition()).map_err(|e| e.to_string())?;
                let hodge = schubert_degree(&idx);
                check(hodge == syt, || format!("nu = {:?}: Hodge {hodge}, SYT {syt}", idx.nu()))?;
                checked += 1;
            }
        }
    }
    within(start.elapsed(), Duration::from_secs(30))?;
    Ok(format!("{checked} indices agree ({:.1?})", start.elapsed()))
}

fn product_consistency() -> Outcome {
    let start = Instant::now();
    let mut r = rng(SEED);
    let mut trial = 0;
    while trial < 200 {
        let k = r.gen_range(1..=4);
        let blocks: Vec<FilledType> = (0..k)
            .map(|_| {
                let (m, n) = (r.gen_range(1..=3), r.gen_range(1..=3));
                let mut mu: Vec<usize> = (0..m).map(|_| r.gen_range(0..=n)).collect();
                mu.sort_unstable();
                FilledType::new(mu, n).expect("sorted and bounded")
            })
            .collect();
        if blocks.iter().map(FilledType::dimension).sum::<usize>() > 10 {
            continue;
        }
        trial += 1;
        let dec = BlockDecomposition::from_blocks(blocks.clone()).map_err(|e| e.to_string())?;
        let pd = product_degree(&dec).map_err(|e| format!("trial {trial}: {e}"))?;
        // independent composition: tableaux counts per block under Segre
        let dims: Vec<usize> = blocks.iter().map(FilledType::dimension).collect();
        let degs = blocks
            .iter()
            .map(|b| syt_count(&b.schubert_index().partition()))
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| e.to_string())?;
        let oracle = segre_degree(&dims, &degs);
        check(pd.combined == oracle, || {
            format!("trial {trial}: combined {} vs Segre {oracle} for {blocks:?}", pd.combined)
        })?;
    }
    Ok(format!("200 decompositions agree ({:.1?})", start.elapsed()))
}

fn toeplitz_relations() -> Outcome {
    let start = Instant::now();
    let mut r = rng(SEED ^ 9);
    for trial in 0..25 {
        let (a, b, c) = (random_rational(&mut r), random_rational(&mut r), random_rational(&mut r));
        let pv = plucker_coords(&banded_toeplitz_frame(&a, &b, &c)).map_err(|e| e.to_string())?;
        for (name, value) in banded_toeplitz_relations(&pv) {
            check(num_traits::Zero::is_zero(&value), || {
                format!("trial {trial}: {name} = {value} at a={a}, b={b}, c={c}")
            })?;
        }
    }
    Ok(format!("25 points x 15 relations vanish ({:.1?})", start.elapsed()))
}

fn determinant_identity() -> Outcome {
    let start = Instant::now();
    let mut r = rng(SEED ^ 10);
    for trial in 0..50 {
        let (m, n) = (r.gen_range(1..=3), r.gen_range(1..=3));
        let pencil = MatrixPencil::new(
            random_matrix(&mut r, n, n),
            random_matrix(&mut r, n, n),
            random_matrix(&mut r, n, m),
            random_matrix(&mut r, n, m),
        )
        .map_err(|e| e.to_string())?;
        let f = random_matrix(&mut r, m, n);
        let lhs: Vec<Rational> = minor_polys(&pencil)
            .and_then(|ms| ms.apply(plucker_of_feedback(&f)?.entries()))
            .map_err(|e| e.to_string())?;
        let rhs = pencil.closed_loop_charpoly(&f).map_err(|e| e.to_string())?;
        check(lhs == rhs, || format!("trial {trial} (m={m}, n={n}): {lhs:?} vs {rhs:?}"))?;
    }
    Ok(format!("50 instances coefficient-exact ({:.1?})", start.elapsed()))
}

fn conjugate_closed(roots: &[Vec<Complex64>], tol: f64) -> bool {
    roots.iter().all(|z| {
        let conj: Vec<Complex64> = z.iter().map(|v| v.conj()).collect();
        let scale = 1.0 + z.iter().map(|v| v.norm()).fold(0.0, f64::max);
        roots.iter().any(|w| {
            w.iter().zip(&conj).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max) <= tol * scale
        })
    })
}

fn property_suite() -> Outcome {
    let start = Instant::now();
    let mut runs = 0;
    for family in [Family::GenericSubspace(2), Family::GenericSubspace(3), Family::Diagonal(3)] {
        for k in 0..4u64 {
            let seed = trial_seed(SEED ^ 11, k);
            let inst = family.instance(seed).map_err(|e| e.to_string())?;
            let sys = coefficient_system(&inst.pencil, &inst.subspace, &inst.target)
                .map_err(|e| e.to_string())?
                .to_complex();
            let cfg = SolverConfig::with_seed(seed);
            let a = solve_system(&sys, &cfg).map_err(|e| e.to_string())?;
            check(a.accounting_holds() && a.failed == 0, || {
                format!("{family} #{k}: paths do not add up to {}", a.meta.bezout)
            })?;
            let b = solve_system(&sys, &cfg).map_err(|e| e.to_string())?;
            check(a == b, || format!("{family} #{k}: rerun differs"))?;
            let serial = SolverConfig {
                parallel: false,
                ..cfg.clone()
            };
            let mut c = solve_system(&sys, &serial).map_err(|e| e.to_string())?;
            c.meta.config.parallel = true;
            check(a == c, || format!("{family} #{k}: serial run differs"))?;
            let roots: Vec<Vec<Complex64>> = a.roots.iter().map(|r| r.z.clone()).collect();
            check(conjugate_closed(&roots, cfg.cluster_tol), || {
                format!("{family} #{k}: roots not closed under conjugation")
            })?;
            check(a.real_count() % 2 == a.finite_count() % 2, || {
                format!("{family} #{k}: real {} vs finite {}", a.real_count(), a.finite_count())
            })?;
            runs += 1;
        }
    }
    Ok(format!(
        "{runs} runs: accounting, determinism, conjugation ({:.1?})",
        start.elapsed()
    ))
}

fn main() -> ExitCode {
    let criteria: [(&str, &str, fn() -> Outcome); 11] = [
        ("AC1", "generic degree n=2 with resultant oracle", generic_two),
        ("AC2", "generic degree n=3", generic_three),
        ("AC3", "generic degree n=4", generic_four),
        ("AC4", "diagonal feedback counts n!", friedland),
        ("AC5", "output feedback m=p=2", output_feedback),
        ("AC6", "generic degree identity certificate", identity_certificate),
        ("AC7", "Hodge formula vs tableaux", hodge_vs_tableaux),
        ("AC8", "product degree consistency", product_consistency),
        ("AC9", "banded Toeplitz relations", toeplitz_relations),
        ("AC10", "determinant identity", determinant_identity),
        ("AC11", "solver property suite", property_suite),
    ];
    let mut failed = 0;
    for (id, title, run) in criteria {
        match run() {
            Ok(detail) => println!("{id} PASS {title}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("{id} FAIL {title}: {why}");
            }
        }
    }
    if failed == 0 {
        println!("acceptance: all {} criteria passed", criteria.len());
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} of {} criteria failed", criteria.len());
        ExitCode::FAILURE
    }
}
