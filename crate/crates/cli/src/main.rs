//! `poleplace`: degrees, solutions, count experiments and Plücker checks for
//! constrained pole placement.

mod report;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use poleplace_core::pencil::{
    banded_toeplitz_frame, banded_toeplitz_relations, grass24_quadric, nondegeneracy_probe,
    plucker_coords, ProbeVerdict,
};
use poleplace_core::poly::{parse_rational, DenseMatrix, Rational};
use poleplace_core::problem::{builtin, BUILTIN_PROBLEMS};
use poleplace_core::schubert::{
    diagonal_degree, generic_degree, grassmannian_degree, intersection_table, product_degree,
    schubert_degree, syt_count, weighted_table_sum, BlockDecomposition, FilledType, SchubertIndex,
};
use poleplace_core::solver::{count_experiment, place_poles, Family, SolverConfig};
use poleplace_core::Problem;
use serde_json::json;

use report::{fmt_complex, Report};

#[derive(Parser, Debug)]
#[command(name = "poleplace", version, about = "Constrained pole placement")]
struct Cli {
    /// Seed for instances and path tracking.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Trials for `verify`.
    #[arg(long, global = true)]
    trials: Option<usize>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(flatten)]
    solver: SolverArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(clap::Args, Debug)]
struct SolverArgs {
    #[arg(long, global = true)]
    step_max: Option<f64>,
    #[arg(long, global = true)]
    newton_tol: Option<f64>,
    #[arg(long, global = true)]
    max_steps: Option<usize>,
    /// Track paths on one thread; results are identical.
    #[arg(long, global = true)]
    serial: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Exact degree of a subspace closure.
    Degree {
        #[command(subcommand)]
        spec: DegreeSpec,
    },
    /// Find every feedback in the subspace placing the target polynomial.
    Solve {
        /// Problem JSON file or built-in name.
        problem: String,
    },
    /// Count solutions over random instances and compare with the predicted degree.
    Verify {
        /// `generic N`, `diagonal N`, `output-feedback M P`, `paper-example-2.1`, `paper-example-4.2`.
        #[arg(required = true, num_args = 1..)]
        family: Vec<String>,
    },
    /// Plücker coordinates of a full-row-rank matrix.
    Plucker {
        /// Matrix JSON file or inline `[[...], ...]`.
        matrix: Option<String>,
        /// Use the banded Toeplitz frame and check its relations.
        #[arg(long, conflicts_with = "matrix")]
        paper_example: bool,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        a: String,
        #[arg(long, default_value = "2", allow_hyphen_values = true)]
        b: String,
        #[arg(long, default_value = "3", allow_hyphen_values = true)]
        c: String,
    },
    /// Look for a degenerate point of the subspace closure.
    Probe {
        /// Problem JSON file or built-in name.
        problem: String,
    },
}

#[derive(Subcommand, Debug)]
enum DegreeSpec {
    /// Schubert variety of Grass(m, m+n) for the index nu.
    Schubert {
        #[arg(long)]
        n: usize,
        #[arg(required = true, num_args = 1..)]
        nu: Vec<usize>,
    },
    /// Product of filled blocks, each written `N:MU1,MU2,...`.
    Product {
        #[arg(required = true, num_args = 1..)]
        blocks: Vec<String>,
    },
    /// All m x p matrices.
    Grassmannian { m: usize, p: usize },
    /// Diagonal n x n matrices.
    Friedland { n: usize },
    /// A generic n-dimensional subspace of n x n matrices.
    Generic { n: usize },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((report, code)) => match emit(&cli, &report) {
            Ok(()) => ExitCode::from(code),
            Err(e) => fail(&e),
        },
        Err(e) => fail(&e),
    }
}

/// Prints the error chain, skipping causes their parent already quotes.
fn fail(e: &anyhow::Error) -> ExitCode {
    let mut parts: Vec<String> = Vec::new();
    for cause in e.chain() {
        let msg = cause.to_string();
        if !parts.last().is_some_and(|p| p.ends_with(&msg)) {
            parts.push(msg);
        }
    }
    eprintln!("error: {}", parts.join(": "));
    ExitCode::from(1)
}

fn emit(cli: &Cli, report: &Report) -> Result<()> {
    let text = report.render(cli.format)?;
    match &cli.out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn solver_config(cli: &Cli) -> Result<SolverConfig> {
    let mut cfg = SolverConfig::with_seed(cli.seed);
    if let Some(v) = cli.solver.step_max {
        cfg.step_max = v;
    }
    if let Some(v) = cli.solver.newton_tol {
        cfg.newton_tol = v;
    }
    if let Some(v) = cli.solver.max_steps {
        cfg.max_steps = v;
    }
    cfg.parallel = !cli.solver.serial;
    cfg.validate()?;
    Ok(cfg)
}

fn run(cli: &Cli) -> Result<(Report, u8)> {
    let meta = |cfg: Option<&SolverConfig>| {
        json!({"seed": cli.seed, "config": cfg})
    };
    match &cli.command {
        Command::Degree { spec } => Ok((degree(spec, meta(None))?, 0)),
        Command::Solve { problem } => {
            let cfg = solver_config(cli)?;
            let p = load_problem(problem)?;
            Ok((solve(&p, &cfg, meta(Some(&cfg)))?, 0))
        }
        Command::Verify { family } => {
            let cfg = solver_config(cli)?;
            let family: Family = family.join(" ").parse()?;
            verify(family, cli.trials.unwrap_or(20), &cfg, meta(Some(&cfg)))
        }
        Command::Plucker {
            matrix,
            paper_example,
            a,
            b,
            c,
        } => {
            let report = if *paper_example {
                plucker_example(&[a, b, c], meta(None))?
            } else {
                let Some(m) = matrix else {
                    bail!("give a matrix or --paper-example");
                };
                plucker_matrix(&read_matrix(m)?, meta(None))?
            };
            Ok((report, 0))
        }
        Command::Probe { problem } => {
            let cfg = solver_config(cli)?;
            let p = load_problem(problem)?;
            Ok((probe(&p, &cfg, meta(Some(&cfg)))?, 0))
        }
    }
}

fn load_problem(arg: &str) -> Result<Problem> {
    if let Some(p) = builtin(arg) {
        return Ok(p);
    }
    let path = Path::new(arg);
    if !path.exists() {
        bail!(
            "'{arg}' is neither a file nor a built-in problem ({})",
            BUILTIN_PROBLEMS.join(", ")
        );
    }
    let text = fs::read_to_string(path).with_context(|| format!("reading {arg}"))?;
    Problem::from_json(&text).with_context(|| format!("in {arg}"))
}

fn rational(field: &str, v: &serde_json::Value) -> Result<Rational> {
    let text = match v {
        serde_json::Value::Number(n) => n.to_string(),
        serde_json::Value::String(s) => s.trim().to_string(),
        other => bail!("{field}: expected a number or \"p/q\", found {other}"),
    };
    parse_rational(&text).with_context(|| format!("{field}: cannot read '{text}' as a rational"))
}

fn read_matrix(arg: &str) -> Result<DenseMatrix<Rational>> {
    let text = if arg.trim_start().starts_with('[') {
        arg.to_string()
    } else {
        fs::read_to_string(arg).with_context(|| format!("reading {arg}"))?
    };
    let rows: Vec<Vec<serde_json::Value>> =
        serde_json::from_str(&text).context("matrix must be a JSON array of rows")?;
    let rows = rows
        .iter()
        .enumerate()
        .map(|(i, row)| {
            row.iter()
                .enumerate()
                .map(|(j, v)| rational(&format!("[{i}][{j}]"), v))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(DenseMatrix::from_rows(rows)?)
}

fn degree(spec: &DegreeSpec, meta: serde_json::Value) -> Result<Report> {
    let mut r = Report::new("degree", meta);
    match spec {
        DegreeSpec::Schubert { n, nu } => {
            let idx = SchubertIndex::new(nu.clone(), *n)?;
            let hodge = schubert_degree(&idx);
            let lambda = idx.partition();
            let syt = syt_count(&lambda)?;
            r.field("variety", json!("schubert"));
            r.field("nu", json!(nu));
            r.field("n", json!(n));
            r.field("dimension", json!(idx.dimension()));
            r.field("partition", json!(lambda));
            r.field("hodge", json!(hodge.to_string()));
            r.field("tableaux", json!(syt.to_string()));
            r.field("degree", json!(hodge.to_string()));
        }
        DegreeSpec::Product { blocks } => {
            let blocks = blocks.iter().map(|b| parse_block(b)).collect::<Result<Vec<_>>>()?;
            let pd = product_degree(&BlockDecomposition::from_blocks(blocks.clone())?)?;
            r.field("variety", json!("product"));
            r.field(
                "blocks",
                json!(blocks.iter().map(|b| json!({"n": b.n(), "mu": b.mu()})).collect::<Vec<_>>()),
            );
            r.field("block_dims", json!(pd.block_dims));
            r.field("block_degrees", json!(strings(&pd.block_degrees)));
            r.field("combined", json!(pd.combined.to_string()));
            r.field("segre", json!(pd.segre.to_string()));
            r.field("degree", json!(pd.degree.to_string()));
        }
        DegreeSpec::Grassmannian { m, p } => {
            let deg = grassmannian_degree(*m, *p)?;
            let dual = grassmannian_degree(*p, *m)?;
            if deg != dual {
                bail!("duality failed: {deg} vs {dual}");
            }
            let idx = SchubertIndex::new(((*p + 1)..=(*m + *p)).collect(), *p)?;
            r.field("variety", json!("grassmannian"));
            r.field("m", json!(m));
            r.field("p", json!(p));
            r.field("product", json!(deg.to_string()));
            r.field("hodge", json!(schubert_degree(&idx).to_string()));
            r.field("degree", json!(deg.to_string()));
        }
        DegreeSpec::Friedland { n } => {
            let deg = diagonal_degree(*n)?;
            r.field("variety", json!("diagonal"));
            r.field("n", json!(n));
            r.field("product", json!(deg.to_string()));
            r.field("factorial", json!(factorial(*n).to_string()));
            r.field("degree", json!(deg.to_string()));
        }
        DegreeSpec::Generic { n } => {
            let cert = generic_degree(*n)?;
            r.field("variety", json!("generic"));
            r.field("n", json!(n));
            r.field("closed_form", json!(cert.degree.to_string()));
            r.field("alternating_sum", json!(cert.alternating_sum.to_string()));
            if *n >= 2 {
                let table = intersection_table(*n)?;
                r.field("table", json!(strings(&table)));
                r.field("table_sum", json!(weighted_table_sum(&table).to_string()));
            }
            r.field("degree", json!(cert.degree.to_string()));
        }
    }
    Ok(r)
}

fn strings<T: ToString>(xs: &[T]) -> Vec<String> {
    xs.iter().map(T::to_string).collect()
}

fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::from(1u32), |acc, k| acc * k)
}

/// `N:MU1,MU2,...`, e.g. `2:1,2` for a 2 x 2 block of type (1, 2).
fn parse_block(s: &str) -> Result<FilledType> {
    let (n, mu) = s
        .split_once(':')
        .with_context(|| format!("block '{s}' is not of the form N:MU1,MU2,..."))?;
    let n: usize = n.trim().parse().with_context(|| format!("block '{s}': bad N"))?;
    let mu = mu
        .split(',')
        .map(|v| v.trim().parse::<usize>())
        .collect::<std::result::Result<Vec<_>, _>>()
        .with_context(|| format!("block '{s}': bad type"))?;
    Ok(FilledType::new(mu, n)?)
}

fn solve(p: &Problem, cfg: &SolverConfig, meta: serde_json::Value) -> Result<Report> {
    let placement = place_poles(&p.pencil, &p.subspace, &p.target, cfg)?;
    let s = &placement.solutions;
    let mut r = Report::new("solve", meta);
    r.field("n", json!(p.pencil.n()));
    r.field("bezout", json!(s.meta.bezout));
    r.field("finite", json!(s.finite_count()));
    r.field("real", json!(s.real_count()));
    r.field("diverged", json!(s.diverged));
    r.field("base_locus", json!(s.base_locus));
    r.field("failed", json!(s.failed));
    r.field("verified", json!(placement.verified.len()));
    r.field("unverified", json!(placement.unverified.len()));
    r.detail("placement", serde_json::to_value(&placement)?);
    let mut rows = vec![vec![
        "root".to_string(),
        "status".into(),
        "multiplicity".into(),
        "real".into(),
        "error".into(),
        "z".into(),
    ]];
    let all = placement
        .verified
        .iter()
        .map(|v| (v, "verified"))
        .chain(placement.unverified.iter().map(|v| (v, "unverified")));
    for (k, (v, status)) in all.enumerate() {
        let z: Vec<String> = v.z.iter().map(|c| fmt_complex(*c)).collect();
        rows.push(vec![
            k.to_string(),
            status.into(),
            v.multiplicity.to_string(),
            v.real.to_string(),
            format!("{:.3e}", v.error),
            z.join(" "),
        ]);
    }
    r.table(rows);
    Ok(r)
}

fn verify(family: Family, trials: usize, cfg: &SolverConfig, meta: serde_json::Value) -> Result<(Report, u8)> {
    let table = count_experiment(family, trials, cfg);
    let verdict = table.matches();
    let mut r = Report::new("verify", meta);
    r.field("family", json!(family.to_string()));
    r.field("trials", json!(trials));
    r.field(
        "histogram",
        json!(table.histogram.iter().map(|(k, v)| (k.to_string(), json!(*v))).collect::<serde_json::Map<_, _>>()),
    );
    r.field("modal", json!(table.modal));
    r.field("predicted", json!(table.predicted.as_ref().map(BigUint::to_string)));
    let status = match verdict {
        Some(true) => "PASS",
        Some(false) => "FAIL",
        None => "NO PREDICTION",
    };
    r.field("status", json!(status));
    r.detail("trials", serde_json::to_value(&table.trials)?);
    let mut rows = vec![strings(&[
        "trial", "seed", "finite", "real", "diverged", "base_locus", "failed", "bezout", "verified", "error",
    ])];
    for t in &table.trials {
        rows.push(vec![
            t.trial.to_string(),
            t.seed.to_string(),
            t.finite.to_string(),
            t.real.to_string(),
            t.diverged.to_string(),
            t.base_locus.to_string(),
            t.failed.to_string(),
            t.bezout.to_string(),
            t.verified.to_string(),
            t.error.clone().unwrap_or_default(),
        ]);
    }
    r.table(rows);
    Ok((r, if verdict == Some(false) { 2 } else { 0 }))
}

fn plucker_rows(pv: &poleplace_core::pencil::PluckerVector<Rational>) -> Vec<Vec<String>> {
    let mut rows = vec![strings(&["subset", "value"])];
    for (s, v) in pv.subsets().iter().zip(pv.entries()) {
        let label: String = s.iter().map(|c| (c + 1).to_string()).collect::<Vec<_>>().join(",");
        rows.push(vec![format!("z{{{label}}}"), v.to_string()]);
    }
    rows
}

fn plucker_matrix(w: &DenseMatrix<Rational>, meta: serde_json::Value) -> Result<Report> {
    if w.rows() == 0 || w.rank() < w.rows() {
        bail!("matrix is rank deficient: rank {} < {} rows", w.rank(), w.rows());
    }
    let pv = plucker_coords(w)?;
    let mut r = Report::new("plucker", meta);
    r.field("rows", json!(w.rows()));
    r.field("cols", json!(w.cols()));
    r.field("coordinates", json!(strings(pv.entries())));
    if let Some(q) = grass24_quadric(&pv) {
        r.field("quadric", json!(q.to_string()));
        r.field("quadric_holds", json!(num_traits_zero(&q)));
    }
    r.table(plucker_rows(&pv));
    Ok(r)
}

fn num_traits_zero(q: &Rational) -> bool {
    *q == Rational::from_integer(0.into())
}

fn plucker_example(abc: &[&String; 3], meta: serde_json::Value) -> Result<Report> {
    let vals = abc
        .iter()
        .zip(["a", "b", "c"])
        .map(|(s, name)| parse_rational(s).with_context(|| format!("--{name}: cannot read '{s}'")))
        .collect::<Result<Vec<_>>>()?;
    let pv = plucker_coords(&banded_toeplitz_frame(&vals[0], &vals[1], &vals[2]))?;
    let relations = banded_toeplitz_relations(&pv);
    let holds = relations.iter().all(|(_, v)| num_traits_zero(v));
    let mut r = Report::new("plucker", meta);
    r.field("a", json!(vals[0].to_string()));
    r.field("b", json!(vals[1].to_string()));
    r.field("c", json!(vals[2].to_string()));
    r.field("coordinates", json!(strings(pv.entries())));
    r.field(
        "relations",
        json!(relations.iter().map(|(n, v)| (n.to_string(), json!(v.to_string()))).collect::<serde_json::Map<_, _>>()),
    );
    r.field(
        "satisfied",
        json!(format!("{}/{}", relations.iter().filter(|(_, v)| num_traits_zero(v)).count(), relations.len())),
    );
    r.field("all_hold", json!(holds));
    let mut rows = plucker_rows(&pv);
    rows.extend(relations.iter().map(|(n, v)| vec![n.to_string(), v.to_string()]));
    r.table(rows);
    Ok(r)
}

fn probe(p: &Problem, cfg: &SolverConfig, meta: serde_json::Value) -> Result<Report> {
    let verdict = nondegeneracy_probe(&p.pencil, &p.subspace, cfg)?;
    let mut r = Report::new("probe", meta);
    let mut rows = vec![strings(&["key", "value"])];
    match &verdict {
        ProbeVerdict::Degenerate(w) => {
            r.field("verdict", json!("degenerate"));
            r.field("point", json!(w.point.iter().map(|c| fmt_complex(*c)).collect::<Vec<_>>()));
            r.field("residual", json!(w.residual));
            rows.push(strings(&["verdict", "degenerate"]));
        }
        ProbeVerdict::ProbablyNondegenerate {
            roots_checked,
            indeterminate_skipped,
        } => {
            r.field("verdict", json!("probably nondegenerate"));
            r.field("roots_checked", json!(roots_checked));
            r.field("indeterminate_skipped", json!(indeterminate_skipped));
            rows.push(strings(&["verdict", "probably nondegenerate"]));
        }
    }
    r.detail("probe", serde_json::to_value(&verdict)?);
    r.table(rows);
    Ok(r)
}
