//! JSON problem files: a pencil, a feedback subspace and a target polynomial.
//!
//! ```json
//! {"m": 1, "n": 1, "E": [[1]], "A": [[2]], "H": [[0]], "B": [[1]],
//!  "subspace": [[[1]]], "target": ["5"]}
//! ```
//!
//! Scalars are integers, decimals or `"p/q"` strings, all read exactly.
//! `target` lists `phi_0, ..., phi_{n-1}` of `s^n + phi_{n-1} s^{n-1} + ... + phi_0`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pencil::{FeedbackSubspace, MatrixPencil, MonicTarget};
use crate::poly::{parse_rational, DenseMatrix, Rational};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
enum Scalar {
    Int(i64),
    Float(f64),
    Text(String),
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawProblem {
    m: usize,
    n: usize,
    #[serde(rename = "E")]
    e: Vec<Vec<Scalar>>,
    #[serde(rename = "A")]
    a: Vec<Vec<Scalar>>,
    #[serde(rename = "H")]
    h: Vec<Vec<Scalar>>,
    #[serde(rename = "B")]
    b: Vec<Vec<Scalar>>,
    subspace: Vec<Vec<Vec<Scalar>>>,
    target: Vec<Scalar>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Problem {
    pub pencil: MatrixPencil,
    pub subspace: FeedbackSubspace,
    pub target: MonicTarget,
}

/// Names of the problems compiled into the library.
pub const BUILTIN_PROBLEMS: [&str; 4] = ["scalar", "friedland-2", "paper-example-2.1", "paper-example-4.2"];

/// A problem shipped with the library, by name.
pub fn builtin(name: &str) -> Option<Problem> {
    let text = match name {
        "scalar" => include_str!("../instances/scalar.json"),
        "friedland-2" => include_str!("../instances/friedland-2.json"),
        "paper-example-2.1" => include_str!("../instances/paper-example-2.1.json"),
        "paper-example-4.2" => include_str!("../instances/paper-example-4.2.json"),
        _ => return None,
    };
    Some(Problem::from_json(text).expect("built-in problems are valid"))
}

fn scalar(field: &str, s: &Scalar) -> Result<Rational> {
    let text = match s {
        Scalar::Int(v) => v.to_string(),
        Scalar::Float(v) if v.is_finite() => v.to_string(),
        Scalar::Float(v) => return Err(Error::problem(field, format!("non-finite value {v}"))),
        Scalar::Text(t) => t.trim().to_string(),
    };
    parse_rational(&text).ok_or_else(|| Error::problem(field, format!("cannot read '{text}' as a rational")))
}

fn matrix(field: &str, rows: &[Vec<Scalar>], r: usize, c: usize) -> Result<DenseMatrix<Rational>> {
    if rows.len() != r {
        return Err(Error::problem(field, format!("expected {r} rows, found {}", rows.len())));
    }
    let mut out = Vec::with_capacity(r);
    for (i, row) in rows.iter().enumerate() {
        if row.len() != c {
            return Err(Error::problem(
                format!("{field}[{i}]"),
                format!("expected {c} entries, found {}", row.len()),
            ));
        }
        out.push(
            row.iter()
                .enumerate()
                .map(|(j, s)| scalar(&format!("{field}[{i}][{j}]"), s))
                .collect::<Result<Vec<_>>>()?,
        );
    }
    Ok(DenseMatrix::from_rows(out)?)
}

fn to_scalar(q: &Rational) -> Scalar {
    if q.is_integer() {
        if let Ok(v) = i64::try_from(q.numer()) {
            return Scalar::Int(v);
        }
    }
    Scalar::Text(q.to_string())
}

fn to_rows(m: &DenseMatrix<Rational>) -> Vec<Vec<Scalar>> {
    m.to_rows()
        .iter()
        .map(|r| r.iter().map(to_scalar).collect())
        .collect()
}

impl Problem {
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: RawProblem = serde_json::from_str(text)?;
        let (m, n) = (raw.m, raw.n);
        if m == 0 || n == 0 {
            return Err(Error::problem("m/n", "dimensions must be positive"));
        }
        let pencil = MatrixPencil::new(
            matrix("E", &raw.e, n, n)?,
            matrix("A", &raw.a, n, n)?,
            matrix("H", &raw.h, n, m)?,
            matrix("B", &raw.b, n, m)?,
        )?;
        let basis = raw
            .subspace
            .iter()
            .enumerate()
            .map(|(l, rows)| matrix(&format!("subspace[{l}]"), rows, m, n))
            .collect::<Result<Vec<_>>>()?;
        let subspace = FeedbackSubspace::new(basis).map_err(|e| Error::problem("subspace", e.to_string()))?;
        if raw.target.len() != n {
            return Err(Error::problem(
                "target",
                format!("expected {n} coefficients phi_0..phi_(n-1), found {}", raw.target.len()),
            ));
        }
        let target = MonicTarget::new(
            raw.target
                .iter()
                .enumerate()
                .map(|(k, s)| scalar(&format!("target[{k}]"), s))
                .collect::<Result<Vec<_>>>()?,
        )?;
        Ok(Problem {
            pencil,
            subspace,
            target,
        })
    }

    pub fn to_json(&self) -> String {
        let p = &self.pencil;
        let raw = RawProblem {
            m: p.m(),
            n: p.n(),
            e: to_rows(p.e()),
            a: to_rows(p.a()),
            h: to_rows(p.h()),
            b: to_rows(p.b()),
            subspace: self.subspace.basis().iter().map(to_rows).collect(),
            target: self.target.coeffs().iter().map(to_scalar).collect(),
        };
        serde_json::to_string_pretty(&raw).expect("plain data serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{int, rat};

    const SCALAR: &str = r#"{"m":1,"n":1,"E":[[1]],"A":[[2]],"H":[[0]],"B":[[1]],
        "subspace":[[[1]]],"target":["5"]}"#;

    #[test]
    fn reads_scalar_problem() {
        let p = Problem::from_json(SCALAR).unwrap();
        assert_eq!(p.pencil.a()[(0, 0)], int(2));
        assert_eq!(p.target.coeffs(), &[int(5)]);
    }

    #[test]
    fn reads_mixed_scalars_exactly() {
        let text = SCALAR.replace(r#"[[2]]"#, r#"[["-3/6"]]"#).replace(r#"["5"]"#, "[0.1]");
        let p = Problem::from_json(&text).unwrap();
        assert_eq!(p.pencil.a()[(0, 0)], rat(-1, 2));
        assert_eq!(p.target.coeffs(), &[rat(1, 10)]);
    }

    #[test]
    fn field_errors_name_the_field() {
        let bad = SCALAR.replace(r#""A":[[2]]"#, r#""A":[[2, 3]]"#);
        let err = Problem::from_json(&bad).unwrap_err().to_string();
        assert!(err.contains("A[0]"), "{err}");
        let bad = SCALAR.replace(r#"["5"]"#, r#"["x"]"#);
        let err = Problem::from_json(&bad).unwrap_err().to_string();
        assert!(err.contains("target[0]"), "{err}");
        let bad = SCALAR.replace(r#"["5"]"#, r#"["1", "2"]"#);
        assert!(Problem::from_json(&bad).unwrap_err().to_string().contains("target"));
        assert!(Problem::from_json("{").is_err());
    }

    #[test]
    fn json_round_trip() {
        for name in BUILTIN_PROBLEMS {
            let p = builtin(name).unwrap();
            assert_eq!(Problem::from_json(&p.to_json()).unwrap(), p, "{name}");
        }
        assert!(builtin("nope").is_none());
    }
}
