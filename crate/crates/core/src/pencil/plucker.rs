//! Plücker coordinates of row spaces and the exterior powers that act on them.

use crate::error::{Error, Result};
use crate::poly::matrix::laplace_minors;
use crate::poly::{column_subsets, Coeff, DenseMatrix};

/// Largest column count accepted by [`plucker_coords`].
pub const MAX_PLUCKER_COLS: usize = 20;

/// Maximal minors of an `m x (m+n)` matrix, ordered by lexicographically
/// increasing column subsets.
#[derive(Clone, Debug, PartialEq)]
pub struct PluckerVector<C> {
    m: usize,
    cols: usize,
    entries: Vec<C>,
}

impl<C: Coeff> PluckerVector<C> {
    /// Wraps raw coordinates; rejects the zero vector and wrong lengths.
    pub fn new(m: usize, cols: usize, entries: Vec<C>) -> Result<Self> {
        let expected = column_subsets(cols, m).len();
        if entries.len() != expected {
            return Err(Error::Dimension {
                what: "Plücker coordinates",
                expected,
                found: entries.len(),
            });
        }
        if entries.iter().all(Coeff::is_negligible) {
            return Err(Error::RankDeficient);
        }
        Ok(PluckerVector { m, cols, entries })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// `m + n`.
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[C] {
        &self.entries
    }

    pub fn subsets(&self) -> Vec<Vec<usize>> {
        column_subsets(self.cols, self.m)
    }

    /// Coordinate at a sorted 0-based column subset.
    pub fn get(&self, subset: &[usize]) -> Option<&C> {
        subset_index(self.cols, subset).and_then(|k| self.entries.get(k))
    }

    pub fn scale(&self, c: &C) -> Self {
        PluckerVector {
            m: self.m,
            cols: self.cols,
            entries: self.entries.iter().map(|x| x.clone() * c.clone()).collect(),
        }
    }

    /// True if `self = lambda * other` for some nonzero `lambda`.
    pub fn proportional_to(&self, other: &Self) -> bool {
        if self.m != other.m || self.cols != other.cols {
            return false;
        }
        let Some(k) = other.entries.iter().position(|x| !x.is_negligible()) else {
            return false;
        };
        if self.entries[k].is_negligible() {
            return false;
        }
        let lambda = self.entries[k].clone() / other.entries[k].clone();
        self.entries
            .iter()
            .zip(&other.entries)
            .all(|(a, b)| (a.clone() - lambda.clone() * b.clone()).is_negligible())
    }
}

/// Position of a sorted subset in lexicographic order, or `None` if it is not
/// a strictly increasing subset of `0..cols`.
pub fn subset_index(cols: usize, subset: &[usize]) -> Option<usize> {
    if subset.windows(2).any(|w| w[0] >= w[1]) || subset.last().is_some_and(|&x| x >= cols) {
        return None;
    }
    // count subsets that are lexicographically smaller
    let k = subset.len();
    let mut idx = 0usize;
    let mut prev = 0usize;
    for (pos, &c) in subset.iter().enumerate() {
        for skipped in prev..c {
            idx += binomial(cols - skipped - 1, k - pos - 1);
        }
        prev = c + 1;
    }
    Some(idx)
}

pub(crate) fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k.min(n - k)).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// All maximal minors of a full-row-rank `m x N` matrix.
pub fn plucker_coords<C: Coeff>(w: &DenseMatrix<C>) -> Result<PluckerVector<C>> {
    let (m, cols) = (w.rows(), w.cols());
    if m == 0 || m > cols {
        return Err(Error::Dimension {
            what: "Plücker input rows (1..=cols)",
            expected: cols,
            found: m,
        });
    }
    if cols > MAX_PLUCKER_COLS {
        return Err(Error::Unsupported(format!(
            "Plücker coordinates need at most {MAX_PLUCKER_COLS} columns"
        )));
    }
    let table = laplace_minors(w.as_slice(), m, cols, C::one());
    let entries = column_subsets(cols, m)
        .iter()
        .map(|s| {
            let mask = s.iter().fold(0u32, |acc, &c| acc | (1 << c));
            table.get(&mask).cloned().unwrap_or_else(C::zero)
        })
        .collect();
    PluckerVector::new(m, cols, entries)
}

/// Plücker vector of `rowsp [I_m | F]`.
pub fn plucker_of_feedback<C: Coeff>(f: &DenseMatrix<C>) -> Result<PluckerVector<C>> {
    let w = DenseMatrix::identity(f.rows()).hstack(f)?;
    plucker_coords(&w)
}

/// `m`-th exterior power of a square matrix: entry `(I, J)` is the minor on
/// rows `I` and columns `J`, both in lexicographic subset order. Satisfies
/// `plucker(W G) = plucker(W) * ext(G)` for row vectors.
pub fn exterior_power<C: Coeff>(g: &DenseMatrix<C>, m: usize) -> Result<DenseMatrix<C>> {
    if !g.is_square() {
        return Err(Error::Dimension {
            what: "exterior power input (square)",
            expected: g.rows(),
            found: g.cols(),
        });
    }
    let subsets = column_subsets(g.cols(), m);
    let mut out = DenseMatrix::zeros(subsets.len(), subsets.len());
    for (a, rows) in subsets.iter().enumerate() {
        let sub = DenseMatrix::from_fn(m, g.cols(), |i, j| g[(rows[i], j)].clone());
        let table = laplace_minors(sub.as_slice(), m, g.cols(), C::one());
        for (b, cols) in subsets.iter().enumerate() {
            let mask = cols.iter().fold(0u32, |acc, &c| acc | (1 << c));
            if let Some(v) = table.get(&mask) {
                out[(a, b)] = v.clone();
            }
        }
    }
    Ok(out)
}

/// The `3 x 6` matrix `[I | T]` with `T = [[a, b, 0], [c, a, b], [0, c, a]]`.
pub fn banded_toeplitz_frame<C: Coeff>(a: &C, b: &C, c: &C) -> DenseMatrix<C> {
    let t = DenseMatrix::from_rows(vec![
        vec![a.clone(), b.clone(), C::zero()],
        vec![c.clone(), a.clone(), b.clone()],
        vec![C::zero(), c.clone(), a.clone()],
    ])
    .expect("3x3");
    DenseMatrix::identity(3).hstack(&t).expect("3 rows")
}

/// The defining equations of the closure of the banded Toeplitz subspace in
/// `Grass(3, 6)`, each evaluated at `pv`: six linear relations from the
/// entries, three linear relations among the 2x2 minors and six quadrics from
/// the rank-one condition on the degree-2 monomials. Every residual is zero on
/// the closure.
pub fn banded_toeplitz_relations<C: Coeff>(pv: &PluckerVector<C>) -> Vec<(&'static str, C)> {
    let z = |i: usize, j: usize, k: usize| -> C {
        pv.get(&[i - 1, j - 1, k - 1]).cloned().unwrap_or_else(C::zero)
    };
    let sum = z(2, 4, 6) + z(3, 4, 5);
    vec![
        ("z234 + z135", z(2, 3, 4) + z(1, 3, 5)),
        ("z234 - z126", z(2, 3, 4) - z(1, 2, 6)),
        ("z235 + z136", z(2, 3, 5) + z(1, 3, 6)),
        ("z125 + z134", z(1, 2, 5) + z(1, 3, 4)),
        ("z124", z(1, 2, 4)),
        ("z236", z(2, 3, 6)),
        ("z146 + z245", z(1, 4, 6) + z(2, 4, 5)),
        ("z345 - z156", z(3, 4, 5) - z(1, 5, 6)),
        ("z346 + z256", z(3, 4, 6) + z(2, 5, 6)),
        (
            "z346^2 + z246*z356",
            z(3, 4, 6) * z(3, 4, 6) + z(2, 4, 6) * z(3, 5, 6),
        ),
        (
            "z146^2 + z246*z145",
            z(1, 4, 6) * z(1, 4, 6) + z(2, 4, 6) * z(1, 4, 5),
        ),
        (
            "(z246 + z345)^2 - z356*z145",
            sum.clone() * sum.clone() - z(3, 5, 6) * z(1, 4, 5),
        ),
        (
            "z246*(z246 + z345) - z346*z146",
            z(2, 4, 6) * sum.clone() - z(3, 4, 6) * z(1, 4, 6),
        ),
        (
            "z346*(z246 + z345) + z356*z146",
            z(3, 4, 6) * sum.clone() + z(3, 5, 6) * z(1, 4, 6),
        ),
        (
            "z146*(z246 + z345) + z145*z346",
            z(1, 4, 6) * sum + z(1, 4, 5) * z(3, 4, 6),
        ),
    ]
}

/// The single relation `z12 z34 - z13 z24 + z14 z23` cutting out `Grass(2, 4)`.
pub fn grass24_quadric<C: Coeff>(pv: &PluckerVector<C>) -> Option<C> {
    if pv.m() != 2 || pv.cols() != 4 {
        return None;
    }
    let z = |i: usize, j: usize| pv.get(&[i - 1, j - 1]).cloned().unwrap_or_else(C::zero);
    Some(z(1, 2) * z(3, 4) - z(1, 3) * z(2, 4) + z(1, 4) * z(2, 3))
}
