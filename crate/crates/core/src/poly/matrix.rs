//! Dense scalar matrices, polynomial matrices, and Laplace minor tables.

use std::collections::HashMap;
use std::ops::{Index, IndexMut};

use super::multipoly::MultiPoly;
use super::scalar::Coeff;
use super::PolyError;

/// Largest side accepted by the memoized Laplace expansion.
pub const MAX_LAPLACE_SIDE: usize = 10;

/// Minimal ring interface shared by scalars and polynomials so one Laplace
/// routine serves both.
pub trait RingElem: Clone {
    fn r_add(&self, other: &Self) -> Self;
    fn r_mul(&self, other: &Self) -> Self;
    fn r_neg(&self) -> Self;
    fn r_is_zero(&self) -> bool;
}

macro_rules! ring_for_coeff {
    ($t:ty) => {
        impl RingElem for $t {
            fn r_add(&self, other: &Self) -> Self {
                self.clone() + other.clone()
            }
            fn r_mul(&self, other: &Self) -> Self {
                self.clone() * other.clone()
            }
            fn r_neg(&self) -> Self {
                -self.clone()
            }
            fn r_is_zero(&self) -> bool {
                Coeff::is_negligible(self)
            }
        }
    };
}

ring_for_coeff!(super::scalar::Rational);
ring_for_coeff!(num_complex::Complex64);
ring_for_coeff!(super::scalar::ExactComplex);

impl<C: Coeff> RingElem for MultiPoly<C> {
    fn r_add(&self, other: &Self) -> Self {
        self + other
    }
    fn r_mul(&self, other: &Self) -> Self {
        self * other
    }
    fn r_neg(&self) -> Self {
        -self
    }
    fn r_is_zero(&self) -> bool {
        self.is_zero()
    }
}

/// Every maximal minor of a `rows x cols` matrix (`rows <= cols`), keyed by the
/// bitmask of the chosen columns.
///
/// Expands along the last row, memoizing minors of the leading rows over all
/// column subsets of the current size.
pub fn laplace_minors<R: RingElem>(
    entries: &[R],
    rows: usize,
    cols: usize,
    one: R,
) -> HashMap<u32, R> {
    assert!(rows <= cols && cols <= 32);
    assert_eq!(entries.len(), rows * cols);
    let mut layer: HashMap<u32, R> = HashMap::from([(0u32, one)]);
    for r in 0..rows {
        let mut next: HashMap<u32, R> = HashMap::new();
        for (&mask, minor) in &layer {
            if minor.r_is_zero() {
                continue;
            }
            for c in 0..cols {
                if mask & (1 << c) != 0 {
                    continue;
                }
                let entry = &entries[r * cols + c];
                if entry.r_is_zero() {
                    continue;
                }
                // row r sits last; column c moves past the chosen columns above it
                let above = (mask >> c).count_ones();
                let mut term = minor.r_mul(entry);
                if above % 2 == 1 {
                    term = term.r_neg();
                }
                let key = mask | (1 << c);
                match next.get_mut(&key) {
                    Some(acc) => *acc = acc.r_add(&term),
                    None => {
                        next.insert(key, term);
                    }
                }
            }
        }
        layer = next;
    }
    layer
}

/// Row-major dense matrix over a coefficient field.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseMatrix<C> {
    rows: usize,
    cols: usize,
    data: Vec<C>,
}

impl<C: Coeff> DenseMatrix<C> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        DenseMatrix {
            rows,
            cols,
            data: vec![C::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = C::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<C>>) -> Result<Self, PolyError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|row| row.len() != c) {
            return Err(PolyError::DimensionMismatch {
                expected: c,
                found: bad.len(),
            });
        }
        Ok(DenseMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        DenseMatrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn as_slice(&self) -> &[C] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[C] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<C>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn map<D: Coeff>(&self, f: impl FnMut(&C) -> D) -> DenseMatrix<D> {
        DenseMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn scale(&self, c: &C) -> Self {
        self.map(|x| x.clone() * c.clone())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, PolyError> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(PolyError::DimensionMismatch {
                expected: self.rows * self.cols,
                found: other.rows * other.cols,
            });
        }
        Ok(DenseMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, PolyError> {
        if self.cols != other.rows {
            return Err(PolyError::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        Ok(Self::from_fn(self.rows, other.cols, |i, j| {
            (0..self.cols).fold(C::zero(), |acc, k| {
                acc + self[(i, k)].clone() * other[(k, j)].clone()
            })
        }))
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &Self) -> Result<Self, PolyError> {
        if self.rows != other.rows {
            return Err(PolyError::DimensionMismatch {
                expected: self.rows,
                found: other.rows,
            });
        }
        Ok(Self::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                other[(i, j - self.cols)].clone()
            }
        }))
    }

    /// Column sub-matrix.
    pub fn select_cols(&self, cols: &[usize]) -> Self {
        Self::from_fn(self.rows, cols.len(), |i, j| self[(i, cols[j])].clone())
    }

    /// Row echelon reduction with partial pivoting by magnitude (exact for
    /// rationals). Returns the reduced matrix, pivot columns, and the number
    /// of row swaps.
    fn echelon(&self) -> (Self, Vec<usize>, usize) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut swaps = 0;
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let best = (r..m.rows)
                .filter(|&i| !m[(i, c)].is_negligible())
                .max_by(|&a, &b| {
                    m[(a, c)]
                        .magnitude()
                        .partial_cmp(&m[(b, c)].magnitude())
                        .unwrap_or(std::cmp::Ordering::Equal)
                });
            let Some(p) = best else { continue };
            if p != r {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, r * m.cols + j);
                }
                swaps += 1;
            }
            let piv = m[(r, c)].clone();
            for i in r + 1..m.rows {
                if m[(i, c)].is_negligible() {
                    continue;
                }
                let f = m[(i, c)].clone() / piv.clone();
                for j in c..m.cols {
                    let v = m[(i, j)].clone() - f.clone() * m[(r, j)].clone();
                    m[(i, j)] = v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots, swaps)
    }

    pub fn rank(&self) -> usize {
        self.echelon().1.len()
    }

    /// Reduced row echelon form (pivots 1, zero above and below) truncated to
    /// the nonzero rows, with the pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let (mut m, pivots, _) = self.echelon();
        for (r, &c) in pivots.iter().enumerate().rev() {
            let piv = m[(r, c)].clone();
            for j in c..m.cols {
                let v = m[(r, j)].clone() / piv.clone();
                m[(r, j)] = v;
            }
            for i in 0..r {
                let f = m[(i, c)].clone();
                if f.is_negligible() {
                    continue;
                }
                for j in c..m.cols {
                    let v = m[(i, j)].clone() - f.clone() * m[(r, j)].clone();
                    m[(i, j)] = v;
                }
            }
        }
        let rows = pivots.len();
        let top = Self::from_fn(rows, m.cols, |i, j| m[(i, j)].clone());
        (top, pivots)
    }

    /// Gaussian-elimination determinant.
    pub fn det(&self) -> Result<C, PolyError> {
        if !self.is_square() {
            return Err(PolyError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let (m, pivots, swaps) = self.echelon();
        if pivots.len() < self.rows || pivots.iter().enumerate().any(|(i, &c)| i != c) {
            return Ok(C::zero());
        }
        let mut d = C::one();
        for i in 0..self.rows {
            d = d * m[(i, i)].clone();
        }
        Ok(if swaps % 2 == 1 { -d } else { d })
    }

    /// Inverse by Gauss-Jordan; `None` when singular.
    pub fn inverse(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let aug = self.hstack(&Self::identity(n)).ok()?;
        let (mut m, pivots, _) = aug.echelon();
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        for r in (0..n).rev() {
            let piv = m[(r, r)].clone();
            for j in 0..2 * n {
                let v = m[(r, j)].clone() / piv.clone();
                m[(r, j)] = v;
            }
            for i in 0..r {
                let f = m[(i, r)].clone();
                if f.is_negligible() {
                    continue;
                }
                for j in 0..2 * n {
                    let v = m[(i, j)].clone() - f.clone() * m[(r, j)].clone();
                    m[(i, j)] = v;
                }
            }
        }
        Some(Self::from_fn(n, n, |i, j| m[(i, j + n)].clone()))
    }
}

impl<C> Index<(usize, usize)> for DenseMatrix<C> {
    type Output = C;
    fn index(&self, (i, j): (usize, usize)) -> &C {
        &self.data[i * self.cols + j]
    }
}

impl<C> IndexMut<(usize, usize)> for DenseMatrix<C> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C {
        &mut self.data[i * self.cols + j]
    }
}

/// Row-major matrix of polynomials sharing one variable count.
#[derive(Clone, PartialEq)]
pub struct PolyMatrix<C> {
    rows: usize,
    cols: usize,
    nvars: usize,
    entries: Vec<MultiPoly<C>>,
}

impl<C: Coeff> PolyMatrix<C> {
    pub fn new(rows: usize, cols: usize, entries: Vec<MultiPoly<C>>) -> Result<Self, PolyError> {
        if entries.len() != rows * cols {
            return Err(PolyError::DimensionMismatch {
                expected: rows * cols,
                found: entries.len(),
            });
        }
        let nvars = entries.first().map_or(0, MultiPoly::nvars);
        if let Some(bad) = entries.iter().find(|p| p.nvars() != nvars) {
            return Err(PolyError::DimensionMismatch {
                expected: nvars,
                found: bad.nvars(),
            });
        }
        Ok(PolyMatrix {
            rows,
            cols,
            nvars,
            entries,
        })
    }

    pub fn from_fn(
        rows: usize,
        cols: usize,
        nvars: usize,
        mut f: impl FnMut(usize, usize) -> MultiPoly<C>,
    ) -> Result<Self, PolyError> {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        let m = Self::new(rows, cols, entries)?;
        if rows * cols > 0 && m.nvars != nvars {
            return Err(PolyError::DimensionMismatch {
                expected: nvars,
                found: m.nvars,
            });
        }
        Ok(PolyMatrix { nvars, ..m })
    }

    pub fn identity(n: usize, nvars: usize) -> Self {
        Self::from_fn(n, n, nvars, |i, j| {
            if i == j {
                MultiPoly::one(nvars)
            } else {
                MultiPoly::zero(nvars)
            }
        })
        .expect("consistent by construction")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn get(&self, i: usize, j: usize) -> &MultiPoly<C> {
        &self.entries[i * self.cols + j]
    }

    /// Exact determinant by memoized Laplace expansion (fraction free).
    pub fn determinant(&self) -> Result<MultiPoly<C>, PolyError> {
        if self.rows != self.cols {
            return Err(PolyError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        if self.rows > MAX_LAPLACE_SIDE {
            return Err(PolyError::TooLarge {
                side: self.rows,
                max: MAX_LAPLACE_SIDE,
            });
        }
        if self.rows == 0 {
            return Ok(MultiPoly::one(self.nvars));
        }
        let full = (1u32 << self.cols) - 1;
        let minors = laplace_minors(&self.entries, self.rows, self.cols, MultiPoly::one(self.nvars));
        Ok(minors
            .get(&full)
            .cloned()
            .unwrap_or_else(|| MultiPoly::zero(self.nvars)))
    }

    /// All maximal minors (`rows <= cols`) keyed by sorted column lists.
    pub fn maximal_minors(&self) -> Result<Vec<(Vec<usize>, MultiPoly<C>)>, PolyError> {
        if self.rows > self.cols || self.cols > 2 * MAX_LAPLACE_SIDE {
            return Err(PolyError::TooLarge {
                side: self.cols,
                max: 2 * MAX_LAPLACE_SIDE,
            });
        }
        let table = laplace_minors(&self.entries, self.rows, self.cols, MultiPoly::one(self.nvars));
        Ok(column_subsets(self.cols, self.rows)
            .into_iter()
            .map(|cols| {
                let mask = cols.iter().fold(0u32, |m, &c| m | (1 << c));
                let minor = table
                    .get(&mask)
                    .cloned()
                    .unwrap_or_else(|| MultiPoly::zero(self.nvars));
                (cols, minor)
            })
            .collect())
    }

    pub fn eval(&self, point: &[C]) -> Result<DenseMatrix<C>, PolyError> {
        let vals = self
            .entries
            .iter()
            .map(|p| p.eval(point))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(DenseMatrix {
            rows: self.rows,
            cols: self.cols,
            data: vals,
        })
    }
}

impl<C: Coeff> std::fmt::Debug for PolyMatrix<C> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("PolyMatrix")
            .field("rows", &self.rows)
            .field("cols", &self.cols)
            .field("entries", &self.entries)
            .finish()
    }
}

/// All `k`-element subsets of `0..n` in lexicographic order.
pub fn column_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(0, n, k, &mut Vec::with_capacity(k), &mut out);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::scalar::{int, Rational};
    use proptest::prelude::*;

    type P = MultiPoly<Rational>;

    fn z(n: usize, i: usize) -> P {
        P::var(n, i)
    }

    #[test]
    fn toeplitz_like_determinant() {
        let (z1, z2, z3, o) = (z(3, 0), z(3, 1), z(3, 2), P::zero(3));
        let m = PolyMatrix::new(
            3,
            3,
            vec![
                z1.clone(), z2.clone(), z3.clone(),
                o.clone(), z1.clone(), z2.clone(),
                z3.clone(), o, z1.clone(),
            ],
        )
        .unwrap();
        let expected = &(&z1.pow(3) + &(&z2.pow(2) * &z3)) - &(&z1 * &z3.pow(2));
        assert_eq!(m.determinant().unwrap(), expected);
    }

    #[test]
    fn identity_determinant() {
        for n in 0..=10 {
            assert_eq!(PolyMatrix::<Rational>::identity(n, 2).determinant().unwrap(), P::one(2));
        }
        assert!(matches!(
            PolyMatrix::<Rational>::identity(11, 1).determinant(),
            Err(PolyError::TooLarge { .. })
        ));
    }

    #[test]
    fn symmetric_two_by_two() {
        let (a, b) = (z(2, 0), z(2, 1));
        let m = PolyMatrix::new(2, 2, vec![a.clone(), b.clone(), b.clone(), a.clone()]).unwrap();
        assert_eq!(m.determinant().unwrap(), &a.pow(2) - &b.pow(2));
    }

    #[test]
    fn non_square_rejected() {
        let m = PolyMatrix::new(1, 2, vec![P::one(1), P::one(1)]).unwrap();
        assert!(matches!(m.determinant(), Err(PolyError::NotSquare { .. })));
    }

    #[test]
    fn subsets_lexicographic() {
        assert_eq!(
            column_subsets(4, 2),
            vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]
        );
        assert_eq!(column_subsets(3, 0), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn scalar_inverse_and_rank() {
        let m = DenseMatrix::from_rows(vec![vec![int(2), int(1)], vec![int(4), int(3)]]).unwrap();
        let inv = m.inverse().unwrap();
        assert_eq!(m.checked_mul(&inv).unwrap(), DenseMatrix::identity(2));
        let s = DenseMatrix::from_rows(vec![vec![int(1), int(2)], vec![int(2), int(4)]]).unwrap();
        assert_eq!(s.rank(), 1);
        assert!(s.inverse().is_none());
        assert_eq!(s.det().unwrap(), int(0));
    }

    #[test]
    fn reduced_echelon_form() {
        let m = DenseMatrix::from_rows(vec![
            vec![int(0), int(2), int(4), int(2)],
            vec![int(1), int(1), int(1), int(0)],
            vec![int(1), int(2), int(3), int(1)],
        ])
        .unwrap();
        let (r, pivots) = m.rref();
        assert_eq!(pivots, vec![0, 1]);
        assert_eq!(
            r,
            DenseMatrix::from_rows(vec![
                vec![int(1), int(0), int(-1), int(-1)],
                vec![int(0), int(1), int(2), int(1)],
            ])
            .unwrap()
        );
    }

    fn arb_int_matrix(n: usize) -> impl Strategy<Value = Vec<i64>> {
        prop::collection::vec(-9i64..10, n * n)
    }

    proptest! {
        // A polynomial matrix evaluated at a rational point has the same
        // determinant as the symbolic determinant evaluated there.
        #[test]
        fn laplace_matches_elimination(
            n in 2usize..=6,
            seed in prop::collection::vec(-5i64..6, 36 * 3),
            pt in prop::collection::vec((-7i64..8, 1i64..5), 2),
        ) {
            let nv = 2;
            let entries: Vec<P> = (0..n * n)
                .map(|k| {
                    let (a, b, c) = (seed[3 * k], seed[3 * k + 1], seed[3 * k + 2]);
                    &(&z(nv, 0).scale(&int(a)) + &z(nv, 1).scale(&int(b))) + &P::constant(nv, int(c))
                })
                .collect();
            let m = PolyMatrix::new(n, n, entries).unwrap();
            let point: Vec<Rational> = pt.iter().map(|&(a, b)| Rational::new(a.into(), b.into())).collect();
            let symbolic = m.determinant().unwrap().eval(&point).unwrap();
            let numeric = m.eval(&point).unwrap().det().unwrap();
            prop_assert_eq!(symbolic, numeric);
        }

        #[test]
        fn complex_det_matches_exact(n in 2usize..=6, vals in arb_int_matrix(6)) {
            let exact = DenseMatrix::from_fn(n, n, |i, j| int(vals[i * 6 + j]));
            let approx = exact.map(|q| <num_complex::Complex64 as Coeff>::from_rational(q));
            let d_exact = exact.det().unwrap();
            let d_approx = approx.det().unwrap();
            let reference = d_exact.magnitude();
            let scale = reference.max(1.0);
            prop_assert!((d_approx - d_exact.to_complex()).norm() <= 1e-10 * scale);
        }
    }
}
