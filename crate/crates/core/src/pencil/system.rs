//! The open-loop system `E x' + A x + H u' + B u = 0`, feedback subspaces and
//! closed-loop characteristic polynomials.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::{Coeff, DenseMatrix, MultiPoly, PolyMatrix, Rational};

/// The quadruple `(E, A, H, B)`: `E, A` are `n x n`, `H, B` are `n x m`.
#[derive(Clone, Debug, PartialEq)]
pub struct MatrixPencil {
    m: usize,
    n: usize,
    e: DenseMatrix<Rational>,
    a: DenseMatrix<Rational>,
    h: DenseMatrix<Rational>,
    b: DenseMatrix<Rational>,
}

fn check_shape(what: &'static str, mat: &DenseMatrix<Rational>, rows: usize, cols: usize) -> Result<()> {
    if mat.rows() != rows {
        return Err(Error::Dimension {
            what,
            expected: rows,
            found: mat.rows(),
        });
    }
    if mat.cols() != cols {
        return Err(Error::Dimension {
            what,
            expected: cols,
            found: mat.cols(),
        });
    }
    Ok(())
}

impl MatrixPencil {
    /// `n` is read from `E`, `m` from the columns of `B`.
    pub fn new(
        e: DenseMatrix<Rational>,
        a: DenseMatrix<Rational>,
        h: DenseMatrix<Rational>,
        b: DenseMatrix<Rational>,
    ) -> Result<Self> {
        let n = e.rows();
        let m = b.cols();
        if n == 0 || m == 0 {
            return Err(Error::Unsupported("pencil dimensions must be positive".into()));
        }
        check_shape("E", &e, n, n)?;
        check_shape("A", &a, n, n)?;
        check_shape("H", &h, n, m)?;
        check_shape("B", &b, n, m)?;
        Ok(MatrixPencil { m, n, e, a, h, b })
    }

    /// State feedback: `E = I`, `H = 0`.
    pub fn state_feedback(a: DenseMatrix<Rational>, b: DenseMatrix<Rational>) -> Result<Self> {
        let n = a.rows();
        let m = b.cols();
        Self::new(DenseMatrix::identity(n), a, DenseMatrix::zeros(n, m), b)
    }

    /// Matrix extension `det(sI + A + F)`: `E = I`, `H = 0`, `B = I`.
    pub fn matrix_extension(a: DenseMatrix<Rational>) -> Result<Self> {
        let n = a.rows();
        Self::state_feedback(a, DenseMatrix::identity(n))
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn e(&self) -> &DenseMatrix<Rational> {
        &self.e
    }

    pub fn a(&self) -> &DenseMatrix<Rational> {
        &self.a
    }

    pub fn h(&self) -> &DenseMatrix<Rational> {
        &self.h
    }

    pub fn b(&self) -> &DenseMatrix<Rational> {
        &self.b
    }

    /// `s (E + H F) + (A + B F)` with the entries of `F` given as polynomials
    /// in `nvars - 1` variables; `s` is the last variable.
    pub(crate) fn closed_loop_matrix<C: Coeff>(
        &self,
        f: &[MultiPoly<C>],
        nvars: usize,
    ) -> Result<PolyMatrix<C>> {
        let (m, n) = (self.m, self.n);
        if f.len() != m * n {
            return Err(Error::Dimension {
                what: "feedback entries",
                expected: m * n,
                found: f.len(),
            });
        }
        let s = MultiPoly::<C>::var(nvars, nvars - 1);
        let lift = |q: &Rational| MultiPoly::constant(nvars, C::from_rational(q));
        let entry = |i: usize, j: usize| {
            let mut ehf = lift(&self.e[(i, j)]);
            let mut abf = lift(&self.a[(i, j)]);
            for k in 0..m {
                let fkj = &f[k * n + j];
                if !self.h[(i, k)].is_zero() {
                    ehf = &ehf + &fkj.scale(&C::from_rational(&self.h[(i, k)]));
                }
                if !self.b[(i, k)].is_zero() {
                    abf = &abf + &fkj.scale(&C::from_rational(&self.b[(i, k)]));
                }
            }
            &(&s * &ehf) + &abf
        };
        Ok(PolyMatrix::from_fn(n, n, nvars, entry)?)
    }

    /// Coefficients `c_0, ..., c_n` of `det(s(E + HF) + (A + BF))`, not
    /// normalized (`c_n = det(E + HF)` may vanish).
    pub fn closed_loop_charpoly<C: Coeff>(&self, f: &DenseMatrix<C>) -> Result<Vec<C>> {
        if f.rows() != self.m || f.cols() != self.n {
            return Err(Error::Dimension {
                what: "feedback matrix F (m x n)",
                expected: self.m * self.n,
                found: f.rows() * f.cols(),
            });
        }
        let entries: Vec<MultiPoly<C>> = f
            .as_slice()
            .iter()
            .map(|x| MultiPoly::constant(1, x.clone()))
            .collect();
        let det = self.closed_loop_matrix(&entries, 1)?.determinant()?;
        let mut coeffs: Vec<C> = det
            .coeffs_in_var(0)?
            .into_iter()
            .map(|c| c.constant_term())
            .collect();
        coeffs.resize(self.n + 1, C::zero());
        Ok(coeffs)
    }
}

/// A `d`-dimensional linear subspace of `m x n` feedback matrices, stored by
/// an exact rational basis.
#[derive(Clone, Debug, PartialEq)]
pub struct FeedbackSubspace {
    m: usize,
    n: usize,
    basis: Vec<DenseMatrix<Rational>>,
}

impl FeedbackSubspace {
    pub fn new(basis: Vec<DenseMatrix<Rational>>) -> Result<Self> {
        let first = basis.first().ok_or(Error::EmptyBasis)?;
        let (m, n) = (first.rows(), first.cols());
        for l in &basis {
            check_shape("subspace basis matrix", l, m, n)?;
        }
        let d = basis.len();
        if d > m * n {
            return Err(Error::SubspaceTooLarge { d, max: m * n });
        }
        let flat = DenseMatrix::from_fn(d, m * n, |i, k| basis[i].as_slice()[k].clone());
        let rank = flat.rank();
        if rank < d {
            return Err(Error::DependentBasis { rank, d });
        }
        Ok(FeedbackSubspace { m, n, basis })
    }

    /// All of `Mat(m x n)`.
    pub fn full(m: usize, n: usize) -> Result<Self> {
        Self::coordinate(m, n, (0..m).flat_map(|i| (0..n).map(move |j| (i, j))))
    }

    /// Span of the matrix units `E_{i,j}` at the given (0-based) positions.
    pub fn coordinate(
        m: usize,
        n: usize,
        positions: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        let basis = positions
            .into_iter()
            .map(|(i, j)| unit(m, n, i, j))
            .collect();
        Self::new(basis)
    }

    /// Diagonal `n x n` matrices.
    pub fn diagonal(n: usize) -> Result<Self> {
        Self::coordinate(n, n, (0..n).map(|i| (i, i)))
    }

    /// `{ K C : K in Mat(m x p) }` for a `p x n` output matrix `C`.
    pub fn output_feedback(m: usize, c: &DenseMatrix<Rational>) -> Result<Self> {
        let p = c.rows();
        let mut basis = Vec::with_capacity(m * p);
        for a in 0..m {
            for b in 0..p {
                basis.push(unit(m, p, a, b).checked_mul(c)?);
            }
        }
        Self::new(basis)
    }

    /// Builds a subspace from a matrix whose entries are integer combinations
    /// of `d` parameters: `pattern[i][j][l]` is the weight of parameter `l`.
    pub fn from_pattern(pattern: &[Vec<Vec<i64>>], d: usize) -> Result<Self> {
        let m = pattern.len();
        let n = pattern.first().map_or(0, Vec::len);
        let basis = (0..d)
            .map(|l| DenseMatrix::from_fn(m, n, |i, j| crate::poly::int(pattern[i][j][l])))
            .collect();
        Self::new(basis)
    }

    /// The 3x3 subspace `[[a, b, 0], [c, a, b], [0, c, a]]`.
    pub fn banded_toeplitz() -> Self {
        let p = vec![
            vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 0]],
            vec![vec![0, 0, 1], vec![1, 0, 0], vec![0, 1, 0]],
            vec![vec![0, 0, 0], vec![0, 0, 1], vec![1, 0, 0]],
        ];
        Self::from_pattern(&p, 3).expect("independent by construction")
    }

    /// The 3x3 subspace `[[z1, z2, z3], [0, z1, z2], [z3, 0, z1]]` whose
    /// determinant is `z1^3 + z2^2 z3 - z1 z3^2`.
    pub fn cyclic_cubic() -> Self {
        let p = vec![
            vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]],
            vec![vec![0, 0, 0], vec![1, 0, 0], vec![0, 1, 0]],
            vec![vec![0, 0, 1], vec![0, 0, 0], vec![1, 0, 0]],
        ];
        Self::from_pattern(&p, 3).expect("independent by construction")
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[DenseMatrix<Rational>] {
        &self.basis
    }

    /// `F = sum_j z_j L_j`.
    pub fn element<C: Coeff>(&self, z: &[C]) -> Result<DenseMatrix<C>> {
        if z.len() != self.dim() {
            return Err(Error::Dimension {
                what: "subspace coordinates",
                expected: self.dim(),
                found: z.len(),
            });
        }
        let mut f = DenseMatrix::zeros(self.m, self.n);
        for (zj, l) in z.iter().zip(&self.basis) {
            f = f.checked_add(&l.map(|q| C::from_rational(q) * zj.clone()))?;
        }
        Ok(f)
    }

    /// Entries of `sum_j z_j L_j` as linear polynomials in `nvars` variables,
    /// with `z_j` at variable index `j`.
    pub fn symbolic_element<C: Coeff>(&self, nvars: usize) -> Vec<MultiPoly<C>> {
        (0..self.m * self.n)
            .map(|k| {
                let mut p = MultiPoly::zero(nvars);
                for (j, l) in self.basis.iter().enumerate() {
                    let w = &l.as_slice()[k];
                    if !w.is_zero() {
                        p = &p + &MultiPoly::var(nvars, j).scale(&C::from_rational(w));
                    }
                }
                p
            })
            .collect()
    }
}

fn unit(m: usize, n: usize, i: usize, j: usize) -> DenseMatrix<Rational> {
    let mut u = DenseMatrix::zeros(m, n);
    u[(i, j)] = Rational::one();
    u
}

/// `s^n + phi_{n-1} s^{n-1} + ... + phi_0`, stored as `[phi_0, ..., phi_{n-1}]`.
#[derive(Clone, Debug, PartialEq)]
pub struct MonicTarget {
    coeffs: Vec<Rational>,
}

impl MonicTarget {
    pub fn new(coeffs: Vec<Rational>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::Unsupported("target polynomial must have degree >= 1".into()));
        }
        Ok(MonicTarget { coeffs })
    }

    /// The monic polynomial with the given rational roots.
    pub fn from_roots(roots: &[Rational]) -> Result<Self> {
        let mut c = vec![Rational::one()];
        for r in roots {
            let mut next = vec![Rational::zero(); c.len() + 1];
            for (k, ck) in c.iter().enumerate() {
                next[k + 1] += ck;
                next[k] -= ck * r;
            }
            c = next;
        }
        c.pop();
        Self::new(c)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub(crate) fn check_degree(&self, n: usize) -> Result<()> {
        if self.coeffs.len() != n {
            return Err(Error::Dimension {
                what: "target coefficients",
                expected: n,
                found: self.coeffs.len(),
            });
        }
        Ok(())
    }
}

/// A raw closed-loop polynomial sorted into the three cases that matter for
/// monic normalization.
#[derive(Clone, Debug, PartialEq)]
pub enum Normalized<C> {
    /// `c / c_n`, leading 1 dropped: `[phi_0, ..., phi_{n-1}]`.
    Monic(Vec<C>),
    /// `c_n = 0` but some lower coefficient is not.
    DegreeDrop(Vec<C>),
    /// Every coefficient vanishes.
    BaseLocus,
}

pub fn normalize_monic<C: Coeff>(coeffs: &[C]) -> Normalized<C> {
    match coeffs.split_last() {
        None => Normalized::BaseLocus,
        Some((lead, rest)) if !lead.is_negligible() => {
            Normalized::Monic(rest.iter().map(|c| c.clone() / lead.clone()).collect())
        }
        Some(_) if coeffs.iter().all(Coeff::is_negligible) => Normalized::BaseLocus,
        Some(_) => Normalized::DegreeDrop(coeffs.to_vec()),
    }
}
