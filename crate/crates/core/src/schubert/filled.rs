//! Recognizing coordinate subspaces that are lower-left filled, alone or as
//! blocks of a block-diagonal pattern.

use std::collections::BTreeSet;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::pencil::FeedbackSubspace;
use crate::poly::DenseMatrix;

use super::index::{BlockDecomposition, FilledType};

/// Row and column orders that turn the subspace into the span of
/// `E_{i,j}`, `j <= mu_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FilledWitness {
    pub filled_type: FilledType,
    /// `row_order[i]` is the original row placed at position `i`.
    pub row_order: Vec<usize>,
    /// `col_order[j]` is the original column placed at position `j`.
    pub col_order: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FilledCheck {
    Filled(FilledWitness),
    NotFilled,
}

/// Positions `(i, j)` whose matrix units span the subspace, or `None` if it
/// is not a coordinate subspace.
pub fn coordinate_support(subspace: &FeedbackSubspace) -> Option<BTreeSet<(usize, usize)>> {
    let (m, n) = (subspace.m(), subspace.n());
    let basis = subspace.basis();
    let flat = DenseMatrix::from_fn(basis.len(), m * n, |i, k| basis[i].as_slice()[k].clone());
    let (rref, pivots) = flat.rref();
    let mut support = BTreeSet::new();
    for (r, &c) in pivots.iter().enumerate() {
        let single = (0..m * n).all(|k| k == c || rref[(r, k)].is_zero());
        if !single || !rref[(r, c)].is_one() {
            return None;
        }
        support.insert((c / n, c % n));
    }
    Some(support)
}

/// Decides whether the subspace equals a lower-left filled space up to
/// independent row and column permutations.
///
/// A coordinate subspace qualifies exactly when its row supports are nested;
/// the sorted support sizes are then the type.
pub fn lower_left_filled_check(subspace: &FeedbackSubspace) -> FilledCheck {
    let Some(support) = coordinate_support(subspace) else {
        return FilledCheck::NotFilled;
    };
    let rows: Vec<usize> = (0..subspace.m()).collect();
    let cols: Vec<usize> = (0..subspace.n()).collect();
    match nested_type(&support, &rows, &cols) {
        Some(w) => FilledCheck::Filled(w),
        None => FilledCheck::NotFilled,
    }
}

fn nested_type(
    support: &BTreeSet<(usize, usize)>,
    rows: &[usize],
    cols: &[usize],
) -> Option<FilledWitness> {
    let row_sets: Vec<BTreeSet<usize>> = rows
        .iter()
        .map(|&r| {
            support
                .iter()
                .filter(|&&(i, _)| i == r)
                .map(|&(_, j)| j)
                .collect()
        })
        .collect();
    let mut order: Vec<usize> = (0..rows.len()).collect();
    order.sort_by_key(|&k| (row_sets[k].len(), rows[k]));
    for w in order.windows(2) {
        if !row_sets[w[0]].is_subset(&row_sets[w[1]]) {
            return None;
        }
    }
    // columns in the order they first appear along the chain
    let mut col_order: Vec<usize> = Vec::with_capacity(cols.len());
    for &k in &order {
        for &j in &row_sets[k] {
            if !col_order.contains(&j) {
                col_order.push(j);
            }
        }
    }
    let unused: Vec<usize> = cols.iter().copied().filter(|j| !col_order.contains(j)).collect();
    col_order.extend(unused);
    let mu = order.iter().map(|&k| row_sets[k].len()).collect();
    Some(FilledWitness {
        filled_type: FilledType::new(mu, cols.len()).ok()?,
        row_order: order.iter().map(|&k| rows[k]).collect(),
        col_order,
    })
}

/// Splits a coordinate subspace into the connected components of its
/// row/column incidence graph and checks each is lower-left filled. Empty
/// rows and columns form one extra block of type `(0, ..., 0)`.
pub fn coordinate_blocks(subspace: &FeedbackSubspace) -> Option<BlockDecomposition> {
    let support = coordinate_support(subspace)?;
    let (m, n) = (subspace.m(), subspace.n());
    // union-find over m row nodes followed by n column nodes
    let mut parent: Vec<usize> = (0..m + n).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        let mut c = x;
        while parent[c] != r {
            let next = parent[c];
            parent[c] = r;
            c = next;
        }
        r
    }
    for &(i, j) in &support {
        let (a, b) = (find(&mut parent, i), find(&mut parent, m + j));
        if a != b {
            parent[a] = b;
        }
    }
    let used_rows: BTreeSet<usize> = support.iter().map(|&(i, _)| i).collect();
    let used_cols: BTreeSet<usize> = support.iter().map(|&(_, j)| j).collect();
    let mut components: Vec<(usize, Vec<usize>, Vec<usize>)> = Vec::new();
    for i in used_rows.iter().copied() {
        let root = find(&mut parent, i);
        match components.iter_mut().find(|c| c.0 == root) {
            Some(c) => c.1.push(i),
            None => components.push((root, vec![i], Vec::new())),
        }
    }
    for j in used_cols.iter().copied() {
        let root = find(&mut parent, m + j);
        if let Some(c) = components.iter_mut().find(|c| c.0 == root) {
            c.2.push(j);
        }
    }
    let mut blocks = Vec::new();
    for (_, rows, cols) in &components {
        blocks.push(nested_type(&support, rows, cols)?.filled_type);
    }
    let empty_rows = m - used_rows.len();
    let empty_cols = n - used_cols.len();
    if empty_rows > 0 {
        blocks.push(FilledType::new(vec![0; empty_rows], empty_cols).ok()?);
    } else if empty_cols > 0 {
        // unused columns widen the last block without changing its type
        let last = blocks.pop()?;
        blocks.push(FilledType::new(last.mu().to_vec(), last.n() + empty_cols).ok()?);
    }
    BlockDecomposition::new(blocks, m, n).ok()
}
