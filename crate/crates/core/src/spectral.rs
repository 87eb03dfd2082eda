//! Adjacency matrices of automata and their Perron-Frobenius eigenvalue.
//!
//! The solver runs power iteration on `M + I`. The unit shift gives every
//! irreducible block a positive diagonal, which makes it primitive, so the
//! iteration converges even on periodic matrices such as plain cycles. For a
//! positive iterate `x` the Collatz-Wielandt ratios `((M + I)x)_i / x_i`
//! bracket the spectral radius from both sides; the iteration stops once the
//! bracket is narrower than the requested tolerance.
//!
//! Reducible matrices are split into strongly connected components first.
//! The spectral radius of the whole matrix is the largest radius among the
//! diagonal blocks, and every block is irreducible.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::automata::{graph, Dfa};

pub const DEFAULT_TOLERANCE: f64 = 1e-9;
pub const DEFAULT_MAX_ITERATIONS: u64 = 300_000;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpectralError {
    #[error("matrix order must be positive")]
    ZeroOrder,
    #[error("entry ({row}, {col}) lies outside a matrix of order {order}")]
    OutOfBounds { row: usize, col: usize, order: usize },
    #[error("entry ({row}, {col}) is given more than once")]
    DuplicateEntry { row: usize, col: usize },
    #[error("dense matrix is not square")]
    NotSquare,
    #[error("entropy of the empty language is undefined")]
    EmptyLanguage,
    #[error("entropy is undefined for a zero spectral radius")]
    ZeroRadius,
}

/// Non-negative integer square matrix in coordinate form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseMatrix {
    order: usize,
    // sorted by (row, col), weights >= 1
    entries: Vec<(usize, usize, u64)>,
}

impl SparseMatrix {
    /// Zero weights are dropped; repeated coordinates are an error.
    pub fn new(
        order: usize,
        entries: impl IntoIterator<Item = (usize, usize, u64)>,
    ) -> Result<Self, SpectralError> {
        if order == 0 {
            return Err(SpectralError::ZeroOrder);
        }
        let mut entries: Vec<_> = entries.into_iter().filter(|e| e.2 > 0).collect();
        for &(row, col, _) in &entries {
            if row >= order || col >= order {
                return Err(SpectralError::OutOfBounds { row, col, order });
            }
        }
        entries.sort_unstable();
        if let Some(w) = entries.windows(2).find(|w| (w[0].0, w[0].1) == (w[1].0, w[1].1)) {
            return Err(SpectralError::DuplicateEntry {
                row: w[0].0,
                col: w[0].1,
            });
        }
        Ok(SparseMatrix { order, entries })
    }

    pub fn from_dense(rows: &[Vec<u64>]) -> Result<Self, SpectralError> {
        let order = rows.len();
        if rows.iter().any(|r| r.len() != order) {
            return Err(SpectralError::NotSquare);
        }
        Self::new(
            order,
            rows.iter()
                .enumerate()
                .flat_map(|(i, r)| r.iter().enumerate().map(move |(j, &w)| (i, j, w))),
        )
    }

    pub fn zero(order: usize) -> Self {
        SparseMatrix {
            order: order.max(1),
            entries: Vec::new(),
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn entries(&self) -> &[(usize, usize, u64)] {
        &self.entries
    }

    pub fn get(&self, row: usize, col: usize) -> u64 {
        self.entries
            .binary_search_by_key(&(row, col), |&(r, c, _)| (r, c))
            .map_or(0, |i| self.entries[i].2)
    }

    pub fn to_dense(&self) -> Vec<Vec<u64>> {
        let mut dense = vec![vec![0; self.order]; self.order];
        for &(r, c, w) in &self.entries {
            dense[r][c] = w;
        }
        dense
    }

    /// Relabels index `i` as `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.order, "permutation length must equal the order");
        let mut entries: Vec<_> = self
            .entries
            .iter()
            .map(|&(r, c, w)| (perm[r], perm[c], w))
            .collect();
        entries.sort_unstable();
        SparseMatrix {
            order: self.order,
            entries,
        }
    }
}

/// `g_ij` = number of labels carrying state `i` to state `j`.
pub fn adjacency_matrix(d: &Dfa) -> SparseMatrix {
    let mut counts: BTreeMap<(usize, usize), u64> = BTreeMap::new();
    for (from, _, to) in d.transitions() {
        *counts.entry((from, to)).or_default() += 1;
    }
    SparseMatrix {
        order: d.states(),
        entries: counts.into_iter().map(|((r, c), w)| (r, c, w)).collect(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EigenResult {
    pub value: f64,
    pub iterations: u64,
    pub converged: bool,
    /// Width of the final eigenvalue bracket, relative to the estimate.
    pub residual: f64,
}

/// Spectral radius of a non-negative matrix.
///
/// On non-convergence the best estimate is returned with
/// `converged == false`.
pub fn perron_frobenius(m: &SparseMatrix, tol: f64, max_iter: u64) -> EigenResult {
    let succ = successors(m);
    let comps = graph::components(&succ);
    let mut position = vec![usize::MAX; m.order];

    let mut best = 0.0_f64;
    let mut lower_bound = 0.0_f64;
    let mut iterations = 0;
    let mut converged = true;
    let mut residual = 0.0_f64;
    let mut budget = max_iter;

    for comp in comps {
        if comp.len() == 1 {
            let w = m.get(comp[0], comp[0]) as f64;
            best = best.max(w);
            lower_bound = lower_bound.max(w);
            continue;
        }
        for (i, &q) in comp.iter().enumerate() {
            position[q] = i;
        }
        let block = Block::extract(m, &comp, &position);
        // the largest row sum bounds the radius of this block from above
        if block.max_row_sum() <= lower_bound {
            continue;
        }
        let solve = block.power_iteration(tol, budget);
        budget = budget.saturating_sub(solve.iterations);
        iterations += solve.iterations;
        converged &= solve.converged;
        residual = residual.max(solve.residual);
        if solve.value > best {
            best = solve.value;
        }
        lower_bound = lower_bound.max(solve.lower);
    }

    EigenResult {
        value: best,
        iterations,
        converged,
        residual,
    }
}

fn successors(m: &SparseMatrix) -> Vec<Vec<usize>> {
    let mut succ = vec![Vec::new(); m.order];
    for &(r, c, _) in &m.entries {
        succ[r].push(c);
    }
    succ
}

/// Irreducible diagonal block in compressed-row form.
struct Block {
    row_start: Vec<usize>,
    cols: Vec<usize>,
    weights: Vec<f64>,
}

struct BlockSolve {
    value: f64,
    lower: f64,
    iterations: u64,
    converged: bool,
    residual: f64,
}

impl Block {
    fn extract(m: &SparseMatrix, comp: &[usize], position: &[usize]) -> Block {
        let mut row_start = Vec::with_capacity(comp.len() + 1);
        let mut cols = Vec::new();
        let mut weights = Vec::new();
        for &q in comp {
            row_start.push(cols.len());
            let lo = m.entries.partition_point(|e| e.0 < q);
            let hi = m.entries.partition_point(|e| e.0 <= q);
            for &(_, c, w) in &m.entries[lo..hi] {
                if comp.binary_search(&c).is_ok() {
                    cols.push(position[c]);
                    weights.push(w as f64);
                }
            }
        }
        row_start.push(cols.len());
        Block {
            row_start,
            cols,
            weights,
        }
    }

    fn size(&self) -> usize {
        self.row_start.len() - 1
    }

    fn max_row_sum(&self) -> f64 {
        (0..self.size())
            .map(|i| self.weights[self.row_start[i]..self.row_start[i + 1]].iter().sum::<f64>())
            .fold(0.0, f64::max)
    }

    /// `y = (B + I) x`
    fn shifted_product(&self, x: &[f64], y: &mut [f64]) {
        for (i, yi) in y.iter_mut().enumerate() {
            let (lo, hi) = (self.row_start[i], self.row_start[i + 1]);
            let mut acc = x[i];
            for k in lo..hi {
                acc += self.weights[k] * x[self.cols[k]];
            }
            *yi = acc;
        }
    }

    fn power_iteration(&self, tol: f64, max_iter: u64) -> BlockSolve {
        let n = self.size();
        let mut x = vec![1.0; n];
        let mut y = vec![0.0; n];
        let mut estimate = f64::NAN;
        let mut solve = BlockSolve {
            value: 0.0,
            lower: 0.0,
            iterations: 0,
            converged: false,
            residual: f64::INFINITY,
        };
        while solve.iterations < max_iter {
            self.shifted_product(&x, &mut y);
            solve.iterations += 1;

            let mut lo = f64::INFINITY;
            let mut hi = 0.0_f64;
            let mut bracketed = true;
            for (&xi, &yi) in x.iter().zip(&y) {
                if xi < f64::MIN_POSITIVE * 1e6 {
                    bracketed = false;
                    break;
                }
                let r = yi / xi;
                lo = lo.min(r);
                hi = hi.max(r);
            }
            let norm_ratio = y.iter().sum::<f64>() / x.iter().sum::<f64>();
            let previous = estimate;

            if bracketed {
                estimate = 0.5 * (lo + hi) - 1.0;
                solve.lower = (lo - 1.0).max(0.0);
                solve.residual = (hi - lo) / estimate.max(1.0);
            } else {
                // entries underflowed: fall back to the relative change of
                // the norm ratio, which still converges but is not a bound
                estimate = norm_ratio - 1.0;
                solve.residual = ((estimate - previous) / estimate.max(1.0)).abs();
                solve.lower = 0.0;
            }
            solve.value = estimate;
            if solve.residual <= tol {
                solve.converged = true;
                break;
            }

            let scale = y.iter().copied().fold(0.0, f64::max);
            for (xi, yi) in x.iter_mut().zip(&y) {
                *xi = yi / scale;
            }
        }
        solve
    }
}

/// Base-2 logarithm of the Perron-Frobenius eigenvalue of `d`'s adjacency
/// matrix. Meaningful for ergodic automata; callers short-circuit first.
pub fn entropy(d: &Dfa) -> Result<f64, SpectralError> {
    if d.is_empty_language() {
        return Err(SpectralError::EmptyLanguage);
    }
    let eig = perron_frobenius(&adjacency_matrix(d), DEFAULT_TOLERANCE, DEFAULT_MAX_ITERATIONS);
    if eig.value <= 0.0 {
        return Err(SpectralError::ZeroRadius);
    }
    Ok(eig.value.log2())
}
