//! Row reduction and everything built directly on it.
//!
//! Pivoting is deterministic: for each column left to right, the first row (top to
//! bottom, among the rows not yet used) with a nonzero entry is taken. Over the
//! rationals the reduction is fraction-free (integer Bareiss-Jordan), normalized to
//! the canonical reduced row echelon form at the end.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::matrix::{combine, Matrix};
use super::subspace::Subspace;
use crate::error::{Error, Result};
use crate::field::{integer_row, Field, Rational};

/// Plain Gauss-Jordan elimination. Returns pivot columns.
pub fn gauss_jordan<F: Field>(rows: &mut [Vec<F>], ncols: usize) -> Vec<usize> {
    let nrows = rows.len();
    let mut pivots = Vec::new();
    let mut prow = 0;
    for col in 0..ncols {
        if prow >= nrows {
            break;
        }
        let Some(r) = (prow..nrows).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(prow, r);
        let inv = rows[prow][col].inv().expect("nonzero pivot");
        for x in rows[prow].iter_mut() {
            if !x.is_zero() {
                *x = x.clone() * inv.clone();
            }
        }
        let pivot_row = rows[prow].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == prow || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x = x.clone() - factor.clone() * p.clone();
                }
            }
        }
        pivots.push(col);
        prow += 1;
    }
    pivots
}

/// Fraction-free Gauss-Jordan over the integers, then one division by the final pivot.
pub fn bareiss_rref(rows: &mut [Vec<Rational>], ncols: usize) -> Vec<usize> {
    let nrows = rows.len();
    let mut a: Vec<Vec<BigInt>> = rows.iter().map(|r| integer_row(r)).collect();
    let mut prev = BigInt::one();
    let mut pivots = Vec::new();
    let mut prow = 0;
    for col in 0..ncols {
        if prow >= nrows {
            break;
        }
        let Some(r) = (prow..nrows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(prow, r);
        let p = a[prow][col].clone();
        let pivot_row = a[prow].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == prow {
                continue;
            }
            let factor = row[col].clone();
            let scale_only = factor.is_zero();
            for (x, q) in row.iter_mut().zip(&pivot_row) {
                if x.is_zero() && (scale_only || q.is_zero()) {
                    continue;
                }
                let t = if scale_only || q.is_zero() {
                    &p * &*x
                } else {
                    &p * &*x - &factor * q
                };
                debug_assert!((&t % &prev).is_zero(), "inexact Bareiss division");
                *x = t / &prev;
            }
        }
        prev = p;
        pivots.push(col);
        prow += 1;
    }
    // Every pivot entry now equals `prev`; the canonical form is a / prev.
    for (dst, src) in rows.iter_mut().zip(a) {
        for (d, s) in dst.iter_mut().zip(src) {
            *d = if s.is_zero() {
                Rational::zero()
            } else {
                Rational::from_big(s, prev.clone())
            };
        }
    }
    pivots
}

/// Forward-only fraction-free elimination; returns the rank.
pub fn bareiss_rank(rows: &[Vec<Rational>], ncols: usize) -> usize {
    let nrows = rows.len();
    let mut a: Vec<Vec<BigInt>> = rows.iter().map(|r| integer_row(r)).collect();
    let mut prev = BigInt::one();
    let mut prow = 0;
    for col in 0..ncols {
        if prow >= nrows {
            break;
        }
        let Some(r) = (prow..nrows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(prow, r);
        let p = a[prow][col].clone();
        let (head, tail) = a.split_at_mut(prow + 1);
        let pivot_row = &head[prow];
        for row in tail.iter_mut() {
            let factor = row[col].clone();
            let scale_only = factor.is_zero();
            for j in col..ncols {
                let q = &pivot_row[j];
                if row[j].is_zero() && (scale_only || q.is_zero()) {
                    continue;
                }
                let t = if scale_only || q.is_zero() {
                    &p * &row[j]
                } else {
                    &p * &row[j] - &factor * q
                };
                row[j] = t / &prev;
            }
        }
        prev = p;
        prow += 1;
    }
    prow
}

/// Canonical reduced row echelon form and rank.
pub fn rref<F: Field>(m: &Matrix<F>) -> (Matrix<F>, usize) {
    let mut rows = m.to_rows();
    let pivots = F::reduce_rows(&mut rows, m.cols());
    let out = if rows.is_empty() {
        Matrix::zeros(0, m.cols())
    } else {
        Matrix::from_rows(rows)
    };
    (out, pivots.len())
}

pub fn rank<F: Field>(m: &Matrix<F>) -> usize {
    F::rank_of_rows(&m.to_rows(), m.cols())
}

pub fn rank_of_vectors<F: Field>(vectors: &[Vec<F>], len: usize) -> usize {
    F::rank_of_rows(vectors, len)
}

/// Right null space `{x : M x = 0}`.
pub fn kernel<F: Field>(m: &Matrix<F>) -> Subspace<F> {
    kernel_of_rows(&m.to_rows(), m.cols())
}

pub fn kernel_of_rows<F: Field>(rows: &[Vec<F>], ncols: usize) -> Subspace<F> {
    let mut work = rows.to_vec();
    let pivots = F::reduce_rows(&mut work, ncols);
    let mut is_pivot = vec![false; ncols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let basis: Vec<Vec<F>> = (0..ncols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![F::zero(); ncols];
            v[free] = F::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -work[r][free].clone();
            }
            v
        })
        .collect();
    Subspace::span(ncols, basis)
}

/// Kernel basis in free-column order (not re-echelonized): the i-th vector has a 1 at the
/// i-th free column and zeros at the other free columns.
pub fn kernel_basis_free_order<F: Field>(rows: &[Vec<F>], ncols: usize) -> Vec<Vec<F>> {
    let mut work = rows.to_vec();
    let pivots = F::reduce_rows(&mut work, ncols);
    let mut is_pivot = vec![false; ncols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    (0..ncols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![F::zero(); ncols];
            v[free] = F::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -work[r][free].clone();
            }
            v
        })
        .collect()
}

/// Precomputed solver for "express `w` as a combination of fixed vectors".
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanSolver<F> {
    len: usize,
    count: usize,
    /// Reduced rows of the span, each with its pivot column and the combination of
    /// the original vectors that produced it.
    reduced: Vec<(usize, Vec<F>, Vec<F>)>,
}

impl<F: Field> SpanSolver<F> {
    pub fn new(vectors: &[Vec<F>], len: usize) -> Self {
        let count = vectors.len();
        let mut aug: Vec<Vec<F>> = vectors
            .iter()
            .enumerate()
            .map(|(i, v)| {
                assert_eq!(v.len(), len, "span vector length mismatch");
                let mut row = v.clone();
                row.extend((0..count).map(|j| if i == j { F::one() } else { F::zero() }));
                row
            })
            .collect();
        let pivots = F::reduce_rows(&mut aug, len + count);
        let reduced = pivots
            .iter()
            .enumerate()
            .take_while(|(_, &p)| p < len)
            .map(|(r, &p)| {
                let row = &aug[r];
                (p, row[..len].to_vec(), row[len..].to_vec())
            })
            .collect();
        SpanSolver {
            len,
            count,
            reduced,
        }
    }

    pub fn rank(&self) -> usize {
        self.reduced.len()
    }

    /// Coefficients `c` with `sum c_i v_i = w`, or `None` if `w` is outside the span.
    pub fn solve(&self, w: &[F]) -> Option<Vec<F>> {
        assert_eq!(w.len(), self.len, "span target length mismatch");
        let mut residual = w.to_vec();
        let mut coeffs = vec![F::zero(); self.count];
        for (p, row, transform) in &self.reduced {
            let c = residual[*p].clone();
            if c.is_zero() {
                continue;
            }
            for (x, r) in residual.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x = x.clone() - c.clone() * r.clone();
                }
            }
            for (k, t) in coeffs.iter_mut().zip(transform) {
                if !t.is_zero() {
                    *k = k.clone() + c.clone() * t.clone();
                }
            }
        }
        residual.iter().all(Field::is_zero).then_some(coeffs)
    }

    pub fn contains(&self, w: &[F]) -> bool {
        self.solve(w).is_some()
    }
}

/// Incrementally grown echelon basis; answers "is this vector new?" cheaply.
#[derive(Clone, Debug)]
pub struct EchelonBuilder<F> {
    len: usize,
    rows: Vec<(usize, Vec<F>)>,
}

impl<F: Field> EchelonBuilder<F> {
    pub fn new(len: usize) -> Self {
        EchelonBuilder {
            len,
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &[F]) -> Vec<F> {
        let mut w = v.to_vec();
        for (p, row) in &self.rows {
            let c = w[*p].clone();
            if c.is_zero() {
                continue;
            }
            for (x, r) in w.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x = x.clone() - c.clone() * r.clone();
                }
            }
        }
        w
    }

    pub fn contains(&self, v: &[F]) -> bool {
        self.reduce(v).iter().all(Field::is_zero)
    }

    /// Adds `v` if it is independent of what is already there; returns whether it was added.
    pub fn insert(&mut self, v: &[F]) -> bool {
        assert_eq!(v.len(), self.len, "vector length mismatch");
        let mut w = self.reduce(v);
        let Some(p) = w.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = w[p].inv().expect("nonzero");
        for x in w.iter_mut() {
            *x = x.clone() * inv.clone();
        }
        for (_, row) in self.rows.iter_mut() {
            let c = row[p].clone();
            if c.is_zero() {
                continue;
            }
            for (x, r) in row.iter_mut().zip(&w) {
                if !r.is_zero() {
                    *x = x.clone() - c.clone() * r.clone();
                }
            }
        }
        self.rows.push((p, w));
        true
    }
}

/// Coefficients expressing `m` in the span of `targets`, `Ok(None)` if it is not in the span.
pub fn solve_in_span<F: Field>(targets: &[Matrix<F>], m: &Matrix<F>) -> Result<Option<Vec<F>>> {
    if let Some(bad) = targets.iter().find(|t| t.shape() != m.shape()) {
        return Err(Error::ShapeMismatch {
            expected: format!("{}x{}", m.rows(), m.cols()),
            got: format!("{}x{}", bad.rows(), bad.cols()),
        });
    }
    let len = m.rows() * m.cols();
    let vectors: Vec<Vec<F>> = targets.iter().map(|t| t.as_flat().to_vec()).collect();
    Ok(SpanSolver::new(&vectors, len).solve(m.as_flat()))
}

pub fn determinant<F: Field>(m: &Matrix<F>) -> Result<F> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    let mut a = m.to_rows();
    let mut det = F::one();
    for col in 0..n {
        let Some(r) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Ok(F::zero());
        };
        if r != col {
            a.swap(r, col);
            det = -det;
        }
        let p = a[col][col].clone();
        det = det * p.clone();
        let inv = p.inv().expect("nonzero pivot");
        let pivot_row = a[col].clone();
        for row in a.iter_mut().skip(col + 1) {
            let factor = row[col].clone() * inv.clone();
            if factor.is_zero() {
                continue;
            }
            for j in col..n {
                row[j] = row[j].clone() - factor.clone() * pivot_row[j].clone();
            }
        }
    }
    Ok(det)
}

pub fn inverse<F: Field>(m: &Matrix<F>) -> Option<Matrix<F>> {
    if !m.is_square() {
        return None;
    }
    let n = m.rows();
    let mut aug: Vec<Vec<F>> = m
        .to_rows()
        .into_iter()
        .enumerate()
        .map(|(i, mut row)| {
            row.extend((0..n).map(|j| if i == j { F::one() } else { F::zero() }));
            row
        })
        .collect();
    let pivots = F::reduce_rows(&mut aug, 2 * n);
    if pivots.len() < n || pivots[n - 1] >= n {
        return None;
    }
    Some(Matrix::from_rows(
        aug.into_iter().map(|row| row[n..].to_vec()).collect(),
    ))
}

/// Monic characteristic polynomial `det(xI - M)`, coefficients in ascending degree
/// (the last entry is 1). Hessenberg reduction followed by the standard recurrence;
/// division-safe over any field.
pub fn char_poly<F: Field>(m: &Matrix<F>) -> Result<Vec<F>> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    let mut h = m.to_rows();
    for k in 1..n.saturating_sub(1) {
        let Some(i) = (k..n).find(|&i| !h[i][k - 1].is_zero()) else {
            continue;
        };
        if i != k {
            h.swap(i, k);
            for row in h.iter_mut() {
                row.swap(i, k);
            }
        }
        let t = h[k][k - 1].inv().expect("nonzero pivot");
        for i in k + 1..n {
            let u = h[i][k - 1].clone() * t.clone();
            if u.is_zero() {
                continue;
            }
            for j in 0..n {
                let v = h[k][j].clone();
                h[i][j] = h[i][j].clone() - u.clone() * v;
            }
            for row in h.iter_mut() {
                let v = row[i].clone();
                row[k] = row[k].clone() + u.clone() * v;
            }
        }
    }
    // polys[m] is the characteristic polynomial of the leading m x m block.
    let mut polys: Vec<Vec<F>> = vec![vec![F::one()]];
    for mm in 1..=n {
        let prev = &polys[mm - 1];
        let mut p = vec![F::zero(); mm + 1];
        for (d, c) in prev.iter().enumerate() {
            p[d + 1] = p[d + 1].clone() + c.clone();
            p[d] = p[d].clone() - h[mm - 1][mm - 1].clone() * c.clone();
        }
        let mut t = F::one();
        for i in 1..mm {
            t = t * h[mm - i][mm - i - 1].clone();
            let coef = t.clone() * h[mm - i - 1][mm - 1].clone();
            if coef.is_zero() {
                continue;
            }
            for (d, c) in polys[mm - i - 1].iter().enumerate() {
                p[d] = p[d].clone() - coef.clone() * c.clone();
            }
        }
        polys.push(p);
    }
    Ok(polys.pop().expect("nonempty"))
}

/// Evaluates a polynomial (ascending coefficients) at a square matrix.
pub fn poly_eval_matrix<F: Field>(coeffs: &[F], m: &Matrix<F>) -> Matrix<F> {
    let n = m.rows();
    let mut acc = Matrix::zeros(n, n);
    for c in coeffs.iter().rev() {
        acc = acc.mul(m);
        acc.add_scaled(c, &Matrix::identity(n));
    }
    acc
}

/// `sum_i coeffs[i] * mats[i]`
pub fn combine_matrices<F: Field>(
    coeffs: &[F],
    mats: &[Matrix<F>],
    rows: usize,
    cols: usize,
) -> Matrix<F> {
    let flats: Vec<Vec<F>> = mats.iter().map(|m| m.as_flat().to_vec()).collect();
    Matrix::from_flat(rows, cols, combine(coeffs, &flats, rows * cols)).expect("shape")
}
