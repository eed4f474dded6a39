//! Dense exact linear algebra over the rationals.
//!
//! Matrices stay small (graded pieces of desk-scale modules), so a
//! dense row-reduction with exact arithmetic is the right tool.

use num_traits::Zero;

use crate::coeff::Coeff;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QMatrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Coeff>,
}

impl QMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        QMatrix { rows, cols, data: vec![Coeff::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = QMatrix::zero(n, n);
        for i in 0..n {
            m[(i, i)] = crate::coeff::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Coeff>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row);
        }
        QMatrix { rows: r, cols: c, data }
    }

    pub fn row(&self, i: usize) -> &[Coeff] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> QMatrix {
        let mut out = QMatrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].clone();
            }
        }
        out
    }

    pub fn mul(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = QMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if b.is_zero() {
                        continue;
                    }
                    let prod = a.clone() * b.clone();
                    out[(i, j)] = out[(i, j)].clone() + prod;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Coeff]) -> Vec<Coeff> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = Coeff::zero();
                for j in 0..self.cols {
                    if !self[(i, j)].is_zero() && !v[j].is_zero() {
                        acc += self[(i, j)].clone() * v[j].clone();
                    }
                }
                acc
            })
            .collect()
    }

    /// Reduced row echelon form; returns pivot column indices.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&r| !self[(r, col)].is_zero()) else {
                continue;
            };
            self.swap_rows(row, p);
            let inv = {
                let c = &self[(row, col)];
                Coeff::new(c.denom().clone(), c.numer().clone())
            };
            for j in col..self.cols {
                let v = self[(row, j)].clone() * inv.clone();
                self[(row, j)] = v;
            }
            for r in 0..self.rows {
                if r != row && !self[(r, col)].is_zero() {
                    let factor = self[(r, col)].clone();
                    for j in col..self.cols {
                        let delta = factor.clone() * self[(row, j)].clone();
                        self[(r, j)] = self[(r, j)].clone() - delta;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    /// Basis of the right nullspace, one vector per non-pivot column.
    pub fn nullspace(&self) -> Vec<Vec<Coeff>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let mut basis = Vec::new();
        let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
        for free in 0..self.cols {
            if pivot_set.contains(&free) {
                continue;
            }
            let mut v = vec![Coeff::zero(); self.cols];
            v[free] = crate::coeff::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -m[(r, free)].clone();
            }
            basis.push(v);
        }
        basis
    }

    /// One solution of `self * x = b`, if consistent.
    pub fn solve(&self, b: &[Coeff]) -> Option<Vec<Coeff>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = QMatrix::zero(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, self.cols)] = b[i].clone();
        }
        let pivots = aug.rref();
        if pivots.contains(&self.cols) {
            return None; // inconsistent
        }
        let mut x = vec![Coeff::zero(); self.cols];
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = aug[(r, self.cols)].clone();
        }
        Some(x)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl std::ops::Index<(usize, usize)> for QMatrix {
    type Output = Coeff;
    fn index(&self, (i, j): (usize, usize)) -> &Coeff {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for QMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Coeff {
        &mut self.data[i * self.cols + j]
    }
}

/// Incrementally maintained echelon basis for span membership tests.
#[derive(Debug, Clone)]
pub struct SpanBuilder {
    dim: usize,
    rows: Vec<Vec<Coeff>>,
    pivots: Vec<usize>,
}

impl SpanBuilder {
    pub fn new(dim: usize) -> Self {
        SpanBuilder { dim, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &mut [Coeff]) {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !v[p].is_zero() {
                let factor = v[p].clone();
                for j in 0..self.dim {
                    if !row[j].is_zero() {
                        let delta = factor.clone() * row[j].clone();
                        v[j] = v[j].clone() - delta;
                    }
                }
            }
        }
    }

    pub fn contains(&self, v: &[Coeff]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|c| c.is_zero())
    }

    /// Inserts `v` if it enlarges the span; returns whether it did.
    pub fn try_insert(&mut self, v: Vec<Coeff>) -> bool {
        assert_eq!(v.len(), self.dim);
        let mut w = v;
        self.reduce(&mut w);
        let Some(p) = w.iter().position(|c| !c.is_zero()) else {
            return false;
        };
        let inv = {
            let c = &w[p];
            Coeff::new(c.denom().clone(), c.numer().clone())
        };
        for c in w.iter_mut() {
            if !c.is_zero() {
                *c = c.clone() * inv.clone();
            }
        }
        self.rows.push(w);
        self.pivots.push(p);
        true
    }
}

/// Rank of the span of `vectors` (given as rows).
pub fn span_rank(vectors: &[Vec<Coeff>]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    QMatrix::from_rows(vectors.to_vec()).rank()
}

/// Is `v` contained in the row span of `vectors`?
pub fn in_span(vectors: &[Vec<Coeff>], v: &[Coeff]) -> bool {
    if v.iter().all(|c| c.is_zero()) {
        return true;
    }
    if vectors.is_empty() {
        return false;
    }
    let base = span_rank(vectors);
    let mut all = vectors.to_vec();
    all.push(v.to_vec());
    span_rank(&all) == base
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::from_i64;

    fn m(rows: &[&[i64]]) -> QMatrix {
        QMatrix::from_rows(
            rows.iter().map(|r| r.iter().map(|&v| from_i64(v)).collect()).collect(),
        )
    }

    #[test]
    fn rank_and_nullspace() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(a.rank(), 2);
        let ns = a.nullspace();
        assert_eq!(ns.len(), 1);
        for v in &ns {
            assert!(a.mul_vec(v).iter().all(|c| c.is_zero()));
        }
    }

    #[test]
    fn solve_consistent_and_not() {
        let a = m(&[&[1, 1], &[0, 1]]);
        let x = a.solve(&[from_i64(3), from_i64(1)]).unwrap();
        assert_eq!(x, vec![from_i64(2), from_i64(1)]);
        let b = m(&[&[1, 1], &[2, 2]]);
        assert!(b.solve(&[from_i64(0), from_i64(1)]).is_none());
    }

    #[test]
    fn span_membership() {
        let rows =
            vec![vec![from_i64(1), from_i64(0)], vec![from_i64(0), from_i64(1)]];
        assert!(in_span(&rows, &[from_i64(5), from_i64(-2)]));
        let only_x = vec![vec![from_i64(1), from_i64(0)]];
        assert!(!in_span(&only_x, &[from_i64(0), from_i64(1)]));
    }
}
