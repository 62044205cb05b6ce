//! Linear algebra over the field with two elements.
//!
//! Rows are `Vec<u8>` with entries 0/1. Subspaces are carried around as
//! reduced row-echelon bases, which makes equality, membership, sum and
//! intersection cheap. Dimensions here are tiny (at most 22), so no bit
//! packing.

use crate::linalg::{Int, IntMatrix};
use num::{Integer, Zero};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct F2Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<u8>>,
}

impl F2Matrix {
    pub fn new(rows: Vec<Vec<u8>>, cols: usize) -> Self {
        for r in &rows {
            assert_eq!(r.len(), cols, "ragged rows");
            assert!(r.iter().all(|&x| x < 2), "entries must be 0 or 1");
        }
        F2Matrix {
            rows: rows.len(),
            cols,
            data: rows,
        }
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        F2Matrix {
            rows,
            cols,
            data: vec![vec![0; cols]; rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.data[i][i] = 1;
        }
        m
    }

    pub fn from_int_matrix(a: &IntMatrix) -> Self {
        let two = Int::from(2);
        let data = (0..a.rows())
            .map(|i| {
                (0..a.cols())
                    .map(|j| if a[(i, j)].mod_floor(&two).is_zero() { 0 } else { 1 })
                    .collect()
            })
            .collect();
        F2Matrix {
            rows: a.rows(),
            cols: a.cols(),
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[u8] {
        &self.data[i]
    }

    pub fn get(&self, i: usize, j: usize) -> u8 {
        self.data[i][j]
    }

    pub fn mul_vec(&self, v: &[u8]) -> Vec<u8> {
        assert_eq!(self.cols, v.len());
        self.data
            .iter()
            .map(|row| row.iter().zip(v).fold(0u8, |acc, (a, b)| acc ^ (a & b)))
            .collect()
    }

    pub fn mul(&self, other: &F2Matrix) -> F2Matrix {
        assert_eq!(self.cols, other.rows);
        let data = (0..self.rows)
            .map(|i| {
                (0..other.cols)
                    .map(|j| {
                        (0..self.cols).fold(0u8, |acc, k| acc ^ (self.data[i][k] & other.data[k][j]))
                    })
                    .collect()
            })
            .collect();
        F2Matrix {
            rows: self.rows,
            cols: other.cols,
            data,
        }
    }

    pub fn add(&self, other: &F2Matrix) -> F2Matrix {
        assert_eq!(self.rows, other.rows);
        assert_eq!(self.cols, other.cols);
        let data = (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.data[i][j] ^ other.data[i][j]).collect())
            .collect();
        F2Matrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &F2Matrix) -> F2Matrix {
        assert_eq!(self.rows, other.rows);
        let data = (0..self.rows)
            .map(|i| {
                let mut row = self.data[i].clone();
                row.extend_from_slice(&other.data[i]);
                row
            })
            .collect();
        F2Matrix {
            rows: self.rows,
            cols: self.cols + other.cols,
            data,
        }
    }

    /// Reduced row-echelon form with zero rows dropped; the canonical basis
    /// of the row space.
    pub fn rref(&self) -> F2Matrix {
        let mut rows = self.data.clone();
        let n = self.cols;
        let mut r = 0;
        for c in 0..n {
            let Some(p) = (r..rows.len()).find(|&i| rows[i][c] == 1) else {
                continue;
            };
            rows.swap(r, p);
            let pivot_row = rows[r].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i != r && row[c] == 1 {
                    for j in 0..n {
                        row[j] ^= pivot_row[j];
                    }
                }
            }
            r += 1;
            if r == rows.len() {
                break;
            }
        }
        rows.truncate(r);
        rows.retain(|row| row.iter().any(|&x| x == 1));
        F2Matrix::new(rows, n)
    }

    pub fn rank(&self) -> usize {
        self.rref().rows
    }

    /// Basis of `{x : self * x = 0}`, rows of the result.
    pub fn kernel(&self) -> F2Matrix {
        let rref = self.rref();
        let n = self.cols;
        let mut pivot_of_col = vec![None; n];
        for (i, row) in rref.data.iter().enumerate() {
            let c = row.iter().position(|&x| x == 1).unwrap();
            pivot_of_col[c] = Some(i);
        }
        let free: Vec<usize> = (0..n).filter(|&c| pivot_of_col[c].is_none()).collect();
        let mut basis = Vec::new();
        for &fc in &free {
            let mut v = vec![0u8; n];
            v[fc] = 1;
            for c in 0..n {
                if let Some(i) = pivot_of_col[c] {
                    v[c] = rref.data[i][fc];
                }
            }
            basis.push(v);
        }
        F2Matrix::new(basis, n)
    }

    /// Some solution of `self * x = b`, or `None`.
    pub fn solve(&self, b: &[u8]) -> Option<Vec<u8>> {
        assert_eq!(self.rows, b.len());
        let n = self.cols;
        let mut rows: Vec<Vec<u8>> = self
            .data
            .iter()
            .zip(b)
            .map(|(row, &rb)| {
                let mut r = row.clone();
                r.push(rb);
                r
            })
            .collect();
        let mut r = 0;
        let mut pivots = Vec::new();
        for c in 0..n {
            let Some(p) = (r..rows.len()).find(|&i| rows[i][c] == 1) else {
                continue;
            };
            rows.swap(r, p);
            let pivot_row = rows[r].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i != r && row[c] == 1 {
                    for j in 0..=n {
                        row[j] ^= pivot_row[j];
                    }
                }
            }
            pivots.push(c);
            r += 1;
            if r == rows.len() {
                break;
            }
        }
        for row in rows.iter().skip(r) {
            if row[n] == 1 && row[..n].iter().all(|&x| x == 0) {
                return None;
            }
        }
        let mut x = vec![0u8; n];
        for (i, &c) in pivots.iter().enumerate() {
            x[c] = rows[i][n];
        }
        Some(x)
    }
}

/// A subspace of `F_2^n`, stored as the canonical reduced row-echelon basis.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subspace {
    basis: F2Matrix,
}

impl Subspace {
    pub fn from_spanning(vectors: &[Vec<u8>], ambient_dim: usize) -> Self {
        Subspace {
            basis: F2Matrix::new(vectors.to_vec(), ambient_dim).rref(),
        }
    }

    pub fn zero(ambient_dim: usize) -> Self {
        Subspace {
            basis: F2Matrix::zero(0, ambient_dim),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Subspace {
            basis: F2Matrix::identity(ambient_dim),
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn basis(&self) -> &F2Matrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<u8>> {
        (0..self.basis.rows()).map(|i| self.basis.row(i).to_vec()).collect()
    }

    pub fn contains(&self, v: &[u8]) -> bool {
        assert_eq!(v.len(), self.ambient_dim());
        let mut rows = self.basis_vectors();
        rows.push(v.to_vec());
        F2Matrix::new(rows, self.ambient_dim()).rank() == self.dim()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis_vectors().iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient_dim(), other.ambient_dim());
        let mut rows = self.basis_vectors();
        rows.extend(other.basis_vectors());
        Subspace::from_spanning(&rows, self.ambient_dim())
    }

    /// Intersection via the kernel of the stacked coordinate system: a
    /// vector of the intersection is a combination of `self`'s basis that is
    /// also a combination of `other`'s.
    pub fn intersection(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient_dim(), other.ambient_dim());
        let n = self.ambient_dim();
        let d1 = self.dim();
        let d2 = other.dim();
        if d1 == 0 || d2 == 0 {
            return Subspace::zero(n);
        }
        // Columns: coefficients on self's basis then other's; rows: ambient
        // coordinates. Kernel vectors give equal combinations.
        let mut rows = Vec::with_capacity(n);
        for coord in 0..n {
            let mut row = Vec::with_capacity(d1 + d2);
            for i in 0..d1 {
                row.push(self.basis.get(i, coord));
            }
            for i in 0..d2 {
                row.push(other.basis.get(i, coord));
            }
            rows.push(row);
        }
        let ker = F2Matrix::new(rows, d1 + d2).kernel();
        let mut vectors = Vec::new();
        for i in 0..ker.rows() {
            let coeffs = ker.row(i);
            let mut v = vec![0u8; n];
            for (b, &c) in coeffs.iter().take(d1).enumerate() {
                if c == 1 {
                    for (vj, bj) in v.iter_mut().zip(self.basis.row(b)) {
                        *vj ^= bj;
                    }
                }
            }
            vectors.push(v);
        }
        Subspace::from_spanning(&vectors, n)
    }

    /// Enumerates every element of the subspace; only sensible for small
    /// dimensions (used by brute-force oracles in tests).
    pub fn elements(&self) -> Vec<Vec<u8>> {
        let d = self.dim();
        let n = self.ambient_dim();
        assert!(d <= 20, "subspace too large to enumerate");
        let mut out = Vec::with_capacity(1 << d);
        for mask in 0u32..(1 << d) {
            let mut v = vec![0u8; n];
            for i in 0..d {
                if mask >> i & 1 == 1 {
                    for (vj, bj) in v.iter_mut().zip(self.basis.row(i)) {
                        *vj ^= bj;
                    }
                }
            }
            out.push(v);
        }
        out
    }
}
