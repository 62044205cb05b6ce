//! Exact integer and rational matrix arithmetic.
//!
//! Everything here is arbitrary precision: `Int` is `BigInt`, `Rat` is
//! `BigRational`. The module provides the handful of normal forms the rest of
//! the crate is built on: Smith normal form with unimodular transforms,
//! reduced row Hermite form (used as the canonical representative of a row
//! span), saturated integer kernels, and an exact signature computation by
//! rational congruence reduction.

use num::{BigInt, BigRational, Integer, One, Signed, Zero};
use std::fmt;
use std::ops::{Index, IndexMut};

use crate::error::Error;

pub type Int = BigInt;
pub type Rat = BigRational;

pub fn int(v: i64) -> Int {
    Int::from(v)
}

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(Int::from(n), Int::from(d))
}

/// Dense row-major matrix over `BigInt`.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Int>,
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = Int;
    fn index(&self, (i, j): (usize, usize)) -> &Int {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Int {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self[(i, j)].to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![Int::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m[(i, i)] = Int::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        let mut m = Self::zero(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, v) in row.iter().enumerate() {
                m[(i, j)] = int(*v);
            }
        }
        m
    }

    pub fn from_int_rows(rows: Vec<Vec<Int>>) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        let mut m = Self::zero(r, c);
        for (i, row) in rows.into_iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, v) in row.into_iter().enumerate() {
                m[(i, j)] = v;
            }
        }
        m
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(ambient_dim: usize, cols: &[Vec<Int>]) -> Self {
        let mut m = Self::zero(ambient_dim, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), ambient_dim, "column has wrong length");
            for i in 0..ambient_dim {
                m[(i, j)] = col[i].clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_symmetric(&self) -> bool {
        if !self.is_square() {
            return false;
        }
        for i in 0..self.rows {
            for j in 0..i {
                if self[(i, j)] != self[(j, i)] {
                    return false;
                }
            }
        }
        true
    }

    pub fn row(&self, i: usize) -> Vec<Int> {
        (0..self.cols).map(|j| self[(i, j)].clone()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<Int> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "inner dimensions differ");
        let mut out = Self::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self[(i, k)].is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = &self[(i, k)] * &other[(k, j)];
                    out[(i, j)] += prod;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Int]) -> Vec<Int> {
        assert_eq!(self.cols, v.len(), "vector has wrong length");
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| &self[(i, j)] * &v[j]).sum())
            .collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] += &other[(i, j)];
            }
        }
        out
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for x in out.data.iter_mut() {
            *x = -x.clone();
        }
        out
    }

    pub fn scale(&self, k: &Int) -> Self {
        let mut out = self.clone();
        for x in out.data.iter_mut() {
            *x *= k;
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Self::identity(self.rows)
    }

    pub fn is_zero_matrix(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    /// Block-diagonal assembly; the result has the blocks along the diagonal
    /// in the given order.
    pub fn block_diag(blocks: &[&IntMatrix]) -> Self {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zero(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out[(r0 + i, c0 + j)] = b[(i, j)].clone();
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    /// Stacks `self` on top of `other`.
    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols, "column counts differ");
        let mut out = Self::zero(self.rows + other.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] = self[(i, j)].clone();
            }
        }
        for i in 0..other.rows {
            for j in 0..self.cols {
                out[(self.rows + i, j)] = other[(i, j)].clone();
            }
        }
        out
    }

    pub fn to_rational(&self) -> RatMatrix {
        let mut out = RatMatrix::zero(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] = Rat::from(self[(i, j)].clone());
            }
        }
        out
    }

    /// Exact determinant by fraction-free Bareiss elimination.
    pub fn det(&self) -> Result<Int, Error> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(Int::one());
        }
        let mut a = self.clone();
        let mut sign = 1i64;
        let mut prev = Int::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                    Some(i) => {
                        for j in 0..n {
                            let tmp = a[(k, j)].clone();
                            a[(k, j)] = a[(i, j)].clone();
                            a[(i, j)] = tmp;
                        }
                        sign = -sign;
                    }
                    None => return Ok(Int::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)];
                    a[(i, j)] = num / &prev;
                }
                a[(i, k)] = Int::zero();
            }
            prev = a[(k, k)].clone();
        }
        Ok(a[(n - 1, n - 1)].clone() * int(sign))
    }

    pub fn rank(&self) -> usize {
        self.snf().rank()
    }

    /// Smith normal form. Returns `(d, u, v)` packed in [`Snf`] with
    /// `u * self * v` diagonal, `u` and `v` unimodular, each diagonal entry
    /// nonnegative and dividing the next, and zero entries last.
    pub fn snf(&self) -> Snf {
        let m = self.rows;
        let n = self.cols;
        let mut a = self.clone();
        let mut u = IntMatrix::identity(m);
        let mut v = IntMatrix::identity(n);

        let swap_rows = |a: &mut IntMatrix, u: &mut IntMatrix, r1: usize, r2: usize| {
            if r1 == r2 {
                return;
            }
            for j in 0..a.cols {
                a.data.swap(r1 * a.cols + j, r2 * a.cols + j);
            }
            for j in 0..u.cols {
                u.data.swap(r1 * u.cols + j, r2 * u.cols + j);
            }
        };
        let swap_cols = |a: &mut IntMatrix, v: &mut IntMatrix, c1: usize, c2: usize| {
            if c1 == c2 {
                return;
            }
            for i in 0..a.rows {
                a.data.swap(i * a.cols + c1, i * a.cols + c2);
            }
            for i in 0..v.rows {
                v.data.swap(i * v.cols + c1, i * v.cols + c2);
            }
        };
        // row[dst] -= q * row[src], mirrored on u
        let row_op = |a: &mut IntMatrix, u: &mut IntMatrix, dst: usize, src: usize, q: &Int| {
            if q.is_zero() {
                return;
            }
            for j in 0..a.cols {
                let t = q * &a[(src, j)];
                a[(dst, j)] -= t;
            }
            for j in 0..u.cols {
                let t = q * &u[(src, j)];
                u[(dst, j)] -= t;
            }
        };
        let col_op = |a: &mut IntMatrix, v: &mut IntMatrix, dst: usize, src: usize, q: &Int| {
            if q.is_zero() {
                return;
            }
            for i in 0..a.rows {
                let t = q * &a[(i, src)];
                a[(i, dst)] -= t;
            }
            for i in 0..v.rows {
                let t = q * &v[(i, src)];
                v[(i, dst)] -= t;
            }
        };

        let k = m.min(n);
        for t in 0..k {
            // Move the absolutely smallest nonzero entry of the trailing
            // block into the pivot slot.
            let mut pivot: Option<(usize, usize)> = None;
            for i in t..m {
                for j in t..n {
                    if a[(i, j)].is_zero() {
                        continue;
                    }
                    match pivot {
                        None => pivot = Some((i, j)),
                        Some((pi, pj)) => {
                            if a[(i, j)].abs() < a[(pi, pj)].abs() {
                                pivot = Some((i, j));
                            }
                        }
                    }
                }
            }
            let Some((pi, pj)) = pivot else { break };
            swap_rows(&mut a, &mut u, t, pi);
            swap_cols(&mut a, &mut v, t, pj);

            'clean: loop {
                for i in t + 1..m {
                    if a[(i, t)].is_zero() {
                        continue;
                    }
                    let (q, r) = a[(i, t)].div_rem(&a[(t, t)]);
                    row_op(&mut a, &mut u, i, t, &q);
                    if !r.is_zero() {
                        swap_rows(&mut a, &mut u, t, i);
                        continue 'clean;
                    }
                }
                for j in t + 1..n {
                    if a[(t, j)].is_zero() {
                        continue;
                    }
                    let (q, r) = a[(t, j)].div_rem(&a[(t, t)]);
                    col_op(&mut a, &mut v, j, t, &q);
                    if !r.is_zero() {
                        swap_cols(&mut a, &mut v, t, j);
                        continue 'clean;
                    }
                }
                // Pivot row and column are clear; force the divisibility
                // condition on the trailing block.
                for i in t + 1..m {
                    for j in t + 1..n {
                        if !a[(i, j)].mod_floor(&a[(t, t)]).is_zero() {
                            let minus_one = -Int::one();
                            row_op(&mut a, &mut u, t, i, &minus_one);
                            continue 'clean;
                        }
                    }
                }
                break;
            }
            if a[(t, t)].is_negative() {
                for j in 0..n {
                    a[(t, j)] = -a[(t, j)].clone();
                }
                for j in 0..m {
                    u[(t, j)] = -u[(t, j)].clone();
                }
            }
        }

        let d: Vec<Int> = (0..k).map(|i| a[(i, i)].clone()).collect();
        Snf { d, u, v }
    }

    /// Reduced row Hermite normal form of the row span. Zero rows are
    /// dropped, pivots are positive, and every entry above a pivot lies in
    /// `[0, pivot)`. Two matrices have equal row spans over `Z` iff their
    /// reduced forms are identical, so this doubles as the crate's canonical
    /// basis choice.
    pub fn row_hnf(&self) -> IntMatrix {
        let mut a = self.clone();
        let m = a.rows;
        let n = a.cols;
        let mut r = 0;
        for c in 0..n {
            if r == m {
                break;
            }
            // Euclidean elimination within column c, rows r..m.
            loop {
                let mut best: Option<usize> = None;
                for i in r..m {
                    if a[(i, c)].is_zero() {
                        continue;
                    }
                    match best {
                        None => best = Some(i),
                        Some(b) => {
                            if a[(i, c)].abs() < a[(b, c)].abs() {
                                best = Some(i);
                            }
                        }
                    }
                }
                let Some(b) = best else { break };
                if b != r {
                    for j in 0..n {
                        a.data.swap(r * n + j, b * n + j);
                    }
                }
                let mut done = true;
                for i in r + 1..m {
                    if a[(i, c)].is_zero() {
                        continue;
                    }
                    let q = a[(i, c)].div_floor(&a[(r, c)]);
                    for j in 0..n {
                        let t = &q * &a[(r, j)];
                        a[(i, j)] -= t;
                    }
                    if !a[(i, c)].is_zero() {
                        done = false;
                    }
                }
                if done {
                    break;
                }
            }
            if a[(r, c)].is_zero() {
                continue;
            }
            if a[(r, c)].is_negative() {
                for j in 0..n {
                    a[(r, j)] = -a[(r, j)].clone();
                }
            }
            for i in 0..r {
                let q = a[(i, c)].div_floor(&a[(r, c)]);
                if q.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let t = &q * &a[(r, j)];
                    a[(i, j)] -= t;
                }
            }
            r += 1;
        }
        let rows: Vec<Vec<Int>> = (0..r).map(|i| a.row(i)).collect();
        if rows.is_empty() {
            IntMatrix::zero(0, n)
        } else {
            IntMatrix::from_int_rows(rows)
        }
    }

    /// Basis of the integer kernel `{x : self * x = 0}`, returned as matrix
    /// columns. Integer kernels are automatically saturated; the basis is
    /// canonicalized through [`IntMatrix::row_hnf`].
    pub fn kernel(&self) -> IntMatrix {
        let snf = self.snf();
        let rank = snf.rank();
        let n = self.cols;
        let cols: Vec<Vec<Int>> = (rank..n).map(|j| snf.v.column(j)).collect();
        canonical_columns(n, &cols)
    }

    /// Saturation of the column span: the smallest sublattice of `Z^rows`
    /// containing the columns whose quotient is torsion-free. Columns of the
    /// result form a basis; the input columns need not be independent.
    pub fn saturate_columns(&self) -> IntMatrix {
        let snf = self.snf();
        let rank = snf.rank();
        let u_inv = invert_unimodular(&snf.u);
        let cols: Vec<Vec<Int>> = (0..rank).map(|j| u_inv.column(j)).collect();
        canonical_columns(self.rows, &cols)
    }
}

/// Canonical basis-as-columns form of a set of integer vectors: row-HNF of
/// the transpose, transposed back.
fn canonical_columns(ambient_dim: usize, cols: &[Vec<Int>]) -> IntMatrix {
    if cols.is_empty() {
        return IntMatrix::zero(ambient_dim, 0);
    }
    IntMatrix::from_int_rows(cols.to_vec()).row_hnf().transpose()
}

/// Inverse of a unimodular integer matrix, computed rationally and read back
/// as integers.
pub fn invert_unimodular(u: &IntMatrix) -> IntMatrix {
    let inv = u
        .to_rational()
        .inverse()
        .expect("unimodular matrix is invertible");
    let mut out = IntMatrix::zero(u.rows(), u.cols());
    for i in 0..u.rows() {
        for j in 0..u.cols() {
            assert!(inv[(i, j)].is_integer(), "matrix was not unimodular");
            out[(i, j)] = inv[(i, j)].to_integer();
        }
    }
    out
}

/// Smith normal form data: `u * a * v = diag(d)`.
pub struct Snf {
    pub d: Vec<Int>,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl Snf {
    pub fn rank(&self) -> usize {
        self.d.iter().filter(|x| !x.is_zero()).count()
    }
}

/// Dense row-major matrix over `BigRational`.
#[derive(Clone, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl Index<(usize, usize)> for RatMatrix {
    type Output = Rat;
    fn index(&self, (i, j): (usize, usize)) -> &Rat {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for RatMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rat {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RatMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self[(i, j)].to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl RatMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m[(i, i)] = Rat::one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn column(&self, j: usize) -> Vec<Rat> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "inner dimensions differ");
        let mut out = Self::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self[(i, k)].is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = &self[(i, k)] * &other[(k, j)];
                    out[(i, j)] += prod;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(self.cols, v.len(), "vector has wrong length");
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| &self[(i, j)] * &v[j]).sum())
            .collect()
    }

    /// Exact inverse by Gauss-Jordan elimination; `None` when singular.
    pub fn inverse(&self) -> Option<RatMatrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = RatMatrix::identity(n);
        for col in 0..n {
            let pivot = (col..n).find(|&i| !a[(i, col)].is_zero())?;
            if pivot != col {
                for j in 0..n {
                    a.data.swap(col * n + j, pivot * n + j);
                    inv.data.swap(col * n + j, pivot * n + j);
                }
            }
            let p = a[(col, col)].clone();
            for j in 0..n {
                a[(col, j)] = &a[(col, j)] / &p;
                inv[(col, j)] = &inv[(col, j)] / &p;
            }
            for i in 0..n {
                if i == col || a[(i, col)].is_zero() {
                    continue;
                }
                let f = a[(i, col)].clone();
                for j in 0..n {
                    let t1 = &f * &a[(col, j)];
                    a[(i, j)] -= t1;
                    let t2 = &f * &inv[(col, j)];
                    inv[(i, j)] -= t2;
                }
            }
        }
        Some(inv)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Solves `self * x = b` exactly; `None` when the system is unsolvable,
    /// an arbitrary solution when underdetermined.
    pub fn solve(&self, b: &[Rat]) -> Option<Vec<Rat>> {
        assert_eq!(self.rows, b.len(), "right-hand side has wrong length");
        let m = self.rows;
        let n = self.cols;
        let mut a = self.clone();
        let mut rhs = b.to_vec();
        let mut pivot_cols = Vec::new();
        let mut r = 0;
        for c in 0..n {
            let Some(p) = (r..m).find(|&i| !a[(i, c)].is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..n {
                    a.data.swap(r * n + j, p * n + j);
                }
                rhs.swap(r, p);
            }
            let inv = a[(r, c)].clone();
            for j in 0..n {
                a[(r, j)] = &a[(r, j)] / &inv;
            }
            rhs[r] = &rhs[r] / &inv;
            for i in 0..m {
                if i == r || a[(i, c)].is_zero() {
                    continue;
                }
                let f = a[(i, c)].clone();
                for j in 0..n {
                    let t = &f * &a[(r, j)];
                    a[(i, j)] -= t;
                }
                let t = &f * &rhs[r];
                rhs[i] -= t;
            }
            pivot_cols.push(c);
            r += 1;
            if r == m {
                break;
            }
        }
        for i in r..m {
            if !rhs[i].is_zero() {
                return None;
            }
        }
        let mut x = vec![Rat::zero(); n];
        for (row, &c) in pivot_cols.iter().enumerate() {
            x[c] = rhs[row].clone();
        }
        Some(x)
    }
}

/// Signature of a symmetric matrix, computed by exact rational congruence
/// reduction: `(n_plus, n_minus, n_zero)`.
///
/// Nonzero diagonal entries are used as pivots directly. When the active
/// block has an identically zero diagonal but a nonzero entry `c` at `(i,j)`,
/// the 2x2 block `[[0, c], [c, 0]]` splits off and contributes `(1, 1, 0)`.
pub fn signature(gram: &IntMatrix) -> Result<(usize, usize, usize), Error> {
    if !gram.is_square() {
        return Err(Error::NotSquare {
            rows: gram.rows(),
            cols: gram.cols(),
        });
    }
    for i in 0..gram.rows() {
        for j in 0..i {
            if gram[(i, j)] != gram[(j, i)] {
                return Err(Error::NotSymmetric { i, j });
            }
        }
    }
    let mut m = gram.to_rational();
    let (mut pos, mut neg, mut zero) = (0usize, 0usize, 0usize);
    loop {
        let k = m.rows();
        if k == 0 {
            break;
        }
        if let Some(p) = (0..k).find(|&i| !m[(i, i)].is_zero()) {
            if m[(p, p)].is_positive() {
                pos += 1;
            } else {
                neg += 1;
            }
            let mut next = RatMatrix::zero(k - 1, k - 1);
            let keep: Vec<usize> = (0..k).filter(|&i| i != p).collect();
            for (a, &i) in keep.iter().enumerate() {
                for (b, &j) in keep.iter().enumerate() {
                    let corr = &m[(i, p)] * &m[(p, j)] / &m[(p, p)];
                    next[(a, b)] = &m[(i, j)] - &corr;
                }
            }
            m = next;
            continue;
        }
        // Diagonal is identically zero on the active block.
        let mut off = None;
        'search: for i in 0..k {
            for j in i + 1..k {
                if !m[(i, j)].is_zero() {
                    off = Some((i, j));
                    break 'search;
                }
            }
        }
        let Some((i, j)) = off else {
            zero += k;
            break;
        };
        pos += 1;
        neg += 1;
        let c = m[(i, j)].clone();
        let keep: Vec<usize> = (0..k).filter(|&t| t != i && t != j).collect();
        let mut next = RatMatrix::zero(k - 2, k - 2);
        for (a, &s) in keep.iter().enumerate() {
            for (b, &t) in keep.iter().enumerate() {
                // Congruence clearing of rows/columns i and j: subtract
                // (m[s][j]/c) * row_i + (m[s][i]/c) * row_j from row s, and
                // symmetrically on columns. With a zero diagonal the induced
                // form on the complement is:
                let corr = (&m[(s, i)] * &m[(j, t)] + &m[(s, j)] * &m[(i, t)]) / &c;
                next[(a, b)] = &m[(s, t)] - &corr;
            }
        }
        m = next;
    }
    Ok((pos, neg, zero))
}

/// Solves `a x = b` over the field with two elements, reducing the integer
/// inputs mod 2. `Err(UnsolvableMod2)` when no solution exists; an arbitrary
/// solution when the system is underdetermined.
pub fn solve_mod2(a: &IntMatrix, b: &[Int]) -> Result<Vec<u8>, Error> {
    if a.rows() != b.len() {
        return Err(Error::DimensionMismatch(format!(
            "matrix has {} rows but right-hand side has {} entries",
            a.rows(),
            b.len()
        )));
    }
    let am = crate::f2::F2Matrix::from_int_matrix(a);
    let bv: Vec<u8> = b.iter().map(|x| x.mod_floor(&int(2)).to_u8()).collect();
    am.solve(&bv).ok_or(Error::UnsolvableMod2)
}

trait ToU8 {
    fn to_u8(&self) -> u8;
}

impl ToU8 for Int {
    fn to_u8(&self) -> u8 {
        if self.is_zero() {
            0
        } else {
            1
        }
    }
}
