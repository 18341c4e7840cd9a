use alloc::vec;
use alloc::vec::Vec;

use crate::ring::Ring;

/// Matrices with both dimensions below this bound are stored densely.
pub const DENSE_LIMIT: usize = 64;

/// Row-major dense matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenseMatrix<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

impl<E: Clone> DenseMatrix<E> {
    pub fn filled(rows: usize, cols: usize, value: E) -> Self {
        DenseMatrix { rows, cols, data: vec![value; rows * cols] }
    }

    pub fn zeros<R: Ring<Elem = E>>(ring: &R, rows: usize, cols: usize) -> Self {
        Self::filled(rows, cols, ring.zero())
    }

    pub fn identity<R: Ring<Elem = E>>(ring: &R, n: usize) -> Self {
        let mut m = Self::zeros(ring, n, n);
        for i in 0..n {
            m.set(i, i, ring.one());
        }
        m
    }

    /// Builds from a list of rows; panics if the rows are ragged.
    pub fn from_rows(rows: Vec<Vec<E>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row);
        }
        DenseMatrix { rows: r, cols: c, data }
    }

    /// Builds a matrix with zero rows or columns and the given shape.
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> E) -> Self {
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

    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.data[i * self.cols + j]
    }

    pub fn get_mut(&mut self, i: usize, j: usize) -> &mut E {
        &mut self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: E) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[E] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<E> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    /// Submatrix of the given rows and columns, in the given order.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]).clone())
    }

    pub fn mul<R: Ring<Elem = E>>(&self, ring: &R, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = Self::zeros(ring, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if ring.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !ring.is_zero(b) {
                        let cur = out.get(i, j);
                        let next = ring.add(cur, &ring.mul(a, b));
                        out.set(i, j, next);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec<R: Ring<Elem = E>>(&self, ring: &R, v: &[E]) -> Vec<E> {
        assert_eq!(self.cols, v.len(), "dimension mismatch in product");
        (0..self.rows)
            .map(|i| {
                let mut acc = ring.zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !ring.is_zero(a) && !ring.is_zero(b) {
                        acc = ring.add(&acc, &ring.mul(a, b));
                    }
                }
                acc
            })
            .collect()
    }

    pub fn is_zero<R: Ring<Elem = E>>(&self, ring: &R) -> bool {
        self.data.iter().all(|e| ring.is_zero(e))
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// `row[target] += factor * row[source]`
    pub fn add_row_multiple<R: Ring<Elem = E>>(&mut self, ring: &R, target: usize, source: usize, factor: &E) {
        if ring.is_zero(factor) {
            return;
        }
        for j in 0..self.cols {
            let s = self.get(source, j);
            if !ring.is_zero(s) {
                let v = ring.add(self.get(target, j), &ring.mul(factor, s));
                self.set(target, j, v);
            }
        }
    }

    /// `col[target] += factor * col[source]`
    pub fn add_col_multiple<R: Ring<Elem = E>>(&mut self, ring: &R, target: usize, source: usize, factor: &E) {
        if ring.is_zero(factor) {
            return;
        }
        for i in 0..self.rows {
            let s = self.get(i, source);
            if !ring.is_zero(s) {
                let v = ring.add(self.get(i, target), &ring.mul(factor, s));
                self.set(i, target, v);
            }
        }
    }

    pub fn scale_row<R: Ring<Elem = E>>(&mut self, ring: &R, row: usize, factor: &E) {
        for j in 0..self.cols {
            let v = ring.mul(self.get(row, j), factor);
            self.set(row, j, v);
        }
    }

    pub fn scale_col<R: Ring<Elem = E>>(&mut self, ring: &R, col: usize, factor: &E) {
        for i in 0..self.rows {
            let v = ring.mul(self.get(i, col), factor);
            self.set(i, col, v);
        }
    }
}

/// Column-compressed sparse matrix; each column is sorted by row index and
/// holds no explicit zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix<E> {
    rows: usize,
    columns: Vec<Vec<(usize, E)>>,
}

impl<E: Clone> SparseMatrix<E> {
    pub fn new<R: Ring<Elem = E>>(ring: &R, rows: usize, columns: Vec<Vec<(usize, E)>>) -> Self {
        let columns = columns
            .into_iter()
            .map(|mut col| {
                col.sort_by_key(|(r, _)| *r);
                let mut merged: Vec<(usize, E)> = Vec::with_capacity(col.len());
                for (r, v) in col {
                    assert!(r < rows, "row index out of range");
                    match merged.last_mut() {
                        Some((lr, lv)) if *lr == r => *lv = ring.add(lv, &v),
                        _ => merged.push((r, v)),
                    }
                }
                merged.retain(|(_, v)| !ring.is_zero(v));
                merged
            })
            .collect();
        SparseMatrix { rows, columns }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn column(&self, j: usize) -> &[(usize, E)] {
        &self.columns[j]
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn to_dense<R: Ring<Elem = E>>(&self, ring: &R) -> DenseMatrix<E> {
        let mut m = DenseMatrix::zeros(ring, self.rows, self.cols());
        for (j, col) in self.columns.iter().enumerate() {
            for (i, v) in col {
                m.set(*i, j, v.clone());
            }
        }
        m
    }

    /// Row-wise view: for each row, its `(column, value)` entries sorted by column.
    pub fn to_rows(&self) -> Vec<Vec<(usize, E)>> {
        let mut rows = vec![Vec::new(); self.rows];
        for (j, col) in self.columns.iter().enumerate() {
            for (i, v) in col {
                rows[*i].push((j, v.clone()));
            }
        }
        rows
    }

    /// `self * other`, both sparse.
    pub fn mul<R: Ring<Elem = E>>(&self, ring: &R, other: &Self) -> Self {
        assert_eq!(self.cols(), other.rows, "dimension mismatch in product");
        let columns = other
            .columns
            .iter()
            .map(|col| {
                let mut acc: alloc::collections::BTreeMap<usize, E> = alloc::collections::BTreeMap::new();
                for (k, b) in col {
                    for (i, a) in &self.columns[*k] {
                        let prod = ring.mul(a, b);
                        let entry = acc.entry(*i).or_insert_with(|| ring.zero());
                        *entry = ring.add(entry, &prod);
                    }
                }
                acc.into_iter().filter(|(_, v)| !ring.is_zero(v)).collect()
            })
            .collect();
        SparseMatrix { rows: self.rows, columns }
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Vec::is_empty)
    }
}

/// An exact matrix stored densely when small and sparsely otherwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Matrix<E> {
    Dense(DenseMatrix<E>),
    Sparse(SparseMatrix<E>),
}

impl<E: Clone> Matrix<E> {
    /// Chooses the representation from the shape.
    pub fn from_columns<R: Ring<Elem = E>>(ring: &R, rows: usize, columns: Vec<Vec<(usize, E)>>) -> Self {
        let sparse = SparseMatrix::new(ring, rows, columns);
        if sparse.rows() < DENSE_LIMIT && sparse.cols() < DENSE_LIMIT {
            Matrix::Dense(sparse.to_dense(ring))
        } else {
            Matrix::Sparse(sparse)
        }
    }

    pub fn from_dense<R: Ring<Elem = E>>(ring: &R, m: DenseMatrix<E>) -> Self {
        if m.rows() < DENSE_LIMIT && m.cols() < DENSE_LIMIT {
            Matrix::Dense(m)
        } else {
            Matrix::Sparse(dense_to_sparse(ring, &m))
        }
    }

    pub fn zero<R: Ring<Elem = E>>(ring: &R, rows: usize, cols: usize) -> Self {
        Self::from_columns(ring, rows, vec![Vec::new(); cols])
    }

    pub fn rows(&self) -> usize {
        match self {
            Matrix::Dense(m) => m.rows(),
            Matrix::Sparse(m) => m.rows(),
        }
    }

    pub fn cols(&self) -> usize {
        match self {
            Matrix::Dense(m) => m.cols(),
            Matrix::Sparse(m) => m.cols(),
        }
    }

    pub fn to_dense<R: Ring<Elem = E>>(&self, ring: &R) -> DenseMatrix<E> {
        match self {
            Matrix::Dense(m) => m.clone(),
            Matrix::Sparse(m) => m.to_dense(ring),
        }
    }

    pub fn to_sparse<R: Ring<Elem = E>>(&self, ring: &R) -> SparseMatrix<E> {
        match self {
            Matrix::Dense(m) => dense_to_sparse(ring, m),
            Matrix::Sparse(m) => m.clone(),
        }
    }

    pub fn to_rows<R: Ring<Elem = E>>(&self, ring: &R) -> Vec<Vec<(usize, E)>> {
        match self {
            Matrix::Dense(m) => (0..m.rows())
                .map(|i| {
                    m.row(i)
                        .iter()
                        .enumerate()
                        .filter(|(_, v)| !ring.is_zero(v))
                        .map(|(j, v)| (j, v.clone()))
                        .collect()
                })
                .collect(),
            Matrix::Sparse(m) => m.to_rows(),
        }
    }

    /// True iff `self * other` vanishes.
    pub fn product_is_zero<R: Ring<Elem = E>>(&self, ring: &R, other: &Self) -> bool {
        match (self, other) {
            (Matrix::Dense(a), Matrix::Dense(b)) => a.mul(ring, b).is_zero(ring),
            _ => self.to_sparse(ring).mul(ring, &other.to_sparse(ring)).is_zero(),
        }
    }
}

fn dense_to_sparse<R: Ring>(ring: &R, m: &DenseMatrix<R::Elem>) -> SparseMatrix<R::Elem> {
    let columns = (0..m.cols())
        .map(|j| {
            (0..m.rows())
                .filter(|&i| !ring.is_zero(m.get(i, j)))
                .map(|i| (i, m.get(i, j).clone()))
                .collect()
        })
        .collect();
    SparseMatrix { rows: m.rows(), columns }
}
