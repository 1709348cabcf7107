//! Vectors and the matrix type behind every affine image map `x -> Ax + b`.
//!
//! Decision vectors are plain `Vec<f64>`/`&[f64]`; step directions and
//! subproblem solutions are [`SparseVector`]s since they carry only a handful
//! of nonzeros. [`Matrix`] stores either a dense column-major array (SVM and
//! 1-median data) or a compressed sparse layout kept in both column and row
//! order (graph incidence maps), so that column products, transposed products
//! and single-row extraction are all cheap.

use crate::error::{Error, Result};

/// Sparse vector with strictly increasing indices and nonzero finite values.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseVector {
    dim: usize,
    indices: Vec<usize>,
    values: Vec<f64>,
}

impl SparseVector {
    /// Builds a sparse vector from `(index, value)` pairs in any order.
    ///
    /// Zero values are dropped. Duplicate or out-of-range indices and
    /// non-finite values are rejected.
    pub fn new(dim: usize, mut pairs: Vec<(usize, f64)>) -> Result<Self> {
        pairs.sort_by_key(|&(i, _)| i);
        let mut indices = Vec::with_capacity(pairs.len());
        let mut values = Vec::with_capacity(pairs.len());
        for (i, v) in pairs {
            if i >= dim {
                return Err(Error::InvalidData(format!(
                    "sparse index {i} out of range for dimension {dim}"
                )));
            }
            if !v.is_finite() {
                return Err(Error::InvalidData(format!("non-finite value at index {i}")));
            }
            if indices.last() == Some(&i) {
                return Err(Error::InvalidData(format!("duplicate sparse index {i}")));
            }
            if v != 0.0 {
                indices.push(i);
                values.push(v);
            }
        }
        Ok(Self { dim, indices, values })
    }

    /// The standard basis vector `e_j`.
    pub fn basis(dim: usize, j: usize) -> Self {
        assert!(j < dim, "basis index {j} out of range for dimension {dim}");
        Self {
            dim,
            indices: vec![j],
            values: vec![1.0],
        }
    }

    /// Keeps the entries of `x` whose magnitude exceeds `drop_below`.
    pub fn from_dense(x: &[f64], drop_below: f64) -> Self {
        let mut indices = Vec::new();
        let mut values = Vec::new();
        for (i, &v) in x.iter().enumerate() {
            if v.abs() > drop_below {
                indices.push(i);
                values.push(v);
            }
        }
        Self {
            dim: x.len(),
            indices,
            values,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nnz(&self) -> usize {
        self.indices.len()
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.indices.iter().copied().zip(self.values.iter().copied())
    }

    pub fn to_dense(&self) -> Vec<f64> {
        let mut out = vec![0.0; self.dim];
        for (i, v) in self.iter() {
            out[i] = v;
        }
        out
    }

    pub fn dot(&self, dense: &[f64]) -> f64 {
        self.iter().map(|(i, v)| v * dense[i]).sum()
    }
}

#[derive(Debug, Clone)]
enum Storage {
    /// Column-major, `nrows * ncols` entries.
    Dense(Vec<f64>),
    Sparse {
        col_ptr: Vec<usize>,
        col_rows: Vec<usize>,
        col_vals: Vec<f64>,
        row_ptr: Vec<usize>,
        row_cols: Vec<usize>,
        row_vals: Vec<f64>,
    },
}

/// Real matrix used for image maps.
#[derive(Debug, Clone)]
pub struct Matrix {
    nrows: usize,
    ncols: usize,
    storage: Storage,
}

impl Matrix {
    /// Dense matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(nrows: usize, columns: &[Vec<f64>]) -> Result<Self> {
        let mut data = Vec::with_capacity(nrows * columns.len());
        for (j, col) in columns.iter().enumerate() {
            if col.len() != nrows {
                return Err(Error::InvalidData(format!(
                    "column {j} has length {}, expected {nrows}",
                    col.len()
                )));
            }
            if let Some(v) = col.iter().find(|v| !v.is_finite()) {
                return Err(Error::InvalidData(format!("column {j} has non-finite entry {v}")));
            }
            data.extend_from_slice(col);
        }
        Ok(Self {
            nrows,
            ncols: columns.len(),
            storage: Storage::Dense(data),
        })
    }

    /// Dense matrix from row-major rows of equal length.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut columns = vec![Vec::with_capacity(nrows); ncols];
        for (i, row) in rows.iter().enumerate() {
            if row.len() != ncols {
                return Err(Error::InvalidData(format!(
                    "row {i} has length {}, expected {ncols}",
                    row.len()
                )));
            }
            for (j, &v) in row.iter().enumerate() {
                columns[j].push(v);
            }
        }
        Self::from_columns(nrows, &columns)
    }

    /// Sparse matrix from `(row, col, value)` triplets; duplicates are summed.
    pub fn from_triplets(nrows: usize, ncols: usize, mut triplets: Vec<(usize, usize, f64)>) -> Result<Self> {
        for &(r, c, v) in &triplets {
            if r >= nrows || c >= ncols {
                return Err(Error::InvalidData(format!(
                    "triplet ({r}, {c}) outside a {nrows}x{ncols} matrix"
                )));
            }
            if !v.is_finite() {
                return Err(Error::InvalidData(format!("non-finite entry at ({r}, {c})")));
            }
        }
        triplets.sort_by_key(|&(r, c, _)| (c, r));
        let mut merged: Vec<(usize, usize, f64)> = Vec::with_capacity(triplets.len());
        for (r, c, v) in triplets {
            match merged.last_mut() {
                Some(last) if last.0 == r && last.1 == c => last.2 += v,
                _ => merged.push((r, c, v)),
            }
        }
        merged.retain(|t| t.2 != 0.0);

        let mut col_ptr = vec![0; ncols + 1];
        for &(_, c, _) in &merged {
            col_ptr[c + 1] += 1;
        }
        for c in 0..ncols {
            col_ptr[c + 1] += col_ptr[c];
        }
        let col_rows = merged.iter().map(|t| t.0).collect();
        let col_vals = merged.iter().map(|t| t.2).collect();

        merged.sort_by_key(|&(r, c, _)| (r, c));
        let mut row_ptr = vec![0; nrows + 1];
        for &(r, _, _) in &merged {
            row_ptr[r + 1] += 1;
        }
        for r in 0..nrows {
            row_ptr[r + 1] += row_ptr[r];
        }
        let row_cols = merged.iter().map(|t| t.1).collect();
        let row_vals = merged.iter().map(|t| t.2).collect();

        Ok(Self {
            nrows,
            ncols,
            storage: Storage::Sparse {
                col_ptr,
                col_rows,
                col_vals,
                row_ptr,
                row_cols,
                row_vals,
            },
        })
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    /// Column `j` as a slice, when the storage is dense.
    pub fn dense_column(&self, j: usize) -> Option<&[f64]> {
        match &self.storage {
            Storage::Dense(data) => Some(&data[j * self.nrows..(j + 1) * self.nrows]),
            Storage::Sparse { .. } => None,
        }
    }

    /// All columns as contiguous slices, when the storage is dense.
    pub fn dense_columns(&self) -> Option<std::slice::ChunksExact<'_, f64>> {
        match &self.storage {
            Storage::Dense(data) if self.nrows > 0 => Some(data.chunks_exact(self.nrows)),
            _ => None,
        }
    }

    /// Calls `f(row, value)` for the stored entries of column `j`.
    pub fn for_each_in_column(&self, j: usize, mut f: impl FnMut(usize, f64)) {
        match &self.storage {
            Storage::Dense(data) => {
                for (r, &v) in data[j * self.nrows..(j + 1) * self.nrows].iter().enumerate() {
                    f(r, v);
                }
            }
            Storage::Sparse {
                col_ptr,
                col_rows,
                col_vals,
                ..
            } => {
                for k in col_ptr[j]..col_ptr[j + 1] {
                    f(col_rows[k], col_vals[k]);
                }
            }
        }
    }

    /// Calls `f(col, value)` for the stored entries of row `r`.
    pub fn for_each_in_row(&self, r: usize, mut f: impl FnMut(usize, f64)) {
        match &self.storage {
            Storage::Dense(data) => {
                for j in 0..self.ncols {
                    f(j, data[j * self.nrows + r]);
                }
            }
            Storage::Sparse {
                row_ptr,
                row_cols,
                row_vals,
                ..
            } => {
                for k in row_ptr[r]..row_ptr[r + 1] {
                    f(row_cols[k], row_vals[k]);
                }
            }
        }
    }

    /// Row `r` scaled by `scale`, as a dense vector of length `ncols`.
    pub fn row_dense(&self, r: usize, scale: f64) -> Vec<f64> {
        let mut out = vec![0.0; self.ncols];
        self.for_each_in_row(r, |c, v| out[c] = scale * v);
        out
    }

    pub fn get(&self, r: usize, c: usize) -> f64 {
        let mut found = 0.0;
        match &self.storage {
            Storage::Dense(data) => found = data[c * self.nrows + r],
            Storage::Sparse { .. } => self.for_each_in_column(c, |row, v| {
                if row == r {
                    found = v;
                }
            }),
        }
        found
    }

    /// `out += scale * A[:, j]`.
    pub fn axpy_column(&self, j: usize, scale: f64, out: &mut [f64]) {
        match &self.storage {
            Storage::Dense(data) => {
                let col = &data[j * self.nrows..(j + 1) * self.nrows];
                for (o, &v) in out.iter_mut().zip(col) {
                    *o += scale * v;
                }
            }
            Storage::Sparse { .. } => self.for_each_in_column(j, |r, v| out[r] += scale * v),
        }
    }

    /// `A x` for a dense `x`, skipping zero entries.
    pub fn mul_dense(&self, x: &[f64]) -> Vec<f64> {
        debug_assert_eq!(x.len(), self.ncols);
        let mut out = vec![0.0; self.nrows];
        for (j, &xj) in x.iter().enumerate() {
            if xj != 0.0 {
                self.axpy_column(j, xj, &mut out);
            }
        }
        out
    }

    /// `A x` where `x` is known to vanish outside `support`.
    pub fn mul_on_support(&self, x: &[f64], support: &[usize]) -> Vec<f64> {
        let mut out = vec![0.0; self.nrows];
        for &j in support {
            if x[j] != 0.0 {
                self.axpy_column(j, x[j], &mut out);
            }
        }
        out
    }

    pub fn mul_sparse(&self, s: &SparseVector) -> Vec<f64> {
        debug_assert_eq!(s.dim(), self.ncols);
        let mut out = vec![0.0; self.nrows];
        for (j, v) in s.iter() {
            self.axpy_column(j, v, &mut out);
        }
        out
    }

    /// `Aᵀ d`.
    pub fn tr_mul(&self, d: &[f64]) -> Vec<f64> {
        debug_assert_eq!(d.len(), self.nrows);
        match &self.storage {
            Storage::Dense(data) => data
                .chunks_exact(self.nrows.max(1))
                .take(self.ncols)
                .map(|col| dot(col, d))
                .collect(),
            Storage::Sparse {
                col_ptr,
                col_rows,
                col_vals,
                ..
            } => (0..self.ncols)
                .map(|j| (col_ptr[j]..col_ptr[j + 1]).map(|k| col_vals[k] * d[col_rows[k]]).sum())
                .collect(),
        }
    }
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm_inf(a: &[f64]) -> f64 {
    a.iter().fold(0.0, |m, v| m.max(v.abs()))
}

pub fn norm1(a: &[f64]) -> f64 {
    a.iter().map(|v| v.abs()).sum()
}

pub fn norm2(a: &[f64]) -> f64 {
    a.iter().map(|v| v * v).sum::<f64>().sqrt()
}

pub fn dist2(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}
