//! Sparse integer matrices.
//!
//! Storage is column-major: column `j` holds the sorted nonzero entries
//! `(row, value)`. All arithmetic is checked; the constructions in this crate
//! only ever produce small entries, so an overflow is a bug and panics.

use std::fmt;

use num_bigint::BigInt;

#[derive(Clone, PartialEq, Eq, Default)]
pub struct SparseMat {
    nrows: usize,
    ncols: usize,
    cols: Vec<Vec<(usize, i64)>>,
}

fn checked_add(a: i64, b: i64) -> i64 {
    a.checked_add(b).expect("integer overflow in sparse matrix arithmetic")
}

fn checked_mul(a: i64, b: i64) -> i64 {
    a.checked_mul(b).expect("integer overflow in sparse matrix arithmetic")
}

impl SparseMat {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        SparseMat {
            nrows,
            ncols,
            cols: vec![Vec::new(); ncols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for (j, col) in m.cols.iter_mut().enumerate() {
            col.push((j, 1));
        }
        m
    }

    /// Builds a matrix from `(row, col, value)` triplets; duplicates are summed.
    pub fn from_triplets<I>(nrows: usize, ncols: usize, triplets: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize, i64)>,
    {
        let mut cols: Vec<Vec<(usize, i64)>> = vec![Vec::new(); ncols];
        for (r, c, v) in triplets {
            assert!(
                r < nrows && c < ncols,
                "triplet ({r},{c}) out of bounds {nrows}x{ncols}"
            );
            if v != 0 {
                cols[c].push((r, v));
            }
        }
        for col in &mut cols {
            normalize_column(col);
        }
        SparseMat { nrows, ncols, cols }
    }

    pub fn from_dense(rows: &[Vec<i64>]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let triplets = rows.iter().enumerate().flat_map(|(i, row)| {
            assert_eq!(row.len(), ncols, "ragged dense matrix");
            row.iter().enumerate().map(move |(j, &v)| (i, j, v))
        });
        Self::from_triplets(nrows, ncols, triplets)
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(Vec::is_empty)
    }

    pub fn column(&self, j: usize) -> &[(usize, i64)] {
        &self.cols[j]
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        let col = &self.cols[c];
        match col.binary_search_by_key(&r, |&(row, _)| row) {
            Ok(k) => col[k].1,
            Err(_) => 0,
        }
    }

    /// Iterates nonzero entries as `(row, col, value)` in column-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, i64)> + '_ {
        self.cols
            .iter()
            .enumerate()
            .flat_map(|(j, col)| col.iter().map(move |&(i, v)| (i, j, v)))
    }

    pub fn transpose(&self) -> Self {
        Self::from_triplets(self.ncols, self.nrows, self.entries().map(|(i, j, v)| (j, i, v)))
    }

    pub fn neg(&self) -> Self {
        self.scale(-1)
    }

    pub fn scale(&self, k: i64) -> Self {
        if k == 0 {
            return Self::zeros(self.nrows, self.ncols);
        }
        let cols = self
            .cols
            .iter()
            .map(|col| col.iter().map(|&(i, v)| (i, checked_mul(v, k))).collect())
            .collect();
        SparseMat {
            nrows: self.nrows,
            ncols: self.ncols,
            cols,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(
            (self.nrows, self.ncols),
            (other.nrows, other.ncols),
            "shape mismatch in matrix sum"
        );
        let cols = self
            .cols
            .iter()
            .zip(&other.cols)
            .map(|(a, b)| {
                let mut col: Vec<(usize, i64)> = a.iter().chain(b.iter()).copied().collect();
                normalize_column(&mut col);
                col
            })
            .collect();
        SparseMat {
            nrows: self.nrows,
            ncols: self.ncols,
            cols,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Matrix product `self · other`.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(
            self.ncols, other.nrows,
            "shape mismatch in matrix product: {}x{} · {}x{}",
            self.nrows, self.ncols, other.nrows, other.ncols
        );
        let mut acc = vec![0i64; self.nrows];
        let mut touched: Vec<usize> = Vec::new();
        let cols = other
            .cols
            .iter()
            .map(|ocol| {
                for &(k, b) in ocol {
                    for &(i, a) in &self.cols[k] {
                        if acc[i] == 0 {
                            touched.push(i);
                        }
                        acc[i] = checked_add(acc[i], checked_mul(a, b));
                    }
                }
                touched.sort_unstable();
                touched.dedup();
                let col: Vec<(usize, i64)> = touched
                    .iter()
                    .filter_map(|&i| {
                        let v = std::mem::take(&mut acc[i]);
                        (v != 0).then_some((i, v))
                    })
                    .collect();
                touched.clear();
                col
            })
            .collect();
        SparseMat {
            nrows: self.nrows,
            ncols: other.ncols,
            cols,
        }
    }

    /// Applies the matrix to a sparse vector given as `(index, value)` pairs.
    pub fn apply(&self, v: &[(usize, i64)]) -> Vec<(usize, i64)> {
        let mut out: Vec<(usize, i64)> = Vec::new();
        for &(k, b) in v {
            out.extend(self.cols[k].iter().map(|&(i, a)| (i, checked_mul(a, b))));
        }
        normalize_column(&mut out);
        out
    }

    /// The submatrix on the given row and column index lists (in that order).
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut row_pos = vec![usize::MAX; self.nrows];
        for (p, &r) in rows.iter().enumerate() {
            row_pos[r] = p;
        }
        let cols_out = cols
            .iter()
            .map(|&c| {
                self.cols[c]
                    .iter()
                    .filter(|&&(r, _)| row_pos[r] != usize::MAX)
                    .map(|&(r, v)| (row_pos[r], v))
                    .collect::<Vec<_>>()
            })
            .map(|mut col| {
                col.sort_unstable();
                col
            })
            .collect();
        SparseMat {
            nrows: rows.len(),
            ncols: cols.len(),
            cols: cols_out,
        }
    }

    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        let mut out = vec![vec![0; self.ncols]; self.nrows];
        for (i, j, v) in self.entries() {
            out[i][j] = v;
        }
        out
    }

    pub fn to_bigint_dense(&self) -> Vec<Vec<BigInt>> {
        let mut out = vec![vec![BigInt::from(0); self.ncols]; self.nrows];
        for (i, j, v) in self.entries() {
            out[i][j] = BigInt::from(v);
        }
        out
    }

    /// Whether every column has exactly one entry, equal to ±1, and rows are hit at most once.
    pub fn is_signed_permutation(&self) -> bool {
        if self.nrows != self.ncols {
            return false;
        }
        let mut seen = vec![false; self.nrows];
        for col in &self.cols {
            match col.as_slice() {
                [(i, v)] if v.abs() == 1 && !seen[*i] => seen[*i] = true,
                _ => return false,
            }
        }
        true
    }

    /// First entry (row, col, lhs, rhs) where two same-shape matrices differ.
    pub fn first_difference(&self, other: &Self) -> Option<(usize, usize, i64, i64)> {
        if (self.nrows, self.ncols) != (other.nrows, other.ncols) {
            return Some((usize::MAX, usize::MAX, 0, 0));
        }
        let diff = self.sub(other);
        let first = diff.entries().next();
        first.map(|(i, j, _)| (i, j, self.get(i, j), other.get(i, j)))
    }
}

fn normalize_column(col: &mut Vec<(usize, i64)>) {
    col.sort_unstable_by_key(|&(r, _)| r);
    let mut out: Vec<(usize, i64)> = Vec::with_capacity(col.len());
    for &(r, v) in col.iter() {
        match out.last_mut() {
            Some(last) if last.0 == r => last.1 = checked_add(last.1, v),
            _ => out.push((r, v)),
        }
    }
    out.retain(|&(_, v)| v != 0);
    *col = out;
}

impl fmt::Debug for SparseMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SparseMat {}x{} [", self.nrows, self.ncols)?;
        for (i, j, v) in self.entries() {
            write!(f, " ({i},{j})={v}")?;
        }
        write!(f, " ]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_matches_dense() {
        let a = SparseMat::from_dense(&[vec![1, 2, 0], vec![0, -1, 3]]);
        let b = SparseMat::from_dense(&[vec![1, 0], vec![0, 1], vec![2, -2]]);
        assert_eq!(a.mul(&b).to_dense(), vec![vec![1, 2], vec![6, -7]]);
    }

    #[test]
    fn triplets_sum_and_cancel() {
        let m = SparseMat::from_triplets(2, 2, [(0, 0, 1), (0, 0, -1), (1, 1, 2), (1, 1, 3)]);
        assert_eq!(m.nnz(), 1);
        assert_eq!(m.get(1, 1), 5);
    }

    #[test]
    fn submatrix_reorders() {
        let m = SparseMat::from_dense(&[vec![1, 2], vec![3, 4]]);
        assert_eq!(m.submatrix(&[1, 0], &[1]).to_dense(), vec![vec![4], vec![2]]);
    }

    #[test]
    fn signed_permutation_detection() {
        assert!(SparseMat::from_dense(&[vec![0, -1], vec![1, 0]]).is_signed_permutation());
        assert!(!SparseMat::from_dense(&[vec![1, 1], vec![0, 1]]).is_signed_permutation());
    }
}
