//! Smith normal form over the integers, exact.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::matrix::SparseMat;

/// Dense matrix of arbitrary-precision integers, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    nrows: usize,
    ncols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        IntMatrix {
            nrows,
            ncols,
            data: vec![BigInt::zero(); nrows * ncols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(nrows, ncols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), ncols, "ragged rows");
            for (j, &v) in row.iter().enumerate() {
                m.data[i * ncols + j] = BigInt::from(v);
            }
        }
        m
    }

    pub fn from_sparse(a: &SparseMat) -> Self {
        let mut m = Self::zeros(a.nrows(), a.ncols());
        for (i, j, v) in a.entries() {
            m.data[i * a.ncols() + j] = BigInt::from(v);
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.ncols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.ncols + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.ncols, other.nrows, "shape mismatch in product");
        let mut out = Self::zeros(self.nrows, other.ncols);
        for i in 0..self.nrows {
            for k in 0..self.ncols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.ncols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.ncols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.ncols, v.len());
        (0..self.nrows)
            .map(|i| (0..self.ncols).map(|j| self.get(i, j) * &v[j]).sum())
            .collect()
    }

    /// Determinant by fraction-free elimination.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.nrows, self.ncols, "determinant of a non-square matrix");
        let n = self.nrows;
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| !a.get(i, k).is_zero()) else {
                return BigInt::zero();
            };
            if p != k {
                a.swap_rows(p, k);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (a.get(i, j) * a.get(k, k) - a.get(i, k) * a.get(k, j)) / &prev;
                    a.set(i, j, v);
                }
            }
            prev = a.get(k, k).clone();
        }
        if n == 0 {
            sign
        } else {
            sign * a.get(n - 1, n - 1)
        }
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.ncols {
            self.data.swap(i * self.ncols + c, j * self.ncols + c);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for r in 0..self.nrows {
            self.data.swap(r * self.ncols + i, r * self.ncols + j);
        }
    }

    /// row_i += c * row_j
    fn add_row(&mut self, i: usize, j: usize, c: &BigInt) {
        for col in 0..self.ncols {
            let v = &self.data[j * self.ncols + col] * c;
            if !v.is_zero() {
                self.data[i * self.ncols + col] += v;
            }
        }
    }

    /// col_i += c * col_j
    fn add_col(&mut self, i: usize, j: usize, c: &BigInt) {
        for r in 0..self.nrows {
            let v = &self.data[r * self.ncols + j] * c;
            if !v.is_zero() {
                self.data[r * self.ncols + i] += v;
            }
        }
    }

    fn neg_row(&mut self, i: usize) {
        for c in 0..self.ncols {
            let idx = i * self.ncols + c;
            self.data[idx] = -std::mem::take(&mut self.data[idx]);
        }
    }

    fn neg_col(&mut self, j: usize) {
        for r in 0..self.nrows {
            let idx = r * self.ncols + j;
            self.data[idx] = -std::mem::take(&mut self.data[idx]);
        }
    }
}

/// `P·A·Q = S` with `P`, `Q` unimodular and their inverses kept alongside,
/// so `A = U·S·V` with `U = P⁻¹`, `V = Q⁻¹`.
#[derive(Clone, Debug)]
pub struct Snf {
    pub s: IntMatrix,
    pub p: IntMatrix,
    pub p_inv: IntMatrix,
    pub q: IntMatrix,
    pub q_inv: IntMatrix,
}

impl Snf {
    pub fn u(&self) -> &IntMatrix {
        &self.p_inv
    }

    pub fn v(&self) -> &IntMatrix {
        &self.q_inv
    }

    pub fn rank(&self) -> usize {
        self.diagonal().len()
    }

    /// Nonzero diagonal entries, each dividing the next.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.s.nrows.min(self.s.ncols))
            .map(|i| self.s.get(i, i).clone())
            .take_while(|v| !v.is_zero())
            .collect()
    }

    /// An integer solution of `A·x = b`, if one exists.
    pub fn solve(&self, b: &[BigInt]) -> Option<Vec<BigInt>> {
        let y = self.p.mul_vec(b);
        let diag = self.diagonal();
        let mut z = vec![BigInt::zero(); self.s.ncols];
        for (i, yi) in y.iter().enumerate() {
            if i < diag.len() {
                let (quot, rem) = yi.div_rem(&diag[i]);
                if !rem.is_zero() {
                    return None;
                }
                z[i] = quot;
            } else if !yi.is_zero() {
                return None;
            }
        }
        Some(self.q.mul_vec(&z))
    }
}

struct Reducer {
    a: IntMatrix,
    transforms: Option<[IntMatrix; 4]>,
}

impl Reducer {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        if let Some([p, p_inv, _, _]) = &mut self.transforms {
            p.swap_rows(i, j);
            p_inv.swap_cols(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        if let Some([_, _, q, q_inv]) = &mut self.transforms {
            q.swap_cols(i, j);
            q_inv.swap_rows(i, j);
        }
    }

    fn add_row(&mut self, i: usize, j: usize, c: &BigInt) {
        self.a.add_row(i, j, c);
        if let Some([p, p_inv, _, _]) = &mut self.transforms {
            p.add_row(i, j, c);
            p_inv.add_col(j, i, &-c);
        }
    }

    fn add_col(&mut self, i: usize, j: usize, c: &BigInt) {
        self.a.add_col(i, j, c);
        if let Some([_, _, q, q_inv]) = &mut self.transforms {
            q.add_col(i, j, c);
            q_inv.add_row(j, i, &-c);
        }
    }

    fn neg_row(&mut self, i: usize) {
        self.a.neg_row(i);
        if let Some([p, p_inv, _, _]) = &mut self.transforms {
            p.neg_row(i);
            p_inv.neg_col(i);
        }
    }

    /// Minimal |entry| in the block `[t.., t..]`, ties broken row-major.
    fn min_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.a.nrows {
            for j in t..self.a.ncols {
                let v = self.a.get(i, j);
                if v.is_zero() {
                    continue;
                }
                match best {
                    Some((bi, bj)) if self.a.get(bi, bj).abs() <= v.abs() => {}
                    _ => best = Some((i, j)),
                }
            }
        }
        best
    }

    fn run(&mut self) {
        let n = self.a.nrows.min(self.a.ncols);
        for t in 0..n {
            let Some((pi, pj)) = self.min_pivot(t) else {
                break;
            };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                let mut dirty = false;
                for i in t + 1..self.a.nrows {
                    if self.a.get(i, t).is_zero() {
                        continue;
                    }
                    let q = self.a.get(i, t).div_floor(self.a.get(t, t));
                    self.add_row(i, t, &-q);
                    dirty |= !self.a.get(i, t).is_zero();
                }
                for j in t + 1..self.a.ncols {
                    if self.a.get(t, j).is_zero() {
                        continue;
                    }
                    let q = self.a.get(t, j).div_floor(self.a.get(t, t));
                    self.add_col(j, t, &-q);
                    dirty |= !self.a.get(t, j).is_zero();
                }
                if dirty {
                    let (pi, pj) = self.min_pivot(t).expect("nonzero block");
                    self.swap_rows(t, pi);
                    self.swap_cols(t, pj);
                    continue;
                }
                // divisibility of the remaining block by the pivot
                let pivot = self.a.get(t, t).clone();
                let offender = (t + 1..self.a.nrows)
                    .find(|&i| (t + 1..self.a.ncols).any(|j| !self.a.get(i, j).is_multiple_of(&pivot)));
                match offender {
                    Some(i) => self.add_row(t, i, &BigInt::one()),
                    None => break,
                }
            }
            if self.a.get(t, t).is_negative() {
                self.neg_row(t);
            }
        }
    }
}

/// Full Smith normal form with unimodular transforms.
pub fn smith_normal_form(a: &IntMatrix) -> Snf {
    let mut r = Reducer {
        a: a.clone(),
        transforms: Some([
            IntMatrix::identity(a.nrows),
            IntMatrix::identity(a.nrows),
            IntMatrix::identity(a.ncols),
            IntMatrix::identity(a.ncols),
        ]),
    };
    r.run();
    let [p, p_inv, q, q_inv] = r.transforms.expect("transforms tracked");
    Snf {
        s: r.a,
        p,
        p_inv,
        q,
        q_inv,
    }
}

/// Nonzero invariant factors of a dense matrix, without transforms.
pub fn dense_invariant_factors(a: &IntMatrix) -> Vec<BigInt> {
    let mut r = Reducer {
        a: a.clone(),
        transforms: None,
    };
    r.run();
    (0..a.nrows.min(a.ncols))
        .map(|i| r.a.get(i, i).clone())
        .take_while(|v| !v.is_zero())
        .collect()
}

/// Nonzero invariant factors of a sparse matrix.
///
/// Unit pivots are eliminated sparsely first; the remaining Schur complement
/// goes through the dense reduction.
pub fn invariant_factors(a: &SparseMat) -> Vec<BigInt> {
    match sparse_unit_elimination(a) {
        Some((units, rest)) => {
            let mut out = vec![BigInt::one(); units];
            out.extend(dense_invariant_factors(&rest));
            out
        }
        None => dense_invariant_factors(&IntMatrix::from_sparse(a)),
    }
}

pub fn rank(a: &SparseMat) -> usize {
    invariant_factors(a).len()
}

/// Eliminates ±1 pivots. Returns the number of pivots and the residual block,
/// or `None` if an intermediate entry would overflow `i64`.
fn sparse_unit_elimination(a: &SparseMat) -> Option<(usize, IntMatrix)> {
    use std::collections::{BTreeMap, BTreeSet};
    let mut rows: Vec<BTreeMap<usize, i64>> = vec![BTreeMap::new(); a.nrows()];
    let mut cols: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); a.ncols()];
    for (i, j, v) in a.entries() {
        rows[i].insert(j, v);
        cols[j].insert(i);
    }
    let mut live_rows: BTreeSet<usize> = (0..a.nrows()).collect();
    let mut live_cols: BTreeSet<usize> = (0..a.ncols()).collect();
    let mut units = 0;
    loop {
        // cheapest unit pivot by Markowitz count, deterministic
        let mut best: Option<(usize, usize, usize)> = None;
        for &j in &live_cols {
            let cl = cols[j].len();
            if cl == 0 {
                continue;
            }
            if matches!(best, Some((_, _, 0))) {
                break;
            }
            for &i in &cols[j] {
                let v = rows[i][&j];
                if v.abs() != 1 {
                    continue;
                }
                let cost = (cl - 1) * (rows[i].len() - 1);
                if best.is_none_or(|(_, _, c)| cost < c) {
                    best = Some((i, j, cost));
                }
            }
        }
        let Some((pi, pj, _)) = best else { break };
        let pivot_row = rows[pi].clone();
        let p = pivot_row[&pj];
        let others: Vec<usize> = cols[pj].iter().copied().filter(|&r| r != pi).collect();
        for r in others {
            let factor = rows[r][&pj].checked_mul(p)?;
            for (&c, &v) in &pivot_row {
                let delta = factor.checked_mul(v)?;
                let entry = rows[r].get(&c).copied().unwrap_or(0).checked_sub(delta)?;
                if entry == 0 {
                    rows[r].remove(&c);
                    cols[c].remove(&r);
                } else {
                    rows[r].insert(c, entry);
                    cols[c].insert(r);
                }
            }
        }
        for &c in pivot_row.keys() {
            cols[c].remove(&pi);
        }
        rows[pi].clear();
        live_rows.remove(&pi);
        live_cols.remove(&pj);
        units += 1;
    }
    let rest_rows: Vec<usize> = live_rows.into_iter().filter(|&i| !rows[i].is_empty()).collect();
    let rest_cols: Vec<usize> = live_cols.into_iter().filter(|&j| !cols[j].is_empty()).collect();
    let col_pos: BTreeMap<usize, usize> = rest_cols.iter().enumerate().map(|(k, &j)| (j, k)).collect();
    let mut rest = IntMatrix::zeros(rest_rows.len(), rest_cols.len());
    for (k, &i) in rest_rows.iter().enumerate() {
        for (&j, &v) in &rows[i] {
            rest.set(k, col_pos[&j], BigInt::from(v));
        }
    }
    Some((units, rest))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(a: &IntMatrix) -> Snf {
        let snf = smith_normal_form(a);
        assert_eq!(snf.u().mul(&snf.s).mul(snf.v()), *a);
        assert_eq!(snf.p.mul(&snf.p_inv), IntMatrix::identity(a.nrows()));
        assert_eq!(snf.q.mul(&snf.q_inv), IntMatrix::identity(a.ncols()));
        assert!(snf.p.determinant().abs().is_one());
        assert!(snf.q.determinant().abs().is_one());
        let d = snf.diagonal();
        for w in d.windows(2) {
            assert!(w[1].is_multiple_of(&w[0]));
        }
        for i in 0..a.nrows() {
            for j in 0..a.ncols() {
                if i != j {
                    assert!(snf.s.get(i, j).is_zero());
                }
            }
        }
        snf
    }

    #[test]
    fn zero_matrix() {
        let snf = check(&IntMatrix::zeros(3, 2));
        assert!(snf.s.is_zero());
    }

    #[test]
    fn gcd_lcm_forcing() {
        let snf = check(&IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]));
        assert_eq!(snf.diagonal(), vec![BigInt::from(1), BigInt::from(6)]);
    }

    #[test]
    fn triangle_boundary() {
        // ∂₁ of Δ²: columns 01, 02, 12
        let a = IntMatrix::from_rows(&[vec![-1, -1, 0], vec![1, 0, -1], vec![0, 1, 1]]);
        let snf = check(&a);
        assert_eq!(snf.diagonal(), vec![BigInt::from(1), BigInt::from(1)]);
        assert!(snf.s.get(2, 2).is_zero());
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let a = IntMatrix::from_rows(&[vec![2, 4], vec![6, 8]]);
        let snf = check(&a);
        let b = vec![BigInt::from(2), BigInt::from(6)];
        let x = snf.solve(&b).unwrap();
        assert_eq!(a.mul_vec(&x), b);
        assert!(snf.solve(&[BigInt::from(1), BigInt::from(0)]).is_none());
    }

    #[test]
    fn sparse_path_matches_dense() {
        let a = SparseMat::from_dense(&[vec![1, 2, 0, 3], vec![2, 4, 2, 0], vec![0, 2, 4, 6], vec![1, 0, 0, 1]]);
        assert_eq!(
            invariant_factors(&a),
            dense_invariant_factors(&IntMatrix::from_sparse(&a))
        );
    }

    proptest::proptest! {
        #[test]
        fn snf_reconstructs(rows in proptest::collection::vec(proptest::collection::vec(-6i64..=6, 4), 0..5)) {
            let a = if rows.is_empty() { IntMatrix::zeros(0, 4) } else { IntMatrix::from_rows(&rows) };
            check(&a);
        }

        #[test]
        fn sparse_agrees_with_dense(rows in proptest::collection::vec(proptest::collection::vec(-3i64..=3, 5), 1..6)) {
            let s = SparseMat::from_dense(&rows);
            proptest::prop_assert_eq!(invariant_factors(&s), dense_invariant_factors(&IntMatrix::from_rows(&rows)));
        }
    }
}
