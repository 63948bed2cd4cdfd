//! Finite simplicial complexes, canonical orientations, barycentric subdivision
//! and dual cells.
//!
//! A simplex is a strictly ascending vertex tuple; it is oriented by that order.
//! Simplices are numbered by `(dimension, lexicographic tuple)`, so a proper
//! face always has a smaller id than the simplex itself.

use std::collections::{BTreeSet, HashMap};

use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertices: Vec<i64>,
    simplices: Vec<Vec<i64>>,
    index: HashMap<Vec<i64>, usize>,
    /// Codimension-one faces with incidence numbers.
    boundary: Vec<Vec<(usize, i64)>>,
}

impl SimplicialComplex {
    /// Face-closes a list of simplices. Tuples are sorted; repeated vertices are rejected.
    pub fn build(maximal: &[Vec<i64>]) -> Result<Self> {
        if maximal.is_empty() {
            return Err(Error::MalformedInput("a complex needs at least one simplex".into()));
        }
        let mut all: BTreeSet<Vec<i64>> = BTreeSet::new();
        for tuple in maximal {
            if tuple.is_empty() {
                return Err(Error::MalformedInput("empty simplex".into()));
            }
            let mut t = tuple.clone();
            t.sort_unstable();
            if t.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::MalformedInput(format!("duplicate vertex in simplex {tuple:?}")));
            }
            if t.len() > 24 {
                return Err(Error::MalformedInput(format!(
                    "simplex of dimension {} is too large",
                    t.len() - 1
                )));
            }
            let n = t.len();
            for mask in 1u32..(1u32 << n) {
                let face: Vec<i64> = (0..n).filter(|&i| mask & (1 << i) != 0).map(|i| t[i]).collect();
                all.insert(face);
            }
        }
        let mut simplices: Vec<Vec<i64>> = all.into_iter().collect();
        simplices.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        let index: HashMap<Vec<i64>, usize> = simplices.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
        let boundary = simplices
            .iter()
            .map(|s| {
                if s.len() == 1 {
                    return Vec::new();
                }
                (0..s.len())
                    .map(|i| {
                        let mut f = s.clone();
                        f.remove(i);
                        (index[&f], if i % 2 == 0 { 1 } else { -1 })
                    })
                    .collect()
            })
            .collect();
        let vertices = simplices.iter().filter(|s| s.len() == 1).map(|s| s[0]).collect();
        Ok(SimplicialComplex {
            vertices,
            simplices,
            index,
            boundary,
        })
    }

    pub fn point() -> Self {
        Self::build(&[vec![0]]).expect("point")
    }

    /// The full simplex on vertices `0..=n`.
    pub fn simplex(n: usize) -> Self {
        Self::build(&[(0..=n as i64).collect()]).expect("simplex")
    }

    /// The boundary of the `n`-simplex (an `(n-1)`-sphere), `n ≥ 1`.
    pub fn simplex_boundary(n: usize) -> Self {
        let full: Vec<i64> = (0..=n as i64).collect();
        let facets: Vec<Vec<i64>> = (0..=n)
            .map(|i| full.iter().copied().filter(|&v| v != i as i64).collect())
            .collect();
        Self::build(&facets).expect("sphere")
    }

    /// The 6-vertex triangulation of the real projective plane.
    pub fn rp2() -> Self {
        let facets = [
            [0, 1, 2],
            [0, 2, 3],
            [0, 3, 4],
            [0, 4, 5],
            [0, 5, 1],
            [1, 2, 4],
            [2, 3, 5],
            [3, 4, 1],
            [4, 5, 2],
            [5, 1, 3],
        ];
        Self::build(&facets.iter().map(|f| f.to_vec()).collect::<Vec<_>>()).expect("rp2")
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn vertices(&self) -> &[i64] {
        &self.vertices
    }

    pub fn vertices_of(&self, s: usize) -> &[i64] {
        &self.simplices[s]
    }

    /// `|σ|`, the dimension.
    pub fn dim(&self, s: usize) -> usize {
        self.simplices[s].len() - 1
    }

    pub fn dimension(&self) -> usize {
        self.simplices.iter().map(|s| s.len() - 1).max().unwrap_or(0)
    }

    pub fn find(&self, vertices: &[i64]) -> Option<usize> {
        let mut v = vertices.to_vec();
        v.sort_unstable();
        self.index.get(&v).copied()
    }

    pub fn label(&self, s: usize) -> String {
        let verts: Vec<String> = self.simplices[s].iter().map(i64::to_string).collect();
        format!("[{}]", verts.join(","))
    }

    /// `σ ≤ τ`: every vertex of `σ` is a vertex of `τ`.
    pub fn is_face(&self, sigma: usize, tau: usize) -> bool {
        let (a, b) = (&self.simplices[sigma], &self.simplices[tau]);
        a.len() <= b.len() && a.iter().all(|v| b.binary_search(v).is_ok())
    }

    /// Codimension-one faces of `s` with their incidence numbers `[s : face]`.
    pub fn boundary(&self, s: usize) -> &[(usize, i64)] {
        &self.boundary[s]
    }

    /// Simplices having `s` as a codimension-one face, with `[coface : s]`.
    pub fn cofaces(&self, s: usize) -> Vec<(usize, i64)> {
        (0..self.len())
            .filter_map(|t| {
                self.boundary[t]
                    .iter()
                    .find(|&&(f, _)| f == s)
                    .map(|&(_, sign)| (t, sign))
            })
            .collect()
    }

    /// `[τ : σ]`: `(-1)^i` when `σ` is `τ` with its `i`-th vertex removed, else 0.
    pub fn incidence(&self, tau: usize, sigma: usize) -> i64 {
        incidence(&self.simplices[tau], &self.simplices[sigma])
    }

    /// Number of simplices in each dimension.
    pub fn f_vector(&self) -> Vec<usize> {
        let mut f = vec![0; self.dimension() + 1];
        for s in &self.simplices {
            f[s.len() - 1] += 1;
        }
        f
    }

    /// `σ ∩ ρ` if it is a simplex of the complex.
    pub fn meet(&self, a: usize, b: usize) -> Option<usize> {
        let sa = &self.simplices[a];
        let common: Vec<i64> = sa
            .iter()
            .copied()
            .filter(|v| self.simplices[b].binary_search(v).is_ok())
            .collect();
        self.index.get(&common).copied()
    }

    /// The smallest simplex containing both, if it exists.
    pub fn join(&self, a: usize, b: usize) -> Option<usize> {
        let mut all: Vec<i64> = self.simplices[a].iter().chain(&self.simplices[b]).copied().collect();
        all.sort_unstable();
        all.dedup();
        self.index.get(&all).copied()
    }

    /// Number of 1-chains `σ ≤ τ`, i.e. the cells of the dual cell decomposition.
    pub fn one_chain_count(&self) -> usize {
        (0..self.len()).map(|t| (1usize << (self.dim(t) + 1)) - 1).sum()
    }

    /// Whether a set of simplex ids is closed under taking faces.
    pub fn is_subcomplex(&self, set: &BTreeSet<usize>) -> bool {
        set.iter()
            .all(|&s| self.boundary[s].iter().all(|(f, _)| set.contains(f)))
    }

    /// The closure of a set of simplices under taking faces.
    pub fn closure(&self, set: impl IntoIterator<Item = usize>) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        let mut stack: Vec<usize> = set.into_iter().collect();
        while let Some(s) = stack.pop() {
            if out.insert(s) {
                stack.extend(self.boundary[s].iter().map(|&(f, _)| f));
            }
        }
        out
    }
}

/// `[τ : σ]` on raw ascending tuples.
pub fn incidence(tau: &[i64], sigma: &[i64]) -> i64 {
    if tau.len() != sigma.len() + 1 {
        return 0;
    }
    for i in 0..tau.len() {
        let rest = tau[..i].iter().chain(&tau[i + 1..]);
        if rest.eq(sigma.iter()) {
            return if i % 2 == 0 { 1 } else { -1 };
        }
    }
    0
}

/// The barycentric subdivision `K'`: vertices are the simplices of `K`, and an
/// `r`-simplex is a chain `σ_0 < σ_1 < … < σ_r`.
#[derive(Clone, Debug)]
pub struct BarycentricComplex {
    complex: SimplicialComplex,
}

impl BarycentricComplex {
    pub fn new(k: &SimplicialComplex) -> Self {
        let mut chains: Vec<Vec<i64>> = Vec::new();
        // maximal chains are enough; `build` closes under faces
        fn extend(k: &SimplicialComplex, chain: &mut Vec<usize>, out: &mut Vec<Vec<i64>>) {
            let last = *chain.last().expect("nonempty chain");
            let up = k.cofaces(last);
            if up.is_empty() {
                out.push(chain.iter().map(|&s| s as i64).collect());
                return;
            }
            for (t, _) in up {
                chain.push(t);
                extend(k, chain, out);
                chain.pop();
            }
        }
        for v in (0..k.len()).filter(|&s| k.dim(s) == 0) {
            extend(k, &mut vec![v], &mut chains);
        }
        let complex = SimplicialComplex::build(&chains).expect("chains are valid simplices");
        BarycentricComplex { complex }
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    /// The chain `σ_0 < … < σ_r` of original simplex ids behind a barycentric simplex.
    pub fn chain(&self, s: usize) -> Vec<usize> {
        self.complex.vertices_of(s).iter().map(|&v| v as usize).collect()
    }

    /// The carrier: the largest original simplex `σ_r` of the chain.
    pub fn carrier(&self, s: usize) -> usize {
        *self.chain(s).last().expect("nonempty chain")
    }

    /// The closed dual cell `D_τ σ`: barycentric simplices whose chain lies in `[σ, τ]`.
    pub fn dual_cell(&self, k: &SimplicialComplex, sigma: usize, tau: usize) -> Result<BTreeSet<usize>> {
        if !k.is_face(sigma, tau) {
            return Err(Error::Domain(format!(
                "{} is not a face of {}",
                k.label(sigma),
                k.label(tau)
            )));
        }
        Ok((0..self.complex.len())
            .filter(|&s| self.chain(s).iter().all(|&x| k.is_face(sigma, x) && k.is_face(x, tau)))
            .collect())
    }

    /// The dual cone `D_K σ`, the union of `D_τ σ` over `τ ≥ σ`.
    pub fn dual_cone(&self, k: &SimplicialComplex, sigma: usize) -> BTreeSet<usize> {
        (0..self.complex.len())
            .filter(|&s| self.chain(s).iter().all(|&x| k.is_face(sigma, x)))
            .collect()
    }

    /// The open dual cell containing a barycentric simplex: `(min, max)` of its chain.
    pub fn open_cell_of(&self, s: usize) -> (usize, usize) {
        let c = self.chain(s);
        (c[0], *c.last().expect("nonempty chain"))
    }

    /// Codimension-one faces of `D_τ σ` read off the subdivision: the open cells
    /// inside the closed cell, grouped by `(min, max)`, whose dimension is one less.
    pub fn geometric_faces(&self, k: &SimplicialComplex, sigma: usize, tau: usize) -> Result<BTreeSet<(usize, usize)>> {
        let cell = self.dual_cell(k, sigma, tau)?;
        let mut dims: HashMap<(usize, usize), usize> = HashMap::new();
        for &s in &cell {
            let key = self.open_cell_of(s);
            let d = self.complex.dim(s);
            let e = dims.entry(key).or_insert(0);
            *e = (*e).max(d);
        }
        let own = dims.get(&(sigma, tau)).copied().unwrap_or(0);
        Ok(dims
            .into_iter()
            .filter(|&(key, d)| key != (sigma, tau) && d + 1 == own)
            .map(|(key, _)| key)
            .collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn face_counts() {
        assert_eq!(SimplicialComplex::build(&[vec![0]]).unwrap().len(), 1);
        assert_eq!(SimplicialComplex::simplex(2).len(), 7);
        assert_eq!(SimplicialComplex::simplex_boundary(3).len(), 14);
    }

    #[test]
    fn rejects_duplicate_vertex() {
        assert!(matches!(
            SimplicialComplex::build(&[vec![0, 0, 1]]),
            Err(Error::MalformedInput(_))
        ));
        assert!(SimplicialComplex::build(&[]).is_err());
    }

    #[test]
    fn tuples_are_normalized() {
        let k = SimplicialComplex::build(&[vec![2, 0, 1]]).unwrap();
        assert!(k.find(&[0, 1, 2]).is_some());
        assert_eq!(k.vertices_of(k.len() - 1), &[0, 1, 2]);
    }

    #[test]
    fn incidence_examples() {
        assert_eq!(incidence(&[0, 1], &[1]), 1);
        assert_eq!(incidence(&[0, 1], &[0]), -1);
        assert_eq!(incidence(&[0, 1, 2], &[0, 2]), -1);
        assert_eq!(incidence(&[0, 1, 2], &[0]), 0);
    }

    #[test]
    fn boundary_squares_to_zero() {
        for k in [SimplicialComplex::simplex(3), SimplicialComplex::rp2()] {
            for t in 0..k.len() {
                let mut acc: HashMap<usize, i64> = HashMap::new();
                for &(f, a) in k.boundary(t) {
                    for &(g, b) in k.boundary(f) {
                        *acc.entry(g).or_default() += a * b;
                    }
                }
                assert!(acc.values().all(|&v| v == 0));
            }
        }
    }

    #[test]
    fn barycentric_counts() {
        let edge = BarycentricComplex::new(&SimplicialComplex::simplex(1));
        assert_eq!(edge.complex().f_vector(), vec![3, 2]);
        let tri = BarycentricComplex::new(&SimplicialComplex::simplex(2));
        assert_eq!(tri.complex().f_vector(), vec![7, 12, 6]);
        let pt = BarycentricComplex::new(&SimplicialComplex::point());
        assert_eq!(pt.complex().f_vector(), vec![1]);
    }

    #[test]
    fn dual_cell_of_vertex_in_triangle() {
        let k = SimplicialComplex::simplex(2);
        let kb = BarycentricComplex::new(&k);
        let v0 = k.find(&[0]).unwrap();
        let top = k.find(&[0, 1, 2]).unwrap();
        let cell = kb.dual_cell(&k, v0, top).unwrap();
        let triangles = cell.iter().filter(|&&s| kb.complex().dim(s) == 2).count();
        // The quadrilateral: chains v0 < e < Δ² for the two edges at v0,
        // subdivided at the barycenter into two triangles.
        assert_eq!(triangles, 2);
        assert_eq!(cell.len(), 4 + 5 + 2);
        let same = kb.dual_cell(&k, v0, v0).unwrap();
        assert_eq!(same.len(), 1);
        assert!(kb.dual_cell(&k, top, v0).is_err());
    }

    #[test]
    fn open_cells_partition_subdivision() {
        let k = SimplicialComplex::simplex_boundary(3);
        let kb = BarycentricComplex::new(&k);
        for s in 0..kb.complex().len() {
            let (lo, hi) = kb.open_cell_of(s);
            let owners = (0..k.len())
                .flat_map(|a| (0..k.len()).map(move |b| (a, b)))
                .filter(|&(a, b)| k.is_face(a, b))
                .filter(|&(a, b)| {
                    let c = kb.chain(s);
                    c[0] == a && *c.last().unwrap() == b
                })
                .count();
            assert_eq!(owners, 1);
            assert!(k.is_face(lo, hi));
        }
    }
}
