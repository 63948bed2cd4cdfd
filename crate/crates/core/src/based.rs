//! Based modules over a finite poset, triangular morphisms, and functor modules.
//!
//! A based module is a list of generators, each sitting at an object of the
//! poset. A morphism is one integer matrix (rows = target generators, columns =
//! source generators) whose entry at (row at `s`, column at `t`) may be nonzero
//! only when `s ≤ t`: components go from bigger to smaller objects.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use crate::matrix::SparseMat;
use crate::poset::Poset;
use crate::{Error, Result};

pub fn same_poset(a: &Arc<Poset>, b: &Arc<Poset>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

#[derive(Clone, Debug)]
pub struct BasedModule {
    poset: Arc<Poset>,
    objects: Vec<usize>,
    labels: Vec<String>,
}

impl BasedModule {
    pub fn new(poset: Arc<Poset>, objects: Vec<usize>, labels: Vec<String>) -> Result<Self> {
        if objects.len() != labels.len() {
            return Err(Error::Domain("one label per generator expected".into()));
        }
        if let Some(&bad) = objects.iter().find(|&&o| o >= poset.len()) {
            return Err(Error::Domain(format!("object {bad} outside the poset")));
        }
        Ok(BasedModule { poset, objects, labels })
    }

    /// `ℤ_σ`: one generator at `σ`.
    pub fn point_at(poset: Arc<Poset>, object: usize) -> Self {
        let label = poset.label(object).to_string();
        BasedModule {
            poset,
            objects: vec![object],
            labels: vec![label],
        }
    }

    pub fn poset(&self) -> &Arc<Poset> {
        &self.poset
    }

    pub fn len(&self) -> usize {
        self.objects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    pub fn object(&self, g: usize) -> usize {
        self.objects[g]
    }

    pub fn objects(&self) -> &[usize] {
        &self.objects
    }

    pub fn label(&self, g: usize) -> &str {
        &self.labels[g]
    }

    /// Rank of `M(σ)`.
    pub fn rank_at(&self, object: usize) -> usize {
        self.objects.iter().filter(|&&o| o == object).count()
    }

    /// Generators of `[M](σ)`, in generator order.
    pub fn embedded_at(&self, object: usize) -> Vec<usize> {
        (0..self.len())
            .filter(|&g| self.poset.leq(self.objects[g], object))
            .collect()
    }

    /// Rank of `colim [M] = ⊕ M(σ)`.
    pub fn colim_rank(&self) -> usize {
        self.len()
    }

    /// The same generators over the opposite poset.
    pub fn dual(&self, opposite: Arc<Poset>) -> Result<Self> {
        if *opposite != self.poset.opposite() {
            return Err(Error::Domain("dual needs the opposite poset".into()));
        }
        Ok(BasedModule {
            poset: opposite,
            objects: self.objects.clone(),
            labels: self.labels.iter().map(|l| format!("{l}^")).collect(),
        })
    }

    /// `F_* M` for a monotone `F` given on object indices.
    pub fn induce(&self, target: Arc<Poset>, map: &[usize]) -> Result<Self> {
        if map.len() != self.poset.len() || !self.poset.is_monotone(&target, map) {
            return Err(Error::Domain("induction along a non-monotone map".into()));
        }
        Ok(BasedModule {
            poset: target,
            objects: self.objects.iter().map(|&o| map[o]).collect(),
            labels: self.labels.clone(),
        })
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        if !same_poset(&self.poset, &other.poset) {
            return Err(Error::Domain("direct sum over different posets".into()));
        }
        let mut out = self.clone();
        out.objects.extend_from_slice(&other.objects);
        out.labels.extend(other.labels.iter().cloned());
        Ok(out)
    }

    fn same_shape(&self, other: &Self) -> bool {
        same_poset(&self.poset, &other.poset) && self.objects == other.objects
    }
}

/// Checks the triangular support condition for a matrix between based generator lists.
pub fn first_non_triangular(poset: &Poset, rows: &[usize], cols: &[usize], m: &SparseMat) -> Option<(usize, usize)> {
    m.entries()
        .find(|&(r, c, _)| !poset.leq(rows[r], cols[c]))
        .map(|(r, c, _)| (r, c))
}

#[derive(Clone, Debug)]
pub struct BasedMorphism {
    source: BasedModule,
    target: BasedModule,
    matrix: SparseMat,
}

impl BasedMorphism {
    pub fn new(source: BasedModule, target: BasedModule, matrix: SparseMat) -> Result<Self> {
        if !same_poset(&source.poset, &target.poset) {
            return Err(Error::Domain("morphism between modules over different posets".into()));
        }
        if matrix.nrows() != target.len() || matrix.ncols() != source.len() {
            return Err(Error::Domain("matrix shape does not match the modules".into()));
        }
        if let Some((r, c)) = first_non_triangular(&source.poset, &target.objects, &source.objects, &matrix) {
            return Err(Error::Domain(format!(
                "component from {} to {} is not bigger-to-smaller",
                source.poset.label(source.objects[c]),
                source.poset.label(target.objects[r])
            )));
        }
        Ok(BasedMorphism { source, target, matrix })
    }

    /// Assembles a morphism from components `f_{σ≤τ}: M(τ) → N(σ)`, keyed by `(σ, τ)`.
    /// Each component is dense with shape `rank N(σ) × rank M(τ)`.
    pub fn from_components(
        source: BasedModule,
        target: BasedModule,
        components: &BTreeMap<(usize, usize), Vec<Vec<i64>>>,
    ) -> Result<Self> {
        let local = |m: &BasedModule| -> HashMap<usize, Vec<usize>> {
            let mut out: HashMap<usize, Vec<usize>> = HashMap::new();
            for (g, &o) in m.objects.iter().enumerate() {
                out.entry(o).or_default().push(g);
            }
            out
        };
        let (src, tgt) = (local(&source), local(&target));
        let mut trip = Vec::new();
        for (&(s, t), block) in components {
            let rows = tgt.get(&s).map_or(&[][..], Vec::as_slice);
            let cols = src.get(&t).map_or(&[][..], Vec::as_slice);
            if block.len() != rows.len() || block.iter().any(|r| r.len() != cols.len()) {
                return Err(Error::Domain(format!("component ({s}, {t}) has the wrong shape")));
            }
            for (i, row) in block.iter().enumerate() {
                for (j, &v) in row.iter().enumerate() {
                    trip.push((rows[i], cols[j], v));
                }
            }
        }
        let m = SparseMat::from_triplets(target.len(), source.len(), trip);
        Self::new(source, target, m)
    }

    pub fn identity(m: &BasedModule) -> Self {
        BasedMorphism {
            source: m.clone(),
            target: m.clone(),
            matrix: SparseMat::identity(m.len()),
        }
    }

    pub fn zero(source: &BasedModule, target: &BasedModule) -> Self {
        BasedMorphism {
            source: source.clone(),
            target: target.clone(),
            matrix: SparseMat::zeros(target.len(), source.len()),
        }
    }

    pub fn source(&self) -> &BasedModule {
        &self.source
    }

    pub fn target(&self) -> &BasedModule {
        &self.target
    }

    pub fn matrix(&self) -> &SparseMat {
        &self.matrix
    }

    /// Nonzero components keyed by `(σ, τ)`, each `rank N(σ) × rank M(τ)`.
    pub fn components(&self) -> BTreeMap<(usize, usize), SparseMat> {
        type Triplets = Vec<(usize, usize, i64)>;
        let mut pairs: BTreeMap<(usize, usize), Triplets> = BTreeMap::new();
        let pos = |m: &BasedModule, g: usize| m.objects[..g].iter().filter(|&&o| o == m.objects[g]).count();
        for (r, c, v) in self.matrix.entries() {
            let key = (self.target.objects[r], self.source.objects[c]);
            pairs
                .entry(key)
                .or_default()
                .push((pos(&self.target, r), pos(&self.source, c), v));
        }
        pairs
            .into_iter()
            .map(|((s, t), trip)| {
                let m = SparseMat::from_triplets(self.target.rank_at(s), self.source.rank_at(t), trip);
                ((s, t), m)
            })
            .collect()
    }

    /// `g ∘ f` with components `Σ_ρ g_{σ≤ρ} f_{ρ≤τ}`.
    pub fn compose(g: &BasedMorphism, f: &BasedMorphism) -> Result<Self> {
        if !f.target.same_shape(&g.source) {
            return Err(Error::Composition("target of f is not the source of g".into()));
        }
        Ok(BasedMorphism {
            source: f.source.clone(),
            target: g.target.clone(),
            matrix: g.matrix.mul(&f.matrix),
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if !self.source.same_shape(&other.source) || !self.target.same_shape(&other.target) {
            return Err(Error::Composition("sum of morphisms with different ends".into()));
        }
        Ok(BasedMorphism {
            source: self.source.clone(),
            target: self.target.clone(),
            matrix: self.matrix.add(&other.matrix),
        })
    }

    /// `f^*: N^* → M^*`, components transposed.
    pub fn dual(&self, opposite: Arc<Poset>) -> Result<Self> {
        Self::new(
            self.target.dual(opposite.clone())?,
            self.source.dual(opposite)?,
            self.matrix.transpose(),
        )
    }

    /// The matrix `colim [f] = Σ f_α`.
    pub fn colim(&self) -> SparseMat {
        self.matrix.clone()
    }

    /// `[f](σ): [M](σ) → [N](σ)`.
    pub fn embedded_at(&self, object: usize) -> SparseMat {
        self.matrix
            .submatrix(&self.target.embedded_at(object), &self.source.embedded_at(object))
    }

    pub fn embed(&self) -> FunctorMap {
        let source = FunctorModule::embed(&self.source);
        let target = FunctorModule::embed(&self.target);
        let components = (0..self.source.poset.len()).map(|o| self.embedded_at(o)).collect();
        FunctorMap {
            source,
            target,
            components,
        }
    }

    pub fn induce(&self, target: Arc<Poset>, map: &[usize]) -> Result<Self> {
        Self::new(
            self.source.induce(target.clone(), map)?,
            self.target.induce(target, map)?,
            self.matrix.clone(),
        )
    }

    /// The subset form of the morphism condition: each `f(M(σ))` lies in
    /// `⊕_{ρ≤σ} N(ρ)`.
    pub fn satisfies_subset_condition(poset: &Poset, source: &[usize], target: &[usize], m: &SparseMat) -> bool {
        (0..m.ncols()).all(|c| m.column(c).iter().all(|&(r, _)| poset.leq(target[r], source[c])))
    }
}

/// A functor from the poset to finitely generated free abelian groups.
#[derive(Clone, Debug)]
pub struct FunctorModule {
    poset: Arc<Poset>,
    ranks: Vec<usize>,
    /// Structure maps for strict pairs `σ < τ`, `V(σ) → V(τ)`.
    maps: HashMap<(usize, usize), SparseMat>,
}

impl FunctorModule {
    pub fn new(poset: Arc<Poset>, ranks: Vec<usize>, maps: HashMap<(usize, usize), SparseMat>) -> Result<Self> {
        let n = poset.len();
        if ranks.len() != n {
            return Err(Error::Domain("one rank per object expected".into()));
        }
        for a in 0..n {
            for b in 0..n {
                if !poset.lt(a, b) {
                    continue;
                }
                let m = maps
                    .get(&(a, b))
                    .ok_or_else(|| Error::Domain(format!("missing structure map {a} -> {b}")))?;
                if m.nrows() != ranks[b] || m.ncols() != ranks[a] {
                    return Err(Error::Domain(format!("structure map {a} -> {b} has the wrong shape")));
                }
            }
        }
        let fm = FunctorModule { poset, ranks, maps };
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if fm.poset.lt(a, b) && fm.poset.lt(b, c) && fm.map(b, c).mul(&fm.map(a, b)) != fm.map(a, c) {
                        return Err(Error::Domain(format!(
                            "structure maps do not compose at {a} < {b} < {c}"
                        )));
                    }
                }
            }
        }
        Ok(fm)
    }

    /// `[M]`: `[M](σ)` spanned by the generators at objects `≤ σ`, inclusions between them.
    pub fn embed(m: &BasedModule) -> Self {
        let poset = m.poset.clone();
        let n = poset.len();
        let bases: Vec<Vec<usize>> = (0..n).map(|o| m.embedded_at(o)).collect();
        let mut maps = HashMap::new();
        for a in 0..n {
            for b in 0..n {
                if poset.lt(a, b) {
                    maps.insert((a, b), inclusion(&bases[a], &bases[b]));
                }
            }
        }
        FunctorModule {
            poset,
            ranks: bases.iter().map(Vec::len).collect(),
            maps,
        }
    }

    /// `ℤ^P`: `ℤ` at every object, identities.
    pub fn trivial(poset: Arc<Poset>) -> Self {
        let n = poset.len();
        let mut maps = HashMap::new();
        for a in 0..n {
            for b in 0..n {
                if poset.lt(a, b) {
                    maps.insert((a, b), SparseMat::identity(1));
                }
            }
        }
        FunctorModule {
            poset,
            ranks: vec![1; n],
            maps,
        }
    }

    pub fn poset(&self) -> &Arc<Poset> {
        &self.poset
    }

    pub fn rank(&self, object: usize) -> usize {
        self.ranks[object]
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    /// Structure map for `a ≤ b`.
    pub fn map(&self, a: usize, b: usize) -> SparseMat {
        assert!(self.poset.leq(a, b), "no structure map for incomparable objects");
        if a == b {
            SparseMat::identity(self.ranks[a])
        } else {
            self.maps[&(a, b)].clone()
        }
    }

    /// Rank of the group of natural transformations `self → other`.
    pub fn hom_rank(&self, other: &FunctorModule) -> usize {
        let (constraints, unknowns) = self.naturality_constraints(other);
        unknowns - crate::snf::rank(&constraints)
    }

    /// Linear constraints on `(φ_σ)_σ` (each flattened row-major) expressing naturality.
    pub fn naturality_constraints(&self, other: &FunctorModule) -> (SparseMat, usize) {
        let n = self.poset.len();
        let mut offset = vec![0; n + 1];
        for o in 0..n {
            offset[o + 1] = offset[o] + other.ranks[o] * self.ranks[o];
        }
        let var = |o: usize, i: usize, j: usize| offset[o] + i * self.ranks[o] + j;
        let mut trip = Vec::new();
        let mut row = 0;
        for a in 0..n {
            for b in 0..n {
                if !self.poset.lt(a, b) {
                    continue;
                }
                // other(a≤b) φ_a − φ_b self(a≤b) = 0, entry (i, j) with i ∈ other(b), j ∈ self(a)
                let om = other.map(a, b);
                let sm = self.map(a, b);
                for i in 0..other.ranks[b] {
                    for j in 0..self.ranks[a] {
                        for k in 0..other.ranks[a] {
                            let v = om.get(i, k);
                            if v != 0 {
                                trip.push((row, var(a, k, j), v));
                            }
                        }
                        for k in 0..self.ranks[b] {
                            let v = sm.get(k, j);
                            if v != 0 {
                                trip.push((row, var(b, i, k), -v));
                            }
                        }
                        row += 1;
                    }
                }
            }
        }
        (SparseMat::from_triplets(row, offset[n], trip), offset[n])
    }
}

pub fn inclusion(small: &[usize], big: &[usize]) -> SparseMat {
    let pos: HashMap<usize, usize> = big.iter().enumerate().map(|(i, &g)| (g, i)).collect();
    SparseMat::from_triplets(
        big.len(),
        small.len(),
        small.iter().enumerate().map(|(j, g)| (pos[g], j, 1)),
    )
}

/// A natural transformation between functor modules, one matrix per object.
#[derive(Clone, Debug)]
pub struct FunctorMap {
    pub source: FunctorModule,
    pub target: FunctorModule,
    pub components: Vec<SparseMat>,
}

impl FunctorMap {
    pub fn is_natural(&self) -> bool {
        let p = &self.source.poset;
        (0..p.len()).all(|a| {
            (0..p.len()).all(|b| {
                !p.lt(a, b)
                    || self.target.map(a, b).mul(&self.components[a]) == self.components[b].mul(&self.source.map(a, b))
            })
        })
    }

    pub fn compose(g: &FunctorMap, f: &FunctorMap) -> FunctorMap {
        FunctorMap {
            source: f.source.clone(),
            target: g.target.clone(),
            components: g.components.iter().zip(&f.components).map(|(a, b)| a.mul(b)).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::PosetElem;
    use crate::simplicial::SimplicialComplex;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};

    fn edge() -> (SimplicialComplex, Arc<Poset>) {
        let k = SimplicialComplex::simplex(1);
        let p = Arc::new(Poset::faces(&k));
        (k, p)
    }

    fn random_module(p: &Arc<Poset>, rng: &mut impl Rng) -> BasedModule {
        let mut objects = Vec::new();
        for o in 0..p.len() {
            for _ in 0..rng.gen_range(0..=2) {
                objects.push(o);
            }
        }
        let labels = objects.iter().map(|o| format!("g{o}")).collect();
        BasedModule::new(p.clone(), objects, labels).unwrap()
    }

    fn random_morphism(src: &BasedModule, tgt: &BasedModule, rng: &mut impl Rng) -> BasedMorphism {
        let mut trip = Vec::new();
        for r in 0..tgt.len() {
            for c in 0..src.len() {
                if src.poset().leq(tgt.object(r), src.object(c)) && rng.gen_bool(0.6) {
                    trip.push((r, c, rng.gen_range(-2..=2)));
                }
            }
        }
        BasedMorphism::new(
            src.clone(),
            tgt.clone(),
            SparseMat::from_triplets(tgt.len(), src.len(), trip),
        )
        .unwrap()
    }

    #[test]
    fn unit_law_component() {
        let (k, p) = edge();
        let v0 = k.find(&[0]).unwrap();
        let e = k.find(&[0, 1]).unwrap();
        let m = BasedModule::point_at(p.clone(), e);
        let n = BasedModule::point_at(p.clone(), v0);
        let f = BasedMorphism::from_components(m, n.clone(), &BTreeMap::from([((v0, e), vec![vec![1]])])).unwrap();
        let g = BasedMorphism::from_components(n.clone(), n, &BTreeMap::from([((v0, v0), vec![vec![1]])])).unwrap();
        let gf = BasedMorphism::compose(&g, &f).unwrap();
        assert_eq!(gf.components()[&(v0, e)], SparseMat::from_dense(&[vec![1]]));
    }

    #[test]
    fn rejects_smaller_to_bigger() {
        let (k, p) = edge();
        let v0 = k.find(&[0]).unwrap();
        let e = k.find(&[0, 1]).unwrap();
        let m = BasedModule::point_at(p.clone(), v0);
        let n = BasedModule::point_at(p, e);
        assert!(matches!(
            BasedMorphism::new(m, n, SparseMat::from_dense(&[vec![1]])),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn composition_mismatch() {
        let (k, p) = edge();
        let a = BasedModule::point_at(p.clone(), k.find(&[0]).unwrap());
        let b = BasedModule::point_at(p, k.find(&[1]).unwrap());
        let f = BasedMorphism::identity(&a);
        let g = BasedMorphism::identity(&b);
        assert!(matches!(BasedMorphism::compose(&g, &f), Err(Error::Composition(_))));
    }

    #[test]
    fn embedding_ranks() {
        let (k, p) = edge();
        let v0 = k.find(&[0]).unwrap();
        let v1 = k.find(&[1]).unwrap();
        let e = k.find(&[0, 1]).unwrap();
        let m = BasedModule::new(p.clone(), vec![v0, e], vec!["a".into(), "b".into()]).unwrap();
        let fm = FunctorModule::embed(&m);
        assert_eq!((fm.rank(e), fm.rank(v0), fm.rank(v1)), (2, 1, 0));
        // [ℤ_τ] has rank one exactly on the objects above τ
        let z = FunctorModule::embed(&BasedModule::point_at(p.clone(), v0));
        assert_eq!((z.rank(e), z.rank(v0), z.rank(v1)), (1, 1, 0));
        let id = BasedMorphism::identity(&m).embed();
        assert!(id
            .components
            .iter()
            .enumerate()
            .all(|(o, c)| *c == SparseMat::identity(fm.rank(o))));
        assert!(FunctorModule::new(p, fm.ranks.clone(), fm.maps.clone()).is_ok());
    }

    #[test]
    fn functoriality_violation_detected() {
        let k = SimplicialComplex::simplex(2);
        let p = Arc::new(Poset::faces(&k));
        let mut fm = FunctorModule::trivial(p.clone());
        let key = (k.find(&[0]).unwrap(), k.find(&[0, 1, 2]).unwrap());
        fm.maps.insert(key, SparseMat::from_dense(&[vec![2]]));
        assert!(FunctorModule::new(p, fm.ranks.clone(), fm.maps).is_err());
    }

    #[test]
    fn induction_examples() {
        let k = SimplicialComplex::simplex(2);
        let p = Arc::new(Poset::faces(&k));
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let m = random_module(&p, &mut rng);
        let id: Vec<usize> = (0..p.len()).collect();
        assert_eq!(m.induce(p.clone(), &id).unwrap().objects(), m.objects());
        let one = Arc::new(Poset::point());
        let c = m.induce(one, &vec![0; p.len()]).unwrap();
        assert_eq!(c.rank_at(0), m.colim_rank());
        // π_K: DK → K sends ℤ_(σ,τ) to ℤ_τ
        let dk = Arc::new(p.chains());
        let pi: Vec<usize> = (0..dk.len())
            .map(|x| match dk.elem(x) {
                PosetElem::Chain { to, .. } => to,
                _ => unreachable!(),
            })
            .collect();
        let x = dk.len() - 1;
        let PosetElem::Chain { to, .. } = dk.elem(x) else {
            unreachable!()
        };
        let z = BasedModule::point_at(dk.clone(), x).induce(p.clone(), &pi).unwrap();
        assert_eq!(z.objects(), &[to]);
        let swap: Vec<usize> = (0..p.len()).rev().collect();
        assert!(m.induce(p, &swap).is_err());
    }

    #[test]
    fn double_dual_is_identity() {
        let k = SimplicialComplex::simplex(2);
        let p = Arc::new(Poset::faces(&k));
        let op = Arc::new(p.opposite());
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let m = random_module(&p, &mut rng);
        let n = random_module(&p, &mut rng);
        let f = random_morphism(&m, &n, &mut rng);
        let ff = f.dual(op.clone()).unwrap().dual(p.clone()).unwrap();
        assert_eq!(ff.matrix(), f.matrix());
        assert_eq!(f.dual(op).unwrap().source().objects(), n.objects());
    }

    #[test]
    fn colim_of_simplex_boundary() {
        let k = SimplicialComplex::simplex(2);
        let p = Arc::new(Poset::faces(&k));
        let verts: Vec<usize> = (0..k.len()).filter(|&s| k.dim(s) == 0).collect();
        let edges: Vec<usize> = (0..k.len()).filter(|&s| k.dim(s) == 1).collect();
        let lab = |v: &[usize]| v.iter().map(|&s| k.label(s)).collect::<Vec<_>>();
        let c0 = BasedModule::new(p.clone(), verts.clone(), lab(&verts)).unwrap();
        let c1 = BasedModule::new(p.clone(), edges.clone(), lab(&edges)).unwrap();
        let mut trip = Vec::new();
        for (j, &e) in edges.iter().enumerate() {
            for &(f, c) in k.boundary(e) {
                trip.push((verts.iter().position(|&v| v == f).unwrap(), j, c));
            }
        }
        let d = BasedMorphism::new(c1, c0, SparseMat::from_triplets(3, 3, trip)).unwrap();
        // classical boundary of the triangle with edges 01, 02, 12
        let classical = SparseMat::from_dense(&[vec![-1, -1, 0], vec![1, 0, -1], vec![0, 1, 1]]);
        assert_eq!(d.colim(), classical);
    }

    proptest! {
        #[test]
        fn embed_is_functorial(seed in 0u64..500) {
            let k = SimplicialComplex::simplex(2);
            let p = Arc::new(Poset::faces(&k));
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let a = random_module(&p, &mut rng);
            let b = random_module(&p, &mut rng);
            let c = random_module(&p, &mut rng);
            let f = random_morphism(&a, &b, &mut rng);
            let g = random_morphism(&b, &c, &mut rng);
            let gf = BasedMorphism::compose(&g, &f).unwrap();
            for o in 0..p.len() {
                prop_assert_eq!(gf.embedded_at(o), g.embedded_at(o).mul(&f.embedded_at(o)));
            }
            prop_assert!(gf.embed().is_natural());
            prop_assert_eq!(gf.colim(), g.colim().mul(&f.colim()));
            // the composite stays triangular
            prop_assert!(BasedMorphism::new(a.clone(), c.clone(), gf.matrix().clone()).is_ok());
        }

        #[test]
        fn subset_condition_matches_components(seed in 0u64..500) {
            let k = SimplicialComplex::simplex(2);
            let p = Arc::new(Poset::faces(&k));
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let a = random_module(&p, &mut rng);
            let b = random_module(&p, &mut rng);
            let mut trip = Vec::new();
            for r in 0..b.len() {
                for c in 0..a.len() {
                    if rng.gen_bool(0.3) {
                        trip.push((r, c, rng.gen_range(1..=2)));
                    }
                }
            }
            let m = SparseMat::from_triplets(b.len(), a.len(), trip);
            let subset = BasedMorphism::satisfies_subset_condition(&p, a.objects(), b.objects(), &m);
            let built = BasedMorphism::new(a.clone(), b.clone(), m.clone());
            prop_assert_eq!(subset, built.is_ok());
            if let Ok(f) = built {
                // components reassemble to the same matrix
                let comps: BTreeMap<(usize, usize), Vec<Vec<i64>>> =
                    f.components().into_iter().map(|(k, v)| (k, v.to_dense())).collect();
                let g = BasedMorphism::from_components(a, b, &comps).unwrap();
                prop_assert_eq!(g.matrix(), f.matrix());
            }
        }

        #[test]
        fn yoneda_rank(seed in 0u64..200) {
            let k = SimplicialComplex::simplex(2);
            let p = Arc::new(Poset::faces(&k));
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let n = FunctorModule::embed(&random_module(&p, &mut rng));
            let s = rng.gen_range(0..p.len());
            let rep = FunctorModule::embed(&BasedModule::point_at(p.clone(), s));
            prop_assert_eq!(rep.hom_rank(&n), n.rank(s));
        }
    }
}
