//! Bounded chain complexes over the based categories, duals, tensor and Hom
//! products.
//!
//! Sign conventions, fixed once for the whole crate:
//!
//! * a dual generator `ĉ` sits at the object of `c` in degree `-|c|`, and
//!   `d^{-*}(ĉ) = Σ_{c'} (-1)^{|c|+1} [coefficient of c in dc'] ĉ'`;
//! * `d(x ⊗ y) = dx ⊗ y + (-1)^{|x|} x ⊗ dy`;
//! * on a degree `n` element of a Hom complex, `d(f) = d∘f + (-1)^{n+1} f∘d`.

use std::collections::HashMap;
use std::sync::Arc;

use crate::based::{first_non_triangular, inclusion, same_poset, BasedModule, BasedMorphism};
use crate::homology::{graded_complex, IntChainComplex};
use crate::matrix::SparseMat;
use crate::poset::Poset;
use crate::simplicial::SimplicialComplex;
use crate::{sign, Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gen {
    pub object: usize,
    pub degree: i64,
    pub label: String,
}

impl Gen {
    pub fn new(object: usize, degree: i64, label: impl Into<String>) -> Self {
        Gen {
            object,
            degree,
            label: label.into(),
        }
    }
}

/// A finite chain complex of based modules: generators with object and degree,
/// and one triangular total differential of degree −1.
#[derive(Clone, Debug)]
pub struct BasedChainComplex {
    poset: Arc<Poset>,
    gens: Vec<Gen>,
    d: SparseMat,
}

impl BasedChainComplex {
    pub fn new(poset: Arc<Poset>, gens: Vec<Gen>, d: SparseMat) -> Result<Self> {
        let c = Self::new_unchecked(poset, gens, d)?;
        c.check_d_squared()?;
        Ok(c)
    }

    /// Checks shape, degrees and triangularity but not `d² = 0`.
    pub fn new_unchecked(poset: Arc<Poset>, gens: Vec<Gen>, d: SparseMat) -> Result<Self> {
        if d.nrows() != gens.len() || d.ncols() != gens.len() {
            return Err(Error::Domain("differential shape does not match the generators".into()));
        }
        if let Some(g) = gens.iter().find(|g| g.object >= poset.len()) {
            return Err(Error::Domain(format!("generator {} outside the poset", g.label)));
        }
        if let Some((r, c, _)) = d.entries().find(|&(r, c, _)| gens[r].degree + 1 != gens[c].degree) {
            return Err(Error::Domain(format!(
                "differential from {} to {} does not lower degree by one",
                gens[c].label, gens[r].label
            )));
        }
        let objects: Vec<usize> = gens.iter().map(|g| g.object).collect();
        if let Some((r, c)) = first_non_triangular(&poset, &objects, &objects, &d) {
            return Err(Error::Domain(format!(
                "differential from {} to {} is not bigger-to-smaller",
                gens[c].label, gens[r].label
            )));
        }
        Ok(BasedChainComplex { poset, gens, d })
    }

    pub fn check_d_squared(&self) -> Result<()> {
        let dd = self.d.mul(&self.d);
        let first = dd.entries().next();
        match first {
            None => Ok(()),
            Some((r, c, v)) => Err(Error::Structural(format!(
                "d∘d sends {} to {} times {}",
                self.gens[c].label, v, self.gens[r].label
            ))),
        }
    }

    pub fn zero(poset: Arc<Poset>) -> Self {
        BasedChainComplex {
            poset,
            gens: Vec::new(),
            d: SparseMat::zeros(0, 0),
        }
    }

    /// `ℤ_σ` in a single degree.
    pub fn point_at(poset: Arc<Poset>, object: usize, degree: i64) -> Self {
        let label = poset.label(object).to_string();
        BasedChainComplex {
            poset,
            gens: vec![Gen::new(object, degree, label)],
            d: SparseMat::zeros(1, 1),
        }
    }

    pub fn poset(&self) -> &Arc<Poset> {
        &self.poset
    }

    pub fn gens(&self) -> &[Gen] {
        &self.gens
    }

    pub fn gen(&self, i: usize) -> &Gen {
        &self.gens[i]
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn d(&self) -> &SparseMat {
        &self.d
    }

    pub fn degrees(&self) -> Vec<i64> {
        self.gens.iter().map(|g| g.degree).collect()
    }

    pub fn objects(&self) -> Vec<usize> {
        self.gens.iter().map(|g| g.object).collect()
    }

    pub fn degree_window(&self) -> Option<(i64, i64)> {
        let lo = self.gens.iter().map(|g| g.degree).min()?;
        let hi = self.gens.iter().map(|g| g.degree).max()?;
        Some((lo, hi))
    }

    /// Generators in degree `n`.
    pub fn in_degree(&self, n: i64) -> Vec<usize> {
        (0..self.len()).filter(|&g| self.gens[g].degree == n).collect()
    }

    /// The underlying graded based module, all degrees together.
    pub fn module(&self) -> BasedModule {
        BasedModule::new(
            self.poset.clone(),
            self.objects(),
            self.gens.iter().map(|g| g.label.clone()).collect(),
        )
        .expect("generators lie in the poset")
    }

    pub fn differential(&self) -> BasedMorphism {
        let m = self.module();
        BasedMorphism::new(m.clone(), m, self.d.clone()).expect("differential is triangular")
    }

    /// Generators of `[C](σ)`.
    pub fn embedded_gens(&self, object: usize) -> Vec<usize> {
        (0..self.len())
            .filter(|&g| self.poset.leq(self.gens[g].object, object))
            .collect()
    }

    /// `[C](σ)` as a complex of abelian groups.
    pub fn embedded_at(&self, object: usize) -> IntChainComplex {
        graded_complex(&self.degrees(), &self.d, &self.embedded_gens(object))
    }

    /// `colim [C]`: the underlying complex with the grading forgotten.
    pub fn colim(&self) -> IntChainComplex {
        let all: Vec<usize> = (0..self.len()).collect();
        graded_complex(&self.degrees(), &self.d, &all)
    }

    /// The complex spanned by `subset`, which must be closed under `d` or cut out a quotient.
    pub fn restricted(&self, subset: &[usize]) -> IntChainComplex {
        graded_complex(&self.degrees(), &self.d, subset)
    }

    /// `F_* C` along a monotone map of posets.
    pub fn induce(&self, target: Arc<Poset>, map: &[usize]) -> Result<Self> {
        if map.len() != self.poset.len() || !self.poset.is_monotone(&target, map) {
            return Err(Error::Domain("induction along a non-monotone map".into()));
        }
        let gens = self
            .gens
            .iter()
            .map(|g| Gen::new(map[g.object], g.degree, g.label.clone()))
            .collect();
        Ok(BasedChainComplex {
            poset: target,
            gens,
            d: self.d.clone(),
        })
    }

    /// `C ⊕ D` with generators of `C` first.
    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        if !same_poset(&self.poset, &other.poset) {
            return Err(Error::Domain("direct sum over different posets".into()));
        }
        let n = self.len();
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        let trip = self
            .d
            .entries()
            .chain(other.d.entries().map(|(r, c, v)| (r + n, c + n, v)));
        let d = SparseMat::from_triplets(n + other.len(), n + other.len(), trip);
        Ok(BasedChainComplex {
            poset: self.poset.clone(),
            gens,
            d,
        })
    }

    /// Same generators, objects and degrees.
    pub fn same_shape(&self, other: &Self) -> bool {
        same_poset(&self.poset, &other.poset)
            && self.gens.len() == other.gens.len()
            && self
                .gens
                .iter()
                .zip(&other.gens)
                .all(|(a, b)| a.object == b.object && a.degree == b.degree)
    }

    /// Replaces the differential, keeping the generators.
    pub fn with_differential(&self, d: SparseMat) -> Result<Self> {
        Self::new(self.poset.clone(), self.gens.clone(), d)
    }
}

/// `ΔK` over `K`: one generator per simplex in degree `|σ|`, boundary by incidence.
pub fn delta_chain(k: &SimplicialComplex, faces: Arc<Poset>) -> BasedChainComplex {
    let gens = (0..k.len()).map(|s| Gen::new(s, k.dim(s) as i64, k.label(s))).collect();
    let trip = (0..k.len()).flat_map(|s| k.boundary(s).iter().map(move |&(f, c)| (f, s, c)));
    let d = SparseMat::from_triplets(k.len(), k.len(), trip);
    BasedChainComplex::new(faces, gens, d).expect("simplicial boundary is a differential")
}

/// `ΔK^{-*}` over `K^op`.
pub fn delta_cochain(k: &SimplicialComplex, faces: &Arc<Poset>, opposite: Arc<Poset>) -> BasedChainComplex {
    dualize(&delta_chain(k, faces.clone()), opposite).expect("opposite poset supplied")
}

/// `C^{-*}` over the opposite poset.
pub fn dualize(c: &BasedChainComplex, opposite: Arc<Poset>) -> Result<BasedChainComplex> {
    if *opposite != c.poset.opposite() {
        return Err(Error::Domain("dual needs the opposite poset".into()));
    }
    let gens = c
        .gens
        .iter()
        .map(|g| Gen::new(g.object, -g.degree, format!("{}^", g.label)))
        .collect();
    // column ĉ, row ĉ' carries (-1)^{|c|+1} d[c, c']
    let trip =
        c.d.entries()
            .map(|(r, col, v)| (col, r, sign(c.gens[r].degree + 1) * v));
    let d = SparseMat::from_triplets(c.len(), c.len(), trip);
    Ok(BasedChainComplex {
        poset: opposite,
        gens,
        d,
    })
}

/// A complex whose generators are pairs, with the lookup from pairs to indices.
#[derive(Clone, Debug)]
pub struct PairComplex {
    pub complex: BasedChainComplex,
    pub pairs: Vec<(usize, usize)>,
    pub index: HashMap<(usize, usize), usize>,
}

impl PairComplex {
    pub fn get(&self, a: usize, b: usize) -> Option<usize> {
        self.index.get(&(a, b)).copied()
    }
}

/// Assembles a pair complex. `terms(i)` lists `(pair, coefficient)` in the
/// differential of the `i`-th pair; terms on pairs outside the basis are dropped.
fn assemble_pairs<F>(poset: Arc<Poset>, basis: Vec<((usize, usize), Gen)>, terms: F) -> PairComplex
where
    F: Fn(usize, (usize, usize)) -> Vec<((usize, usize), i64)>,
{
    let index: HashMap<(usize, usize), usize> = basis.iter().enumerate().map(|(i, (p, _))| (*p, i)).collect();
    let mut trip = Vec::new();
    for (i, (p, _)) in basis.iter().enumerate() {
        for (q, v) in terms(i, *p) {
            if let Some(&j) = index.get(&q) {
                trip.push((j, i, v));
            }
        }
    }
    let n = basis.len();
    let d = SparseMat::from_triplets(n, n, trip);
    let (pairs, gens): (Vec<_>, Vec<_>) = basis.into_iter().unzip();
    let complex = BasedChainComplex::new_unchecked(poset, gens, d).expect("pair complex is based");
    PairComplex { complex, pairs, index }
}

fn column(m: &SparseMat, j: usize) -> &[(usize, i64)] {
    m.column(j)
}

/// A finite chain complex of functors from a poset to free abelian groups.
#[derive(Clone, Debug)]
pub struct FunctorComplex {
    poset: Arc<Poset>,
    /// Basis of the value at each object: `(degree, label)`.
    values: Vec<Vec<(i64, String)>>,
    /// Structure chain maps for strict pairs `a < b`.
    maps: HashMap<(usize, usize), SparseMat>,
    /// Differential of each value.
    d: Vec<SparseMat>,
    /// For embedded complexes: the generator behind each basis element.
    origin: Option<Vec<Vec<usize>>>,
}

impl FunctorComplex {
    pub fn new(
        poset: Arc<Poset>,
        values: Vec<Vec<(i64, String)>>,
        maps: HashMap<(usize, usize), SparseMat>,
        d: Vec<SparseMat>,
    ) -> Result<Self> {
        let fc = FunctorComplex {
            poset,
            values,
            maps,
            d,
            origin: None,
        };
        fc.check()?;
        Ok(fc)
    }

    fn check(&self) -> Result<()> {
        let n = self.poset.len();
        if self.values.len() != n || self.d.len() != n {
            return Err(Error::Domain("one value per object expected".into()));
        }
        for o in 0..n {
            let degs: Vec<i64> = self.values[o].iter().map(|v| v.0).collect();
            if self.d[o].entries().any(|(r, c, _)| degs[r] + 1 != degs[c]) {
                return Err(Error::Domain(format!(
                    "differential at {} has the wrong degree",
                    self.poset.label(o)
                )));
            }
            if !self.d[o].mul(&self.d[o]).is_zero() {
                return Err(Error::Structural(format!("d∘d ≠ 0 at {}", self.poset.label(o))));
            }
        }
        for a in 0..n {
            for b in 0..n {
                if !self.poset.lt(a, b) {
                    continue;
                }
                let m = self
                    .maps
                    .get(&(a, b))
                    .ok_or_else(|| Error::Domain(format!("missing structure map {a} -> {b}")))?;
                if m.nrows() != self.values[b].len() || m.ncols() != self.values[a].len() {
                    return Err(Error::Domain("structure map has the wrong shape".into()));
                }
                if self.d[b].mul(m) != m.mul(&self.d[a]) {
                    return Err(Error::Domain("structure map is not a chain map".into()));
                }
                for c in 0..n {
                    if self.poset.lt(b, c) && self.map(b, c).mul(m) != self.map(a, c) {
                        return Err(Error::Domain("structure maps do not compose".into()));
                    }
                }
            }
        }
        Ok(())
    }

    /// `[C]`: the values are the subcomplexes spanned by generators below each object.
    pub fn embed(c: &BasedChainComplex) -> Self {
        let n = c.poset.len();
        let bases: Vec<Vec<usize>> = (0..n).map(|o| c.embedded_gens(o)).collect();
        let mut maps = HashMap::new();
        for a in 0..n {
            for b in 0..n {
                if c.poset.lt(a, b) {
                    maps.insert((a, b), inclusion(&bases[a], &bases[b]));
                }
            }
        }
        FunctorComplex {
            poset: c.poset.clone(),
            values: bases
                .iter()
                .map(|b| b.iter().map(|&g| (c.gens[g].degree, c.gens[g].label.clone())).collect())
                .collect(),
            maps,
            d: bases.iter().map(|b| c.d.submatrix(b, b)).collect(),
            origin: Some(bases),
        }
    }

    /// `ℤ^P`: `ℤ` in degree 0 at every object, identity structure maps.
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
        FunctorComplex {
            values: vec![vec![(0, "1".to_string())]; n],
            maps,
            d: vec![SparseMat::zeros(1, 1); n],
            origin: None,
            poset,
        }
    }

    pub fn poset(&self) -> &Arc<Poset> {
        &self.poset
    }

    pub fn value(&self, object: usize) -> &[(i64, String)] {
        &self.values[object]
    }

    pub fn value_d(&self, object: usize) -> &SparseMat {
        &self.d[object]
    }

    pub fn origin(&self, object: usize) -> Option<&[usize]> {
        self.origin.as_ref().map(|o| o[object].as_slice())
    }

    /// Structure map for `a ≤ b`.
    pub fn map(&self, a: usize, b: usize) -> SparseMat {
        assert!(self.poset.leq(a, b), "no structure map for incomparable objects");
        if a == b {
            SparseMat::identity(self.values[a].len())
        } else {
            self.maps[&(a, b)].clone()
        }
    }

    pub fn value_complex(&self, object: usize) -> IntChainComplex {
        let degs: Vec<i64> = self.values[object].iter().map(|v| v.0).collect();
        let all: Vec<usize> = (0..degs.len()).collect();
        graded_complex(&degs, &self.d[object], &all)
    }
}

/// A map of functor complexes, one matrix per object.
#[derive(Clone, Debug)]
pub struct FunctorChainMap {
    pub source: FunctorComplex,
    pub target: FunctorComplex,
    pub components: Vec<SparseMat>,
}

impl FunctorChainMap {
    /// First object where naturality or the chain condition fails.
    pub fn first_defect(&self) -> Option<String> {
        let p = self.source.poset.clone();
        for a in 0..p.len() {
            let f = &self.components[a];
            if self.target.d[a].mul(f) != f.mul(&self.source.d[a]) {
                return Some(format!("not a chain map at {}", p.label(a)));
            }
            let (sd, td): (Vec<i64>, Vec<i64>) = (
                self.source.values[a].iter().map(|v| v.0).collect(),
                self.target.values[a].iter().map(|v| v.0).collect(),
            );
            if f.entries().any(|(r, c, _)| td[r] != sd[c]) {
                return Some(format!("not of degree 0 at {}", p.label(a)));
            }
            for b in 0..p.len() {
                if p.lt(a, b) && self.target.map(a, b).mul(f) != self.components[b].mul(&self.source.map(a, b)) {
                    return Some(format!("not natural at {} < {}", p.label(a), p.label(b)));
                }
            }
        }
        None
    }
}

/// `X ⊗ D` objectwise: `(X ⊗ D)(σ) = X(σ) ⊗ D(σ)`, with `X` based over `Q` and
/// `D` a functor complex on `Q^op`. Generator pairs are `(x, v)` with `v` a
/// basis element of `D(obj x)`.
pub fn tensor_round_square(x: &BasedChainComplex, d: &FunctorComplex) -> Result<PairComplex> {
    if **d.poset() != x.poset.opposite() {
        return Err(Error::Domain(
            "round-square tensor needs a functor on the opposite poset".into(),
        ));
    }
    let mut basis = Vec::new();
    for (i, g) in x.gens.iter().enumerate() {
        for (j, (deg, lab)) in d.values[g.object].iter().enumerate() {
            basis.push((
                (i, j),
                Gen::new(g.object, g.degree + deg, format!("{}⊗{}", g.label, lab)),
            ));
        }
    }
    let pc = assemble_pairs(x.poset.clone(), basis, |_, (i, j)| {
        let gi = &x.gens[i];
        let mut out = Vec::new();
        for &(i2, c) in column(&x.d, i) {
            // X-component from obj x to obj x', pushed forward along D(obj x ≤ obj x')
            let push = d.map(gi.object, x.gens[i2].object);
            for &(j2, m) in push.column(j) {
                out.push(((i2, j2), c * m));
            }
        }
        let s = sign(gi.degree);
        for &(j2, c) in d.d[gi.object].column(j) {
            out.push(((i, j2), s * c));
        }
        out
    });
    Ok(pc)
}

/// `X ⊗ [Y]` with pairs `(x, y)` indexed by generators of `Y`.
pub fn tensor_round_square_based(x: &BasedChainComplex, y: &BasedChainComplex) -> Result<PairComplex> {
    let fy = FunctorComplex::embed(y);
    let pc = tensor_round_square(x, &fy)?;
    Ok(reindex_by_origin(pc, &fy, x))
}

fn reindex_by_origin(pc: PairComplex, fy: &FunctorComplex, x: &BasedChainComplex) -> PairComplex {
    let pairs: Vec<(usize, usize)> = pc
        .pairs
        .iter()
        .map(|&(i, j)| (i, fy.origin(x.gens[i].object).expect("embedded")[j]))
        .collect();
    let index = pairs.iter().enumerate().map(|(k, p)| (*p, k)).collect();
    PairComplex {
        complex: pc.complex,
        pairs,
        index,
    }
}

/// `M ⊗ N` over 1-chains: `(M ⊗ N)(a ≤ b) = M(a) ⊗ N(b)`, with `M` over `P^op`,
/// `N` over `P` and the result over `chains = P.chains()`.
pub fn tensor_round(m: &BasedChainComplex, n: &BasedChainComplex, chains: Arc<Poset>) -> Result<PairComplex> {
    let p = n.poset.clone();
    if *m.poset != p.opposite() {
        return Err(Error::Domain("round tensor needs modules over opposite posets".into()));
    }
    if *chains != p.chains() {
        return Err(Error::Domain("round tensor lands in the chain poset".into()));
    }
    let chain_index: HashMap<(usize, usize), usize> =
        p.chain_pairs().into_iter().enumerate().map(|(i, ab)| (ab, i)).collect();
    let mut basis = Vec::new();
    for (i, gm) in m.gens.iter().enumerate() {
        for (j, gn) in n.gens.iter().enumerate() {
            if let Some(&obj) = chain_index.get(&(gm.object, gn.object)) {
                basis.push((
                    (i, j),
                    Gen::new(obj, gm.degree + gn.degree, format!("{}⊗{}", gm.label, gn.label)),
                ));
            }
        }
    }
    Ok(assemble_pairs(chains, basis, |_, (i, j)| {
        let mut out: Vec<((usize, usize), i64)> = column(&m.d, i).iter().map(|&(i2, c)| ((i2, j), c)).collect();
        let s = sign(m.gens[i].degree);
        out.extend(column(&n.d, j).iter().map(|&(j2, c)| ((i, j2), s * c)));
        out
    }))
}

/// `Hom(X(σ), D(σ))` objectwise, with `X` based over `P` and `D` a functor
/// complex on `P`; the result is based over `P^op`. Pairs `(x, v)` stand for
/// `x ↦ v` with `v` in `D(obj x)`.
pub fn hom_round_square(x: &BasedChainComplex, d: &FunctorComplex, opposite: Arc<Poset>) -> Result<PairComplex> {
    if !same_poset(&x.poset, d.poset()) {
        return Err(Error::Domain(
            "round-square Hom needs a functor on the same poset".into(),
        ));
    }
    if *opposite != x.poset.opposite() {
        return Err(Error::Domain("round-square Hom lands over the opposite poset".into()));
    }
    let mut basis = Vec::new();
    for (i, g) in x.gens.iter().enumerate() {
        for (j, (deg, lab)) in d.values[g.object].iter().enumerate() {
            basis.push((
                (i, j),
                Gen::new(g.object, deg - g.degree, format!("[{}↦{}]", g.label, lab)),
            ));
        }
    }
    let xt = x.d.transpose();
    Ok(assemble_pairs(opposite, basis, |_, (i, j)| {
        let gi = &x.gens[i];
        let n = d.values[gi.object][j].0 - gi.degree;
        let mut out: Vec<((usize, usize), i64)> =
            d.d[gi.object].column(j).iter().map(|&(j2, c)| ((i, j2), c)).collect();
        let s = sign(n + 1);
        // [x ↦ v] ∘ d = Σ_{x''} d[x, x''] [x'' ↦ D(obj x ≤ obj x'') v]
        for &(i2, c) in xt.column(i) {
            let push = d.map(gi.object, x.gens[i2].object);
            for &(j2, m) in push.column(j) {
                out.push(((i2, j2), s * c * m));
            }
        }
        out
    }))
}

/// `Hom_{ℤ(P)}(X, Y)`, the morphism complex of the based category, as the
/// round-square Hom into `[Y]`. Pairs `(x, y)` stand for `x ↦ y`, `obj y ≤ obj x`.
pub fn hom_based(x: &BasedChainComplex, y: &BasedChainComplex, opposite: Arc<Poset>) -> Result<PairComplex> {
    let fy = FunctorComplex::embed(y);
    let pc = hom_round_square(x, &fy, opposite)?;
    Ok(reindex_by_origin(pc, &fy, x))
}

/// `Hom(M(a), N(b))` over 1-chains `a ≤ b`, for `M`, `N` over `P`.
pub fn hom_round(m: &BasedChainComplex, n: &BasedChainComplex, chains: Arc<Poset>) -> Result<PairComplex> {
    let p = n.poset.clone();
    if !same_poset(&m.poset, &p) {
        return Err(Error::Domain("round Hom needs modules over the same poset".into()));
    }
    if *chains != p.chains() {
        return Err(Error::Domain("round Hom lands in the chain poset".into()));
    }
    let chain_index: HashMap<(usize, usize), usize> =
        p.chain_pairs().into_iter().enumerate().map(|(i, ab)| (ab, i)).collect();
    let mut basis = Vec::new();
    for (i, gm) in m.gens.iter().enumerate() {
        for (j, gn) in n.gens.iter().enumerate() {
            if let Some(&obj) = chain_index.get(&(gm.object, gn.object)) {
                basis.push((
                    (i, j),
                    Gen::new(obj, gn.degree - gm.degree, format!("[{}↦{}]", gm.label, gn.label)),
                ));
            }
        }
    }
    let mt = m.d.transpose();
    Ok(assemble_pairs(chains, basis, |_, (i, j)| {
        let deg = n.gens[j].degree - m.gens[i].degree;
        let mut out: Vec<((usize, usize), i64)> = column(&n.d, j).iter().map(|&(j2, c)| ((i, j2), c)).collect();
        let s = sign(deg + 1);
        out.extend(mt.column(i).iter().map(|&(i2, c)| ((i2, j), s * c)));
        out
    }))
}

/// A graded map of based complexes, of degree `degree`, as one triangular matrix.
#[derive(Clone, Debug)]
pub struct BasedChainMap {
    pub source: BasedChainComplex,
    pub target: BasedChainComplex,
    pub degree: i64,
    pub matrix: SparseMat,
}

impl BasedChainMap {
    pub fn new(source: BasedChainComplex, target: BasedChainComplex, degree: i64, matrix: SparseMat) -> Result<Self> {
        if !same_poset(&source.poset, &target.poset) {
            return Err(Error::Domain("map between complexes over different posets".into()));
        }
        if matrix.nrows() != target.len() || matrix.ncols() != source.len() {
            return Err(Error::Domain("matrix shape does not match the complexes".into()));
        }
        if let Some((r, c, _)) = matrix
            .entries()
            .find(|&(r, c, _)| target.gens[r].degree != source.gens[c].degree + degree)
        {
            return Err(Error::Domain(format!(
                "{} ↦ {} does not have degree {degree}",
                source.gens[c].label, target.gens[r].label
            )));
        }
        if let Some((r, c)) = first_non_triangular(&source.poset, &target.objects(), &source.objects(), &matrix) {
            return Err(Error::Domain(format!(
                "component {} ↦ {} is not bigger-to-smaller",
                source.gens[c].label, target.gens[r].label
            )));
        }
        Ok(BasedChainMap {
            source,
            target,
            degree,
            matrix,
        })
    }

    pub fn identity(c: &BasedChainComplex) -> Self {
        BasedChainMap {
            source: c.clone(),
            target: c.clone(),
            degree: 0,
            matrix: SparseMat::identity(c.len()),
        }
    }

    pub fn zero(source: &BasedChainComplex, target: &BasedChainComplex, degree: i64) -> Self {
        BasedChainMap {
            source: source.clone(),
            target: target.clone(),
            degree,
            matrix: SparseMat::zeros(target.len(), source.len()),
        }
    }

    /// `d∘f − (−1)^{deg} f∘d`, zero exactly for chain maps (degree 0) and for
    /// cycles of the Hom complex.
    pub fn boundary_defect(&self) -> SparseMat {
        let left = self.target.d.mul(&self.matrix);
        let right = self.matrix.mul(&self.source.d).scale(sign(self.degree));
        left.sub(&right)
    }

    pub fn is_chain_map(&self) -> bool {
        self.degree == 0 && self.boundary_defect().is_zero()
    }

    pub fn compose(g: &BasedChainMap, f: &BasedChainMap) -> Result<Self> {
        if !f.target.same_shape(&g.source) {
            return Err(Error::Composition("target of f is not the source of g".into()));
        }
        Ok(BasedChainMap {
            source: f.source.clone(),
            target: g.target.clone(),
            degree: f.degree + g.degree,
            matrix: g.matrix.mul(&f.matrix),
        })
    }

    /// `[f](σ)` on the generators of `[C](σ)` and `[D](σ)`.
    pub fn embedded_at(&self, object: usize) -> SparseMat {
        self.matrix
            .submatrix(&self.target.embedded_gens(object), &self.source.embedded_gens(object))
    }

    pub fn embed(&self) -> FunctorChainMap {
        FunctorChainMap {
            source: FunctorComplex::embed(&self.source),
            target: FunctorComplex::embed(&self.target),
            components: (0..self.source.poset.len()).map(|o| self.embedded_at(o)).collect(),
        }
    }
}

/// The augmentation `[ΔK] → ℤ^K`, each vertex to 1.
pub fn augmentation_k(delta: &BasedChainComplex) -> FunctorChainMap {
    augmentation_trivial(delta, |g| (delta.gens[g].degree == 0).then_some(1))
}

/// A map `[C] → ℤ^P` given by its value on each generator.
pub fn augmentation_trivial(c: &BasedChainComplex, value: impl Fn(usize) -> Option<i64>) -> FunctorChainMap {
    let source = FunctorComplex::embed(c);
    let target = FunctorComplex::trivial(c.poset.clone());
    let components = (0..c.poset.len())
        .map(|o| {
            let gens = source.origin(o).expect("embedded");
            let trip = gens
                .iter()
                .enumerate()
                .filter_map(|(j, &g)| value(g).map(|v| (0, j, v)));
            SparseMat::from_triplets(1, gens.len(), trip)
        })
        .collect();
    FunctorChainMap {
        source,
        target,
        components,
    }
}
