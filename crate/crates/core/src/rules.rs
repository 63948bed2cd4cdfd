//! The tensor/Hom identities: explicit isomorphism matrices with their signs,
//! each checked to be a degreewise unimodular chain map.
//!
//! | identity | map | sign |
//! |---|---|---|
//! | swap | `x⊗y⊗z ↦ x⊗z⊗y` | `(−1)^{|y||z|}` |
//! | dual of a tensor | `ĉ⊗d̂ ↦ (c⊗d)^` | `(−1)^{|c||d|}` |
//! | double dual | `x ↦ x̂̂` | `(−1)^{|x|}` |
//! | slant | `x⊗y ↦ [x̂ ↦ y]` | `(−1)^{|x||y|+|x|}` |
//! | evaluation slant | `ĉ⊗y ↦ [c ↦ y]` | `(−1)^{|c||y|}` |

use std::sync::Arc;

use num_traits::One;

use crate::chain::{dualize, hom_based, tensor_round_square_based, BasedChainComplex, PairComplex};
use crate::homology::IntChainComplex;
use crate::matrix::SparseMat;
use crate::poset::Poset;
use crate::snf::invariant_factors;
use crate::{sign, Result};

/// The sign of the swap isomorphism. `faulty_swap` adds a spurious `(−1)^{|y|}`,
/// used to demonstrate that the verification suite notices.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Conventions {
    pub faulty_swap: bool,
}

impl Conventions {
    pub const STANDARD: Conventions = Conventions { faulty_swap: false };

    pub fn swap_sign(&self, y: i64, z: i64) -> i64 {
        if self.faulty_swap {
            sign(y * z + y)
        } else {
            sign(y * z)
        }
    }
}

/// A candidate isomorphism between two based complexes.
#[derive(Clone, Debug)]
pub struct RuleIso {
    pub source: BasedChainComplex,
    pub target: BasedChainComplex,
    pub matrix: SparseMat,
}

impl RuleIso {
    /// Degree and object preserving, a signed bijection of bases, and a chain map.
    pub fn check(&self) -> std::result::Result<(), String> {
        check_iso(&self.source, &self.target, &self.matrix)
    }
}

pub fn check_iso(
    source: &BasedChainComplex,
    target: &BasedChainComplex,
    m: &SparseMat,
) -> std::result::Result<(), String> {
    if m.nrows() != target.len() || m.ncols() != source.len() {
        return Err(format!(
            "shape {}x{} for {} -> {} generators",
            m.nrows(),
            m.ncols(),
            source.len(),
            target.len()
        ));
    }
    if !m.is_signed_permutation() {
        return Err("not a signed bijection of bases".into());
    }
    for (r, c, _) in m.entries() {
        let (s, t) = (source.gen(c), target.gen(r));
        if s.degree != t.degree || s.object != t.object {
            return Err(format!("{} ↦ {} changes degree or object", s.label, t.label));
        }
    }
    check_chain_map(source, target, m)
}

pub fn check_chain_map(
    source: &BasedChainComplex,
    target: &BasedChainComplex,
    m: &SparseMat,
) -> std::result::Result<(), String> {
    let defect = target.d().mul(m).sub(&m.mul(source.d()));
    let first = defect.entries().next();
    match first {
        None => Ok(()),
        Some((r, c, v)) => Err(format!(
            "d∘f − f∘d has coefficient {v} on {} in the image of {}",
            target.gen(r).label,
            source.gen(c).label
        )),
    }
}

/// `(C ⊗ [D]) ⊗ [E] → (C ⊗ [E]) ⊗ [D]`, with `C` over `Q` and `D`, `E` over `Q^op`.
pub fn swap(c: &BasedChainComplex, d: &BasedChainComplex, e: &BasedChainComplex, conv: Conventions) -> Result<RuleIso> {
    let cd = tensor_round_square_based(c, d)?;
    let cde = tensor_round_square_based(&cd.complex, e)?;
    let ce = tensor_round_square_based(c, e)?;
    let ced = tensor_round_square_based(&ce.complex, d)?;
    let trip = cde.pairs.iter().enumerate().map(|(col, &(xy, z))| {
        let (x, y) = cd.pairs[xy];
        let xz = ce.get(x, z).expect("x⊗z exists when x⊗y⊗z does");
        let row = ced.get(xz, y).expect("swapped generator exists");
        (row, col, conv.swap_sign(d.gen(y).degree, e.gen(z).degree))
    });
    let matrix = SparseMat::from_triplets(ced.complex.len(), cde.complex.len(), trip);
    Ok(RuleIso {
        source: cde.complex,
        target: ced.complex,
        matrix,
    })
}

/// `C^{-*} ⊗ D^{-*} → (C ⊗ D)^{-*}` for plain complexes (over the point).
pub fn dual_of_tensor(c: &BasedChainComplex, d: &BasedChainComplex) -> Result<RuleIso> {
    let pt = c.poset().clone();
    let prod = tensor_round_square_based(c, d)?;
    let cd_dual = dualize(&prod.complex, pt.clone())?;
    let left = tensor_round_square_based(&dualize(c, pt.clone())?, &dualize(d, pt)?)?;
    let trip = left.pairs.iter().enumerate().map(|(col, &(x, y))| {
        let row = prod.get(x, y).expect("same pairs");
        (row, col, sign(c.gen(x).degree * d.gen(y).degree))
    });
    let matrix = SparseMat::from_triplets(cd_dual.len(), left.complex.len(), trip);
    Ok(RuleIso {
        source: left.complex,
        target: cd_dual,
        matrix,
    })
}

/// `C → (C^{-*})^{-*}`.
pub fn double_dual(c: &BasedChainComplex, opposite: Arc<Poset>) -> Result<RuleIso> {
    let dd = dualize(&dualize(c, opposite)?, c.poset().clone())?;
    Ok(RuleIso {
        matrix: double_dual_matrix(c),
        source: c.clone(),
        target: dd,
    })
}

pub fn double_dual_matrix(c: &BasedChainComplex) -> SparseMat {
    SparseMat::from_triplets(c.len(), c.len(), (0..c.len()).map(|i| (i, i, sign(c.gen(i).degree))))
}

/// `C ⊗ [D] → Hom(C^{-*}, [D])`, with `C` over `Q` and `D` over `Q^op`.
pub fn slant(c: &BasedChainComplex, d: &BasedChainComplex, opposite: Arc<Poset>) -> Result<RuleIso> {
    let t = tensor_round_square_based(c, d)?;
    let h = hom_based(&dualize(c, opposite)?, d, c.poset().clone())?;
    let matrix = pair_map(&t, &h, |x, y| sign(c.gen(x).degree * d.gen(y).degree + c.gen(x).degree));
    Ok(RuleIso {
        source: t.complex,
        target: h.complex,
        matrix,
    })
}

/// `C^{-*} ⊗ [D] → Hom(C, [D])`, with `C`, `D` over `Q`.
pub fn evaluation_slant(c: &BasedChainComplex, d: &BasedChainComplex, opposite: Arc<Poset>) -> Result<RuleIso> {
    let t = tensor_round_square_based(&dualize(c, opposite.clone())?, d)?;
    let h = hom_based(c, d, opposite)?;
    let matrix = pair_map(&t, &h, |x, y| sign(c.gen(x).degree * d.gen(y).degree));
    Ok(RuleIso {
        source: t.complex,
        target: h.complex,
        matrix,
    })
}

fn pair_map(from: &PairComplex, to: &PairComplex, s: impl Fn(usize, usize) -> i64) -> SparseMat {
    let trip = from
        .pairs
        .iter()
        .enumerate()
        .map(|(col, &(x, y))| (to.get(x, y).expect("same pairs on both sides"), col, s(x, y)));
    SparseMat::from_triplets(to.complex.len(), from.complex.len(), trip)
}

/// Pulling the slant of `C^{-*}` back along the double-dual map gives the
/// evaluation slant of `C`.
pub fn slant_coherence(
    c: &BasedChainComplex,
    d: &BasedChainComplex,
    opposite: Arc<Poset>,
) -> Result<std::result::Result<(), String>> {
    let dual = dualize(c, opposite.clone())?;
    let s7 = slant(&dual, d, c.poset().clone())?;
    let s8 = evaluation_slant(c, d, opposite.clone())?;
    // precomposition with x ↦ (−1)^{|x|} x̂̂ on [x̂̂ ↦ y]; both Homs are indexed by (x, y)
    let h = hom_based(c, d, opposite)?;
    let pull = SparseMat::from_triplets(
        h.complex.len(),
        h.complex.len(),
        h.pairs
            .iter()
            .enumerate()
            .map(|(i, &(x, _))| (i, i, sign(c.gen(x).degree))),
    );
    let composite = pull.mul(&s7.matrix);
    Ok(match composite.first_difference(&s8.matrix) {
        None => Ok(()),
        Some((r, col, a, b)) => Err(format!(
            "at {} from {}: {a} vs {b}",
            h.complex.gen(r).label,
            s8.source.gen(col).label
        )),
    })
}

/// Over the point: the evaluation slant sends `Σ (−1)^{|e|} ê ⊗ e` to the
/// identity, and that element is a cycle.
pub fn evaluation_identity(c: &BasedChainComplex) -> Result<std::result::Result<(), String>> {
    let pt = c.poset().clone();
    let ev = evaluation_slant(c, c, pt.clone())?;
    let t = tensor_round_square_based(&dualize(c, pt.clone())?, c)?;
    let h = hom_based(c, c, pt)?;
    let elem: Vec<(usize, i64)> = (0..c.len())
        .filter_map(|e| t.get(e, e).map(|i| (i, sign(c.gen(e).degree))))
        .collect();
    let image = ev.matrix.apply(&elem);
    let mut id: Vec<(usize, i64)> = (0..c.len()).map(|e| (h.get(e, e).expect("diagonal pair"), 1)).collect();
    id.sort_unstable();
    if image != id {
        return Ok(Err("evaluation of the diagonal element is not the identity".into()));
    }
    if !t.complex.d().apply(&elem).is_empty() {
        return Ok(Err("the diagonal element is not a cycle".into()));
    }
    Ok(Ok(()))
}

/// `colim [C^{-*}] = (colim [C])^{-*}` as integer complexes.
pub fn colim_of_dual(c: &BasedChainComplex, opposite: Arc<Poset>) -> Result<std::result::Result<(), String>> {
    let left = dualize(c, opposite)?.colim();
    let right = plain_dual(&c.colim());
    Ok(if left == right {
        Ok(())
    } else {
        Err("colimit of the dual differs from the dual of the colimit".into())
    })
}

/// The dual of a complex of free abelian groups: `(C^{-*})_{-n} = (C_n)^*`,
/// boundary `(−1)^{n+1} d_{n+1}^T` out of degree `−n`.
pub fn plain_dual(c: &IntChainComplex) -> IntChainComplex {
    if c.total_rank() == 0 {
        return IntChainComplex::zero();
    }
    let (lo, hi) = (c.min_degree(), c.max_degree());
    let ranks: Vec<usize> = (-hi..=-lo).map(|m| c.rank(-m)).collect();
    let d = (-hi..=-lo)
        .map(|m| c.boundary(1 - m).transpose().scale(sign(1 - m)))
        .collect();
    IntChainComplex::new(-hi, ranks, d).expect("shapes follow the original complex")
}

/// Generators `(σ, c, y)` of `⊕_σ [C](σ) ⊗ [D](σ)`, for `C` over `Q`, `D` over `Q^op`.
fn objectwise_triples(c: &BasedChainComplex, d: &BasedChainComplex) -> Vec<(usize, usize, usize)> {
    let p = c.poset();
    let mut out = Vec::new();
    for s in 0..p.len() {
        for x in c.embedded_gens(s) {
            for y in d.embedded_gens(s) {
                out.push((s, x, y));
            }
        }
    }
    out
}

/// Saturated sublattice check: every nonzero invariant factor is a unit.
fn unimodular_image(m: &SparseMat) -> bool {
    invariant_factors(m).iter().all(One::is_one)
}

/// `colim [C ⊗ [D]] = [C] ⊗_{ℤ[Q]} [D]`: the coend over `Q` is the quotient of
/// the objectwise sum by the structure-map relations, and the quotient map onto
/// the round-square tensor is a chain map with exactly those relations as kernel.
pub fn colim_of_tensor(c: &BasedChainComplex, d: &BasedChainComplex) -> Result<std::result::Result<(), String>> {
    let t = tensor_round_square_based(c, d)?;
    let p = c.poset().clone();
    let big = objectwise_triples(c, d);
    let index: std::collections::HashMap<(usize, usize, usize), usize> =
        big.iter().enumerate().map(|(i, &k)| (k, i)).collect();
    // objectwise differential
    let mut trip = Vec::new();
    for (i, &(s, x, y)) in big.iter().enumerate() {
        for &(x2, v) in c.d().column(x) {
            trip.push((index[&(s, x2, y)], i, v));
        }
        let e = sign(c.gen(x).degree);
        for &(y2, v) in d.d().column(y) {
            trip.push((index[&(s, x, y2)], i, e * v));
        }
    }
    let big_d = SparseMat::from_triplets(big.len(), big.len(), trip);
    let quotient = SparseMat::from_triplets(
        t.complex.len(),
        big.len(),
        big.iter()
            .enumerate()
            .map(|(i, &(_, x, y))| (t.get(x, y).expect("obj x ≤ σ ≤ obj y"), i, 1)),
    );
    // relations (σ, x, y) − (τ, x, y) for σ < τ
    let mut rel = Vec::new();
    let mut nrel = 0;
    for &(s, x, y) in &big {
        for tau in 0..p.len() {
            if p.lt(s, tau) {
                if let Some(&j) = index.get(&(tau, x, y)) {
                    rel.push((index[&(s, x, y)], nrel, 1));
                    rel.push((j, nrel, -1));
                    nrel += 1;
                }
            }
        }
    }
    let relations = SparseMat::from_triplets(big.len(), nrel, rel);
    if !quotient.mul(&relations).is_zero() {
        return Ok(Err("the quotient map does not kill the coend relations".into()));
    }
    let rank_rel = crate::snf::rank(&relations);
    if rank_rel + t.complex.len() != big.len() || !unimodular_image(&relations) {
        return Ok(Err("the coend relations do not span the kernel".into()));
    }
    if quotient.mul(&big_d) != t.complex.d().mul(&quotient) {
        return Ok(Err("the quotient map is not a chain map".into()));
    }
    Ok(Ok(()))
}

/// `colim [Hom(C, [D])] = Hom_{ℤ[Q]}([C], [D])`: the round-square Hom embeds
/// as exactly the natural transformations, compatibly with differentials.
pub fn colim_of_hom(
    c: &BasedChainComplex,
    d: &BasedChainComplex,
    opposite: Arc<Poset>,
) -> Result<std::result::Result<(), String>> {
    let h = hom_based(c, d, opposite)?;
    let p = c.poset().clone();
    let big = objectwise_triples_same(c, d);
    let index: std::collections::HashMap<(usize, usize, usize), usize> =
        big.iter().enumerate().map(|(i, &k)| (k, i)).collect();
    let mut trip = Vec::new();
    for (i, &(s, x, y)) in big.iter().enumerate() {
        let n = d.gen(y).degree - c.gen(x).degree;
        for &(y2, v) in d.d().column(y) {
            trip.push((index[&(s, x, y2)], i, v));
        }
        // f∘d_C: [x ↦ y] picks up d_C[x, x''] on [x'' ↦ y]
        let e = sign(n + 1);
        for x2 in c.embedded_gens(s) {
            let v = c.d().get(x, x2);
            if v != 0 {
                trip.push((index[&(s, x2, y)], i, e * v));
            }
        }
    }
    let big_d = SparseMat::from_triplets(big.len(), big.len(), trip);
    let embedding = SparseMat::from_triplets(
        big.len(),
        h.complex.len(),
        h.pairs.iter().enumerate().flat_map(|(col, &(x, y))| {
            let idx = &index;
            (0..p.len())
                .filter(|&s| p.leq(c.gen(x).object, s))
                .map(move |s| (idx[&(s, x, y)], col, 1))
                .collect::<Vec<_>>()
        }),
    );
    // naturality: η_τ(x) = η_σ(x) for σ < τ, x ∈ [C](σ)
    let mut cons = Vec::new();
    let mut ncons = 0;
    for s in 0..p.len() {
        for tau in 0..p.len() {
            if !p.lt(s, tau) {
                continue;
            }
            for x in c.embedded_gens(s) {
                for y in d.embedded_gens(tau) {
                    cons.push((ncons, index[&(tau, x, y)], 1));
                    if let Some(&j) = index.get(&(s, x, y)) {
                        cons.push((ncons, j, -1));
                    }
                    ncons += 1;
                }
            }
        }
    }
    let constraints = SparseMat::from_triplets(ncons, big.len(), cons);
    if !constraints.mul(&embedding).is_zero() {
        return Ok(Err("an element of the round-square Hom is not natural".into()));
    }
    let r = crate::snf::rank(&embedding);
    if r != h.complex.len() || !unimodular_image(&embedding) || r + crate::snf::rank(&constraints) != big.len() {
        return Ok(Err(
            "the round-square Hom is not all of the natural transformations".into()
        ));
    }
    if embedding.mul(h.complex.d()) != big_d.mul(&embedding) {
        return Ok(Err("the embedding is not a chain map".into()));
    }
    Ok(Ok(()))
}

/// Generators `(σ, x, y)` of `⊕_σ Hom([C](σ), [D](σ))`, for `C`, `D` over `Q`.
fn objectwise_triples_same(c: &BasedChainComplex, d: &BasedChainComplex) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for s in 0..c.poset().len() {
        for x in c.embedded_gens(s) {
            for y in d.embedded_gens(s) {
                out.push((s, x, y));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::{delta_chain, Gen};
    use crate::simplicial::SimplicialComplex;

    fn faces(k: &SimplicialComplex) -> (Arc<Poset>, Arc<Poset>) {
        let f = Arc::new(Poset::faces(k));
        let op = Arc::new(f.opposite());
        (f, op)
    }

    /// A small complex over `K^op` with generators in several degrees.
    fn sample_kop(k: &SimplicialComplex, op: &Arc<Poset>) -> BasedChainComplex {
        let top = k.len() - 1;
        let v0 = 0;
        // a → b at a bigger-in-K^op object to a smaller one: obj a = v0, obj b = top
        let gens = vec![
            Gen::new(v0, 1, "a"),
            Gen::new(top, 0, "b"),
            Gen::new(v0, -1, "c"),
            Gen::new(top, 2, "u"),
        ];
        let d = SparseMat::from_triplets(4, 4, [(1, 0, 2)]);
        BasedChainComplex::new(op.clone(), gens, d).unwrap()
    }

    #[test]
    fn swap_on_degree_zero_is_plain() {
        let k = SimplicialComplex::simplex(1);
        let (f, op) = faces(&k);
        let c = delta_chain(&k, f.clone());
        let z = BasedChainComplex::point_at(op.clone(), 0, 0);
        let iso = swap(&c, &z, &z, Conventions::STANDARD).unwrap();
        iso.check().unwrap();
        assert!(iso.matrix.entries().all(|(_, _, v)| v == 1));
    }

    #[test]
    fn swap_is_a_chain_iso_and_fault_breaks_it() {
        let k = SimplicialComplex::simplex(2);
        let (f, op) = faces(&k);
        let c = delta_chain(&k, f.clone());
        let d = sample_kop(&k, &op);
        swap(&c, &d, &d, Conventions::STANDARD).unwrap().check().unwrap();
        let bad = swap(&c, &d, &d, Conventions { faulty_swap: true }).unwrap();
        assert!(bad.check().is_err());
    }

    #[test]
    fn double_dual_of_delta_is_a_chain_iso() {
        let k = SimplicialComplex::simplex(2);
        let (f, op) = faces(&k);
        let iso = double_dual(&delta_chain(&k, f), op).unwrap();
        iso.check().unwrap();
    }

    #[test]
    fn slants_and_coherence() {
        let k = SimplicialComplex::simplex(2);
        let (f, op) = faces(&k);
        let delta = delta_chain(&k, f.clone());
        let d = sample_kop(&k, &op);
        // C over K^op, D over K for the slant
        slant(&d, &delta, f.clone()).unwrap().check().unwrap();
        evaluation_slant(&delta, &delta, op.clone()).unwrap().check().unwrap();
        slant_coherence(&delta, &delta, op.clone()).unwrap().unwrap();
        slant_coherence(&d, &d, f).unwrap().unwrap();
    }

    #[test]
    fn evaluation_and_tensor_dual_over_the_point() {
        let pt = Arc::new(Poset::point());
        let gens = vec![
            Gen::new(0, 1, "x"),
            Gen::new(0, 0, "y"),
            Gen::new(0, 0, "z"),
            Gen::new(0, -1, "w"),
        ];
        let d = SparseMat::from_triplets(4, 4, [(1, 0, 1), (3, 2, 3)]);
        let c = BasedChainComplex::new(pt.clone(), gens, d).unwrap();
        evaluation_identity(&c).unwrap().unwrap();
        dual_of_tensor(&c, &c).unwrap().check().unwrap();
    }

    #[test]
    fn colimit_identities() {
        let k = SimplicialComplex::simplex(2);
        let (f, op) = faces(&k);
        let delta = delta_chain(&k, f.clone());
        let d = sample_kop(&k, &op);
        colim_of_dual(&delta, op.clone()).unwrap().unwrap();
        colim_of_dual(&d, f.clone()).unwrap().unwrap();
        colim_of_tensor(&delta, &d).unwrap().unwrap();
        colim_of_tensor(&d, &delta).unwrap().unwrap();
        colim_of_hom(&delta, &delta, op.clone()).unwrap().unwrap();
        colim_of_hom(&d, &d, f).unwrap().unwrap();
    }

    #[test]
    fn plain_dual_twice_negates() {
        let k = SimplicialComplex::simplex_boundary(3);
        let (f, _) = faces(&k);
        let c = delta_chain(&k, f).colim();
        let dd = plain_dual(&plain_dual(&c));
        for n in 0..=2 {
            assert_eq!(dd.boundary(n), c.boundary(n).neg());
        }
    }
}
