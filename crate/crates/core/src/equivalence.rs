//! Mapping cones, objectwise weak equivalences, and explicit homotopy inverses.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::chain::{BasedChainComplex, BasedChainMap, Gen};
use crate::homology::homology;
use crate::matrix::SparseMat;
use crate::snf::{smith_normal_form, IntMatrix};
use crate::{Error, Result};

/// `cone(f)_n = D_n ⊕ C_{n-1}`, `d(y, x) = (dy + f x, −dx)`; generators of `D` first.
pub fn cone(f: &BasedChainMap) -> Result<BasedChainComplex> {
    if f.degree != 0 {
        return Err(Error::Domain("cone of a map of nonzero degree".into()));
    }
    let (c, d) = (&f.source, &f.target);
    let nd = d.len();
    let mut gens: Vec<Gen> = d.gens().to_vec();
    gens.extend(
        c.gens()
            .iter()
            .map(|g| Gen::new(g.object, g.degree + 1, format!("s{}", g.label))),
    );
    let trip = d
        .d()
        .entries()
        .chain(f.matrix.entries().map(|(r, col, v)| (r, col + nd, v)))
        .chain(c.d().entries().map(|(r, col, v)| (r + nd, col + nd, -v)))
        .collect::<Vec<_>>();
    let n = gens.len();
    BasedChainComplex::new(c.poset().clone(), gens, SparseMat::from_triplets(n, n, trip))
}

/// `[f](σ)` is a homology isomorphism at every object, i.e. `[cone f](σ)` is acyclic.
/// Returns the first object where it is not.
pub fn first_non_acyclic_object(c: &BasedChainComplex) -> Result<Option<usize>> {
    for o in 0..c.poset().len() {
        if !homology(&c.embedded_at(o))?.is_acyclic() {
            return Ok(Some(o));
        }
    }
    Ok(None)
}

pub fn is_weak_equivalence(f: &BasedChainMap) -> Result<std::result::Result<(), String>> {
    let cn = cone(f)?;
    Ok(match first_non_acyclic_object(&cn)? {
        None => Ok(()),
        Some(o) => Err(format!("cone not acyclic at {}", cn.poset().label(o))),
    })
}

/// A based contraction `s` of degree +1 with `ds + sd = 1`, built degree by
/// degree; column `j` of `s` only uses generators of `[C](obj j)`.
pub fn contraction(c: &BasedChainComplex) -> Option<SparseMat> {
    let n = c.len();
    let Some((lo, hi)) = c.degree_window() else {
        return Some(SparseMat::zeros(0, 0));
    };
    let p = c.poset();
    let mut s_trip: Vec<(usize, usize, i64)> = Vec::new();
    for deg in lo..=hi {
        let s_so_far = SparseMat::from_triplets(n, n, s_trip.iter().copied());
        // residual r = 1 − s d on generators of degree `deg`
        let sd = s_so_far.mul(c.d());
        for j in c.in_degree(deg) {
            let mut r: Vec<(usize, i64)> = vec![(j, 1)];
            for &(i, v) in sd.column(j) {
                r.push((i, -v));
            }
            let r = SparseMat::from_triplets(n, 1, r.into_iter().map(|(i, v)| (i, 0, v)));
            if r.is_zero() {
                continue;
            }
            let rows: Vec<usize> = (0..n)
                .filter(|&i| c.gen(i).degree == deg && p.leq(c.gen(i).object, c.gen(j).object))
                .collect();
            let cols: Vec<usize> = (0..n)
                .filter(|&i| c.gen(i).degree == deg + 1 && p.leq(c.gen(i).object, c.gen(j).object))
                .collect();
            let a = IntMatrix::from_sparse(&c.d().submatrix(&rows, &cols));
            let b: Vec<BigInt> = rows.iter().map(|&i| BigInt::from(r.get(i, 0))).collect();
            if r.column(0).iter().any(|&(i, _)| !rows.contains(&i)) {
                return None;
            }
            let x = smith_normal_form(&a).solve(&b)?;
            for (k, v) in x.iter().enumerate() {
                if !v.is_zero() {
                    s_trip.push((cols[k], j, v.to_i64()?));
                }
            }
        }
    }
    let s = SparseMat::from_triplets(n, n, s_trip);
    let check = c.d().mul(&s).add(&s.mul(c.d()));
    (check == SparseMat::identity(n)).then_some(s)
}

/// Homotopy inverse `g` of `f` with `g f − 1 = dh + hd` and `f g − 1 = dk + kd`.
#[derive(Clone, Debug)]
pub struct HomotopyCertificate {
    pub inverse: BasedChainMap,
    pub source_homotopy: BasedChainMap,
    pub target_homotopy: BasedChainMap,
}

impl HomotopyCertificate {
    pub fn verify(&self, f: &BasedChainMap) -> std::result::Result<(), String> {
        let g = &self.inverse;
        if !g.is_chain_map() {
            return Err("inverse is not a chain map".into());
        }
        let homotopic_to_identity = |m: SparseMat, h: &BasedChainMap, c: &BasedChainComplex| {
            let rhs = c.d().mul(&h.matrix).add(&h.matrix.mul(c.d()));
            m.sub(&SparseMat::identity(c.len())) == rhs
        };
        if !homotopic_to_identity(g.matrix.mul(&f.matrix), &self.source_homotopy, &f.source) {
            return Err("g∘f is not homotopic to the identity via h".into());
        }
        if !homotopic_to_identity(f.matrix.mul(&g.matrix), &self.target_homotopy, &f.target) {
            return Err("f∘g is not homotopic to the identity via k".into());
        }
        Ok(())
    }
}

/// Reads a homotopy inverse off a based contraction of the cone.
pub fn homotopy_inverse(f: &BasedChainMap) -> Result<Option<HomotopyCertificate>> {
    let cn = cone(f)?;
    let Some(s) = contraction(&cn) else {
        return Ok(None);
    };
    let nd = f.target.len();
    let nc = f.source.len();
    let d_idx: Vec<usize> = (0..nd).collect();
    let c_idx: Vec<usize> = (nd..nd + nc).collect();
    let g = s.submatrix(&c_idx, &d_idx);
    let h = s.submatrix(&c_idx, &c_idx);
    let k = s.submatrix(&d_idx, &d_idx).neg();
    Ok(Some(HomotopyCertificate {
        inverse: BasedChainMap::new(f.target.clone(), f.source.clone(), 0, g)?,
        source_homotopy: BasedChainMap::new(f.source.clone(), f.source.clone(), 1, h)?,
        target_homotopy: BasedChainMap::new(f.target.clone(), f.target.clone(), 1, k)?,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::delta_chain;
    use crate::poset::Poset;
    use crate::simplicial::SimplicialComplex;
    use std::sync::Arc;

    #[test]
    fn cone_of_identity_is_contractible() {
        let k = SimplicialComplex::simplex(2);
        let f = Arc::new(Poset::faces(&k));
        let c = delta_chain(&k, f);
        let id = BasedChainMap::identity(&c);
        is_weak_equivalence(&id).unwrap().unwrap();
        let cert = homotopy_inverse(&id).unwrap().unwrap();
        cert.verify(&id).unwrap();
    }

    #[test]
    fn twice_the_identity_is_not_an_equivalence() {
        let pt = Arc::new(Poset::point());
        let c = BasedChainComplex::point_at(pt, 0, 0);
        let two = BasedChainMap::new(c.clone(), c.clone(), 0, SparseMat::from_dense(&[vec![2]])).unwrap();
        assert!(is_weak_equivalence(&two).unwrap().is_err());
        assert!(homotopy_inverse(&two).unwrap().is_none());
    }

    #[test]
    fn augmentation_of_a_simplex_has_an_inverse() {
        // ΔΔ¹ → ℤ at the top object, as a map over the point
        let k = SimplicialComplex::simplex(1);
        let pt = Arc::new(Poset::point());
        let c = delta_chain(&k, Arc::new(Poset::faces(&k)))
            .induce(pt.clone(), &[0, 0, 0])
            .unwrap();
        let z = BasedChainComplex::point_at(pt, 0, 0);
        let eps = SparseMat::from_triplets(1, 3, (0..3).filter(|&i| c.gen(i).degree == 0).map(|i| (0, i, 1)));
        let f = BasedChainMap::new(c, z, 0, eps).unwrap();
        let cert = homotopy_inverse(&f).unwrap().unwrap();
        cert.verify(&f).unwrap();
    }

    #[test]
    fn objectwise_failure_is_located() {
        // ℤ_e → 0 over Δ¹ is acyclic nowhere, detected at e
        let k = SimplicialComplex::simplex(1);
        let p = Arc::new(Poset::faces(&k));
        let e = k.find(&[0, 1]).unwrap();
        let c = BasedChainComplex::point_at(p.clone(), e, 0);
        let z = BasedChainMap::zero(&c, &BasedChainComplex::zero(p), 0);
        let cn = cone(&z).unwrap();
        assert_eq!(first_non_acyclic_object(&cn).unwrap(), Some(e));
    }
}
