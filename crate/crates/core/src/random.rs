//! Seeded pseudorandom based complexes and chain maps.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::chain::{BasedChainComplex, BasedChainMap, Gen};
use crate::matrix::SparseMat;
use crate::poset::Poset;

pub const MIN_DEGREE: i64 = -2;
pub const MAX_DEGREE: i64 = 2;
pub const MAX_ENTRY: i64 = 2;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Stream for sample `index` of a run seeded with `seed`.
pub fn sample_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(index + 1);
    r
}

fn entry<R: Rng>(rng: &mut R) -> i64 {
    let mut v = 0;
    while v == 0 {
        v = rng.gen_range(-MAX_ENTRY..=MAX_ENTRY);
    }
    v
}

/// The cone of a random triangular degree-0 map `A → B` between complexes with
/// zero differential, conjugated by a random unipotent triangular
/// automorphism whenever that keeps the entries in `[−2, 2]`. At most two
/// generators per object and degree, all degrees in `[−2, 2]`.
pub fn random_complex<R: Rng>(poset: &Arc<Poset>, rng: &mut R) -> BasedChainComplex {
    let p = poset.clone();
    let mut gens = Vec::new();
    // B in degrees [−2, 2], A shifted into degrees [−1, 2]
    let mut b_gens = Vec::new();
    let mut a_gens = Vec::new();
    for o in 0..p.len() {
        for deg in MIN_DEGREE..=MAX_DEGREE {
            if rng.gen_bool(0.3) {
                b_gens.push(gens.len());
                gens.push(Gen::new(o, deg, format!("b{}.{}@{}", gens.len(), deg, p.label(o))));
            }
            if deg > MIN_DEGREE && rng.gen_bool(0.3) {
                a_gens.push(gens.len());
                gens.push(Gen::new(o, deg, format!("a{}.{}@{}", gens.len(), deg, p.label(o))));
            }
        }
    }
    let n = gens.len();
    let mut trip = Vec::new();
    for &a in &a_gens {
        for &b in &b_gens {
            let (ga, gb) = (&gens[a], &gens[b]);
            if gb.degree + 1 == ga.degree && p.leq(gb.object, ga.object) && rng.gen_bool(0.5) {
                trip.push((b, a, entry(rng)));
            }
        }
    }
    let d = SparseMat::from_triplets(n, n, trip);
    let d = conjugate(&p, &gens, d, rng);
    BasedChainComplex::new(p, gens, d).expect("cones of triangular maps are based complexes")
}

fn conjugate<R: Rng>(p: &Poset, gens: &[Gen], d: SparseMat, rng: &mut R) -> SparseMat {
    let n = gens.len();
    for _ in 0..4 {
        // u = 1 + e·E_{ij}, i ≠ j with obj i ≤ obj j and equal degrees
        let mut cands: Vec<(usize, usize)> = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if i != j && gens[i].degree == gens[j].degree && p.leq(gens[i].object, gens[j].object) {
                    cands.push((i, j));
                }
            }
        }
        let Some(&(i, j)) = cands.choose(rng) else {
            return d;
        };
        let e = entry(rng);
        let u = SparseMat::identity(n).add(&SparseMat::from_triplets(n, n, [(i, j, e)]));
        let u_inv = SparseMat::identity(n).add(&SparseMat::from_triplets(n, n, [(i, j, -e)]));
        let conj = u.mul(&d).mul(&u_inv);
        if conj.entries().all(|(_, _, v)| v.abs() <= MAX_ENTRY) && !conj.is_zero() {
            return conj;
        }
    }
    d
}

/// A random degree-0 chain map `C → D` of the form `d h + h d` plus, when the
/// complexes coincide, a multiple of the identity.
pub fn random_chain_map<R: Rng>(
    c: &BasedChainComplex,
    d: &BasedChainComplex,
    same: bool,
    rng: &mut R,
) -> BasedChainMap {
    let p = c.poset();
    let mut trip = Vec::new();
    for j in 0..c.len() {
        for i in 0..d.len() {
            let (gc, gd) = (c.gen(j), d.gen(i));
            if gd.degree == gc.degree + 1 && p.leq(gd.object, gc.object) && rng.gen_bool(0.4) {
                trip.push((i, j, entry(rng)));
            }
        }
    }
    let h = SparseMat::from_triplets(d.len(), c.len(), trip);
    let mut m = d.d().mul(&h).add(&h.mul(c.d()));
    if same {
        m = m.add(&SparseMat::identity(c.len()).scale(rng.gen_range(-1..=2)));
    }
    BasedChainMap::new(c.clone(), d.clone(), 0, m).expect("homotopies of triangular maps are triangular")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::SimplicialComplex;
    use proptest::prelude::*;

    fn poset() -> Arc<Poset> {
        Arc::new(Poset::faces(&SimplicialComplex::simplex(2)))
    }

    #[test]
    fn deterministic_per_seed() {
        let p = poset();
        let a = random_complex(&p, &mut sample_rng(7, 3));
        let b = random_complex(&p, &mut sample_rng(7, 3));
        assert_eq!(a.d(), b.d());
        assert_eq!(a.gens(), b.gens());
    }

    proptest! {
        #[test]
        fn samples_are_valid(seed in 0u64..500) {
            let p = poset();
            let c = random_complex(&p, &mut rng(seed));
            c.check_d_squared().unwrap();
            for o in 0..p.len() {
                for deg in MIN_DEGREE..=MAX_DEGREE {
                    let here = c.gens().iter().filter(|g| g.object == o && g.degree == deg).count();
                    prop_assert!(here <= 2);
                }
            }
            prop_assert!(c.d().entries().all(|(_, _, v)| v.abs() <= MAX_ENTRY));
            let f = random_chain_map(&c, &c, true, &mut rng(seed + 1));
            prop_assert!(f.is_chain_map());
        }
    }
}
