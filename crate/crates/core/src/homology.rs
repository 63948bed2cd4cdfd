//! Bounded chain complexes of free abelian groups and their integer homology.

use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::matrix::SparseMat;
use crate::snf::invariant_factors;
use crate::{Error, Result};

/// `C_n` free of rank `ranks[n - min_degree]`; `d[k]: C_{min+k} → C_{min+k-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntChainComplex {
    min_degree: i64,
    ranks: Vec<usize>,
    d: Vec<SparseMat>,
}

impl IntChainComplex {
    /// `d[k]` must be `ranks[k-1] × ranks[k]` (with `ranks[-1] = 0`).
    pub fn new(min_degree: i64, ranks: Vec<usize>, d: Vec<SparseMat>) -> Result<Self> {
        if ranks.len() != d.len() {
            return Err(Error::Structural("one boundary matrix per degree expected".into()));
        }
        for (k, m) in d.iter().enumerate() {
            let below = if k == 0 { 0 } else { ranks[k - 1] };
            if m.nrows() != below || m.ncols() != ranks[k] {
                return Err(Error::Structural(format!(
                    "boundary in degree {} has shape {}x{}, expected {}x{}",
                    min_degree + k as i64,
                    m.nrows(),
                    m.ncols(),
                    below,
                    ranks[k]
                )));
            }
        }
        Ok(IntChainComplex { min_degree, ranks, d })
    }

    pub fn zero() -> Self {
        IntChainComplex {
            min_degree: 0,
            ranks: Vec::new(),
            d: Vec::new(),
        }
    }

    pub fn min_degree(&self) -> i64 {
        self.min_degree
    }

    pub fn max_degree(&self) -> i64 {
        self.min_degree + self.ranks.len() as i64 - 1
    }

    pub fn rank(&self, n: i64) -> usize {
        self.slot(n).map_or(0, |k| self.ranks[k])
    }

    pub fn total_rank(&self) -> usize {
        self.ranks.iter().sum()
    }

    /// `d_n: C_n → C_{n-1}`.
    pub fn boundary(&self, n: i64) -> SparseMat {
        match self.slot(n) {
            Some(k) => self.d[k].clone(),
            None => SparseMat::zeros(self.rank(n - 1), 0),
        }
    }

    fn slot(&self, n: i64) -> Option<usize> {
        let k = n - self.min_degree;
        (k >= 0 && (k as usize) < self.ranks.len()).then_some(k as usize)
    }

    /// First degree `n` with `d_{n-1} d_n ≠ 0`.
    pub fn d_squared_violation(&self) -> Option<i64> {
        (1..self.d.len())
            .find(|&k| !self.d[k - 1].mul(&self.d[k]).is_zero())
            .map(|k| self.min_degree + k as i64)
    }
}

/// The complex on `subset` of a graded basis, with `d` restricted to rows and
/// columns in `subset`. The caller guarantees this is a sub- or quotient complex.
pub fn graded_complex(degrees: &[i64], d: &SparseMat, subset: &[usize]) -> IntChainComplex {
    if subset.is_empty() {
        return IntChainComplex::zero();
    }
    let lo = subset.iter().map(|&g| degrees[g]).min().expect("nonempty");
    let hi = subset.iter().map(|&g| degrees[g]).max().expect("nonempty");
    let width = (hi - lo + 1) as usize;
    let mut by_degree: Vec<Vec<usize>> = vec![Vec::new(); width];
    for &g in subset {
        by_degree[(degrees[g] - lo) as usize].push(g);
    }
    let ds = (0..width)
        .map(|k| {
            let rows: &[usize] = if k == 0 { &[] } else { &by_degree[k - 1] };
            d.submatrix(rows, &by_degree[k])
        })
        .collect();
    IntChainComplex {
        min_degree: lo,
        ranks: by_degree.iter().map(Vec::len).collect(),
        d: ds,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyGroup {
    pub degree: i64,
    pub betti: usize,
    #[serde(serialize_with = "as_strings")]
    pub torsion: Vec<BigInt>,
}

fn as_strings<S: Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

impl HomologyGroup {
    pub fn is_zero(&self) -> bool {
        self.betti == 0 && self.torsion.is_empty()
    }

    pub fn is_z(&self) -> bool {
        self.betti == 1 && self.torsion.is_empty()
    }
}

impl fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        match self.betti {
            0 => {}
            1 => parts.push("Z".into()),
            b => parts.push(format!("Z^{b}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Homology in every degree of the support window.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologySummary {
    pub groups: Vec<HomologyGroup>,
}

impl HomologySummary {
    pub fn group(&self, n: i64) -> HomologyGroup {
        self.groups
            .iter()
            .find(|g| g.degree == n)
            .cloned()
            .unwrap_or(HomologyGroup {
                degree: n,
                betti: 0,
                torsion: Vec::new(),
            })
    }

    pub fn is_acyclic(&self) -> bool {
        self.groups.iter().all(HomologyGroup::is_zero)
    }

    /// `ℤ` in degree 0 and nothing else.
    pub fn is_point(&self) -> bool {
        self.groups
            .iter()
            .all(|g| if g.degree == 0 { g.is_z() } else { g.is_zero() })
            && self.group(0).is_z()
    }

    /// Nonzero groups only.
    pub fn nonzero(&self) -> Vec<&HomologyGroup> {
        self.groups.iter().filter(|g| !g.is_zero()).collect()
    }
}

impl fmt::Display for HomologySummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let nz = self.nonzero();
        if nz.is_empty() {
            return write!(f, "acyclic");
        }
        let parts: Vec<String> = nz.iter().map(|g| format!("H{} = {}", g.degree, g)).collect();
        write!(f, "{}", parts.join(", "))
    }
}

/// `H_n = ker d_n / im d_{n+1}`, torsion read off the invariant factors of `d_{n+1}`.
pub fn homology(c: &IntChainComplex) -> Result<HomologySummary> {
    if let Some(n) = c.d_squared_violation() {
        return Err(Error::Structural(format!("d∘d ≠ 0 at degree {n}")));
    }
    let factors: Vec<Vec<BigInt>> = c.d.par_iter().map(invariant_factors).collect();
    let groups = (0..c.ranks.len())
        .map(|k| {
            let rank_here = factors[k].len();
            let above: &[BigInt] = factors.get(k + 1).map_or(&[], Vec::as_slice);
            HomologyGroup {
                degree: c.min_degree + k as i64,
                betti: c.ranks[k] - rank_here - above.len(),
                torsion: above.iter().filter(|v| !v.is_one()).cloned().collect(),
            }
        })
        .collect();
    Ok(HomologySummary { groups })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn simplicial(k: &crate::SimplicialComplex) -> IntChainComplex {
        let top = k.dimension();
        let by_dim: Vec<Vec<usize>> = (0..=top)
            .map(|d| (0..k.len()).filter(|&s| k.dim(s) == d).collect())
            .collect();
        let pos = |s: usize| by_dim[k.dim(s)].iter().position(|&x| x == s).unwrap();
        let mut ds = Vec::new();
        for d in 0..=top {
            let rows = if d == 0 { 0 } else { by_dim[d - 1].len() };
            let trip = by_dim[d]
                .iter()
                .enumerate()
                .flat_map(|(j, &s)| k.boundary(s).iter().map(move |&(f, c)| (pos(f), j, c)))
                .collect::<Vec<_>>();
            ds.push(SparseMat::from_triplets(rows, by_dim[d].len(), trip));
        }
        IntChainComplex::new(0, by_dim.iter().map(Vec::len).collect(), ds).unwrap()
    }

    #[test]
    fn sphere_and_projective_plane() {
        let h = homology(&simplicial(&crate::SimplicialComplex::simplex_boundary(3))).unwrap();
        assert_eq!(h.to_string(), "H0 = Z, H2 = Z");
        let h = homology(&simplicial(&crate::SimplicialComplex::rp2())).unwrap();
        assert_eq!(h.to_string(), "H0 = Z, H1 = Z/2");
        let h = homology(&simplicial(&crate::SimplicialComplex::simplex(3))).unwrap();
        assert!(h.is_point());
    }

    #[test]
    fn rejects_nonzero_square() {
        let c = IntChainComplex::new(
            0,
            vec![1, 1, 1],
            vec![
                SparseMat::zeros(0, 1),
                SparseMat::from_dense(&[vec![1]]),
                SparseMat::from_dense(&[vec![1]]),
            ],
        )
        .unwrap();
        assert!(matches!(homology(&c), Err(Error::Structural(_))));
    }

    #[test]
    fn basis_change_invariance() {
        use rand::{Rng, SeedableRng};
        let base = simplicial(&crate::SimplicialComplex::rp2());
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        // conjugate by a random unipotent upper-triangular automorphism per degree
        let autos: Vec<(SparseMat, SparseMat)> = base
            .ranks
            .iter()
            .map(|&n| {
                let mut trip = Vec::new();
                for i in 0..n {
                    trip.push((i, i, 1));
                    if i + 1 < n {
                        trip.push((i, i + 1, rng.gen_range(-2..=2)));
                    }
                }
                let a = SparseMat::from_triplets(n, n, trip);
                // inverse of I + N with N nilpotent
                let nil = a.sub(&SparseMat::identity(n));
                let mut inv = SparseMat::identity(n);
                let mut pow = SparseMat::identity(n);
                for k in 1..=n {
                    pow = pow.mul(&nil);
                    inv = if k % 2 == 1 { inv.sub(&pow) } else { inv.add(&pow) };
                }
                (a, inv)
            })
            .collect();
        let d = (0..base.ranks.len())
            .map(|k| {
                if k == 0 {
                    base.d[0].clone()
                } else {
                    autos[k - 1].1.mul(&base.d[k]).mul(&autos[k].0)
                }
            })
            .collect();
        let conj = IntChainComplex::new(0, base.ranks.clone(), d).unwrap();
        assert_eq!(homology(&conj).unwrap(), homology(&base).unwrap());
    }
}
