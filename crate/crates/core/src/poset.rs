//! Finite posets: face posets `K`, `K^op`, and the 1-chain posets `DK`, `D(K^op)`.
//!
//! Morphisms are never materialized; a poset has at most one arrow per ordered
//! pair, so `leq(a, b)` is the whole structure.

use crate::simplicial::SimplicialComplex;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PosetKind {
    /// Simplices ordered by inclusion.
    Faces,
    /// Simplices ordered by reverse inclusion.
    OppositeFaces,
    /// 1-chains of `K`.
    Chains,
    /// 1-chains of `K^op`; isomorphic to [`PosetKind::Chains`] by swapping ends.
    OppositeChains,
    /// The one-object poset.
    Point,
    Custom,
}

impl PosetKind {
    pub fn name(self) -> &'static str {
        match self {
            PosetKind::Faces => "K",
            PosetKind::OppositeFaces => "K^op",
            PosetKind::Chains => "DK",
            PosetKind::OppositeChains => "DK^op",
            PosetKind::Point => "1",
            PosetKind::Custom => "custom",
        }
    }

    fn opposite(self) -> PosetKind {
        match self {
            PosetKind::Faces => PosetKind::OppositeFaces,
            PosetKind::OppositeFaces => PosetKind::Faces,
            PosetKind::Chains | PosetKind::OppositeChains | PosetKind::Custom => PosetKind::Custom,
            PosetKind::Point => PosetKind::Point,
        }
    }
}

/// What an element of a poset stands for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PosetElem {
    Simplex(usize),
    /// A 1-chain `from ≤ to` in the underlying face poset (`K` or `K^op`).
    Chain {
        from: usize,
        to: usize,
    },
    Point,
    Opaque(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset {
    kind: PosetKind,
    elems: Vec<PosetElem>,
    labels: Vec<String>,
    leq: Vec<bool>,
}

impl Poset {
    /// Builds a poset from an explicit order relation; checks the poset axioms.
    pub fn from_relation(
        kind: PosetKind,
        elems: Vec<PosetElem>,
        labels: Vec<String>,
        leq: impl Fn(usize, usize) -> bool,
    ) -> crate::Result<Self> {
        let n = elems.len();
        let mut table = vec![false; n * n];
        for a in 0..n {
            for b in 0..n {
                table[a * n + b] = leq(a, b);
            }
        }
        let p = Poset {
            kind,
            elems,
            labels,
            leq: table,
        };
        p.check_axioms()?;
        Ok(p)
    }

    fn check_axioms(&self) -> crate::Result<()> {
        let n = self.len();
        for a in 0..n {
            if !self.leq(a, a) {
                return Err(crate::Error::Structural(format!(
                    "{} not reflexive at {a}",
                    self.kind.name()
                )));
            }
            for b in 0..n {
                if a != b && self.leq(a, b) && self.leq(b, a) {
                    return Err(crate::Error::Structural(format!("antisymmetry fails at ({a},{b})")));
                }
                if self.leq(a, b) {
                    for c in 0..n {
                        if self.leq(b, c) && !self.leq(a, c) {
                            return Err(crate::Error::Structural(format!("transitivity fails at ({a},{b},{c})")));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn faces(k: &SimplicialComplex) -> Self {
        let n = k.len();
        let elems = (0..n).map(PosetElem::Simplex).collect();
        let labels = (0..n).map(|s| k.label(s)).collect();
        let mut table = vec![false; n * n];
        for a in 0..n {
            for b in 0..n {
                table[a * n + b] = k.is_face(a, b);
            }
        }
        Poset {
            kind: PosetKind::Faces,
            elems,
            labels,
            leq: table,
        }
    }

    pub fn point() -> Self {
        Poset {
            kind: PosetKind::Point,
            elems: vec![PosetElem::Point],
            labels: vec!["*".into()],
            leq: vec![true],
        }
    }

    pub fn opposite(&self) -> Self {
        let n = self.len();
        let mut table = vec![false; n * n];
        for a in 0..n {
            for b in 0..n {
                table[a * n + b] = self.leq(b, a);
            }
        }
        Poset {
            kind: self.kind.opposite(),
            elems: self.elems.clone(),
            labels: self.labels.clone(),
            leq: table,
        }
    }

    /// The poset of 1-chains `a ≤ b` of `self`, ordered by
    /// `(a, b) ≤ (a', b')` iff `a' ≤ a ≤ b ≤ b'`.
    pub fn chains(&self) -> Self {
        let kind = match self.kind {
            PosetKind::Faces => PosetKind::Chains,
            PosetKind::OppositeFaces => PosetKind::OppositeChains,
            _ => PosetKind::Custom,
        };
        let pairs = self.chain_pairs();
        let n = pairs.len();
        let mut table = vec![false; n * n];
        for (x, &(a, b)) in pairs.iter().enumerate() {
            for (y, &(a2, b2)) in pairs.iter().enumerate() {
                table[x * n + y] = self.leq(a2, a) && self.leq(b, b2);
            }
        }
        let labels = pairs
            .iter()
            .map(|&(a, b)| format!("({}≤{})", self.labels[a], self.labels[b]))
            .collect();
        let elems = pairs
            .iter()
            .map(|&(a, b)| PosetElem::Chain {
                from: self.simplex_id(a),
                to: self.simplex_id(b),
            })
            .collect();
        Poset {
            kind,
            elems,
            labels,
            leq: table,
        }
    }

    /// The pairs `a ≤ b`, in the order used to index `self.chains()`.
    pub fn chain_pairs(&self) -> Vec<(usize, usize)> {
        let mut pairs = Vec::new();
        for a in 0..self.len() {
            for b in 0..self.len() {
                if self.leq(a, b) {
                    pairs.push((a, b));
                }
            }
        }
        pairs
    }

    fn simplex_id(&self, a: usize) -> usize {
        match self.elems[a] {
            PosetElem::Simplex(s) => s,
            _ => a,
        }
    }

    pub fn kind(&self) -> PosetKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn elem(&self, a: usize) -> PosetElem {
        self.elems[a]
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a * self.len() + b]
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq(a, b)
    }

    /// Elements `b ≤ a`.
    pub fn down_set(&self, a: usize) -> Vec<usize> {
        (0..self.len()).filter(|&b| self.leq(b, a)).collect()
    }

    pub fn up_set(&self, a: usize) -> Vec<usize> {
        (0..self.len()).filter(|&b| self.leq(a, b)).collect()
    }

    /// Position of an element.
    pub fn index_of(&self, e: PosetElem) -> Option<usize> {
        self.elems.iter().position(|&x| x == e)
    }

    /// Whether `map` (indexed by elements of `self`) is order preserving into `target`.
    pub fn is_monotone(&self, target: &Poset, map: &[usize]) -> bool {
        map.len() == self.len()
            && map.iter().all(|&m| m < target.len())
            && (0..self.len()).all(|a| (0..self.len()).all(|b| !self.leq(a, b) || target.leq(map[a], map[b])))
    }

    /// A linear extension: every element appears after all elements below it.
    pub fn linear_extension(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by_key(|&a| (0..self.len()).filter(|&b| self.lt(b, a)).count());
        order
    }
}

/// The end-swap `(a ≤ b) ↦ (b ≤ a)` from the chains of `P` to the chains of `P^op`.
pub fn chain_swap(dp: &Poset, dpop: &Poset) -> Option<Vec<usize>> {
    (0..dp.len())
        .map(|x| match dp.elem(x) {
            PosetElem::Chain { from, to } => dpop.index_of(PosetElem::Chain { from: to, to: from }),
            _ => None,
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::SimplicialComplex;

    #[test]
    fn chains_of_edge() {
        let k = SimplicialComplex::build(&[vec![0, 1]]).unwrap();
        let dk = Poset::faces(&k).chains();
        assert_eq!(dk.len(), 5);
        assert!(dk.check_axioms().is_ok());
    }

    #[test]
    fn swap_is_order_isomorphism() {
        let k = SimplicialComplex::build(&[vec![0, 1, 2]]).unwrap();
        let kk = Poset::faces(&k);
        let dk = kk.chains();
        let dkop = kk.opposite().chains();
        let swap = chain_swap(&dk, &dkop).unwrap();
        assert!(dk.is_monotone(&dkop, &swap));
        let mut inv = vec![0; swap.len()];
        for (a, &b) in swap.iter().enumerate() {
            inv[b] = a;
        }
        assert!(dkop.is_monotone(&dk, &inv));
        assert_eq!(dkop.kind(), PosetKind::OppositeChains);
    }

    #[test]
    fn opposite_twice_is_identity() {
        let k = SimplicialComplex::build(&[vec![0, 1, 2], vec![2, 3]]).unwrap();
        let p = Poset::faces(&k);
        assert_eq!(p.opposite().opposite(), p);
    }
}
