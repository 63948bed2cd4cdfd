//! The duality functor `T`, the involution `τ`, the counit `e_C : T²C → C`
//! and the dual-cell comparison maps.
//!
//! Two categories are handled by one code path. For complexes over `Q`
//! (`Q = K^op` or `Q = K`) let `B` be the complex over `Q^op` that is tensored
//! in (`ΔK` resp. `ΔK^{-*}`); then `TC = (B ⊗ [C])^{-*}`, with generators
//! `(b, c)^` for `c ∈ [C](obj b)`.

use std::sync::Arc;

use crate::chain::{
    augmentation_trivial, delta_chain, dualize, hom_based, tensor_round, tensor_round_square_based, BasedChainComplex,
    BasedChainMap, FunctorChainMap, Gen, PairComplex,
};
use crate::cw::dk_cw;
use crate::matrix::SparseMat;
use crate::poset::{chain_swap, Poset};
use crate::rules::{check_iso, Conventions};
use crate::simplicial::SimplicialComplex;
use crate::{sign, Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Variant {
    /// Complexes over `K` (bigger-to-smaller).
    K,
    /// Complexes over `K^op` (smaller-to-bigger).
    KOp,
}

impl Variant {
    pub const BOTH: [Variant; 2] = [Variant::KOp, Variant::K];

    pub fn name(self) -> &'static str {
        match self {
            Variant::K => "k",
            Variant::KOp => "kop",
        }
    }
}

/// Cached posets and simplicial complexes for one `K`.
#[derive(Clone, Debug)]
pub struct DualityContext {
    k: SimplicialComplex,
    faces: Arc<Poset>,
    op: Arc<Poset>,
    dk: Arc<Poset>,
    dkop: Arc<Poset>,
    delta: BasedChainComplex,
    codelta: BasedChainComplex,
}

/// `τ_{C,D} : Hom(TC, [D]) → Hom(TD, [C])`.
#[derive(Clone, Debug)]
pub struct Tau {
    pub source: PairComplex,
    pub target: PairComplex,
    pub matrix: SparseMat,
}

/// The domain `⊕ B^{-*}(σ) ⊗ B(ρ) ⊗ C(τ)` of the explicit formula for `e_C`,
/// with its comparison `Ψ` onto `T²C` and the augmentation `Φ = ε ⊗ 1` to `C`.
#[derive(Clone, Debug)]
pub struct PsiData {
    pub domain: BasedChainComplex,
    /// `(σ, k)` with `k` indexing `B ⊗ [C]`, i.e. the generator `(ρ, a)` of `TC`.
    pub triples: Vec<(usize, usize)>,
    pub psi: SparseMat,
    pub phi: SparseMat,
}

impl DualityContext {
    pub fn new(k: SimplicialComplex) -> Self {
        let faces = Arc::new(Poset::faces(&k));
        let op = Arc::new(faces.opposite());
        let dk = Arc::new(faces.chains());
        let dkop = Arc::new(op.chains());
        let delta = delta_chain(&k, faces.clone());
        let codelta = dualize(&delta, op.clone()).expect("opposite poset");
        DualityContext {
            k,
            faces,
            op,
            dk,
            dkop,
            delta,
            codelta,
        }
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.k
    }

    pub fn faces(&self) -> &Arc<Poset> {
        &self.faces
    }

    pub fn opposite(&self) -> &Arc<Poset> {
        &self.op
    }

    pub fn dk(&self) -> &Arc<Poset> {
        &self.dk
    }

    pub fn dkop(&self) -> &Arc<Poset> {
        &self.dkop
    }

    pub fn delta(&self) -> &BasedChainComplex {
        &self.delta
    }

    pub fn codelta(&self) -> &BasedChainComplex {
        &self.codelta
    }

    /// The poset the variant's complexes live over.
    pub fn category(&self, v: Variant) -> &Arc<Poset> {
        match v {
            Variant::K => &self.faces,
            Variant::KOp => &self.op,
        }
    }

    pub fn other(&self, v: Variant) -> &Arc<Poset> {
        match v {
            Variant::K => &self.op,
            Variant::KOp => &self.faces,
        }
    }

    /// `B`, over the opposite of the category.
    pub fn basis(&self, v: Variant) -> &BasedChainComplex {
        match v {
            Variant::K => &self.codelta,
            Variant::KOp => &self.delta,
        }
    }

    /// The other simplicial complex, over the category itself.
    pub fn cobasis(&self, v: Variant) -> &BasedChainComplex {
        match v {
            Variant::K => &self.delta,
            Variant::KOp => &self.codelta,
        }
    }

    fn chains_of_other(&self, v: Variant) -> &Arc<Poset> {
        match v {
            Variant::K => &self.dkop,
            Variant::KOp => &self.dk,
        }
    }

    fn check_variant(&self, v: Variant, c: &BasedChainComplex) -> Result<()> {
        if **c.poset() == **self.category(v) {
            Ok(())
        } else {
            Err(Error::Domain(format!(
                "complex is not over {}",
                self.category(v).kind().name()
            )))
        }
    }

    /// `TC`, with pairs `(b, c)` for the generator `(b ⊗ c)^`.
    pub fn t(&self, v: Variant, c: &BasedChainComplex) -> Result<PairComplex> {
        self.check_variant(v, c)?;
        let inner = tensor_round_square_based(self.basis(v), c)?;
        let complex = dualize(&inner.complex, self.category(v).clone())?;
        Ok(PairComplex {
            complex,
            pairs: inner.pairs,
            index: inner.index,
        })
    }

    /// `T(f) : TD → TC` for a chain map `f : C → D`, given `TC` and `TD`.
    pub fn t_map(&self, f: &BasedChainMap, tc: &PairComplex, td: &PairComplex) -> Result<BasedChainMap> {
        if f.degree != 0 {
            return Err(Error::Domain("T is applied to degree-0 maps".into()));
        }
        let mut trip = Vec::new();
        for (row, &(b, x)) in tc.pairs.iter().enumerate() {
            for &(y, v) in f.matrix.column(x) {
                let col = td.get(b, y).expect("f is triangular, so (b, f x) is a generator");
                trip.push((row, col, v));
            }
        }
        let m = SparseMat::from_triplets(tc.complex.len(), td.complex.len(), trip);
        BasedChainMap::new(td.complex.clone(), tc.complex.clone(), 0, m)
    }

    /// `τ_{C,D}`, given `TC` and `TD`. On `[(b,c)^ ↦ d]` the sign is
    /// `(−1)^{|b||c| + |b||d| + |c||d| + |c| + |d|}`, the `|c||d|` part being the swap.
    pub fn tau_with(
        &self,
        v: Variant,
        c: &BasedChainComplex,
        tc: &PairComplex,
        d: &BasedChainComplex,
        td: &PairComplex,
        conv: Conventions,
    ) -> Result<Tau> {
        self.check_variant(v, c)?;
        self.check_variant(v, d)?;
        let other = self.other(v).clone();
        let source = hom_based(&tc.complex, d, other.clone())?;
        let target = hom_based(&td.complex, c, other)?;
        let basis = self.basis(v);
        let trip: Vec<(usize, usize, i64)> = source
            .pairs
            .iter()
            .enumerate()
            .map(|(col, &(x, y))| {
                let (b, z) = tc.pairs[x];
                let xd = td.get(b, y).expect("obj d ≤ obj b");
                let row = target.get(xd, z).expect("obj c ≤ obj b");
                let (nb, nc, nd) = (basis.gen(b).degree, c.gen(z).degree, d.gen(y).degree);
                (row, col, sign(nb * nc + nb * nd + nc + nd) * conv.swap_sign(nc, nd))
            })
            .collect();
        let matrix = SparseMat::from_triplets(target.complex.len(), source.complex.len(), trip);
        Ok(Tau { source, target, matrix })
    }

    pub fn tau(&self, v: Variant, c: &BasedChainComplex, d: &BasedChainComplex, conv: Conventions) -> Result<Tau> {
        let tc = self.t(v, c)?;
        let td = self.t(v, d)?;
        self.tau_with(v, c, &tc, d, &td, conv)
    }

    /// `e_C = τ(id_{TC})`, given `TC` and `T²C = T(TC)`.
    pub fn e_by_tau(
        &self,
        v: Variant,
        c: &BasedChainComplex,
        tc: &PairComplex,
        t2c: &PairComplex,
        conv: Conventions,
    ) -> Result<BasedChainMap> {
        let tau = self.tau_with(v, c, tc, &tc.complex, t2c, conv)?;
        let id: Vec<(usize, i64)> = (0..tc.complex.len())
            .map(|x| (tau.source.get(x, x).expect("identity components are allowed"), 1))
            .collect();
        let image = tau.matrix.apply(&id);
        let trip = image.into_iter().map(|(i, val)| {
            let (xx, z) = tau.target.pairs[i];
            (z, xx, val)
        });
        let m = SparseMat::from_triplets(c.len(), t2c.complex.len(), trip);
        BasedChainMap::new(t2c.complex.clone(), c.clone(), 0, m)
    }

    /// The sign of `Ψ` on `σ̂ ⊗ ρ ⊗ a` of total degree `n`, with `m` the degree
    /// of the first factor. `literal` drops the double-dual sign on the `K` side.
    pub fn psi_sign(v: Variant, m: i64, n: i64, literal: bool) -> i64 {
        let base = sign((1 + m) * (n + m));
        match v {
            Variant::KOp => base,
            Variant::K if literal => base,
            Variant::K => base * sign(m),
        }
    }

    /// `ε` on the diagonal generator over `σ`: `ε(σ̂⊗σ) = 1`, `ε(σ⊗σ̂) = (−1)^{|σ|}`.
    pub fn eps_sign(&self, v: Variant, sigma: usize) -> i64 {
        match v {
            Variant::KOp => 1,
            Variant::K => sign(self.k.dim(sigma) as i64),
        }
    }

    /// `e_C = Φ ∘ Ψ^{-1}` from the explicit formulas: only the generators
    /// `(σ, (σ, a)^)^` contribute.
    pub fn e_explicit(
        &self,
        v: Variant,
        c: &BasedChainComplex,
        tc: &PairComplex,
        t2c: &PairComplex,
        literal: bool,
    ) -> BasedChainMap {
        let co = self.cobasis(v);
        let b = self.basis(v);
        let mut trip = Vec::new();
        for (k, &(rho, a)) in tc.pairs.iter().enumerate() {
            let Some(x) = t2c.get(rho, k) else { continue };
            let m = co.gen(rho).degree;
            let n = m + b.gen(rho).degree + c.gen(a).degree;
            trip.push((a, x, Self::psi_sign(v, m, n, literal) * self.eps_sign(v, rho)));
        }
        let mat = SparseMat::from_triplets(c.len(), t2c.complex.len(), trip);
        BasedChainMap::new(t2c.complex.clone(), c.clone(), 0, mat).expect("e is triangular")
    }

    /// The domain of `Ψ` as the round tensor `B^{-*}-side ⊗ (B ⊗ [C])` pushed to
    /// the category along the first projection; `Ψ` and `Φ` as matrices.
    pub fn psi(
        &self,
        v: Variant,
        c: &BasedChainComplex,
        tc: &PairComplex,
        t2c: &PairComplex,
        literal: bool,
    ) -> Result<PsiData> {
        let inner = tensor_round_square_based(self.basis(v), c)?;
        let co = self.cobasis(v);
        let rt = tensor_round(co, &inner.complex, self.chains_of_other(v).clone())?;
        let first: Vec<usize> = self.other(v).chain_pairs().into_iter().map(|(a, _)| a).collect();
        let domain = rt.complex.induce(self.category(v).clone(), &first)?;
        let mut psi = Vec::new();
        let mut phi = Vec::new();
        for (col, &(sigma, k)) in rt.pairs.iter().enumerate() {
            let (rho, a) = inner.pairs[k];
            let x = tc.get(rho, a).expect("TC has the generators of B ⊗ [C]");
            let target = t2c.get(sigma, x).expect("σ ≤ ρ puts (ρ, a)^ in [TC](σ)");
            let m = co.gen(sigma).degree;
            let n = domain.gen(col).degree;
            psi.push((target, col, Self::psi_sign(v, m, n, literal)));
            if rho == sigma {
                phi.push((a, col, self.eps_sign(v, sigma)));
            }
        }
        let nd = domain.len();
        Ok(PsiData {
            psi: SparseMat::from_triplets(t2c.complex.len(), nd, psi),
            phi: SparseMat::from_triplets(c.len(), nd, phi),
            triples: rt.pairs,
            domain,
        })
    }

    /// `C(DK)` from the oriented dual cells, generators indexed like `DK`.
    pub fn cdk_chain(&self) -> BasedChainComplex {
        let cw = dk_cw(&self.k);
        let gens: Vec<Gen> = cw
            .cells
            .iter()
            .enumerate()
            .map(|(i, c)| Gen::new(i, c.dim as i64, c.label.clone()))
            .collect();
        let trip = cw
            .boundary_faces
            .iter()
            .enumerate()
            .flat_map(|(i, faces)| faces.iter().map(move |&f| (f, i)))
            .map(|(f, i)| (f, i, cw.alpha(i, f)))
            .collect::<Vec<_>>();
        let n = gens.len();
        BasedChainComplex::new(self.dk.clone(), gens, SparseMat::from_triplets(n, n, trip))
            .expect("dual cells form a based complex")
    }

    /// `ΔK^{-*} ⊗_{ℤ(K)} ΔK` over `DK`, pairs `(σ, τ)` for `σ̂ ⊗ τ`.
    pub fn dk_tensor(&self) -> PairComplex {
        tensor_round(&self.codelta, &self.delta, self.dk.clone()).expect("matching sides")
    }

    /// `ΔK ⊗_{ℤ(K^op)} ΔK^{-*}` over `DK^op`, pairs `(τ, σ)` for `τ ⊗ σ̂`.
    pub fn dkop_tensor(&self) -> PairComplex {
        tensor_round(&self.delta, &self.codelta, self.dkop.clone()).expect("matching sides")
    }

    /// `D_τσ ↦ σ̂ ⊗ τ` checked to be an isomorphism of based complexes.
    pub fn cdk_iso(&self) -> std::result::Result<(), String> {
        let cdk = self.cdk_chain();
        let t = self.dk_tensor();
        let pairs = self.faces.chain_pairs();
        let m = SparseMat::from_triplets(
            t.complex.len(),
            cdk.len(),
            pairs
                .iter()
                .enumerate()
                .map(|(i, &(s, tau))| (t.get(s, tau).expect("every 1-chain"), i, 1)),
        );
        check_iso(&cdk, &t.complex, &m)
    }

    /// `ε` on either side, as a map of functor complexes to `ℤ` at every 1-chain.
    pub fn eps_dk(&self, v: Variant) -> FunctorChainMap {
        let t = match v {
            Variant::KOp => self.dk_tensor(),
            Variant::K => self.dkop_tensor(),
        };
        augmentation_trivial(&t.complex, |g| {
            let (a, b) = t.pairs[g];
            (a == b).then(|| self.eps_sign(v, a))
        })
    }

    /// `σ̂ ⊗ τ ↦ (−1)^{|σ||τ|} τ ⊗ σ̂`, checked to be an isomorphism once the
    /// `DK` side is carried to `DK^op` by swapping the ends of each 1-chain.
    pub fn p_iso(&self) -> Result<std::result::Result<(), String>> {
        let swap =
            chain_swap(&self.dk, &self.dkop).ok_or_else(|| Error::Structural("DK and DK^op do not match".into()))?;
        let t1 = self.dk_tensor();
        let t2 = self.dkop_tensor();
        let moved = t1.complex.induce(self.dkop.clone(), &swap)?;
        let m = SparseMat::from_triplets(
            t2.complex.len(),
            t1.complex.len(),
            t1.pairs.iter().enumerate().map(|(i, &(s, tau))| {
                let e = self.k.dim(s) as i64 * self.k.dim(tau) as i64;
                (t2.get(tau, s).expect("swapped pair"), i, sign(e))
            }),
        );
        if let Err(e) = check_iso(&moved, &t2.complex, &m) {
            return Ok(Err(e));
        }
        // the two augmentations agree through the isomorphism
        let ok = t1.pairs.iter().enumerate().all(|(i, &(s, tau))| {
            let e1 = if s == tau { self.eps_sign(Variant::KOp, s) } else { 0 };
            let (row, val) = m.column(i)[0];
            let (a, b) = t2.pairs[row];
            let e2 = if a == b { self.eps_sign(Variant::K, a) } else { 0 };
            e1 == val * e2
        });
        Ok(if ok {
            Ok(())
        } else {
            Err("augmentations do not correspond".into())
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::homology;
    use crate::random::{random_complex, rng};
    use crate::rules::check_chain_map;

    #[test]
    fn t_of_a_point_module_over_an_edge() {
        let ctx = DualityContext::new(SimplicialComplex::simplex(1));
        let e = ctx.complex().find(&[0, 1]).unwrap();
        let c = BasedChainComplex::point_at(ctx.opposite().clone(), e, 0);
        let tc = ctx.t(Variant::KOp, &c).unwrap();
        let mut shape: Vec<(String, i64)> = tc
            .complex
            .gens()
            .iter()
            .map(|g| (ctx.complex().label(g.object), g.degree))
            .collect();
        shape.sort();
        let v0 = ctx.complex().label(ctx.complex().find(&[0]).unwrap());
        let v1 = ctx.complex().label(ctx.complex().find(&[1]).unwrap());
        let le = ctx.complex().label(e);
        let mut want = vec![(v0, 0), (v1, 0), (le, -1)];
        want.sort();
        assert_eq!(shape, want);
    }

    #[test]
    fn e_is_identity_over_a_point() {
        let ctx = DualityContext::new(SimplicialComplex::point());
        for v in Variant::BOTH {
            let c = BasedChainComplex::point_at(ctx.category(v).clone(), 0, 0);
            let tc = ctx.t(v, &c).unwrap();
            let t2c = ctx.t(v, &tc.complex).unwrap();
            let e = ctx.e_by_tau(v, &c, &tc, &t2c, Conventions::STANDARD).unwrap();
            assert_eq!(e.matrix, SparseMat::identity(1));
        }
    }

    #[test]
    fn tau_is_an_involutive_chain_iso() {
        let ctx = DualityContext::new(SimplicialComplex::simplex(2));
        for v in Variant::BOTH {
            let p = ctx.category(v).clone();
            let c = random_complex(&p, &mut rng(1));
            let d = random_complex(&p, &mut rng(2));
            let a = ctx.tau(v, &c, &d, Conventions::STANDARD).unwrap();
            let b = ctx.tau(v, &d, &c, Conventions::STANDARD).unwrap();
            check_iso(&a.source.complex, &a.target.complex, &a.matrix).unwrap();
            assert_eq!(b.matrix.mul(&a.matrix), SparseMat::identity(a.source.complex.len()));
        }
    }

    #[test]
    fn routes_agree_and_psi_is_an_iso() {
        let ctx = DualityContext::new(SimplicialComplex::simplex(2));
        for v in Variant::BOTH {
            let c = random_complex(ctx.category(v), &mut rng(5));
            let tc = ctx.t(v, &c).unwrap();
            let t2c = ctx.t(v, &tc.complex).unwrap();
            let ea = ctx.e_by_tau(v, &c, &tc, &t2c, Conventions::STANDARD).unwrap();
            let eb = ctx.e_explicit(v, &c, &tc, &t2c, false);
            assert_eq!(ea.matrix, eb.matrix, "{}", v.name());
            assert!(ea.is_chain_map());
            let psi = ctx.psi(v, &c, &tc, &t2c, false).unwrap();
            check_iso(&psi.domain, &t2c.complex, &psi.psi).unwrap();
            assert_eq!(ea.matrix.mul(&psi.psi), psi.phi);
            check_chain_map(&psi.domain, &c, &psi.phi).unwrap();
        }
    }

    #[test]
    fn literal_k_formula_is_off_by_the_dimension_sign() {
        let ctx = DualityContext::new(SimplicialComplex::simplex(1));
        let c = ctx.delta().clone();
        let tc = ctx.t(Variant::K, &c).unwrap();
        let t2c = ctx.t(Variant::K, &tc.complex).unwrap();
        let good = ctx.e_explicit(Variant::K, &c, &tc, &t2c, false);
        let lit = ctx.e_explicit(Variant::K, &c, &tc, &t2c, true);
        for (r, col, v) in good.matrix.entries() {
            let rho = tc.pairs[t2c.pairs[col].1].0;
            assert_eq!(lit.matrix.get(r, col), v * sign(ctx.complex().dim(rho) as i64));
        }
        let psi = ctx.psi(Variant::K, &c, &tc, &t2c, true).unwrap();
        assert!(check_chain_map(&psi.domain, &t2c.complex, &psi.psi).is_err());
    }

    #[test]
    fn dual_cells_match_the_tensor() {
        for k in [
            SimplicialComplex::simplex(1),
            SimplicialComplex::simplex(2),
            SimplicialComplex::simplex_boundary(3),
        ] {
            let ctx = DualityContext::new(k);
            ctx.cdk_iso().unwrap();
            ctx.p_iso().unwrap().unwrap();
            for v in Variant::BOTH {
                let eps = ctx.eps_dk(v);
                assert_eq!(eps.first_defect(), None);
            }
        }
    }

    #[test]
    fn dual_cell_of_vertex_in_triangle_has_point_homology() {
        let ctx = DualityContext::new(SimplicialComplex::simplex(2));
        let t = ctx.dk_tensor();
        let v0 = ctx.complex().find(&[0]).unwrap();
        let top = ctx.complex().find(&[0, 1, 2]).unwrap();
        let obj = ctx.faces().chain_pairs().iter().position(|&p| p == (v0, top)).unwrap();
        let h = homology(&t.complex.embedded_at(obj)).unwrap();
        assert!(h.is_point());
    }
}
