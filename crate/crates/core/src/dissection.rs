//! Dissections of a simplicial complex `X` by subcomplexes indexed by `K`, and
//! the based chain complex they determine through the simplex of origin.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::chain::{BasedChainComplex, Gen};
use crate::duality::Variant;
use crate::matrix::SparseMat;
use crate::poset::Poset;
use crate::report::{cite, CheckResult, VerificationReport};
use crate::simplicial::{BarycentricComplex, SimplicialComplex};
use crate::{Error, Result};

#[derive(Clone, Debug)]
pub struct Dissection {
    pub ambient: SimplicialComplex,
    pub k: SimplicialComplex,
    /// `family[σ]`: simplex ids of `X(σ)`.
    pub family: Vec<BTreeSet<usize>>,
    pub variant: Variant,
}

impl Dissection {
    pub fn new(
        ambient: SimplicialComplex,
        k: SimplicialComplex,
        family: Vec<BTreeSet<usize>>,
        variant: Variant,
    ) -> Result<Self> {
        if family.len() != k.len() {
            return Err(Error::Domain("one subcomplex per simplex of K expected".into()));
        }
        for (s, member) in family.iter().enumerate() {
            if member.iter().any(|&x| x >= ambient.len()) || !ambient.is_subcomplex(member) {
                return Err(Error::Structural(format!("X({}) is not a subcomplex", k.label(s))));
            }
        }
        Ok(Dissection {
            ambient,
            k,
            family,
            variant,
        })
    }

    /// `X(σ) = σ` inside `X = K`: the simplicial `K`-dissection.
    pub fn simplicial(k: &SimplicialComplex) -> Self {
        let family = (0..k.len()).map(|s| k.closure([s])).collect();
        Dissection::new(k.clone(), k.clone(), family, Variant::K).expect("closed simplices are subcomplexes")
    }

    /// `X(σ) = D_K σ` inside `X = K'`: the dual-cone `K^op`-dissection.
    pub fn dual_cones(k: &SimplicialComplex) -> Self {
        let bary = BarycentricComplex::new(k);
        let family = (0..k.len()).map(|s| bary.dual_cone(k, s)).collect();
        Dissection::new(bary.complex().clone(), k.clone(), family, Variant::KOp).expect("dual cones are subcomplexes")
    }

    /// The simplex `X(σ) ∩ X(ρ)` must be indexed by, if any.
    fn expected_meet(&self, a: usize, b: usize) -> Option<usize> {
        match self.variant {
            Variant::K => self.k.meet(a, b),
            Variant::KOp => self.k.join(a, b),
        }
    }

    /// Intersection and covering axioms, checked over all pairs.
    pub fn check(&self, name: &str) -> VerificationReport {
        let mut report = VerificationReport::new();
        let mut bad = None;
        'outer: for a in 0..self.k.len() {
            for b in a + 1..self.k.len() {
                let inter: BTreeSet<usize> = self.family[a].intersection(&self.family[b]).copied().collect();
                let want = self
                    .expected_meet(a, b)
                    .map(|m| self.family[m].clone())
                    .unwrap_or_default();
                if inter != want {
                    bad = Some(format!("pair ({}, {})", self.k.label(a), self.k.label(b)));
                    break 'outer;
                }
            }
        }
        report.push(CheckResult::from_outcome(
            format!("dissection/{name}/intersection"),
            cite::DISSECTION,
            bad.map_or(Ok(()), Err),
        ));
        let covered: BTreeSet<usize> = self.family.iter().flatten().copied().collect();
        let missing = (0..self.ambient.len()).find(|s| !covered.contains(s));
        report.push(CheckResult::from_outcome(
            format!("dissection/{name}/covering"),
            cite::DISSECTION,
            missing.map_or(Ok(()), |s| Err(format!("{} lies in no X(σ)", self.ambient.label(s)))),
        ));
        let origin = self.origins().map(|_| ()).map_err(|e| e.to_string());
        report.push(CheckResult::from_outcome(
            format!("dissection/{name}/origin"),
            cite::ORIGIN,
            origin,
        ));
        report
    }

    /// The simplex of origin of every cell: the least (`K`) or greatest (`K^op`)
    /// `σ` with the cell in `X(σ)`; the set of such `σ` must be its up- resp. down-set.
    pub fn origins(&self) -> Result<Vec<usize>> {
        let faces = Poset::faces(&self.k);
        (0..self.ambient.len())
            .map(|cell| {
                let holders: Vec<usize> = (0..self.k.len()).filter(|&s| self.family[s].contains(&cell)).collect();
                let pick = holders.iter().copied().find(|&o| match self.variant {
                    Variant::K => faces.up_set(o) == holders,
                    Variant::KOp => faces.down_set(o) == holders,
                });
                pick.ok_or_else(|| {
                    Error::Structural(format!("{} has no unique simplex of origin", self.ambient.label(cell)))
                })
            })
            .collect()
    }

    /// `C(X)` split by origin, over `K` or `K^op`.
    pub fn based_chains(&self) -> Result<BasedChainComplex> {
        let origins = self.origins()?;
        let faces = Arc::new(Poset::faces(&self.k));
        let poset = match self.variant {
            Variant::K => faces,
            Variant::KOp => Arc::new(faces.opposite()),
        };
        let x = &self.ambient;
        let gens = (0..x.len())
            .map(|s| Gen::new(origins[s], x.dim(s) as i64, x.label(s)))
            .collect();
        let trip = (0..x.len()).flat_map(|s| x.boundary(s).iter().map(move |&(f, c)| (f, s, c)));
        BasedChainComplex::new(poset, gens, SparseMat::from_triplets(x.len(), x.len(), trip))
    }
}

/// The dissection checks run by the verification suite: the simplicial
/// `K`-dissection and the dual-cone `K^op`-dissection of `K`.
pub fn dissection_report(k: &SimplicialComplex) -> VerificationReport {
    let mut report = VerificationReport::new();
    let simp = Dissection::simplicial(k);
    report.extend(simp.check("simplicial"));
    let delta = crate::chain::delta_chain(k, Arc::new(Poset::faces(k)));
    let same = simp.based_chains().map_err(|e| e.to_string()).and_then(|c| {
        if c.d() == delta.d() && c.gens() == delta.gens() {
            Ok(())
        } else {
            Err("based chains of the simplicial dissection differ from ΔK".into())
        }
    });
    report.push(CheckResult::from_outcome(
        "dissection/simplicial/delta",
        cite::ORIGIN,
        same,
    ));

    let cones = Dissection::dual_cones(k);
    report.extend(cones.check("dual-cones"));
    let outcome = cones.based_chains().map_err(|e| e.to_string()).and_then(|c| {
        let plain = crate::chain::delta_chain(&cones.ambient, Arc::new(Poset::faces(&cones.ambient)));
        if c.colim() != plain.colim() {
            return Err("colimit differs from the chains of the subdivision".into());
        }
        for s in 0..k.len() {
            let h = crate::homology::homology(&c.embedded_at(s)).map_err(|e| e.to_string())?;
            if !h.is_point() {
                return Err(format!("piece over {} has homology {h}", k.label(s)));
            }
        }
        Ok(())
    });
    report.push(CheckResult::from_outcome(
        "dissection/dual-cones/pieces",
        cite::ORIGIN,
        outcome,
    ));
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::Status;

    #[test]
    fn both_examples_on_the_triangle() {
        let r = dissection_report(&SimplicialComplex::simplex(2));
        assert!(r.all_passed(), "{:?}", r.failing_ids());
        assert_eq!(r.checks.len(), 8);
    }

    #[test]
    fn interval_with_an_arc() {
        // X an arc 10–11–12–13 over K = Δ¹ with ends over the vertices
        let k = SimplicialComplex::build(&[vec![0, 1]]).unwrap();
        let x = SimplicialComplex::build(&[vec![10, 11], vec![11, 12], vec![12, 13]]).unwrap();
        let v0 = k.find(&[0]).unwrap();
        let v1 = k.find(&[1]).unwrap();
        let e = k.find(&[0, 1]).unwrap();
        let mut family = vec![BTreeSet::new(); 3];
        family[v0] = [x.find(&[10]).unwrap()].into();
        family[v1] = [x.find(&[13]).unwrap()].into();
        family[e] = (0..x.len()).collect();
        let d = Dissection::new(x.clone(), k, family, Variant::K).unwrap();
        assert!(d.check("arc").all_passed());
        let origins = d.origins().unwrap();
        for s in ["11", "12"].iter().map(|v| x.find(&[v.parse().unwrap()]).unwrap()) {
            assert_eq!(origins[s], e);
        }
        assert_eq!(origins[x.find(&[11, 12]).unwrap()], e);
        assert_eq!(origins[x.find(&[10]).unwrap()], v0);
        let c = d.based_chains().unwrap();
        assert_eq!(c.colim().rank(1), 3);
    }

    #[test]
    fn missing_face_breaks_intersection() {
        let k = SimplicialComplex::simplex(2);
        let mut d = Dissection::simplicial(&k);
        // X(v0) empty: X(01) ∩ X(02) = {v0} no longer equals X(v0)
        let v0 = k.find(&[0]).unwrap();
        d.family[v0].clear();
        let r = d.check("broken");
        let bad = r.get("dissection/broken/intersection").unwrap();
        assert_eq!(bad.status, Status::Fail);
        assert!(bad.witnesses[0].contains("pair"));
    }

    #[test]
    fn non_subcomplex_is_rejected() {
        let k = SimplicialComplex::simplex(1);
        let e = k.find(&[0, 1]).unwrap();
        let mut family: Vec<BTreeSet<usize>> = (0..k.len()).map(|s| k.closure([s])).collect();
        family[e] = [e].into();
        assert!(matches!(
            Dissection::new(k.clone(), k, family, Variant::K),
            Err(Error::Structural(_))
        ));
    }
}
