//! Regular CW structures specified by incidence numbers, and the dual cell
//! decomposition `DK`.

use std::collections::BTreeMap;

use crate::poset::{Poset, PosetElem};
use crate::report::{cite, CheckResult, VerificationReport};
use crate::simplicial::SimplicialComplex;
use crate::{sign, Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CwCell {
    pub label: String,
    pub dim: usize,
}

/// Cells, codimension-one faces and a candidate set of incidence numbers `α`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularCWStructure {
    pub cells: Vec<CwCell>,
    /// `boundary_faces[c]`: the codimension-one faces of cell `c`.
    pub boundary_faces: Vec<Vec<usize>>,
    /// `alpha[(cell, face)]`; absent pairs are zero.
    pub alpha: BTreeMap<(usize, usize), i64>,
}

impl RegularCWStructure {
    pub fn alpha(&self, cell: usize, face: usize) -> i64 {
        self.alpha.get(&(cell, face)).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }
}

/// The dual cell decomposition of `K`, with cells indexed exactly like the
/// elements of `Poset::faces(k).chains()`.
pub fn dk_cw(k: &SimplicialComplex) -> RegularCWStructure {
    let dk = Poset::faces(k).chains();
    let chain_of = |x: usize| match dk.elem(x) {
        PosetElem::Chain { from, to } => (from, to),
        _ => unreachable!("chain poset holds chains"),
    };
    let index: BTreeMap<(usize, usize), usize> = (0..dk.len()).map(|x| (chain_of(x), x)).collect();
    let mut cells = Vec::with_capacity(dk.len());
    let mut boundary_faces = Vec::with_capacity(dk.len());
    let mut alpha = BTreeMap::new();
    for x in 0..dk.len() {
        let (sigma, tau) = chain_of(x);
        cells.push(CwCell {
            label: format!("D_{}{}", k.label(tau), k.label(sigma)),
            dim: k.dim(tau) - k.dim(sigma),
        });
        let mut faces = Vec::new();
        let s = k.dim(sigma) as i64;
        // D_τ σ' with σ ≺ σ' ≤ τ
        for (sigma2, inc) in k.cofaces(sigma) {
            if k.is_face(sigma2, tau) {
                let f = index[&(sigma2, tau)];
                faces.push(f);
                alpha.insert((x, f), sign(s + 1) * inc);
            }
        }
        // D_τ' σ with σ ≤ τ' ≺ τ
        for &(tau2, inc) in k.boundary(tau) {
            if k.is_face(sigma, tau2) {
                let f = index[&(sigma, tau2)];
                faces.push(f);
                alpha.insert((x, f), sign(s) * inc);
            }
        }
        faces.sort_unstable();
        boundary_faces.push(faces);
    }
    RegularCWStructure {
        cells,
        boundary_faces,
        alpha,
    }
}

/// Checks the four incidence-number conditions that determine orientations.
///
/// Fails with a structural error when some codimension-two pair does not have
/// exactly two intermediate cells (the structure is then not regular).
pub fn verify_massey(cw: &RegularCWStructure) -> Result<VerificationReport> {
    let mut report = VerificationReport::new();
    let is_face = |c: usize, f: usize| cw.boundary_faces[c].binary_search(&f).is_ok();

    let off_face = cw
        .alpha
        .iter()
        .find(|(&(c, f), &v)| v != 0 && !is_face(c, f))
        .map(|(&(c, f), v)| {
            format!(
                "alpha({}, {}) = {v} but not a face",
                cw.cells[c].label, cw.cells[f].label
            )
        });
    report.push(CheckResult::from_outcome(
        "massey-1-zero-off-faces",
        cite::MASSEY,
        off_face.map_or(Ok(()), Err),
    ));

    let mut bad_unit = None;
    'outer: for (c, faces) in cw.boundary_faces.iter().enumerate() {
        for &f in faces {
            if cw.cells[f].dim + 1 != cw.cells[c].dim {
                return Err(Error::Structural(format!(
                    "{} listed as a codimension-one face of {}",
                    cw.cells[f].label, cw.cells[c].label
                )));
            }
            if cw.alpha(c, f).abs() != 1 {
                bad_unit = Some(format!(
                    "alpha({}, {}) = {}",
                    cw.cells[c].label,
                    cw.cells[f].label,
                    cw.alpha(c, f)
                ));
                break 'outer;
            }
        }
    }
    report.push(CheckResult::from_outcome(
        "massey-2-unit-on-faces",
        cite::MASSEY,
        bad_unit.map_or(Ok(()), Err),
    ));

    let mut bad_vertex = None;
    for (c, faces) in cw.boundary_faces.iter().enumerate() {
        if cw.cells[c].dim != 1 {
            continue;
        }
        if faces.len() != 2 {
            bad_vertex = Some(format!("1-cell {} has {} vertices", cw.cells[c].label, faces.len()));
            break;
        }
        let total: i64 = faces.iter().map(|&f| cw.alpha(c, f)).sum();
        if total != 0 {
            bad_vertex = Some(format!("1-cell {}: alpha sum {total}", cw.cells[c].label));
            break;
        }
    }
    report.push(CheckResult::from_outcome(
        "massey-3-vertex-condition",
        cite::MASSEY,
        bad_vertex.map_or(Ok(()), Err),
    ));

    let mut bad_square = None;
    'cells: for (t, faces) in cw.boundary_faces.iter().enumerate() {
        if cw.cells[t].dim < 2 {
            continue;
        }
        let mut middles: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for &r in faces {
            for &s in &cw.boundary_faces[r] {
                middles.entry(s).or_default().push(r);
            }
        }
        for (s, rs) in middles {
            if rs.len() != 2 {
                return Err(Error::Structural(format!(
                    "{} and {} have {} intermediate cells",
                    cw.cells[t].label,
                    cw.cells[s].label,
                    rs.len()
                )));
            }
            let total = cw.alpha(t, rs[0]) * cw.alpha(rs[0], s) + cw.alpha(t, rs[1]) * cw.alpha(rs[1], s);
            if total != 0 {
                bad_square = Some(format!(
                    "{} over {} via {}, {}: sum {total}",
                    cw.cells[t].label, cw.cells[s].label, cw.cells[rs[0]].label, cw.cells[rs[1]].label
                ));
                break 'cells;
            }
        }
    }
    report.push(CheckResult::from_outcome(
        "massey-4-codim-two",
        cite::MASSEY,
        bad_square.map_or(Ok(()), Err),
    ));
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::BarycentricComplex;

    #[test]
    fn cell_counts() {
        assert_eq!(dk_cw(&SimplicialComplex::simplex(1)).len(), 5);
        assert_eq!(dk_cw(&SimplicialComplex::simplex(2)).len(), 19);
        assert_eq!(dk_cw(&SimplicialComplex::point()).len(), 1);
    }

    #[test]
    fn edge_alpha_value() {
        let k = SimplicialComplex::simplex(1);
        let cw = dk_cw(&k);
        let dk = Poset::faces(&k).chains();
        let v0 = k.find(&[0]).unwrap();
        let e = k.find(&[0, 1]).unwrap();
        let cell = dk.index_of(PosetElem::Chain { from: v0, to: e }).unwrap();
        let face = dk.index_of(PosetElem::Chain { from: v0, to: v0 }).unwrap();
        assert_eq!(cw.alpha(cell, face), -1);
    }

    #[test]
    fn massey_passes_on_test_complexes() {
        for k in [
            SimplicialComplex::simplex(1),
            SimplicialComplex::simplex(2),
            SimplicialComplex::simplex_boundary(3),
            SimplicialComplex::simplex(3),
        ] {
            let report = verify_massey(&dk_cw(&k)).unwrap();
            assert!(report.all_passed(), "{report:?}");
        }
    }

    #[test]
    fn flipped_sign_fails_condition_four() {
        let k = SimplicialComplex::simplex(2);
        let mut cw = dk_cw(&k);
        let (&key, _) = cw.alpha.iter().find(|(&(c, _), _)| cw.cells[c].dim == 2).unwrap();
        *cw.alpha.get_mut(&key).unwrap() *= -1;
        let report = verify_massey(&cw).unwrap();
        assert_eq!(report.failing_ids(), vec!["massey-4-codim-two"]);
    }

    #[test]
    fn missing_face_is_structural() {
        let k = SimplicialComplex::simplex(2);
        let mut cw = dk_cw(&k);
        let c = cw.cells.iter().position(|c| c.dim == 2).unwrap();
        cw.boundary_faces[c].pop();
        assert!(matches!(verify_massey(&cw), Err(Error::Structural(_))));
    }

    #[test]
    fn combinatorial_faces_match_subdivision() {
        for k in [SimplicialComplex::simplex(2), SimplicialComplex::simplex_boundary(3)] {
            let cw = dk_cw(&k);
            let dk = Poset::faces(&k).chains();
            let kb = BarycentricComplex::new(&k);
            for x in 0..dk.len() {
                let PosetElem::Chain { from, to } = dk.elem(x) else {
                    unreachable!()
                };
                let geometric = kb.geometric_faces(&k, from, to).unwrap();
                let combinatorial: std::collections::BTreeSet<(usize, usize)> = cw.boundary_faces[x]
                    .iter()
                    .map(|&f| match dk.elem(f) {
                        PosetElem::Chain { from, to } => (from, to),
                        _ => unreachable!(),
                    })
                    .collect();
                assert_eq!(geometric, combinatorial, "cell {}", cw.cells[x].label);
            }
        }
    }
}
