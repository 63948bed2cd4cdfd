//! Chain duality on chain complexes based over a simplicial complex.
//!
//! The crate builds `K`-based chain complexes, the duality functor `T`, the
//! natural maps `τ` and `e`, the dual cell decomposition `DK`, and checks the
//! duality identities exactly over the integers.

pub mod based;
pub mod chain;
pub mod cw;
pub mod dissection;
pub mod duality;
pub mod equivalence;
pub mod error;
pub mod homology;
pub mod matrix;
pub mod poset;
pub mod random;
pub mod report;
pub mod rules;
pub mod simplicial;
pub mod snf;
pub mod verify;

pub use based::{BasedModule, BasedMorphism, FunctorMap, FunctorModule};
pub use chain::{BasedChainComplex, BasedChainMap, FunctorChainMap, FunctorComplex, Gen, PairComplex};
pub use cw::{dk_cw, verify_massey, RegularCWStructure};
pub use dissection::{dissection_report, Dissection};
pub use duality::{DualityContext, Variant};
pub use equivalence::{cone, homotopy_inverse, is_weak_equivalence, HomotopyCertificate};
pub use error::{Error, Result};
pub use homology::{homology, HomologyGroup, HomologySummary, IntChainComplex};
pub use matrix::SparseMat;
pub use poset::{Poset, PosetElem, PosetKind};
pub use report::{CheckResult, Status, VerificationReport};
pub use rules::Conventions;
pub use simplicial::{BarycentricComplex, SimplicialComplex};
pub use snf::{smith_normal_form, IntMatrix, Snf};
pub use verify::{verify_chain_duality, VerifyOptions};

/// `(-1)^e`.
pub fn sign(e: i64) -> i64 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}
