//! Fixtures shared by the benchmarks.

use kduality::random::{random_complex, sample_rng};
use kduality::{BasedChainComplex, DualityContext, SimplicialComplex, Variant};

/// The complexes benchmarked, smallest first.
pub fn complexes() -> Vec<(&'static str, SimplicialComplex)> {
    vec![
        ("simplex-1", SimplicialComplex::simplex(1)),
        ("simplex-2", SimplicialComplex::simplex(2)),
        ("sphere-2", SimplicialComplex::simplex_boundary(3)),
    ]
}

/// A fixed random complex over the category of `v`.
pub fn sample(ctx: &DualityContext, v: Variant, seed: u64) -> BasedChainComplex {
    random_complex(ctx.category(v), &mut sample_rng(seed, 0))
}
