// SPDX-License-Identifier: Apache-2.0

//! Seeded inputs shared by the benchmarks.

use std::sync::Arc;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use superheis_core::families::StandardGenerators;
use superheis_core::heisgroup::{sample_group_element, GroupElement};
use superheis_core::{GeneratorPool, GrassmannElement, Mask};

pub const SEED: u64 = 0x5eed;

pub fn rng() -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(SEED)
}

/// Random element with `terms` monomials over the first `gens` generators.
pub fn grassmann(rng: &mut ChaCha8Rng, pool: &Arc<GeneratorPool>, gens: u32, terms: usize) -> GrassmannElement {
    GrassmannElement::from_terms(
        pool,
        (0..terms).map(|_| {
            let m: Mask = rng.gen_range(0..1u32 << gens);
            (m, Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        }),
    )
}

/// A pair of group elements drawn with disjoint odd generators.
pub fn group_pair(rng: &mut ChaCha8Rng) -> (GroupElement, GroupElement) {
    let s = StandardGenerators::get();
    (
        sample_group_element(rng, &s.pool, &s.slots_g()),
        sample_group_element(rng, &s.pool, &s.slots_h()),
    )
}
