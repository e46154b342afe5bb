//! Tiny deterministic pseudorandom generator (splitmix64).
//!
//! Used for the seeded equal-degree-splitting fallback and for reproducible
//! randomized tests. Not cryptographic.

use crate::poly::Poly;

/// The default seed recorded in reports; every deterministic run uses it
/// unless overridden.
pub const DEFAULT_SEED: u64 = 0x67f2_5f2d_5ea1_f00d;

#[derive(Clone, Debug)]
pub struct SplitMix {
    state: u64,
}

impl SplitMix {
    pub fn new(seed: u64) -> Self {
        SplitMix { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = self.state;
        z = (z ^ z >> 30).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ z >> 27).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ z >> 31
    }
}

/// A polynomial with uniformly chosen degree in `0..=max_degree` and random
/// lower coefficients; returns zero roughly once in 64 draws.
pub fn random_poly(rng: &mut SplitMix, max_degree: usize) -> Poly {
    if rng.next_u64().is_multiple_of(64) {
        return Poly::zero();
    }
    let d = (rng.next_u64() % (max_degree as u64 + 1)) as usize;
    let mut p = Poly::monomial(d);
    for w in 0..=d / 64 {
        let mask = if d / 64 == w {
            let top = d % 64;
            if top == 0 {
                0
            } else {
                (1u64 << top) - 1
            }
        } else {
            u64::MAX
        };
        p += &(&Poly::from_bits(rng.next_u64() & mask) * &Poly::monomial(w * 64));
    }
    p
}

/// A nonzero polynomial of degree strictly below `bound_degree` (>= 1).
pub fn random_poly_below(rng: &mut SplitMix, bound_degree: usize) -> Poly {
    loop {
        let p = random_poly(rng, bound_degree - 1);
        if !p.is_zero() {
            return p;
        }
    }
}
