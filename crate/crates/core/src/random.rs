//! Seeded draws of "general" forms and points.
//!
//! Each kind of draw uses its own ChaCha stream so that, for a fixed seed,
//! the generators of an ideal do not change when a caller also asks for a
//! Lefschetz form or extra points.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::field::PrimeField;
use crate::poly::LinearForm;

/// Streams of the per-seed generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Stream {
    Generators = 0,
    LefschetzForm = 1,
    Points = 2,
    AuxiliaryPoint = 3,
}

pub fn rng_for(seed: u64, stream: Stream) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream as u64);
    rng
}

/// Seed used for the `attempt`-th retry of a run started from `seed` (splitmix64 step).
pub fn reseed(seed: u64, attempt: u64) -> u64 {
    if attempt == 0 {
        return seed;
    }
    let mut z = seed.wrapping_add(attempt.wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Uniform vector in `F_p^len \ {0}`.
pub fn nonzero_vector<R: Rng>(rng: &mut R, len: usize, field: &PrimeField) -> Vec<u32> {
    loop {
        let v: Vec<u32> = (0..len).map(|_| rng.gen_range(0..field.modulus())).collect();
        if v.iter().any(|&x| x != 0) {
            return v;
        }
    }
}

pub fn random_form<R: Rng>(rng: &mut R, vars: usize, field: &PrimeField) -> LinearForm {
    LinearForm::new(nonzero_vector(rng, vars, field)).expect("vector is nonzero")
}
