//! Deterministic, stream-splittable random number generation.
//!
//! Every stochastic operation in this crate is a pure function of its
//! parameters and an [`RngStream`]. A stream is identified by a
//! `(master_seed, stream_id)` pair; identical pairs reproduce identical
//! output bit for bit, and distinct stream ids select distinct ChaCha
//! keystreams, so replicates can be generated in any order or in parallel.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Handle for one reproducible random stream.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RngStream {
    pub master_seed: u64,
    pub stream_id: u64,
}

impl RngStream {
    pub fn new(master_seed: u64, stream_id: u64) -> Self {
        Self {
            master_seed,
            stream_id,
        }
    }

    /// Instantiate the generator for this stream.
    pub fn rng(&self) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.master_seed);
        rng.set_stream(self.stream_id);
        rng
    }

    /// Derive a child stream. Children with distinct indices are distinct
    /// streams of the same master seed; derivation is counter-based so any
    /// subset can be materialized without generating the others.
    pub fn substream(&self, index: u64) -> RngStream {
        RngStream {
            master_seed: self.master_seed,
            stream_id: splitmix64(self.stream_id ^ splitmix64(index.wrapping_add(0x9E37_79B9_7F4A_7C15))),
        }
    }
}

/// splitmix64 finalizer, used only to spread substream indices over the
/// 64-bit ChaCha stream space.
pub(crate) fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Uniform draw in the open interval (0, 1).
///
/// 53 significant bits centered away from both endpoints, so logs and
/// divisions downstream never see 0 or 1.
pub(crate) fn uniform_open01<R: Rng>(rng: &mut R) -> f64 {
    ((rng.gen::<u64>() >> 11) as f64 + 0.5) * (1.0 / 9007199254740992.0)
}

/// Standard exponential draw, strictly positive.
pub(crate) fn exp1<R: Rng>(rng: &mut R) -> f64 {
    -uniform_open01(rng).ln()
}
