//! Derivation of independent RNG streams from one master seed.
//!
//! Every random draw in an experiment flows from a single `u64` master seed.
//! A stream is addressed by `(purpose, index)` and its seed is
//! `splitmix64(splitmix64(master ^ purpose_tag) ^ index)`, which is then fed
//! to `ChaCha8Rng::seed_from_u64`. Repetition `r` of an evaluation uses
//! `(Split, r)` for its probe split and `(AucSample, r)` for AUC sampling;
//! the graph generator uses `(Generate, 0)`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Default master seed used when none is given.
pub const DEFAULT_SEED: u64 = 20_140_517;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stream {
    Split,
    AucSample,
    Generate,
}

impl Stream {
    fn tag(self) -> u64 {
        match self {
            Stream::Split => 0x5350_4c49_5400_0001,
            Stream::AucSample => 0x4155_4353_4d50_0002,
            Stream::Generate => 0x4745_4e45_5241_0003,
        }
    }
}

pub fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

pub fn derive_seed(master: u64, stream: Stream, index: u64) -> u64 {
    splitmix64(splitmix64(master ^ stream.tag()) ^ index)
}

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
