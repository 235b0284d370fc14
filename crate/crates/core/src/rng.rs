//! Seeding utilities.
//!
//! Every stochastic routine in this crate takes either an explicit RNG or a
//! `u64` seed. Sub-streams (sweep runs, parallel chunks) derive their seeds
//! with [`derive_seed`], a splitmix64 mix of `(master, index)`, so adding
//! more runs or chunks never perturbs the seeds of existing ones.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// The RNG used throughout; small, fast and identical on every platform.
pub type Rng = ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// splitmix64 finalizer.
fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

/// Deterministic sub-seed for stream `index` under `master`.
pub fn derive_seed(master: u64, index: u64) -> u64 {
    splitmix64(splitmix64(master).wrapping_add(splitmix64(index ^ 0xa076_1d64_78bd_642f)))
}

/// Standard normal draw via Box-Muller; used instead of an external
/// distribution crate so sampled noise is reproducible forever.
pub fn sample_standard_normal(rng: &mut Rng) -> f64 {
    use rand::Rng as _;
    loop {
        let u1: f64 = rng.gen::<f64>();
        if u1 <= f64::MIN_POSITIVE {
            continue;
        }
        let u2: f64 = rng.gen::<f64>();
        return (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos();
    }
}
