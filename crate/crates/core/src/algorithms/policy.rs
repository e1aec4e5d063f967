use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::description::{Description, Property};
use crate::schema::Attribute;
use crate::scene::{Scene, TrialId};

/// Whether a TYPE property is appended after content selection.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum TypePolicy {
    Never,
    Always,
    /// Append with probability `p`, `0 <= p <= 1`.
    Probabilistic(f64),
}

impl TypePolicy {
    pub fn probabilistic(p: f64) -> Option<TypePolicy> {
        (0.0..=1.0).contains(&p).then_some(TypePolicy::Probabilistic(p))
    }
}

/// Seeded draw sequence.
///
/// The generator is ChaCha8 from `rand_chacha`, seeded through
/// `SeedableRng::seed_from_u64`; unit draws take the top 53 bits of
/// `next_u64`. Both are platform-independent.
#[derive(Clone, Debug)]
pub struct RandomStream {
    seed: u64,
    rng: ChaCha8Rng,
}

impl RandomStream {
    pub fn new(seed: u64) -> Self {
        RandomStream {
            seed,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// Independent stream for one trial of one run, so that scenes can be
    /// processed in any order or in parallel.
    pub fn for_trial(seed: u64, run: u64, trial: &TrialId) -> Self {
        let derived = splitmix64(seed ^ splitmix64(run ^ splitmix64(fnv1a(trial.as_str()))));
        RandomStream::new(derived)
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Uniform draw in `[0, 1)`.
    pub fn next_unit(&mut self) -> f64 {
        (self.rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }
}

fn fnv1a(s: &str) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in s.bytes() {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Applies `policy` to `d`. The probabilistic policy always consumes
/// exactly one draw, even when TYPE is already present.
pub fn apply_type_policy(
    mut d: Description,
    scene: &Scene,
    policy: TypePolicy,
    rng: &mut RandomStream,
) -> Description {
    let append = match policy {
        TypePolicy::Never => false,
        TypePolicy::Always => true,
        TypePolicy::Probabilistic(p) => rng.next_unit() < p,
    };
    if append && !d.contains(Attribute::Type) {
        if let Some(t) = scene.target().value(Attribute::Type) {
            let _ = d.insert(Property {
                attribute: Attribute::Type,
                value: t.clone(),
            });
        }
    }
    d
}
