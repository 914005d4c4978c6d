use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Seeded, splittable random source.
///
/// A source is identified by `(master_seed, stream_id)`; equal identifiers
/// give equal sequences. Child streams are derived from a key (for example
/// iteration, edge index and purpose) independently of how much of the
/// parent has been consumed, so work items can be replayed in any order.
#[derive(Debug, Clone)]
pub struct RandomSource {
    master_seed: u64,
    stream_id: u64,
    rng: ChaCha8Rng,
}

/// Purposes used to separate streams that share the same numeric key.
pub mod purpose {
    pub const ESTIMATE: u64 = 1;
    pub const ITERATION: u64 = 2;
    pub const EDGE: u64 = 3;
    pub const TRIAL: u64 = 4;
    pub const POINTS: u64 = 5;
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

impl RandomSource {
    pub fn new(master_seed: u64, stream_id: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
        rng.set_stream(stream_id);
        RandomSource {
            master_seed,
            stream_id,
            rng,
        }
    }

    pub fn from_seed(master_seed: u64) -> Self {
        Self::new(master_seed, 0)
    }

    pub fn master_seed(&self) -> u64 {
        self.master_seed
    }

    pub fn stream_id(&self) -> u64 {
        self.stream_id
    }

    /// A fresh source on the stream keyed by this stream and `key`.
    pub fn derive(&self, key: &[u64]) -> RandomSource {
        let mut h = splitmix64(self.stream_id);
        for &k in key {
            h = splitmix64(h ^ k);
        }
        RandomSource::new(self.master_seed, h)
    }

    /// Uniform in `[0, 1)`.
    #[inline]
    pub fn unit(&mut self) -> f64 {
        self.rng.gen::<f64>()
    }
}

impl RngCore for RandomSource {
    fn next_u32(&mut self) -> u32 {
        self.rng.next_u32()
    }

    fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }

    fn fill_bytes(&mut self, dest: &mut [u8]) {
        self.rng.fill_bytes(dest)
    }

    fn try_fill_bytes(&mut self, dest: &mut [u8]) -> Result<(), rand::Error> {
        self.rng.try_fill_bytes(dest)
    }
}
