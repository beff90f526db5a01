use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Seeded source of task randomness. Same seed, same draws.
#[derive(Debug, Clone)]
pub struct TaskSampler {
    rng: ChaCha8Rng,
}

impl TaskSampler {
    pub fn new(seed: u64) -> Self {
        TaskSampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    /// `amount` distinct indices of `0..len`, in draw order.
    pub fn distinct(&mut self, len: usize, amount: usize) -> Vec<usize> {
        sample(&mut self.rng, len, amount.min(len)).into_vec()
    }

    /// `amount` indices of `0..len`, drawn with replacement.
    pub fn with_replacement(&mut self, len: usize, amount: usize) -> Vec<usize> {
        (0..amount).map(|_| self.rng.random_range(0..len)).collect()
    }

    pub fn shuffle<T>(&mut self, items: &mut [T]) {
        use rand::seq::SliceRandom;
        items.shuffle(&mut self.rng);
    }
}
