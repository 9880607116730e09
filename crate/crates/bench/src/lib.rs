//! Seeded inputs shared by the benchmarks.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use segre_core::{segre_map, LocalState, PureState};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn gaussian(rng: &mut impl Rng) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Complex Gaussian amplitudes; normalized by the measures themselves.
pub fn random_state(rng: &mut impl Rng, dims: &[usize]) -> PureState<Complex64> {
    let n: usize = dims.iter().product();
    PureState::new(dims.to_vec(), (0..n).map(|_| gaussian(rng)).collect()).unwrap()
}

pub fn random_product(rng: &mut impl Rng, dims: &[usize]) -> PureState<Complex64> {
    let factors: Vec<_> = dims
        .iter()
        .map(|&d| LocalState::new((0..d).map(|_| gaussian(rng)).collect()).unwrap())
        .collect();
    segre_map(&factors).unwrap()
}
