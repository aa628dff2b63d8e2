//! Seeded random rational points on a small grid.

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::geometry::RatVec;

/// Independent stream for trial `trial` of a run seeded with `seed`.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Numerators in `[-max_numerator, max_numerator]`, denominators drawn from
/// a fixed list. Each coordinate after the first copies an earlier
/// coordinate with probability `tie_probability`, so ties (and hence
/// boundary points) show up often.
#[derive(Clone, Debug)]
pub struct RationalGrid {
    pub max_numerator: i64,
    pub denominators: Vec<i64>,
    pub tie_probability: f64,
}

impl Default for RationalGrid {
    fn default() -> Self {
        RationalGrid {
            max_numerator: 9,
            denominators: vec![1, 2, 3],
            tie_probability: 1.0 / 3.0,
        }
    }
}

impl RationalGrid {
    pub fn sample<R: Rng + ?Sized>(&self, n: usize, rng: &mut R) -> RatVec {
        let mut coords: Vec<BigRational> = Vec::with_capacity(n);
        for j in 0..n {
            if j > 0 && rng.gen_bool(self.tie_probability) {
                let k = rng.gen_range(0..j);
                coords.push(coords[k].clone());
                continue;
            }
            let p = rng.gen_range(-self.max_numerator..=self.max_numerator);
            let q = self.denominators[rng.gen_range(0..self.denominators.len())];
            coords.push(BigRational::new(p.into(), q.into()));
        }
        RatVec::new(coords)
    }

    /// Integer vector with entries in `0..=bound`.
    pub fn sample_bounded_integers<R: Rng + ?Sized>(n: usize, bound: i64, rng: &mut R) -> Vec<i64> {
        (0..n).map(|_| rng.gen_range(0..=bound)).collect()
    }
}
