//! Reproducible test signals.
//!
//! The generator is ChaCha8 (`rand_chacha::ChaCha8Rng::seed_from_u64`). Each
//! sample draws its real part, then its imaginary part, uniformly from
//! `[-1, 1)` as `f64` and converts to the target scalar.

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::scalar::MrScalar;

pub fn seeded_signal<T: MrScalar>(n: usize, seed: u64) -> Vec<Complex<T>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            let re: f64 = rng.gen_range(-1.0..1.0);
            let im: f64 = rng.gen_range(-1.0..1.0);
            Complex::new(T::from_f64(re), T::from_f64(im))
        })
        .collect()
}

/// Unit impulse at `position`.
pub fn impulse<T: MrScalar>(n: usize, position: usize) -> Vec<Complex<T>> {
    let mut x = vec![Complex::new(T::zero(), T::zero()); n];
    x[position] = Complex::new(T::one(), T::zero());
    x
}
