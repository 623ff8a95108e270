//! Seeded randomness.
//!
//! Everything random in the crate derives from one 64-bit seed. A
//! [`SeedStream`] hands out independent ChaCha streams by counter, so a
//! consumer asking for its k-th generator always gets the same one.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::linalg::{vector, Matrix};
use crate::scalar::{Real, C};

pub type Rng64 = ChaCha8Rng;

#[derive(Clone, Debug)]
pub struct SeedStream {
    seed: u64,
    counter: u64,
}

impl SeedStream {
    pub fn new(seed: u64) -> Self {
        Self { seed, counter: 0 }
    }

    /// Generator for stream `index`, independent of the counter.
    pub fn stream(seed: u64, index: u64) -> Rng64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(index);
        rng
    }

    pub fn next_rng(&mut self) -> Rng64 {
        let rng = Self::stream(self.seed, self.counter);
        self.counter += 1;
        rng
    }

    pub fn drawn(&self) -> u64 {
        self.counter
    }
}

/// SplitMix64 finalizer, used to derive per-trial seeds from a suite seed.
pub fn mix_seed(seed: u64, index: u64) -> u64 {
    let mut z = seed ^ index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn complex_normal<R: Real>(rng: &mut impl Rng) -> C<R> {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    let s = std::f64::consts::FRAC_1_SQRT_2;
    C::new(R::lit(re * s), R::lit(im * s))
}

/// Uniformly distributed point on the unit sphere of `ℂⁿ`.
pub fn random_unit_vector<R: Real>(rng: &mut impl Rng, n: usize) -> Vec<C<R>> {
    loop {
        let v: Vec<C<R>> = (0..n).map(|_| complex_normal(rng)).collect();
        if let Some(u) = vector::normalized(&v) {
            return u;
        }
    }
}

/// Matrix with i.i.d. standard complex Gaussian entries times `magnitude`.
pub fn random_matrix<R: Real>(rng: &mut impl Rng, n: usize, magnitude: f64) -> Matrix<R> {
    let mag = R::lit(magnitude);
    Matrix::from_fn(n, n, |_, _| complex_normal::<R>(rng) * mag)
}

pub fn random_rect<R: Real>(rng: &mut impl Rng, rows: usize, cols: usize, magnitude: f64) -> Matrix<R> {
    let mag = R::lit(magnitude);
    Matrix::from_fn(rows, cols, |_, _| complex_normal::<R>(rng) * mag)
}

pub fn random_hermitian<R: Real>(rng: &mut impl Rng, n: usize, magnitude: f64) -> Matrix<R> {
    let g: Matrix<R> = random_matrix(rng, n, magnitude);
    g.add(&g.adjoint()).expect("square").scale_real(R::lit(0.5))
}

pub fn random_complex<R: Real>(rng: &mut impl Rng, magnitude: f64) -> C<R> {
    complex_normal::<R>(rng) * R::lit(magnitude)
}
