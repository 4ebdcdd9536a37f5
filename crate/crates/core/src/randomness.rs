//! Seeded random streams; the only entropy source in the crate.
//!
//! A stream is a ChaCha20 generator keyed from a 64-bit seed. Substreams
//! are keyed from `(parent seed, label)` through a SplitMix64 fold, so a
//! trial's randomness depends only on its label and never on the order in
//! which trials execute. Normals come from the Box-Muller transform on
//! 53-bit uniforms; both values of each pair are used.

use rand_chacha::ChaCha20Rng;
use rand_core::{RngCore, SeedableRng};

use crate::numerics::{DenseMatrix, DenseVector};
use crate::scalar::Scalar;

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

#[inline]
fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(GOLDEN);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn key_from_seed(seed: u64) -> [u8; 32] {
    let mut key = [0u8; 32];
    let mut state = seed;
    for chunk in key.chunks_exact_mut(8) {
        state = splitmix64(state);
        chunk.copy_from_slice(&state.to_le_bytes());
    }
    key
}

#[derive(Clone, Debug)]
pub struct RngStream {
    seed: u64,
    rng: ChaCha20Rng,
    spare_normal: Option<f64>,
}

impl RngStream {
    pub fn new(seed: u64) -> Self {
        Self {
            seed,
            rng: ChaCha20Rng::from_seed(key_from_seed(seed)),
            spare_normal: None,
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Child stream determined by this stream's seed and `label`.
    ///
    /// The parent's position is irrelevant: deriving before or after
    /// drawing from the parent gives the same child.
    pub fn derive(&self, label: &[u64]) -> RngStream {
        let mut h = splitmix64(self.seed ^ 0xD1B5_4A32_D192_ED03);
        h = splitmix64(h ^ label.len() as u64);
        for &word in label {
            h = splitmix64(h ^ splitmix64(word.wrapping_mul(GOLDEN)));
        }
        RngStream::new(h)
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }

    /// Uniform on the open interval `(0, 1)`.
    #[inline]
    pub fn uniform(&mut self) -> f64 {
        ((self.next_u64() >> 11) as f64 + 0.5) * (1.0 / (1u64 << 53) as f64)
    }

    pub fn standard_normal(&mut self) -> f64 {
        if let Some(z) = self.spare_normal.take() {
            return z;
        }
        let u1 = self.uniform();
        let u2 = self.uniform();
        let r = (-2.0 * u1.ln()).sqrt();
        let theta = 2.0 * std::f64::consts::PI * u2;
        self.spare_normal = Some(r * theta.sin());
        r * theta.cos()
    }

    pub fn bernoulli(&mut self, p: f64) -> bool {
        self.uniform() < p
    }

    /// `n` iid standard normals.
    pub fn gaussian_vector<T: Scalar>(&mut self, n: usize) -> DenseVector<T> {
        DenseVector::from_vec_unchecked((0..n).map(|_| T::lit(self.standard_normal())).collect())
    }

    /// `rows x cols` iid standard normals, drawn column by column.
    pub fn gaussian_matrix<T: Scalar>(&mut self, rows: usize, cols: usize) -> DenseMatrix<T> {
        let data = (0..rows * cols)
            .map(|_| T::lit(self.standard_normal()))
            .collect();
        DenseMatrix::from_column_major(rows, cols, data).expect("finite normals")
    }
}

/// Free-function form of [`RngStream::derive`].
pub fn derive(parent: &RngStream, label: &[u64]) -> RngStream {
    parent.derive(label)
}

/// Free-function form of [`RngStream::gaussian_vector`].
pub fn gaussian_vector<T: Scalar>(stream: &mut RngStream, n: usize) -> DenseVector<T> {
    stream.gaussian_vector(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derive_is_deterministic() {
        let root = RngStream::new(42);
        let mut a = root.derive(&[2, 3, 0]);
        let mut b = root.derive(&[2, 3, 0]);
        for _ in 0..100 {
            assert_eq!(a.next_u64(), b.next_u64());
        }
    }

    #[test]
    fn derive_ignores_parent_position() {
        let mut root = RngStream::new(9);
        let before = root.derive(&[1]).next_u64();
        root.next_u64();
        assert_eq!(before, root.derive(&[1]).next_u64());
    }

    #[test]
    fn distinct_labels_give_distinct_streams() {
        let root = RngStream::new(7);
        let a: Vec<u64> = {
            let mut s = root.derive(&[0]);
            (0..100).map(|_| s.next_u64()).collect()
        };
        let b: Vec<u64> = {
            let mut s = root.derive(&[1]);
            (0..100).map(|_| s.next_u64()).collect()
        };
        assert_ne!(a, b);
        // Label length matters too.
        assert_ne!(root.derive(&[0]).next_u64(), root.derive(&[0, 0]).next_u64());
    }

    #[test]
    fn first_outputs_over_label_grid_are_uniform() {
        // Chi-square with 10 bins (9 dof); critical value at p = 0.001.
        const CRITICAL: f64 = 27.877;
        let root = RngStream::new(2024);
        let mut bins = [0usize; 10];
        for a in 0..10u64 {
            for b in 0..10u64 {
                for c in 0..10u64 {
                    let u = root.derive(&[a, b, c]).uniform();
                    bins[(u * 10.0) as usize] += 1;
                }
            }
        }
        let expected = 100.0;
        let chi2: f64 = bins
            .iter()
            .map(|&o| (o as f64 - expected).powi(2) / expected)
            .sum();
        assert!(chi2 < CRITICAL, "chi2 = {chi2}, bins = {bins:?}");
    }

    #[test]
    fn gaussian_vector_is_reproducible() {
        let a: DenseVector<f64> = RngStream::new(5).gaussian_vector(50);
        let b: DenseVector<f64> = RngStream::new(5).gaussian_vector(50);
        assert_eq!(a, b);
    }

    #[test]
    fn gaussian_moments() {
        // 5 sigma bounds: mean sd 1/sqrt(n) ~ 0.0032, variance sd sqrt(2/n) ~ 0.0045.
        let n = 100_000;
        let x: DenseVector<f64> = RngStream::new(11).gaussian_vector(n);
        let mean = x.iter().sum::<f64>() / n as f64;
        let var = x.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
        assert!(mean.abs() < 0.02, "mean {mean}");
        assert!((var - 1.0).abs() < 0.02, "var {var}");
    }

    #[test]
    fn gaussian_tail_mass() {
        // P(|Z| > 1.96) = 0.05; binomial sd at n = 1e5 is ~0.0007.
        let n = 100_000;
        let x: DenseVector<f64> = RngStream::new(12).gaussian_vector(n);
        let frac = x.iter().filter(|v| v.abs() > 1.96).count() as f64 / n as f64;
        assert!((frac - 0.05).abs() < 0.005, "tail fraction {frac}");
    }

    #[test]
    fn uniform_stays_open() {
        let mut s = RngStream::new(0);
        for _ in 0..10_000 {
            let u = s.uniform();
            assert!(u > 0.0 && u < 1.0);
        }
    }
}
