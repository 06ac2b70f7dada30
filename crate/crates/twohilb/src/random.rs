//! Seeded random matrices for randomized checks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::cell::{OneCell, TwoCell};
use crate::linalg::{c, ComplexMatrix};

pub type SeededRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Entries with independent standard normal real and imaginary parts.
pub fn gaussian_matrix(rng: &mut impl Rng, rows: usize, cols: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |_, _| {
        c(
            rng.sample::<f64, _>(StandardNormal),
            rng.sample::<f64, _>(StandardNormal),
        )
    })
}

/// Haar-distributed unitary: QR of a Gaussian matrix with the phases of R's diagonal removed.
pub fn haar_unitary(rng: &mut impl Rng, n: usize) -> ComplexMatrix {
    let qr = gaussian_matrix(rng, n, n).to_nalgebra().qr();
    let (q, r) = (qr.q(), qr.r());
    let mut u = ComplexMatrix::from_nalgebra(&q);
    for j in 0..n {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 { d / d.norm() } else { c(1.0, 0.0) };
        for i in 0..n {
            u[(i, j)] *= phase;
        }
    }
    u
}

/// A 1-cell with every dimension drawn uniformly from `0..=max_dim`.
pub fn random_one_cell(rng: &mut impl Rng, source: usize, target: usize, max_dim: usize) -> OneCell {
    let dims = (0..source * target).map(|_| rng.random_range(0..=max_dim)).collect();
    OneCell::new(source, target, dims).expect("positive objects")
}

/// A 2-cell between parallel 1-cells with Gaussian entries.
pub fn random_two_cell(rng: &mut impl Rng, source: &OneCell, target: &OneCell) -> TwoCell {
    TwoCell::from_fn(source.clone(), target.clone(), |i, j| {
        gaussian_matrix(rng, target.dim(i, j), source.dim(i, j))
    })
    .expect("parallel boundaries")
}
