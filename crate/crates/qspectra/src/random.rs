//! Seeded generators for matrices, vectors and test points.

use qspectra_core::{ImaginaryUnit, QMatrix, QVector, Quaternion, SpectrumInfo};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type SeededRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Components uniform in `[-1, 1)`.
pub fn quaternion(rng: &mut impl Rng) -> Quaternion {
    Quaternion::new(
        rng.random_range(-1.0..1.0),
        rng.random_range(-1.0..1.0),
        rng.random_range(-1.0..1.0),
        rng.random_range(-1.0..1.0),
    )
}

pub fn qmatrix(rng: &mut impl Rng, n: usize) -> QMatrix {
    QMatrix::from_fn(n, |_, _| quaternion(rng))
}

pub fn qvector(rng: &mut impl Rng, n: usize) -> QVector {
    QVector::new((0..n).map(|_| quaternion(rng)).collect())
}

/// A unit imaginary quaternion, rejection-sampled from the unit ball.
pub fn unit(rng: &mut impl Rng) -> ImaginaryUnit {
    loop {
        let (x, y, z) = (
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
        );
        let r2: f64 = x * x + y * y + z * z;
        if (0.01..=1.0).contains(&r2) {
            if let Ok(i) = ImaginaryUnit::new(x, y, z) {
                return i;
            }
        }
    }
}

/// A nonzero quaternion, used for similarity transforms.
pub fn invertible_quaternion(rng: &mut impl Rng) -> Quaternion {
    loop {
        let q = quaternion(rng);
        if q.norm() > 0.2 {
            return q;
        }
    }
}

/// Upper-triangular matrix whose diagonal repeats a few values of `C_{e1}`,
/// so it is usually defective and its spectrum is known exactly.
pub fn jordan_type(rng: &mut impl Rng, n: usize) -> QMatrix {
    let values: Vec<Quaternion> = (0..n.div_ceil(2).max(1))
        .map(|k| Quaternion::new(k as f64 - 0.5 * rng.random_range(0.0..1.0), rng.random_range(0.3..1.0), 0.0, 0.0))
        .collect();
    QMatrix::from_fn(n, |r, c| {
        if r == c {
            values[r / 2]
        } else if c > r {
            quaternion(rng)
        } else {
            Quaternion::ZERO
        }
    })
}

/// A quaternion whose sphere keeps distance at least `margin` from the
/// spectrum.
pub fn admissible_point(rng: &mut impl Rng, spec: &SpectrumInfo, radius: f64, margin: f64) -> Quaternion {
    loop {
        let q = quaternion(rng) * radius;
        if spec.distance_to(q.re(), q.imag_norm()) > margin {
            return q;
        }
    }
}
