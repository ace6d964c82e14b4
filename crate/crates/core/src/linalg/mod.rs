//! Dense linear algebra: complex matrices, the complex embedding of
//! quaternionic matrices, eigenvalues and the S-spectrum.

mod cmatrix;
mod eigen;
mod qmatrix;
mod spectrum;

pub use cmatrix::{vec_norm, ComplexMatrix, Lu};
pub use eigen::complex_eigenvalues;
pub use qmatrix::{chart_entry, dechart_entry, QMatrix, QVector};
pub use spectrum::{hausdorff, hausdorff_spheres, s_spectrum, SphereEntry, SpectrumInfo};

#[cfg(test)]
pub(crate) mod test_util {
    use super::{QMatrix, QVector};
    use crate::quaternion::Quaternion;
    use rand::Rng;

    pub fn random_quaternion(rng: &mut impl Rng) -> Quaternion {
        Quaternion::new(
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
        )
    }

    pub fn random_qmatrix(rng: &mut impl Rng, n: usize) -> QMatrix {
        QMatrix::from_fn(n, |_, _| random_quaternion(rng))
    }

    pub fn random_qvector(rng: &mut impl Rng, n: usize) -> QVector {
        QVector::new((0..n).map(|_| random_quaternion(rng)).collect())
    }
}
