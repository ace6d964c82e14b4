//! Spectral theory of quaternionic right-linear operators on `H^n`.
//!
//! The crate covers the whole finite-dimensional pipeline: quaternion
//! arithmetic and axially symmetric geometry, intrinsic slice functions,
//! S-spectra through the complex adjoint embedding, pseudo-resolvents and
//! S-resolvents, the intrinsic S-functional calculus by contour quadrature,
//! spectral systems `(E, J)` and the canonical decomposition `T = S + N`.
//!
//! Everything here is pure computation over `alloc`; IO, file formats and
//! the command line live in the `qspectra` companion crate.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod calculus;
pub mod decomposition;
mod error;
pub mod linalg;
pub mod quaternion;
pub mod resolvent;
pub mod slice;
pub mod spectral;
mod tol;

pub use error::{Error, Result};
pub use tol::Tolerances;

pub use num_complex::Complex64;

pub use calculus::{ContourSpec, QuadratureConfig};
pub use decomposition::SpectralDecomposition;
pub use linalg::{ComplexMatrix, QMatrix, QVector, SpectrumInfo};
pub use quaternion::{ImaginaryUnit, Quaternion, SpectralSphere};
pub use slice::{IntrinsicSliceFunction, MeasurableIntrinsicSliceFunction};
pub use spectral::{AxSet, ImaginaryOperator, SpectralMeasure, SpectralSystem};
