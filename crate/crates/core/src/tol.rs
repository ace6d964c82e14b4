/// Numerical tolerances threaded through every stage.
///
/// Relative values are scaled by `max(1, ‖T‖)` of the operator at hand
/// unless a field says otherwise.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Eigenvalue clustering and real-axis snapping.
    pub cluster_rel: f64,
    /// Refuse pseudo-resolvent solves this close to a spectral sphere.
    pub near_spectrum_rel: f64,
    /// Target for successive quadrature refinements.
    pub quad_rel: f64,
    /// Singular-value threshold for rank decisions.
    pub rank_rel: f64,
    /// Structural checks of spectral systems (idempotency, commutation, ...).
    pub system_rel: f64,
    /// Threshold below which powers of the radical part count as zero.
    pub nilpotent_rel: f64,
    /// Relative clearance between contours and the spectrum.
    pub clearance_rel: f64,
    /// Largest admissible pivot ratio in LU factorizations.
    pub max_condition: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            cluster_rel: 1e-8,
            near_spectrum_rel: 1e-10,
            quad_rel: 1e-10,
            rank_rel: 1e-10,
            system_rel: 1e-9,
            nilpotent_rel: 1e-9,
            clearance_rel: 0.05,
            max_condition: 1e14,
        }
    }
}

impl Tolerances {
    pub fn cluster(&self, norm: f64) -> f64 {
        self.cluster_rel * scale(norm)
    }

    pub fn near_spectrum(&self, norm: f64) -> f64 {
        self.near_spectrum_rel * scale(norm)
    }
}

/// `max(1, x)`, the scale used for relative tolerances.
pub(crate) fn scale(x: f64) -> f64 {
    if x > 1.0 {
        x
    } else {
        1.0
    }
}
