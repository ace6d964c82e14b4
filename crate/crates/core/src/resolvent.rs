//! Pseudo-resolvents `Q_s(T)⁻¹`, the resolvent field `R_s(T; v)` of the
//! right-linear structure, and the left/right S-resolvent operators.
//!
//! `Q_s(T) = T² − 2 Re(s) T + |s|² I` has real coefficients, so it depends
//! on `s` only through its sphere and commutes with `T`.
//!
//! The S-resolvents need a left multiplication on `H^n`; the canonical
//! componentwise one is used, written `L_q v = (q v_1, …, q v_n)`, which as
//! a matrix is `q·I`. Nothing else in the crate depends on it.

use alloc::format;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::linalg::{s_spectrum, Lu, QMatrix, QVector, SpectrumInfo};
use crate::quaternion::Quaternion;
use crate::{Error, Result, Tolerances};

type C = Complex64;

/// `Q_s(T) = T² − 2 Re(s) T + |s|² I`.
pub fn q_operator(t: &QMatrix, s: Quaternion) -> QMatrix {
    q_from_square(t, &t.mul(t), s.re(), s.norm_sqr())
}

/// `Q_s(T)` from a precomputed `T²`, with `s₀ = Re s` and `r2 = |s|²`.
pub(crate) fn q_from_square(t: &QMatrix, t2: &QMatrix, s0: f64, r2: f64) -> QMatrix {
    let n = t.n();
    let mut q = t2.sub(&t.scale(2.0 * s0));
    for k in 0..n {
        q[(k, k)] += Quaternion::real(r2);
    }
    q
}

/// Fails with [`Error::Singular`] when `[s]` is within the near-spectrum
/// guard of `σ_S(T)`.
pub fn check_resolvent_point(spec: &SpectrumInfo, s: Quaternion, tol: &Tolerances) -> Result<()> {
    if !s.is_finite() {
        return Err(Error::domain("resolvent point is not finite"));
    }
    let d = spec.distance_to(s.re(), s.imag_norm());
    let guard = tol.near_spectrum(spec.norm).max(spec.tol_cluster);
    if d < guard {
        return Err(Error::singular(
            format!("[s] with s = {s} lies on or near the S-spectrum"),
            d,
        ));
    }
    Ok(())
}

/// A factorization of `Q_s(T)` ready for repeated solves.
#[derive(Clone, Debug)]
pub struct PseudoResolvent {
    s: Quaternion,
    lu: Lu,
}

impl PseudoResolvent {
    /// Factors `Q_s(T)` after checking that `[s]` avoids `σ_S(T)`.
    pub fn new(t: &QMatrix, s: Quaternion, spec: &SpectrumInfo, tol: &Tolerances) -> Result<Self> {
        check_resolvent_point(spec, s, tol)?;
        Self::factor(&q_operator(t, s), s, tol)
    }

    /// Factors a prepared `Q_s(T)` without the spectral guard; the caller
    /// is responsible for keeping `s` away from the spectrum.
    pub(crate) fn factor(q: &QMatrix, s: Quaternion, tol: &Tolerances) -> Result<Self> {
        let lu = q.embed().lu()?;
        let cond = lu.condition_estimate();
        if cond > tol.max_condition {
            return Err(Error::singular(
                format!("Q_s(T) at s = {s} is ill-conditioned (estimate {cond:.3e})"),
                1.0 / cond,
            ));
        }
        Ok(PseudoResolvent { s, lu })
    }

    pub fn point(&self) -> Quaternion {
        self.s
    }

    /// `Q_s(T)⁻¹ b`.
    pub fn apply(&self, b: &QVector) -> QVector {
        QVector::from_chart(&self.lu.solve(&b.chart())).expect("even chart length")
    }

    /// `Q_s(T)⁻¹` applied to chart coordinates.
    pub fn apply_chart(&self, b: &[C]) -> Vec<C> {
        self.lu.solve(b)
    }

    /// The matrix `Q_s(T)⁻¹`.
    pub fn matrix(&self) -> QMatrix {
        QMatrix::de_embed(&self.lu.inverse()).expect("square even inverse").0
    }
}

/// `Q_s(T)⁻¹ b`; refuses points on or near the S-spectrum.
pub fn pseudo_resolvent_apply(
    t: &QMatrix,
    s: Quaternion,
    b: &QVector,
    tol: &Tolerances,
) -> Result<QVector> {
    check_len(t, b)?;
    let spec = s_spectrum(t, tol)?;
    Ok(PseudoResolvent::new(t, s, &spec, tol)?.apply(b))
}

/// Partial sum `Σ_{n<terms} Tⁿ a_n` of the real-coefficient expansion of
/// `Q_s(T)⁻¹`, where `a_n = |s|^{−2n−2} Σ_{k≤n} s̄^k s^{n−k}`.
///
/// Only valid for `|s| > ‖T‖`; otherwise [`Error::Divergence`].
pub fn pseudo_resolvent_series(t: &QMatrix, s: Quaternion, terms: usize) -> Result<QMatrix> {
    let norm = t.norm();
    let r = s.norm();
    if !(r > norm) {
        return Err(Error::Divergence(format!(
            "series needs |s| > ‖T‖, got |s| = {r:.6e} and ‖T‖ = {norm:.6e}"
        )));
    }
    // with w = z/|z|², a_n = Σ_k w̄^k w^{n−k} / |z|² and
    // S_n = w^n + w̄ S_{n−1}
    let r2 = s.norm_sqr();
    let w = C::new(s.re(), s.imag_norm()) / r2;
    let n = t.n();
    let mut out = QMatrix::zeros(n);
    let mut power = QMatrix::identity(n);
    let mut wn = C::new(1.0, 0.0);
    let mut sum = C::new(0.0, 0.0);
    for k in 0..terms {
        sum = wn + w.conj() * sum;
        wn *= w;
        out = out.add(&power.scale(sum.re / r2));
        if k + 1 < terms {
            power = power.mul(t);
        }
    }
    Ok(out)
}

/// `R_s(T; v) = Q_s(T)⁻¹ v s̄ − T Q_s(T)⁻¹ v`.
pub fn right_resolvent_field(
    t: &QMatrix,
    s: Quaternion,
    v: &QVector,
    tol: &Tolerances,
) -> Result<QVector> {
    check_len(t, v)?;
    let spec = s_spectrum(t, tol)?;
    let pr = PseudoResolvent::new(t, s, &spec, tol)?;
    Ok(resolvent_field_with(t, &pr, v))
}

pub(crate) fn resolvent_field_with(t: &QMatrix, pr: &PseudoResolvent, v: &QVector) -> QVector {
    let x = pr.apply(v);
    x.right_mul(pr.point().conj()).sub(&t.apply(&x))
}

/// The left and right S-resolvent operators at one point.
#[derive(Clone, Debug, PartialEq)]
pub struct SResolventPair {
    pub left: QMatrix,
    pub right: QMatrix,
}

/// `S_L⁻¹(s,T) = Q_s(T)⁻¹ L_s̄ − T Q_s(T)⁻¹` and
/// `S_R⁻¹(s,T) = −(T − L_s̄) Q_s(T)⁻¹`.
pub fn s_resolvents(t: &QMatrix, s: Quaternion, tol: &Tolerances) -> Result<SResolventPair> {
    let spec = s_spectrum(t, tol)?;
    s_resolvents_with(t, s, &spec, tol)
}

fn s_resolvents_with(
    t: &QMatrix,
    s: Quaternion,
    spec: &SpectrumInfo,
    tol: &Tolerances,
) -> Result<SResolventPair> {
    let n = t.n();
    let qi = PseudoResolvent::new(t, s, spec, tol)?.matrix();
    let sbar = QMatrix::scalar(n, s.conj());
    let left = qi.mul(&sbar).sub(&t.mul(&qi));
    let right = sbar.sub(t).mul(&qi);
    Ok(SResolventPair { left, right })
}

/// Operator-norm residual of the S-resolvent equation
///
/// `S_R⁻¹(s)S_L⁻¹(x) = [(S_R⁻¹(s) − S_L⁻¹(x)) L_x − L_s̄ (S_R⁻¹(s) − S_L⁻¹(x))] L_p⁻¹`
///
/// with `p = x² − 2 s₀ x + |s|²`. Requires `s, x ∈ ρ_S(T)` and `s ∉ [x]`.
pub fn sresolvent_equation_residual(
    t: &QMatrix,
    s: Quaternion,
    x: Quaternion,
    tol: &Tolerances,
) -> Result<f64> {
    let spec = s_spectrum(t, tol)?;
    let sep = tol.cluster(spec.norm);
    if Quaternion::same_sphere(s, x, sep) {
        return Err(Error::domain("the equation needs s outside the sphere of x"));
    }
    let rs = s_resolvents_with(t, s, &spec, tol).map_err(as_domain)?;
    let rx = s_resolvents_with(t, x, &spec, tol).map_err(as_domain)?;
    let n = t.n();
    let p = x * x - x * (2.0 * s.re()) + Quaternion::real(s.norm_sqr());
    let pinv = p
        .inv()
        .ok_or_else(|| Error::domain("x² − 2 s₀ x + |s|² vanishes"))?;
    let diff = rs.right.sub(&rx.left);
    let lhs = rs.right.mul(&rx.left);
    let bracket = diff
        .mul(&QMatrix::scalar(n, x))
        .sub(&QMatrix::scalar(n, s.conj()).mul(&diff));
    let rhs = bracket.mul(&QMatrix::scalar(n, pinv));
    Ok(lhs.sub(&rhs).norm())
}

fn as_domain(e: Error) -> Error {
    match e {
        Error::Singular { reason, distance } => {
            Error::Domain(format!("{reason} (distance {distance:.3e})"))
        }
        other => other,
    }
}

fn check_len(t: &QMatrix, v: &QVector) -> Result<()> {
    if t.n() != v.len() {
        return Err(Error::Dimension {
            expected: t.n(),
            found: v.len(),
        });
    }
    Ok(())
}
