//! Spectral measures, imaginary operators and spectral systems `(E, J)`.
//!
//! Spectral measures here are finitely supported: a list of spheres with
//! one projection each. A set `Δ` is resolved by summing the projections of
//! the supported spheres it contains, so additivity and multiplicativity
//! hold by construction up to the accuracy of the projections themselves.

use alloc::boxed::Box;
use alloc::format;
use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)] // shadowed by inherent methods when std is linked
use num_traits::Float;

use crate::linalg::{s_spectrum, ComplexMatrix, QMatrix, QVector};
use crate::quaternion::{ImaginaryUnit, Quaternion, SpectralSphere};
use crate::slice::{IntrinsicSliceFunction, MeasurableIntrinsicSliceFunction};
use crate::tol::scale;
use crate::{Error, Result, Tolerances};

type C = Complex64;

/// An axially symmetric set, described in `(u, v)` coordinates with
/// `v ≥ 0` standing for the whole sphere `[u + iv]`.
#[derive(Clone, Debug, PartialEq)]
pub enum AxSet {
    Empty,
    /// All of `H`.
    All,
    /// The real line, `v = 0`.
    Real,
    /// Closed rectangle `[u0, u1] × [v0, v1]`.
    Rect { u: (f64, f64), v: (f64, f64) },
    Union(Vec<AxSet>),
    Intersection(Vec<AxSet>),
    Complement(Box<AxSet>),
}

impl AxSet {
    pub fn rect(u0: f64, u1: f64, v0: f64, v1: f64) -> Result<AxSet> {
        if !(u0 <= u1) || !(v0 <= v1) || v1 < 0.0 || [u0, u1, v0, v1].iter().any(|x| x.is_nan()) {
            return Err(Error::domain("rectangle needs u0 ≤ u1, v0 ≤ v1 and v1 ≥ 0"));
        }
        Ok(AxSet::Rect {
            u: (u0, u1),
            v: (v0.max(0.0), v1),
        })
    }

    /// A closed ball of radius `r` around a sphere, in `(u, v)` coordinates.
    pub fn around(s: SpectralSphere, r: f64) -> AxSet {
        AxSet::Rect {
            u: (s.u - r, s.u + r),
            v: ((s.v - r).max(0.0), s.v + r),
        }
    }

    /// `H ∖ R`.
    pub fn nonreal() -> AxSet {
        AxSet::Complement(Box::new(AxSet::Real))
    }

    pub fn complement(self) -> AxSet {
        AxSet::Complement(Box::new(self))
    }

    pub fn union(self, other: AxSet) -> AxSet {
        AxSet::Union(alloc::vec![self, other])
    }

    pub fn intersection(self, other: AxSet) -> AxSet {
        AxSet::Intersection(alloc::vec![self, other])
    }

    pub fn contains(&self, s: SpectralSphere) -> bool {
        match self {
            AxSet::Empty => false,
            AxSet::All => true,
            AxSet::Real => s.v == 0.0,
            AxSet::Rect { u, v } => u.0 <= s.u && s.u <= u.1 && v.0 <= s.v && s.v <= v.1,
            AxSet::Union(parts) => parts.iter().any(|p| p.contains(s)),
            AxSet::Intersection(parts) => parts.iter().all(|p| p.contains(s)),
            AxSet::Complement(inner) => !inner.contains(s),
        }
    }

    pub fn contains_quaternion(&self, q: Quaternion) -> bool {
        self.contains(q.sphere())
    }
}

/// `max(1, ‖A‖)·max(1, ‖B‖)`, the scale of a product residual.
fn pair_scale(a: f64, b: f64) -> f64 {
    scale(a) * scale(b)
}

/// A finitely supported spectral measure on `H^n`.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectralMeasure {
    n: usize,
    support: Vec<(SpectralSphere, QMatrix)>,
}

/// Worst residuals of the spectral-measure axioms.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct MeasureResiduals {
    /// `max_k ‖E_k² − E_k‖ / max(1, ‖E_k‖)²`.
    pub idempotent: f64,
    /// `max_{j≠k} ‖E_j E_k‖ / (max(1, ‖E_j‖) max(1, ‖E_k‖))`.
    pub orthogonal: f64,
    /// `‖Σ E_k − I‖`.
    pub total: f64,
}

impl MeasureResiduals {
    pub fn worst(&self) -> f64 {
        self.idempotent.max(self.orthogonal).max(self.total)
    }
}

impl SpectralMeasure {
    /// Validates the projections at `tol.system_rel`.
    pub fn new(n: usize, support: Vec<(SpectralSphere, QMatrix)>, tol: &Tolerances) -> Result<Self> {
        let m = Self::new_unchecked(n, support)?;
        let r = m.residuals();
        if r.worst() > tol.system_rel {
            return Err(Error::domain(format!(
                "not a spectral measure: idempotency {:.3e}, orthogonality {:.3e}, total {:.3e}",
                r.idempotent, r.orthogonal, r.total
            )));
        }
        Ok(m)
    }

    pub(crate) fn new_unchecked(n: usize, support: Vec<(SpectralSphere, QMatrix)>) -> Result<Self> {
        for (_, p) in &support {
            if p.n() != n {
                return Err(Error::Dimension {
                    expected: n,
                    found: p.n(),
                });
            }
        }
        Ok(SpectralMeasure { n, support })
    }

    /// The measure concentrated on one sphere.
    pub fn point(n: usize, s: SpectralSphere) -> Self {
        SpectralMeasure {
            n,
            support: alloc::vec![(s, QMatrix::identity(n))],
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn support(&self) -> &[(SpectralSphere, QMatrix)] {
        &self.support
    }

    pub fn spheres(&self) -> Vec<SpectralSphere> {
        self.support.iter().map(|x| x.0).collect()
    }

    pub fn projection(&self, k: usize) -> &QMatrix {
        &self.support[k].1
    }

    /// `E(Δ)`.
    pub fn eval(&self, set: &AxSet) -> QMatrix {
        self.support
            .iter()
            .filter(|(s, _)| set.contains(*s))
            .fold(QMatrix::zeros(self.n), |acc, (_, p)| acc.add(p))
    }

    pub fn residuals(&self) -> MeasureResiduals {
        let norms: Vec<f64> = self.support.iter().map(|(_, p)| p.norm()).collect();
        let mut r = MeasureResiduals::default();
        let mut total = QMatrix::zeros(self.n);
        for (k, (_, p)) in self.support.iter().enumerate() {
            r.idempotent = r.idempotent.max(p.mul(p).sub(p).norm() / pair_scale(norms[k], norms[k]));
            for (j, (_, q)) in self.support.iter().enumerate() {
                if j != k {
                    r.orthogonal = r.orthogonal.max(q.mul(p).norm() / pair_scale(norms[j], norms[k]));
                }
            }
            total = total.add(p);
        }
        r.total = total.sub(&QMatrix::identity(self.n)).norm();
        r
    }

    /// `C_E = Σ_k ‖E_k‖`, a bound for `‖E(Δ)‖` over all `Δ`.
    pub fn c_e(&self) -> f64 {
        self.support.iter().map(|(_, p)| p.norm()).sum()
    }

    /// `K = max_Δ ‖E(Δ)‖`: exact over all subsets of the support when it has
    /// at most 12 spheres, otherwise over prefix sums in support order.
    pub fn uniform_bound(&self) -> f64 {
        let k = self.support.len();
        let mut best: f64 = 0.0;
        if k <= 12 {
            for mask in 1u32..(1 << k) {
                let mut acc = QMatrix::zeros(self.n);
                for (j, (_, p)) in self.support.iter().enumerate() {
                    if mask & (1 << j) != 0 {
                        acc = acc.add(p);
                    }
                }
                best = best.max(acc.norm());
            }
        } else {
            let mut acc = QMatrix::zeros(self.n);
            for (_, p) in &self.support {
                acc = acc.add(p);
                best = best.max(acc.norm());
            }
        }
        best
    }

    /// Whether every projection is self-adjoint to `tol`; only meaningful
    /// for normal operators.
    pub fn is_orthogonal(&self, tol: f64) -> bool {
        self.support.iter().all(|(_, p)| {
            let e = p.embed();
            e.sub(&e.adjoint()).norm2() <= tol * scale(p.norm())
        })
    }
}

/// A bounded `J` such that `−J²` is the projection onto `ran J` along `ker J`.
#[derive(Clone, Debug, PartialEq)]
pub struct ImaginaryOperator {
    j: QMatrix,
}

/// Residuals of the imaginary-operator axioms.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct ImaginaryResiduals {
    /// `‖P² − P‖ / max(1, ‖P‖)²` for `P = −J²`.
    pub projection: f64,
    /// `rank J − rank J²` (embedded ranks, so always even).
    pub rank_gap: usize,
    /// Distance of `σ_S(J)` from `{0} ∪ S`.
    pub spectrum: f64,
}

impl ImaginaryOperator {
    pub fn new(j: QMatrix, tol: &Tolerances) -> Result<Self> {
        let op = ImaginaryOperator { j };
        let r = op.residuals(tol)?;
        let norm = op.j.norm();
        if r.projection > tol.system_rel || r.rank_gap != 0 || r.spectrum > 1e-8 * scale(norm) {
            return Err(Error::domain(format!(
                "not an imaginary operator: −J² idempotency {:.3e}, rank J − rank J² = {}, spectrum off by {:.3e}",
                r.projection, r.rank_gap, r.spectrum
            )));
        }
        Ok(op)
    }

    pub(crate) fn new_unchecked(j: QMatrix) -> Self {
        ImaginaryOperator { j }
    }

    pub fn zero(n: usize) -> Self {
        ImaginaryOperator { j: QMatrix::zeros(n) }
    }

    pub fn matrix(&self) -> &QMatrix {
        &self.j
    }

    pub fn into_matrix(self) -> QMatrix {
        self.j
    }

    pub fn dim(&self) -> usize {
        self.j.n()
    }

    /// `−J²`.
    pub fn projection(&self) -> QMatrix {
        self.j.mul(&self.j).scale(-1.0)
    }

    pub fn residuals(&self, tol: &Tolerances) -> Result<ImaginaryResiduals> {
        let p = self.projection();
        let pn = p.norm();
        let projection = p.mul(&p).sub(&p).norm() / pair_scale(pn, pn);
        let thr = tol.rank_rel * scale(self.j.norm());
        let j2 = self.j.mul(&self.j);
        let rank_j = self.j.embed().rank(thr);
        let rank_j2 = j2.embed().rank(thr * scale(self.j.norm()));
        let spec = s_spectrum(&self.j, tol)?;
        let spectrum = spec
            .spheres
            .iter()
            .map(|e| {
                let s = e.sphere;
                s.u.hypot(s.v).min(s.u.hypot(s.v - 1.0))
            })
            .fold(0.0, f64::max);
        Ok(ImaginaryResiduals {
            projection,
            rank_gap: rank_j.saturating_sub(rank_j2),
            spectrum,
        })
    }
}

/// Bases of `V₀ = ker J`, `V⁺ = {Jv = v·i}` and `V⁻ = {Jv = −v·i}`, each
/// spanning its space over `C_i` by right multiplication.
#[derive(Clone, Debug)]
pub struct ImaginarySplit {
    pub kernel: Vec<QVector>,
    pub plus: Vec<QVector>,
    pub minus: Vec<QVector>,
}

/// Splits `H^n` (as a `2n`-dimensional space over `C_i`) by the eigenvalues
/// `0, i, −i` of `J`.
///
/// The unit `i` is rotated onto `e1` entrywise, the embedded eigenspaces
/// are computed there, and the bases are rotated back.
pub fn split_by_imaginary_operator(
    j: &ImaginaryOperator,
    i: ImaginaryUnit,
    tol: &Tolerances,
) -> Result<ImaginarySplit> {
    let n = j.dim();
    let h = i.rotor_from_e1();
    let hinv = h.inv().expect("unit rotor");
    let m = j.j.conjugate_entries(h)?.embed();
    let thr = 1e3 * tol.rank_rel * scale(j.j.norm());
    let eig_space = |lambda: C| -> Result<Vec<QVector>> {
        let shifted = m.sub(&ComplexMatrix::identity(2 * n).scale(lambda));
        shifted
            .kernel_basis(thr)
            .iter()
            .map(|c| Ok(rotate_vector(&QVector::from_chart(c)?, hinv)))
            .collect()
    };
    let split = ImaginarySplit {
        kernel: eig_space(C::new(0.0, 0.0))?,
        plus: eig_space(C::new(0.0, 1.0))?,
        minus: eig_space(C::new(0.0, -1.0))?,
    };
    let total = split.kernel.len() + split.plus.len() + split.minus.len();
    if total != 2 * n || split.plus.len() != split.minus.len() {
        return Err(Error::domain(format!(
            "imaginary operator eigenspaces have dimensions {} + {} + {} over a {}-dimensional space",
            split.kernel.len(),
            split.plus.len(),
            split.minus.len(),
            2 * n
        )));
    }
    Ok(split)
}

/// `h w h⁻¹` entrywise, undoing a rotation of the reference plane.
fn rotate_vector(w: &QVector, hinv: Quaternion) -> QVector {
    let h = hinv.inv().expect("unit rotor");
    QVector::new(w.entries().iter().map(|&q| h * q * hinv).collect())
}

/// `Jv = E₊v·i + E₋v·(−i)` for complex-linear projections on the chart of
/// `H^n` relative to `i` (the `2n`-dimensional space over `C_i`).
///
/// Fails unless `E₊E₋ = E₋E₊ = 0` and right multiplication by a unit
/// orthogonal to `i` carries `ran E₊` onto `ran E₋`, which is exactly
/// when the result is quaternionic-linear.
pub fn make_imaginary_from_projections(
    e_plus: &ComplexMatrix,
    e_minus: &ComplexMatrix,
    i: ImaginaryUnit,
    tol: &Tolerances,
) -> Result<ImaginaryOperator> {
    let d = e_plus.rows();
    if d % 2 != 0 || !e_plus.is_square() || e_minus.rows() != d || !e_minus.is_square() {
        return Err(Error::Dimension {
            expected: d - d % 2,
            found: e_minus.rows(),
        });
    }
    let s = pair_scale(e_plus.norm2(), e_minus.norm2());
    let cross = e_plus.mul(e_minus).norm2().max(e_minus.mul(e_plus).norm2());
    if cross > tol.system_rel * s {
        return Err(Error::domain(format!("E₊E₋ ≠ 0 (residual {cross:.3e})")));
    }
    let jm = e_plus.sub(e_minus).scale(C::new(0.0, 1.0));
    let (j_rot, dev) = QMatrix::de_embed(&jm)?;
    if dev > tol.system_rel * s {
        return Err(Error::domain(format!(
            "projections are not compatible with right multiplication by j (deviation {dev:.3e})"
        )));
    }
    let h = i.rotor_from_e1();
    let j = j_rot.conjugate_entries(h.inv().expect("unit rotor"))?;
    ImaginaryOperator::new(j, tol)
}

/// A spectral measure with a commuting imaginary operator such that
/// `E(H ∖ R) = −J²`.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectralSystem {
    pub e: SpectralMeasure,
    pub j: ImaginaryOperator,
}

/// Worst residuals of the spectral-system axioms.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct SystemResiduals {
    pub measure: MeasureResiduals,
    /// `max_k ‖E_k J − J E_k‖`, relative to `max(1, ‖E_k‖) max(1, ‖J‖)`.
    pub commutation: f64,
    /// `‖E(H∖R) + J²‖`, relative to `max(1, ‖J‖)²`.
    pub nonreal: f64,
}

impl SystemResiduals {
    pub fn worst(&self) -> f64 {
        self.measure.worst().max(self.commutation).max(self.nonreal)
    }
}

impl SpectralSystem {
    pub fn new(e: SpectralMeasure, j: ImaginaryOperator, tol: &Tolerances) -> Result<Self> {
        if e.dim() != j.dim() {
            return Err(Error::Dimension {
                expected: e.dim(),
                found: j.dim(),
            });
        }
        let sys = SpectralSystem { e, j };
        let r = sys.residuals();
        if r.worst() > tol.system_rel {
            return Err(Error::domain(format!(
                "not a spectral system: measure {:.3e}, EJ − JE {:.3e}, E(H∖R) + J² {:.3e}",
                r.measure.worst(),
                r.commutation,
                r.nonreal
            )));
        }
        Ok(sys)
    }

    pub fn dim(&self) -> usize {
        self.e.dim()
    }

    pub fn residuals(&self) -> SystemResiduals {
        let jn = self.j.j.norm();
        let commutation = self
            .e
            .support()
            .iter()
            .map(|(_, p)| p.commutator_norm(&self.j.j) / pair_scale(p.norm(), jn))
            .fold(0.0, f64::max);
        let nonreal = self
            .e
            .eval(&AxSet::nonreal())
            .sub(&self.j.projection())
            .norm()
            / pair_scale(jn, jn);
        SystemResiduals {
            measure: self.e.residuals(),
            commutation,
            nonreal,
        }
    }

    /// `∫ f dE_J = Σ_k E_k α(u_k, v_k) + J E_k β(u_k, v_k)`.
    pub fn spectral_integral(&self, f: &MeasurableIntrinsicSliceFunction) -> Result<QMatrix> {
        self.integrate_components(|u, v| f.components(u, v))
    }

    /// The spectral integral of a slice hyperholomorphic function.
    pub fn integral_of(&self, f: &IntrinsicSliceFunction) -> Result<QMatrix> {
        self.integrate_components(|u, v| f.components(u, v))
    }

    fn integrate_components(&self, comp: impl Fn(f64, f64) -> Result<(f64, f64)>) -> Result<QMatrix> {
        let mut acc = QMatrix::zeros(self.dim());
        for (s, p) in self.e.support() {
            let (a, b) = comp(s.u, s.v).map_err(|e| match e {
                Error::Singular { reason, .. } => Error::Domain(reason),
                e => e,
            })?;
            if !a.is_finite() || !b.is_finite() {
                return Err(Error::domain(format!("function is unbounded at the sphere ({}, {})", s.u, s.v)));
            }
            acc = acc.add(&p.scale(a));
            if b != 0.0 {
                acc = acc.add(&self.j.j.mul(p).scale(b));
            }
        }
        Ok(acc)
    }

    /// `C_{E,J} = C_E (1 + ‖J‖)`; bounds `‖∫ f dE_J‖ ≤ C_{E,J} ‖f‖_∞`.
    pub fn norm_bound_constant(&self) -> f64 {
        self.e.c_e() * (1.0 + self.j.j.norm())
    }

    /// The complex spectral measure on the chart of `H^n` relative to `e1`.
    ///
    /// With `P = embed(−J²)` and `M = embed(J)`, `E₊ = (P − iM)/2` and
    /// `E₋ = (P + iM)/2` are the projections onto `Jv = ±v·e1`; each
    /// nonreal sphere `(u, v)` splits into `u + iv ↦ E₊ embed(E_k)` and
    /// `u − iv ↦ E₋ embed(E_k)`.
    pub fn induce_complex_measure(&self) -> ComplexSpectralMeasure {
        let p = self.j.projection().embed();
        let m = self.j.j.embed().scale(C::new(0.0, 1.0));
        let half = C::new(0.5, 0.0);
        let e_plus = p.sub(&m).scale(half);
        let e_minus = p.add(&m).scale(half);
        let mut support = Vec::new();
        for (s, proj) in self.e.support() {
            let emb = proj.embed();
            if s.is_real() {
                support.push((C::new(s.u, 0.0), emb));
            } else {
                support.push((s.upper(), e_plus.mul(&emb)));
                support.push((s.upper().conj(), e_minus.mul(&emb)));
            }
        }
        ComplexSpectralMeasure { support }
    }
}

/// A finitely supported spectral measure on `C^{2n}` with points in the
/// reference plane.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexSpectralMeasure {
    pub support: Vec<(C, ComplexMatrix)>,
}

impl ComplexSpectralMeasure {
    /// `Σ g(z_k) P_k`.
    pub fn integrate(&self, g: impl Fn(C) -> Result<C>) -> Result<ComplexMatrix> {
        let d = self.support.first().map_or(0, |x| x.1.rows());
        let mut acc = ComplexMatrix::zeros(d, d);
        for (z, p) in &self.support {
            acc = acc.add(&p.scale(g(*z)?));
        }
        Ok(acc)
    }

    /// Projection onto the points in the open upper (`sign > 0`) or lower
    /// half-plane.
    pub fn half_plane(&self, sign: f64) -> ComplexMatrix {
        let d = self.support.first().map_or(0, |x| x.1.rows());
        self.support
            .iter()
            .filter(|(z, _)| z.im * sign > 0.0)
            .fold(ComplexMatrix::zeros(d, d), |acc, (_, p)| acc.add(p))
    }

    /// Worst of idempotency, mutual annihilation and `‖Σ P − I‖`.
    pub fn residual(&self) -> f64 {
        let d = self.support.first().map_or(0, |x| x.1.rows());
        let mut worst: f64 = 0.0;
        let mut total = ComplexMatrix::zeros(d, d);
        for (k, (_, p)) in self.support.iter().enumerate() {
            let s = scale(p.norm2());
            worst = worst.max(p.mul(p).sub(p).norm2() / (s * s));
            for (j, (_, q)) in self.support.iter().enumerate() {
                if j != k {
                    worst = worst.max(p.mul(q).norm2() / (s * scale(q.norm2())));
                }
            }
            total = total.add(p);
        }
        worst.max(total.sub(&ComplexMatrix::identity(d)).norm2())
    }
}

/// Basis of `ker Q_s(T)` for a sphere `[s]`, as quaternionic vectors.
pub fn eigensphere_kernel(t: &QMatrix, s: SpectralSphere, tol: &Tolerances) -> Vec<QVector> {
    let m = t.embed();
    let d = m.rows();
    let mut q = m.mul(&m).sub(&m.scale(C::new(2.0 * s.u, 0.0)));
    for k in 0..d {
        q[(k, k)] += s.u * s.u + s.v * s.v;
    }
    let thr = 1e3 * tol.rank_rel * scale(q.norm2());
    q.kernel_basis(thr)
        .iter()
        .map(|c| QVector::from_chart(c).expect("chart has even length"))
        .collect()
}

/// Splits `v ∈ ker Q_s(T)` into `v₁ + v₂` with `T v₁ = v₁ s_i` and
/// `T v₂ = v₂ conj(s_i)`, where `s_i = s₀ + i s₁` and `s₁ > 0`:
///
/// `v₁ = (Tv − v conj(s_i))(−i)/(2s₁)`, `v₂ = (Tv − v s_i) i/(2s₁)`.
pub fn eigensphere_split(t: &QMatrix, s0: f64, s1: f64, i: ImaginaryUnit, v: &QVector) -> Result<(QVector, QVector)> {
    if !(s1 > 0.0) {
        return Err(Error::domain("eigensphere splitting needs a nonreal sphere"));
    }
    let si = i.point(s0, s1);
    let iq = i.quaternion();
    let tv = t.apply(v);
    let v1 = tv.sub(&v.right_mul(si.conj())).right_mul(-iq / (2.0 * s1));
    let v2 = tv.sub(&v.right_mul(si)).right_mul(iq / (2.0 * s1));
    Ok((v1, v2))
}
