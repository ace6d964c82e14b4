//! The intrinsic S-functional calculus by contour quadrature.
//!
//! For `T ∈ H^{n×n}` and an intrinsic `f`,
//!
//! `f(T) v = (1/2π) ∫_{∂(U ∩ C_{e1})} R_z(T; v) f(z) dz (−e1)`,
//! `R_z(T; v) = Q_z(T)⁻¹ v z̄ − T Q_z(T)⁻¹ v`,
//!
//! where `U` is a union of discs in the reference plane, symmetric under
//! conjugation, containing the trace of `σ_S(T)`. On a circle
//! `z = c + r e^{iθ}` the measure `dz (−e1)/2π` becomes `(z − c) dθ/2π`,
//! and the trapezoidal rule gives
//! `(1/N) Σ_k R_{z_k}(T; v) f(z_k)(z_k − c)`.
//!
//! All products of `R_z(T; v)` with `f(z)` and `z − c` are right
//! multiplications by elements of `C_{e1}`, which the chart turns into
//! componentwise complex products.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;

use crate::linalg::{hausdorff_spheres, s_spectrum, ComplexMatrix, QMatrix, SpectrumInfo};
use crate::quaternion::{ImaginaryUnit, Quaternion, SpectralSphere};
use crate::slice::IntrinsicSliceFunction;
use crate::tol::scale;
use crate::{Error, Result, Tolerances};

type C = Complex64;

/// A positively oriented circle in the reference plane.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Circle {
    pub center: C,
    pub radius: f64,
}

impl Circle {
    pub fn new(center: C, radius: f64) -> Result<Self> {
        if !(radius > 0.0) || !radius.is_finite() || !center.re.is_finite() || !center.im.is_finite() {
            return Err(Error::domain("circle needs a finite center and a positive radius"));
        }
        Ok(Circle { center, radius })
    }

    /// Strictly inside.
    pub fn encloses(&self, z: C) -> bool {
        (z - self.center).norm() < self.radius
    }

    /// Distance from `z` to the circle itself.
    pub fn boundary_distance(&self, z: C) -> f64 {
        ((z - self.center).norm() - self.radius).abs()
    }

    fn mirror(&self) -> Circle {
        Circle {
            center: self.center.conj(),
            radius: self.radius,
        }
    }
}

/// A finite family of disjoint circles bounding a union of discs.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ContourSpec {
    pub circles: Vec<Circle>,
}

impl ContourSpec {
    pub fn new(circles: Vec<Circle>) -> Self {
        ContourSpec { circles }
    }

    /// Whether the family is closed under conjugation: every circle is
    /// real-centered or has its mirror image in the family.
    pub fn is_symmetric(&self) -> bool {
        let tol = |c: &Circle| 1e-12 * (1.0 + c.center.norm() + c.radius);
        self.circles.iter().all(|c| {
            c.center.im.abs() <= tol(c)
                || self.circles.iter().any(|d| {
                    (d.center - c.center.conj()).norm() <= tol(c) && (d.radius - c.radius).abs() <= tol(c)
                })
        })
    }

    pub fn check_symmetric(&self) -> Result<()> {
        if self.is_symmetric() {
            Ok(())
        } else {
            Err(Error::domain("contour is not symmetric under conjugation"))
        }
    }

    /// Whether `z` lies inside one of the circles.
    pub fn encloses(&self, z: C) -> bool {
        self.circles.iter().any(|c| c.encloses(z))
    }

    /// Checks the contour against a spectrum: symmetric, pairwise disjoint
    /// discs, boundaries at least `guard` away from every trace point, and
    /// (when `enclose_all`) every trace point inside.
    pub fn validate(&self, spec: &SpectrumInfo, guard: f64, enclose_all: bool) -> Result<()> {
        if self.circles.is_empty() && !spec.spheres.is_empty() && enclose_all {
            return Err(Error::domain("empty contour cannot enclose the spectrum"));
        }
        self.check_symmetric()?;
        for (k, a) in self.circles.iter().enumerate() {
            for b in &self.circles[k + 1..] {
                if (a.center - b.center).norm() <= a.radius + b.radius {
                    return Err(Error::domain(format!(
                        "contour circles around {} and {} intersect",
                        a.center, b.center
                    )));
                }
            }
        }
        for p in spec.trace_points() {
            for c in &self.circles {
                let d = c.boundary_distance(p);
                if d < guard {
                    return Err(Error::singular(
                        format!("contour circle around {} passes near the spectral point {p}", c.center),
                        d,
                    ));
                }
            }
            if enclose_all && !self.encloses(p) {
                return Err(Error::domain(format!("contour does not enclose the spectral point {p}")));
            }
        }
        Ok(())
    }
}

/// Trapezoidal-rule settings.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadratureConfig {
    /// Initial nodes per circle; a power of two, at least 16.
    pub nodes: usize,
    /// Refinement stops with an error beyond this many nodes per circle.
    pub max_nodes: usize,
    /// Relative target for successive refinements; `None` uses
    /// [`Tolerances::quad_rel`].
    pub rel_tol: Option<f64>,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig {
            nodes: 256,
            max_nodes: 4096,
            rel_tol: None,
        }
    }
}

impl QuadratureConfig {
    pub fn validate(&self) -> Result<()> {
        if self.nodes < 16 || !self.nodes.is_power_of_two() || self.max_nodes < self.nodes {
            return Err(Error::domain(
                "quadrature needs a power-of-two node count ≥ 16 and max_nodes ≥ nodes",
            ));
        }
        Ok(())
    }
}

/// Clearance between contours and the spectrum.
pub fn clearance(spec: &SpectrumInfo, tol: &Tolerances) -> f64 {
    (tol.clearance_rel * scale(spec.norm)).max(10.0 * spec.tol_cluster)
}

/// One real-centered circle around the whole spectrum, at the midpoint of
/// the real range and with [`clearance`] to spare.
pub fn enclosing_contour(spec: &SpectrumInfo, tol: &Tolerances) -> ContourSpec {
    let pts = spec.trace_points();
    let (lo, hi) = pts
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), p| (a.min(p.re), b.max(p.re)));
    let center = if pts.is_empty() { 0.0 } else { 0.5 * (lo + hi) };
    let c = C::new(center, 0.0);
    let reach = pts.iter().map(|p| (p - c).norm()).fold(0.0, f64::max);
    ContourSpec::new(vec![Circle {
        center: c,
        radius: reach + clearance(spec, tol),
    }])
}

/// Isolation radius of every sphere: `min(clearance, 0.4·gap)` with `gap`
/// the distance from its upper trace point to the nearest other trace
/// point, its own conjugate included.
fn isolation_radii(spec: &SpectrumInfo, tol: &Tolerances) -> Result<Vec<f64>> {
    let pts = spec.trace_points();
    let cl = clearance(spec, tol);
    let mut out = Vec::with_capacity(spec.spheres.len());
    for e in &spec.spheres {
        let p = e.sphere.upper();
        let gap = pts
            .iter()
            .map(|q| (q - p).norm())
            .filter(|&d| d > 0.0)
            .fold(f64::INFINITY, f64::min);
        let r = cl.min(0.4 * gap);
        if r < 10.0 * spec.tol_cluster {
            return Err(Error::Conditioning(format!(
                "sphere ({:.6e}, {:.6e}) is only {gap:.3e} away from other spectral points; \
                 perturb the input or raise the clustering tolerance",
                e.sphere.u, e.sphere.v
            )));
        }
        out.push(r);
    }
    Ok(out)
}

/// Small circles around the trace of the selected spheres (indices into
/// `spec.spheres`), mirrored for nonreal spheres.
pub fn isolating_contour_for(spec: &SpectrumInfo, which: &[usize], tol: &Tolerances) -> Result<ContourSpec> {
    let radii = isolation_radii(spec, tol)?;
    let mut circles = Vec::new();
    for &k in which {
        let e = spec.spheres.get(k).ok_or(Error::Dimension {
            expected: spec.spheres.len(),
            found: k,
        })?;
        let c = Circle {
            center: e.sphere.upper(),
            radius: radii[k],
        };
        circles.push(c);
        if !e.sphere.is_real() {
            circles.push(c.mirror());
        }
    }
    Ok(ContourSpec::new(circles))
}

/// Isolating circles around every sphere.
pub fn isolating_contour(spec: &SpectrumInfo, tol: &Tolerances) -> Result<ContourSpec> {
    let all: Vec<usize> = (0..spec.spheres.len()).collect();
    isolating_contour_for(spec, &all, tol)
}

/// A contour for `f(T)`: the single enclosing circle when `f` admits it,
/// otherwise isolating circles; [`Error::Domain`] when neither works.
pub fn auto_contour(
    spec: &SpectrumInfo,
    f: Option<&IntrinsicSliceFunction>,
    tol: &Tolerances,
) -> Result<ContourSpec> {
    let single = enclosing_contour(spec, tol);
    let Some(f) = f else { return Ok(single) };
    if admits(f, &single)? {
        return Ok(single);
    }
    let iso = isolating_contour(spec, tol)?;
    if admits(f, &iso)? {
        return Ok(iso);
    }
    Err(Error::domain(format!(
        "{f} is not holomorphic on any contour neighbourhood of the S-spectrum (spheres: {})",
        describe(spec)
    )))
}

fn describe(spec: &SpectrumInfo) -> alloc::string::String {
    let parts: Vec<_> = spec
        .spheres
        .iter()
        .map(|e| format!("({:.6}, {:.6})", e.sphere.u, e.sphere.v))
        .collect();
    parts.join(", ")
}

/// Whether `f` is holomorphic on every closed disc of the contour.
pub fn admits(f: &IntrinsicSliceFunction, contour: &ContourSpec) -> Result<bool> {
    for c in &contour.circles {
        if !f.admits_disc(c.center, c.radius)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Entrywise Neumaier-compensated accumulator.
struct Accumulator {
    sum: Vec<C>,
    comp: Vec<C>,
}

impl Accumulator {
    fn new(len: usize) -> Self {
        Accumulator {
            sum: vec![C::new(0.0, 0.0); len],
            comp: vec![C::new(0.0, 0.0); len],
        }
    }

    fn add(&mut self, k: usize, x: C) {
        fn step(s: &mut f64, c: &mut f64, x: f64) {
            let t = *s + x;
            if s.abs() >= x.abs() {
                *c += (*s - t) + x;
            } else {
                *c += (x - t) + *s;
            }
            *s = t;
        }
        let (s, c) = (&mut self.sum[k], &mut self.comp[k]);
        step(&mut s.re, &mut c.re, x.re);
        step(&mut s.im, &mut c.im, x.im);
    }

    fn value(&self, k: usize) -> C {
        self.sum[k] + self.comp[k]
    }
}

/// How far above the target a stalled refinement may stop.
pub const STALL_FACTOR: f64 = 1e3;

/// Outcome of a refined trapezoidal integration.
#[derive(Clone, Debug)]
pub struct Quadrature {
    pub value: ComplexMatrix,
    /// Nodes per circle of the accepted iterate.
    pub nodes: usize,
    /// Norm of the difference between the last two iterates.
    pub last_change: f64,
    /// Refinement stopped at a rounding-noise plateau instead of reaching
    /// the target.
    pub stalled: bool,
}

/// `Σ_circles (1/N) Σ_k h(z_k)(z_k − c)` for a matrix-valued `h`, doubling
/// `N` (reusing earlier nodes) until two successive iterates agree to
/// `rel·max(1, norm_scale, ‖iterate‖)`.
///
/// Near-defective clusters can leave the iterates on a rounding-noise
/// plateau above the target. When a doubling no longer halves the change
/// and the change is within [`STALL_FACTOR`] of the target, the iterate is
/// accepted and flagged as stalled.
pub fn trapezoid(
    contour: &ContourSpec,
    q: &QuadratureConfig,
    rel: f64,
    norm_scale: f64,
    rows: usize,
    cols: usize,
    mut h: impl FnMut(C) -> Result<ComplexMatrix>,
) -> Result<Quadrature> {
    q.validate()?;
    let len = rows * cols;
    let mut accs: Vec<Accumulator> = contour.circles.iter().map(|_| Accumulator::new(len)).collect();
    let mut add_nodes = |accs: &mut [Accumulator], count: usize, offset: f64| -> Result<()> {
        for (circle, acc) in contour.circles.iter().zip(accs.iter_mut()) {
            for k in 0..count {
                let theta = 2.0 * PI * (k as f64 + offset) / count as f64;
                let w = C::from_polar(circle.radius, theta);
                let m = h(circle.center + w)?;
                for r in 0..rows {
                    for c in 0..cols {
                        acc.add(r * cols + c, m[(r, c)] * w);
                    }
                }
            }
        }
        Ok(())
    };
    let current = |accs: &[Accumulator], n: usize| {
        let mut out = ComplexMatrix::zeros(rows, cols);
        for acc in accs {
            for r in 0..rows {
                for c in 0..cols {
                    out[(r, c)] += acc.value(r * cols + c) / n as f64;
                }
            }
        }
        out
    };

    let mut n = q.nodes;
    add_nodes(&mut accs, n, 0.0)?;
    let mut prev = current(&accs, n);
    let mut history = (f64::NAN, f64::NAN);
    loop {
        if 2 * n > q.max_nodes {
            return Err(Error::Numeric(format!(
                "quadrature did not converge within {} nodes per circle; last two changes {:.3e}, {:.3e}",
                q.max_nodes, history.0, history.1
            )));
        }
        // midpoints of the current grid
        add_nodes(&mut accs, n, 0.5)?;
        n *= 2;
        let next = current(&accs, n);
        let change = next.sub(&prev).norm_fro();
        history = (history.1, change);
        let target = rel * scale(norm_scale).max(next.norm_fro());
        let stalled = change > 0.5 * history.0 && change <= STALL_FACTOR * target;
        if change <= target || stalled {
            return Ok(Quadrature {
                value: next,
                nodes: n,
                last_change: change,
                stalled: change > target,
            });
        }
        prev = next;
    }
}

/// Precomputed embeddings for pseudo-resolvent quadrature.
pub(crate) struct Embedded {
    pub m: ComplexMatrix,
    m2: ComplexMatrix,
    pub norm: f64,
}

impl Embedded {
    pub fn new(t: &QMatrix) -> Self {
        let m = t.embed();
        let m2 = m.mul(&m);
        Embedded {
            norm: m.norm2(),
            m,
            m2,
        }
    }

    fn dim(&self) -> usize {
        self.m.rows()
    }

    /// The first `cols` columns of `(z̄ − M) Q_z⁻¹`, i.e. the chart of
    /// `R_z(T; ·)` on the first `cols` chart basis vectors. One LU of
    /// `Q_z` serves all columns.
    pub fn resolvent_columns(&self, z: C, cols: usize, tol: &Tolerances) -> Result<ComplexMatrix> {
        let d = self.dim();
        let mut q = self.m2.sub(&self.m.scale(C::new(2.0 * z.re, 0.0)));
        for k in 0..d {
            q[(k, k)] += z.norm_sqr();
        }
        let lu = q.lu()?;
        if lu.condition_estimate() > tol.max_condition {
            return Err(Error::singular(
                format!("Q_z(T) at z = {z} is ill-conditioned"),
                1.0 / lu.condition_estimate(),
            ));
        }
        let mut x = ComplexMatrix::zeros(d, cols);
        let mut e = vec![C::new(0.0, 0.0); d];
        for c in 0..cols {
            e.iter_mut().for_each(|v| *v = C::new(0.0, 0.0));
            e[c] = C::new(1.0, 0.0);
            x.set_column(c, &lu.solve(&e));
        }
        let mut zbar = ComplexMatrix::identity(d).scale(z.conj());
        zbar = zbar.sub(&self.m);
        Ok(zbar.mul(&x))
    }
}

/// `f(T)` by quadrature over `contour`.
///
/// The contour must be valid for `T` and enclose its whole S-spectrum;
/// `f` must be holomorphic on the closed discs.
pub fn funcalc(
    t: &QMatrix,
    f: &IntrinsicSliceFunction,
    contour: &ContourSpec,
    q: &QuadratureConfig,
    tol: &Tolerances,
) -> Result<QMatrix> {
    let spec = s_spectrum(t, tol)?;
    contour.validate(&spec, guard(&spec, tol), true)?;
    if !admits(f, contour)? {
        return Err(Error::domain(format!("{f} is not holomorphic on the contour discs")));
    }
    Ok(funcalc_unchecked(t, f, contour, q, tol)?.0)
}

/// Keep contours this far from spectral points.
pub(crate) fn guard(spec: &SpectrumInfo, tol: &Tolerances) -> f64 {
    (10.0 * spec.tol_cluster).max(tol.near_spectrum(spec.norm))
}

/// `f(T)` with an automatically chosen contour and default quadrature.
pub fn funcalc_auto(t: &QMatrix, f: &IntrinsicSliceFunction, tol: &Tolerances) -> Result<QMatrix> {
    let spec = s_spectrum(t, tol)?;
    let contour = auto_contour(&spec, Some(f), tol)?;
    Ok(funcalc_unchecked(t, f, &contour, &QuadratureConfig::default(), tol)?.0)
}

/// The quadrature itself, without contour validation. Returns the result
/// and the quadrature report.
pub(crate) fn funcalc_unchecked(
    t: &QMatrix,
    f: &IntrinsicSliceFunction,
    contour: &ContourSpec,
    q: &QuadratureConfig,
    tol: &Tolerances,
) -> Result<(QMatrix, Quadrature)> {
    let n = t.n();
    let emb = Embedded::new(t);
    let rel = q.rel_tol.unwrap_or(tol.quad_rel);
    let quad = trapezoid(contour, q, rel, emb.norm, 2 * n, n, |z| {
        let g = f.eval_complex(z)?;
        Ok(emb.resolvent_columns(z, n, tol)?.scale(g))
    })?;
    Ok((from_left_columns(&quad.value, n), quad))
}

/// Rebuilds a quaternionic matrix from the first `n` columns of its
/// embedding.
pub(crate) fn from_left_columns(cols: &ComplexMatrix, n: usize) -> QMatrix {
    QMatrix::from_fn(n, |r, c| {
        let a = cols[(r, c)];
        let b = cols[(r + n, c)].conj();
        Quaternion::new(a.re, a.im, b.re, b.im)
    })
}

/// Riesz-Dunford integral `(1/2πi) ∫ g(z)(z − M)⁻¹ dz` of a complex
/// matrix, computed independently of the quaternionic route.
pub fn riesz_dunford_complex(
    m: &ComplexMatrix,
    g: impl Fn(C) -> Result<C>,
    contour: &ContourSpec,
    q: &QuadratureConfig,
    tol: &Tolerances,
) -> Result<ComplexMatrix> {
    let d = m.rows();
    let id = ComplexMatrix::identity(d);
    let rel = q.rel_tol.unwrap_or(tol.quad_rel);
    let quad = trapezoid(contour, q, rel, m.norm2(), d, d, |z| {
        let r = id.scale(z).sub(m).inverse()?;
        Ok(r.scale(g(z)?))
    })?;
    Ok(quad.value)
}

/// The Riesz projector onto the spectral subspace of the selected spheres
/// (indices into `spec.spheres`).
pub fn riesz_projector(
    t: &QMatrix,
    spec: &SpectrumInfo,
    which: &[usize],
    q: &QuadratureConfig,
    tol: &Tolerances,
) -> Result<QMatrix> {
    if which.is_empty() {
        return Ok(QMatrix::zeros(t.n()));
    }
    let contour = isolating_contour_for(spec, which, tol)?;
    contour.validate(spec, guard(spec, tol), false)?;
    Ok(funcalc_unchecked(t, &IntrinsicSliceFunction::constant(1.0), &contour, q, tol)?.0)
}

/// Complex-linear Riesz projectors `(E₊, E₋)` of `embed(T)` onto the
/// eigenvalues in the open upper and lower half-planes, via the
/// pseudo-resolvent route. Both are `2n×2n` complex matrices.
pub fn half_plane_projectors(
    t: &QMatrix,
    spec: &SpectrumInfo,
    q: &QuadratureConfig,
    tol: &Tolerances,
) -> Result<(ComplexMatrix, ComplexMatrix)> {
    let d = 2 * t.n();
    let nonreal: Vec<usize> = (0..spec.spheres.len())
        .filter(|&k| !spec.spheres[k].sphere.is_real())
        .collect();
    if nonreal.is_empty() {
        return Ok((ComplexMatrix::zeros(d, d), ComplexMatrix::zeros(d, d)));
    }
    let full = isolating_contour_for(spec, &nonreal, tol)?;
    let upper = ContourSpec::new(full.circles.iter().copied().filter(|c| c.center.im > 0.0).collect());
    let lower = ContourSpec::new(full.circles.iter().copied().filter(|c| c.center.im < 0.0).collect());
    let emb = Embedded::new(t);
    let rel = q.rel_tol.unwrap_or(tol.quad_rel);
    let run = |c: &ContourSpec| {
        trapezoid(c, q, rel, emb.norm, d, d, |z| emb.resolvent_columns(z, d, tol)).map(|x| x.value)
    };
    Ok((run(&upper)?, run(&lower)?))
}

/// Residuals of the calculus identities for one pair of functions.
#[derive(Clone, Debug, PartialEq)]
pub struct CalculusReport {
    /// `‖(2f − 3g)(T) − (2f(T) − 3g(T))‖`.
    pub linearity: f64,
    /// `‖(fg)(T) − f(T)g(T)‖`.
    pub product: f64,
    /// `‖f(T)T − T f(T)‖`.
    pub commutation: f64,
    /// Hausdorff distance between `f(σ_S(T))` and `σ_S(f(T))`.
    pub spectral_mapping: f64,
    /// `‖(g∘f)(T) − g(f(T))‖` when `g` admits a contour around `σ_S(f(T))`.
    pub composition: Option<f64>,
    /// `max(1, ‖T‖, ‖f(T)‖, ‖g(T)‖)` for relative comparisons.
    pub scale: f64,
}

/// Computes the [`CalculusReport`] for `f`, `g` at `T`.
pub fn verify_calculus_properties(
    t: &QMatrix,
    f: &IntrinsicSliceFunction,
    g: &IntrinsicSliceFunction,
    tol: &Tolerances,
) -> Result<CalculusReport> {
    let spec = s_spectrum(t, tol)?;
    let lin = IntrinsicSliceFunction::linear_combination(vec![(2.0, f.clone()), (-3.0, g.clone())]);
    let prod = f.product(g);
    let contour = auto_contour(&spec, Some(&lin), tol)?;
    let contour = if admits(&prod, &contour)? {
        contour
    } else {
        auto_contour(&spec, Some(&prod), tol)?
    };
    let qc = QuadratureConfig::default();
    let run = |h: &IntrinsicSliceFunction| funcalc_unchecked(t, h, &contour, &qc, tol).map(|x| x.0);
    let ft = run(f)?;
    let gt = run(g)?;
    let lin_t = run(&lin)?;
    let prod_t = run(&prod)?;
    let linearity = lin_t.sub(&ft.scale(2.0).sub(&gt.scale(3.0))).norm();
    let product = prod_t.sub(&ft.mul(&gt)).norm();
    let commutation = ft.commutator_norm(t);
    let spectral_mapping = spectral_mapping_distance(&spec, f, &ft, tol)?;
    let composition = {
        let fspec = s_spectrum(&ft, tol)?;
        match auto_contour(&fspec, Some(g), tol) {
            Ok(c2) => {
                let lhs = run(&g.compose(f))?;
                let rhs = funcalc_unchecked(&ft, g, &c2, &qc, tol)?.0;
                Some(lhs.sub(&rhs).norm())
            }
            Err(Error::Domain(_)) | Err(Error::Conditioning(_)) => None,
            Err(e) => return Err(e),
        }
    };
    let s = scale(spec.norm).max(ft.norm()).max(gt.norm());
    Ok(CalculusReport {
        linearity,
        product,
        commutation,
        spectral_mapping,
        composition,
        scale: s,
    })
}

/// The spheres `f([s])` of a spectrum, as `(Re, |Im|)` of `f(u + iv)`.
pub fn map_spheres(spec: &SpectrumInfo, f: &IntrinsicSliceFunction) -> Result<Vec<SpectralSphere>> {
    spec.spheres
        .iter()
        .map(|e| {
            let w = f.eval_complex(e.sphere.upper())?;
            Ok(SpectralSphere {
                u: w.re,
                v: w.im.abs(),
            })
        })
        .collect()
}

/// Hausdorff distance between `f(σ_S(T))` and `σ_S(F)` for a computed `F = f(T)`.
pub fn spectral_mapping_distance(
    spec: &SpectrumInfo,
    f: &IntrinsicSliceFunction,
    ft: &QMatrix,
    tol: &Tolerances,
) -> Result<f64> {
    let image = map_spheres(spec, f)?;
    let fspec = s_spectrum(ft, tol)?;
    let got: Vec<SpectralSphere> = fspec.spheres.iter().map(|e| e.sphere).collect();
    Ok(hausdorff_spheres(&image, &got))
}

/// `‖f(T) − h f(T') h⁻¹‖` where `T' = h⁻¹ T h` entrywise and `h` rotates
/// `e1` onto `i2`; computing in `T'` with the reference plane `C_{e1}`
/// amounts to computing `f(T)` with the reference plane `C_{i2}`.
pub fn unit_independence_check(
    t: &QMatrix,
    f: &IntrinsicSliceFunction,
    i2: ImaginaryUnit,
    tol: &Tolerances,
) -> Result<f64> {
    let h = i2.rotor_from_e1();
    let hinv = h.inv().expect("unit rotor");
    let direct = funcalc_auto(t, f, tol)?;
    let rotated = t.conjugate_entries(h)?;
    let back = funcalc_auto(&rotated, f, tol)?.conjugate_entries(hinv)?;
    Ok(direct.sub(&back).norm())
}
