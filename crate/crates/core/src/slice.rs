//! Intrinsic slice functions `f(x) = α(x₀, x₁) + i_x β(x₀, x₁)` with real
//! `α`, `β`, their slice derivatives, and the scalar Cauchy kernels.
//!
//! Every holomorphic family is described by its stem `g` on the reference
//! plane, `g(u + iv) = α(u, v) + i β(u, v)`, which satisfies
//! `g(z̄) = conj g(z)`. Evaluation at a quaternion `x` reads `α`, `β` off
//! `g(x₀ + i x₁)` and puts `i_x` in place of `i`.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;
use core::fmt;

use num_complex::Complex64;
#[allow(unused_imports)] // shadowed by inherent methods when std is linked
use num_traits::Float;

use crate::calculus::ContourSpec;
use crate::linalg::{complex_eigenvalues, ComplexMatrix};
use crate::quaternion::{ImaginaryUnit, Quaternion};
use crate::{Error, Result};

type C = Complex64;

/// A complex stem or one of its derivatives. Must be pure.
pub type Stem = Arc<dyn Fn(C) -> C + Send + Sync>;

/// Step of the central-difference fallback for stems without derivatives.
pub const FD_STEP: f64 = 1e-6;

/// A region of the `(u, v)` half-plane, `v ≥ 0`, centered on the real axis.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum AxialRegion {
    /// `|(u, v) − (center, 0)| < radius`.
    Disc { center: f64, radius: f64 },
    /// `inner < |(u, v) − (center, 0)| < outer`.
    Annulus { center: f64, inner: f64, outer: f64 },
}

impl AxialRegion {
    /// Distance from `(u, v)` to the complement; negative outside.
    fn depth(&self, u: f64, v: f64) -> f64 {
        match *self {
            AxialRegion::Disc { center, radius } => radius - (u - center).hypot(v),
            AxialRegion::Annulus { center, inner, outer } => {
                let r = (u - center).hypot(v);
                (outer - r).min(r - inner)
            }
        }
    }
}

/// Axially symmetric open set as a finite union of regions.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct AxialDomain {
    pub regions: Vec<AxialRegion>,
}

impl AxialDomain {
    pub fn disc(center: f64, radius: f64) -> Self {
        AxialDomain {
            regions: vec![AxialRegion::Disc { center, radius }],
        }
    }

    pub fn contains(&self, u: f64, v: f64) -> bool {
        self.depth(u, v) > 0.0
    }

    /// Distance from `(u, |v|)` to the boundary, measured inwards; a point
    /// may sit in several regions, the deepest one counts.
    pub fn depth(&self, u: f64, v: f64) -> f64 {
        self.regions
            .iter()
            .map(|r| r.depth(u, v.abs()))
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Whether the closed disc `|z − center| ≤ radius` lies inside.
    ///
    /// Checked per region, which is exact for discs and annuli sharing the
    /// disc's symmetry and conservative otherwise.
    pub fn contains_disc(&self, center: C, radius: f64) -> bool {
        self.regions.iter().any(|r| match *r {
            AxialRegion::Disc { center: c, radius: rr } => {
                (center - C::new(c, 0.0)).norm() + radius < rr
            }
            AxialRegion::Annulus { center: c, inner, outer } => {
                let d = (center - C::new(c, 0.0)).norm();
                d + radius < outer && d - radius > inner
            }
        })
    }
}

#[derive(Clone)]
enum Family {
    Poly(Vec<f64>),
    Rational { num: Vec<f64>, den: Vec<f64> },
    Exp { amp: f64, rate: f64 },
    Stem {
        stem: Stem,
        derivatives: Vec<Stem>,
        approximate: bool,
    },
    Sum(Vec<(f64, IntrinsicSliceFunction)>),
    Product(Box<IntrinsicSliceFunction>, Box<IntrinsicSliceFunction>),
    Compose {
        outer: Box<IntrinsicSliceFunction>,
        inner: Box<IntrinsicSliceFunction>,
    },
}

/// An intrinsic slice hyperholomorphic function.
#[derive(Clone)]
pub struct IntrinsicSliceFunction {
    family: Family,
    domain: Option<AxialDomain>,
}

impl fmt::Debug for IntrinsicSliceFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntrinsicSliceFunction({self})")
    }
}

impl fmt::Display for IntrinsicSliceFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn list(c: &[f64]) -> String {
            let parts: Vec<String> = c.iter().map(|x| format!("{x}")).collect();
            parts.join(",")
        }
        match &self.family {
            Family::Poly(c) => write!(f, "poly:{}", list(c)),
            Family::Rational { num, den } => write!(f, "rat:{}/{}", list(num), list(den)),
            Family::Exp { amp, rate } if *amp == 1.0 => write!(f, "exp:{rate}"),
            Family::Exp { amp, rate } => write!(f, "{amp}*exp:{rate}"),
            Family::Stem { approximate, .. } => {
                write!(f, "stem{}", if *approximate { "~" } else { "" })
            }
            Family::Sum(terms) => {
                write!(f, "(")?;
                for (k, (c, g)) in terms.iter().enumerate() {
                    if k > 0 {
                        write!(f, " + ")?;
                    }
                    write!(f, "{c}*{g}")?;
                }
                write!(f, ")")
            }
            Family::Product(a, b) => write!(f, "({a})*({b})"),
            Family::Compose { outer, inner } => write!(f, "({outer})∘({inner})"),
        }
    }
}

fn horner(c: &[f64], z: C) -> C {
    c.iter().rev().fold(C::new(0.0, 0.0), |acc, &a| acc * z + a)
}

fn poly_derivative(c: &[f64]) -> Vec<f64> {
    if c.len() <= 1 {
        return vec![0.0];
    }
    c.iter().enumerate().skip(1).map(|(k, &a)| a * k as f64).collect()
}

fn poly_mul(a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_sub(a: &[f64], b: &[f64]) -> Vec<f64> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|k| a.get(k).copied().unwrap_or(0.0) - b.get(k).copied().unwrap_or(0.0))
        .collect()
}

fn trim(mut c: Vec<f64>) -> Vec<f64> {
    while c.len() > 1 && *c.last().unwrap() == 0.0 {
        c.pop();
    }
    if c.is_empty() {
        c.push(0.0);
    }
    c
}

/// Complex roots of a real polynomial (ascending coefficients).
fn poly_roots(c: &[f64]) -> Result<Vec<C>> {
    let c = trim(c.to_vec());
    let deg = c.len() - 1;
    if deg == 0 {
        return Ok(Vec::new());
    }
    let lead = c[deg];
    let mut comp = ComplexMatrix::zeros(deg, deg);
    for k in 0..deg {
        comp[(0, k)] = C::new(-c[deg - 1 - k] / lead, 0.0);
        if k + 1 < deg {
            comp[(k + 1, k)] = C::new(1.0, 0.0);
        }
    }
    complex_eigenvalues(&comp)
}

impl IntrinsicSliceFunction {
    /// `Σ c_k s^k` with ascending real coefficients.
    pub fn poly(coeffs: &[f64]) -> Result<Self> {
        if coeffs.iter().any(|c| !c.is_finite()) {
            return Err(Error::domain("polynomial coefficients must be finite"));
        }
        Ok(Self::from_family(Family::Poly(trim(coeffs.to_vec()))))
    }

    /// `num(s)·den(s)⁻¹`; the denominator must not vanish identically.
    pub fn rational(num: &[f64], den: &[f64]) -> Result<Self> {
        if num.iter().chain(den).any(|c| !c.is_finite()) {
            return Err(Error::domain("rational coefficients must be finite"));
        }
        let den = trim(den.to_vec());
        if den.iter().all(|&c| c == 0.0) {
            return Err(Error::domain("denominator is identically zero"));
        }
        Ok(Self::from_family(Family::Rational {
            num: trim(num.to_vec()),
            den,
        }))
    }

    /// `exp(s)`.
    pub fn exp() -> Self {
        Self::exp_scaled(1.0, 1.0)
    }

    /// `amp·exp(rate·s)`.
    pub fn exp_scaled(amp: f64, rate: f64) -> Self {
        Self::from_family(Family::Exp { amp, rate })
    }

    /// The identity `s ↦ s`.
    pub fn identity() -> Self {
        Self::from_family(Family::Poly(vec![0.0, 1.0]))
    }

    pub fn constant(c: f64) -> Self {
        Self::from_family(Family::Poly(vec![c]))
    }

    /// A function given by its complex stem on the reference plane.
    ///
    /// The stem is read on the closed upper half-plane; the lower half is
    /// filled in by `g(z̄) = conj g(z)`. `derivatives[k]` must be the
    /// `(k+1)`-th complex derivative; beyond the supplied ones, slice
    /// derivatives fall back to central differences with step
    /// [`FD_STEP`] and are flagged approximate.
    ///
    /// Stems that are not real on the real axis are rejected.
    pub fn from_stem(stem: Stem, derivatives: Vec<Stem>, domain: Option<AxialDomain>) -> Result<Self> {
        let probes: Vec<f64> = match &domain {
            None => vec![-2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0],
            Some(d) => d
                .regions
                .iter()
                .flat_map(|r| match *r {
                    AxialRegion::Disc { center, radius } => {
                        vec![center, center - 0.5 * radius, center + 0.5 * radius]
                    }
                    AxialRegion::Annulus { center, inner, outer } => {
                        let m = 0.5 * (inner + outer);
                        vec![center - m, center + m]
                    }
                })
                .collect(),
        };
        for &x in &probes {
            let g = stem(C::new(x, 0.0));
            if !g.re.is_finite() || g.im.abs() > 1e-12 * (1.0 + g.re.abs()) {
                return Err(Error::domain(format!(
                    "stem is not real on the real axis: g({x}) = {g}"
                )));
            }
        }
        Ok(IntrinsicSliceFunction {
            family: Family::Stem {
                stem,
                derivatives,
                approximate: false,
            },
            domain,
        })
    }

    fn from_family(family: Family) -> Self {
        IntrinsicSliceFunction {
            family,
            domain: None,
        }
    }

    /// Restricts the function to an axially symmetric domain.
    pub fn with_domain(mut self, domain: AxialDomain) -> Self {
        self.domain = Some(domain);
        self
    }

    pub fn domain(&self) -> Option<&AxialDomain> {
        self.domain.as_ref()
    }

    /// `Σ c_k f_k`.
    pub fn linear_combination(terms: Vec<(f64, IntrinsicSliceFunction)>) -> Self {
        Self::from_family(Family::Sum(terms))
    }

    /// Pointwise product `f g`; intrinsic functions are closed under it.
    pub fn product(&self, other: &IntrinsicSliceFunction) -> Self {
        Self::from_family(Family::Product(Box::new(self.clone()), Box::new(other.clone())))
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &IntrinsicSliceFunction) -> Self {
        Self::from_family(Family::Compose {
            outer: Box::new(self.clone()),
            inner: Box::new(inner.clone()),
        })
    }

    /// Whether some derivative along the way was replaced by finite
    /// differences.
    pub fn is_approximate(&self) -> bool {
        match &self.family {
            Family::Stem { approximate, .. } => *approximate,
            Family::Sum(t) => t.iter().any(|(_, f)| f.is_approximate()),
            Family::Product(a, b) => a.is_approximate() || b.is_approximate(),
            Family::Compose { outer, inner } => outer.is_approximate() || inner.is_approximate(),
            _ => false,
        }
    }

    /// Poles of rational parts, in the reference plane. Stems report
    /// none; their singularities are described by the domain.
    pub fn poles(&self) -> Result<Vec<C>> {
        Ok(match &self.family {
            Family::Rational { den, .. } => poly_roots(den)?,
            Family::Sum(t) => {
                let mut out = Vec::new();
                for (_, f) in t {
                    out.extend(f.poles()?);
                }
                out
            }
            Family::Product(a, b) => {
                let mut out = a.poles()?;
                out.extend(b.poles()?);
                out
            }
            Family::Compose { inner, .. } => inner.poles()?,
            _ => Vec::new(),
        })
    }

    /// Whether the closed disc `|z − center| ≤ radius` avoids every known
    /// singularity and lies inside every declared domain.
    ///
    /// For compositions the outer function is checked on the image of the
    /// disc boundary only, which is what the contour integral touches.
    pub fn admits_disc(&self, center: C, radius: f64) -> Result<bool> {
        if let Some(d) = &self.domain {
            if !d.contains_disc(center, radius) {
                return Ok(false);
            }
        }
        Ok(match &self.family {
            Family::Rational { den, .. } => {
                let margin = 1e-12 * (1.0 + center.norm() + radius);
                poly_roots(den)?
                    .iter()
                    .all(|p| (p - center).norm() > radius + margin)
            }
            Family::Sum(t) => {
                for (_, f) in t {
                    if !f.admits_disc(center, radius)? {
                        return Ok(false);
                    }
                }
                true
            }
            Family::Product(a, b) => a.admits_disc(center, radius)? && b.admits_disc(center, radius)?,
            Family::Compose { outer, inner } => {
                if !inner.admits_disc(center, radius)? {
                    return Ok(false);
                }
                // the image of a small disc sits in a disc around the
                // image of its center with radius bounded on the boundary
                let fc = inner.eval_complex(center)?;
                let mut r = 0.0f64;
                for k in 0..64 {
                    let th = 2.0 * PI * k as f64 / 64.0;
                    let z = center + C::from_polar(radius, th);
                    r = r.max((inner.eval_complex(z)? - fc).norm());
                }
                outer.admits_disc(fc, 1.25 * r)?
            }
            _ => true,
        })
    }

    /// The stem `g(z)` at a point of the reference plane.
    pub fn eval_complex(&self, z: C) -> Result<C> {
        if let Some(d) = &self.domain {
            if !d.contains(z.re, z.im) {
                return Err(Error::domain(format!("{z} lies outside the domain of {self}")));
            }
        }
        let out = match &self.family {
            Family::Poly(c) => horner(c, z),
            Family::Rational { num, den } => {
                let d = horner(den, z);
                if d.norm() == 0.0 {
                    return Err(Error::singular(format!("pole of {self} at {z}"), 0.0));
                }
                horner(num, z) / d
            }
            Family::Exp { amp, rate } => (z * *rate).exp() * *amp,
            Family::Stem { stem, .. } => {
                if z.im < 0.0 {
                    stem(z.conj()).conj()
                } else {
                    stem(z)
                }
            }
            Family::Sum(t) => {
                let mut acc = C::new(0.0, 0.0);
                for (c, f) in t {
                    acc += f.eval_complex(z)? * *c;
                }
                acc
            }
            Family::Product(a, b) => a.eval_complex(z)? * b.eval_complex(z)?,
            Family::Compose { outer, inner } => outer.eval_complex(inner.eval_complex(z)?)?,
        };
        if !(out.re.is_finite() && out.im.is_finite()) {
            return Err(Error::domain(format!("{self} is not finite at {z}")));
        }
        Ok(out)
    }

    /// `(α(u, v), β(u, v))`, with `β(u, 0) = 0` exactly.
    pub fn components(&self, u: f64, v: f64) -> Result<(f64, f64)> {
        let g = self.eval_complex(C::new(u, v))?;
        Ok((g.re, if v == 0.0 { 0.0 } else { g.im }))
    }

    /// `f(x) = α(x₀, x₁) + i_x β(x₀, x₁)`.
    pub fn eval(&self, x: Quaternion) -> Result<Quaternion> {
        let (u, v, unit) = x.axially_decompose();
        let (a, b) = self.components(u, v)?;
        Ok(match unit {
            None => Quaternion::real(a),
            Some(i) => i.point(a, b),
        })
    }

    /// `½(1 − i_x i) f(x_i) + ½(1 + i_x i) f(x̄_i)` with `x_i = x₀ + i x₁`.
    pub fn eval_via_representation(&self, x: Quaternion, i: ImaginaryUnit) -> Result<Quaternion> {
        let (u, v, unit) = x.axially_decompose();
        let ix = unit.unwrap_or(i).quaternion();
        let iq = i.quaternion();
        let xi = i.point(u, v);
        let fx = self.eval(xi)?;
        let fxc = self.eval(xi.conj())?;
        let one = Quaternion::ONE;
        Ok((one - ix * iq) * fx * 0.5 + (one + ix * iq) * fxc * 0.5)
    }

    /// The slice derivative `∂_S f`.
    pub fn slice_derivative(&self) -> Result<Self> {
        let family = match &self.family {
            Family::Poly(c) => Family::Poly(poly_derivative(c)),
            Family::Rational { num, den } => Family::Rational {
                num: trim(poly_sub(
                    &poly_mul(&poly_derivative(num), den),
                    &poly_mul(num, &poly_derivative(den)),
                )),
                den: poly_mul(den, den),
            },
            Family::Exp { amp, rate } => Family::Exp {
                amp: amp * rate,
                rate: *rate,
            },
            Family::Stem {
                stem,
                derivatives,
                approximate,
            } => match derivatives.split_first() {
                Some((d, rest)) => Family::Stem {
                    stem: d.clone(),
                    derivatives: rest.to_vec(),
                    approximate: *approximate,
                },
                None => {
                    let g = stem.clone();
                    let fd: Stem = Arc::new(move |z: C| {
                        (g(z + FD_STEP) - g(z - FD_STEP)) / (2.0 * FD_STEP)
                    });
                    Family::Stem {
                        stem: fd,
                        derivatives: Vec::new(),
                        approximate: true,
                    }
                }
            },
            Family::Sum(t) => {
                let mut out = Vec::with_capacity(t.len());
                for (c, f) in t {
                    out.push((*c, f.slice_derivative()?));
                }
                Family::Sum(out)
            }
            Family::Product(a, b) => Family::Sum(vec![
                (1.0, a.slice_derivative()?.product(b)),
                (1.0, a.product(&b.slice_derivative()?)),
            ]),
            Family::Compose { outer, inner } => Family::Product(
                Box::new(outer.slice_derivative()?.compose(inner)),
                Box::new(inner.slice_derivative()?),
            ),
        };
        Ok(IntrinsicSliceFunction {
            family,
            domain: self.domain.clone(),
        })
    }

    /// `∂_Sⁿ f`.
    pub fn nth_derivative(&self, n: usize) -> Result<Self> {
        let mut f = self.clone();
        for _ in 0..n {
            f = f.slice_derivative()?;
        }
        Ok(f)
    }

    /// The same function seen as a measurable one, for spectral integrals.
    pub fn to_measurable(&self) -> MeasurableIntrinsicSliceFunction {
        let f = self.clone();
        let g = self.clone();
        MeasurableIntrinsicSliceFunction {
            alpha: Arc::new(move |u, v| f.components(u, v).map_or(f64::NAN, |c| c.0)),
            beta: Arc::new(move |u, v| g.components(u, v).map_or(f64::NAN, |c| c.1)),
        }
    }
}

/// A component function of a measurable intrinsic function.
pub type Component = Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>;

/// A bounded intrinsic slice function given by its components `α`, `β`
/// on `v ≥ 0`.
#[derive(Clone)]
pub struct MeasurableIntrinsicSliceFunction {
    alpha: Component,
    beta: Component,
}

impl fmt::Debug for MeasurableIntrinsicSliceFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("MeasurableIntrinsicSliceFunction")
    }
}

impl MeasurableIntrinsicSliceFunction {
    pub fn new(alpha: Component, beta: Component) -> Self {
        MeasurableIntrinsicSliceFunction { alpha, beta }
    }

    pub fn constant(c: f64) -> Self {
        Self::new(Arc::new(move |_, _| c), Arc::new(|_, _| 0.0))
    }

    /// `s ↦ s`.
    pub fn identity() -> Self {
        Self::new(Arc::new(|u, _| u), Arc::new(|_, v| v))
    }

    /// `s ↦ |imag s|`, real valued.
    pub fn imag_modulus() -> Self {
        Self::new(Arc::new(|_, v| v), Arc::new(|_, _| 0.0))
    }

    /// `(α(u, v), β(u, v))`.
    ///
    /// A nonzero `β` on the real axis is rejected rather than repaired,
    /// since it would make `f` depend on an arbitrary choice of unit there.
    pub fn components(&self, u: f64, v: f64) -> Result<(f64, f64)> {
        let a = (self.alpha)(u, v);
        let b = (self.beta)(u, v);
        if !a.is_finite() || !b.is_finite() {
            return Err(Error::domain(format!(
                "function is not finite (or undefined) at (u, v) = ({u}, {v})"
            )));
        }
        if v == 0.0 && b != 0.0 {
            return Err(Error::domain(format!(
                "β({u}, 0) = {b} ≠ 0 violates the intrinsic constraint"
            )));
        }
        Ok((a, b))
    }

    pub fn eval(&self, x: Quaternion) -> Result<Quaternion> {
        let (u, v, unit) = x.axially_decompose();
        let (a, b) = self.components(u, v)?;
        Ok(match unit {
            None => Quaternion::real(a),
            Some(i) => i.point(a, b),
        })
    }

    /// Pointwise product; intrinsic functions commute, so the order is
    /// immaterial.
    pub fn product(&self, other: &Self) -> Self {
        let (a1, b1, a2, b2) = (
            self.alpha.clone(),
            self.beta.clone(),
            other.alpha.clone(),
            other.beta.clone(),
        );
        let (a1b, b1b, a2b, b2b) = (a1.clone(), b1.clone(), a2.clone(), b2.clone());
        Self::new(
            Arc::new(move |u, v| a1(u, v) * a2(u, v) - b1(u, v) * b2(u, v)),
            Arc::new(move |u, v| a1b(u, v) * b2b(u, v) + b1b(u, v) * a2b(u, v)),
        )
    }
}

/// `S_L⁻¹(s, x) = (x² − 2 Re(s) x + |s|²)⁻¹ (s̄ − x)`.
pub fn cauchy_kernel_left(s: Quaternion, x: Quaternion) -> Result<Quaternion> {
    let q = kernel_denominator(s, x)?;
    Ok(q * (s.conj() - x))
}

/// `S_R⁻¹(s, x) = (s̄ − x)(x² − 2 Re(s) x + |s|²)⁻¹`.
pub fn cauchy_kernel_right(s: Quaternion, x: Quaternion) -> Result<Quaternion> {
    let q = kernel_denominator(s, x)?;
    Ok((s.conj() - x) * q)
}

fn kernel_denominator(s: Quaternion, x: Quaternion) -> Result<Quaternion> {
    let p = x * x - x * (2.0 * s.re()) + Quaternion::real(s.norm_sqr());
    let scale = 1.0 + s.norm_sqr() + x.norm_sqr();
    if p.norm() <= 1e-14 * scale {
        let d = s.sphere().dist(x.sphere());
        return Err(Error::singular(format!("{x} lies on the sphere of {s}"), d));
    }
    Ok(p.inv().expect("nonzero"))
}

/// `f(x)` from the slice Cauchy formula
/// `(1/2π) ∫_{∂(U ∩ C_i)} S_L⁻¹(s, x) ds_i f(s)`, `ds_i = −i ds`, with the
/// trapezoidal rule on every circle of `contour` carried into `C_i`.
///
/// `nodes` is the node count per circle.
pub fn cauchy_reconstruct(
    f: &IntrinsicSliceFunction,
    x: Quaternion,
    contour: &ContourSpec,
    i: ImaginaryUnit,
    nodes: usize,
) -> Result<Quaternion> {
    contour.check_symmetric()?;
    let (u, v, _) = x.axially_decompose();
    for c in &contour.circles {
        let d = (C::new(u, v) - c.center).norm().min((C::new(u, -v) - c.center).norm());
        if (d - c.radius).abs() <= 1e-12 * (1.0 + c.radius) {
            return Err(Error::singular("point on the contour", (d - c.radius).abs()));
        }
    }
    let mut acc = Quaternion::ZERO;
    for c in &contour.circles {
        let mut sum = Quaternion::ZERO;
        for k in 0..nodes {
            let w = C::from_polar(c.radius, 2.0 * PI * k as f64 / nodes as f64);
            let z = c.center + w;
            let s = i.point(z.re, z.im);
            // ds_i = (s − c) dθ on a circle
            let ds = i.point(w.re, w.im);
            let fs = f.eval(s)?;
            sum += cauchy_kernel_left(s, x)? * ds * fs;
        }
        acc += sum / nodes as f64;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::Circle;
    use crate::linalg::test_util::random_quaternion;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn q_close(a: Quaternion, b: Quaternion, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    fn cubic_minus_2s() -> IntrinsicSliceFunction {
        IntrinsicSliceFunction::poly(&[0.0, -2.0, 0.0, 1.0]).unwrap()
    }

    #[test]
    fn eval_examples() {
        let sq = IntrinsicSliceFunction::poly(&[0.0, 0.0, 1.0]).unwrap();
        assert!(q_close(sq.eval(Quaternion::E1).unwrap(), Quaternion::real(-1.0), 1e-15));
        assert_eq!(IntrinsicSliceFunction::exp().eval(Quaternion::ZERO).unwrap(), Quaternion::ONE);
        let x = Quaternion::new(1.0, 0.0, 1.0, 0.0);
        assert!(q_close(sq.eval(x).unwrap(), Quaternion::E2 * 2.0, 1e-15));
        // agrees with quaternion multiplication everywhere
        let x = Quaternion::new(0.3, -0.2, 0.9, 0.4);
        assert!(q_close(cubic_minus_2s().eval(x).unwrap(), x * x * x - x * 2.0, 1e-14));
    }

    #[test]
    fn rational_and_poles() {
        let f = IntrinsicSliceFunction::rational(&[1.0], &[1.0, 0.0, 1.0]).unwrap();
        let x = Quaternion::new(0.5, 0.0, 0.3, 0.0);
        let expect = (x * x + Quaternion::ONE).inv().unwrap();
        assert!(q_close(f.eval(x).unwrap(), expect, 1e-15));
        let mut poles = f.poles().unwrap();
        poles.sort_by(|a, b| a.im.total_cmp(&b.im));
        assert!((poles[0] - C::new(0.0, -1.0)).norm() < 1e-14);
        assert!((poles[1] - C::new(0.0, 1.0)).norm() < 1e-14);
        assert!(matches!(f.eval(Quaternion::E3), Err(Error::Singular { .. })));
        assert!(!f.admits_disc(C::new(0.0, 0.0), 2.0).unwrap());
        assert!(f.admits_disc(C::new(0.0, 0.0), 0.5).unwrap());
    }

    #[test]
    fn derivative_examples() {
        let d = IntrinsicSliceFunction::poly(&[0.0, 0.0, 0.0, 1.0])
            .unwrap()
            .slice_derivative()
            .unwrap();
        let x = Quaternion::new(0.2, 1.0, -0.3, 0.5);
        assert!(q_close(d.eval(x).unwrap(), x * x * 3.0, 1e-14));
        let c = 0.7;
        let d = IntrinsicSliceFunction::exp_scaled(1.0, c).slice_derivative().unwrap();
        let e = IntrinsicSliceFunction::exp_scaled(1.0, c).eval(x).unwrap();
        assert!(q_close(d.eval(x).unwrap(), e * c, 1e-14));

        let sin: Stem = Arc::new(|z: C| z.sin());
        let cos: Stem = Arc::new(|z: C| z.cos());
        let f = IntrinsicSliceFunction::from_stem(sin.clone(), vec![cos.clone()], None).unwrap();
        let d = f.slice_derivative().unwrap();
        assert!(!d.is_approximate());
        let z = C::new(0.4, 0.9);
        assert_eq!(d.eval_complex(z).unwrap(), cos(z));
        // second derivative falls back to differences
        let dd = d.slice_derivative().unwrap();
        assert!(dd.is_approximate());
        assert!((dd.eval_complex(z).unwrap() + sin(z)).norm() < 1e-8);
    }

    #[test]
    fn derivative_is_the_real_partial() {
        let fs = [
            IntrinsicSliceFunction::exp_scaled(2.0, -0.5),
            IntrinsicSliceFunction::rational(&[1.0, 2.0], &[3.0, 0.0, 1.0]).unwrap(),
            cubic_minus_2s().product(&IntrinsicSliceFunction::exp()),
            IntrinsicSliceFunction::exp().compose(&cubic_minus_2s()),
        ];
        let h = 1e-6;
        for f in &fs {
            let d = f.slice_derivative().unwrap();
            for x in [Quaternion::new(0.3, 0.2, -0.4, 0.1), Quaternion::real(0.7)] {
                let fd = (f.eval(x + Quaternion::real(h)).unwrap()
                    - f.eval(x - Quaternion::real(h)).unwrap())
                    / (2.0 * h);
                let exact = d.eval(x).unwrap();
                assert!(q_close(fd, exact, 1e-7 * (1.0 + exact.norm())), "{f}");
            }
        }
    }

    #[test]
    fn stems_must_be_real_on_the_real_axis() {
        let bad: Stem = Arc::new(|z: C| z + C::new(0.0, 1.0));
        assert!(matches!(
            IntrinsicSliceFunction::from_stem(bad, Vec::new(), None),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn measurable_beta_on_axis_is_rejected() {
        let f = MeasurableIntrinsicSliceFunction::new(Arc::new(|u, _| u), Arc::new(|_, _| 1.0));
        assert!(matches!(f.components(1.0, 0.0), Err(Error::Domain(_))));
        assert!(f.components(1.0, 0.5).is_ok());
        let g = IntrinsicSliceFunction::exp().to_measurable();
        let (a, b) = g.components(0.0, PI).unwrap();
        assert_abs_diff_eq!(a, -1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(b, 0.0, epsilon = 1e-15);
    }

    #[test]
    fn kernel_examples() {
        let k = cauchy_kernel_left(Quaternion::real(2.0), Quaternion::real(1.0)).unwrap();
        assert_eq!(k, Quaternion::ONE);
        // s = e1, x = e2: x² − 0 + 1 = 0 since e2 lies on the sphere of e1
        assert!(matches!(
            cauchy_kernel_left(Quaternion::E1, Quaternion::E2),
            Err(Error::Singular { .. })
        ));
        // s = 2e1, x = e2: (−1 + 4)⁻¹ (−2e1 − e2)
        let k = cauchy_kernel_left(Quaternion::E1 * 2.0, Quaternion::E2).unwrap();
        assert!(q_close(k, (Quaternion::E1 * -2.0 - Quaternion::E2) / 3.0, 1e-15));
        let s = Quaternion::new(1.0, 2.0, 0.0, 0.0);
        let x = Quaternion::new(-0.5, 0.3, 0.0, 0.0);
        let k = cauchy_kernel_left(s, x).unwrap();
        assert!(q_close(k, (s - x).inv().unwrap(), 1e-15));
    }

    fn unit_circle() -> ContourSpec {
        ContourSpec::new(vec![Circle::new(C::new(0.0, 0.0), 1.0).unwrap()])
    }

    #[test]
    fn reconstruct_examples() {
        let one = IntrinsicSliceFunction::constant(1.0);
        let x = Quaternion::new(0.1, 0.2, -0.3, 0.1);
        let r = cauchy_reconstruct(&one, x, &unit_circle(), ImaginaryUnit::E1, 64).unwrap();
        assert!(q_close(r, Quaternion::ONE, 1e-14));
        let id = IntrinsicSliceFunction::identity();
        let r = cauchy_reconstruct(&id, Quaternion::real(0.5), &unit_circle(), ImaginaryUnit::E2, 64)
            .unwrap();
        assert!(q_close(r, Quaternion::real(0.5), 1e-14));
        let x = Quaternion::E1 * 0.5;
        let exp = IntrinsicSliceFunction::exp();
        let r = cauchy_reconstruct(&exp, x, &unit_circle(), ImaginaryUnit::E3, 64).unwrap();
        assert!(q_close(r, exp.eval(x).unwrap(), 1e-13));
    }

    #[test]
    fn reconstruct_error_decays_with_nodes() {
        let f = IntrinsicSliceFunction::exp().compose(&cubic_minus_2s());
        let x = Quaternion::new(0.3, 0.1, 0.5, -0.2);
        let exact = f.eval(x).unwrap();
        let i = ImaginaryUnit::new(1.0, 1.0, 0.0).unwrap();
        let circle = ContourSpec::new(vec![Circle::new(C::new(0.0, 0.0), 1.5).unwrap()]);
        let mut prev = f64::INFINITY;
        for nodes in [16usize, 32, 64, 128, 256] {
            let err = (cauchy_reconstruct(&f, x, &circle, i, nodes).unwrap() - exact).norm();
            if prev > 1e-11 {
                assert!(err <= prev, "{nodes}: {err} vs {prev}");
            }
            prev = err;
        }
        assert!(prev < 1e-12 * exact.norm().max(1.0));
    }

    #[test]
    fn kernel_on_contour_is_singular() {
        let r = cauchy_reconstruct(
            &IntrinsicSliceFunction::exp(),
            Quaternion::E2,
            &unit_circle(),
            ImaginaryUnit::E1,
            16,
        );
        assert!(matches!(r, Err(Error::Singular { .. })));
    }

    fn sample_functions() -> Vec<IntrinsicSliceFunction> {
        vec![
            IntrinsicSliceFunction::exp(),
            IntrinsicSliceFunction::poly(&[0.0, 0.0, 1.0]).unwrap(),
            cubic_minus_2s(),
            IntrinsicSliceFunction::rational(&[1.0, -1.0], &[4.0, 0.0, 1.0]).unwrap(),
            cubic_minus_2s().product(&IntrinsicSliceFunction::exp_scaled(0.5, -1.0)),
        ]
    }

    proptest! {
        #[test]
        fn intrinsic_symmetry(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let x = random_quaternion(&mut rng) * 1.5;
            for f in sample_functions() {
                let fx = f.eval(x).unwrap();
                let fxc = f.eval(x.conj()).unwrap();
                prop_assert!((fxc - fx.conj()).norm() <= 1e-12 * (1.0 + fx.norm()));
                // values stay in the slice of x
                let (_, _, unit) = x.axially_decompose();
                if let Some(i) = unit {
                    let im = fx.imag();
                    let along = im.x * i.ix + im.y * i.iy + im.z * i.iz;
                    prop_assert!((im - i.quaternion() * along).norm() <= 1e-12 * (1.0 + fx.norm()));
                }
            }
        }

        #[test]
        fn representation_formula(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let x = random_quaternion(&mut rng) * 1.5;
            let q = random_quaternion(&mut rng);
            let i = ImaginaryUnit::new(q.x, q.y, q.z).unwrap();
            for f in sample_functions() {
                let a = f.eval(x).unwrap();
                let b = f.eval_via_representation(x, i).unwrap();
                prop_assert!((a - b).norm() <= 1e-10 * (1.0 + a.norm()));
            }
        }

        #[test]
        fn kernels_are_related(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let s = random_quaternion(&mut rng) * 2.0;
            let x = random_quaternion(&mut rng) * 2.0;
            prop_assume!(s.sphere().dist(x.sphere()) > 1e-3);
            let r = cauchy_kernel_right(s, x).unwrap();
            let l = cauchy_kernel_left(x, s).unwrap();
            prop_assert!((r + l).norm() <= 1e-12 * (1.0 + r.norm()));
        }

        #[test]
        fn products_of_measurable_functions(u in -2.0f64..2.0, v in 0.0f64..2.0) {
            let f = IntrinsicSliceFunction::exp();
            let g = cubic_minus_2s();
            let x = Quaternion::new(u, 0.0, v, 0.0);
            let p = f.to_measurable().product(&g.to_measurable()).eval(x).unwrap();
            let direct = f.eval(x).unwrap() * g.eval(x).unwrap();
            prop_assert!((p - direct).norm() <= 1e-12 * (1.0 + direct.norm()));
        }
    }
}
