//! Quaternion arithmetic, the sphere of imaginary units and axially
//! symmetric geometry.
//!
//! A quaternion `q = w + x e1 + y e2 + z e3` is stored by its four real
//! components. The reference complex plane of the crate is
//! `C_{e1} = {u + v e1}`; [`Quaternion::from_complex`] and
//! [`Quaternion::to_complex`] move between it and [`Complex64`].

use core::fmt;
use core::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_complex::Complex64;
#[allow(unused_imports)] // shadowed by inherent methods when std is linked
use num_traits::Float;

use crate::{Error, Result};

/// An element of the skew field `H`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Quaternion {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Quaternion {
    pub const ZERO: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 0.0);
    pub const ONE: Quaternion = Quaternion::new(1.0, 0.0, 0.0, 0.0);
    pub const E1: Quaternion = Quaternion::new(0.0, 1.0, 0.0, 0.0);
    pub const E2: Quaternion = Quaternion::new(0.0, 0.0, 1.0, 0.0);
    pub const E3: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 1.0);

    pub const fn new(w: f64, x: f64, y: f64, z: f64) -> Self {
        Quaternion { w, x, y, z }
    }

    pub const fn real(w: f64) -> Self {
        Quaternion::new(w, 0.0, 0.0, 0.0)
    }

    /// Embeds `a + b i` as `a + b e1`.
    pub fn from_complex(c: Complex64) -> Self {
        Quaternion::new(c.re, c.im, 0.0, 0.0)
    }

    /// The `(w, x)` part read as a complex number; exact for elements of `C_{e1}`.
    pub fn to_complex(self) -> Complex64 {
        Complex64::new(self.w, self.x)
    }

    pub fn to_array(self) -> [f64; 4] {
        [self.w, self.x, self.y, self.z]
    }

    pub fn from_array(a: [f64; 4]) -> Self {
        Quaternion::new(a[0], a[1], a[2], a[3])
    }

    pub fn re(self) -> f64 {
        self.w
    }

    /// The imaginary part `x e1 + y e2 + z e3`.
    pub fn imag(self) -> Quaternion {
        Quaternion::new(0.0, self.x, self.y, self.z)
    }

    pub fn imag_norm(self) -> f64 {
        (self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }

    pub fn conj(self) -> Self {
        Quaternion::new(self.w, -self.x, -self.y, -self.z)
    }

    pub fn norm_sqr(self) -> f64 {
        self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z
    }

    pub fn norm(self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn is_real(self) -> bool {
        self.x == 0.0 && self.y == 0.0 && self.z == 0.0
    }

    pub fn is_finite(self) -> bool {
        self.w.is_finite() && self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(self) -> Option<Self> {
        let n2 = self.norm_sqr();
        if n2 == 0.0 {
            None
        } else {
            Some(self.conj() / n2)
        }
    }

    /// Splits `q = u + i v` with `v = |imag q| ≥ 0`.
    ///
    /// The unit is `None` exactly when `q` is real; any unit would do
    /// there, and the choice is left to the caller.
    pub fn axially_decompose(self) -> (f64, f64, Option<ImaginaryUnit>) {
        let v = self.imag_norm();
        if v == 0.0 {
            (self.w, 0.0, None)
        } else {
            let unit = ImaginaryUnit {
                ix: self.x / v,
                iy: self.y / v,
                iz: self.z / v,
            };
            (self.w, v, Some(unit))
        }
    }

    /// The spectral sphere `[q]` through this quaternion.
    pub fn sphere(self) -> SpectralSphere {
        SpectralSphere {
            u: self.w,
            v: self.imag_norm(),
        }
    }

    /// Whether `a` and `b` lie on a common sphere `[s]` up to `tol`.
    pub fn same_sphere(a: Quaternion, b: Quaternion, tol: f64) -> bool {
        (a.w - b.w).abs() <= tol && (a.imag_norm() - b.imag_norm()).abs() <= tol
    }

    /// `h⁻¹ s h`; the result stays on the sphere of `s`.
    pub fn conjugate_by(self, h: Quaternion) -> Result<Quaternion> {
        let h_inv = h
            .inv()
            .ok_or_else(|| Error::domain("conjugation by the zero quaternion"))?;
        Ok(h_inv * self * h)
    }

    pub fn dist(self, other: Quaternion) -> f64 {
        (self - other).norm()
    }
}

impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {:+}e1 {:+}e2 {:+}e3",
            self.w, self.x, self.y, self.z
        )
    }
}

impl Add for Quaternion {
    type Output = Quaternion;
    fn add(self, o: Quaternion) -> Quaternion {
        Quaternion::new(self.w + o.w, self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for Quaternion {
    type Output = Quaternion;
    fn sub(self, o: Quaternion) -> Quaternion {
        Quaternion::new(self.w - o.w, self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Neg for Quaternion {
    type Output = Quaternion;
    fn neg(self) -> Quaternion {
        Quaternion::new(-self.w, -self.x, -self.y, -self.z)
    }
}

/// Hamilton product.
impl Mul for Quaternion {
    type Output = Quaternion;
    fn mul(self, o: Quaternion) -> Quaternion {
        let (a1, b1, c1, d1) = (self.w, self.x, self.y, self.z);
        let (a2, b2, c2, d2) = (o.w, o.x, o.y, o.z);
        Quaternion::new(
            a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        )
    }
}

impl Mul<f64> for Quaternion {
    type Output = Quaternion;
    fn mul(self, s: f64) -> Quaternion {
        Quaternion::new(self.w * s, self.x * s, self.y * s, self.z * s)
    }
}

impl Mul<Quaternion> for f64 {
    type Output = Quaternion;
    fn mul(self, q: Quaternion) -> Quaternion {
        q * self
    }
}

impl Div<f64> for Quaternion {
    type Output = Quaternion;
    fn div(self, s: f64) -> Quaternion {
        Quaternion::new(self.w / s, self.x / s, self.y / s, self.z / s)
    }
}

impl AddAssign for Quaternion {
    fn add_assign(&mut self, o: Quaternion) {
        *self = *self + o;
    }
}

impl SubAssign for Quaternion {
    fn sub_assign(&mut self, o: Quaternion) {
        *self = *self - o;
    }
}

impl MulAssign for Quaternion {
    fn mul_assign(&mut self, o: Quaternion) {
        *self = *self * o;
    }
}

impl From<f64> for Quaternion {
    fn from(w: f64) -> Self {
        Quaternion::real(w)
    }
}

/// A point of the sphere `S = {q : Re q = 0, |q| = 1}`; every such
/// quaternion squares to `-1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ImaginaryUnit {
    pub ix: f64,
    pub iy: f64,
    pub iz: f64,
}

impl ImaginaryUnit {
    pub const E1: ImaginaryUnit = ImaginaryUnit {
        ix: 1.0,
        iy: 0.0,
        iz: 0.0,
    };
    pub const E2: ImaginaryUnit = ImaginaryUnit {
        ix: 0.0,
        iy: 1.0,
        iz: 0.0,
    };
    pub const E3: ImaginaryUnit = ImaginaryUnit {
        ix: 0.0,
        iy: 0.0,
        iz: 1.0,
    };

    /// Normalizes `(ix, iy, iz)`; fails for the zero vector.
    pub fn new(ix: f64, iy: f64, iz: f64) -> Result<Self> {
        let n = (ix * ix + iy * iy + iz * iz).sqrt();
        if !(n > 0.0) || !n.is_finite() {
            return Err(Error::domain("imaginary unit from a zero or non-finite vector"));
        }
        Ok(ImaginaryUnit {
            ix: ix / n,
            iy: iy / n,
            iz: iz / n,
        })
    }

    pub fn quaternion(self) -> Quaternion {
        Quaternion::new(0.0, self.ix, self.iy, self.iz)
    }

    /// `u + self·v`.
    pub fn point(self, u: f64, v: f64) -> Quaternion {
        Quaternion::new(u, self.ix * v, self.iy * v, self.iz * v)
    }

    /// Some unit orthogonal to `self`.
    pub fn orthogonal(self) -> ImaginaryUnit {
        // cross with the coordinate axis least aligned with self
        let (ax, ay, az) = (self.ix.abs(), self.iy.abs(), self.iz.abs());
        let e = if ax <= ay && ax <= az {
            (1.0, 0.0, 0.0)
        } else if ay <= az {
            (0.0, 1.0, 0.0)
        } else {
            (0.0, 0.0, 1.0)
        };
        let c = (
            self.iy * e.2 - self.iz * e.1,
            self.iz * e.0 - self.ix * e.2,
            self.ix * e.1 - self.iy * e.0,
        );
        ImaginaryUnit::new(c.0, c.1, c.2).expect("cross product of a unit with a transverse axis")
    }

    /// A unit quaternion `h` with `h e1 h⁻¹ = self`.
    pub fn rotor_from_e1(self) -> Quaternion {
        let q = Quaternion::ONE - self.quaternion() * Quaternion::E1;
        let n = q.norm();
        if n < 1e-12 {
            // self = -e1
            Quaternion::E2
        } else {
            q / n
        }
    }
}

/// The 2-sphere `[s] = {u + i v : i ∈ S}`; a single real point when `v = 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpectralSphere {
    pub u: f64,
    pub v: f64,
}

impl SpectralSphere {
    pub fn new(u: f64, v: f64) -> Result<Self> {
        if !(v >= 0.0) || !u.is_finite() || !v.is_finite() {
            return Err(Error::domain("spectral sphere needs finite u and v ≥ 0"));
        }
        Ok(SpectralSphere { u, v })
    }

    pub fn is_real(self) -> bool {
        self.v == 0.0
    }

    /// The trace point `u + i v` in the upper half of the reference plane.
    pub fn upper(self) -> Complex64 {
        Complex64::new(self.u, self.v)
    }

    /// The representative `u + v e1`.
    pub fn representative(self) -> Quaternion {
        Quaternion::new(self.u, self.v, 0.0, 0.0)
    }

    /// Euclidean distance in `(u, v)` coordinates.
    pub fn dist(self, other: SpectralSphere) -> f64 {
        (self.u - other.u).hypot(self.v - other.v)
    }

    pub fn contains(self, q: Quaternion, tol: f64) -> bool {
        Quaternion::same_sphere(self.representative(), q, tol)
    }
}
