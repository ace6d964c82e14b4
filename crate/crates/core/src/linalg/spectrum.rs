//! S-spectrum of a quaternionic matrix from the eigenvalues of its
//! complex embedding.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)] // shadowed by inherent methods when std is linked
use num_traits::Float;

use super::{complex_eigenvalues, QMatrix};
use crate::quaternion::SpectralSphere;
use crate::{Error, Result, Tolerances};

type C = Complex64;

/// One sphere of the S-spectrum.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SphereEntry {
    pub sphere: SpectralSphere,
    /// Spherical multiplicity; the embedding sees each sphere `2·mult` times.
    pub mult: usize,
}

/// The S-spectrum as a finite list of spheres.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectrumInfo {
    /// Sorted by `(u, v)`.
    pub spheres: Vec<SphereEntry>,
    /// Eigenvalues of the embedding after snapping to the real axis.
    pub eigenvalues: Vec<C>,
    /// `‖T‖` of the operator the spectrum was computed for.
    pub norm: f64,
    /// Clustering tolerance that was used.
    pub tol_cluster: f64,
}

impl SpectrumInfo {
    pub fn total_multiplicity(&self) -> usize {
        self.spheres.iter().map(|s| s.mult).sum()
    }

    /// Trace points `u ± iv` of every sphere in the reference plane
    /// (one point for real spheres).
    pub fn trace_points(&self) -> Vec<C> {
        let mut out = Vec::new();
        for e in &self.spheres {
            out.push(e.sphere.upper());
            if !e.sphere.is_real() {
                out.push(e.sphere.upper().conj());
            }
        }
        out
    }

    /// Smallest distance between distinct trace points; infinite when
    /// there is only one.
    pub fn separation(&self) -> f64 {
        let pts = self.trace_points();
        let mut best = f64::INFINITY;
        for (k, a) in pts.iter().enumerate() {
            for b in &pts[k + 1..] {
                best = best.min((a - b).norm());
            }
        }
        best
    }

    /// Distance from `(u, v)` to the nearest sphere, in `(u, v)` coordinates.
    pub fn distance_to(&self, u: f64, v: f64) -> f64 {
        let p = SpectralSphere { u, v: v.abs() };
        self.spheres
            .iter()
            .map(|e| e.sphere.dist(p))
            .fold(f64::INFINITY, f64::min)
    }
}

/// The S-spectrum `σ_S(T)`.
///
/// Eigenvalues of `embed(T)` with `|Im λ| < tol_cluster` are snapped to the
/// real axis; the points `(Re λ, |Im λ|)` are then clustered by single
/// linkage at `tol_cluster = cluster_rel·max(1, ‖T‖)`. Each cluster must be
/// closed under conjugation (as many eigenvalues above as below the axis
/// and an even number on it), otherwise [`Error::Consistency`] is returned.
pub fn s_spectrum(t: &QMatrix, tol: &Tolerances) -> Result<SpectrumInfo> {
    if !t.is_finite() {
        return Err(Error::domain("S-spectrum of a matrix with non-finite entries"));
    }
    let norm = t.norm();
    let tc = tol.cluster(norm);
    let mut eig = complex_eigenvalues(&t.embed())?;
    for z in eig.iter_mut() {
        if z.im.abs() < tc {
            z.im = 0.0;
        }
    }
    let pts: Vec<(f64, f64)> = eig.iter().map(|z| (z.re, z.im.abs())).collect();
    let labels = single_linkage(&pts, tc);
    let groups = labels.iter().copied().max().map_or(0, |m| m + 1);

    let mut spheres = Vec::with_capacity(groups);
    for g in 0..groups {
        let members: Vec<C> = eig
            .iter()
            .zip(&labels)
            .filter(|(_, &l)| l == g)
            .map(|(z, _)| *z)
            .collect();
        let above = members.iter().filter(|z| z.im > 0.0).count();
        let below = members.iter().filter(|z| z.im < 0.0).count();
        let on = members.len() - above - below;
        if above != below || on % 2 != 0 {
            return Err(Error::Consistency(format!(
                "eigenvalues of the embedding near ({:.6e}, {:.6e}) are not closed under conjugation: {above} above, {below} below, {on} on the real axis",
                members[0].re,
                members[0].im.abs()
            )));
        }
        let k = members.len() as f64;
        let u = members.iter().map(|z| z.re).sum::<f64>() / k;
        let v = if on > 0 {
            0.0
        } else {
            members.iter().map(|z| z.im.abs()).sum::<f64>() / k
        };
        spheres.push(SphereEntry {
            sphere: SpectralSphere { u, v },
            mult: members.len() / 2,
        });
    }
    spheres.sort_by(|a, b| {
        a.sphere
            .u
            .total_cmp(&b.sphere.u)
            .then(a.sphere.v.total_cmp(&b.sphere.v))
    });
    Ok(SpectrumInfo {
        spheres,
        eigenvalues: eig,
        norm,
        tol_cluster: tc,
    })
}

/// Connected components of the graph linking points closer than `tol`.
fn single_linkage(pts: &[(f64, f64)], tol: f64) -> Vec<usize> {
    let n = pts.len();
    let mut label = vec![usize::MAX; n];
    let mut next = 0;
    for start in 0..n {
        if label[start] != usize::MAX {
            continue;
        }
        label[start] = next;
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            for j in 0..n {
                if label[j] == usize::MAX
                    && (pts[i].0 - pts[j].0).hypot(pts[i].1 - pts[j].1) <= tol
                {
                    label[j] = next;
                    stack.push(j);
                }
            }
        }
        next += 1;
    }
    label
}

/// Hausdorff distance between two finite subsets of `C`; zero for two
/// empty sets, infinite when exactly one is empty.
pub fn hausdorff(a: &[C], b: &[C]) -> f64 {
    if a.is_empty() && b.is_empty() {
        return 0.0;
    }
    if a.is_empty() || b.is_empty() {
        return f64::INFINITY;
    }
    let one = |x: &[C], y: &[C]| {
        x.iter()
            .map(|p| y.iter().map(|q| (p - q).norm()).fold(f64::INFINITY, f64::min))
            .fold(0.0, f64::max)
    };
    one(a, b).max(one(b, a))
}

/// Hausdorff distance between two sphere sets in `(u, v)` coordinates.
pub fn hausdorff_spheres(a: &[SpectralSphere], b: &[SpectralSphere]) -> f64 {
    let to_c = |s: &[SpectralSphere]| s.iter().map(|x| x.upper()).collect::<Vec<_>>();
    hausdorff(&to_c(a), &to_c(b))
}
