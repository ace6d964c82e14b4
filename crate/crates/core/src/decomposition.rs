//! Spectral systems of quaternionic matrices and the canonical
//! decomposition `T = S + N`.
//!
//! `E` comes from Riesz projectors, one per sphere of `σ_S(T)`. `J` comes
//! from the complex-linear Riesz projectors `E₊`, `E₋` of the embedding onto
//! the eigenvalues in the upper and lower half-planes: `embed(J) =
//! i(E₊ − E₋)`, which vanishes on `ran E(R)`. Then `S = ∫ s dE_J` and
//! `N = T − S`.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)] // shadowed by inherent methods when std is linked
use num_traits::Float;

use crate::calculus::{guard, half_plane_projectors, isolating_contour_for, riesz_dunford_complex, riesz_projector};
use crate::calculus::QuadratureConfig;
use crate::linalg::{hausdorff_spheres, s_spectrum, ComplexMatrix, QMatrix, QVector, SpectrumInfo};
use crate::quaternion::{Quaternion, SpectralSphere};
use crate::slice::IntrinsicSliceFunction;
use crate::spectral::{AxSet, ImaginaryOperator, SpectralMeasure, SpectralSystem, SystemResiduals};
use crate::tol::scale;
use crate::{Error, Result, Tolerances};

type C = Complex64;

/// Residuals recorded while building a [`SpectralDecomposition`].
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct DecompositionResiduals {
    pub system: SystemResiduals,
    /// Worst relative commutator among `T, S, N, J, E_k`.
    pub commutation: f64,
    /// `‖S − ∫ s dE_J‖`.
    pub scalar_integral: f64,
    /// `‖N^{type_m + 1}‖`.
    pub nilpotency: f64,
    /// Hausdorff distance between the sphere sets of `σ_S(T)` and `σ_S(S)`.
    pub spectrum: f64,
    /// How far `i(E₊ − E₋)` was from a quaternionic matrix.
    pub j_deviation: f64,
    /// `K = max_Δ ‖E(Δ)‖`, reported only.
    pub k_bound: f64,
    /// Probe points `(s₀, s₁ > 0)` at which `s₀ − s₁J − T` was inverted on
    /// `ran E(H ∖ R)`; a sampled check, not a certificate.
    pub probes: usize,
    /// Probes where the inverse failed or was ill-conditioned.
    pub probe_failures: usize,
    /// Worst `‖A X − I‖` over the probes.
    pub probe_residual: f64,
}

impl DecompositionResiduals {
    /// Worst structural residual, excluding the sampled probes and `K`.
    pub fn worst(&self) -> f64 {
        self.system
            .worst()
            .max(self.commutation)
            .max(self.scalar_integral)
            .max(self.nilpotency)
            .max(self.spectrum)
    }
}

/// `T = S + N` with its spectral system.
#[derive(Clone, Debug)]
pub struct SpectralDecomposition {
    pub system: SpectralSystem,
    /// The scalar part `S = ∫ s dE_J`.
    pub scalar: QMatrix,
    /// The radical part `N = T − S`, nilpotent.
    pub radical: QMatrix,
    /// Least `m` with `N^{m+1} = 0`.
    pub type_m: usize,
    pub residuals: DecompositionResiduals,
    /// The S-spectrum the decomposition was built from.
    pub spectrum: SpectrumInfo,
}

impl SpectralDecomposition {
    pub fn e(&self) -> &SpectralMeasure {
        &self.system.e
    }

    pub fn j(&self) -> &QMatrix {
        self.system.j.matrix()
    }

    /// `S + N`.
    pub fn operator(&self) -> QMatrix {
        self.scalar.add(&self.radical)
    }
}

/// The spectral decomposition of `T`.
///
/// Fails with [`Error::Conditioning`] when two spectral points are too close
/// to isolate.
pub fn spectral_decomposition(t: &QMatrix, tol: &Tolerances) -> Result<SpectralDecomposition> {
    let spec = s_spectrum(t, tol)?;
    let n = t.n();
    let q = QuadratureConfig::default();
    let mut support = Vec::with_capacity(spec.spheres.len());
    for k in 0..spec.spheres.len() {
        support.push((spec.spheres[k].sphere, riesz_projector(t, &spec, &[k], &q, tol)?));
    }
    let e = SpectralMeasure::new_unchecked(n, support)?;
    let (e_plus, e_minus) = half_plane_projectors(t, &spec, &q, tol)?;
    let jm = e_plus.sub(&e_minus).scale(C::new(0.0, 1.0));
    let (j, j_deviation) = QMatrix::de_embed(&jm)?;
    let system = SpectralSystem {
        e,
        j: ImaginaryOperator::new_unchecked(j),
    };
    let scalar = system.integral_of(&IntrinsicSliceFunction::identity())?;
    let radical = t.sub(&scalar);
    assemble(t, system, scalar, radical, spec, j_deviation, tol)
}

fn assemble(
    t: &QMatrix,
    system: SpectralSystem,
    scalar: QMatrix,
    radical: QMatrix,
    spectrum: SpectrumInfo,
    j_deviation: f64,
    tol: &Tolerances,
) -> Result<SpectralDecomposition> {
    let type_m = nilpotency_index(&radical, t.norm(), tol)?;
    let nilpotency = radical.pow(type_m as u32 + 1).norm();

    let jmat = system.j.matrix().clone();
    let mut ops: Vec<&QMatrix> = vec![t, &scalar, &radical, &jmat];
    ops.extend(system.e.support().iter().map(|(_, p)| p));
    let mut commutation: f64 = 0.0;
    for (a, x) in ops.iter().enumerate() {
        for y in &ops[a + 1..] {
            commutation = commutation.max(x.commutator_norm(y) / (scale(x.norm()) * scale(y.norm())));
        }
    }
    let integral = system.integral_of(&IntrinsicSliceFunction::identity())?;
    let scalar_integral = scalar.sub(&integral).norm();
    let s_spec = s_spectrum(&scalar, tol)?;
    let spheres = |s: &SpectrumInfo| s.spheres.iter().map(|e| e.sphere).collect::<Vec<_>>();
    let spectrum_dist = hausdorff_spheres(&spheres(&spectrum), &spheres(&s_spec));

    let mut residuals = DecompositionResiduals {
        system: system.residuals(),
        commutation,
        scalar_integral,
        nilpotency,
        spectrum: spectrum_dist,
        j_deviation,
        k_bound: system.e.uniform_bound(),
        ..Default::default()
    };
    probe_invertibility(t, &system, &spectrum, tol, &mut residuals);
    Ok(SpectralDecomposition {
        system,
        scalar,
        radical,
        type_m,
        residuals,
        spectrum,
    })
}

/// Least `k` with `‖N^{k+1}‖ ≤ nilpotent_rel·max(1, ‖T‖)^{k+1}`.
fn nilpotency_index(radical: &QMatrix, t_norm: f64, tol: &Tolerances) -> Result<usize> {
    let n = radical.n();
    let s = scale(t_norm);
    let mut power = radical.clone();
    for k in 0..n.max(1) {
        if power.norm() <= tol.nilpotent_rel * s.powi(k as i32 + 1) {
            return Ok(k);
        }
        power = power.mul(radical);
    }
    Err(Error::Numeric(format!(
        "radical part is not nilpotent: ‖N^{n}‖ = {:.3e}",
        radical.pow(n as u32).norm()
    )))
}

/// Deterministic probe points spread over the spectral box.
fn probe_points(spec: &SpectrumInfo, count: usize) -> Vec<(f64, f64)> {
    let (lo, hi) = spec
        .spheres
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), e| (a.min(e.sphere.u), b.max(e.sphere.u)));
    let (lo, hi) = if lo.is_finite() { (lo, hi) } else { (0.0, 0.0) };
    let s = scale(spec.norm);
    let frac = |x: f64| x - x.floor();
    (0..count)
        .map(|k| {
            let k = k as f64 + 1.0;
            let s0 = lo - 0.5 * s + (hi - lo + s) * frac(k * 0.618_033_988_749_895);
            let s1 = s * (0.01 + 2.0 * frac(k * core::f64::consts::SQRT_2));
            (s0, s1)
        })
        .collect()
}

/// Number of sampled probes for the invertibility check.
pub const PROBES: usize = 20;

fn probe_invertibility(
    t: &QMatrix,
    system: &SpectralSystem,
    spec: &SpectrumInfo,
    tol: &Tolerances,
    out: &mut DecompositionResiduals,
) {
    let p = system.e.eval(&AxSet::nonreal()).embed();
    let d = p.rows();
    let id = ComplexMatrix::identity(d);
    let complement = id.sub(&p);
    let m = t.embed();
    let jm = system.j.matrix().embed();
    for (s0, s1) in probe_points(spec, PROBES) {
        let a = id
            .scale(C::new(s0, 0.0))
            .sub(&jm.scale(C::new(s1, 0.0)))
            .sub(&m);
        let restricted = a.mul(&p).add(&complement);
        out.probes += 1;
        match restricted.lu() {
            Ok(lu) if lu.condition_estimate() <= tol.max_condition => {
                let x = lu.inverse();
                let r = restricted.mul(&x).sub(&id).norm2();
                out.probe_residual = out.probe_residual.max(r);
                if !(r <= 1e-6) {
                    out.probe_failures += 1;
                }
            }
            _ => out.probe_failures += 1,
        }
    }
}

/// `Σ_{k=0}^{type_m} N^k/k! ∫ ∂_S^k f dE_J`.
///
/// Needs exact slice derivatives; finite-difference ones are refused.
pub fn taylor_funcalc(dec: &SpectralDecomposition, f: &IntrinsicSliceFunction) -> Result<QMatrix> {
    let n = dec.scalar.n();
    let mut acc = QMatrix::zeros(n);
    let mut npow = QMatrix::identity(n);
    let mut fact = 1.0;
    let mut deriv = f.clone();
    for k in 0..=dec.type_m {
        if k > 0 {
            deriv = deriv.slice_derivative()?;
            npow = npow.mul(&dec.radical);
            fact *= k as f64;
        }
        if deriv.is_approximate() {
            return Err(Error::Unsupported(format!(
                "derivative of order {k} of {f} is only available by finite differences"
            )));
        }
        acc = acc.add(&npow.mul(&dec.system.integral_of(&deriv)?).scale(1.0 / fact));
    }
    Ok(acc)
}

/// Spheres merged by a pushforward.
#[derive(Clone, Debug, PartialEq)]
pub struct Merge {
    /// Indices into the original support.
    pub from: Vec<usize>,
    pub into: SpectralSphere,
}

/// Outcome of [`pushforward_decomposition`].
#[derive(Clone, Debug)]
pub struct Pushforward {
    pub decomposition: SpectralDecomposition,
    pub merges: Vec<Merge>,
}

/// The decomposition of `f(T)` read off the decomposition of `T`:
/// `Ẽ(Δ) = E(f⁻¹(Δ))`, `J̃ = Σ sign β(u_k, v_k) J E_k` over spheres with a
/// nonreal image, `S̃ = f(S) = ∫ f dE_J` and `Ñ = f(T) − S̃`, with `f(T)`
/// from [`taylor_funcalc`].
pub fn pushforward_decomposition(
    dec: &SpectralDecomposition,
    f: &IntrinsicSliceFunction,
    tol: &Tolerances,
) -> Result<Pushforward> {
    let ft = taylor_funcalc(dec, f)?;
    let tc = tol.cluster(ft.norm());
    let support = dec.system.e.support();
    let n = ft.n();
    let mut images = Vec::with_capacity(support.len());
    for (s, _) in support {
        let w = f.eval_complex(s.upper())?;
        let v = if s.is_real() || w.im.abs() < tc { 0.0 } else { w.im.abs() };
        let sign = if v == 0.0 { 0.0 } else { w.im.signum() };
        images.push((SpectralSphere { u: w.re, v }, sign));
    }

    // group images by single linkage at the clustering tolerance
    let mut label = vec![usize::MAX; images.len()];
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for start in 0..images.len() {
        if label[start] != usize::MAX {
            continue;
        }
        let g = groups.len();
        label[start] = g;
        let mut members = vec![start];
        let mut stack = vec![start];
        while let Some(a) = stack.pop() {
            for b in 0..images.len() {
                if label[b] == usize::MAX && images[a].0.dist(images[b].0) <= tc {
                    label[b] = g;
                    members.push(b);
                    stack.push(b);
                }
            }
        }
        members.sort_unstable();
        groups.push(members);
    }

    let mut new_support = Vec::with_capacity(groups.len());
    let mut merges = Vec::new();
    for members in &groups {
        let k = members.len() as f64;
        let u = members.iter().map(|&m| images[m].0.u).sum::<f64>() / k;
        let v = if members.iter().any(|&m| images[m].0.v == 0.0) {
            0.0
        } else {
            members.iter().map(|&m| images[m].0.v).sum::<f64>() / k
        };
        let sphere = SpectralSphere { u, v };
        let proj = members
            .iter()
            .fold(QMatrix::zeros(n), |acc, &m| acc.add(&support[m].1));
        if members.len() > 1 {
            merges.push(Merge {
                from: members.clone(),
                into: sphere,
            });
        }
        new_support.push((sphere, proj));
    }
    new_support.sort_by(|a, b| a.0.u.total_cmp(&b.0.u).then(a.0.v.total_cmp(&b.0.v)));

    let j = dec.system.j.matrix();
    let mut jt = QMatrix::zeros(n);
    for ((_, p), (_, sign)) in support.iter().zip(&images) {
        if *sign != 0.0 {
            jt = jt.add(&j.mul(p).scale(*sign));
        }
    }
    let system = SpectralSystem {
        e: SpectralMeasure::new_unchecked(n, new_support)?,
        j: ImaginaryOperator::new_unchecked(jt),
    };
    let scalar = system.integral_of(&IntrinsicSliceFunction::identity())?;
    let radical = ft.sub(&scalar);
    let spectrum = s_spectrum(&ft, tol)?;
    let decomposition = assemble(&ft, system, scalar, radical, spectrum, 0.0, tol)?;
    Ok(Pushforward { decomposition, merges })
}

/// Distances between two decompositions, matching support spheres by
/// position after sorting.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DecompositionDistance {
    /// Hausdorff distance of the support sphere sets.
    pub spheres: f64,
    /// Worst `‖E_k − E'_k‖`; infinite when the supports differ in size.
    pub projections: f64,
    pub j: f64,
    pub scalar: f64,
    pub radical: f64,
}

impl DecompositionDistance {
    pub fn worst(&self) -> f64 {
        self.spheres
            .max(self.projections)
            .max(self.j)
            .max(self.scalar)
            .max(self.radical)
    }
}

pub fn compare_decompositions(a: &SpectralDecomposition, b: &SpectralDecomposition) -> DecompositionDistance {
    let (sa, sb) = (a.e().support(), b.e().support());
    let spheres = hausdorff_spheres(&a.e().spheres(), &b.e().spheres());
    let projections = if sa.len() == sb.len() {
        sa.iter()
            .zip(sb)
            .map(|((_, p), (_, q))| p.sub(q).norm())
            .fold(0.0, f64::max)
    } else {
        f64::INFINITY
    };
    DecompositionDistance {
        spheres,
        projections,
        j: a.j().sub(b.j()).norm(),
        scalar: a.scalar.sub(&b.scalar).norm(),
        radical: a.radical.sub(&b.radical).norm(),
    }
}

/// Blocks of the counterexample family: `T_m = J_m/m²` with
/// `J_m = [[e1, 2m e1], [0, −e1]]`.
pub fn cex_block(m: usize) -> (QMatrix, QMatrix) {
    let mf = m as f64;
    let e1 = Quaternion::E1;
    let j = QMatrix::from_rows(&[vec![e1, e1 * (2.0 * mf)], vec![Quaternion::ZERO, -e1]])
        .expect("2×2 block");
    (j.scale(1.0 / (mf * mf)), j)
}

/// One row of the counterexample table.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CexRow {
    pub m: usize,
    /// `‖J_m‖`.
    pub j_norm: f64,
    /// `2m`.
    pub lower_bound: f64,
    /// Distance of `σ_S(T_m)` from the single sphere `(0, 1/m²)`.
    pub spectrum_error: f64,
    /// Multiplicity of that sphere (expected 2).
    pub multiplicity: usize,
    /// Worst `‖T v − v e1/m²‖` over the two listed eigenvectors.
    pub eigvec_residual: f64,
    /// `‖J_pipeline − J_m‖` for the decomposition of `T_m`.
    pub orientation_error: f64,
    /// `C_{E,J}` of the pipeline decomposition of `T_m`.
    pub norm_bound: f64,
}

/// Runs the counterexample blocks `m = 1..=m_max`, one block at a time.
pub fn cex_truncation(m_max: usize, tol: &Tolerances) -> Result<Vec<CexRow>> {
    if m_max == 0 {
        return Err(Error::domain("counterexample truncation needs m ≥ 1"));
    }
    let mut rows = Vec::with_capacity(m_max);
    for m in 1..=m_max {
        let (t, j) = cex_block(m);
        let mf = m as f64;
        let target = SpectralSphere {
            u: 0.0,
            v: 1.0 / (mf * mf),
        };
        let spec = s_spectrum(&t, tol)?;
        let spectrum_error = hausdorff_spheres(&[target], &spec.spheres.iter().map(|e| e.sphere).collect::<Vec<_>>());
        let multiplicity = spec.spheres.iter().map(|e| e.mult).sum();
        let lam = Quaternion::E1 / (mf * mf);
        let v1 = QVector::basis(2, 0);
        let v2 = QVector::basis(2, 0)
            .scale(-1.0)
            .add(&QVector::basis(2, 1).scale(1.0 / mf))
            .right_mul(Quaternion::E2);
        let eigvec_residual = [v1, v2]
            .iter()
            .map(|v| t.apply(v).sub(&v.right_mul(lam)).norm())
            .fold(0.0, f64::max);
        let dec = spectral_decomposition(&t, tol)?;
        rows.push(CexRow {
            m,
            j_norm: j.norm(),
            lower_bound: 2.0 * mf,
            spectrum_error,
            multiplicity,
            eigvec_residual,
            orientation_error: dec.j().sub(&j).norm(),
            norm_bound: dec.system.norm_bound_constant(),
        });
    }
    Ok(rows)
}

/// Distances between the pipeline's `(E, J)` and the one assembled from the
/// complex spectral resolution of `embed(T)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EquivalenceReport {
    /// Worst `‖E_k − E'_k‖` over spheres.
    pub e_distance: f64,
    pub j_distance: f64,
    /// `‖embed(J) − i(E_i(C⁺) − E_i(C⁻))‖` for the pipeline `J`.
    pub j_identity: f64,
    /// Deviation of the assembled operators from quaternionic matrices.
    pub chart_deviation: f64,
}

impl EquivalenceReport {
    pub fn worst(&self) -> f64 {
        self.e_distance.max(self.j_distance).max(self.j_identity)
    }
}

/// Computes the complex Riesz projectors of `embed(T)` directly, one per
/// eigenvalue cluster in the reference plane, and assembles
/// `E([s]) = E_i(s) + E_i(s̄)` and `embed(J) = i(E_i(C⁺) − E_i(C⁻))`.
pub fn complex_equivalence_check(t: &QMatrix, tol: &Tolerances) -> Result<EquivalenceReport> {
    let dec = spectral_decomposition(t, tol)?;
    complex_equivalence_with(t, &dec, tol)
}

pub(crate) fn complex_equivalence_with(
    t: &QMatrix,
    dec: &SpectralDecomposition,
    tol: &Tolerances,
) -> Result<EquivalenceReport> {
    let spec = &dec.spectrum;
    let m = t.embed();
    let d = m.rows();
    let q = QuadratureConfig::default();
    let mut upper = ComplexMatrix::zeros(d, d);
    let mut lower = ComplexMatrix::zeros(d, d);
    let mut e_distance: f64 = 0.0;
    let mut chart_deviation: f64 = 0.0;
    for k in 0..spec.spheres.len() {
        let contour = isolating_contour_for(spec, &[k], tol)?;
        contour.validate(spec, guard(spec, tol), false)?;
        let mut sum = ComplexMatrix::zeros(d, d);
        for c in &contour.circles {
            let single = crate::calculus::ContourSpec::new(vec![*c]);
            let p = riesz_dunford_complex(&m, |_| Ok(C::new(1.0, 0.0)), &single, &q, tol)?;
            if c.center.im > 0.0 {
                upper = upper.add(&p);
            } else if c.center.im < 0.0 {
                lower = lower.add(&p);
            }
            sum = sum.add(&p);
        }
        let (ek, dev) = QMatrix::de_embed(&sum)?;
        chart_deviation = chart_deviation.max(dev);
        e_distance = e_distance.max(ek.sub(dec.e().projection(k)).norm());
    }
    let jm = upper.sub(&lower).scale(C::new(0.0, 1.0));
    let (j, dev) = QMatrix::de_embed(&jm)?;
    chart_deviation = chart_deviation.max(dev);
    Ok(EquivalenceReport {
        e_distance,
        j_distance: j.sub(dec.j()).norm(),
        j_identity: dec.j().embed().sub(&jm).norm2(),
        chart_deviation,
    })
}

/// A short human-readable summary of the residuals.
pub fn describe_residuals(r: &DecompositionResiduals) -> String {
    format!(
        "system {:.3e}, commutation {:.3e}, nilpotency {:.3e}, spectrum {:.3e}, probes {}/{} ok (sampled)",
        r.system.worst(),
        r.commutation,
        r.nilpotency,
        r.spectrum,
        r.probes - r.probe_failures,
        r.probes
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::test_util::random_qmatrix;
    use crate::quaternion::ImaginaryUnit;
    use crate::spectral::{eigensphere_kernel, split_by_imaginary_operator};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    fn jordan() -> QMatrix {
        let e1 = Quaternion::E1;
        QMatrix::from_rows(&[vec![e1, Quaternion::ONE], vec![Quaternion::ZERO, e1]]).unwrap()
    }

    fn check(dec: &SpectralDecomposition, t: &QMatrix) {
        let r = &dec.residuals;
        assert!(r.worst() < 1e-9, "{r:?}");
        assert_eq!(r.probe_failures, 0);
        assert!(dec.operator().sub(t).norm() < 1e-12 * scale(t.norm()));
    }

    #[test]
    fn units_are_their_own_orientation() {
        let t = QMatrix::from_diagonal(&[Quaternion::E1, Quaternion::E2]);
        let dec = spectral_decomposition(&t, &tol()).unwrap();
        check(&dec, &t);
        assert_eq!(dec.e().support().len(), 1);
        let (s, p) = &dec.e().support()[0];
        assert!(s.u.abs() < 1e-12 && (s.v - 1.0).abs() < 1e-12);
        assert!(p.sub(&QMatrix::identity(2)).norm() < 1e-10);
        assert!(dec.j().sub(&t).norm() < 1e-10);
        assert!(dec.scalar.sub(&t).norm() < 1e-10);
        assert!(dec.radical.norm() < 1e-10);
        assert_eq!(dec.type_m, 0);
    }

    #[test]
    fn real_diagonal() {
        let t = QMatrix::from_diagonal(&[Quaternion::real(1.0), Quaternion::real(-2.0), Quaternion::real(1.0)]);
        let dec = spectral_decomposition(&t, &tol()).unwrap();
        check(&dec, &t);
        assert_eq!(dec.j(), &QMatrix::zeros(3));
        assert!(dec.scalar.sub(&t).norm() < 1e-10);
        assert_eq!(dec.e().support().len(), 2);
    }

    #[test]
    fn jordan_block() {
        let t = jordan();
        let dec = spectral_decomposition(&t, &tol()).unwrap();
        check(&dec, &t);
        assert_eq!(dec.type_m, 1);
        let e1 = Quaternion::E1;
        assert!(dec.scalar.sub(&QMatrix::from_diagonal(&[e1, e1])).norm() < 1e-9);
        let n = QMatrix::from_rows(&[vec![Quaternion::ZERO, Quaternion::ONE], vec![Quaternion::ZERO; 2]]).unwrap();
        assert!(dec.radical.sub(&n).norm() < 1e-9);
    }

    #[test]
    fn random_matrices_decompose() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in [1usize, 2, 3, 5, 8] {
            let t = random_qmatrix(&mut rng, n);
            let dec = spectral_decomposition(&t, &tol()).unwrap();
            check(&dec, &t);
            assert_eq!(dec.type_m, 0);
            // J splits the space as an imaginary operator should
            let j = ImaginaryOperator::new(dec.j().clone(), &tol()).unwrap();
            let s = split_by_imaginary_operator(&j, ImaginaryUnit::E1, &tol()).unwrap();
            let real_dim: usize = dec.spectrum.spheres.iter().filter(|e| e.sphere.is_real()).map(|e| e.mult).sum();
            assert_eq!(s.kernel.len(), 2 * real_dim);
        }
    }

    #[test]
    fn decomposition_is_unique() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for t in [random_qmatrix(&mut rng, 4), jordan()] {
            let a = spectral_decomposition(&t, &tol()).unwrap();
            let b = spectral_decomposition(&t, &tol()).unwrap();
            assert_eq!(compare_decompositions(&a, &b).worst(), 0.0);
            let r = complex_equivalence_with(&t, &a, &tol()).unwrap();
            assert!(r.worst() < 1e-8, "{r:?}");
        }
        let real = QMatrix::from_diagonal(&[Quaternion::real(1.0), Quaternion::real(2.0)]);
        assert_eq!(complex_equivalence_check(&real, &tol()).unwrap().j_distance, 0.0);
    }

    #[test]
    fn restriction_to_a_spectral_subspace() {
        // T = A diag(λ_k) A⁻¹: restricting to ran E_k recovers λ_k's system
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let t = random_qmatrix(&mut rng, 4);
        let dec = spectral_decomposition(&t, &tol()).unwrap();
        for (s, p) in dec.e().support() {
            let restricted = t.mul(p);
            // T E_k has spectrum [s] ∪ {0}; its orientation is J E_k
            let sub = spectral_decomposition(&restricted, &tol()).unwrap();
            let jk = dec.j().mul(p);
            assert!(sub.j().sub(&jk).norm() < 1e-8 * scale(jk.norm()));
            let k = sub.e().spheres().iter().position(|x| x.dist(*s) < 1e-8).unwrap();
            assert!(sub.e().projection(k).sub(p).norm() < 1e-8 * scale(p.norm()));
        }
    }

    #[test]
    fn commutant_transport() {
        let mut rng = ChaCha8Rng::seed_from_u64(14);
        let t = random_qmatrix(&mut rng, 4);
        let dec = spectral_decomposition(&t, &tol()).unwrap();
        let a = t.pow(3).sub(&t.scale(2.0)).add(&QMatrix::identity(4).scale(0.5));
        let sa = scale(a.norm());
        assert!(a.commutator_norm(dec.j()) < 1e-9 * sa * scale(dec.j().norm()));
        for (_, p) in dec.e().support() {
            assert!(a.commutator_norm(p) < 1e-9 * sa * scale(p.norm()));
        }
    }

    #[test]
    fn commuting_nilpotent_keeps_the_spectrum() {
        let mut rng = ChaCha8Rng::seed_from_u64(15);
        let t = random_qmatrix(&mut rng, 3);
        let dec = spectral_decomposition(&t, &tol()).unwrap();
        // a nilpotent commuting with T: N' = (T − S)-free, so use a
        // polynomial in the radical of a Jordan-type matrix instead
        let j = jordan();
        let jd = spectral_decomposition(&j, &tol()).unwrap();
        let perturbed = j.add(&jd.radical.scale(2.5));
        let a = s_spectrum(&j, &tol()).unwrap();
        let b = s_spectrum(&perturbed, &tol()).unwrap();
        let sp = |s: &SpectrumInfo| s.spheres.iter().map(|e| e.sphere).collect::<Vec<_>>();
        assert!(hausdorff_spheres(&sp(&a), &sp(&b)) < 1e-7);
        assert!(dec.radical.norm() < 1e-9);
    }

    #[test]
    fn taylor_matches_contour() {
        let fs = [
            IntrinsicSliceFunction::exp(),
            IntrinsicSliceFunction::poly(&[0.0, 0.0, 1.0]).unwrap(),
            IntrinsicSliceFunction::poly(&[0.0, -2.0, 0.0, 1.0]).unwrap(),
        ];
        let mut rng = ChaCha8Rng::seed_from_u64(16);
        for t in [jordan(), random_qmatrix(&mut rng, 3), random_qmatrix(&mut rng, 5)] {
            let dec = spectral_decomposition(&t, &tol()).unwrap();
            let one = taylor_funcalc(&dec, &IntrinsicSliceFunction::constant(1.0)).unwrap();
            assert!(one.sub(&QMatrix::identity(t.n())).norm() < 1e-12);
            let id = taylor_funcalc(&dec, &IntrinsicSliceFunction::identity()).unwrap();
            assert!(id.sub(&t).norm() < 1e-12 * scale(t.norm()));
            for f in &fs {
                let a = taylor_funcalc(&dec, f).unwrap();
                let b = crate::calculus::funcalc_auto(&t, f, &tol()).unwrap();
                assert!(a.sub(&b).norm() < 1e-6 * scale(b.norm()), "{f}");
            }
        }
    }

    #[test]
    fn taylor_refuses_approximate_derivatives() {
        let stem: crate::slice::Stem = alloc::sync::Arc::new(|z: C| z.exp());
        let f = IntrinsicSliceFunction::from_stem(stem, Vec::new(), None).unwrap();
        let dec = spectral_decomposition(&jordan(), &tol()).unwrap();
        assert!(matches!(taylor_funcalc(&dec, &f), Err(Error::Unsupported(_))));
        // type 0 needs no derivatives
        let d = spectral_decomposition(&QMatrix::from_diagonal(&[Quaternion::E1]), &tol()).unwrap();
        assert!(taylor_funcalc(&d, &f).is_ok());
    }

    #[test]
    fn pushforward_examples() {
        let t = QMatrix::from_diagonal(&[Quaternion::E1]);
        let dec = spectral_decomposition(&t, &tol()).unwrap();
        let id = pushforward_decomposition(&dec, &IntrinsicSliceFunction::identity(), &tol()).unwrap();
        assert!(compare_decompositions(&dec, &id.decomposition).worst() < 1e-12);

        let sq = IntrinsicSliceFunction::poly(&[0.0, 0.0, 1.0]).unwrap();
        let p = pushforward_decomposition(&dec, &sq, &tol()).unwrap();
        let s = p.decomposition.e().spheres();
        assert_eq!(s.len(), 1);
        assert!((s[0].u + 1.0).abs() < 1e-12 && s[0].v == 0.0);
        assert_eq!(p.decomposition.j(), &QMatrix::zeros(1));
    }

    #[test]
    fn pushforward_matches_direct() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let fs = [
            IntrinsicSliceFunction::exp(),
            IntrinsicSliceFunction::poly(&[1.0, -0.5, 0.3]).unwrap(),
            IntrinsicSliceFunction::poly(&[0.0, -2.0, 0.0, 1.0]).unwrap(),
        ];
        for t in [random_qmatrix(&mut rng, 3), jordan()] {
            let dec = spectral_decomposition(&t, &tol()).unwrap();
            for f in &fs {
                let p = pushforward_decomposition(&dec, f, &tol()).unwrap();
                let direct = spectral_decomposition(&p.decomposition.operator(), &tol()).unwrap();
                let d = compare_decompositions(&p.decomposition, &direct);
                let s = scale(p.decomposition.operator().norm());
                assert!(d.worst() < 1e-8 * s, "{f}: {d:?}");
                assert!(p.decomposition.residuals.worst() < 1e-9);
            }
        }
    }

    #[test]
    fn pushforward_merges_spheres() {
        // s² sends ±1 to the same point
        let t = QMatrix::from_diagonal(&[Quaternion::real(1.0), Quaternion::real(-1.0)]);
        let dec = spectral_decomposition(&t, &tol()).unwrap();
        let sq = IntrinsicSliceFunction::poly(&[0.0, 0.0, 1.0]).unwrap();
        let p = pushforward_decomposition(&dec, &sq, &tol()).unwrap();
        assert_eq!(p.merges.len(), 1);
        assert_eq!(p.merges[0].from, vec![0, 1]);
        assert!(p.decomposition.e().projection(0).sub(&QMatrix::identity(2)).norm() < 1e-10);
    }

    #[test]
    fn counterexample_rows() {
        let rows = cex_truncation(12, &tol()).unwrap();
        for r in &rows {
            assert!(r.j_norm >= r.lower_bound);
            assert!(r.spectrum_error < 1e-10);
            assert_eq!(r.multiplicity, 2);
            assert!(r.eigvec_residual < 1e-12);
            assert!(r.orientation_error < 1e-8 * r.j_norm, "{r:?}");
        }
        assert!(rows.windows(2).all(|w| w[1].j_norm > w[0].j_norm));
        assert!(rows[11].norm_bound >= 12.0);
        assert!(cex_truncation(0, &tol()).is_err());
    }

    #[test]
    fn conditioning_error_for_near_collisions() {
        let t = QMatrix::from_diagonal(&[Quaternion::real(1.0), Quaternion::real(1.0 + 3e-8)]);
        assert!(matches!(spectral_decomposition(&t, &tol()), Err(Error::Conditioning(_))));
    }

    #[test]
    fn eigensphere_kernel_of_units() {
        let t = QMatrix::from_diagonal(&[Quaternion::E1, Quaternion::E3]);
        let ker = eigensphere_kernel(&t, SpectralSphere { u: 0.0, v: 1.0 }, &tol());
        assert_eq!(ker.len(), 4);
    }
}
