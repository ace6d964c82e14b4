//! Property suite behind `qspectra verify`.
//!
//! Every property is evaluated on seeded random inputs; each one records its
//! worst residual against a fixed threshold. Core errors raised while
//! evaluating a property count as failures and keep their message.

use std::collections::BTreeMap;

use qspectra_core::calculus::{
    auto_contour, enclosing_contour, funcalc, isolating_contour, riesz_dunford_complex, riesz_projector,
    unit_independence_check,
};
use qspectra_core::decomposition::{
    compare_decompositions, complex_equivalence_check, spectral_decomposition, taylor_funcalc,
};
use qspectra_core::linalg::{complex_eigenvalues, hausdorff, hausdorff_spheres, s_spectrum};
use qspectra_core::resolvent::{right_resolvent_field, sresolvent_equation_residual, PseudoResolvent};
use qspectra_core::slice::{cauchy_kernel_left, cauchy_kernel_right};
use qspectra_core::spectral::{eigensphere_kernel, eigensphere_split};
use qspectra_core::{
    AxSet, Complex64 as C, ComplexMatrix, Error, IntrinsicSliceFunction, QMatrix, QVector,
    QuadratureConfig, Quaternion, SpectralDecomposition, SpectralSphere, Tolerances,
};
use rand::Rng;

use crate::json::Json;
use crate::random;

/// Parameters of one verification run.
#[derive(Clone, Copy, Debug)]
pub struct VerifyConfig {
    pub trials: usize,
    pub dim: usize,
    pub seed: u64,
    pub tol: Tolerances,
}

/// Outcome of one property over all trials.
#[derive(Clone, Debug, PartialEq)]
pub struct PropertyResult {
    pub name: String,
    pub worst: f64,
    pub threshold: f64,
    pub samples: usize,
    /// First error raised while evaluating the property, if any.
    pub error: Option<String>,
    /// Checked at finitely many sample points only.
    pub sampled: bool,
}

impl PropertyResult {
    pub fn pass(&self) -> bool {
        self.error.is_none() && self.worst <= self.threshold
    }
}

#[derive(Clone, Debug, Default)]
pub struct VerifyReport {
    pub properties: Vec<PropertyResult>,
}

impl VerifyReport {
    pub fn failures(&self) -> usize {
        self.properties.iter().filter(|p| !p.pass()).count()
    }

    pub fn all_pass(&self) -> bool {
        self.failures() == 0
    }

    pub fn to_json(&self) -> Json {
        let props = self
            .properties
            .iter()
            .map(|p| {
                let mut o = Json::obj([
                    ("name", Json::str(p.name.clone())),
                    ("pass", Json::from(p.pass())),
                    ("worst", Json::from(p.worst)),
                    ("threshold", Json::from(p.threshold)),
                    ("samples", Json::from(p.samples)),
                ]);
                if p.sampled {
                    o.push_field("kind", Json::str("sampled"));
                }
                if let Some(e) = &p.error {
                    o.push_field("error", Json::str(e.clone()));
                }
                o
            })
            .collect();
        Json::obj([
            ("pass", Json::from(self.all_pass())),
            ("failures", Json::from(self.failures())),
            ("properties", Json::Arr(props)),
        ])
    }
}

struct Suite {
    results: BTreeMap<&'static str, PropertyResult>,
    order: Vec<&'static str>,
}

impl Suite {
    fn new() -> Self {
        Suite {
            results: BTreeMap::new(),
            order: Vec::new(),
        }
    }

    fn entry(&mut self, name: &'static str, threshold: f64) -> &mut PropertyResult {
        if !self.results.contains_key(name) {
            self.order.push(name);
        }
        self.results.entry(name).or_insert_with(|| PropertyResult {
            name: name.to_string(),
            worst: 0.0,
            threshold,
            samples: 0,
            error: None,
            sampled: false,
        })
    }

    /// Records a residual already divided by its scale.
    fn record(&mut self, name: &'static str, threshold: f64, value: Result<f64, Error>) {
        let e = self.entry(name, threshold);
        e.samples += 1;
        match value {
            Ok(v) if v.is_nan() => {
                e.worst = f64::INFINITY;
                e.error.get_or_insert_with(|| "residual is NaN".into());
            }
            Ok(v) => e.worst = e.worst.max(v),
            Err(err) => {
                e.worst = f64::INFINITY;
                e.error.get_or_insert_with(|| err.to_string());
            }
        }
    }

    fn mark_sampled(&mut self, name: &'static str, threshold: f64) {
        self.entry(name, threshold).sampled = true;
    }

    fn finish(mut self) -> VerifyReport {
        VerifyReport {
            properties: self.order.iter().map(|n| self.results.remove(n).expect("recorded")).collect(),
        }
    }
}

fn sc(x: f64) -> f64 {
    x.max(1.0)
}

fn square() -> IntrinsicSliceFunction {
    IntrinsicSliceFunction::poly(&[0.0, 0.0, 1.0]).expect("finite")
}

fn cubic() -> IntrinsicSliceFunction {
    IntrinsicSliceFunction::poly(&[0.0, -2.0, 0.0, 1.0]).expect("finite")
}

/// Runs every property `trials` times on `dim × dim` inputs.
pub fn run(cfg: &VerifyConfig) -> VerifyReport {
    let mut suite = Suite::new();
    let mut rng = random::rng(cfg.seed);
    for _ in 0..cfg.trials {
        quaternion_props(&mut suite, &mut rng);
        slice_props(&mut suite, &mut rng);
        let t = random::qmatrix(&mut rng, cfg.dim);
        linalg_props(&mut suite, &mut rng, &t, cfg);
        resolvent_props(&mut suite, &mut rng, &t, cfg);
        calculus_props(&mut suite, &mut rng, &t, cfg);
        match spectral_decomposition(&t, &cfg.tol) {
            Ok(dec) => {
                system_props(&mut suite, &mut rng, &t, &dec, cfg);
                decomposition_props(&mut suite, &t, &dec, cfg);
            }
            Err(e) => suite.record("ops.decomposition", 0.0, Err(e)),
        }
        let jt = triangular_jordan(&mut rng, cfg.dim);
        defective_props(&mut suite, &jt, cfg);
    }
    suite.finish()
}

fn quaternion_props(s: &mut Suite, rng: &mut random::SeededRng) {
    for _ in 0..10 {
        let q = random::quaternion(rng);
        let h = random::invertible_quaternion(rng);
        let r = q.conjugate_by(h).map(|c| {
            ((c.norm() - q.norm()).abs() + (c.re() - q.re()).abs()) / sc(q.norm())
        });
        s.record("quaternion.conjugation_preserves_sphere", 1e-12, r);
        let p = random::quaternion(rng);
        let anti = ((q * p).conj() - p.conj() * q.conj()).norm();
        let mult = ((q * p).norm() - q.norm() * p.norm()).abs();
        s.record("quaternion.conj_and_norm", 1e-12, Ok(anti.max(mult) / sc(q.norm() * p.norm())));
        let (u, v, i) = q.axially_decompose();
        let back = match i {
            Some(i) => i.point(u, v),
            None => Quaternion::real(u),
        };
        s.record("quaternion.axial_round_trip", 1e-14, Ok(back.dist(q) / sc(q.norm())));
    }
}

fn slice_props(s: &mut Suite, rng: &mut random::SeededRng) {
    let fs = [
        IntrinsicSliceFunction::exp(),
        cubic(),
        IntrinsicSliceFunction::rational(&[1.0], &[4.0, 0.0, 1.0]).expect("finite"),
    ];
    for _ in 0..10 {
        let x = random::quaternion(rng);
        let i = random::unit(rng);
        for f in &fs {
            let r = (|| {
                let fx = f.eval(x)?;
                let fc = f.eval(x.conj())?;
                Ok((fc - fx.conj()).norm() / (1.0 + fx.norm()))
            })();
            s.record("slice.intrinsic", 1e-12, r);
            let r = (|| {
                let fx = f.eval(x)?;
                let rep = f.eval_via_representation(x, i)?;
                Ok((rep - fx).norm() / sc(fx.norm()))
            })();
            s.record("slice.representation_formula", 1e-10, r);
        }
        let g = fs[0].product(&fs[1]);
        let r = (|| {
            let gx = g.eval(x)?;
            Ok((g.eval(x.conj())? - gx.conj()).norm() / (1.0 + gx.norm()))
        })();
        s.record("slice.product_intrinsic", 1e-12, r);
        let y = random::quaternion(rng) * 2.0;
        if !Quaternion::same_sphere(x, y, 1e-3) {
            let r = (|| {
                let a = cauchy_kernel_right(y, x)?;
                let b = cauchy_kernel_left(x, y)?;
                Ok((a + b).norm() / sc(a.norm()))
            })();
            s.record("slice.kernel_symmetry", 1e-12, r);
        }
    }
}

fn linalg_props(s: &mut Suite, rng: &mut random::SeededRng, t: &QMatrix, cfg: &VerifyConfig) {
    let n = t.n();
    let b = random::qmatrix(rng, n);
    let hom = t.mul(&b).embed().sub(&t.embed().mul(&b.embed())).norm2();
    s.record("qlinalg.embedding_homomorphism", 1e-12, Ok(hom / sc(t.norm() * b.norm())));

    let v = random::qvector(rng, n);
    let chart: f64 = v.chart().iter().map(|c| c.norm_sqr()).sum();
    let direct: f64 = v.entries().iter().map(|q| q.norm_sqr()).sum();
    s.record("qlinalg.chart_isometry", 1e-14, Ok((chart - direct).abs() / sc(direct)));

    let norm = t.norm();
    let r = complex_eigenvalues(&t.embed()).map(|eig| {
        let conj: Vec<C> = eig.iter().map(|z| z.conj()).collect();
        hausdorff(&eig, &conj) / sc(norm)
    });
    s.record("qlinalg.conjugation_closed_spectrum", 1e-8, r);

    let r = s_spectrum(t, &cfg.tol).map(|spec| {
        let radius = spec
            .spheres
            .iter()
            .map(|e| e.sphere.u.hypot(e.sphere.v))
            .fold(0.0, f64::max);
        (radius - norm).max(0.0)
    });
    s.record("qlinalg.spectral_radius_bound", 1e-8, r);
}

fn resolvent_props(s: &mut Suite, rng: &mut random::SeededRng, t: &QMatrix, cfg: &VerifyConfig) {
    let spec = match s_spectrum(t, &cfg.tol) {
        Ok(spec) => spec,
        Err(e) => return s.record("resolvent.spectrum", 0.0, Err(e)),
    };
    let sc_t = sc(spec.norm);
    let radius = 1.5 * sc_t;
    let margin = 0.05 * sc_t;
    let n = t.n();
    for _ in 0..2 {
        let p = random::admissible_point(rng, &spec, radius, margin);
        let r = (|| {
            let a = PseudoResolvent::new(t, p, &spec, &cfg.tol)?.matrix();
            let b = PseudoResolvent::new(t, p.conj(), &spec, &cfg.tol)?.matrix();
            Ok(a.sub(&b).norm() / sc(a.norm()))
        })();
        s.record("resolvent.conjugate_point_symmetry", 1e-14, r);

        // (λ − M)(λ̄ − M) = embed(Q_λ(T)) at λ = u + iv in the reference plane
        let lam = C::new(p.re(), p.imag_norm());
        let m = t.embed();
        let id = ComplexMatrix::identity(2 * n);
        let lhs = id.scale(lam).sub(&m).mul(&id.scale(lam.conj()).sub(&m));
        let q = t
            .mul(t)
            .sub(&t.scale(2.0 * p.re()))
            .add(&QMatrix::identity(n).scale(p.norm_sqr()));
        let fac = lhs.sub(&q.embed()).norm2() / sc(sc_t * sc_t + p.norm_sqr());
        s.record("resolvent.factorization", 1e-12, Ok(fac));

        let x = random::admissible_point(rng, &spec, radius, margin);
        if !Quaternion::same_sphere(p, x, margin) {
            let r = sresolvent_equation_residual(t, p, x, &cfg.tol).map(|r| r / sc_t);
            s.record("resolvent.s_resolvent_equation", 1e-9, r);
        }

        // right slice hyperholomorphy along C_{e1}: ∂_u f + (∂_v f) e1 = 0
        // central differences need clearance to keep truncation error small
        let (u0, v0) = loop {
            let u = rng.random_range(-radius..radius);
            let w = rng.random_range(0.25 * sc_t..radius);
            if spec.distance_to(u, w) > 0.25 * sc_t {
                break (u, w);
            }
        };
        let v = random::qvector(rng, n);
        let h = 1e-5;
        let r = (|| {
            let at = |u: f64, w: f64| right_resolvent_field(t, Quaternion::new(u, w, 0.0, 0.0), &v, &cfg.tol);
            let du = at(u0 + h, v0)?.sub(&at(u0 - h, v0)?).scale(0.5 / h);
            let dv = at(u0, v0 + h)?.sub(&at(u0, v0 - h)?).scale(0.5 / h);
            let f0 = at(u0, v0)?;
            Ok(du.add(&dv.right_mul(Quaternion::E1)).norm() / sc(f0.norm()))
        })();
        s.record("resolvent.right_slice_regular", 1e-6, r);
    }
}

fn calculus_props(s: &mut Suite, rng: &mut random::SeededRng, t: &QMatrix, cfg: &VerifyConfig) {
    let tol = &cfg.tol;
    let q = QuadratureConfig::default();
    let spec = match s_spectrum(t, tol) {
        Ok(spec) => spec,
        Err(e) => return s.record("calculus.spectrum", 0.0, Err(e)),
    };
    let sc_t = sc(spec.norm);
    let n = t.n();
    let contour = enclosing_contour(&spec, tol);
    let r = (|| {
        let one = funcalc(t, &IntrinsicSliceFunction::constant(1.0), &contour, &q, tol)?;
        let id = funcalc(t, &IntrinsicSliceFunction::identity(), &contour, &q, tol)?;
        Ok(one.sub(&QMatrix::identity(n)).norm().max(id.sub(t).norm()) / sc_t)
    })();
    s.record("calculus.polynomial_consistency", 1e-9, r);

    let r = (|| {
        let mut total = QMatrix::zeros(n);
        for k in 0..spec.spheres.len() {
            total = total.add(&riesz_projector(t, &spec, &[k], &q, tol)?);
        }
        Ok(total.sub(&QMatrix::identity(n)).norm())
    })();
    s.record("calculus.riesz_completeness", 1e-9, r);

    let exp = IntrinsicSliceFunction::exp();
    let r = (|| {
        let c = auto_contour(&spec, Some(&exp), tol)?;
        let ft = funcalc(t, &exp, &c, &q, tol)?;
        let oracle = riesz_dunford_complex(&t.embed(), |z| Ok(z.exp()), &c, &q, tol)?;
        Ok(ft.embed().sub(&oracle).norm2() / sc(ft.norm()))
    })();
    s.record("calculus.complex_oracle", 1e-8, r);

    match isolating_contour(&spec, tol) {
        Ok(iso) => {
            let r = (|| {
                let a = funcalc(t, &exp, &contour, &q, tol)?;
                let b = funcalc(t, &exp, &iso, &q, tol)?;
                Ok(a.sub(&b).norm() / sc(a.norm()))
            })();
            s.record("calculus.contour_independence", 2e-9, r);
        }
        Err(Error::Conditioning(_)) => {}
        Err(e) => s.record("calculus.contour_independence", 2e-9, Err(e)),
    }

    let i2 = random::unit(rng);
    let f = if rng.random_bool(0.5) { exp } else { square() };
    let r = unit_independence_check(t, &f, i2, tol).map(|d| d / sc_t);
    s.record("calculus.unit_independence", 1e-8, r);
}

/// A sum of spheres chosen by a bit mask, as an axially symmetric set.
fn subset(spheres: &[SpectralSphere], mask: u32, r: f64) -> AxSet {
    spheres
        .iter()
        .enumerate()
        .filter(|(k, _)| mask & (1 << k) != 0)
        .fold(AxSet::Empty, |acc, (_, sp)| acc.union(AxSet::around(*sp, r)))
}

fn system_props(
    s: &mut Suite,
    rng: &mut random::SeededRng,
    t: &QMatrix,
    dec: &SpectralDecomposition,
    cfg: &VerifyConfig,
) {
    let tol = &cfg.tol;
    let sys = &dec.system;
    let res = sys.residuals();
    s.record("spectral.system_axioms", 1e-9, Ok(res.worst()));

    let nonreal = sys.e.eval(&AxSet::nonreal());
    let j = dec.j();
    let thr = 1e3 * tol.rank_rel * sc(j.norm()).max(sc(nonreal.norm()));
    let gap = j.embed().rank(thr).abs_diff(nonreal.embed().rank(thr));
    s.record("spectral.kernel_of_j", 0.0, Ok(gap as f64));

    let spheres = sys.e.spheres();
    let k = spheres.len().min(16);
    let r = 0.5 * dec.spectrum.separation().min(1.0).max(dec.spectrum.tol_cluster);
    for _ in 0..3 {
        let (ma, mb) = (rng.random_range(0..1u32 << k), rng.random_range(0..1u32 << k));
        let (a, b) = (subset(&spheres, ma, r), subset(&spheres, mb, r));
        let ea = sys.e.eval(&a);
        let eb = sys.e.eval(&b);
        let eab = sys.e.eval(&a.intersection(b));
        let res = eab.sub(&ea.mul(&eb)).norm() / (sc(ea.norm()) * sc(eb.norm()));
        s.record("spectral.multiplicativity", 1e-10, Ok(res));
    }

    let (f, g) = (IntrinsicSliceFunction::exp(), cubic());
    let sup = |h: &IntrinsicSliceFunction| -> Result<f64, Error> {
        let mut m: f64 = 0.0;
        for sp in &spheres {
            m = m.max(h.eval_complex(sp.upper())?.norm());
        }
        Ok(m)
    };
    let r = (|| {
        let fg = sys.integral_of(&f.product(&g))?;
        let (fi, gi) = (sys.integral_of(&f)?, sys.integral_of(&g)?);
        let bound = sys.norm_bound_constant();
        Ok(fg.sub(&fi.mul(&gi)).norm() / (sc(sup(&f)? * sup(&g)?) * sc(bound * bound)))
    })();
    s.record("spectral.integral_homomorphism", 1e-9, r);

    // A = T² − 3T + I commutes with everything built from T
    let a = t.mul(t).sub(&t.scale(3.0)).add(&QMatrix::identity(t.n()));
    let r = (|| {
        let mut worst = a.commutator_norm(j) / sc(j.norm());
        for (_, p) in sys.e.support() {
            worst = worst.max(a.commutator_norm(p) / sc(p.norm()));
        }
        let fi = sys.integral_of(&f)?;
        worst = worst.max(a.commutator_norm(&fi) / sc(fi.norm()));
        Ok(worst / sc(a.norm()))
    })();
    s.record("spectral.commutant_transport", 1e-9, r);

    let norm = sc(t.norm());
    for e in &dec.spectrum.spheres {
        if e.sphere.is_real() {
            continue;
        }
        let i = random::unit(rng);
        for v in eigensphere_kernel(t, e.sphere, tol) {
            let (u, w) = (e.sphere.u, e.sphere.v);
            let r = eigensphere_split(t, u, w, i, &v).map(|(v1, v2)| {
                let si = i.point(u, w);
                let sum = v1.add(&v2).sub(&v).norm();
                let r1 = t.apply(&v1).sub(&v1.right_mul(si)).norm();
                let r2 = t.apply(&v2).sub(&v2.right_mul(si.conj())).norm();
                sum.max(r1).max(r2) / (norm * sc(v.norm()))
            });
            s.record("spectral.eigensphere_split", 1e-9, r);

            if let Ok((v1, _)) = eigensphere_split(t, u, w, i, &v) {
                let h = random::invertible_quaternion(rng);
                let si = i.point(u, w);
                let moved = v1.right_mul(h);
                let r = si.conjugate_by(h).map(|sh| {
                    let transported = t.apply(&moved).sub(&moved.right_mul(sh)).norm();
                    let base = t.apply(&v1).sub(&v1.right_mul(si)).norm() * h.norm();
                    (transported - base).abs() / (norm * sc(v1.norm()) * h.norm())
                });
                s.record("qlinalg.eigenvector_transport", 1e-12, r);
            }
        }
    }
}

fn decomposition_props(s: &mut Suite, t: &QMatrix, dec: &SpectralDecomposition, cfg: &VerifyConfig) {
    let tol = &cfg.tol;
    let r = &dec.residuals;
    let norm = sc(t.norm());
    s.record("ops.nilpotency", 1e-9, Ok(r.nilpotency / norm.powi(dec.type_m as i32 + 1)));
    s.record(
        "ops.scalar_radical_commute",
        1e-9,
        Ok(dec.scalar.commutator_norm(&dec.radical) / (sc(dec.scalar.norm()) * sc(dec.radical.norm()))),
    );
    s.record("ops.spectrum_of_scalar_part", 1e-8, Ok(r.spectrum / norm));
    s.mark_sampled("ops.probe_invertibility", 0.0);
    s.record("ops.probe_invertibility", 0.0, Ok(r.probe_failures as f64));

    let again = spectral_decomposition(t, tol).map(|b| compare_decompositions(dec, &b).worst());
    s.record("ops.uniqueness_repeat", 1e-8, again);
    let eq = complex_equivalence_check(t, tol).map(|e| e.worst() / norm);
    s.record("ops.uniqueness_complex", 1e-8, eq);

    for f in [IntrinsicSliceFunction::exp(), square(), cubic()] {
        let r = (|| {
            let direct = qspectra_core::calculus::funcalc_auto(t, &f, tol)?;
            let taylor = taylor_funcalc(dec, &f)?;
            Ok(direct.sub(&taylor).norm() / sc(direct.norm()))
        })();
        s.record("ops.taylor_vs_contour", 1e-6, r);
    }

    let r = restriction_residual(t, dec, tol);
    s.record("ops.restriction_stability", 1e-8, r);
}

/// `⟨u, v⟩ = Σ conj(u_k) v_k`, right-linear in `v`.
fn inner(u: &QVector, v: &QVector) -> Quaternion {
    u.entries()
        .iter()
        .zip(v.entries())
        .fold(Quaternion::ZERO, |acc, (&a, &b)| acc + a.conj() * b)
}

/// Orthonormal basis of the right span of the columns, by modified
/// Gram–Schmidt with reorthogonalization.
fn orthonormal_columns(p: &QMatrix, threshold: f64) -> Vec<QVector> {
    let mut basis: Vec<QVector> = Vec::new();
    for c in 0..p.n() {
        let mut v = p.column(c);
        for _ in 0..2 {
            for b in &basis {
                v = v.sub(&b.right_mul(inner(b, &v)));
            }
        }
        let nv = v.norm();
        if nv > threshold {
            basis.push(v.scale(1.0 / nv));
        }
    }
    basis
}

/// Decomposes `T` restricted to each `ran E_k` in an orthonormal basis `B`
/// and compares with `B*(E, J)B`; the restriction must have the single
/// sphere of `E_k` and orientation `B* J B`.
fn restriction_residual(t: &QMatrix, dec: &SpectralDecomposition, tol: &Tolerances) -> Result<f64, Error> {
    let mut worst: f64 = 0.0;
    let norm = sc(t.norm());
    for (sphere, p) in dec.e().support() {
        let basis = orthonormal_columns(p, 1e-6 * sc(p.norm()));
        let k = basis.len();
        let compress = |a: &QMatrix| QMatrix::from_fn(k, |r, c| inner(&basis[r], &a.apply(&basis[c])));
        let tr = compress(t);
        let invariance = basis
            .iter()
            .map(|b| {
                let tb = t.apply(b);
                let proj = basis
                    .iter()
                    .fold(QVector::zeros(t.n()), |acc, e| acc.add(&e.right_mul(inner(e, &tb))));
                tb.sub(&proj).norm()
            })
            .fold(0.0, f64::max);
        let sub = spectral_decomposition(&tr, tol)?;
        let spheres: Vec<SpectralSphere> = sub.e().spheres();
        let sphere_err = hausdorff_spheres(&spheres, &[*sphere]);
        let j_err = sub.j().sub(&compress(dec.j())).norm() / sc(dec.j().norm());
        worst = worst.max(invariance / norm).max(sphere_err / norm).max(j_err);
    }
    Ok(worst)
}

/// `λ I + U` with `λ ∈ C_{e1}` and `U` strictly upper triangular with
/// entries in `C_{e1}`; its spectrum is the single sphere of `λ`, exactly.
fn triangular_jordan(rng: &mut random::SeededRng, n: usize) -> (QMatrix, QMatrix) {
    let lam = Quaternion::new(rng.random_range(-1.0..1.0), rng.random_range(0.2..1.0), 0.0, 0.0);
    let u = QMatrix::from_fn(n, |r, c| {
        if c > r {
            Quaternion::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0), 0.0, 0.0)
        } else {
            Quaternion::ZERO
        }
    });
    (QMatrix::scalar(n, lam).add(&u), u)
}

fn defective_props(s: &mut Suite, input: &(QMatrix, QMatrix), cfg: &VerifyConfig) {
    let (t, u) = input;
    let tol = &cfg.tol;
    let norm = sc(t.norm());
    let r = (|| {
        let a = s_spectrum(t, tol)?;
        let b = s_spectrum(&t.add(u), tol)?;
        let sa: Vec<_> = a.spheres.iter().map(|e| e.sphere).collect();
        let sb: Vec<_> = b.spheres.iter().map(|e| e.sphere).collect();
        Ok(hausdorff_spheres(&sa, &sb) / norm)
    })();
    s.record("ops.commuting_nilpotent_shift", 1e-7, r);

    let r = (|| {
        let dec = spectral_decomposition(t, tol)?;
        let mut worst = dec.residuals.worst() / norm;
        for f in [IntrinsicSliceFunction::exp(), square(), cubic()] {
            let direct = qspectra_core::calculus::funcalc_auto(t, &f, tol)?;
            let taylor = taylor_funcalc(&dec, &f)?;
            worst = worst.max(direct.sub(&taylor).norm() / sc(direct.norm()));
        }
        Ok(worst)
    })();
    s.record("ops.defective_taylor_vs_contour", 1e-6, r);
}
