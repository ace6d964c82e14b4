//! Acceptance suite: twelve criteria, one PASS/FAIL line each.
//!
//! Reference values come from independent oracles where one exists:
//! nalgebra's Schur form and SVD on an embedding assembled here, closed-form
//! quaternion exponentials, and eigenprojectors built from null vectors.

use std::f64::consts::FRAC_1_SQRT_2;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;

use nalgebra::{Complex, DMatrix};
use qspectra::{fnspec, random};
use qspectra_core::calculus::{auto_contour, funcalc, funcalc_auto, unit_independence_check, Circle};
use qspectra_core::decomposition::{
    cex_truncation, compare_decompositions, complex_equivalence_check, pushforward_decomposition,
    spectral_decomposition, taylor_funcalc,
};
use qspectra_core::linalg::{hausdorff, hausdorff_spheres, s_spectrum};
use qspectra_core::resolvent::sresolvent_equation_residual;
use qspectra_core::slice::cauchy_reconstruct;
use qspectra_core::spectral::{eigensphere_kernel, eigensphere_split};
use qspectra_core::{
    Complex64 as C, ContourSpec, ImaginaryUnit, IntrinsicSliceFunction, QMatrix, QVector, QuadratureConfig,
    Quaternion, SpectralDecomposition, SpectralSphere, Tolerances,
};
use rand::Rng;

type CM = DMatrix<Complex<f64>>;

fn tol() -> Tolerances {
    Tolerances::default()
}

fn sc(x: f64) -> f64 {
    x.max(1.0)
}

/// `[[A, −B], [B̄, Ā]]` with `A = w + x i`, `B = y + z i`, built entrywise.
fn embedding(t: &QMatrix) -> CM {
    let n = t.n();
    CM::from_fn(2 * n, 2 * n, |r, c| {
        let q = t[(r % n, c % n)];
        let a = Complex::new(q.w, q.x);
        let b = Complex::new(q.y, q.z);
        match (r < n, c < n) {
            (true, true) => a,
            (true, false) => -b,
            (false, true) => b.conj(),
            (false, false) => a.conj(),
        }
    })
}

/// Inverse of [`embedding`] read from the left block column.
fn quaternionic(m: &CM) -> QMatrix {
    let n = m.nrows() / 2;
    QMatrix::from_fn(n, |r, c| {
        let a = m[(r, c)];
        let b = m[(r + n, c)].conj();
        Quaternion::new(a.re, a.im, b.re, b.im)
    })
}

fn oracle_eigenvalues(t: &QMatrix) -> Vec<C> {
    embedding(t)
        .schur()
        .eigenvalues()
        .expect("complex Schur form is triangular")
        .iter()
        .map(|z| C::new(z.re, z.im))
        .collect()
}

fn op_norm(m: &CM) -> f64 {
    m.singular_values().max()
}

fn trace_points(spheres: &[SpectralSphere]) -> Vec<C> {
    spheres
        .iter()
        .flat_map(|s| [C::new(s.u, s.v), C::new(s.u, -s.v)])
        .collect()
}

fn spheres_of(t: &QMatrix) -> Vec<SpectralSphere> {
    s_spectrum(t, &tol())
        .expect("spectrum")
        .spheres
        .iter()
        .map(|e| e.sphere)
        .collect()
}

/// Quaternionic exponential in closed form.
fn qexp(x: Quaternion) -> Quaternion {
    let r = x.imag_norm();
    let e = x.w.exp();
    if r == 0.0 {
        return Quaternion::real(e);
    }
    let k = e * r.sin() / r;
    Quaternion::new(e * r.cos(), k * x.x, k * x.y, k * x.z)
}

/// Stem images `(Re f(z), |Im f(z)|)` of a sphere set.
fn image(spheres: &[SpectralSphere], f: fn(C) -> C) -> Vec<SpectralSphere> {
    spheres
        .iter()
        .map(|s| {
            let w = f(C::new(s.u, s.v));
            SpectralSphere { u: w.re, v: w.im.abs() }
        })
        .collect()
}

struct Outcome {
    worst: f64,
    bound: f64,
    detail: String,
}

impl Outcome {
    fn new(worst: f64, bound: f64, detail: impl Into<String>) -> Self {
        Outcome {
            worst,
            bound,
            detail: detail.into(),
        }
    }

    fn pass(&self) -> bool {
        self.worst <= self.bound
    }
}

/// Several normalized residuals under one line: the worst ratio to its
/// own bound must not exceed 1.
#[derive(Default)]
struct Ratios(Vec<(String, f64, f64)>);

impl Ratios {
    fn push(&mut self, name: &str, value: f64, bound: f64) {
        match self.0.iter_mut().find(|(n, _, _)| n == name) {
            Some(e) => e.1 = e.1.max(value),
            None => self.0.push((name.to_string(), value, bound)),
        }
    }

    fn outcome(self) -> Outcome {
        let worst = self
            .0
            .iter()
            .map(|(_, v, b)| if v.is_nan() { f64::INFINITY } else { v / b })
            .fold(0.0, f64::max);
        let detail = self
            .0
            .iter()
            .map(|(n, v, b)| format!("{n} {v:.2e}/{b:.0e}"))
            .collect::<Vec<_>>()
            .join(", ");
        Outcome::new(worst, 1.0, detail)
    }
}

/// Decompositions collected by criteria 1 to 4 for criterion 6.
#[derive(Default)]
struct Pool {
    items: Vec<(QMatrix, SpectralDecomposition)>,
}

impl Pool {
    fn add(&mut self, t: &QMatrix) {
        let dec = spectral_decomposition(t, &tol()).expect("decomposition");
        self.items.push((t.clone(), dec));
    }
}

fn criterion_1(pool: &mut Pool) -> Outcome {
    let mut rng = random::rng(7);
    let mut worst: f64 = 0.0;
    for _ in 0..50 {
        let n = rng.random_range(2..=8);
        let t = random::qmatrix(&mut rng, n);
        let eig = oracle_eigenvalues(&t);
        let pts = trace_points(&spheres_of(&t));
        worst = worst.max(hausdorff(&eig, &pts) / sc(op_norm(&embedding(&t))));
        pool.add(&t);
    }
    Outcome::new(worst, 1e-8, "50 matrices, dims 2-8, seed 7, relative to max(1, |T|)")
}

fn criterion_2(pool: &mut Pool) -> Outcome {
    let (e1, e2) = (Quaternion::E1, Quaternion::E2);
    let ts = [
        QMatrix::from_diagonal(&[e1, e1]),
        QMatrix::from_diagonal(&[e1, e2]),
        QMatrix::from_diagonal(&[e2, e2]),
    ];
    let mut r = Ratios::default();
    let decs: Vec<SpectralDecomposition> = ts
        .iter()
        .map(|t| spectral_decomposition(t, &tol()).expect("decomposition"))
        .collect();
    for (t, d) in ts.iter().zip(&decs) {
        let spec = s_spectrum(t, &tol()).expect("spectrum");
        let ok = spec.spheres.len() == 1 && spec.spheres[0].mult == 2;
        r.push("sphere shape", if ok { 0.0 } else { f64::INFINITY }, 1.0);
        let s = spec.spheres[0].sphere;
        r.push("sphere (0,1)", s.u.abs().max((s.v - 1.0).abs()), 1e-12);
        // each T squares to −I, so it is its own orientation and E = I
        r.push("J = T", d.j().sub(t).norm(), 1e-9);
        r.push("E = I", d.e().projection(0).sub(&QMatrix::identity(2)).norm(), 1e-9);
        pool.add(t);
    }
    let mut min_gap = f64::INFINITY;
    for a in 0..3 {
        for b in a + 1..3 {
            r.push(
                "E_a = E_b",
                decs[a].e().projection(0).sub(decs[b].e().projection(0)).norm(),
                1e-9,
            );
            min_gap = min_gap.min(decs[a].j().sub(decs[b].j()).norm());
        }
    }
    // J gap must exceed 0.5: encode as 0.5/gap ≤ 1
    r.push("0.5/min|J_a-J_b|", 0.5 / min_gap, 1.0 - 1e-12);
    r.outcome()
}

fn criterion_3(pool: &mut Pool) -> Outcome {
    let mut rng = random::rng(3);
    let square = fnspec::parse("poly:0,0,1").expect("spec");
    let exp = fnspec::parse("exp").expect("spec");
    let q = QuadratureConfig::default();
    let mut r = Ratios::default();
    for _ in 0..20 {
        let n = rng.random_range(2..=6);
        let t = random::qmatrix(&mut rng, n);
        let spec = s_spectrum(&t, &tol()).expect("spectrum");
        let contour = auto_contour(&spec, Some(&square), &tol()).expect("contour");
        let f2 = funcalc(&t, &square, &contour, &q, &tol()).expect("funcalc");
        let direct = t.mul(&t);
        r.push("s^2 vs T^2", f2.sub(&direct).norm() / sc(direct.norm()), 1e-8);

        let contour = auto_contour(&spec, Some(&exp), &tol()).expect("contour");
        let fe = funcalc(&t, &exp, &contour, &q, &tol()).expect("funcalc");
        let dec = spectral_decomposition(&t, &tol()).expect("decomposition");
        let taylor = taylor_funcalc(&dec, &exp).expect("taylor");
        r.push("exp contour vs taylor", fe.sub(&taylor).norm() / sc(fe.norm()), 1e-6);
        pool.items.push((t, dec));
    }
    r.outcome()
}

fn criterion_4(pool: &mut Pool) -> Outcome {
    let mut rng = random::rng(4);
    let units = [
        ImaginaryUnit::new(0.0, 1.0, 0.0).expect("unit"),
        ImaginaryUnit::new(FRAC_1_SQRT_2, 0.0, FRAC_1_SQRT_2).expect("unit"),
    ];
    let fs = [IntrinsicSliceFunction::exp(), fnspec::parse("poly:0,0,1").expect("spec")];
    let mut worst: f64 = 0.0;
    for _ in 0..5 {
        let n = rng.random_range(2..=5);
        let t = random::qmatrix(&mut rng, n);
        for f in &fs {
            for &i in &units {
                worst = worst.max(unit_independence_check(&t, f, i, &tol()).expect("unit check"));
            }
        }
        pool.add(&t);
    }
    Outcome::new(worst, 1e-8, "5 matrices x {exp, s^2} x {e2, (e1+e3)/sqrt2}")
}

fn criterion_5() -> Outcome {
    let mut rng = random::rng(5);
    let mut worst: f64 = 0.0;
    for _ in 0..10 {
        let n = rng.random_range(2..=6);
        let t = random::qmatrix(&mut rng, n);
        let spec = s_spectrum(&t, &tol()).expect("spectrum");
        let norm = t.norm();
        let margin = 0.05 * sc(norm);
        let mut pairs = 0;
        while pairs < 20 {
            let s = random::admissible_point(&mut rng, &spec, 1.5 * sc(norm), margin);
            let x = random::admissible_point(&mut rng, &spec, 1.5 * sc(norm), margin);
            if Quaternion::same_sphere(s, x, margin) {
                continue;
            }
            let res = sresolvent_equation_residual(&t, s, x, &tol()).expect("admissible pair");
            worst = worst.max(res / norm);
            pairs += 1;
        }
    }
    Outcome::new(worst, 1e-9, "10 matrices x 20 pairs, relative to |T|")
}

/// Axioms recomputed from the matrices themselves.
fn criterion_6(pool: &Pool) -> Outcome {
    let mut r = Ratios::default();
    for (t, dec) in &pool.items {
        let n = t.n();
        let j = dec.j();
        let support = dec.e().support();
        let nonreal = support
            .iter()
            .filter(|(s, _)| !s.is_real())
            .fold(QMatrix::zeros(n), |acc, (_, p)| acc.add(p));
        r.push("-J^2 = E(H\\R)", j.mul(j).add(&nonreal).norm() / sc(j.norm()).powi(2), 1e-9);
        for (a, (_, pa)) in support.iter().enumerate() {
            let ka = sc(pa.norm());
            for (b, (_, pb)) in support.iter().enumerate() {
                let target = if a == b { pa.clone() } else { QMatrix::zeros(n) };
                r.push("E_a E_b = d_ab E_a", pa.mul(pb).sub(&target).norm() / (ka * sc(pb.norm())), 1e-9);
            }
            r.push("T E = E T", t.commutator_norm(pa) / (sc(t.norm()) * ka), 1e-9);
            r.push("J E = E J", j.commutator_norm(pa) / (sc(j.norm()) * ka), 1e-9);
        }
        let total = support.iter().fold(QMatrix::zeros(n), |acc, (_, p)| acc.add(p));
        r.push("sum E = I", total.sub(&QMatrix::identity(n)).norm(), 1e-9);
        r.push("T J = J T", t.commutator_norm(j) / (sc(t.norm()) * sc(j.norm())), 1e-9);
    }
    let mut o = r.outcome();
    o.detail = format!("{} decompositions; {}", pool.items.len(), o.detail);
    o
}

/// `λ I + U` with `λ, U` in `C_{e1}` and `U` strictly upper triangular:
/// the radical part is exactly `U`.
fn jordan_type(rng: &mut random::SeededRng, n: usize) -> (QMatrix, QMatrix) {
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

fn criterion_7(pool: &Pool) -> Outcome {
    let mut r = Ratios::default();
    let mut check = |t: &QMatrix, dec: &SpectralDecomposition| {
        let n = t.n();
        let norm = sc(t.norm());
        r.push("|N^n|", dec.radical.pow(n as u32).norm() / norm.powi(n as i32), 1e-9);
        r.push(
            "SN - NS",
            dec.scalar.commutator_norm(&dec.radical) / (sc(dec.scalar.norm()) * sc(dec.radical.norm())),
            1e-9,
        );
        r.push("S + N - T", dec.operator().sub(t).norm() / norm, 1e-9);
        let d = hausdorff_spheres(&spheres_of(t), &spheres_of(&dec.scalar));
        r.push("sigma(T) vs sigma(S)", d / norm, 1e-8);
    };
    for (t, dec) in &pool.items {
        check(t, dec);
    }
    let mut rng = random::rng(77);
    let mut r2 = Ratios::default();
    for n in 2..=6 {
        let (t, u) = jordan_type(&mut rng, n);
        let dec = spectral_decomposition(&t, &tol()).expect("decomposition");
        check(&t, &dec);
        r2.push("N = U", dec.radical.sub(&u).norm() / sc(u.norm()), 1e-9);
        r2.push("type_m = n-1", (dec.type_m as f64 - (n - 1) as f64).abs(), 0.5);
    }
    for (name, v, b) in r2.0 {
        r.push(&name, v, b);
    }
    r.outcome()
}

/// Unit vector spanning the numerical kernel of `a`, from the right
/// singular vectors (the left factor of nalgebra's complex SVD is less
/// reliable, so left null vectors come from `aᴴ` instead).
fn null_vector(a: &CM) -> nalgebra::DVector<Complex<f64>> {
    let svd = a.clone().svd(false, true);
    let k = svd
        .singular_values
        .iter()
        .enumerate()
        .min_by(|x, y| x.1.total_cmp(y.1))
        .map(|(k, _)| k)
        .expect("nonempty");
    svd.v_t.as_ref().expect("v").row(k).adjoint()
}

/// Eigenprojector `r lᴴ / (lᴴ r)` for a simple eigenvalue.
fn eigenprojector(m: &CM, lambda: Complex<f64>) -> CM {
    let d = m.nrows();
    let shifted = m - CM::identity(d, d) * lambda;
    let right = null_vector(&shifted);
    let left = null_vector(&shifted.adjoint());
    let denom = (left.adjoint() * &right)[(0, 0)];
    (&right * left.adjoint()) / denom
}

fn criterion_8(pool: &Pool) -> Outcome {
    let mut r = Ratios::default();
    let mut rng = random::rng(8);
    let mut done = 0;
    while done < 10 {
        let n = rng.random_range(2..=6);
        let t = random::qmatrix(&mut rng, n);
        let m = embedding(&t);
        let eig = oracle_eigenvalues(&t);
        if eig.iter().any(|z| z.im.abs() < 1e-3) {
            continue;
        }
        let dec = spectral_decomposition(&t, &tol()).expect("decomposition");
        let d = 2 * n;
        let mut plus = CM::zeros(d, d);
        let mut minus = CM::zeros(d, d);
        let mut e_err: f64 = 0.0;
        for (sphere, p) in dec.e().support() {
            let mut ek = CM::zeros(d, d);
            for z in eig.iter().filter(|z| (z.re - sphere.u).hypot(z.im.abs() - sphere.v) < 1e-6) {
                let pz = eigenprojector(&m, Complex::new(z.re, z.im));
                if z.im > 0.0 {
                    plus += &pz;
                } else {
                    minus += &pz;
                }
                ek += pz;
            }
            e_err = e_err.max(quaternionic(&ek).sub(p).norm() / sc(p.norm()));
        }
        let j = quaternionic(&((plus - minus) * Complex::new(0.0, 1.0)));
        r.push("E vs eigenprojectors", e_err, 1e-8);
        r.push("J vs eigenprojectors", j.sub(dec.j()).norm() / sc(j.norm()), 1e-8);
        let eq = complex_equivalence_check(&t, &tol()).expect("equivalence");
        r.push("complex route", eq.worst(), 1e-8);
        let again = spectral_decomposition(&t, &tol()).expect("decomposition");
        r.push("repeat run", compare_decompositions(&dec, &again).worst(), 1e-8);
        done += 1;
    }
    for (t, _) in pool.items.iter().filter(|(t, _)| t.n() == 2).take(3) {
        let eq = complex_equivalence_check(t, &tol()).expect("equivalence");
        r.push("complex route", eq.worst(), 1e-8);
    }
    r.outcome()
}

fn criterion_9() -> Outcome {
    let mut rng = random::rng(9);
    let mut worst: f64 = 0.0;
    let mut matrices = 0;
    let mut vectors = 0;
    while matrices < 10 {
        let n = rng.random_range(2..=6);
        let t = random::qmatrix(&mut rng, n);
        let spec = s_spectrum(&t, &tol()).expect("spectrum");
        let nonreal: Vec<_> = spec.spheres.iter().filter(|e| !e.sphere.is_real()).collect();
        if nonreal.is_empty() {
            continue;
        }
        let norm = sc(t.norm());
        for e in nonreal {
            let basis = eigensphere_kernel(&t, e.sphere, &tol());
            assert!(!basis.is_empty(), "empty eigensphere kernel");
            // basis vectors plus random right-linear combinations
            let mut samples: Vec<QVector> = basis.clone();
            for _ in 0..3 {
                let combo = basis.iter().fold(QVector::zeros(n), |acc, b| {
                    acc.add(&b.right_mul(random::quaternion(&mut rng)))
                });
                samples.push(combo);
            }
            for v in samples {
                let i = random::unit(&mut rng);
                let (u, w) = (e.sphere.u, e.sphere.v);
                let (v1, v2) = eigensphere_split(&t, u, w, i, &v).expect("split");
                let si = i.point(u, w);
                let scale = norm * sc(v.norm());
                worst = worst
                    .max(v1.add(&v2).sub(&v).norm() / scale)
                    .max(t.apply(&v1).sub(&v1.right_mul(si)).norm() / scale)
                    .max(t.apply(&v2).sub(&v2.right_mul(si.conj())).norm() / scale);
                vectors += 1;
            }
        }
        matrices += 1;
    }
    Outcome::new(worst, 1e-9, format!("{matrices} matrices, {vectors} kernel vectors"))
}

fn criterion_10() -> Outcome {
    let rows = cex_truncation(50, &tol()).expect("cex");
    let mut r = Ratios::default();
    r.push("rows", (rows.len() as f64 - 50.0).abs(), 0.5);
    for row in &rows {
        let m = row.m as f64;
        // independent norm of J_m = [[e1, 2m e1], [0, -e1]]
        let e1 = Quaternion::E1;
        let jm = QMatrix::from_rows(&[vec![e1, e1 * (2.0 * m)], vec![Quaternion::ZERO, -e1]]).expect("block");
        let oracle = op_norm(&embedding(&jm));
        r.push("reported vs SVD norm", (row.j_norm - oracle).abs() / oracle, 1e-12);
        r.push("2m/|J_m|", 2.0 * m / row.j_norm, 1.0);
        if row.m >= 10 {
            let ratio = row.j_norm / m;
            r.push("|J_m|/m - 2 (m>=10)", ratio - 2.0, 0.2);
        }
    }
    r.outcome()
}

fn criterion_11() -> Outcome {
    let mut rng = random::rng(11);
    let exp = IntrinsicSliceFunction::exp();
    let cubic = fnspec::parse("poly:0,-2,0,1").expect("spec");
    let contour = ContourSpec::new(vec![Circle::new(C::new(0.0, 0.0), 2.5).expect("circle")]);
    let mut rep: f64 = 0.0;
    let mut cauchy: f64 = 0.0;
    for _ in 0..1000 {
        let x = random::quaternion(&mut rng);
        let i = random::unit(&mut rng);
        let ex = qexp(x);
        let cx = x * x * x - x * 2.0;
        let a = exp.eval_via_representation(x, i).expect("representation");
        let b = cubic.eval_via_representation(x, i).expect("representation");
        rep = rep.max(a.dist(ex) / sc(ex.norm())).max(b.dist(cx) / sc(cx.norm()));
        let c = cauchy_reconstruct(&exp, x, &contour, i, 128).expect("reconstruction");
        cauchy = cauchy.max(c.dist(ex) / sc(ex.norm()));
    }
    let mut r = Ratios::default();
    r.push("representation", rep, 1e-10);
    r.push("cauchy", cauchy, 1e-6);
    r.outcome()
}

fn criterion_12() -> Outcome {
    let mut rng = random::rng(12);
    let fs: [(&str, fn(C) -> C); 3] = [
        ("poly:0,0,1", |z| z * z),
        ("poly:0,-2,0,1", |z| z * z * z - 2.0 * z),
        ("exp", |z| z.exp()),
    ];
    let mut r = Ratios::default();
    let mut merges = 0;
    for _ in 0..20 {
        let n = rng.random_range(2..=5);
        let t = random::qmatrix(&mut rng, n);
        let dec = spectral_decomposition(&t, &tol()).expect("decomposition");
        let spheres = spheres_of(&t);
        for (spec, stem) in fs {
            let f = fnspec::parse(spec).expect("spec");
            let ft = funcalc_auto(&t, &f, &tol()).expect("funcalc");
            let scale = sc(t.norm()).max(ft.norm());
            let d = hausdorff_spheres(&image(&spheres, stem), &spheres_of(&ft));
            r.push("spectral mapping", d / scale, 1e-7);

            let push = pushforward_decomposition(&dec, &f, &tol()).expect("pushforward");
            merges += push.merges.len();
            let direct = spectral_decomposition(&ft, &tol()).expect("direct");
            let dist = compare_decompositions(&push.decomposition, &direct).worst();
            r.push("pushforward vs direct", dist / scale, 1e-8);
        }
    }
    let mut o = r.outcome();
    o.detail = format!("{}; {merges} merged spheres", o.detail);
    o
}

fn run(name: &str, f: impl FnOnce() -> Outcome) -> bool {
    let start = std::time::Instant::now();
    let result = catch_unwind(AssertUnwindSafe(f));
    let secs = start.elapsed().as_secs_f64();
    match result {
        Ok(o) => {
            let tag = if o.pass() { "PASS" } else { "FAIL" };
            println!(
                "[{tag}] {name}: worst {:.3e} vs bound {:.0e} ({}) [{secs:.1}s]",
                o.worst, o.bound, o.detail
            );
            o.pass()
        }
        Err(e) => {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            println!("[FAIL] {name}: panicked: {msg} [{secs:.1}s]");
            false
        }
    }
}

fn main() -> ExitCode {
    let mut pool = Pool::default();
    let mut ok = true;
    ok &= run("01 embedding spectrum equals sphere traces", || criterion_1(&mut pool));
    ok &= run("02 diagonal unit triple shares E, differs in J", || criterion_2(&mut pool));
    ok &= run("03 calculus consistency (T^2, contour vs taylor)", || criterion_3(&mut pool));
    ok &= run("04 independence of the reference unit", || criterion_4(&mut pool));
    ok &= run("05 S-resolvent equation", criterion_5);
    ok &= run("06 spectral system axioms", || criterion_6(&pool));
    ok &= run("07 scalar plus radical decomposition", || criterion_7(&pool));
    ok &= run("08 uniqueness against complex eigenprojectors", || criterion_8(&pool));
    ok &= run("09 eigensphere splitting", criterion_9);
    ok &= run("10 counterexample orientation growth", criterion_10);
    ok &= run("11 representation and Cauchy formulas", criterion_11);
    ok &= run("12 spectral mapping and pushforward", criterion_12);
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
