//! Eigenvalues of dense complex matrices: balancing, Householder
//! reduction to Hessenberg form and single-shift complex QR iteration.

use alloc::format;
use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)] // shadowed by inherent methods when std is linked
use num_traits::Float;

use super::ComplexMatrix;
use crate::{Error, Result};

type C = Complex64;

const EPS: f64 = f64::EPSILON;

/// All eigenvalues of `m`, repeated according to algebraic multiplicity.
///
/// The iteration budget is `30·n` QR sweeps in total; exceeding it yields
/// [`Error::Numeric`] with the unconverged window in the message.
pub fn complex_eigenvalues(m: &ComplexMatrix) -> Result<Vec<C>> {
    if !m.is_square() {
        return Err(Error::Dimension {
            expected: m.rows(),
            found: m.cols(),
        });
    }
    if !m.is_finite() {
        return Err(Error::domain("eigenvalues of a matrix with non-finite entries"));
    }
    let n = m.rows();
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut h = m.clone();
    balance(&mut h);
    hessenberg(&mut h);
    hessenberg_qr(&mut h)
}

/// Parlett–Reinsch diagonal scaling by powers of two.
fn balance(a: &mut ComplexMatrix) {
    let n = a.rows();
    let radix = 2.0f64;
    let mut done = false;
    while !done {
        done = true;
        for i in 0..n {
            let mut c = 0.0;
            let mut r = 0.0;
            for j in 0..n {
                if j != i {
                    c += a[(j, i)].l1_norm();
                    r += a[(i, j)].l1_norm();
                }
            }
            if c == 0.0 || r == 0.0 {
                continue;
            }
            let s = c + r;
            let mut f = 1.0;
            let mut cc = c;
            let rr = r;
            while cc < rr / radix {
                cc *= radix;
                f *= radix;
            }
            while cc > rr * radix {
                cc /= radix;
                f /= radix;
            }
            if (cc + rr / f) < 0.95 * s * f / f && f != 1.0 {
                done = false;
                for j in 0..n {
                    a[(i, j)] = a[(i, j)] / f;
                }
                for j in 0..n {
                    a[(j, i)] = a[(j, i)] * f;
                }
            }
        }
    }
}

/// In-place unitary similarity to upper Hessenberg form.
fn hessenberg(a: &mut ComplexMatrix) {
    let n = a.rows();
    if n < 3 {
        return;
    }
    for k in 0..n - 2 {
        // reflector H = I − τ v vᴴ with v₀ = 1 and Hᴴ x = β e₀
        let xnorm: f64 = (k + 2..n).map(|r| a[(r, k)].norm_sqr()).sum::<f64>().sqrt();
        if xnorm == 0.0 {
            continue;
        }
        let alpha = a[(k + 1, k)];
        let beta = -(alpha.norm().hypot(xnorm)).copysign(alpha.re);
        let tau = C::new((beta - alpha.re) / beta, -alpha.im / beta);
        let scale = C::new(1.0, 0.0) / (alpha - beta);
        let mut v: Vec<C> = (k + 1..n).map(|r| a[(r, k)] * scale).collect();
        v[0] = C::new(1.0, 0.0);
        for c in k..n {
            let d: C = v
                .iter()
                .enumerate()
                .map(|(i, vi)| vi.conj() * a[(k + 1 + i, c)])
                .sum();
            let d = tau.conj() * d;
            for (i, vi) in v.iter().enumerate() {
                a[(k + 1 + i, c)] -= *vi * d;
            }
        }
        for r in 0..n {
            let d: C = v
                .iter()
                .enumerate()
                .map(|(i, vi)| a[(r, k + 1 + i)] * vi)
                .sum();
            let d = d * tau;
            for (i, vi) in v.iter().enumerate() {
                a[(r, k + 1 + i)] -= d * vi.conj();
            }
        }
        a[(k + 1, k)] = C::new(beta, 0.0);
        for r in k + 2..n {
            a[(r, k)] = C::new(0.0, 0.0);
        }
    }
}

/// Givens rotation `(c, s)` with `[c, s; -s̄, c]·[a; b] = [r; 0]`.
fn givens(a: C, b: C) -> (f64, C) {
    let an = a.norm();
    let bn = b.norm();
    if bn == 0.0 {
        return (1.0, C::new(0.0, 0.0));
    }
    if an == 0.0 {
        return (0.0, b.conj() / bn);
    }
    let r = an.hypot(bn);
    let c = an / r;
    let s = (a / an) * b.conj() / r;
    (c, s)
}

fn wilkinson_shift(a: C, b: C, c: C, d: C) -> C {
    let half = (a - d) * 0.5;
    let disc = (half * half + b * c).sqrt();
    let m1 = (a + d) * 0.5 + disc;
    let m2 = (a + d) * 0.5 - disc;
    if (m1 - d).norm() <= (m2 - d).norm() {
        m1
    } else {
        m2
    }
}

/// Both eigenvalues of `[a, b; c, d]`; the root of smaller modulus comes
/// from the determinant to avoid cancellation.
fn eig2(a: C, b: C, c: C, d: C) -> (C, C) {
    let mean = (a + d) * 0.5;
    let half = (a - d) * 0.5;
    let disc = (half * half + b * c).sqrt();
    let (big, small) = if (mean + disc).norm() >= (mean - disc).norm() {
        (mean + disc, mean - disc)
    } else {
        (mean - disc, mean + disc)
    };
    let det = a * d - b * c;
    if big.norm() == 0.0 || small.norm() > 1e-3 * big.norm() {
        (big, small)
    } else {
        (big, det / big)
    }
}

fn hessenberg_qr(h: &mut ComplexMatrix) -> Result<Vec<C>> {
    let n = h.rows();
    let mut eig = alloc::vec![C::new(0.0, 0.0); n];
    let cap = 30 * n;
    let mut sweeps = 0usize;
    let mut its = 0usize;
    // deterministic stand-in for random exceptional shifts
    let mut lcg: u64 = 0x2545_F491_4F6C_DD1D;
    let mut hi = n - 1;
    loop {
        if hi == 0 {
            eig[0] = h[(0, 0)];
            break;
        }
        let mut l = hi;
        while l > 0 {
            let sub = h[(l, l - 1)].norm();
            let diag = h[(l - 1, l - 1)].norm() + h[(l, l)].norm();
            if sub <= EPS * diag || sub < f64::MIN_POSITIVE {
                h[(l, l - 1)] = C::new(0.0, 0.0);
                break;
            }
            l -= 1;
        }
        if l == hi {
            eig[hi] = h[(hi, hi)];
            hi -= 1;
            its = 0;
            continue;
        }
        if l + 1 == hi {
            let (a, b) = eig2(h[(l, l)], h[(l, hi)], h[(hi, l)], h[(hi, hi)]);
            eig[l] = a;
            eig[hi] = b;
            if l == 0 {
                break;
            }
            hi = l - 1;
            its = 0;
            continue;
        }
        sweeps += 1;
        its += 1;
        if sweeps > cap {
            return Err(Error::Numeric(format!(
                "QR iteration did not converge after {cap} sweeps (active window {l}..={hi}, subdiagonal {:.3e})",
                h[(hi, hi - 1)].norm()
            )));
        }
        let shift = if its % 10 == 0 {
            lcg = lcg
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            let r = ((lcg >> 11) as f64) / ((1u64 << 53) as f64);
            let mag = h[(hi, hi - 1)].norm() + if hi >= 2 { h[(hi - 1, hi - 2)].norm() } else { 0.0 };
            h[(hi, hi)] + C::new(mag * (0.75 + 0.5 * r), mag * (r - 0.5))
        } else {
            wilkinson_shift(
                h[(hi - 1, hi - 1)],
                h[(hi - 1, hi)],
                h[(hi, hi - 1)],
                h[(hi, hi)],
            )
        };
        qr_sweep(h, l, hi, shift);
    }
    Ok(eig)
}

/// One explicit shifted QR step on the active window `lo..=hi`.
fn qr_sweep(h: &mut ComplexMatrix, lo: usize, hi: usize, shift: C) {
    for k in lo..=hi {
        h[(k, k)] -= shift;
    }
    let mut rots: Vec<(f64, C)> = Vec::with_capacity(hi - lo);
    for k in lo..hi {
        let (c, s) = givens(h[(k, k)], h[(k + 1, k)]);
        for j in k..=hi {
            let x = h[(k, j)];
            let y = h[(k + 1, j)];
            h[(k, j)] = x * c + s * y;
            h[(k + 1, j)] = -s.conj() * x + y * c;
        }
        h[(k + 1, k)] = C::new(0.0, 0.0);
        rots.push((c, s));
    }
    for (idx, &(c, s)) in rots.iter().enumerate() {
        let k = lo + idx;
        let top = (k + 2).min(hi);
        for i in lo..=top {
            let x = h[(i, k)];
            let y = h[(i, k + 1)];
            h[(i, k)] = x * c + y * s.conj();
            h[(i, k + 1)] = -x * s + y * c;
        }
    }
    for k in lo..=hi {
        h[(k, k)] += shift;
    }
}
