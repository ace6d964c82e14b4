use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Index, IndexMut};

use num_complex::Complex64;
#[allow(unused_imports)] // shadowed by inherent methods when std is linked
use num_traits::Float;

use crate::{Error, Result};

type C = Complex64;

const ZERO: C = C::new(0.0, 0.0);
const ONE: C = C::new(1.0, 0.0);

/// Dense row-major complex matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<C>,
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ComplexMatrix {
            rows,
            cols,
            data: vec![ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for k in 0..n {
            m[(k, k)] = ONE;
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        ComplexMatrix { rows, cols, data }
    }

    pub fn from_diagonal(d: &[C]) -> Self {
        let mut m = Self::zeros(d.len(), d.len());
        for (k, &x) in d.iter().enumerate() {
            m[(k, k)] = x;
        }
        m
    }

    /// Builds a matrix from its columns, all of equal length.
    pub fn from_columns(cols: &[Vec<C>]) -> Self {
        let rows = cols.first().map_or(0, Vec::len);
        Self::from_fn(rows, cols.len(), |r, c| cols[c][r])
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn column(&self, c: usize) -> Vec<C> {
        (0..self.rows).map(|r| self[(r, c)]).collect()
    }

    pub fn set_column(&mut self, c: usize, v: &[C]) {
        for (r, &x) in v.iter().enumerate() {
            self[(r, c)] = x;
        }
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn mul(&self, other: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(r, k)];
                if a == ZERO {
                    continue;
                }
                let row = &other.data[k * other.cols..(k + 1) * other.cols];
                let dst = &mut out.data[r * other.cols..(r + 1) * other.cols];
                for (d, &b) in dst.iter_mut().zip(row) {
                    *d += a * b;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[C]) -> Vec<C> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        (0..self.rows)
            .map(|r| {
                self.data[r * self.cols..(r + 1) * self.cols]
                    .iter()
                    .zip(v)
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    pub fn add(&self, other: &ComplexMatrix) -> ComplexMatrix {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &ComplexMatrix) -> ComplexMatrix {
        self.zip_with(other, |a, b| a - b)
    }

    fn zip_with(&self, other: &ComplexMatrix, f: impl Fn(C, C) -> C) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }

    pub fn scale(&self, s: C) -> ComplexMatrix {
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&a| a * s).collect(),
        }
    }

    pub fn adjoint(&self) -> ComplexMatrix {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].conj())
    }

    pub fn norm_fro(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Spectral norm `σ_max`.
    ///
    /// Power iteration on the Gram matrix `MᴴM`, accelerated by repeated
    /// squaring so that close leading singular values still converge.
    pub fn norm2(&self) -> f64 {
        let fro = self.norm_fro();
        if fro == 0.0 || self.rows == 0 || self.cols == 0 {
            return 0.0;
        }
        let a = self.scale(C::new(1.0 / fro, 0.0));
        let gram = a.adjoint().mul(&a);
        let mut g = gram.clone();
        for _ in 0..24 {
            let sq = g.mul(&g);
            let s = sq.max_abs();
            if s == 0.0 || !s.is_finite() {
                break;
            }
            g = sq.scale(C::new(1.0 / s, 0.0));
        }
        // the dominant column of a high Gram power approximates the top
        // right singular vector
        let best = (0..g.cols)
            .max_by(|&i, &j| {
                let ni: f64 = g.column(i).iter().map(|z| z.norm_sqr()).sum();
                let nj: f64 = g.column(j).iter().map(|z| z.norm_sqr()).sum();
                ni.total_cmp(&nj)
            })
            .unwrap_or(0);
        let mut v = g.column(best);
        let mut lambda = 0.0;
        for _ in 0..64 {
            let nv = vec_norm(&v);
            if nv == 0.0 {
                break;
            }
            v.iter_mut().for_each(|z| *z /= nv);
            let w = gram.mul_vec(&v);
            let next: f64 = v.iter().zip(&w).map(|(a, b)| (a.conj() * b).re).sum();
            v = w;
            if (next - lambda).abs() <= 1e-16 * next {
                lambda = next;
                break;
            }
            lambda = next;
        }
        let col_max = (0..a.cols)
            .map(|c| vec_norm(&a.column(c)))
            .fold(0.0, f64::max);
        lambda.max(0.0).sqrt().max(col_max) * fro
    }

    pub fn lu(&self) -> Result<Lu> {
        Lu::new(self)
    }

    pub fn inverse(&self) -> Result<ComplexMatrix> {
        let lu = self.lu()?;
        Ok(lu.inverse())
    }

    /// Singular values in decreasing order.
    pub fn singular_values(&self) -> Vec<f64> {
        self.svd_jacobi(false).0
    }

    /// Right singular vectors with singular values at most `threshold`,
    /// i.e. an orthonormal basis of the numerical kernel.
    pub fn kernel_basis(&self, threshold: f64) -> Vec<Vec<C>> {
        let (sigma, v) = self.svd_jacobi(true);
        let v = v.expect("vectors requested");
        let mut out = Vec::new();
        for (k, &s) in sigma.iter().enumerate() {
            if s <= threshold {
                out.push(v.column(k));
            }
        }
        // a wide matrix has a kernel of at least cols - rows
        out
    }

    /// Numerical rank with the given singular-value threshold.
    pub fn rank(&self, threshold: f64) -> usize {
        self.singular_values().iter().filter(|&&s| s > threshold).count()
    }

    /// One-sided (Hestenes) Jacobi SVD. Returns singular values sorted
    /// decreasingly and, on request, the matching right singular vectors
    /// as columns.
    fn svd_jacobi(&self, want_v: bool) -> (Vec<f64>, Option<ComplexMatrix>) {
        let (m, n) = (self.rows, self.cols);
        // work on columns of a (m x n), padded to square when wide so the
        // kernel directions show up as zero columns
        let rows = m.max(n);
        let mut a = ComplexMatrix::zeros(rows, n);
        for r in 0..m {
            for c in 0..n {
                a[(r, c)] = self[(r, c)];
            }
        }
        let mut v = if want_v {
            Some(ComplexMatrix::identity(n))
        } else {
            None
        };
        for _sweep in 0..80 {
            let mut off = 0.0f64;
            for p in 0..n {
                for q in p + 1..n {
                    let mut alpha = 0.0;
                    let mut beta = 0.0;
                    let mut gamma = ZERO;
                    for r in 0..rows {
                        let ap = a[(r, p)];
                        let aq = a[(r, q)];
                        alpha += ap.norm_sqr();
                        beta += aq.norm_sqr();
                        gamma += ap.conj() * aq;
                    }
                    let g = gamma.norm();
                    if g == 0.0 || g <= 1e-15 * (alpha * beta).sqrt() {
                        continue;
                    }
                    off = off.max(g / (alpha * beta).sqrt());
                    let phase = gamma / g;
                    let zeta = (beta - alpha) / (2.0 * g);
                    let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                    let c = 1.0 / (1.0 + t * t).sqrt();
                    let s = c * t;
                    for r in 0..rows {
                        let ap = a[(r, p)];
                        let aq = a[(r, q)] * phase.conj();
                        a[(r, p)] = ap * c - aq * s;
                        a[(r, q)] = ap * s + aq * c;
                    }
                    if let Some(v) = v.as_mut() {
                        for r in 0..n {
                            let vp = v[(r, p)];
                            let vq = v[(r, q)] * phase.conj();
                            v[(r, p)] = vp * c - vq * s;
                            v[(r, q)] = vp * s + vq * c;
                        }
                    }
                }
            }
            if off <= 1e-15 {
                break;
            }
        }
        let mut sigma: Vec<(f64, usize)> = (0..n)
            .map(|c| (vec_norm(&a.column(c)), c))
            .collect();
        sigma.sort_by(|x, y| y.0.total_cmp(&x.0).then(x.1.cmp(&y.1)));
        let values = sigma.iter().map(|s| s.0).collect();
        let v = v.map(|v| {
            ComplexMatrix::from_fn(n, n, |r, k| v[(r, sigma[k].1)])
        });
        (values, v)
    }

    /// Orthonormal basis of the column space, by Gram–Schmidt with column
    /// pivoting. Columns whose residual norm falls below `threshold` are
    /// treated as dependent.
    pub fn column_basis(&self, threshold: f64) -> Vec<Vec<C>> {
        let mut cols: Vec<Vec<C>> = (0..self.cols).map(|c| self.column(c)).collect();
        let mut basis: Vec<Vec<C>> = Vec::new();
        loop {
            let (idx, best) = cols
                .iter()
                .enumerate()
                .map(|(i, c)| (i, vec_norm(c)))
                .fold((usize::MAX, 0.0), |acc, x| if x.1 > acc.1 { x } else { acc });
            if idx == usize::MAX || best <= threshold {
                break;
            }
            let mut q = cols.swap_remove(idx);
            // two passes of orthogonalization for stability
            for _ in 0..2 {
                for b in &basis {
                    let d: C = b.iter().zip(&q).map(|(x, y)| x.conj() * y).sum();
                    q.iter_mut().zip(b).for_each(|(y, x)| *y -= d * x);
                }
            }
            let nq = vec_norm(&q);
            if nq <= threshold {
                continue;
            }
            q.iter_mut().for_each(|z| *z /= nq);
            for c in cols.iter_mut() {
                let d: C = q.iter().zip(c.iter()).map(|(x, y)| x.conj() * y).sum();
                c.iter_mut().zip(&q).for_each(|(y, x)| *y -= d * x);
            }
            basis.push(q);
        }
        basis
    }
}


impl Index<(usize, usize)> for ComplexMatrix {
    type Output = C;
    fn index(&self, (r, c): (usize, usize)) -> &C {
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut C {
        &mut self.data[r * self.cols + c]
    }
}

pub fn vec_norm(v: &[C]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// LU factorization with partial pivoting, `PA = LU`.
#[derive(Clone, Debug)]
pub struct Lu {
    n: usize,
    lu: ComplexMatrix,
    perm: Vec<usize>,
    condition: f64,
}

impl Lu {
    pub fn new(a: &ComplexMatrix) -> Result<Lu> {
        if !a.is_square() {
            return Err(Error::Dimension {
                expected: a.rows(),
                found: a.cols(),
            });
        }
        let n = a.rows();
        let mut lu = a.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let scale = a.max_abs();
        for k in 0..n {
            let (p, pmax) = (k..n)
                .map(|r| (r, lu[(r, k)].norm()))
                .fold((k, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
            if pmax == 0.0 || !pmax.is_finite() {
                return Err(Error::singular("zero pivot in LU factorization", 0.0));
            }
            if p != k {
                for c in 0..n {
                    let tmp = lu[(k, c)];
                    lu[(k, c)] = lu[(p, c)];
                    lu[(p, c)] = tmp;
                }
                perm.swap(k, p);
            }
            let piv = lu[(k, k)];
            for r in k + 1..n {
                let f = lu[(r, k)] / piv;
                if f == ZERO {
                    continue;
                }
                lu[(r, k)] = f;
                for c in k + 1..n {
                    let u = lu[(k, c)];
                    lu[(r, c)] -= f * u;
                }
            }
        }
        let (mut dmin, mut dmax) = (f64::INFINITY, 0.0f64);
        for k in 0..n {
            let d = lu[(k, k)].norm();
            dmin = dmin.min(d);
            dmax = dmax.max(d);
        }
        let condition = if n == 0 {
            1.0
        } else {
            (dmax.max(scale) / dmin).max(1.0)
        };
        Ok(Lu {
            n,
            lu,
            perm,
            condition,
        })
    }

    /// Pivot-ratio estimate of the condition number.
    pub fn condition_estimate(&self) -> f64 {
        self.condition
    }

    pub fn solve(&self, b: &[C]) -> Vec<C> {
        assert_eq!(b.len(), self.n, "rhs length mismatch");
        let n = self.n;
        let mut x: Vec<C> = self.perm.iter().map(|&p| b[p]).collect();
        for r in 0..n {
            let mut acc = x[r];
            for c in 0..r {
                acc -= self.lu[(r, c)] * x[c];
            }
            x[r] = acc;
        }
        for r in (0..n).rev() {
            let mut acc = x[r];
            for c in r + 1..n {
                acc -= self.lu[(r, c)] * x[c];
            }
            x[r] = acc / self.lu[(r, r)];
        }
        x
    }

    pub fn inverse(&self) -> ComplexMatrix {
        let n = self.n;
        let mut inv = ComplexMatrix::zeros(n, n);
        let mut e = vec![ZERO; n];
        for c in 0..n {
            e.iter_mut().for_each(|z| *z = ZERO);
            e[c] = ONE;
            inv.set_column(c, &self.solve(&e));
        }
        inv
    }
}
