//! Quaternionic vectors and matrices acting as right-linear operators on
//! `H^n`, together with the complex chart of `H^n` over `C_{e1}`.
//!
//! A vector entry `q = w + x e1 + y e2 + z e3` is written `q = a + e2·b`
//! with `a = w + x i` and `b = y − z i`, so right multiplication by an
//! element of `C_{e1}` acts componentwise on `(a, b)`. A vector of `H^n`
//! charts to `(a_1, …, a_n, b_1, …, b_n) ∈ C^{2n}`.
//!
//! A matrix entry is split the other way round, `T_kl = A + B·e2` with
//! `A = w + x i` and `B = y + z i`; the chart then turns `T` into
//! `[[A, −B], [B̄, Ā]]`.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Index, IndexMut};

use num_complex::Complex64;
#[allow(unused_imports)] // shadowed by inherent methods when std is linked
use num_traits::Float;

use super::ComplexMatrix;
use crate::quaternion::Quaternion;
use crate::{Error, Result};

type C = Complex64;

/// Chart coordinates `(a, b)` of a vector entry.
pub fn chart_entry(q: Quaternion) -> (C, C) {
    (C::new(q.w, q.x), C::new(q.y, -q.z))
}

/// Inverse of [`chart_entry`].
pub fn dechart_entry(a: C, b: C) -> Quaternion {
    Quaternion::new(a.re, a.im, b.re, -b.im)
}

/// Split `q = A + B·e2` of a matrix entry.
fn split_entry(q: Quaternion) -> (C, C) {
    (C::new(q.w, q.x), C::new(q.y, q.z))
}

fn join_entry(a: C, b: C) -> Quaternion {
    Quaternion::new(a.re, a.im, b.re, b.im)
}

/// A vector of `H^n` with the right scalar action `(v a)_k = v_k a`.
#[derive(Clone, Debug, PartialEq)]
pub struct QVector {
    entries: Vec<Quaternion>,
}

impl QVector {
    pub fn new(entries: Vec<Quaternion>) -> Self {
        QVector { entries }
    }

    pub fn zeros(n: usize) -> Self {
        QVector::new(vec![Quaternion::ZERO; n])
    }

    /// The `k`-th standard basis vector.
    pub fn basis(n: usize, k: usize) -> Self {
        let mut v = QVector::zeros(n);
        v.entries[k] = Quaternion::ONE;
        v
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[Quaternion] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<Quaternion> {
        self.entries
    }

    /// Coordinates in `C^{2n}`; an isometry.
    pub fn chart(&self) -> Vec<C> {
        let n = self.len();
        let mut out = vec![C::new(0.0, 0.0); 2 * n];
        for (k, &q) in self.entries.iter().enumerate() {
            let (a, b) = chart_entry(q);
            out[k] = a;
            out[k + n] = b;
        }
        out
    }

    /// Inverse of [`QVector::chart`]; the length must be even.
    pub fn from_chart(c: &[C]) -> Result<Self> {
        if c.len() % 2 != 0 {
            return Err(Error::Dimension {
                expected: c.len() + 1,
                found: c.len(),
            });
        }
        let n = c.len() / 2;
        Ok(QVector::new(
            (0..n).map(|k| dechart_entry(c[k], c[k + n])).collect(),
        ))
    }

    pub fn norm(&self) -> f64 {
        self.entries.iter().map(|q| q.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `v·a`.
    pub fn right_mul(&self, a: Quaternion) -> QVector {
        QVector::new(self.entries.iter().map(|&q| q * a).collect())
    }

    pub fn add(&self, other: &QVector) -> QVector {
        QVector::new(
            self.entries
                .iter()
                .zip(&other.entries)
                .map(|(&a, &b)| a + b)
                .collect(),
        )
    }

    pub fn sub(&self, other: &QVector) -> QVector {
        QVector::new(
            self.entries
                .iter()
                .zip(&other.entries)
                .map(|(&a, &b)| a - b)
                .collect(),
        )
    }

    pub fn scale(&self, s: f64) -> QVector {
        QVector::new(self.entries.iter().map(|&q| q * s).collect())
    }
}

impl Index<usize> for QVector {
    type Output = Quaternion;
    fn index(&self, k: usize) -> &Quaternion {
        &self.entries[k]
    }
}

impl IndexMut<usize> for QVector {
    fn index_mut(&mut self, k: usize) -> &mut Quaternion {
        &mut self.entries[k]
    }
}

/// An `n×n` quaternionic matrix, `(Tv)_k = Σ_l T_kl v_l`.
#[derive(Clone, Debug, PartialEq)]
pub struct QMatrix {
    n: usize,
    data: Vec<Quaternion>,
}

impl QMatrix {
    /// Row-major construction; `entries.len()` must be `n²`.
    pub fn new(n: usize, entries: Vec<Quaternion>) -> Result<Self> {
        if entries.len() != n * n {
            return Err(Error::Dimension {
                expected: n * n,
                found: entries.len(),
            });
        }
        Ok(QMatrix { n, data: entries })
    }

    pub fn from_rows(rows: &[Vec<Quaternion>]) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for r in rows {
            if r.len() != n {
                return Err(Error::Dimension {
                    expected: n,
                    found: r.len(),
                });
            }
            data.extend_from_slice(r);
        }
        Ok(QMatrix { n, data })
    }

    pub fn zeros(n: usize) -> Self {
        QMatrix {
            n,
            data: vec![Quaternion::ZERO; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        QMatrix::scalar(n, Quaternion::ONE)
    }

    /// `q·I`, i.e. componentwise left multiplication by `q`.
    pub fn scalar(n: usize, q: Quaternion) -> Self {
        let mut m = QMatrix::zeros(n);
        for k in 0..n {
            m[(k, k)] = q;
        }
        m
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Quaternion) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for r in 0..n {
            for c in 0..n {
                data.push(f(r, c));
            }
        }
        QMatrix { n, data }
    }

    pub fn from_diagonal(d: &[Quaternion]) -> Self {
        let mut m = QMatrix::zeros(d.len());
        for (k, &q) in d.iter().enumerate() {
            m[(k, k)] = q;
        }
        m
    }

    /// Matrix whose `k`-th column is `cols[k]`.
    pub fn from_columns(cols: &[QVector]) -> Result<Self> {
        let n = cols.len();
        let mut m = QMatrix::zeros(n);
        for (c, v) in cols.iter().enumerate() {
            if v.len() != n {
                return Err(Error::Dimension {
                    expected: n,
                    found: v.len(),
                });
            }
            for r in 0..n {
                m[(r, c)] = v[r];
            }
        }
        Ok(m)
    }

    /// Block-diagonal assembly.
    pub fn block_diagonal(blocks: &[QMatrix]) -> Self {
        let n = blocks.iter().map(|b| b.n).sum();
        let mut m = QMatrix::zeros(n);
        let mut off = 0;
        for b in blocks {
            for r in 0..b.n {
                for c in 0..b.n {
                    m[(off + r, off + c)] = b[(r, c)];
                }
            }
            off += b.n;
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[Quaternion] {
        &self.data
    }

    pub fn rows(&self) -> Vec<Vec<Quaternion>> {
        self.data.chunks(self.n.max(1)).map(<[_]>::to_vec).collect()
    }

    pub fn column(&self, c: usize) -> QVector {
        QVector::new((0..self.n).map(|r| self[(r, c)]).collect())
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|q| q.is_finite())
    }

    pub fn apply(&self, v: &QVector) -> QVector {
        let n = self.n;
        QVector::new(
            (0..n)
                .map(|r| {
                    let mut acc = Quaternion::ZERO;
                    for c in 0..n {
                        acc += self[(r, c)] * v[c];
                    }
                    acc
                })
                .collect(),
        )
    }

    pub fn mul(&self, other: &QMatrix) -> QMatrix {
        let n = self.n;
        let mut out = QMatrix::zeros(n);
        for r in 0..n {
            for k in 0..n {
                let a = self[(r, k)];
                if a == Quaternion::ZERO {
                    continue;
                }
                for c in 0..n {
                    out.data[r * n + c] += a * other.data[k * n + c];
                }
            }
        }
        out
    }

    pub fn add(&self, other: &QMatrix) -> QMatrix {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &QMatrix) -> QMatrix {
        self.zip(other, |a, b| a - b)
    }

    pub fn scale(&self, s: f64) -> QMatrix {
        self.map(|q| q * s)
    }

    /// `diag(q)·T`: every entry multiplied by `q` from the left.
    pub fn left_scalar(&self, q: Quaternion) -> QMatrix {
        self.map(|e| q * e)
    }

    /// `T·diag(q)`: every entry multiplied by `q` from the right.
    pub fn right_scalar(&self, q: Quaternion) -> QMatrix {
        self.map(|e| e * q)
    }

    /// Entrywise `h⁻¹ T_kl h`, the similarity by `diag(h)`.
    pub fn conjugate_entries(&self, h: Quaternion) -> Result<QMatrix> {
        let hi = h
            .inv()
            .ok_or_else(|| Error::domain("conjugation by the zero quaternion"))?;
        Ok(self.map(|e| hi * e * h))
    }

    pub fn map(&self, f: impl Fn(Quaternion) -> Quaternion) -> QMatrix {
        QMatrix {
            n: self.n,
            data: self.data.iter().map(|&q| f(q)).collect(),
        }
    }

    fn zip(&self, other: &QMatrix, f: impl Fn(Quaternion, Quaternion) -> Quaternion) -> QMatrix {
        assert_eq!(self.n, other.n, "matrix dimensions differ");
        QMatrix {
            n: self.n,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> QMatrix {
        let mut out = QMatrix::identity(self.n);
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// `‖AB − BA‖`.
    pub fn commutator_norm(&self, other: &QMatrix) -> f64 {
        self.mul(other).sub(&other.mul(self)).norm()
    }

    /// The complex `2n×2n` matrix of `T` in the chart.
    pub fn embed(&self) -> ComplexMatrix {
        let n = self.n;
        let mut m = ComplexMatrix::zeros(2 * n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                let (a, b) = split_entry(self[(r, c)]);
                m[(r, c)] = a;
                m[(r, c + n)] = -b;
                m[(r + n, c)] = b.conj();
                m[(r + n, c + n)] = a.conj();
            }
        }
        m
    }

    /// Recovers `T` from a complex matrix of the embedded shape.
    ///
    /// The two copies of each block are averaged; the returned deviation is
    /// the largest half-difference between them, zero for exact images of
    /// [`QMatrix::embed`].
    pub fn de_embed(m: &ComplexMatrix) -> Result<(QMatrix, f64)> {
        if !m.is_square() || m.rows() % 2 != 0 {
            return Err(Error::Dimension {
                expected: m.rows() + m.rows() % 2,
                found: m.cols(),
            });
        }
        let n = m.rows() / 2;
        let mut out = QMatrix::zeros(n);
        let mut dev = 0.0f64;
        for r in 0..n {
            for c in 0..n {
                let a1 = m[(r, c)];
                let a2 = m[(r + n, c + n)].conj();
                let b1 = -m[(r, c + n)];
                let b2 = m[(r + n, c)].conj();
                dev = dev.max(((a1 - a2) * 0.5).norm()).max(((b1 - b2) * 0.5).norm());
                out[(r, c)] = join_entry((a1 + a2) * 0.5, (b1 + b2) * 0.5);
            }
        }
        Ok((out, dev))
    }

    /// Operator norm `sup_{‖v‖=1} ‖Tv‖`, the spectral norm of the embedding.
    pub fn norm(&self) -> f64 {
        self.embed().norm2()
    }

    pub fn norm_fro(&self) -> f64 {
        self.data.iter().map(|q| q.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|q| q.norm()).fold(0.0, f64::max)
    }

    /// Solves `T x = b` through an LU factorization of the embedding.
    ///
    /// Fails with [`Error::Singular`] on an exactly singular pivot or when
    /// the pivot-ratio condition estimate exceeds `max_condition`.
    pub fn solve(&self, b: &QVector, max_condition: f64) -> Result<QVector> {
        if b.len() != self.n {
            return Err(Error::Dimension {
                expected: self.n,
                found: b.len(),
            });
        }
        let lu = self.embed().lu()?;
        let cond = lu.condition_estimate();
        if cond > max_condition {
            return Err(Error::singular(
                "linear system is ill-conditioned beyond the cap",
                1.0 / cond,
            ));
        }
        QVector::from_chart(&lu.solve(&b.chart()))
    }
}

impl Index<(usize, usize)> for QMatrix {
    type Output = Quaternion;
    fn index(&self, (r, c): (usize, usize)) -> &Quaternion {
        &self.data[r * self.n + c]
    }
}

impl IndexMut<(usize, usize)> for QMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Quaternion {
        &mut self.data[r * self.n + c]
    }
}
