//! Dense complex vectors and matrices over any [`Scalar`].
//!
//! Inner products are conjugate-linear in the FIRST argument:
//! `inner(u, v) = sum_k conj(u_k) v_k`, i.e. `u^dagger v`. Every module in
//! the crate uses this convention.

use std::fmt;
use std::ops::{Index, Mul};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, PartialEq)]
pub struct CVector<S> {
    entries: Vec<S>,
}

impl<S: fmt::Debug> fmt::Debug for CVector<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.entries).finish()
    }
}

impl<S: Scalar> CVector<S> {
    pub fn new(entries: Vec<S>) -> Self {
        CVector { entries }
    }

    pub fn zeros(dim: usize) -> Self {
        CVector::new(vec![S::zero(); dim])
    }

    /// Standard basis vector `e_k` of length `dim`.
    pub fn basis(dim: usize, k: usize) -> Self {
        let mut v = CVector::zeros(dim);
        v.entries[k] = S::one();
        v
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[S] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<S> {
        self.entries
    }

    pub fn iter(&self) -> std::slice::Iter<'_, S> {
        self.entries.iter()
    }

    pub fn scale(&self, s: &S) -> Self {
        CVector::new(self.entries.iter().map(|x| s.clone() * x.clone()).collect())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        check_dims(self.dim(), other.dim())?;
        Ok(CVector::new(
            self.entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        ))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        check_dims(self.dim(), other.dim())?;
        Ok(CVector::new(
            self.entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        ))
    }

    /// Entrywise product.
    pub fn hadamard(&self, other: &Self) -> Result<Self> {
        check_dims(self.dim(), other.dim())?;
        Ok(CVector::new(
            self.entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a.clone() * b.clone())
                .collect(),
        ))
    }

    pub fn conj(&self) -> Self {
        CVector::new(self.entries.iter().map(Scalar::conj).collect())
    }

    /// `<self, self>`, real and non-negative.
    pub fn norm_sq(&self) -> S {
        self.entries
            .iter()
            .fold(S::zero(), |acc, x| acc + x.abs_sq())
    }

    pub fn embed(&self) -> CVector<Complex64> {
        CVector::new(self.entries.iter().map(Scalar::to_c64).collect())
    }

    /// Largest entrywise distance after embedding.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a.to_c64() - b.to_c64()).norm())
            .fold(if self.dim() == other.dim() { 0.0 } else { f64::INFINITY }, f64::max)
    }

    /// Outer product `self * other^dagger`.
    pub fn outer(&self, other: &Self) -> CMatrix<S> {
        let mut data = Vec::with_capacity(self.dim() * other.dim());
        for a in &self.entries {
            for b in &other.entries {
                data.push(a.clone() * b.conj());
            }
        }
        CMatrix {
            rows: self.dim(),
            cols: other.dim(),
            data,
        }
    }
}

impl<S> Index<usize> for CVector<S> {
    type Output = S;
    fn index(&self, i: usize) -> &S {
        &self.entries[i]
    }
}

impl<S: Scalar> FromIterator<S> for CVector<S> {
    fn from_iter<I: IntoIterator<Item = S>>(iter: I) -> Self {
        CVector::new(iter.into_iter().collect())
    }
}

fn check_dims(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}

/// `<u, v> = sum_k conj(u_k) v_k`.
pub fn inner<S: Scalar>(u: &CVector<S>, v: &CVector<S>) -> Result<S> {
    check_dims(u.dim(), v.dim())?;
    Ok(u.entries
        .iter()
        .zip(&v.entries)
        .fold(S::zero(), |acc, (a, b)| acc + a.conj() * b.clone()))
}

/// Row-major dense matrix.
#[derive(Clone, PartialEq)]
pub struct CMatrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: fmt::Debug> fmt::Debug for CMatrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<&[S]> = self.data.chunks(self.cols.max(1)).collect();
        f.debug_list().entries(rows).finish()
    }
}

impl<S: Scalar> CMatrix<S> {
    pub fn new(rows: usize, cols: usize, data: Vec<S>) -> Result<Self> {
        check_dims(rows * cols, data.len())?;
        Ok(CMatrix { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            check_dims(c, row.len())?;
            data.extend(row);
        }
        Ok(CMatrix {
            rows: r,
            cols: c,
            data,
        })
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[CVector<S>]) -> Result<Self> {
        let n = cols.len();
        let d = cols.first().map_or(0, CVector::dim);
        for c in cols {
            check_dims(d, c.dim())?;
        }
        let mut data = Vec::with_capacity(n * d);
        for i in 0..d {
            for c in cols {
                data.push(c[i].clone());
            }
        }
        Ok(CMatrix {
            rows: d,
            cols: n,
            data,
        })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        CMatrix {
            rows,
            cols,
            data: vec![S::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = CMatrix::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = S::one();
        }
        m
    }

    pub fn diag(entries: &[S]) -> Self {
        let n = entries.len();
        let mut m = CMatrix::zeros(n, n);
        for (i, e) in entries.iter().enumerate() {
            m.data[i * n + i] = e.clone();
        }
        m
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

    pub fn get(&self, r: usize, c: usize) -> &S {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: S) {
        self.data[r * self.cols + c] = value;
    }

    pub fn data(&self) -> &[S] {
        &self.data
    }

    pub fn column(&self, c: usize) -> CVector<S> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn diagonal(&self) -> Vec<S> {
        (0..self.rows.min(self.cols))
            .map(|i| self.get(i, i).clone())
            .collect()
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                data.push(self.get(r, c).clone());
            }
        }
        CMatrix {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let t = self.transpose();
        CMatrix {
            data: t.data.iter().map(Scalar::conj).collect(),
            ..t
        }
    }

    pub fn scale(&self, s: &S) -> Self {
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| s.clone() * x.clone()).collect(),
        }
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&S, &S) -> S) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                expected: self.data.len(),
                found: other.data.len(),
            });
        }
        Ok(CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect(),
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a.clone() + b.clone())
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a.clone() - b.clone())
    }

    /// Entrywise product.
    pub fn hadamard(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a.clone() * b.clone())
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        check_dims(self.cols, other.rows)?;
        let mut data = Vec::with_capacity(self.rows * other.cols);
        for r in 0..self.rows {
            for c in 0..other.cols {
                let mut acc = S::zero();
                for k in 0..self.cols {
                    acc = acc + self.get(r, k).clone() * other.get(k, c).clone();
                }
                data.push(acc);
            }
        }
        Ok(CMatrix {
            rows: self.rows,
            cols: other.cols,
            data,
        })
    }

    pub fn apply(&self, v: &CVector<S>) -> Result<CVector<S>> {
        check_dims(self.cols, v.dim())?;
        Ok((0..self.rows)
            .map(|r| {
                (0..self.cols).fold(S::zero(), |acc, c| {
                    acc + self.get(r, c).clone() * v[c].clone()
                })
            })
            .collect())
    }

    pub fn trace(&self) -> S {
        self.diagonal().into_iter().fold(S::zero(), |a, b| a + b)
    }

    fn require_square(&self) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    fn scale_magnitude(&self) -> f64 {
        self.data
            .iter()
            .map(Scalar::magnitude)
            .fold(0.0, f64::max)
    }

    /// Determinant by Gaussian elimination; exact in exact mode.
    pub fn det(&self) -> Result<S> {
        self.require_square()?;
        let n = self.rows;
        let mut a = self.clone();
        let mut det = S::one();
        for col in 0..n {
            let Some(p) = pivot_row(&a, col, 0.0) else {
                return Ok(S::zero());
            };
            if p != col {
                a.swap_rows(p, col);
                det = -det;
            }
            let pivot = a.get(col, col).clone();
            det = det * pivot.clone();
            let inv = pivot.inv().ok_or(Error::Singular)?;
            for r in col + 1..n {
                let factor = a.get(r, col).clone() * inv.clone();
                if factor.is_zero() {
                    continue;
                }
                for c in col..n {
                    let v = a.get(r, c).clone() - factor.clone() * a.get(col, c).clone();
                    a.set(r, c, v);
                }
            }
        }
        Ok(det)
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        for c in 0..self.cols {
            self.data.swap(i * self.cols + c, j * self.cols + c);
        }
    }

    /// Inverse by Gauss-Jordan elimination with magnitude pivoting.
    ///
    /// A pivot counts as zero when it is negligible relative to `rel_tol` times
    /// the largest entry (float) or exactly zero (exact).
    pub fn inverse_with_tol(&self, rel_tol: f64) -> Result<Self> {
        self.require_square()?;
        let n = self.rows;
        let tol = rel_tol * self.scale_magnitude();
        let mut a = self.clone();
        let mut inv: CMatrix<S> = CMatrix::identity(n);
        for col in 0..n {
            let p = pivot_row(&a, col, tol).ok_or(Error::Singular)?;
            if p != col {
                a.swap_rows(p, col);
                inv.swap_rows(p, col);
            }
            let pinv = a.get(col, col).inv().ok_or(Error::Singular)?;
            for c in 0..n {
                a.set(col, c, a.get(col, c).clone() * pinv.clone());
                inv.set(col, c, inv.get(col, c).clone() * pinv.clone());
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let factor = a.get(r, col).clone();
                if factor.is_zero() {
                    continue;
                }
                for c in 0..n {
                    let v = a.get(r, c).clone() - factor.clone() * a.get(col, c).clone();
                    a.set(r, c, v);
                    let w = inv.get(r, c).clone() - factor.clone() * inv.get(col, c).clone();
                    inv.set(r, c, w);
                }
            }
        }
        Ok(inv)
    }

    pub fn inverse(&self) -> Result<Self> {
        self.inverse_with_tol(1e-12)
    }

    pub fn embed(&self) -> CMatrix<Complex64> {
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(Scalar::to_c64).collect(),
        }
    }

    /// Largest entrywise distance after embedding.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        if self.rows != other.rows || self.cols != other.cols {
            return f64::INFINITY;
        }
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a.to_c64() - b.to_c64()).norm())
            .fold(0.0, f64::max)
    }

    /// `max |(M^dagger M - I)_{jk}|`.
    pub fn unitarity_defect(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let g = self.adjoint().matmul(self).expect("square");
        g.max_abs_diff(&CMatrix::identity(self.rows))
    }

    /// `max |M - M^dagger|` entrywise.
    pub fn hermiticity_defect(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        self.max_abs_diff(&self.adjoint())
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> CMatrix<T> {
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }
}

fn pivot_row<S: Scalar>(a: &CMatrix<S>, col: usize, tol: f64) -> Option<usize> {
    let mut best: Option<(usize, f64)> = None;
    for r in col..a.rows {
        let x = a.get(r, col);
        if x.is_zero() || x.is_negligible(tol) {
            continue;
        }
        let m = x.magnitude();
        if best.is_none_or(|(_, bm)| m > bm) {
            best = Some((r, m));
        }
    }
    best.map(|(r, _)| r)
}

impl<'a, S: Scalar> Mul<&'a CMatrix<S>> for &'a CMatrix<S> {
    type Output = CMatrix<S>;

    /// Panics on a shape mismatch; use [`CMatrix::matmul`] for a checked product.
    fn mul(self, rhs: &CMatrix<S>) -> CMatrix<S> {
        self.matmul(rhs).expect("matrix shapes do not match")
    }
}

impl<'a, S: Scalar> Mul<&'a CVector<S>> for &'a CMatrix<S> {
    type Output = CVector<S>;

    /// Panics on a shape mismatch; use [`CMatrix::apply`] for a checked product.
    fn mul(self, rhs: &CVector<S>) -> CVector<S> {
        self.apply(rhs).expect("matrix and vector shapes do not match")
    }
}

/// Integer power; negative exponents invert first.
pub fn mat_power<S: Scalar>(m: &CMatrix<S>, k: i64) -> Result<CMatrix<S>> {
    m.require_square()?;
    let base = if k < 0 { m.inverse()? } else { m.clone() };
    let mut e = k.unsigned_abs();
    let mut acc = CMatrix::identity(m.rows);
    let mut sq = base;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc.matmul(&sq)?;
        }
        e >>= 1;
        if e > 0 {
            sq = sq.matmul(&sq)?;
        }
    }
    Ok(acc)
}

/// Hermitian matrix of inner products, `entry(j, k) = <v_j, v_k>`.
#[derive(Clone, Debug, PartialEq)]
pub struct GramMatrix<S>(CMatrix<S>);

impl<S: Scalar> GramMatrix<S> {
    pub fn n(&self) -> usize {
        self.0.rows
    }

    pub fn entry(&self, j: usize, k: usize) -> &S {
        self.0.get(j, k)
    }

    pub fn matrix(&self) -> &CMatrix<S> {
        &self.0
    }

    pub fn into_matrix(self) -> CMatrix<S> {
        self.0
    }

    /// Constant along wrapped diagonals: `g(j,k) = g(j+1, k+1)` with indices mod n.
    pub fn is_circulant(&self, tol: f64) -> bool {
        self.circulance_defect_within(tol)
    }

    fn circulance_defect_within(&self, tol: f64) -> bool {
        let n = self.n();
        for j in 0..n {
            for k in 0..n {
                let d = self.entry(j, k).clone() - self.entry((j + 1) % n, (k + 1) % n).clone();
                if !d.is_negligible(tol) {
                    return false;
                }
            }
        }
        true
    }

    /// `max_{j,k} |g(j,k) - g(j+1, k+1)|`.
    pub fn circulance_defect(&self) -> f64 {
        let n = self.n();
        let mut worst: f64 = 0.0;
        for j in 0..n {
            for k in 0..n {
                let d = self.entry(j, k).clone() - self.entry((j + 1) % n, (k + 1) % n).clone();
                worst = worst.max(d.magnitude());
            }
        }
        worst
    }
}

pub fn gram<S: Scalar>(basis: &[CVector<S>]) -> Result<GramMatrix<S>> {
    let n = basis.len();
    let d = basis.first().map_or(0, CVector::dim);
    let mut m = CMatrix::zeros(n, n);
    for j in 0..n {
        check_dims(d, basis[j].dim())?;
        for k in j..n {
            let g = inner(&basis[j], &basis[k])?;
            if j != k {
                m.set(k, j, g.conj());
            }
            m.set(j, k, g);
        }
    }
    Ok(GramMatrix(m))
}

pub fn is_circulant<S: Scalar>(g: &GramMatrix<S>, tol: f64) -> bool {
    g.is_circulant(tol)
}

/// Dual basis `{w_k}` with `<w_k, v_j> = delta_kj`.
///
/// With `V` the matrix of basis columns, `W^dagger V = I`, so `w_k` is the
/// conjugate of row `k` of `V^{-1}`.
pub fn dual_basis<S: Scalar>(basis: &[CVector<S>]) -> Result<Vec<CVector<S>>> {
    let v = CMatrix::from_columns(basis)?;
    if !v.is_square() {
        return Err(Error::InvalidBasis(format!(
            "{} vectors cannot form a basis of C^{}",
            v.cols, v.rows
        )));
    }
    let vinv = v.inverse_with_tol(1e-10)?.adjoint();
    Ok((0..v.cols).map(|k| vinv.column(k)).collect())
}

/// The matrix `A = sum_k v_k w_{k-1}^dagger`, which maps `v_j` to `v_{j+1 mod d}`.
pub fn cycling_matrix<S: Scalar>(basis: &[CVector<S>]) -> Result<CMatrix<S>> {
    let w = dual_basis(basis)?;
    let d = basis.len();
    let mut a = CMatrix::zeros(d, d);
    for k in 0..d {
        a = a.add(&basis[k].outer(&w[(k + d - 1) % d]))?;
    }
    Ok(a)
}

/// Reconstruct each `v_l` as `sum_k (G^T)_{lk} w_k` and return the largest
/// entrywise residual.
pub fn gram_reconstruction_residual<S: Scalar>(basis: &[CVector<S>]) -> Result<f64> {
    let g = gram(basis)?;
    let w = dual_basis(basis)?;
    let d = basis.len();
    let mut worst: f64 = 0.0;
    for l in 0..d {
        let mut acc = CVector::zeros(basis[l].dim());
        for k in 0..d {
            acc = acc.add(&w[k].scale(g.entry(k, l)))?;
        }
        worst = worst.max(acc.max_abs_diff(&basis[l]));
    }
    Ok(worst)
}

/// The unit phase `c` with `u = c v` (compared through the float embedding),
/// or `None` if the vectors do not span the same line within `tol`.
pub fn phase_between<S: Scalar>(u: &CVector<S>, v: &CVector<S>, tol: f64) -> Option<Complex64> {
    if u.dim() != v.dim() {
        return None;
    }
    let (u, v) = (u.embed(), v.embed());
    let vv = v.norm_sq().re;
    if vv <= tol {
        return None;
    }
    let c = inner(&v, &u).ok()? / vv;
    if (c.norm() - 1.0).abs() > tol {
        return None;
    }
    let residual = u.sub(&v.scale(&c)).ok()?;
    residual.iter().all(|z| z.norm() <= tol).then_some(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::CycloNumber;
    use crate::scalar::Conductor;
    use num_traits::{One, Zero};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn v(entries: &[Complex64]) -> CVector<Complex64> {
        CVector::new(entries.to_vec())
    }

    #[test]
    fn inner_is_conjugate_linear_in_first_argument() {
        let e0 = v(&[c(1.0, 0.0), c(0.0, 0.0)]);
        assert_eq!(inner(&e0, &e0).unwrap(), c(1.0, 0.0));
        let iu = v(&[c(0.0, 1.0), c(0.0, 0.0)]);
        assert_eq!(inner(&iu, &e0).unwrap(), c(0.0, -1.0));
        assert_eq!(inner(&e0, &iu).unwrap(), c(0.0, 1.0));
        let u0 = v(&[c(0.0, 0.0), c(1.0, 0.0)]);
        assert_eq!(inner(&u0, &e0).unwrap(), c(0.0, 0.0));
        assert!(inner(&e0, &v(&[c(1.0, 0.0)])).is_err());
    }

    #[test]
    fn gram_and_circulance() {
        let basis: Vec<_> = (0..3).map(|k| CVector::<Complex64>::basis(3, k)).collect();
        let g = gram(&basis).unwrap();
        assert_eq!(g.matrix(), &CMatrix::identity(3));
        assert!(g.is_circulant(0.0));

        let s3 = 3f64.sqrt();
        let w = Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_4);
        let b = vec![
            v(&[c(1.0, 0.0), c(0.0, 0.0)]),
            v(&[c(1.0 / s3, 0.0), w * 2f64.sqrt() / s3]),
        ];
        // in dimension two circulance forces real off-diagonals; this one is real
        assert!(gram(&b).unwrap().is_circulant(1e-9));
        let tilted = vec![
            v(&[c(1.0, 0.0), c(0.0, 0.0)]),
            v(&[w / s3, c(2f64.sqrt() / s3, 0.0)]),
        ];
        let g = gram(&tilted).unwrap();
        assert!(!g.is_circulant(1e-9));
        assert!(g.circulance_defect() > 0.5);
    }

    #[test]
    fn dual_basis_and_cycling() {
        let basis: Vec<_> = (0..3).map(|k| CVector::<Complex64>::basis(3, k)).collect();
        let dual = dual_basis(&basis).unwrap();
        assert_eq!(dual, basis);
        let a = cycling_matrix(&basis).unwrap();
        let mut perm = CMatrix::zeros(3, 3);
        perm.set(1, 0, Complex64::one());
        perm.set(2, 1, Complex64::one());
        perm.set(0, 2, Complex64::one());
        assert_eq!(a, perm);

        let singular = vec![v(&[c(1.0, 0.0), c(1.0, 0.0)]), v(&[c(2.0, 0.0), c(2.0, 0.0)])];
        assert_eq!(dual_basis(&singular), Err(Error::Singular));
    }

    #[test]
    fn power_and_inverse() {
        let m = CMatrix::from_rows(vec![
            vec![c(1.0, 1.0), c(2.0, 0.0)],
            vec![c(0.0, -1.0), c(3.0, 0.5)],
        ])
        .unwrap();
        assert_eq!(mat_power(&m, 0).unwrap(), CMatrix::identity(2));
        let p3 = mat_power(&m, 3).unwrap();
        let direct = &(&m * &m) * &m;
        assert!(p3.max_abs_diff(&direct) < 1e-12);
        let back = mat_power(&m, -2).unwrap().matmul(&mat_power(&m, 2).unwrap()).unwrap();
        assert!(back.max_abs_diff(&CMatrix::identity(2)) < 1e-12);
        let zero = CMatrix::<Complex64>::zeros(2, 2);
        assert_eq!(mat_power(&zero, -1), Err(Error::Singular));
    }

    #[test]
    fn exact_power_law() {
        let ctx = Conductor::DEFAULT;
        let z = CycloNumber::root(ctx, 9, 2).unwrap();
        let m = CMatrix::from_rows(vec![
            vec![CycloNumber::from_ratio(1, 2), z.clone()],
            vec![CycloNumber::from_integer(1), z.conj()],
        ])
        .unwrap();
        let lhs = mat_power(&m, 5).unwrap();
        let rhs = mat_power(&m, 2).unwrap().matmul(&mat_power(&m, 3).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
        let inv = mat_power(&m, -1).unwrap();
        assert_eq!(inv.matmul(&m).unwrap(), CMatrix::identity(2));
        assert_eq!(m.det().unwrap(), CycloNumber::from_ratio(1, 2) * z.conj() - z);
    }

    #[test]
    fn exact_gram_is_hermitian() {
        let ctx = Conductor::DEFAULT;
        let z = |k| CycloNumber::root(ctx, 72, k).unwrap();
        let basis = vec![
            CVector::new(vec![z(1), z(5), CycloNumber::from_ratio(1, 3)]),
            CVector::new(vec![z(30), CycloNumber::zero(), z(7)]),
            CVector::new(vec![z(2), z(3), z(4)]),
        ];
        let g = gram(&basis).unwrap();
        assert_eq!(g.matrix().adjoint(), g.matrix().clone());
        assert!(gram_reconstruction_residual(&basis).unwrap() == 0.0);
    }
}
