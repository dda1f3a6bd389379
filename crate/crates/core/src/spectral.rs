//! Angles and spectral functions of 2x2 and 3x3 matrices.
//!
//! Angles are defined for any scalar through the floating-point embedding.
//! Eigenvalues, square roots and Hermitian exponentials are float-only and
//! use closed forms; no iterative eigensolver is involved.

use num_complex::{Complex, Complex64};
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{inner, CMatrix, CVector};
use crate::scalar::{Real, Scalar};

const UNIT_TOL: f64 = 1e-12;

fn check_unit<S: Scalar>(u: &CVector<S>) -> Result<()> {
    let deviation = (u.norm_sq().to_c64() - 1.0).norm();
    if deviation > UNIT_TOL {
        Err(Error::NotUnit { deviation })
    } else {
        Ok(())
    }
}

/// Hermitian angle `arccos |<u, v>|` of two unit vectors, in `[0, pi/2]`.
pub fn hermitian_angle<S: Scalar>(u: &CVector<S>, v: &CVector<S>) -> Result<f64> {
    check_unit(u)?;
    check_unit(v)?;
    let c = inner(u, v)?.magnitude().min(1.0);
    Ok(c.acos())
}

/// Pseudo-angle `arg <u, v>` in `(-pi, pi]`.
pub fn pseudo_angle<S: Scalar>(u: &CVector<S>, v: &CVector<S>) -> Result<f64> {
    let ip = inner(u, v)?;
    if ip.is_negligible(1e-300) {
        return Err(Error::Orthogonal);
    }
    // exactly real values (decided exactly in exact mode) have argument 0 or pi
    if (ip.clone() - ip.conj()).is_negligible(0.0) {
        return Ok(if ip.to_c64().re > 0.0 { 0.0 } else { std::f64::consts::PI });
    }
    let arg = ip.to_c64().arg();
    // atan2 returns -pi for (-x, -0.0); fold onto the half-open interval
    Ok(if arg <= -std::f64::consts::PI { std::f64::consts::PI } else { arg })
}

fn require_size<T>(m: &CMatrix<T>, n: usize, supported: &'static str) -> Result<()>
where
    T: Scalar,
{
    if m.rows() == n && m.cols() == n {
        Ok(())
    } else {
        Err(Error::UnsupportedSize {
            supported,
            rows: m.rows(),
            cols: m.cols(),
        })
    }
}

fn real<T: Real>(x: f64) -> T {
    T::from(x).expect("f64 converts into every Real type")
}

/// Eigen-decomposition of a 2x2 matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenPair2<T: Real> {
    pub lambda_plus: Complex<T>,
    pub lambda_minus: Complex<T>,
    pub vec_plus: CVector<Complex<T>>,
    pub vec_minus: CVector<Complex<T>>,
    /// Repeated eigenvalue; the eigenvectors may coincide.
    pub degenerate: bool,
}

/// Closed-form eigenvalues `tr/2 +- sqrt(tr^2 - 4 det)/2` (principal square
/// root) with unit eigenvectors.
pub fn eigen_2x2<T: Real>(m: &CMatrix<Complex<T>>) -> Result<EigenPair2<T>> {
    require_size(m, 2, "2x2")?;
    let (a, b, c, d) = (*m.get(0, 0), *m.get(0, 1), *m.get(1, 0), *m.get(1, 1));
    let two = real::<T>(2.0);
    let tr = a + d;
    let det = a * d - b * c;
    let disc = (tr * tr - det * real::<T>(4.0)).sqrt();
    let lambda_plus = (tr + disc) / two;
    let lambda_minus = (tr - disc) / two;
    let scale = a.norm().max(b.norm()).max(c.norm()).max(d.norm()).max(T::min_positive_value());
    let degenerate = disc.norm() <= real::<T>(1e-12) * scale;
    let eigvec = |lambda: Complex<T>| -> CVector<Complex<T>> {
        // null vectors of [[a - l, b], [c, d - l]]: (b, l - a) or (l - d, c)
        let cand1 = [b, lambda - a];
        let cand2 = [lambda - d, c];
        let n1 = cand1[0].norm_sqr() + cand1[1].norm_sqr();
        let n2 = cand2[0].norm_sqr() + cand2[1].norm_sqr();
        let (v, n) = if n1 >= n2 { (cand1, n1) } else { (cand2, n2) };
        if n <= T::min_positive_value() {
            // scalar matrix: every vector is an eigenvector
            return CVector::basis(2, 0);
        }
        let inv = n.sqrt().recip();
        CVector::new(vec![v[0] * inv, v[1] * inv])
    };
    let vec_plus = eigvec(lambda_plus);
    let mut vec_minus = eigvec(lambda_minus);
    if degenerate && b.norm() <= T::epsilon() * scale && c.norm() <= T::epsilon() * scale {
        vec_minus = CVector::basis(2, 1);
    }
    Ok(EigenPair2 {
        lambda_plus,
        lambda_minus,
        vec_plus,
        vec_minus,
        degenerate,
    })
}

/// The four square roots `V diag(+-sqrt(l1), +-sqrt(l2)) V^-1` of a
/// diagonalisable 2x2 matrix. Scalar matrices are accepted (with `V = I`);
/// other repeated-eigenvalue inputs and singular inputs are rejected.
pub fn sqrt_2x2_all<T: Real>(m: &CMatrix<Complex<T>>) -> Result<Vec<CMatrix<Complex<T>>>> {
    let eig = eigen_2x2(m)?;
    let scale = m.data().iter().map(|z| z.norm()).fold(T::zero(), T::max);
    let tiny = real::<T>(1e-12) * scale.max(T::min_positive_value());
    if eig.lambda_plus.norm() <= tiny || eig.lambda_minus.norm() <= tiny {
        return Err(Error::ZeroEigenvalue);
    }
    let is_scalar = m.get(0, 1).norm() <= tiny
        && m.get(1, 0).norm() <= tiny
        && (*m.get(0, 0) - *m.get(1, 1)).norm() <= tiny;
    let v = if is_scalar {
        CMatrix::identity(2)
    } else if eig.degenerate {
        return Err(Error::RepeatedEigenvalue);
    } else {
        CMatrix::from_columns(&[eig.vec_plus.clone(), eig.vec_minus.clone()])?
    };
    let vinv = v.inverse_with_tol(1e-10)?;
    let r1 = eig.lambda_plus.sqrt();
    let r2 = eig.lambda_minus.sqrt();
    let mut roots = Vec::with_capacity(4);
    for s1 in [T::one(), -T::one()] {
        for s2 in [T::one(), -T::one()] {
            let d = CMatrix::diag(&[r1 * s1, r2 * s2]);
            roots.push(v.matmul(&d)?.matmul(&vinv)?);
        }
    }
    Ok(roots)
}

/// Eigenvalues of a 3x3 Hermitian matrix in decreasing order, by the
/// trigonometric solution of the characteristic cubic.
pub fn hermitian_eigenvalues_3x3<T: Real>(h: &CMatrix<Complex<T>>) -> Result<[T; 3]> {
    require_size(h, 3, "3x3")?;
    let re = |r, c| h.get(r, c).re;
    let p1 = h.get(0, 1).norm_sqr() + h.get(0, 2).norm_sqr() + h.get(1, 2).norm_sqr();
    let three = real::<T>(3.0);
    let q = (re(0, 0) + re(1, 1) + re(2, 2)) / three;
    let d0 = re(0, 0) - q;
    let d1 = re(1, 1) - q;
    let d2 = re(2, 2) - q;
    let p2 = d0 * d0 + d1 * d1 + d2 * d2 + real::<T>(2.0) * p1;
    if p2 <= T::min_positive_value() {
        return Ok([q, q, q]);
    }
    let p = (p2 / real(6.0)).sqrt();
    let shifted = h.sub(&CMatrix::identity(3).scale(&Complex::new(q, T::zero())))?;
    let b = shifted.scale(&Complex::new(p.recip(), T::zero()));
    let r = (b.det()?.re / real(2.0)).max(-T::one()).min(T::one());
    let phi = r.acos() / three;
    let tau_third = T::TAU() / three;
    let l1 = q + real::<T>(2.0) * p * phi.cos();
    let l3 = q + real::<T>(2.0) * p * (phi + tau_third).cos();
    let l2 = three * q - l1 - l3;
    Ok([l1, l2, l3])
}

fn cross<T: Real>(a: &[Complex<T>], b: &[Complex<T>]) -> [Complex<T>; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

/// Spectral projector of a simple eigenvalue of a 3x3 Hermitian matrix, from
/// the cross product of two rows of `H - lambda I`.
fn simple_projector<T: Real>(h: &CMatrix<Complex<T>>, lambda: T) -> CMatrix<Complex<T>> {
    let shifted = h
        .sub(&CMatrix::identity(3).scale(&Complex::new(lambda, T::zero())))
        .expect("3x3");
    let rows: Vec<&[Complex<T>]> = shifted.data().chunks(3).collect();
    let mut best = [Complex::zero(); 3];
    let mut best_norm = T::zero();
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        let c = cross(rows[i], rows[j]);
        let n = c.iter().map(|z| z.norm_sqr()).fold(T::zero(), |a, b| a + b);
        if n > best_norm {
            best = c;
            best_norm = n;
        }
    }
    let inv = best_norm.sqrt().recip();
    let u = CVector::new(best.iter().map(|z| *z * inv).collect());
    u.outer(&u)
}

/// `(e^{i theta b} - e^{i theta a}) / (b - a)`, stable as `b -> a`.
fn exp_divided_difference<T: Real>(theta: T, a: T, b: T) -> Complex<T> {
    let half = (b - a) * theta / real(2.0);
    let sinc = if half.abs() < real(1e-8) {
        T::one() - half * half / real(6.0)
    } else {
        half.sin() / half
    };
    let i_theta = Complex::new(T::zero(), theta);
    i_theta * Complex::from_polar(sinc, theta * (a + b) / real(2.0))
}

fn exp_on_pair<T: Real>(
    h: &CMatrix<Complex<T>>,
    theta: T,
    a: T,
    b: T,
) -> CMatrix<Complex<T>> {
    // exact on any subspace where h has eigenvalues {a, b}
    let n = h.rows();
    let fa = Complex::from_polar(T::one(), theta * a);
    let dd = exp_divided_difference(theta, a, b);
    let shifted = h
        .sub(&CMatrix::identity(n).scale(&Complex::new(a, T::zero())))
        .expect("square");
    CMatrix::identity(n)
        .scale(&fa)
        .add(&shifted.scale(&dd))
        .expect("same shape")
}

/// `e^{i theta H}` for Hermitian 2x2 or 3x3 `H` via its spectral decomposition.
pub fn herm_exp<T: Real>(h: &CMatrix<Complex<T>>, theta: T) -> Result<CMatrix<Complex<T>>> {
    let supported = "2x2 or 3x3 Hermitian";
    if !h.is_square() || !(h.rows() == 2 || h.rows() == 3) {
        return Err(Error::UnsupportedSize {
            supported,
            rows: h.rows(),
            cols: h.cols(),
        });
    }
    let defect = h.hermiticity_defect();
    if defect > 1e-12 {
        return Err(Error::NotHermitian { deviation: defect });
    }
    if h.rows() == 2 {
        let m = (h.get(0, 0).re + h.get(1, 1).re) / real(2.0);
        let half_gap = (h.get(0, 0).re - m).hypot(h.get(0, 1).norm());
        return Ok(exp_on_pair(h, theta, m - half_gap, m + half_gap));
    }
    let [l1, l2, l3] = hermitian_eigenvalues_3x3(h)?;
    let scale = l1.abs().max(l3.abs()).max(T::one());
    if l1 - l3 <= real::<T>(1e-13) * scale {
        let q = (l1 + l2 + l3) / real(3.0);
        return Ok(exp_on_pair(h, theta, q, q));
    }
    // isolate the eigenvalue with the larger gap; the other two share a
    // two-dimensional invariant subspace handled by divided differences
    let (iso, a, b) = if l1 - l2 >= l2 - l3 { (l1, l2, l3) } else { (l3, l1, l2) };
    let p = simple_projector(h, iso);
    let rest = CMatrix::identity(3).sub(&p)?;
    let on_iso = p.scale(&Complex::from_polar(T::one(), theta * iso));
    let on_rest = exp_on_pair(h, theta, a, b).matmul(&rest)?;
    on_iso.add(&on_rest)
}

/// Pauli matrices.
pub fn pauli_x() -> CMatrix<Complex64> {
    CMatrix::from_rows(vec![
        vec![Complex64::zero(), Complex64::one()],
        vec![Complex64::one(), Complex64::zero()],
    ])
    .expect("2x2")
}

pub fn pauli_y() -> CMatrix<Complex64> {
    CMatrix::from_rows(vec![
        vec![Complex64::zero(), -Complex64::i()],
        vec![Complex64::i(), Complex64::zero()],
    ])
    .expect("2x2")
}

pub fn pauli_z() -> CMatrix<Complex64> {
    CMatrix::diag(&[Complex64::one(), -Complex64::one()])
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_3, PI};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// Taylor series oracle for e^{i theta H}.
    fn exp_series(h: &CMatrix<Complex64>, theta: f64) -> CMatrix<Complex64> {
        let n = h.rows();
        let x = h.scale(&c(0.0, theta));
        let mut term = CMatrix::identity(n);
        let mut acc = CMatrix::identity(n);
        for k in 1..80 {
            term = term.matmul(&x).unwrap().scale(&c(1.0 / k as f64, 0.0));
            acc = acc.add(&term).unwrap();
        }
        acc
    }

    #[test]
    fn angles() {
        let u = CVector::new(vec![c(1.0, 0.0), c(0.0, 0.0)]);
        assert_eq!(hermitian_angle(&u, &u).unwrap(), 0.0);
        assert_eq!(pseudo_angle(&u, &u).unwrap(), 0.0);
        let w = CVector::new(vec![c(0.5, 0.0), c(3f64.sqrt() / 2.0, 0.0)]);
        assert!((hermitian_angle(&u, &w).unwrap() - FRAC_PI_3).abs() < 1e-12);
        let long = CVector::new(vec![c(2.0, 0.0), c(0.0, 0.0)]);
        assert!(matches!(hermitian_angle(&u, &long), Err(Error::NotUnit { .. })));
        let orth = CVector::new(vec![c(0.0, 0.0), c(1.0, 0.0)]);
        assert_eq!(pseudo_angle(&u, &orth), Err(Error::Orthogonal));
        let neg = CVector::new(vec![c(-1.0, -0.0), c(0.0, 0.0)]);
        assert_eq!(pseudo_angle(&u, &neg).unwrap(), PI);
    }

    #[test]
    fn eigen_identity_and_z() {
        let e = eigen_2x2(&CMatrix::<Complex64>::identity(2)).unwrap();
        assert_eq!(e.lambda_plus, c(1.0, 0.0));
        assert_eq!(e.lambda_minus, c(1.0, 0.0));
        assert!(e.degenerate);
        let z = eigen_2x2(&pauli_z()).unwrap();
        let mut l = [z.lambda_plus.re, z.lambda_minus.re];
        l.sort_by(f64::total_cmp);
        assert_eq!(l, [-1.0, 1.0]);
        let residual = pauli_z().apply(&z.vec_plus).unwrap()
            .sub(&z.vec_plus.scale(&z.lambda_plus)).unwrap();
        assert!(residual.norm_sq().norm() < 1e-20);
    }

    #[test]
    fn sqrt_of_diagonal_and_identity() {
        let d = CMatrix::diag(&[c(4.0, 0.0), c(9.0, 0.0)]);
        let roots = sqrt_2x2_all(&d).unwrap();
        assert_eq!(roots.len(), 4);
        let mut diags: Vec<(i64, i64)> = roots
            .iter()
            .map(|q| (q.get(0, 0).re.round() as i64, q.get(1, 1).re.round() as i64))
            .collect();
        diags.sort();
        assert_eq!(diags, vec![(-2, -3), (-2, 3), (2, -3), (2, 3)]);
        for q in &roots {
            assert!(q.matmul(q).unwrap().max_abs_diff(&d) < 1e-12);
        }
        for q in sqrt_2x2_all(&CMatrix::<Complex64>::identity(2)).unwrap() {
            assert!(q.matmul(&q).unwrap().max_abs_diff(&CMatrix::identity(2)) < 1e-12);
        }
        let jordan = CMatrix::from_rows(vec![
            vec![c(1.0, 0.0), c(1.0, 0.0)],
            vec![c(0.0, 0.0), c(1.0, 0.0)],
        ])
        .unwrap();
        assert_eq!(sqrt_2x2_all(&jordan), Err(Error::RepeatedEigenvalue));
        let singular = CMatrix::diag(&[c(0.0, 0.0), c(1.0, 0.0)]);
        assert_eq!(sqrt_2x2_all(&singular), Err(Error::ZeroEigenvalue));
    }

    #[test]
    fn exp_basics() {
        let y = pauli_y();
        assert!(herm_exp(&y, 0.0).unwrap().max_abs_diff(&CMatrix::identity(2)) < 1e-15);
        let e = herm_exp(&y, 0.7).unwrap();
        assert!(e.max_abs_diff(&exp_series(&y, 0.7)) < 1e-13);
        assert!(e.unitarity_defect() < 1e-12);
        let not_herm = CMatrix::from_rows(vec![
            vec![c(0.0, 0.0), c(1.0, 0.0)],
            vec![c(0.0, 0.0), c(0.0, 0.0)],
        ])
        .unwrap();
        assert!(matches!(herm_exp(&not_herm, 1.0), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn rank_one_projector_identity() {
        // H = h h^dagger with |h|^2 = 2 satisfies H^2 = 2H
        let h = CVector::new(vec![c(1.0, 0.0), -Complex64::from_polar(1.0, FRAC_PI_3)]);
        let proj = h.outer(&h);
        for theta in [0.3, 1.1, -2.5] {
            let want = CMatrix::identity(2)
                .add(&proj.scale(&((Complex64::from_polar(1.0, 2.0 * theta) - 1.0) / 2.0)))
                .unwrap();
            assert!(herm_exp(&proj, theta).unwrap().max_abs_diff(&want) < 1e-14);
        }
        let h3 = CVector::new(vec![c(1.0, 0.0), c(0.0, 1.0), c(-1.0, 0.0)]);
        let p3 = h3.outer(&h3);
        let want = CMatrix::identity(3)
            .add(&p3.scale(&((Complex64::from_polar(1.0, 3.0 * 0.4) - 1.0) / 3.0)))
            .unwrap();
        assert!(herm_exp(&p3, 0.4).unwrap().max_abs_diff(&want) < 1e-13);
    }

    #[test]
    fn exp_3x3_against_series() {
        let h = CMatrix::from_rows(vec![
            vec![c(1.0, 0.0), c(0.3, 0.2), c(-0.1, 0.5)],
            vec![c(0.3, -0.2), c(-0.4, 0.0), c(0.7, 0.0)],
            vec![c(-0.1, -0.5), c(0.7, 0.0), c(0.2, 0.0)],
        ])
        .unwrap();
        for theta in [0.1, 1.3, -3.0] {
            let e = herm_exp(&h, theta).unwrap();
            assert!(e.max_abs_diff(&exp_series(&h, theta)) < 1e-12);
            assert!(e.unitarity_defect() < 1e-12);
        }
        // repeated eigenvalues
        let d = CMatrix::diag(&[c(2.0, 0.0), c(2.0, 0.0), c(-1.0, 0.0)]);
        assert!(herm_exp(&d, 0.9).unwrap().max_abs_diff(&exp_series(&d, 0.9)) < 1e-13);
        let s = CMatrix::<Complex64>::identity(3).scale(&c(0.5, 0.0));
        assert!(herm_exp(&s, 0.9).unwrap().max_abs_diff(&exp_series(&s, 0.9)) < 1e-13);
    }
}
