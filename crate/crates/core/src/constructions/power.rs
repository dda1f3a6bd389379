//! The single-matrix construction in dimension 2: powers `M^j v0` for
//! `j = 0..3` of one non-unitary matrix form a SIC.

use num_complex::Complex64;

use crate::constructions::LineSet;
use crate::error::{Error, Result};
use crate::linalg::{mat_power, CMatrix, CVector};
use crate::scalar::Scalar;

/// `M = (1/sqrt3) [[1, e^{i pi/3}/sqrt2], [sqrt2, -2 e^{i pi/3}]]`.
pub fn theorem1_matrix<S: Scalar>(ctx: &S::Context) -> Result<CMatrix<S>> {
    let s2 = S::sqrt_int(ctx, 2)?;
    let inv_s3 = S::one().checked_div(&S::sqrt_int(ctx, 3)?)?;
    let w = S::root_of_unity(ctx, 6, 1)?;
    let half = S::from_ratio(1, 2);
    let m = CMatrix::from_rows(vec![
        vec![S::one(), w.clone() * s2.clone() * half],
        vec![s2, -(S::from_ratio(2, 1) * w)],
    ])?;
    Ok(m.scale(&inv_s3))
}

/// `M^j v0` for every `j` in `j_min..=j_max`.
pub fn power_orbit<S: Scalar>(
    m: &CMatrix<S>,
    v0: &CVector<S>,
    j_min: i64,
    j_max: i64,
) -> Result<Vec<CVector<S>>> {
    if j_min > j_max {
        return Err(Error::InvalidParameter(format!(
            "empty power range {j_min}..={j_max}"
        )));
    }
    let mut v = mat_power(m, j_min)?.apply(v0)?;
    let mut out = Vec::with_capacity((j_max - j_min + 1) as usize);
    for _ in j_min..j_max {
        let next = m.apply(&v)?;
        out.push(v);
        v = next;
    }
    out.push(v);
    Ok(out)
}

pub fn theorem1_sic<S: Scalar>(ctx: &S::Context) -> Result<LineSet<S>> {
    let m = theorem1_matrix(ctx)?;
    LineSet::new(ctx, power_orbit(&m, &CVector::basis(2, 0), 0, 3)?, "power-d2")
}

/// The four vectors in their written form, with the third as
/// `(i/sqrt3)(e^{-i pi/3}, -sqrt2)`. Each equals `M^j v0` exactly.
pub fn theorem1_listed_vectors<S: Scalar>(ctx: &S::Context) -> Result<Vec<CVector<S>>> {
    let s2 = S::sqrt_int(ctx, 2)?;
    let inv_s3 = S::one().checked_div(&S::sqrt_int(ctx, 3)?)?;
    let i = S::root_of_unity(ctx, 4, 1)?;
    let w_bar = S::root_of_unity(ctx, 6, -1)?;
    let v = |a: S, b: S| CVector::new(vec![a, b]).scale(&inv_s3);
    Ok(vec![
        CVector::basis(2, 0),
        v(S::one(), s2.clone()),
        v(i.clone() * w_bar.clone(), -(i * s2.clone())),
        v(S::one(), -(s2 * w_bar)),
    ])
}

/// Closed-form eigenvalues `-i/2 +- sqrt(1 + 2 sqrt3 i)/2` (principal root),
/// returned as `(lambda_plus, lambda_minus)`.
pub fn theorem1_eigenvalues() -> (Complex64, Complex64) {
    let root = Complex64::new(1.0, 2.0 * 3f64.sqrt()).sqrt();
    let base = Complex64::new(0.0, -0.5);
    (base + root * 0.5, base - root * 0.5)
}

/// Which way to walk from the centre of the sequence, which sits between
/// `v1` and `v2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NormDirection {
    /// `|v_2|^2, |v_3|^2, |v_4|^2, ...`
    Forward,
    /// `|v_1|^2, |v_0|^2, |v_-1|^2, ...`
    Backward,
}

/// Squared norms of `M^j v0` walking outward from the centre. Every term must
/// be an integer (exactly, or within 1e-6 in float mode).
pub fn norm_sequence<S: Scalar>(
    ctx: &S::Context,
    direction: NormDirection,
    count: usize,
) -> Result<Vec<u64>> {
    if count == 0 {
        return Err(Error::InvalidParameter("count must be at least 1".into()));
    }
    let m = theorem1_matrix::<S>(ctx)?;
    let (step, start) = match direction {
        NormDirection::Forward => (m.clone(), 2),
        NormDirection::Backward => (m.inverse()?, 1),
    };
    let mut v = mat_power(&m, start)?.apply(&CVector::basis(2, 0))?;
    let mut out = Vec::with_capacity(count);
    for k in 0..count {
        if k > 0 {
            v = step.apply(&v)?;
        }
        let n = v.norm_sq();
        let term = n
            .to_integer(1e-6)
            .and_then(|t| u64::try_from(t).ok())
            .ok_or(Error::NonIntegralNorm {
                value: n.to_c64().re,
            })?;
        out.push(term);
    }
    Ok(out)
}

fn flip<S: Scalar>() -> CMatrix<S> {
    CMatrix::from_rows(vec![vec![S::zero(), S::one()], vec![S::one(), S::zero()]])
        .expect("2x2 literal")
}

/// `u_r = B^r u0` with `B = (M^dagger)^{-1}` and `u0 = (0, 1)`.
pub fn dual_sic_theorem1<S: Scalar>(ctx: &S::Context) -> Result<LineSet<S>> {
    let b = theorem1_matrix::<S>(ctx)?.adjoint().inverse()?;
    LineSet::new(
        ctx,
        power_orbit(&b, &CVector::basis(2, 1), 0, 3)?,
        "power-d2-dual",
    )
}

/// `G^{-j} v0` for `j = 0..3` with `G = X M^dagger X`, which is `X u_j`.
/// The forward powers `G^j v0` are not equiangular.
pub fn flipped_adjoint_sic<S: Scalar>(ctx: &S::Context) -> Result<LineSet<S>> {
    let x = flip::<S>();
    let g = x.matmul(&theorem1_matrix::<S>(ctx)?.adjoint())?.matmul(&x)?;
    let mut vectors = power_orbit(&g, &CVector::basis(2, 0), -3, 0)?;
    vectors.reverse();
    LineSet::new(
        ctx,
        vectors,
        "power-d2-flipped",
    )
}

/// Half-integer indexing through a square root `Q` of `M`: with the central
/// vector `u0 = Q^3 v0`, returns `u_{-3/2}, u_{-1/2}, u_{1/2}, u_{3/2}`, where
/// `u_{k/2} = Q^k u0`.
pub fn half_step_vectors<S: Scalar>(q: &CMatrix<S>, v0: &CVector<S>) -> Result<Vec<CVector<S>>> {
    let u0 = mat_power(q, 3)?.apply(v0)?;
    [-3, -1, 1, 3]
        .into_iter()
        .map(|k| mat_power(q, k)?.apply(&u0))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::CycloNumber;
    use crate::linalg::inner;
    use crate::scalar::Conductor;

    #[test]
    fn first_column_is_v1() {
        let m = theorem1_matrix::<Complex64>(&()).unwrap();
        let v1 = m.apply(&CVector::basis(2, 0)).unwrap();
        let s3 = 3f64.sqrt();
        assert!((v1[0] - Complex64::new(1.0 / s3, 0.0)).norm() < 1e-15);
        assert!((v1[1] - Complex64::new(2f64.sqrt() / s3, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn exact_and_float_matrices_agree() {
        let e = theorem1_matrix::<CycloNumber>(&Conductor::DEFAULT).unwrap();
        let f = theorem1_matrix::<Complex64>(&()).unwrap();
        assert!(e.embed().max_abs_diff(&f) < 1e-15);
    }

    #[test]
    fn sequence_terms_are_symmetric() {
        let ctx = Conductor::DEFAULT;
        let fwd = norm_sequence::<CycloNumber>(&ctx, NormDirection::Forward, 12).unwrap();
        let back = norm_sequence::<CycloNumber>(&ctx, NormDirection::Backward, 12).unwrap();
        assert_eq!(fwd, back);
        assert_eq!(&fwd[..6], &[1, 1, 2, 3, 5, 9]);
    }

    #[test]
    fn zero_count_is_rejected() {
        assert!(norm_sequence::<Complex64>(&(), NormDirection::Forward, 0).is_err());
    }

    #[test]
    fn power_range_endpoints() {
        let m = theorem1_matrix::<Complex64>(&()).unwrap();
        let v0 = CVector::basis(2, 0);
        let single = power_orbit(&m, &v0, 0, 0).unwrap();
        assert_eq!(single, vec![v0.clone()]);
        assert!(power_orbit(&m, &v0, 2, 1).is_err());
    }

    #[test]
    fn dual_is_orthogonal_term_by_term() {
        let ctx = Conductor::DEFAULT;
        let u = dual_sic_theorem1::<CycloNumber>(&ctx).unwrap();
        let v = theorem1_sic::<CycloNumber>(&ctx).unwrap();
        for (a, b) in u.vectors.iter().zip(&v.vectors) {
            assert!(num_traits::Zero::is_zero(&inner(a, b).unwrap()));
        }
    }
}
