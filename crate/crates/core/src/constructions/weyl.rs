//! Weyl-Heisenberg orbits `X^a Z^b f` of a fiducial vector `f`.

use num_complex::Complex64;

use crate::constructions::LineSet;
use crate::error::{Error, Result};
use crate::linalg::{inner, mat_power, CMatrix, CVector};
use crate::scalar::Scalar;

/// Cyclic shift `X e_j = e_{j+1 mod d}`.
pub fn shift<S: Scalar>(d: usize) -> CMatrix<S> {
    let mut m = CMatrix::zeros(d, d);
    for j in 0..d {
        m.set((j + 1) % d, j, S::one());
    }
    m
}

/// Clock `Z = diag(1, w, ..., w^{d-1})`, `w = e^{2 pi i/d}`.
pub fn clock<S: Scalar>(ctx: &S::Context, d: usize) -> Result<CMatrix<S>> {
    let entries = (0..d)
        .map(|j| S::root_of_unity(ctx, d as u32, j as i64))
        .collect::<Result<Vec<_>>>()?;
    Ok(CMatrix::diag(&entries))
}

/// The `d^2` vectors `X^a Z^b f`, `a` outer and `b` inner, without
/// deduplication.
pub fn weyl_sic<S: Scalar>(ctx: &S::Context, d: usize, fiducial: &CVector<S>) -> Result<LineSet<S>> {
    if !(2..=3).contains(&d) {
        return Err(Error::InvalidParameter(format!(
            "Weyl orbits are provided for d = 2, 3, not {d}"
        )));
    }
    if fiducial.dim() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: fiducial.dim(),
        });
    }
    let defect = fiducial.norm_sq() - S::one();
    if !defect.is_negligible(1e-12) {
        return Err(Error::NotUnit {
            deviation: defect.magnitude(),
        });
    }
    let x = shift::<S>(d);
    let z = clock::<S>(ctx, d)?;
    let mut vectors = Vec::with_capacity(d * d);
    for a in 0..d as i64 {
        let xa = mat_power(&x, a)?;
        for b in 0..d as i64 {
            vectors.push(xa.matmul(&mat_power(&z, b)?)?.apply(fiducial)?);
        }
    }
    LineSet::new(ctx, vectors, format!("weyl-d{d}"))
}

/// `(0, 1, -e^{i phi})/sqrt2`. Every `phi` gives a d=3 SIC fiducial.
pub fn split_fiducial_d3<S: Scalar>(ctx: &S::Context, phi: f64) -> Result<CVector<S>> {
    let inv_s2 = S::one().checked_div(&S::sqrt_int(ctx, 2)?)?;
    Ok(CVector::new(vec![S::zero(), S::one(), -S::phase(ctx, phi)?]).scale(&inv_s2))
}

/// The member `phi = pi/9` of the family above, whose SIC has the same
/// triple products as the bicyclic d=3 set.
pub fn fiducial_d3<S: Scalar>(ctx: &S::Context) -> Result<CVector<S>> {
    split_fiducial_d3(ctx, std::f64::consts::PI / 9.0)
}

/// An exact d=2 fiducial: the Bloch vector `(1,1,1)/sqrt3`, written as
/// `P e / (1 - zeta_8)` with `P = (I + (X+Y+Z)/sqrt3)/2` and
/// `e = (sqrt2 - 1, 1)`, for which `|P e|^2 = 2 - sqrt2 = |1 - zeta_8|^2`.
pub fn fiducial_d2<S: Scalar>(ctx: &S::Context) -> Result<CVector<S>> {
    let i = S::root_of_unity(ctx, 4, 1)?;
    let s2 = S::sqrt_int(ctx, 2)?;
    let inv_s3 = S::one().checked_div(&S::sqrt_int(ctx, 3)?)?;
    let half = S::from_ratio(1, 2);
    let one = S::one();
    // X + Y + Z = [[1, 1 - i], [1 + i, -1]]
    let xyz = CMatrix::from_rows(vec![
        vec![one.clone(), one.clone() - i.clone()],
        vec![one.clone() + i, -one.clone()],
    ])?;
    let p = CMatrix::identity(2).add(&xyz.scale(&inv_s3))?.scale(&half);
    let e = CVector::new(vec![s2 - one.clone(), one.clone()]);
    let w = one - S::root_of_unity(ctx, 8, 1)?;
    Ok(p.apply(&e)?.scale(&S::one().checked_div(&w)?))
}

fn d2_objective(f: &CVector<Complex64>, x: &CMatrix<Complex64>, z: &CMatrix<Complex64>) -> f64 {
    let vs = [
        f.clone(),
        z.apply(f).expect("2x2"),
        x.apply(f).expect("2x2"),
        x.matmul(z).expect("2x2").apply(f).expect("2x2"),
    ];
    let mut s = 0.0;
    for j in 0..4 {
        for k in j + 1..4 {
            let dev = inner(&vs[j], &vs[k]).expect("2-vectors").norm_sqr() - 1.0 / 3.0;
            s += dev * dev;
        }
    }
    s
}

fn d2_candidate(t: f64, p: f64) -> CVector<Complex64> {
    CVector::new(vec![
        Complex64::new(t.cos(), 0.0),
        Complex64::from_polar(t.sin(), p),
    ])
}

/// A d=2 fiducial found numerically: coarse grid over `(cos t, e^{ip} sin t)`
/// then compass search on the summed squared deviations from 1/3.
pub fn search_fiducial_d2() -> CVector<Complex64> {
    let x = shift::<Complex64>(2);
    let z = clock::<Complex64>(&(), 2).expect("float clock");
    let f = |t: f64, p: f64| d2_objective(&d2_candidate(t, p), &x, &z);
    let (nt, np) = (32, 64);
    let (mut bt, mut bp, mut best) = (0.0, 0.0, f64::INFINITY);
    for i in 0..nt {
        for j in 0..np {
            let t = std::f64::consts::FRAC_PI_2 * (i as f64 + 0.5) / nt as f64;
            let p = std::f64::consts::TAU * j as f64 / np as f64;
            let v = f(t, p);
            if v < best {
                (bt, bp, best) = (t, p, v);
            }
        }
    }
    let mut step = 0.05;
    while step > 1e-15 {
        let mut improved = false;
        for (dt, dp) in [(step, 0.0), (-step, 0.0), (0.0, step), (0.0, -step)] {
            let v = f(bt + dt, bp + dp);
            if v < best {
                (bt, bp, best) = (bt + dt, bp + dp, v);
                improved = true;
            }
        }
        if !improved {
            step *= 0.5;
        }
    }
    d2_candidate(bt, bp)
}
