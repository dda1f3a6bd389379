//! Certification of equiangular sets and the diagonal-extension sweep.
//!
//! Equiangularity is always tested on the squared modulus
//! `|<u,v>|^2` against the rational target `1/(d+1)`, so that exact mode only
//! compares field elements.

use std::cmp::Ordering;
use std::f64::consts::TAU;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::constructions::LineSet;
use crate::error::{Error, Result};
use crate::linalg::{gram, inner, CMatrix, CVector};
use crate::scalar::{Scalar, ScalarMode};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub n_vectors: usize,
    pub dim: usize,
    pub max_norm_violation: f64,
    pub max_angle_violation: f64,
    pub pass: bool,
    #[serde(flatten)]
    pub mode: ScalarMode,
    pub tolerance: f64,
    /// Target value of `|<u,v>|^2`.
    pub target: f64,
    /// `|<v_j,v_k>|^2 - target` off the diagonal and `|v_j|^2 - 1` on it,
    /// in absolute value.
    pub per_pair: Option<Vec<Vec<f64>>>,
}

impl VerificationReport {
    pub fn max_violation(&self) -> f64 {
        self.max_norm_violation.max(self.max_angle_violation)
    }
}

fn evaluate<S: Scalar>(s: &LineSet<S>, tol: f64, target: S) -> VerificationReport {
    let n = s.vectors.len();
    let one = S::one();
    let mut per_pair = vec![vec![0.0; n]; n];
    let mut pass = true;
    let (mut worst_norm, mut worst_angle): (f64, f64) = (0.0, 0.0);
    for j in 0..n {
        for k in j..n {
            let g = inner(&s.vectors[j], &s.vectors[k]).expect("line set has a common dimension");
            let diff = if j == k {
                g - one.clone()
            } else {
                g.abs_sq() - target.clone()
            };
            let v = diff.magnitude();
            pass &= diff.is_negligible(tol);
            per_pair[j][k] = v;
            per_pair[k][j] = v;
            if j == k {
                worst_norm = worst_norm.max(v);
            } else {
                worst_angle = worst_angle.max(v);
            }
        }
    }
    VerificationReport {
        n_vectors: n,
        dim: s.dim,
        max_norm_violation: worst_norm,
        max_angle_violation: worst_angle,
        pass,
        mode: s.mode,
        tolerance: tol,
        target: target.to_c64().re,
        per_pair: Some(per_pair),
    }
}

/// Unit norms and `|<u,v>|^2 = 1/(d+1)` for every pair of a `d^2`-element set.
/// Exact mode requires exact equality; `tol` then only labels the report.
pub fn check_sic<S: Scalar>(s: &LineSet<S>, tol: f64) -> Result<VerificationReport> {
    if s.vectors.len() != s.dim * s.dim {
        return Err(Error::WrongCardinality {
            expected: s.dim * s.dim,
            found: s.vectors.len(),
        });
    }
    Ok(evaluate(s, tol, S::from_ratio(1, s.dim as i64 + 1)))
}

/// The pairwise test without the cardinality requirement. `target_sq`
/// overrides the default `1/(d+1)`; in exact mode it must be a small
/// rational.
pub fn check_equiangular_partial<S: Scalar>(
    ctx: &S::Context,
    s: &LineSet<S>,
    tol: f64,
    target_sq: Option<f64>,
) -> Result<VerificationReport> {
    if s.vectors.len() < 2 {
        return Err(Error::WrongCardinality {
            expected: 2,
            found: s.vectors.len(),
        });
    }
    let target = match target_sq {
        None => S::from_ratio(1, s.dim as i64 + 1),
        Some(t) if t.is_finite() && t >= 0.0 => S::real_radical(ctx, t)?,
        Some(t) => {
            return Err(Error::InvalidParameter(format!("target {t} is not a valid |<u,v>|^2")))
        }
    };
    Ok(evaluate(s, tol, target))
}

fn triple_key(z: &Complex64) -> (i64, i64) {
    ((z.re * 1e9).round() as i64, (z.im * 1e9).round() as i64)
}

fn triple_order(a: &Complex64, b: &Complex64) -> Ordering {
    triple_key(a)
        .cmp(&triple_key(b))
        .then(a.re.total_cmp(&b.re))
        .then(a.im.total_cmp(&b.im))
}

/// `<v_j,v_k><v_k,v_l><v_l,v_j>` over all ordered triples, sorted
/// lexicographically on the real and imaginary parts rounded to 1e-9.
pub fn triple_products<S: Scalar>(s: &LineSet<S>) -> Result<Vec<Complex64>> {
    let g = gram(&s.embed().vectors)?;
    let n = g.n();
    let mut out = Vec::with_capacity(n * n * n);
    for j in 0..n {
        for k in 0..n {
            for l in 0..n {
                out.push(g.entry(j, k) * g.entry(k, l) * g.entry(l, j));
            }
        }
    }
    out.sort_by(triple_order);
    Ok(out)
}

/// Largest elementwise distance between two sorted triple-product lists;
/// infinite if the lengths differ.
pub fn triple_product_distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepResult {
    pub grid_resolution: usize,
    /// `[re, im]` of the best second diagonal entry.
    pub best_xi: Complex64,
    /// `[re, im]` of the best third diagonal entry.
    pub best_zeta: Complex64,
    pub best_xi_angle: f64,
    pub best_zeta_angle: f64,
    pub min_max_violation: f64,
}

const SWEEP_TOL: f64 = 1e-8;
/// Values this close to the running minimum count as ties.
const TIE_BAND: f64 = 1e-12;
const REFINE_STEPS: usize = 10;

fn check_sweep_basis(basis: &[CVector<Complex64>]) -> Result<()> {
    if basis.len() != 3 || basis.iter().any(|v| v.dim() != 3) {
        return Err(Error::InvalidBasis("the sweep needs three vectors in C^3".into()));
    }
    let below = [(0, 1), (0, 2), (1, 2)];
    if below.iter().any(|&(v, k)| basis[v][k].norm() > SWEEP_TOL) {
        return Err(Error::InvalidBasis("basis is not upper-triangular".into()));
    }
    if basis.iter().any(|v| (v.norm_sq().re - 1.0).abs() > SWEEP_TOL) {
        return Err(Error::InvalidBasis("basis vectors are not unit vectors".into()));
    }
    let g = gram(basis)?;
    if !g.is_circulant(SWEEP_TOL) {
        return Err(Error::InvalidBasis(format!(
            "Gram matrix is not circulant (defect {:e})",
            g.circulance_defect()
        )));
    }
    Ok(())
}

/// Worst deviation of the nine vectors `v0, D^t v1 (t<2), D^t v2 (t<6)` from a
/// SIC, with `D = diag(1, e^{i xi}, e^{i zeta})`.
pub fn extension_violation(basis: &[CVector<Complex64>], xi: f64, zeta: f64) -> f64 {
    let xi_p = Complex64::from_polar(1.0, xi);
    let zeta_p = Complex64::from_polar(1.0, zeta);
    let d = |v: &CVector<Complex64>, t: i32| {
        CVector::new(vec![v[0], v[1] * xi_p.powi(t), v[2] * zeta_p.powi(t)])
    };
    let mut set = vec![basis[0].clone()];
    set.extend((0..2).map(|t| d(&basis[1], t)));
    set.extend((0..6).map(|t| d(&basis[2], t)));
    let mut worst: f64 = 0.0;
    for j in 0..set.len() {
        worst = worst.max((set[j].norm_sq().re - 1.0).abs());
        for k in j + 1..set.len() {
            let g = inner(&set[j], &set[k]).expect("3-vectors");
            worst = worst.max((g.norm_sqr() - 0.25).abs());
        }
    }
    worst
}

/// Grid search over `D = diag(1, xi, zeta)` for the best nine-vector
/// extension of a triangular circulant-Gram basis in d=3, followed by one
/// refinement pass on a finer grid around the best cell. Cells are evaluated
/// in parallel; the reduction is sequential, so the result does not depend on
/// scheduling. Values within 1e-12 of the minimum are ties and go to the
/// smallest grid index.
pub fn diagonal_extension_sweep<S: Scalar>(
    basis: &[CVector<S>],
    resolution: usize,
) -> Result<SweepResult> {
    if resolution < 90 {
        return Err(Error::InvalidParameter(format!(
            "sweep resolution {resolution} is below the minimum of 90"
        )));
    }
    let basis: Vec<CVector<Complex64>> = basis.iter().map(CVector::embed).collect();
    check_sweep_basis(&basis)?;
    let cell = TAU / resolution as f64;
    let values: Vec<f64> = (0..resolution * resolution)
        .into_par_iter()
        .map(|idx| {
            let (i, j) = (idx / resolution, idx % resolution);
            extension_violation(&basis, cell * i as f64, cell * j as f64)
        })
        .collect();
    let (mut best_idx, mut best) = (0, f64::INFINITY);
    for (idx, &v) in values.iter().enumerate() {
        if v < best - TIE_BAND {
            (best_idx, best) = (idx, v);
        }
    }
    let (mut xi, mut zeta) = (
        cell * (best_idx / resolution) as f64,
        cell * (best_idx % resolution) as f64,
    );

    let fine = cell / REFINE_STEPS as f64;
    let span = 2 * REFINE_STEPS + 1;
    let (xi0, zeta0) = (xi, zeta);
    let refined: Vec<f64> = (0..span * span)
        .into_par_iter()
        .map(|idx| {
            let a = (idx / span) as f64 - REFINE_STEPS as f64;
            let b = (idx % span) as f64 - REFINE_STEPS as f64;
            extension_violation(&basis, xi0 + fine * a, zeta0 + fine * b)
        })
        .collect();
    for (idx, &v) in refined.iter().enumerate() {
        if v < best - TIE_BAND {
            best = v;
            xi = xi0 + fine * ((idx / span) as f64 - REFINE_STEPS as f64);
            zeta = zeta0 + fine * ((idx % span) as f64 - REFINE_STEPS as f64);
        }
    }
    let (xi, zeta) = (xi.rem_euclid(TAU), zeta.rem_euclid(TAU));
    Ok(SweepResult {
        grid_resolution: resolution,
        best_xi: Complex64::from_polar(1.0, xi),
        best_zeta: Complex64::from_polar(1.0, zeta),
        best_xi_angle: xi,
        best_zeta_angle: zeta,
        min_max_violation: best,
    })
}

/// `max |G(j,k) - G(j+1,k+1)|` over one orbit's residual block, i.e. how far
/// the block is from depending only on `k - j`.
pub fn toeplitz_defect(block: &CMatrix<Complex64>) -> f64 {
    let n = block.rows();
    let mut worst: f64 = 0.0;
    for j in 0..n.saturating_sub(1) {
        for k in 0..n.saturating_sub(1) {
            worst = worst.max((block.get(j, k) - block.get(j + 1, k + 1)).norm());
        }
    }
    worst
}
