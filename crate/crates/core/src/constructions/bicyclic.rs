//! Bicyclic SICs: a triangular basis cycled by a unitary `U`, each basis
//! vector then spread into an orbit by a diagonal phase matrix `D`.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::constructions::ranga::ranga_residual;
use crate::constructions::{LineSet, Orbit};
use crate::error::{Error, Result};
use crate::linalg::{cycling_matrix, inner, mat_power, CMatrix, CVector};
use crate::scalar::Scalar;
use crate::verify::check_sic;

const ORBIT_LIMIT: usize = 64;

#[derive(Clone, Debug, PartialEq)]
pub struct BicyclicD2<S> {
    pub u: CMatrix<S>,
    pub d: CMatrix<S>,
    pub sic: LineSet<S>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BicyclicD3<S> {
    pub u: CMatrix<S>,
    pub d: CMatrix<S>,
    pub sic: LineSet<S>,
    pub orbits: Vec<Orbit<S>>,
}

fn verified<S: Scalar>(sic: LineSet<S>) -> Result<LineSet<S>> {
    let report = check_sic(&sic, 1e-10)?;
    if report.pass {
        Ok(sic)
    } else {
        Err(Error::VerificationFailed {
            max_violation: report.max_violation(),
        })
    }
}

/// `v1 = (1, sqrt2)/sqrt3`, the d=2 partner of `v0 = (1, 0)`.
pub fn bicyclic_basis_d2<S: Scalar>(ctx: &S::Context) -> Result<Vec<CVector<S>>> {
    let inv_s3 = S::one().checked_div(&S::sqrt_int(ctx, 3)?)?;
    Ok(vec![
        CVector::basis(2, 0),
        CVector::new(vec![S::one(), S::sqrt_int(ctx, 2)?]).scale(&inv_s3),
    ])
}

/// d=2 with `D = diag(1, e^{2 pi i/3})`.
pub fn bicyclic_d2<S: Scalar>(ctx: &S::Context) -> Result<BicyclicD2<S>> {
    bicyclic_d2_with_root(ctx, 1)
}

/// d=2 with `D = diag(1, zeta_3^k)`; `k` must not be a multiple of 3.
pub fn bicyclic_d2_with_root<S: Scalar>(ctx: &S::Context, k: i64) -> Result<BicyclicD2<S>> {
    if k.rem_euclid(3) == 0 {
        return Err(Error::InvalidParameter(
            "the phase in D must be a primitive cube root of unity".into(),
        ));
    }
    let basis = bicyclic_basis_d2::<S>(ctx)?;
    let u = cycling_matrix(&basis)?;
    let d = CMatrix::diag(&[S::one(), S::root_of_unity(ctx, 3, k)?]);
    let dv1 = d.apply(&basis[1])?;
    let ddv1 = d.apply(&dv1)?;
    let sic = LineSet::new(
        ctx,
        vec![basis[0].clone(), basis[1].clone(), dv1, ddv1],
        "bicyclic-d2",
    )?;
    Ok(BicyclicD2 {
        u,
        d,
        sic: verified(sic)?,
    })
}

/// Parameters of the d=3 triangular basis
/// `v1 = (e^{ix}/2, (sqrt3/2) e^{iy}, 0)`,
/// `v2 = (e^{-ix}/2, r e^{i eta}, sqrt(3/4 - r^2) e^{i kappa})`
/// and of `D = diag(1, e^{i xi}, e^{i zeta})`. All angles are in radians.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BicyclicSolution {
    pub x: f64,
    pub y: f64,
    pub r: f64,
    pub eta: f64,
    pub kappa: f64,
    pub xi: f64,
    pub zeta: f64,
}

impl BicyclicSolution {
    /// `x = pi/9, y = 2pi/9, r = 1/2, eta = pi/2, kappa = 0`, `D = diag(1, -1, e^{2 pi i/3})`.
    pub fn reference() -> Self {
        BicyclicSolution {
            x: PI / 9.0,
            y: 2.0 * PI / 9.0,
            r: 0.5,
            eta: FRAC_PI_2,
            kappa: 0.0,
            xi: PI,
            zeta: TAU / 3.0,
        }
    }

    /// Solve the circulance equation for `r` and `eta` given the top phase
    /// `x` and the phase `y` of `v1`. `D` defaults to `diag(1, -1, e^{2 pi i/3})`.
    pub fn from_top_phase(x: f64, y: f64) -> Result<Self> {
        let w = Complex64::from_polar(0.5, x) - Complex64::from_polar(0.25, -2.0 * x);
        let r = 2.0 * w.norm() / 3f64.sqrt();
        if r > 3f64.sqrt() / 2.0 + 1e-12 {
            return Err(Error::InvalidParameter(format!(
                "top phase {x} needs r = {r}, beyond sqrt(3)/2"
            )));
        }
        let eta = if w.norm() < 1e-15 { y } else { y + w.arg() };
        Ok(BicyclicSolution {
            x,
            y,
            r,
            eta: eta.rem_euclid(TAU),
            kappa: 0.0,
            xi: PI,
            zeta: TAU / 3.0,
        })
    }

    /// The real triple: `x = y = 0` forces `r = 1/(2 sqrt3)` and `eta = 0`.
    pub fn totally_real() -> Self {
        Self::from_top_phase(0.0, 0.0).expect("x = 0 is solvable")
    }

    pub fn with_zeta(self, zeta: f64) -> Self {
        BicyclicSolution { zeta, ..self }
    }

    pub fn with_xi(self, xi: f64) -> Self {
        BicyclicSolution { xi, ..self }
    }

    /// `eta - y`, the phase of the middle term.
    pub fn phase_diff(&self) -> f64 {
        self.eta - self.y
    }

    pub fn residual(&self) -> f64 {
        ranga_residual(Complex64::from_polar(1.0, self.x), self.r, self.phase_diff())
    }
}

/// `[v0, v1, v2]` for the given parameters.
pub fn bicyclic_basis_d3<S: Scalar>(
    ctx: &S::Context,
    sol: &BicyclicSolution,
) -> Result<Vec<CVector<S>>> {
    if !(0.0..=3f64.sqrt() / 2.0 + 1e-12).contains(&sol.r) {
        return Err(Error::InvalidParameter(format!(
            "r = {} lies outside [0, sqrt(3)/2]",
            sol.r
        )));
    }
    let half = S::from_ratio(1, 2);
    let tail = (0.75 - sol.r * sol.r).max(0.0).sqrt();
    let v1 = CVector::new(vec![
        half.clone() * S::phase(ctx, sol.x)?,
        S::sqrt_int(ctx, 3)? * half.clone() * S::phase(ctx, sol.y)?,
        S::zero(),
    ]);
    let v2 = CVector::new(vec![
        half * S::phase(ctx, -sol.x)?,
        S::real_radical(ctx, sol.r)? * S::phase(ctx, sol.eta)?,
        S::real_radical(ctx, tail)? * S::phase(ctx, sol.kappa)?,
    ]);
    Ok(vec![CVector::basis(3, 0), v1, v2])
}

pub fn diagonal_d3<S: Scalar>(ctx: &S::Context, sol: &BicyclicSolution) -> Result<CMatrix<S>> {
    Ok(CMatrix::diag(&[
        S::one(),
        S::phase(ctx, sol.xi)?,
        S::phase(ctx, sol.zeta)?,
    ]))
}

/// The d=3 construction. The parameters must satisfy the circulance equation
/// to within 1e-10; the orbits must have sizes 1, 2 and 6 and their union
/// must pass the SIC check.
pub fn bicyclic_d3<S: Scalar>(ctx: &S::Context, sol: &BicyclicSolution) -> Result<BicyclicD3<S>> {
    let residual = sol.residual();
    if residual > 1e-10 {
        return Err(Error::InvalidParameter(format!(
            "basis Gram matrix is not circulant (residual {residual:e})"
        )));
    }
    let basis = bicyclic_basis_d3::<S>(ctx, sol)?;
    let u = cycling_matrix(&basis)?;
    let d = diagonal_d3::<S>(ctx, sol)?;
    let orbits = basis
        .iter()
        .enumerate()
        .map(|(k, v)| Orbit::generate(&d, v, k, ORBIT_LIMIT, 1e-12))
        .collect::<Result<Vec<_>>>()?;
    let sizes: Vec<usize> = orbits.iter().map(Orbit::len).collect();
    if sizes != [1, 2, 6] {
        return Err(Error::InvalidParameter(format!(
            "orbit sizes {sizes:?} differ from [1, 2, 6]"
        )));
    }
    let vectors = orbits.iter().flat_map(|o| o.vectors.iter().cloned()).collect();
    let sic = verified(LineSet::new(ctx, vectors, "bicyclic-d3")?)?;
    Ok(BicyclicD3 { u, d, sic, orbits })
}

/// Replace the third entry of `D` by `e^{i zeta_prime}` and return the worst
/// deviation of `|<D^t v2, w>|^2` from 1/4 over `w` in the first two orbits
/// and `t = 0..12`.
pub fn fall_into_line_defect(sol: &BicyclicSolution, zeta_prime: f64) -> Result<f64> {
    let basis = bicyclic_basis_d3::<Complex64>(&(), sol)?;
    let d = diagonal_d3::<Complex64>(&(), &sol.with_zeta(zeta_prime))?;
    let mut lower = vec![basis[0].clone()];
    lower.extend(Orbit::generate(&d, &basis[1], 1, ORBIT_LIMIT, 1e-12)?.vectors);
    let mut worst: f64 = 0.0;
    for t in 0..12 {
        let w = mat_power(&d, t)?.apply(&basis[2])?;
        for v in &lower {
            worst = worst.max((inner(&w, v)?.norm_sqr() - 0.25).abs());
        }
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::CycloNumber;
    use crate::scalar::Conductor;

    #[test]
    fn reference_parameters_solve_the_equation() {
        assert!(BicyclicSolution::reference().residual() < 1e-15);
        let s = BicyclicSolution::from_top_phase(PI / 9.0, 2.0 * PI / 9.0).unwrap();
        assert!((s.r - 0.5).abs() < 1e-14);
        assert!((s.eta - FRAC_PI_2).abs() < 1e-14);
    }

    #[test]
    fn real_triple_parameters() {
        let s = BicyclicSolution::totally_real();
        assert!((s.r - 1.0 / (2.0 * 3f64.sqrt())).abs() < 1e-15);
        assert_eq!(s.eta, 0.0);
        assert!(s.residual() < 1e-15);
        let basis = bicyclic_basis_d3::<CycloNumber>(&Conductor::DEFAULT, &s).unwrap();
        for v in &basis {
            for z in v.iter() {
                assert!(z.embed().im.abs() < 1e-15);
            }
        }
    }

    #[test]
    fn wrong_d2_root_rejected() {
        assert!(bicyclic_d2_with_root::<Complex64>(&(), 3).is_err());
        assert!(bicyclic_d2_with_root::<Complex64>(&(), 2).is_ok());
    }

    #[test]
    fn unsolved_parameters_rejected() {
        let bad = BicyclicSolution {
            r: 0.4,
            ..BicyclicSolution::reference()
        };
        assert!(bicyclic_d3::<Complex64>(&(), &bad).is_err());
    }

    #[test]
    fn sixth_root_zeta_also_works() {
        let sol = BicyclicSolution::reference().with_zeta(PI / 3.0);
        let b = bicyclic_d3::<CycloNumber>(&Conductor::DEFAULT, &sol).unwrap();
        assert_eq!(b.sic.len(), 9);
    }
}
