//! The magic-angle form of the d=2 bicyclic SIC.
//!
//! With `h = (1, -e^{i pi/3})` and `H = h h^dagger`, the set
//! `{v0, E v0, (H*E) v0, (H*H*E) v0}` is a SIC, where `E = e^{i theta_m H}`,
//! `theta_m = arccos(1/sqrt3)` and `*` is the entrywise product.
//!
//! Since `H^2 = 2H`, `E = I + ((e^{2 i theta_m} - 1)/2) H` and
//! `e^{2 i theta_m} = -1/3 + (2 sqrt2/3) i`, so `E` is exact in the field.

use num_complex::Complex64;

use crate::constructions::LineSet;
use crate::error::Result;
use crate::linalg::{mat_power, CMatrix, CVector};
use crate::scalar::Scalar;
use crate::spectral::{herm_exp, pauli_y, pauli_z};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HadamardVariant {
    /// Entrywise products of matrices: `(H * ... * E) v0`.
    ProjectorChain,
    /// Entrywise products of vectors: `(E v0) * h * ...`.
    VectorChain,
}

/// `theta_m = arccos(1/sqrt3)`.
pub fn magic_angle() -> f64 {
    (1.0 / 3f64.sqrt()).acos()
}

pub fn hadamard_vector<S: Scalar>(ctx: &S::Context) -> Result<CVector<S>> {
    Ok(CVector::new(vec![S::one(), -S::root_of_unity(ctx, 6, 1)?]))
}

/// `H = [[1, -e^{-i pi/3}], [-e^{i pi/3}, 1]]`.
pub fn hadamard_projector<S: Scalar>(ctx: &S::Context) -> Result<CMatrix<S>> {
    let h = hadamard_vector::<S>(ctx)?;
    Ok(h.outer(&h))
}

/// `e^{i theta_m H}` from the closed form.
pub fn magic_unitary<S: Scalar>(ctx: &S::Context) -> Result<CMatrix<S>> {
    let h = hadamard_projector::<S>(ctx)?;
    let i = S::root_of_unity(ctx, 4, 1)?;
    let c = S::from_ratio(-2, 3) + i * S::sqrt_int(ctx, 2)? * S::from_ratio(1, 3);
    CMatrix::identity(2).add(&h.scale(&c))
}

/// `e^{i theta_m H}` through the general spectral exponential.
pub fn magic_unitary_spectral() -> Result<CMatrix<Complex64>> {
    herm_exp(&hadamard_projector::<Complex64>(&())?, magic_angle())
}

pub fn hadamard_sic<S: Scalar>(ctx: &S::Context, variant: HadamardVariant) -> Result<LineSet<S>> {
    let e = magic_unitary::<S>(ctx)?;
    let v0 = CVector::basis(2, 0);
    let ev0 = e.apply(&v0)?;
    let vectors = match variant {
        HadamardVariant::ProjectorChain => {
            let h = hadamard_projector::<S>(ctx)?;
            let he = h.hadamard(&e)?;
            let hhe = h.hadamard(&he)?;
            vec![v0.clone(), ev0, he.apply(&v0)?, hhe.apply(&v0)?]
        }
        HadamardVariant::VectorChain => {
            let h = hadamard_vector::<S>(ctx)?;
            let w1 = ev0.hadamard(&h)?;
            let w2 = w1.hadamard(&h)?;
            vec![v0, ev0, w1, w2]
        }
    };
    LineSet::new(ctx, vectors, "hadamard-d2")
}

/// `e^{-i theta_m Y} Z`, which reproduces the d=2 bicyclic unitary.
pub fn u2_from_exponential() -> Result<CMatrix<Complex64>> {
    herm_exp(&pauli_y(), -magic_angle())?.matmul(&pauli_z())
}

/// Smallest `k` in `1..=k_max` with `E^k = I` within `tol`, if any.
pub fn magic_unitary_order(k_max: u32, tol: f64) -> Result<Option<u32>> {
    let e = magic_unitary::<Complex64>(&())?;
    let id = CMatrix::identity(2);
    let mut p = id.clone();
    for k in 1..=k_max {
        p = p.matmul(&e)?;
        if p.max_abs_diff(&id) <= tol {
            return Ok(Some(k));
        }
    }
    Ok(None)
}

/// `E^k` for any integer `k`.
pub fn magic_unitary_power<S: Scalar>(ctx: &S::Context, k: i64) -> Result<CMatrix<S>> {
    mat_power(&magic_unitary::<S>(ctx)?, k)
}
