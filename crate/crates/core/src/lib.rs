//! Construction and certification of SIC-POVMs in dimensions 2 and 3.
//!
//! Everything is generic over [`Scalar`]: `Complex<f32>`, `Complex<f64>` for
//! floating point, and [`CycloNumber`] for exact arithmetic in a cyclotomic
//! field. Inner products are conjugate-linear in the first argument.
//!
//! ```
//! use sicpovm::{check_sic, constructions::power::theorem1_sic, Conductor, ExactLineSet};
//!
//! let sic: ExactLineSet = theorem1_sic(&Conductor::DEFAULT).unwrap();
//! assert!(check_sic(&sic, 0.0).unwrap().pass);
//! ```

pub mod cli;
pub mod constructions;
pub mod cyclo;
pub mod error;
pub mod io;
pub mod linalg;
pub mod scalar;
pub mod spectral;
pub mod verify;

pub use constructions::{Construction, LineSet, Orbit};
pub use cyclo::CycloNumber;
pub use error::{Error, Result};
pub use linalg::{
    cycling_matrix, dual_basis, gram, inner, is_circulant, mat_power, CMatrix, CVector,
    GramMatrix,
};
pub use scalar::{Conductor, Real, Scalar, ScalarMode};
pub use spectral::{eigen_2x2, herm_exp, hermitian_angle, pseudo_angle, sqrt_2x2_all, EigenPair2};
pub use verify::{
    check_equiangular_partial, check_sic, diagonal_extension_sweep, triple_products, SweepResult,
    VerificationReport,
};

use num_complex::{Complex32, Complex64};

pub type Vector64 = CVector<Complex64>;
pub type Matrix64 = CMatrix<Complex64>;
pub type LineSet64 = LineSet<Complex64>;

pub type Vector32 = CVector<Complex32>;
pub type Matrix32 = CMatrix<Complex32>;
pub type LineSet32 = LineSet<Complex32>;

pub type ExactVector = CVector<CycloNumber>;
pub type ExactMatrix = CMatrix<CycloNumber>;
pub type ExactLineSet = LineSet<CycloNumber>;
