//! The scalar abstraction shared by floating-point and exact arithmetic.
//!
//! Every vector and matrix routine in this crate is written once against
//! [`Scalar`]. Two families implement it:
//!
//! * `Complex<T>` for `T = f32 | f64` (float mode, context `()`),
//! * [`CycloNumber`](crate::cyclo::CycloNumber), exact elements of a
//!   cyclotomic field (exact mode, context [`Conductor`]).
//!
//! Constructors that need irrational values (roots of unity, square roots of
//! small integers) take the context so that exact mode knows which field the
//! value must live in.

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::{Complex, Complex64};
use num_traits::{Float, FloatConst, One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Conductor `n` of the cyclotomic field Q(zeta_n) used in exact mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Conductor(pub u32);

impl Conductor {
    /// Smallest conductor holding every closed-form entry of the constructions:
    /// it contains zeta_36, zeta_8 and zeta_12.
    pub const DEFAULT: Conductor = Conductor(72);
}

impl Default for Conductor {
    fn default() -> Self {
        Conductor::DEFAULT
    }
}

/// Which arithmetic a set of vectors lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "lowercase")]
pub enum ScalarMode {
    Float,
    Exact { conductor: u32 },
}

impl ScalarMode {
    pub fn is_exact(&self) -> bool {
        matches!(self, ScalarMode::Exact { .. })
    }
}

/// Real floating-point types usable inside `Complex<T>` scalars.
pub trait Real: Float + FloatConst + Debug + Default + Send + Sync + 'static {}

impl Real for f32 {}
impl Real for f64 {}

pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Send
    + Sync
    + 'static
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    type Context: Clone + Debug + Send + Sync;

    fn mode(ctx: &Self::Context) -> ScalarMode;

    fn is_exact() -> bool;

    /// Complex conjugate.
    fn conj(&self) -> Self;

    /// Multiplicative inverse, `None` for zero.
    fn inv(&self) -> Option<Self>;

    /// `self * conj(self)`.
    fn abs_sq(&self) -> Self {
        self.clone() * self.conj()
    }

    /// Floating-point embedding into C.
    fn to_c64(&self) -> Complex64;

    /// Zero test: exact equality in exact mode, `|self| <= tol` in float mode.
    fn is_negligible(&self, tol: f64) -> bool;

    fn from_ratio(num: i64, den: i64) -> Self;

    /// e^{2 pi i k / order}.
    fn root_of_unity(ctx: &Self::Context, order: u32, k: i64) -> Result<Self>;

    /// Positive square root of a non-negative integer.
    fn sqrt_int(ctx: &Self::Context, m: u64) -> Result<Self>;

    /// e^{i radians}. Exact mode only accepts angles that are multiples of
    /// 2 pi / conductor.
    fn phase(ctx: &Self::Context, radians: f64) -> Result<Self>;

    /// A real number given in floating point. Exact mode recognises
    /// `+-sqrt(p/q)` for small `q` whose radical lies in the field.
    fn real_radical(ctx: &Self::Context, value: f64) -> Result<Self>;

    /// The integer this value equals (exact) or is within `tol` of (float).
    fn to_integer(&self, tol: f64) -> Option<i128>;

    fn magnitude(&self) -> f64 {
        self.to_c64().norm()
    }

    fn checked_div(&self, other: &Self) -> Result<Self> {
        other
            .inv()
            .map(|inv| self.clone() * inv)
            .ok_or(Error::DivisionByZero)
    }
}

fn real_from_f64<T: Real>(x: f64) -> T {
    T::from(x).expect("f64 converts into every Real type")
}

impl<T: Real> Scalar for Complex<T> {
    type Context = ();

    fn mode(_: &()) -> ScalarMode {
        ScalarMode::Float
    }

    fn is_exact() -> bool {
        false
    }

    fn conj(&self) -> Self {
        Complex::conj(self)
    }

    fn inv(&self) -> Option<Self> {
        if self.re.is_zero() && self.im.is_zero() {
            None
        } else {
            Some(Complex::inv(self))
        }
    }

    fn abs_sq(&self) -> Self {
        Complex::new(self.norm_sqr(), T::zero())
    }

    fn to_c64(&self) -> Complex64 {
        Complex64::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }

    fn is_negligible(&self, tol: f64) -> bool {
        self.to_c64().norm() <= tol
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        Complex::new(real_from_f64::<T>(num as f64) / real_from_f64(den as f64), T::zero())
    }

    fn root_of_unity(_: &(), order: u32, k: i64) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidParameter("root of unity of order 0".into()));
        }
        let k = k.rem_euclid(order as i64);
        let angle = T::TAU() * real_from_f64(k as f64) / real_from_f64(order as f64);
        Ok(Complex::from_polar(T::one(), angle))
    }

    fn sqrt_int(_: &(), m: u64) -> Result<Self> {
        Ok(Complex::new(real_from_f64::<T>(m as f64).sqrt(), T::zero()))
    }

    fn phase(_: &(), radians: f64) -> Result<Self> {
        if !radians.is_finite() {
            return Err(Error::NotRepresentable {
                value: radians,
                reason: "angle is not finite",
            });
        }
        Ok(Complex::from_polar(T::one(), real_from_f64(radians)))
    }

    fn real_radical(_: &(), value: f64) -> Result<Self> {
        if !value.is_finite() {
            return Err(Error::NotRepresentable {
                value,
                reason: "value is not finite",
            });
        }
        Ok(Complex::new(real_from_f64(value), T::zero()))
    }

    fn to_integer(&self, tol: f64) -> Option<i128> {
        let z = self.to_c64();
        let rounded = z.re.round();
        if (z.re - rounded).abs() <= tol && z.im.abs() <= tol && rounded.abs() < 1e30 {
            Some(rounded as i128)
        } else {
            None
        }
    }
}
