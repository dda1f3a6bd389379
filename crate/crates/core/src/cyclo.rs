//! Exact arithmetic in cyclotomic fields Q(zeta_n).
//!
//! An element of Q(zeta_n) is stored over the power basis
//! `1, zeta, ..., zeta^{phi(n)-1}` as integer numerators over one common
//! positive denominator. Products are reduced modulo the cyclotomic
//! polynomial `Phi_n`, which makes the representation canonical: two elements
//! are equal iff their coefficient vectors are equal.
//!
//! Elements carry their conductor. Operations on operands of different
//! conductors lift both into Q(zeta_lcm), and plain rationals live in
//! conductor 1, which is what `Zero::zero()` and `One::one()` return.
//!
//! Radicals are pinned to their positive real embedding:
//!
//! | value   | representation                | needs      |
//! |---------|-------------------------------|------------|
//! | sqrt(2) | zeta_8 + zeta_8^-1            | 8 \| n     |
//! | sqrt(3) | zeta_12 + zeta_12^-1          | 12 \| n    |
//! | sqrt(6) | sqrt(2) * sqrt(3)             | 24 \| n    |

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::scalar::{Conductor, Scalar, ScalarMode};

struct FieldData {
    phi: usize,
    /// Phi_n, lowest degree first, monic.
    modulus: Vec<i64>,
    /// `x^m mod Phi_n` for `m in 0..n`.
    powers: Vec<Vec<i64>>,
}

fn field(n: u32) -> Arc<FieldData> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<FieldData>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(f) = cache.lock().unwrap().get(&n) {
        return f.clone();
    }
    let modulus = cyclotomic_polynomial(n);
    let data = Arc::new(build_field(n, modulus));
    cache.lock().unwrap().insert(n, data.clone());
    data
}

fn build_field(n: u32, modulus: Vec<i64>) -> FieldData {
    let phi = modulus.len() - 1;
    let mut powers = Vec::with_capacity(n as usize);
    let mut cur = vec![0i64; phi];
    cur[0] = 1;
    if phi == 0 {
        unreachable!("cyclotomic polynomials have positive degree");
    }
    for _ in 0..n {
        powers.push(cur.clone());
        // multiply by x and reduce
        let top = cur[phi - 1];
        for j in (1..phi).rev() {
            cur[j] = cur[j - 1];
        }
        cur[0] = 0;
        if top != 0 {
            for j in 0..phi {
                cur[j] -= top * modulus[j];
            }
        }
    }
    FieldData {
        phi,
        modulus,
        powers,
    }
}

/// Integer coefficients of Phi_n, lowest degree first.
pub fn cyclotomic_polynomial(n: u32) -> Vec<i64> {
    assert!(n > 0, "conductor must be positive");
    // x^n - 1 divided by Phi_d for every proper divisor d
    let mut poly = vec![0i128; n as usize + 1];
    poly[0] = -1;
    poly[n as usize] = 1;
    for d in 1..n {
        if n % d == 0 {
            let divisor: Vec<i128> = cyclotomic_polynomial(d).into_iter().map(i128::from).collect();
            poly = exact_divide(&poly, &divisor);
        }
    }
    poly.into_iter()
        .map(|c| i64::try_from(c).expect("cyclotomic coefficient overflow"))
        .collect()
}

fn exact_divide(num: &[i128], den: &[i128]) -> Vec<i128> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let qd = num.len() - 1 - dd;
    let mut q = vec![0i128; qd + 1];
    for i in (0..=qd).rev() {
        let c = rem[i + dd];
        q[i] = c;
        for j in 0..=dd {
            rem[i + j] -= c * den[j];
        }
    }
    debug_assert!(rem.iter().all(|&c| c == 0));
    q
}

/// Euler's totient.
pub fn totient(n: u32) -> usize {
    let mut m = n;
    let mut result = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result as usize
}

/// Element of the cyclotomic field Q(zeta_n).
#[derive(Clone)]
pub struct CycloNumber {
    conductor: u32,
    num: Vec<BigInt>,
    den: BigInt,
}

impl CycloNumber {
    fn raw(conductor: u32, num: Vec<BigInt>, den: BigInt) -> Self {
        let mut x = CycloNumber { conductor, num, den };
        x.normalize();
        x
    }

    fn normalize(&mut self) {
        assert!(!self.den.is_zero(), "zero denominator");
        if self.den.is_negative() {
            self.den = -self.den.clone();
            for c in &mut self.num {
                *c = -c.clone();
            }
        }
        let mut g = self.den.clone();
        for c in &self.num {
            if g.is_one() {
                break;
            }
            g = g.gcd(c);
        }
        if self.num.iter().all(Zero::is_zero) {
            self.den = BigInt::one();
            return;
        }
        if !g.is_one() {
            self.den /= &g;
            for c in &mut self.num {
                *c /= &g;
            }
        }
    }

    /// The rational `q` in conductor 1.
    pub fn from_rational(q: BigRational) -> Self {
        let (n, d) = q.into_raw();
        CycloNumber::raw(1, vec![n], d)
    }

    pub fn from_integer(n: i64) -> Self {
        CycloNumber::raw(1, vec![BigInt::from(n)], BigInt::one())
    }

    /// Build from power-basis coefficients; `coeffs.len()` must be phi(conductor).
    pub fn from_coeffs(conductor: u32, coeffs: &[BigRational]) -> Result<Self> {
        if conductor == 0 {
            return Err(Error::InvalidConductor(conductor));
        }
        let phi = totient(conductor);
        if coeffs.len() != phi {
            return Err(Error::DimensionMismatch {
                expected: phi,
                found: coeffs.len(),
            });
        }
        let mut den = BigInt::one();
        for c in coeffs {
            den = den.lcm(c.denom());
        }
        let num = coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        Ok(CycloNumber::raw(conductor, num, den))
    }

    /// `zeta_order^k` inside Q(zeta_conductor).
    pub fn root(conductor: Conductor, order: u32, k: i64) -> Result<Self> {
        let n = conductor.0;
        if n == 0 {
            return Err(Error::InvalidConductor(n));
        }
        if order == 0 || n % order != 0 {
            return Err(Error::RootNotInField {
                order,
                conductor: n,
            });
        }
        let m = (k.rem_euclid(order as i64) as u32) * (n / order);
        let f = field(n);
        let num = f.powers[m as usize].iter().map(|&c| BigInt::from(c)).collect();
        Ok(CycloNumber::raw(n, num, BigInt::one()))
    }

    /// Positive square root of `m`, for `m = s^2 * t` with `t` in {1, 2, 3, 6}.
    pub fn sqrt_int(conductor: Conductor, m: u64) -> Result<Self> {
        let (s, t) = squarefree_split(m);
        let unsupported = Error::UnsupportedRadical {
            m,
            conductor: conductor.0,
        };
        let s = CycloNumber::from_integer(s as i64);
        let radical = match t {
            1 => CycloNumber::one(),
            2 => sqrt2(conductor).map_err(|_| unsupported)?,
            3 => sqrt3(conductor).map_err(|_| unsupported)?,
            6 => {
                if conductor.0 % 24 != 0 {
                    return Err(unsupported);
                }
                sqrt2(conductor)? * sqrt3(conductor)?
            }
            _ => return Err(unsupported),
        };
        Ok(s * radical)
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    /// Power-basis coefficients as reduced rationals.
    pub fn coeffs(&self) -> Vec<BigRational> {
        self.num
            .iter()
            .map(|c| BigRational::new(c.clone(), self.den.clone()))
            .collect()
    }

    /// Re-express in Q(zeta_target); `self.conductor()` must divide `target`.
    pub fn lift(&self, target: u32) -> Result<Self> {
        if target == 0 || target % self.conductor != 0 {
            return Err(Error::InvalidConductor(target));
        }
        if target == self.conductor {
            return Ok(self.clone());
        }
        let f = field(target);
        let step = (target / self.conductor) as usize;
        let mut num = vec![BigInt::zero(); f.phi];
        for (k, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let p = &f.powers[(k * step) % target as usize];
            for (j, &pj) in p.iter().enumerate() {
                if pj != 0 {
                    num[j] += c * pj;
                }
            }
        }
        Ok(CycloNumber::raw(target, num, self.den.clone()))
    }

    fn aligned(a: &Self, b: &Self) -> (Self, Self) {
        if a.conductor == b.conductor {
            return (a.clone(), b.clone());
        }
        let n = a.conductor.lcm(&b.conductor);
        (
            a.lift(n).expect("lcm is a multiple"),
            b.lift(n).expect("lcm is a multiple"),
        )
    }

    /// The rational value, if this element lies in Q.
    pub fn is_rational(&self) -> Option<BigRational> {
        if self.num.iter().skip(1).all(Zero::is_zero) {
            Some(BigRational::new(self.num[0].clone(), self.den.clone()))
        } else {
            None
        }
    }

    pub fn embed(&self) -> Complex64 {
        let n = self.conductor as f64;
        let mut acc = Complex64::new(0.0, 0.0);
        for (k, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let v = BigRational::new(c.clone(), self.den.clone())
                .to_f64()
                .unwrap_or(f64::NAN);
            let angle = std::f64::consts::TAU * (k as f64) / n;
            acc += Complex64::from_polar(v, angle);
        }
        acc
    }

    /// Complex conjugation, the Galois automorphism zeta -> zeta^-1.
    pub fn conj(&self) -> Self {
        let f = field(self.conductor);
        let n = self.conductor as usize;
        let mut num = vec![BigInt::zero(); f.phi];
        for (k, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let p = &f.powers[(n - k) % n];
            for (j, &pj) in p.iter().enumerate() {
                if pj != 0 {
                    num[j] += c * pj;
                }
            }
        }
        CycloNumber::raw(self.conductor, num, self.den.clone())
    }

    /// `self * conj(self)`; always a non-negative real.
    pub fn abs_sq(&self) -> Self {
        self.clone() * self.conj()
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let f = field(self.conductor);
        let phi = f.phi;
        // Column j of the multiplication-by-numerator map is num * x^j mod Phi.
        let mut cols: Vec<Vec<BigInt>> = Vec::with_capacity(phi);
        let mut cur = self.num.clone();
        for _ in 0..phi {
            cols.push(cur.clone());
            let top = cur[phi - 1].clone();
            for j in (1..phi).rev() {
                cur[j] = cur[j - 1].clone();
            }
            cur[0] = BigInt::zero();
            if !top.is_zero() {
                for j in 0..phi {
                    if f.modulus[j] != 0 {
                        cur[j] -= &top * f.modulus[j];
                    }
                }
            }
        }
        // Solve A x = e_0 by fraction-free (Bareiss) elimination; `det * x` is integral.
        let mut a: Vec<Vec<BigInt>> = (0..phi)
            .map(|i| {
                let mut row: Vec<BigInt> = (0..phi).map(|j| cols[j][i].clone()).collect();
                row.push(if i == 0 { BigInt::one() } else { BigInt::zero() });
                row
            })
            .collect();
        let mut prev = BigInt::one();
        for k in 0..phi {
            let pivot = (k..phi)
                .find(|&r| !a[r][k].is_zero())
                .expect("nonzero field elements are invertible");
            a.swap(k, pivot);
            let (top, rest) = a.split_at_mut(k + 1);
            let pk = &top[k];
            for row in rest.iter_mut() {
                let f = row[k].clone();
                for j in k + 1..=phi {
                    row[j] = (&row[j] * &pk[k] - &f * &pk[j]) / &prev;
                }
                row[k] = BigInt::zero();
            }
            prev = top[k][k].clone();
        }
        let det = prev;
        let mut x = vec![BigInt::zero(); phi];
        for i in (0..phi).rev() {
            let mut acc = &det * &a[i][phi];
            for j in i + 1..phi {
                acc -= &a[i][j] * &x[j];
            }
            x[i] = acc / &a[i][i];
        }
        let num = x.into_iter().map(|xi| xi * &self.den).collect();
        Ok(CycloNumber::raw(self.conductor, num, det))
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = CycloNumber::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            base = base.clone() * base;
            e >>= 1;
        }
        acc
    }

    /// Largest absolute numerator or denominator, a measure of coefficient growth.
    pub fn height(&self) -> BigInt {
        self.num
            .iter()
            .map(|c| c.abs())
            .chain(std::iter::once(self.den.clone()))
            .max()
            .unwrap_or_default()
    }
}

fn sqrt2(c: Conductor) -> Result<CycloNumber> {
    Ok(CycloNumber::root(c, 8, 1)? + CycloNumber::root(c, 8, -1)?)
}

fn sqrt3(c: Conductor) -> Result<CycloNumber> {
    Ok(CycloNumber::root(c, 12, 1)? + CycloNumber::root(c, 12, -1)?)
}

/// `m = s^2 * t` with `t` squarefree.
fn squarefree_split(m: u64) -> (u64, u64) {
    let mut s = 1u64;
    let mut t = 1u64;
    let mut rest = m;
    let mut p = 2u64;
    while p * p <= rest {
        let mut e = 0;
        while rest % p == 0 {
            rest /= p;
            e += 1;
        }
        s *= p.pow(e / 2);
        if e % 2 == 1 {
            t *= p;
        }
        p += 1;
    }
    t *= rest;
    if m == 0 {
        (0, 1)
    } else {
        (s, t)
    }
}

/// Best rational approximation with denominator at most `max_den`, via
/// continued fractions.
fn rational_approx(x: f64, max_den: i64) -> Option<(i64, i64)> {
    if !x.is_finite() {
        return None;
    }
    let (mut h0, mut h1) = (0i64, 1i64);
    let (mut k0, mut k1) = (1i64, 0i64);
    let mut r = x;
    for _ in 0..64 {
        let a = r.floor();
        if a.abs() > 1e15 {
            break;
        }
        let a = a as i64;
        let h2 = a.checked_mul(h1)?.checked_add(h0)?;
        let k2 = a.checked_mul(k1)?.checked_add(k0)?;
        if k2 > max_den {
            break;
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        let frac = r - a as f64;
        if frac.abs() < 1e-15 {
            break;
        }
        r = 1.0 / frac;
    }
    if k1 == 0 {
        None
    } else {
        Some((h1, k1))
    }
}

impl PartialEq for CycloNumber {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = CycloNumber::aligned(self, other);
        a.den == b.den && a.num == b.num
    }
}

impl Eq for CycloNumber {}

impl fmt::Debug for CycloNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CycloNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (k, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let q = BigRational::new(c.clone(), self.den.clone());
            terms.push(match k {
                0 => format!("{q}"),
                1 => format!("({q})*z"),
                _ => format!("({q})*z^{k}"),
            });
        }
        if terms.is_empty() {
            terms.push("0".into());
        }
        write!(f, "{} [z = zeta_{}]", terms.join(" + "), self.conductor)
    }
}

impl Add for CycloNumber {
    type Output = CycloNumber;
    fn add(self, rhs: Self) -> Self {
        &self + &rhs
    }
}

impl<'a> Add<&'a CycloNumber> for &'a CycloNumber {
    type Output = CycloNumber;
    fn add(self, rhs: &CycloNumber) -> CycloNumber {
        let (a, b) = CycloNumber::aligned(self, rhs);
        if a.den == b.den {
            let num = a.num.iter().zip(&b.num).map(|(x, y)| x + y).collect();
            return CycloNumber::raw(a.conductor, num, a.den);
        }
        let num = a
            .num
            .iter()
            .zip(&b.num)
            .map(|(x, y)| x * &b.den + y * &a.den)
            .collect();
        CycloNumber::raw(a.conductor, num, &a.den * &b.den)
    }
}

impl Neg for CycloNumber {
    type Output = CycloNumber;
    fn neg(self) -> Self {
        CycloNumber {
            conductor: self.conductor,
            num: self.num.into_iter().map(|c| -c).collect(),
            den: self.den,
        }
    }
}

impl Sub for CycloNumber {
    type Output = CycloNumber;
    fn sub(self, rhs: Self) -> Self {
        &self + &(-rhs)
    }
}

impl Mul for CycloNumber {
    type Output = CycloNumber;
    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}

impl<'a> Mul<&'a CycloNumber> for &'a CycloNumber {
    type Output = CycloNumber;
    fn mul(self, rhs: &CycloNumber) -> CycloNumber {
        let (a, b) = CycloNumber::aligned(self, rhs);
        let f = field(a.conductor);
        let phi = f.phi;
        let mut prod = vec![BigInt::zero(); 2 * phi - 1];
        for (i, x) in a.num.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.num.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        for i in (phi..prod.len()).rev() {
            let c = std::mem::take(&mut prod[i]);
            if c.is_zero() {
                continue;
            }
            for j in 0..phi {
                if f.modulus[j] != 0 {
                    prod[i - phi + j] -= &c * f.modulus[j];
                }
            }
        }
        prod.truncate(phi);
        CycloNumber::raw(a.conductor, prod, &a.den * &b.den)
    }
}

impl Zero for CycloNumber {
    fn zero() -> Self {
        CycloNumber::from_integer(0)
    }
    fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }
}

impl One for CycloNumber {
    fn one() -> Self {
        CycloNumber::from_integer(1)
    }
}

impl Scalar for CycloNumber {
    type Context = Conductor;

    fn mode(ctx: &Conductor) -> ScalarMode {
        ScalarMode::Exact { conductor: ctx.0 }
    }

    fn is_exact() -> bool {
        true
    }

    fn conj(&self) -> Self {
        CycloNumber::conj(self)
    }

    fn inv(&self) -> Option<Self> {
        CycloNumber::inv(self).ok()
    }

    fn abs_sq(&self) -> Self {
        CycloNumber::abs_sq(self)
    }

    fn to_c64(&self) -> Complex64 {
        self.embed()
    }

    fn is_negligible(&self, _tol: f64) -> bool {
        self.is_zero()
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        CycloNumber::from_rational(BigRational::new(num.into(), den.into()))
    }

    fn root_of_unity(ctx: &Conductor, order: u32, k: i64) -> Result<Self> {
        CycloNumber::root(*ctx, order, k)
    }

    fn sqrt_int(ctx: &Conductor, m: u64) -> Result<Self> {
        CycloNumber::sqrt_int(*ctx, m)
    }

    fn phase(ctx: &Conductor, radians: f64) -> Result<Self> {
        let n = ctx.0 as f64;
        let k = radians * n / std::f64::consts::TAU;
        let rounded = k.round();
        if !k.is_finite() || (k - rounded).abs() > 1e-9 {
            return Err(Error::NotRepresentable {
                value: radians,
                reason: "angle is not a multiple of 2*pi/conductor",
            });
        }
        CycloNumber::root(*ctx, ctx.0, rounded as i64)
    }

    fn real_radical(ctx: &Conductor, value: f64) -> Result<Self> {
        let sq = value * value;
        let (p, q) = rational_approx(sq, 1_000_000).ok_or(Error::NotRepresentable {
            value,
            reason: "no small rational square",
        })?;
        if (sq - p as f64 / q as f64).abs() > 1e-12 * sq.max(1.0) || p < 0 {
            return Err(Error::NotRepresentable {
                value,
                reason: "square is not a small rational",
            });
        }
        // sqrt(p/q) = sqrt(p*q)/q
        let root = CycloNumber::sqrt_int(*ctx, (p as u64) * (q as u64))?
            * CycloNumber::from_ratio(1, q);
        Ok(if value < 0.0 { -root } else { root })
    }

    fn to_integer(&self, _tol: f64) -> Option<i128> {
        let q = self.is_rational()?;
        if q.is_integer() {
            q.to_integer().to_i128()
        } else {
            None
        }
    }
}

/// Coefficient encoding used on the wire: a JSON integer when it fits in
/// `i64`, otherwise a decimal string.
#[derive(Debug, Clone, PartialEq)]
pub struct WireInt(pub BigInt);

impl Serialize for WireInt {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(v) => s.serialize_i64(v),
            None => s.serialize_str(&self.0.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for WireInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Int(i64),
            Str(String),
        }
        match Repr::deserialize(d)? {
            Repr::Int(v) => Ok(WireInt(BigInt::from(v))),
            Repr::Str(s) => s
                .parse::<BigInt>()
                .map(WireInt)
                .map_err(serde::de::Error::custom),
        }
    }
}

pub(crate) fn coeffs_to_wire(x: &CycloNumber) -> Vec<[WireInt; 2]> {
    x.coeffs()
        .into_iter()
        .map(|q| {
            let (n, d) = q.into_raw();
            [WireInt(n), WireInt(d)]
        })
        .collect()
}

pub(crate) fn coeffs_from_wire(conductor: u32, wire: &[[WireInt; 2]]) -> Result<CycloNumber> {
    let coeffs = wire
        .iter()
        .map(|[n, d]| {
            if d.0.is_zero() {
                Err(Error::Format("zero denominator".into()))
            } else {
                Ok(BigRational::new(n.0.clone(), d.0.clone()))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    CycloNumber::from_coeffs(conductor, &coeffs)
}

#[derive(Serialize, Deserialize)]
struct CycloWire {
    conductor: u32,
    coeffs: Vec<[WireInt; 2]>,
}

impl Serialize for CycloNumber {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CycloWire {
            conductor: self.conductor,
            coeffs: coeffs_to_wire(self),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for CycloNumber {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let w = CycloWire::deserialize(d)?;
        coeffs_from_wire(w.conductor, &w.coeffs).map_err(serde::de::Error::custom)
    }
}
