#![allow(dead_code)]

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sicpovm::{CMatrix, CVector, Conductor, CycloNumber, Scalar};

pub const CTX: Conductor = Conductor::DEFAULT;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn cis(theta: f64) -> Complex64 {
    Complex64::from_polar(1.0, theta)
}

pub fn fvec(entries: &[Complex64]) -> CVector<Complex64> {
    CVector::new(entries.to_vec())
}

pub fn root(order: u32, k: i64) -> CycloNumber {
    CycloNumber::root(CTX, order, k).unwrap()
}

pub fn q(n: i64, d: i64) -> CycloNumber {
    CycloNumber::from_ratio(n, d)
}

pub fn sqrt(m: u64) -> CycloNumber {
    CycloNumber::sqrt_int(CTX, m).unwrap()
}

pub fn random_complex(r: &mut ChaCha8Rng) -> Complex64 {
    c(r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0))
}

pub fn random_vector(r: &mut ChaCha8Rng, d: usize) -> CVector<Complex64> {
    (0..d).map(|_| random_complex(r)).collect()
}

pub fn random_unit(r: &mut ChaCha8Rng, d: usize) -> CVector<Complex64> {
    let v = random_vector(r, d);
    let n = v.norm_sq().re.sqrt();
    v.scale(&c(1.0 / n, 0.0))
}

/// Haar-ish random unitary by Gram-Schmidt on random columns.
pub fn random_unitary(r: &mut ChaCha8Rng, d: usize) -> CMatrix<Complex64> {
    let mut cols: Vec<CVector<Complex64>> = Vec::with_capacity(d);
    while cols.len() < d {
        let mut v = random_vector(r, d);
        for u in &cols {
            let p = sicpovm::inner(u, &v).unwrap();
            v = v.sub(&u.scale(&p)).unwrap();
        }
        let n = v.norm_sq().re.sqrt();
        if n > 1e-6 {
            cols.push(v.scale(&c(1.0 / n, 0.0)));
        }
    }
    CMatrix::from_columns(&cols).unwrap()
}

/// Direct Taylor series for `e^{i theta H}`, an oracle independent of the
/// spectral code.
pub fn taylor_exp(h: &CMatrix<Complex64>, theta: f64) -> CMatrix<Complex64> {
    let n = h.rows();
    let a = h.scale(&c(0.0, theta));
    let mut term = CMatrix::identity(n);
    let mut sum = CMatrix::identity(n);
    for k in 1..80 {
        term = term.matmul(&a).unwrap().scale(&c(1.0 / k as f64, 0.0));
        sum = sum.add(&term).unwrap();
    }
    sum
}

pub fn fixture(name: &str) -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
}
