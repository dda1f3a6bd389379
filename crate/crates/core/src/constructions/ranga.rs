//! The circulance equation for the d=3 triangular basis.
//!
//! Requiring `<v1, v2> = <v0, v1> = e^{ix}/2` gives
//! `e^{ix}/2 = e^{-2ix}/4 + (sqrt3/2) r e^{i(eta - y)}`, equivalently the cubic
//! `z^3 - sqrt3 r e^{i phi} z^2 - 1/2 = 0` in `z = e^{ix}`, `phi = eta - y`.

use num_complex::Complex64;

/// `|z/2 - z^{-2}/4 - (sqrt3/2) r e^{i phi}|` for a unit `z`.
pub fn ranga_residual(z: Complex64, r: f64, phase_diff: f64) -> f64 {
    let middle = Complex64::from_polar(3f64.sqrt() / 2.0 * r, phase_diff);
    (z * 0.5 - z.powi(-2) * 0.25 - middle).norm()
}

fn cubic(z: Complex64, a: Complex64) -> Complex64 {
    z * z * (z + a) - 0.5
}

fn cubic_derivative(z: Complex64, a: Complex64) -> Complex64 {
    z * (z * 3.0 + a * 2.0)
}

/// All three roots of `z^3 + a z^2 - 1/2`, by Cardano followed by Newton
/// polishing.
fn cubic_roots(a: Complex64) -> [Complex64; 3] {
    // z = t - a/3 gives t^3 + p t + q = 0.
    let p = -a * a / 3.0;
    let q = a * a * a * (2.0 / 27.0) - 0.5;
    let disc = (q * q / 4.0 + p * p * p / 27.0).sqrt();
    let c1 = -q / 2.0 + disc;
    let c2 = -q / 2.0 - disc;
    let c = if c1.norm() >= c2.norm() { c1 } else { c2 };
    let u = c.cbrt();
    let omega = Complex64::from_polar(1.0, std::f64::consts::TAU / 3.0);
    let mut roots = [Complex64::default(); 3];
    for (k, slot) in roots.iter_mut().enumerate() {
        let uk = u * omega.powi(k as i32);
        let t = if uk.norm() == 0.0 { uk } else { uk - p / (uk * 3.0) };
        let mut z = t - a / 3.0;
        for _ in 0..8 {
            let d = cubic_derivative(z, a);
            if d.norm() < 1e-300 {
                break;
            }
            let step = cubic(z, a) / d;
            z -= step;
            if step.norm() < 1e-17 {
                break;
            }
        }
        *slot = z;
    }
    roots
}

/// Unit-circle roots of `z^3 - sqrt3 r e^{i phase_diff} z^2 - 1/2 = 0`,
/// deduplicated and sorted by argument. Each root also satisfies the
/// circulance equation to within 1e-9.
pub fn solve_ranga(r: f64, phase_diff: f64) -> Vec<Complex64> {
    if !(r.is_finite() && phase_diff.is_finite()) || r < 0.0 {
        return Vec::new();
    }
    let a = -Complex64::from_polar(3f64.sqrt() * r, phase_diff);
    let mut out: Vec<Complex64> = Vec::new();
    for z in cubic_roots(a) {
        if (z.norm() - 1.0).abs() > 1e-9 || ranga_residual(z, r, phase_diff) > 1e-9 {
            continue;
        }
        let z = z / z.norm();
        if out.iter().all(|w| (w - z).norm() > 1e-9) {
            out.push(z);
        }
    }
    out.sort_by(|u, v| u.arg().total_cmp(&v.arg()));
    out
}
