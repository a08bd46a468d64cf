//! Complex-coefficient quartic utilities: closed-form double-precision
//! solves for seeding and branch tracking, plus Newton polishing at
//! extended precision with residual certificates.

use crate::error::{Error, Result};
use crate::hp;
use num_complex::Complex64;

/// All four roots of `c[0] + c[1] z + c[2] z^2 + c[3] z^3 + c[4] z^4` in
/// double precision (Ferrari's method with a Newton touch-up per root).
pub fn quartic_roots_f64(c: &[Complex64; 5]) -> [Complex64; 4] {
    let a = c[3] / c[4];
    let b = c[2] / c[4];
    let cc = c[1] / c[4];
    let d = c[0] / c[4];
    // depress: z = t - a/4
    let a2 = a * a;
    let p = b - 3.0 * a2 / 8.0;
    let q = cc - a * b / 2.0 + a2 * a / 8.0;
    let r = d - a * cc / 4.0 + a2 * b / 16.0 - 3.0 * a2 * a2 / 256.0;

    let scale = p.norm().max(q.norm()).max(r.norm()).max(1.0);
    let mut roots = if q.norm() <= 1e-14 * scale {
        // biquadratic
        let disc = (p * p - 4.0 * r).sqrt();
        let u1 = (-p + disc) / 2.0;
        let u2 = (-p - disc) / 2.0;
        let s1 = u1.sqrt();
        let s2 = u2.sqrt();
        [s1, -s1, s2, -s2]
    } else {
        // resolvent m^3 + 2p m^2 + (p^2 - 4r) m - q^2 = 0
        let m = dominant_cubic_root(2.0 * p, p * p - 4.0 * r, -q * q);
        let s = m.sqrt();
        let half = (p + m) / 2.0;
        let shift = q / s / 2.0;
        let u = half - shift;
        let v = half + shift;
        let d1 = (m - 4.0 * u).sqrt();
        let d2 = (m - 4.0 * v).sqrt();
        [(-s + d1) / 2.0, (-s - d1) / 2.0, (s + d2) / 2.0, (s - d2) / 2.0]
    };
    for t in &mut roots {
        let mut z = *t - a / 4.0;
        for _ in 0..2 {
            let (pv, dv) = eval_with_deriv_f64(c, z);
            if dv.norm() > 0.0 {
                let step = pv / dv;
                if step.is_finite() {
                    z -= step;
                }
            }
        }
        *t = z;
    }
    roots
}

/// One root of `m^3 + a m^2 + b m + c`, preferring the largest modulus
/// (Ferrari wants a nonzero resolvent root).
fn dominant_cubic_root(a: Complex64, b: Complex64, c: Complex64) -> Complex64 {
    let p = b - a * a / 3.0;
    let q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;
    let disc = (q * q / 4.0 + p * p * p / 27.0).sqrt();
    let mut u = (-q / 2.0 + disc).powf(1.0 / 3.0);
    if u.norm() < 1e-30 {
        u = (-q / 2.0 - disc).powf(1.0 / 3.0);
    }
    let omega = Complex64::new(-0.5, 0.75f64.sqrt());
    let mut best = Complex64::new(0.0, 0.0);
    for k in 0..3 {
        let uk = u * omega.powu(k);
        let w = if uk.norm() < 1e-30 { uk } else { uk - p / (3.0 * uk) };
        let m = w - a / 3.0;
        if m.norm() > best.norm() {
            best = m;
        }
    }
    // one Newton step on the resolvent to tighten
    for _ in 0..2 {
        let f = ((best + a) * best + b) * best + c;
        let df = (3.0 * best + 2.0 * a) * best + b;
        if df.norm() > 0.0 {
            let step = f / df;
            if step.is_finite() {
                best -= step;
            }
        }
    }
    best
}

pub fn eval_with_deriv_f64(c: &[Complex64; 5], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for k in (0..5).rev() {
        dp = dp * z + p;
        p = p * z + c[k];
    }
    (p, dp)
}

/// Newton-polish a double-precision seed on an extended-precision
/// polynomial until the step stagnates at the working precision.
pub fn polish_hp(coeffs: &[hp::Complex], seed: Complex64, prec: usize) -> Result<hp::Complex> {
    let mut z = hp::Complex::from_c64(seed, prec);
    let tol = hp::Real::from_f64(2.0, prec).powi(-(prec as i64 - 6));
    for _ in 0..64 {
        let (pv, dv) = eval_with_deriv(coeffs, &z, prec);
        if pv.is_zero() {
            return Ok(z);
        }
        if dv.is_zero() {
            return Err(Error::TrackingLoss("Newton polish hit a critical point".into()));
        }
        let step = pv.div(&dv);
        let next = z.sub(&step);
        if !next.is_finite() {
            return Err(Error::TrackingLoss("Newton polish diverged".into()));
        }
        let done = step.abs() <= z.abs().add(&hp::Real::one(prec)).mul(&tol);
        z = next;
        if done {
            return Ok(z);
        }
    }
    Err(Error::TrackingLoss("Newton polish did not stagnate".into()))
}

pub fn eval_with_deriv(
    coeffs: &[hp::Complex],
    z: &hp::Complex,
    prec: usize,
) -> (hp::Complex, hp::Complex) {
    let mut p = hp::Complex::zero(prec);
    let mut dp = hp::Complex::zero(prec);
    for c in coeffs.iter().rev() {
        dp = dp.mul(z).add(&p);
        p = p.mul(z).add(c);
    }
    (p, dp)
}

/// Relative residual `|p(z)| / (max_k |c_k| * max(1,|z|)^deg)`.
pub fn relative_residual(coeffs: &[hp::Complex], z: &hp::Complex, prec: usize) -> f64 {
    let mut value = hp::Complex::zero(prec);
    for c in coeffs.iter().rev() {
        value = value.mul(z).add(c);
    }
    let mut max_c = hp::Real::zero(prec);
    for c in coeffs {
        max_c = max_c.max(&c.abs());
    }
    let zb = z.abs().max(&hp::Real::one(prec));
    let scale = max_c.mul(&zb.powi(coeffs.len() as i64 - 1));
    value.abs().div(&scale).to_f64()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_roots(c: [Complex64; 5]) {
        let roots = quartic_roots_f64(&c);
        for z in roots {
            let (p, _) = eval_with_deriv_f64(&c, z);
            let scale: f64 = c.iter().map(|x| x.norm()).fold(1.0, f64::max)
                * z.norm().max(1.0).powi(4);
            assert!(p.norm() <= 1e-10 * scale, "residual {:e} at {z}", p.norm());
        }
    }

    #[test]
    fn random_quartics() {
        let cases = [
            [1.0, 2.0, -3.0, 0.5, 1.0],
            [-4.0, 0.0, 7.84, 22.4, 12.0],
            [2.0, 0.0, -1.0, 0.0, 1.0], // biquadratic
        ];
        for case in cases {
            check_roots(case.map(|x| Complex64::new(x, 0.0)));
        }
        check_roots([
            Complex64::new(1.0, -2.0),
            Complex64::new(0.0, 1.0),
            Complex64::new(-3.0, 0.2),
            Complex64::new(2.0, 2.0),
            Complex64::new(1.0, 0.0),
        ]);
    }

    #[test]
    fn polish_reaches_full_precision() {
        let prec = 192;
        // z^4 - 2 at z ~ 2^(1/4)
        let coeffs = vec![
            hp::Complex::from_f64(-2.0, 0.0, prec),
            hp::Complex::zero(prec),
            hp::Complex::zero(prec),
            hp::Complex::zero(prec),
            hp::Complex::one(prec),
        ];
        let z = polish_hp(&coeffs, Complex64::new(1.19, 0.0), prec).unwrap();
        assert!(relative_residual(&coeffs, &z, prec) < 1e-50);
    }
}
