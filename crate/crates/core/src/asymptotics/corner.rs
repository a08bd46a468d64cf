//! Corner points of the elliptic region: the off-axis branch points of Q.

use super::quartic::{polish_hp, quartic_roots_f64, relative_residual};
use crate::error::{Error, Result};
use crate::hp;
use num_complex::Complex64;

/// Residual certificate demanded of every solved algebraic quantity at the
/// default working precision.
pub const ALGEBRAIC_RESIDUAL_TOL: f64 = 1e-24;

/// The certificate, relaxed to what `prec` significand bits can deliver.
pub(super) fn algebraic_tol(prec: usize) -> f64 {
    ALGEBRAIC_RESIDUAL_TOL.max((2.0f64).powi(-(prec as i32 - 12)))
}

/// Coefficients (ascending, in `u = x^2`) of the branch-point equation
/// `r^4 x^8 - 24 r^2 (r^2+r+1) x^4 + 32 r (2r^3+3r^2-3r-2) x^2
///  - 48 (r^2+r+1)^2 = 0`.
fn corner_u_coeffs_f64(r: f64) -> [Complex64; 5] {
    let s = r * r + r + 1.0;
    [
        Complex64::new(-48.0 * s * s, 0.0),
        Complex64::new(32.0 * r * (2.0 * r * r * r + 3.0 * r * r - 3.0 * r - 2.0), 0.0),
        Complex64::new(-24.0 * r * r * s, 0.0),
        Complex64::new(0.0, 0.0),
        Complex64::new(r * r * r * r, 0.0),
    ]
}

fn corner_u_coeffs_hp(r: f64, prec: usize) -> Vec<hp::Complex> {
    let rr = hp::Real::from_f64(r, prec);
    let one = hp::Real::one(prec);
    let s = rr.mul(&rr).add(&rr).add(&one);
    let r2 = rr.mul(&rr);
    let r3 = r2.mul(&rr);
    let c1 = r3.mul_u64(2).add(&r2.mul_u64(3)).sub(&rr.mul_u64(3)).sub(&hp::Real::from_u64(2, prec));
    vec![
        hp::Complex::from_real(s.mul(&s).mul_u64(48).neg()),
        hp::Complex::from_real(rr.mul(&c1).mul_u64(32)),
        hp::Complex::from_real(r2.mul(&s).mul_u64(24).neg()),
        hp::Complex::zero(prec),
        hp::Complex::from_real(r2.mul(&r2)),
    ]
}

/// The corner point `x_c(r)`: the root of the branch-point equation in the
/// open first quadrant, solved as a quartic in `u = x^2` at extended
/// precision.
pub fn corner_point(r: f64, prec: usize) -> Result<hp::Complex> {
    if r < 1.0 || !r.is_finite() {
        return Err(Error::Domain(format!("corner point needs r >= 1, got {r}")));
    }
    let seeds = quartic_roots_f64(&corner_u_coeffs_f64(r));
    let coeffs = corner_u_coeffs_hp(r, prec);
    let mut best: Option<hp::Complex> = None;
    for seed in seeds {
        let u = match polish_hp(&coeffs, seed, prec) {
            Ok(u) => u,
            Err(_) => continue,
        };
        if relative_residual(&coeffs, &u, prec) > algebraic_tol(prec) {
            continue;
        }
        for x in [u.sqrt(), u.sqrt().neg()] {
            if x.re.is_positive() && x.im.is_positive() {
                // off-axis: both parts comfortably nonzero
                let tol = x.abs().mul(&hp::Real::from_f64(1e-12, prec));
                if x.re > tol && x.im > tol {
                    best = Some(x);
                }
            }
        }
    }
    best.ok_or_else(|| {
        Error::NoValidRoot(format!("no branch point in the open first quadrant for r = {r}"))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corner_at_r_one() {
        let prec = 192;
        let xc = corner_point(1.0, prec).unwrap();
        // x_c^4 = 36 - 24 sqrt(3)
        let x4 = xc.powi(4);
        let expect = hp::Real::from_u64(36, prec)
            .sub(&hp::Real::from_u64(3, prec).sqrt().mul_u64(24));
        let err = x4.sub(&hp::Complex::from_real(expect)).abs().to_f64();
        assert!(err < 1e-20, "x_c^4 residual {err:e}");
        let z = xc.to_c64();
        assert!((z.re - 1.086).abs() < 5e-4, "Re x_c = {}", z.re);
        assert!((z.im - 1.086).abs() < 5e-4, "Im x_c = {}", z.im);
    }

    #[test]
    fn corner_defining_equation_residual() {
        for r in [1.0, 1.5, 2.0, 4.0, 10.0, 25.0] {
            let prec = 192;
            let xc = corner_point(r, prec).unwrap();
            let u = xc.mul(&xc);
            let res = relative_residual(&corner_u_coeffs_hp(r, prec), &u, prec);
            assert!(res < 1e-24, "residual {res:e} at r = {r}");
        }
    }

    #[test]
    fn rejects_r_below_one() {
        assert!(corner_point(0.5, 192).is_err());
    }
}
