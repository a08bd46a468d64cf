//! The phase function: Re of the antiderivative of
//! `phi'(z) = -((1+r) z + 2/Q) R(z) / z^3`, realized with the straight-cut
//! square root R~. Only the real part is exposed; it is independent of the
//! logarithm branch choices.

use super::spectral::{rtilde, SpectralData};
use crate::error::{Error, Result};
use crate::hp;
use num_complex::Complex64;

/// Proximity (relative to `|b - a|`) at which a point counts as sitting on
/// the branch segment.
const SEGMENT_MARGIN_REL: f64 = 1e-12;

fn on_segment(z: Complex64, a: Complex64, b: Complex64) -> bool {
    let ab = b - a;
    let len = ab.norm();
    if len == 0.0 {
        return (z - a).norm() < SEGMENT_MARGIN_REL;
    }
    let t = ((z - a).re * ab.re + (z - a).im * ab.im) / (len * len);
    if !(0.0..=1.0).contains(&t) {
        return false;
    }
    (z - (a + ab * t)).norm() < SEGMENT_MARGIN_REL * len
}

/// `Re(phi~(z))` with the straight segment [a, b] as the square-root cut,
/// `R~ = z + O(1)` at infinity, all logarithms principal, and the
/// integration constant making `Re(phi~(a)) = 0`.
pub fn re_phi_tilde(z: &hp::Complex, sd: &SpectralData) -> Result<hp::Real> {
    if z.is_zero() {
        return Err(Error::SingularPoint("phase function has a pole at z = 0".into()));
    }
    if on_segment(z.to_c64(), sd.a.to_c64(), sd.b.to_c64()) && !at_endpoint(z, sd) {
        return Err(Error::SingularPoint(
            "phase function is discontinuous across the branch segment".into(),
        ));
    }
    let rt = rtilde(z, &sd.s, &sd.q)?;
    re_phi_with_root(z, sd, &rt)
}

/// The phase real part with an externally supplied value of the square
/// root `R(z)`; lets the boundary check feed the continued branch of
/// `R(c)` through the antiderivative form.
pub(super) fn re_phi_with_root(
    z: &hp::Complex,
    sd: &SpectralData,
    rt: &hp::Complex,
) -> Result<hp::Real> {
    let prec = sd.prec;
    let rr = hp::Real::from_f64(sd.r, prec);
    let one = hp::Real::one(prec);
    let rp1 = rr.add(&one);
    let z2 = z.mul(z);
    let q3 = sd.q.powi(3);
    let two = hp::Real::from_u64(2, prec);

    // R~/(Q z^2) + (1 + r - S/(2Q^3)) R~/z
    let t1 = rt.div(&sd.q.mul(&z2));
    let factor = hp::Complex::from_real(rp1.clone()).sub(&sd.s.div(&q3.scale(&two)));
    let t2 = factor.mul(rt).div(z);

    // -(1+r) log(2z + 2R~ - S)
    let arg1 = z.scale(&two).add(&rt.scale(&two)).sub(&sd.s);
    // (r-1) log((2QR~ - Sz + 2Q^2)/z)
    let arg2 = sd
        .q
        .mul(rt)
        .scale(&two)
        .sub(&sd.s.mul(z))
        .add(&sd.q.mul(&sd.q).scale(&two))
        .div(z);
    // log(S^2 - 4Q^2)
    let arg3 = sd.s.mul(&sd.s).sub(&sd.q.mul(&sd.q).scale(&hp::Real::from_u64(4, prec)));
    for (arg, what) in [(&arg1, "2z + 2R~ - S"), (&arg2, "(2QR~ - Sz + 2Q^2)/z"), (&arg3, "S^2 - 4Q^2")] {
        if arg.is_zero() {
            return Err(Error::SingularPoint(format!("logarithm argument {what} vanished")));
        }
    }

    let re = t1
        .re
        .add(&t2.re)
        .sub(&rp1.mul(&arg1.ln_abs()))
        .add(&rr.sub(&one).mul(&arg2.ln_abs()))
        .add(&arg3.ln_abs());
    if !re.is_finite() {
        return Err(Error::Overflow("phase evaluation overflowed".into()));
    }
    Ok(re)
}

fn at_endpoint(z: &hp::Complex, sd: &SpectralData) -> bool {
    let scale = sd.b.dist(&sd.a).to_f64().max(1e-300);
    let zc = z.to_c64();
    (zc - sd.a.to_c64()).norm() < 1e-10 * scale || (zc - sd.b.to_c64()).norm() < 1e-10 * scale
}

/// `phi~'(z) = -((1+r) z + 2/Q) R~(z) / z^3`.
pub fn phi_tilde_prime(z: &hp::Complex, sd: &SpectralData) -> Result<hp::Complex> {
    let prec = sd.prec;
    if z.is_zero() {
        return Err(Error::SingularPoint("phase derivative has a pole at z = 0".into()));
    }
    let rr = hp::Real::from_f64(sd.r, prec);
    let rp1 = rr.add(&hp::Real::one(prec));
    let rt = rtilde(z, &sd.s, &sd.q)?;
    let two_over_q = hp::Complex::from_real(hp::Real::from_u64(2, prec)).div(&sd.q);
    let lin = z.scale(&rp1).add(&two_over_q);
    Ok(lin.mul(&rt).div(&z.powi(3)).neg())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::asymptotics::spectral::spectral_data;

    fn reference_sd() -> SpectralData {
        spectral_data(&hp::Complex::from_f64(1.4, 0.0, 192), 1.0, 192).unwrap()
    }

    #[test]
    fn vanishes_at_both_endpoints() {
        let sd = reference_sd();
        let at_a = re_phi_tilde(&sd.a, &sd).unwrap();
        let at_b = re_phi_tilde(&sd.b, &sd).unwrap();
        assert!(at_a.abs().to_f64() < 1e-30, "Re phi~(a) = {:e}", at_a.to_f64());
        assert!(at_b.abs().to_f64() < 1e-18, "Re phi~(b) = {:e}", at_b.to_f64());
    }

    #[test]
    fn decays_negative_far_out() {
        // Re phi~ ~ -(1+r) log|2z| + ... along the positive reals
        let sd = reference_sd();
        let v1 = re_phi_tilde(&hp::Complex::from_f64(50.0, 0.0, 192), &sd).unwrap();
        let v2 = re_phi_tilde(&hp::Complex::from_f64(500.0, 0.0, 192), &sd).unwrap();
        assert!(v1.to_f64() < 0.0);
        assert!(v2.to_f64() < v1.to_f64());
        let drop = v2.to_f64() - v1.to_f64();
        let expect = -2.0 * (10.0f64).ln();
        assert!((drop - expect).abs() < 0.3, "log slope off: {drop} vs {expect}");
    }

    #[test]
    fn rejects_origin_and_segment() {
        let sd = reference_sd();
        assert!(re_phi_tilde(&hp::Complex::zero(192), &sd).is_err());
        let mid = sd.a.add(&sd.b).scale(&hp::Real::from_f64(0.5, 192));
        assert!(re_phi_tilde(&mid, &sd).is_err());
    }

    #[test]
    fn derivative_vanishes_at_critical_points() {
        let sd = reference_sd();
        for pt in [&sd.a, &sd.b, &sd.c] {
            let d = phi_tilde_prime(pt, &sd).unwrap();
            assert!(d.abs().to_f64() < 1e-24, "phi'({:?}) = {:?}", pt.to_c64(), d.to_c64());
        }
    }
}
