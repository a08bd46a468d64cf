//! The genus-zero spectral data (Q, S, a, b, c, R_c) at a point (x, r).

use super::corner::{algebraic_tol, corner_point};
use super::qtrack::{solve_q_with_corner, QSolution};
use crate::error::{Error, Result};
use crate::hp;
use std::collections::HashMap;
use std::sync::{Arc, LazyLock, RwLock};

/// Tolerance for the two moment conditions on (S, Q).
pub const MOMENT_TOL: f64 = 1e-20;

/// Per-r immutable calibration record: the corner point and the sign of the
/// R_c branch, fixed once by requiring the boundary function to be positive
/// at the exterior reference point `3|x_c|` on the positive real axis.
pub struct RCalibration {
    pub r: f64,
    pub x_c: hp::Complex,
    pub theta_c: f64,
    pub rc_sign: i64,
}

type CalibrationMap = HashMap<(u64, usize), Arc<RCalibration>>;

static CALIBRATIONS: LazyLock<RwLock<CalibrationMap>> =
    LazyLock::new(|| RwLock::new(HashMap::new()));

pub fn calibration(r: f64, prec: usize) -> Result<Arc<RCalibration>> {
    let key = (r.to_bits(), prec);
    if let Some(hit) = CALIBRATIONS.read().unwrap().get(&key) {
        return Ok(Arc::clone(hit));
    }
    let x_c = corner_point(r, prec)?;
    let theta_c = x_c.to_c64().arg();
    let x_ref = hp::Complex::from_f64(3.0 * x_c.to_c64().norm(), 0.0, prec);
    let raw = RCalibration { r, x_c: x_c.clone(), theta_c, rc_sign: 1 };
    let sd_plus = spectral_data_calibrated(&x_ref, r, &raw, prec)?;
    let f_plus = super::boundary::boundary_route_direct(&sd_plus);
    let rc_sign = if f_plus.is_positive() {
        1
    } else {
        let mut sd_minus = sd_plus;
        sd_minus.rc = sd_minus.rc.neg();
        let f_minus = super::boundary::boundary_route_direct(&sd_minus);
        if f_minus.is_positive() {
            -1
        } else {
            return Err(Error::BranchMismatch(format!(
                "R_c sign calibration failed at r = {r}: F = {:e} for both signs",
                f_plus.to_f64()
            )));
        }
    };
    let record = Arc::new(RCalibration { r, x_c, theta_c, rc_sign });
    CALIBRATIONS.write().unwrap().insert(key, Arc::clone(&record));
    Ok(record)
}

/// The spectral quantities at one point, with branch-tracking provenance.
#[derive(Clone)]
pub struct SpectralData {
    pub x: hp::Complex,
    pub r: f64,
    pub q: hp::Complex,
    pub s: hp::Complex,
    pub a: hp::Complex,
    pub b: hp::Complex,
    pub c: hp::Complex,
    pub rc: hp::Complex,
    pub track_path: String,
    pub prec: usize,
}

/// Solve for Q alone (with its continuation path).
pub fn solve_q(x: &hp::Complex, r: f64, prec: usize) -> Result<QSolution> {
    if r < 1.0 || !r.is_finite() {
        return Err(Error::Domain(format!("spectral data needs r >= 1, got {r}")));
    }
    let calib = calibration(r, prec)?;
    solve_q_with_corner(x, r, &calib.x_c, prec)
}

/// Full spectral data at (x, r), using the per-r calibrated R_c branch.
pub fn spectral_data(x: &hp::Complex, r: f64, prec: usize) -> Result<SpectralData> {
    if r < 1.0 || !r.is_finite() {
        return Err(Error::Domain(format!("spectral data needs r >= 1, got {r}")));
    }
    let calib = calibration(r, prec)?;
    spectral_data_calibrated(x, r, &calib, prec)
}

pub(super) fn spectral_data_calibrated(
    x: &hp::Complex,
    r: f64,
    calib: &RCalibration,
    prec: usize,
) -> Result<SpectralData> {
    let sol = solve_q_with_corner(x, r, &calib.x_c, prec)?;
    spectral_from_q(x.clone(), r, sol, calib, prec)
}

pub(super) fn spectral_from_q(
    x: hp::Complex,
    r: f64,
    sol: QSolution,
    calib: &RCalibration,
    prec: usize,
) -> Result<SpectralData> {
    let q = sol.q;
    let rr = hp::Real::from_f64(r, prec);
    let one = hp::Real::one(prec);
    let rp1 = rr.add(&one);
    let sqrt_r = rr.sqrt();
    let q2 = q.mul(&q);
    let q3 = q2.mul(&q);
    // S = (1+r) Q^3 + 2 r^(1/2) x Q^2
    let s = q3.scale(&rp1).add(&x.mul(&q2).scale(&sqrt_r.mul_u64(2)));

    // a, b solve z^2 - S z + Q^2 = 0
    let half = hp::Real::from_f64(0.5, prec);
    let disc = s.mul(&s).sub(&q2.scale(&hp::Real::from_u64(4, prec)));
    let root = disc.sqrt();
    let z1 = s.add(&root).scale(&half);
    let z2 = s.sub(&root).scale(&half);
    let (a, b) = order_endpoints(z1, z2, &x, calib.theta_c);

    // c = -2 / ((1+r) Q), the third zero of the phase derivative
    let c = hp::Complex::from_real(hp::Real::from_i64(-2, prec)).div(&q.scale(&rp1));

    // R_c: principal straight-cut value, sign-matched to the branch
    // continued along the tracking path, then flipped per the r-level
    // calibration.
    let mut rc = rtilde(&c, &s, &q)?;
    let rc64 = rc.to_c64();
    if (rc64 - sol.rc_f64).norm() > (rc64 + sol.rc_f64).norm() {
        rc = rc.neg();
    }
    if calib.rc_sign < 0 {
        rc = rc.neg();
    }

    let sd = SpectralData { x, r, q, s, a, b, c, rc, track_path: sol.track_path, prec };
    verify_spectral(&sd, &rp1, &sqrt_r)?;
    Ok(sd)
}

/// Endpoint labeling: `Im(a) < Im(b)` in the sector around the real axis,
/// `Re(a) > Re(b)` in the sector around the imaginary axis (both halves),
/// mirrored through `x -> -x` beyond.
fn order_endpoints(
    z1: hp::Complex,
    z2: hp::Complex,
    x: &hp::Complex,
    theta_c: f64,
) -> (hp::Complex, hp::Complex) {
    let theta = x.to_c64().arg();
    let abs_theta = theta.abs();
    enum Rule {
        ImIncreasing,
        ReDecreasing,
        ImDecreasing,
    }
    let rule = if abs_theta <= theta_c {
        Rule::ImIncreasing
    } else if abs_theta <= std::f64::consts::PI - theta_c {
        Rule::ReDecreasing
    } else {
        Rule::ImDecreasing
    };
    let swap = match rule {
        Rule::ImIncreasing => match z1.im.partial_cmp(&z2.im) {
            Some(std::cmp::Ordering::Greater) => true,
            Some(std::cmp::Ordering::Less) => false,
            _ => z1.re > z2.re,
        },
        Rule::ReDecreasing => match z1.re.partial_cmp(&z2.re) {
            Some(std::cmp::Ordering::Less) => true,
            Some(std::cmp::Ordering::Greater) => false,
            _ => z1.im < z2.im,
        },
        Rule::ImDecreasing => match z1.im.partial_cmp(&z2.im) {
            Some(std::cmp::Ordering::Less) => true,
            Some(std::cmp::Ordering::Greater) => false,
            _ => z1.re < z2.re,
        },
    };
    if swap {
        (z2, z1)
    } else {
        (z1, z2)
    }
}

/// `R~(z) = (z^2 - Sz + Q^2)^(1/2)`, analytic off the straight segment
/// [a, b] and normalized `R~(z) = z + O(1)` at infinity. Realized as
/// `u * sqrt(1 - D/u^2)` with `u = z - S/2`, `D = S^2/4 - Q^2`, which puts
/// the principal-branch cut exactly on the segment.
pub fn rtilde(z: &hp::Complex, s: &hp::Complex, q: &hp::Complex) -> Result<hp::Complex> {
    let prec = z.prec();
    let half = hp::Real::from_f64(0.5, prec);
    let u = z.sub(&s.scale(&half));
    if u.is_zero() {
        return Err(Error::SingularPoint("midpoint of the branch segment".into()));
    }
    let d = s.mul(s).scale(&hp::Real::from_f64(0.25, prec)).sub(&q.mul(q));
    let w = hp::Complex::one(prec).sub(&d.div(&u.mul(&u)));
    Ok(u.mul(&w.sqrt()))
}

fn verify_spectral(sd: &SpectralData, rp1: &hp::Real, sqrt_r: &hp::Real) -> Result<()> {
    let prec = sd.prec;
    let one = hp::Real::one(prec);
    let tol_alg = hp::Real::from_f64(algebraic_tol(prec), prec);
    let q2 = sd.q.mul(&sd.q);
    let q3 = q2.mul(&sd.q);

    // Vieta: a + b = S, ab = Q^2
    let sum_scale = sd.s.abs().max(&one);
    let res_sum = sd.a.add(&sd.b).sub(&sd.s).abs();
    let prod_scale = q2.abs().max(&one);
    let res_prod = sd.a.mul(&sd.b).sub(&q2).abs();
    if res_sum > sum_scale.mul(&tol_alg) || res_prod > prod_scale.mul(&tol_alg) {
        return Err(Error::BranchMismatch("endpoint quadratic residual too large".into()));
    }

    // R_c^2 = c^2 - S c + Q^2
    let target = sd.c.mul(&sd.c).sub(&sd.s.mul(&sd.c)).add(&q2);
    let res_rc = sd.rc.mul(&sd.rc).sub(&target).abs();
    if res_rc > target.abs().max(&one).mul(&tol_alg) {
        return Err(Error::BranchMismatch("R_c branch residual too large".into()));
    }

    // moment conditions on (S, Q)
    let tol_m = hp::Real::from_f64(MOMENT_TOL.max((2.0f64).powi(-(prec as i32 - 16))), prec);
    let two = hp::Real::from_u64(2, prec);
    let lhs1 = q3.scale(rp1).sub(&sd.s).div(&q2.scale(&two));
    let rhs1 = sd.x.scale(sqrt_r).neg();
    let m1 = lhs1.sub(&rhs1).abs();
    if m1 > rhs1.abs().max(&one).mul(&tol_m) {
        return Err(Error::MomentViolation(format!("first moment residual {:e}", m1.to_f64())));
    }
    let q4 = q2.mul(&q2);
    let num = q2.scale(&hp::Real::from_u64(4, prec))
        .sub(&sd.s.mul(&q3).scale(&rp1.mul(&two)))
        .sub(&sd.s.mul(&sd.s));
    let lhs2 = num.div(&q4.scale(&hp::Real::from_u64(8, prec)));
    let rhs2 = hp::Complex::from_real(rp1.sub(&two).div(&two));
    let m2 = lhs2.sub(&rhs2).abs();
    if m2 > rhs2.abs().max(&one).mul(&tol_m) {
        return Err(Error::MomentViolation(format!("second moment residual {:e}", m2.to_f64())));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spectral_residuals_at_reference_points() {
        let prec = 192;
        for (x, r) in [(1.4, 1.0), (2.5, 1.0), (1.4, 10.0), (3.0, 4.0)] {
            let sd = spectral_data(&hp::Complex::from_f64(x, 0.0, prec), r, prec).unwrap();
            let q2 = sd.q.mul(&sd.q);
            assert!(sd.a.add(&sd.b).sub(&sd.s).abs().to_f64() < 1e-24);
            assert!(sd.a.mul(&sd.b).sub(&q2).abs().to_f64() < 1e-24 * q2.abs().to_f64().max(1.0));
        }
    }

    #[test]
    fn ordering_on_real_axis() {
        // arg(x) = 0 lies in the sector around the real axis: Im(a) < Im(b)
        let prec = 192;
        let sd = spectral_data(&hp::Complex::from_f64(1.4, 0.0, prec), 1.0, prec).unwrap();
        assert!(sd.a.im < sd.b.im, "a = {:?}, b = {:?}", sd.a, sd.b);
    }

    #[test]
    fn rtilde_normalization_far_out() {
        // R~(z) - z -> -S/2 as z grows
        let prec = 192;
        let sd = spectral_data(&hp::Complex::from_f64(1.4, 0.0, prec), 1.0, prec).unwrap();
        let z = hp::Complex::from_f64(250.0, 40.0, prec);
        let r = rtilde(&z, &sd.s, &sd.q).unwrap();
        let drift = r.sub(&z).add(&sd.s.scale(&hp::Real::from_f64(0.5, prec)));
        assert!(drift.abs().to_f64() < 1e-2);
    }

    #[test]
    fn rtilde_vanishes_at_endpoints() {
        let prec = 192;
        let sd = spectral_data(&hp::Complex::from_f64(1.4, 0.0, prec), 1.0, prec).unwrap();
        for e in [&sd.a, &sd.b] {
            let v = rtilde(e, &sd.s, &sd.q).unwrap();
            assert!(v.abs().to_f64() < 1e-25);
        }
    }

    #[test]
    fn rejects_r_below_one() {
        let prec = 128;
        let x = hp::Complex::from_f64(2.0, 0.0, prec);
        assert!(spectral_data(&x, 0.7, prec).is_err());
    }
}
