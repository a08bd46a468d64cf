//! The boundary function whose zero set bounds the elliptic region, and the
//! curve tracer that sweeps rays from the origin.

use super::qtrack::QTracker;
use super::spectral::{calibration, spectral_data, spectral_from_q, RCalibration, SpectralData};
use crate::error::{Error, Result};
use crate::hp;
use num_complex::Complex64;
use rayon::prelude::*;
use std::sync::Arc;

/// Agreement demanded between the two evaluation routes of the boundary
/// function.
pub const ROUTE_CONSISTENCY_TOL: f64 = 1e-14;

/// Radius accuracy of the per-ray bisection.
pub const BISECTION_TOL: f64 = 1e-12;

/// Residual target for points reported on the traced curve.
pub const POINT_RESIDUAL_TOL: f64 = 1e-12;

/// Inner and outer radius search window, the outer one relative to `|x_c|`.
const WINDOW_INNER: f64 = 0.05;
const WINDOW_OUTER_REL: f64 = 3.0;

/// Samples of the radius scan looking for the innermost sign change.
const SCAN_SAMPLES: usize = 96;

/// Direct evaluation of the boundary function from the spectral data:
/// `F = Re[(1+r) r^(1/2) x R_c / 2] - (1+r) ln|2R_c - 4/((1+r)Q) - S|
///      + (r-1) ln|(1+r)Q^3 + (1+r)Q^2 R_c + S| + ln|S^2 - 4Q^2|`.
pub fn boundary_route_direct(sd: &SpectralData) -> hp::Real {
    let prec = sd.prec;
    let rr = hp::Real::from_f64(sd.r, prec);
    let one = hp::Real::one(prec);
    let two = hp::Real::from_u64(2, prec);
    let rp1 = rr.add(&one);
    let sqrt_r = rr.sqrt();

    let lead = sd.x.mul(&sd.rc).scale(&rp1.mul(&sqrt_r).div(&two)).re.clone();
    // 2R_c - 4/((1+r)Q) - S = 2R_c + 2c - S
    let arg1 = sd.rc.scale(&two).add(&sd.c.scale(&two)).sub(&sd.s);
    let q2 = sd.q.mul(&sd.q);
    let arg2 = sd
        .q
        .powi(3)
        .scale(&rp1)
        .add(&q2.mul(&sd.rc).scale(&rp1))
        .add(&sd.s);
    let arg3 = sd.s.mul(&sd.s).sub(&q2.scale(&hp::Real::from_u64(4, prec)));

    lead.sub(&rp1.mul(&arg1.ln_abs()))
        .add(&rr.sub(&one).mul(&arg2.ln_abs()))
        .add(&arg3.ln_abs())
}

/// Both evaluation routes of the boundary function with the module's R_c
/// branch: the direct bracketed form, and the phase antiderivative at c.
pub fn boundary_function_routes(sd: &SpectralData) -> Result<(hp::Real, hp::Real)> {
    let direct = boundary_route_direct(sd);
    let via_phi = super::phi::re_phi_with_root(&sd.c, sd, &sd.rc)?;
    Ok((direct, via_phi))
}

/// Boundary function with the cross-check between the direct form and the
/// antiderivative form evaluated at c (both carry the module's R_c branch);
/// the two must agree to [`ROUTE_CONSISTENCY_TOL`].
pub fn boundary_function_sd(sd: &SpectralData) -> Result<hp::Real> {
    let (direct, via_phi) = boundary_function_routes(sd)?;
    let gap = direct.sub(&via_phi).abs();
    let scale = direct.abs().max(&hp::Real::one(sd.prec));
    if gap > scale.mul(&hp::Real::from_f64(ROUTE_CONSISTENCY_TOL, sd.prec)) {
        return Err(Error::BranchMismatch(format!(
            "boundary-function routes disagree: direct {:e}, via phase {:e}",
            direct.to_f64(),
            via_phi.to_f64()
        )));
    }
    Ok(direct)
}

/// Boundary function at (x, r).
pub fn boundary_function(x: &hp::Complex, r: f64, prec: usize) -> Result<hp::Real> {
    let sd = spectral_data(x, r, prec)?;
    boundary_function_sd(&sd)
}

/// Ordered polyline of the elliptic-region boundary for one `r`.
pub struct BoundaryCurve {
    pub r: f64,
    /// Points ordered by angle, a closed loop (first point not repeated).
    pub points: Vec<hp::Complex>,
    /// `|F|` at each point; exactly-inserted corner points carry 0.
    pub residuals: Vec<hp::Real>,
    pub x_c: hp::Complex,
    pub real_axis_crossing: f64,
    pub imag_axis_crossing: f64,
}

/// Walks one ray, reusing a single tracked Q sheet along it.
struct RayEvaluator {
    r: f64,
    theta: f64,
    calib: Arc<RCalibration>,
    tracker: QTracker,
    prec: usize,
}

impl RayEvaluator {
    fn new(r: f64, theta: f64, calib: Arc<RCalibration>, prec: usize) -> Result<Self> {
        let mut tracker = QTracker::anchor(r, calib.x_c.to_c64());
        let outer = WINDOW_OUTER_REL * calib.x_c.to_c64().norm();
        tracker.goto_via_path(Complex64::from_polar(outer, theta))?;
        Ok(RayEvaluator { r, theta, calib, tracker, prec })
    }

    fn spectral_at(&mut self, radius: f64) -> Result<SpectralData> {
        let target = Complex64::from_polar(radius, self.theta);
        self.tracker.step_to(target)?;
        let x = hp::Complex::from_f64(target.re, target.im, self.prec);
        let sol = self.tracker.solution(&x, self.prec)?;
        spectral_from_q(x, self.r, sol, &self.calib, self.prec)
    }

    fn eval(&mut self, radius: f64) -> Result<hp::Real> {
        Ok(boundary_route_direct(&self.spectral_at(radius)?))
    }

    /// Full cross-checked evaluation at the final reported point.
    fn eval_checked(&mut self, radius: f64) -> Result<hp::Real> {
        boundary_function_sd(&self.spectral_at(radius)?)
    }
}

/// Innermost boundary crossing on the ray at angle `theta`, as
/// `(radius, |F|)`.
fn trace_ray(
    r: f64,
    theta: f64,
    calib: &Arc<RCalibration>,
    prec: usize,
) -> Result<(f64, hp::Real)> {
    let mut ev = RayEvaluator::new(r, theta, Arc::clone(calib), prec)
        .map_err(|_| Error::NoCrossing { ray_angle: theta })?;
    let outer = WINDOW_OUTER_REL * calib.x_c.to_c64().norm();
    let ratio = (outer / WINDOW_INNER).powf(1.0 / (SCAN_SAMPLES as f64 - 1.0));
    // walk inward, remembering signs; scan later from the inside out
    let mut samples: Vec<(f64, f64)> = Vec::with_capacity(SCAN_SAMPLES);
    let mut radius = outer;
    for _ in 0..SCAN_SAMPLES {
        if let Ok(f) = ev.eval(radius) {
            samples.push((radius, f.to_f64()));
        }
        radius /= ratio;
    }
    let mut bracket = None;
    for pair in samples.windows(2).rev() {
        let (r_hi, f_hi) = pair[0];
        let (r_lo, f_lo) = pair[1];
        if f_lo != 0.0 && f_hi != 0.0 && f_lo.signum() != f_hi.signum() {
            bracket = Some(((r_lo, f_lo), (r_hi, f_hi)));
            break;
        }
    }
    let (mut lo, mut hi) = bracket.ok_or(Error::NoCrossing { ray_angle: theta })?;
    for _ in 0..80 {
        if hi.0 - lo.0 <= BISECTION_TOL {
            break;
        }
        let mid = 0.5 * (lo.0 + hi.0);
        let Ok(f) = ev.eval(mid) else {
            // failed interior evaluation: shrink from below
            lo.0 = mid;
            continue;
        };
        let fm = f.to_f64();
        if fm == 0.0 {
            lo = (mid, fm);
            hi = (mid, fm);
            break;
        }
        if fm.signum() == lo.1.signum() {
            lo = (mid, fm);
        } else {
            hi = (mid, fm);
        }
    }
    // secant refinement drives |F| itself down
    let mut best = if lo.1.abs() <= hi.1.abs() { lo } else { hi };
    for _ in 0..4 {
        if lo.1 == hi.1 {
            break;
        }
        let sec = lo.0 - lo.1 * (hi.0 - lo.0) / (hi.1 - lo.1);
        if !sec.is_finite() || sec <= 0.0 {
            break;
        }
        let Ok(f) = ev.eval(sec) else { break };
        let fs = f.to_f64();
        if fs.abs() < best.1.abs() {
            best = (sec, fs);
        }
        if fs == 0.0 {
            break;
        }
        if fs.signum() == lo.1.signum() {
            lo = (sec, fs);
        } else {
            hi = (sec, fs);
        }
    }
    let residual = ev.eval_checked(best.0)?.abs();
    Ok((best.0, residual))
}

/// Trace the boundary of the elliptic region.
///
/// Rays sweep the closed upper half-plane at `2 * samples_per_quadrant + 1`
/// angles; on each, the innermost sign change of F is bracketed and
/// bisected. The four corner points are inserted exactly, and the lower
/// half is generated by conjugate reflection.
pub fn trace_boundary(r: f64, samples_per_quadrant: usize, prec: usize) -> Result<BoundaryCurve> {
    if r < 1.0 || !r.is_finite() {
        return Err(Error::Domain(format!("boundary tracing needs r >= 1, got {r}")));
    }
    if samples_per_quadrant < 2 {
        return Err(Error::Domain("need at least 2 samples per quadrant".into()));
    }
    let calib = calibration(r, prec)?;
    let theta_c = calib.theta_c;
    let rays = 2 * samples_per_quadrant;
    let angles: Vec<f64> =
        (0..=rays).map(|j| std::f64::consts::PI * j as f64 / rays as f64).collect();

    let results: Vec<Result<Option<(f64, f64, hp::Real)>>> = angles
        .par_iter()
        .map(|&theta| {
            // corner angles are inserted exactly, not bisected
            if (theta - theta_c).abs() < 1e-9
                || (theta - (std::f64::consts::PI - theta_c)).abs() < 1e-9
            {
                return Ok(None);
            }
            let (radius, residual) = trace_ray(r, theta, &calib, prec)?;
            Ok(Some((theta, radius, residual)))
        })
        .collect();

    let mut upper: Vec<(f64, hp::Complex, hp::Real)> = Vec::new();
    for res in results {
        if let Some((theta, radius, residual)) = res? {
            let p = Complex64::from_polar(radius, theta);
            upper.push((theta, hp::Complex::from_f64(p.re, p.im, prec), residual));
        }
    }
    // exact corners at their angular slots
    let xc = calib.x_c.clone();
    let neg_conj = xc.conj().neg();
    upper.push((theta_c, xc.clone(), hp::Real::zero(prec)));
    upper.push((std::f64::consts::PI - theta_c, neg_conj, hp::Real::zero(prec)));
    upper.sort_by(|a, b| a.0.total_cmp(&b.0));

    let real_axis_crossing = upper.first().map(|(_, p, _)| p.abs().to_f64()).unwrap_or(0.0);
    let imag_axis_crossing = upper
        .iter()
        .min_by(|a, b| {
            (a.0 - std::f64::consts::FRAC_PI_2)
                .abs()
                .total_cmp(&(b.0 - std::f64::consts::FRAC_PI_2).abs())
        })
        .map(|(_, p, _)| p.abs().to_f64())
        .unwrap_or(0.0);

    let mut points: Vec<hp::Complex> = Vec::with_capacity(2 * upper.len());
    let mut residuals: Vec<hp::Real> = Vec::with_capacity(2 * upper.len());
    for (_, p, res) in &upper {
        points.push(p.clone());
        residuals.push(res.clone());
    }
    // lower half by conjugation, excluding the two real-axis points
    for (_, p, res) in upper.iter().rev().skip(1).take(upper.len().saturating_sub(2)) {
        points.push(p.conj());
        residuals.push(res.clone());
    }

    Ok(BoundaryCurve { r, points, residuals, x_c: xc, real_axis_crossing, imag_axis_crossing })
}
