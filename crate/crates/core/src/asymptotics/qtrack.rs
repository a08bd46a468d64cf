//! Branch tracking for the quartic function Q(x; r).
//!
//! Q is one sheet of the quartic
//! `3(1+r)^2 Q^4 + 8(1+r) r^(1/2) x Q^3 + 4(r - 1 + r x^2) Q^2 - 4 = 0`,
//! fixed by its behavior on the far positive real axis and by branch cuts
//! along the four radial segments from the origin through the corner
//! points. The sheet is realized by homotopy continuation: anchor far out
//! on the positive real axis where the sheets separate cleanly, then
//! follow the chosen root along a radius/arc path that never crosses a
//! cut segment. Tracking runs in double precision; the final point is
//! Newton-polished at working precision with a residual certificate.

use super::corner::algebraic_tol;
use super::quartic::{polish_hp, quartic_roots_f64, relative_residual};
use crate::error::{Error, Result};
use crate::hp;
use num_complex::Complex64;

/// Rejection margin around the cut segments, relative to `|x_c|`.
pub const CUT_MARGIN_REL: f64 = 1e-9;

/// Arc paths stay outside the corner radius by this factor.
const ARC_RADIUS_FACTOR: f64 = 1.1;

/// Maximum fraction of the gap to the nearest other sheet that the tracked
/// root may move in one accepted step.
const GAP_FRACTION: f64 = 0.45;

pub fn quartic_coeffs_f64(r: f64, x: Complex64) -> [Complex64; 5] {
    let sr = r.sqrt();
    [
        Complex64::new(-4.0, 0.0),
        Complex64::new(0.0, 0.0),
        4.0 * (Complex64::new(r - 1.0, 0.0) + r * x * x),
        8.0 * (1.0 + r) * sr * x,
        Complex64::new(3.0 * (1.0 + r) * (1.0 + r), 0.0),
    ]
}

pub fn quartic_coeffs_hp(r: f64, x: &hp::Complex, prec: usize) -> Vec<hp::Complex> {
    let rr = hp::Real::from_f64(r, prec);
    let one = hp::Real::one(prec);
    let rp1 = rr.add(&one);
    let sr = rr.sqrt();
    let x2 = x.mul(x);
    vec![
        hp::Complex::from_real(hp::Real::from_i64(-4, prec)),
        hp::Complex::zero(prec),
        x2.scale(&rr).add(&hp::Complex::from_real(rr.sub(&one))).scale(&hp::Real::from_u64(4, prec)),
        x.scale(&rp1.mul(&sr).mul_u64(8)),
        hp::Complex::from_real(rp1.mul(&rp1).mul_u64(3)),
    ]
}

/// Distance from `p` to the segment from the origin to `end`.
fn dist_to_radial_segment(p: Complex64, end: Complex64) -> f64 {
    let len2 = end.norm_sqr();
    if len2 == 0.0 {
        return p.norm();
    }
    let t = ((p.re * end.re + p.im * end.im) / len2).clamp(0.0, 1.0);
    (p - end * t).norm()
}

/// Distance from `p` to the nearest of the four cut segments.
pub fn dist_to_cuts(p: Complex64, xc: Complex64) -> f64 {
    let conj = xc.conj();
    [xc, -xc, conj, -conj]
        .into_iter()
        .map(|end| dist_to_radial_segment(p, end))
        .fold(f64::INFINITY, f64::min)
}

/// Principal straight-cut value of `R~(c)` in double precision, from the
/// tracked sheet value q at x.
pub(super) fn rtilde_c_principal(r: f64, x: Complex64, q: Complex64) -> Complex64 {
    let s = (1.0 + r) * q * q * q + 2.0 * r.sqrt() * x * q * q;
    let c = Complex64::new(-2.0, 0.0) / ((1.0 + r) * q);
    let u = c - s / 2.0;
    let d = s * s / 4.0 - q * q;
    u * (Complex64::new(1.0, 0.0) - d / (u * u)).sqrt()
}

/// Double-precision continuation state for one sheet of Q, together with
/// the continued branch of `R(c)`.
///
/// The straight-cut value `R~(c)` jumps sign whenever the moving point c
/// crosses the moving segment [a, b]; the branch the asymptotic analysis
/// needs is the continuous one, so the tracker carries `R(c)` forward by
/// nearest-value matching against `+-R~(c)` at every accepted step.
pub struct QTracker {
    r: f64,
    xc: Complex64,
    pub x: Complex64,
    pub q: Complex64,
    /// Continued value of R(c) relative to the anchor determination.
    pub rc: Complex64,
    /// Distance from the tracked root to the nearest other sheet at `x`.
    pub gap: f64,
    path: Vec<String>,
}

impl QTracker {
    /// Anchor on the far positive real axis at `x0 = max(10, 3|x_c|)`,
    /// choosing the quartic root closest to `-x0`. `R(c)` starts on the
    /// principal straight-cut determination there.
    pub fn anchor(r: f64, xc: Complex64) -> Self {
        let x0 = 10.0f64.max(3.0 * xc.norm());
        let x = Complex64::new(x0, 0.0);
        let roots = quartic_roots_f64(&quartic_coeffs_f64(r, x));
        let target = Complex64::new(-x0, 0.0);
        let (qi, _) = roots
            .iter()
            .enumerate()
            .map(|(i, z)| (i, (z - target).norm()))
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .expect("quartic has four roots");
        let q = roots[qi];
        let gap = min_gap(&roots, qi);
        let rc = rtilde_c_principal(r, x, q);
        QTracker { r, xc, x, q, rc, gap, path: vec![format!("anchor x0={x0:.4}")] }
    }

    /// Track along the straight segment from the current point to `target`.
    /// The caller is responsible for segment legality (no cut crossing).
    pub fn step_to(&mut self, target: Complex64) -> Result<()> {
        let total = (target - self.x).norm();
        if total == 0.0 {
            return Ok(());
        }
        let mut h = (0.05 * (1.0 + self.x.norm())).min(total);
        let h_floor = 1e-13 * total.max(1.0);
        loop {
            let remaining = target - self.x;
            let dist = remaining.norm();
            if dist == 0.0 {
                return Ok(());
            }
            let step = h.min(dist);
            let x_next = self.x + remaining * (step / dist);
            let roots = quartic_roots_f64(&quartic_coeffs_f64(self.r, x_next));
            let (qi, move_dist) = roots
                .iter()
                .enumerate()
                .map(|(i, z)| (i, (z - self.q).norm()))
                .min_by(|a, b| a.1.total_cmp(&b.1))
                .expect("quartic has four roots");
            let gap_next = min_gap(&roots, qi);
            if gap_next < 1e-10 * (1.0 + roots[qi].norm()) {
                return Err(Error::TrackingLoss(format!(
                    "sheets collide near x = {x_next} (gap {gap_next:e})"
                )));
            }
            let rc_principal = rtilde_c_principal(self.r, x_next, roots[qi]);
            let rc_next = if (rc_principal - self.rc).norm() <= (rc_principal + self.rc).norm() {
                rc_principal
            } else {
                -rc_principal
            };
            let too_far = move_dist > GAP_FRACTION * gap_next.min(self.gap)
                || (rc_next - self.rc).norm() > 0.6 * self.rc.norm().max(1e-6);
            if too_far {
                h *= 0.5;
                if h < h_floor {
                    return Err(Error::TrackingLoss(format!(
                        "step underflow near x = {} (gap {:e})",
                        self.x, self.gap
                    )));
                }
                continue;
            }
            self.x = x_next;
            self.q = roots[qi];
            self.rc = rc_next;
            self.gap = gap_next;
            h = (h * 1.6).min(0.2 * (1.0 + self.x.norm()));
        }
    }

    /// Move to `target` along radius -> arc -> radius, with arcs kept
    /// outside the corner radius so no cut segment is crossed.
    pub fn goto_via_path(&mut self, target: Complex64) -> Result<()> {
        let margin = CUT_MARGIN_REL * self.xc.norm();
        if dist_to_cuts(target, self.xc) < margin {
            return Err(Error::OnBranchCut(format!(
                "x = {target} is within {margin:e} of a cut segment"
            )));
        }
        let rho = target.norm().max(ARC_RADIUS_FACTOR * self.xc.norm());
        let theta_from = self.x.arg();
        let theta_to = target.arg();
        // radial leg out/in to the arc radius
        let p1 = Complex64::from_polar(rho, theta_from);
        self.step_to(p1)?;
        self.path.push(format!("radial to |x|={rho:.4}"));
        // arc in short chords that sag less than the corner-radius margin
        let sweep = theta_to - theta_from;
        if sweep.abs() > 1e-15 {
            let chunks = (sweep.abs() / 0.05).ceil() as usize;
            for k in 1..=chunks {
                let th = theta_from + sweep * (k as f64 / chunks as f64);
                self.step_to(Complex64::from_polar(rho, th))?;
            }
            self.path.push(format!("arc to arg={theta_to:.4}"));
        }
        // radial leg to the target
        self.step_to(target)?;
        self.path.push(format!("radial to x={target}"));
        Ok(())
    }

    pub fn path_description(&self) -> String {
        self.path.join(" -> ")
    }

    /// Lift the tracked double-precision root to working precision with a
    /// certified residual.
    pub fn polish(&self, x: &hp::Complex, prec: usize) -> Result<hp::Complex> {
        let coeffs = quartic_coeffs_hp(self.r, x, prec);
        let q = polish_hp(&coeffs, self.q, prec)?;
        let drift = q.to_c64() - self.q;
        if drift.norm() > 0.35 * self.gap {
            return Err(Error::TrackingLoss(format!(
                "polish drifted {:e}, a large fraction of the sheet gap {:e}",
                drift.norm(),
                self.gap
            )));
        }
        let res = relative_residual(&coeffs, &q, prec);
        if res > algebraic_tol(prec) {
            return Err(Error::TrackingLoss(format!("quartic residual {res:e} after polish")));
        }
        Ok(q)
    }

    pub fn solution(&self, x: &hp::Complex, prec: usize) -> Result<QSolution> {
        let q = self.polish(x, prec)?;
        Ok(QSolution {
            q,
            rc_f64: self.rc,
            track_path: self.path_description(),
            gap: self.gap,
        })
    }
}

fn min_gap(roots: &[Complex64; 4], i: usize) -> f64 {
    roots
        .iter()
        .enumerate()
        .filter(|&(j, _)| j != i)
        .map(|(_, z)| (z - roots[i]).norm())
        .fold(f64::INFINITY, f64::min)
}

/// Solved Q value with the continuation path that produced it.
pub struct QSolution {
    pub q: hp::Complex,
    /// Continued `R(c)` in double precision; fixes the branch sign for the
    /// extended-precision value.
    pub rc_f64: Complex64,
    pub track_path: String,
    /// Sheet gap at the target (double precision), for downstream guards.
    pub gap: f64,
}

/// Solve for Q(x; r) on the physical sheet.
pub fn solve_q_with_corner(
    x: &hp::Complex,
    r: f64,
    xc: &hp::Complex,
    prec: usize,
) -> Result<QSolution> {
    let mut tracker = QTracker::anchor(r, xc.to_c64());
    tracker.goto_via_path(x.to_c64())?;
    tracker.solution(x, prec)
}
