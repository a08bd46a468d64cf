//! Tracing the level line of `Re(phi~) = 0` that joins the band endpoints
//! a and b clockwise around the origin.

use super::phi::{phi_tilde_prime, re_phi_tilde};
use super::spectral::SpectralData;
use crate::error::{Error, Result};
use crate::hp;
use num_complex::Complex64;

/// Level residual enforced at interior trace points.
pub const LEVEL_TOL: f64 = 1e-10;

/// Capture distance at the far endpoint.
pub const ENDPOINT_TOL: f64 = 1e-6;

/// Traced level line from `a` to `b`.
pub struct SigmaTrace {
    pub points: Vec<hp::Complex>,
    /// Signed angle swept about the origin along the trace (negative =
    /// clockwise).
    pub winding: f64,
}

/// Signed angle sum of a polyline about the origin.
pub fn signed_winding(points: &[Complex64]) -> f64 {
    points
        .windows(2)
        .map(|w| {
            let cross = w[0].re * w[1].im - w[0].im * w[1].re;
            let dot = w[0].re * w[1].re + w[0].im * w[1].im;
            cross.atan2(dot)
        })
        .sum()
}

struct LevelField<'a> {
    sd: &'a SpectralData,
    prec: usize,
}

impl LevelField<'_> {
    fn value(&self, z: Complex64) -> Result<f64> {
        let zh = hp::Complex::from_f64(z.re, z.im, self.prec);
        Ok(re_phi_tilde(&zh, self.sd)?.to_f64())
    }

    fn gradient_dir(&self, z: Complex64) -> Result<Complex64> {
        let zh = hp::Complex::from_f64(z.re, z.im, self.prec);
        let d = phi_tilde_prime(&zh, self.sd)?.to_c64();
        let n = d.norm();
        if n == 0.0 || !n.is_finite() {
            return Err(Error::SingularPoint(format!("degenerate phase gradient at {z}")));
        }
        // grad Re(f) = conj(f')
        Ok(d.conj() / n)
    }

    /// Pull `z` back onto the zero level along the gradient.
    fn correct(&self, mut z: Complex64, budget: f64) -> Result<Complex64> {
        for _ in 0..12 {
            let f = self.value(z)?;
            if f.abs() <= LEVEL_TOL * 0.05 {
                return Ok(z);
            }
            let g = self.gradient_dir(z)?;
            let zh = hp::Complex::from_f64(z.re, z.im, self.prec);
            let slope = phi_tilde_prime(&zh, self.sd)?.to_c64().norm();
            let step = (-f / slope).clamp(-budget, budget);
            z += g * step;
        }
        let f = self.value(z)?;
        if f.abs() <= LEVEL_TOL {
            Ok(z)
        } else {
            Err(Error::TraceDiverged { steps: 12 })
        }
    }
}

/// Trace the `Re(phi~) = 0` line from `a`, choosing the outgoing arc whose
/// continuation winds clockwise about the origin, ending at `b`.
pub fn trace_sigma(sd: &SpectralData, max_steps: usize) -> Result<SigmaTrace> {
    let field = LevelField { sd, prec: sd.prec };
    let a = sd.a.to_c64();
    let b = sd.b.to_c64();
    let span = (b - a).norm();
    if span == 0.0 {
        return Err(Error::SingularPoint("coincident band endpoints".into()));
    }
    let h0 = 2e-3 * span;

    let directions = outgoing_directions(&field, a, h0)?;
    let mut best: Option<SigmaTrace> = None;
    for dir in directions {
        if let Ok(trace) = follow(&field, a, b, dir, h0, span, max_steps) {
            if trace.winding < 0.0 {
                return Ok(trace);
            }
            if best.is_none() {
                best = Some(trace);
            }
        }
    }
    Err(Error::TraceDiverged { steps: max_steps })
}

/// Zero crossings of Re(phi~) on a small circle around `a`; locally
/// `phi~ ~ C (z-a)^(3/2)`, so three arcs emanate.
fn outgoing_directions(field: &LevelField, a: Complex64, h0: f64) -> Result<Vec<Complex64>> {
    let samples = 360;
    let mut values = Vec::with_capacity(samples);
    for k in 0..samples {
        let th = 2.0 * std::f64::consts::PI * k as f64 / samples as f64;
        let z = a + Complex64::from_polar(h0, th);
        values.push((th, field.value(z).ok()));
    }
    let mut dirs = Vec::new();
    for k in 0..samples {
        let (t1, v1) = values[k];
        let (t2, v2) = values[(k + 1) % samples];
        let (Some(f1), Some(f2)) = (v1, v2) else { continue };
        if f1 == 0.0 || f1.signum() == f2.signum() {
            continue;
        }
        // angular bisection
        let (mut lo, mut hi) = ((t1, f1), (t2 + if k + 1 == samples { 2.0 * std::f64::consts::PI } else { 0.0 }, f2));
        for _ in 0..40 {
            let mid = 0.5 * (lo.0 + hi.0);
            let z = a + Complex64::from_polar(h0, mid);
            let Ok(fm) = field.value(z) else { break };
            if fm == 0.0 {
                lo = (mid, fm);
                break;
            }
            if fm.signum() == lo.1.signum() {
                lo = (mid, fm);
            } else {
                hi = (mid, fm);
            }
        }
        let th = 0.5 * (lo.0 + hi.0);
        dirs.push(Complex64::from_polar(1.0, th));
    }
    if dirs.is_empty() {
        return Err(Error::TraceDiverged { steps: 0 });
    }
    Ok(dirs)
}

fn follow(
    field: &LevelField,
    a: Complex64,
    b: Complex64,
    dir0: Complex64,
    h0: f64,
    span: f64,
    max_steps: usize,
) -> Result<SigmaTrace> {
    let mut pts = vec![a, field.correct(a + dir0 * h0, h0)?];
    let mut h = h0;
    let h_max = 0.02 * span;
    let h_min = 1e-7 * span;
    let far = 60.0 * span.max(b.norm()).max(a.norm());
    for _ in 0..max_steps {
        let z = *pts.last().unwrap();
        if (z - b).norm() <= ENDPOINT_TOL.max(2.0 * h) {
            pts.push(b);
            let winding = signed_winding(&pts);
            return Ok(SigmaTrace {
                points: pts
                    .iter()
                    .map(|p| hp::Complex::from_f64(p.re, p.im, field.prec))
                    .collect(),
                winding,
            });
        }
        if z.norm() > far || z.norm() < 1e-6 * span {
            return Err(Error::TraceDiverged { steps: max_steps });
        }
        let prev = pts[pts.len() - 2];
        let g = field.gradient_dir(z)?;
        // level-line tangent, oriented to keep moving forward
        let mut t = Complex64::new(-g.im, g.re);
        let forward = z - prev;
        if t.re * forward.re + t.im * forward.im < 0.0 {
            t = -t;
        }
        match field.correct(z + t * h, h) {
            Ok(next) => {
                // reject sharp kinks; they signal an under-resolved turn
                let step = next - z;
                let cosang = (step.re * forward.re + step.im * forward.im)
                    / (step.norm() * forward.norm()).max(1e-300);
                if cosang < 0.3 && h > h_min {
                    h = (h * 0.5).max(h_min);
                    continue;
                }
                pts.push(next);
                h = (h * 1.25).min(h_max);
            }
            Err(_) => {
                if h <= h_min {
                    return Err(Error::TraceDiverged { steps: max_steps });
                }
                h = (h * 0.4).max(h_min);
            }
        }
    }
    Err(Error::TraceDiverged { steps: max_steps })
}
