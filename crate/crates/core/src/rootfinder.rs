//! Simultaneous (Aberth–Ehrlich) polynomial root finding at extended
//! precision, and the scaled zero clouds of the generalized Hermite
//! polynomials.

use crate::error::{Error, Result};
use crate::hermite::gen_hermite;
use crate::hp;
use crate::poly::{ExactPoly, HpPoly};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

/// Default deterministic seed for the initial-guess angle perturbation.
pub const DEFAULT_SEED: u64 = 0x9e37_79b9_7f4a_7c15;

/// Default cap on Aberth sweeps.
pub const DEFAULT_MAX_ITERATIONS: usize = 500;

#[derive(Clone, Debug)]
pub struct AberthConfig {
    pub precision_bits: usize,
    pub max_iterations: usize,
    pub seed: u64,
}

impl Default for AberthConfig {
    fn default() -> Self {
        AberthConfig {
            precision_bits: hp::DEFAULT_PREC,
            max_iterations: DEFAULT_MAX_ITERATIONS,
            seed: DEFAULT_SEED,
        }
    }
}

impl AberthConfig {
    pub fn with_precision(precision_bits: usize) -> Self {
        AberthConfig { precision_bits, ..Default::default() }
    }
}

/// All complex roots of one polynomial, with per-root backward-error
/// residuals and cluster flags.
pub struct RootSet {
    pub roots: Vec<hp::Complex>,
    /// `|p(root)|` for each root (of the unscaled source polynomial).
    pub residuals: Vec<hp::Real>,
    pub source_degree: usize,
    /// Roots closer than `2^(-precision_bits/4)` to another root are
    /// flagged rather than merged.
    pub cluster_flags: Vec<bool>,
}

/// Find all roots of a nonconstant exact polynomial.
pub fn find_roots(p: &ExactPoly, precision_bits: usize) -> Result<RootSet> {
    find_roots_with(p, &AberthConfig::with_precision(precision_bits))
}

pub fn find_roots_with(p: &ExactPoly, cfg: &AberthConfig) -> Result<RootSet> {
    if p.degree() == 0 {
        return Err(Error::Domain("root finding needs a nonconstant polynomial".into()));
    }
    let prec = cfg.precision_bits;
    let hp_poly = HpPoly::from_exact(p, prec);
    let guesses = initial_guesses(&hp_poly, cfg);
    let mut roots = aberth_sweeps(&hp_poly, guesses, cfg)?;
    polish_all(&hp_poly, &mut roots);
    sort_roots(&mut roots);

    let residuals: Vec<hp::Real> = roots.par_iter().map(|z| hp_poly.eval(z).abs()).collect();
    let threshold_scale = hp::Real::from_f64(2.0, prec).powi(-(prec as i64) / 2);
    let mut worst: Option<f64> = None;
    for (z, res) in roots.iter().zip(&residuals) {
        let threshold = hp_poly.scale_at(z).mul(&threshold_scale);
        if *res > threshold {
            let ratio = res.div(&threshold).to_f64();
            worst = Some(worst.map_or(ratio, |w: f64| w.max(ratio)));
        }
    }
    if let Some(w) = worst {
        return Err(Error::NoConvergence { iterations: cfg.max_iterations, worst_residual: w });
    }

    let cluster_flags = flag_clusters(&roots, prec);
    Ok(RootSet { source_degree: hp_poly.degree(), roots, residuals, cluster_flags })
}

/// Which scaling variable to express a zero cloud in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScaleVar {
    /// Zeros of `H_{m,n}(m^{1/2} x)`: divide the y-plane roots by `m^{1/2}`.
    M,
    /// Zeros of `H_{m,n}(n^{1/2} chi)`: divide by `n^{1/2}`.
    N,
}

/// Roots of `H_{m,n}` expressed in the scaled variable.
pub fn scaled_zero_cloud(
    m: usize,
    n: usize,
    scale_by: ScaleVar,
    precision_bits: usize,
) -> Result<RootSet> {
    scaled_zero_cloud_with(m, n, scale_by, &AberthConfig::with_precision(precision_bits))
}

pub fn scaled_zero_cloud_with(
    m: usize,
    n: usize,
    scale_by: ScaleVar,
    cfg: &AberthConfig,
) -> Result<RootSet> {
    if m < 1 || n < 1 {
        return Err(Error::Domain(format!("zero cloud needs m, n >= 1, got ({m}, {n})")));
    }
    let p = gen_hermite(m, n);
    let mut set = find_roots_with(&p, cfg)?;
    let denom = match scale_by {
        ScaleVar::M => m as u64,
        ScaleVar::N => n as u64,
    };
    let factor = hp::Real::from_u64(denom, cfg.precision_bits).sqrt().recip();
    for z in &mut set.roots {
        *z = z.scale(&factor);
    }
    Ok(set)
}

/// Initial guesses on three concentric circles scaled by a coefficient
/// root-radius bound, with a deterministic pseudo-random angle perturbation
/// to break the polynomial's symmetries.
fn initial_guesses(p: &HpPoly, cfg: &AberthConfig) -> Vec<hp::Complex> {
    let d = p.degree();
    let radius = root_radius_bound(p);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut guesses = Vec::with_capacity(d);
    let circles = [0.5, 1.0, 1.5];
    for i in 0..d {
        let circle = circles[i % circles.len()];
        let jitter: f64 = rng.random_range(-0.45..0.45);
        let angle = 2.0 * std::f64::consts::PI * ((i as f64 + 0.37 * circle) / d as f64)
            + jitter * 2.0 * std::f64::consts::PI / d as f64
            + 0.1 * circle;
        let r = circle * radius;
        guesses.push(hp::Complex::from_f64(
            r * angle.cos(),
            r * angle.sin(),
            cfg.precision_bits,
        ));
    }
    guesses
}

/// Root-inclusion radius from coefficient magnitudes (Fujiwara form,
/// computed in log2 so extreme Hermite coefficient ratios cannot overflow):
/// `2 * max_k |c_{d-k}/c_d|^{1/k}`.
fn root_radius_bound(p: &HpPoly) -> f64 {
    let d = p.degree();
    let lead = p.coeff_log2(d);
    let mut best = f64::NEG_INFINITY;
    for k in 1..=d {
        let c = p.coeff_log2(d - k);
        if c == f64::NEG_INFINITY {
            continue;
        }
        best = best.max((c - lead) / k as f64);
    }
    if !best.is_finite() {
        return 1.0;
    }
    2.0 * best.exp2().max(1e-6)
}

fn aberth_sweeps(
    p: &HpPoly,
    mut z: Vec<hp::Complex>,
    cfg: &AberthConfig,
) -> Result<Vec<hp::Complex>> {
    let prec = cfg.precision_bits;
    let d = z.len();
    // a root counts as settled when its correction is below the target
    // relative size, or below the Newton noise floor of the evaluation
    // (2^-prec * majorant / |p'|): past that point further sweeps only
    // stir rounding noise
    let tol = hp::Real::from_f64(2.0, prec).powi(-(prec as i64 - 8));
    let noise = hp::Real::from_f64(2.0, prec).powi(-(prec as i64 - 12));
    let tiny = hp::Real::from_f64(2.0, prec).powi(-(2 * prec as i64));
    let mut last_worst = f64::INFINITY;
    for _sweep in 0..cfg.max_iterations {
        let snapshot = z.clone();
        let updates: Vec<(hp::Complex, hp::Real, bool)> = (0..d)
            .into_par_iter()
            .map(|i| {
                let zi = &snapshot[i];
                let (pv, dv) = p.eval_with_deriv(zi);
                if pv.is_zero() {
                    return (zi.clone(), hp::Real::zero(prec), true);
                }
                let newton = if dv.is_zero() {
                    // perturb off a critical point
                    hp::Complex::from_f64(1e-3, 1e-3, prec)
                } else {
                    pv.div(&dv)
                };
                let mut sum = hp::Complex::zero(prec);
                for (j, zj) in snapshot.iter().enumerate() {
                    if j == i {
                        continue;
                    }
                    let diff = zi.sub(zj);
                    if diff.norm_sqr() <= tiny {
                        continue;
                    }
                    sum = sum.add(&diff.recip());
                }
                let denom = hp::Complex::one(prec).sub(&newton.mul(&sum));
                let w = if denom.is_zero() { newton.clone() } else { newton.div(&denom) };
                let next = zi.sub(&w);
                let z_abs = zi.abs();
                let w_abs = w.abs();
                let rel = w_abs.div(&z_abs.add(&hp::Real::one(prec)));
                let settled = rel <= tol || {
                    let floor = p.abs_majorant_at_radius(&z_abs).mul(&noise);
                    !dv.is_zero() && w_abs.mul(&dv.abs()) <= floor
                };
                (next, rel, settled)
            })
            .collect();
        let mut worst = hp::Real::zero(prec);
        let mut all_settled = true;
        for (i, (next, rel, settled)) in updates.into_iter().enumerate() {
            if next.is_finite() {
                z[i] = next;
            }
            worst = worst.max(&rel);
            all_settled &= settled;
        }
        if all_settled {
            return Ok(z);
        }
        last_worst = worst.to_f64();
    }
    Err(Error::NoConvergence {
        iterations: cfg.max_iterations,
        worst_residual: last_worst,
    })
}

/// A few Newton steps per root to tighten after the simultaneous phase.
fn polish_all(p: &HpPoly, roots: &mut [hp::Complex]) {
    roots.par_iter_mut().for_each(|z| {
        for _ in 0..3 {
            let (pv, dv) = p.eval_with_deriv(z);
            if pv.is_zero() || dv.is_zero() {
                break;
            }
            let step = pv.div(&dv);
            let next = z.sub(&step);
            if !next.is_finite() {
                break;
            }
            *z = next;
        }
    });
}

fn sort_roots(roots: &mut [hp::Complex]) {
    roots.sort_by(|a, b| {
        a.re.partial_cmp(&b.re)
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(a.im.partial_cmp(&b.im).unwrap_or(std::cmp::Ordering::Equal))
    });
}

fn flag_clusters(roots: &[hp::Complex], prec: usize) -> Vec<bool> {
    let cutoff = hp::Real::from_f64(2.0, prec).powi(-(prec as i64) / 4);
    let mut flags = vec![false; roots.len()];
    for i in 0..roots.len() {
        for j in i + 1..roots.len() {
            if roots[i].dist(&roots[j]) < cutoff {
                flags[i] = true;
                flags[j] = true;
            }
        }
    }
    flags
}

impl HpPoly {
    /// log2 magnitude of coefficient `k` (for radius bounds).
    fn coeff_log2(&self, k: usize) -> f64 {
        self.coeff(k).map_or(f64::NEG_INFINITY, |c| {
            let n = c.norm_sqr();
            if n.is_zero() {
                f64::NEG_INFINITY
            } else {
                n.log2_magnitude() / 2.0
            }
        })
    }
}
