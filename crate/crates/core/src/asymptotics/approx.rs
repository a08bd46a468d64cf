//! Leading-order genus-zero approximations of the scaled rational
//! Painlevé-IV functions.

use super::spectral::{spectral_data, SpectralData};
use crate::error::Result;
use crate::hp;
use crate::painleve4::Family;

/// Leading-order value of `n^{-1/2} w^(family)_{m,n}(m^{1/2} x)` as
/// `n -> infinity` with `r = m/n` fixed:
/// family I:  `-1/Q - S/(2Q^2)`;
/// family II: `+1/Q - S/(2Q^2)`;
/// family III: `-2 r^(1/2) x + S/Q^2`.
pub fn asymptotic_w_from(sd: &SpectralData, family: Family) -> hp::Complex {
    let prec = sd.prec;
    let q2 = sd.q.mul(&sd.q);
    let s_over_2q2 = sd.s.div(&q2.scale(&hp::Real::from_u64(2, prec)));
    let inv_q = sd.q.recip();
    match family {
        Family::I => inv_q.neg().sub(&s_over_2q2),
        Family::II => inv_q.sub(&s_over_2q2),
        Family::III => {
            let sqrt_r = hp::Real::from_f64(sd.r, prec).sqrt();
            let two = hp::Real::from_u64(2, prec);
            sd.x.scale(&sqrt_r.mul(&two)).neg().add(&sd.s.div(&q2))
        }
    }
}

/// Leading-order approximation at `(x, r)`; intended for `x` in the
/// genus-zero region (the formulas degrade near and inside the elliptic
/// region).
pub fn asymptotic_w(family: Family, x: &hp::Complex, r: f64, prec: usize) -> Result<hp::Complex> {
    let sd = spectral_data(x, r, prec)?;
    Ok(asymptotic_w_from(&sd, family))
}
