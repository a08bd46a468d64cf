//! Signature charts: the sign of `Re(phi~(z))` sampled on a grid.

use super::phi::re_phi_tilde;
use super::spectral::SpectralData;
use crate::error::Result;
use crate::hp;
use rayon::prelude::*;

/// Sign grid over a rectangular window of the z-plane; cells hitting
/// singularities are 0 (indeterminate).
pub struct PhaseChart {
    /// Window as `[re_min, re_max, im_min, im_max]`.
    pub window: [f64; 4],
    pub grid_n: usize,
    /// Row-major, `grid_n` rows sweeping the imaginary axis bottom-up.
    pub signs: Vec<i8>,
    pub a: hp::Complex,
    pub b: hp::Complex,
    pub c: hp::Complex,
}

impl PhaseChart {
    pub fn cell_center(&self, row: usize, col: usize) -> (f64, f64) {
        let [x0, x1, y0, y1] = self.window;
        let fx = (col as f64 + 0.5) / self.grid_n as f64;
        let fy = (row as f64 + 0.5) / self.grid_n as f64;
        (x0 + fx * (x1 - x0), y0 + fy * (y1 - y0))
    }

    pub fn sign(&self, row: usize, col: usize) -> i8 {
        self.signs[row * self.grid_n + col]
    }
}

/// Sample `sign(Re(phi~))` on a `grid_n x grid_n` mesh over `window`.
pub fn phase_chart(sd: &SpectralData, window: [f64; 4], grid_n: usize) -> Result<PhaseChart> {
    let signs: Vec<i8> = (0..grid_n * grid_n)
        .into_par_iter()
        .map(|idx| {
            let row = idx / grid_n;
            let col = idx % grid_n;
            let [x0, x1, y0, y1] = window;
            let re = x0 + (col as f64 + 0.5) / grid_n as f64 * (x1 - x0);
            let im = y0 + (row as f64 + 0.5) / grid_n as f64 * (y1 - y0);
            let z = hp::Complex::from_f64(re, im, sd.prec);
            match re_phi_tilde(&z, sd) {
                Ok(v) => {
                    if v.is_positive() {
                        1
                    } else if v.is_negative() {
                        -1
                    } else {
                        0
                    }
                }
                Err(_) => 0,
            }
        })
        .collect();
    Ok(PhaseChart {
        window,
        grid_n,
        signs,
        a: sd.a.clone(),
        b: sd.b.clone(),
        c: sd.c.clone(),
    })
}
