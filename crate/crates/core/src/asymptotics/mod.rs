//! Genus-zero asymptotic machinery: the algebraic spectral data
//! (x_c, Q, S, a, b, c, R_c), the phase function, the boundary of the
//! elliptic region, the band-level line, signature charts, and the
//! leading-order formulas for the scaled rational solutions.

mod approx;
mod boundary;
mod chart;
mod corner;
mod phi;
mod qtrack;
mod quartic;
mod sigma;
mod spectral;

pub use approx::{asymptotic_w, asymptotic_w_from};
pub use boundary::{
    boundary_function, boundary_function_routes, boundary_function_sd, trace_boundary, BoundaryCurve, BISECTION_TOL,
    POINT_RESIDUAL_TOL, ROUTE_CONSISTENCY_TOL,
};
pub use chart::{phase_chart, PhaseChart};
pub use corner::{corner_point, ALGEBRAIC_RESIDUAL_TOL};
pub use phi::{phi_tilde_prime, re_phi_tilde};
pub use qtrack::{QSolution, CUT_MARGIN_REL};
pub use sigma::{signed_winding, trace_sigma, SigmaTrace, ENDPOINT_TOL, LEVEL_TOL};
pub use spectral::{calibration, solve_q, spectral_data, RCalibration, SpectralData, MOMENT_TOL};
