//! Rational solutions of the Painlevé-IV equation built from generalized
//! Hermite polynomials, together with their zero/pole clouds and the
//! genus-zero asymptotic data (spectral quantities, elliptic-region boundary,
//! phase charts, and leading-order approximations).
//!
//! The exact layer ([`poly`], [`hermite`], [`painleve4`]) works in arbitrary-
//! precision rational arithmetic and verifies the determinantal and ODE
//! identities exactly. The numerical layer ([`hp`], [`rootfinder`],
//! [`asymptotics`]) runs at configurable extended precision, 192 significand
//! bits by default.

pub mod asymptotics;
pub mod error;
pub mod hermite;
pub mod hp;
pub mod painleve4;
pub mod poly;
pub mod ratfn;
pub mod rootfinder;

pub use error::{Error, Result};
