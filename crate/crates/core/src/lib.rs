//! Exact Casson-Walker-Lescop invariants of rational surgery presentations.
//!
//! `surgery::lescop_lambda` is the general engine; everything else in
//! `surgery` is a closed form that must agree with it. Conway data can be
//! supplied by hand or computed from PD codes with `conway`.

pub mod arith;
pub mod conway;
pub mod cosmetic;
pub mod error;
pub mod linalg;
pub mod surgery;

pub use arith::{Rational, Slope};
pub use error::Error;
