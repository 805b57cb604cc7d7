//! Numerical toolkit for tame real analysis.
//!
//! Function models with generalized finite differences and smoothness
//! certificates, function classifiers, ordered-field synthesis from a
//! non-affine C¹ function, sequence-set geometry, and base-r numeration
//! with automata. Every routine is a pure function of its inputs; seeded
//! sampling makes every report reproducible.

pub mod base_r;
pub mod classify;
pub mod cli;
pub mod config;
pub mod deriv;
pub mod diff;
pub mod error;
pub mod field;
pub mod interval;
pub mod model;
pub mod seqset;

pub use config::ToleranceConfig;
pub use deriv::{derivative, DerivativeEstimate};
pub use error::{Error, Result};
pub use interval::{Interval, Openness};
pub use model::{parse_function_spec, parse_interval, sample, Body, Expr, FunctionModel, GridForm, Interpolation};
