//! Exponential, trigonometric and logarithmic integrals evaluated by
//! convergent series, continued fractions and asymptotic expansions, each
//! checked against direct adaptive quadrature of the defining integral.
//!
//! ```
//! use expint::evaluator::{eval_exp, ExpFn};
//! let r = eval_exp(ExpFn::E1, 1.0).unwrap();
//! assert!((r.value - 0.219_383_934_395_520_3).abs() < 1e-15);
//! ```

// `!(x > 0.0)` is used on purpose: it rejects NaN along with the bad range.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod asymptotic;
pub mod constants;
mod dd;
pub mod error;
pub mod evaluator;
pub mod exec;
pub mod primes;
pub mod quadrature;
pub mod series;
pub mod verify;

pub use error::{Error, Result};
pub use exec::Exec;
