//! Independent numerical-integration oracle.
//!
//! Every function in the crate has a defining integral, and this module
//! evaluates those integrals directly: adaptive Gauss–Kronrod on finite
//! ranges, symmetric exclusion with extrapolation for principal values, a
//! rational map for decaying semi-infinite tails, and between-zeros summation
//! with epsilon acceleration for oscillatory tails. Nothing here calls the
//! series, asymptotic or evaluator modules, so it can judge all of them.

mod accel;
mod improper;
mod kronrod;
mod oracle;

pub use accel::{richardson_geometric, wynn_epsilon};
pub use improper::{
    integrate_lower_infinite, integrate_pv, integrate_upper_infinite, oscillatory_partial_sums,
};
pub use kronrod::integrate_adaptive;
pub use oracle::{
    exercise_check, gamma_integral_checks, gamma_split_residual, oracle_value, Exercise,
    ExerciseCheck, GammaChecks,
};

use crate::error::{Error, Result};

/// Control knobs shared by all integrators.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadConfig {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_subdivisions: usize,
    /// Ratio between successive exclusion half-widths around a pole.
    pub pv_shrink: f64,
    /// Period of the oscillating factor for conditionally convergent tails.
    pub osc_period_hint: Option<f64>,
}

impl Default for QuadConfig {
    fn default() -> Self {
        Self {
            rel_tol: 1e-10,
            abs_tol: 1e-14,
            max_subdivisions: 2000,
            pv_shrink: 0.5,
            osc_period_hint: None,
        }
    }
}

impl QuadConfig {
    pub fn with_rel_tol(rel_tol: f64) -> Self {
        Self {
            rel_tol,
            ..Self::default()
        }
    }

    pub fn with_period(self, period: f64) -> Self {
        Self {
            osc_period_hint: Some(period),
            ..self
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0) {
            return Err(Error::InvalidConfig("rel_tol must be positive"));
        }
        if !(self.abs_tol >= 0.0) {
            return Err(Error::InvalidConfig("abs_tol must be non-negative"));
        }
        if self.max_subdivisions < 1 {
            return Err(Error::InvalidConfig("max_subdivisions must be at least 1"));
        }
        if !(self.pv_shrink > 0.0 && self.pv_shrink < 1.0) {
            return Err(Error::InvalidConfig("pv_shrink must lie in (0, 1)"));
        }
        if let Some(p) = self.osc_period_hint {
            if !(p > 0.0 && p.is_finite()) {
                return Err(Error::InvalidConfig("osc_period_hint must be positive"));
            }
        }
        Ok(())
    }

    pub(crate) fn tolerance_for(&self, value: f64) -> f64 {
        self.abs_tol.max(self.rel_tol * value.abs())
    }
}

/// Converged value of an integral with its error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: f64,
    pub abs_err_estimate: f64,
    pub subdivisions: usize,
    pub converged: bool,
}

impl QuadResult {
    /// Sum of independently integrated pieces.
    ///
    /// The combined result counts as converged when every piece did and the
    /// summed error meets the tolerance. When pieces cancel, the tolerance
    /// relaxes to what the pieces were each held to, plus the rounding floor
    /// of the addition.
    pub(crate) fn combine(pieces: &[QuadResult], cfg: &QuadConfig) -> QuadResult {
        let value: f64 = pieces.iter().map(|p| p.value).sum();
        let magnitude: f64 = pieces.iter().map(|p| p.value.abs()).sum();
        let err: f64 = pieces.iter().map(|p| p.abs_err_estimate).sum();
        let piece_tol: f64 = pieces.iter().map(|p| cfg.tolerance_for(p.value)).sum();
        let floor = piece_tol + 4.0 * f64::EPSILON * magnitude;
        QuadResult {
            value,
            abs_err_estimate: err,
            subdivisions: pieces.iter().map(|p| p.subdivisions).sum(),
            converged: pieces.iter().all(|p| p.converged)
                && err <= cfg.tolerance_for(value).max(floor),
        }
    }

    pub(crate) fn scaled(self, factor: f64) -> QuadResult {
        QuadResult {
            value: self.value * factor,
            abs_err_estimate: self.abs_err_estimate * factor.abs(),
            ..self
        }
    }

    pub(crate) fn exact(value: f64) -> QuadResult {
        QuadResult {
            value,
            abs_err_estimate: 0.0,
            subdivisions: 0,
            converged: true,
        }
    }
}

/// Functions the oracle knows how to integrate from their definitions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FnId {
    Ei,
    E1,
    /// General exponential integral of order n.
    En(f64),
    Ein,
    Si,
    Ci,
    Li,
    Li1,
    LiOffset,
    /// Upper incomplete gamma Γ(s, x).
    GammaUpper(f64),
    /// Lower incomplete gamma γ(s, x).
    GammaLower(f64),
}

impl FnId {
    pub fn name(&self) -> &'static str {
        match self {
            FnId::Ei => "Ei",
            FnId::E1 => "E1",
            FnId::En(_) => "En",
            FnId::Ein => "Ein",
            FnId::Si => "Si",
            FnId::Ci => "Ci",
            FnId::Li => "li",
            FnId::Li1 => "li1",
            FnId::LiOffset => "Li",
            FnId::GammaUpper(_) => "GammaUpper",
            FnId::GammaLower(_) => "GammaLower",
        }
    }
}
