use std::f64::consts::{E, PI};

use super::improper::{integrate_lower_infinite, integrate_pv, integrate_upper_infinite};
use super::kronrod::integrate_adaptive;
use super::{FnId, QuadConfig, QuadResult};
use crate::error::{Error, Result};

/// Evaluates `fn_id` at `x` straight from its defining integral.
///
/// | function | integral |
/// |----------|----------|
/// | Ei | PV `∫_{−∞}^x eᵗ/t dt` |
/// | E1 | `∫_x^∞ e⁻ᵗ/t dt` |
/// | En(n) | `∫_1^∞ e^{−xu}/uⁿ du` |
/// | Ein | `∫_0^x (1−e⁻ᵗ)/t dt` |
/// | Si | `∫_0^x sin t/t dt` |
/// | Ci | `−∫_x^∞ cos t/t dt` |
/// | li | PV `∫_0^x dt/ln t` |
/// | li1 | `∫_x^∞ dt/(t² ln t)` |
/// | Li | `∫_2^x dt/ln t` |
/// | Γ(s,x) | `∫_x^∞ t^{s−1}e⁻ᵗ dt` |
/// | γ(s,x) | `∫_0^x t^{s−1}e⁻ᵗ dt` |
///
/// Returns [`Error::NonConvergence`] when the integrators cannot certify
/// the configured tolerance.
pub fn oracle_value(fn_id: FnId, x: f64, cfg: &QuadConfig) -> Result<QuadResult> {
    cfg.validate()?;
    check_domain(fn_id, x)?;
    let r = match fn_id {
        FnId::Ei => ei(x, cfg)?,
        FnId::E1 => e1(x, cfg)?,
        FnId::En(n) => {
            if x == 0.0 {
                integrate_upper_infinite(|u: f64| u.powf(-n), 1.0, cfg)?
            } else {
                // e^{−x} pulled out so tiny values keep their relative accuracy
                integrate_upper_infinite(|u: f64| (-x * (u - 1.0) - n * u.ln()).exp(), 1.0, cfg)?
                    .scaled((-x).exp())
            }
        }
        FnId::Ein => {
            let f = |t: f64| if t == 0.0 { 1.0 } else { -(-t).exp_m1() / t };
            signed_from_zero(f, x, cfg)?
        }
        FnId::Si => {
            let f = |t: f64| if t == 0.0 { 1.0 } else { t.sin() / t };
            signed_from_zero(f, x, cfg)?
        }
        FnId::Ci => {
            let c = cfg.with_period(2.0 * PI);
            integrate_upper_infinite(|t: f64| t.cos() / t, x, &c)?.scaled(-1.0)
        }
        FnId::Li => {
            let f = |t: f64| 1.0 / t.ln();
            if x < 1.0 {
                integrate_adaptive(f, 0.0, x, cfg)?
            } else {
                integrate_pv(f, 0.0, x, 1.0, cfg)?
            }
        }
        FnId::Li1 => integrate_upper_infinite(|t: f64| 1.0 / (t * t * t.ln()), x, cfg)?,
        FnId::LiOffset => {
            if x == 2.0 {
                QuadResult::exact(0.0)
            } else {
                integrate_adaptive(|t: f64| 1.0 / t.ln(), 2.0, x, cfg)?
            }
        }
        FnId::GammaUpper(s) => integrate_upper_infinite(gamma_kernel(s), x, cfg)?,
        FnId::GammaLower(s) => {
            if x == 0.0 {
                QuadResult::exact(0.0)
            } else {
                integrate_adaptive(gamma_kernel(s), 0.0, x, cfg)?
            }
        }
    };
    if !r.converged || !r.value.is_finite() {
        return Err(Error::NonConvergence {
            what: fn_id.name(),
            iterations: r.subdivisions,
            value: r.value,
            error: r.abs_err_estimate,
        });
    }
    Ok(r)
}

fn check_domain(fn_id: FnId, x: f64) -> Result<()> {
    let name = fn_id.name();
    if !x.is_finite() {
        return Err(Error::domain(name, "argument must be finite", x));
    }
    let violated = match fn_id {
        FnId::Ei => (x == 0.0).then_some("x != 0 (Ei(0) = -inf)"),
        FnId::E1 => (x <= 0.0).then_some("x > 0"),
        FnId::Li1 => (x <= 1.0).then_some("x > 1"),
        FnId::Li => {
            if x <= 0.0 {
                Some("x > 0")
            } else if x == 1.0 {
                Some("x != 1 (singularity at x = 1)")
            } else {
                None
            }
        }
        FnId::LiOffset => (x < 2.0).then_some("x >= 2"),
        FnId::Si | FnId::Ein => None,
        FnId::Ci => (x <= 0.0).then_some("x > 0"),
        FnId::En(n) => {
            if x < 0.0 {
                Some("x >= 0")
            } else if x == 0.0 && !(n > 1.0) {
                Some("x = 0 requires n > 1")
            } else {
                None
            }
        }
        FnId::GammaUpper(s) => {
            if x < 0.0 {
                Some("x >= 0")
            } else if x == 0.0 && !(s > 0.0) {
                Some("x = 0 requires s > 0")
            } else {
                None
            }
        }
        FnId::GammaLower(s) => {
            if !(s > 0.0) {
                Some("s > 0")
            } else if x < 0.0 {
                Some("x >= 0")
            } else {
                None
            }
        }
    };
    match violated {
        Some(constraint) => Err(Error::domain(name, constraint, x)),
        None => Ok(()),
    }
}

fn gamma_kernel(s: f64) -> impl Fn(f64) -> f64 {
    move |t: f64| {
        if t == 0.0 {
            if s == 1.0 {
                1.0
            } else {
                0.0
            }
        } else {
            ((s - 1.0) * t.ln() - t).exp()
        }
    }
}

fn signed_from_zero<F: Fn(f64) -> f64>(f: F, x: f64, cfg: &QuadConfig) -> Result<QuadResult> {
    if x == 0.0 {
        Ok(QuadResult::exact(0.0))
    } else if x > 0.0 {
        integrate_adaptive(f, 0.0, x, cfg)
    } else {
        Ok(integrate_adaptive(f, x, 0.0, cfg)?.scaled(-1.0))
    }
}

/// `∫_x^∞ e⁻ᵗ/t dt` as `e⁻ˣ∫_x^∞ e^{x−t}/t dt`, so the absolute tolerance
/// floor does not swamp values far below it.
fn e1(x: f64, cfg: &QuadConfig) -> Result<QuadResult> {
    Ok(integrate_upper_infinite(|t: f64| (x - t).exp() / t, x, cfg)?.scaled((-x).exp()))
}

fn ei(x: f64, cfg: &QuadConfig) -> Result<QuadResult> {
    if x < 0.0 {
        return Ok(integrate_lower_infinite(|t: f64| (t - x).exp() / t, x, cfg)?.scaled(x.exp()));
    }
    // (-inf, -h] is regular; PV through the pole on [-h, x]
    let h = x.min(1.0);
    let tail = integrate_lower_infinite(|t: f64| t.exp() / t, -h, cfg)?;
    let core = integrate_pv(|t: f64| t.exp() / t, -h, x, 0.0, cfg)?;
    Ok(QuadResult::combine(&[tail, core], cfg))
}

/// Quadrature values of the two integral forms of γ and of the incomplete
/// gamma splitting residual.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GammaChecks {
    /// `−∫_0^∞ e⁻ᵗ ln t dt`
    pub log_moment: f64,
    /// `∫_0^1 (1 − e⁻ᵗ − e^{−1/t})/t dt`
    pub split_reciprocal: f64,
    /// `Γ(2,0) − γ(2,1) − Γ(2,1)`
    pub gamma_split_residual: f64,
}

pub fn gamma_integral_checks(cfg: &QuadConfig) -> Result<GammaChecks> {
    cfg.validate()?;
    let log_weight = |t: f64| (-t).exp() * t.ln();
    let head = integrate_adaptive(log_weight, 0.0, 1.0, cfg)?;
    let tail = integrate_upper_infinite(log_weight, 1.0, cfg)?;
    let a = QuadResult::combine(&[head, tail], cfg);
    ensure_converged("integral of e^-t ln t", &a)?;

    let b = integrate_adaptive(
        |t: f64| (-(-t).exp_m1() - (-1.0 / t).exp()) / t,
        0.0,
        1.0,
        cfg,
    )?;
    ensure_converged("integral of (1 - e^-t - e^-1/t)/t", &b)?;

    Ok(GammaChecks {
        log_moment: -a.value,
        split_reciprocal: b.value,
        gamma_split_residual: gamma_split_residual(2.0, 1.0, cfg)?,
    })
}

/// `Γ(s,0) − γ(s,z) − Γ(s,z)`, each term integrated separately.
pub fn gamma_split_residual(s: f64, z: f64, cfg: &QuadConfig) -> Result<f64> {
    let complete = oracle_value(FnId::GammaUpper(s), 0.0, cfg)?;
    let lower = oracle_value(FnId::GammaLower(s), z, cfg)?;
    let upper = oracle_value(FnId::GammaUpper(s), z, cfg)?;
    Ok(complete.value - lower.value - upper.value)
}

fn ensure_converged(what: &'static str, r: &QuadResult) -> Result<()> {
    if r.converged {
        Ok(())
    } else {
        Err(Error::NonConvergence {
            what,
            iterations: r.subdivisions,
            value: r.value,
            error: r.abs_err_estimate,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exercise {
    /// `[Ei(−z)]² = 2e^{−2z} ∫_0^∞ e^{−2zt} ln(1+2t)/(1+t) dt`, z > 0.
    Ex1,
    /// `∫_{−∞}^x eᵗ/(t²(t−1)) dt = eˣ/x − 2Ei(x) + e·Ei(x−1)`, x < 0.
    Ex3,
}

/// Both sides of an exercise identity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExerciseCheck {
    pub lhs: f64,
    pub rhs: f64,
}

impl ExerciseCheck {
    pub fn residual(&self) -> f64 {
        (self.lhs - self.rhs).abs()
    }
}

pub fn exercise_check(id: Exercise, arg: f64, cfg: &QuadConfig) -> Result<ExerciseCheck> {
    cfg.validate()?;
    match id {
        Exercise::Ex1 => {
            if !(arg > 0.0 && arg.is_finite()) {
                return Err(Error::domain("exercise 1", "z > 0", arg));
            }
            let ei = oracle_value(FnId::Ei, -arg, cfg)?.value;
            let integral = integrate_upper_infinite(
                |t: f64| (-2.0 * arg * t).exp() * (2.0 * t).ln_1p() / (1.0 + t),
                0.0,
                cfg,
            )?;
            ensure_converged("exercise 1 integral", &integral)?;
            Ok(ExerciseCheck {
                lhs: ei * ei,
                rhs: 2.0 * (-2.0 * arg).exp() * integral.value,
            })
        }
        Exercise::Ex3 => {
            if !(arg < 0.0 && arg.is_finite()) {
                return Err(Error::domain("exercise 3", "x < 0", arg));
            }
            let integral =
                integrate_lower_infinite(|t: f64| t.exp() / (t * t * (t - 1.0)), arg, cfg)?;
            ensure_converged("exercise 3 integral", &integral)?;
            let ei_x = oracle_value(FnId::Ei, arg, cfg)?.value;
            let ei_shift = oracle_value(FnId::Ei, arg - 1.0, cfg)?.value;
            Ok(ExerciseCheck {
                lhs: integral.value,
                rhs: arg.exp() / arg - 2.0 * ei_x + E * ei_shift,
            })
        }
    }
}
