//! User-facing evaluation with route selection.
//!
//! | function | route |
//! |----------|-------|
//! | E₁ | series on (0, 6], continued fraction on (6, 44], asymptotic beyond |
//! | Ei | positive series for x > 0, −E₁(−x) for x < 0 |
//! | Ein | series for x ≤ 6, E₁(x) + ln x + γ beyond |
//! | Eₙ | quadrature (exact 1/(n−1) at x = 0) |
//! | Si, Ci | series for \|x\| ≤ 12, oscillatory quadrature below 30, asymptotic from 30 |
//! | li, li₁, Li | Ei(ln x), E₁(ln x), li(x) − li(2) |

mod applications;
mod complex;

pub use applications::{
    crossings, dipole_power, exercise2_limit, soldner_root, Crossings, DipolePower,
};
pub use complex::{e1_branch, imag_axis, ComplexValue, ImagFn, Side};

use std::fmt;
use std::str::FromStr;

use crate::asymptotic::{self, LogIntegral, Scale};
use crate::constants::{EULER_GAMMA, LI_2};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::quadrature::{oracle_value, FnId, QuadConfig, QuadResult};
use crate::series::{self, SeriesResult, TruncationPolicy, E1_SERIES_MAX_X, TRIG_SERIES_MAX_X};

/// Upper end of the continued-fraction range for E₁.
pub const E1_CF_MAX_X: f64 = 44.0;
/// Start of the asymptotic range for Si and Ci.
pub const TRIG_ASYMPTOTIC_MIN_X: f64 = 30.0;
/// li is rejected this close to its pole.
pub const LI_POLE_GUARD: f64 = 1e-12;

const MAX_ASYMPTOTIC_ORDER: usize = 64;
const CF_MAX_ITERATIONS: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Series,
    ContinuedFraction,
    Asymptotic,
    Quadrature,
    Identity,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::Series => "series",
            Method::ContinuedFraction => "continued-fraction",
            Method::Asymptotic => "asymptotic",
            Method::Quadrature => "quadrature",
            Method::Identity => "identity",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "series" => Ok(Method::Series),
            "cf" | "continued-fraction" | "continued_fraction" => Ok(Method::ContinuedFraction),
            "asymptotic" | "asym" => Ok(Method::Asymptotic),
            "quadrature" | "quad" => Ok(Method::Quadrature),
            "identity" => Ok(Method::Identity),
            other => Err(format!("unknown method '{other}'")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalResult {
    pub value: f64,
    pub abs_err_estimate: f64,
    pub method: Method,
    pub terms_or_subdivisions: usize,
}

impl EvalResult {
    fn from_series(r: SeriesResult) -> Self {
        Self {
            value: r.value,
            abs_err_estimate: r.error_estimate(),
            method: Method::Series,
            terms_or_subdivisions: r.terms_used,
        }
    }

    fn from_quad(r: QuadResult) -> Self {
        Self {
            value: r.value,
            abs_err_estimate: r.abs_err_estimate,
            method: Method::Quadrature,
            terms_or_subdivisions: r.subdivisions,
        }
    }

    fn from_asym(r: asymptotic::AsymptoticResult, terms: usize) -> Self {
        Self {
            value: r.value,
            abs_err_estimate: r.remainder_bound + 4.0 * f64::EPSILON * r.value.abs(),
            method: Method::Asymptotic,
            terms_or_subdivisions: terms,
        }
    }

    fn negated(self) -> Self {
        Self {
            value: -self.value,
            ..self
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExpFn {
    Ei,
    E1,
    Ein,
    En(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TrigFn {
    Si,
    Ci,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LogFn {
    Li,
    Li1,
    LiOffset,
}

/// Every function the evaluator exposes, with the names the CLI accepts.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Function {
    Exp(ExpFn),
    Trig(TrigFn),
    Log(LogFn),
}

impl Function {
    pub fn oracle_id(&self) -> FnId {
        match *self {
            Function::Exp(ExpFn::Ei) => FnId::Ei,
            Function::Exp(ExpFn::E1) => FnId::E1,
            Function::Exp(ExpFn::Ein) => FnId::Ein,
            Function::Exp(ExpFn::En(n)) => FnId::En(n),
            Function::Trig(TrigFn::Si) => FnId::Si,
            Function::Trig(TrigFn::Ci) => FnId::Ci,
            Function::Log(LogFn::Li) => FnId::Li,
            Function::Log(LogFn::Li1) => FnId::Li1,
            Function::Log(LogFn::LiOffset) => FnId::LiOffset,
        }
    }

    /// Points where the function has a pole inside its real domain.
    pub fn poles(&self) -> &'static [f64] {
        match self {
            Function::Exp(ExpFn::Ei) => &[0.0],
            Function::Log(LogFn::Li) => &[1.0],
            _ => &[],
        }
    }
}

impl fmt::Display for Function {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Function::Exp(ExpFn::En(n)) => write!(f, "En:{n}"),
            other => f.write_str(other.oracle_id().name()),
        }
    }
}

impl FromStr for Function {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        if let Some(order) = s.strip_prefix("En:") {
            let n: f64 = order
                .parse()
                .map_err(|_| format!("invalid order in '{s}'"))?;
            if !n.is_finite() {
                return Err(format!("invalid order in '{s}'"));
            }
            return Ok(Function::Exp(ExpFn::En(n)));
        }
        Ok(match s {
            "Ei" => Function::Exp(ExpFn::Ei),
            "E1" => Function::Exp(ExpFn::E1),
            "Ein" => Function::Exp(ExpFn::Ein),
            "Si" => Function::Trig(TrigFn::Si),
            "Ci" => Function::Trig(TrigFn::Ci),
            "li" => Function::Log(LogFn::Li),
            "li1" => Function::Log(LogFn::Li1),
            "Li" => Function::Log(LogFn::LiOffset),
            other => {
                return Err(format!(
                    "unknown function '{other}' (expected Ei, E1, En:<n>, Ein, Si, Ci, li, li1, Li)"
                ))
            }
        })
    }
}

/// Route dispatcher with its accuracy knobs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Evaluator {
    /// Target relative accuracy for series and continued fractions.
    pub rel_tol: f64,
    /// Configuration for the quadrature routes.
    pub quad: QuadConfig,
}

impl Default for Evaluator {
    fn default() -> Self {
        Self {
            rel_tol: 1e-17,
            quad: QuadConfig::with_rel_tol(1e-12),
        }
    }
}

impl Evaluator {
    pub fn with_rel_tol(rel_tol: f64) -> Self {
        Self {
            rel_tol,
            quad: QuadConfig {
                rel_tol: rel_tol.max(1e-13),
                ..QuadConfig::default()
            },
        }
    }

    fn policy(&self, max_terms: usize) -> TruncationPolicy {
        TruncationPolicy::to_tolerance(self.rel_tol).with_max_terms(max_terms)
    }

    pub fn eval(&self, f: Function, x: f64) -> Result<EvalResult> {
        match f {
            Function::Exp(e) => self.eval_exp(e, x),
            Function::Trig(t) => self.eval_trig(t, x),
            Function::Log(l) => self.eval_log(l, x),
        }
    }

    /// Evaluates over a batch of arguments, one result per input, in order.
    pub fn eval_many(&self, f: Function, xs: &[f64], exec: Exec) -> Vec<Result<EvalResult>> {
        exec.map(xs, |&x| self.eval(f, x))
    }

    pub fn eval_exp(&self, f: ExpFn, x: f64) -> Result<EvalResult> {
        if !x.is_finite() {
            return Err(Error::domain(
                FnId::from(f).name(),
                "argument must be finite",
                x,
            ));
        }
        match f {
            ExpFn::Ei => {
                if x == 0.0 {
                    Err(Error::domain("Ei", "x != 0 (Ei(0) = -inf)", x))
                } else if x > 0.0 {
                    let r = series::ei_series(x, &self.policy(ei_term_budget(x)))?;
                    if !r.value.is_finite() {
                        return Err(Error::Overflow { what: "Ei", x });
                    }
                    Ok(EvalResult::from_series(r))
                } else {
                    Ok(self.e1(-x)?.negated())
                }
            }
            ExpFn::E1 => {
                if !(x > 0.0) {
                    return Err(Error::domain("E1", "x > 0", x));
                }
                self.e1(x)
            }
            ExpFn::Ein => {
                if x <= E1_SERIES_MAX_X {
                    let r = series::ein_series(x, &self.policy(ei_term_budget(x)))?;
                    Ok(EvalResult::from_series(r))
                } else {
                    let e1 = self.e1(x)?;
                    let log = x.ln();
                    let value = e1.value + log + EULER_GAMMA;
                    Ok(EvalResult {
                        value,
                        abs_err_estimate: e1.abs_err_estimate + 2.0 * f64::EPSILON * value.abs(),
                        method: Method::Identity,
                        terms_or_subdivisions: e1.terms_or_subdivisions,
                    })
                }
            }
            ExpFn::En(n) => {
                if x == 0.0 && n > 1.0 {
                    return Ok(EvalResult {
                        value: 1.0 / (n - 1.0),
                        abs_err_estimate: 0.0,
                        method: Method::Identity,
                        terms_or_subdivisions: 0,
                    });
                }
                Ok(EvalResult::from_quad(oracle_value(
                    FnId::En(n),
                    x,
                    &self.quad,
                )?))
            }
        }
    }

    fn e1(&self, x: f64) -> Result<EvalResult> {
        if x <= E1_SERIES_MAX_X {
            Ok(EvalResult::from_series(series::e1_series(
                x,
                &self.policy(500),
            )?))
        } else if x <= E1_CF_MAX_X {
            cf_e1(x, self.rel_tol)
        } else {
            let n = asymptotic::optimal_n(FnId::E1, x)?.min(MAX_ASYMPTOTIC_ORDER);
            let r = asymptotic::e1_asym(x, n)?;
            if r.value != 0.0 && !r.is_reliable(1e-13) {
                return cf_e1(x, self.rel_tol);
            }
            Ok(EvalResult::from_asym(r, n))
        }
    }

    pub fn eval_trig(&self, f: TrigFn, x: f64) -> Result<EvalResult> {
        if !x.is_finite() {
            return Err(Error::domain(
                FnId::from(f).name(),
                "argument must be finite",
                x,
            ));
        }
        match f {
            TrigFn::Si => {
                if x < 0.0 {
                    return Ok(self.eval_trig(TrigFn::Si, -x)?.negated());
                }
                if x == 0.0 {
                    return Ok(EvalResult {
                        value: 0.0,
                        abs_err_estimate: 0.0,
                        method: Method::Series,
                        terms_or_subdivisions: 0,
                    });
                }
            }
            TrigFn::Ci => {
                if !(x > 0.0) {
                    return Err(Error::domain("Ci", "x > 0", x));
                }
            }
        }
        let id = FnId::from(f);
        if x <= TRIG_SERIES_MAX_X {
            let p = self.policy(500);
            let r = match f {
                TrigFn::Si => series::si_series(x, &p)?,
                TrigFn::Ci => series::ci_series(x, &p)?,
            };
            return Ok(EvalResult::from_series(r));
        }
        if x >= TRIG_ASYMPTOTIC_MIN_X {
            let n = asymptotic::optimal_n(id, x)?.min(MAX_ASYMPTOTIC_ORDER);
            let r = match f {
                TrigFn::Si => asymptotic::si_asym(x, n)?,
                TrigFn::Ci => asymptotic::ci_asym(x, n)?,
            };
            if r.remainder_bound <= 1e-10 * r.value.abs().max(1.0 / x) {
                return Ok(EvalResult::from_asym(r, n));
            }
        }
        Ok(EvalResult::from_quad(oracle_value(id, x, &self.quad)?))
    }

    pub fn eval_log(&self, f: LogFn, x: f64) -> Result<EvalResult> {
        if !x.is_finite() {
            return Err(Error::domain(
                FnId::from(f).name(),
                "argument must be finite",
                x,
            ));
        }
        match f {
            LogFn::Li => {
                if !(x > 0.0) {
                    return Err(Error::domain("li", "x > 0", x));
                }
                if (x - 1.0).abs() < LI_POLE_GUARD {
                    return Err(Error::domain("li", "x != 1 (singularity at x = 1)", x));
                }
                let r = self.eval_exp(ExpFn::Ei, x.ln())?;
                // rounding of ln x propagates through dEi/dy = x/ln x
                let log_rounding = f64::EPSILON * x;
                Ok(EvalResult {
                    abs_err_estimate: r.abs_err_estimate + log_rounding,
                    ..r
                })
            }
            LogFn::Li1 => {
                if !(x > 1.0) {
                    return Err(Error::domain("li1", "x > 1", x));
                }
                let r = self.e1(x.ln())?;
                Ok(r)
            }
            LogFn::LiOffset => {
                if !(x >= 2.0) {
                    return Err(Error::domain("Li", "x >= 2", x));
                }
                if x == 2.0 {
                    return Ok(EvalResult {
                        value: 0.0,
                        abs_err_estimate: 0.0,
                        method: Method::Identity,
                        terms_or_subdivisions: 0,
                    });
                }
                let li = self.eval_log(LogFn::Li, x)?;
                Ok(EvalResult {
                    value: li.value - LI_2,
                    abs_err_estimate: li.abs_err_estimate + f64::EPSILON * LI_2,
                    ..li
                })
            }
        }
    }

    /// Evaluates `f` by a caller-chosen route instead of the dispatcher's.
    pub fn eval_with(&self, f: Function, x: f64, method: Method) -> Result<EvalResult> {
        let unsupported = || {
            Error::domain(
                f.oracle_id().name(),
                "method not available for this function",
                x,
            )
        };
        match method {
            Method::Quadrature => Ok(EvalResult::from_quad(oracle_value(
                f.oracle_id(),
                x,
                &self.quad,
            )?)),
            Method::Identity => Err(unsupported()),
            Method::Series => {
                let p = self.policy(ei_term_budget(x.abs()));
                let r = match f {
                    Function::Exp(ExpFn::Ei) => series::ei_series(x, &p)?,
                    Function::Exp(ExpFn::E1) => series::e1_series(x, &p)?,
                    Function::Exp(ExpFn::Ein) => series::ein_series(x, &p)?,
                    Function::Trig(TrigFn::Si) => series::si_series(x, &p)?,
                    Function::Trig(TrigFn::Ci) => series::ci_series(x, &p)?,
                    Function::Log(LogFn::Li) if x > 1.0 => series::li_ramanujan(x, &p)?,
                    Function::Log(LogFn::LiOffset) if x >= 2.0 => {
                        let mut r = series::li_ramanujan(x, &p)?;
                        r.value -= LI_2;
                        r
                    }
                    _ => return Err(unsupported()),
                };
                Ok(EvalResult::from_series(r))
            }
            Method::ContinuedFraction => match f {
                Function::Exp(ExpFn::E1) if x > 0.0 => cf_e1(x, self.rel_tol),
                Function::Exp(ExpFn::Ei) if x < 0.0 => Ok(cf_e1(-x, self.rel_tol)?.negated()),
                Function::Log(LogFn::Li1) if x > 1.0 => cf_e1(x.ln(), self.rel_tol),
                Function::Log(LogFn::Li) if x > 0.0 && x < 1.0 => {
                    Ok(cf_e1(-x.ln(), self.rel_tol)?.negated())
                }
                _ => Err(unsupported()),
            },
            Method::Asymptotic => {
                let id = f.oracle_id();
                let order = |y: f64, which: FnId| -> Result<usize> {
                    Ok(asymptotic::optimal_n(which, y)?.min(MAX_ASYMPTOTIC_ORDER))
                };
                let (r, n) = match f {
                    Function::Exp(ExpFn::E1) => {
                        let n = order(x, FnId::E1)?.max(1);
                        (asymptotic::e1_asym(x, n)?, n)
                    }
                    Function::Exp(ExpFn::Ei) => {
                        let n = order(x, FnId::Ei)?;
                        (asymptotic::ei_asym(x, n, Scale::Linear)?, n)
                    }
                    Function::Trig(TrigFn::Si) => {
                        let n = order(x, id)?;
                        (asymptotic::si_asym(x, n)?, n)
                    }
                    Function::Trig(TrigFn::Ci) => {
                        let n = order(x, id)?;
                        (asymptotic::ci_asym(x, n)?, n)
                    }
                    Function::Log(LogFn::Li) => {
                        let n = order(x, id)?;
                        (asymptotic::log_asym(LogIntegral::Li, x, n)?, n)
                    }
                    Function::Log(LogFn::Li1) => {
                        let n = order(x, id)?;
                        (asymptotic::log_asym(LogIntegral::Li1, x, n)?, n)
                    }
                    Function::Log(LogFn::LiOffset) => {
                        let n = order(x, id)?;
                        let mut r = asymptotic::log_asym(LogIntegral::Li, x, n)?;
                        r.value -= LI_2;
                        (r, n)
                    }
                    _ => return Err(unsupported()),
                };
                Ok(EvalResult::from_asym(r, n))
            }
        }
    }
}

fn ei_term_budget(x: f64) -> usize {
    500usize.max((3.0 * x.abs()) as usize + 100)
}

impl From<ExpFn> for FnId {
    fn from(f: ExpFn) -> Self {
        Function::Exp(f).oracle_id()
    }
}

impl From<TrigFn> for FnId {
    fn from(f: TrigFn) -> Self {
        Function::Trig(f).oracle_id()
    }
}

impl From<LogFn> for FnId {
    fn from(f: LogFn) -> Self {
        Function::Log(f).oracle_id()
    }
}

/// E₁(x) from the continued fraction of Γ(0, x), evaluated by the modified
/// Lentz method.
///
/// `E₁(x) = e⁻ˣ · 1/(x+1− 1²/(x+3− 2²/(x+5− …)))`; tiny pivots are replaced
/// by a floor so no step divides by zero.
pub fn cf_e1(x: f64, rel_tol: f64) -> Result<EvalResult> {
    let (h, err, iterations) = cf_e1_scaled(x, rel_tol)?;
    let decay = (-x).exp();
    Ok(EvalResult {
        value: h * decay,
        abs_err_estimate: err * decay,
        method: Method::ContinuedFraction,
        terms_or_subdivisions: iterations,
    })
}

/// `eˣE₁(x)` by the continued fraction, with its error estimate and the
/// number of iterations.
pub(crate) fn cf_e1_scaled(x: f64, rel_tol: f64) -> Result<(f64, f64, usize)> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::domain("E1", "x > 0", x));
    }
    const TINY: f64 = 1e-300;
    let eps = rel_tol.max(f64::EPSILON);
    let mut b = x + 1.0;
    let mut c = 1.0 / TINY;
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..=CF_MAX_ITERATIONS {
        let an = -((i * i) as f64);
        b += 2.0;
        d = an * d + b;
        if d.abs() < TINY {
            d = TINY;
        }
        c = b + an / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        let delta = c * d;
        h *= delta;
        if (delta - 1.0).abs() <= eps {
            // rounding grows with the depth of the recurrence
            let err = ((delta - 1.0).abs() + (8.0 + i as f64) * f64::EPSILON) * h.abs();
            return Ok((h, err, i));
        }
    }
    Err(Error::NonConvergence {
        what: "E1 continued fraction",
        iterations: CF_MAX_ITERATIONS,
        value: h * (-x).exp(),
        error: f64::NAN,
    })
}

/// [`Evaluator::eval_exp`] with default settings.
pub fn eval_exp(f: ExpFn, x: f64) -> Result<EvalResult> {
    Evaluator::default().eval_exp(f, x)
}

/// [`Evaluator::eval_trig`] with default settings.
pub fn eval_trig(f: TrigFn, x: f64) -> Result<EvalResult> {
    Evaluator::default().eval_trig(f, x)
}

/// [`Evaluator::eval_log`] with default settings.
pub fn eval_log(f: LogFn, x: f64) -> Result<EvalResult> {
    Evaluator::default().eval_log(f, x)
}

#[cfg(test)]
mod tests;
