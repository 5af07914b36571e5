//! Named verification suites: each check reports a measured quantity, the
//! tolerance it is held to, and whether it passed.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;
use std::str::FromStr;

use crate::asymptotic::{e1_asym, log_asym, optimal_n, LogIntegral};
use crate::constants::{EULER_GAMMA, SOLDNER};
use crate::error::Result;
use crate::evaluator::{
    crossings, dipole_power, exercise2_limit, imag_axis, soldner_root, Evaluator, ExpFn, ImagFn,
    LogFn, TrigFn,
};
use crate::exec::Exec;
use crate::primes::{pi_of, schoenfeld_row, schoenfeld_violations, sieve};
use crate::quadrature::{
    exercise_check, gamma_integral_checks, integrate_adaptive, integrate_upper_infinite,
    oracle_value, Exercise, FnId, QuadConfig,
};
use crate::series::{harmonic_gamma, li_ramanujan, TruncationPolicy};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Appendices,
    Identities,
    Asymptotics,
    Exercises,
    Primes,
    All,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::Appendices,
        Suite::Identities,
        Suite::Asymptotics,
        Suite::Exercises,
        Suite::Primes,
        Suite::All,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            Suite::Appendices => "appendices",
            Suite::Identities => "identities",
            Suite::Asymptotics => "asymptotics",
            Suite::Exercises => "exercises",
            Suite::Primes => "primes",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.as_str() == s)
            .ok_or_else(|| format!("unknown suite `{s}`"))
    }
}

/// How the measured value is compared against the tolerance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bound {
    /// Passes when `measured ≤ tolerance`.
    AtMost,
    /// Passes when `measured > tolerance`.
    Above,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub measured: f64,
    pub tolerance: f64,
    pub bound: Bound,
    pub passed: bool,
    /// Extra context, e.g. the reason a computation failed.
    pub note: Option<String>,
}

impl Check {
    fn new(name: impl Into<String>, measured: f64, tolerance: f64, bound: Bound) -> Self {
        let passed = match bound {
            Bound::AtMost => measured <= tolerance,
            Bound::Above => measured > tolerance,
        };
        Self {
            name: name.into(),
            measured,
            tolerance,
            bound,
            passed,
            note: None,
        }
    }

    fn at_most(name: impl Into<String>, measured: f64, tolerance: f64) -> Self {
        Self::new(name, measured, tolerance, Bound::AtMost)
    }

    fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    /// A check whose computation failed outright.
    fn failed(name: impl Into<String>, err: impl fmt::Display) -> Self {
        Self {
            name: name.into(),
            measured: f64::NAN,
            tolerance: f64::NAN,
            bound: Bound::AtMost,
            passed: false,
            note: Some(err.to_string()),
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let op = match self.bound {
            Bound::AtMost => "<=",
            Bound::Above => ">",
        };
        write!(
            f,
            "{} {:<44} measured={:.3e} {op} {:.3e}",
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.measured,
            self.tolerance
        )?;
        if let Some(note) = &self.note {
            write!(f, "  ({note})")?;
        }
        Ok(())
    }
}

/// Runs `suite`; computations that fail become failing checks.
pub fn run(suite: Suite, exec: Exec) -> Vec<Check> {
    match suite {
        Suite::Appendices => appendices(),
        Suite::Identities => identities(),
        Suite::Asymptotics => asymptotics(),
        Suite::Exercises => exercises(),
        Suite::Primes => primes(exec),
        Suite::All => [
            appendices(),
            identities(),
            asymptotics(),
            exercises(),
            primes(exec),
        ]
        .concat(),
    }
}

fn attempt(name: &str, f: impl FnOnce() -> Result<Check>) -> Check {
    f().unwrap_or_else(|e| Check::failed(name, e))
}

fn oracle_cfg() -> QuadConfig {
    QuadConfig::with_rel_tol(1e-12)
}

fn appendices() -> Vec<Check> {
    let mut checks = Vec::new();
    match gamma_integral_checks(&oracle_cfg()) {
        Ok(g) => {
            checks.push(Check::at_most(
                "gamma: -integral e^-t ln t",
                (g.log_moment - EULER_GAMMA).abs(),
                1e-8,
            ));
            checks.push(Check::at_most(
                "gamma: integral (1-e^-t-e^-1/t)/t",
                (g.split_reciprocal - EULER_GAMMA).abs(),
                1e-8,
            ));
            checks.push(Check::at_most(
                "incomplete gamma split residual",
                g.gamma_split_residual.abs(),
                1e-10,
            ));
        }
        Err(e) => checks.push(Check::failed("gamma integrals", e)),
    }
    for (k, expected) in [
        (3, 0.734721),
        (11, 0.621982),
        (47, 0.587816),
        (859, 0.577798),
    ] {
        let g = harmonic_gamma(k);
        checks.push(Check::at_most(
            format!("harmonic G({k}) = {expected}"),
            ((g * 1e6).round() / 1e6 - expected).abs(),
            1e-12,
        ));
    }
    checks
}

fn identities() -> Vec<Check> {
    let ev = Evaluator::default();
    let cfg = oracle_cfg();
    let mut checks = Vec::new();

    checks.push(attempt("reflection E1(x) = -Ei(-x)", || {
        let mut worst = 0.0f64;
        for x in [0.01, 0.5, 2.0, 6.0, 10.0, 40.0, 80.0] {
            let e1 = ev.eval_exp(ExpFn::E1, x)?.value;
            let ei = ev.eval_exp(ExpFn::Ei, -x)?.value;
            worst = worst.max((e1 + ei).abs() / e1);
        }
        Ok(Check::at_most("reflection E1(x) = -Ei(-x)", worst, 1e-9))
    }));

    checks.push(attempt("Ein = E1 + ln x + gamma", || {
        let mut worst = 0.0f64;
        for x in [0.1, 1.0, 3.0, 8.0, 20.0] {
            let ein = oracle_value(FnId::Ein, x, &cfg)?.value;
            let e1 = ev.eval_exp(ExpFn::E1, x)?.value;
            worst = worst.max((ein - (e1 + x.ln() + EULER_GAMMA)).abs());
        }
        Ok(Check::at_most("Ein = E1 + ln x + gamma", worst, 1e-9))
    }));

    checks.push(attempt("li(x) = Ei(ln x)", || {
        let mut worst = 0.0f64;
        for x in [0.5, 1.5, 2.0, 10.0, 100.0] {
            let li = oracle_value(FnId::Li, x, &cfg)?.value;
            let ei = ev.eval_exp(ExpFn::Ei, f64::ln(x))?.value;
            worst = worst.max((li - ei).abs() / li.abs().max(1.0));
        }
        Ok(Check::at_most("li(x) = Ei(ln x)", worst, 1e-9))
    }));

    checks.push(attempt("Ramanujan li = Ei(ln x)", || {
        let mut worst = 0.0f64;
        for x in [1.5, 2.0, 10.0, 100.0] {
            let r = li_ramanujan(x, &TruncationPolicy::default())?.value;
            let ei = ev.eval_exp(ExpFn::Ei, f64::ln(x))?.value;
            worst = worst.max((r - ei).abs() / ei.abs().max(1.0));
        }
        Ok(Check::at_most("Ramanujan li = Ei(ln x)", worst, 1e-9))
    }));

    for x in [1.0, 5.0] {
        checks.push(attempt("imaginary axis", || imag_axis_check(x, &cfg)));
    }

    checks.push(attempt("Dirichlet integral", || {
        let r = integrate_upper_infinite(
            |t: f64| if t == 0.0 { 1.0 } else { t.sin() / t },
            0.0,
            &cfg.with_period(2.0 * PI),
        )?;
        Ok(Check::at_most(
            "Dirichlet integral = pi/2",
            (r.value - FRAC_PI_2).abs(),
            1e-8,
        ))
    }));

    checks.push(attempt("Ei, E1, Ein crossings", || {
        let c = crossings()?;
        Ok(Check::new(
            "Ei, E1, Ein crossings pairwise apart",
            c.min_separation(),
            0.01,
            Bound::Above,
        )
        .with_note(format!(
            "Ei=E1 at {:.10}, Ei=Ein at {:.10}, E1=Ein at {:.10}",
            c.x_ei_e1, c.x_ei_ein, c.x_e1_ein
        )))
    }));

    checks.push(attempt("dipole bracket", || {
        let d = dipole_power(1.0)?;
        Ok(Check::at_most(
            "dipole gamma + ln 2pi - Ci(2pi) = 2.43766",
            (d.bracket - 2.43766).abs(),
            1e-4,
        )
        .with_note(format!("bracket {:.7}, Ci(2pi) {:.7}", d.bracket, d.ci_2pi)))
    }));

    checks
}

/// All four imaginary-axis relations at `x`, against Si, Ci, Shi and Chi
/// integrated directly.
fn imag_axis_check(x: f64, cfg: &QuadConfig) -> Result<Check> {
    let si = oracle_value(FnId::Si, x, cfg)?.value;
    let ci = oracle_value(FnId::Ci, x, cfg)?.value;
    let shi = integrate_adaptive(
        |t: f64| if t == 0.0 { 1.0 } else { t.sinh() / t },
        0.0,
        x,
        cfg,
    )?
    .value;
    let chi = EULER_GAMMA
        + x.ln()
        + integrate_adaptive(
            |t: f64| if t == 0.0 { 0.0 } else { (t.cosh() - 1.0) / t },
            0.0,
            x,
            cfg,
        )?
        .value;

    let expected = [
        (ImagFn::EiPlus, ci, si - FRAC_PI_2),
        (ImagFn::EiMinus, ci, FRAC_PI_2 - si),
        (ImagFn::E1, -ci, si - FRAC_PI_2),
        (ImagFn::Si, 0.0, shi),
        (ImagFn::Ci, chi, FRAC_PI_2),
    ];
    let mut worst = 0.0f64;
    for (f, re, im) in expected {
        let z = imag_axis(f, x)?;
        worst = worst.max((z.re - re).abs()).max((z.im - im).abs());
    }
    Ok(Check::at_most(
        format!("imaginary-axis relations at x = {x}"),
        worst,
        1e-9,
    ))
}

fn asymptotics() -> Vec<Check> {
    let ev = Evaluator::default();
    let cfg = QuadConfig::with_rel_tol(1e-13);
    let mut checks = Vec::new();

    checks.push(attempt("E1 remainder bound", || {
        let mut violations = 0;
        let mut worst_ratio = 0.0f64;
        for x in [5.0, 10.0, 20.0, 50.0] {
            let truth = oracle_value(FnId::E1, x, &cfg)?.value;
            for n in 1..=15 {
                let r = e1_asym(x, n)?;
                let ratio = (r.value - truth).abs() / r.remainder_bound;
                worst_ratio = worst_ratio.max(ratio);
                if ratio > 1.0 {
                    violations += 1;
                }
            }
        }
        Ok(
            Check::at_most("E1 remainder within n! e^-x / x^(n+1)", worst_ratio, 1.0)
                .with_note(format!("{violations} violations over 60 (x, n) pairs")),
        )
    }));

    checks.push(attempt("E1 divergence at x = 5", || {
        let truth = oracle_value(FnId::E1, 5.0, &cfg)?.value;
        let err = |n| -> Result<f64> { Ok((e1_asym(5.0, n)?.value - truth).abs()) };
        Ok(Check::new(
            "E1(5) error ratio n=20 over n=5",
            err(20)? / err(5)?,
            10.0,
            Bound::Above,
        ))
    }));

    checks.push(attempt("li asymptotic at 1e6", || {
        let x = 1e6;
        let n = optimal_n(FnId::Li, x)?;
        let r = log_asym(LogIntegral::Li, x, n)?;
        let truth = ev.eval_log(LogFn::Li, x)?.value;
        Ok(Check::at_most(
            "li(1e6) asymptotic at optimal order",
            (r.value - truth).abs(),
            0.5,
        )
        .with_note(format!("order {n}")))
    }));

    checks.push(attempt("Si(1e4)", || {
        let si = ev.eval_trig(TrigFn::Si, 1e4)?.value;
        Ok(Check::at_most(
            "Si(1e4) - pi/2",
            (si - FRAC_PI_2).abs(),
            2e-4,
        ))
    }));

    checks.push(attempt("Ci(1e4)", || {
        let ci = ev.eval_trig(TrigFn::Ci, 1e4)?.value;
        Ok(Check::at_most("|Ci(1e4)|", ci.abs(), 2e-4))
    }));

    checks
}

fn exercises() -> Vec<Check> {
    let cfg = oracle_cfg();
    let mut checks = Vec::new();
    for z in [1.0, 2.0] {
        let name = format!("exercise 1 at z = {z}");
        checks.push(attempt(&name.clone(), || {
            let c = exercise_check(Exercise::Ex1, z, &cfg)?;
            Ok(Check::at_most(name, c.residual(), 1e-7))
        }));
    }
    for x in [10.0, 100.0, 1000.0] {
        let name = format!("exercise 2 x e^x E1(x) -> 1 at x = {x}");
        checks.push(attempt(&name.clone(), || {
            let v = exercise2_limit(&[x])?[0];
            Ok(Check::at_most(name, x * (v - 1.0).abs(), 1.1)
                .with_note("measured is x |x e^x E1(x) - 1|, the 1/x approach to the limit"))
        }));
    }
    for x in [-1.0, -2.0] {
        let name = format!("exercise 3 at x = {x}");
        checks.push(attempt(&name.clone(), || {
            let c = exercise_check(Exercise::Ex3, x, &cfg)?;
            Ok(Check::at_most(name, c.residual(), 1e-7))
        }));
    }
    checks
}

fn primes(exec: Exec) -> Vec<Check> {
    const LIMIT: u64 = 100_000;
    let table = match sieve(LIMIT) {
        Ok(t) => t,
        Err(e) => return vec![Check::failed("sieve", e)],
    };
    let ev = Evaluator::default();
    let mut checks = Vec::new();

    checks.push(attempt("pi(10^4)", || {
        let p = pi_of(&table, 10_000)?;
        Ok(Check::at_most(
            "pi(10^4) = 1229",
            (p as f64 - 1229.0).abs(),
            0.0,
        ))
    }));

    checks.push(attempt("Li(10^4) and bound", || {
        let row = schoenfeld_row(&table, 10_000)?;
        Ok(
            Check::at_most("Li(10^4) = 1245.09", (row.li_x - 1245.09).abs(), 0.02).with_note(
                format!("Li = {:.4}, bound = {:.6}", row.li_x, row.schoenfeld_bound),
            ),
        )
    }));

    checks.push(attempt("Schoenfeld bound value", || {
        let row = schoenfeld_row(&table, 10_000)?;
        Ok(Check::at_most(
            "Schoenfeld bound at 10^4 = 36.6468",
            (row.schoenfeld_bound - 36.6468).abs(),
            1e-4,
        ))
    }));

    checks.push(attempt("Schoenfeld inequality", || {
        let bad = schoenfeld_violations(&table, 2658, LIMIT, exec)?;
        Ok(Check::at_most(
            "Schoenfeld inequality on [2658, 10^5]",
            bad.len() as f64,
            0.0,
        ))
    }));

    checks.push(attempt("Li above pi", || {
        let xs: Vec<u64> = (8..=LIMIT).collect();
        let below = exec.count(&xs, |&x| {
            let li = ev.eval_log(LogFn::LiOffset, x as f64).map(|r| r.value);
            let pi = pi_of(&table, x).map(|p| p as f64);
            match (li, pi) {
                (Ok(li), Ok(pi)) => li <= pi,
                _ => true,
            }
        });
        Ok(Check::at_most(
            "Li(x) > pi(x) on [8, 10^5]",
            below as f64,
            0.0,
        ))
    }));

    checks.push(attempt("Li versus x / ln x", || {
        let mut worst = 0.0f64;
        for k in 0..=60 {
            let x = 10f64.powf(3.0 + 3.0 * k as f64 / 60.0);
            let l = x.ln();
            let li = ev.eval_log(LogFn::LiOffset, x)?.value;
            worst = worst.max((li - x / l).abs() / (x / (l * l)));
        }
        Ok(Check::at_most(
            "|Li - x/ln x| / (x/ln^2 x) on [1e3, 1e6]",
            worst,
            3.0,
        ))
    }));

    checks.push(attempt("Soldner constant", || {
        let root = soldner_root()?;
        Ok(
            Check::at_most("li root = 1.4513692348", (root - 1.4513692348).abs(), 5e-10)
                .with_note(format!("root {root:.13}, reference {SOLDNER:.13}")),
        )
    }));

    checks
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.as_str().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn check_comparisons() {
        assert!(Check::at_most("a", 1.0, 1.0).passed);
        assert!(!Check::at_most("a", f64::NAN, 1.0).passed);
        assert!(!Check::new("b", 1.0, 1.0, Bound::Above).passed);
        assert!(Check::failed("c", "boom").to_string().starts_with("FAIL"));
    }

    #[test]
    fn small_suites_pass() {
        for suite in [Suite::Appendices, Suite::Exercises] {
            for c in run(suite, Exec::Sequential) {
                assert!(c.passed, "{c}");
            }
        }
    }
}
