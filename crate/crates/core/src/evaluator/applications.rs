use std::f64::consts::PI;

use super::{cf_e1_scaled, Evaluator, ExpFn, LogFn, TrigFn};
use crate::asymptotic::{e1_asym_scaled, optimal_n};
use crate::constants::EULER_GAMMA;
use crate::error::{Error, Result};
use crate::quadrature::FnId;
use crate::series::{e1_series, TruncationPolicy};

/// Abscissas where each pair among Ei, E₁ and Ein cross on (0, 2).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Crossings {
    pub x_ei_e1: f64,
    pub x_ei_ein: f64,
    pub x_e1_ein: f64,
}

impl Crossings {
    /// Smallest distance between the three crossings; positive means no
    /// point is common to all three curves.
    pub fn min_separation(&self) -> f64 {
        let d1 = (self.x_ei_e1 - self.x_ei_ein).abs();
        let d2 = (self.x_ei_e1 - self.x_e1_ein).abs();
        let d3 = (self.x_ei_ein - self.x_e1_ein).abs();
        d1.min(d2).min(d3)
    }
}

const ROOT_TOL: f64 = 1e-12;

fn bisect<F: Fn(f64) -> Result<f64>>(what: &'static str, f: F, a: f64, b: f64) -> Result<f64> {
    let (mut lo, mut hi) = (a, b);
    let mut f_lo = f(lo)?;
    let f_hi = f(hi)?;
    if f_lo == 0.0 {
        return Ok(lo);
    }
    if f_hi == 0.0 {
        return Ok(hi);
    }
    if f_lo.signum() == f_hi.signum() {
        return Err(Error::RootNotBracketed { what, a, b });
    }
    while hi - lo > ROOT_TOL {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = f(mid)?;
        if fm == 0.0 {
            return Ok(mid);
        }
        if fm.signum() == f_lo.signum() {
            lo = mid;
            f_lo = fm;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Scans `(a, b)` on a uniform grid for the first sign change, then bisects.
fn first_root<F: Fn(f64) -> Result<f64>>(what: &'static str, f: F, a: f64, b: f64) -> Result<f64> {
    const STEPS: usize = 200;
    let h = (b - a) / STEPS as f64;
    let mut x0 = a + h;
    let mut f0 = f(x0)?;
    for i in 2..STEPS {
        let x1 = a + h * i as f64;
        let f1 = f(x1)?;
        if f0.signum() != f1.signum() || f1 == 0.0 {
            return bisect(what, &f, x0, x1);
        }
        x0 = x1;
        f0 = f1;
    }
    Err(Error::RootNotBracketed { what, a, b })
}

/// Locates the three pairwise crossings of Ei, E₁ and Ein on (0, 2).
pub fn crossings() -> Result<Crossings> {
    let ev = Evaluator::default();
    let ei = |x: f64| ev.eval_exp(ExpFn::Ei, x).map(|r| r.value);
    let e1 = |x: f64| ev.eval_exp(ExpFn::E1, x).map(|r| r.value);
    let ein = |x: f64| ev.eval_exp(ExpFn::Ein, x).map(|r| r.value);
    Ok(Crossings {
        x_ei_e1: first_root("Ei - E1", |x| Ok(ei(x)? - e1(x)?), 0.0, 2.0)?,
        x_ei_ein: first_root("Ei - Ein", |x| Ok(ei(x)? - ein(x)?), 0.0, 2.0)?,
        x_e1_ein: first_root("E1 - Ein", |x| Ok(e1(x)? - ein(x)?), 0.0, 2.0)?,
    })
}

/// Positive zero of li, by bisection on (1.2, 2).
pub fn soldner_root() -> Result<f64> {
    let ev = Evaluator::default();
    bisect(
        "li",
        |x| ev.eval_log(LogFn::Li, x).map(|r| r.value),
        1.2,
        2.0,
    )
}

/// Radiated power of the half-wave linear oscillator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DipolePower {
    /// `γ + ln 2π − Ci(2π)`
    pub bracket: f64,
    /// `(I₀²/2)·bracket`, in units of 1/c.
    pub power: f64,
    pub ci_2pi: f64,
}

pub fn dipole_power(i0: f64) -> Result<DipolePower> {
    if !(i0 >= 0.0) || !i0.is_finite() {
        return Err(Error::domain("dipole", "current amplitude >= 0", i0));
    }
    let ci = Evaluator::default().eval_trig(TrigFn::Ci, 2.0 * PI)?.value;
    let bracket = EULER_GAMMA + (2.0 * PI).ln() - ci;
    Ok(DipolePower {
        bracket,
        power: 0.5 * i0 * i0 * bracket,
        ci_2pi: ci,
    })
}

/// `x·eˣ·E₁(x)` for each x, which tends to 1 as x grows.
///
/// Uses the eˣ-scaled continued fraction and asymptotic sums so nothing
/// overflows at large x.
pub fn exercise2_limit(xs: &[f64]) -> Result<Vec<f64>> {
    xs.iter()
        .map(|&x| {
            if !(x > 0.0) || !x.is_finite() {
                return Err(Error::domain("x e^x E1(x)", "x > 0", x));
            }
            let scaled = if x <= 1.0 {
                e1_series(x, &TruncationPolicy::default())?.value * x.exp()
            } else if x <= super::E1_CF_MAX_X {
                cf_e1_scaled(x, f64::EPSILON)?.0
            } else {
                let n = optimal_n(FnId::E1, x)?.min(64);
                e1_asym_scaled(x, n)?.value
            };
            Ok(x * scaled)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn crossing_roots_are_distinct_and_inside() {
        let c = crossings().unwrap();
        for x in [c.x_ei_e1, c.x_ei_ein, c.x_e1_ein] {
            assert!(x > 0.3 && x < 1.0, "{c:?}");
        }
        assert!(c.min_separation() > 0.01);
    }

    #[test]
    fn dipole_scaling() {
        assert_eq!(dipole_power(0.0).unwrap().power, 0.0);
        let one = dipole_power(1.0).unwrap();
        let two = dipole_power(2.0).unwrap();
        assert!((two.power - 4.0 * one.power).abs() < 1e-15);
        assert!(dipole_power(-1.0).is_err());
    }

    #[test]
    fn exercise2_values() {
        let v = exercise2_limit(&[10.0, 100.0]).unwrap();
        assert!((v[0] - 0.915_633_339_397_880_8).abs() < 1e-13);
        assert!((v[1] - 1.0).abs() < 0.011);
        assert!(exercise2_limit(&[0.0]).is_err());
    }
}
