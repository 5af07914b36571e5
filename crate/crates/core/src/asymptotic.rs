//! Divergent asymptotic expansions with explicit partial sums and remainder
//! bounds.
//!
//! For a fixed order the remainder vanishes as the argument grows, but for a
//! fixed argument the terms eventually grow without bound, so every routine
//! takes the order `n` explicitly and [`optimal_n`] picks the order whose
//! next term is smallest.

use std::f64::consts::{E, FRAC_PI_2};

use crate::error::{Error, Result};
use crate::quadrature::FnId;

/// How the remainder bound was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundKind {
    /// A proven inequality.
    Rigorous,
    /// Magnitude of the first omitted term; a heuristic.
    FirstOmittedTerm,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoticResult {
    pub value: f64,
    pub n: usize,
    pub remainder_bound: f64,
    pub bound_kind: BoundKind,
}

impl AsymptoticResult {
    /// Whether the bound certifies `rel_tol` relative accuracy.
    pub fn is_reliable(&self, rel_tol: f64) -> bool {
        self.remainder_bound.is_finite() && self.remainder_bound <= rel_tol * self.value.abs()
    }
}

/// Output scaling for [`ei_asym`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Scale {
    #[default]
    Linear,
    /// Return `ln Ei(x)`; the bound then applies to the logarithm.
    Log,
}

/// `Σ_{k=0}^{n} sign^k k!/y^k` and the magnitude of the next term.
fn factorial_sum(y: f64, n: usize, alternate: bool) -> (f64, f64) {
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..=n {
        term *= k as f64 / y;
        sum += if alternate && k % 2 == 1 { -term } else { term };
    }
    let next = term * (n + 1) as f64 / y;
    (sum, next)
}

/// `Ei(x) ≈ (eˣ/x) Σ_{k=0}^{n} k!/x^k`, x > 0.
///
/// The remainder is only known to be `O(x^{−n−1})`, so the bound is the
/// first omitted term. With [`Scale::Log`] the result is `ln Ei(x)`, usable
/// past the overflow of `eˣ`.
pub fn ei_asym(x: f64, n: usize, scale: Scale) -> Result<AsymptoticResult> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::domain("Ei", "x > 0 for the asymptotic expansion", x));
    }
    let (sum, next) = factorial_sum(x, n, false);
    match scale {
        Scale::Linear => {
            let prefactor = x.exp() / x;
            let value = prefactor * sum;
            if !value.is_finite() {
                return Err(Error::Overflow {
                    what: "Ei asymptotic",
                    x,
                });
            }
            Ok(AsymptoticResult {
                value,
                n,
                remainder_bound: prefactor * next,
                bound_kind: BoundKind::FirstOmittedTerm,
            })
        }
        Scale::Log => Ok(AsymptoticResult {
            value: x - x.ln() + sum.ln(),
            n,
            remainder_bound: (next / sum).ln_1p(),
            bound_kind: BoundKind::FirstOmittedTerm,
        }),
    }
}

fn e1_partial(x: f64, n: usize) -> Result<(f64, f64)> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::domain("E1", "x > 0 for the asymptotic expansion", x));
    }
    if n < 1 {
        return Err(Error::domain("E1", "asymptotic order n >= 1", n as f64));
    }
    // S_n = 1/x − 1/x² + … + (−1)^{n−1}(n−1)!/x^n
    let (sum, next) = factorial_sum(x, n - 1, true);
    Ok((sum / x, next / x))
}

/// `E₁(x) ≈ e⁻ˣ[1/x − 1/x² + … + (−1)^{n−1}(n−1)!/x^n]`, n ≥ 1, with the
/// rigorous bound `|Υₙ| < n!·e⁻ˣ/x^{n+1}`.
pub fn e1_asym(x: f64, n: usize) -> Result<AsymptoticResult> {
    let (sum, next) = e1_partial(x, n)?;
    let decay = (-x).exp();
    Ok(AsymptoticResult {
        value: decay * sum,
        n,
        remainder_bound: decay * next,
        bound_kind: BoundKind::Rigorous,
    })
}

/// Same partial sum as [`e1_asym`] scaled by eˣ, i.e. an approximation of
/// `eˣE₁(x)` that stays representable for any x.
pub fn e1_asym_scaled(x: f64, n: usize) -> Result<AsymptoticResult> {
    let (sum, next) = e1_partial(x, n)?;
    Ok(AsymptoticResult {
        value: sum,
        n,
        remainder_bound: next,
        bound_kind: BoundKind::Rigorous,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrigAuxSums {
    /// `Σ_{k=0}^{n} (−1)^k (2k)!/x^{2k}`
    pub even_sum: f64,
    /// `Σ_{k=0}^{n} (−1)^k (2k+1)!/x^{2k+1}`
    pub odd_sum: f64,
    /// `(2n+2)!/x^{2n+2}`, first omitted term of the even factor.
    pub even_next: f64,
    /// `(2n+3)!/x^{2n+3}`, first omitted term of the odd factor.
    pub odd_next: f64,
}

pub fn trig_aux_sums(x: f64, n: usize) -> Result<TrigAuxSums> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::domain(
            "Si/Ci",
            "x > 0 for the asymptotic expansion",
            x,
        ));
    }
    let inv_sq = 1.0 / (x * x);
    let mut even_term = 1.0;
    let mut odd_term = 1.0 / x;
    let mut even_sum = even_term;
    let mut odd_sum = odd_term;
    for k in 1..=n {
        let kf = k as f64;
        even_term *= (2.0 * kf - 1.0) * (2.0 * kf) * inv_sq;
        odd_term *= (2.0 * kf) * (2.0 * kf + 1.0) * inv_sq;
        if k % 2 == 1 {
            even_sum -= even_term;
            odd_sum -= odd_term;
        } else {
            even_sum += even_term;
            odd_sum += odd_term;
        }
    }
    let m = (n + 1) as f64;
    Ok(TrigAuxSums {
        even_sum,
        odd_sum,
        even_next: even_term * (2.0 * m - 1.0) * (2.0 * m) * inv_sq,
        odd_next: odd_term * (2.0 * m) * (2.0 * m + 1.0) * inv_sq,
    })
}

fn trig_bound(aux: &TrigAuxSums, x: f64) -> f64 {
    // each factor's omitted term times its |cos x/x| or |sin x/x| ≤ 1/x
    (aux.even_next + aux.odd_next) / x
}

/// `Si(x) ≈ π/2 − (cos x/x)·even_sum − (sin x/x)·odd_sum`.
pub fn si_asym(x: f64, n: usize) -> Result<AsymptoticResult> {
    let aux = trig_aux_sums(x, n)?;
    let (s, c) = x.sin_cos();
    Ok(AsymptoticResult {
        value: FRAC_PI_2 - c / x * aux.even_sum - s / x * aux.odd_sum,
        n,
        remainder_bound: trig_bound(&aux, x),
        bound_kind: BoundKind::FirstOmittedTerm,
    })
}

/// `Ci(x) ≈ (sin x/x)·even_sum − (cos x/x)·odd_sum`.
pub fn ci_asym(x: f64, n: usize) -> Result<AsymptoticResult> {
    let aux = trig_aux_sums(x, n)?;
    let (s, c) = x.sin_cos();
    Ok(AsymptoticResult {
        value: s / x * aux.even_sum - c / x * aux.odd_sum,
        n,
        remainder_bound: trig_bound(&aux, x),
        bound_kind: BoundKind::FirstOmittedTerm,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LogIntegral {
    /// li(x) ~ (x/ln x) Σ k!/(ln x)^k
    Li,
    /// li₁(x) ~ (1/(x ln x)) Σ (−1)^k k!/(ln x)^k
    Li1,
}

/// Large-x expansions of li and li₁, x > e.
///
/// The li₁ bound is rigorous because li₁(x) = E₁(ln x); the li bound is the
/// first omitted term.
pub fn log_asym(which: LogIntegral, x: f64, n: usize) -> Result<AsymptoticResult> {
    if !(x > E) || !x.is_finite() {
        return Err(Error::domain("li", "x > e for the asymptotic expansion", x));
    }
    let log_x = x.ln();
    match which {
        LogIntegral::Li => {
            let (sum, next) = factorial_sum(log_x, n, false);
            let prefactor = x / log_x;
            Ok(AsymptoticResult {
                value: prefactor * sum,
                n,
                remainder_bound: prefactor * next,
                bound_kind: BoundKind::FirstOmittedTerm,
            })
        }
        LogIntegral::Li1 => {
            let (sum, next) = factorial_sum(log_x, n, true);
            let prefactor = 1.0 / (x * log_x);
            Ok(AsymptoticResult {
                value: prefactor * sum,
                n,
                remainder_bound: prefactor * next,
                bound_kind: BoundKind::Rigorous,
            })
        }
    }
}

/// Index m ≥ 1 minimising `m!/y^m`, ties resolved toward the larger index.
fn smallest_factorial_term(y: f64) -> usize {
    let mut m = 1usize;
    // (m+1)!/y^{m+1} ≤ m!/y^m  ⇔  m+1 ≤ y
    while ((m + 1) as f64) <= y {
        m += 1;
    }
    m
}

/// Order that makes the next term of the relevant expansion smallest.
///
/// For E₁ this is ⌊x⌋; for Ei, li and li₁ (whose sums start at k = 0 and
/// run to n) it is one less; for Si/Ci it is the k where `(2k)!/x^{2k}`
/// stops decreasing.
pub fn optimal_n(fn_id: FnId, x: f64) -> Result<usize> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::domain(fn_id.name(), "x > 0", x));
    }
    match fn_id {
        FnId::E1 => Ok(smallest_factorial_term(x)),
        FnId::Ei => Ok(smallest_factorial_term(x) - 1),
        FnId::Li | FnId::Li1 | FnId::LiOffset => {
            if !(x > E) {
                return Err(Error::domain(fn_id.name(), "x > e", x));
            }
            Ok(smallest_factorial_term(x.ln()) - 1)
        }
        FnId::Si | FnId::Ci => {
            let sq = x * x;
            let mut k = 0usize;
            loop {
                let next = (k + 1) as f64;
                if (2.0 * next - 1.0) * (2.0 * next) > sq {
                    break;
                }
                k += 1;
            }
            Ok(k)
        }
        _ => Err(Error::domain(
            fn_id.name(),
            "no asymptotic expansion for this function",
            x,
        )),
    }
}
