//! Convergent power series.
//!
//! All kernels build their terms by multiplicative recurrence (no factorial
//! is ever formed) and accumulate in double-double arithmetic, so the only
//! accuracy loss left is the rounding of the final value. Alternating
//! kernels still flag [`Error::AccuracyLoss`] past the point where the
//! evaluator has a better route.

use crate::constants::{EULER_GAMMA, EULER_GAMMA_LO};
use crate::dd::Dd;
use crate::error::{Error, Result};

/// Largest argument accepted by [`e1_series`] before reporting accuracy loss.
pub const E1_SERIES_MAX_X: f64 = 6.0;
/// Largest |x| accepted by [`si_series`] and [`ci_series`].
pub const TRIG_SERIES_MAX_X: f64 = 12.0;

const DEFAULT_MAX_TERMS: usize = 500;
const TERM_FLOOR: f64 = 1e-300;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TruncationMode {
    /// Stop once two consecutive terms fall below `rel_tol·|partial sum|`.
    ToTolerance,
    /// Sum exactly `max_terms` terms.
    FixedTerms,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncationPolicy {
    pub mode: TruncationMode,
    pub rel_tol: f64,
    pub max_terms: usize,
}

impl TruncationPolicy {
    pub fn to_tolerance(rel_tol: f64) -> Self {
        Self {
            mode: TruncationMode::ToTolerance,
            rel_tol,
            max_terms: DEFAULT_MAX_TERMS,
        }
    }

    pub fn fixed(terms: usize) -> Self {
        Self {
            mode: TruncationMode::FixedTerms,
            rel_tol: f64::EPSILON,
            max_terms: terms,
        }
    }

    pub fn with_max_terms(self, max_terms: usize) -> Self {
        Self { max_terms, ..self }
    }

    fn validate(&self) -> Result<()> {
        if self.max_terms < 1 {
            return Err(Error::InvalidConfig("max_terms must be at least 1"));
        }
        if self.mode == TruncationMode::ToTolerance && !(self.rel_tol > 0.0) {
            return Err(Error::InvalidConfig("rel_tol must be positive"));
        }
        Ok(())
    }
}

impl Default for TruncationPolicy {
    fn default() -> Self {
        Self::to_tolerance(1e-17)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesResult {
    pub value: f64,
    pub terms_used: usize,
    /// Magnitude of the last included term.
    pub last_term: f64,
    pub converged: bool,
    /// Σ|term|, the scale against which cancellation is measured.
    pub magnitude: f64,
    /// |constant + logarithm| added outside the sum (γ + ln x for Ei, E₁, Ci).
    pub offset: f64,
}

impl SeriesResult {
    /// Error estimate: truncation (last term) plus rounding of the result.
    pub fn error_estimate(&self) -> f64 {
        let truncation = if self.converged {
            self.last_term
        } else {
            f64::INFINITY
        };
        truncation
            + 2.0 * f64::EPSILON * self.value.abs()
            + f64::EPSILON * self.offset
            + 1e-30 * self.magnitude
    }
}

/// The summand sequences, for inspection and coefficient checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kernel {
    /// `x^k/(k·k!)`, k ≥ 1
    Ei,
    /// `(−1)^{k+1} x^k/(k·k!)`, k ≥ 1 (shared by E₁ and Ein)
    Ein,
    /// `(−1)^k x^{2k+1}/((2k+1)(2k+1)!)`, k ≥ 0
    Si,
    /// `(−1)^k x^{2k}/(2k·(2k)!)`, k ≥ 1
    Ci,
    /// `(−1)^{k−1} (ln x)^k/(k!·2^{k−1}) · Σ_{j≤⌊(k−1)/2⌋} 1/(2j+1)`, k ≥ 1
    Ramanujan,
}

/// Generates successive terms of one kernel in double-double precision.
struct Terms {
    kernel: Kernel,
    x: f64,
    sq: Dd,
    k: usize,
    power: Dd,
    inner: Dd,
}

impl Terms {
    fn new(kernel: Kernel, x: f64) -> Self {
        let sq = Dd::from_f64(x).mul_f64(x);
        Self {
            kernel,
            x,
            sq,
            k: 0,
            power: Dd::from_f64(1.0),
            inner: Dd::ZERO,
        }
    }

    fn mul_dd_sq(v: Dd, sq: Dd) -> Dd {
        v.mul_f64(sq.hi) + v.mul_f64(sq.lo)
    }
}

impl Iterator for Terms {
    type Item = Dd;

    fn next(&mut self) -> Option<Dd> {
        self.k += 1;
        let k = self.k as f64;
        let term = match self.kernel {
            Kernel::Ei => {
                // power = x^k/k!
                self.power = self.power.mul_f64(self.x).div_f64(k);
                self.power.div_f64(k)
            }
            Kernel::Ein => {
                // power = (−1)^{k+1} x^k/k!
                self.power = if self.k == 1 {
                    Dd::from_f64(self.x)
                } else {
                    -self.power.mul_f64(self.x).div_f64(k)
                };
                self.power.div_f64(k)
            }
            Kernel::Si => {
                // power = (−1)^m x^{2m+1}/(2m+1)!, m = k − 1
                let m = k - 1.0;
                self.power = if self.k == 1 {
                    Dd::from_f64(self.x)
                } else {
                    -Self::mul_dd_sq(self.power, self.sq).div_f64((2.0 * m) * (2.0 * m + 1.0))
                };
                self.power.div_f64(2.0 * m + 1.0)
            }
            Kernel::Ci => {
                // power = (−1)^k x^{2k}/(2k)!
                self.power =
                    -Self::mul_dd_sq(self.power, self.sq).div_f64((2.0 * k - 1.0) * (2.0 * k));
                self.power.div_f64(2.0 * k)
            }
            Kernel::Ramanujan => {
                // power = (−1)^{k−1} L^k/(k!·2^{k−1}), x holds L = ln z
                self.power = if self.k == 1 {
                    Dd::from_f64(self.x)
                } else {
                    -self.power.mul_f64(self.x).div_f64(2.0 * k)
                };
                if self.k % 2 == 1 {
                    self.inner = self.inner + Dd::from_f64(1.0).div_f64(k);
                }
                let inner = self.inner;
                self.power.mul_f64(inner.hi) + self.power.mul_f64(inner.lo)
            }
        };
        Some(term)
    }
}

/// The first `n` summands of `kernel` at `x`, each rounded to f64.
///
/// For [`Kernel::Ramanujan`] pass `ln z` as `x`.
pub fn kernel_terms(kernel: Kernel, x: f64, n: usize) -> Vec<f64> {
    Terms::new(kernel, x).take(n).map(Dd::to_f64).collect()
}

struct Summed {
    sum: Dd,
    terms_used: usize,
    last_term: f64,
    converged: bool,
    magnitude: f64,
}

fn sum_kernel(kernel: Kernel, x: f64, p: &TruncationPolicy, what: &'static str) -> Result<Summed> {
    p.validate()?;
    let mut sum = Dd::ZERO;
    let mut magnitude = 0.0;
    let mut small_run = 0;
    let mut last = 0.0;
    let mut used = 0;
    for term in Terms::new(kernel, x).take(p.max_terms) {
        sum = sum + term;
        used += 1;
        last = term.abs();
        magnitude += last;
        if !sum.hi.is_finite() {
            return Err(Error::Overflow { what, x });
        }
        let small = last <= p.rel_tol * sum.abs() || last <= TERM_FLOOR;
        small_run = if small { small_run + 1 } else { 0 };
        if p.mode == TruncationMode::ToTolerance && small_run >= 2 {
            return Ok(Summed {
                sum,
                terms_used: used,
                last_term: last,
                converged: true,
                magnitude,
            });
        }
    }
    let converged = last <= p.rel_tol * sum.abs() || last <= TERM_FLOOR;
    if p.mode == TruncationMode::ToTolerance {
        return Err(Error::NonConvergence {
            what,
            iterations: used,
            value: sum.to_f64(),
            error: last,
        });
    }
    Ok(Summed {
        sum,
        terms_used: used,
        last_term: last,
        converged,
        magnitude,
    })
}

fn finish(offset: Dd, s: Summed) -> SeriesResult {
    SeriesResult {
        value: (offset + s.sum).to_f64(),
        terms_used: s.terms_used,
        last_term: s.last_term,
        converged: s.converged,
        magnitude: s.magnitude,
        offset: offset.abs(),
    }
}

fn gamma_dd() -> Dd {
    Dd::new(EULER_GAMMA, EULER_GAMMA_LO)
}

/// `Ei(x) = γ + ln|x| + Σ x^k/(k·k!)`; principal value for x < 0.
pub fn ei_series(x: f64, p: &TruncationPolicy) -> Result<SeriesResult> {
    if x == 0.0 || !x.is_finite() {
        return Err(Error::domain("Ei", "x != 0 (Ei(0) = -inf)", x));
    }
    let s = sum_kernel(Kernel::Ei, x, p, "Ei series")?;
    Ok(finish(gamma_dd() + x.abs().ln(), s))
}

/// `E₁(x) = −γ − ln x + Σ (−1)^{k+1} x^k/(k·k!)`, x > 0.
pub fn e1_series(x: f64, p: &TruncationPolicy) -> Result<SeriesResult> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::domain("E1", "x > 0", x));
    }
    if x > E1_SERIES_MAX_X {
        return Err(Error::AccuracyLoss {
            what: "E1 series",
            x,
            reason: "alternating sum cancels beyond x = 6",
        });
    }
    let s = sum_kernel(Kernel::Ein, x, p, "E1 series")?;
    Ok(finish(-gamma_dd() + (-x.ln()), s))
}

/// `Ein(x) = Σ (−1)^{k+1} x^k/(k·k!)`, entire.
pub fn ein_series(x: f64, p: &TruncationPolicy) -> Result<SeriesResult> {
    if !x.is_finite() {
        return Err(Error::domain("Ein", "argument must be finite", x));
    }
    let s = sum_kernel(Kernel::Ein, x, p, "Ein series")?;
    Ok(finish(Dd::ZERO, s))
}

/// `Si(x) = Σ (−1)^k x^{2k+1}/((2k+1)(2k+1)!)`.
pub fn si_series(x: f64, p: &TruncationPolicy) -> Result<SeriesResult> {
    if !x.is_finite() {
        return Err(Error::domain("Si", "argument must be finite", x));
    }
    if x.abs() > TRIG_SERIES_MAX_X {
        return Err(Error::AccuracyLoss {
            what: "Si series",
            x,
            reason: "alternating sum cancels beyond |x| = 12",
        });
    }
    let s = sum_kernel(Kernel::Si, x, p, "Si series")?;
    Ok(finish(Dd::ZERO, s))
}

/// `Ci(x) = γ + ln x + Σ_{k≥1} (−1)^k x^{2k}/(2k·(2k)!)`, x > 0.
pub fn ci_series(x: f64, p: &TruncationPolicy) -> Result<SeriesResult> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::domain("Ci", "x > 0", x));
    }
    if x > TRIG_SERIES_MAX_X {
        return Err(Error::AccuracyLoss {
            what: "Ci series",
            x,
            reason: "alternating sum cancels beyond x = 12",
        });
    }
    let s = sum_kernel(Kernel::Ci, x, p, "Ci series")?;
    Ok(finish(gamma_dd() + x.ln(), s))
}

/// The power-series part of Ci alone, `Σ_{k≥1} (−1)^k x^{2k}/(2k·(2k)!)`,
/// defined for every real x.
pub fn ci_series_sum(x: f64, p: &TruncationPolicy) -> Result<SeriesResult> {
    if !x.is_finite() {
        return Err(Error::domain("Ci", "argument must be finite", x));
    }
    let s = sum_kernel(Kernel::Ci, x, p, "Ci series")?;
    Ok(finish(Dd::ZERO, s))
}

/// Ramanujan's series
/// `li(x) = γ + ln ln x + √x Σ_{k≥1} (−1)^{k−1}(ln x)^k/(k!·2^{k−1}) Σ_{j=0}^{⌊(k−1)/2⌋} 1/(2j+1)`.
pub fn li_ramanujan(x: f64, p: &TruncationPolicy) -> Result<SeriesResult> {
    if !(x > 1.0) || !x.is_finite() {
        return Err(Error::domain("li", "x > 1 for the Ramanujan series", x));
    }
    let log_x = x.ln();
    let s = sum_kernel(Kernel::Ramanujan, log_x, p, "Ramanujan li series")?;
    let root = x.sqrt();
    let scaled = Summed {
        sum: s.sum.mul_f64(root),
        magnitude: s.magnitude * root,
        last_term: s.last_term * root,
        ..s
    };
    Ok(finish(gamma_dd() + log_x.ln(), scaled))
}

/// `G(k) = Σ_{n=1}^{k} 1/n − ln k`, which decreases to γ.
pub fn harmonic_gamma(k: u64) -> f64 {
    assert!(k >= 1, "harmonic_gamma needs k >= 1");
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    // smallest terms first
    for n in (1..=k).rev() {
        let term = 1.0 / n as f64;
        let t = sum + term;
        if sum.abs() >= term.abs() {
            comp += (sum - t) + term;
        } else {
            comp += (term - t) + sum;
        }
        sum = t;
    }
    (sum + comp) - (k as f64).ln()
}
