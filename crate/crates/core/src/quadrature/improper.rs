use super::accel::{richardson_geometric, wynn_epsilon};
use super::kronrod::integrate_adaptive;
use super::{QuadConfig, QuadResult};
use crate::error::{Error, Result};

const MAX_EXCLUSION_LEVELS: usize = 40;
const MAX_RICHARDSON_ORDER: usize = 8;
const MAX_HALF_PERIODS: usize = 400;
const WYNN_WINDOW: usize = 40;

/// Cauchy principal value of `f` over `[a, b]` through a simple pole.
///
/// The integral outside the largest symmetric window `[pole−δ, pole+δ]` is
/// ordinary. Inside it the contributions of `pole±s` are paired, the
/// excluded half-width shrinks geometrically by `cfg.pv_shrink`, and the
/// sequence of truncated integrals is Richardson-extrapolated to zero width.
pub fn integrate_pv<F>(f: F, a: f64, b: f64, pole: f64, cfg: &QuadConfig) -> Result<QuadResult>
where
    F: Fn(f64) -> f64,
{
    cfg.validate()?;
    if !(a < pole && pole < b) {
        return Err(Error::PoleOutsideRange { a, b, pole });
    }
    let left = pole - a;
    let right = b - pole;
    let delta = left.min(right);

    let mut pieces = Vec::with_capacity(2);
    if left < right {
        pieces.push(integrate_adaptive(&f, pole + delta, b, cfg)?);
    } else if right < left {
        pieces.push(integrate_adaptive(&f, a, pole - delta, cfg)?);
    }

    let folded = |s: f64| f(pole + s) + f(pole - s);
    let shrink = cfg.pv_shrink;
    let mut samples = Vec::with_capacity(MAX_EXCLUSION_LEVELS);
    let mut running = 0.0;
    let mut quad_err = 0.0;
    let mut subdivisions = 0;
    let mut outer = delta;
    let mut extrapolated = (0.0, f64::INFINITY);
    let mut all_converged = true;

    for _ in 0..MAX_EXCLUSION_LEVELS {
        let inner = outer * shrink;
        if inner <= f64::MIN_POSITIVE || inner >= outer {
            break;
        }
        let band = integrate_adaptive(folded, inner, outer, cfg)?;
        running += band.value;
        quad_err += band.abs_err_estimate;
        subdivisions += band.subdivisions;
        all_converged &= band.converged;
        samples.push(running);
        outer = inner;

        if samples.len() >= 3 {
            extrapolated = richardson_geometric(&samples, shrink, MAX_RICHARDSON_ORDER);
            let target = cfg.tolerance_for(extrapolated.0);
            if samples.len() >= 5 && extrapolated.1 <= 0.25 * target {
                break;
            }
        }
    }

    let (value, extrap_err) = extrapolated;
    pieces.push(QuadResult {
        value,
        abs_err_estimate: quad_err + extrap_err,
        subdivisions,
        converged: all_converged && extrap_err.is_finite(),
    });
    Ok(QuadResult::combine(&pieces, cfg))
}

/// `∫_a^∞ f(t) dt`.
///
/// Without `osc_period_hint` the integrand must decay faster than `1/t`;
/// the range is mapped onto `(0, 1]` by `u = 1/(1+t−a)`. With a period the
/// tail is summed between successive half-period nodes (aligned to the first
/// zero of `f` after `a`) and the partial sums are epsilon-accelerated.
pub fn integrate_upper_infinite<F>(f: F, a: f64, cfg: &QuadConfig) -> Result<QuadResult>
where
    F: Fn(f64) -> f64,
{
    cfg.validate()?;
    if !a.is_finite() {
        return Err(Error::InvalidInterval {
            a,
            b: f64::INFINITY,
        });
    }
    match cfg.osc_period_hint {
        Some(period) => oscillatory_tail(&f, a, period, cfg),
        None => decaying_tail(&f, a, cfg),
    }
}

/// `∫_{−∞}^b f(t) dt`, by reflecting `t → −t` onto an upper tail.
pub fn integrate_lower_infinite<F>(f: F, b: f64, cfg: &QuadConfig) -> Result<QuadResult>
where
    F: Fn(f64) -> f64,
{
    integrate_upper_infinite(|s| f(-s), -b, cfg)
}

fn decaying_tail<F: Fn(f64) -> f64>(f: &F, a: f64, cfg: &QuadConfig) -> Result<QuadResult> {
    // |t·f(t)| must fall off; sample a few offsets so an oscillating factor
    // cannot hide behind a lucky zero
    let scale = a.abs().max(1.0);
    let probe = |t: f64| {
        [0.0, 0.7, 1.9, 3.1]
            .iter()
            .map(|d| {
                let v = ((t + d) * f(t + d)).abs();
                if v.is_nan() {
                    f64::INFINITY
                } else {
                    v
                }
            })
            .fold(0.0, f64::max)
    };
    let near = probe(a + 1e6 * scale);
    let far = probe(a + 1e12 * scale);
    if !(far < 1e-6 || far < 1e-2 * near) {
        return Err(Error::DivergentTail { a });
    }
    let mapped = |u: f64| {
        let t = a - 1.0 + 1.0 / u;
        let v = f(t) / (u * u);
        if v.is_nan() && t.is_infinite() {
            0.0
        } else {
            v
        }
    };
    integrate_adaptive(mapped, 0.0, 1.0, cfg)
}

/// Partial sums of `∫_a^∞ f` taken between successive half-period nodes.
///
/// Entry `k` integrates up to the `k`-th node after `a`; the first node is
/// the first sign change of `f` past `a`. Exposed so callers can inspect the
/// alternating enclosure directly.
pub fn oscillatory_partial_sums<F>(
    f: F,
    a: f64,
    period: f64,
    count: usize,
    cfg: &QuadConfig,
) -> Result<Vec<f64>>
where
    F: Fn(f64) -> f64,
{
    cfg.validate()?;
    let mut nodes = HalfPeriodNodes::new(&f, a, period);
    let mut sums = Vec::with_capacity(count);
    let mut running = 0.0;
    let mut lo = a;
    for _ in 0..count {
        let hi = nodes.next_node();
        if hi > lo {
            running += integrate_adaptive(&f, lo, hi, cfg)?.value;
        }
        sums.push(running);
        lo = hi;
    }
    Ok(sums)
}

struct HalfPeriodNodes {
    first: f64,
    half: f64,
    index: usize,
}

impl HalfPeriodNodes {
    fn new<F: Fn(f64) -> f64>(f: &F, a: f64, period: f64) -> Self {
        Self {
            first: first_sign_change(f, a, period).unwrap_or(a + 0.5 * period),
            half: 0.5 * period,
            index: 0,
        }
    }

    fn next_node(&mut self) -> f64 {
        let node = self.first + self.half * self.index as f64;
        self.index += 1;
        node
    }
}

fn first_sign_change<F: Fn(f64) -> f64>(f: &F, a: f64, period: f64) -> Option<f64> {
    const SAMPLES: usize = 64;
    let h = period / SAMPLES as f64;
    let mut x0 = a + 1e-3 * h;
    let mut f0 = f(x0);
    for i in 1..=SAMPLES {
        let x1 = a + h * i as f64;
        let f1 = f(x1);
        if f1 == 0.0 {
            return Some(x1);
        }
        if f0 != 0.0 && f0.signum() != f1.signum() {
            let (mut lo, mut hi, mut flo) = (x0, x1, f0);
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if mid <= lo || mid >= hi {
                    break;
                }
                let fm = f(mid);
                if fm == 0.0 {
                    return Some(mid);
                }
                if fm.signum() == flo.signum() {
                    lo = mid;
                    flo = fm;
                } else {
                    hi = mid;
                }
            }
            return Some(0.5 * (lo + hi));
        }
        x0 = x1;
        f0 = f1;
    }
    None
}

fn oscillatory_tail<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    period: f64,
    cfg: &QuadConfig,
) -> Result<QuadResult> {
    let mut nodes = HalfPeriodNodes::new(f, a, period);
    let mut partials: Vec<f64> = Vec::new();
    let mut running = 0.0;
    let mut quad_err = 0.0;
    // what the pieces were each asked to meet; the sum cannot do better
    let mut piece_tol = 0.0;
    let mut subdivisions = 0;
    let mut all_converged = true;
    let mut lo = a;
    let mut previous: Option<f64> = None;
    let mut best = (f64::NAN, f64::INFINITY);

    let budget = MAX_HALF_PERIODS.min(cfg.max_subdivisions.max(8));
    for _ in 0..budget {
        let hi = nodes.next_node();
        if hi > lo {
            let piece = integrate_adaptive(f, lo, hi, cfg)?;
            running += piece.value;
            quad_err += piece.abs_err_estimate;
            piece_tol += cfg.tolerance_for(piece.value);
            subdivisions += piece.subdivisions;
            all_converged &= piece.converged;
        }
        partials.push(running);
        lo = hi;

        if partials.len() < 6 {
            continue;
        }
        let window = &partials[partials.len().saturating_sub(WYNN_WINDOW)..];
        let (est, wynn_err) = wynn_epsilon(window);
        let drift = previous.map_or(f64::INFINITY, |p| (est - p).abs());
        previous = Some(est);
        let err = wynn_err.max(drift);
        if err < best.1 {
            best = (est, err);
        }
        if err + quad_err <= 0.5 * cfg.tolerance_for(est).max(piece_tol) {
            break;
        }
    }

    let (value, accel_err) = best;
    let abs_err_estimate = accel_err + quad_err;
    Ok(QuadResult {
        value,
        abs_err_estimate,
        subdivisions,
        converged: all_converged && abs_err_estimate <= cfg.tolerance_for(value).max(piece_tol),
    })
}
