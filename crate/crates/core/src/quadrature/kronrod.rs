use std::cmp::Ordering;
use std::collections::BinaryHeap;

use super::{QuadConfig, QuadResult};
use crate::error::{Error, Result};

#[allow(clippy::excessive_precision)]
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

#[allow(clippy::excessive_precision)]
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_958_109_831_074,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

/// One application of the 10-point Gauss / 21-point Kronrod pair.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Panel {
    pub a: f64,
    pub b: f64,
    pub value: f64,
    pub error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error.total_cmp(&other.error) == Ordering::Equal
    }
}

impl Eq for Panel {}

impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn rescale_error(err: f64, res_abs: f64, res_asc: f64) -> f64 {
    let mut scaled = err.abs();
    if res_asc != 0.0 && scaled != 0.0 {
        let scale = (200.0 * scaled / res_asc).powf(1.5);
        scaled = if scale < 1.0 {
            res_asc * scale
        } else {
            res_asc
        };
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        scaled = scaled.max(50.0 * f64::EPSILON * res_abs);
    }
    scaled
}

pub(crate) fn qk21<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Panel {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let f_center = f(center);

    let mut res_gauss = 0.0;
    let mut res_kronrod = f_center * WGK[10];
    let mut res_abs = res_kronrod.abs();
    let mut fv1 = [0.0; 10];
    let mut fv2 = [0.0; 10];

    for (j, wg) in WG.iter().enumerate() {
        let jtw = 2 * j + 1;
        let dx = half * XGK[jtw];
        let (f1, f2) = (f(center - dx), f(center + dx));
        fv1[jtw] = f1;
        fv2[jtw] = f2;
        res_gauss += wg * (f1 + f2);
        res_kronrod += WGK[jtw] * (f1 + f2);
        res_abs += WGK[jtw] * (f1.abs() + f2.abs());
    }
    for j in 0..5 {
        let jtwm1 = 2 * j;
        let dx = half * XGK[jtwm1];
        let (f1, f2) = (f(center - dx), f(center + dx));
        fv1[jtwm1] = f1;
        fv2[jtwm1] = f2;
        res_kronrod += WGK[jtwm1] * (f1 + f2);
        res_abs += WGK[jtwm1] * (f1.abs() + f2.abs());
    }

    let mean = 0.5 * res_kronrod;
    let mut res_asc = WGK[10] * (f_center - mean).abs();
    for j in 0..10 {
        res_asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }

    let err = (res_kronrod - res_gauss) * half;
    let scale = half.abs();
    Panel {
        a,
        b,
        value: res_kronrod * half,
        error: rescale_error(err, res_abs * scale, res_asc * scale),
    }
}

/// Globally adaptive bisection driven by the Gauss–Kronrod error estimate.
///
/// The panel with the largest error is split until the summed error meets
/// `max(abs_tol, rel_tol·|I|)` or the subdivision budget runs out; in the
/// latter case the best estimate is still returned with `converged = false`.
pub fn integrate_adaptive<F>(f: F, a: f64, b: f64, cfg: &QuadConfig) -> Result<QuadResult>
where
    F: Fn(f64) -> f64,
{
    cfg.validate()?;
    if !(a < b) || !a.is_finite() || !b.is_finite() {
        return Err(Error::InvalidInterval { a, b });
    }

    let first = qk21(&f, a, b);
    let mut heap = BinaryHeap::new();
    let mut settled = Vec::new();
    heap.push(first);
    let mut subdivisions = 1;

    loop {
        let (value, error) = totals(&heap, &settled);
        if !value.is_finite() || !error.is_finite() {
            return Ok(QuadResult {
                value,
                abs_err_estimate: f64::INFINITY,
                subdivisions,
                converged: false,
            });
        }
        if error <= cfg.tolerance_for(value) || subdivisions >= cfg.max_subdivisions {
            return Ok(QuadResult {
                value,
                abs_err_estimate: error,
                subdivisions,
                converged: error <= cfg.tolerance_for(value),
            });
        }
        let Some(worst) = heap.pop() else {
            // every panel hit the resolution limit
            return Ok(QuadResult {
                value,
                abs_err_estimate: error,
                subdivisions,
                converged: false,
            });
        };
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            settled.push(worst);
            continue;
        }
        heap.push(qk21(&f, worst.a, mid));
        heap.push(qk21(&f, mid, worst.b));
        subdivisions += 1;
    }
}

fn totals(heap: &BinaryHeap<Panel>, settled: &[Panel]) -> (f64, f64) {
    let mut value = 0.0;
    let mut comp = 0.0;
    let mut error = 0.0;
    for p in heap.iter().chain(settled) {
        // Neumaier summation of the panel contributions
        let t = value + p.value;
        if value.abs() >= p.value.abs() {
            comp += (value - t) + p.value;
        } else {
            comp += (p.value - t) + value;
        }
        value = t;
        error += p.error;
    }
    (value + comp, error)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_panel_is_exact_for_low_degree_polynomials() {
        let p = qk21(&|t: f64| 3.0 * t * t - 2.0 * t + 1.0, 0.0, 2.0);
        assert!((p.value - 6.0).abs() < 1e-14);
    }

    #[test]
    fn error_estimate_is_never_below_roundoff_floor() {
        let p = qk21(&|t: f64| t.exp(), 0.0, 1.0);
        assert!(p.error >= 50.0 * f64::EPSILON * p.value * 0.99);
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let cfg = QuadConfig {
            max_subdivisions: 2,
            rel_tol: 1e-15,
            abs_tol: 0.0,
            ..QuadConfig::default()
        };
        let r = integrate_adaptive(|t: f64| t.sqrt().ln().abs().sqrt(), 0.0, 1.0, &cfg).unwrap();
        assert!(!r.converged);
        assert_eq!(r.subdivisions, 2);
    }

    #[test]
    fn rejects_reversed_interval() {
        let cfg = QuadConfig::default();
        assert!(matches!(
            integrate_adaptive(|t| t, 1.0, 0.0, &cfg),
            Err(Error::InvalidInterval { .. })
        ));
    }
}
