//! Named constants.

use std::f64::consts::FRAC_PI_2;

/// Euler–Mascheroni constant γ.
#[allow(clippy::excessive_precision)]
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_860_606_512_090_082;

/// Low-order correction so that `EULER_GAMMA + EULER_GAMMA_LO` carries ~32 digits.
pub(crate) const EULER_GAMMA_LO: f64 = -4.942_915_152_430_645e-18;

/// li(2).
#[allow(clippy::excessive_precision)]
pub const LI_2: f64 = 1.045_163_780_117_492_784_844_588_889_194;

/// Ramanujan–Soldner constant, the positive zero of li.
#[allow(clippy::excessive_precision)]
pub const SOLDNER: f64 = 1.451_369_234_883_381_050_283_968_485_892;

/// ∫₀^∞ sin t/t dt.
pub const DIRICHLET: f64 = FRAC_PI_2;

/// The constant set as one value, for callers that want to pass it around.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Constants {
    pub gamma: f64,
    pub li2: f64,
    pub soldner: f64,
    pub dirichlet: f64,
}

impl Constants {
    pub const fn get() -> Self {
        Self {
            gamma: EULER_GAMMA,
            li2: LI_2,
            soldner: SOLDNER,
            dirichlet: DIRICHLET,
        }
    }
}

impl Default for Constants {
    fn default() -> Self {
        Self::get()
    }
}
