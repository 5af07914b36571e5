use std::f64::consts::{FRAC_PI_2, PI};

use super::{Evaluator, ExpFn, TrigFn};
use crate::error::{Error, Result};

/// A complex number `re + i·im`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexValue {
    pub re: f64,
    pub im: f64,
}

impl ComplexValue {
    pub fn new(re: f64, im: f64) -> Self {
        Self { re, im }
    }

    pub fn conj(self) -> Self {
        Self {
            re: self.re,
            im: -self.im,
        }
    }
}

/// Which side of the negative real axis `E₁(−x ± i0)` approaches from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// `−x + i0`
    Above,
    /// `−x − i0`
    Below,
}

/// Boundary values on the branch cut: `E₁(−x ± i0) = −Ei(x) ∓ iπ`, x > 0.
pub fn e1_branch(x: f64, side: Side) -> Result<ComplexValue> {
    if !(x > 0.0) {
        return Err(Error::domain("E1 branch", "x > 0", x));
    }
    let ei = Evaluator::default().eval_exp(ExpFn::Ei, x)?.value;
    let im = match side {
        Side::Above => -PI,
        Side::Below => PI,
    };
    Ok(ComplexValue::new(-ei, im))
}

/// Functions evaluated at a purely imaginary argument `i·x`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ImagFn {
    /// Ei(ix) = Ci(x) − i(π/2 − Si(x))
    EiPlus,
    /// Ei(−ix) = Ci(x) + i(π/2 − Si(x))
    EiMinus,
    /// E₁(ix) = −Ci(x) + i(Si(x) − π/2)
    E1,
    /// Si(ix) = (i/2)[Ei(x) + E₁(x)]
    Si,
    /// Ci(ix) = ½[Ei(x) − E₁(x)] + iπ/2
    Ci,
}

/// Evaluates `fn_id(i·x)` for x > 0 from real-axis values.
pub fn imag_axis(fn_id: ImagFn, x: f64) -> Result<ComplexValue> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::domain("imaginary axis", "x > 0", x));
    }
    let ev = Evaluator::default();
    Ok(match fn_id {
        ImagFn::EiPlus | ImagFn::EiMinus | ImagFn::E1 => {
            let si = ev.eval_trig(TrigFn::Si, x)?.value;
            let ci = ev.eval_trig(TrigFn::Ci, x)?.value;
            match fn_id {
                ImagFn::EiPlus => ComplexValue::new(ci, -(FRAC_PI_2 - si)),
                ImagFn::EiMinus => ComplexValue::new(ci, FRAC_PI_2 - si),
                _ => ComplexValue::new(-ci, si - FRAC_PI_2),
            }
        }
        ImagFn::Si | ImagFn::Ci => {
            let ei = ev.eval_exp(ExpFn::Ei, x)?.value;
            let e1 = ev.eval_exp(ExpFn::E1, x)?.value;
            if fn_id == ImagFn::Si {
                ComplexValue::new(0.0, 0.5 * (ei + e1))
            } else {
                ComplexValue::new(0.5 * (ei - e1), FRAC_PI_2)
            }
        }
    })
}
