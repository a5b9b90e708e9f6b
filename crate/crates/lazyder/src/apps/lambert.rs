//! The Lambert W function, regular branch at 0, as a derivative tower and
//! as a Taylor series — both straight from the implicit equation
//! `W(x) e^{W(x)} = x`, i.e. `W' = exp(-W) / (1 + W)`.

use crate::dtower::DTower;
use crate::pseries::Series;

/// The fixpoint tower `lw0 = 0 :> exp(-lw0) / (1 + lw0)`.
/// Element n (n >= 1) equals `(-n)^(n-1)`.
pub fn lambert_w_tower() -> DTower<f64> {
    DTower::fix(|lw| {
        let one = DTower::constant(1.0);
        DTower::cons(0.0, lw.neg().exp().div(&one.add(lw)))
    })
}

/// Taylor coefficients of W about the point `x0 = w0 * e^{w0}`,
/// parameterized by the value `w0` taken by W there:
/// `wlx = sint w0 (exp(-wlx) / (1 + wlx))`.
pub fn lambert_w_series(w0: f64) -> Series<f64> {
    Series::fix(move |wlx| {
        let one = Series::constant(1.0);
        Series::sint(w0, &wlx.neg().exp().div(&one.add(wlx)))
    })
}
