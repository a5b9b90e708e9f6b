//! The Hermite function recurrence
//! `H_n(x) = (x H_{n-1}(x) - H'_{n-1}(x)) / sqrt(2n)`, `H_0 = exp(-x^2/2)`,
//! computed recursively over towers. The `sqrt(2n)` divisor is injected as
//! a `Constant`-variant tower, which keeps the division on the cheap scalar
//! path instead of the full convolution.

use crate::dtower::{dvar, DTower};
use crate::error::{Error, Result};

pub fn hermite_tower(n: i64, x: f64) -> Result<DTower<f64>> {
    if n < 0 {
        return Err(Error::NegativeOrder(n));
    }
    let y = dvar(x);
    let mut h = y.sqr().scalar_mul(&-0.5).exp();
    for k in 1..=n {
        let divisor = DTower::constant((2.0 * k as f64).sqrt());
        h = y.mul(&h).sub(&h.df()).div(&divisor);
    }
    Ok(h)
}

pub fn hermite_value(n: i64, x: f64) -> Result<f64> {
    hermite_tower(n, x)?.head()
}
