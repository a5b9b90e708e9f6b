//! Formal power series about a center x0: coefficient streams
//! `[u0, u1, u2, ...]` of `U = sum u_k (x - x0)^k`. The center never enters
//! the algebra; only consumers (the CLI's truncated evaluation) use it.
//!
//! Elementary functions are defined by their integral fixpoint recurrences,
//! e.g. `exp u = w where w = sint (exp u0) (sdif u * w)` — the integration
//! constant is available immediately, the stream argument is latent, and
//! that is exactly what makes the self-reference productive.
//!
//! The restricted variants `exp0`, `log1`, `sqrt1` replace the
//! transcendental head by an exact constant, so the same recurrences run
//! over any field — rationals, and (for `exp0`) nested series.

use std::cell::RefCell;
use std::rc::Rc;

use crate::error::{Error, Result};
use crate::field::{Field, Ring, Transcendental};
use crate::lazy::Stream;

use crate::dtower::DTower;
use num::bigint::BigUint;

pub struct Series<C: Ring>(Stream<C>);

impl<C: Ring> Clone for Series<C> {
    fn clone(&self) -> Self {
        Series(self.0.clone())
    }
}

// Opaque: forcing elements for display would have side effects.
impl<C: Ring> std::fmt::Debug for Series<C> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("Series(..)")
    }
}

/// `[0, 1, 0, 0, ...]`.
pub fn svar<C: Ring>() -> Series<C> {
    Series::cons(C::zero(), Series::cons(C::one(), Series::zero()))
}

impl<C: Ring> Series<C> {
    pub fn from_stream(s: Stream<C>) -> Self {
        Series(s)
    }

    pub fn stream(&self) -> &Stream<C> {
        &self.0
    }

    /// All zeros.
    pub fn zero() -> Self {
        Series(Stream::fix(|s| Stream::cons(C::zero(), s.clone())))
    }

    /// `[c, 0, 0, ...]`.
    pub fn constant(c: C) -> Self {
        Series::cons(c, Series::zero())
    }

    pub fn cons(head: C, tail: Series<C>) -> Self {
        Series(Stream::cons_lazy(move || Ok(head), move || Ok(tail.0)))
    }

    pub fn defer(f: impl FnOnce() -> Result<Series<C>> + 'static) -> Self {
        Series(Stream::defer(move || Ok(f()?.0)))
    }

    pub fn fix(builder: impl FnOnce(&Series<C>) -> Series<C>) -> Self {
        let slot: Rc<RefCell<Option<Series<C>>>> = Rc::new(RefCell::new(None));
        let handle = Rc::clone(&slot);
        let proxy = Series::defer(move || handle.borrow().clone().ok_or(Error::NonProductive));
        let built = builder(&proxy);
        *slot.borrow_mut() = Some(built.clone());
        built
    }

    /// Finite prefix followed by the given constant padding.
    pub fn from_list(prefix: Vec<C>, pad: C) -> Self {
        let mut s = Series(Stream::fix(|s| Stream::cons(pad.clone(), s.clone())));
        for c in prefix.into_iter().rev() {
            s = Series::cons(c, s);
        }
        s
    }

    pub fn head(&self) -> Result<C> {
        self.0.head()
    }

    pub fn tail(&self) -> Series<C> {
        let s = self.0.clone();
        Series(Stream::defer(move || s.tail()))
    }

    pub fn to_list(&self, n: usize) -> Result<Vec<C>> {
        self.0.take(n)
    }

    pub fn map(&self, f: impl Fn(C) -> C + 'static) -> Series<C> {
        Series(self.0.map(f))
    }

    pub fn zip_with(op: impl Fn(C, C) -> C + 'static, a: &Series<C>, b: &Series<C>) -> Series<C> {
        Series(Stream::zip_with(move |x, y| Ok(op(x, y)), &a.0, &b.0))
    }

    pub fn add(&self, other: &Series<C>) -> Series<C> {
        Series::zip_with(|a, b| a.add(&b), self, other)
    }

    pub fn sub(&self, other: &Series<C>) -> Series<C> {
        Series::zip_with(|a, b| a.sub(&b), self, other)
    }

    pub fn neg(&self) -> Series<C> {
        self.map(|c| c.neg())
    }

    pub fn scalar_mul(&self, c: &C) -> Series<C> {
        let c = c.clone();
        self.map(move |x| c.mul(&x))
    }

    /// Cauchy product by the recursion
    /// `(u0:-uq) * v@(v0:-vq) = u0 v0 :- u0*-vq + v*uq`.
    pub fn mul(&self, other: &Series<C>) -> Series<C> {
        let (u, v) = (self.clone(), other.clone());
        Series::defer(move || {
            let (u0, uq) = (u.head()?, u.tail());
            let v0 = v.head()?;
            let vq = v.tail();
            Ok(Series::cons(
                u0.mul(&v0),
                vq.scalar_mul(&u0).add(&v.mul(&uq)),
            ))
        })
    }

    pub fn sqr(&self) -> Series<C> {
        self.mul(self)
    }

    /// Formal derivative: drop u0, multiply by 1, 2, 3, ...
    pub fn sdif(&self) -> Series<C> {
        fn go<C: Ring>(s: Series<C>, n: u64) -> Series<C> {
            Series::defer(move || {
                let h = s.head()?.mul(&C::from_int(n as i64));
                Ok(Series::cons(h, go(s.tail(), n + 1)))
            })
        }
        go(self.tail(), 1)
    }

    /// Formal integral with constant `c`: prepend c, divide by 1, 2, 3, ...
    /// The stream argument may still be latent — this is the corecursive
    /// hook every elementary recurrence relies on.
    pub fn sint(c: C, s: &Series<C>) -> Series<C> {
        fn go<C: Ring>(s: Series<C>, n: u64) -> Series<C> {
            Series::defer(move || {
                let h = s.head()?.div_nat(n);
                Ok(Series::cons(h, go(s.tail(), n + 1)))
            })
        }
        Series::cons(c, go(s.clone(), 1))
    }

    /// `exp` with the head replaced by the exact constant 1; the caller is
    /// responsible for `u0 = 0` (see [`exp0`] for the checked front).
    pub fn exp0_unchecked(&self) -> Series<C> {
        let u = self.clone();
        Series::fix(move |w| Series::sint(C::one(), &u.sdif().mul(w)))
    }
}

/// exp of a series with zero constant term, exact over any field (and over
/// nested series, via [`Series::exp0_unchecked`]).
pub fn exp0<C: Field>(u: &Series<C>) -> Result<Series<C>> {
    if !u.head()?.is_zero() {
        return Err(Error::BadHead {
            func: "exp0",
            expected: "head 0",
        });
    }
    Ok(u.exp0_unchecked())
}

/// log of a series with unit constant term.
pub fn log1<C: Field>(u: &Series<C>) -> Result<Series<C>> {
    if !u.head()?.sub(&C::one()).is_zero() {
        return Err(Error::BadHead {
            func: "log1",
            expected: "head 1",
        });
    }
    Ok(Series::sint(C::zero(), &u.sdif().div(u)))
}

/// sqrt of a series with unit constant term.
pub fn sqrt1<C: Field>(u: &Series<C>) -> Result<Series<C>> {
    if !u.head()?.sub(&C::one()).is_zero() {
        return Err(Error::BadHead {
            func: "sqrt1",
            expected: "head 1",
        });
    }
    let u = u.clone();
    Ok(Series::fix(move |w| {
        Series::sint(C::one(), &u.sdif().div(w).map(|c| c.div_nat(2)))
    }))
}

impl<C: Field> Series<C> {
    /// `(u0:-uq) / v@(v0:-vq) = w0 :- (uq - w0*-vq)/v` with `w0 = u0/v0`.
    pub fn div(&self, other: &Series<C>) -> Series<C> {
        let (u, v) = (self.clone(), other.clone());
        Series::defer(move || {
            let v0 = v.head()?;
            if v0.is_zero() {
                return Err(Error::SingularDivision);
            }
            let w0 = u.head()?.div(&v0)?;
            let vq = v.tail();
            Ok(Series::cons(
                w0.clone(),
                u.tail().sub(&vq.scalar_mul(&w0)).div(&v),
            ))
        })
    }

    pub fn recip(&self) -> Series<C> {
        Series::constant(C::one()).div(self)
    }
}

/// Coefficients of `U(V(x))` via the infinite right-associative Horner
/// scheme; requires a zero inner constant term.
pub fn scompose<C: Field>(u: &Series<C>, v: &Series<C>) -> Series<C> {
    fn cmv<C: Ring>(u: Series<C>, vq: Series<C>) -> Series<C> {
        Series::defer(move || {
            let u0 = u.head()?;
            let uq = u.tail();
            Ok(Series::cons(u0, vq.mul(&cmv(uq, vq.clone()))))
        })
    }
    let (u, v) = (u.clone(), v.clone());
    Series::defer(move || {
        if !v.head()?.is_zero() {
            return Err(Error::NonzeroInnerConstant);
        }
        Ok(cmv(u, v.tail()))
    })
}

/// Series reversion: the `t` with `u(t(z)) = z`, for `u0 = 0`, `u1 != 0`.
///
/// The productive core solves `t = z - t^2 V(t)` through the substitution
/// `t = z*w`, `w = 1 :- (-w*w*scompose v t)`. A nonunit linear coefficient
/// is normalized away first and the answer rescaled: coefficient k of the
/// result picks up a factor `u1^{-k}`.
pub fn sreverse<C: Field>(u: &Series<C>) -> Series<C> {
    let u = u.clone();
    Series::defer(move || {
        if !u.head()?.is_zero() {
            return Err(Error::BadLinearTerm);
        }
        let u1 = u.tail().head()?;
        if u1.is_zero() {
            return Err(Error::BadLinearTerm);
        }
        if u1.sub(&C::one()).is_zero() {
            return Ok(sreverse_unit(&u));
        }
        let inv = u1.recip()?;
        let scaled = u.scalar_mul(&inv);
        let r = sreverse_unit(&scaled);
        // scale coefficient k by u1^{-k}
        fn rescale<C: Ring>(s: Series<C>, f: C, inv: C) -> Series<C> {
            Series::defer(move || {
                let h = s.head()?.mul(&f);
                Ok(Series::cons(
                    h,
                    rescale(s.tail(), f.mul(&inv), inv.clone()),
                ))
            })
        }
        Ok(rescale(r, C::one(), inv))
    })
}

fn sreverse_unit<C: Field>(u: &Series<C>) -> Series<C> {
    let v = u.tail().tail();
    let w = Series::fix(move |w| {
        let t = Series::cons(C::zero(), w.clone());
        Series::cons(
            C::one(),
            w.mul(w).mul(&compose_unchecked(&v, &t)).neg(),
        )
    });
    Series::cons(C::zero(), w)
}

/// Composition without the zero-head check on the inner series; the callers
/// guarantee it structurally.
fn compose_unchecked<C: Ring>(u: &Series<C>, v: &Series<C>) -> Series<C> {
    fn cmv<C: Ring>(u: Series<C>, vq: Series<C>) -> Series<C> {
        Series::defer(move || {
            let u0 = u.head()?;
            let uq = u.tail();
            Ok(Series::cons(u0, vq.mul(&cmv(uq, vq.clone()))))
        })
    }
    cmv(u.clone(), v.tail())
}

/// The naive transcription `t = z - t*t*scompose v t` from the reversion
/// equation; it is not productive and forcing any element reports
/// [`Error::NonProductive`]. Kept as the negative example.
pub fn sreverse_bottom<C: Field>(u: &Series<C>) -> Series<C> {
    let v = u.tail().tail();
    Series::fix(move |t| {
        svar::<C>().sub(&t.mul(t).mul(&compose_unchecked(&v, t)))
    })
}

/// Infinite sequence of Newton approximants to the reversion of `f`.
/// Approximant k agrees with `sreverse f` on at least 2^k coefficients.
pub fn newtreverse<C: Field>(f: &Series<C>) -> impl Iterator<Item = Series<C>> {
    let fd = f.sdif();
    let f = f.clone();
    std::iter::successors(Some(svar::<C>()), move |t| {
        let num = scompose(&f, t).sub(&svar());
        let den = scompose(&fd, t);
        Some(t.sub(&num.div(&den)))
    })
}

/// Tower from series: multiply coefficient k by k!.
pub fn ser_to_dtower<C: Ring>(s: &Series<C>) -> DTower<C> {
    fn sdloop<C: Ring>(s: Series<C>, f: C, n: i64) -> DTower<C> {
        DTower::defer(move || {
            let h = f.mul(&s.head()?);
            Ok(DTower::cons(
                h,
                sdloop(s.tail(), f.mul(&C::from_int(n)), n + 1),
            ))
        })
    }
    sdloop(s.clone(), C::one(), 1)
}

/// Series from tower: divide element k by k!.
pub fn dtower_to_ser<C: Field>(t: &DTower<C>) -> Series<C> {
    fn go<C: Field>(t: DTower<C>, f: C, n: i64) -> Series<C> {
        Series::defer(move || {
            let (h, tq) = t.uncons()?;
            Ok(Series::cons(
                h.div(&f)?,
                go(tq, f.mul(&C::from_int(n)), n + 1),
            ))
        })
    }
    go(t.clone(), C::one(), 1)
}

macro_rules! series_binop {
    ($trait:ident, $m:ident, $method:ident, $bound:ident) => {
        impl<C: $bound> std::ops::$trait for Series<C> {
            type Output = Series<C>;
            fn $m(self, rhs: Series<C>) -> Series<C> {
                Series::$method(&self, &rhs)
            }
        }
        impl<C: $bound> std::ops::$trait for &Series<C> {
            type Output = Series<C>;
            fn $m(self, rhs: &Series<C>) -> Series<C> {
                Series::$method(self, rhs)
            }
        }
    };
}
series_binop!(Add, add, add, Ring);
series_binop!(Sub, sub, sub, Ring);
series_binop!(Mul, mul, mul, Ring);
series_binop!(Div, div, div, Field);

impl<C: Ring> std::ops::Neg for Series<C> {
    type Output = Series<C>;
    fn neg(self) -> Series<C> {
        Series::neg(&self)
    }
}

/// Nested coefficients: a series is itself a ring (plus division by
/// integers), which is all the double-series pipeline needs.
impl<C: Ring> Ring for Series<C> {
    fn zero() -> Self {
        Series::zero()
    }
    fn one() -> Self {
        Series::constant(C::one())
    }
    fn add(&self, other: &Self) -> Self {
        Series::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        Series::sub(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        Series::mul(self, other)
    }
    fn neg(&self) -> Self {
        Series::neg(self)
    }
    fn from_int(n: i64) -> Self {
        Series::constant(C::from_int(n))
    }
    fn from_nat(n: &BigUint) -> Self {
        Series::constant(C::from_nat(n))
    }
    fn div_nat(&self, n: u64) -> Self {
        self.map(move |c| c.div_nat(n))
    }
}

/// Transcendental elementary functions on f64 (or any transcendental
/// field) series, each by its integral recurrence.
impl<C: Transcendental> Series<C> {
    pub fn exp(&self) -> Series<C> {
        let u = self.clone();
        Series::defer(move || {
            let u0 = u.head()?;
            Ok(Series::fix(move |w| {
                Series::sint(u0.exp(), &u.sdif().mul(w))
            }))
        })
    }

    pub fn log(&self) -> Series<C> {
        let u = self.clone();
        Series::defer(move || {
            let u0 = u.head()?;
            Ok(Series::sint(u0.log(), &u.sdif().div(&u)))
        })
    }

    pub fn sqrt(&self) -> Series<C> {
        let u = self.clone();
        Series::defer(move || {
            let u0 = u.head()?;
            Ok(Series::fix(move |w| {
                Series::sint(u0.sqrt(), &u.sdif().div(w).map(|c| c.div_nat(2)))
            }))
        })
    }

    /// The sin/cos pair sharing one mutual recurrence.
    pub fn sincos(&self) -> (Series<C>, Series<C>) {
        let u = self.clone();
        let uc = self.clone();
        let slot_s: Rc<RefCell<Option<Series<C>>>> = Rc::new(RefCell::new(None));
        let slot_c: Rc<RefCell<Option<Series<C>>>> = Rc::new(RefCell::new(None));
        let (hs, hc) = (Rc::clone(&slot_s), Rc::clone(&slot_c));
        let ps = Series::defer(move || hs.borrow().clone().ok_or(Error::NonProductive));
        let pc = Series::defer(move || hc.borrow().clone().ok_or(Error::NonProductive));
        let sin_s = Series::defer({
            let u = u.clone();
            move || {
                let u0 = u.head()?;
                Ok(Series::sint(u0.sin(), &u.sdif().mul(&pc)))
            }
        });
        let cos_s = Series::defer({
            move || {
                let u0 = uc.head()?;
                Ok(Series::sint(u0.cos(), &uc.sdif().mul(&ps).neg()))
            }
        });
        *slot_s.borrow_mut() = Some(sin_s.clone());
        *slot_c.borrow_mut() = Some(cos_s.clone());
        (sin_s, cos_s)
    }

    pub fn sin(&self) -> Series<C> {
        self.sincos().0
    }

    pub fn cos(&self) -> Series<C> {
        self.sincos().1
    }

    pub fn atan(&self) -> Series<C> {
        let u = self.clone();
        Series::defer(move || {
            let u0 = u.head()?;
            let one = Series::constant(C::one());
            Ok(Series::sint(u0.atan(), &u.sdif().div(&one.add(&u.sqr()))))
        })
    }

    pub fn tan(&self) -> Series<C> {
        let (s, c) = self.sincos();
        s.div(&c)
    }

    pub fn asin(&self) -> Series<C> {
        let u = self.clone();
        Series::defer(move || {
            let u0 = u.head()?;
            let one = Series::constant(C::one());
            let root = one.sub(&u.sqr()).sqrt();
            Ok(Series::sint(u0.asin(), &u.sdif().div(&root)))
        })
    }

    pub fn acos(&self) -> Series<C> {
        let u = self.clone();
        Series::defer(move || {
            let u0 = u.head()?;
            let one = Series::constant(C::one());
            let root = one.sub(&u.sqr()).sqrt();
            Ok(Series::sint(u0.acos(), &u.sdif().div(&root).neg()))
        })
    }
}
