//! Derivative towers: the value of an expression at a point together with
//! the infinite chain of its derivatives, closed under arithmetic.
//!
//! A tower is either `Node(head, tail)` — the current derivative value and
//! the tower of the next one — or `Constant(c)`, semantically
//! `[c, 0, 0, ...]` unrolled forever. Every operation treats the two
//! variants identically on any forced prefix; keeping `Constant` alive
//! through arithmetic is a real performance lever (scalar paths instead of
//! full convolutions).
//!
//! The product is the binomial convolution
//! `(x*y)^(n) = sum_k C(n,k) x^(k) y^(n-k)`, walking Pascal-triangle rows
//! while incrementally reversing a prefix of one operand; cost is O(n^2)
//! coefficient multiplications for n elements. The Leibniz one-liner is
//! kept as [`DTower::naive_mul`] for tests and benchmarks — its cost is
//! exponential in the prefix length.

use std::cell::RefCell;
use std::rc::Rc;

use num::bigint::BigUint;
use num::One;

use crate::error::{Error, Result};
use crate::field::{Field, Ring, Transcendental};
use crate::lazy::{Lazy, Stream};

/// One forced cell of a tower.
#[derive(Clone)]
pub enum View<C: Ring> {
    Constant(C),
    Node(C, DTower<C>),
}

pub struct DTower<C: Ring>(Rc<Lazy<View<C>>>);

impl<C: Ring> Clone for DTower<C> {
    fn clone(&self) -> Self {
        DTower(Rc::clone(&self.0))
    }
}

// Opaque: forcing elements for display would have side effects.
impl<C: Ring> std::fmt::Debug for DTower<C> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("DTower(..)")
    }
}

/// The variable: `[x, 1, 0, 0, ...]`.
pub fn dvar<C: Ring>(x: C) -> DTower<C> {
    DTower::cons(x, DTower::constant(C::one()))
}

/// A constant: `[c, 0, 0, ...]`, kept in the optimized variant.
pub fn dcst<C: Ring>(c: C) -> DTower<C> {
    DTower::constant(c)
}

impl<C: Ring> DTower<C> {
    pub fn constant(c: C) -> Self {
        DTower(Rc::new(Lazy::ready(View::Constant(c))))
    }

    pub fn cons(head: C, tail: DTower<C>) -> Self {
        DTower(Rc::new(Lazy::ready(View::Node(head, tail))))
    }

    /// A tower whose structure is decided only when first inspected.
    pub fn defer(f: impl FnOnce() -> Result<DTower<C>> + 'static) -> Self {
        DTower(Rc::new(Lazy::new(move || f()?.view())))
    }

    /// The unique tower `t` with `t = builder(t)` for a productive builder.
    pub fn fix(builder: impl FnOnce(&DTower<C>) -> DTower<C>) -> Self {
        let slot: Rc<RefCell<Option<DTower<C>>>> = Rc::new(RefCell::new(None));
        let handle = Rc::clone(&slot);
        let proxy = DTower::defer(move || handle.borrow().clone().ok_or(Error::NonProductive));
        let built = builder(&proxy);
        *slot.borrow_mut() = Some(built.clone());
        built
    }

    /// Two mutually self-referential towers (the `sincos` pair).
    pub fn fix2(
        builder: impl FnOnce(&DTower<C>, &DTower<C>) -> (DTower<C>, DTower<C>),
    ) -> (Self, Self) {
        let sa: Rc<RefCell<Option<DTower<C>>>> = Rc::new(RefCell::new(None));
        let sb: Rc<RefCell<Option<DTower<C>>>> = Rc::new(RefCell::new(None));
        let (ha, hb) = (Rc::clone(&sa), Rc::clone(&sb));
        let pa = DTower::defer(move || ha.borrow().clone().ok_or(Error::NonProductive));
        let pb = DTower::defer(move || hb.borrow().clone().ok_or(Error::NonProductive));
        let (a, b) = builder(&pa, &pb);
        *sa.borrow_mut() = Some(a.clone());
        *sb.borrow_mut() = Some(b.clone());
        (a, b)
    }

    pub fn view(&self) -> Result<View<C>> {
        self.0.force()
    }

    /// Head and tail, with `Constant` unrolled one step.
    pub fn uncons(&self) -> Result<(C, DTower<C>)> {
        match self.view()? {
            View::Constant(c) => Ok((c, DTower::constant(C::zero()))),
            View::Node(h, t) => Ok((h, t)),
        }
    }

    pub fn head(&self) -> Result<C> {
        Ok(self.uncons()?.0)
    }

    /// The derivative: the tail of the chain.
    pub fn df(&self) -> DTower<C> {
        let t = self.clone();
        DTower::defer(move || Ok(t.uncons()?.1))
    }

    /// First `n` elements, forced in order.
    pub fn take(&self, n: usize) -> Result<Vec<C>> {
        let mut out = Vec::with_capacity(n);
        let mut cur = self.clone();
        while out.len() < n {
            match cur.view()? {
                View::Constant(c) => {
                    out.push(c);
                    while out.len() < n {
                        out.push(C::zero());
                    }
                }
                View::Node(h, t) => {
                    out.push(h);
                    cur = t;
                }
            }
        }
        Ok(out)
    }

    pub fn to_stream(&self) -> Stream<C> {
        let t = self.clone();
        Stream::cons_lazy(
            {
                let t = t.clone();
                move || t.head()
            },
            move || Ok(t.df().to_stream()),
        )
    }

    pub fn add(&self, other: &DTower<C>) -> DTower<C> {
        let (a, b) = (self.clone(), other.clone());
        DTower::defer(move || {
            Ok(match (a.view()?, b.view()?) {
                (View::Constant(x), View::Constant(y)) => DTower::constant(x.add(&y)),
                (View::Constant(x), View::Node(h, t)) => DTower::cons(x.add(&h), t),
                (View::Node(h, t), View::Constant(y)) => DTower::cons(h.add(&y), t),
                (View::Node(h, t), View::Node(k, u)) => DTower::cons(h.add(&k), t.add(&u)),
            })
        })
    }

    pub fn sub(&self, other: &DTower<C>) -> DTower<C> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> DTower<C> {
        let a = self.clone();
        DTower::defer(move || {
            Ok(match a.view()? {
                View::Constant(x) => DTower::constant(x.neg()),
                View::Node(h, t) => DTower::cons(h.neg(), t.neg()),
            })
        })
    }

    pub fn scalar_mul(&self, c: &C) -> DTower<C> {
        let a = self.clone();
        let c = c.clone();
        DTower::defer(move || {
            Ok(match a.view()? {
                View::Constant(x) => DTower::constant(c.mul(&x)),
                View::Node(h, t) => DTower::cons(c.mul(&h), t.scalar_mul(&c)),
            })
        })
    }

    /// Binomial-convolution product.
    pub fn mul(&self, other: &DTower<C>) -> DTower<C> {
        let (a, b) = (self.clone(), other.clone());
        DTower::defer(move || {
            Ok(match (a.view()?, b.view()?) {
                (View::Constant(x), View::Constant(y)) => DTower::constant(x.mul(&y)),
                (View::Constant(x), View::Node(..)) => b.scalar_mul(&x),
                (View::Node(..), View::Constant(y)) => a.scalar_mul(&y),
                (View::Node(..), View::Node(..)) => convloop(a.clone(), b.clone(), Vec::new(), 0),
            })
        })
    }

    /// Leibniz-rule reference product: `(x0:>x')(y0:>y') = x0 y0 :> x y' + x' y`.
    /// Observationally equal to [`DTower::mul`]; exponential cost.
    pub fn naive_mul(&self, other: &DTower<C>) -> DTower<C> {
        let (a, b) = (self.clone(), other.clone());
        DTower::defer(move || {
            if let (View::Constant(x), View::Constant(y)) = (a.view()?, b.view()?) {
                return Ok(DTower::constant(x.mul(&y)));
            }
            let (x0, xq) = a.uncons()?;
            let (y0, yq) = b.uncons()?;
            Ok(DTower::cons(
                x0.mul(&y0),
                a.naive_mul(&yq).add(&xq.naive_mul(&b)),
            ))
        })
    }

    pub fn sqr(&self) -> DTower<C> {
        self.mul(self)
    }

    /// Right fold over the finite node prefix plus the terminating constant.
    /// Fails with [`Error::Unbounded`] when no `Constant` variant shows up
    /// within `bound` nodes.
    pub fn fold(&self, bound: usize, init: C, op: impl Fn(&C, &C) -> C) -> Result<C> {
        let mut heads = Vec::new();
        let mut cur = self.clone();
        for _ in 0..=bound {
            match cur.view()? {
                View::Constant(c) => {
                    let mut acc = op(&c, &init);
                    for h in heads.iter().rev() {
                        acc = op(h, &acc);
                    }
                    return Ok(acc);
                }
                View::Node(h, t) => {
                    heads.push(h);
                    cur = t;
                }
            }
        }
        Err(Error::Unbounded(bound))
    }

    pub fn sum(&self, bound: usize) -> Result<C> {
        self.fold(bound, C::zero(), |a, b| a.add(b))
    }

    pub fn product(&self, bound: usize) -> Result<C> {
        self.fold(bound, C::one(), |a, b| a.mul(b))
    }
}

impl<C: Field> DTower<C> {
    /// Quotient via the trimmed Pascal triangle and self-reference to the
    /// result: `w = x0/y0 :> divloop bint xq yq []` with element n solving
    /// `w_n = (x_n - sum_{k<n} C(n,k) w_k y_{n-k}) / y0`.
    pub fn div(&self, other: &DTower<C>) -> DTower<C> {
        let (a, b) = (self.clone(), other.clone());
        DTower::defer(move || {
            Ok(match (a.view()?, b.view()?) {
                (View::Constant(x), View::Constant(y)) => DTower::constant(x.div(&y)?),
                (View::Node(..), View::Constant(y)) => a.scalar_mul(&y.recip()?),
                _ => {
                    let (x0, xq) = a.uncons()?;
                    let (y0, yq) = b.uncons()?;
                    let h = x0.div(&y0)?;
                    DTower::fix(move |w| {
                        DTower::cons(h.clone(), divloop(xq, yq, y0, w.clone(), Vec::new(), 0))
                    })
                }
            })
        })
    }

    pub fn recip(&self) -> DTower<C> {
        DTower::constant(C::one()).div(self)
    }
}

/// `sum_i coeffs[i] * list[i] * tower_i`, over `min(len(coeffs), len(list))`
/// leading elements of the tower.
fn dzip3<C: Ring>(coeffs: &[C], list: &[C], tower: &DTower<C>) -> Result<C> {
    let mut acc = C::zero();
    let mut cur = tower.clone();
    for (c, l) in coeffs.iter().zip(list.iter()) {
        let (h, t) = cur.uncons()?;
        acc = acc.add(&c.mul(l).mul(&h));
        cur = t;
    }
    Ok(acc)
}

fn convloop<C: Ring>(x: DTower<C>, y: DTower<C>, rev: Vec<C>, n: usize) -> DTower<C> {
    DTower::defer(move || {
        let (y0, yq) = y.uncons()?;
        let mut an = Vec::with_capacity(rev.len() + 1);
        an.push(y0);
        an.extend(rev.iter().cloned());
        let row = binom_row_in::<C>(n)?;
        let head = dzip3(&row, &an, &x)?;
        Ok(DTower::cons(head, convloop(x.clone(), yq, an, n + 1)))
    })
}

fn divloop<C: Field>(
    p: DTower<C>,
    y: DTower<C>,
    y0: C,
    w: DTower<C>,
    rev: Vec<C>,
    n: usize,
) -> DTower<C> {
    DTower::defer(move || {
        let (p1, pr) = p.uncons()?;
        let (y1, yr) = y.uncons()?;
        let mut yt = Vec::with_capacity(rev.len() + 1);
        yt.push(y1);
        yt.extend(rev.iter().cloned());
        let row = bint_row_in::<C>(n)?;
        let head = p1.sub(&dzip3(&row, &yt, &w)?).div(&y0)?;
        Ok(DTower::cons(
            head,
            divloop(pr, yr, y0.clone(), w.clone(), yt, n + 1),
        ))
    })
}

impl<C: Transcendental> DTower<C> {
    pub fn exp(&self) -> DTower<C> {
        let x = self.clone();
        DTower::defer(move || {
            Ok(match x.view()? {
                View::Constant(c) => DTower::constant(c.exp()),
                View::Node(x0, xq) => {
                    DTower::fix(move |w| DTower::cons(x0.exp(), xq.mul(w)))
                }
            })
        })
    }

    pub fn log(&self) -> DTower<C> {
        let x = self.clone();
        DTower::defer(move || {
            Ok(match x.view()? {
                View::Constant(c) => DTower::constant(c.log()),
                View::Node(ref x0, ref xq) => DTower::cons(x0.log(), xq.div(&x)),
            })
        })
    }

    pub fn sqrt(&self) -> DTower<C> {
        let x = self.clone();
        DTower::defer(move || {
            Ok(match x.view()? {
                View::Constant(c) => DTower::constant(c.sqrt()),
                View::Node(x0, xq) => DTower::fix(move |w| {
                    DTower::cons(x0.sqrt(), xq.div(w).scalar_mul(&C::one().div_nat(2)))
                }),
            })
        })
    }

    /// The mutually recursive pair `a = sin x :> x'*b; b = cos x :> -(x'*a)`.
    pub fn sincos(&self) -> (DTower<C>, DTower<C>) {
        let x = self.clone();
        let xc = self.clone();
        DTower::fix2(move |a, b| {
            let sin_t = DTower::defer({
                let x = x.clone();
                let b = b.clone();
                move || {
                    Ok(match x.view()? {
                        View::Constant(c) => DTower::constant(c.sin()),
                        View::Node(x0, xq) => DTower::cons(x0.sin(), xq.mul(&b)),
                    })
                }
            });
            let cos_t = DTower::defer({
                let x = xc.clone();
                let a = a.clone();
                move || {
                    Ok(match x.view()? {
                        View::Constant(c) => DTower::constant(c.cos()),
                        View::Node(x0, xq) => DTower::cons(x0.cos(), xq.mul(&a).neg()),
                    })
                }
            });
            (sin_t, cos_t)
        })
    }

    pub fn sin(&self) -> DTower<C> {
        self.sincos().0
    }

    pub fn cos(&self) -> DTower<C> {
        self.sincos().1
    }

    pub fn tan(&self) -> DTower<C> {
        let x = self.clone();
        DTower::defer(move || {
            Ok(match x.view()? {
                View::Constant(c) => DTower::constant(c.tan()),
                View::Node(x0, xq) => DTower::fix(move |w| {
                    let one = DTower::constant(C::one());
                    DTower::cons(x0.tan(), xq.mul(&one.add(&w.sqr())))
                }),
            })
        })
    }

    pub fn atan(&self) -> DTower<C> {
        let x = self.clone();
        DTower::defer(move || {
            Ok(match x.view()? {
                View::Constant(c) => DTower::constant(c.atan()),
                View::Node(ref x0, ref xq) => {
                    let one = DTower::constant(C::one());
                    DTower::cons(x0.atan(), xq.div(&one.add(&x.sqr())))
                }
            })
        })
    }

    pub fn asin(&self) -> DTower<C> {
        let x = self.clone();
        DTower::defer(move || {
            Ok(match x.view()? {
                View::Constant(c) => DTower::constant(c.asin()),
                View::Node(ref x0, ref xq) => {
                    let one = DTower::constant(C::one());
                    DTower::cons(x0.asin(), xq.div(&one.sub(&x.sqr()).sqrt()))
                }
            })
        })
    }

    pub fn acos(&self) -> DTower<C> {
        let x = self.clone();
        DTower::defer(move || {
            Ok(match x.view()? {
                View::Constant(c) => DTower::constant(c.acos()),
                View::Node(ref x0, ref xq) => {
                    let one = DTower::constant(C::one());
                    DTower::cons(x0.acos(), xq.div(&one.sub(&x.sqr()).sqrt()).neg())
                }
            })
        })
    }
}

macro_rules! tower_binop {
    ($trait:ident, $m:ident, $method:ident, $bound:ident) => {
        impl<C: $bound> std::ops::$trait for DTower<C> {
            type Output = DTower<C>;
            fn $m(self, rhs: DTower<C>) -> DTower<C> {
                DTower::$method(&self, &rhs)
            }
        }
        impl<C: $bound> std::ops::$trait for &DTower<C> {
            type Output = DTower<C>;
            fn $m(self, rhs: &DTower<C>) -> DTower<C> {
                DTower::$method(self, rhs)
            }
        }
    };
}
tower_binop!(Add, add, add, Ring);
tower_binop!(Sub, sub, sub, Ring);
tower_binop!(Mul, mul, mul, Ring);
tower_binop!(Div, div, div, Field);

impl<C: Ring> std::ops::Neg for DTower<C> {
    type Output = DTower<C>;
    fn neg(self) -> DTower<C> {
        DTower::neg(&self)
    }
}
impl<C: Ring> std::ops::Neg for &DTower<C> {
    type Output = DTower<C>;
    fn neg(self) -> DTower<C> {
        DTower::neg(self)
    }
}

/// The lazily generated Pascal triangle, as in
/// `binoms = [1] : map (\b -> zipWith (+) (0:b) (b++[0])) binoms`,
/// with `bint = map init (tail binoms)` — the trimmed triangle the
/// division walks.
pub struct PascalTriangle {
    pub binoms: Stream<Vec<BigUint>>,
    pub bint: Stream<Vec<BigUint>>,
}

impl PascalTriangle {
    fn new() -> Self {
        let binoms = Stream::fix(|b| {
            Stream::cons(
                vec![BigUint::one()],
                b.map(|row: Vec<BigUint>| {
                    let n = row.len();
                    let mut next = Vec::with_capacity(n + 1);
                    next.push(row[0].clone());
                    for i in 1..n {
                        next.push(&row[i - 1] + &row[i]);
                    }
                    next.push(row[n - 1].clone());
                    next
                }),
            )
        });
        let bint = Stream::defer({
            let binoms = binoms.clone();
            move || {
                Ok(binoms.tail()?.map(|mut row: Vec<BigUint>| {
                    row.pop();
                    row
                }))
            }
        });
        PascalTriangle { binoms, bint }
    }

    pub fn row(&self, n: usize) -> Result<Vec<BigUint>> {
        self.binoms.nth(n)
    }

    pub fn bint_row(&self, n: usize) -> Result<Vec<BigUint>> {
        self.bint.nth(n)
    }
}

thread_local! {
    static PASCAL: PascalTriangle = PascalTriangle::new();
}

/// The shared, memoized Pascal triangle for this thread.
pub fn pascal() -> PascalTriangle {
    PASCAL.with(|p| PascalTriangle {
        binoms: p.binoms.clone(),
        bint: p.bint.clone(),
    })
}

fn binom_row_in<C: Ring>(n: usize) -> Result<Vec<C>> {
    Ok(PASCAL.with(|p| p.row(n))?.iter().map(C::from_nat).collect())
}

fn bint_row_in<C: Ring>(n: usize) -> Result<Vec<C>> {
    Ok(PASCAL.with(|p| p.bint_row(n))?.iter().map(C::from_nat).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{close, rat_of, Rat};
    use num::{BigUint, Zero};

    fn rt(p: i64, q: i64) -> Rat {
        rat_of(p, q)
    }

    #[test]
    fn dvar_and_dcst_shapes() {
        assert_eq!(
            dvar(rt(3, 1)).take(4).unwrap(),
            vec![rt(3, 1), rt(1, 1), rt(0, 1), rt(0, 1)]
        );
        assert_eq!(
            dcst(rt(5, 1)).take(3).unwrap(),
            vec![rt(5, 1), rt(0, 1), rt(0, 1)]
        );
    }

    #[test]
    fn square_derivative() {
        let x = dvar(rt(3, 1));
        let sq = x.mul(&x);
        assert_eq!(
            sq.take(4).unwrap(),
            vec![rt(9, 1), rt(6, 1), rt(2, 1), rt(0, 1)]
        );
        assert_eq!(sq.df().head().unwrap(), rt(6, 1));
    }

    #[test]
    fn linear_ops() {
        let s = dvar(rt(1, 1)).add(&dcst(rt(2, 1)));
        assert_eq!(s.take(3).unwrap(), vec![rt(3, 1), rt(1, 1), rt(0, 1)]);
        let m = dvar(rt(3, 1)).scalar_mul(&rt(2, 1));
        assert_eq!(m.take(3).unwrap(), vec![rt(6, 1), rt(2, 1), rt(0, 1)]);
        let t = dvar(rt(1, 1)).sqr();
        assert!(t.sub(&t).take(5).unwrap().iter().all(|c| Zero::is_zero(c)));
    }

    #[test]
    fn naive_mul_matches_on_small_prefixes() {
        let a = dvar(rt(2, 1)).add(&dcst(rt(1, 3)));
        let b = a.sqr().add(&dvar(rt(2, 1)));
        assert_eq!(
            a.naive_mul(&b).take(8).unwrap(),
            a.mul(&b).take(8).unwrap()
        );
        assert_eq!(
            dvar(rt(2, 1)).naive_mul(&dcst(rt(3, 1))).take(3).unwrap(),
            vec![rt(6, 1), rt(3, 1), rt(0, 1)]
        );
    }

    #[test]
    fn third_derivative_of_exp_sin() {
        // d^3/dx^3 (e^{-x} sin x) at 0 is 2.
        let v = dvar(0.0f64);
        let t = v.neg().exp().mul(&v.sin());
        let d3 = t.df().df().df().head().unwrap();
        assert!(close(d3, 2.0, 1e-12), "{d3}");
    }

    #[test]
    fn division_golden() {
        let x = dvar(rt(2, 1));
        assert_eq!(
            x.div(&x).take(4).unwrap(),
            vec![rt(1, 1), rt(0, 1), rt(0, 1), rt(0, 1)]
        );
        assert_eq!(
            dcst(rt(4, 1)).recip().take(2).unwrap(),
            vec![rt(1, 4), rt(0, 1)]
        );
    }

    #[test]
    fn division_by_zero_head_is_singular() {
        let num = dvar(rt(1, 1));
        let den = dvar(rt(0, 1)); // head 0
        let q = num.div(&den);
        assert_eq!(q.head(), Err(Error::SingularDivision));
    }

    #[test]
    fn exp_tower_at_zero() {
        let t = dvar(0.0f64).exp();
        assert_eq!(t.take(5).unwrap(), vec![1.0; 5]);
    }

    #[test]
    fn sin_tower_at_zero() {
        let t = dvar(0.0f64).sin();
        assert_eq!(t.take(6).unwrap(), vec![0.0, 1.0, 0.0, -1.0, 0.0, 1.0]);
    }

    #[test]
    fn atan_tower_at_zero() {
        let t = dvar(0.0f64).atan();
        let got = t.take(8).unwrap();
        let want = [0.0, 1.0, 0.0, -2.0, 0.0, 24.0, 0.0, -720.0];
        for (g, w) in got.iter().zip(want.iter()) {
            assert!(close(*g, *w, 1e-9), "{got:?}");
        }
    }

    #[test]
    fn pascal_rows() {
        let p = pascal();
        let rows: Vec<Vec<u64>> = (0..4)
            .map(|n| {
                p.row(n)
                    .unwrap()
                    .iter()
                    .map(|b| u64::try_from(b).unwrap())
                    .collect()
            })
            .collect();
        assert_eq!(
            rows,
            vec![vec![1], vec![1, 1], vec![1, 2, 1], vec![1, 3, 3, 1]]
        );
        let bints: Vec<Vec<u64>> = (0..3)
            .map(|n| {
                p.bint_row(n)
                    .unwrap()
                    .iter()
                    .map(|b| u64::try_from(b).unwrap())
                    .collect()
            })
            .collect();
        assert_eq!(bints, vec![vec![1], vec![1, 2], vec![1, 3, 3]]);
        let sum: BigUint = p.row(20).unwrap().iter().sum();
        assert_eq!(sum, BigUint::from(1u64 << 20));
    }

    #[test]
    fn fold_reaches_constant() {
        let t = DTower::cons(
            rt(11, 1),
            DTower::cons(rt(22, 1), DTower::cons(rt(3, 1), dcst(rt(3, 1)))),
        );
        assert_eq!(t.product(10).unwrap(), rt(2178, 1));
        assert_eq!(dcst(rt(7, 1)).sum(10).unwrap(), rt(7, 1));
        // dvar does reach Constant; an elementary tower never does.
        assert_eq!(dvar(rt(5, 1)).sum(10).unwrap(), rt(6, 1));
        let never = dvar(0.0f64).sin();
        assert_eq!(never.sum(10), Err(Error::Unbounded(10)));
    }

    #[test]
    fn constant_variant_transparency() {
        let zeros: DTower<Rat> = DTower::fix(|z| DTower::cons(rt(0, 1), z.clone()));
        let unrolled = DTower::cons(rt(5, 1), zeros);
        let packed = dcst(rt(5, 1));
        let v = dvar(rt(2, 3));
        for (a, b) in [
            (v.mul(&packed), v.mul(&unrolled)),
            (v.add(&packed), v.add(&unrolled)),
            (v.div(&packed), v.div(&unrolled)),
            (packed.sub(&v), unrolled.sub(&v)),
        ] {
            assert_eq!(a.take(8).unwrap(), b.take(8).unwrap());
        }
    }

    #[test]
    fn leibniz_and_chain_rule() {
        let a = dvar(rt(2, 5)).sqr().add(&dcst(rt(1, 2)));
        let b = dvar(rt(2, 5)).add(&dcst(rt(3, 1))).mul(&dvar(rt(2, 5)));
        let lhs = a.mul(&b).df();
        let rhs = a.mul(&b.df()).add(&a.df().mul(&b));
        assert_eq!(lhs.take(10).unwrap(), rhs.take(10).unwrap());

        let u = dvar(0.7f64).sin();
        let lhs = u.exp().df();
        let rhs = u.df().mul(&u.exp());
        for (l, r) in lhs.take(8).unwrap().iter().zip(rhs.take(8).unwrap()) {
            assert!(close(*l, r, 1e-10));
        }
    }

    #[test]
    fn finite_difference_cross_check() {
        let x = 0.5f64;
        let h = 1e-6;
        let cases: Vec<(fn(f64) -> f64, DTower<f64>)> = vec![
            (f64::exp, dvar(x).exp()),
            (f64::sin, dvar(x).sin()),
            (f64::atan, dvar(x).atan()),
        ];
        for (f, tower) in cases {
            let central = (f(x + h) - f(x - h)) / (2.0 * h);
            let d = tower.df().head().unwrap();
            assert!(close(d, central, 1e-6), "{d} vs {central}");
        }
    }
}
