//! Reversion and composition of derivative chains.
//!
//! `revchain` builds the derivative tower of the inverse function by
//! iterating the chain-rule change of variable:
//! `revchain f x = x :> revch g1` with `g1 = 1 / df (f (dvar x))` and
//! `revch (h1 :> hq) = h1 :> revch (g1 * hq)`.
//!
//! `compchain` assembles the derivatives of `h(x) = g(f(x))` without the
//! Faà di Bruno combinatorics: each stage holds a segment of towers
//! `[P_1..P_n]` (the f-dependent polynomials multiplying `g^(k)`); `diffg`
//! expands each `P` to `[dP, f1*P]`, `fuse` merges adjacent fragments that
//! share the same g-order, and the scalarization dots the segment heads
//! with the chain of g-derivative values.

use crate::dtower::{dvar, DTower};
use crate::field::{Field, Ring};
use crate::lazy::Stream;

/// Derivative tower of the inverse of `f` at `y = f(x)`; the head is `x`.
pub fn revchain<C: Field>(f: impl Fn(&DTower<C>) -> DTower<C>, x: C) -> DTower<C> {
    let g1 = f(&dvar(x.clone())).df().recip();
    DTower::cons(x, revch(g1.clone(), g1))
}

fn revch<C: Ring>(g1: DTower<C>, h: DTower<C>) -> DTower<C> {
    DTower::defer(move || {
        let (h1, hq) = h.uncons()?;
        Ok(DTower::cons(h1, revch(g1.clone(), g1.mul(&hq))))
    })
}

/// The sequence `h, h', h'', ...` of derivatives of `h(x) = g(f(x))`,
/// where `g` is the tower of the outer function at `y = hd f` and `f` the
/// tower of the inner function at `x`.
pub fn compchain<C: Ring>(g: &DTower<C>, f: &DTower<C>) -> Stream<C> {
    let f1 = f.df();
    let lgd = g.df().to_stream();
    let g = g.clone();
    Stream::cons_lazy(
        move || g.head(),
        move || Ok(stage(vec![f1.clone()], f1, lgd)),
    )
}

fn stage<C: Ring>(seg: Vec<DTower<C>>, f1: DTower<C>, lgd: Stream<C>) -> Stream<C> {
    let seg2 = seg.clone();
    let (f1b, lgdb) = (f1.clone(), lgd.clone());
    Stream::cons_lazy(
        move || {
            let gs = lgd.take(seg.len())?;
            let mut acc = C::zero();
            for (p, gk) in seg.iter().zip(gs.iter()) {
                acc = acc.add(&p.head()?.mul(gk));
            }
            Ok(acc)
        },
        move || Ok(stage(fuse(diffg(&seg2, &f1b)), f1b.clone(), lgdb)),
    )
}

fn diffg<C: Ring>(seg: &[DTower<C>], f1: &DTower<C>) -> Vec<DTower<C>> {
    let mut out = Vec::with_capacity(2 * seg.len());
    for p in seg {
        out.push(p.df());
        out.push(f1.mul(p));
    }
    out
}

fn fuse<C: Ring>(expanded: Vec<DTower<C>>) -> Vec<DTower<C>> {
    let mut out = Vec::with_capacity(expanded.len() / 2 + 1);
    let mut it = expanded.into_iter();
    out.push(it.next().expect("nonempty segment"));
    let rest: Vec<_> = it.collect();
    for pair in rest.chunks(2) {
        match pair {
            [a, b] => out.push(a.add(b)),
            [a] => out.push(a.clone()),
            _ => unreachable!(),
        }
    }
    out
}

/// `compchain` re-wrapped as a derivative tower.
pub fn compchain_tower<C: Ring>(g: &DTower<C>, f: &DTower<C>) -> DTower<C> {
    fn wrap<C: Ring>(s: Stream<C>) -> DTower<C> {
        DTower::defer(move || Ok(DTower::cons(s.head()?, wrap(s.tail()?))))
    }
    wrap(compchain(g, f))
}
