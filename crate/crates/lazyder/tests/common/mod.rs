//! Shared helpers for the integration tests: a brute-force truncated
//! polynomial oracle (written directly from the Cauchy-product and long
//! division definitions, no streams involved) and a tiny deterministic RNG.

// shared between test targets; not every target uses every helper
#![allow(dead_code)]

use lazyder::field::{rat_of, Rat, Ring};

pub fn rt(p: i64, q: i64) -> Rat {
    rat_of(p, q)
}

pub fn poly_mul(a: &[Rat], b: &[Rat], n: usize) -> Vec<Rat> {
    let mut out = vec![<Rat as Ring>::zero(); n];
    for k in 0..n {
        for i in 0..=k {
            if i < a.len() && k - i < b.len() {
                out[k] = &out[k] + &a[i] * &b[k - i];
            }
        }
    }
    out
}

/// Long division; requires `b[0] != 0`.
pub fn poly_div(a: &[Rat], b: &[Rat], n: usize) -> Vec<Rat> {
    assert!(!num::Zero::is_zero(&b[0]));
    let mut q = Vec::with_capacity(n);
    for k in 0..n {
        let mut acc = if k < a.len() {
            a[k].clone()
        } else {
            <Rat as Ring>::zero()
        };
        for (i, qi) in q.iter().enumerate().take(k) {
            if k - i < b.len() {
                acc = &acc - qi * &b[k - i];
            }
        }
        q.push(&acc / &b[0]);
    }
    q
}

/// Truncated Horner composition; requires `v[0] == 0`.
pub fn poly_compose(u: &[Rat], v: &[Rat], n: usize) -> Vec<Rat> {
    assert!(v.is_empty() || num::Zero::is_zero(&v[0]));
    let mut acc = vec![<Rat as Ring>::zero(); n];
    for uk in u.iter().rev() {
        acc = poly_mul(&acc, v, n);
        if !acc.is_empty() {
            acc[0] = &acc[0] + uk;
        }
    }
    acc
}

pub fn poly_sdif(a: &[Rat]) -> Vec<Rat> {
    a.iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c * Rat::from_int(k as i64))
        .collect()
}

pub fn poly_sint(c: Rat, a: &[Rat]) -> Vec<Rat> {
    let mut out = vec![c];
    for (k, v) in a.iter().enumerate() {
        out.push(v.div_nat(k as u64 + 1));
    }
    out
}

/// Minimal xorshift-style generator for the deterministic random suites.
pub struct Rng(u64);

impl Rng {
    pub fn new(seed: u64) -> Self {
        Rng(seed.max(1))
    }

    pub fn next(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        self.0 = x;
        x
    }

    pub fn rat(&mut self) -> Rat {
        let p = (self.next() % 61) as i64 - 30;
        let q = (self.next() % 11) as i64 + 1;
        rt(p, q)
    }

    pub fn rats(&mut self, n: usize) -> Vec<Rat> {
        (0..n).map(|_| self.rat()).collect()
    }
}
