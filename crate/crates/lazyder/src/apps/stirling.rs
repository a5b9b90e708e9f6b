//! The Stirling correction series `S(1/n)` derived two independent ways,
//! both exactly over rationals.
//!
//! The back-substitution route solves the factorial recurrence
//! `S(x/(1-x)) = S(x) G(x)` with
//! `G = exp(-1 + log(1-x)/2 - stl(log(1-x))) = 1 + x^2 F(x)`, turning
//! `s_1 R_1 + x s_2 R_2 + ... = F S` into a corecursive back-substitution,
//! with `R_{m+1} = (R_m + 1)/(1-x)`.
//!
//! The Laplace route expands the factorial integrand around its maximum:
//! a double series `exp0 (0 :- w :- 0)` over nested rational series,
//! Gaussian moments supplied by double factorials, and a diagonal
//! accumulation over the `p + j = const` lines of the array.

use num::bigint::BigInt;
use num::rational::BigRational;

use crate::error::Result;
use crate::field::{Rat, Ring};
use crate::lazy::Stream;
use crate::pseries::{log1, svar, Series};

fn rone() -> Rat {
    <Rat as Ring>::one()
}

fn one_minus_x() -> Series<Rat> {
    Series::constant(rone()).sub(&svar())
}

/// `F(x)` from `G(x) = 1 + x^2 F(x)`.
pub fn stirling_f() -> Series<Rat> {
    Series::defer(|| {
        let lo = log1(&one_minus_x())?;
        let arg = Series::constant(Rat::from_int(-1))
            .add(&lo.div_nat(2))
            .sub(&lo.tail());
        let g = arg.exp0_unchecked();
        Ok(g.tail().tail())
    })
}

/// The asymptotic Stirling correction series `S`, starting with 1:
/// `stirling = 1 :- backsub (1/(1-x)) (f * stirling)`.
pub fn stirling_backsub() -> Series<Rat> {
    let f = stirling_f();
    Series::fix(move |s| {
        let r1 = Series::constant(rone()).div(&one_minus_x());
        Series::cons(rone(), backsub(r1, f.mul(s)))
    })
}

fn backsub(rm: Series<Rat>, rhs: Series<Rat>) -> Series<Rat> {
    Series::defer(move || {
        let sm = &rhs.head()? / &rm.head()?;
        let next_rm = Series::constant(rone()).add(&rm).div(&one_minus_x());
        let next_rhs = rhs.sub(&rm.scalar_mul(&sm)).tail();
        Ok(Series::cons(sm, backsub(next_rm, next_rhs)))
    })
}

/// Double factorials with a placeholder 0 at index 0:
/// `[0, 1, 2, 3, 8, 15, 48, 105, 384, ...]`, index k holding k!! for k >= 1.
pub fn double_factorials() -> Stream<BigInt> {
    fn dbf(x: BigInt, y: BigInt, a: i64) -> Stream<BigInt> {
        let xn = &x * a;
        let yn = &y * (a + 1);
        Stream::cons(
            x,
            Stream::cons_lazy(move || Ok(y), move || Ok(dbf(xn, yn, a + 2))),
        )
    }
    Stream::cons(BigInt::from(0), dbf(BigInt::from(1), BigInt::from(2), 3))
}

/// The expansion `log z - z` about `z = 1`, first three terms stripped:
/// coefficients `[1/3, -1/4, 1/5, -1/6, ...]`.
pub fn laplace_w() -> Series<Rat> {
    Series::defer(|| {
        let z = Series::constant(rone()).add(&svar());
        Ok(log1(&z)?.sub(&z).tail().tail().tail())
    })
}

/// Rows (from p = 1) of `exp0 (0 :- w :- 0)` over nested series — the
/// double array of the Laplace expansion, constant row dropped.
pub fn laplace_en() -> Stream<Series<Rat>> {
    let w = laplace_w();
    let arg: Series<Series<Rat>> = Series::cons(
        Series::zero(),
        Series::cons(w, Series::<Series<Rat>>::zero()),
    );
    let en = arg.exp0_unchecked().tail();
    en.stream().clone()
}

/// Stirling coefficients from the Laplace pipeline, starting at 1/12 (the
/// leading 1 and the Gaussian normalization are excluded).
pub fn stirling_laplace() -> Stream<Rat> {
    diag(1, laplace_tabl())
}

/// `tabl[p][j] = en[p][j] * dbfacs[3p + j - 1]`, rows indexed from p = 1.
fn laplace_tabl() -> Stream<Stream<Rat>> {
    fn go(rows: Stream<Series<Rat>>, p: usize) -> Stream<Stream<Rat>> {
        Stream::cons_lazy(
            {
                let rows = rows.clone();
                move || {
                    let row = rows.head()?;
                    let facs = double_factorials().drop_front(3 * p - 1)?;
                    Ok(Stream::zip_with(
                        |c: Rat, d: BigInt| Ok(c * BigRational::from_integer(d)),
                        row.stream(),
                        &facs,
                    ))
                }
            },
            move || Ok(go(rows.tail()?, p + 1)),
        )
    }
    go(laplace_en(), 1)
}

/// Left-shift the first `m` rows by one column.
fn shift(m: usize, tbl: &Stream<Stream<Rat>>) -> Result<Stream<Stream<Rat>>> {
    let rows = tbl.take(m)?;
    let rest = tbl.drop_front(m)?;
    let tailed = rows
        .into_iter()
        .map(|r| Stream::defer(move || r.tail()))
        .collect();
    Ok(Stream::prepend(tailed, rest))
}

/// Split off the heads of the first `m` rows, tailing those rows.
fn separ(m: usize, tbl: &Stream<Stream<Rat>>) -> Result<(Vec<Rat>, Stream<Stream<Rat>>)> {
    let rows = tbl.take(m)?;
    let rest = tbl.drop_front(m)?;
    let mut heads = Vec::with_capacity(m);
    let mut tailed = Vec::with_capacity(m);
    for r in rows {
        heads.push(r.head()?);
        tailed.push(Stream::defer(move || r.tail()));
    }
    Ok((heads, Stream::prepend(tailed, rest)))
}

/// Iterated vertical alignment of diagonal segments: each step sums one
/// `p + j = const` (even) diagonal of the semifactorial-weighted table.
fn diag(m: usize, tbl: Stream<Stream<Rat>>) -> Stream<Rat> {
    Stream::defer(move || {
        let shifted = shift(m, &tbl)?;
        let (d, nxt) = separ(m + 1, &shifted)?;
        let mut sum = <Rat as Ring>::zero();
        for v in d {
            sum += v;
        }
        Ok(Stream::cons(sum, diag(m + 2, nxt)))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rat_of;

    fn rt(p: i64, q: i64) -> Rat {
        rat_of(p, q)
    }

    #[test]
    fn f_golden() {
        assert_eq!(
            stirling_f().to_list(5).unwrap(),
            vec![
                rt(1, 12),
                rt(1, 12),
                rt(113, 1440),
                rt(53, 720),
                rt(25163, 362880)
            ]
        );
    }

    #[test]
    fn s_golden_prefix() {
        assert_eq!(
            stirling_backsub().to_list(5).unwrap(),
            vec![
                rt(1, 1),
                rt(1, 12),
                rt(1, 288),
                rt(-139, 51840),
                rt(-571, 2488320)
            ]
        );
    }

    #[test]
    fn s_coefficient_eight() {
        let s = stirling_backsub().to_list(9).unwrap();
        assert_eq!(
            s[8],
            Rat::new(BigInt::from(-4483131259i64), BigInt::from(86684309913600i64))
        );
    }

    #[test]
    fn double_factorials_golden() {
        let got: Vec<i64> = double_factorials()
            .take(9)
            .unwrap()
            .iter()
            .map(|b| i64::try_from(b).unwrap())
            .collect();
        assert_eq!(got, vec![0, 1, 2, 3, 8, 15, 48, 105, 384]);
    }

    #[test]
    fn laplace_w_golden() {
        assert_eq!(
            laplace_w().to_list(4).unwrap(),
            vec![rt(1, 3), rt(-1, 4), rt(1, 5), rt(-1, 6)]
        );
    }

    #[test]
    fn laplace_en_row_two() {
        let row = laplace_en().nth(1).unwrap();
        assert_eq!(
            row.to_list(5).unwrap(),
            vec![
                rt(1, 18),
                rt(-1, 12),
                rt(47, 480),
                rt(-19, 180),
                rt(153, 1400)
            ]
        );
    }

    #[test]
    fn cross_derivation() {
        let lap = stirling_laplace().take(8).unwrap();
        let back = stirling_backsub().to_list(9).unwrap();
        assert_eq!(lap, back[1..].to_vec());
    }
}
