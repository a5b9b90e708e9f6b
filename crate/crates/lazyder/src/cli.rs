//! Command-line front end: expression evaluation into towers/series and the
//! subcommand plumbing.

use clap::{Args, Parser, Subcommand, ValueEnum};
use num::ToPrimitive;

use crate::apps::{compchain, lambert_w_series, lambert_w_tower, revchain};
use crate::apps::stirling::{stirling_backsub, stirling_laplace};
use crate::dtower::{dvar, DTower};
use crate::error::{Error, Result};
use crate::expr::{parse_expr, Expr, Func};
use crate::field::{parse_rat, render_f64, render_rat, Rat, Ring};
use crate::pseries::{exp0, log1, newtreverse, scompose, sqrt1, sreverse, Series};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FieldKind {
    Rat,
    F64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RevMethod {
    Chain,
    Series,
    Newton,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CompMethod {
    Chain,
    Series,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StirMethod {
    Backsub,
    Laplace,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LambertMode {
    Tower,
    Series,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Builtin {
    Lambert,
}

#[derive(Debug, Args)]
struct RenderOpts {
    /// Coefficient field
    #[arg(long, value_enum, default_value = "rat")]
    field: FieldKind,
    /// Output format
    #[arg(long, value_enum, default_value = "table")]
    format: Format,
}

#[derive(Debug, Parser)]
#[command(name = "lazyder", version, about = "Lazy derivative towers and power series")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Debug, Subcommand)]
enum Cmd {
    /// Derivative tower of an expression at a point
    Tower {
        #[arg(long)]
        expr: String,
        /// Evaluation point
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        at: String,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        terms: u32,
        #[command(flatten)]
        render: RenderOpts,
    },
    /// Taylor coefficients of an expression about a center
    Series {
        #[arg(long)]
        expr: String,
        /// Expansion center
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        center: String,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        terms: u32,
        #[command(flatten)]
        render: RenderOpts,
    },
    /// Invert a function around a point
    Revert {
        #[arg(long)]
        expr: String,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        at: String,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        terms: u32,
        #[arg(long, value_enum, default_value = "chain")]
        method: RevMethod,
        #[command(flatten)]
        render: RenderOpts,
    },
    /// Compose two functions
    Compose {
        #[arg(long)]
        outer: String,
        #[arg(long)]
        inner: String,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        at: String,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        terms: u32,
        #[arg(long, value_enum, default_value = "chain")]
        method: CompMethod,
        #[command(flatten)]
        render: RenderOpts,
    },
    /// The Lambert W function
    Lambert {
        #[arg(long, value_enum, default_value = "tower")]
        mode: LambertMode,
        /// Series mode: the value w0 of W at the center (x0 = w0*e^w0)
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        center: f64,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        terms: u32,
        /// Output format
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// The Stirling asymptotic correction series, exactly
    Stirling {
        #[arg(long, value_enum, default_value = "backsub")]
        method: StirMethod,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        terms: u32,
        /// Output format
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// Sample a truncated series as CSV plot data
    PlotData {
        #[arg(long, conflicts_with = "builtin", required_unless_present = "builtin")]
        expr: Option<String>,
        #[arg(long, value_enum)]
        builtin: Option<Builtin>,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        center: f64,
        /// Truncation order (highest retained power)
        #[arg(long)]
        order: u32,
        #[arg(long, allow_hyphen_values = true)]
        xmin: f64,
        #[arg(long, allow_hyphen_values = true)]
        xmax: f64,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        samples: u32,
    },
}

fn rat_to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

fn mismatch<T>(f: Func) -> Result<T> {
    Err(Error::FieldMismatch(format!(
        "{} is not available over exact rationals here",
        f.name()
    )))
}

fn eval_tower_in<C: crate::field::Field>(
    e: &Expr,
    var: &DTower<C>,
    lit: &dyn Fn(&Rat) -> C,
    call: &dyn Fn(Func, &DTower<C>) -> Result<DTower<C>>,
) -> Result<DTower<C>> {
    Ok(match e {
        Expr::Var => var.clone(),
        Expr::IntLit(n) => DTower::constant(C::from_int(*n)),
        Expr::RatLit(r) => DTower::constant(lit(r)),
        Expr::Neg(a) => eval_tower_in(a, var, lit, call)?.neg(),
        Expr::Add(a, b) => {
            eval_tower_in(a, var, lit, call)?.add(&eval_tower_in(b, var, lit, call)?)
        }
        Expr::Sub(a, b) => {
            eval_tower_in(a, var, lit, call)?.sub(&eval_tower_in(b, var, lit, call)?)
        }
        Expr::Mul(a, b) => {
            eval_tower_in(a, var, lit, call)?.mul(&eval_tower_in(b, var, lit, call)?)
        }
        Expr::Div(a, b) => {
            eval_tower_in(a, var, lit, call)?.div(&eval_tower_in(b, var, lit, call)?)
        }
        Expr::Pow(a, n) => {
            let base = eval_tower_in(a, var, lit, call)?;
            let mut acc = DTower::constant(C::one());
            for _ in 0..*n {
                acc = acc.mul(&base);
            }
            acc
        }
        Expr::Call(f, a) => call(*f, &eval_tower_in(a, var, lit, call)?)?,
    })
}

fn eval_series_in<C: crate::field::Field>(
    e: &Expr,
    var: &Series<C>,
    lit: &dyn Fn(&Rat) -> C,
    call: &dyn Fn(Func, &Series<C>) -> Result<Series<C>>,
) -> Result<Series<C>> {
    Ok(match e {
        Expr::Var => var.clone(),
        Expr::IntLit(n) => Series::constant(C::from_int(*n)),
        Expr::RatLit(r) => Series::constant(lit(r)),
        Expr::Neg(a) => eval_series_in(a, var, lit, call)?.neg(),
        Expr::Add(a, b) => {
            eval_series_in(a, var, lit, call)?.add(&eval_series_in(b, var, lit, call)?)
        }
        Expr::Sub(a, b) => {
            eval_series_in(a, var, lit, call)?.sub(&eval_series_in(b, var, lit, call)?)
        }
        Expr::Mul(a, b) => {
            eval_series_in(a, var, lit, call)?.mul(&eval_series_in(b, var, lit, call)?)
        }
        Expr::Div(a, b) => {
            eval_series_in(a, var, lit, call)?.div(&eval_series_in(b, var, lit, call)?)
        }
        Expr::Pow(a, n) => {
            let base = eval_series_in(a, var, lit, call)?;
            let mut acc = Series::constant(C::one());
            for _ in 0..*n {
                acc = acc.mul(&base);
            }
            acc
        }
        Expr::Call(f, a) => call(*f, &eval_series_in(a, var, lit, call)?)?,
    })
}

pub fn eval_tower_rat(e: &Expr, x: &Rat) -> Result<DTower<Rat>> {
    eval_tower_in(e, &dvar(x.clone()), &|r| r.clone(), &|f, _| mismatch(f))
}

pub fn eval_tower_f64(e: &Expr, x: f64) -> Result<DTower<f64>> {
    eval_tower_in(e, &dvar(x), &rat_to_f64, &|f, a| {
        Ok(match f {
            Func::Exp => a.exp(),
            Func::Log => a.log(),
            Func::Sqrt => a.sqrt(),
            Func::Sin => a.sin(),
            Func::Cos => a.cos(),
            Func::Tan => a.tan(),
            Func::Atan => a.atan(),
            Func::Asin => a.asin(),
            Func::Acos => a.acos(),
        })
    })
}

/// Series of the expression about x0; `Var` becomes `x0 + x`. Over the
/// rationals only the restricted exp0/log1/sqrt1 heads are admissible.
pub fn eval_series_rat(e: &Expr, x0: &Rat) -> Result<Series<Rat>> {
    let var = Series::cons(
        x0.clone(),
        Series::cons(<Rat as Ring>::one(), Series::zero()),
    );
    eval_series_in(e, &var, &|r| r.clone(), &|f, a| match f {
        Func::Exp => exp0(a),
        Func::Log => log1(a),
        Func::Sqrt => sqrt1(a),
        _ => mismatch(f),
    })
}

pub fn eval_series_f64(e: &Expr, x0: f64) -> Result<Series<f64>> {
    let var = Series::cons(x0, Series::cons(1.0, Series::zero()));
    eval_series_in(e, &var, &rat_to_f64, &|f, a| {
        Ok(match f {
            Func::Exp => a.exp(),
            Func::Log => a.log(),
            Func::Sqrt => a.sqrt(),
            Func::Sin => a.sin(),
            Func::Cos => a.cos(),
            Func::Tan => a.tan(),
            Func::Atan => a.atan(),
            Func::Asin => a.asin(),
            Func::Acos => a.acos(),
        })
    })
}

fn parse_f64_at(s: &str) -> Result<f64> {
    if let Ok(x) = s.trim().parse::<f64>() {
        return Ok(x);
    }
    Ok(rat_to_f64(&parse_rat(s)?))
}

/// One output column of already-rendered values.
fn emit(headers: &[&str], rows: &[Vec<String>], format: Format) -> String {
    match format {
        Format::Table => {
            let mut out = String::new();
            for (k, row) in rows.iter().enumerate() {
                out.push_str(&k.to_string());
                for v in row {
                    out.push('\t');
                    out.push_str(v);
                }
                out.push('\n');
            }
            out
        }
        Format::Csv => {
            let mut out = String::from("k");
            for h in headers {
                out.push(',');
                out.push_str(h);
            }
            out.push('\n');
            for (k, row) in rows.iter().enumerate() {
                out.push_str(&k.to_string());
                for v in row {
                    out.push(',');
                    out.push_str(v);
                }
                out.push('\n');
            }
            out
        }
        Format::Json => {
            let arr: Vec<serde_json::Value> = rows
                .iter()
                .enumerate()
                .map(|(k, row)| {
                    let mut obj = serde_json::Map::new();
                    obj.insert("k".into(), serde_json::json!(k));
                    if row.len() == 1 {
                        obj.insert("value".into(), serde_json::json!(row[0]));
                    } else {
                        for (h, v) in headers.iter().zip(row) {
                            obj.insert((*h).into(), serde_json::json!(v));
                        }
                    }
                    serde_json::Value::Object(obj)
                })
                .collect();
            let mut s = serde_json::to_string_pretty(&arr).expect("json");
            s.push('\n');
            s
        }
    }
}

fn single(values: Vec<String>, format: Format) -> String {
    let rows: Vec<Vec<String>> = values.into_iter().map(|v| vec![v]).collect();
    emit(&["value"], &rows, format)
}

fn newton_iterations(terms: usize) -> usize {
    let mut k = 0usize;
    while (1usize << k) < terms {
        k += 1;
    }
    k + 1
}

/// `ys = f xs` for the tower of the parsed expression — shared by `tower`
/// and the chain methods; the expression is evaluated with `Var` bound to
/// the full tower argument so that reversion can re-apply it.
pub fn tower_fn_rat(e: Expr) -> impl Fn(&DTower<Rat>) -> DTower<Rat> {
    move |u: &DTower<Rat>| {
        let e = e.clone();
        let u = u.clone();
        DTower::defer(move || eval_tower_in(&e, &u, &|r| r.clone(), &|f, _| mismatch(f)))
    }
}

pub fn tower_fn_f64(e: Expr) -> impl Fn(&DTower<f64>) -> DTower<f64> {
    move |u: &DTower<f64>| {
        let e = e.clone();
        let x = u.clone();
        DTower::defer(move || {
            eval_tower_in(&e, &x, &rat_to_f64, &|f, a| {
                Ok(match f {
                    Func::Exp => a.exp(),
                    Func::Log => a.log(),
                    Func::Sqrt => a.sqrt(),
                    Func::Sin => a.sin(),
                    Func::Cos => a.cos(),
                    Func::Tan => a.tan(),
                    Func::Atan => a.atan(),
                    Func::Asin => a.asin(),
                    Func::Acos => a.acos(),
                })
            })
        })
    }
}

fn run_cmd(cmd: Cmd) -> Result<(String, bool)> {
    let out = match cmd {
        Cmd::Tower {
            expr,
            at,
            terms,
            render,
        } => {
            let e = parse_expr(&expr)?;
            let n = terms as usize;
            let values = match render.field {
                FieldKind::Rat => {
                    let x = parse_rat(&at)?;
                    let t = eval_tower_rat(&e, &x)?;
                    t.take(n)?.iter().map(render_rat).collect()
                }
                FieldKind::F64 => {
                    let x = parse_f64_at(&at)?;
                    let t = eval_tower_f64(&e, x)?;
                    t.take(n)?.into_iter().map(render_f64).collect()
                }
            };
            single(values, render.format)
        }
        Cmd::Series {
            expr,
            center,
            terms,
            render,
        } => {
            let e = parse_expr(&expr)?;
            let n = terms as usize;
            let values = match render.field {
                FieldKind::Rat => {
                    let x0 = parse_rat(&center)?;
                    let s = eval_series_rat(&e, &x0)?;
                    s.to_list(n)?.iter().map(render_rat).collect()
                }
                FieldKind::F64 => {
                    let x0 = parse_f64_at(&center)?;
                    let s = eval_series_f64(&e, x0)?;
                    s.to_list(n)?.into_iter().map(render_f64).collect()
                }
            };
            single(values, render.format)
        }
        Cmd::Revert {
            expr,
            at,
            terms,
            method,
            render,
        } => {
            let e = parse_expr(&expr)?;
            let n = terms as usize;
            let values = match render.field {
                FieldKind::Rat => {
                    let x = parse_rat(&at)?;
                    let list = revert_rat(e, x, n, method)?;
                    list.iter().map(render_rat).collect()
                }
                FieldKind::F64 => {
                    let x = parse_f64_at(&at)?;
                    let list = revert_f64(e, x, n, method)?;
                    list.into_iter().map(render_f64).collect()
                }
            };
            single(values, render.format)
        }
        Cmd::Compose {
            outer,
            inner,
            at,
            terms,
            method,
            render,
        } => {
            let go = parse_expr(&outer)?;
            let fi = parse_expr(&inner)?;
            let n = terms as usize;
            let values = match render.field {
                FieldKind::Rat => {
                    let x = parse_rat(&at)?;
                    let list = compose_rat(go, fi, x, n, method)?;
                    list.iter().map(render_rat).collect()
                }
                FieldKind::F64 => {
                    let x = parse_f64_at(&at)?;
                    let list = compose_f64(go, fi, x, n, method)?;
                    list.into_iter().map(render_f64).collect()
                }
            };
            single(values, render.format)
        }
        Cmd::Lambert {
            mode,
            center,
            terms,
            format,
        } => {
            let n = terms as usize;
            let values: Vec<String> = match mode {
                LambertMode::Tower => lambert_w_tower()
                    .take(n)?
                    .into_iter()
                    .map(render_f64)
                    .collect(),
                LambertMode::Series => lambert_w_series(center)
                    .to_list(n)?
                    .into_iter()
                    .map(render_f64)
                    .collect(),
            };
            single(values, format)
        }
        Cmd::Stirling {
            method,
            terms,
            format,
        } => {
            let n = terms as usize;
            match method {
                StirMethod::Backsub => {
                    let v = stirling_backsub().to_list(n)?;
                    single(v.iter().map(render_rat).collect(), format)
                }
                StirMethod::Laplace => {
                    let mut v = vec![<Rat as Ring>::one()];
                    if n > 1 {
                        v.extend(stirling_laplace().take(n - 1)?);
                    }
                    single(v.iter().map(render_rat).collect(), format)
                }
                StirMethod::Both => {
                    let b = stirling_backsub().to_list(n)?;
                    let mut l = vec![<Rat as Ring>::one()];
                    if n > 1 {
                        l.extend(stirling_laplace().take(n - 1)?);
                    }
                    let rows: Vec<Vec<String>> = b
                        .iter()
                        .zip(&l)
                        .map(|(x, y)| vec![render_rat(x), render_rat(y)])
                        .collect();
                    let ok = b == l;
                    return Ok((emit(&["backsub", "laplace"], &rows, format), ok));
                }
            }
        }
        Cmd::PlotData {
            expr,
            builtin,
            center,
            order,
            xmin,
            xmax,
            samples,
        } => {
            let (series, x0) = match builtin {
                Some(Builtin::Lambert) => (lambert_w_series(center), center * center.exp()),
                None => {
                    let e = parse_expr(expr.as_deref().expect("clap enforces expr"))?;
                    (eval_series_f64(&e, center)?, center)
                }
            };
            let coeffs = series.to_list(order as usize + 1)?;
            let mut out = String::from("x,value\n");
            let n = samples as usize;
            for i in 0..n {
                let x = if n == 1 {
                    xmin
                } else {
                    xmin + (xmax - xmin) * i as f64 / (n - 1) as f64
                };
                let dx = x - x0;
                let mut v = 0.0f64;
                for c in coeffs.iter().rev() {
                    v = v * dx + c;
                }
                out.push_str(&format!("{},{}\n", render_f64(x), render_f64(v)));
            }
            out
        }
    };
    Ok((out, true))
}

fn revert_rat(e: Expr, x: Rat, n: usize, method: RevMethod) -> Result<Vec<Rat>> {
    match method {
        RevMethod::Chain => revchain(tower_fn_rat(e), x).take(n),
        RevMethod::Series | RevMethod::Newton => {
            let u = eval_series_rat(&e, &x)?;
            let y0 = u.head()?;
            let shifted = u.sub(&Series::constant(y0));
            let r = match method {
                RevMethod::Series => sreverse(&shifted),
                _ => {
                    let mut it = newtreverse(&shifted);
                    it.nth(newton_iterations(n)).expect("infinite iterator")
                }
            };
            Series::cons(x, r.tail()).to_list(n)
        }
    }
}

fn revert_f64(e: Expr, x: f64, n: usize, method: RevMethod) -> Result<Vec<f64>> {
    match method {
        RevMethod::Chain => revchain(tower_fn_f64(e), x).take(n),
        RevMethod::Series | RevMethod::Newton => {
            let u = eval_series_f64(&e, x)?;
            let y0 = u.head()?;
            let shifted = u.sub(&Series::constant(y0));
            let r = match method {
                RevMethod::Series => sreverse(&shifted),
                _ => {
                    let mut it = newtreverse(&shifted);
                    it.nth(newton_iterations(n)).expect("infinite iterator")
                }
            };
            Series::cons(x, r.tail()).to_list(n)
        }
    }
}

fn compose_rat(outer: Expr, inner: Expr, x: Rat, n: usize, method: CompMethod) -> Result<Vec<Rat>> {
    match method {
        CompMethod::Chain => {
            let f = eval_tower_rat(&inner, &x)?;
            let y0 = f.head()?;
            let g = eval_tower_rat(&outer, &y0)?;
            compchain(&g, &f).take(n)
        }
        CompMethod::Series => {
            let fs = eval_series_rat(&inner, &x)?;
            let y0 = fs.head()?;
            let gs = eval_series_rat(&outer, &y0)?;
            scompose(&gs, &fs.sub(&Series::constant(y0))).to_list(n)
        }
    }
}

fn compose_f64(outer: Expr, inner: Expr, x: f64, n: usize, method: CompMethod) -> Result<Vec<f64>> {
    match method {
        CompMethod::Chain => {
            let f = eval_tower_f64(&inner, x)?;
            let y0 = f.head()?;
            let g = eval_tower_f64(&outer, y0)?;
            compchain(&g, &f).take(n)
        }
        CompMethod::Series => {
            let fs = eval_series_f64(&inner, x)?;
            let y0 = fs.head()?;
            let gs = eval_series_f64(&outer, y0)?;
            scompose(&gs, &fs.sub(&Series::constant(y0))).to_list(n)
        }
    }
}

fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::Syntax { .. } | Error::UnknownFunction(_) | Error::ZeroDenominator => 2,
        _ => 1,
    }
}

/// Parse argv and run; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            // clap renders help/version on stdout with code 0, errors on
            // stderr with code 2.
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match run_cmd(cli.cmd) {
        Ok((out, ok)) => {
            print!("{out}");
            if ok {
                0
            } else {
                1
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_code_for(&e)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{close, rat_of};

    fn rt(p: i64, q: i64) -> Rat {
        rat_of(p, q)
    }

    #[test]
    fn eval_tower_golden() {
        let e = parse_expr("x/(1+x)").unwrap();
        let got = eval_tower_rat(&e, &rt(3, 4)).unwrap().take(4).unwrap();
        assert_eq!(
            got,
            vec![rt(3, 7), rt(16, 49), rt(-128, 343), rt(1536, 2401)]
        );

        let e = parse_expr("x*x").unwrap();
        let got = eval_tower_rat(&e, &rt(3, 1)).unwrap().take(4).unwrap();
        assert_eq!(got, vec![rt(9, 1), rt(6, 1), rt(2, 1), rt(0, 1)]);
    }

    #[test]
    fn eval_series_exp() {
        let e = parse_expr("exp(x)").unwrap();
        let got = eval_series_f64(&e, 0.0).unwrap().to_list(4).unwrap();
        for (g, w) in got.iter().zip([1.0, 1.0, 0.5, 1.0 / 6.0]) {
            assert!(close(*g, w, 1e-12));
        }
        // same head over rationals through exp0
        let got = eval_series_rat(&e, &rt(0, 1)).unwrap().to_list(3).unwrap();
        assert_eq!(got, vec![rt(1, 1), rt(1, 1), rt(1, 2)]);
    }

    #[test]
    fn rat_field_rejections() {
        let e = parse_expr("sin(x)").unwrap();
        assert!(matches!(
            eval_tower_rat(&e, &rt(0, 1)).unwrap_err(),
            Error::FieldMismatch(_)
        ));
        assert!(matches!(
            eval_series_rat(&e, &rt(0, 1)).unwrap_err(),
            Error::FieldMismatch(_)
        ));
        // exp over rationals away from 0 hits the exp0 precondition
        let e = parse_expr("exp(x)").unwrap();
        assert!(matches!(
            eval_series_rat(&e, &rt(1, 1)).unwrap_err(),
            Error::BadHead { func: "exp0", .. }
        ));
    }

    #[test]
    fn pow_desugars() {
        let e = parse_expr("x^3 - x^0").unwrap();
        let got = eval_tower_rat(&e, &rt(2, 1)).unwrap().take(5).unwrap();
        assert_eq!(
            got,
            vec![rt(7, 1), rt(12, 1), rt(12, 1), rt(6, 1), rt(0, 1)]
        );
    }

    #[test]
    fn newton_iteration_counts() {
        assert_eq!(newton_iterations(1), 1);
        assert_eq!(newton_iterations(2), 2);
        assert_eq!(newton_iterations(8), 4);
        assert_eq!(newton_iterations(9), 5);
    }

    #[test]
    fn revert_methods_agree() {
        let e = parse_expr("x/(1+x)").unwrap();
        let chain = revert_rat(e.clone(), rt(3, 4), 6, RevMethod::Chain).unwrap();
        assert_eq!(
            chain[..4],
            vec![rt(3, 4), rt(49, 16), rt(343, 32), rt(7203, 128)]
        );
        let ser = revert_rat(e.clone(), rt(3, 4), 6, RevMethod::Series).unwrap();
        let newt = revert_rat(e, rt(3, 4), 6, RevMethod::Newton).unwrap();
        assert_eq!(ser, newt);
        // chain yields derivatives, series yields Taylor coefficients: scale.
        let mut fact = rt(1, 1);
        for k in 0..6 {
            if k > 0 {
                fact = fact * rt(k as i64, 1);
            }
            assert_eq!(&ser[k] * &fact, chain[k], "k={k}");
        }
    }

    #[test]
    fn compose_methods_agree() {
        let outer = parse_expr("x*x + x").unwrap();
        let inner = parse_expr("x/(1+x)").unwrap();
        let chain = compose_rat(outer.clone(), inner.clone(), rt(1, 2), 6, CompMethod::Chain)
            .unwrap();
        let ser = compose_rat(outer, inner, rt(1, 2), 6, CompMethod::Series).unwrap();
        let mut fact = rt(1, 1);
        for k in 0..6 {
            if k > 0 {
                fact = fact * rt(k as i64, 1);
            }
            assert_eq!(&ser[k] * &fact, chain[k], "k={k}");
        }
    }

    #[test]
    fn emit_formats() {
        let rows = vec![vec!["1/2".to_string()], vec!["3".to_string()]];
        assert_eq!(emit(&["value"], &rows, Format::Table), "0\t1/2\n1\t3\n");
        assert_eq!(
            emit(&["value"], &rows, Format::Csv),
            "k,value\n0,1/2\n1,3\n"
        );
        let j = emit(&["value"], &rows, Format::Json);
        let v: serde_json::Value = serde_json::from_str(&j).unwrap();
        assert_eq!(v[1]["k"], 1);
        assert_eq!(v[1]["value"], "3");
    }
}
