//! Lazy derivative towers and formal power series.
//!
//! The library has four layers:
//!
//! * [`lazy`] — memoized suspensions and infinite streams with productive
//!   self-reference ([`lazy::Stream::fix`]) and black-hole detection;
//! * [`field`] — coefficient arithmetic, generic over exact rationals,
//!   `f64`, and nested series;
//! * [`dtower`] / [`pseries`] — the two infinite representations of a
//!   function at a point: the chain of derivative values, and the Taylor
//!   coefficient stream, each with a closed arithmetic, composition and
//!   reversion;
//! * [`apps`] — worked computations built on top: the Lambert W function,
//!   the Hermite recurrence, chain reversion/composition, and the Stirling
//!   asymptotic series derived two independent ways.
//!
//! The [`expr`] and [`cli`] modules are the command-line front end.

pub mod apps;
pub mod cli;
pub mod dtower;
pub mod error;
pub mod expr;
pub mod field;
pub mod lazy;
pub mod pseries;

pub use error::{Error, Result};
