//! Worked computations on top of the tower and series algebra.

pub mod chains;
pub mod hermite;
pub mod lambert;
pub mod stirling;

pub use chains::{compchain, compchain_tower, revchain};
pub use hermite::{hermite_tower, hermite_value};
pub use lambert::{lambert_w_series, lambert_w_tower};
pub use stirling::{double_factorials, stirling_backsub, stirling_f, stirling_laplace};
