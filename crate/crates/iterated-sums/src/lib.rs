//! Cyclotomic iterated sums `F`, `G` and the series `S`, `T` built from them.
//!
//! Values at integers come from a prefix-sum sweep over all `n` up to a bound.
//! Limits along `q^N` and the constants of the superscript operator come from
//! [`kernel`], which carries each partial sum as one power series per residue
//! class modulo `pM`.  [`limit`] cross-checks those limits against direct
//! ladders and certifies digits.

pub mod context;
pub mod dp;
pub mod kernel;
pub mod limit;
pub mod series;
pub mod spec;

use thiserror::Error;

pub use context::SumCtx;
pub use dp::{eval_all, eval_at, eval_stream};
pub use kernel::ClassSeries;
pub use limit::{cauchy_certificate, class_limit, q_ladder, richardson, x_limit, LimitResult};
pub use series::{series_coeffs, SeriesSpec};
pub use spec::{Exp, SumSpec, Sym};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SumError {
    #[error("bad sum specification: {0}")]
    BadSpec(String),
    #[error("{0}: the summand is not a power series on a class divisible by p")]
    NotLocallyAnalytic(String),
    #[error("ladder for {spec} disagrees with the class-series limit ({agree} < {cert} digits)")]
    Inconsistent { spec: String, agree: i32, cert: i32 },
    #[error("budget {0} too small for a limit ladder")]
    Budget(u64),
    #[error(transparent)]
    Padic(#[from] padic_core::PadicError),
}
