//! Formal solution of the Frobenius differential equation for `g_F(z)` and
//! audits of closed forms against it.
//!
//! [`solve`] produces the `z`-coefficients of `g_F` on a factor-closed set of
//! words from a given set of constants `g_1..g_M`.  [`closed`] holds explicit
//! series expressions for some of those coefficients.  [`audit`] compares
//! the two, extracts values at infinity, checks the residue identity there,
//! and reads the error in each injected constant off the limits
//! `lim l q^N a_(l q^N)[w]`, which vanish exactly when the constants are right.

pub mod adjudicate;
pub mod audit;
pub mod closed;
pub mod solve;

use thiserror::Error;

pub use adjudicate::{adjudicate, padded_word, padded_words, Adjudication, AdjudicationOpts, ReadingOutcome};
pub use audit::{
    accelerated_limit, dft_constants, funprop_check, infinity_series, infinity_value, ladder, match_closed_series,
    residue_identity_check, AuditKind, AuditStatus, FunpropReport, LimitEstimate, OdeAudit,
};
pub use closed::{closed_series, eval_closed, ClosedSeries, Family};
pub use solve::{factor_closure, solve_gf, Constants, FormSeries, Record, SolveOpts};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OdeError {
    #[error("solver configuration: {0}")]
    Config(String),
    #[error("degree {0} was not recorded")]
    NotRecorded(u64),
    #[error(transparent)]
    Sum(#[from] iterated_sums::SumError),
    #[error(transparent)]
    Padic(#[from] padic_core::PadicError),
}
