//! Closed-form coefficients of the frobenius elements `g_i` in depth at most
//! two, built from certified limits of cyclotomic iterated sums, and the
//! assembly of full truncated `g_i` series.

mod assemble;
mod calc;
mod depth1;
mod depth2;
mod engine;
mod query;

use thiserror::Error;

pub use assemble::{build_g, BuiltG};
pub use calc::Cv;
pub use depth1::FClosedForm;
pub use depth2::Reading;
pub use engine::{Ingredient, Mzv, MzvValue};
pub use query::{MzvQuery, Shape};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MzvError {
    #[error("outside the formula's domain: {0}")]
    Domain(String),
    #[error("{what}: only {digits} certified digits")]
    Uncertified { what: String, digits: i32 },
    #[error(transparent)]
    Sum(#[from] iterated_sums::SumError),
    #[error(transparent)]
    Padic(#[from] padic_core::PadicError),
}
