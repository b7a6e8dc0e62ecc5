//! Exact arithmetic in the unramified ring `Z_q = Z_p[zeta_M]` with
//! per-element precision tracking, plus Bernoulli numbers, power sums, the
//! frobenius index maps and the Iwasawa logarithm.

mod error;
pub mod index;
pub mod inverses;
pub mod modarith;
pub mod par;
pub mod params;
pub mod rational;
pub mod ring;

pub use error::PadicError;
pub use index::{bar, index_diff, index_norm, underbar, IndexMaps};
pub use inverses::IntInverses;
pub use par::Exec;
pub use params::{order_mod, PadicParams, DEFAULT_PRECISION};
pub use rational::{bernoulli, binomial, faulhaber_poly, faulhaber_sum, pochhammer, Rational};
pub use ring::{Scalar, Zq, ZqElem, INF_PREC, MAX_F};

/// Build a ring for `(p, M)` at the given reporting precision.
pub fn build_ring(p: u64, m: u64, precision_cap: u32) -> Result<Zq, PadicError> {
    Zq::new(PadicParams::new(p, m, precision_cap)?)
}
