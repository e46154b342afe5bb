//! Arithmetic, factorization and the divisor-sum map σ over GF(2)[x],
//! together with searches for and verification of perfect binary polynomials
//! (the fixed points σ(A) = A).
//!
//! The crate is organized around a bit-packed [`Poly`] value type:
//!
//! - [`poly`] / [`parse`]: exact arithmetic, text and hex syntax;
//! - [`factorize`]: irreducibility testing, complete factorization and
//!   irreducible tables with a persistent cache;
//! - [`sigma`]: the divisor-sum map, its naive oracle and the geometric-sum
//!   identity;
//! - [`classify`]: parity, Mersenne/complete predicates, perfection, the
//!   trivial family, square decompositions and the sporadic catalogue;
//! - [`search`], [`canaday`], [`theorem`]: the scans, censuses, bounded lemma
//!   checks and both theorem verifiers, with deterministic reports in
//!   [`report`].

pub mod canaday;
pub mod catalogue;
pub mod classify;
pub mod error;
pub mod factorize;
pub mod parse;
pub mod poly;
pub mod report;
pub mod rng;
pub mod search;
pub mod sigma;
pub mod theorem;

pub use error::Error;
pub use poly::Poly;
