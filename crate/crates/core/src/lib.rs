//! Positive-characteristic commutative algebra over prime fields.
//!
//! The crate is organised bottom-up:
//!
//! * [`ring`], [`poly`], [`monomial`], [`field`]: exact arithmetic in `F_p[x]/J`
//!   and the text grammar for rings, polynomials and ideals.
//! * [`groebner`]: Buchberger's algorithm and the ideal calculus built on it
//!   (colon, intersection, standard monomials, length, dimension, Hilbert
//!   series, socle).
//! * [`frobenius`]: Frobenius powers, Frobenius and tight closure verdicts,
//!   Hilbert-Kunz tables, truncated test ideals, F-injectivity/F-rationality.
//! * [`basechange`]: split flat extensions `S = R ⊗ T` and the identities that
//!   can be checked on them.
//! * [`session`]: session files, tasks and JSON/CSV report envelopes used by
//!   the `frobpow` binary.

pub mod basechange;
pub mod error;
pub mod field;
pub mod frobenius;
pub mod groebner;
pub mod monomial;
mod parse;
pub mod poly;
pub mod report;
pub mod ring;
pub mod session;

pub use error::{Error, Result};
pub use groebner::Ideal;
pub use monomial::{Monomial, MonomialOrder, OrderKind};
pub use poly::{Poly, Term};
pub use ring::{Limits, Ring, RingPresentation};
