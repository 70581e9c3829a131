//! Gröbner bases and ideal calculus in presented rings.

mod buchberger;
mod calculus;
mod ideal;
mod invariants;
mod reduce;

pub use buchberger::groebner_basis;
#[allow(unused_imports)]
pub(crate) use buchberger::s_polynomial;
pub use calculus::{colon, colon_by_element, colon_ideal, intersect, product, sum, Colon};
pub use ideal::Ideal;
pub use invariants::{
    hilbert_series, is_irreducible, is_m_primary, is_parameter_ideal, krull_dim, length, multiplicity, ring_dim,
    socle, standard_monomials, HilbertSeries, StandardMonomials,
};
#[allow(unused_imports)]
pub(crate) use reduce::reduce_full;
