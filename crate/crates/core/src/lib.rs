//! Generalized numerical semigroups: submonoids of ℕ^d with finite
//! complement.
//!
//! * [`lattice`]: points of ℕ^d and relaxed monomial orders.
//! * [`numsgp`]: the one-dimensional case.
//! * [`gns`]: the [`Gns`] type and its invariants.
//! * [`convert`]: gap sets to minimal generators and back.
//! * [`enumerate`]: counting and listing every semigroup of a given genus.
//! * [`poly`]: exact counting polynomials in the dimension.

// Error values are cold and carry the offending points for diagnostics.
#![allow(clippy::result_large_err)]

pub mod convert;
pub mod enumerate;
pub mod gns;
pub mod lattice;
pub mod numsgp;
pub mod poly;

pub use convert::{
    bound_vector, gaps_to_generators, generators_to_gaps, membership_in_generated, BoundVector,
    ConvertError, GeneratedGaps,
};
pub use enumerate::{
    count_genus_tree, count_ordinarization, enumerate_genus, ordinary_semigroup, random_gns,
    semigroups_of_genus, sons_ordinarization, CountReport, Engine, EnumError,
};
pub use gns::{FrobeniusValue, Gns, GnsError, GnsRecord};
pub use lattice::{
    format_point_list, parse_point_list, LatticeError, MonomialOrder, OrderKind, Point,
    RelaxedOrder,
};
pub use numsgp::{NumericalError, NumericalSemigroup};
pub use poly::{
    build_genus_polynomial, ratio_table, render_decimal, GenusPolynomial, PolyError, RatioRow,
};
