//! Finite algebras, terms, congruences and the algebra file format.

mod algebra;
mod congruence;
mod hom;
pub mod io;
mod term;

pub use algebra::{
    decode_tuple, tuple_index, FiniteAlgebra, OpSymbol, Product, Signature, Subalgebra,
};
pub(crate) use algebra::for_each_tuple;
pub use congruence::{
    all_congruences, congruence_generated, is_subdirectly_irreducible, Congruence,
    DEFAULT_CONGRUENCE_BOUND,
};
pub(crate) use congruence::monolith_of;
pub use hom::Homomorphism;
pub use term::{Term, TermDisplay};
