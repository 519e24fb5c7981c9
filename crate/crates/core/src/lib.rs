//! Computational universal algebra over finite algebras: homomorphism search,
//! canonical free algebras and coproducts in prevarieties generated by finite
//! algebras, string rewriting and free products of groups with amalgamation.

pub mod algcore;
pub mod amalgam;
pub mod error;
pub mod freeness;
pub mod homsearch;
pub mod prevariety;
pub mod srs;

pub use error::{Error, Result};
