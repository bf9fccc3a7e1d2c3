//! Finite posets, their continuous realisations, transfers and Kan
//! extensions along poset maps, and Betti diagrams of vector space valued
//! functors over prime fields.

pub mod bitset;
pub mod error;
pub mod homalg;
pub mod io;
pub mod linalg;
pub mod pipeline;
pub mod poset;
pub mod random;
pub mod realisation;
pub mod transfer;

pub use error::{Error, Result};
