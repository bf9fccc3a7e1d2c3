//! Vector space valued functors on finite posets and their Betti diagrams.

pub mod colimit;
pub mod free;
pub mod functor;
pub mod koszul;
pub mod resolution;
pub mod tame;

pub use colimit::{cofinal_comparison, colimit, colimit_below, Colimit};
pub use free::{betti_of_free, free_functor, radical_quotient_dims, FreeFunctor};
pub use functor::{cokernel, kernel, NatTransformation, VectFunctor};
pub use koszul::{
    betti_koszul, betti_koszul_diagram, exactness_report, koszul_certified, koszul_complex, koszul_complex_ordered,
    ExactnessReport, KoszulComplex,
};
pub use resolution::{betti_resolution, minimal_cover, minimal_resolution, Resolution};
pub use tame::{lacks_lower_value, refine_tame, tame_betti};
