//! Adapted matrix representations of S_n, B_n and cyclic towers, indexed by
//! root paths of the Bratteli diagram, and the path-algebra coordinates and
//! reference Fourier transforms built on them.

pub mod adapted;
pub mod error;
pub mod fourier;
pub mod path_algebra;
pub mod rep;

pub use adapted::{check_adapted, AdaptednessReport, Violation};
pub use error::{RepError, Result};
pub use fourier::{block_rel_error, inverse_fourier, max_rel_error, naive_fourier};
pub use path_algebra::{element_to_path_coords, embed_element, path_multiply, word_to_path_coords, PathAlgebraElement};
pub use rep::{factor_into_generators, generator_matrix, AdaptedRep, CMatrix, C64};
