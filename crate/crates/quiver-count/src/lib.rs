//! Counting quiver morphisms into Bratteli diagrams.

pub mod count;
pub mod enumerate;
pub mod error;
pub mod glue;
pub mod shape;
pub mod toothed;
pub mod weyl;

pub use bratteli::{Op, UDWord};
pub use count::{count_hom_bruteforce, count_hom_naive, count_hom_with, SpanTable};
pub use enumerate::enumerate_homs;
pub use error::{QuiverError, Result};
pub use glue::{classify, glue, Identification, IntervalCase, StrandGlue};
pub use shape::{smooth, ShapeQuiver};
pub use toothed::{
    eval_word, eval_word_operator, lambda_product, toothed_hom_count, toothed_to_word, word_to_toothed, ToothedQuiver,
    WordValue,
};
pub use weyl::{h_shape, hform_closed_count, hform_scaled_count, jump, k_shape, multiplicity_bound};
