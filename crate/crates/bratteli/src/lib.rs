//! Graded quivers, Bratteli diagrams for the symmetric, hyperoctahedral,
//! type D and cyclic chains, root paths, and the up/down operator calculus.

pub mod diagram;
pub mod error;
pub mod label;
pub mod partition;
pub mod ud;

pub use diagram::{
    build_diagram, cyclic_diagram, hyperoctahedral_diagram, symmetric_diagram, type_d_diagram, BratteliDiagram,
    DiagramFamily, Edge, GradedQuiver, PathRef, Vertex,
};
pub use error::{BratteliError, Result};
pub use label::Label;
pub use ud::{apply_d, apply_u, apply_ud_word, inner, lambda_sequence, Op, UDWord, VertexVector};
