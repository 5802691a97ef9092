//! Finite groups, subgroup chains and factored coset representatives.
//!
//! The families covered are cyclic towers, symmetric groups, the signed
//! permutation groups of types B and D, and GL_n over a finite field.

pub mod chain;
pub mod error;
pub mod field;
pub mod gl;
pub mod group;
pub mod matrix;

pub use chain::{
    coset_factor_sets, coset_representative_words, expand_slots, Factor, FactorKind, FactorSlot, FactorWord,
    Generator, GroupChain,
};
pub use error::{AlgebraError, Result};
pub use field::{Field, FieldElement};
pub use gl::{gl_act, gl_factor, gl_normalize, verify_gl_cosets, GlCosetReport, GlFactorization, Normalized, ZVector};
pub use group::{enumerate_group, group_op, identity, inverse, Family, GroupDesc, GroupElement, DEFAULT_SIZE_CAP};
pub use matrix::Matrix;
