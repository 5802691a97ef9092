//! Separation-of-variables Fourier transforms over Bratteli diagrams.
//!
//! Each coset sum Σ_y ŷ·F_y is factored into interval pieces, lifted to
//! configuration spaces and folded together with restricted products.
//! Every complex operation is counted, and the counts can be compared with
//! quiver-morphism predictions and closed-form bounds.

pub mod bounds;
pub mod config;
pub mod counter;
pub mod engine;
pub mod error;
pub mod schedule;

pub use bounds::{
    b_hom_bound, b_hom_level_bound, b_level_bound, b_total_bound, closed_total_bound, d_level_bound, d_total_bound,
    gl_bound, gn_bound, gn_hom_bound, GnStats,
};
pub use config::{
    element_config, lift_into, lift_to_config, restricted_product, unlift_config, unlift_strands, ConfigElement,
    ConfigSpace,
};
pub use counter::OpCounter;
pub use engine::{
    check_invariant, coset_representatives, homogeneous_sov_fft, invariant_lift, predict_fft_cost, sov_fft, sov_sum,
    FftStats, LevelPlan, SovFft,
};
pub use error::{Result, SovError};
pub use schedule::{default_sigma, predicted_cost, SovSchedule, StageInfo};
