//! Exterior calculus with polynomial coefficients on the universal cover,
//! the invariant generators of cohomology and the action of automorphisms on them.

mod action;
mod invariant;
mod poly;

pub use action::{
    acts_trivially_on_cohomology, dolbeault_action, generator_label, is_symplectic, lefschetz, rho,
    trace_det, trivial_action_criterion, ActionBlock, DolbeaultAction, TraceDet, GENERATORS,
};
pub use invariant::{
    complex_images, coframe, dolbeault_generators_expanded, from_coframe, phi1, phi2, pullback, real_frame,
    real_images, rotated_frame, rotated_products_expanded, to_coframe, to_real, verify_invariant_generators,
    FormCheck, FormsReport,
};
pub use poly::{Chart, Exponents, Poly, PolyForm};
