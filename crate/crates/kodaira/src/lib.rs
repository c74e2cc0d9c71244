pub mod acceptance;
pub mod affine;
pub mod error;
pub mod exactfield;
pub mod forms;
pub mod fixedlocus;
pub mod lifts;
pub mod par;
pub mod pi1;
pub mod sample;
pub mod surface;

pub use error::{Error, Result};
