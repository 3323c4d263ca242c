//! Exact computations with division-ring extensions presented by structure
//! constants.

pub mod algebra;
pub mod audit;
pub mod bimodule;
pub mod constructions;
pub mod extension;
pub mod garcia;
pub mod grid;
pub mod matrix;
pub mod probe;
pub mod scalar;
pub mod spec;
pub mod tightness;
