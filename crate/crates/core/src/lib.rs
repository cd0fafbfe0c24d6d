// Tabulated constants keep their published digits; `!(x > 0.0)` also rejects NaN.
#![allow(clippy::excessive_precision, clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod error;
pub mod frenet_serret;
pub mod kinematics;
pub mod minkowski;
pub mod oscillatory;
pub mod quad;
pub mod received_signal;

pub use error::{Error, Result};
