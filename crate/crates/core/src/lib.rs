//! Selberg-type Dirichlet series over geodesic length spectra.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod config;
pub mod error;
pub mod kernels;
pub mod scalar;
pub mod selberg_local;
pub mod series;
pub mod special;
pub mod spectra;
pub mod verify;

pub use config::SeriesConfig;
pub use error::{Error, Result};
pub use scalar::{Complex, ComplexScalar, Dd};
