//! Dispersion relations and contour checks for the electromagnetic response
//! of graphene and reference media.

// `!(x > 0.0)` is used on purpose so that NaN fails validation
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod contour;
pub mod error;
pub mod kramers_kronig;
pub mod quadrature;
pub mod response;

pub use error::{Error, Result};
