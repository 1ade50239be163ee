#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bidisk;
pub mod config;
pub mod dirichlet;
pub mod equidistant;
pub mod error;
pub mod export;
pub mod hplane;
pub mod intersect;
pub mod par;
pub mod roots;
pub mod sqhyperbola;

pub use error::{GeomError, Result};
