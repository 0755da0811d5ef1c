#![no_std]

extern crate alloc;

pub mod corpus;
pub mod crossed_complex;
pub mod error;
pub mod extensions;
pub mod finite_algebra;
pub mod free_resolution;
pub mod hom_homotopy;
pub mod oracle;

pub use error::{Error, Result};
pub use finite_algebra::{FiniteGroup, GModule, GroupHom};
