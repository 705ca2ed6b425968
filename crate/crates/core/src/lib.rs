//! Exact computer algebra for finitely presented adic rings.

pub mod adic;
pub mod corpus;
pub mod error;
pub mod groebner;
pub mod harness;
pub mod neighbourhood;
pub mod polyalg;
pub mod session;
pub(crate) mod syntax;

pub use error::{Error, Result};
