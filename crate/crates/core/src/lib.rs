//! Computations around the generalized Fermat equation x^5 + y^p + z^3 = 0.
//!
//! The crate is organised bottom-up: exact arithmetic in [`arith`], character
//! sums in [`hgmsum`], curve models and point counts in [`curves`], local
//! conductor predictions in [`conductor`], the ghost-solution search in
//! [`ghost`] and the newform elimination engine in [`eliminate`].

pub mod arith;
pub mod conductor;
pub mod curves;
pub mod eliminate;
pub mod error;
pub mod ghost;
pub mod hgmsum;

pub use error::{Error, Result};
