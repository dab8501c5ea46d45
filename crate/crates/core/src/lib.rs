//! Exact combinatorics and fundamental-group presentations of
//! complexified-real line arrangements.

pub mod arvola;
pub mod constructions;
pub mod error;
pub mod exec;
pub mod expr;
pub mod formats;
pub mod geom;
pub mod group;
pub mod poset;
pub mod rational;
pub mod svg;

pub use error::{Error, Result};
