//! Exact construction and verification of crossed products, crossed
//! coproducts and cross product bialgebras given by structure constants.

pub mod algstruct;
pub mod bialgeq;
pub mod catalog;
pub mod corpus;
pub mod crossed;
pub mod error;
pub mod exactlin;
pub mod report;
pub mod twisteq;

pub use error::{Error, Result};
pub use report::CheckReport;
