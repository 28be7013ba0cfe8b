//! Symbolic tensor calculus on coordinate charts: Levi-Civita and
//! semi-symmetric metric connections, their curvature, and quasi-Einstein
//! structure detection.

pub mod expr;

pub mod chart;
pub mod cli;
pub mod classify;
pub mod connection;
pub mod corpus;
pub mod curvature;
pub mod error;
pub mod report;
pub mod tensor;

pub use error::{Error, Result};
