//! Exact symbolic engine for the rank-one Heisenberg vertex operator algebra
//! `M(1)_a`, its logarithmic modules `M(1)_a (x) Omega`, and their explicit
//! logarithmic intertwining operators.

pub mod cli;
pub mod error;
pub mod fock;
pub mod intertwiner;
pub mod linalg;
pub mod logseries;
pub mod report;
pub mod scalar;
pub mod virstruct;

pub use error::{Error, Result};
pub use scalar::Rational;
