//! Exact icosahedral cut-and-project quasicrystals and the aperiodic Jordan
//! and Witt algebras over them.

pub mod algebra;
pub mod error;
pub mod export;
pub mod golden;
pub mod hull;
pub mod icosian;
pub mod linalg;
pub mod quasiadd;
pub mod roots;
pub mod scheme;
pub mod symmetry;
pub mod verify;
pub mod window;
pub mod witt;

pub use error::{ParseError, QcError, Result};
pub use golden::{golden_mul, golden_sign, kappa_compare, star, GoldenInt, GoldenRat, KappaScaledRat};
