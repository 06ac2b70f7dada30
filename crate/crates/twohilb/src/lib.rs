//! Finite-dimensional 2-Hilbert spaces, computed with matrices of Hilbert spaces.
//!
//! The crate is organised bottom-up:
//! - [`linalg`]: dense complex matrices;
//! - [`cell`]: 1-cells, 2-cells, compositions, adjoints and rebracketing;
//! - [`generators`]: witnesses, measurements, controlled operations;
//! - [`algebra`]: Frobenius algebras and modules induced by witnesses;
//! - [`protocols`]: teleportation, dense coding, complementarity, erasure and
//!   horizontal invertibility;
//! - [`decoherence`]: classical data types, interaction maps and protected maps;
//! - [`dsl`] and [`json`]: the expression language and the document format.

pub mod algebra;
pub mod cell;
pub mod decoherence;
pub mod dsl;
pub mod generators;
pub mod json;
pub mod linalg;
pub mod protocols;
pub mod random;
pub mod report;

pub use cell::{OneCell, TwoCell};
pub use linalg::ComplexMatrix;
pub use num_complex::Complex64;
