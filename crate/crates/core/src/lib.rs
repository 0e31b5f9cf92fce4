//! Nonassociative quantum mechanics on finite-dimensional unital ∗-algebras.

#![allow(clippy::needless_range_loop)]

pub mod algebra;
pub mod cli;
pub mod dynamics;
pub mod eigen;
pub mod enveloping;
pub mod error;
pub mod gns;
pub mod instances;
pub mod io;
pub mod linalg;
pub mod matrix;
pub mod scalar;
pub mod states;

pub use algebra::{AlgebraSpec, AxiomReport, Element, Unit};
pub use enveloping::{Enveloping, GeneratedSubalgebra, MultOp, Side, Word};
pub use error::{NaqmError, Result};
pub use matrix::Matrix;
pub use scalar::{Exact, Scalar};
pub use states::{StateFunctional, TraceFunctional};
