//! Exact computations in p-adic vertex operator algebras: the rank-one
//! Heisenberg and Virasoro vertex algebras, their mode algebra and axiom
//! defects, graded-trace characters, and Kummer congruences for the
//! square-bracket states whose characters are Eisenstein series.

pub mod axioms;
pub mod error;
pub mod fock;
pub mod kummer;
pub mod linear;
pub mod modes;
pub mod qseries;
pub mod scalar;
pub mod virasoro;

pub use axioms::{AxiomLab, DefectReport};
pub use error::{Error, Result};
pub use fock::{grade_basis, HeisenbergState, Partition};
pub use linear::{Combination, Monomial};
pub use modes::{Heisenberg, VertexAlgebra};
pub use qseries::QSeries;
pub use scalar::{bernoulli, NormExponent, PadicScalar, Rational, Valuation};
pub use virasoro::{PbwWord, Virasoro, VirasoroState};
