//! Orthogonal polynomial systems: three-term recurrences, measures and
//! moments, explicit classical, discrete and q-families, Christoffel–Darboux
//! kernels, Gauss quadrature and moment-problem diagnostics.
//!
//! Every result can be checked against an internal identity: series versus
//! recurrence, quadrature exactness, kernel closed forms, difference and
//! differential equations, limit transitions.

pub mod catalog;
pub mod classical;
pub mod discrete;
pub mod error;
pub mod kernel;
pub mod measures;
pub mod moment;
pub mod numeric;
pub mod par;
pub mod qseries;
pub mod quadrature;
pub mod recurrence;

pub use error::{Error, Result};
pub use numeric::Precision;
pub use par::Execution;
pub use recurrence::{Coefficients, Form, NormData, Normalization, RecurrenceSystem};
