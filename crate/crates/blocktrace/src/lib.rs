//! Block-matrix analysis: partial traces, partial transposes, partial
//! determinants, sector-angle computations and operator power constructions
//! over dense complex matrices, plus a seeded harness that checks a registry
//! of determinant, trace, norm and Löwner-ordering inequalities.
//!
//! Everything is deterministic: generators are pure functions of a 64-bit
//! seed, and fuzz reports are byte-identical across runs and across serial
//! vs. parallel execution.

pub mod blockops;
pub mod decomp;
pub mod harness;
pub mod io;
pub mod matrix;
pub mod randgen;
pub mod sector;
pub mod spectral;

mod error;

pub use blockops::{BlockMatrix, PptVerdict};
pub use decomp::{DetResult, PsdVerdict};
pub use error::{Error, Result};
pub use harness::{CheckOutcome, CheckParams, FuzzReport, InequalityCase};
pub use matrix::{Complex64, ComplexMatrix};
pub use randgen::{GenClass, GenSpec};
pub use sector::SectorReport;
