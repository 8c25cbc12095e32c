//! Exact computations with Hecke symmetries and the structures built on them.

pub mod hecke;
pub mod heckealg;
pub mod hpseries;
pub mod linalg;
pub mod poisson;
pub mod rea;
pub mod reps;
pub mod report;
pub mod scalar;
pub mod swcat;

pub use hecke::{HeckeError, HeckeSymmetry, Regime};
pub use heckealg::{AlgError, Partition, StandardTableau};
pub use hpseries::{HPSeries, SeriesError};
pub use linalg::{LinalgError, QMatrix};
pub use poisson::{Bracket, PolyFun, TripleWitness};
pub use rea::{ReaError, ReaStructure};
pub use reps::{RepError, RepSummary, Representation};
pub use report::{Check, Report, Status};
pub use scalar::{qbinom, qint, QScalar, ScalarError};
pub use swcat::{CategoryError, Letter, MixedWord};
