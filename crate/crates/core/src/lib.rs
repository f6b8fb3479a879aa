//! Hollow symmetric matrices with a prescribed graph pattern: spectra,
//! multiplicity lists, generalized cycles, constructions and obstructions.

pub mod error;
pub mod gencyc;
pub mod graph;
pub mod catalog;
pub mod cli;
pub mod linalg;
pub mod obstructions;
pub mod realizers;
pub mod search;
pub mod spectra;
pub mod target;

pub use error::{Error, Result};
pub use graph::{Graph, FamilyKind, FamilySpec};
pub use realizers::RealizationResult;
pub use spectra::{HollowMatrix, Oml, Spectrum};
pub use target::{Target, TargetSpectrum, Value};
