//! Fundamental N-quandles of spatial graphs and links.
//!
//! Presentations come from diagrams ([`diagram`]), built-in families
//! ([`families`]) or presentation files ([`presentation`]); [`engine`]
//! enumerates the finite quotient by trace-and-collapse and returns a
//! [`graph::CayleyGraph`], which can be verified and exported.

pub mod cli;
pub mod diagram;
pub mod engine;
pub mod error;
pub mod export;
pub mod families;
pub mod graph;
pub mod presentation;
pub mod regress;
pub mod word;

pub use diagram::{parse_diagram, DiagramSpec, SurgeryReport};
pub use engine::{enumerate, EnumerationLimits, EnumerationResult, Outcome};
pub use error::{Error, Result};
pub use families::{family_presentation, Family, FamilyParams};
pub use graph::{CayleyGraph, VerifyOptions, VerifyReport};
pub use presentation::{parse_presentation, EdgeLabeling, Presentation};
