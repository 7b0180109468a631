//! Modeling kernel for a process-object ontology over exact phenomenal time.
//!
//! The crate is `no_std` (it only needs `alloc`). It holds:
//!
//! - [`time`]: chronoids, time boundaries, coincidence and meeting.
//! - [`model`]: the immutable entity store (processes, presentials,
//!   continuants, situations, facts) and the basic relations over it.
//! - [`builder`]: two-pass construction and structural validation of a [`Model`].
//! - [`checker`]: the axiom suite (disjointness, object-process integration,
//!   presential dependence) and change detection.
//! - [`functions`]: function structures, realizations and realizers.
//! - [`truthmakers`]: elementary propositions and their truth-makers.
//!
//! Parsing, serialization and reporting live in the companion `gfo` crate.
#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod builder;
pub mod checker;
mod error;
#[cfg(test)]
mod fixtures;
pub mod functions;
mod id;
pub mod model;
pub mod time;
pub mod truthmakers;
pub mod value;

pub use builder::{ModelBuilder, ModelError, ModelErrorKind};
pub use error::Error;
pub use id::Id;
pub use model::{Continuant, Fact, Kind, Model, Presential, Process, Situation, SituationExtent};
pub use time::{BoundaryKind, Chronoid, Time, TimeBoundary, TimeError};
pub use value::{Comparison, PropertyDef, Rational, Support, Value, ValueConstraint, ValueDomain};

pub type Result<T, E = Error> = core::result::Result<T, E>;
