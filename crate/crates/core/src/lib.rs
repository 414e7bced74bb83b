//! Length functions on countable groups, weighted Cayley graphs, and
//! executable witness searches for their genericity properties.
//!
//! The crate is organised bottom-up:
//!
//! * [`group`]: catalog groups with canonical normal forms and BFS balls;
//! * [`gstar`]: words in `G*<x>`, evaluation and mixed-identity witnesses;
//! * [`length`]: finite length tables, weight functions and their
//!   shortest-path length functions;
//! * [`graph`]: finite graphs, Cayley balls, extension-property checks and
//!   bounded universal-graph approximants;
//! * [`lab`]: the density and transitivity constructions as witness
//!   searches, plus exhaustive checks of the two counterexample groups.

pub mod error;
pub mod graph;
pub mod group;
pub mod gstar;
pub mod lab;
pub mod length;

pub use error::{Error, Result};
pub use group::{Element, GeneratingSet, Group, GroupSpec};

/// Default cap on the number of elements a single ball enumeration may hold.
pub const DEFAULT_BALL_CAP: usize = 2_000_000;
