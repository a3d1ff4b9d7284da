//! Reader and runner for presentation documents: lattices with positivity
//! predicates, finite cover presentations, and commands over them.
//!
//! ```text
//! lattice Chain {
//!   elements: 0 a 1;
//!   leq: 0<=a, a<=1;
//!   pos: a 1;
//! }
//! check Chain overt
//! booleanize Chain
//! ```

pub mod program;
pub mod run;
pub mod syntax;

pub use program::{LoadError, Object, Program};
pub use run::{run, Options, Report, Status};
pub use syntax::{parse, Document};
