//! σ-frames at two scales: explicit finite distributive lattices, where
//! every law is decidable, and the countable-subset σ-frame over a countable
//! set, whose elements are enumerations.

mod free;
mod hom;
mod lattice;

pub use free::{FreeElement, FreeFrameError, FreeSigmaFrame, Generator};
pub use hom::{check_map, HomViolation, SigmaFrameHom};
pub use lattice::{find_isomorphism, BinaryOp, DistributiveLattice, LatticeError, OrderLaw};
