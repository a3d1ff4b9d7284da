//! Formal covers: finite saturation, the frame of a presentation, the frame
//! envelope of a finite lattice, and derivation search over infinite bases.

mod finite;
mod presentation;
mod subset;

pub use finite::{CoverError, CoverLawViolation, Envelope, FiniteCover, MorphismCheck, PresentedFrame, DEFAULT_MAX_BASE};
pub use presentation::{CoherenceReport, CoherenceSample, CoverPresentation, Derivation, Derived};
pub use subset::{Subset, MAX_BASE};
