//! Executable kernel for constructive pointfree topology at desk scale.
//!
//! * [`semidecision`]: semi-decidable truth values as step-indexed probes.
//! * [`enumeration`]: countable subsets as sequences `ℕ → S + ⊥`, with the
//!   closure constructions (unions, detachable restriction, intersections).
//! * [`sigma_frame`]: finite distributive lattices, homomorphism checking and
//!   the countable-subset σ-frame.
//! * [`formal_cover`]: formal covers, inductively generated covers, the
//!   frame envelope and compactness search.
//! * [`booleanization`]: positivity predicates, σ-congruences and the
//!   Booleanization quotient with its brute-force minimality oracle.
//! * [`generators`]: canonical instances used across the test suites.
//!
//! ```
//! use sigmaframe::booleanization::{bool_congruence, quotient};
//! use sigmaframe::generators::{binary_strings, cantor_cover, chain_lattice, with_nonzero_pos, Word};
//! use sigmaframe::{Enumeration, Outcome};
//!
//! let l = chain_lattice(2).unwrap();
//! let pos = with_nonzero_pos(&l);
//! let c = bool_congruence(&l, &pos).unwrap();
//! let b = quotient(&l, &c, &pos).unwrap();
//! assert_eq!(b.lattice.len(), 2);
//!
//! let cover = cantor_cover();
//! let d = cover.derive(Word::empty(), Enumeration::from_vec(binary_strings(3)));
//! assert!(matches!(d.run(10_000), Outcome::Confirmed(_)));
//! ```

pub mod booleanization;
pub mod enumeration;
pub mod formal_cover;
pub mod generators;
pub mod semidecision;
pub mod sigma_frame;

pub use booleanization::{Congruence, Positivity};
pub use enumeration::{pair_decode, pair_encode, Enumeration, SemiDecidableEquality};
pub use formal_cover::{CoverPresentation, FiniteCover, Subset};
pub use semidecision::{Outcome, SemiDecision};
pub use sigma_frame::{DistributiveLattice, SigmaFrameHom};
