//! Positivity predicates, σ-congruences, Booleanization and the overlap
//! algebra checks on finite instances.

mod congruence;
mod oracle;
mod overlap;
mod positivity;

use thiserror::Error;

pub use congruence::{
    bool_congruence, enumerate_congruences, is_dense, is_strongly_dense, quotient, quotient_lattice, Congruence,
    CongruenceViolation, Quotient, MAX_ENUMERATION,
};
pub use oracle::smallest_strongly_dense_oracle;
pub use overlap::{is_overlap_cover, is_sigma_overlap_algebra, CoverPosViolation};
pub use positivity::{check_overt, OvertViolation, Positivity};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BooleanizationError {
    #[error("predicate has {found} entries, expected {expected}")]
    Shape { expected: usize, found: usize },
    #[error("positivity is not overt: {0}")]
    NotOvert(OvertViolation),
    #[error("not a congruence: {0}")]
    NotACongruence(CongruenceViolation),
    #[error("positivity differs between `{positive}` and `{negative}` in one class")]
    RepresentativeDependentPos { positive: String, negative: String },
    #[error("lattice has {size} elements, above the enumeration cap of {cap}")]
    TooLarge { size: usize, cap: usize },
    #[error("strongly dense congruences have no coarsest member")]
    NoMaximumFound,
}
