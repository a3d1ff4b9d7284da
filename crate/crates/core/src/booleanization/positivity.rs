use std::fmt;

use super::BooleanizationError;
use crate::sigma_frame::DistributiveLattice;

/// A decidable positivity predicate, indexed like the lattice or cover
/// base it lives on.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Positivity(Vec<bool>);

impl Positivity {
    pub fn new(pos: Vec<bool>) -> Self {
        Positivity(pos)
    }

    pub fn from_fn(n: usize, f: impl Fn(usize) -> bool) -> Self {
        Positivity((0..n).map(f).collect())
    }

    /// `Pos(x) ⇔ x ≠ 0`.
    pub fn nonzero(l: &DistributiveLattice) -> Self {
        Self::from_fn(l.len(), |x| x != l.bottom())
    }

    pub fn from_elements(n: usize, positive: &[usize]) -> Self {
        Self::from_fn(n, |x| positive.contains(&x))
    }

    pub fn holds(&self, x: usize) -> bool {
        self.0[x]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[bool] {
        &self.0
    }

    pub fn positive(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().filter(|(_, &p)| p).map(|(i, _)| i)
    }

    pub(crate) fn check_len(&self, n: usize) -> Result<(), BooleanizationError> {
        if self.len() == n {
            Ok(())
        } else {
            Err(BooleanizationError::Shape {
                expected: n,
                found: self.len(),
            })
        }
    }
}

/// First overtness law a predicate fails, by element index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OvertViolation {
    /// The predicate does not have one entry per element.
    Shape { expected: usize, found: usize },
    /// `Pos(0)`.
    BottomPositive,
    /// `a ≤ b` and `Pos(a)` but not `Pos(b)`.
    NotUpwardClosed { a: usize, b: usize },
    /// `Pos(⋁W)` yet no member of `W` is positive.
    JoinNotSplit { family: Vec<usize> },
    /// `a ≠ 0` and not `Pos(a)`.
    NonzeroNotPositive { a: usize },
}

impl fmt::Display for OvertViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OvertViolation::Shape { expected, found } => write!(f, "{found} entries for {expected} elements"),
            OvertViolation::BottomPositive => write!(f, "bottom is positive"),
            OvertViolation::NotUpwardClosed { a, b } => write!(f, "#{a} is positive but #{b} above it is not"),
            OvertViolation::JoinNotSplit { family } => write!(f, "join of {family:?} is positive, no member is"),
            OvertViolation::NonzeroNotPositive { a } => write!(f, "#{a} is nonzero but not positive"),
        }
    }
}

/// Families are checked exhaustively up to this size, and by binary joins
/// above it.
const EXHAUSTIVE_SPLIT: usize = 16;

/// Checks `¬Pos(0)`, upward closure, join splitting and `Pos(a) ∨ a = 0`,
/// in that order.
pub fn check_overt(l: &DistributiveLattice, pos: &Positivity) -> Result<(), OvertViolation> {
    if pos.len() != l.len() {
        return Err(OvertViolation::Shape {
            expected: l.len(),
            found: pos.len(),
        });
    }
    if pos.holds(l.bottom()) {
        return Err(OvertViolation::BottomPositive);
    }
    for a in pos.positive() {
        if let Some(b) = l.elements().find(|&b| l.leq(a, b) && !pos.holds(b)) {
            return Err(OvertViolation::NotUpwardClosed { a, b });
        }
    }
    if l.len() <= EXHAUSTIVE_SPLIT {
        for mask in 0u32..1 << l.len() {
            let family: Vec<usize> = l.elements().filter(|i| mask >> i & 1 == 1).collect();
            if pos.holds(l.join_all(family.iter().copied())) && !family.iter().any(|&w| pos.holds(w)) {
                return Err(OvertViolation::JoinNotSplit { family });
            }
        }
    } else {
        for a in l.elements() {
            for b in a..l.len() {
                if pos.holds(l.join(a, b)) && !pos.holds(a) && !pos.holds(b) {
                    return Err(OvertViolation::JoinNotSplit { family: vec![a, b] });
                }
            }
        }
    }
    if let Some(a) = l.elements().find(|&a| a != l.bottom() && !pos.holds(a)) {
        return Err(OvertViolation::NonzeroNotPositive { a });
    }
    Ok(())
}
