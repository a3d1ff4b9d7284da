use super::{check_overt, BooleanizationError, Positivity};
use crate::formal_cover::{FiniteCover, Subset};
use crate::sigma_frame::DistributiveLattice;

/// First pair `(x, y)` in index order with `Pos(x ∧ z) ⇒ Pos(y ∧ z)` for
/// all `z` but `x ≰ y`, or `None` when there is none.
pub fn is_sigma_overlap_algebra(
    l: &DistributiveLattice,
    pos: &Positivity,
) -> Result<Option<(usize, usize)>, BooleanizationError> {
    check_overt(l, pos).map_err(BooleanizationError::NotOvert)?;
    for x in l.elements() {
        for y in l.elements() {
            let premise = l.elements().all(|z| !pos.holds(l.meet(x, z)) || pos.holds(l.meet(y, z)));
            if premise && !l.leq(x, y) {
                return Ok(Some((x, y)));
            }
        }
    }
    Ok(None)
}

/// Failure of an overt-cover law for a positivity predicate on a cover base.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoverPosViolation {
    Shape { expected: usize, found: usize },
    /// `a ⊲ U` and `Pos(a)` with no positive member of `U`.
    NotSplit { a: usize, cover: Subset },
    /// `¬Pos(a)` but `a ⊲ ∅` fails.
    NotPositiveNotEmpty { a: usize },
}

/// Checks the overt-cover laws, then looks for `a` and `U` with
/// `∀b. Pos(a ∧ b) ⇒ ∃u ∈ U. Pos(u ∧ b)` but not `a ⊲ U`. Returns the first
/// such pair found, by `U` in bitmask order and then `a`.
pub fn is_overlap_cover(
    cover: &FiniteCover,
    pos: &Positivity,
) -> Result<Option<(usize, Subset)>, CoverPosViolation> {
    let n = cover.len();
    if pos.len() != n {
        return Err(CoverPosViolation::Shape {
            expected: n,
            found: pos.len(),
        });
    }
    let empty = cover.saturate(Subset::EMPTY);
    if let Some(a) = (0..n).find(|&a| !pos.holds(a) && !empty.contains(a)) {
        return Err(CoverPosViolation::NotPositiveNotEmpty { a });
    }
    let subsets: Vec<Subset> = cover.base().subsets().collect();
    let saturations: Vec<Subset> = subsets.iter().map(|&u| cover.saturate(u)).collect();
    for (&u, &sat) in subsets.iter().zip(&saturations) {
        if u.iter().any(|x| pos.holds(x)) {
            continue;
        }
        if let Some(a) = sat.iter().find(|&a| pos.holds(a)) {
            return Err(CoverPosViolation::NotSplit { a, cover: u });
        }
    }
    // overlap[x] = { b | Pos(x ∧ b) }
    let overlap: Vec<Subset> = (0..n).map(|x| (0..n).filter(|&b| pos.holds(cover.meet(x, b))).collect()).collect();
    for (&u, &sat) in subsets.iter().zip(&saturations) {
        let reach = u.iter().fold(Subset::EMPTY, |acc, x| acc.union(overlap[x]));
        if let Some(a) = (0..n).find(|&a| overlap[a].is_subset(reach) && !sat.contains(a)) {
            return Ok(Some((a, u)));
        }
    }
    Ok(None)
}
