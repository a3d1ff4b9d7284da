use std::fmt;

use super::{check_overt, BooleanizationError, Positivity};
use crate::sigma_frame::{DistributiveLattice, SigmaFrameHom};

/// Largest lattice accepted by [`enumerate_congruences`].
pub const MAX_ENUMERATION: usize = 10;

/// An equivalence relation on lattice elements, stored as a class index per
/// element. Class indices are numbered in order of first occurrence.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Congruence {
    class: Vec<usize>,
}

/// Failure of `x ∼ y ⇒ x ∧ z ∼ y ∧ z` or of its join counterpart.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CongruenceViolation {
    pub x: usize,
    pub y: usize,
    pub z: usize,
    pub join: bool,
}

impl fmt::Display for CongruenceViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let op = if self.join { "join" } else { "meet" };
        write!(f, "#{} ∼ #{} but their {op}s with #{} are apart", self.x, self.y, self.z)
    }
}

impl Congruence {
    /// Normalizes arbitrary labels to first-occurrence numbering.
    pub fn from_labels<L: PartialEq>(labels: &[L]) -> Self {
        let mut seen: Vec<&L> = Vec::new();
        let class = labels
            .iter()
            .map(|l| match seen.iter().position(|s| *s == l) {
                Some(i) => i,
                None => {
                    seen.push(l);
                    seen.len() - 1
                }
            })
            .collect();
        Congruence { class }
    }

    pub fn identity(n: usize) -> Self {
        Congruence { class: (0..n).collect() }
    }

    pub fn total(n: usize) -> Self {
        Congruence { class: vec![0; n] }
    }

    /// Identity except that the listed elements form one class.
    pub fn collapsing(n: usize, block: &[usize]) -> Self {
        let labels: Vec<usize> = (0..n).map(|x| if block.contains(&x) { block[0] } else { x }).collect();
        Self::from_labels(&labels)
    }

    pub fn len(&self) -> usize {
        self.class.len()
    }

    pub fn is_empty(&self) -> bool {
        self.class.is_empty()
    }

    pub fn class_of(&self, x: usize) -> usize {
        self.class[x]
    }

    pub fn labels(&self) -> &[usize] {
        &self.class
    }

    pub fn related(&self, x: usize, y: usize) -> bool {
        self.class[x] == self.class[y]
    }

    pub fn class_count(&self) -> usize {
        self.class.iter().max().map_or(0, |m| m + 1)
    }

    /// Members of each class, classes in index order.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.class_count()];
        for (x, &c) in self.class.iter().enumerate() {
            out[c].push(x);
        }
        out
    }

    /// `self ⊆ other` as relations: every class of `self` lies inside a
    /// class of `other`.
    pub fn refines(&self, other: &Congruence) -> bool {
        (0..self.len()).all(|x| (0..x).all(|y| !self.related(x, y) || other.related(x, y)))
    }

    /// Compatibility with binary meets and joins. Each element is compared
    /// with the first member of its class, which suffices for an
    /// equivalence relation.
    pub fn check(&self, l: &DistributiveLattice) -> Result<(), CongruenceViolation> {
        let first: Vec<usize> = self.classes().iter().map(|c| c[0]).collect();
        for x in l.elements() {
            let y = first[self.class[x]];
            if x == y {
                continue;
            }
            for z in l.elements() {
                if !self.related(l.meet(x, z), l.meet(y, z)) {
                    return Err(CongruenceViolation { x, y, z, join: false });
                }
                if !self.related(l.join(x, z), l.join(y, z)) {
                    return Err(CongruenceViolation { x, y, z, join: true });
                }
            }
        }
        Ok(())
    }
}

/// `x ∼ y` iff `Pos(x ∧ z) ⇔ Pos(y ∧ z)` for every `z`.
pub fn bool_congruence(l: &DistributiveLattice, pos: &Positivity) -> Result<Congruence, BooleanizationError> {
    check_overt(l, pos).map_err(BooleanizationError::NotOvert)?;
    let signatures: Vec<Vec<bool>> = l
        .elements()
        .map(|x| l.elements().map(|z| pos.holds(l.meet(x, z))).collect())
        .collect();
    Ok(Congruence::from_labels(&signatures))
}

pub fn is_dense(l: &DistributiveLattice, c: &Congruence) -> bool {
    l.elements().all(|x| !c.related(x, l.bottom()) || x == l.bottom())
}

/// Positivity is constant on every class.
pub fn is_strongly_dense(c: &Congruence, pos: &Positivity) -> bool {
    (0..c.len()).all(|a| (0..c.len()).all(|b| !c.related(a, b) || !pos.holds(a) || pos.holds(b)))
}

/// `L/∼` with its projection and the inherited positivity.
#[derive(Debug, Clone)]
pub struct Quotient {
    pub lattice: DistributiveLattice,
    pub projection: SigmaFrameHom,
    pub pos: Positivity,
}

/// The quotient lattice, one element per class in class order, each named
/// after the top element of its class, ordered by `[x] ≤ [y]` iff
/// `x ∧ y ∼ x`.
pub fn quotient_lattice(
    l: &DistributiveLattice,
    c: &Congruence,
) -> Result<(DistributiveLattice, SigmaFrameHom), BooleanizationError> {
    if c.len() != l.len() {
        return Err(BooleanizationError::Shape {
            expected: l.len(),
            found: c.len(),
        });
    }
    c.check(l).map_err(BooleanizationError::NotACongruence)?;
    let classes = c.classes();
    let rep: Vec<usize> = classes.iter().map(|members| l.join_all(members.iter().copied())).collect();
    let names = rep.iter().map(|&r| l.name(r).to_string()).collect();
    let q = DistributiveLattice::from_relation(names, |a, b| c.related(l.meet(rep[a], rep[b]), rep[a]))
        .expect("quotient of a distributive lattice by a congruence is distributive");
    let map = l.elements().map(|x| c.class_of(x)).collect();
    let projection = SigmaFrameHom::new(l.clone(), q.clone(), map);
    Ok((q, projection))
}

/// [`quotient_lattice`] together with `Pos([x]) = Pos(x)`, refused when
/// positivity is not constant on some class.
pub fn quotient(l: &DistributiveLattice, c: &Congruence, pos: &Positivity) -> Result<Quotient, BooleanizationError> {
    pos.check_len(l.len())?;
    let (lattice, projection) = quotient_lattice(l, c)?;
    let classes = c.classes();
    for members in &classes {
        let positive = members.iter().find(|&&x| pos.holds(x));
        let negative = members.iter().find(|&&x| !pos.holds(x));
        if let (Some(&p), Some(&n)) = (positive, negative) {
            return Err(BooleanizationError::RepresentativeDependentPos {
                positive: l.name(p).to_string(),
                negative: l.name(n).to_string(),
            });
        }
    }
    let pos = Positivity::from_fn(classes.len(), |k| pos.holds(classes[k][0]));
    Ok(Quotient {
        lattice,
        projection,
        pos,
    })
}

/// Every congruence of `l`, in lexicographic order of class index vectors.
pub fn enumerate_congruences(l: &DistributiveLattice) -> Result<Vec<Congruence>, BooleanizationError> {
    if l.len() > MAX_ENUMERATION {
        return Err(BooleanizationError::TooLarge {
            size: l.len(),
            cap: MAX_ENUMERATION,
        });
    }
    let mut out = Vec::new();
    let mut labels = vec![0usize; l.len()];
    restricted_growth(l, &mut labels, 0, 0, &mut out);
    Ok(out)
}

fn restricted_growth(l: &DistributiveLattice, labels: &mut Vec<usize>, i: usize, used: usize, out: &mut Vec<Congruence>) {
    if i == labels.len() {
        let c = Congruence { class: labels.clone() };
        if c.check(l).is_ok() {
            out.push(c);
        }
        return;
    }
    let limit = if i == 0 { 1 } else { used + 1 };
    for k in 0..limit {
        labels[i] = k;
        restricted_growth(l, labels, i + 1, used.max(k + 1), out);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{boolean_lattice, chain_lattice, with_nonzero_pos};
    use crate::sigma_frame::find_isomorphism;

    #[test]
    fn chain_booleanization() {
        let l = chain_lattice(2).unwrap();
        let c = bool_congruence(&l, &with_nonzero_pos(&l)).unwrap();
        assert_eq!(c.classes(), vec![vec![0], vec![1, 2]]);
        let q = quotient(&l, &c, &with_nonzero_pos(&l)).unwrap();
        assert!(find_isomorphism(&q.lattice, &chain_lattice(1).unwrap()).is_some());
        assert_eq!(q.lattice.names(), ["0", "1"]);
        assert_eq!(q.projection.check(), Ok(()));
    }

    #[test]
    fn diamond_booleanization_is_identity() {
        let l = boolean_lattice(2).unwrap();
        let c = bool_congruence(&l, &with_nonzero_pos(&l)).unwrap();
        assert_eq!(c, Congruence::identity(4));
    }

    #[test]
    fn degenerate_quotients() {
        let l = chain_lattice(2).unwrap();
        let (q, _) = quotient_lattice(&l, &Congruence::identity(3)).unwrap();
        assert!(find_isomorphism(&q, &l).is_some());
        let (q, p) = quotient_lattice(&l, &Congruence::total(3)).unwrap();
        assert_eq!(q.len(), 1);
        assert_eq!(p.check(), Ok(()));
        assert!(matches!(
            quotient(&l, &Congruence::total(3), &with_nonzero_pos(&l)),
            Err(BooleanizationError::RepresentativeDependentPos { .. })
        ));
    }

    #[test]
    fn density_examples() {
        let l = chain_lattice(2).unwrap();
        let pos = with_nonzero_pos(&l);
        let id = Congruence::identity(3);
        assert!(is_dense(&l, &id) && is_strongly_dense(&id, &pos));
        let low = Congruence::collapsing(3, &[0, 1]);
        assert!(!is_dense(&l, &low) && !is_strongly_dense(&low, &pos));
        let high = Congruence::collapsing(3, &[1, 2]);
        assert!(is_dense(&l, &high) && is_strongly_dense(&high, &pos));
    }

    #[test]
    fn chain_has_four_congruences() {
        let l = chain_lattice(2).unwrap();
        let all = enumerate_congruences(&l).unwrap();
        let labels: Vec<&[usize]> = all.iter().map(Congruence::labels).collect();
        assert_eq!(labels, vec![&[0, 0, 0][..], &[0, 0, 1], &[0, 1, 1], &[0, 1, 2]]);
        assert_eq!(enumerate_congruences(&chain_lattice(1).unwrap()).unwrap().len(), 2);
        assert!(enumerate_congruences(&chain_lattice(10).unwrap()).is_err());
    }

    #[test]
    fn non_congruence_is_rejected() {
        let l = chain_lattice(2).unwrap();
        let c = Congruence::collapsing(3, &[0, 2]);
        assert!(c.check(&l).is_err());
        assert!(matches!(quotient_lattice(&l, &c), Err(BooleanizationError::NotACongruence(_))));
    }
}
