use std::fmt;

use super::DistributiveLattice;

/// A map between finite lattices, checked for σ-frame homomorphism laws by
/// [`SigmaFrameHom::check`].
#[derive(Debug, Clone)]
pub struct SigmaFrameHom {
    pub source: DistributiveLattice,
    pub target: DistributiveLattice,
    pub map: Vec<usize>,
}

/// First law a map fails, named by source elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HomViolation {
    /// The map does not assign one target element to every source element.
    Shape { expected: usize, found: usize },
    Top { image: String },
    Bottom { image: String },
    Meet { a: String, b: String },
    Join { a: String, b: String },
}

impl fmt::Display for HomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HomViolation::Shape { expected, found } => {
                write!(f, "map has {found} entries, source has {expected} elements")
            }
            HomViolation::Top { image } => write!(f, "top is sent to `{image}`"),
            HomViolation::Bottom { image } => write!(f, "bottom is sent to `{image}`"),
            HomViolation::Meet { a, b } => write!(f, "meet of `{a}` and `{b}` is not preserved"),
            HomViolation::Join { a, b } => write!(f, "join of `{a}` and `{b}` is not preserved"),
        }
    }
}

impl SigmaFrameHom {
    pub fn new(source: DistributiveLattice, target: DistributiveLattice, map: Vec<usize>) -> Self {
        SigmaFrameHom { source, target, map }
    }

    pub fn identity(l: &DistributiveLattice) -> Self {
        Self::new(l.clone(), l.clone(), l.elements().collect())
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    /// Preservation of top, bottom and all binary meets and joins. At finite
    /// scale this covers every countable join.
    pub fn check(&self) -> Result<(), HomViolation> {
        check_map(&self.source, &self.target, &self.map)
    }
}

/// Same check as [`SigmaFrameHom::check`] without taking ownership of the
/// lattices.
pub fn check_map(source: &DistributiveLattice, target: &DistributiveLattice, map: &[usize]) -> Result<(), HomViolation> {
    if map.len() != source.len() || map.iter().any(|&y| y >= target.len()) {
        return Err(HomViolation::Shape {
            expected: source.len(),
            found: map.len(),
        });
    }
    let f = |x: usize| map[x];
    if f(source.top()) != target.top() {
        return Err(HomViolation::Top {
            image: target.name(f(source.top())).to_string(),
        });
    }
    if f(source.bottom()) != target.bottom() {
        return Err(HomViolation::Bottom {
            image: target.name(f(source.bottom())).to_string(),
        });
    }
    for a in source.elements() {
        for b in source.elements() {
            let names = || (source.name(a).to_string(), source.name(b).to_string());
            if f(source.meet(a, b)) != target.meet(f(a), f(b)) {
                let (a, b) = names();
                return Err(HomViolation::Meet { a, b });
            }
            if f(source.join(a, b)) != target.join(f(a), f(b)) {
                let (a, b) = names();
                return Err(HomViolation::Join { a, b });
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::chain_lattice;

    #[test]
    fn identity_passes() {
        assert_eq!(SigmaFrameHom::identity(&chain_lattice(2).unwrap()).check(), Ok(()));
    }

    #[test]
    fn constant_top_fails_bottom() {
        let l = chain_lattice(2).unwrap();
        let h = SigmaFrameHom::new(l.clone(), l.clone(), vec![l.top(); l.len()]);
        assert_eq!(h.check(), Err(HomViolation::Bottom { image: "1".into() }));
    }

    #[test]
    fn collapsing_middle_of_chain_to_two_element_lattice() {
        let l = chain_lattice(2).unwrap();
        let two = chain_lattice(1).unwrap();
        // 0 ↦ 0, a ↦ 1, 1 ↦ 1 preserves everything
        assert_eq!(SigmaFrameHom::new(l.clone(), two.clone(), vec![0, 1, 1]).check(), Ok(()));
        assert_eq!(SigmaFrameHom::new(l.clone(), two.clone(), vec![0, 0, 1]).check(), Ok(()));
        assert!(matches!(
            SigmaFrameHom::new(l, two, vec![0, 1]).check(),
            Err(HomViolation::Shape { .. })
        ));
    }
}
