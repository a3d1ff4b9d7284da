use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use super::presentation::{CoherenceReport, CoverPresentation};
use super::subset::{Subset, MAX_BASE};
use crate::enumeration::{Enumeration, EnumerationError, SemiDecidableEquality};
use crate::sigma_frame::{check_map, DistributiveLattice, HomViolation, LatticeError, SigmaFrameHom};

/// Default cap on the base size for [`FiniteCover::frame`].
pub const DEFAULT_MAX_BASE: usize = 15;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoverError {
    #[error("a cover needs at least one base element")]
    Empty,
    #[error("element `{0}` is declared twice")]
    DuplicateElement(String),
    #[error("meet table is not {0}x{0}")]
    Shape(usize),
    #[error("index {0} is outside the base")]
    OutOfRange(usize),
    #[error("meet is not idempotent at `{0}`")]
    MeetNotIdempotent(String),
    #[error("meet is not commutative at `{0}`, `{1}`")]
    MeetNotCommutative(String, String),
    #[error("meet is not associative at `{0}`, `{1}`, `{2}`")]
    MeetNotAssociative(String, String, String),
    #[error("top `{top}` is not a unit for meet at `{at}`")]
    TopNotUnit { top: String, at: String },
    #[error("base has {size} elements, above the cap of {cap}")]
    TooLarge { size: usize, cap: usize },
    #[error("the subset does not cover top")]
    DoesNotCoverTop,
    #[error(transparent)]
    Enumeration(#[from] EnumerationError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// A formal cover over a finite inf-semilattice base, generated by raw
/// axioms `a ⊲ C`.
///
/// On construction the axioms are normalized: `a ⊲ {⊤}` and
/// `a ∧ b ⊲ {a}` are added for all `a, b`, and every axiom `a ⊲ C` gets its
/// stable copies `a ∧ b ⊲ {c ∧ b | c ∈ C}`. The generated cover is the least
/// fixpoint of the normalized axioms, computed by [`FiniteCover::saturate`].
#[derive(Clone)]
pub struct FiniteCover {
    names: Vec<String>,
    meet: Vec<usize>,
    top: usize,
    axioms: Vec<(usize, Subset)>,
    compiled: Vec<(usize, Subset)>,
}

impl fmt::Debug for FiniteCover {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteCover")
            .field("names", &self.names)
            .field("top", &self.names[self.top])
            .field("axioms", &self.axioms.len())
            .finish()
    }
}

/// First formal-cover law the generated cover fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoverLawViolation {
    /// `a ⊲ {⊤}` fails.
    Top { a: usize },
    /// `a ⊲ U` holds but `a ∧ b ⊲ {u ∧ b | u ∈ U}` does not.
    Stability { a: usize, b: usize, cover: Subset },
}

/// The frame presented by a finite cover: saturated subsets ordered by
/// inclusion.
#[derive(Debug, Clone)]
pub struct PresentedFrame {
    pub lattice: DistributiveLattice,
    /// Saturated set behind each lattice element, by lattice index.
    pub sets: Vec<Subset>,
}

impl PresentedFrame {
    pub fn element_of(&self, saturated: Subset) -> Option<usize> {
        self.sets.iter().position(|&s| s == saturated)
    }
}

/// Output of [`FiniteCover::relation_as_morphism`].
#[derive(Debug, Clone)]
pub enum MorphismCheck {
    Homomorphism(SigmaFrameHom),
    /// Two subsets with the same saturation have images with different
    /// saturations. The witness saturates to the same set as its saturation
    /// but is mapped elsewhere.
    NotWellDefined { subset: Subset },
    NotHomomorphism { hom: SigmaFrameHom, violation: HomViolation },
}

impl FiniteCover {
    pub fn new(
        names: Vec<String>,
        meet: Vec<Vec<usize>>,
        top: usize,
        axioms: Vec<(usize, Vec<usize>)>,
    ) -> Result<Self, CoverError> {
        let n = names.len();
        if n == 0 {
            return Err(CoverError::Empty);
        }
        if n > MAX_BASE {
            return Err(CoverError::TooLarge { size: n, cap: MAX_BASE });
        }
        let mut seen = BTreeSet::new();
        for name in &names {
            if !seen.insert(name.as_str()) {
                return Err(CoverError::DuplicateElement(name.clone()));
            }
        }
        if meet.len() != n || meet.iter().any(|row| row.len() != n) {
            return Err(CoverError::Shape(n));
        }
        let flat: Vec<usize> = meet.into_iter().flatten().collect();
        if let Some(&bad) = flat.iter().find(|&&x| x >= n) {
            return Err(CoverError::OutOfRange(bad));
        }
        if top >= n {
            return Err(CoverError::OutOfRange(top));
        }
        let m = |a: usize, b: usize| flat[a * n + b];
        let nm = |i: usize| names[i].clone();
        for a in 0..n {
            if m(a, a) != a {
                return Err(CoverError::MeetNotIdempotent(nm(a)));
            }
        }
        for a in 0..n {
            for b in 0..n {
                if m(a, b) != m(b, a) {
                    return Err(CoverError::MeetNotCommutative(nm(a), nm(b)));
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if m(m(a, b), c) != m(a, m(b, c)) {
                        return Err(CoverError::MeetNotAssociative(nm(a), nm(b), nm(c)));
                    }
                }
            }
        }
        if let Some(a) = (0..n).find(|&a| m(a, top) != a) {
            return Err(CoverError::TopNotUnit { top: nm(top), at: nm(a) });
        }
        let mut raw = Vec::with_capacity(axioms.len());
        for (head, body) in axioms {
            if head >= n {
                return Err(CoverError::OutOfRange(head));
            }
            if let Some(&bad) = body.iter().find(|&&c| c >= n) {
                return Err(CoverError::OutOfRange(bad));
            }
            raw.push((head, body.into_iter().collect::<Subset>()));
        }

        let mut compiled = BTreeSet::new();
        for a in 0..n {
            compiled.insert((a, Subset::singleton(top)));
            for b in 0..n {
                compiled.insert((m(a, b), Subset::singleton(a)));
            }
        }
        for &(a, body) in &raw {
            for b in 0..n {
                let stable: Subset = body.iter().map(|c| m(c, b)).collect();
                compiled.insert((m(a, b), stable));
            }
        }
        let compiled = compiled
            .into_iter()
            .filter(|&(head, body)| !body.contains(head))
            .collect();
        Ok(FiniteCover {
            names,
            meet: flat,
            top,
            axioms: raw,
            compiled,
        })
    }

    /// Same cover with new element names.
    pub fn renamed(&self, names: Vec<String>) -> Result<Self, CoverError> {
        let n = self.len();
        if names.len() != n {
            return Err(CoverError::Shape(n));
        }
        let meet = (0..n).map(|a| (0..n).map(|b| self.meet(a, b)).collect()).collect();
        let axioms = self.axioms.iter().map(|&(h, body)| (h, body.iter().collect())).collect();
        Self::new(names, meet, self.top, axioms)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.len() + b]
    }

    /// The base order `a ≤ b` iff `a ∧ b = a`.
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.meet(a, b) == a
    }

    pub fn axioms(&self) -> &[(usize, Subset)] {
        &self.axioms
    }

    pub fn base(&self) -> Subset {
        Subset::full(self.len())
    }

    pub fn describe(&self, s: Subset) -> String {
        let items: Vec<&str> = s.iter().map(|i| self.name(i)).collect();
        format!("{{{}}}", items.join(","))
    }

    /// Least superset of `u` closed under the normalized axioms.
    pub fn saturate(&self, u: Subset) -> Subset {
        let mut v = u;
        loop {
            let mut changed = false;
            for &(head, body) in &self.compiled {
                if !v.contains(head) && body.is_subset(v) {
                    v.insert(head);
                    changed = true;
                }
            }
            if !changed {
                return v;
            }
        }
    }

    /// `a ⊲ U` in the generated cover.
    pub fn covers(&self, a: usize, u: Subset) -> bool {
        self.saturate(u).contains(a)
    }

    /// `{u ∧ v | u ∈ U, v ∈ V}`.
    pub fn pointwise_meet(&self, u: Subset, v: Subset) -> Subset {
        u.iter().flat_map(|x| v.iter().map(move |y| (x, y))).map(|(x, y)| self.meet(x, y)).collect()
    }

    /// `m(a) = [{a}]` for every base element.
    pub fn embedding(&self) -> Vec<Subset> {
        (0..self.len()).map(|a| self.saturate(Subset::singleton(a))).collect()
    }

    /// The same cover as a general presentation over indices, for the
    /// derivation search.
    pub fn presentation(&self) -> CoverPresentation<usize> {
        let n = self.len();
        let table = self.meet.clone();
        let mut by_head: Vec<Vec<Enumeration<usize>>> = vec![Vec::new(); n];
        for &(head, body) in &self.axioms {
            by_head[head].push(Enumeration::from_vec(body.iter().collect()));
        }
        let leq: Vec<bool> = (0..n * n).map(|k| self.meet[k] == k / n).collect();
        let heads: Vec<usize> = (0..n).filter(|&a| !by_head[a].is_empty()).collect();
        CoverPresentation::new(
            SemiDecidableEquality::decidable(),
            move |&a: &usize, &b: &usize| table[a * n + b],
            self.top,
            move |&a: &usize| by_head[a].clone(),
            move |&x: &usize| heads.iter().copied().filter(|&a| leq[x * n + a]).collect(),
        )
        .with_finite_size(n)
    }

    /// Every subset of a finite base is countable.
    pub fn check_sigma_coherent(&self) -> CoherenceReport<usize> {
        CoherenceReport::AllSubsetsCountable
    }

    /// Enumerates all saturated subsets and orders them by inclusion.
    pub fn frame(&self, max_base: usize) -> Result<PresentedFrame, CoverError> {
        if self.len() > max_base {
            return Err(CoverError::TooLarge {
                size: self.len(),
                cap: max_base,
            });
        }
        let saturated: BTreeSet<(usize, Subset)> = self
            .base()
            .subsets()
            .map(|u| {
                let s = self.saturate(u);
                (s.len(), s)
            })
            .collect();
        let sets: Vec<Subset> = saturated.into_iter().map(|(_, s)| s).collect();
        let names = sets.iter().map(|&s| self.frame_element_name(s)).collect();
        let lattice = DistributiveLattice::from_relation(names, |a, b| sets[a].is_subset(sets[b]))?;
        Ok(PresentedFrame { lattice, sets })
    }

    /// Names a saturated set by its maximal elements.
    fn frame_element_name(&self, s: Subset) -> String {
        let maximal: Vec<&str> = s
            .iter()
            .filter(|&x| !s.iter().any(|y| y != x && self.leq(x, y)))
            .map(|x| self.name(x))
            .collect();
        format!("[{}]", maximal.join("+"))
    }

    /// Checks `a ⊲ {⊤}` and `a ⊲ U ⇒ a ∧ b ⊲ {u ∧ b | u ∈ U}` over every
    /// element and subset of the base.
    pub fn check_formal_cover_axioms(&self) -> Result<(), CoverLawViolation> {
        let top_sat = self.saturate(Subset::singleton(self.top));
        if let Some(a) = (0..self.len()).find(|&a| !top_sat.contains(a)) {
            return Err(CoverLawViolation::Top { a });
        }
        for u in self.base().subsets() {
            let sat = self.saturate(u);
            for b in 0..self.len() {
                let moved = self.saturate(self.pointwise_meet(u, Subset::singleton(b)));
                for a in sat.iter() {
                    if !moved.contains(self.meet(a, b)) {
                        return Err(CoverLawViolation::Stability { a, b, cover: u });
                    }
                }
            }
        }
        Ok(())
    }

    /// A smallest-cardinality `K ⊆ U` with `⊤ ⊲ K`, searched by increasing
    /// size and then in lexicographic order of elements.
    pub fn check_compactness(&self, u: Subset) -> Result<Subset, CoverError> {
        if !self.covers(self.top, u) {
            return Err(CoverError::DoesNotCoverTop);
        }
        let items: Vec<usize> = u.iter().collect();
        for size in 0..=items.len() {
            if let Some(k) = self.first_covering_combination(&items, size) {
                return Ok(k);
            }
        }
        unreachable!("U itself covers top")
    }

    fn first_covering_combination(&self, items: &[usize], size: usize) -> Option<Subset> {
        fn go(cover: &FiniteCover, items: &[usize], start: usize, left: usize, acc: Subset) -> Option<Subset> {
            if left == 0 {
                return cover.covers(cover.top, acc).then_some(acc);
            }
            (start..=items.len().saturating_sub(left))
                .find_map(|i| go(cover, items, i + 1, left - 1, acc.with(items[i])))
        }
        go(self, items, 0, size, Subset::EMPTY)
    }

    /// Checks whether `U ↦ sat₂(⋃_{a ∈ U} R(a))` induces a σ-frame
    /// homomorphism from the frame of `self` to the frame of `target`.
    pub fn relation_as_morphism<R>(
        &self,
        target: &FiniteCover,
        relation: R,
        max_base: usize,
    ) -> Result<MorphismCheck, CoverError>
    where
        R: Fn(usize) -> Enumeration<usize>,
    {
        let images = (0..self.len())
            .map(|a| -> Result<Subset, CoverError> {
                let elems = relation(a).elements()?;
                if let Some(&bad) = elems.iter().find(|&&b| b >= target.len()) {
                    return Err(CoverError::OutOfRange(bad));
                }
                Ok(elems.into_iter().collect())
            })
            .collect::<Result<Vec<_>, _>>()?;
        let image_of = |u: Subset| target.saturate(u.iter().fold(Subset::EMPTY, |acc, a| acc.union(images[a])));
        for u in self.base().subsets() {
            if image_of(u) != image_of(self.saturate(u)) {
                return Ok(MorphismCheck::NotWellDefined { subset: u });
            }
        }
        let source = self.frame(max_base)?;
        let dest = target.frame(max_base)?;
        let map: Vec<usize> = source
            .sets
            .iter()
            .map(|&s| dest.element_of(image_of(s)).expect("saturation is a frame element"))
            .collect();
        let verdict = check_map(&source.lattice, &dest.lattice, &map);
        let hom = SigmaFrameHom::new(source.lattice, dest.lattice, map);
        Ok(match verdict {
            Ok(()) => MorphismCheck::Homomorphism(hom),
            Err(violation) => MorphismCheck::NotHomomorphism { hom, violation },
        })
    }
}

/// The frame envelope of a finite distributive lattice: base `L`, meets
/// from `L`, and axioms `a ⊲ {b, c}` whenever `a ≤ b ∨ c` together with
/// `0 ⊲ ∅`.
#[derive(Debug, Clone)]
pub struct Envelope {
    pub cover: FiniteCover,
    /// `m(a) = [{a}]`, indexed like the lattice.
    pub embedding: Vec<Subset>,
}

impl Envelope {
    pub fn new(lattice: &DistributiveLattice) -> Result<Self, CoverError> {
        let n = lattice.len();
        let meet = (0..n).map(|a| (0..n).map(|b| lattice.meet(a, b)).collect()).collect();
        let mut axioms = vec![(lattice.bottom(), vec![])];
        for a in 0..n {
            for b in 0..n {
                for c in b..n {
                    if lattice.leq(a, lattice.join(b, c)) && a != b && a != c {
                        axioms.push((a, if b == c { vec![b] } else { vec![b, c] }));
                    }
                }
            }
        }
        let cover = FiniteCover::new(lattice.names().to_vec(), meet, lattice.top(), axioms)?;
        let embedding = cover.embedding();
        Ok(Envelope { cover, embedding })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{boolean_lattice, chain_lattice, discrete_cover};
    use crate::sigma_frame::find_isomorphism;

    fn set(items: &[usize]) -> Subset {
        items.iter().copied().collect()
    }

    /// base {a, b, ab, t} where ab = a ∧ b, t = ⊤ and one axiom t ⊲ {a, b}
    fn split_top() -> FiniteCover {
        let names = ["a", "b", "ab", "t"].map(String::from).to_vec();
        let meet = vec![vec![0, 2, 2, 0], vec![2, 1, 2, 1], vec![2, 2, 2, 2], vec![0, 1, 2, 3]];
        FiniteCover::new(names, meet, 3, vec![(3, vec![0, 1])]).unwrap()
    }

    #[test]
    fn saturation_of_a_split_top() {
        let c = split_top();
        assert_eq!(c.saturate(set(&[0, 1])), set(&[0, 1, 2, 3]));
        assert_eq!(c.saturate(set(&[0])), set(&[0, 2]));
        assert_eq!(c.saturate(Subset::EMPTY), Subset::EMPTY);
        assert_eq!(c.saturate(c.base()), c.base());
    }

    #[test]
    fn empty_saturation_collects_elements_covering_nothing() {
        let names = ["z", "t"].map(String::from).to_vec();
        let c = FiniteCover::new(names, vec![vec![0, 0], vec![0, 1]], 1, vec![(0, vec![])]).unwrap();
        assert_eq!(c.saturate(Subset::EMPTY), set(&[0]));
    }

    #[test]
    fn saturation_is_a_closure_operator() {
        let c = split_top();
        for u in c.base().subsets() {
            let s = c.saturate(u);
            assert!(u.is_subset(s));
            assert_eq!(c.saturate(s), s);
            for v in c.base().subsets().filter(|v| u.is_subset(*v)) {
                assert!(s.is_subset(c.saturate(v)));
            }
        }
    }

    #[test]
    fn single_top_presentation_gives_two_element_frame() {
        let c = FiniteCover::new(vec!["t".into()], vec![vec![0]], 0, vec![]).unwrap();
        let f = c.frame(DEFAULT_MAX_BASE).unwrap();
        assert_eq!(f.lattice.len(), 2);
    }

    #[test]
    fn discrete_frame_is_a_powerset() {
        let d = discrete_cover(&["x", "y"]).unwrap();
        let f = d.cover.frame(DEFAULT_MAX_BASE).unwrap();
        assert!(find_isomorphism(&f.lattice, &boolean_lattice(2).unwrap()).is_some());
        assert_eq!(d.cover.check_formal_cover_axioms(), Ok(()));
    }

    #[test]
    fn chain_envelope_recovers_the_chain() {
        let l = chain_lattice(2).unwrap();
        let env = Envelope::new(&l).unwrap();
        let m = &env.embedding;
        // m is injective and order-reflecting
        for a in l.elements() {
            for b in l.elements() {
                assert_eq!(m[a].is_subset(m[b]), l.leq(a, b));
            }
        }
        assert_eq!(m[l.top()], env.cover.base());
        let f = env.cover.frame(DEFAULT_MAX_BASE).unwrap();
        assert!(find_isomorphism(&f.lattice, &l).is_some());
        assert_eq!(env.cover.check_formal_cover_axioms(), Ok(()));
    }

    #[test]
    fn envelope_axioms_match_the_join_definition() {
        let l = boolean_lattice(2).unwrap().product(&chain_lattice(1).unwrap());
        let env = Envelope::new(&l).unwrap();
        for w in env.cover.base().subsets() {
            let joined = l.join_all(w.iter());
            for a in l.elements() {
                assert_eq!(env.cover.covers(a, w), l.leq(a, joined), "a={a} W={w:?}");
            }
        }
    }

    #[test]
    fn frame_tables_agree_with_saturation() {
        let env = Envelope::new(&boolean_lattice(2).unwrap()).unwrap();
        let f = env.cover.frame(DEFAULT_MAX_BASE).unwrap();
        for (i, &u) in f.sets.iter().enumerate() {
            for (j, &v) in f.sets.iter().enumerate() {
                let join = env.cover.saturate(u.union(v));
                let meet = env.cover.saturate(env.cover.pointwise_meet(u, v));
                assert_eq!(f.sets[f.lattice.join(i, j)], join);
                assert_eq!(f.sets[f.lattice.meet(i, j)], meet);
            }
        }
    }

    #[test]
    fn structural_errors_come_first() {
        let names = ["a", "t"].map(String::from).to_vec();
        let err = FiniteCover::new(names.clone(), vec![vec![1, 0], vec![0, 1]], 1, vec![]).unwrap_err();
        assert_eq!(err, CoverError::MeetNotIdempotent("a".into()));
        let err = FiniteCover::new(names, vec![vec![0, 0], vec![0, 1]], 0, vec![]).unwrap_err();
        assert!(matches!(err, CoverError::TopNotUnit { .. }));
    }

    #[test]
    fn frame_size_cap() {
        let d = discrete_cover(&["a", "b", "c", "d"]).unwrap();
        assert_eq!(
            d.cover.frame(DEFAULT_MAX_BASE).unwrap_err(),
            CoverError::TooLarge { size: 16, cap: 15 }
        );
    }

    #[test]
    fn compactness_examples() {
        let l = chain_lattice(2).unwrap();
        let env = Envelope::new(&l).unwrap();
        let (a, top) = (l.index_of("a").unwrap(), l.top());
        assert_eq!(env.cover.check_compactness(set(&[a, top])), Ok(set(&[top])));
        assert_eq!(env.cover.check_compactness(set(&[top])), Ok(set(&[top])));
        assert_eq!(env.cover.check_compactness(set(&[a])), Err(CoverError::DoesNotCoverTop));
        let d = boolean_lattice(2).unwrap();
        let env = Envelope::new(&d).unwrap();
        let (x, y) = (1, 2);
        assert_eq!(env.cover.check_compactness(set(&[x, y])), Ok(set(&[x, y])));
    }

    #[test]
    fn identity_relation_is_a_morphism() {
        let c = split_top();
        let check = c
            .relation_as_morphism(&c, |a| Enumeration::from_vec(vec![a]), DEFAULT_MAX_BASE)
            .unwrap();
        assert!(matches!(check, MorphismCheck::Homomorphism(_)));
    }

    #[test]
    fn projection_and_collapse_relations() {
        let two = discrete_cover(&["x", "y"]).unwrap().cover;
        let one = discrete_cover(&["p"]).unwrap().cover;
        let point = one.index_of("{p}").unwrap();
        let x = two.index_of("{x}").unwrap();
        // subsets containing x go to the point
        let project = |a: usize| {
            if two.meet(a, x) == x {
                Enumeration::from_vec(vec![point])
            } else {
                Enumeration::empty()
            }
        };
        let check = two.relation_as_morphism(&one, project, DEFAULT_MAX_BASE).unwrap();
        assert!(matches!(check, MorphismCheck::Homomorphism(_)), "{check:?}");
        // every inhabited subset goes to the point: {x} ∧ {y} is not preserved
        let empty = two.index_of("{}").unwrap();
        let collapse = |a: usize| {
            if a == empty {
                Enumeration::empty()
            } else {
                Enumeration::from_vec(vec![point])
            }
        };
        let check = two.relation_as_morphism(&one, collapse, DEFAULT_MAX_BASE).unwrap();
        assert!(matches!(
            check,
            MorphismCheck::NotHomomorphism { violation: HomViolation::Meet { .. }, .. }
        ));
    }

    #[test]
    fn relation_missing_top_fails() {
        let c = chain_lattice(2).unwrap();
        let env = Envelope::new(&c).unwrap().cover;
        let a = c.index_of("a").unwrap();
        // nonzero elements are sent to a, so top lands on the non-top class [a]
        let bottom = c.bottom();
        let to_a = move |x: usize| {
            if x == bottom {
                Enumeration::empty()
            } else {
                Enumeration::from_vec(vec![a])
            }
        };
        let check = env.relation_as_morphism(&env, to_a, DEFAULT_MAX_BASE).unwrap();
        match check {
            MorphismCheck::NotHomomorphism { violation, .. } => {
                assert!(matches!(violation, HomViolation::Top { .. }), "{violation:?}")
            }
            other => panic!("expected a top violation, got {other:?}"),
        }
    }
}
