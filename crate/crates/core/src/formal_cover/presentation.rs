use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;
use std::sync::Arc;

use crate::enumeration::{Carrier, Enumeration, SemiDecidableEquality};
use crate::semidecision::{Outcome, SemiDecision};

type MeetFn<T> = dyn Fn(&T, &T) -> T + Send + Sync;
type AxiomFn<T> = dyn Fn(&T) -> Vec<Enumeration<T>> + Send + Sync;
type SitesFn<T> = dyn Fn(&T) -> Vec<T> + Send + Sync;

/// An inductively generated cover over a possibly infinite inf-semilattice
/// base.
///
/// `axioms(a)` lists the covers `C(a, i)` for the finitely many indices
/// `i ∈ I(a)`. `sites(x)` lists base elements `a ≥ x` whose axioms may be
/// useful when deriving `x ⊲ U`; it must include every such `a` for which
/// some axiom at `a` says more about `x` than the axioms at `x` itself.
#[derive(Clone)]
pub struct CoverPresentation<T> {
    eq: SemiDecidableEquality<T>,
    meet: Arc<MeetFn<T>>,
    top: T,
    axioms: Arc<AxiomFn<T>>,
    sites: Arc<SitesFn<T>>,
    finite_size: Option<usize>,
}

impl<T> fmt::Debug for CoverPresentation<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CoverPresentation")
            .field("finite_size", &self.finite_size)
            .finish_non_exhaustive()
    }
}

/// A derivation tree for `goal ⊲ U`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Derivation<T> {
    /// `goal ≤ element` for the element of `U` at `index`.
    Member { goal: T, index: u64, element: T },
    /// `goal ≤ site`, `site ⊲ C(site, axiom)`, and one subderivation of
    /// `goal ∧ c ⊲ U` per `c` in that cover, in enumeration order.
    Axiom {
        goal: T,
        site: T,
        axiom: usize,
        children: Vec<Derivation<T>>,
    },
    /// `goal ≤ site` and `U` is the very family `C(site, axiom)`.
    Family { goal: T, site: T, axiom: usize },
}

impl<T: Clone> Derivation<T> {
    pub fn goal(&self) -> &T {
        match self {
            Derivation::Member { goal, .. } | Derivation::Axiom { goal, .. } | Derivation::Family { goal, .. } => goal,
        }
    }

    /// Number of axiom steps on the longest branch.
    pub fn height(&self) -> usize {
        match self {
            Derivation::Member { .. } => 0,
            Derivation::Family { .. } => 1,
            Derivation::Axiom { children, .. } => 1 + children.iter().map(Derivation::height).max().unwrap_or(0),
        }
    }

    /// Elements of `U` used at the leaves, with their indices.
    pub fn members(&self) -> Vec<(u64, T)> {
        let mut out = Vec::new();
        self.collect_members(&mut out);
        out
    }

    fn collect_members(&self, out: &mut Vec<(u64, T)>) {
        match self {
            Derivation::Member { index, element, .. } => out.push((*index, element.clone())),
            Derivation::Axiom { children, .. } => children.iter().for_each(|c| c.collect_members(out)),
            Derivation::Family { .. } => {}
        }
    }

    pub fn uses_family(&self) -> bool {
        match self {
            Derivation::Member { .. } => false,
            Derivation::Family { .. } => true,
            Derivation::Axiom { children, .. } => children.iter().any(Derivation::uses_family),
        }
    }
}

/// Result of a successful derivation search.
#[derive(Debug, Clone)]
pub struct Derived<T> {
    pub derivation: Derivation<T>,
    /// Goal expansions spent, the value reported by [`CoverPresentation::derive`].
    pub steps: u64,
}

/// One sample of a σ-coherence check.
#[derive(Debug, Clone)]
pub struct CoherenceSample<T> {
    pub goal: T,
    /// Countable `W ⊆ U` with `goal ⊲ W`, if one was found.
    pub subcover: Option<Enumeration<T>>,
    pub reconfirmed: bool,
}

#[derive(Debug, Clone)]
pub enum CoherenceReport<T> {
    /// Finite base: every subset is countable, nothing to check.
    AllSubsetsCountable,
    Sampled(Vec<CoherenceSample<T>>),
}

impl<T> CoherenceReport<T> {
    pub fn passed(&self) -> bool {
        match self {
            CoherenceReport::AllSubsetsCountable => true,
            CoherenceReport::Sampled(samples) => samples.iter().all(|s| s.subcover.is_some() && s.reconfirmed),
        }
    }
}

impl<T: Carrier> CoverPresentation<T> {
    pub fn new<M, A, S>(eq: SemiDecidableEquality<T>, meet: M, top: T, axioms: A, sites: S) -> Self
    where
        M: Fn(&T, &T) -> T + Send + Sync + 'static,
        A: Fn(&T) -> Vec<Enumeration<T>> + Send + Sync + 'static,
        S: Fn(&T) -> Vec<T> + Send + Sync + 'static,
    {
        CoverPresentation {
            eq,
            meet: Arc::new(meet),
            top,
            axioms: Arc::new(axioms),
            sites: Arc::new(sites),
            finite_size: None,
        }
    }

    /// Declares the base finite with `n` elements, which bounds the useful
    /// derivation height by `n`.
    pub fn with_finite_size(mut self, n: usize) -> Self {
        self.finite_size = Some(n);
        self
    }

    pub fn top(&self) -> &T {
        &self.top
    }

    pub fn meet(&self, a: &T, b: &T) -> T {
        (self.meet)(a, b)
    }

    pub fn axioms(&self, a: &T) -> Vec<Enumeration<T>> {
        (self.axioms)(a)
    }

    pub fn sites(&self, a: &T) -> Vec<T> {
        (self.sites)(a)
    }

    pub fn equality(&self) -> &SemiDecidableEquality<T> {
        &self.eq
    }
}

impl<T: Carrier + Eq + Hash> CoverPresentation<T> {
    /// Semi-decides `a ⊲ U`. The budget caps the number of goal expansions
    /// of an iterative-deepening search over derivations; a confirmation
    /// reports the expansions actually used.
    pub fn derive(&self, a: T, u: Enumeration<T>) -> SemiDecision {
        let p = self.clone();
        SemiDecision::from_probe(move |budget| match p.derive_traced(&a, &u, budget) {
            Some(d) => Outcome::Confirmed(d.steps),
            None => Outcome::Unknown,
        })
    }

    pub fn derive_traced(&self, a: &T, u: &Enumeration<T>, budget: u64) -> Option<Derived<T>> {
        let mut search = Search {
            p: self,
            u,
            limit: budget,
            steps: 0,
            scan: 0,
            eq_budget: 0,
            success: HashMap::new(),
            failed: HashMap::new(),
            depth_cut: false,
            other_cut: false,
        };
        for depth in 0usize.. {
            let d = depth as u64;
            search.scan = u.bound().unwrap_or(d);
            search.eq_budget = self.eq.confirmation_bound().unwrap_or(d);
            search.depth_cut = false;
            search.other_cut = u.bound().is_none() || self.eq.confirmation_bound().is_none();
            search.failed.clear();
            match search.prove(a, depth) {
                Err(OutOfSteps) => return None,
                Ok(Some(derivation)) => {
                    return Some(Derived {
                        derivation,
                        steps: search.steps,
                    })
                }
                Ok(None) => {
                    if search.other_cut {
                        continue;
                    }
                    let exhausted = self.finite_size.is_some_and(|n| depth > n);
                    if !search.depth_cut || exhausted {
                        return None;
                    }
                }
            }
        }
        unreachable!()
    }

    /// For each sample `(a, U)`, looks for a derivation of `a ⊲ U` within
    /// the budget, extracts the countable part `W ⊆ U` it uses and confirms
    /// `a ⊲ W` again.
    pub fn check_sigma_coherent(&self, samples: &[(T, Enumeration<T>)], budget: u64) -> CoherenceReport<T> {
        let results = samples
            .iter()
            .map(|(a, u)| {
                let Some(found) = self.derive_traced(a, u, budget) else {
                    return CoherenceSample {
                        goal: a.clone(),
                        subcover: None,
                        reconfirmed: false,
                    };
                };
                let w = if found.derivation.uses_family() {
                    u.clone()
                } else {
                    let mut used = found.derivation.members();
                    used.sort_by_key(|(i, _)| *i);
                    used.dedup_by_key(|(i, _)| *i);
                    Enumeration::from_vec(used.into_iter().map(|(_, x)| x).collect())
                };
                let reconfirmed = self.derive(a.clone(), w.clone()).confirmed_within(budget);
                CoherenceSample {
                    goal: a.clone(),
                    subcover: Some(w),
                    reconfirmed,
                }
            })
            .collect();
        CoherenceReport::Sampled(results)
    }
}

struct OutOfSteps;

struct Search<'a, T> {
    p: &'a CoverPresentation<T>,
    u: &'a Enumeration<T>,
    limit: u64,
    steps: u64,
    scan: u64,
    eq_budget: u64,
    success: HashMap<T, Derivation<T>>,
    /// Goals known underivable with the recorded remaining height.
    failed: HashMap<T, usize>,
    depth_cut: bool,
    other_cut: bool,
}

impl<T: Carrier + Eq + Hash> Search<'_, T> {
    fn below(&self, x: &T, y: &T) -> bool {
        let m = self.p.meet(x, y);
        self.p.eq.test(&m, x).confirmed_within(self.eq_budget)
    }

    fn prove(&mut self, x: &T, height: usize) -> Result<Option<Derivation<T>>, OutOfSteps> {
        if let Some(d) = self.success.get(x) {
            return Ok(Some(d.clone()));
        }
        if self.failed.get(x).is_some_and(|&h| h >= height) {
            return Ok(None);
        }
        self.steps += 1;
        if self.steps > self.limit {
            return Err(OutOfSteps);
        }
        let found = self.expand(x, height)?;
        match &found {
            Some(d) => {
                self.success.insert(x.clone(), d.clone());
            }
            None => {
                self.failed.insert(x.clone(), height);
            }
        }
        Ok(found)
    }

    fn expand(&mut self, x: &T, height: usize) -> Result<Option<Derivation<T>>, OutOfSteps> {
        for index in 0..=self.scan {
            if let Some(element) = self.u.get(index) {
                if self.below(x, &element) {
                    return Ok(Some(Derivation::Member {
                        goal: x.clone(),
                        index,
                        element,
                    }));
                }
            }
        }
        for site in self.p.sites(x) {
            if !self.below(x, &site) {
                continue;
            }
            for (axiom, cover) in self.p.axioms(&site).into_iter().enumerate() {
                if cover.key().is_some() && cover.key() == self.u.key() {
                    return Ok(Some(Derivation::Family {
                        goal: x.clone(),
                        site,
                        axiom,
                    }));
                }
                let Ok(items) = cover.elements() else {
                    continue;
                };
                if height == 0 {
                    self.depth_cut = true;
                    continue;
                }
                let mut children = Vec::with_capacity(items.len());
                for c in &items {
                    let goal = self.p.meet(x, c);
                    match self.prove(&goal, height - 1)? {
                        Some(d) => children.push(d),
                        None => break,
                    }
                }
                if children.len() == items.len() {
                    return Ok(Some(Derivation::Axiom {
                        goal: x.clone(),
                        site,
                        axiom,
                        children,
                    }));
                }
            }
        }
        Ok(None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{baire_children, baire_cover, cantor_cover, Word};

    fn words(items: &[&str]) -> Enumeration<Word> {
        Enumeration::from_vec(items.iter().map(|s| Word::parse_binary(s).unwrap()).collect())
    }

    #[test]
    fn cantor_top_is_covered_by_length_two_strings() {
        let p = cantor_cover();
        let u = words(&["00", "01", "10", "11"]);
        let found = p.derive_traced(&Word::empty(), &u, 1000).unwrap();
        assert_eq!(found.derivation.height(), 2);
        assert_eq!(found.derivation.members().len(), 4);
        assert!(p.derive(Word::empty(), u).confirmed_within(1000));
    }

    #[test]
    fn reflexivity_confirms_at_one_step() {
        let p = cantor_cover();
        let w = Word::parse_binary("0").unwrap();
        assert_eq!(p.derive(w, words(&["0"])).run(10), Outcome::Confirmed(1));
    }

    #[test]
    fn zero_is_not_covered_by_double_zero() {
        let p = cantor_cover();
        let d = p.derive(Word::parse_binary("0").unwrap(), words(&["00"]));
        for budget in [0, 10, 100, 1000, 5000] {
            assert_eq!(d.run(budget), Outcome::Unknown);
        }
    }

    #[test]
    fn absurd_is_covered_by_nothing() {
        let p = cantor_cover();
        assert!(p.derive(Word::Absurd, Enumeration::empty()).confirmed_within(10));
    }

    #[test]
    fn baire_top_is_covered_by_its_one_letter_family() {
        let p = baire_cover();
        let d = p.derive(Word::empty(), baire_children(&[]));
        assert_eq!(d.run(10), Outcome::Confirmed(1));
        // an unkeyed enumeration of the same set cannot be closed by search
        let plain = Enumeration::new(|n| Some(Word::node(vec![n as u32])));
        assert_eq!(p.derive(Word::empty(), plain).run(500), Outcome::Unknown);
    }

    #[test]
    fn sigma_coherence_samples() {
        let p = cantor_cover();
        let sample = (Word::empty(), words(&["00", "01", "10", "11"]));
        match p.check_sigma_coherent(&[sample], 1000) {
            CoherenceReport::Sampled(s) => {
                let w = s[0].subcover.as_ref().unwrap().elements().unwrap();
                assert_eq!(w.len(), 4);
                assert!(s[0].reconfirmed);
            }
            other => panic!("{other:?}"),
        }
        let baire = baire_cover();
        let report = baire.check_sigma_coherent(&[(Word::empty(), baire_children(&[]))], 100);
        assert!(report.passed());
    }
}
