//! Semi-decidable truth values as step-indexed computations.
//!
//! A [`SemiDecision`] is an element of the dominance of "open" truth values:
//! a proposition of the shape `∃n. α(n) = 0`. It is represented by a pure,
//! total probe that is given a budget and either reports the step at which
//! the proposition was confirmed or answers [`Outcome::Unknown`]. Running out
//! of budget never means "false": there is no decidable negation here.

use std::fmt;
use std::sync::Arc;

use crate::enumeration::{pair_decode, Enumeration};

/// Result of running a [`SemiDecision`] with a finite budget.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Outcome {
    /// Confirmed; the payload is the step at which the witness was found.
    Confirmed(u64),
    Unknown,
}

impl Outcome {
    pub fn is_confirmed(self) -> bool {
        matches!(self, Outcome::Confirmed(_))
    }

    pub fn step(self) -> Option<u64> {
        match self {
            Outcome::Confirmed(k) => Some(k),
            Outcome::Unknown => None,
        }
    }
}

type Probe = dyn Fn(u64) -> Outcome + Send + Sync;

/// A monotone, budget-indexed confirmation value.
///
/// Invariant: if `run(n) == Confirmed(k)` then `k <= n` and
/// `run(m) == Confirmed(k)` for every `m >= n`.
#[derive(Clone)]
pub struct SemiDecision {
    probe: Arc<Probe>,
}

impl fmt::Debug for SemiDecision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("SemiDecision(..)")
    }
}

impl SemiDecision {
    /// Wraps a raw probe. The caller is responsible for monotonicity and for
    /// keeping the work done by `probe(n)` proportional to `n`.
    pub fn from_probe<F>(probe: F) -> Self
    where
        F: Fn(u64) -> Outcome + Send + Sync + 'static,
    {
        SemiDecision {
            probe: Arc::new(probe),
        }
    }

    /// Embeds a decidable value.
    pub fn from_bool(b: bool) -> Self {
        if b {
            Self::confirming_at(0)
        } else {
            Self::never()
        }
    }

    pub fn never() -> Self {
        Self::from_probe(|_| Outcome::Unknown)
    }

    /// Confirms exactly from budget `k` onwards.
    pub fn confirming_at(k: u64) -> Self {
        Self::from_probe(move |n| {
            if n >= k {
                Outcome::Confirmed(k)
            } else {
                Outcome::Unknown
            }
        })
    }

    /// The proposition `∃n. witness(n)` for a decidable `witness`.
    /// Confirms at the least witnessing index.
    pub fn from_witness<F>(witness: F) -> Self
    where
        F: Fn(u64) -> bool + Send + Sync + 'static,
    {
        Self::from_probe(move |n| {
            (0..=n)
                .find(|&j| witness(j))
                .map_or(Outcome::Unknown, Outcome::Confirmed)
        })
    }

    pub fn run(&self, budget: u64) -> Outcome {
        (self.probe)(budget)
    }

    pub fn confirmed_within(&self, budget: u64) -> bool {
        self.run(budget).is_confirmed()
    }

    /// Countable disjunction by dovetailing.
    ///
    /// At budget `N` every code `c <= N` is decoded as `(i, j)` and member `i`
    /// is probed with budget `j`. The result confirms at the least such code.
    pub fn or_countable(family: &Enumeration<SemiDecision>) -> Self {
        let family = family.clone();
        Self::from_probe(move |budget| {
            for code in 0..=budget {
                let (i, j) = pair_decode(code);
                if let Some(member) = family.get(i) {
                    if member.run(j).is_confirmed() {
                        return Outcome::Confirmed(code);
                    }
                }
            }
            Outcome::Unknown
        })
    }

    pub fn or(&self, other: &SemiDecision) -> Self {
        Self::or_countable(&Enumeration::from_vec(vec![self.clone(), other.clone()]))
    }

    /// Binary conjunction: confirms at budget `n` iff both sides do.
    pub fn and(&self, other: &SemiDecision) -> Self {
        let (p, q) = (self.clone(), other.clone());
        Self::from_probe(move |n| match (p.run(n), q.run(n)) {
            (Outcome::Confirmed(a), Outcome::Confirmed(b)) => Outcome::Confirmed(a.max(b)),
            _ => Outcome::Unknown,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumeration::pair_encode;
    use proptest::prelude::*;

    #[test]
    fn booleans_embed() {
        assert_eq!(SemiDecision::from_bool(true).run(0), Outcome::Confirmed(0));
        assert_eq!(SemiDecision::from_bool(true).run(100), Outcome::Confirmed(0));
        assert_eq!(SemiDecision::from_bool(false).run(1_000_000), Outcome::Unknown);
        assert_eq!(SemiDecision::from_bool(false).run(999), Outcome::Unknown);
    }

    #[test]
    fn countable_or_dovetails() {
        let family = Enumeration::from_vec(vec![
            SemiDecision::from_bool(false),
            SemiDecision::from_bool(true),
        ]);
        let joined = SemiDecision::or_countable(&family);
        // member 1 confirms with budget 0, reached at code π(1, 0) = 1
        assert_eq!(joined.run(pair_encode(1, 0)), Outcome::Confirmed(1));
        assert_eq!(joined.run(0), Outcome::Unknown);
    }

    #[test]
    fn empty_or_is_bottom() {
        let joined = SemiDecision::or_countable(&Enumeration::empty());
        assert_eq!(joined.run(5_000), Outcome::Unknown);
    }

    #[test]
    fn constant_false_family_never_confirms() {
        let family = Enumeration::new(|_| Some(SemiDecision::from_bool(false)));
        assert_eq!(SemiDecision::or_countable(&family).run(10_000), Outcome::Unknown);
    }

    #[test]
    fn conjunction_waits_for_slower_side() {
        let p = SemiDecision::confirming_at(3);
        let q = SemiDecision::confirming_at(7);
        let both = p.and(&q);
        assert_eq!(both.run(6), Outcome::Unknown);
        assert_eq!(both.run(7), Outcome::Confirmed(7));
        assert_eq!(
            SemiDecision::from_bool(true).and(&SemiDecision::from_bool(false)).run(500),
            Outcome::Unknown
        );
        assert!(SemiDecision::from_bool(true).and(&SemiDecision::from_bool(true)).confirmed_within(0));
    }

    #[test]
    fn witness_search_confirms_at_least_index() {
        let p = SemiDecision::from_witness(|n| n * n > 50);
        assert_eq!(p.run(7), Outcome::Unknown);
        assert_eq!(p.run(8), Outcome::Confirmed(8));
        assert_eq!(p.run(20), Outcome::Confirmed(8));
    }

    fn arb_decision() -> impl Strategy<Value = (Option<u64>, SemiDecision)> {
        prop_oneof![
            Just((None, SemiDecision::never())),
            (0u64..40).prop_map(|k| (Some(k), SemiDecision::confirming_at(k))),
        ]
    }

    proptest! {
        #[test]
        fn monotone_in_budget((_, p) in arb_decision(), n in 0u64..60, extra in 0u64..60) {
            if let Outcome::Confirmed(k) = p.run(n) {
                prop_assert!(k <= n);
                prop_assert_eq!(p.run(n + extra), Outcome::Confirmed(k));
            }
        }

        #[test]
        fn and_with_true_is_neutral((_, p) in arb_decision(), n in 0u64..60) {
            let q = p.and(&SemiDecision::from_bool(true));
            prop_assert_eq!(q.run(n), p.run(n));
        }

        #[test]
        fn or_is_permutation_invariant_up_to_confirmation(
            members in proptest::collection::vec(proptest::option::of(0u64..6), 0..5),
            rotation in 0usize..5,
        ) {
            let build = |ms: &[Option<u64>]| {
                let v: Vec<SemiDecision> = ms
                    .iter()
                    .map(|m| m.map_or_else(SemiDecision::never, SemiDecision::confirming_at))
                    .collect();
                SemiDecision::or_countable(&Enumeration::from_vec(v))
            };
            let mut rotated = members.clone();
            if !rotated.is_empty() {
                let r = rotation % rotated.len();
                rotated.rotate_left(r);
            }
            // every confirming member has index < 5 and confirms by budget 5,
            // so π(4, 5) bounds the dovetail for both orders
            let exhaustive = pair_encode(4, 5);
            let expected = members.iter().any(Option::is_some);
            prop_assert_eq!(build(&members).confirmed_within(exhaustive), expected);
            prop_assert_eq!(build(&rotated).confirmed_within(exhaustive), expected);
        }
    }
}
