//! Countable sets presented as sequences `ℕ → S + ⊥`.
//!
//! An [`Enumeration`] is a total map from indices to `Option<T>` where `None`
//! plays the role of the blank `*`. The enumerated subset is the set of all
//! values that appear. Sameness of enumerations is the extensional relation
//! `α ∼ β`, which is only decidable when both sides carry a surjectivity
//! bound; see [`Enumeration::ext_eq`].
//!
//! Countable families are always supplied as explicit functions from indices
//! to enumerations, so no choice principle is ever needed at runtime.

use std::collections::HashSet;
use std::fmt;
use std::hash::Hash;
use std::sync::Arc;

use thiserror::Error;

use crate::semidecision::SemiDecision;

/// Values that can live in an enumeration.
pub trait Carrier: Clone + Send + Sync + 'static {}
impl<T: Clone + Send + Sync + 'static> Carrier for T {}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumerationError {
    /// The operation needs a surjectivity bound that the enumeration lacks.
    #[error("enumeration has no surjectivity bound; `{0}` is only decidable on bounded enumerations")]
    MissingBound(&'static str),
}

/// Cantor pairing `π(m, n) = (m + n)(m + n + 1)/2 + n`.
pub fn pair_encode(m: u64, n: u64) -> u64 {
    let s = m + n;
    s * (s + 1) / 2 + n
}

/// Inverse of [`pair_encode`].
pub fn pair_decode(k: u64) -> (u64, u64) {
    // w is the largest integer with w(w+1)/2 <= k
    let mut w = ((8 * k as u128 + 1).isqrt() as u64 - 1) / 2;
    while w * (w + 1) / 2 > k {
        w -= 1;
    }
    while (w + 1) * (w + 2) / 2 <= k {
        w += 1;
    }
    let n = k - w * (w + 1) / 2;
    (w - n, n)
}

type Alpha<T> = dyn Fn(u64) -> Option<T> + Send + Sync;

/// A countable subset presented by a sequence `ℕ → S + ⊥`.
pub struct Enumeration<T> {
    alpha: Arc<Alpha<T>>,
    bound: Option<u64>,
    key: Option<Arc<str>>,
}

impl<T> Clone for Enumeration<T> {
    fn clone(&self) -> Self {
        Enumeration {
            alpha: Arc::clone(&self.alpha),
            bound: self.bound,
            key: self.key.clone(),
        }
    }
}

impl<T> fmt::Debug for Enumeration<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Enumeration")
            .field("bound", &self.bound)
            .field("key", &self.key)
            .finish_non_exhaustive()
    }
}

impl<T: Carrier> Enumeration<T> {
    pub fn new<F>(alpha: F) -> Self
    where
        F: Fn(u64) -> Option<T> + Send + Sync + 'static,
    {
        Enumeration {
            alpha: Arc::new(alpha),
            bound: None,
            key: None,
        }
    }

    /// The empty subset: blank everywhere, bounded at 0.
    pub fn empty() -> Self {
        Self::new(|_| None).with_bound(0)
    }

    /// A finite list; index `n` is the `n`-th entry and blank past the end.
    pub fn from_vec(items: Vec<T>) -> Self {
        let bound = items.len().saturating_sub(1) as u64;
        let items = Arc::new(items);
        Self::new(move |n| usize::try_from(n).ok().and_then(|i| items.get(i).cloned()))
            .with_bound(bound)
    }

    /// Attaches a surjectivity witness: every enumerated value already
    /// appears at some index `<= bound`. The witness is trusted.
    pub fn with_bound(mut self, bound: u64) -> Self {
        self.bound = Some(bound);
        self
    }

    pub fn with_optional_bound(mut self, bound: Option<u64>) -> Self {
        self.bound = bound;
        self
    }

    /// Attaches an intensional name for the enumerated family. Two
    /// enumerations carrying the same key must enumerate the same subset.
    pub fn with_key(mut self, key: impl Into<Arc<str>>) -> Self {
        self.key = Some(key.into());
        self
    }

    pub fn bound(&self) -> Option<u64> {
        self.bound
    }

    pub fn key(&self) -> Option<&str> {
        self.key.as_deref()
    }

    pub fn get(&self, n: u64) -> Option<T> {
        (self.alpha)(n)
    }

    /// Non-blank values at indices `0..=n`, in index order.
    pub fn prefix(&self, n: u64) -> Vec<T> {
        (0..=n).filter_map(|i| self.get(i)).collect()
    }

    /// All enumerated values up to the surjectivity bound, duplicates kept.
    pub fn elements(&self) -> Result<Vec<T>, EnumerationError> {
        self.bound
            .map(|b| self.prefix(b))
            .ok_or(EnumerationError::MissingBound("elements"))
    }

    pub fn map<U, F>(&self, f: F) -> Enumeration<U>
    where
        U: Carrier,
        F: Fn(T) -> U + Send + Sync + 'static,
    {
        let alpha = Arc::clone(&self.alpha);
        Enumeration::new(move |n| alpha(n).map(&f)).with_optional_bound(self.bound)
    }

    /// Restriction to a detachable subset of the carrier: `β(n) = α(n)` when
    /// `α(n)` satisfies `chi`, blank otherwise.
    pub fn restrict<F>(&self, chi: F) -> Self
    where
        F: Fn(&T) -> bool + Send + Sync + 'static,
    {
        let alpha = Arc::clone(&self.alpha);
        Enumeration::new(move |n| alpha(n).filter(|x| chi(x))).with_optional_bound(self.bound)
    }

    /// The indices holding a value, together with the surjection reading
    /// them off.
    pub fn to_detachable(&self) -> Surjection<T> {
        let probe = Arc::clone(&self.alpha);
        let read = Arc::clone(&self.alpha);
        Surjection {
            subset: DetachableSubset::new(move |n| probe(n).is_some()),
            map: Arc::new(move |n| read(n).expect("surjection applied outside its detachable domain")),
            bound: self.bound,
        }
    }

    /// `α(n) = g(n)` on the detachable subset and blank elsewhere.
    pub fn from_detachable(surjection: &Surjection<T>) -> Self {
        let subset = surjection.subset.clone();
        let map = Arc::clone(&surjection.map);
        Enumeration::new(move |n| subset.contains(n).then(|| map(n)))
            .with_optional_bound(surjection.bound)
    }

    /// Countable union of an indexed family. Code `π(n, m)` holds
    /// `members(index(n))(m)` when `index(n)` is a value and blank otherwise.
    ///
    /// A bound is computed when the index and every member it reaches are
    /// bounded.
    pub fn union<I, F>(index: &Enumeration<I>, members: F) -> Self
    where
        I: Carrier,
        F: Fn(&I) -> Enumeration<T> + Send + Sync + 'static,
    {
        let members = Arc::new(members);
        let bound = index.bound.and_then(|nb| {
            let mut best = 0;
            for n in 0..=nb {
                if let Some(i) = index.get(n) {
                    best = best.max(pair_encode(n, members(&i).bound?));
                }
            }
            Some(best)
        });
        let index = index.clone();
        let f = Arc::clone(&members);
        Enumeration::new(move |k| {
            let (n, m) = pair_decode(k);
            index.get(n).and_then(|i| f(&i).get(m))
        })
        .with_optional_bound(bound)
    }

    /// Binary union, a two-member instance of [`Enumeration::union`].
    pub fn union2(&self, other: &Self) -> Self {
        let pair = Enumeration::from_vec(vec![self.clone(), other.clone()]);
        Self::union(&pair, |e| e.clone())
    }

    /// Binary intersection by triple dovetailing over `(n, m, budget)`.
    ///
    /// Code `π(n, π(m, b))` emits `self(n)` when `eq(self(n), other(m))`
    /// confirms within budget `b`. Duplicates are emitted freely.
    pub fn intersect(&self, other: &Self, eq: &SemiDecidableEquality<T>) -> Self {
        let bound = match (self.bound, other.bound, eq.confirmation_bound) {
            (Some(a), Some(b), Some(c)) => Some(pair_encode(a, pair_encode(b, c))),
            _ => None,
        };
        let (left, right, eq) = (self.clone(), other.clone(), eq.clone());
        Enumeration::new(move |k| {
            let (n, rest) = pair_decode(k);
            let (m, budget) = pair_decode(rest);
            let x = left.get(n)?;
            let y = right.get(m)?;
            eq.test(&x, &y).confirmed_within(budget).then_some(x)
        })
        .with_optional_bound(bound)
    }

    /// Semi-decides membership of `x`: code `π(n, b)` probes `eq(x, α(n))`
    /// with budget `b`.
    pub fn contains(&self, x: &T, eq: &SemiDecidableEquality<T>) -> SemiDecision {
        let x = x.clone();
        let eq = eq.clone();
        let alpha = Arc::clone(&self.alpha);
        let family = Enumeration::new(move |n| alpha(n).map(|y| eq.test(&x, &y)));
        SemiDecision::or_countable(&family)
    }
}

impl<T: Carrier + Eq + Hash> Enumeration<T> {
    pub fn to_set(&self) -> Result<HashSet<T>, EnumerationError> {
        Ok(self.elements()?.into_iter().collect())
    }

    /// Extensional equality `α ∼ β` on bounded enumerations.
    pub fn ext_eq(&self, other: &Self) -> Result<bool, EnumerationError> {
        if self.bound.is_none() || other.bound.is_none() {
            return Err(EnumerationError::MissingBound("ext_eq"));
        }
        Ok(self.to_set()? == other.to_set()?)
    }
}

/// A subset of ℕ with a total characteristic function.
#[derive(Clone)]
pub struct DetachableSubset {
    chi: Arc<dyn Fn(u64) -> bool + Send + Sync>,
}

impl fmt::Debug for DetachableSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("DetachableSubset(..)")
    }
}

impl DetachableSubset {
    pub fn new<F>(chi: F) -> Self
    where
        F: Fn(u64) -> bool + Send + Sync + 'static,
    {
        DetachableSubset { chi: Arc::new(chi) }
    }

    pub fn empty() -> Self {
        Self::new(|_| false)
    }

    pub fn singleton(k: u64) -> Self {
        Self::new(move |n| n == k)
    }

    pub fn contains(&self, n: u64) -> bool {
        (self.chi)(n)
    }
}

/// A map from a detachable subset of ℕ onto the enumerated set.
pub struct Surjection<T> {
    subset: DetachableSubset,
    map: Arc<dyn Fn(u64) -> T + Send + Sync>,
    bound: Option<u64>,
}

impl<T> Clone for Surjection<T> {
    fn clone(&self) -> Self {
        Surjection {
            subset: self.subset.clone(),
            map: Arc::clone(&self.map),
            bound: self.bound,
        }
    }
}

impl<T: Carrier> Surjection<T> {
    /// `map` only needs to be meaningful on members of `subset`.
    pub fn new<F>(subset: DetachableSubset, map: F) -> Self
    where
        F: Fn(u64) -> T + Send + Sync + 'static,
    {
        Surjection {
            subset,
            map: Arc::new(map),
            bound: None,
        }
    }

    pub fn with_bound(mut self, bound: u64) -> Self {
        self.bound = Some(bound);
        self
    }

    pub fn subset(&self) -> &DetachableSubset {
        &self.subset
    }

    pub fn bound(&self) -> Option<u64> {
        self.bound
    }

    pub fn apply(&self, n: u64) -> Option<T> {
        self.subset.contains(n).then(|| (self.map)(n))
    }
}

/// `ψ : S × S → Σ` with `a = b ⇔ ψ(a, b)` confirms.
pub struct SemiDecidableEquality<T> {
    psi: Arc<dyn Fn(&T, &T) -> SemiDecision + Send + Sync>,
    /// Every true equality confirms within this budget, when known.
    confirmation_bound: Option<u64>,
}

impl<T> Clone for SemiDecidableEquality<T> {
    fn clone(&self) -> Self {
        SemiDecidableEquality {
            psi: Arc::clone(&self.psi),
            confirmation_bound: self.confirmation_bound,
        }
    }
}

impl<T> fmt::Debug for SemiDecidableEquality<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SemiDecidableEquality")
            .field("confirmation_bound", &self.confirmation_bound)
            .finish_non_exhaustive()
    }
}

impl<T: Carrier> SemiDecidableEquality<T> {
    pub fn new<F>(psi: F) -> Self
    where
        F: Fn(&T, &T) -> SemiDecision + Send + Sync + 'static,
    {
        SemiDecidableEquality {
            psi: Arc::new(psi),
            confirmation_bound: None,
        }
    }

    /// Records that every true equality confirms within `bound` steps.
    pub fn with_confirmation_bound(mut self, bound: u64) -> Self {
        self.confirmation_bound = Some(bound);
        self
    }

    pub fn confirmation_bound(&self) -> Option<u64> {
        self.confirmation_bound
    }

    pub fn test(&self, a: &T, b: &T) -> SemiDecision {
        (self.psi)(a, b)
    }
}

impl<T: Carrier + PartialEq> SemiDecidableEquality<T> {
    /// Decidable equality, confirming at budget 0.
    pub fn decidable() -> Self {
        Self::new(|a: &T, b: &T| SemiDecision::from_bool(a == b)).with_confirmation_bound(0)
    }
}
