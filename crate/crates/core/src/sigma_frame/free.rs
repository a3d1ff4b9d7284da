use std::collections::BTreeSet;
use std::hash::Hash;

use super::{DistributiveLattice, LatticeError};
use crate::enumeration::{pair_decode, pair_encode, Carrier, Enumeration, EnumerationError, SemiDecidableEquality};
use crate::semidecision::SemiDecision;

/// An element of `S + 1`: a generator of `S` or the extra top generator.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator<T> {
    Atom(T),
    Top,
}

/// A countable subset of `S + 1`.
pub type FreeElement<T> = Enumeration<Generator<T>>;

/// The countable-subset σ-frame over a countable set with semi-decidable
/// equality. Joins are countable unions. Meets are pointwise, with the top
/// generator acting as a unit, and any element containing the top generator
/// denotes top.
#[derive(Debug, Clone)]
pub struct FreeSigmaFrame<T> {
    eq: SemiDecidableEquality<T>,
}

impl<T: Carrier> FreeSigmaFrame<T> {
    pub fn new(eq: SemiDecidableEquality<T>) -> Self {
        FreeSigmaFrame { eq }
    }

    /// The insertion `a ↦ {a}`.
    pub fn generator(&self, a: T) -> FreeElement<T> {
        Enumeration::from_vec(vec![Generator::Atom(a)])
    }

    pub fn top(&self) -> FreeElement<T> {
        Enumeration::from_vec(vec![Generator::Top])
    }

    pub fn bottom(&self) -> FreeElement<T> {
        Enumeration::empty()
    }

    /// Equality on `S + 1` extending the one on `S`.
    pub fn generator_eq(&self) -> SemiDecidableEquality<Generator<T>> {
        let eq = self.eq.clone();
        let extended = SemiDecidableEquality::new(move |x: &Generator<T>, y: &Generator<T>| match (x, y) {
            (Generator::Top, Generator::Top) => SemiDecision::from_bool(true),
            (Generator::Atom(a), Generator::Atom(b)) => eq.test(a, b),
            _ => SemiDecision::never(),
        });
        match self.eq.confirmation_bound() {
            Some(b) => extended.with_confirmation_bound(b),
            None => extended,
        }
    }

    pub fn join(&self, family: &Enumeration<FreeElement<T>>) -> FreeElement<T> {
        Enumeration::union(family, |x| x.clone())
    }

    pub fn join2(&self, x: &FreeElement<T>, y: &FreeElement<T>) -> FreeElement<T> {
        x.union2(y)
    }

    /// Pointwise meet by dovetailing over `(n, m, budget)`: the top
    /// generator is neutral, and two atoms meet to themselves exactly when
    /// their equality confirms.
    pub fn meet(&self, x: &FreeElement<T>, y: &FreeElement<T>) -> FreeElement<T> {
        let bound = match (x.bound(), y.bound(), self.eq.confirmation_bound()) {
            (Some(a), Some(b), Some(c)) => Some(pair_encode(a, pair_encode(b, c))),
            _ => None,
        };
        let (x, y, eq) = (x.clone(), y.clone(), self.eq.clone());
        Enumeration::new(move |k| {
            let (n, rest) = pair_decode(k);
            let (m, budget) = pair_decode(rest);
            match (x.get(n)?, y.get(m)?) {
                (Generator::Top, g) | (g, Generator::Top) => (budget == 0).then_some(g),
                (Generator::Atom(a), Generator::Atom(b)) => eq
                    .test(&a, &b)
                    .confirmed_within(budget)
                    .then_some(Generator::Atom(a)),
            }
        })
        .with_optional_bound(bound)
    }

    /// The unique candidate extension of `f : S → L`: the join of the
    /// images of the enumerated generators, the top generator going to top.
    /// Needs a surjectivity bound on the argument.
    pub fn extend<'a, F>(
        lattice: &'a DistributiveLattice,
        f: F,
    ) -> impl Fn(&FreeElement<T>) -> Result<usize, EnumerationError> + 'a
    where
        F: Fn(&T) -> usize + 'a,
    {
        move |x| {
            let gens = x.elements().map_err(|_| EnumerationError::MissingBound("extend"))?;
            Ok(lattice.join_all(gens.iter().map(|g| match g {
                Generator::Atom(a) => f(a),
                Generator::Top => lattice.top(),
            })))
        }
    }
}

impl<T: Carrier + Eq + Hash> FreeSigmaFrame<T> {
    /// Extensional equality with the top-absorption convention.
    pub fn equivalent(&self, x: &FreeElement<T>, y: &FreeElement<T>) -> Result<bool, EnumerationError> {
        let (a, b) = (x.to_set()?, y.to_set()?);
        let (ta, tb) = (a.contains(&Generator::Top), b.contains(&Generator::Top));
        Ok(if ta || tb { ta && tb } else { a == b })
    }

    /// Closes `{0, 1} ∪ {{a} | a ∈ generators}` under binary joins and
    /// meets and returns the finite lattice of equivalence classes reached,
    /// with one representative per class.
    pub fn reachable_lattice<N>(
        &self,
        generators: &[T],
        name: N,
    ) -> Result<(DistributiveLattice, Vec<FreeElement<T>>), FreeFrameError>
    where
        N: Fn(&T) -> String,
    {
        let mut reps = vec![self.bottom(), self.top()];
        reps.extend(generators.iter().cloned().map(|a| self.generator(a)));
        let mut classes: Vec<FreeElement<T>> = Vec::new();
        for r in reps {
            self.insert_class(&mut classes, r)?;
        }
        let mut i = 0;
        while i < classes.len() {
            for j in 0..=i {
                let (x, y) = (classes[i].clone(), classes[j].clone());
                self.insert_class(&mut classes, self.join2(&x, &y))?;
                self.insert_class(&mut classes, self.meet(&x, &y))?;
            }
            i += 1;
        }
        let names = classes
            .iter()
            .map(|c| {
                let set = c.elements()?;
                if set.contains(&Generator::Top) {
                    return Ok("1".to_string());
                }
                let atoms: BTreeSet<String> = set
                    .iter()
                    .filter_map(|g| match g {
                        Generator::Atom(a) => Some(name(a)),
                        Generator::Top => None,
                    })
                    .collect();
                Ok(format!("{{{}}}", atoms.into_iter().collect::<Vec<_>>().join(",")))
            })
            .collect::<Result<Vec<_>, EnumerationError>>()?;
        let n = classes.len();
        let mut leq = vec![vec![false; n]; n];
        for a in 0..n {
            for b in 0..n {
                leq[a][b] = self.equivalent(&self.join2(&classes[a], &classes[b]), &classes[b])?;
            }
        }
        let lattice = DistributiveLattice::validate(names, leq)?;
        Ok((lattice, classes))
    }

    fn insert_class(&self, classes: &mut Vec<FreeElement<T>>, x: FreeElement<T>) -> Result<(), EnumerationError> {
        for c in classes.iter() {
            if self.equivalent(c, &x)? {
                return Ok(());
            }
        }
        classes.push(x);
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FreeFrameError {
    #[error(transparent)]
    Enumeration(#[from] EnumerationError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::chain_lattice;

    fn frame() -> FreeSigmaFrame<char> {
        FreeSigmaFrame::new(SemiDecidableEquality::decidable())
    }

    #[test]
    fn no_generators_gives_two_classes() {
        let (l, _) = frame().reachable_lattice(&[], |c| c.to_string()).unwrap();
        assert_eq!(l.len(), 2);
        assert_eq!(l.name(l.bottom()), "{}");
        assert_eq!(l.name(l.top()), "1");
    }

    #[test]
    fn meets_of_singletons() {
        let fr = frame();
        let a = fr.generator('a');
        let b = fr.generator('b');
        assert!(fr.equivalent(&fr.meet(&a, &a), &a).unwrap());
        assert!(fr.equivalent(&fr.meet(&a, &b), &fr.bottom()).unwrap());
        assert!(fr.equivalent(&fr.meet(&a, &fr.top()), &a).unwrap());
        let with_top = fr.join2(&a, &fr.top());
        assert!(fr.equivalent(&with_top, &fr.top()).unwrap());
    }

    #[test]
    fn extension_on_a_chain() {
        let fr = frame();
        let l = chain_lattice(2).unwrap();
        let a = l.index_of("a").unwrap();
        let h = FreeSigmaFrame::extend(&l, |_: &char| a);
        let s = fr.generator('s');
        assert_eq!(h(&s).unwrap(), a);
        assert_eq!(h(&fr.join2(&s, &fr.top())).unwrap(), l.top());
        assert_eq!(h(&fr.bottom()).unwrap(), l.bottom());
        let unbounded: FreeElement<char> = Enumeration::new(|_| Some(Generator::Atom('s')));
        assert_eq!(h(&unbounded), Err(EnumerationError::MissingBound("extend")));
    }

    #[test]
    fn countable_join_of_generators() {
        let fr = frame();
        let family = Enumeration::from_vec(vec![fr.generator('a'), fr.generator('b'), fr.bottom()]);
        let joined = fr.join(&family);
        let set = joined.to_set().unwrap();
        assert_eq!(set.len(), 2);
        // distributivity on generator-built elements, up to equivalence
        let (a, b, c) = (fr.generator('a'), fr.generator('b'), fr.generator('c'));
        let lhs = fr.meet(&a, &fr.join2(&b, &c));
        let rhs = fr.join2(&fr.meet(&a, &b), &fr.meet(&a, &c));
        assert!(fr.equivalent(&lhs, &rhs).unwrap());
        let ab = fr.join2(&a, &b);
        let lhs = fr.meet(&ab, &fr.join2(&b, &c));
        let rhs = fr.join2(&fr.meet(&ab, &b), &fr.meet(&ab, &c));
        assert!(fr.equivalent(&lhs, &rhs).unwrap());
    }

    #[test]
    fn reachable_lattice_over_two_generators() {
        let (l, _) = frame().reachable_lattice(&['a', 'b'], |c| c.to_string()).unwrap();
        // {}, {a}, {b}, {a,b} and the top class
        assert_eq!(l.len(), 5);
        let ab = l.index_of("{a,b}").unwrap();
        assert!(l.leq(ab, l.top()) && ab != l.top());
    }
}
