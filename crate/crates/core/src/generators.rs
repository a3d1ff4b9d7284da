//! Standard instances: chains, Boolean lattices, discrete covers, and the
//! Cantor and Baire presentations.

use std::fmt;

use crate::booleanization::{check_overt, Positivity};
use crate::enumeration::{Enumeration, SemiDecidableEquality};
use crate::formal_cover::{CoverError, CoverPresentation, FiniteCover};
use crate::sigma_frame::{DistributiveLattice, LatticeError};

/// Largest chain length accepted by [`chain_lattice`].
pub const MAX_CHAIN: usize = 64;
/// Largest atom count accepted by [`boolean_lattice`].
pub const MAX_ATOMS: usize = 6;
/// Largest point set accepted by [`discrete_cover`], so that the base of
/// all subsets fits a [`Subset`](crate::formal_cover::Subset).
pub const MAX_DISCRETE: usize = 7;

fn letter(i: usize) -> char {
    (b'a' + i as u8) as char
}

/// The chain `0 < a < b < .. < 1` with `n + 1` elements. Inner elements are
/// named by letters, or `e1, e2, ..` past 26 of them. `chain_lattice(0)` is
/// the one-element lattice.
pub fn chain_lattice(n: usize) -> Result<DistributiveLattice, LatticeError> {
    if n > MAX_CHAIN {
        return Err(LatticeError::TooLarge { size: n + 1, cap: MAX_CHAIN + 1 });
    }
    let names = (0..=n)
        .map(|i| match i {
            0 => "0".to_string(),
            i if i == n => "1".to_string(),
            i if n - 1 <= 26 => letter(i - 1).to_string(),
            i => format!("e{i}"),
        })
        .collect();
    DistributiveLattice::from_relation(names, |a, b| a <= b)
}

/// The powerset of `k` atoms `a, b, ..`. Element `i` is the set with bitmask
/// `i`; it is named by its atoms, with `0` and `1` for the extremes.
pub fn boolean_lattice(k: usize) -> Result<DistributiveLattice, LatticeError> {
    if k > MAX_ATOMS {
        return Err(LatticeError::TooLarge { size: 1 << k.min(63), cap: 1 << MAX_ATOMS });
    }
    let size = 1usize << k;
    let names = (0..size)
        .map(|m| {
            if m == 0 {
                "0".to_string()
            } else if m == size - 1 {
                "1".to_string()
            } else {
                (0..k).filter(|i| m >> i & 1 == 1).map(letter).collect()
            }
        })
        .collect();
    DistributiveLattice::from_relation(names, |a, b| a & !b == 0)
}

/// `Pos(x) ⇔ x ≠ 0`, which is overt on every finite lattice.
pub fn with_nonzero_pos(l: &DistributiveLattice) -> Positivity {
    let pos = Positivity::nonzero(l);
    debug_assert_eq!(check_overt(l, &pos), Ok(()));
    pos
}

/// A discrete cover with its positivity predicate.
#[derive(Debug, Clone)]
pub struct DiscreteCover {
    pub cover: FiniteCover,
    /// Inhabitedness, indexed like the base.
    pub pos: Positivity,
    /// Set for the empty point set, whose base is the single element `∅`
    /// and whose frame has one element.
    pub degenerate: bool,
}

/// The discrete cover over `points`: base all subsets ordered by inclusion
/// (base element `i` is the subset with bitmask `i`), meet `∩`, top the
/// whole set, axioms `a ⊲ {{s} | s ∈ a}`.
pub fn discrete_cover(points: &[&str]) -> Result<DiscreteCover, CoverError> {
    let k = points.len();
    if k > MAX_DISCRETE {
        return Err(CoverError::TooLarge { size: 1 << k.min(63), cap: 1 << MAX_DISCRETE });
    }
    let size = 1usize << k;
    let names = (0..size)
        .map(|m| {
            let items: Vec<&str> = (0..k).filter(|i| m >> i & 1 == 1).map(|i| points[i]).collect();
            format!("{{{}}}", items.join(","))
        })
        .collect();
    let meet = (0..size).map(|a| (0..size).map(|b| a & b).collect()).collect();
    let axioms = (0..size)
        .map(|a| (a, (0..k).filter(|i| a >> i & 1 == 1).map(|i| 1 << i).collect()))
        .collect();
    let cover = FiniteCover::new(names, meet, size - 1, axioms)?;
    let pos = Positivity::new((0..size).map(|m| m != 0).collect());
    Ok(DiscreteCover {
        cover,
        pos,
        degenerate: k == 0,
    })
}

/// Base element of the Cantor and Baire presentations: a finite string of
/// naturals, or the absurd element adjoined as the meet of incomparable
/// strings.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Word {
    Node(Vec<u32>),
    Absurd,
}

impl Word {
    /// The empty string `ε`.
    pub fn empty() -> Self {
        Word::Node(Vec::new())
    }

    pub fn node(letters: Vec<u32>) -> Self {
        Word::Node(letters)
    }

    /// Reads a string of `0`s and `1`s.
    pub fn parse_binary(s: &str) -> Option<Self> {
        s.chars()
            .map(|c| match c {
                '0' => Some(0),
                '1' => Some(1),
                _ => None,
            })
            .collect::<Option<Vec<u32>>>()
            .map(Word::Node)
    }

    /// Reads `e`, `absurd`, `s01` (binary letters) or `s3.12` (dotted
    /// naturals). A name starting with `s` and containing no dot is read as
    /// binary when `binary` is set and as a single natural otherwise.
    pub fn parse_name(s: &str, binary: bool) -> Option<Self> {
        match s {
            "e" => Some(Word::empty()),
            "absurd" => Some(Word::Absurd),
            _ => {
                let body = s.strip_prefix('s')?;
                if binary {
                    if body.is_empty() {
                        return None;
                    }
                    Word::parse_binary(body)
                } else {
                    body.split('.').map(|p| p.parse().ok()).collect::<Option<Vec<u32>>>().map(Word::Node)
                }
            }
        }
    }

    /// Inverse of [`Word::parse_name`].
    pub fn name(&self, binary: bool) -> String {
        match self {
            Word::Absurd => "absurd".into(),
            Word::Node(w) if w.is_empty() => "e".into(),
            Word::Node(w) if binary => format!("s{}", w.iter().map(u32::to_string).collect::<String>()),
            Word::Node(w) => format!("s{}", w.iter().map(u32::to_string).collect::<Vec<_>>().join(".")),
        }
    }

    /// `self` extends `other` as a string; the absurd element extends
    /// everything.
    pub fn extends(&self, other: &Word) -> bool {
        match (self, other) {
            (Word::Absurd, _) => true,
            (Word::Node(_), Word::Absurd) => false,
            (Word::Node(a), Word::Node(b)) => a.starts_with(b),
        }
    }

    pub fn child(&self, n: u32) -> Word {
        match self {
            Word::Absurd => Word::Absurd,
            Word::Node(w) => {
                let mut w = w.clone();
                w.push(n);
                Word::Node(w)
            }
        }
    }

    /// The longer string when one extends the other, else absurd.
    pub fn meet(&self, other: &Word) -> Word {
        if self.extends(other) {
            self.clone()
        } else if other.extends(self) {
            other.clone()
        } else {
            Word::Absurd
        }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name(false))
    }
}

/// All binary strings of length `n`, in lexicographic order.
pub fn binary_strings(n: usize) -> Vec<Word> {
    (0..1u64 << n)
        .map(|m| Word::Node((0..n).rev().map(|i| (m >> i & 1) as u32).collect()))
        .collect()
}

/// `{w·n | n ∈ ℕ}`, keyed so that derivations can recognize the family.
pub fn baire_children(w: &[u32]) -> Enumeration<Word> {
    let parent = Word::Node(w.to_vec());
    let key = format!("children({})", parent.name(false));
    Enumeration::new(move |n| u32::try_from(n).ok().map(|n| parent.child(n))).with_key(key)
}

fn string_presentation<A>(axioms: A) -> CoverPresentation<Word>
where
    A: Fn(&Word) -> Vec<Enumeration<Word>> + Send + Sync + 'static,
{
    CoverPresentation::new(
        SemiDecidableEquality::decidable(),
        |a: &Word, b: &Word| a.meet(b),
        Word::empty(),
        axioms,
        |x: &Word| vec![x.clone()],
    )
}

/// Finite binary strings with `a ⊲ {a0, a1}` and `absurd ⊲ ∅`.
pub fn cantor_cover() -> CoverPresentation<Word> {
    string_presentation(|a| match a {
        Word::Absurd => vec![Enumeration::empty()],
        w => vec![Enumeration::from_vec(vec![w.child(0), w.child(1)])],
    })
}

/// Finite strings of naturals with `a ⊲ {a·n | n ∈ ℕ}` and `absurd ⊲ ∅`.
pub fn baire_cover() -> CoverPresentation<Word> {
    string_presentation(|a| match a {
        Word::Absurd => vec![Enumeration::empty()],
        Word::Node(w) => vec![baire_children(w)],
    })
}
