use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

/// Which partial-order law failed during validation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrderLaw {
    Reflexivity,
    Antisymmetry,
    Transitivity,
}

impl fmt::Display for OrderLaw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OrderLaw::Reflexivity => "reflexivity",
            OrderLaw::Antisymmetry => "antisymmetry",
            OrderLaw::Transitivity => "transitivity",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinaryOp {
    Meet,
    Join,
}

impl fmt::Display for BinaryOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BinaryOp::Meet => "meet",
            BinaryOp::Join => "join",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("a lattice needs at least one element")]
    Empty,
    #[error("element `{0}` is declared twice")]
    DuplicateElement(String),
    #[error("order matrix is not {0}x{0}")]
    Shape(usize),
    #[error("not a partial order: {law} fails at {}", .witnesses.join(", "))]
    NotAPartialOrder { law: OrderLaw, witnesses: Vec<String> },
    #[error("no {op} for `{a}` and `{b}`")]
    MissingMeetOrJoin { op: BinaryOp, a: String, b: String },
    #[error("not distributive: {a} ∧ ({b} ∨ {c}) ≠ ({a} ∧ {b}) ∨ ({a} ∧ {c})")]
    NotDistributive { a: String, b: String, c: String },
    #[error("lattice has {size} elements, above the cap of {cap}")]
    TooLarge { size: usize, cap: usize },
}

/// An explicit finite distributive lattice, the desk-scale model of a
/// σ-frame (countable joins are finite joins here).
///
/// Elements are addressed by index into [`DistributiveLattice::names`].
#[derive(Clone, PartialEq, Eq)]
pub struct DistributiveLattice {
    names: Vec<String>,
    leq: Vec<bool>,
    meet: Vec<usize>,
    join: Vec<usize>,
    bottom: usize,
    top: usize,
}

impl fmt::Debug for DistributiveLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DistributiveLattice")
            .field("names", &self.names)
            .field("bottom", &self.names[self.bottom])
            .field("top", &self.names[self.top])
            .finish()
    }
}

impl DistributiveLattice {
    /// Validates an element list and order matrix, deriving the meet and
    /// join tables. Reports the first violated law.
    pub fn validate(names: Vec<String>, leq: Vec<Vec<bool>>) -> Result<Self, LatticeError> {
        let n = names.len();
        if n == 0 {
            return Err(LatticeError::Empty);
        }
        let mut seen = BTreeSet::new();
        for name in &names {
            if !seen.insert(name.as_str()) {
                return Err(LatticeError::DuplicateElement(name.clone()));
            }
        }
        if leq.len() != n || leq.iter().any(|row| row.len() != n) {
            return Err(LatticeError::Shape(n));
        }
        let flat: Vec<bool> = leq.into_iter().flatten().collect();
        let le = |a: usize, b: usize| flat[a * n + b];
        let order_err = |law, ws: &[usize]| LatticeError::NotAPartialOrder {
            law,
            witnesses: ws.iter().map(|&i| names[i].clone()).collect(),
        };

        if let Some(a) = (0..n).find(|&a| !le(a, a)) {
            return Err(order_err(OrderLaw::Reflexivity, &[a]));
        }
        for a in 0..n {
            for b in a + 1..n {
                if le(a, b) && le(b, a) {
                    return Err(order_err(OrderLaw::Antisymmetry, &[a, b]));
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                if !le(a, b) {
                    continue;
                }
                for c in 0..n {
                    if le(b, c) && !le(a, c) {
                        return Err(order_err(OrderLaw::Transitivity, &[a, b, c]));
                    }
                }
            }
        }

        let extremum = |a: usize, b: usize, op: BinaryOp| -> Option<usize> {
            let bounds: Vec<usize> = (0..n)
                .filter(|&x| match op {
                    BinaryOp::Meet => le(x, a) && le(x, b),
                    BinaryOp::Join => le(a, x) && le(b, x),
                })
                .collect();
            bounds.iter().copied().find(|&x| {
                bounds.iter().all(|&y| match op {
                    BinaryOp::Meet => le(y, x),
                    BinaryOp::Join => le(x, y),
                })
            })
        };
        let mut meet = vec![0; n * n];
        let mut join = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                for (table, op) in [(&mut meet, BinaryOp::Meet), (&mut join, BinaryOp::Join)] {
                    table[a * n + b] = extremum(a, b, op).ok_or_else(|| LatticeError::MissingMeetOrJoin {
                        op,
                        a: names[a].clone(),
                        b: names[b].clone(),
                    })?;
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let lhs = meet[a * n + join[b * n + c]];
                    let rhs = join[meet[a * n + b] * n + meet[a * n + c]];
                    if lhs != rhs {
                        return Err(LatticeError::NotDistributive {
                            a: names[a].clone(),
                            b: names[b].clone(),
                            c: names[c].clone(),
                        });
                    }
                }
            }
        }
        let bottom = (0..n).find(|&x| (0..n).all(|y| le(x, y))).expect("finite lattice has a bottom");
        let top = (0..n).find(|&x| (0..n).all(|y| le(y, x))).expect("finite lattice has a top");
        Ok(DistributiveLattice {
            names,
            leq: flat,
            meet,
            join,
            bottom,
            top,
        })
    }

    /// Builds the order as the reflexive-transitive closure of `pairs`
    /// (`(a, b)` meaning `a <= b`) and validates it.
    pub fn from_order_pairs(names: Vec<String>, pairs: &[(usize, usize)]) -> Result<Self, LatticeError> {
        let n = names.len();
        let mut leq = vec![vec![false; n]; n];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        for &(a, b) in pairs {
            leq[a][b] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if leq[i][k] {
                    for j in 0..n {
                        if leq[k][j] {
                            leq[i][j] = true;
                        }
                    }
                }
            }
        }
        Self::validate(names, leq)
    }

    pub fn from_relation<F>(names: Vec<String>, le: F) -> Result<Self, LatticeError>
    where
        F: Fn(usize, usize) -> bool,
    {
        let n = names.len();
        let leq = (0..n).map(|a| (0..n).map(|b| le(a, b)).collect()).collect();
        Self::validate(names, leq)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, x: usize) -> &str {
        &self.names[x]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a * self.len() + b]
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.len() + b]
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a * self.len() + b]
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn join_all(&self, xs: impl IntoIterator<Item = usize>) -> usize {
        xs.into_iter().fold(self.bottom, |acc, x| self.join(acc, x))
    }

    pub fn meet_all(&self, xs: impl IntoIterator<Item = usize>) -> usize {
        xs.into_iter().fold(self.top, |acc, x| self.meet(acc, x))
    }

    pub fn complement(&self, a: usize) -> Option<usize> {
        self.elements()
            .find(|&b| self.meet(a, b) == self.bottom && self.join(a, b) == self.top)
    }

    pub fn is_complemented(&self) -> bool {
        self.elements().all(|a| self.complement(a).is_some())
    }

    /// Cartesian product with the componentwise order. Element `(x, y)` has
    /// index `x * other.len() + y`.
    pub fn product(&self, other: &DistributiveLattice) -> DistributiveLattice {
        let m = other.len();
        let names = self
            .elements()
            .flat_map(|x| other.elements().map(move |y| (x, y)))
            .map(|(x, y)| format!("({},{})", self.name(x), other.name(y)))
            .collect();
        Self::from_relation(names, |a, b| self.leq(a / m, b / m) && other.leq(a % m, b % m))
            .expect("product of distributive lattices is distributive")
    }

    /// The sublattice generated by `generators` under binary meet and join,
    /// with elements kept in the order they appear here.
    pub fn sublattice(&self, generators: &[usize]) -> DistributiveLattice {
        let mut inside = vec![false; self.len()];
        let mut members: Vec<usize> = Vec::new();
        for &g in generators {
            if !inside[g] {
                inside[g] = true;
                members.push(g);
            }
        }
        let mut i = 0;
        while i < members.len() {
            for j in 0..=i {
                let (a, b) = (members[i], members[j]);
                for c in [self.meet(a, b), self.join(a, b)] {
                    if !inside[c] {
                        inside[c] = true;
                        members.push(c);
                    }
                }
            }
            i += 1;
        }
        members.sort_unstable();
        let names = members.iter().map(|&x| self.names[x].clone()).collect();
        Self::from_relation(names, |a, b| self.leq(members[a], members[b]))
            .expect("sublattice of a distributive lattice is distributive")
    }

    /// Same lattice with new element names.
    pub fn renamed(&self, names: Vec<String>) -> Result<Self, LatticeError> {
        Self::validate(
            names,
            self.elements().map(|a| self.elements().map(|b| self.leq(a, b)).collect()).collect(),
        )
    }
}

/// Searches for an order isomorphism `a → b` by backtracking. Order
/// isomorphisms between lattices preserve meets and joins.
pub fn find_isomorphism(a: &DistributiveLattice, b: &DistributiveLattice) -> Option<Vec<usize>> {
    let n = a.len();
    if n != b.len() {
        return None;
    }
    let profile = |l: &DistributiveLattice, x: usize| {
        let below = l.elements().filter(|&y| l.leq(y, x)).count();
        let above = l.elements().filter(|&y| l.leq(x, y)).count();
        (below, above)
    };
    let pa: Vec<_> = a.elements().map(|x| profile(a, x)).collect();
    let pb: Vec<_> = b.elements().map(|x| profile(b, x)).collect();
    let mut sorted_a = pa.clone();
    let mut sorted_b = pb.clone();
    sorted_a.sort_unstable();
    sorted_b.sort_unstable();
    if sorted_a != sorted_b {
        return None;
    }

    fn extend(
        a: &DistributiveLattice,
        b: &DistributiveLattice,
        pa: &[(usize, usize)],
        pb: &[(usize, usize)],
        image: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        let x = image.len();
        if x == a.len() {
            return true;
        }
        for y in b.elements() {
            if used[y] || pa[x] != pb[y] {
                continue;
            }
            let consistent = (0..x).all(|w| {
                a.leq(w, x) == b.leq(image[w], y) && a.leq(x, w) == b.leq(y, image[w])
            });
            if !consistent {
                continue;
            }
            image.push(y);
            used[y] = true;
            if extend(a, b, pa, pb, image, used) {
                return true;
            }
            image.pop();
            used[y] = false;
        }
        false
    }

    let mut image = Vec::with_capacity(n);
    let mut used = vec![false; n];
    extend(a, b, &pa, &pb, &mut image, &mut used).then_some(image)
}
