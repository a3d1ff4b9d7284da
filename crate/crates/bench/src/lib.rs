//! Fixtures shared by the benchmark targets.

use sigmaframe::formal_cover::{Envelope, FiniteCover};
use sigmaframe::generators::{boolean_lattice, chain_lattice};
use sigmaframe::DistributiveLattice;

/// `2^k × chain(n)`, a distributive lattice of `2^k · (n + 1)` elements.
pub fn grid(k: usize, n: usize) -> DistributiveLattice {
    boolean_lattice(k).unwrap().product(&chain_lattice(n).unwrap())
}

pub fn envelope_of(l: &DistributiveLattice) -> FiniteCover {
    Envelope::new(l).unwrap().cover
}
