use std::collections::HashSet;
use std::sync::OnceLock;

use sigmaframe::generators::{boolean_lattice, chain_lattice};
use sigmaframe::sigma_frame::find_isomorphism;
use sigmaframe::DistributiveLattice;

/// Number of distributive lattices with `n` elements up to isomorphism,
/// for `n = 1..=8`.
pub const DISTRIBUTIVE_COUNTS: [usize; 8] = [1, 1, 1, 2, 3, 5, 8, 15];

/// Hosts for sublattice search: products of chains with at most 16
/// elements, given by chain lengths.
fn hosts() -> Vec<DistributiveLattice> {
    let shapes: &[&[usize]] = &[
        &[8],
        &[2, 2],
        &[2, 3],
        &[2, 4],
        &[2, 5],
        &[2, 6],
        &[2, 7],
        &[3, 3],
        &[3, 4],
        &[3, 5],
        &[4, 4],
        &[2, 2, 2],
        &[2, 2, 3],
        &[2, 2, 4],
        &[2, 2, 2, 2],
    ];
    shapes
        .iter()
        .map(|lengths| {
            lengths
                .iter()
                .map(|&k| chain_lattice(k - 1).unwrap())
                .reduce(|acc, c| acc.product(&c))
                .unwrap()
        })
        .collect()
}

/// Order-invariant fingerprint used to skip most isomorphism searches.
fn fingerprint(l: &DistributiveLattice) -> Vec<(usize, usize)> {
    let mut p: Vec<(usize, usize)> = l
        .elements()
        .map(|x| {
            let below = l.elements().filter(|&y| l.leq(y, x)).count();
            let above = l.elements().filter(|&y| l.leq(x, y)).count();
            (below, above)
        })
        .collect();
    p.sort_unstable();
    p
}

fn insert_new(found: &mut Vec<(Vec<(usize, usize)>, DistributiveLattice)>, l: DistributiveLattice) {
    let fp = fingerprint(&l);
    if found.iter().any(|(f, m)| *f == fp && find_isomorphism(m, &l).is_some()) {
        return;
    }
    found.push((fp, l));
}

/// Every distributive lattice with at most `max` elements (`max <= 8`), one
/// per isomorphism class, ordered by size. Built from chains, products of
/// chains and all their sublattices of at most `max` elements, found by
/// closing generating sets one element at a time.
pub fn distributive_lattices(max: usize) -> Vec<DistributiveLattice> {
    let mut found = Vec::new();
    for n in 0..max {
        insert_new(&mut found, chain_lattice(n).unwrap());
    }
    for host in hosts() {
        for mask in small_sublattices(&host, max) {
            let members: Vec<usize> = host.elements().filter(|i| mask >> i & 1 == 1).collect();
            insert_new(&mut found, host.sublattice(&members));
        }
    }
    let mut out: Vec<DistributiveLattice> = found.into_iter().map(|(_, l)| l).collect();
    out.sort_by_key(DistributiveLattice::len);
    out
}

/// The corpus of all distributive lattices up to eight elements, computed
/// once.
pub fn corpus() -> &'static [DistributiveLattice] {
    static CORPUS: OnceLock<Vec<DistributiveLattice>> = OnceLock::new();
    CORPUS.get_or_init(|| distributive_lattices(8))
}

/// Bitmasks of the sublattices of `host` with at most `max` elements.
fn small_sublattices(host: &DistributiveLattice, max: usize) -> Vec<u32> {
    let n = host.len();
    let close = |mut mask: u32| loop {
        let mut next = mask;
        for a in (0..n).filter(|a| mask >> a & 1 == 1) {
            for b in (0..n).filter(|b| mask >> b & 1 == 1) {
                next |= 1 << host.meet(a, b) | 1 << host.join(a, b);
            }
        }
        if next == mask {
            return mask;
        }
        mask = next;
    };
    let mut seen = HashSet::new();
    let mut queue: Vec<u32> = Vec::new();
    for x in 0..n {
        let m = close(1 << x);
        if seen.insert(m) {
            queue.push(m);
        }
    }
    let mut i = 0;
    while i < queue.len() {
        let m = queue[i];
        for x in (0..n).filter(|x| m >> x & 1 == 0) {
            let next = close(m | 1 << x);
            if next.count_ones() as usize <= max && seen.insert(next) {
                queue.push(next);
            }
        }
        i += 1;
    }
    queue.retain(|m| m.count_ones() as usize <= max);
    queue
}

/// The lattice families named for the universal-property check: chains
/// with one to four elements above the bottom, the diamond and the
/// eight-element Boolean lattice.
pub fn universal_property_targets() -> Vec<DistributiveLattice> {
    let mut out: Vec<DistributiveLattice> = (1..=4).map(|n| chain_lattice(n).unwrap()).collect();
    out.push(boolean_lattice(2).unwrap());
    out.push(boolean_lattice(3).unwrap());
    out
}
