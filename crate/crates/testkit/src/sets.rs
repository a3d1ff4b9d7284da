use std::collections::BTreeSet;

/// The values of a finite blank-padded list, as a set.
pub fn values(items: &[Option<u8>]) -> BTreeSet<u8> {
    items.iter().flatten().copied().collect()
}

pub fn union(family: &[Vec<Option<u8>>]) -> BTreeSet<u8> {
    family.iter().flat_map(|x| values(x)).collect()
}

pub fn intersection(a: &[Option<u8>], b: &[Option<u8>]) -> BTreeSet<u8> {
    values(a).intersection(&values(b)).copied().collect()
}
