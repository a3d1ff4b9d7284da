use sigmaframe::DistributiveLattice;

/// Every map `source → target` that preserves top, bottom, binary meets and
/// binary joins and agrees with `fixed` where it is `Some`. Plain
/// backtracking over all assignments, checking each law as soon as both
/// arguments are assigned.
pub fn homomorphisms(
    source: &DistributiveLattice,
    target: &DistributiveLattice,
    fixed: &[Option<usize>],
) -> Vec<Vec<usize>> {
    let n = source.len();
    let mut map: Vec<Option<usize>> = fixed.to_vec();
    map.resize(n, None);
    let forced = [(source.top(), target.top()), (source.bottom(), target.bottom())];
    for (x, y) in forced {
        match map[x] {
            Some(v) if v != y => return Vec::new(),
            _ => map[x] = Some(y),
        }
    }
    let free: Vec<usize> = (0..n).filter(|&x| map[x].is_none()).collect();
    let mut out = Vec::new();
    if consistent(source, target, &map) {
        search(source, target, &mut map, &free, 0, &mut out);
    }
    out
}

fn consistent(s: &DistributiveLattice, t: &DistributiveLattice, map: &[Option<usize>]) -> bool {
    for a in s.elements() {
        let Some(fa) = map[a] else { continue };
        for b in s.elements() {
            let Some(fb) = map[b] else { continue };
            if let Some(m) = map[s.meet(a, b)] {
                if m != t.meet(fa, fb) {
                    return false;
                }
            }
            if let Some(j) = map[s.join(a, b)] {
                if j != t.join(fa, fb) {
                    return false;
                }
            }
        }
    }
    true
}

fn search(
    s: &DistributiveLattice,
    t: &DistributiveLattice,
    map: &mut Vec<Option<usize>>,
    free: &[usize],
    i: usize,
    out: &mut Vec<Vec<usize>>,
) {
    if i == free.len() {
        out.push(map.iter().map(|v| v.unwrap()).collect());
        return;
    }
    for y in t.elements() {
        map[free[i]] = Some(y);
        if consistent(s, t, map) {
            search(s, t, map, free, i + 1, out);
        }
    }
    map[free[i]] = None;
}
