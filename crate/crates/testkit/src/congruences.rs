use sigmaframe::booleanization::Congruence;
use sigmaframe::DistributiveLattice;

/// Union-find over lattice elements.
fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    let mut x = x;
    while parent[x] != r {
        let next = parent[x];
        parent[x] = r;
        x = next;
    }
    r
}

/// The least congruence containing `base` and every pair in `pairs`,
/// computed by merging classes until meets and joins with every element
/// respect them.
pub fn closure(l: &DistributiveLattice, base: &Congruence, pairs: &[(usize, usize)]) -> Congruence {
    let n = l.len();
    let mut parent: Vec<usize> = (0..n).collect();
    for x in 0..n {
        for y in 0..x {
            if base.related(x, y) {
                let (rx, ry) = (find(&mut parent, x), find(&mut parent, y));
                parent[rx] = ry;
            }
        }
    }
    for &(x, y) in pairs {
        let (rx, ry) = (find(&mut parent, x), find(&mut parent, y));
        parent[rx] = ry;
    }
    loop {
        let mut changed = false;
        for x in 0..n {
            for y in 0..n {
                if find(&mut parent, x) != find(&mut parent, y) {
                    continue;
                }
                for z in 0..n {
                    for (a, b) in [(l.meet(x, z), l.meet(y, z)), (l.join(x, z), l.join(y, z))] {
                        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                        if ra != rb {
                            parent[ra] = rb;
                            changed = true;
                        }
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    let labels: Vec<usize> = (0..n).map(|x| find(&mut parent, x)).collect();
    Congruence::from_labels(&labels)
}

/// All congruences, as the closure of the identity under adding one pair
/// at a time. Sorted by class index vector.
pub fn all_congruences(l: &DistributiveLattice) -> Vec<Congruence> {
    let n = l.len();
    let mut found = vec![Congruence::identity(n)];
    let mut i = 0;
    while i < found.len() {
        let c = found[i].clone();
        for x in 0..n {
            for y in 0..x {
                if !c.related(x, y) {
                    let next = closure(l, &c, &[(x, y)]);
                    if !found.contains(&next) {
                        found.push(next);
                    }
                }
            }
        }
        i += 1;
    }
    found.sort();
    found
}
