use rand::Rng;
use rand_chacha::ChaCha8Rng;
use sigmaframe::formal_cover::FiniteCover;

pub use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A list of at most `max_len` entries over `0..carrier`, each blank with
/// probability one in four.
pub fn blank_padded(rng: &mut ChaCha8Rng, carrier: u8, max_len: usize) -> Vec<Option<u8>> {
    let len = rng.gen_range(0..=max_len);
    (0..len)
        .map(|_| if rng.gen_ratio(1, 4) { None } else { Some(rng.gen_range(0..carrier)) })
        .collect()
}

/// A random finite cover: the base is an intersection-closed family of
/// subsets of a universe of at most four points, containing the whole
/// universe as top, with at most `max_base` members; up to `max_axioms`
/// arbitrary raw axioms.
pub fn presentation(rng: &mut ChaCha8Rng, max_base: usize, max_axioms: usize) -> FiniteCover {
    loop {
        let universe = rng.gen_range(1..=4u32);
        let full = (1u32 << universe) - 1;
        let mut family = vec![full];
        for _ in 0..rng.gen_range(0..max_base) {
            let s = rng.gen_range(0..=full);
            if !family.contains(&s) {
                family.push(s);
            }
        }
        let mut i = 0;
        while i < family.len() && family.len() <= max_base {
            for j in 0..=i {
                let m = family[i] & family[j];
                if !family.contains(&m) {
                    family.push(m);
                }
            }
            i += 1;
        }
        if family.len() > max_base {
            continue;
        }
        let n = family.len();
        let names = family.iter().map(|s| format!("u{s:b}")).collect();
        let meet = (0..n)
            .map(|a| (0..n).map(|b| family.iter().position(|&s| s == family[a] & family[b]).unwrap()).collect())
            .collect();
        let axioms = (0..rng.gen_range(0..=max_axioms))
            .map(|_| {
                let head = rng.gen_range(0..n);
                let body = (0..n).filter(|_| rng.gen_ratio(1, 3)).collect();
                (head, body)
            })
            .collect();
        return FiniteCover::new(names, meet, 0, axioms).expect("intersection-closed families are semilattices");
    }
}
