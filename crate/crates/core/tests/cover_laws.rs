use proptest::prelude::*;

use sigmaframe::formal_cover::{Envelope, FiniteCover, Subset};
use sigmaframe::generators::{boolean_lattice, chain_lattice};
use sigmaframe::sigma_frame::find_isomorphism;
use sigmaframe::{Enumeration, Outcome};

/// An intersection-closed family of subsets of a four-point universe,
/// seeded by `seeds`, with the whole universe first.
fn family(seeds: &[u8]) -> Vec<u8> {
    let mut fam = vec![0b1111u8];
    for &s in seeds {
        if !fam.contains(&s) {
            fam.push(s);
        }
    }
    let mut i = 0;
    while i < fam.len() {
        for j in 0..=i {
            let m = fam[i] & fam[j];
            if !fam.contains(&m) {
                fam.push(m);
            }
        }
        i += 1;
    }
    fam
}

fn cover(seeds: &[u8], raw: &[(usize, Vec<bool>)]) -> FiniteCover {
    let fam = family(seeds);
    let n = fam.len();
    let names = fam.iter().map(|s| format!("u{s:04b}")).collect();
    let meet = (0..n)
        .map(|a| (0..n).map(|b| fam.iter().position(|&s| s == fam[a] & fam[b]).unwrap()).collect())
        .collect();
    let axioms = raw
        .iter()
        .map(|(h, body)| (h % n, (0..n).filter(|&i| body.get(i).copied().unwrap_or(false)).collect()))
        .collect();
    FiniteCover::new(names, meet, 0, axioms).unwrap()
}

fn inputs() -> impl Strategy<Value = (Vec<u8>, Vec<(usize, Vec<bool>)>)> {
    (
        prop::collection::vec(0u8..16, 0..4),
        prop::collection::vec((0usize..16, prop::collection::vec(prop::bool::weighted(0.3), 16)), 0..5),
    )
}

fn subset(c: &FiniteCover, bits: u16) -> Subset {
    Subset::from_bits(bits as u128).intersection(c.base())
}

proptest! {
    #[test]
    fn saturation_is_a_closure_operator((seeds, raw) in inputs(), u in any::<u16>(), v in any::<u16>()) {
        let c = cover(&seeds, &raw);
        let (u, v) = (subset(&c, u), subset(&c, v));
        let su = c.saturate(u);
        prop_assert!(u.is_subset(su));
        prop_assert_eq!(c.saturate(su), su);
        if u.is_subset(v) {
            prop_assert!(su.is_subset(c.saturate(v)));
        }
        prop_assert!(su.union(c.saturate(v)).is_subset(c.saturate(u.union(v))));
    }

    #[test]
    fn saturated_sets_are_down_closed((seeds, raw) in inputs(), u in any::<u16>()) {
        let c = cover(&seeds, &raw);
        let s = c.saturate(subset(&c, u));
        for a in s.iter() {
            for b in 0..c.len() {
                if c.leq(b, a) {
                    prop_assert!(s.contains(b));
                }
            }
        }
    }

    #[test]
    fn saturation_respects_stability((seeds, raw) in inputs(), u in any::<u16>(), v in any::<u16>()) {
        let c = cover(&seeds, &raw);
        let (u, v) = (subset(&c, u), subset(&c, v));
        let lhs = c.saturate(u).intersection(c.saturate(v));
        prop_assert_eq!(lhs, c.saturate(c.pointwise_meet(u, v)));
    }

    #[test]
    fn derivation_agrees_with_saturation((seeds, raw) in inputs(), a in 0usize..16, u in any::<u16>()) {
        let c = cover(&seeds, &raw);
        let a = a % c.len();
        let u = subset(&c, u);
        let members: Vec<usize> = u.iter().collect();
        let derived = c.presentation().derive(a, Enumeration::from_vec(members)).run(10_000);
        prop_assert_eq!(derived.is_confirmed(), c.covers(a, u));
    }

    #[test]
    fn derivation_outcome_is_stable((seeds, raw) in inputs(), a in 0usize..16, u in any::<u16>()) {
        let c = cover(&seeds, &raw);
        let a = a % c.len();
        let members: Vec<usize> = subset(&c, u).iter().collect();
        let d = c.presentation().derive(a, Enumeration::from_vec(members));
        if let Outcome::Confirmed(k) = d.run(10_000) {
            prop_assert_eq!(d.run(k), Outcome::Confirmed(k));
            prop_assert_eq!(d.run(k + 100), Outcome::Confirmed(k));
            if k > 0 {
                prop_assert_eq!(d.run(k - 1), Outcome::Unknown);
            }
        }
    }

    #[test]
    fn frames_of_presentations_are_distributive((seeds, raw) in inputs()) {
        let c = cover(&seeds, &raw);
        let frame = c.frame(15).unwrap();
        prop_assert_eq!(frame.sets.len(), frame.lattice.len());
        for &s in &frame.sets {
            prop_assert_eq!(c.saturate(s), s);
        }
    }
}

#[test]
fn envelopes_of_small_lattices_are_isomorphic() {
    let lattices = (0..=5).map(|n| chain_lattice(n).unwrap()).chain((0..=3).map(|k| boolean_lattice(k).unwrap()));
    for l in lattices {
        let env = Envelope::new(&l).unwrap();
        let frame = env.cover.frame(15).unwrap();
        assert!(find_isomorphism(&frame.lattice, &l).is_some(), "{:?}", l.names());
        assert_eq!(env.cover.check_formal_cover_axioms(), Ok(()));
    }
}
