use sigmaframe::booleanization::{enumerate_congruences, Congruence};
use sigmaframe::generators::{boolean_lattice, chain_lattice};
use sigmaframe_testkit::congruences::{all_congruences, closure};
use sigmaframe_testkit::corpus::{corpus, distributive_lattices, DISTRIBUTIVE_COUNTS};
use sigmaframe_testkit::homs::homomorphisms;
use sigmaframe_testkit::random::{presentation, rng};

#[test]
fn corpus_has_every_small_distributive_lattice() {
    let built = distributive_lattices(8);
    assert_eq!(corpus().len(), built.len());
    let corpus = built;
    for (i, &expected) in DISTRIBUTIVE_COUNTS.iter().enumerate() {
        let found = corpus.iter().filter(|l| l.len() == i + 1).count();
        assert_eq!(found, expected, "size {}", i + 1);
    }
    assert_eq!(corpus.len(), 36);
}

#[test]
fn diamond_congruences_come_from_single_pairs() {
    let d = boolean_lattice(2).unwrap();
    let by_pairs = all_congruences(&d);
    assert_eq!(by_pairs.len(), 4);
    for c in &by_pairs[..by_pairs.len() - 1] {
        let pair = (0..4).flat_map(|x| (0..x).map(move |y| (x, y))).find(|&(x, y)| {
            c.related(x, y) && closure(&d, &Congruence::identity(4), &[(x, y)]) == *c
        });
        assert!(pair.is_some() || *c == Congruence::identity(4));
    }
}

#[test]
fn congruence_routes_agree_on_the_corpus() {
    for l in corpus() {
        assert_eq!(enumerate_congruences(l).unwrap(), all_congruences(l), "{l:?}");
    }
}

#[test]
fn chain_endomorphisms() {
    // on chains every monotone map fixing both ends is a homomorphism
    let c = chain_lattice(2).unwrap();
    assert_eq!(homomorphisms(&c, &c, &[]), vec![vec![0, 0, 2], vec![0, 1, 2], vec![0, 2, 2]]);
    assert_eq!(homomorphisms(&c, &c, &[None, Some(1)]), vec![vec![0, 1, 2]]);
    // onto the two-element lattice: a can go either way
    assert_eq!(homomorphisms(&c, &chain_lattice(1).unwrap(), &[]).len(), 2);
}

#[test]
fn random_presentations_are_seeded() {
    let a: Vec<_> = (0..5).map(|_| ()).scan(rng(7), |r, _| Some(presentation(r, 6, 8).names().to_vec())).collect();
    let b: Vec<_> = (0..5).map(|_| ()).scan(rng(7), |r, _| Some(presentation(r, 6, 8).names().to_vec())).collect();
    assert_eq!(a, b);
    let mut r = rng(1);
    for _ in 0..50 {
        let p = presentation(&mut r, 6, 8);
        assert!(p.len() <= 6 && p.axioms().len() <= 8);
    }
}
