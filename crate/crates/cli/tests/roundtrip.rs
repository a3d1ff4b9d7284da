use proptest::prelude::*;

use sigmaframe_cli::syntax::{CheckKind, Command, CommandKind, CoverDecl, Ident, Item, LatticeDecl, Target};
use sigmaframe_cli::{parse, Document};

fn name() -> impl Strategy<Value = String> {
    "[a-zA-Z0-9][a-zA-Z0-9_.'+-]{0,4}"
}

fn ident() -> impl Strategy<Value = Ident> {
    name().prop_map(Ident::new)
}

fn idents(max: usize) -> impl Strategy<Value = Vec<Ident>> {
    prop::collection::vec(ident(), 0..max)
}

fn pairs() -> impl Strategy<Value = Vec<(Ident, Ident)>> {
    prop::collection::vec((ident(), ident()), 0..4)
}

fn lattice() -> impl Strategy<Value = Item> {
    (ident(), idents(5), pairs(), prop::option::of(idents(4)))
        .prop_map(|(name, elements, leq, pos)| Item::Lattice(LatticeDecl { name, elements, leq, pos }))
}

fn cover() -> impl Strategy<Value = Item> {
    (
        ident(),
        idents(5),
        prop::option::of(ident()),
        prop::collection::vec((ident(), ident(), ident()), 0..3),
        pairs(),
        prop::collection::vec((ident(), idents(4)), 0..3),
        prop::option::of(idents(4)),
    )
        .prop_map(|(name, base, top, meet, leq, axioms, pos)| {
            Item::Cover(CoverDecl {
                name,
                base,
                top,
                meet,
                leq,
                axioms,
                pos,
            })
        })
}

fn target() -> impl Strategy<Value = Target> {
    prop_oneof![
        name()
            .prop_filter("built-in names", |n| n != "Cantor" && n != "Baire")
            .prop_map(|n| Target::Name(Ident::new(n))),
        (0u64..100).prop_map(Target::Chain),
        (0u64..10).prop_map(Target::Boolean),
        idents(4).prop_map(Target::Discrete),
        Just(Target::Cantor),
        Just(Target::Baire),
    ]
}

fn kind() -> impl Strategy<Value = CommandKind> {
    let cover = prop::collection::vec(name().prop_filter("keyword", |n| n != "budget"), 0..4)
        .prop_map(|v| v.into_iter().map(Ident::new).collect::<Vec<_>>());
    prop_oneof![
        prop::sample::select(vec![CheckKind::Overt, CheckKind::Overlap, CheckKind::FormalCover, CheckKind::Lattice])
            .prop_map(CommandKind::Check),
        Just(CommandKind::Booleanize),
        Just(CommandKind::Congruences),
        Just(CommandKind::Envelope),
        (ident(), cover, prop::option::of(0u64..1_000_000))
            .prop_map(|(goal, cover, budget)| CommandKind::Derive { goal, cover, budget }),
    ]
}

fn command() -> impl Strategy<Value = Item> {
    (kind(), target()).prop_map(|(kind, target)| {
        Item::Command(Command {
            kind,
            target,
            span: Default::default(),
        })
    })
}

fn document() -> impl Strategy<Value = Document> {
    prop::collection::vec(prop_oneof![lattice(), cover(), command()], 0..6).prop_map(|items| Document { items })
}

proptest! {
    #[test]
    fn pretty_printed_documents_parse_back(doc in document()) {
        let text = doc.to_string();
        let parsed = parse(&text).map_err(|e| TestCaseError::fail(format!("{e}\n{text}")))?;
        prop_assert_eq!(parsed, doc);
    }

    #[test]
    fn pretty_printing_is_idempotent(doc in document()) {
        let once = doc.to_string();
        let twice = parse(&once).unwrap().to_string();
        prop_assert_eq!(once, twice);
    }
}
