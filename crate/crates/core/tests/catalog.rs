mod common;

use common::{full_catalog, RANDOM_SEED};
use proptest::prelude::*;
use ringinv::catalog::{self, format, random_instances, RandomSpec};
use ringinv::{Error, Subgroup};

#[test]
fn text_form_round_trips() {
    let list = full_catalog(80, 128);
    let text = format::write(&list);
    let back = format::parse(&text).unwrap();
    assert_eq!(back.len(), list.len());
    assert_eq!(format::write(&back), text);
    for (a, b) in list.iter().zip(&back) {
        assert_eq!(a.name(), b.name());
        assert_eq!(a.fingerprint(), b.fingerprint());
        assert_eq!(a.group.order(), b.group.order());
    }
}

#[test]
fn save_and_load_preserve_tags() {
    let list = full_catalog(20, 64);
    let path = std::env::temp_dir().join(format!("ringinv-catalog-{}.txt", std::process::id()));
    catalog::save(&path, &list).unwrap();
    let back = catalog::load(&path).unwrap();
    std::fs::remove_file(&path).unwrap();
    // rigidity is a fact about the generator, not about the file
    for (a, b) in list.iter().zip(&back) {
        let mut expected = a.tags.clone();
        expected.remove("no-automorphism-found");
        assert_eq!(expected, b.tags, "{}", a.name());
    }
    let manifest = catalog::manifest(&list);
    assert_eq!(manifest.lines().count(), list.len() + 1);
}

#[test]
fn random_generation_is_deterministic() {
    let spec = RandomSpec { count: 40, max_order: 128, seed: RANDOM_SEED, ..Default::default() };
    let (a, stats) = random_instances(&spec);
    let (b, _) = random_instances(&spec);
    assert_eq!(format::write(&a), format::write(&b));
    assert_eq!(a.len(), 40);
    assert!(a.iter().all(|i| i.ring.order() <= 128));
    assert!(stats.valid <= stats.attempted);
    let other = random_instances(&RandomSpec { seed: RANDOM_SEED + 1, ..spec }).0;
    assert_ne!(format::write(&a), format::write(&other));
}

#[test]
fn malformed_input_reports_the_line() {
    let cases = [
        ("ring Z2\nadd 2\nmul 0 0 -> x\n", 3),
        ("ring Z2\nmul 0 0 -> 1\n", 2),
        ("ring Z2\nadd 2\nmul 0 0 -> 1\ngroup g = nope\n", 4),
        ("ring Z2\nadd 2\nmul 0 0 1\n", 3),
    ];
    for (text, line) in cases {
        match format::parse(text) {
            Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{text}"),
            other => panic!("{text}: {other:?}"),
        }
    }
}

#[test]
fn semantic_failures_are_validation_errors() {
    // x ↦ 2x is not multiplicative on Z/3
    let text = "ring Z3\nadd 3\nmul 0 0 -> 1\naut d\ngen 0 -> 2\ngroup g = d\n";
    assert!(matches!(format::parse(text), Err(Error::Validation { .. })));
    let text = "ring bad\nadd 2 2\nmul 0 0 -> 0 1\nmul 0 1 -> 0 0\nmul 1 0 -> 1 0\nmul 1 1 -> 0 0\n";
    assert!(matches!(format::parse(text), Err(Error::Validation { .. })));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn random_rings_satisfy_ring_axioms(seed in 0u64..100_000) {
        let (list, _) = random_instances(&RandomSpec { count: 2, max_order: 64, seed, ..Default::default() });
        for inst in list {
            let r = &inst.ring;
            let els: Vec<_> = r.elements().collect();
            for x in els.iter().take(12) {
                for y in els.iter().take(12) {
                    for z in els.iter().take(12) {
                        prop_assert_eq!(r.mul(&r.mul(x, y), z), r.mul(x, &r.mul(y, z)));
                        prop_assert_eq!(r.mul(x, &r.add(y, z)), r.add(&r.mul(x, y), &r.mul(x, z)));
                        prop_assert_eq!(r.mul(&r.add(x, y), z), r.add(&r.mul(x, z), &r.mul(y, z)));
                    }
                }
            }
            if let Some(u) = r.identity() {
                for x in &els {
                    prop_assert_eq!(&r.mul(u, x), x);
                    prop_assert_eq!(&r.mul(x, u), x);
                }
            }
        }
    }

    /// `|A + B| |A ∩ B| = |A| |B|` for subgroups of `Z/4 × Z/6 × Z/2`.
    #[test]
    fn subgroup_orders_satisfy_the_modular_law(
        a in proptest::collection::vec((0u64..4, 0u64..6, 0u64..2), 0..3),
        b in proptest::collection::vec((0u64..4, 0u64..6, 0u64..2), 0..3),
    ) {
        let orders = [4u64, 6, 2];
        let span = |g: &[(u64, u64, u64)]| {
            let v: Vec<Vec<u64>> = g.iter().map(|&(x, y, z)| vec![x, y, z]).collect();
            Subgroup::span(&orders, v.iter().map(Vec::as_slice))
        };
        let (sa, sb) = (span(&a), span(&b));
        let join = sa.join(&sb);
        let meet = sa.intersect(&sb);
        prop_assert_eq!(join.order() * meet.order(), sa.order() * sb.order());
        prop_assert_eq!(sa.elements().len() as u64, sa.order());
        prop_assert!(meet.is_subgroup_of(&sa) && sa.is_subgroup_of(&join));
    }
}
