mod common;

use std::collections::BTreeSet;

use common::{as_set, find, full_catalog, random_catalog};
use proptest::prelude::*;
use ringinv::analysis::Caps;
use ringinv::catalog::{random_instances, Instance, RandomSpec};
use ringinv::invariants::{
    all_splittings, averaging_idempotent, is_torsion_free, torsion_ideal, GActionContext,
};
use ringinv::{Element, Side, Subgroup};

fn context(inst: &Instance) -> GActionContext {
    GActionContext::new(inst.ring.clone(), inst.group.clone()).unwrap()
}

/// Brute force: `B` is an `R^G`-bimodule with `R = R^G ⊕ B`.
fn is_bimodule_complement(ctx: &GActionContext, b: &Subgroup) -> bool {
    let ring = &ctx.ring;
    let fixed = &ctx.fixed.subgroup;
    if !fixed.intersect(b).is_zero() || !fixed.join(b).is_full() {
        return false;
    }
    let b_els = b.elements();
    fixed.elements().iter().all(|w| {
        b_els
            .iter()
            .all(|x| b.contains(&ring.mul(w, x)) && b.contains(&ring.mul(x, w)))
    })
}

#[test]
fn fixed_ring_matches_pointwise_definition() {
    for inst in full_catalog(80, 64) {
        let ctx = context(&inst);
        let brute: BTreeSet<Element> = inst
            .ring
            .elements()
            .filter(|x| inst.group.elements().iter().all(|g| &g.apply(&inst.ring, x) == x))
            .collect();
        assert_eq!(as_set(&ctx.fixed.subgroup), brute, "{}", inst.name());
        assert!(inst.ring.is_subring(&ctx.fixed.subgroup));
    }
}

#[test]
fn listed_splittings_are_bimodule_complements() {
    for inst in full_catalog(80, 64) {
        let ctx = context(&inst);
        let family = all_splittings(&ctx, 32);
        for s in &family.splittings {
            assert!(is_bimodule_complement(&ctx, &s.complement), "{}", inst.name());
            assert!(s.verify(&ctx));
        }
    }
}

#[test]
fn averaging_idempotent_exists_when_order_is_invertible() {
    for inst in full_catalog(80, 64) {
        let ctx = context(&inst);
        if !is_torsion_free(&inst.ring, ctx.n) {
            continue;
        }
        let e = averaging_idempotent(&ctx).unwrap_or_else(|e| panic!("{}: {e}", inst.name()));
        assert!(is_bimodule_complement(&ctx, &e.complement), "{}", inst.name());
        assert!(ctx.is_invariant(&e.complement));
        for x in inst.ring.elements() {
            let p = e.project(&inst.ring, &x);
            assert!(ctx.fixed.subgroup.contains(&p));
            assert_eq!(e.project(&inst.ring, &p), p);
        }
    }
}

#[test]
fn torsion_ideal_spot_values() {
    let list = full_catalog(0, 1);
    let z12 = find(&list, "Z/12", "trivial");
    assert_eq!(torsion_ideal(&z12.ring, 2).order(), 4);
    assert_eq!(torsion_ideal(&z12.ring, 3).order(), 3);
    assert!(is_torsion_free(&z12.ring, 5));
    let f3f3 = find(&list, "F3xF3", "swap");
    assert!(is_torsion_free(&f3f3.ring, 2));
}

#[test]
fn extension_and_restriction_of_fixed_ideals() {
    // J^e ∩ R^G = J whenever the averaging operator exists
    for inst in full_catalog(60, 64) {
        let a = inst.analysis(&Caps::default(), 0).unwrap();
        if !a.order_invertible() {
            continue;
        }
        for side in [Side::Left, Side::Right] {
            for j in &a.fixed_ring_ideals(side).members {
                let back = a.ctx.restrict(&a.ctx.extend(j, side));
                assert_eq!(&back, j, "{} {side:?}", inst.name());
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn trace_is_invariant_and_lands_in_fixed_ring(seed in 0u64..100_000) {
        let (list, _) = random_instances(&RandomSpec { count: 4, max_order: 128, seed, ..Default::default() });
        for inst in list {
            let ctx = context(&inst);
            for x in inst.ring.elements().take(64) {
                let t = ctx.trace(&x);
                prop_assert!(ctx.fixed.subgroup.contains(&t));
                for g in inst.group.elements() {
                    prop_assert_eq!(ctx.trace(&g.apply(&inst.ring, &x)), t.clone());
                }
            }
            // torsion ideals are two-sided ideals
            for p in [2u64, 3] {
                prop_assert!(inst.ring.is_ideal(&torsion_ideal(&inst.ring, p), Side::TwoSided));
            }
        }
    }
}

#[test]
fn random_catalog_actions_are_automorphisms() {
    for inst in random_catalog(100, 128) {
        let ring = &inst.ring;
        let els: Vec<Element> = ring.elements().take(32).collect();
        for g in inst.group.elements() {
            for x in &els {
                for y in &els {
                    assert_eq!(g.apply(ring, &ring.mul(x, y)), ring.mul(&g.apply(ring, x), &g.apply(ring, y)));
                    assert_eq!(g.apply(ring, &ring.add(x, y)), ring.add(&g.apply(ring, x), &g.apply(ring, y)));
                }
            }
        }
    }
}
