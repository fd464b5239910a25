mod common;

use std::collections::BTreeMap;

use common::{find, full_catalog};
use ringinv::analysis::{Analysis, Caps};
use ringinv::catalog::Instance;
use ringinv::theorems::{check, check_all, counterexample_search, Mask, Status, TheoremId, TheoremReport, Verdict};

fn analyse(list: &[Instance]) -> Vec<Analysis> {
    list.iter().map(|i| i.analysis(&Caps::default(), 0).unwrap()).collect()
}

/// Verdict recomputed from the report's own hypothesis and conclusion data.
fn expected_verdict(r: &TheoremReport) -> Verdict {
    let truth = |s: Status, masked: bool| -> Option<bool> {
        match (masked, s) {
            (true, _) | (_, Status::Holds | Status::HoldsDominated) => Some(true),
            (_, Status::Fails) => Some(false),
            (_, Status::Capped) => None,
        }
    };
    let mut standing = Some(true);
    let mut branches: BTreeMap<usize, Option<bool>> = BTreeMap::new();
    for h in &r.hypotheses {
        let t = truth(h.status, h.masked);
        let slot = match h.branch {
            None => &mut standing,
            Some(b) => branches.entry(b).or_insert(Some(true)),
        };
        *slot = match (*slot, t) {
            (Some(false), _) | (_, Some(false)) => Some(false),
            (None, _) | (_, None) => None,
            _ => Some(true),
        };
    }
    let alternatives = if branches.is_empty() || branches.values().any(|b| *b == Some(true)) {
        Some(true)
    } else if branches.values().all(|b| *b == Some(false)) {
        Some(false)
    } else {
        None
    };
    let hyps = match (standing, alternatives) {
        (Some(false), _) | (_, Some(false)) => Some(false),
        (Some(true), Some(true)) => Some(true),
        _ => None,
    };
    match hyps {
        Some(false) => Verdict::Vacuous,
        None => Verdict::SkippedCap,
        Some(true) => match r.conclusion.status {
            Status::Holds | Status::HoldsDominated => Verdict::Verified,
            Status::Fails => Verdict::Counterexample,
            Status::Capped => Verdict::SkippedCap,
        },
    }
}

#[test]
fn catalog_reports_are_sound_and_consistent() {
    let list = full_catalog(150, 128);
    let reports = check_all(&analyse(&list), &TheoremId::ALL, &[]);
    assert_eq!(reports.len(), list.len() * TheoremId::ALL.len());
    for r in &reports {
        assert_ne!(r.verdict, Verdict::Counterexample, "{} on {} | {}", r.theorem, r.ring, r.group);
        assert_eq!(r.verdict, expected_verdict(r), "{} on {} | {}", r.theorem, r.ring, r.group);
        if r.verdict == Verdict::Vacuous {
            let why = r.explanation.as_deref().unwrap_or_default();
            assert!(why.contains("hypothesis"), "{why}");
            assert!(r.hypotheses.iter().any(|h| h.status == Status::Fails && !h.masked));
        }
        // conclusion status is the conjunction of its clauses
        let clauses: Vec<Status> = r.conclusion.clauses.iter().map(|c| c.status).collect();
        assert_eq!(r.conclusion.status.is_true(), clauses.iter().all(|s| s.is_true()));
    }
}

#[test]
fn n1_on_zero_f4_with_s3() {
    let list = full_catalog(0, 1);
    let inst = find(&list, "zero F4", "order 6");
    let a = inst.analysis(&Caps::default(), 0).unwrap();
    let r = check(TheoremId::N1, &a, &[]);
    assert!(r.hypotheses.iter().all(|h| h.status.is_true()), "{r:#?}");
    assert_eq!(r.verdict, Verdict::Verified);
    let bad = a.bad_primes();
    assert_eq!(bad.prime_set(), vec![2]);
    assert_eq!(bad.primes[0].normal_complement.as_ref().map(Vec::len), Some(3));
}

#[test]
fn bi_bound_on_zero_square() {
    let list = full_catalog(0, 1);
    let a = find(&list, "zero F3^2", "swap").analysis(&Caps::default(), 0).unwrap();
    let r = check(TheoremId::BI_1_4, &a, &[]);
    assert_eq!(r.verdict, Verdict::Verified);
    assert_eq!(r.conclusion.status, Status::HoldsDominated);
}

#[test]
fn radical_pair() {
    let list = full_catalog(0, 1);
    let good = find(&list, "F3xF3", "swap").analysis(&Caps::default(), 0).unwrap();
    assert_eq!(check(TheoremId::RAD_1_4, &good, &[]).verdict, Verdict::Verified);
    let bad = find(&list, "M2(F2)", "inner C2").analysis(&Caps::default(), 0).unwrap();
    let r = check(TheoremId::RAD_1_4, &bad, &[]);
    assert_eq!(r.verdict, Verdict::Vacuous);
    assert_eq!(r.conclusion.status, Status::Fails);
    assert_eq!(bad.fixed_jacobson_radical().order(), 2);
}

#[test]
fn masking_exposes_counterexamples() {
    let list = full_catalog(0, 1);
    let build = |i: usize| list.get(i).map(|inst| inst.analysis(&Caps::default(), 0).unwrap());
    let masks: Vec<Mask> = vec!["N2:2".parse().unwrap()];
    let hits = counterexample_search(&[TheoremId::N2], &masks, list.len(), build);
    assert!(!hits.is_empty());
    for h in &hits {
        assert_eq!(h.verdict, Verdict::Counterexample);
        assert!(h.hypotheses.iter().any(|x| x.masked));
    }
    let unmasked = counterexample_search(&TheoremId::ALL, &[], list.len(), build);
    assert!(unmasked.is_empty());
}

#[test]
fn tags_agree_with_analysis() {
    for inst in full_catalog(40, 64) {
        let a = inst.analysis(&Caps::default(), 0).unwrap();
        let has = |t: &str| inst.tags.contains(t);
        assert_eq!(has("unital"), inst.ring.is_unital(), "{}", inst.name());
        assert_eq!(has("semiprime"), a.prime_radical().is_zero());
        assert_eq!(has("trivial-group"), inst.group.order() == 1);
        assert_eq!(has("order-invertible"), a.order_invertible());
        let n1 = check(TheoremId::N1, &a, &[]);
        assert_eq!(has("n1-hypotheses-hold"), n1.hypotheses.iter().all(|h| h.status.is_true()));
    }
}

#[test]
fn reports_are_deterministic() {
    let list = full_catalog(30, 64);
    let once = serde_json::to_string(&check_all(&analyse(&list), &TheoremId::ALL, &[])).unwrap();
    let twice = serde_json::to_string(&check_all(&analyse(&list), &TheoremId::ALL, &[])).unwrap();
    assert_eq!(once, twice);
    let back: Vec<TheoremReport> = serde_json::from_str(&once).unwrap();
    assert_eq!(serde_json::to_string(&back).unwrap(), once);
}
