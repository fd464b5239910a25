//! Checking the statements on concrete instances.
//!
//! Every check evaluates all hypotheses and the conclusion; the verdict is
//! derived from them. A masked hypothesis counts as true, which turns the
//! checker into a counterexample finder for the weakened statement.

mod checks;
mod report;

use rayon::prelude::*;

use crate::analysis::Analysis;
pub use checks::{background, power_at_least};
pub use report::{
    fmt_element, fmt_subgroup, Clause, ConclusionResult, HypothesisResult, Mask, Status, TheoremId, TheoremReport,
    Verdict,
};

fn evaluate(id: TheoremId, a: &Analysis) -> checks::Evaluation {
    match id {
        TheoremId::BI_1_4 => checks::bi_1_4(a),
        TheoremId::MONT_1_7 => checks::mont_1_7(a),
        TheoremId::N1 => checks::n1(a),
        TheoremId::C1_5 => checks::c1_5(a),
        TheoremId::N2 => checks::n2(a),
        TheoremId::COR_A8 => checks::cor_a8(a),
        TheoremId::TH_1_9 => checks::th_1_9(a),
        TheoremId::TH_4APR => checks::th_4apr(a),
        TheoremId::RAD_1_4 => checks::rad_1_4(a),
        TheoremId::B5APR => checks::b5apr(a),
        TheoremId::LEVITZKI => checks::levitzki(a),
        TheoremId::TH_8APR => checks::th_8apr(a),
        TheoremId::COR_B8 => checks::cor_b8(a),
        TheoremId::A5APR => checks::a5apr(a),
        TheoremId::LEM_A6 => checks::lem_a6(a),
        TheoremId::LEM_B6 => checks::lem_b6(a),
        TheoremId::LEM_C6 => checks::lem_c6(a),
        TheoremId::COR_C8 => checks::cor_c8(a),
    }
}

/// Checks one statement; `masks` lists hypothesis indices treated as true.
pub fn check(id: TheoremId, a: &Analysis, masks: &[usize]) -> TheoremReport {
    let mut ev = evaluate(id, a);
    for h in &mut ev.hypotheses {
        h.masked = masks.contains(&h.index);
    }
    let conclusion = ConclusionResult::from_clauses(ev.clauses);
    let (verdict, explanation) = report::verdict(&ev.hypotheses, &conclusion);
    TheoremReport {
        theorem: id,
        ring: a.ring_name.clone(),
        group: a.group_name.clone(),
        hypotheses: ev.hypotheses,
        conclusion,
        verdict,
        explanation,
        notes: ev.notes,
        caps: a.caps.clone(),
        seed: a.seed,
    }
}

fn masks_for(id: TheoremId, masks: &[Mask]) -> Vec<usize> {
    masks.iter().filter(|m| m.theorem == id).map(|m| m.index).collect()
}

/// Every requested statement on every instance, in parallel, sorted by
/// statement, then ring, then group.
pub fn check_all(analyses: &[Analysis], ids: &[TheoremId], masks: &[Mask]) -> Vec<TheoremReport> {
    let pairs: Vec<(&Analysis, TheoremId)> = analyses
        .iter()
        .flat_map(|a| ids.iter().map(move |&id| (a, id)))
        .collect();
    let mut reports: Vec<TheoremReport> = pairs
        .par_iter()
        .map(|(a, id)| check(*id, a, &masks_for(*id, masks)))
        .collect();
    reports.sort_by(|x, y| (x.theorem, &x.ring, &x.group).cmp(&(y.theorem, &y.ring, &y.group)));
    reports
}

/// Walks instances `0..budget` and keeps the counterexamples that survive a
/// second check on a freshly built instance.
pub fn counterexample_search<F>(ids: &[TheoremId], masks: &[Mask], budget: usize, build: F) -> Vec<TheoremReport>
where
    F: Fn(usize) -> Option<Analysis> + Sync,
{
    let mut found: Vec<TheoremReport> = (0..budget)
        .into_par_iter()
        .filter_map(|i| build(i).map(|a| (i, a)))
        .flat_map_iter(|(i, a)| {
            let hits: Vec<(usize, TheoremReport)> = ids
                .iter()
                .map(|&id| check(id, &a, &masks_for(id, masks)))
                .filter(|r| r.verdict == Verdict::Counterexample)
                .map(|r| (i, r))
                .collect();
            hits
        })
        .filter(|(i, r)| {
            build(*i).is_some_and(|fresh| check(r.theorem, &fresh, &masks_for(r.theorem, masks)) == *r)
        })
        .map(|(_, r)| r)
        .collect();
    found.sort_by(|x, y| (x.theorem, &x.ring, &x.group).cmp(&(y.theorem, &y.ring, &y.group)));
    found
}
