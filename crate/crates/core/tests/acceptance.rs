//! Acceptance gate. Prints one line per criterion and exits nonzero if any fails.
//!
//! Run with `cargo test -p ringinv --test acceptance -- --nocapture` or as part
//! of `cargo test --workspace`.

mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use common::{as_set, brute_jacobson, find, full_catalog, random_catalog, RANDOM_SEED};
use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use ringinv::analysis::{Analysis, Caps, ProperStatus};
use ringinv::catalog::{self, format, named_instances, Instance};
use ringinv::groups::{additive_closure, h_constant, p_group_fixed_point, prime_power_base, FixedPoint};
use ringinv::invariants::DValue;
use ringinv::radicals::{jacobson_radical, prime_radical, Maximality};
use ringinv::theorems::{check, check_all, Status, TheoremId, Verdict};
use ringinv::{AdditiveGroup, Element, Side, Subgroup};

/// Random members of the soundness and radical sweeps.
const RANDOM_MEMBERS: usize = 600;
/// Largest ring order in the sweeps.
const MAX_ORDER: u64 = 256;
/// Minimum number of catalog rings in the radical and soundness sweeps.
const MIN_SWEEP: usize = 500;
/// Wall-clock budget for the radical cross-check.
const RADICAL_BUDGET: Duration = Duration::from_secs(300);
/// Rings up to this order are also checked against the brute-force oracle.
const BRUTE_ORDER: u64 = 64;
/// Fixed-point suite bounds.
const MAX_P_GROUP: usize = 8;
const MAX_MODULE: u64 = 64;

struct Gate {
    failures: usize,
}

impl Gate {
    fn record(&mut self, n: usize, name: &str, ok: bool, detail: String) {
        println!("{} [{n:>2}] {name}: {detail}", if ok { "PASS" } else { "FAIL" });
        if !ok {
            self.failures += 1;
        }
    }
}

fn analyse(list: &[Instance]) -> Vec<Analysis> {
    list.iter().map(|i| i.analysis(&Caps::default(), 0).expect("catalog instance")).collect()
}

fn radical_cross_check(gate: &mut Gate, catalog: &[Instance]) {
    let start = Instant::now();
    let mut agree = 0;
    let mut brute = 0;
    let mut mismatches = Vec::new();
    for inst in catalog {
        let n = prime_radical(&inst.ring).subgroup;
        let j = jacobson_radical(&inst.ring).subgroup;
        if n == j {
            agree += 1;
        } else {
            mismatches.push(inst.name());
        }
        if inst.ring.order() <= BRUTE_ORDER {
            brute += 1;
            if as_set(&j) != brute_jacobson(&inst.ring) {
                mismatches.push(format!("{} (brute force)", inst.name()));
            }
        }
    }
    let elapsed = start.elapsed();
    gate.record(
        1,
        "radical cross-oracle",
        mismatches.is_empty() && catalog.len() >= MIN_SWEEP && elapsed <= RADICAL_BUDGET,
        format!(
            "{agree}/{} rings agree, {brute} of order <= {BRUTE_ORDER} also match brute force, {:.1}s \
             (need >= {MIN_SWEEP} rings of order <= {MAX_ORDER}, exact equality, <= {}s){}",
            catalog.len(),
            elapsed.as_secs_f64(),
            RADICAL_BUDGET.as_secs(),
            if mismatches.is_empty() { String::new() } else { format!("; mismatches: {mismatches:?}") }
        ),
    );
}

/// Abelian `p`-groups of order in `(1, MAX_MODULE]`, as lists of cyclic factor orders.
fn p_modules() -> Vec<Vec<u64>> {
    fn partitions(n: u32, max: u32) -> Vec<Vec<u32>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for first in (1..=n.min(max)).rev() {
            for mut rest in partitions(n - first, first) {
                rest.insert(0, first);
                out.push(rest);
            }
        }
        out
    }
    let mut out = Vec::new();
    for p in [2u64, 3, 5, 7] {
        let mut e = 1;
        while p.pow(e) <= MAX_MODULE {
            for part in partitions(e, e) {
                out.push(part.iter().map(|&k| p.pow(k)).collect());
            }
            e += 1;
        }
    }
    out
}

/// Candidate generator images: element `x` may be the image of generator `i`
/// only if its order divides the order of that generator.
fn image_choices(v: &AdditiveGroup) -> Vec<Vec<Element>> {
    (0..v.rank())
        .map(|i| {
            v.elements()
                .filter(|x| v.is_zero(&v.scale(v.orders()[i] as i128, x)))
                .collect()
        })
        .collect()
}

/// `p`-automorphisms of `v` of order at most `MAX_P_GROUP`: exhaustive when
/// the candidate space is small, seeded sampling otherwise.
fn p_automorphisms(v: &AdditiveGroup, p: u64, rng: &mut ChaCha8Rng) -> (Vec<Vec<Element>>, bool) {
    let choices = image_choices(v);
    let space: u64 = choices.iter().map(|c| c.len() as u64).product();
    let exhaustive = space <= 20_000;
    let mut candidates: Vec<Vec<Element>> = Vec::new();
    if exhaustive {
        let mut idx = vec![0usize; choices.len()];
        'outer: loop {
            candidates.push(idx.iter().zip(&choices).map(|(&i, c)| c[i].clone()).collect());
            for k in 0..idx.len() {
                idx[k] += 1;
                if idx[k] < choices[k].len() {
                    continue 'outer;
                }
                idx[k] = 0;
            }
            break;
        }
    } else {
        for _ in 0..4_000 {
            // perturbations of the identity are far more likely to be p-elements
            let g: Vec<Element> = (0..v.rank())
                .map(|i| {
                    let mut img = v.basis(i);
                    if rng.gen_bool(0.5) {
                        let c = &choices[i];
                        img = v.add(&img, &c[rng.gen_range(0..c.len())]);
                    }
                    img
                })
                .collect();
            candidates.push(g);
        }
    }
    let mut found = BTreeSet::new();
    for g in candidates {
        if let Ok(group) = additive_closure(v, std::slice::from_ref(&g), MAX_P_GROUP) {
            if group.len() > 1 && prime_power_base(group.len() as u64) == Some(p) {
                found.insert(g);
            }
        }
    }
    (found.into_iter().collect(), exhaustive)
}

fn fixed_point_suite(gate: &mut Gate) {
    let mut rng = ChaCha8Rng::seed_from_u64(RANDOM_SEED);
    let (mut actions, mut zero_only, mut modules, mut exhaustive_modules) = (0usize, 0usize, 0usize, 0usize);
    for orders in p_modules() {
        let p = prime_power_base(orders[0]).unwrap();
        let v = AdditiveGroup::new(orders).unwrap();
        modules += 1;
        let (cyclic, exhaustive) = p_automorphisms(&v, p, &mut rng);
        exhaustive_modules += exhaustive as usize;
        let mut suite: Vec<Vec<Vec<Element>>> = cyclic.iter().map(|g| vec![g.clone()]).collect();
        // two-generator p-groups of order <= 8, seeded pairs
        for _ in 0..200.min(cyclic.len() * cyclic.len()) {
            let a = &cyclic[rng.gen_range(0..cyclic.len())];
            let b = &cyclic[rng.gen_range(0..cyclic.len())];
            let gens = vec![a.clone(), b.clone()];
            if let Ok(g) = additive_closure(&v, &gens, MAX_P_GROUP) {
                if prime_power_base(g.len() as u64) == Some(p) {
                    suite.push(gens);
                }
            }
        }
        for gens in suite {
            actions += 1;
            match p_group_fixed_point(&v, &gens) {
                Ok(FixedPoint::Nonzero(x)) if gens.iter().all(|g| v.apply(g, &x) == x) && !v.is_zero(&x) => {}
                _ => zero_only += 1,
            }
        }
    }
    gate.record(
        2,
        "fixed-point lemma",
        zero_only == 0 && actions > 0,
        format!(
            "{actions} actions on {modules} modules ({exhaustive_modules} enumerated exhaustively), \
             {zero_only} without a nonzero fixed point (|P| <= {MAX_P_GROUP}, |V| <= {MAX_MODULE}, need 0)"
        ),
    );
}

fn h_table(gate: &mut Gate) {
    let got: Vec<BigUint> = (1..=4).map(h_constant).collect();
    let want: Vec<BigUint> = [2u32, 6, 32, 350].into_iter().map(BigUint::from).collect();
    gate.record(3, "h-constant table", got == want, format!("h(1..4) = {got:?} (exact)"));
}

fn soundness(gate: &mut Gate, analyses: &[Analysis]) {
    let reports = check_all(analyses, &TheoremId::ALL, &[]);
    let counter: Vec<String> = reports
        .iter()
        .filter(|r| r.verdict == Verdict::Counterexample)
        .map(|r| format!("{} on {} | {}", r.theorem, r.ring, r.group))
        .collect();
    let unnamed = reports
        .iter()
        .filter(|r| r.verdict == Verdict::Vacuous)
        .filter(|r| !r.explanation.as_deref().is_some_and(|e| e.contains("hypothesis") && e.contains("fails")))
        .count();
    let count = |v: Verdict| reports.iter().filter(|r| r.verdict == v).count();
    gate.record(
        4,
        "theorem soundness sweep",
        counter.is_empty() && unnamed == 0 && analyses.len() >= MIN_SWEEP,
        format!(
            "{} instances x {} statements: {} verified, {} vacuous, {} skipped(cap), {} counterexample; \
             {unnamed} vacuous reports without a named hypothesis (need 0 and 0){}",
            analyses.len(),
            TheoremId::ALL.len(),
            count(Verdict::Verified),
            count(Verdict::Vacuous),
            count(Verdict::SkippedCap),
            counter.len(),
            if counter.is_empty() { String::new() } else { format!(": {counter:?}") }
        ),
    );
}

fn n1_positive(gate: &mut Gate, named: &[Instance]) {
    let a = find(named, "zero F4", "order 6").analysis(&Caps::default(), 0).unwrap();
    let r = check(TheoremId::N1, &a, &[]);
    let bad = a.bad_primes();
    let two = bad.primes.iter().find(|b| b.p == 2);
    let complement = two.and_then(|b| b.normal_complement.clone()).unwrap_or_default();
    let cyclic3 = complement.len() == 3 && complement.iter().all(|&g| a.ctx.group.element_order(g) != 2);
    let d = two.map(|b| b.d.clone());
    let ok = r.hypotheses.iter().all(|h| h.status == Status::Holds)
        && cyclic3
        && d == Some(DValue::Found(1))
        && a.nilpotency_index() == Some(2)
        && r.conclusion.status == Status::HoldsDominated
        && r.verdict == Verdict::Verified;
    gate.record(
        5,
        "N1 positive instance",
        ok,
        format!(
            "zero F4 with |G| = {}: hypotheses {:?}, |N(2)| = {}, d(2) = {:?}, nilpotency index {:?}, conclusion {}, verdict {}",
            a.n(),
            r.hypotheses.iter().map(|h| h.status.to_string()).collect::<Vec<_>>(),
            complement.len(),
            d,
            a.nilpotency_index(),
            r.conclusion.status,
            r.verdict
        ),
    );
}

fn bi_desk_check(gate: &mut Gate, named: &[Instance]) {
    let a = find(named, "zero F3^2", "swap").analysis(&Caps::default(), 0).unwrap();
    let r = check(TheoremId::BI_1_4, &a, &[]);
    let ring = a.ring();
    let t = a.ctx.trace_image(&ring.full());
    let t_squared_zero = ring.product(&t, &t).is_zero();
    let ok = a.ring_torsion_free(a.n())
        && t_squared_zero
        && a.nilpotency_index() == Some(2)
        && r.conclusion.status == Status::HoldsDominated
        && r.verdict == Verdict::Verified;
    gate.record(
        6,
        "Bergman-Isaacs desk check",
        ok,
        format!(
            "zero F3^2 with swap: 2-torsion free {}, t(R)^2 = 0 {t_squared_zero}, R^{} = 0 via nilpotency index {:?}, conclusion {}, verdict {}",
            a.ring_torsion_free(a.n()),
            h_constant(a.n()),
            a.nilpotency_index(),
            r.conclusion.status,
            r.verdict
        ),
    );
}

fn rad_pair(gate: &mut Gate, named: &[Instance]) {
    let good = find(named, "F3xF3", "swap").analysis(&Caps::default(), 0).unwrap();
    let good_r = check(TheoremId::RAD_1_4, &good, &[]);
    let bad = find(named, "M2(F2)", "inner C2").analysis(&Caps::default(), 0).unwrap();
    let bad_r = check(TheoremId::RAD_1_4, &bad, &[]);
    // e12 in the basis e11, e12, e21, e22
    let e12: BTreeSet<Element> = [vec![0, 0, 0, 0], vec![0, 1, 0, 0]].into_iter().collect();
    let fixed_rad = as_set(bad.fixed_jacobson_radical());
    let restricted = bad.jacobson_radical().intersect(bad.fixed());
    let why = bad_r.explanation.clone().unwrap_or_default();
    let ok = good_r.verdict == Verdict::Verified
        && good.jacobson_radical().is_zero()
        && good.fixed_jacobson_radical().is_zero()
        && fixed_rad == e12
        && restricted.is_zero()
        && bad_r.verdict == Verdict::Vacuous
        && why.contains("hypothesis");
    gate.record(
        7,
        "rad-equality pair",
        ok,
        format!(
            "F3xF3 swap: {}; M2(F2) inner C2: |rad(R^G)| = {} (= {{0, e12}}: {}), |rad(R) ∩ R^G| = {}, verdict {} ({why})",
            good_r.verdict,
            fixed_rad.len(),
            fixed_rad == e12,
            restricted.order(),
            bad_r.verdict
        ),
    );
}

fn udim_bounds(gate: &mut Gate, named: &[Instance], analyses: &[Analysis]) {
    let (mut exhaustive, mut conditional, mut violations) = (0usize, 0usize, Vec::new());
    for a in analyses {
        for side in [Side::Left, Side::Right] {
            let (r, f) = (a.udim(side), a.fixed_udim(side));
            if r.maximality != Maximality::Exhaustive || f.maximality != Maximality::Exhaustive {
                continue;
            }
            exhaustive += 1;
            let report = check(TheoremId::COR_A8, a, &[]);
            if report.hypotheses.iter().all(|h| h.status.is_true()) {
                conditional += 1;
                let n = a.n() as usize;
                if !(f.value <= r.value && r.value <= n * f.value) {
                    violations.push(format!("{} | {} {side:?}", a.ring_name, a.group_name));
                }
            }
        }
    }
    let f3f3 = find(named, "F3xF3", "swap").analysis(&Caps::default(), 0).unwrap();
    let m2 = find(named, "M2(F2)", "inner C2").analysis(&Caps::default(), 0).unwrap();
    let spots = (
        f3f3.udim(Side::Left).value,
        f3f3.fixed_udim(Side::Left).value,
        m2.udim(Side::Left).value,
    );
    gate.record(
        8,
        "udim bounds",
        violations.is_empty() && spots == (2, 1, 2),
        format!(
            "{exhaustive} exact (instance, side) pairs, {conditional} with the corollary's hypotheses holding, \
             {} violations; udim(F3xF3) = {}, udim(diagonal) = {}, udim_left(M2(F2)) = {} (need 2, 1, 2)",
            violations.len(),
            spots.0,
            spots.1,
            spots.2
        ),
    );
}

/// Sided ideal of `R` generated by `J`, from products of additive generators.
fn extension(a: &Analysis, j: &Subgroup, side: Side) -> Subgroup {
    let ring = a.ring();
    let mut gens = j.generators();
    for b in ring.basis_elements() {
        for x in j.generators() {
            gens.push(match side {
                Side::Left => ring.mul(&b, &x),
                _ => ring.mul(&x, &b),
            });
        }
    }
    ring.span(&gens)
}

fn lemma_suite(gate: &mut Gate, analyses: &[Analysis]) {
    let (mut instances, mut pairs, mut failures) = (0usize, 0usize, Vec::new());
    for a in analyses.iter().filter(|a| a.ring().order() <= MAX_ORDER) {
        let mut counted = false;
        for side in [Side::Left, Side::Right] {
            if !matches!(a.proper_status(side), ProperStatus::Proper(_)) {
                continue;
            }
            if !counted {
                instances += 1;
                counted = true;
            }
            let fixed_ideals = a.fixed_ring_ideals(side);
            let ideals = a.invariant_ideals(side);
            if !(fixed_ideals.exhaustive && ideals.exhaustive) {
                failures.push(format!("{} | {}: lattice not exhaustive", a.ring_name, a.group_name));
                continue;
            }
            for j in &fixed_ideals.members {
                let je = extension(a, j, side);
                if je.intersect(a.fixed()) != *j {
                    failures.push(format!("{} | {} {side:?}: J^er != J", a.ring_name, a.group_name));
                }
                for i in ideals.members.iter().filter(|i| i.intersect(a.fixed()).is_subgroup_of(j)) {
                    pairs += 1;
                    if je.join(i).intersect(a.fixed()) != *j {
                        failures.push(format!("{} | {} {side:?}: (RJ + I) ∩ R^G != J", a.ring_name, a.group_name));
                    }
                }
            }
            for id in [TheoremId::LEM_B6, TheoremId::LEM_C6] {
                let r = check(id, a, &[]);
                if r.conclusion.status != Status::Holds {
                    failures.push(format!("{id} on {} | {}: {}", a.ring_name, a.group_name, r.conclusion.status));
                }
            }
        }
    }
    failures.dedup();
    gate.record(
        9,
        "lemma suite on proper splittings",
        failures.is_empty() && instances > 0,
        format!(
            "{instances} instances with a certified proper splitting, {pairs} (J, I) pairs, {} failures (need 0){}",
            failures.len(),
            if failures.is_empty() { String::new() } else { format!(": {:?}", &failures[..failures.len().min(5)]) }
        ),
    );
}

fn determinism(gate: &mut Gate, list: &[Instance]) {
    let run = |threads: usize| {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        pool.install(|| serde_json::to_vec_pretty(&check_all(&analyse(list), &TheoremId::ALL, &[])).unwrap())
    };
    let (first, second) = (run(1), run(4));
    gate.record(
        10,
        "determinism",
        first == second,
        format!("{} instances, 1 vs 4 threads: {} vs {} bytes, identical: {}", list.len(), first.len(), second.len(), first == second),
    );
}

fn round_trip(gate: &mut Gate) {
    let dir = std::env::temp_dir().join(format!("ringinv-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let (a, b) = (dir.join("named.txt"), dir.join("again.txt"));
    let named = named_instances();
    catalog::save(&a, &named).unwrap();
    let loaded = catalog::load(&a).unwrap();
    catalog::save(&b, &loaded).unwrap();
    let (x, y) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let parsed_again = format::parse(&String::from_utf8_lossy(&y)).map(|l| l.len()).unwrap_or(0);
    std::fs::remove_dir_all(&dir).unwrap();
    gate.record(
        11,
        "round-trip",
        x == y && loaded.len() == named.len() && parsed_again == named.len(),
        format!("{} named instances, save(load(file)) byte-identical: {}", named.len(), x == y),
    );
}

fn main() {
    let mut gate = Gate { failures: 0 };
    let named = named_instances();
    let catalog = full_catalog(RANDOM_MEMBERS, MAX_ORDER);

    radical_cross_check(&mut gate, &catalog);
    fixed_point_suite(&mut gate);
    h_table(&mut gate);
    let analyses = analyse(&catalog);
    soundness(&mut gate, &analyses);
    n1_positive(&mut gate, &named);
    bi_desk_check(&mut gate, &named);
    rad_pair(&mut gate, &named);
    udim_bounds(&mut gate, &named, &analyses);
    lemma_suite(&mut gate, &analyses);
    let mut small = named.clone();
    small.extend(random_catalog(60, 64));
    determinism(&mut gate, &small);
    round_trip(&mut gate);

    println!("acceptance: {} of 11 criteria passed", 11 - gate.failures);
    if gate.failures > 0 {
        std::process::exit(1);
    }
}
