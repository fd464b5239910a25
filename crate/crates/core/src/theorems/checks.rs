//! One evaluator per statement. Each returns the hypotheses with their
//! status and the conclusion split into clauses; the verdict is decided by
//! the caller.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use super::report::{fmt_element, fmt_subgroup, Clause, HypothesisResult, Status};
use crate::analysis::{Analysis, ProperStatus};
use crate::groups::{fixed_subgroup, h_constant};
use crate::invariants::{averaging_idempotent, is_proper_splitting, torsion_ideal, DValue, SplittingData};
use crate::lattice::Subgroup;
use crate::radicals::{module_length, nilpotency_index, regular_elements_quotient, Maximality};
use crate::ring::{Element, FiniteRing, Side};

const SIDES: [Side; 2] = [Side::Left, Side::Right];

fn side_name(side: Side) -> &'static str {
    match side {
        Side::Left => "left",
        Side::Right => "right",
        Side::TwoSided => "two-sided",
    }
}

type Finding = (Status, Option<String>);

#[derive(Default)]
pub(crate) struct Evaluation {
    pub hypotheses: Vec<HypothesisResult>,
    pub clauses: Vec<Clause>,
    pub notes: Vec<String>,
}

impl Evaluation {
    fn hyp(&mut self, index: usize, branch: Option<usize>, text: impl Into<String>, (status, witness): Finding) {
        self.hypotheses.push(HypothesisResult {
            index,
            branch,
            text: text.into(),
            status,
            witness,
            masked: false,
        });
    }

    fn clause(&mut self, text: impl Into<String>, (status, witness): Finding) {
        self.clauses.push(Clause {
            text: text.into(),
            status,
            witness,
        });
    }
}

fn check(ok: bool, witness: impl FnOnce() -> String) -> Finding {
    if ok {
        (Status::Holds, None)
    } else {
        (Status::Fails, Some(witness()))
    }
}

/// `base^exp ≥ k`, decided without expanding the power.
pub fn power_at_least(base: &BigUint, exp: &BigUint, k: u64) -> bool {
    let k = BigUint::from(k);
    if exp.is_zero() {
        return BigUint::one() >= k;
    }
    if base <= &BigUint::one() {
        return base >= &k;
    }
    let mut acc = BigUint::one();
    let mut i = BigUint::zero();
    while acc < k && &i < exp {
        acc *= base;
        i += 1u32;
    }
    acc >= k
}

/// `S^(base^exp) = 0`, settled through the nilpotency index of `S`.
fn power_bound(a: &Analysis, s: &Subgroup, base: &BigUint, exp: &BigUint, what: &str) -> Finding {
    match nilpotency_index(a.ring(), s) {
        None => (
            Status::Fails,
            Some(format!("the powers of {what} stabilise at a nonzero subgroup")),
        ),
        Some(k) if k > a.caps.nilpotency => (Status::Capped, Some(format!("nilpotency index {k} exceeds the cap"))),
        Some(k) if power_at_least(base, exp, k as u64) => (
            Status::HoldsDominated,
            Some(format!("{what} has nilpotency index {k}, below the bound")),
        ),
        Some(k) => (
            Status::Fails,
            Some(format!("{what} has nilpotency index {k}, above the bound {base}^{exp}")),
        ),
    }
}

// ---- hypothesis builders ----

fn ring_torsion_free(a: &Analysis, n: u64) -> Finding {
    check(a.ring_torsion_free(n), || {
        let t = torsion_ideal(a.ring(), n);
        format!("{} is a nonzero {n}-torsion element", fmt_element(&t.generators()[0]))
    })
}

fn fixed_torsion_free(a: &Analysis, n: u64) -> Finding {
    check(a.fixed_torsion_free(n), || {
        let t = torsion_ideal(a.ring(), n).intersect(a.fixed());
        match t.generators().first() {
            Some(x) => format!("{} is a nonzero {n}-torsion element of R^G", fmt_element(x)),
            None => format!("|R^G| = {} is not prime to {n}", a.fixed().order()),
        }
    })
}

fn order_invertible(a: &Analysis) -> Finding {
    check(a.order_invertible(), || {
        format!("|G| = {} is not invertible modulo the exponent {}", a.n(), a.ring().exponent())
    })
}

fn semiprime(a: &Analysis) -> Finding {
    let n = a.prime_radical();
    check(n.is_zero(), || format!("n(R) has {}", fmt_subgroup(n)))
}

fn semisimple(a: &Analysis) -> Finding {
    let j = a.jacobson_radical();
    check(j.is_zero(), || format!("rad(R) has {}", fmt_subgroup(j)))
}

fn bad_set(a: &Analysis) -> String {
    let ps: Vec<String> = a.bad_primes().prime_set().iter().map(u64::to_string).collect();
    format!("B = {{{}}}", ps.join(","))
}

fn bad_nonempty(a: &Analysis) -> Finding {
    if a.bad_primes().primes.is_empty() {
        (Status::Fails, Some("B is empty".into()))
    } else {
        (Status::Holds, Some(bad_set(a)))
    }
}

fn bad_empty(a: &Analysis) -> Finding {
    if a.bad_primes().primes.is_empty() {
        (Status::Holds, None)
    } else {
        (Status::Fails, Some(bad_set(a)))
    }
}

fn normal_complements(a: &Analysis) -> Finding {
    let missing: Vec<String> = a
        .bad_primes()
        .primes
        .iter()
        .filter(|b| b.normal_complement.is_none())
        .map(|b| b.p.to_string())
        .collect();
    check(missing.is_empty(), || {
        format!("no normal p-complement for p in {{{}}}", missing.join(","))
    })
}

/// Condition 2 of the bad-prime block: `R^G` is `p`-torsion free for all `p ∈ B`.
fn fixed_torsion_free_at_bad(a: &Analysis) -> Finding {
    let bad: Vec<u64> = a
        .bad_primes()
        .prime_set()
        .into_iter()
        .filter(|&p| !a.fixed_torsion_free(p))
        .collect();
    check(bad.is_empty(), || {
        let p = bad[0];
        let t = torsion_ideal(a.ring(), p).intersect(a.fixed());
        format!("{} is a nonzero {p}-torsion element of R^G", fmt_element(&t.generators()[0]))
    })
}

fn d_values(a: &Analysis) -> Finding {
    let mut status = Status::Holds;
    let mut notes = Vec::new();
    for b in &a.bad_primes().primes {
        match b.d {
            DValue::Found(d) => notes.push(format!("d({}) = {d}", b.p)),
            DValue::NeverNilpotent => {
                return (
                    Status::Fails,
                    Some(format!("t_G({})(R^N({})) is not nilpotent", b.p, b.p)),
                )
            }
            DValue::Undefined => {
                return (Status::Fails, Some(format!("N({}) does not exist", b.p)));
            }
            DValue::Capped => {
                status = Status::Capped;
                notes.push(format!("d({}) above the cap", b.p));
            }
        }
    }
    (status, Some(notes.join(", ")).filter(|s| !s.is_empty()))
}

fn proper_group(a: &Analysis) -> Finding {
    let statuses: Vec<(Side, &ProperStatus)> = SIDES.iter().map(|&s| (s, a.proper_status(s))).collect();
    for (side, st) in &statuses {
        if let ProperStatus::Proper(i) = st {
            let b = &a.splittings().splittings[*i].complement;
            return (
                Status::Holds,
                Some(format!("{} proper splitting with B of {}", side_name(*side), fmt_subgroup(b))),
            );
        }
    }
    if statuses.iter().all(|(_, s)| **s == ProperStatus::NoneProper) {
        let k = a.splittings().splittings.len();
        let why = if k == 0 {
            "no splitting R = R^G + B exists".to_string()
        } else {
            format!("each of the {k} splittings has a violating invariant ideal on both sides")
        };
        return (Status::Fails, Some(why));
    }
    (Status::Capped, None)
}

fn splitting_exists(a: &Analysis) -> Finding {
    let fam = a.splittings();
    match (fam.splittings.len(), fam.exhaustive) {
        (0, true) => (Status::Fails, Some("no R^G-bimodule complement of R^G exists".into())),
        (0, false) => (Status::Capped, None),
        (k, _) => (Status::Holds, Some(format!("{k} splitting(s) listed"))),
    }
}

/// Why condition 2 cannot hold on a finite semiprime ring with bad primes.
fn semiprime_torsion_note(a: &Analysis) -> Option<String> {
    if a.prime_radical().is_zero() && !a.bad_primes().primes.is_empty() && !a.fixed_torsion_free(a.n()) {
        Some(
            "a finite semiprime ring is unital; for a bad prime p the identity of its p-primary \
             component is G-fixed of p-power order, so R^G always has |G|-torsion here"
                .into(),
        )
    } else {
        None
    }
}

/// Conditions 1 and 2 of the bad-prime block, as used by several statements.
fn push_bad_prime_block(ev: &mut Evaluation, a: &Analysis, n: u64, branch: Option<usize>, first: usize) {
    ev.hyp(first, branch, "B(R,G) is nonempty", bad_nonempty(a));
    ev.hyp(first + 1, branch, "G has a normal p-complement N(p) for every p in B", normal_complements(a));
    ev.hyp(first + 2, branch, "R^G is |G|-torsion free", fixed_torsion_free(a, n));
    if let Some(note) = semiprime_torsion_note(a) {
        ev.notes.push(note);
    }
}

// ---- conclusion builders ----

fn equal(lhs: &Subgroup, rhs: &Subgroup, lname: &str, rname: &str) -> Finding {
    check(lhs == rhs, || {
        format!("{lname} has {}, {rname} has {}", fmt_subgroup(lhs), fmt_subgroup(rhs))
    })
}

fn contained(lhs: &Subgroup, rhs: &Subgroup, lname: &str, rname: &str) -> Finding {
    check(lhs.is_subgroup_of(rhs), || {
        format!("{lname} has {}, {rname} has {}", fmt_subgroup(lhs), fmt_subgroup(rhs))
    })
}

fn prime_radical_equality(a: &Analysis) -> Finding {
    let rhs = a.prime_radical().intersect(a.fixed());
    equal(a.fixed_prime_radical(), &rhs, "n(R^G)", "R^G ∩ n(R)")
}

fn jacobson_equality(a: &Analysis) -> Finding {
    let rhs = a.jacobson_radical().intersect(a.fixed());
    equal(a.fixed_jacobson_radical(), &rhs, "rad(R^G)", "rad(R) ∩ R^G")
}

fn fixed_semiprime(a: &Analysis) -> Finding {
    let n = a.fixed_prime_radical();
    check(n.is_zero(), || format!("n(R^G) has {}", fmt_subgroup(n)))
}

fn fixed_semisimple(a: &Analysis) -> Finding {
    let j = a.fixed_jacobson_radical();
    check(j.is_zero(), || format!("rad(R^G) has {}", fmt_subgroup(j)))
}

/// Trace of every nonzero invariant one-sided ideal is nonzero (or non-nilpotent).
fn trace_nondegenerate(a: &Analysis, non_nilpotent: bool) -> Finding {
    let mut exhaustive = true;
    for side in SIDES {
        let ideals = a.invariant_ideals(side);
        exhaustive &= ideals.exhaustive;
        for i in ideals.members.iter().filter(|i| !i.is_zero()) {
            let t = a.ctx.trace_image(i);
            let bad = if non_nilpotent {
                nilpotency_index(a.ring(), &t).is_some()
            } else {
                t.is_zero()
            };
            if bad {
                let what = if non_nilpotent { "nilpotent" } else { "zero" };
                return (
                    Status::Fails,
                    Some(format!(
                        "{} invariant ideal of {} has {what} trace",
                        side_name(side),
                        fmt_subgroup(i)
                    )),
                );
            }
        }
    }
    (Status::exhaustive_or_capped(true, exhaustive), None)
}

fn udim_bounds(a: &Analysis, side: Side) -> Finding {
    let r = a.udim(side);
    let s = a.fixed_udim(side);
    let text = format!("udim(R^G) = {}, udim(R) = {}, |G| = {}", s.value, r.value, a.n());
    let ok = s.value <= r.value && r.value as u64 <= a.n() * s.value as u64;
    if !ok {
        return (Status::Fails, Some(text));
    }
    if r.maximality == Maximality::Capped || s.maximality == Maximality::Capped {
        return (Status::Capped, Some(text));
    }
    (Status::Holds, Some(text))
}

/// Left and right multiplication by `x` are injective.
fn is_regular(ring: &FiniteRing, x: &[u64]) -> bool {
    let basis = ring.basis_elements();
    let left: Vec<Element> = basis.iter().map(|b| ring.mul(x, b)).collect();
    let right: Vec<Element> = basis.iter().map(|b| ring.mul(b, x)).collect();
    ring.span(&left).is_full() && ring.span(&right).is_full()
}

fn regular_elements_of_fixed(a: &Analysis) -> Vec<Element> {
    let emb = a.ctx.embedding();
    regular_elements_quotient(a.ctx.fixed_ring())
        .regular
        .iter()
        .map(|x| emb.lift(x))
        .collect()
}

// ---- statements ----

pub(crate) fn bi_1_4(a: &Analysis) -> Evaluation {
    let mut ev = Evaluation::default();
    ev.hyp(0, None, "R is |G|-torsion free", ring_torsion_free(a, a.n()));
    let t = a.ctx.trace_image(&a.ring().full());
    let d = crate::invariants::power_search(a.ring(), &t, a.caps.d_cap);
    let d_finding = match d {
        DValue::Found(d) => (Status::Holds, Some(format!("least d = {d}"))),
        DValue::NeverNilpotent => (Status::Fails, Some("the powers of t(R) stabilise at a nonzero subgroup".into())),
        _ => (Status::Capped, Some(format!("no d <= {}", a.caps.d_cap))),
    };
    ev.hyp(0, None, "t(R)^d = 0 for some d >= 1", d_finding);
    match d {
        DValue::Found(d) => {
            let h = h_constant(a.n());
            let bound = power_bound(a, &a.ring().full(), &h, &BigUint::from(d), "R");
            ev.clause(format!("R^(h(G)^d) = 0 with h(G) = {h}, d = {d}"), bound);
        }
        _ => ev.clause("R^(h(G)^d) = 0", (Status::Capped, Some("d is undefined".into()))),
    }
    ev
}

fn ring_nilpotent(a: &Analysis) -> Finding {
    match a.nilpotency_index() {
        Some(k) if k <= a.caps.nilpotency => (Status::Holds, Some(format!("nilpotency index {k}"))),
        Some(k) => (Status::Capped, Some(format!("nilpotency index {k} exceeds the cap"))),
        None => (Status::Fails, Some("the powers of R stabilise at a nonzero subgroup".into())),
    }
}

pub(crate) fn mont_1_7(a: &Analysis) -> Evaluation {
    let mut ev = Evaluation::default();
    ev.hyp(0, None, "R^G = 0", check(a.fixed().is_zero(), || format!("R^G has {}", fmt_subgroup(a.fixed()))));
    ev.hyp(0, None, "G has a normal p-complement N(p) for every p in B", normal_complements(a));
    ev.clause("R is nilpotent", ring_nilpotent(a));
    ev
}

pub(crate) fn n1(a: &Analysis) -> Evaluation {
    let mut ev = Evaluation::default();
    ev.hyp(0, None, "B(R,G) is nonempty", bad_nonempty(a));
    ev.hyp(1, None, "G has a normal p-complement N(p) for every p in B", normal_complements(a));
    ev.hyp(2, None, "R^G is p-torsion free for every p in B", fixed_torsion_free_at_bad(a));
    ev.hyp(3, None, "t_G(p)(R^N(p))^d(p) = 0 for some d(p) and every p in B", d_values(a));

    let profile = a.bad_primes();
    let mut exps = Vec::new();
    for b in &profile.primes {
        if let (Some(np), Some(q), DValue::Found(d)) = (&b.normal_complement, b.quotient_order, &b.d) {
            let base = h_constant(np.len() as u64);
            let m = h_constant(q as u64).pow(*d as u32);
            exps.push((b, np, base, m, *d));
        }
    }
    if profile.primes.is_empty() || exps.len() < profile.primes.len() {
        let why = (Status::Capped, Some("the bound is undefined without N(p) and d(p) for all p in B".into()));
        ev.clause("R^l = 0", why.clone());
        ev.clause("R^N(p) is p-torsion free and (R^N(p))^m(p) = 0", why);
        return ev;
    }

    // R^l = 0 with l the largest of the per-prime bounds
    let clause = match a.nilpotency_index() {
        None => (Status::Fails, Some("the powers of R stabilise at a nonzero subgroup".into())),
        Some(k) if k > a.caps.nilpotency => (Status::Capped, Some(format!("nilpotency index {k} exceeds the cap"))),
        Some(k) => {
            let ok = exps.iter().any(|(_, _, base, m, _)| power_at_least(base, m, k as u64));
            if ok {
                (Status::HoldsDominated, Some(format!("R has nilpotency index {k}, below l")))
            } else {
                (Status::Fails, Some(format!("R has nilpotency index {k}, above l")))
            }
        }
    };
    ev.clause("R^l = 0 with l = max h(N(p))^(h(G(p))^d(p))", clause);

    let mut parts = Vec::new();
    for (b, np, _, _, d) in &exps {
        let rn = fixed_subgroup(a.ring(), a.ctx.group.members(np));
        let tf = check(crate::lattice::gcd(rn.order(), b.p) == 1, || {
            format!("|R^N({})| = {} is divisible by {}", b.p, rn.order(), b.p)
        });
        let q = h_constant(b.quotient_order.unwrap_or(1) as u64);
        let bound = power_bound(a, &rn, &q, &BigUint::from(*d), &format!("R^N({})", b.p));
        parts.push(tf);
        parts.push(bound);
    }
    let status = Status::all(parts.iter().map(|p| p.0));
    let witness = parts
        .iter()
        .find(|p| p.0 == status)
        .and_then(|p| p.1.clone());
    ev.clause("R^N(p) is p-torsion free and (R^N(p))^m(p) = 0 with m(p) = h(G(p))^d(p)", (status, witness));
    ev
}

pub(crate) fn c1_5(a: &Analysis) -> Evaluation {
    let mut ev = Evaluation::default();
    ev.hyp(0, None, "R is semiprime", semiprime(a));
    ev.hyp(0, None, "R is |G|-torsion free", ring_torsion_free(a, a.n()));
    ev.clause("R^G is semiprime", fixed_semiprime(a));
    ev.clause("t(I) != 0 for every nonzero G-invariant one-sided ideal I", trace_nondegenerate(a, false));
    ev
}

pub(crate) fn n2(a: &Analysis) -> Evaluation {
    let mut ev = Evaluation::default();
    ev.hyp(0, None, "R is semiprime", semiprime(a));
    push_bad_prime_block(&mut ev, a, a.n(), None, 0);
    ev.clause("R^G is semiprime", fixed_semiprime(a));
    ev.clause("t(I) is not nilpotent for every nonzero G-invariant one-sided ideal I", trace_nondegenerate(a, true));
    ev
}

fn goldie_clauses(ev: &mut Evaluation, a: &Analysis) {
    let rq = regular_elements_quotient(a.ctx.fixed_ring());
    ev.clause(
        "R^G is left and right Goldie",
        check(rq.goldie, || "R^G is not Goldie".into()),
    );
    let regular = regular_elements_of_fixed(a);
    let bad = regular.iter().find(|x| !is_regular(a.ring(), x));
    ev.clause(
        "every regular element of R^G is regular in R",
        check(bad.is_none(), || format!("{} is regular in R^G only", fmt_element(bad.unwrap()))),
    );
    // finite rings are their own quotient rings once regular elements are units
    let non_unit = regular.iter().find(|x| {
        let inv = a.ring().inverse(x);
        !matches!(inv, Some(ref y) if a.fixed().contains(y))
    });
    ev.clause(
        "Q(R) = C_{R^G}^-1 R and Q(R)^G = Q(R^G)",
        check(non_unit.is_none(), || {
            format!("{} is regular in R^G but not a unit of R^G", fmt_element(non_unit.unwrap()))
        }),
    );
    for side in SIDES {
        ev.clause(
            format!("udim(R^G) <= udim(R) <= |G| udim(R^G) ({})", side_name(side)),
            udim_bounds(a, side),
        );
    }
}

pub(crate) fn cor_a8(a: &Analysis) -> Evaluation {
    let mut ev = n2_hypotheses(a);
    goldie_clauses(&mut ev, a);
    ev
}

fn n2_hypotheses(a: &Analysis) -> Evaluation {
    let mut ev = n2(a);
    ev.clauses.clear();
    ev
}

pub(crate) fn th_1_9(a: &Analysis) -> Evaluation {
    let mut ev = Evaluation::default();
    ev.hyp(0, None, "R is |G|-torsion free", ring_torsion_free(a, a.n()));
    ev.clause("n(R^G) = R^G ∩ n(R)", prime_radical_equality(a));
    ev
}

fn induced_missing(ev: &mut Evaluation, what: &str) {
    ev.hyp(0, None, format!("the induced action on {what} is defined"), (Status::Capped, None));
}

pub(crate) fn th_4apr(a: &Analysis) -> Evaluation {
    let mut ev = Evaluation::default();
    let Some(q) = a.modulo_prime_radical() else {
        induced_missing(&mut ev, "R/n(R)");
        ev.clause("n(R^G) = R^G ∩ n(R)", prime_radical_equality(a));
        return ev;
    };
    let qa = &q.analysis;
    ev.hyp(0, Some(1), "B(R/n(R), G) is empty", bad_empty(qa));
    ev.hyp(0, Some(2), "B(R/n(R), G) is nonempty", bad_nonempty(qa));
    ev.hyp(1, Some(2), "the induced group has a normal p-complement for every bad p", normal_complements(qa));
    ev.hyp(2, Some(2), "(R/n(R))^G is |G|-torsion free", fixed_torsion_free(qa, a.n()));
    if let Some(note) = semiprime_torsion_note(qa) {
        ev.notes.push(note);
    }
    ev.clause("n(R^G) = R^G ∩ n(R)", prime_radical_equality(a));
    ev.clause("(R/n(R))^G is semiprime", fixed_semiprime(qa));
    ev.clause(
        "the image of R^G in R/n(R) is semiprime",
        check(qa.subring_semiprime(&q.image_of_fixed), || {
            format!("the image of R^G has {}", fmt_subgroup(&q.image_of_fixed))
        }),
    );
    let qr = qa.ring();
    let scaled: Vec<Element> = qa
        .fixed()
        .generators()
        .iter()
        .map(|x| qr.scale(a.n() as i128, x))
        .collect();
    let scaled = qr.span(&scaled);
    let both = Status::all([
        contained(&scaled, &q.image_of_fixed, "|G|(R/n(R))^G", "image of R^G").0,
        contained(&q.image_of_fixed, qa.fixed(), "image of R^G", "(R/n(R))^G").0,
    ]);
    let witness = (both == Status::Fails).then(|| {
        format!(
            "|G|(R/n(R))^G has {}, image has {}, (R/n(R))^G has {}",
            fmt_subgroup(&scaled),
            fmt_subgroup(&q.image_of_fixed),
            fmt_subgroup(qa.fixed())
        )
    });
    ev.clause("|G|(R/n(R))^G ⊆ image of R^G ⊆ (R/n(R))^G", (both, witness));
    ev
}

pub(crate) fn rad_1_4(a: &Analysis) -> Evaluation {
    let mut ev = Evaluation::default();
    ev.hyp(0, None, "|G|^-1 in R", order_invertible(a));
    ev.clause("rad(R^G) = rad(R) ∩ R^G", jacobson_equality(a));
    if !a.order_invertible() {
        ev.notes.push(format!(
            "rad(R^G) has {}, rad(R) ∩ R^G has {}",
            fmt_subgroup(a.fixed_jacobson_radical()),
            fmt_subgroup(&a.jacobson_radical().intersect(a.fixed()))
        ));
    }
    ev
}

/// Torsion-free branch (1) or bad-prime branch (2) shared by the semisimplicity statements.
fn push_alternatives(ev: &mut Evaluation, a: &Analysis, n: u64) {
    ev.hyp(1, Some(1), "R is |G|-torsion free", ring_torsion_free(a, n));
    ev.hyp(2, Some(2), "B(R,G) is nonempty", bad_nonempty(a));
    ev.hyp(2, Some(2), "G has a normal p-complement N(p) for every p in B", normal_complements(a));
    ev.hyp(2, Some(2), "R^G is |G|-torsion free", fixed_torsion_free(a, n));
    if let Some(note) = semiprime_torsion_note(a) {
        ev.notes.push(note);
    }
}

pub(crate) fn b5apr(a: &Analysis) -> Evaluation {
    let mut ev = Evaluation::default();
    let Some(q) = a.modulo_jacobson_radical() else {
        induced_missing(&mut ev, "R/rad(R)");
        ev.clause("rad(R^G) = rad(R) ∩ R^G", jacobson_equality(a));
        return ev;
    };
    let qa = &q.analysis;
    ev.hyp(
        0,
        None,
        "the image of R^G in R/rad(R) is (R/rad(R))^G",
        equal(&q.image_of_fixed, qa.fixed(), "image of R^G", "(R/rad(R))^G"),
    );
    ev.hyp(0, None, "the induced group is a left or right proper splitting group", proper_group(qa));
    push_alternatives(&mut ev, qa, qa.n());
    ev.clause("rad(R^G) = rad(R) ∩ R^G", jacobson_equality(a));
    ev
}

pub(crate) fn levitzki(a: &Analysis) -> Evaluation {
    let mut ev = Evaluation::default();
    ev.hyp(0, None, "|G|^-1 in R", order_invertible(a));
    ev.hyp(0, None, "R is semisimple", semisimple(a));
    ev.clause("R^G is semisimple", fixed_semisimple(a));
    ev
}

pub(crate) fn th_8apr(a: &Analysis) -> Evaluation {
    let mut ev = Evaluation::default();
    ev.hyp(0, None, "R is semisimple", semisimple(a));
    ev.hyp(0, None, "G is a left or right proper splitting group", proper_group(a));
    push_alternatives(&mut ev, a, a.n());
    ev.clause("R^G is semisimple", fixed_semisimple(a));
    ev
}

pub(crate) fn cor_b8(a: &Analysis) -> Evaluation {
    let mut ev = n2_hypotheses(a);
    let r = a.jacobson_radical().is_zero();
    let s = a.fixed_jacobson_radical().is_zero();
    ev.clause(
        "R is semisimple iff R^G is semisimple",
        check(r == s, || format!("R semisimple: {r}, R^G semisimple: {s}")),
    );
    for side in SIDES {
        ev.clause(
            format!("udim(R^G) <= udim(R) <= |G| udim(R^G) ({})", side_name(side)),
            udim_bounds(a, side),
        );
    }
    ev
}

pub(crate) fn a5apr(a: &Analysis) -> Evaluation {
    let mut ev = Evaluation::default();
    ev.hyp(0, None, "rad(R) = 0", semisimple(a));
    ev.hyp(0, None, "G is a left or right proper splitting group", proper_group(a));
    push_alternatives(&mut ev, a, a.n());
    ev.clause("rad(R^G) = 0", fixed_semisimple(a));
    ev
}

pub(crate) fn lem_a6(a: &Analysis) -> Evaluation {
    let mut ev = Evaluation::default();
    ev.hyp(0, None, "R = R^G + B as R^G-bimodules", splitting_exists(a));
    let family = a.splittings();
    for side in SIDES {
        let ideals = a.invariant_ideals(side);
        let exhaustive = ideals.exhaustive && family.exhaustive;
        let mut forward = None;
        let mut backward = None;
        let mut reverse = None;
        for (k, s) in family.splittings.iter().enumerate() {
            let mut proper = true;
            let mut equal_all = true;
            for i in &ideals.members {
                let e_i = s.project_subgroup(a.ring(), i);
                let r = a.ctx.restrict(i);
                proper &= e_i.is_subgroup_of(&r);
                equal_all &= e_i == r;
                if reverse.is_none() && !r.is_subgroup_of(&e_i) {
                    reverse = Some(format!("splitting {k}, ideal of {}", fmt_subgroup(i)));
                }
            }
            if proper && !equal_all && forward.is_none() {
                forward = Some(format!("splitting {k} is proper without equality"));
            }
            if equal_all && !proper && backward.is_none() {
                backward = Some(format!("splitting {k} has equality without being proper"));
            }
        }
        let sn = side_name(side);
        let f = |w: Option<String>| match w {
            Some(w) => (Status::Fails, Some(w)),
            None => (Status::exhaustive_or_capped(true, exhaustive), None),
        };
        ev.clause(format!("{sn} proper implies e(I) = I ∩ R^G for all invariant I"), f(forward));
        ev.clause(format!("{sn} e(I) = I ∩ R^G for all invariant I implies proper"), f(backward));
        ev.clause(format!("{sn} I ∩ R^G ⊆ e(I) for every splitting and invariant I"), f(reverse));
    }
    ev.notes
        .push("the two directions of the equivalence are recorded as separate clauses".into());
    ev
}

/// `l_{R^G}(R^G / J)` for a sided ideal `J` of `R^G`.
fn fixed_length(a: &Analysis, j: &Subgroup, side: Side) -> Option<usize> {
    module_length(a.ring(), a.fixed(), j, &a.ctx.fixed_actors(side)).ok()
}

/// `l_R(R / I)` for a sided ideal `I` of `R`.
fn ring_length(a: &Analysis, i: &Subgroup, side: Side) -> Option<usize> {
    module_length(a.ring(), &a.ring().full(), i, &a.ring().actors(side)).ok()
}

pub(crate) fn lem_b6(a: &Analysis) -> Evaluation {
    let mut ev = Evaluation::default();
    ev.hyp(0, None, "R = R^G + B as R^G-bimodules", splitting_exists(a));
    for side in SIDES {
        let sn = side_name(side);
        let ideals = a.fixed_ring_ideals(side);
        let mut injective = None;
        let mut lengths = None;
        let mut capped = !ideals.exhaustive;
        for j in ideals.members.iter().take(a.caps.pairs) {
            let je = a.ctx.extend(j, side);
            if injective.is_none() && a.ctx.restrict(&je) != *j {
                injective = Some(format!("J of {} has J^er of {}", fmt_subgroup(j), fmt_subgroup(&a.ctx.restrict(&je))));
            }
            match (fixed_length(a, j, side), ring_length(a, &je, side)) {
                (Some(l1), Some(l2)) => {
                    if l1 > l2 && lengths.is_none() {
                        lengths = Some(format!("J of {}: l(R^G/J) = {l1} > l(R/J^e) = {l2}", fmt_subgroup(j)));
                    }
                }
                _ => capped = true,
            }
        }
        capped |= ideals.members.len() > a.caps.pairs;
        let f = |w: Option<String>| match w {
            Some(w) => (Status::Fails, Some(w)),
            None => (Status::exhaustive_or_capped(true, !capped), None),
        };
        ev.clause(format!("J^er = J for every {sn} ideal J of R^G"), f(injective));
        ev.clause(format!("l(R^G/J) <= l(R/J^e) for every {sn} ideal J of R^G"), f(lengths));
    }
    ev
}

/// The four clauses of the proper-splitting lemma for one splitting and side.
fn c6_clauses(ev: &mut Evaluation, a: &Analysis, split: &SplittingData, side: Side, label: &str) {
    let ideals = a.invariant_ideals(side);
    let fixed_ideals = a.fixed_ring_ideals(side);
    let mut capped = !(ideals.exhaustive && fixed_ideals.exhaustive);
    let sn = side_name(side);

    let mut decomposition = None;
    let mut correspondence = None;
    let mut lengths = None;
    let mut pairs = 0usize;
    let mut ring_lengths: HashMap<&Subgroup, Option<usize>> = HashMap::new();
    for i in &ideals.members {
        let w = a.ctx.restrict(i);
        let b_part = i.intersect(&split.complement);
        if decomposition.is_none() && w.join(&b_part) != *i {
            decomposition = Some(format!("I of {} is not (I ∩ R^G) + (I ∩ B)", fmt_subgroup(i)));
        }
        for j in fixed_ideals.members.iter().filter(|j| w.is_subgroup_of(j)) {
            pairs += 1;
            if pairs > a.caps.pairs {
                capped = true;
                break;
            }
            let back = a.ctx.restrict(&a.ctx.extend(j, side).join(i));
            if correspondence.is_none() && back != *j {
                correspondence = Some(format!(
                    "I of {}, J of {}: (J^e + I) ∩ R^G has {}",
                    fmt_subgroup(i),
                    fmt_subgroup(j),
                    fmt_subgroup(&back)
                ));
            }
        }
        let l_fixed = fixed_length(a, &w, side);
        let l_ring = *ring_lengths.entry(i).or_insert_with(|| ring_length(a, i, side));
        match (l_fixed, l_ring) {
            (Some(l1), Some(l2)) => {
                if l1 > l2 && lengths.is_none() {
                    lengths = Some(format!("I of {}: {l1} > {l2}", fmt_subgroup(i)));
                }
            }
            _ => capped = true,
        }
    }
    let f = |w: Option<String>| match w {
        Some(w) => (Status::Fails, Some(w)),
        None => (Status::exhaustive_or_capped(true, !capped), None),
    };
    ev.clause(format!("{label}: I = (I ∩ R^G) + (I ∩ B) for every {sn} invariant I"), f(decomposition));
    ev.clause(format!("{label}: (J^e + I) ∩ R^G = J for {sn} I and J ⊇ I ∩ R^G"), f(correspondence));
    ev.clause(format!("{label}: l(R^G/(R^G ∩ I)) <= l(R/I) for every {sn} invariant I"), f(lengths));
    ev.clause(
        format!("{label}: R^G/(R^G ∩ I) is Artinian and Noetherian when R/I is"),
        (Status::Holds, Some("all modules here are finite".into())),
    );
}

fn c6_reading_note(ev: &mut Evaluation) {
    ev.notes.push(
        "clause 1 is read as the decomposition I = (I ∩ R^G) + (I ∩ B) and clause 3 as a bound by l(R/I)".into(),
    );
}

pub(crate) fn lem_c6(a: &Analysis) -> Evaluation {
    let mut ev = Evaluation::default();
    ev.hyp(0, None, "R = R^G + B is a left or right proper splitting", proper_group(a));
    for side in SIDES {
        if let ProperStatus::Proper(k) = a.proper_status(side) {
            let split = &a.splittings().splittings[*k];
            c6_clauses(&mut ev, a, split, side, &format!("splitting {k}"));
        } else {
            ev.notes.push(format!("no certified {} proper splitting", side_name(side)));
        }
    }
    if ev.clauses.is_empty() {
        ev.clause("the lemma applies to some proper splitting", (Status::Capped, Some("no proper splitting".into())));
    }
    c6_reading_note(&mut ev);
    ev
}

pub(crate) fn cor_c8(a: &Analysis) -> Evaluation {
    let mut ev = Evaluation::default();
    ev.hyp(0, None, "|G|^-1 in R", order_invertible(a));
    match averaging_idempotent(&a.ctx) {
        Ok(e) => {
            for side in SIDES {
                let ideals = a.invariant_ideals(side);
                let ps = is_proper_splitting(&a.ctx, &e, ideals);
                let finding = match ps.witness {
                    Some(w) => (Status::Fails, Some(format!("ideal of {} violates e(I) ⊆ I ∩ R^G", fmt_subgroup(&w)))),
                    None => (Status::exhaustive_or_capped(true, ps.exhaustive), None),
                };
                ev.clause(format!("the averaging splitting is {} proper", side_name(side)), finding);
            }
            for side in SIDES {
                c6_clauses(&mut ev, a, &e, side, "averaging splitting");
            }
            c6_reading_note(&mut ev);
        }
        Err(err) => ev.clause("the averaging splitting exists", (Status::Fails, Some(err.to_string()))),
    }
    ev
}

/// Facts that hold for every finite group action, independent of any statement.
pub fn background(a: &Analysis) -> Vec<Clause> {
    let mut ev = Evaluation::default();
    ev.clause(
        "rad(R) ∩ R^G ⊆ rad(R^G)",
        contained(&a.jacobson_radical().intersect(a.fixed()), a.fixed_jacobson_radical(), "rad(R) ∩ R^G", "rad(R^G)"),
    );
    ev.clause(
        "n(R) ∩ R^G ⊆ n(R^G)",
        contained(&a.prime_radical().intersect(a.fixed()), a.fixed_prime_radical(), "n(R) ∩ R^G", "n(R^G)"),
    );
    ev.clause(
        "n(R) = rad(R) for finite R",
        equal(a.prime_radical(), a.jacobson_radical(), "n(R)", "rad(R)"),
    );
    let t = a.ctx.trace_image(&a.ring().full());
    ev.clause("t(R) ⊆ R^G", contained(&t, a.fixed(), "t(R)", "R^G"));
    ev.clauses
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symbolic_powers() {
        let b = |x: u64| BigUint::from(x);
        assert!(power_at_least(&b(2), &b(3), 8));
        assert!(!power_at_least(&b(2), &b(3), 9));
        assert!(power_at_least(&b(1), &b(100), 1));
        assert!(!power_at_least(&b(1), &b(100), 2));
        assert!(power_at_least(&b(7), &b(0), 1));
        // an exponent far too large to expand
        let huge = BigUint::from(10u32).pow(40);
        assert!(power_at_least(&b(2), &huge, u64::MAX));
    }
}
