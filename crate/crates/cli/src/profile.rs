use std::fmt::Write as _;

use ringinv::analysis::{Analysis, ProperStatus};
use ringinv::groups::prime_factors;
use ringinv::invariants::{splitting_search, torsion_ideal, DValue, SplittingOutcome};
use ringinv::radicals::Maximality;
use ringinv::theorems::{fmt_element, fmt_subgroup};
use ringinv::{Side, Subgroup};

fn listing(s: &Subgroup) -> String {
    if s.order() <= 16 {
        let els: Vec<String> = s.elements().iter().map(|x| fmt_element(x)).collect();
        format!("{{{}}}", els.join(", "))
    } else {
        fmt_subgroup(s)
    }
}

fn proper(status: &ProperStatus) -> String {
    match status {
        ProperStatus::Proper(i) => format!("yes (splitting {i})"),
        ProperStatus::NoneProper => "no".into(),
        ProperStatus::Capped => "undecided within caps".into(),
    }
}

/// Human-readable invariants of one instance.
pub fn render(a: &Analysis) -> String {
    let ring = a.ring();
    let mut s = String::new();
    let mut line = |k: &str, v: String| writeln!(s, "  {k:22} {v}").unwrap();
    line("order", ring.order().to_string());
    line("additive orders", format!("{:?}", ring.orders()));
    line(
        "unital",
        ring.identity().map_or("no".into(), |u| format!("yes, 1 = {}", fmt_element(u))),
    );
    line("|G|", a.n().to_string());
    line("n(R)", listing(a.prime_radical()));
    line("rad(R)", listing(a.jacobson_radical()));
    line("R^G", listing(a.fixed()));
    line("trace image t(R)", listing(&a.ctx.trace_image(&ring.full())));
    for p in prime_factors(a.n()) {
        line(&format!("tor_{p}(R)"), listing(&torsion_ideal(ring, p)));
    }
    let bad = a.bad_primes();
    line(
        "B(R,G)",
        format!("{{{}}}", bad.prime_set().iter().map(u64::to_string).collect::<Vec<_>>().join(",")),
    );
    for b in &bad.primes {
        let np = match &b.normal_complement {
            Some(n) => format!("|N({})| = {}, |G({})| = {}", b.p, n.len(), b.p, b.quotient_order.unwrap_or(0)),
            None => format!("no normal {}-complement", b.p),
        };
        let d = match b.d {
            DValue::Found(d) => format!("d({}) = {d}", b.p),
            DValue::NeverNilpotent => "relative trace not nilpotent".into(),
            DValue::Capped => format!("d above cap {}", bad.d_cap),
            DValue::Undefined => "d undefined".into(),
        };
        line(&format!("prime {}", b.p), format!("{np}; {d}"));
    }
    let split = match splitting_search(&a.ctx) {
        SplittingOutcome::Found { data, invariant, .. } => format!(
            "B of {}{}",
            fmt_subgroup(&data.complement),
            if invariant { " (G-invariant)" } else { "" }
        ),
        SplittingOutcome::NoneFound { exhaustive: true } => "none exists".into(),
        SplittingOutcome::NoneFound { exhaustive: false } => "none found within caps".into(),
    };
    line("splitting", split);
    line("e-idempotent", if a.order_invertible() { "exists".into() } else { "|G| not invertible".into() });
    line("left proper", proper(a.proper_status(Side::Left)));
    line("right proper", proper(a.proper_status(Side::Right)));
    for side in [Side::Left, Side::Right] {
        let name = if side == Side::Left { "left" } else { "right" };
        let (r, f) = (a.udim(side), a.fixed_udim(side));
        let mark = |m: Maximality| if m == Maximality::Capped { " (capped)" } else { "" };
        line(
            &format!("udim {name}"),
            format!("R: {}{}, R^G: {}{}", r.value, mark(r.maximality), f.value, mark(f.maximality)),
        );
    }
    format!("{} | {}\n{s}", a.ring_name, a.group_name)
}
