//! Radicals, nilpotency, uniform dimension, annihilators and lengths.

use std::collections::{BTreeMap, HashSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::Subgroup;
use crate::ring::{Actors, Element, FiniteRing, Ideal, Side};

/// Modules and ideal lattices above this order are not scanned exhaustively.
pub const EXHAUSTIVE_CAP: u64 = 4096;

/// Least `k` with `Sᵏ = 0`, or `None` if the powers stabilise at a nonzero subgroup.
pub fn nilpotency_index(ring: &FiniteRing, s: &Subgroup) -> Option<usize> {
    let mut power = s.clone();
    let mut k = 1;
    loop {
        if power.is_zero() {
            return Some(k);
        }
        let next = ring.product(&power, s);
        if next == power {
            return None;
        }
        power = next;
        k += 1;
    }
}

fn element_is_nilpotent(ring: &FiniteRing, x: &[u64]) -> bool {
    let mut p = x.to_vec();
    // the powers' spans strictly decrease, so the index is at most log₂|R| + 1
    for _ in 0..=64 {
        if ring.is_zero(&p) {
            return true;
        }
        p = ring.mul(&p, x);
    }
    false
}

/// Largest nilpotent ideal: the sum of all ideals `(x)` that are nilpotent.
pub fn prime_radical(ring: &FiniteRing) -> Ideal {
    let actors = ring.actors(Side::TwoSided);
    let mut n = ring.trivial();
    for x in ring.elements() {
        if n.contains(&x) || !element_is_nilpotent(ring, &x) {
            continue;
        }
        let candidate = ring.close(&n, &[x], &actors);
        if nilpotency_index(ring, &candidate).is_some() {
            n = candidate;
        }
    }
    Ideal {
        side: Side::TwoSided,
        subgroup: n,
    }
}

/// `y` is left quasi-regular when `z + y + zy = 0` has a solution, that is
/// when `−y` lies in the image of the additive map `z ↦ z + zy`.
pub fn is_left_quasi_regular(ring: &FiniteRing, y: &[u64]) -> bool {
    let images: Vec<Element> = ring
        .basis_elements()
        .iter()
        .map(|e| ring.add(e, &ring.mul(e, y)))
        .collect();
    ring.span(&images).contains(&ring.neg(y))
}

/// Elements whose generated left ideal `ℤx + Rx` is left quasi-regular.
///
/// Computed elementwise without using nilpotency; the resulting set is checked
/// to be a two-sided ideal before it is returned.
pub fn jacobson_radical(ring: &FiniteRing) -> Ideal {
    let n = ring.order() as usize;
    let qr: Vec<bool> = ring.elements().map(|y| is_left_quasi_regular(ring, &y)).collect();
    let left = ring.actors(Side::Left);
    let mut members = Vec::new();
    for idx in 0..n {
        if !qr[idx] {
            continue;
        }
        let x = ring.element_at(idx);
        let l = ring.close(&ring.trivial(), std::slice::from_ref(&x), &left);
        if l.elements().iter().all(|y| qr[ring.index_of(y)]) {
            members.push(x);
        }
    }
    let subgroup = ring.span(&members);
    assert_eq!(
        subgroup.order() as usize,
        members.len(),
        "quasi-regular radical is not a subgroup"
    );
    assert!(ring.is_ideal(&subgroup, Side::TwoSided));
    Ideal {
        side: Side::TwoSided,
        subgroup,
    }
}

pub fn is_semiprime(ring: &FiniteRing) -> bool {
    prime_radical(ring).subgroup.is_zero()
}

pub fn is_semisimple_artinian(ring: &FiniteRing) -> bool {
    jacobson_radical(ring).subgroup.is_zero()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RadicalProfile {
    pub prime_radical: Ideal,
    pub jacobson_radical: Ideal,
    pub nilpotency_index_of_rad: usize,
    pub semiprime: bool,
    pub semisimple_artinian: bool,
}

impl RadicalProfile {
    pub fn radicals_agree(&self) -> bool {
        self.prime_radical == self.jacobson_radical
    }
}

pub fn radical_profile(ring: &FiniteRing) -> RadicalProfile {
    let prime = prime_radical(ring);
    let jac = jacobson_radical(ring);
    let index = nilpotency_index(ring, &jac.subgroup).unwrap_or(0);
    RadicalProfile {
        semiprime: prime.subgroup.is_zero(),
        semisimple_artinian: jac.subgroup.is_zero(),
        prime_radical: prime,
        jacobson_radical: jac,
        nilpotency_index_of_rad: index,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Maximality {
    Exhaustive,
    Capped,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UdimCertificate {
    pub value: usize,
    pub witness: Vec<Subgroup>,
    pub maximality: Maximality,
}

impl UdimCertificate {
    /// Witnesses are nonzero and their sum is direct.
    pub fn verify(&self, ring: &FiniteRing) -> bool {
        let mut sum = ring.trivial();
        for w in &self.witness {
            if w.is_zero() || !sum.intersect(w).is_zero() {
                return false;
            }
            sum = sum.join(w);
        }
        self.witness.len() == self.value
    }
}

/// Cyclic submodules `ℤx + (actors)x` of `upper/lower`, one per coset.
fn cyclic_submodules(
    ring: &FiniteRing,
    upper: &Subgroup,
    lower: &Subgroup,
    actors: &Actors,
    limit: Option<usize>,
) -> Vec<Subgroup> {
    let mut seen = HashSet::new();
    let mut out = HashSet::new();
    for x in upper.elements() {
        if let Some(l) = limit {
            if seen.len() >= l {
                break;
            }
        }
        let rep = lower.coset_rep(&x);
        if lower.contains(&x) || !seen.insert(rep) {
            continue;
        }
        out.insert(ring.close(lower, &[x], actors));
    }
    let mut out: Vec<Subgroup> = out.into_iter().collect();
    out.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.cmp(b)));
    out
}

/// Minimal members of a family sorted by order.
fn minimal_members(family: &[Subgroup]) -> Vec<Subgroup> {
    let mut minimal: Vec<Subgroup> = Vec::new();
    for s in family {
        if !minimal.iter().any(|m| m.is_subgroup_of(s)) {
            minimal.push(s.clone());
        }
    }
    minimal
}

/// Uniform dimension of `R` as a sided module over itself.
///
/// For finite rings this is the length of the socle: the minimal sided ideals
/// are collected and a maximal direct family is chosen greedily, which is
/// optimal because a simple module meeting a submodule lies inside it.
pub fn uniform_dimension(ring: &FiniteRing, side: Side) -> UdimCertificate {
    uniform_dimension_capped(ring, side, EXHAUSTIVE_CAP)
}

/// As [`uniform_dimension`]; rings above `cap` only scan `cap` cyclic ideals
/// and report a lower bound.
pub fn uniform_dimension_capped(ring: &FiniteRing, side: Side, cap: u64) -> UdimCertificate {
    let capped = ring.order() > cap;
    let limit = capped.then_some(cap as usize);
    let family = cyclic_submodules(ring, &ring.full(), &ring.trivial(), &ring.actors(side), limit);
    let mut witness = Vec::new();
    let mut sum = ring.trivial();
    for m in minimal_members(&family) {
        if sum.intersect(&m).is_zero() {
            sum = sum.join(&m);
            witness.push(m);
        }
    }
    UdimCertificate {
        value: witness.len(),
        witness,
        maximality: if capped { Maximality::Capped } else { Maximality::Exhaustive },
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum QuotientStatus {
    /// Every regular element is a unit, so the classical quotient ring is `R`.
    EqualsRing,
    /// Non-unital ring: the quotient ring is not defined.
    Degenerate,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularElements {
    pub regular: Vec<Element>,
    pub status: QuotientStatus,
    /// Finite rings have finite length, hence ACC on annihilators and finite udim.
    pub goldie: bool,
}

/// Left and right non-zero-divisors, via injectivity of `y ↦ xy` and `y ↦ yx`.
pub fn regular_elements_quotient(ring: &FiniteRing) -> RegularElements {
    let basis = ring.basis_elements();
    let regular: Vec<Element> = ring
        .elements()
        .filter(|x| {
            let left: Vec<Element> = basis.iter().map(|e| ring.mul(x, e)).collect();
            let right: Vec<Element> = basis.iter().map(|e| ring.mul(e, x)).collect();
            ring.span(&left).is_full() && ring.span(&right).is_full()
        })
        .collect();
    let status = if ring.is_unital() {
        let units: HashSet<Element> = ring.units().into_iter().collect();
        assert!(
            regular.iter().all(|x| units.contains(x)),
            "regular non-unit in a finite unital ring"
        );
        QuotientStatus::EqualsRing
    } else {
        QuotientStatus::Degenerate
    };
    RegularElements {
        regular,
        status,
        goldie: true,
    }
}

/// `{r : rX = 0}`.
pub fn left_annihilator(ring: &FiniteRing, xs: &[Element]) -> Ideal {
    let mut s = ring.trivial();
    for r in ring.elements() {
        if !s.contains(&r) && xs.iter().all(|x| ring.is_zero(&ring.mul(&r, x))) {
            s.insert(&r);
        }
    }
    debug_assert!(ring.is_ideal(&s, Side::Left));
    Ideal {
        side: Side::Left,
        subgroup: s,
    }
}

/// `{r : Xr = 0}`.
pub fn right_annihilator(ring: &FiniteRing, xs: &[Element]) -> Ideal {
    let mut s = ring.trivial();
    for r in ring.elements() {
        if !s.contains(&r) && xs.iter().all(|x| ring.is_zero(&ring.mul(x, &r))) {
            s.insert(&r);
        }
    }
    Ideal {
        side: Side::Right,
        subgroup: s,
    }
}

/// Composition series of the module `upper/lower`, whose scalars are the
/// `actors`, built by repeatedly adding the least minimal submodule.
pub fn composition_series(
    ring: &FiniteRing,
    upper: &Subgroup,
    lower: &Subgroup,
    actors: &Actors,
) -> Result<Vec<Subgroup>> {
    if upper.order() > EXHAUSTIVE_CAP {
        return Err(Error::SizeCap {
            order: upper.order(),
            cap: EXHAUSTIVE_CAP,
        });
    }
    let mut series = vec![lower.clone()];
    let mut current = lower.clone();
    while current != *upper {
        let family = cyclic_submodules(ring, upper, &current, actors, None);
        current = family[0].clone();
        series.push(current.clone());
    }
    Ok(series)
}

pub fn module_length(
    ring: &FiniteRing,
    upper: &Subgroup,
    lower: &Subgroup,
    actors: &Actors,
) -> Result<usize> {
    Ok(composition_series(ring, upper, lower, actors)?.len() - 1)
}

/// Length of `R/I` as a sided `R`-module.
pub fn quotient_length(ring: &FiniteRing, ideal: &Subgroup, side: Side) -> Result<usize> {
    module_length(ring, &ring.full(), ideal, &ring.actors(side))
}

/// Count of elements per nilpotency index, used in reports.
pub fn nilpotent_census(ring: &FiniteRing) -> BTreeMap<usize, usize> {
    let mut out = BTreeMap::new();
    for x in ring.elements() {
        let s = ring.span(std::slice::from_ref(&x));
        let mut p = x.clone();
        let mut k = 1;
        while !ring.is_zero(&p) && k <= s.order() as usize + 1 {
            p = ring.mul(&p, &x);
            k += 1;
        }
        if ring.is_zero(&p) {
            *out.entry(k).or_insert(0) += 1;
        }
    }
    out
}
