//! Brute-force oracles and shared fixtures. The oracles work on explicit
//! element sets and share no code with the library's radical algorithms.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet};

use ringinv::catalog::{named_instances, random_instances, Instance, RandomSpec};
use ringinv::ring::{Element, FiniteRing};

pub const RANDOM_SEED: u64 = 2024;

pub fn random_catalog(count: usize, max_order: u64) -> Vec<Instance> {
    random_instances(&RandomSpec {
        count,
        max_order,
        seed: RANDOM_SEED,
        ..Default::default()
    })
    .0
}

pub fn full_catalog(random: usize, max_order: u64) -> Vec<Instance> {
    let mut v = named_instances();
    v.extend(random_catalog(random, max_order));
    v
}

pub fn find<'a>(list: &'a [Instance], ring: &str, group_prefix: &str) -> &'a Instance {
    list.iter()
        .find(|i| i.ring_name == ring && i.group_name.starts_with(group_prefix))
        .unwrap_or_else(|| panic!("no instance {ring} | {group_prefix}"))
}

/// `y` is left quasi-regular iff `z + y − zy = 0` for some `z`.
fn quasi_regular(ring: &FiniteRing, all: &[Element], y: &[u64]) -> bool {
    all.iter()
        .any(|z| ring.is_zero(&ring.sub(&ring.add(z, y), &ring.mul(z, y))))
}

/// `x ∈ rad(R)` iff every element of `ℤx + Rx` is left quasi-regular.
pub fn brute_jacobson(ring: &FiniteRing) -> BTreeSet<Element> {
    let all: Vec<Element> = ring.elements().collect();
    let mut out = BTreeSet::new();
    for x in &all {
        let mut left: HashSet<Element> = HashSet::new();
        let mut multiple = ring.zero();
        loop {
            for r in &all {
                left.insert(ring.add(&multiple, &ring.mul(r, x)));
            }
            multiple = ring.add(&multiple, x);
            if ring.is_zero(&multiple) {
                break;
            }
        }
        if left.iter().all(|y| quasi_regular(ring, &all, y)) {
            out.insert(x.clone());
        }
    }
    out
}

fn nilpotent_element(ring: &FiniteRing, x: &[u64]) -> bool {
    let mut p = x.to_vec();
    for _ in 0..=ring.order() {
        if ring.is_zero(&p) {
            return true;
        }
        p = ring.mul(&p, x);
    }
    false
}

/// Two-sided ideal generated by `x`, as an element set.
fn ideal_elements(ring: &FiniteRing, all: &[Element], x: &[u64]) -> HashSet<Element> {
    let mut set: HashSet<Element> = HashSet::from([ring.zero()]);
    let mut frontier = vec![x.to_vec()];
    while let Some(y) = frontier.pop() {
        if set.contains(&y) {
            continue;
        }
        set.insert(y.clone());
        let current: Vec<Element> = set.iter().cloned().collect();
        let mut next = Vec::new();
        for s in &current {
            next.push(ring.add(s, &y));
        }
        for r in all {
            next.push(ring.mul(r, &y));
            next.push(ring.mul(&y, r));
        }
        for n in next {
            if !set.contains(&n) {
                frontier.push(n);
            }
        }
    }
    set
}

/// Largest nil ideal: `x` whose generated ideal consists of nilpotent elements.
/// For finite rings it equals the prime radical.
pub fn brute_prime(ring: &FiniteRing) -> BTreeSet<Element> {
    let all: Vec<Element> = ring.elements().collect();
    all.iter()
        .filter(|x| {
            nilpotent_element(ring, x)
                && ideal_elements(ring, &all, x)
                    .iter()
                    .all(|y| nilpotent_element(ring, y))
        })
        .cloned()
        .collect()
}

pub fn as_set(s: &ringinv::Subgroup) -> BTreeSet<Element> {
    s.elements().into_iter().collect()
}
