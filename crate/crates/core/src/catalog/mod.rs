//! Named instances, seeded random instances and their text files.

pub mod format;
mod named;
mod random;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::path::Path;

use serde::Serialize;

use crate::analysis::{Analysis, Caps};
use crate::error::Result;
use crate::groups::AutomorphismGroup;
use crate::lattice::{Presentation, Subgroup};
use crate::radicals::{prime_radical, uniform_dimension_capped, Maximality};
use crate::ring::{FiniteRing, Side};
use crate::theorems::{check, TheoremId};

pub use named::named_instances;
pub use random::{random_instances, RandomSpec, RandomStats};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Provenance {
    Constructed,
    File,
    Random { seed: u64, index: usize },
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::Constructed => f.write_str("constructed"),
            Provenance::File => f.write_str("file"),
            Provenance::Random { seed, index } => write!(f, "random(seed={seed},index={index})"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Instance {
    pub ring_name: String,
    pub group_name: String,
    pub ring: FiniteRing,
    pub group: AutomorphismGroup,
    /// Derived labels; recomputed by [`Instance::derive_tags`], never read from files.
    pub tags: BTreeSet<String>,
    pub provenance: Provenance,
}

impl Instance {
    pub fn new(
        ring_name: impl Into<String>,
        group_name: impl Into<String>,
        ring: FiniteRing,
        group: AutomorphismGroup,
        provenance: Provenance,
    ) -> Self {
        Instance {
            ring_name: ring_name.into(),
            group_name: group_name.into(),
            ring,
            group,
            tags: BTreeSet::new(),
            provenance,
        }
    }

    pub fn name(&self) -> String {
        format!("{} | {}", self.ring_name, self.group_name)
    }

    pub fn analysis(&self, caps: &Caps, seed: u64) -> Result<Analysis> {
        Analysis::new(
            self.ring_name.clone(),
            self.group_name.clone(),
            self.ring.clone(),
            self.group.clone(),
            caps.clone(),
            seed,
        )
    }

    /// Recomputes the tags from scratch.
    pub fn derive_tags(&mut self) -> Result<()> {
        let a = self.analysis(&Caps::default(), 0)?;
        let keep: BTreeSet<String> = self
            .tags
            .iter()
            .filter(|t| t.as_str() == "no-automorphism-found")
            .cloned()
            .collect();
        self.tags = derive_tags(&a);
        self.tags.extend(keep);
        Ok(())
    }

    pub fn fingerprint(&self) -> Fingerprint {
        Fingerprint::of(&self.ring)
    }
}

pub fn derive_tags(a: &Analysis) -> BTreeSet<String> {
    let mut t = BTreeSet::new();
    let mut tag = |s: &str| {
        t.insert(s.to_string());
    };
    if a.ring().is_unital() {
        tag("unital");
    }
    if a.prime_radical().is_zero() {
        tag("semiprime");
    }
    if a.jacobson_radical().is_zero() {
        tag("semisimple");
    }
    if a.nilpotency_index().is_some() {
        tag("nilpotent");
    }
    if a.n() == 1 {
        tag("trivial-group");
    }
    if a.fixed().is_zero() {
        tag("fixed-ring-zero");
    }
    if a.order_invertible() {
        tag("order-invertible");
    }
    if a.bad_primes().primes.is_empty() {
        tag("torsion-free");
    }
    if !a.splittings().splittings.is_empty() {
        tag("splitting-exists");
    }
    let mut rest: Vec<String> = a.bad_primes().prime_set().iter().map(|p| format!("bad-prime-{p}")).collect();
    let n1 = check(TheoremId::N1, a, &[]);
    if n1.hypotheses.iter().all(|h| h.status.is_true()) {
        rest.push("n1-hypotheses-hold".into());
    }
    t.extend(rest);
    t
}

/// Isomorphism-invariant summary used to spot duplicates. Equal fingerprints
/// do not imply isomorphic rings.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Fingerprint {
    pub order: u64,
    pub invariant_factors: Vec<u64>,
    pub units: usize,
    pub prime_radical: u64,
    pub udim_left: Option<usize>,
    pub unital: bool,
}

impl Fingerprint {
    pub fn of(ring: &FiniteRing) -> Self {
        let factors = Presentation::new(&ring.full(), &Subgroup::zero(ring.orders())).orders().to_vec();
        let udim = uniform_dimension_capped(ring, Side::Left, 256);
        Fingerprint {
            order: ring.order(),
            invariant_factors: factors,
            units: ring.units().len(),
            prime_radical: prime_radical(ring).subgroup.order(),
            udim_left: (udim.maximality == Maximality::Exhaustive).then_some(udim.value),
            unital: ring.is_unital(),
        }
    }
}

/// Keeps the first instance of every (fingerprint, group order) class.
pub fn dedup_by_fingerprint(instances: Vec<Instance>) -> Vec<Instance> {
    let mut seen = BTreeSet::new();
    instances
        .into_iter()
        .filter(|i| seen.insert((i.fingerprint(), i.group.order())))
        .collect()
}

/// Loads every instance in a file; tags are derived afresh.
pub fn load(path: &Path) -> Result<Vec<Instance>> {
    let text = std::fs::read_to_string(path)?;
    let mut list = format::parse(&text)?;
    for inst in &mut list {
        inst.derive_tags()?;
    }
    Ok(list)
}

pub fn save(path: &Path, instances: &[Instance]) -> Result<()> {
    std::fs::write(path, format::write(instances))?;
    Ok(())
}

/// One line per member: name, group order, provenance and tags.
pub fn manifest(instances: &[Instance]) -> String {
    let mut by_name: BTreeMap<String, &Instance> = BTreeMap::new();
    for i in instances {
        by_name.insert(i.name(), i);
    }
    let mut out = String::from("# member | |G| | provenance | tags\n");
    for (name, i) in by_name {
        let tags: Vec<&str> = i.tags.iter().map(String::as_str).collect();
        out.push_str(&format!(
            "{name} | {} | {} | {}\n",
            i.group.order(),
            i.provenance,
            tags.join(",")
        ));
    }
    out
}
