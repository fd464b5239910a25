//! Per-instance cache of everything the theorem checkers ask about.

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groups::AutomorphismGroup;
use crate::invariants::{
    all_splittings, bad_primes, fixed_ring_ideals, induced_action, invariant_ideals, is_proper_splitting,
    BadPrimeProfile, EnumerationConfig, Enumeration, GActionContext, SplittingFamily,
};
use crate::lattice::{gcd, Subgroup};
use crate::radicals::{jacobson_radical, nilpotency_index, prime_radical, uniform_dimension_capped, UdimCertificate};
use crate::ring::{FiniteRing, Side, SubquotientMap, SubringView};

/// Search and enumeration limits. Every report echoes them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Caps {
    /// Ideal lattices of rings up to this order are enumerated exhaustively.
    pub ideal_scan: u64,
    /// Largest `d` tried when looking for `Tᵈ = 0`.
    pub d_cap: usize,
    /// Largest nilpotency index accepted as a certificate.
    pub nilpotency: usize,
    /// Uniform dimension is exact up to this ring order.
    pub udim: u64,
    /// Ideal enumerations stop after this many members.
    pub max_ideals: usize,
    /// Random generators drawn when an ideal lattice is sampled.
    pub samples: usize,
    /// Splittings listed per instance.
    pub splittings: usize,
    /// `(J, I)` pairs examined per lemma check.
    pub pairs: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            ideal_scan: 256,
            d_cap: 16,
            nilpotency: 64,
            udim: 256,
            max_ideals: 4096,
            samples: 64,
            splittings: 256,
            pairs: 20_000,
        }
    }
}

impl Caps {
    pub const KEYS: [&'static str; 8] = [
        "ideal_scan",
        "d_cap",
        "nilpotency",
        "udim",
        "max_ideals",
        "samples",
        "splittings",
        "pairs",
    ];

    pub fn set(&mut self, key: &str, value: u64) -> Result<()> {
        if value == 0 {
            return Err(Error::Unknown(format!("cap {key} must be positive")));
        }
        let v = value as usize;
        match key {
            "ideal_scan" => self.ideal_scan = value,
            "d_cap" => self.d_cap = v,
            "nilpotency" => self.nilpotency = v,
            "udim" => self.udim = value,
            "max_ideals" => self.max_ideals = v,
            "samples" => self.samples = v,
            "splittings" => self.splittings = v,
            "pairs" => self.pairs = v,
            _ => return Err(Error::Unknown(format!("cap {key}"))),
        }
        Ok(())
    }

    /// Parses `k=v,k=v`.
    pub fn apply_list(&mut self, list: &str) -> Result<()> {
        for item in list.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (k, v) = item
                .split_once('=')
                .ok_or_else(|| Error::Unknown(format!("cap assignment `{item}`")))?;
            let v: u64 = v
                .trim()
                .parse()
                .map_err(|_| Error::Unknown(format!("cap value `{v}`")))?;
            self.set(k.trim(), v)?;
        }
        Ok(())
    }
}

/// `R/I` with the induced group and the image of `R^G` in it.
#[derive(Debug)]
pub struct QuotientAnalysis {
    pub analysis: Box<Analysis>,
    pub map: SubquotientMap,
    /// Image of `R^G` in `R/I`.
    pub image_of_fixed: Subgroup,
}

/// Proper-splitting status on one side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProperStatus {
    /// Index into the splitting family of a certified proper splitting.
    Proper(usize),
    /// Every splitting has a violating ideal, and the family is complete.
    NoneProper,
    /// Undecided within the caps.
    Capped,
}

fn side_index(side: Side) -> usize {
    match side {
        Side::Left => 0,
        _ => 1,
    }
}

#[derive(Debug)]
pub struct Analysis {
    pub ring_name: String,
    pub group_name: String,
    pub ctx: GActionContext,
    pub caps: Caps,
    pub seed: u64,
    prime: OnceLock<Subgroup>,
    jacobson: OnceLock<Subgroup>,
    fixed_prime: OnceLock<Subgroup>,
    fixed_jacobson: OnceLock<Subgroup>,
    nil_index: OnceLock<Option<usize>>,
    bad: OnceLock<BadPrimeProfile>,
    ideals: [OnceLock<Enumeration>; 2],
    fixed_ideals: [OnceLock<Enumeration>; 2],
    splittings: OnceLock<SplittingFamily>,
    proper: [OnceLock<ProperStatus>; 2],
    udim: [OnceLock<UdimCertificate>; 2],
    fixed_udim: [OnceLock<UdimCertificate>; 2],
    mod_prime: OnceLock<Option<QuotientAnalysis>>,
    mod_jacobson: OnceLock<Option<QuotientAnalysis>>,
}

impl Analysis {
    pub fn new(
        ring_name: impl Into<String>,
        group_name: impl Into<String>,
        ring: FiniteRing,
        group: AutomorphismGroup,
        caps: Caps,
        seed: u64,
    ) -> Result<Self> {
        Ok(Self::from_context(
            ring_name.into(),
            group_name.into(),
            GActionContext::new(ring, group)?,
            caps,
            seed,
        ))
    }

    pub fn from_context(ring_name: String, group_name: String, ctx: GActionContext, caps: Caps, seed: u64) -> Self {
        Analysis {
            ring_name,
            group_name,
            ctx,
            caps,
            seed,
            prime: OnceLock::new(),
            jacobson: OnceLock::new(),
            fixed_prime: OnceLock::new(),
            fixed_jacobson: OnceLock::new(),
            nil_index: OnceLock::new(),
            bad: OnceLock::new(),
            ideals: Default::default(),
            fixed_ideals: Default::default(),
            splittings: OnceLock::new(),
            proper: Default::default(),
            udim: Default::default(),
            fixed_udim: Default::default(),
            mod_prime: OnceLock::new(),
            mod_jacobson: OnceLock::new(),
        }
    }

    pub fn ring(&self) -> &FiniteRing {
        &self.ctx.ring
    }

    pub fn fixed(&self) -> &Subgroup {
        &self.ctx.fixed.subgroup
    }

    pub fn n(&self) -> u64 {
        self.ctx.n
    }

    pub fn enumeration_config(&self) -> EnumerationConfig {
        EnumerationConfig {
            exhaustive_order: self.caps.ideal_scan,
            max_members: self.caps.max_ideals,
            samples: self.caps.samples,
            seed: self.seed,
        }
    }

    /// `𝔫(R)`.
    pub fn prime_radical(&self) -> &Subgroup {
        self.prime.get_or_init(|| prime_radical(self.ring()).subgroup)
    }

    /// `rad(R)`.
    pub fn jacobson_radical(&self) -> &Subgroup {
        self.jacobson.get_or_init(|| jacobson_radical(self.ring()).subgroup)
    }

    fn lift_from_fixed(&self, s: &Subgroup) -> Subgroup {
        let emb = self.ctx.embedding();
        let gens: Vec<_> = s.generators().iter().map(|x| emb.lift(x)).collect();
        self.ring().span(&gens)
    }

    /// `𝔫(R^G)` inside `R`.
    pub fn fixed_prime_radical(&self) -> &Subgroup {
        self.fixed_prime
            .get_or_init(|| self.lift_from_fixed(&prime_radical(self.ctx.fixed_ring()).subgroup))
    }

    /// `rad(R^G)` inside `R`.
    pub fn fixed_jacobson_radical(&self) -> &Subgroup {
        self.fixed_jacobson
            .get_or_init(|| self.lift_from_fixed(&jacobson_radical(self.ctx.fixed_ring()).subgroup))
    }

    pub fn nilpotency_index(&self) -> Option<usize> {
        *self
            .nil_index
            .get_or_init(|| nilpotency_index(self.ring(), &self.ring().full()))
    }

    pub fn bad_primes(&self) -> &BadPrimeProfile {
        self.bad.get_or_init(|| bad_primes(&self.ctx, self.caps.d_cap))
    }

    /// Whether `nⁱr = 0` forces `r = 0` on the whole ring.
    pub fn ring_torsion_free(&self, n: u64) -> bool {
        gcd(n, self.ring().exponent()) == 1
    }

    /// Same for `R^G`; a finite group has no `n`-torsion iff its order is prime to `n`.
    pub fn fixed_torsion_free(&self, n: u64) -> bool {
        gcd(n, self.fixed().order()) == 1
    }

    /// `|G|⁻¹ ∈ R`, read as `|G|` being invertible modulo the additive exponent.
    pub fn order_invertible(&self) -> bool {
        self.ring_torsion_free(self.n())
    }

    pub fn invariant_ideals(&self, side: Side) -> &Enumeration {
        self.ideals[side_index(side)].get_or_init(|| invariant_ideals(&self.ctx, side, &self.enumeration_config()))
    }

    pub fn fixed_ring_ideals(&self, side: Side) -> &Enumeration {
        self.fixed_ideals[side_index(side)]
            .get_or_init(|| fixed_ring_ideals(&self.ctx, side, &self.enumeration_config()))
    }

    pub fn splittings(&self) -> &SplittingFamily {
        self.splittings
            .get_or_init(|| all_splittings(&self.ctx, self.caps.splittings))
    }

    pub fn proper_status(&self, side: Side) -> &ProperStatus {
        self.proper[side_index(side)].get_or_init(|| {
            let family = self.splittings();
            let ideals = self.invariant_ideals(side);
            let mut all_fail = true;
            for (i, s) in family.splittings.iter().enumerate() {
                let ps = is_proper_splitting(&self.ctx, s, ideals);
                if ps.holds && ideals.exhaustive {
                    return ProperStatus::Proper(i);
                }
                all_fail &= !ps.holds;
            }
            if all_fail && family.exhaustive {
                ProperStatus::NoneProper
            } else {
                ProperStatus::Capped
            }
        })
    }

    pub fn udim(&self, side: Side) -> &UdimCertificate {
        self.udim[side_index(side)].get_or_init(|| uniform_dimension_capped(self.ring(), side, self.caps.udim))
    }

    pub fn fixed_udim(&self, side: Side) -> &UdimCertificate {
        self.fixed_udim[side_index(side)]
            .get_or_init(|| uniform_dimension_capped(self.ctx.fixed_ring(), side, self.caps.udim))
    }

    fn quotient_by(&self, ideal: &Subgroup, tag: &str) -> Option<QuotientAnalysis> {
        let (ctx, map) = induced_action(&self.ctx, ideal).ok()?;
        let images: Vec<_> = self
            .fixed()
            .generators()
            .iter()
            .map(|x| map.project(x).expect("quotient covers R"))
            .collect();
        let image_of_fixed = ctx.ring.span(&images);
        let analysis = Analysis::from_context(
            format!("{}/{}", self.ring_name, tag),
            format!("{} (induced)", self.group_name),
            ctx,
            self.caps.clone(),
            self.seed,
        );
        Some(QuotientAnalysis {
            analysis: Box::new(analysis),
            map,
            image_of_fixed,
        })
    }

    /// `R/𝔫(R)` with the induced group.
    pub fn modulo_prime_radical(&self) -> Option<&QuotientAnalysis> {
        self.mod_prime
            .get_or_init(|| self.quotient_by(self.prime_radical(), "n(R)"))
            .as_ref()
    }

    /// `R/rad(R)` with the induced group.
    pub fn modulo_jacobson_radical(&self) -> Option<&QuotientAnalysis> {
        self.mod_jacobson
            .get_or_init(|| self.quotient_by(self.jacobson_radical(), "rad(R)"))
            .as_ref()
    }

    /// Semiprimeness of a subring of `R`, decided by materializing it.
    pub fn subring_semiprime(&self, s: &Subgroup) -> bool {
        let view = SubringView { subgroup: s.clone() };
        match self.ring().materialize(&view) {
            Ok((sub, _)) => prime_radical(&sub).subgroup.is_zero(),
            Err(_) => false,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{close_group, RingAutomorphism, DEFAULT_GROUP_CAP};
    use crate::ring::{cyclic, direct_product};

    #[test]
    fn caps_parse() {
        let mut c = Caps::default();
        c.apply_list("d_cap=4, ideal_scan=64").unwrap();
        assert_eq!((c.d_cap, c.ideal_scan), (4, 64));
        assert!(c.apply_list("d_cap=0").is_err());
        assert!(c.apply_list("nonsense=3").is_err());
        assert!(c.apply_list("d_cap").is_err());
    }

    #[test]
    fn cached_views() {
        let f3 = cyclic(3).unwrap();
        let r = direct_product(&[f3.clone(), f3]).unwrap();
        let s = RingAutomorphism::new(&r, vec![vec![0, 1], vec![1, 0]]).unwrap();
        let g = close_group(&r, &[s], DEFAULT_GROUP_CAP).unwrap();
        let a = Analysis::new("F3xF3", "swap", r, g, Caps::default(), 0).unwrap();
        assert!(a.prime_radical().is_zero());
        assert!(a.fixed_jacobson_radical().is_zero());
        assert!(a.order_invertible());
        assert_eq!(a.proper_status(Side::Left), &ProperStatus::Proper(0));
        assert_eq!(a.udim(Side::Left).value, 2);
        assert_eq!(a.fixed_udim(Side::Left).value, 1);
        let q = a.modulo_prime_radical().unwrap();
        assert_eq!(q.analysis.ring().order(), 9);
        assert_eq!(q.image_of_fixed, q.analysis.fixed().clone());
    }
}
