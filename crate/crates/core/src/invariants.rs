//! Structure induced by a group action: fixed rings, traces, torsion,
//! bad primes, extension and restriction of ideals, splittings.

use std::collections::{BTreeSet, HashSet, VecDeque};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::groups::{close_group, fixed_subgroup, inner_automorphism, prime_factors, AutomorphismGroup, RingAutomorphism, SubgroupIdx};
use crate::lattice::{gcd, Subgroup};
use crate::radicals::prime_radical;
use crate::ring::{Actors, Element, FiniteRing, Side, SubquotientMap, SubringView};

/// A ring with a finite group acting on it, together with `R^G`.
#[derive(Clone, Debug)]
pub struct GActionContext {
    pub ring: FiniteRing,
    pub group: AutomorphismGroup,
    pub fixed: SubringView,
    pub n: u64,
    fixed_ring: FiniteRing,
    embedding: SubquotientMap,
}

impl GActionContext {
    pub fn new(ring: FiniteRing, group: AutomorphismGroup) -> Result<Self> {
        let fixed = fixed_ring(&ring, &group);
        let (fixed_ring, embedding) = ring.materialize(&fixed)?;
        let n = group.order() as u64;
        Ok(GActionContext {
            ring,
            group,
            fixed,
            n,
            fixed_ring,
            embedding,
        })
    }

    /// `R^G` as a ring in its own right.
    pub fn fixed_ring(&self) -> &FiniteRing {
        &self.fixed_ring
    }

    /// Embedding `R^G → R`.
    pub fn embedding(&self) -> &SubquotientMap {
        &self.embedding
    }

    /// `t(r) = Σ_g r^g`.
    pub fn trace(&self, r: &[u64]) -> Element {
        self.group
            .elements()
            .iter()
            .fold(self.ring.zero(), |acc, g| self.ring.add(&acc, &g.apply(&self.ring, r)))
    }

    /// Additive span of `t(X)`; for a subgroup `X` its generators suffice.
    pub fn trace_image(&self, xs: &Subgroup) -> Subgroup {
        let images: Vec<Element> = xs.generators().iter().map(|x| self.trace(x)).collect();
        self.ring.span(&images)
    }

    pub fn generator_maps(&self) -> Vec<Vec<Element>> {
        self.group.generators().iter().map(|g| g.images().to_vec()).collect()
    }

    pub fn is_invariant(&self, s: &Subgroup) -> bool {
        self.group
            .generators()
            .iter()
            .all(|g| s.generators().iter().all(|x| s.contains(&g.apply(&self.ring, x))))
    }

    /// Closure data for `G`-invariant sided ideals.
    pub fn invariant_actors(&self, side: Side) -> Actors {
        let mut a = self.ring.actors(side);
        a.maps = self.generator_maps();
        a
    }

    /// Closure data for sided ideals of `R^G`, viewed inside `R`.
    pub fn fixed_actors(&self, side: Side) -> Actors {
        let w = self.fixed.subgroup.generators();
        match side {
            Side::Left => Actors { left: w, ..Default::default() },
            Side::Right => Actors { right: w, ..Default::default() },
            Side::TwoSided => Actors { left: w.clone(), right: w, maps: vec![] },
        }
    }

    /// `J^e`: the sided ideal of `R` generated by `J` (so `J ⊆ J^e`).
    pub fn extend(&self, j: &Subgroup, side: Side) -> Subgroup {
        self.ring.close(&self.ring.trivial(), &j.generators(), &self.ring.actors(side))
    }

    /// `I^r = I ∩ R^G`.
    pub fn restrict(&self, i: &Subgroup) -> Subgroup {
        i.intersect(&self.fixed.subgroup)
    }
}

/// Elements fixed by every element of `G`, checked against the whole group.
pub fn fixed_ring(ring: &FiniteRing, group: &AutomorphismGroup) -> SubringView {
    let s = fixed_subgroup(ring, group.elements());
    debug_assert!(ring.is_subring(&s));
    SubringView { subgroup: s }
}

/// `t_{G/N}: R^N → R^G` with least coset representatives.
#[derive(Clone, Debug)]
pub struct RelativeTrace<'a> {
    ctx: &'a GActionContext,
    reps: Vec<usize>,
    fixed_by_normal: Subgroup,
}

impl<'a> RelativeTrace<'a> {
    /// Checks that `N` is normal and that the sum does not depend on the
    /// representatives.
    pub fn new(ctx: &'a GActionContext, normal: &[usize]) -> Result<Self> {
        let group = &ctx.group;
        if !group.is_subgroup(normal) || !group.is_normal(normal) {
            return Err(Error::NotNormal);
        }
        let fixed_by_normal = fixed_subgroup(&ctx.ring, group.members(normal));
        let reps = group.coset_representatives(normal);
        for r in fixed_by_normal.generators() {
            for &g in &reps {
                let base = group.element(g).apply(&ctx.ring, &r);
                for &x in normal {
                    if group.element(group.compose(g, x)).apply(&ctx.ring, &r) != base {
                        return Err(Error::NotFixedRing);
                    }
                }
            }
        }
        Ok(RelativeTrace {
            ctx,
            reps,
            fixed_by_normal,
        })
    }

    /// `R^N`.
    pub fn domain(&self) -> &Subgroup {
        &self.fixed_by_normal
    }

    pub fn apply(&self, r: &[u64]) -> Result<Element> {
        if !self.fixed_by_normal.contains(r) {
            return Err(Error::NotInFixedRing);
        }
        let ring = &self.ctx.ring;
        Ok(self.reps.iter().fold(ring.zero(), |acc, &g| {
            ring.add(&acc, &self.ctx.group.element(g).apply(ring, r))
        }))
    }

    /// `t_{G/N}(R^N)`.
    pub fn image(&self) -> Subgroup {
        let images: Vec<Element> = self
            .fixed_by_normal
            .generators()
            .iter()
            .map(|r| self.apply(r).expect("generator lies in R^N"))
            .collect();
        self.ctx.ring.span(&images)
    }
}

/// `tor_n(R) = {r : nⁱr = 0 for some i}`, coordinatewise on `⊕ ℤ/dⱼ`.
pub fn torsion_ideal(ring: &FiniteRing, n: u64) -> Subgroup {
    let primes = prime_factors(n);
    let gens: Vec<Element> = ring
        .orders()
        .iter()
        .enumerate()
        .map(|(j, &d)| {
            // the part of dⱼ built from primes dividing n
            let mut part = 1;
            let mut rest = d;
            for &p in &primes {
                while rest % p == 0 {
                    rest /= p;
                    part *= p;
                }
            }
            let mut e = ring.zero();
            e[j] = (d / part) % d;
            e
        })
        .collect();
    ring.span(&gens)
}

/// Whether `r ↦ n·r` is injective.
pub fn is_torsion_free(ring: &FiniteRing, n: u64) -> bool {
    gcd(n, ring.exponent()) == 1
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DValue {
    /// Least `d` with `Tᵈ = 0`.
    Found(usize),
    /// The powers stabilised at a nonzero subgroup.
    NeverNilpotent,
    /// No answer below the cap.
    Capped,
    /// `N(p)` does not exist, so `d(p)` is undefined.
    Undefined,
}

#[derive(Clone, Debug)]
pub struct BadPrime {
    pub p: u64,
    pub torsion: Subgroup,
    pub normal_complement: Option<SubgroupIdx>,
    /// `|G(p)| = |G/N(p)|`.
    pub quotient_order: Option<usize>,
    /// `t_{G(p)}(R^{N(p)})`.
    pub trace_image: Option<Subgroup>,
    pub d: DValue,
}

#[derive(Clone, Debug)]
pub struct BadPrimeProfile {
    pub primes: Vec<BadPrime>,
    pub torsion_free: bool,
    pub d_cap: usize,
}

impl BadPrimeProfile {
    pub fn prime_set(&self) -> Vec<u64> {
        self.primes.iter().map(|b| b.p).collect()
    }
}

/// Least `d ≤ cap` with `Tᵈ = 0`, with stabilisation detection.
pub fn power_search(ring: &FiniteRing, t: &Subgroup, cap: usize) -> DValue {
    let mut power = t.clone();
    for d in 1..=cap {
        if power.is_zero() {
            return DValue::Found(d);
        }
        let next = ring.product(&power, t);
        if next == power {
            return DValue::NeverNilpotent;
        }
        power = next;
    }
    DValue::Capped
}

pub fn bad_primes(ctx: &GActionContext, d_cap: usize) -> BadPrimeProfile {
    let mut primes = Vec::new();
    for p in prime_factors(ctx.n) {
        let torsion = torsion_ideal(&ctx.ring, p);
        if torsion.is_zero() {
            continue;
        }
        let normal_complement = ctx.group.p_normal_complement(p).expect("p divides |G|");
        let (quotient_order, trace_image, d) = match &normal_complement {
            Some(np) => {
                let rt = RelativeTrace::new(ctx, np).expect("normal complement is normal");
                let t = rt.image();
                let d = power_search(&ctx.ring, &t, d_cap);
                (Some(ctx.group.order() / np.len()), Some(t), d)
            }
            None => (None, None, DValue::Undefined),
        };
        primes.push(BadPrime {
            p,
            torsion,
            normal_complement,
            quotient_order,
            trace_image,
            d,
        });
    }
    BadPrimeProfile {
        torsion_free: primes.is_empty(),
        primes,
        d_cap,
    }
}

/// An `R^G`-subbimodule complement `B` of `R^G` with the projection `e` along it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplittingData {
    pub complement: Subgroup,
    pub bimodule_checked: bool,
    /// Images of the additive generators under `e`.
    pub projection: Vec<Element>,
}

impl SplittingData {
    /// Validates `B` and computes `e`. `None` if `B` is not a bimodule complement.
    pub fn from_complement(ctx: &GActionContext, b: Subgroup) -> Option<Self> {
        let ring = &ctx.ring;
        let w = &ctx.fixed.subgroup;
        if !w.intersect(&b).is_zero() || w.order() * b.order() != ring.order() {
            return None;
        }
        let wg = w.generators();
        let bg = b.generators();
        let bimodule = wg.iter().all(|x| {
            bg.iter()
                .all(|y| b.contains(&ring.mul(x, y)) && b.contains(&ring.mul(y, x)))
        });
        if !bimodule {
            return None;
        }
        let w_elements = w.elements();
        let projection = ring
            .basis_elements()
            .iter()
            .map(|e| {
                w_elements
                    .iter()
                    .find(|f| b.contains(&ring.sub(e, f)))
                    .expect("R = R^G ⊕ B")
                    .clone()
            })
            .collect();
        Some(SplittingData {
            complement: b,
            bimodule_checked: true,
            projection,
        })
    }

    pub fn project(&self, ring: &FiniteRing, x: &[u64]) -> Element {
        ring.additive().apply(&self.projection, x)
    }

    /// `e(S)` for a subgroup `S`.
    pub fn project_subgroup(&self, ring: &FiniteRing, s: &Subgroup) -> Subgroup {
        let images: Vec<Element> = s.generators().iter().map(|x| self.project(ring, x)).collect();
        ring.span(&images)
    }

    /// Every listed invariant of a splitting, checked on all elements.
    pub fn verify(&self, ctx: &GActionContext) -> bool {
        let ring = &ctx.ring;
        let w = &ctx.fixed.subgroup;
        ring.elements().all(|r| {
            let e = self.project(ring, &r);
            w.contains(&e)
                && self.complement.contains(&ring.sub(&r, &e))
                && self.project(ring, &e) == e
                && (!w.contains(&r) || e == r)
        })
    }
}

/// `e = |G|⁻¹ Σ g`, defined when `|G|` is invertible modulo the additive exponent.
pub fn averaging_idempotent(ctx: &GActionContext) -> Result<SplittingData> {
    let ring = &ctx.ring;
    let exp = ring.exponent();
    if gcd(ctx.n, exp) != 1 {
        return Err(Error::NotInvertible(ctx.n));
    }
    let inv = (1..=exp.max(1)).find(|&v| (v as u128 * ctx.n as u128) % exp as u128 == 1 % exp as u128).unwrap_or(1);
    let projection: Vec<Element> = ring
        .basis_elements()
        .iter()
        .map(|e| ring.scale(inv as i128, &ctx.trace(e)))
        .collect();
    let complement_gens: Vec<Element> = ring
        .basis_elements()
        .iter()
        .zip(&projection)
        .map(|(e, f)| ring.sub(e, f))
        .collect();
    let b = ring.span(&complement_gens);
    let data = SplittingData::from_complement(ctx, b).expect("averaging gives a bimodule complement");
    debug_assert_eq!(data.projection, projection);
    Ok(data)
}

#[derive(Clone, Debug)]
pub enum SplittingOutcome {
    Found {
        data: SplittingData,
        /// The complement is itself `G`-invariant.
        invariant: bool,
        exhaustive: bool,
    },
    NoneFound {
        exhaustive: bool,
    },
}

impl SplittingOutcome {
    pub fn data(&self) -> Option<&SplittingData> {
        match self {
            SplittingOutcome::Found { data, .. } => Some(data),
            SplittingOutcome::NoneFound { .. } => None,
        }
    }
}

/// Work bound for the bimodule search in non-elementary rings.
pub const SPLITTING_STATE_CAP: usize = 20_000;

/// Searches for an `R^G`-bimodule complement of `R^G`, preferring `G`-invariant ones.
pub fn splitting_search(ctx: &GActionContext) -> SplittingOutcome {
    let ring = &ctx.ring;
    if ctx.fixed.subgroup.is_full() {
        let data = SplittingData::from_complement(ctx, ring.trivial()).expect("zero complement");
        return SplittingOutcome::Found {
            data,
            invariant: true,
            exhaustive: true,
        };
    }
    let exp = ring.exponent();
    if prime_factors(exp) == vec![exp] {
        for invariant in [true, false] {
            if let Some(b) = linear_complements(ctx, exp, invariant, 1).0.into_iter().next() {
                let data = SplittingData::from_complement(ctx, b).expect("solution is a bimodule complement");
                return SplittingOutcome::Found {
                    data,
                    invariant,
                    exhaustive: true,
                };
            }
        }
        return SplittingOutcome::NoneFound { exhaustive: true };
    }
    let mut exhaustive = true;
    for invariant in [true, false] {
        let (found, complete) = bimodule_search(ctx, invariant);
        exhaustive &= complete;
        if let Some(b) = found.into_iter().next() {
            let data = SplittingData::from_complement(ctx, b).expect("search result is a complement");
            return SplittingOutcome::Found {
                data,
                invariant,
                exhaustive: complete,
            };
        }
    }
    SplittingOutcome::NoneFound { exhaustive }
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * a % p;
        }
        a = a * a % p;
        e >>= 1;
    }
    r
}

/// Reduced row echelon form over `ℤ/p`; returns the nonzero rows and pivot columns.
fn rref(mut rows: Vec<Vec<u64>>, p: u64) -> (Vec<Vec<u64>>, Vec<usize>) {
    let cols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(k) = (r..rows.len()).find(|&k| !rows[k][c].is_multiple_of(p)) else {
            continue;
        };
        rows.swap(r, k);
        let inv = pow_mod(rows[r][c], p - 2, p);
        for v in rows[r].iter_mut() {
            *v = *v * inv % p;
        }
        for k in 0..rows.len() {
            if k != r && rows[k][c] != 0 {
                let f = rows[k][c];
                for j in 0..cols {
                    rows[k][j] = (rows[k][j] + (p - f) * rows[r][j]) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    (rows, pivots)
}

/// Solves `A x = b` over `ℤ/p`. Returns the solution with free variables set
/// to zero and a basis of the null space.
fn solve_mod_p(a: &[Vec<u64>], b: &[u64], p: u64, vars: usize) -> Option<(Vec<u64>, Vec<Vec<u64>>)> {
    let aug: Vec<Vec<u64>> = a
        .iter()
        .zip(b)
        .map(|(row, &rhs)| row.iter().copied().chain([rhs % p]).collect())
        .collect();
    let (rows, pivots) = if aug.is_empty() { (vec![], vec![]) } else { rref(aug, p) };
    if pivots.last() == Some(&vars) {
        return None;
    }
    let mut x = vec![0; vars];
    for (row, &c) in rows.iter().zip(&pivots) {
        x[c] = row[vars];
    }
    let null = (0..vars)
        .filter(|f| !pivots.contains(f))
        .map(|f| {
            let mut v = vec![0; vars];
            v[f] = 1;
            for (row, &c) in rows.iter().zip(&pivots) {
                v[c] = (p - row[f]) % p;
            }
            v
        })
        .collect();
    Some((x, null))
}

/// Complements as graphs of `φ: C → W` over the coordinate complement `C`
/// of `W = R^G`, solving the bimodule (and optionally invariance) conditions.
/// The first returned solution has all free variables zero; at most `limit`
/// solutions are listed and the flag tells whether that is all of them.
fn linear_complements(ctx: &GActionContext, p: u64, invariant: bool, limit: usize) -> (Vec<Subgroup>, bool) {
    let ring = &ctx.ring;
    let k = ring.rank();
    let (w, piv) = rref(ctx.fixed.subgroup.generators(), p);
    let r = w.len();
    let free: Vec<usize> = (0..k).filter(|c| !piv.contains(c)).collect();
    let nc = free.len();
    let vars = r * nc;
    let var = |i: usize, j: usize| i * nc + j;
    // W-coordinates and C-coordinates of an element
    let wco = |v: &Element| -> Vec<u64> { piv.iter().map(|&c| v[c] % p).collect() };
    let cco = |v: &Element| -> Vec<u64> {
        let mut rest = v.clone();
        for (i, &c) in piv.iter().enumerate() {
            let f = v[c];
            for l in 0..k {
                rest[l] = (rest[l] + (p - f) * w[i][l]) % p;
            }
        }
        free.iter().map(|&c| rest[c]).collect()
    };
    let mut a: Vec<Vec<u64>> = Vec::new();
    let mut b: Vec<u64> = Vec::new();
    // condition u_W + Σᵢ xᵢⱼ·coef(i) − φ(u_C) = 0 for each W-coordinate m
    let mut push = |u: &Element, coef: &dyn Fn(usize) -> Vec<u64>, j: usize| {
        let uw = wco(u);
        let uc = cco(u);
        let coefs: Vec<Vec<u64>> = (0..r).map(coef).collect();
        for m in 0..r {
            let mut row = vec![0u64; vars];
            for i in 0..r {
                row[var(i, j)] = (row[var(i, j)] + coefs[i][m]) % p;
            }
            for l in 0..nc {
                row[var(m, l)] = (row[var(m, l)] + (p - uc[l]) % p) % p;
            }
            a.push(row);
            b.push((p - uw[m]) % p);
        }
    };
    for j in 0..nc {
        let c = ring.basis(free[j]);
        for wa in &w {
            let left = |i: usize| wco(&ring.mul(wa, &w[i]));
            push(&ring.mul(wa, &c), &left, j);
            let right = |i: usize| wco(&ring.mul(&w[i], wa));
            push(&ring.mul(&c, wa), &right, j);
        }
        if invariant {
            for g in ctx.group.generators() {
                let unit = |i: usize| (0..r).map(|m| u64::from(m == i)).collect();
                push(&g.apply(ring, &c), &unit, j);
            }
        }
    }
    let Some((x0, null)) = solve_mod_p(&a, &b, p, vars) else {
        return (vec![], true);
    };
    let graph = |x: &[u64]| {
        let gens: Vec<Element> = (0..nc)
            .map(|j| {
                let mut v = ring.basis(free[j]);
                for i in 0..r {
                    v = ring.add(&v, &ring.scale(x[var(i, j)] as i128, &w[i]));
                }
                v
            })
            .collect();
        ring.span(&gens)
    };
    // coefficient tuples over the null space in lexicographic order
    let mut out = Vec::new();
    let mut coef = vec![0u64; null.len()];
    loop {
        if out.len() >= limit {
            return (out, false);
        }
        let mut x = x0.clone();
        for (c, v) in coef.iter().zip(&null) {
            for (xi, vi) in x.iter_mut().zip(v) {
                *xi = (*xi + c * vi) % p;
            }
        }
        out.push(graph(&x));
        let Some(pos) = (0..coef.len()).rev().find(|&i| coef[i] + 1 < p) else {
            return (out, true);
        };
        coef[pos] += 1;
        for c in coef.iter_mut().skip(pos + 1) {
            *c = 0;
        }
    }
}

/// Breadth-first search over bimodules meeting `R^G` trivially.
fn bimodule_search(ctx: &GActionContext, invariant: bool) -> (Vec<Subgroup>, bool) {
    let ring = &ctx.ring;
    let w = &ctx.fixed.subgroup;
    let target = ring.order() / w.order();
    let mut actors = ctx.fixed_actors(Side::TwoSided);
    if invariant {
        actors.maps = ctx.generator_maps();
    }
    let mut seen: HashSet<Subgroup> = HashSet::from([ring.trivial()]);
    let mut queue = VecDeque::from([ring.trivial()]);
    let mut found: BTreeSet<Subgroup> = BTreeSet::new();
    let mut complete = true;
    while let Some(b) = queue.pop_front() {
        if b.order() == target {
            found.insert(b);
            continue;
        }
        let bw = b.join(w);
        let mut tried = HashSet::new();
        for x in ring.elements() {
            if bw.contains(&x) || !tried.insert(bw.coset_rep(&x)) {
                continue;
            }
            let next = ring.close(&b, &[x], &actors);
            if next.intersect(w).is_zero() && seen.insert(next.clone()) {
                if seen.len() > SPLITTING_STATE_CAP {
                    complete = false;
                    break;
                }
                queue.push_back(next);
            }
        }
        if !complete {
            break;
        }
    }
    (found.into_iter().collect(), complete)
}

/// Every bimodule complement found, the preferred one first.
#[derive(Clone, Debug)]
pub struct SplittingFamily {
    pub splittings: Vec<SplittingData>,
    pub exhaustive: bool,
}

/// Lists up to `limit` splittings of `R` over `R^G`.
pub fn all_splittings(ctx: &GActionContext, limit: usize) -> SplittingFamily {
    let ring = &ctx.ring;
    let first = splitting_search(ctx);
    let mut complements: Vec<Subgroup> = first.data().map(|d| d.complement.clone()).into_iter().collect();
    let exhaustive = if ctx.fixed.subgroup.is_full() {
        true
    } else {
        let exp = ring.exponent();
        let (rest, complete) = if prime_factors(exp) == vec![exp] {
            linear_complements(ctx, exp, false, limit)
        } else {
            let (mut found, complete) = bimodule_search(ctx, false);
            let complete = complete && found.len() <= limit;
            found.truncate(limit);
            (found, complete)
        };
        for b in rest {
            if !complements.contains(&b) {
                complements.push(b);
            }
        }
        complete
    };
    SplittingFamily {
        splittings: complements
            .into_iter()
            .map(|b| SplittingData::from_complement(ctx, b).expect("verified complement"))
            .collect(),
        exhaustive,
    }
}

/// The action of `G` on `R/I` for a `G`-invariant two-sided ideal `I`. The
/// induced group may be smaller than `G`.
pub fn induced_action(ctx: &GActionContext, ideal: &Subgroup) -> Result<(GActionContext, SubquotientMap)> {
    let ring = &ctx.ring;
    let (q, map) = ring.quotient(ideal)?;
    let gens = ctx
        .group
        .generators()
        .iter()
        .map(|g| {
            let images = (0..q.rank())
                .map(|j| {
                    let x = g.apply(ring, &map.lift(&q.basis(j)));
                    map.project(&x).expect("quotient covers R")
                })
                .collect();
            RingAutomorphism::new(&q, images)
        })
        .collect::<Result<Vec<_>>>()?;
    let group = close_group(&q, &gens, ctx.group.order().max(1))?;
    Ok((GActionContext::new(q, group)?, map))
}

/// Configuration for enumerating closed subgroups (ideal lattices).
#[derive(Clone, Debug)]
pub struct EnumerationConfig {
    /// Ambient orders up to this are enumerated exhaustively.
    pub exhaustive_order: u64,
    /// Stop (and flag) after this many members.
    pub max_members: usize,
    /// Random cyclic generators drawn in sampled mode.
    pub samples: usize,
    pub seed: u64,
}

impl Default for EnumerationConfig {
    fn default() -> Self {
        EnumerationConfig {
            exhaustive_order: 256,
            max_members: 4096,
            samples: 64,
            seed: 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Enumeration {
    /// Sorted by order, then canonically.
    pub members: Vec<Subgroup>,
    pub exhaustive: bool,
}

/// All subgroups of `ambient` closed under `actors`, as sums of cyclic ones.
pub fn enumerate_closed(
    ring: &FiniteRing,
    ambient: &Subgroup,
    actors: &Actors,
    config: &EnumerationConfig,
) -> Enumeration {
    let zero = ring.trivial();
    let sampled = ambient.order() > config.exhaustive_order;
    let seeds: Vec<Element> = if sampled {
        let gens = ambient.generators();
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        (0..config.samples)
            .map(|_| {
                gens.iter().fold(ring.zero(), |acc, g| {
                    ring.add(&acc, &ring.scale(rng.gen_range(0..ring.exponent().max(1)) as i128, g))
                })
            })
            .collect()
    } else {
        ambient.elements()
    };
    let mut cyclic: Vec<Subgroup> = seeds
        .iter()
        .filter(|x| !ring.is_zero(x))
        .map(|x| ring.close(&zero, std::slice::from_ref(x), actors))
        .collect::<HashSet<_>>()
        .into_iter()
        .collect();
    cyclic.sort();
    let mut seen: HashSet<Subgroup> = HashSet::from([zero.clone()]);
    let mut queue = VecDeque::from([zero]);
    let mut capped = false;
    'outer: while let Some(s) = queue.pop_front() {
        for c in &cyclic {
            if c.is_subgroup_of(&s) {
                continue;
            }
            let next = s.join(c);
            if seen.insert(next.clone()) {
                if seen.len() >= config.max_members {
                    capped = true;
                    break 'outer;
                }
                queue.push_back(next);
            }
        }
    }
    if sampled {
        seen.insert(ambient.clone());
    }
    let mut members: Vec<Subgroup> = seen.into_iter().collect();
    members.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.cmp(b)));
    Enumeration {
        members,
        exhaustive: !sampled && !capped,
    }
}

/// `G`-invariant sided ideals of `R`.
pub fn invariant_ideals(ctx: &GActionContext, side: Side, config: &EnumerationConfig) -> Enumeration {
    enumerate_closed(&ctx.ring, &ctx.ring.full(), &ctx.invariant_actors(side), config)
}

/// Sided ideals of `R^G`, as subgroups of `R`.
pub fn fixed_ring_ideals(ctx: &GActionContext, side: Side, config: &EnumerationConfig) -> Enumeration {
    enumerate_closed(&ctx.ring, &ctx.fixed.subgroup, &ctx.fixed_actors(side), config)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProperSplitting {
    /// `e(I) ⊆ I ∩ R^G` for every listed ideal.
    pub holds: bool,
    /// First ideal violating the containment.
    pub witness: Option<Subgroup>,
    /// `I ∩ R^G ⊆ e(I)` for every listed ideal.
    pub reverse_holds: bool,
    pub exhaustive: bool,
}

pub fn is_proper_splitting(ctx: &GActionContext, split: &SplittingData, ideals: &Enumeration) -> ProperSplitting {
    let mut witness = None;
    let mut reverse_holds = true;
    for i in &ideals.members {
        let e_i = split.project_subgroup(&ctx.ring, i);
        let restricted = ctx.restrict(i);
        if witness.is_none() && !e_i.is_subgroup_of(&restricted) {
            witness = Some(i.clone());
        }
        reverse_holds &= restricted.is_subgroup_of(&e_i);
    }
    ProperSplitting {
        holds: witness.is_none(),
        witness,
        reverse_holds,
        exhaustive: ideals.exhaustive,
    }
}

#[derive(Clone, Debug)]
pub struct CentralizerNormalizer {
    pub centralizer: Subgroup,
    /// `{b : bA = Ab}`, which need not be additively closed.
    pub normalizer: Vec<Element>,
    pub unit_centralizer: Vec<Element>,
    pub unit_normalizer: Vec<Element>,
    /// `ω_u` for the units in the normalizer.
    pub inner: Vec<RingAutomorphism>,
}

pub fn centralizer_normalizer(ring: &FiniteRing, a: &Subgroup) -> CentralizerNormalizer {
    let gens = a.generators();
    let mut centralizer = ring.trivial();
    for b in ring.elements() {
        if !centralizer.contains(&b) && gens.iter().all(|x| ring.mul(&b, x) == ring.mul(x, &b)) {
            centralizer.insert(&b);
        }
    }
    let a_elements = a.elements();
    let normalizer: Vec<Element> = ring
        .elements()
        .filter(|b| {
            let left: BTreeSet<Element> = a_elements.iter().map(|x| ring.mul(b, x)).collect();
            let right: BTreeSet<Element> = a_elements.iter().map(|x| ring.mul(x, b)).collect();
            left == right
        })
        .collect();
    let units: HashSet<Element> = ring.units().into_iter().collect();
    let unit_normalizer: Vec<Element> = normalizer.iter().filter(|u| units.contains(*u)).cloned().collect();
    let unit_centralizer = unit_normalizer
        .iter()
        .filter(|u| centralizer.contains(u))
        .cloned()
        .collect();
    let inner = unit_normalizer
        .iter()
        .map(|u| inner_automorphism(ring, u).expect("units give inner automorphisms"))
        .collect();
    CentralizerNormalizer {
        centralizer,
        normalizer,
        unit_centralizer,
        unit_normalizer,
        inner,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NondegenerateTrace {
    pub fixed_semiprime: bool,
    /// The largest nonzero invariant one-sided ideal with `t(I) = 0`.
    pub witness: Option<(Side, Subgroup)>,
    pub exhaustive: bool,
}

impl NondegenerateTrace {
    pub fn holds(&self) -> bool {
        self.fixed_semiprime && self.witness.is_none()
    }
}

pub fn nondegenerate_trace_check(ctx: &GActionContext, config: &EnumerationConfig) -> NondegenerateTrace {
    let fixed_semiprime = prime_radical(ctx.fixed_ring()).subgroup.is_zero();
    let mut witness = None;
    let mut exhaustive = true;
    for side in [Side::Left, Side::Right] {
        let ideals = invariant_ideals(ctx, side, config);
        exhaustive &= ideals.exhaustive;
        if witness.is_none() {
            witness = ideals
                .members
                .iter()
                .rev()
                .find(|i| !i.is_zero() && ctx.trace_image(i).is_zero())
                .map(|i| (side, i.clone()));
        }
    }
    NondegenerateTrace {
        fixed_semiprime,
        witness,
        exhaustive,
    }
}
