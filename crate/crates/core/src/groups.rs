//! Finite groups of ring automorphisms, stored as explicit element sets.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};
use crate::lattice::Subgroup;
use crate::ring::{AdditiveGroup, Element, FiniteRing, SubquotientMap, SubringView};

pub const DEFAULT_GROUP_CAP: usize = 720;

/// Ring automorphism given by the images of the additive generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RingAutomorphism {
    images: Vec<Element>,
}

impl RingAutomorphism {
    pub fn new(ring: &FiniteRing, images: Vec<Element>) -> Result<Self> {
        let k = ring.rank();
        if images.len() != k || images.iter().any(|x| x.len() != k) {
            return Err(Error::DimensionMismatch(k));
        }
        let group = ring.additive();
        let images: Vec<Element> = images.iter().map(|x| group.reduce(x)).collect();
        for (i, img) in images.iter().enumerate() {
            if !group.is_zero(&group.scale(ring.orders()[i] as i128, img)) {
                return Err(Error::NotAutomorphism(format!(
                    "image of generator {i} is not killed by {}",
                    ring.orders()[i]
                )));
            }
        }
        if !ring.span(&images).is_full() {
            return Err(Error::NotAutomorphism("not bijective".into()));
        }
        let sigma = RingAutomorphism { images };
        for i in 0..k {
            for j in 0..k {
                let lhs = sigma.apply(ring, ring.structure(i, j));
                let rhs = ring.mul(&sigma.images[i], &sigma.images[j]);
                if lhs != rhs {
                    return Err(Error::NotAutomorphism(format!(
                        "does not preserve the product of generators {i} and {j}"
                    )));
                }
            }
        }
        Ok(sigma)
    }

    pub fn identity(ring: &FiniteRing) -> Self {
        RingAutomorphism {
            images: ring.basis_elements(),
        }
    }

    pub fn images(&self) -> &[Element] {
        &self.images
    }

    pub fn apply(&self, ring: &FiniteRing, x: &[u64]) -> Element {
        ring.additive().apply(&self.images, x)
    }

    /// `self ∘ other`.
    pub fn compose(&self, ring: &FiniteRing, other: &RingAutomorphism) -> RingAutomorphism {
        RingAutomorphism {
            images: other.images.iter().map(|x| self.apply(ring, x)).collect(),
        }
    }

    pub fn is_identity(&self, ring: &FiniteRing) -> bool {
        self.images == ring.basis_elements()
    }
}

/// Inner automorphism `b ↦ u·b·u⁻¹` for a unit `u`.
pub fn inner_automorphism(ring: &FiniteRing, u: &[u64]) -> Result<RingAutomorphism> {
    let inv = ring
        .inverse(u)
        .ok_or_else(|| Error::NotAutomorphism("element is not a unit".into()))?;
    let images = ring
        .basis_elements()
        .iter()
        .map(|e| ring.mul(&ring.mul(u, e), &inv))
        .collect();
    RingAutomorphism::new(ring, images)
}

/// A subgroup of an [`AutomorphismGroup`] as sorted element indices.
pub type SubgroupIdx = Vec<usize>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AutomorphismGroup {
    elements: Vec<RingAutomorphism>,
    generators: Vec<usize>,
    identity: usize,
    table: Vec<usize>,
    inverse: Vec<usize>,
}

/// Generated subgroup by breadth-first closure. Elements end up sorted by
/// their image vectors.
pub fn close_group(
    ring: &FiniteRing,
    gens: &[RingAutomorphism],
    cap: usize,
) -> Result<AutomorphismGroup> {
    let id = RingAutomorphism::identity(ring);
    let mut seen: HashSet<RingAutomorphism> = HashSet::new();
    seen.insert(id.clone());
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = g.compose(ring, &x);
            if seen.insert(y.clone()) {
                if seen.len() > cap {
                    return Err(Error::GroupTooLarge(cap));
                }
                queue.push_back(y);
            }
        }
    }
    let mut elements: Vec<RingAutomorphism> = seen.into_iter().collect();
    elements.sort();
    Ok(AutomorphismGroup::from_elements(ring, elements, gens))
}

impl AutomorphismGroup {
    fn from_elements(
        ring: &FiniteRing,
        elements: Vec<RingAutomorphism>,
        gens: &[RingAutomorphism],
    ) -> Self {
        let n = elements.len();
        let pos: HashMap<&RingAutomorphism, usize> =
            elements.iter().enumerate().map(|(i, g)| (g, i)).collect();
        let mut table = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                table[a * n + b] = pos[&elements[a].compose(ring, &elements[b])];
            }
        }
        let identity = pos[&RingAutomorphism::identity(ring)];
        let inverse = (0..n)
            .map(|a| (0..n).find(|&b| table[a * n + b] == identity).unwrap())
            .collect();
        let mut generators: Vec<usize> = gens.iter().map(|g| pos[g]).filter(|&g| g != identity).collect();
        generators.sort();
        generators.dedup();
        AutomorphismGroup {
            elements,
            generators,
            identity,
            table,
            inverse,
        }
    }

    pub fn trivial(ring: &FiniteRing) -> Self {
        close_group(ring, &[], 1).expect("trivial group")
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[RingAutomorphism] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &RingAutomorphism {
        &self.elements[i]
    }

    pub fn generator_indices(&self) -> &[usize] {
        &self.generators
    }

    pub fn generators(&self) -> Vec<&RingAutomorphism> {
        self.generators.iter().map(|&g| &self.elements[g]).collect()
    }

    pub fn identity_index(&self) -> usize {
        self.identity
    }

    pub fn index_of(&self, sigma: &RingAutomorphism) -> Option<usize> {
        self.elements.binary_search(sigma).ok()
    }

    /// Index of `a ∘ b`.
    pub fn compose(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order() + b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.compose(a, x);
            k += 1;
        }
        k
    }

    pub fn all(&self) -> SubgroupIdx {
        (0..self.order()).collect()
    }

    pub fn is_subgroup(&self, h: &[usize]) -> bool {
        let set: HashSet<usize> = h.iter().copied().collect();
        set.contains(&self.identity)
            && h.iter().all(|&a| h.iter().all(|&b| set.contains(&self.compose(a, b))))
    }

    pub fn is_normal(&self, h: &[usize]) -> bool {
        let set: HashSet<usize> = h.iter().copied().collect();
        (0..self.order()).all(|g| {
            h.iter()
                .all(|&x| set.contains(&self.compose(self.compose(g, x), self.inverse(g))))
        })
    }

    /// Cosets `gN` of a normal subgroup, each represented by its least element index.
    pub fn coset_representatives(&self, normal: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order()];
        let mut reps = Vec::new();
        for g in 0..self.order() {
            if seen[g] {
                continue;
            }
            reps.push(g);
            for &x in normal {
                seen[self.compose(g, x)] = true;
            }
        }
        reps
    }

    /// Automorphisms of a subgroup, in index order.
    pub fn members<'a>(&'a self, h: &'a [usize]) -> impl Iterator<Item = &'a RingAutomorphism> + 'a {
        h.iter().map(move |&i| &self.elements[i])
    }

    /// The unique normal subgroup of order `m` (`|G| = pˢm`, `p ∤ m`), if it exists.
    ///
    /// It is exactly the set of elements whose order is prime to `p`.
    pub fn p_normal_complement(&self, p: u64) -> Result<Option<SubgroupIdx>> {
        let n = self.order() as u64;
        if !n.is_multiple_of(p) {
            return Err(Error::NotDividing { p, n });
        }
        let mut m = n;
        while m.is_multiple_of(p) {
            m /= p;
        }
        let census: SubgroupIdx = (0..self.order())
            .filter(|&a| !(self.element_order(a) as u64).is_multiple_of(p))
            .collect();
        let ok = census.len() as u64 == m && self.is_subgroup(&census) && self.is_normal(&census);
        Ok(ok.then_some(census))
    }

    /// Subgroup restricted to a subset of indices, as a standalone group.
    pub fn subgroup(&self, ring: &FiniteRing, h: &[usize]) -> AutomorphismGroup {
        let elements: Vec<RingAutomorphism> = h.iter().map(|&i| self.elements[i].clone()).collect();
        let mut sorted = elements.clone();
        sorted.sort();
        AutomorphismGroup::from_elements(ring, sorted, &elements)
    }
}

/// Elements fixed by every given automorphism.
pub fn fixed_subgroup<'a>(
    ring: &FiniteRing,
    auts: impl IntoIterator<Item = &'a RingAutomorphism>,
) -> Subgroup {
    let auts: Vec<&RingAutomorphism> = auts.into_iter().collect();
    let mut s = ring.trivial();
    // the kernel of x ↦ (σ(x) − x)_σ is spanned by its elements; insert only new ones
    for x in ring.elements() {
        if !s.contains(&x) && auts.iter().all(|g| g.apply(ring, &x) == x) {
            s.insert(&x);
        }
    }
    s
}

/// Induced action of `G/N` on the fixed ring `R^N`.
#[derive(Clone, Debug)]
pub struct QuotientAction {
    /// `R^N` as a standalone ring.
    pub ring: FiniteRing,
    pub embedding: SubquotientMap,
    pub group: AutomorphismGroup,
    /// For each element of `G`, the index of its image in `group`.
    pub quotient_map: Vec<usize>,
    /// Least element of each coset of `N`.
    pub coset_representatives: Vec<usize>,
}

pub fn quotient_action(
    ring: &FiniteRing,
    group: &AutomorphismGroup,
    normal: &[usize],
    fixed: &SubringView,
) -> Result<QuotientAction> {
    if !group.is_subgroup(normal) || !group.is_normal(normal) {
        return Err(Error::NotNormal);
    }
    if fixed_subgroup(ring, group.members(normal)) != fixed.subgroup {
        return Err(Error::NotFixedRing);
    }
    let (sub, embedding) = ring.materialize(fixed)?;
    let induced = |g: usize| -> Element {
        let sigma = group.element(g);
        (0..sub.rank())
            .flat_map(|j| {
                let x = embedding.lift(&sub.basis(j));
                embedding.project(&sigma.apply(ring, &x)).expect("G preserves R^N")
            })
            .collect()
    };
    let reps = group.coset_representatives(normal);
    let mut images: Vec<RingAutomorphism> = Vec::with_capacity(group.order());
    for g in 0..group.order() {
        let flat = induced(g);
        let k = sub.rank();
        let imgs: Vec<Element> = (0..k).map(|j| flat[j * k..(j + 1) * k].to_vec()).collect();
        images.push(RingAutomorphism::new(&sub, imgs)?);
    }
    // representative independence on R^N
    for &r in &reps {
        for &x in normal {
            if images[group.compose(r, x)] != images[r] {
                return Err(Error::NotFixedRing);
            }
        }
    }
    let gens: Vec<RingAutomorphism> = reps.iter().map(|&r| images[r].clone()).collect();
    let induced_group = close_group(&sub, &gens, group.order().max(1))?;
    let quotient_map = images
        .iter()
        .map(|s| induced_group.index_of(s).expect("image lies in induced group"))
        .collect();
    Ok(QuotientAction {
        ring: sub,
        embedding,
        group: induced_group,
        quotient_map,
        coset_representatives: reps,
    })
}

/// `h(G) = ∏_{i=1}^{n} (C(n,i) + 1)` for `n = |G|`.
pub fn h_constant(n: u64) -> BigUint {
    let mut binom = BigUint::one();
    let mut h = BigUint::one();
    for i in 1..=n {
        binom = binom * BigUint::from(n - i + 1) / BigUint::from(i);
        h *= &binom + BigUint::one();
    }
    h
}

pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// `Some(p)` when `n = pˢ` with `s ≥ 1`.
pub fn prime_power_base(n: u64) -> Option<u64> {
    match prime_factors(n).as_slice() {
        [p] => Some(*p),
        _ => None,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FixedPoint {
    Nonzero(Element),
    ZeroOnly,
}

/// Additive automorphism of an abelian group given by generator images.
fn additive_automorphism(v: &AdditiveGroup, images: &[Element]) -> Result<Vec<Element>> {
    let k = v.rank();
    if images.len() != k || images.iter().any(|x| x.len() != k) {
        return Err(Error::DimensionMismatch(k));
    }
    let images: Vec<Element> = images.iter().map(|x| v.reduce(x)).collect();
    for (i, img) in images.iter().enumerate() {
        if !v.is_zero(&v.scale(v.orders()[i] as i128, img)) {
            return Err(Error::NotAutomorphism(format!("image of generator {i} has wrong order")));
        }
    }
    if !v.span(&images).is_full() {
        return Err(Error::NotAutomorphism("not bijective".into()));
    }
    Ok(images)
}

/// Closure of additive automorphisms of `v` under composition (identity included).
pub fn additive_closure(v: &AdditiveGroup, gens: &[Vec<Element>], cap: usize) -> Result<Vec<Vec<Element>>> {
    let gens = gens
        .iter()
        .map(|g| additive_automorphism(v, g))
        .collect::<Result<Vec<_>>>()?;
    let id: Vec<Element> = (0..v.rank()).map(|i| v.basis(i)).collect();
    let mut seen: BTreeSet<Vec<Element>> = BTreeSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in &gens {
            let y: Vec<Element> = x.iter().map(|img| v.apply(g, img)).collect();
            if seen.insert(y.clone()) {
                if seen.len() > cap {
                    return Err(Error::GroupTooLarge(cap));
                }
                queue.push_back(y);
            }
        }
    }
    Ok(seen.into_iter().collect())
}

/// A nonzero element of `V` fixed by the `p`-group generated by `gens`.
///
/// `p` is read off the group order, which must be a nontrivial prime power;
/// `V` must be a `p`-group. Returns `ZeroOnly` only if no nonzero fixed
/// element exists, which for nonzero `V` cannot happen.
pub fn p_group_fixed_point(v: &AdditiveGroup, gens: &[Vec<Element>]) -> Result<FixedPoint> {
    let group = additive_closure(v, gens, 1 << 16)?;
    let n = group.len() as u64;
    let p = prime_power_base(n).ok_or(Error::NotPGroup(n))?;
    let exp = v.exponent();
    if exp != 1 && prime_power_base(exp) != Some(p) {
        return Err(Error::NotPModule(p));
    }
    let gens: Vec<Vec<Element>> = gens.iter().map(|g| v.reduce_all(g)).collect();
    Ok(v
        .elements()
        .skip(1)
        .find(|x| gens.iter().all(|g| &v.apply(g, x) == x))
        .map_or(FixedPoint::ZeroOnly, FixedPoint::Nonzero))
}

impl AdditiveGroup {
    fn reduce_all(&self, xs: &[Element]) -> Vec<Element> {
        xs.iter().map(|x| self.reduce(x)).collect()
    }
}
