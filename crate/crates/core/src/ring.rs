//! Finite, possibly non-unital rings given by structure constants.
//!
//! The additive group is `⊕ Z/dᵢ` with generators `eᵢ`; multiplication is
//! stored as the products `eᵢ·eⱼ` and extended bilinearly.

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::lattice::{lcm, Presentation, Subgroup};

/// Coordinates of a ring element, coordinate `i` reduced mod `dᵢ`.
pub type Element = Vec<u64>;

/// Full addition/multiplication tables are kept for rings up to this order.
pub const TABLE_CAP: u64 = 512;
/// Identity detection scans elements only up to this order.
const IDENTITY_SCAN_CAP: u64 = 1 << 20;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AdditiveGroup {
    orders: Vec<u64>,
}

impl AdditiveGroup {
    pub fn new(orders: Vec<u64>) -> Result<Self> {
        if let Some(&d) = orders.iter().find(|&&d| d < 2) {
            return Err(Error::InvalidOrder(d));
        }
        Ok(AdditiveGroup { orders })
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    pub fn order(&self) -> u64 {
        self.orders.iter().product()
    }

    pub fn exponent(&self) -> u64 {
        self.orders.iter().fold(1, |acc, &d| lcm(acc, d))
    }

    pub fn zero(&self) -> Element {
        vec![0; self.rank()]
    }

    pub fn basis(&self, i: usize) -> Element {
        let mut e = self.zero();
        e[i] = 1 % self.orders[i];
        e
    }

    pub fn reduce(&self, x: &[u64]) -> Element {
        x.iter().zip(&self.orders).map(|(a, d)| a % d).collect()
    }

    pub fn add(&self, a: &[u64], b: &[u64]) -> Element {
        a.iter()
            .zip(b)
            .zip(&self.orders)
            .map(|((x, y), d)| ((*x as u128 + *y as u128) % *d as u128) as u64)
            .collect()
    }

    pub fn neg(&self, a: &[u64]) -> Element {
        a.iter()
            .zip(&self.orders)
            .map(|(x, d)| if *x == 0 { 0 } else { d - x })
            .collect()
    }

    pub fn sub(&self, a: &[u64], b: &[u64]) -> Element {
        self.add(a, &self.neg(b))
    }

    /// `n·a` for an integer `n`.
    pub fn scale(&self, n: i128, a: &[u64]) -> Element {
        a.iter()
            .zip(&self.orders)
            .map(|(x, d)| {
                let d = *d as i128;
                ((n.rem_euclid(d)) * (*x as i128)).rem_euclid(d) as u64
            })
            .collect()
    }

    pub fn is_zero(&self, a: &[u64]) -> bool {
        a.iter().all(|&x| x == 0)
    }

    /// Position of `a` in lexicographic enumeration order.
    pub fn index_of(&self, a: &[u64]) -> usize {
        a.iter()
            .zip(&self.orders)
            .fold(0usize, |acc, (x, d)| acc * *d as usize + *x as usize)
    }

    pub fn element_at(&self, mut idx: usize) -> Element {
        let mut out = vec![0; self.rank()];
        for i in (0..self.rank()).rev() {
            let d = self.orders[i] as usize;
            out[i] = (idx % d) as u64;
            idx /= d;
        }
        out
    }

    /// All elements in lexicographic order.
    pub fn elements(&self) -> impl Iterator<Item = Element> + '_ {
        (0..self.order() as usize).map(move |i| self.element_at(i))
    }

    pub fn full(&self) -> Subgroup {
        Subgroup::full(&self.orders)
    }

    pub fn trivial(&self) -> Subgroup {
        Subgroup::zero(&self.orders)
    }

    pub fn span<'a>(&self, gens: impl IntoIterator<Item = &'a Element>) -> Subgroup {
        Subgroup::span(&self.orders, gens.into_iter().map(|g| g.as_slice()))
    }

    /// Additive map given by images of generators.
    pub fn apply(&self, images: &[Element], x: &[u64]) -> Element {
        let mut out = vec![0u128; self.rank()];
        for (i, &c) in x.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (l, o) in out.iter_mut().enumerate() {
                *o = (*o + c as u128 * images[i][l] as u128) % self.orders[l] as u128;
            }
        }
        out.into_iter().map(|v| v as u64).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Left,
    Right,
    TwoSided,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Left => "left",
            Side::Right => "right",
            Side::TwoSided => "two-sided",
        })
    }
}

/// Sided ideal, stored as its additive subgroup.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ideal {
    pub side: Side,
    pub subgroup: Subgroup,
}

/// Additive subgroup closed under multiplication.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SubringView {
    pub subgroup: Subgroup,
}

/// Closure data: elements acting on the left and right, and additive maps.
#[derive(Clone, Debug, Default)]
pub struct Actors {
    pub left: Vec<Element>,
    pub right: Vec<Element>,
    pub maps: Vec<Vec<Element>>,
}

struct Tables {
    add: Vec<u16>,
    mul: Vec<u16>,
}

pub struct FiniteRing {
    group: AdditiveGroup,
    table: Vec<Vec<Element>>,
    identity: Option<Element>,
    tables: OnceLock<Option<Arc<Tables>>>,
}

impl Clone for FiniteRing {
    fn clone(&self) -> Self {
        FiniteRing {
            group: self.group.clone(),
            table: self.table.clone(),
            identity: self.identity.clone(),
            tables: self.tables.clone(),
        }
    }
}

impl PartialEq for FiniteRing {
    fn eq(&self, other: &Self) -> bool {
        self.group == other.group && self.table == other.table && self.identity == other.identity
    }
}

impl Eq for FiniteRing {}

impl fmt::Debug for FiniteRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteRing")
            .field("orders", &self.group.orders)
            .field("table", &self.table)
            .field("identity", &self.identity)
            .finish()
    }
}

impl FiniteRing {
    /// Validates a structure-constant table.
    ///
    /// When `identity` is `None` the identity is searched for (rings up to
    /// order 2²⁰); when it is given it must be a two-sided identity.
    pub fn validate(
        orders: Vec<u64>,
        table: Vec<Vec<Element>>,
        identity: Option<Element>,
    ) -> Result<FiniteRing> {
        let group = AdditiveGroup::new(orders)?;
        let k = group.rank();
        if table.len() != k || table.iter().any(|row| row.len() != k) {
            return Err(Error::DimensionMismatch(k));
        }
        if table.iter().flatten().any(|c| c.len() != k) {
            return Err(Error::DimensionMismatch(k));
        }
        let table: Vec<Vec<Element>> = table
            .iter()
            .map(|row| row.iter().map(|c| group.reduce(c)).collect())
            .collect();
        for i in 0..k {
            for j in 0..k {
                let c = &table[i][j];
                let di = group.orders[i] as i128;
                let dj = group.orders[j] as i128;
                if !group.is_zero(&group.scale(di, c)) || !group.is_zero(&group.scale(dj, c)) {
                    return Err(Error::IllDefined { i, j });
                }
            }
        }
        let mut ring = FiniteRing {
            group,
            table,
            identity: None,
            tables: OnceLock::new(),
        };
        for i in 0..k {
            for j in 0..k {
                let ij = ring.table[i][j].clone();
                for l in 0..k {
                    let lhs = ring.mul(&ij, &ring.group.basis(l));
                    let rhs = ring.mul(&ring.group.basis(i), &ring.table[j][l]);
                    if lhs != rhs {
                        return Err(Error::NonAssociative { i, j, l });
                    }
                }
            }
        }
        match identity {
            Some(u) => {
                let u = ring.group.reduce(&u);
                if u.len() != k {
                    return Err(Error::DimensionMismatch(k));
                }
                if !ring.is_identity(&u) {
                    return Err(Error::NotIdentity);
                }
                ring.identity = Some(u);
            }
            None => ring.identity = ring.find_identity(),
        }
        Ok(ring)
    }

    fn is_identity(&self, u: &[u64]) -> bool {
        (0..self.rank()).all(|i| {
            let e = self.group.basis(i);
            self.mul(u, &e) == e && self.mul(&e, u) == e
        })
    }

    fn find_identity(&self) -> Option<Element> {
        if self.order() > IDENTITY_SCAN_CAP {
            return None;
        }
        self.group.elements().find(|u| self.is_identity(u))
    }

    pub fn additive(&self) -> &AdditiveGroup {
        &self.group
    }

    pub fn orders(&self) -> &[u64] {
        self.group.orders()
    }

    pub fn rank(&self) -> usize {
        self.group.rank()
    }

    pub fn order(&self) -> u64 {
        self.group.order()
    }

    pub fn exponent(&self) -> u64 {
        self.group.exponent()
    }

    pub fn identity(&self) -> Option<&Element> {
        self.identity.as_ref()
    }

    pub fn is_unital(&self) -> bool {
        self.identity.is_some()
    }

    pub fn structure(&self, i: usize, j: usize) -> &Element {
        &self.table[i][j]
    }

    pub fn zero(&self) -> Element {
        self.group.zero()
    }

    pub fn basis(&self, i: usize) -> Element {
        self.group.basis(i)
    }

    pub fn add(&self, a: &[u64], b: &[u64]) -> Element {
        self.group.add(a, b)
    }

    pub fn sub(&self, a: &[u64], b: &[u64]) -> Element {
        self.group.sub(a, b)
    }

    pub fn neg(&self, a: &[u64]) -> Element {
        self.group.neg(a)
    }

    pub fn is_zero(&self, a: &[u64]) -> bool {
        self.group.is_zero(a)
    }

    pub fn mul(&self, a: &[u64], b: &[u64]) -> Element {
        let k = self.rank();
        let mut out = vec![0u128; k];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                if y == 0 {
                    continue;
                }
                let c = x as u128 * y as u128;
                for (l, o) in out.iter_mut().enumerate() {
                    let t = self.table[i][j][l];
                    if t != 0 {
                        let d = self.group.orders[l] as u128;
                        *o = (*o + (c % d) * t as u128) % d;
                    }
                }
            }
        }
        out.into_iter().map(|v| v as u64).collect()
    }

    pub fn elements(&self) -> impl Iterator<Item = Element> + '_ {
        self.group.elements()
    }

    pub fn index_of(&self, a: &[u64]) -> usize {
        self.group.index_of(a)
    }

    pub fn element_at(&self, idx: usize) -> Element {
        self.group.element_at(idx)
    }

    fn tables(&self) -> Option<&Tables> {
        self.tables
            .get_or_init(|| {
                (self.order() <= TABLE_CAP).then(|| Arc::new(self.build_tables()))
            })
            .as_deref()
    }

    fn build_tables(&self) -> Tables {
        let n = self.order() as usize;
        let elems: Vec<Element> = self.elements().collect();
        let mut add = vec![0u16; n * n];
        for a in 0..n {
            for b in 0..n {
                add[a * n + b] = self.index_of(&self.add(&elems[a], &elems[b])) as u16;
            }
        }
        // x·y built from x·eⱼ by peeling the last nonzero coordinate of y
        let mut strides = vec![1usize; self.rank()];
        for i in (0..self.rank().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * self.orders()[i + 1] as usize;
        }
        let mut mul = vec![0u16; n * n];
        for x in 0..n {
            let xe: Vec<usize> = (0..self.rank())
                .map(|j| self.index_of(&self.mul(&elems[x], &self.basis(j))))
                .collect();
            for y in 1..n {
                let j = (0..self.rank()).rev().find(|&j| elems[y][j] != 0).unwrap();
                let prev = mul[x * n + y - strides[j]] as usize;
                mul[x * n + y] = add[prev * n + xe[j]];
            }
        }
        Tables { add, mul }
    }

    /// Index-level addition; uses the cached table when the ring is small.
    pub fn add_idx(&self, a: usize, b: usize) -> usize {
        match self.tables() {
            Some(t) => t.add[a * self.order() as usize + b] as usize,
            None => self.index_of(&self.add(&self.element_at(a), &self.element_at(b))),
        }
    }

    pub fn mul_idx(&self, a: usize, b: usize) -> usize {
        match self.tables() {
            Some(t) => t.mul[a * self.order() as usize + b] as usize,
            None => self.index_of(&self.mul(&self.element_at(a), &self.element_at(b))),
        }
    }

    pub fn full(&self) -> Subgroup {
        self.group.full()
    }

    pub fn trivial(&self) -> Subgroup {
        self.group.trivial()
    }

    pub fn span<'a>(&self, gens: impl IntoIterator<Item = &'a Element>) -> Subgroup {
        self.group.span(gens)
    }

    /// Additive generators `e₀,…,e_{k-1}`.
    pub fn basis_elements(&self) -> Vec<Element> {
        (0..self.rank()).map(|i| self.basis(i)).collect()
    }

    /// Actors for sided-ideal closure over the whole ring.
    pub fn actors(&self, side: Side) -> Actors {
        let b = self.basis_elements();
        match side {
            Side::Left => Actors { left: b, ..Default::default() },
            Side::Right => Actors { right: b, ..Default::default() },
            Side::TwoSided => Actors { left: b.clone(), right: b, maps: vec![] },
        }
    }

    /// Smallest subgroup containing `start` and `seeds` that is closed under the
    /// actors. `start` must already be closed.
    pub fn close(&self, start: &Subgroup, seeds: &[Element], actors: &Actors) -> Subgroup {
        let mut s = start.clone();
        let mut queue: Vec<Element> = Vec::new();
        for x in seeds {
            if s.insert(x) {
                queue.push(x.clone());
            }
        }
        while let Some(v) = queue.pop() {
            let images = actors
                .left
                .iter()
                .map(|a| self.mul(a, &v))
                .chain(actors.right.iter().map(|a| self.mul(&v, a)))
                .chain(actors.maps.iter().map(|m| self.group.apply(m, &v)))
                .collect::<Vec<_>>();
            for w in images {
                if s.insert(&w) {
                    queue.push(w);
                }
            }
        }
        s
    }

    /// Sided ideal generated by `gens`; the generators themselves always lie in it.
    pub fn generated_ideal(&self, gens: &[Element], side: Side) -> Ideal {
        Ideal {
            side,
            subgroup: self.close(&self.trivial(), gens, &self.actors(side)),
        }
    }

    pub fn is_closed(&self, s: &Subgroup, actors: &Actors) -> bool {
        s.generators().iter().all(|v| {
            actors.left.iter().all(|a| s.contains(&self.mul(a, v)))
                && actors.right.iter().all(|a| s.contains(&self.mul(v, a)))
                && actors.maps.iter().all(|m| s.contains(&self.group.apply(m, v)))
        })
    }

    pub fn is_ideal(&self, s: &Subgroup, side: Side) -> bool {
        self.is_closed(s, &self.actors(side))
    }

    /// Additive span of all products `a·b` with `a ∈ A`, `b ∈ B`.
    pub fn product(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        let ga = a.generators();
        let gb = b.generators();
        let mut s = self.trivial();
        for x in &ga {
            for y in &gb {
                s.insert(&self.mul(x, y));
            }
        }
        s
    }

    pub fn is_subring(&self, s: &Subgroup) -> bool {
        let g = s.generators();
        g.iter().all(|x| g.iter().all(|y| s.contains(&self.mul(x, y))))
    }

    pub fn subring(&self, s: Subgroup) -> Option<SubringView> {
        self.is_subring(&s).then_some(SubringView { subgroup: s })
    }

    /// Multiplicative order data for the additive map `r ↦ n·r`.
    pub fn scale(&self, n: i128, a: &[u64]) -> Element {
        self.group.scale(n, a)
    }

    /// Two-sided unit inverse, if `u` is a unit.
    pub fn inverse(&self, u: &[u64]) -> Option<Element> {
        let one = self.identity.as_ref()?;
        self.elements()
            .find(|v| &self.mul(u, v) == one && &self.mul(v, u) == one)
    }

    pub fn units(&self) -> Vec<Element> {
        let Some(one) = self.identity.as_ref() else {
            return vec![];
        };
        let n = self.order() as usize;
        let one_idx = self.index_of(one);
        (0..n)
            .filter(|&u| (0..n).any(|v| self.mul_idx(u, v) == one_idx && self.mul_idx(v, u) == one_idx))
            .map(|u| self.element_at(u))
            .collect()
    }

    /// Reorders generators so that cyclic orders are non-decreasing (stable).
    /// Returns the new ring and the permutation `new index -> old index`.
    pub fn sorted_by_order(&self) -> (FiniteRing, Vec<usize>) {
        let mut perm: Vec<usize> = (0..self.rank()).collect();
        perm.sort_by_key(|&i| self.orders()[i]);
        let ring = self.permuted(&perm);
        (ring, perm)
    }

    /// Ring with generators renumbered: new generator `a` is old generator `perm[a]`.
    pub fn permuted(&self, perm: &[usize]) -> FiniteRing {
        let orders = perm.iter().map(|&i| self.orders()[i]).collect();
        let move_el = |x: &Element| perm.iter().map(|&i| x[i]).collect::<Element>();
        let table = perm
            .iter()
            .map(|&i| perm.iter().map(|&j| move_el(&self.table[i][j])).collect())
            .collect();
        FiniteRing {
            group: AdditiveGroup { orders },
            table,
            identity: self.identity.as_ref().map(move_el),
            tables: OnceLock::new(),
        }
    }
}

/// A subquotient `upper / lower` of a ring presented as a ring in its own right.
#[derive(Clone, Debug)]
pub struct SubquotientMap {
    presentation: Presentation,
    orders: Vec<u64>,
}

impl SubquotientMap {
    /// Image in the parent of an element of the presented ring (a representative for quotients).
    pub fn lift(&self, y: &[u64]) -> Element {
        let gens = self.presentation.generators();
        let mut out = vec![0u128; self.orders.len()];
        for (j, &c) in y.iter().enumerate() {
            for (l, o) in out.iter_mut().enumerate() {
                *o = (*o + c as u128 * gens[j][l] as u128) % self.orders[l] as u128;
            }
        }
        out.into_iter().map(|v| v as u64).collect()
    }

    /// Coordinates of a parent element; `None` if it is outside the upper subgroup.
    pub fn project(&self, x: &[u64]) -> Option<Element> {
        self.presentation.coords(x)
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }
}

impl FiniteRing {
    fn presented(
        &self,
        upper: &Subgroup,
        lower: &Subgroup,
        identity_hint: Option<Element>,
    ) -> Result<(FiniteRing, SubquotientMap)> {
        let presentation = Presentation::new(upper, lower);
        let map = SubquotientMap {
            presentation,
            orders: self.orders().to_vec(),
        };
        let gens = map.presentation.generators().to_vec();
        let table: Vec<Vec<Element>> = gens
            .iter()
            .map(|a| {
                gens.iter()
                    .map(|b| map.project(&self.mul(a, b)).expect("product leaves subring"))
                    .collect()
            })
            .collect();
        let orders = map.presentation.orders().to_vec();
        let identity = identity_hint.and_then(|u| map.project(&u));
        let ring = FiniteRing::validate(orders, table, identity)?;
        Ok((ring, map))
    }

    /// `R/I` on coset representatives, with the projection.
    pub fn quotient_by_ideal(&self, ideal: &Ideal) -> Result<(FiniteRing, SubquotientMap)> {
        if ideal.side != Side::TwoSided {
            return Err(Error::WrongSide);
        }
        self.presented(&self.full(), &ideal.subgroup, self.identity.clone())
    }

    /// Quotient by a subgroup that is known to be a two-sided ideal.
    pub fn quotient(&self, ideal: &Subgroup) -> Result<(FiniteRing, SubquotientMap)> {
        self.quotient_by_ideal(&Ideal {
            side: Side::TwoSided,
            subgroup: ideal.clone(),
        })
    }

    /// A subring as a standalone ring together with its embedding.
    pub fn materialize(&self, sub: &SubringView) -> Result<(FiniteRing, SubquotientMap)> {
        let hint = self.identity.clone().filter(|u| sub.subgroup.contains(u));
        self.presented(&sub.subgroup, &self.trivial(), hint)
    }
}

// ---------------------------------------------------------------------------
// constructors

pub fn zero_ring() -> FiniteRing {
    FiniteRing::validate(vec![], vec![], Some(vec![])).expect("zero ring")
}

/// `Z/n` with `e·e = e`.
pub fn cyclic(n: u64) -> Result<FiniteRing> {
    if n == 1 {
        return Ok(zero_ring());
    }
    FiniteRing::validate(vec![n], vec![vec![vec![1]]], Some(vec![1]))
}

/// Ring on the given additive group with all products zero.
pub fn zero_mult_ring(group: &AdditiveGroup) -> FiniteRing {
    let k = group.rank();
    let table = vec![vec![vec![0; k]; k]; k];
    FiniteRing::validate(group.orders().to_vec(), table, None).expect("zero multiplication is valid")
}

pub fn direct_product(rings: &[FiniteRing]) -> Result<FiniteRing> {
    let k: usize = rings.iter().map(|r| r.rank()).sum();
    let mut orders = Vec::with_capacity(k);
    let mut table = vec![vec![vec![0; k]; k]; k];
    let mut offset = 0;
    for r in rings {
        orders.extend_from_slice(r.orders());
        for i in 0..r.rank() {
            for j in 0..r.rank() {
                let c = r.structure(i, j);
                table[offset + i][offset + j][offset..offset + r.rank()].copy_from_slice(c);
            }
        }
        offset += r.rank();
    }
    let identity = rings
        .iter()
        .map(|r| r.identity().cloned())
        .collect::<Option<Vec<_>>>()
        .map(|parts| parts.concat());
    FiniteRing::validate(orders, table, identity)
}

/// `Mₙ(R)` with generators `eᵢ ⊗ E_ab`, indexed `(a·n + b)·k + i`.
pub fn matrix_ring(base: &FiniteRing, n: usize) -> Result<FiniteRing> {
    let one = base.identity().ok_or(Error::NotUnital)?;
    let k = base.rank();
    let dim = n * n * k;
    let idx = |a: usize, b: usize, i: usize| (a * n + b) * k + i;
    let mut orders = vec![0; dim];
    for a in 0..n {
        for b in 0..n {
            for i in 0..k {
                orders[idx(a, b, i)] = base.orders()[i];
            }
        }
    }
    let mut table = vec![vec![vec![0; dim]; dim]; dim];
    for a in 0..n {
        for b in 0..n {
            for d in 0..n {
                for i in 0..k {
                    for j in 0..k {
                        let c = base.structure(i, j);
                        for (l, &cl) in c.iter().enumerate() {
                            table[idx(a, b, i)][idx(b, d, j)][idx(a, d, l)] = cl;
                        }
                    }
                }
            }
        }
    }
    let mut identity = vec![0; dim];
    for a in 0..n {
        for (i, &c) in one.iter().enumerate() {
            identity[idx(a, a, i)] = c;
        }
    }
    FiniteRing::validate(orders, table, Some(identity))
}

/// Group ring `R[H]` for a group given by its Cayley table; generators `eᵢ ⊗ h` indexed `h·k + i`.
pub fn group_ring(base: &FiniteRing, cayley: &[Vec<usize>]) -> Result<FiniteRing> {
    let one = base.identity().ok_or(Error::NotUnital)?;
    let m = cayley.len();
    if cayley.iter().any(|row| row.len() != m || row.iter().any(|&x| x >= m)) {
        return Err(Error::DimensionMismatch(m));
    }
    let unit = (0..m)
        .find(|&e| (0..m).all(|x| cayley[e][x] == x && cayley[x][e] == x))
        .ok_or(Error::NotIdentity)?;
    let k = base.rank();
    let dim = m * k;
    let mut orders = vec![0; dim];
    for h in 0..m {
        orders[h * k..(h + 1) * k].copy_from_slice(base.orders());
    }
    let mut table = vec![vec![vec![0; dim]; dim]; dim];
    for g in 0..m {
        for h in 0..m {
            let gh = cayley[g][h];
            for i in 0..k {
                for j in 0..k {
                    let c = base.structure(i, j);
                    table[g * k + i][h * k + j][gh * k..(gh + 1) * k].copy_from_slice(c);
                }
            }
        }
    }
    let mut identity = vec![0; dim];
    identity[unit * k..(unit + 1) * k].copy_from_slice(one);
    FiniteRing::validate(orders, table, Some(identity))
}

/// `R′ = Z/e ⊕ R` with `(m,x)(n,y) = (mn, my + nx + xy)`, `e` the additive exponent.
/// Generator 0 is the adjoined identity; generator `i+1` is `eᵢ` of `R`.
pub fn unitalize(ring: &FiniteRing) -> FiniteRing {
    let e = ring.exponent();
    if e == 1 {
        return zero_ring();
    }
    let k = ring.rank() + 1;
    let mut orders = vec![e];
    orders.extend_from_slice(ring.orders());
    let mut table = vec![vec![vec![0; k]; k]; k];
    table[0][0][0] = 1;
    for i in 1..k {
        table[0][i][i] = 1;
        table[i][0][i] = 1;
        for j in 1..k {
            table[i][j][1..].copy_from_slice(ring.structure(i - 1, j - 1));
        }
    }
    let mut identity = vec![0; k];
    identity[0] = 1;
    FiniteRing::validate(orders, table, Some(identity)).expect("unitalization is a ring")
}

/// Embeds `R` into its unitalization.
pub fn unitalization_embedding(x: &[u64]) -> Element {
    let mut v = vec![0];
    v.extend_from_slice(x);
    v
}

/// `F_{p^k}` as `F_p[x]/(f)` for the first monic irreducible `f` of degree `k`
/// in lexicographic coefficient order.
pub fn galois_field(p: u64, k: usize) -> Result<FiniteRing> {
    if k == 1 {
        return cyclic(p);
    }
    let f = first_irreducible(p, k);
    // x^m reduced, for m < 2k-1
    let mut powers: Vec<Vec<u64>> = Vec::new();
    for m in 0..(2 * k - 1) {
        let mut v = vec![0u64; k];
        if m < k {
            v[m] = 1;
        } else {
            let prev = &powers[m - 1];
            // x·prev, then reduce x^k = -Σ f_i x^i
            let top = prev[k - 1];
            for i in (1..k).rev() {
                v[i] = prev[i - 1];
            }
            v[0] = 0;
            for i in 0..k {
                v[i] = (v[i] + (p - f[i] % p) * top) % p;
            }
        }
        powers.push(v);
    }
    let table = (0..k)
        .map(|i| (0..k).map(|j| powers[i + j].clone()).collect())
        .collect();
    let mut one = vec![0; k];
    one[0] = 1;
    FiniteRing::validate(vec![p; k], table, Some(one))
}

fn poly_rem(mut a: Vec<u64>, b: &[u64], p: u64) -> Vec<u64> {
    // b monic
    let db = b.len() - 1;
    while a.len() > db {
        let lead = *a.last().unwrap() % p;
        let shift = a.len() - 1 - db;
        for i in 0..=db {
            a[shift + i] = (a[shift + i] + p - (lead * b[i]) % p) % p;
        }
        a.pop();
    }
    a
}

fn first_irreducible(p: u64, k: usize) -> Vec<u64> {
    let monic = |deg: usize, code: u64| -> Vec<u64> {
        let mut c = code;
        let mut v = Vec::with_capacity(deg + 1);
        for _ in 0..deg {
            v.push(c % p);
            c /= p;
        }
        v.push(1);
        v
    };
    for code in 0..p.pow(k as u32) {
        let f = monic(k, code);
        let reducible = (1..=k / 2).any(|deg| {
            (0..p.pow(deg as u32)).any(|c| {
                let g = monic(deg, c);
                poly_rem(f.clone(), &g, p).iter().all(|&x| x == 0)
            })
        });
        if !reducible {
            return f[..k].to_vec();
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

/// Upper triangular `n×n` matrices over a unital ring.
pub fn upper_triangular(base: &FiniteRing, n: usize) -> Result<FiniteRing> {
    let full = matrix_ring(base, n)?;
    let k = base.rank();
    let gens: Vec<Element> = (0..n)
        .flat_map(|a| (a..n).flat_map(move |b| (0..k).map(move |i| (a * n + b) * k + i)))
        .map(|g| full.basis(g))
        .collect();
    let sub = full.span(&gens);
    let view = full.subring(sub).expect("upper triangular matrices form a subring");
    Ok(full.materialize(&view)?.0)
}
