//! Subgroups of finite abelian groups `⊕ Z/dᵢ`.
//!
//! A subgroup `H` is stored through its full preimage lattice `L ⊆ Zᵏ`
//! (which always contains `⊕ dᵢZ`), kept in canonical Hermite normal form.
//! Two subgroups are equal exactly when their stored rows are equal, so the
//! type can be hashed and ordered directly.

use std::fmt;

/// Extended gcd on non-negative inputs: returns `(g, a, b)` with `a·x + b·y = g`.
pub(crate) fn ext_gcd(x: i128, y: i128) -> (i128, i128, i128) {
    let (mut old_r, mut r) = (x, y);
    let (mut old_s, mut s) = (1i128, 0i128);
    let (mut old_t, mut t) = (0i128, 1i128);
    while r != 0 {
        let q = old_r.div_euclid(r);
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    if old_r < 0 {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

pub fn gcd(a: u64, b: u64) -> u64 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

/// Subgroup of `⊕ Z/dᵢ` in Hermite normal form.
///
/// Row `i` has zeros before column `i`, a pivot dividing `dᵢ` at column `i`,
/// and entries `0 ≤ h[r][i] < h[i][i]` above each pivot.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subgroup {
    orders: Vec<u64>,
    rows: Vec<Vec<u64>>,
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Subgroup")
            .field("order", &self.order())
            .field("generators", &self.generators())
            .finish()
    }
}

impl Subgroup {
    pub fn zero(orders: &[u64]) -> Self {
        let k = orders.len();
        let rows = (0..k)
            .map(|i| {
                let mut r = vec![0; k];
                r[i] = orders[i];
                r
            })
            .collect();
        Subgroup { orders: orders.to_vec(), rows }
    }

    pub fn full(orders: &[u64]) -> Self {
        let k = orders.len();
        let rows = (0..k)
            .map(|i| {
                let mut r = vec![0; k];
                r[i] = 1;
                r
            })
            .collect();
        Subgroup { orders: orders.to_vec(), rows }
    }

    pub fn span<'a, I>(orders: &[u64], gens: I) -> Self
    where
        I: IntoIterator<Item = &'a [u64]>,
    {
        let mut s = Subgroup::zero(orders);
        for g in gens {
            s.insert(g);
        }
        s
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = u64> + '_ {
        (0..self.rank()).map(move |i| self.rows[i][i])
    }

    /// Rows of the Hermite basis (lattice vectors, not reduced mod `dᵢ` at the pivot).
    pub fn hermite_rows(&self) -> &[Vec<u64>] {
        &self.rows
    }

    pub fn order(&self) -> u64 {
        self.orders
            .iter()
            .zip(self.pivots())
            .map(|(d, p)| d / p)
            .product()
    }

    pub fn is_zero(&self) -> bool {
        self.order() == 1
    }

    pub fn is_full(&self) -> bool {
        self.pivots().all(|p| p == 1)
    }

    /// Nonzero Hermite rows reduced into the group; these generate the subgroup.
    pub fn generators(&self) -> Vec<Vec<u64>> {
        (0..self.rank())
            .filter(|&i| self.rows[i][i] < self.orders[i])
            .map(|i| self.rows[i].clone())
            .collect()
    }

    fn reduce_tail(&self, v: &mut [i128], from: usize) {
        for j in from..v.len() {
            v[j] = v[j].rem_euclid(self.orders[j] as i128);
        }
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        let k = self.rank();
        let mut w: Vec<i128> = v.iter().map(|&x| x as i128).collect();
        self.reduce_tail(&mut w, 0);
        for i in 0..k {
            let p = self.rows[i][i] as i128;
            if w[i] % p != 0 {
                return false;
            }
            let q = w[i] / p;
            if q != 0 {
                for j in i..k {
                    w[j] -= q * self.rows[i][j] as i128;
                }
                w[i] = 0;
                self.reduce_tail(&mut w, i + 1);
            }
        }
        true
    }

    /// Canonical representative of the coset `v + H`.
    pub fn coset_rep(&self, v: &[u64]) -> Vec<u64> {
        let k = self.rank();
        let mut w: Vec<i128> = v.iter().map(|&x| x as i128).collect();
        self.reduce_tail(&mut w, 0);
        for i in 0..k {
            let p = self.rows[i][i] as i128;
            let q = w[i].div_euclid(p);
            if q != 0 {
                for j in i..k {
                    w[j] -= q * self.rows[i][j] as i128;
                }
                self.reduce_tail(&mut w, i + 1);
            }
        }
        w.into_iter().map(|x| x as u64).collect()
    }

    /// Adds `v` to the subgroup. Returns whether the subgroup grew.
    pub fn insert(&mut self, v: &[u64]) -> bool {
        if self.contains(v) {
            return false;
        }
        let k = self.rank();
        let mut w: Vec<i128> = v.iter().map(|&x| x as i128).collect();
        self.reduce_tail(&mut w, 0);
        for i in 0..k {
            let wi = w[i].rem_euclid(self.orders[i] as i128);
            w[i] = wi;
            if wi == 0 {
                continue;
            }
            let row: Vec<i128> = self.rows[i].iter().map(|&x| x as i128).collect();
            let p = row[i];
            let (g, a, b) = ext_gcd(p, wi);
            let (pg, wg) = (p / g, wi / g);
            let mut new_row = vec![0i128; k];
            let mut rest = vec![0i128; k];
            for j in i..k {
                new_row[j] = a * row[j] + b * w[j];
                rest[j] = pg * w[j] - wg * row[j];
            }
            new_row[i] = g;
            rest[i] = 0;
            self.reduce_tail(&mut new_row, i + 1);
            self.reduce_tail(&mut rest, i + 1);
            self.rows[i] = new_row.into_iter().map(|x| x as u64).collect();
            w = rest;
        }
        self.normalize();
        true
    }

    fn normalize(&mut self) {
        let k = self.rank();
        for j in 0..k {
            let p = self.rows[j][j];
            for i in 0..j {
                let q = self.rows[i][j] / p;
                if q == 0 {
                    continue;
                }
                let mut r: Vec<i128> = self.rows[i].iter().map(|&x| x as i128).collect();
                for c in j..k {
                    r[c] -= q as i128 * self.rows[j][c] as i128;
                }
                self.reduce_tail(&mut r, j + 1);
                self.rows[i] = r.into_iter().map(|x| x as u64).collect();
            }
        }
    }

    pub fn join(&self, other: &Subgroup) -> Subgroup {
        let mut s = self.clone();
        for g in other.generators() {
            s.insert(&g);
        }
        s
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.generators().iter().all(|g| other.contains(g))
    }

    pub fn intersect(&self, other: &Subgroup) -> Subgroup {
        let (small, big) = if self.order() <= other.order() {
            (self, other)
        } else {
            (other, self)
        };
        let mut s = Subgroup::zero(&self.orders);
        for x in small.elements() {
            if big.contains(&x) {
                s.insert(&x);
            }
        }
        s
    }

    /// All elements, in lexicographic order of their Hermite coefficients.
    pub fn elements(&self) -> Vec<Vec<u64>> {
        let k = self.rank();
        let counts: Vec<u64> = (0..k).map(|i| self.orders[i] / self.rows[i][i]).collect();
        let total: u64 = counts.iter().product();
        let mut out = Vec::with_capacity(total as usize);
        let mut coef = vec![0u64; k];
        for _ in 0..total {
            let mut v = vec![0u64; k];
            for (i, &c) in coef.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                for j in i..k {
                    v[j] = (v[j] as u128 + c as u128 * self.rows[i][j] as u128)
                        .rem_euclid(self.orders[j] as u128) as u64;
                }
            }
            out.push(v);
            for i in (0..k).rev() {
                coef[i] += 1;
                if coef[i] < counts[i] {
                    break;
                }
                coef[i] = 0;
            }
        }
        out
    }

    /// Integer coefficients `c` with `Σ cᵢ·rowᵢ = v` (as lattice vectors), if `v ∈ L`.
    pub(crate) fn lattice_coords(&self, v: &[i128]) -> Option<Vec<i128>> {
        let k = self.rank();
        let mut w = v.to_vec();
        let mut c = vec![0i128; k];
        for i in 0..k {
            let p = self.rows[i][i] as i128;
            if w[i] % p != 0 {
                return None;
            }
            c[i] = w[i] / p;
            for j in i..k {
                w[j] -= c[i] * self.rows[i][j] as i128;
            }
        }
        Some(c)
    }
}

/// Smith form of a square nonsingular integer matrix: `U·M·V = diag(s)`.
/// Only `V` and `V⁻¹` are tracked.
struct Smith {
    diag: Vec<i128>,
    v: Vec<Vec<i128>>,
    v_inv: Vec<Vec<i128>>,
}

fn identity(k: usize) -> Vec<Vec<i128>> {
    (0..k)
        .map(|i| (0..k).map(|j| i128::from(i == j)).collect())
        .collect()
}

fn smith(mut m: Vec<Vec<i128>>) -> Smith {
    let k = m.len();
    let mut v = identity(k);
    let mut v_inv = identity(k);

    // column op: col a <- x·col a + y·col b ; col b <- z·col a + w·col b  (det = 1)
    let col_op = |m: &mut Vec<Vec<i128>>,
                  v: &mut Vec<Vec<i128>>,
                  v_inv: &mut Vec<Vec<i128>>,
                  a: usize,
                  b: usize,
                  (x, y, z, w): (i128, i128, i128, i128)| {
        for row in m.iter_mut().chain(v.iter_mut()) {
            let (ca, cb) = (row[a], row[b]);
            row[a] = x * ca + y * cb;
            row[b] = z * ca + w * cb;
        }
        // inverse acts on rows of V⁻¹: [[w, -y], [-z, x]] applied to rows a, b
        let (ra, rb) = (v_inv[a].clone(), v_inv[b].clone());
        for c in 0..ra.len() {
            v_inv[a][c] = w * ra[c] - z * rb[c];
            v_inv[b][c] = -y * ra[c] + x * rb[c];
        }
    };
    let row_op = |m: &mut Vec<Vec<i128>>, a: usize, b: usize, (x, y, z, w): (i128, i128, i128, i128)| {
        let (ra, rb) = (m[a].clone(), m[b].clone());
        for c in 0..ra.len() {
            m[a][c] = x * ra[c] + y * rb[c];
            m[b][c] = z * ra[c] + w * rb[c];
        }
    };

    for t in 0..k {
        loop {
            // choose the smallest nonzero entry in the trailing block as pivot
            let mut best: Option<(usize, usize)> = None;
            for i in t..k {
                for j in t..k {
                    if m[i][j] != 0
                        && best.is_none_or(|(bi, bj)| m[i][j].abs() < m[bi][bj].abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else { break };
            if bi != t {
                m.swap(bi, t);
            }
            if bj != t {
                for row in m.iter_mut().chain(v.iter_mut()) {
                    row.swap(t, bj);
                }
                v_inv.swap(t, bj);
            }
            let mut clean = true;
            for j in t + 1..k {
                if m[t][j] != 0 {
                    let (p, e) = (m[t][t], m[t][j]);
                    if e % p == 0 {
                        col_op(&mut m, &mut v, &mut v_inv, t, j, (1, 0, -e / p, 1));
                    } else {
                        let (g, a, b) = ext_gcd(p, e);
                        col_op(&mut m, &mut v, &mut v_inv, t, j, (a, b, -e / g, p / g));
                        clean = false;
                    }
                }
            }
            for i in t + 1..k {
                if m[i][t] != 0 {
                    let (p, e) = (m[t][t], m[i][t]);
                    if e % p == 0 {
                        row_op(&mut m, t, i, (1, 0, -e / p, 1));
                    } else {
                        let (g, a, b) = ext_gcd(p, e);
                        row_op(&mut m, t, i, (a, b, -e / g, p / g));
                        clean = false;
                    }
                }
            }
            if !clean {
                continue;
            }
            // enforce divisibility on the trailing block
            let p = m[t][t];
            let bad = (t + 1..k).find_map(|i| (t + 1..k).find(|&j| m[i][j] % p != 0).map(|j| (i, j)));
            match bad {
                Some((i, _)) => {
                    let ri = m[i].clone();
                    for c in 0..k {
                        m[t][c] += ri[c];
                    }
                }
                None => break,
            }
        }
        if m[t][t] < 0 {
            for row in m.iter_mut() {
                row[t] = -row[t];
            }
            for row in v.iter_mut() {
                row[t] = -row[t];
            }
            for c in 0..k {
                v_inv[t][c] = -v_inv[t][c];
            }
        }
    }
    let diag = (0..k).map(|i| m[i][i]).collect();
    Smith { diag, v, v_inv }
}

/// Presentation of a subquotient `upper / lower` of `⊕ Z/dᵢ` as `⊕ Z/sⱼ`.
///
/// `generators[j]` is a representative in the ambient group of the `j`-th
/// cyclic factor; [`Presentation::coords`] maps an element of `upper` to its
/// coordinates in the presentation.
#[derive(Clone, Debug)]
pub struct Presentation {
    upper: Subgroup,
    kept: Vec<usize>,
    orders: Vec<u64>,
    generators: Vec<Vec<u64>>,
    v: Vec<Vec<i128>>,
}

impl Presentation {
    pub fn new(upper: &Subgroup, lower: &Subgroup) -> Presentation {
        let k = upper.rank();
        // lower rows in upper-lattice coordinates
        let m: Vec<Vec<i128>> = lower
            .rows
            .iter()
            .map(|r| {
                let w: Vec<i128> = r.iter().map(|&x| x as i128).collect();
                upper
                    .lattice_coords(&w)
                    .expect("lower subgroup must lie inside upper subgroup")
            })
            .collect();
        let s = smith(m);
        let kept: Vec<usize> = (0..k).filter(|&j| s.diag[j] != 1).collect();
        let orders = kept.iter().map(|&j| s.diag[j] as u64).collect();
        let generators = kept
            .iter()
            .map(|&j| {
                let mut g = vec![0i128; k];
                for (r, row) in upper.rows.iter().enumerate() {
                    let c = s.v_inv[j][r];
                    if c != 0 {
                        for col in 0..k {
                            g[col] += c * row[col] as i128;
                        }
                    }
                }
                g.iter()
                    .zip(&upper.orders)
                    .map(|(&x, &d)| x.rem_euclid(d as i128) as u64)
                    .collect()
            })
            .collect();
        Presentation {
            upper: upper.clone(),
            kept,
            orders,
            generators,
            v: s.v,
        }
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn generators(&self) -> &[Vec<u64>] {
        &self.generators
    }

    /// Coordinates of `x` (an element of the upper subgroup), or `None` if `x ∉ upper`.
    pub fn coords(&self, x: &[u64]) -> Option<Vec<u64>> {
        let w: Vec<i128> = x.iter().map(|&a| a as i128).collect();
        let c = self.upper.lattice_coords(&w)?;
        Some(
            self.kept
                .iter()
                .zip(&self.orders)
                .map(|(&j, &s)| {
                    let y: i128 = (0..c.len()).map(|r| c[r] * self.v[r][j]).sum();
                    y.rem_euclid(s as i128) as u64
                })
                .collect(),
        )
    }
}
