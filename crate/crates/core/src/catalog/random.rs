use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{Instance, Provenance};
use crate::groups::{close_group, AutomorphismGroup, RingAutomorphism, DEFAULT_GROUP_CAP};
use crate::lattice::{gcd, lcm};
use crate::ring::{
    cyclic, direct_product, galois_field, group_ring, matrix_ring, upper_triangular, zero_mult_ring, AdditiveGroup,
    Element, FiniteRing,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RandomSpec {
    pub count: usize,
    pub max_order: u64,
    /// Largest number of additive generators for raw structure constants.
    pub max_rank: usize,
    pub seed: u64,
    /// Tables drawn per instance before falling back to a product of known rings.
    pub attempts: usize,
    /// Search nodes spent looking for automorphisms.
    pub aut_budget: usize,
}

impl Default for RandomSpec {
    fn default() -> Self {
        RandomSpec {
            count: 100,
            max_order: 64,
            max_rank: 3,
            seed: 0,
            attempts: 64,
            aut_budget: 20_000,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct RandomStats {
    /// Random tables drawn.
    pub attempted: usize,
    /// Tables that passed validation.
    pub valid: usize,
    /// Instances built from products of known rings.
    pub products: usize,
    /// Instances left with the trivial group because no automorphism was found.
    pub rigid: usize,
}

impl RandomStats {
    pub fn valid_ratio(&self) -> f64 {
        if self.attempted == 0 {
            0.0
        } else {
            self.valid as f64 / self.attempted as f64
        }
    }
}

fn additive_order(orders: &[u64], x: &[u64]) -> u64 {
    orders
        .iter()
        .zip(x)
        .fold(1, |acc, (&d, &c)| lcm(acc, d / gcd(d, c)))
}

fn random_orders(rng: &mut ChaCha8Rng, max_order: u64, max_rank: usize) -> Vec<u64> {
    const CHOICES: [u64; 8] = [2, 2, 3, 3, 4, 5, 8, 9];
    let k = rng.gen_range(1..=max_rank.max(1));
    let mut orders = Vec::new();
    let mut total = 1;
    for _ in 0..k {
        let d = *CHOICES.choose(rng).unwrap();
        if total * d <= max_order {
            orders.push(d);
            total *= d;
        }
    }
    if orders.is_empty() {
        orders.push(2);
    }
    orders
}

/// Random structure constants; with probability one half only products
/// landing on later generators are allowed, which favours nilpotent rings.
fn random_table(rng: &mut ChaCha8Rng, orders: &[u64]) -> Vec<Vec<Element>> {
    let k = orders.len();
    let triangular = rng.gen_bool(0.5);
    let mut table = vec![vec![vec![0; k]; k]; k];
    for i in 0..k {
        for j in 0..k {
            for l in 0..k {
                if triangular && l <= i.max(j) {
                    continue;
                }
                if rng.gen_bool(0.55) {
                    continue;
                }
                // c must be killed by both d_i and d_j modulo d_l
                let g = gcd(orders[l], gcd(orders[i], orders[j]));
                let step = orders[l] / g;
                table[i][j][l] = step * rng.gen_range(0..g);
            }
        }
    }
    table
}

fn known_ring(rng: &mut ChaCha8Rng, max_order: u64) -> FiniteRing {
    loop {
        let r = match rng.gen_range(0..9) {
            0 => cyclic(rng.gen_range(2..=16)).unwrap(),
            1 => galois_field(2, 2).unwrap(),
            2 => galois_field(3, 2).unwrap(),
            3 => zero_mult_ring(&AdditiveGroup::new(vec![*[2, 3, 4].choose(rng).unwrap()]).unwrap()),
            4 => upper_triangular(&cyclic(2).unwrap(), 2).unwrap(),
            5 => matrix_ring(&cyclic(2).unwrap(), 2).unwrap(),
            6 => group_ring(&cyclic(2).unwrap(), &[vec![0, 1], vec![1, 0]]).unwrap(),
            7 => group_ring(&cyclic(3).unwrap(), &[vec![0, 1], vec![1, 0]]).unwrap(),
            _ => zero_mult_ring(&AdditiveGroup::new(vec![2, 2]).unwrap()),
        };
        if r.order() <= max_order {
            return r;
        }
    }
}

fn product_ring(rng: &mut ChaCha8Rng, max_order: u64) -> FiniteRing {
    let a = known_ring(rng, max_order);
    if rng.gen_bool(0.5) && a.order() * 2 <= max_order {
        let b = known_ring(rng, max_order / a.order());
        // a second copy of `a` gives swap automorphisms
        let b = if rng.gen_bool(0.4) && a.order() * a.order() <= max_order {
            a.clone()
        } else {
            b
        };
        direct_product(&[a, b]).unwrap()
    } else {
        a
    }
}

/// Invariants every automorphism preserves, used to prune image candidates.
fn signature(ring: &FiniteRing, x: &[u64]) -> (u64, u64, bool) {
    let sq = ring.mul(x, x);
    (additive_order(ring.orders(), x), additive_order(ring.orders(), &sq), sq == x)
}

/// Backtracking image search over additive generators, in random order.
/// Returns up to `want` distinct nontrivial automorphisms.
pub(crate) fn random_automorphisms(
    ring: &FiniteRing,
    rng: &mut ChaCha8Rng,
    budget: usize,
    want: usize,
) -> Vec<RingAutomorphism> {
    let k = ring.rank();
    let basis = ring.basis_elements();
    let elements: Vec<Element> = ring.elements().collect();
    let candidates: Vec<Vec<Element>> = basis
        .iter()
        .map(|b| {
            let sig = signature(ring, b);
            let mut c: Vec<Element> = elements.iter().filter(|x| signature(ring, x) == sig).cloned().collect();
            c.shuffle(rng);
            c
        })
        .collect();
    // products whose support lies in the first i+1 generators can be checked at depth i
    let support = |x: &Element| x.iter().rposition(|&c| c != 0).map_or(0, |p| p + 1);
    let mut found: Vec<RingAutomorphism> = Vec::new();
    let mut images: Vec<Element> = Vec::with_capacity(k);
    let mut nodes = 0usize;
    let mut stack: Vec<usize> = vec![0];
    while let Some(&pos) = stack.last() {
        let depth = stack.len() - 1;
        if nodes >= budget || found.len() >= want {
            break;
        }
        if pos >= candidates[depth].len() {
            stack.pop();
            images.pop();
            if let Some(p) = stack.last_mut() {
                *p += 1;
            }
            continue;
        }
        nodes += 1;
        images.truncate(depth);
        images.push(candidates[depth][pos].clone());
        let partial_order: u64 = ring.orders()[..=depth].iter().product();
        let mut ok = ring.span(&images).order() == partial_order;
        if ok {
            'pairs: for a in 0..=depth {
                for b in 0..=depth {
                    if a != depth && b != depth {
                        continue;
                    }
                    let c = ring.structure(a, b);
                    if support(c) > depth + 1 {
                        continue;
                    }
                    let lhs = ring.additive().apply(&images, &c[..=depth]);
                    if lhs != ring.mul(&images[a], &images[b]) {
                        ok = false;
                        break 'pairs;
                    }
                }
            }
        }
        if !ok {
            images.pop();
            *stack.last_mut().unwrap() += 1;
            continue;
        }
        if depth + 1 == k {
            if let Ok(sigma) = RingAutomorphism::new(ring, images.clone()) {
                if !sigma.is_identity(ring) && !found.contains(&sigma) {
                    found.push(sigma);
                }
            }
            images.pop();
            *stack.last_mut().unwrap() += 1;
        } else {
            stack.push(0);
        }
    }
    found
}

fn generate(spec: &RandomSpec, index: usize) -> (Instance, RandomStats) {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    rng.set_stream(index as u64);
    let mut stats = RandomStats::default();
    let mut ring = None;
    // two instances in three come from raw tables, the rest from products
    if rng.gen_range(0..3) < 2 {
        for _ in 0..spec.attempts {
            stats.attempted += 1;
            let orders = random_orders(&mut rng, spec.max_order, spec.max_rank);
            let table = random_table(&mut rng, &orders);
            if let Ok(r) = FiniteRing::validate(orders, table, None) {
                stats.valid += 1;
                ring = Some(r);
                break;
            }
        }
    }
    let ring = ring.unwrap_or_else(|| {
        stats.products += 1;
        product_ring(&mut rng, spec.max_order)
    });
    let want = rng.gen_range(1..=2);
    let gens = random_automorphisms(&ring, &mut rng, spec.aut_budget, want);
    let group = close_group(&ring, &gens, DEFAULT_GROUP_CAP)
        .or_else(|_| close_group(&ring, &gens[..1], DEFAULT_GROUP_CAP))
        .unwrap_or_else(|_| AutomorphismGroup::trivial(&ring));
    let rigid = gens.is_empty();
    let group_name = if rigid {
        "trivial".to_string()
    } else {
        format!("random order {}", group.order())
    };
    let mut inst = Instance::new(
        format!("random-{}-{index}", spec.seed),
        group_name,
        ring,
        group,
        Provenance::Random { seed: spec.seed, index },
    );
    inst.derive_tags().expect("generated instance is valid");
    if rigid {
        stats.rigid += 1;
        inst.tags.insert("no-automorphism-found".into());
    }
    (inst, stats)
}

/// Seeded instances; identical specs give identical lists.
pub fn random_instances(spec: &RandomSpec) -> (Vec<Instance>, RandomStats) {
    let parts: Vec<(Instance, RandomStats)> = (0..spec.count).into_par_iter().map(|i| generate(spec, i)).collect();
    let mut stats = RandomStats::default();
    let mut out = Vec::with_capacity(parts.len());
    for (inst, s) in parts {
        stats.attempted += s.attempted;
        stats.valid += s.valid;
        stats.products += s.products;
        stats.rigid += s.rigid;
        out.push(inst);
    }
    (out, stats)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::format;

    #[test]
    fn deterministic_and_bounded() {
        let spec = RandomSpec {
            count: 12,
            max_order: 16,
            seed: 7,
            ..Default::default()
        };
        let (a, sa) = random_instances(&spec);
        let (b, sb) = random_instances(&spec);
        assert_eq!(format::write(&a), format::write(&b));
        assert_eq!(sa, sb);
        assert!(a.iter().all(|i| i.ring.order() <= 16));
        assert!(sa.valid <= sa.attempted);
    }

    #[test]
    fn finds_the_swap() {
        let f3 = cyclic(3).unwrap();
        let r = direct_product(&[f3.clone(), f3]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let found = random_automorphisms(&r, &mut rng, 10_000, 5);
        assert_eq!(found.len(), 1);
        assert_eq!(found[0].images(), &[vec![0, 1], vec![1, 0]]);
    }
}
