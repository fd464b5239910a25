mod common;

use common::{find, full_catalog};
use num_bigint::BigUint;
use proptest::prelude::*;
use ringinv::groups::{additive_closure, h_constant, p_group_fixed_point, prime_factors, FixedPoint};
use ringinv::AdditiveGroup;

/// Product over a Pascal row computed in `u128`.
fn h_oracle(n: usize) -> u128 {
    let mut row = vec![1u128];
    for _ in 0..n {
        let mut next = vec![1u128; row.len() + 1];
        for i in 1..row.len() {
            next[i] = row[i - 1] + row[i];
        }
        row = next;
    }
    row[1..].iter().try_fold(1u128, |acc, c| acc.checked_mul(c + 1)).expect("fits in u128")
}

#[test]
fn h_matches_pascal_oracle() {
    for n in 1..=14u64 {
        assert_eq!(h_constant(n), BigUint::from(h_oracle(n as usize)), "h({n})");
    }
    let small: Vec<u128> = (1..=4).map(h_oracle).collect();
    assert_eq!(small, [2, 6, 32, 350]);
}

#[test]
fn h_grows_at_least_exponentially() {
    for n in 1..=40u64 {
        assert!(h_constant(n) >= BigUint::from(2u8).pow(n as u32));
    }
}

#[test]
fn normal_complement_census() {
    let list = full_catalog(0, 1);
    let s3 = find(&list, "F2^3", "S3");
    let g = &s3.group;
    assert_eq!(g.order(), 6);
    let n2 = g.p_normal_complement(2).unwrap().expect("S3 has a normal 2-complement");
    assert_eq!(n2.len(), 3);
    assert!(g.is_normal(&n2));
    assert!(g.p_normal_complement(3).unwrap().is_none());
    let c3 = find(&list, "F3^3", "C3");
    assert_eq!(c3.group.p_normal_complement(3).unwrap().unwrap().len(), 1);
    assert_eq!(prime_factors(360), [2, 3, 5]);
}

/// Unipotent upper-triangular generators over `Z/p`, acting on `(Z/p)^k`.
fn unipotent(p: u64, k: usize, above: &[u64]) -> Vec<Vec<u64>> {
    let mut it = above.iter().copied();
    (0..k)
        .map(|i| {
            let mut row = vec![0u64; k];
            row[i] = 1;
            for x in row.iter_mut().skip(i + 1) {
                *x = it.next().unwrap_or(0) % p;
            }
            row
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// A `p`-group acting on a nonzero `p`-group fixes a nonzero vector.
    #[test]
    fn p_groups_have_fixed_points(
        (p, k) in prop_oneof![Just((2u64, 2usize)), Just((2, 3)), Just((3, 2)), Just((2, 4)), Just((5, 2))],
        a in proptest::collection::vec(0u64..5, 6),
        b in proptest::collection::vec(0u64..5, 6),
    ) {
        let v = AdditiveGroup::new(vec![p; k]).unwrap();
        let gens = vec![unipotent(p, k, &a), unipotent(p, k, &b)];
        let group = additive_closure(&v, &gens, 1 << 12).unwrap();
        if group.len() > 1 {
            match p_group_fixed_point(&v, &gens).unwrap() {
                FixedPoint::Nonzero(x) => {
                    prop_assert!(!v.is_zero(&x));
                    for g in &gens {
                        prop_assert_eq!(v.apply(g, &x), x.clone());
                    }
                }
                FixedPoint::ZeroOnly => prop_assert!(false, "no fixed point"),
            }
        }
    }
}
