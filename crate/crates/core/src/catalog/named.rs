use super::{Instance, Provenance};
use crate::groups::{close_group, inner_automorphism, RingAutomorphism, DEFAULT_GROUP_CAP};
use crate::ring::{
    cyclic, direct_product, galois_field, group_ring, matrix_ring, upper_triangular, zero_mult_ring, AdditiveGroup,
    Element, FiniteRing,
};

fn aut(ring: &FiniteRing, images: &[&[u64]]) -> RingAutomorphism {
    RingAutomorphism::new(ring, images.iter().map(|x| x.to_vec()).collect()).expect("catalog automorphism")
}

fn build(ring_name: &str, group_name: &str, ring: FiniteRing, gens: Vec<RingAutomorphism>) -> Instance {
    let group = close_group(&ring, &gens, DEFAULT_GROUP_CAP).expect("catalog group within cap");
    let mut inst = Instance::new(ring_name, group_name, ring, group, Provenance::Constructed);
    inst.derive_tags().expect("catalog instance is valid");
    inst
}

fn f(p: u64) -> FiniteRing {
    cyclic(p).expect("prime field")
}

fn swap2(ring: &FiniteRing) -> RingAutomorphism {
    aut(ring, &[&[0, 1], &[1, 0]])
}

/// Power map `x ↦ x^e` read off the basis; a field automorphism when `e` is the characteristic.
fn frobenius(ring: &FiniteRing, e: u32) -> RingAutomorphism {
    let images = ring
        .basis_elements()
        .iter()
        .map(|b| (1..e).fold(b.clone(), |acc, _| ring.mul(&acc, b)))
        .collect();
    RingAutomorphism::new(ring, images).expect("Frobenius")
}

/// The first unit (in element order) whose inner automorphism has exactly order `k`.
fn inner_of_order(ring: &FiniteRing, k: usize) -> RingAutomorphism {
    ring.units()
        .iter()
        .map(|u| inner_automorphism(ring, u).expect("unit"))
        .find(|g| close_group(ring, std::slice::from_ref(g), DEFAULT_GROUP_CAP).unwrap().order() == k)
        .expect("inner automorphism of the requested order")
}

fn all_inner(ring: &FiniteRing) -> Vec<RingAutomorphism> {
    ring.units()
        .iter()
        .map(|u| inner_automorphism(ring, u).expect("unit"))
        .collect()
}

fn zero_f4() -> FiniteRing {
    zero_mult_ring(&AdditiveGroup::new(vec![2, 2]).expect("orders"))
}

/// `GL₂(F₂) ≅ S₃` on `F₂²`: a 3-cycle and a swap.
fn s3_on_f2_squared(ring: &FiniteRing, offset: usize) -> Vec<RingAutomorphism> {
    let k = ring.rank();
    let unit = |i: usize| -> Element {
        let mut v = vec![0; k];
        v[i] = 1;
        v
    };
    let mut rho = ring.basis_elements();
    let mut tau = ring.basis_elements();
    let (a, b) = (offset, offset + 1);
    rho[a] = unit(b);
    rho[b] = {
        let mut v = unit(a);
        v[b] = 1;
        v
    };
    tau[a] = unit(b);
    tau[b] = unit(a);
    vec![
        RingAutomorphism::new(ring, rho).expect("3-cycle"),
        RingAutomorphism::new(ring, tau).expect("swap"),
    ]
}

/// The built-in catalog. Tags are derived on construction.
pub fn named_instances() -> Vec<Instance> {
    let mut out = Vec::new();

    let z12 = cyclic(12).unwrap();
    out.push(build("Z/12", "trivial", z12, vec![]));

    let f3f3 = direct_product(&[f(3), f(3)]).unwrap();
    let s = swap2(&f3f3);
    out.push(build("F3xF3", "swap", f3f3, vec![s]));

    let f2f2 = direct_product(&[f(2), f(2)]).unwrap();
    let s = swap2(&f2f2);
    out.push(build("F2xF2", "swap", f2f2, vec![s]));

    // 2Z/8Z = {0,2,4,6}: the generator 2 squares to 4 = 2·2
    let two_z = FiniteRing::validate(vec![4], vec![vec![vec![2]]], None).unwrap();
    let neg = aut(&two_z, &[&[3]]);
    out.push(build("2Z/8Z", "negation", two_z, vec![neg]));

    let m2f2 = matrix_ring(&f(2), 2).unwrap();
    let g = inner_automorphism(&m2f2, &[1, 1, 0, 1]).unwrap();
    out.push(build("M2(F2)", "inner C2", m2f2.clone(), vec![g]));
    let inn = all_inner(&m2f2);
    out.push(build("M2(F2)", "inner S3", m2f2, inn));

    let z4 = zero_f4();
    let g = s3_on_f2_squared(&z4, 0);
    out.push(build("zero F4", "order 6", z4, g));

    let c2 = vec![vec![0, 1], vec![1, 0]];
    out.push(build("F2[C2]", "trivial", group_ring(&f(2), &c2).unwrap(), vec![]));

    let m2f3 = matrix_ring(&f(3), 2).unwrap();
    let g = inner_automorphism(&m2f3, &[1, 0, 0, 2]).unwrap();
    out.push(build("M2(F3)", "inner diag(1,-1)", m2f3, vec![g]));

    // A = S x R with R^G = 0, |G|R = 0 and the trivial action on S = Z/6
    let a = direct_product(&[cyclic(6).unwrap(), zero_f4()]).unwrap();
    let g = s3_on_f2_squared(&a, 1);
    out.push(build("Z/6 x zero F4", "order 6 on the second factor", a, g));

    let z3z3 = zero_mult_ring(&AdditiveGroup::new(vec![3, 3]).unwrap());
    let s = swap2(&z3z3);
    out.push(build("zero F3^2", "swap", z3z3, vec![s]));

    let zero_z4 = zero_mult_ring(&AdditiveGroup::new(vec![4]).unwrap());
    let neg = aut(&zero_z4, &[&[3]]);
    out.push(build("zero Z/4", "negation", zero_z4, vec![neg]));

    let f4 = galois_field(2, 2).unwrap();
    let fr = frobenius(&f4, 2);
    out.push(build("F4", "Frobenius", f4, vec![fr]));

    let f9 = galois_field(3, 2).unwrap();
    let fr = frobenius(&f9, 3);
    out.push(build("F9", "Frobenius", f9, vec![fr]));

    let f2_3 = direct_product(&[f(2), f(2), f(2)]).unwrap();
    let shift = aut(&f2_3, &[&[0, 1, 0], &[0, 0, 1], &[1, 0, 0]]);
    let swap = aut(&f2_3, &[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]]);
    out.push(build("F2^3", "S3", f2_3, vec![shift, swap]));

    let f3_3 = direct_product(&[f(3), f(3), f(3)]).unwrap();
    let shift = aut(&f3_3, &[&[0, 1, 0], &[0, 0, 1], &[1, 0, 0]]);
    out.push(build("F3^3", "C3", f3_3, vec![shift]));

    let z4z4 = direct_product(&[cyclic(4).unwrap(), cyclic(4).unwrap()]).unwrap();
    let s = swap2(&z4z4);
    out.push(build("Z/4xZ/4", "swap", z4z4, vec![s]));

    let ut2f2 = upper_triangular(&f(2), 2).unwrap();
    let g = inner_of_order(&ut2f2, 2);
    out.push(build("UT2(F2)", "inner C2", ut2f2, vec![g]));

    let ut2f3 = upper_triangular(&f(3), 2).unwrap();
    let g = inner_of_order(&ut2f3, 2);
    out.push(build("UT2(F3)", "inner C2", ut2f3, vec![g]));

    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_catalog_is_valid_and_tagged() {
        let list = named_instances();
        assert!(list.len() >= 10);
        let zf4 = list.iter().find(|i| i.ring_name == "zero F4").unwrap();
        assert_eq!(zf4.group.order(), 6);
        for t in ["nilpotent", "bad-prime-2", "n1-hypotheses-hold"] {
            assert!(zf4.tags.contains(t), "{t} missing from {:?}", zf4.tags);
        }
        let two_z = list.iter().find(|i| i.ring_name == "2Z/8Z").unwrap();
        assert_eq!(two_z.ring.order(), 4);
        assert!(two_z.tags.contains("bad-prime-2"));
    }
}
