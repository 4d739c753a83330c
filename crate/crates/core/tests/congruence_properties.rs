use oml_core::catalog::{self, standard_catalog};
use oml_core::congruence::*;
use oml_core::ElementSet;

#[test]
fn pideal_congruence_bijection() {
    for (name, l) in standard_catalog() {
        let ideals = all_p_ideals(&l);
        let mut thetas = Vec::new();
        for i in &ideals {
            assert!(is_p_ideal(&l, i.members()), "{name}");
            let d = congruence_from_pideal(&l, i, Variant::Delta).unwrap();
            let p = congruence_from_pideal(&l, i, Variant::PlusL).unwrap();
            assert_eq!(d, p, "{name}");
            assert_eq!(&kernel(&l, &d), i, "{name}");
            thetas.push(d);
        }
        let before = thetas.len();
        thetas.sort();
        thetas.dedup();
        assert_eq!(
            thetas.len(),
            before,
            "{name}: distinct ideals give distinct congruences"
        );
    }
}

#[test]
fn closure_is_least() {
    // Every p-ideal containing a contains its principal closure.
    for (name, l) in standard_catalog() {
        let ideals = all_p_ideals(&l);
        for a in l.elements() {
            let c = p_ideal_closure(&l, &ElementSet::from_elements(l.size(), [a]));
            assert!(c.contains(a));
            for i in ideals.iter().filter(|i| i.contains(a)) {
                assert!(c.members().is_subset(i.members()), "{name}");
            }
            assert!(ideals.contains(&c), "{name}");
        }
    }
}

#[test]
fn oracle_agrees_on_small_lattices() {
    for l in [
        catalog::boolean_algebra(0).unwrap(),
        catalog::boolean_algebra(2).unwrap(),
        catalog::boolean_algebra(3).unwrap(),
        catalog::mo(1).unwrap(),
        catalog::mo(2).unwrap(),
        catalog::mo(3).unwrap(),
    ] {
        let brute = brute_force_congruences(&l).unwrap();
        let mut via: Vec<_> = all_p_ideals(&l)
            .iter()
            .map(|i| congruence_from_pideal(&l, i, Variant::PlusL).unwrap())
            .collect();
        via.sort();
        assert_eq!(brute, via);
    }
}

#[test]
fn mo3_caveat_finding() {
    let f = kernel_caveat_search(&catalog::mo(3).unwrap())
        .unwrap()
        .unwrap();
    assert_eq!(f.subset.to_vec(), vec![0, 1]);
}
