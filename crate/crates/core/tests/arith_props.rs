//! Exhaustive form-composition checks over all fundamental discriminants
//! down to -500, and the S-class-group counting identity.

use centex_core::arith::{class_group, is_fundamental, kronecker, s_class_group};

fn fundamental_discriminants(limit: i64) -> Vec<i64> {
    (-limit..=-3).rev().filter(|&d| is_fundamental(d)).collect()
}

#[test]
fn composition_axioms_for_all_small_discriminants() {
    for d in fundamental_discriminants(500) {
        let cg = class_group(d).unwrap();
        let h = cg.h();
        // structure and enumeration agree
        let structure_order: u128 = cg.structure.iter().map(|&f| f as u128).product();
        assert_eq!(structure_order, h as u128, "d = {d}");
        // identity
        for i in 0..h {
            assert_eq!(cg.compose(0, i), i, "d = {d}");
        }
        // inverses and commutativity
        for i in 0..h {
            let inv = cg.form_index(&cg.forms[i].inverse()).unwrap();
            assert_eq!(cg.compose(i, inv), 0, "d = {d}");
            for j in 0..h {
                assert_eq!(cg.compose(i, j), cg.compose(j, i), "d = {d}");
            }
        }
        // associativity, all triples
        for i in 0..h {
            for j in 0..h {
                let ij = cg.compose(i, j);
                for k in 0..h {
                    assert_eq!(
                        cg.compose(ij, k),
                        cg.compose(i, cg.compose(j, k)),
                        "d = {d}"
                    );
                }
            }
        }
        // all forms reduced and primitive with the right discriminant
        for f in &cg.forms {
            assert!(f.is_reduced() && f.is_primitive(), "d = {d}");
            assert_eq!(f.discriminant(), d, "d = {d}");
        }
    }
}

#[test]
fn ramified_prime_classes_square_to_identity() {
    for d in fundamental_discriminants(300) {
        let cg = class_group(d).unwrap();
        for q in [2u64, 3, 5, 7, 11, 13] {
            match kronecker(d, q) {
                -1 => assert!(cg.prime_class(q).is_none(), "d = {d}, q = {q}"),
                0 => {
                    let i = cg.prime_class(q).unwrap_or_else(|| panic!("d = {d}, q = {q}"));
                    assert_eq!(cg.compose(i, i), 0, "d = {d}, q = {q}");
                }
                _ => {
                    assert!(cg.prime_class(q).is_some(), "d = {d}, q = {q}");
                }
            }
        }
    }
}

#[test]
fn s_class_group_order_identity() {
    // |quotient| * |subgroup generated by removed classes| = h
    for d in fundamental_discriminants(200) {
        let cg = class_group(d).unwrap();
        let primes: Vec<u64> = [2u64, 3, 5]
            .into_iter()
            .filter(|&q| kronecker(d, q) != -1)
            .collect();
        let scg = s_class_group(&cg, &primes).unwrap();
        // order of the generated subgroup by closure over indices
        let mut members = std::collections::BTreeSet::new();
        members.insert(0usize);
        let removed = scg.removed.clone();
        let mut frontier: Vec<usize> = vec![0];
        while let Some(x) = frontier.pop() {
            for &r in &removed {
                let y = cg.compose(x, r);
                if members.insert(y) {
                    frontier.push(y);
                }
            }
        }
        assert_eq!(
            scg.order() * members.len() as u128,
            cg.h() as u128,
            "d = {d}, S = {primes:?}"
        );
    }
}
