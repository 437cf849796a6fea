//! Cross-module extension properties: splitting against class triviality,
//! functoriality, and representation sweeps over the catalog p-groups.

use centex_core::cohomology::h2;
use centex_core::extension::{build_extension, is_split};
use centex_core::finab::FinAb;
use centex_core::group::{all_catalog, FiniteGroup};
use centex_core::represent::{induce_character, verify_sl_faithful};

/// Split iff trivial class, for every catalog pair with |A| * |H| <= 128.
#[test]
fn split_agrees_with_class_triviality() {
    let moduli = [2i64, 3, 4, 8];
    for (name, g) in all_catalog() {
        if g.order() > 16 {
            continue;
        }
        for &m in &moduli {
            if m as usize * g.order() > 128 {
                continue;
            }
            let a = FinAb::cyclic(m);
            let h2g = h2(&g, &a);
            if h2g.order() > 64 {
                continue;
            }
            for coords in h2g.all_classes() {
                let rep = h2g.representative(&coords).unwrap();
                let e = build_extension(&g, &a, &rep).unwrap();
                let zero = coords.iter().all(|&c| c == 0);
                let section = is_split(&e);
                assert_eq!(
                    section.is_some(),
                    zero,
                    "{name} with Z/{m}, class {coords:?}"
                );
                if let Some(s) = section {
                    assert!(s.is_homomorphism(&g, e.total()), "{name}");
                    // section composed with projection is the identity
                    assert!(
                        (0..g.order()).all(|x| e.proj().apply(s.apply(x)) == x),
                        "{name}"
                    );
                }
            }
        }
    }
}

fn nonabelian_p_groups(max_order: usize) -> Vec<(String, FiniteGroup, u64)> {
    all_catalog()
        .into_iter()
        .filter(|(_, g)| g.order() <= max_order && !g.is_abelian())
        .filter_map(|(n, g)| g.p_group().map(|(p, _)| (n, g, p)))
        .collect()
}

/// Induced representations from the canonical central subgroup pass the five
/// verification checks on every catalog non-abelian p-group of order <= 64.
#[test]
fn induced_representations_verify() {
    for (name, g, p) in nonabelian_p_groups(64) {
        let z = g.find_central_derived_cyclic(p).unwrap();
        let rho = induce_character(&g, &z, 1).unwrap();
        assert_eq!(rho.dim, g.order() / z.order(), "{name}");
        let report = verify_sl_faithful(&g, &rho, &z, p);
        // homomorphism, faithfulness, scalar center and p-power dimension
        // hold for the induced construction on all these groups; the
        // determinant may fail in general and is then flagged
        assert!(report.homomorphism, "{name}");
        assert!(report.faithful, "{name}");
        assert!(report.center_scalar, "{name}");
        assert!(report.dim_power_of_p, "{name}");
        if !report.det_one {
            assert!(!report.det_failures.is_empty(), "{name} must carry diagnostics");
        }
        // induced character shape: trace d*χ on Z, zero off Z
        for x in 0..g.order() {
            if z.contains(x) {
                continue;
            }
            assert!(rho.trace(x).is_zero(), "{name}: trace must vanish off Z");
        }
    }
}

/// The trace on the center is d times a primitive |Z|-th root power.
#[test]
fn induced_center_traces_are_scalar_multiples() {
    use centex_core::cyclotomic::CycInt;
    use num_bigint::BigInt;
    for (name, g, p) in nonabelian_p_groups(64) {
        let z = g.find_central_derived_cyclic(p).unwrap();
        let rho = induce_character(&g, &z, 1).unwrap();
        let d = rho.dim as i64;
        let zgen = z.cyclic_generator(&g).unwrap();
        let mut x = zgen;
        let mut e = 1i64;
        while x != 0 {
            let expect = CycInt::zeta_pow(rho.conductor, e).scale(&BigInt::from(d));
            assert_eq!(rho.trace(x), expect, "{name}");
            x = g.mul(x, zgen);
            e += 1;
        }
    }
}
