//! Exhaustive Hopf-axiom and invariant-subalgebra suites over the full
//! catalog of supported group schemes.

use torsor_core::{
    check_algebra_map, constant_dual_table, hopf_of, invariants_subalgebra, GroupSchemeKind,
    GroupTable,
};

/// All groups of order at most 8 up to isomorphism (abelian and not).
fn group_catalog() -> Vec<(&'static str, GroupTable)> {
    let c = GroupTable::cyclic;
    vec![
        ("C1", c(1)),
        ("C2", c(2)),
        ("C3", c(3)),
        ("C4", c(4)),
        ("C2xC2", GroupTable::direct_product(&c(2), &c(2))),
        ("C5", c(5)),
        ("C6", c(6)),
        ("S3", GroupTable::dihedral(3)),
        ("C7", c(7)),
        ("C8", c(8)),
        ("C4xC2", GroupTable::direct_product(&c(4), &c(2))),
        (
            "C2xC2xC2",
            GroupTable::direct_product(&GroupTable::direct_product(&c(2), &c(2)), &c(2)),
        ),
        ("D4", GroupTable::dihedral(4)),
        ("Q8", GroupTable::quaternion8()),
    ]
}

#[test]
fn hopf_axioms_alpha_p_and_mu_n_up_to_7() {
    for p in [2u32, 3, 5, 7] {
        let h = hopf_of(&GroupSchemeKind::AlphaP { p }).unwrap();
        assert!(h.check_axioms().all_pass(), "alpha_{p}");
        assert!(!GroupSchemeKind::AlphaP { p }.is_etale());
        for n in 1..=6 {
            let h = hopf_of(&GroupSchemeKind::MuN { n, p }).unwrap();
            assert!(h.check_axioms().all_pass(), "mu_{n} over F_{p}");
            assert_eq!(GroupSchemeKind::MuN { n, p }.is_etale(), n % p != 0);
        }
    }
}

#[test]
fn hopf_axioms_constant_groups_up_to_order_8() {
    for p in [2u32, 3] {
        for (name, table) in group_catalog() {
            let h = hopf_of(&GroupSchemeKind::Constant {
                table: table.clone(),
                p,
            })
            .unwrap();
            assert!(h.check_axioms().all_pass(), "{name} over F_{p}");
            assert_eq!(h.carrier.dim(), table.order());
        }
    }
}

#[test]
fn dual_of_functions_recovers_the_group() {
    for (name, table) in group_catalog() {
        let h = hopf_of(&GroupSchemeKind::Constant {
            table: table.clone(),
            p: 2,
        })
        .unwrap();
        assert_eq!(constant_dual_table(&h).unwrap(), table, "{name}");
    }
}

#[test]
fn invariants_dimension_is_the_index_for_every_subgroup_pair() {
    for p in [2u32, 3] {
        for (name, table) in group_catalog() {
            let h = hopf_of(&GroupSchemeKind::Constant {
                table: table.clone(),
                p,
            })
            .unwrap();
            let subgroups = table.subgroups();
            assert!(!subgroups.is_empty());
            for sub in subgroups {
                let (alg, incl) = invariants_subalgebra(&h, &sub).unwrap();
                assert_eq!(
                    alg.dim(),
                    table.order() / sub.len(),
                    "{name}, H = {sub:?}, p = {p}"
                );
                assert!(check_algebra_map(&incl).is_valid());
            }
        }
    }
}
