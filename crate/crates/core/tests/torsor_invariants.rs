//! Family-torsor properties: fiber linearity, descent checks on every
//! constructed family, and the pushforward dimension identity.

mod common;

use proptest::prelude::*;
use torsor_core::{
    build_family_torsor, check_cocycle, check_torsor_axiom, pushforward_fiber_h0, restrict_fiber,
    AlphaTorsor, CohomologyClass, Fp, Polynomial,
};

#[test]
fn fiber_class_is_linear_in_the_polynomial_exhaustively() {
    for p in [2u32, 3, 5] {
        let curve = common::supersingular(p);
        let a = AlphaTorsor::new(CohomologyClass::generator(curve)).unwrap();
        for f in common::all_polys_up_to(p, "x", 4) {
            let q = build_family_torsor(&a, &f).unwrap();
            for v in 0..p {
                let x0 = Fp::new(p, v as i64).unwrap();
                let fiber = restrict_fiber(&q, x0);
                let expected = f.eval_univariate(x0).unwrap() * a.class().coeff;
                assert_eq!(
                    fiber.class().coeff,
                    expected,
                    "f = {f}, x0 = {x0}, p = {p}"
                );
            }
        }
    }
}

#[test]
fn pushforward_dimension_matches_fiber_triviality() {
    let curve = common::supersingular(2);
    let a = AlphaTorsor::new(CohomologyClass::generator(curve)).unwrap();
    for f in common::all_polys_up_to(2, "x", 4) {
        let q = build_family_torsor(&a, &f).unwrap();
        for v in 0..2 {
            let x0 = Fp::new(2, v).unwrap();
            let nontrivial = usize::from(!restrict_fiber(&q, x0).is_trivial());
            assert_eq!(pushforward_fiber_h0(&q, x0).unwrap(), 2 - nontrivial);
        }
    }
}

#[test]
fn constant_families_have_pairwise_isomorphic_fibers() {
    for p in [2u32, 3, 5] {
        let curve = common::supersingular(p);
        let a = AlphaTorsor::new(CohomologyClass::generator(curve)).unwrap();
        for c in 0..p {
            let f = Polynomial::from_univariate_coeffs(p, "x", &[c as i64]).unwrap();
            let q = build_family_torsor(&a, &f).unwrap();
            let classes: Vec<Fp> = (0..p)
                .map(|v| restrict_fiber(&q, Fp::new(p, v as i64).unwrap()).class().coeff)
                .collect();
            assert!(classes.windows(2).all(|w| w[0] == w[1]));
        }
    }
}

proptest! {
    /// Every family built from a valid torsor yields a descent datum that
    /// passes the cocycle condition and the torsor axiom.
    #[test]
    fn descent_checks_pass_for_built_families(coeffs in prop::collection::vec(0i64..2, 0..6), trivial in any::<bool>()) {
        let curve = common::supersingular(2);
        let class = if trivial {
            CohomologyClass::zero(curve)
        } else {
            CohomologyClass::generator(curve)
        };
        let a = AlphaTorsor::new(class).unwrap();
        let f = Polynomial::from_univariate_coeffs(2, "x", &coeffs).unwrap();
        let q = build_family_torsor(&a, &f).unwrap();
        let datum = q.descent_datum().expect("characteristic 2 family carries a datum");
        prop_assert!(check_cocycle(datum).passes());
        prop_assert!(check_torsor_axiom(&q).unwrap());
    }
}
