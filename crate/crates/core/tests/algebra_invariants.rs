//! Cross-cutting invariants of the structure-constant algebra layer.

use torsor_core::{
    algebra_tensor, check_algebra_map, quotient_algebra, AlgebraMap, FiniteAlgebra, Fp,
    Polynomial,
};

fn catalog(p: u32) -> Vec<FiniteAlgebra> {
    let t2 = Polynomial::variable(p, &["T"], 0).unwrap().pow(2);
    let t3 = Polynomial::variable(p, &["T"], 0).unwrap().pow(3);
    let mu = Polynomial::variable(p, &["T"], 0)
        .unwrap()
        .pow(2)
        .sub(&Polynomial::constant(p, &["T"], 1).unwrap());
    vec![
        FiniteAlgebra::ground(p).unwrap(),
        quotient_algebra(&[t2], &["T"], p).unwrap().algebra().clone(),
        quotient_algebra(&[t3], &["T"], p).unwrap().algebra().clone(),
        quotient_algebra(&[mu], &["T"], p).unwrap().algebra().clone(),
    ]
}

#[test]
fn tensor_is_associative_up_to_reindexing() {
    for p in [2u32, 3] {
        let algs = catalog(p);
        for a in &algs {
            for b in &algs {
                for c in &algs {
                    let left = algebra_tensor(&algebra_tensor(a, b).unwrap(), c).unwrap();
                    let right = algebra_tensor(a, &algebra_tensor(b, c).unwrap()).unwrap();
                    assert_eq!(left.dim(), right.dim());
                    // The flat index (i*nb + j)*nc + k coincides with
                    // i*(nb*nc) + (j*nc + k), so the tables must agree.
                    for i in 0..left.dim() {
                        for j in 0..left.dim() {
                            assert_eq!(left.basis_product(i, j), right.basis_product(i, j));
                        }
                    }
                    assert_eq!(left.unit_vec(), right.unit_vec());
                }
            }
        }
    }
}

#[test]
fn tensor_with_ground_field_is_identity_on_tables() {
    for p in [2u32, 3, 5] {
        let k = FiniteAlgebra::ground(p).unwrap();
        for a in catalog(p) {
            let t = algebra_tensor(&k, &a).unwrap();
            assert_eq!(t.dim(), a.dim());
            for i in 0..a.dim() {
                for j in 0..a.dim() {
                    assert_eq!(t.basis_product(i, j), a.basis_product(i, j));
                }
            }
        }
    }
}

#[test]
fn tensor_rejects_mixed_primes() {
    let a = FiniteAlgebra::ground(2).unwrap();
    let b = FiniteAlgebra::ground(3).unwrap();
    assert!(algebra_tensor(&a, &b).is_err());
}

#[test]
fn compositions_of_valid_maps_stay_valid() {
    for p in [2u32, 3, 5] {
        let mu = Polynomial::variable(p, &["T"], 0)
            .unwrap()
            .pow(4)
            .sub(&Polynomial::constant(p, &["T"], 1).unwrap());
        let q = quotient_algebra(&[mu], &["T"], p).unwrap();
        let a = q.algebra().clone();
        // All power endomorphisms T -> T^k of k[T]/(T^4 - 1).
        let mut valid_maps: Vec<AlgebraMap> = Vec::new();
        for k in 0..4u32 {
            let img = a.pow(&a.basis_vec(1), k);
            if let Ok(f) = q.map_from_generator_images(&a, &[img]) {
                if check_algebra_map(&f).is_valid() {
                    valid_maps.push(f);
                }
            }
        }
        assert!(valid_maps.len() >= 2);
        for f in &valid_maps {
            for g in &valid_maps {
                let fg = f.then(g).unwrap();
                assert!(check_algebra_map(&fg).is_valid());
            }
        }
    }
}

#[test]
fn quotient_reduction_respects_binomial_rules() {
    // k[T]/(T^5 - 2T^2) over F_3: T^5 rewrites to 2T^2 and reduction
    // terminates.
    let p = 3;
    let t = Polynomial::variable(p, &["T"], 0).unwrap();
    let gen = t.pow(5).sub(&t.pow(2).scale(Fp::new(p, 2).unwrap()));
    let q = quotient_algebra(&[gen], &["T"], p).unwrap();
    let a = q.algebra();
    assert_eq!(a.dim(), 5);
    let t5 = q.element_of_poly(&t.pow(5)).unwrap();
    let expected = a.scale(Fp::new(p, 2).unwrap(), &a.basis_vec(2));
    assert_eq!(t5, expected);
}
