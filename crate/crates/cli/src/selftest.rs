//! The self-test: every module's invariant suite behind one command.
//!
//! The configuration lets a probe inject a known-wrong variant (the
//! untwisted action map, the negated Hasse formula) to demonstrate that the
//! corresponding checks are not vacuous: the self-test must fail under
//! either injection.

use serde_json::json;

use torsor_core::cech::cech_frobenius_h;
use torsor_core::criteria::artin_schreier_splitting_root;
use torsor_core::{
    algebra_tensor, base_change_check, build_family_torsor, check_algebra_map, check_coaction,
    check_cocycle, check_torsor_axiom_with, constant_dual_table, f_triviality, frobenius_torsor,
    h0_extension, hasse_invariant_with, hopf_of, invariants_subalgebra, kunneth_check,
    pushforward_fiber_h0, quotient_algebra, restrict_fiber, saturation_check, validate_curve,
    AlgebraMap, AlphaTorsor, Coaction, CohomologyClass, EtaleCoverSpec, FiniteAlgebra, Fp,
    GroupSchemeKind, GroupTable, HasseFormula, Polynomial, TwistMap, WeierstrassCurve,
};

use crate::report::{check, CheckRecord, VerificationReport, PRIME_FIELD_CAVEAT};

/// Which implementations the self-test drives. Defaults are the canonical
/// ones; the probes exist to prove the checks can fail.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SelftestConfig {
    pub twist: TwistMap,
    pub hasse: HasseFormula,
}

impl Default for SelftestConfig {
    fn default() -> Self {
        SelftestConfig {
            twist: TwistMap::GroupTranslation,
            hasse: HasseFormula::Standard,
        }
    }
}

fn suite(checks: &mut Vec<CheckRecord>, id: &str, anchor: &str, cases: usize, failures: Vec<String>) {
    let verdict = if failures.is_empty() {
        "pass".to_string()
    } else {
        format!("fail: {}", failures.join("; "))
    };
    checks.push(check(
        id,
        anchor,
        json!({}),
        json!({ "cases": cases, "failures": failures }),
        verdict,
        "pass",
    ));
}

fn supersingular(p: u32) -> WeierstrassCurve {
    let coeffs = match p {
        2 => [0, 0, 1, 0, 0],
        3 => [0, 0, 0, 2, 0],
        5 => [0, 0, 0, 0, 1],
        _ => unreachable!(),
    };
    WeierstrassCurve::new(p, coeffs).unwrap()
}

fn ordinary(p: u32) -> WeierstrassCurve {
    let coeffs = match p {
        2 => [1, 0, 0, 0, 1],
        3 => [0, 1, 0, 0, 2],
        5 => [0, 1, 0, 0, 1],
        _ => unreachable!(),
    };
    WeierstrassCurve::new(p, coeffs).unwrap()
}

fn all_polys(p: u32, max_deg: u32) -> Vec<Polynomial> {
    let len = max_deg as usize + 1;
    let mut out = Vec::new();
    let mut coeffs = vec![0i64; len];
    loop {
        out.push(Polynomial::from_univariate_coeffs(p, "x", &coeffs).unwrap());
        let mut i = 0;
        loop {
            if i == len {
                return out;
            }
            coeffs[i] += 1;
            if coeffs[i] < p as i64 {
                break;
            }
            coeffs[i] = 0;
            i += 1;
        }
    }
}

fn group_catalog() -> Vec<(&'static str, GroupTable)> {
    let c = GroupTable::cyclic;
    vec![
        ("C1", c(1)),
        ("C2", c(2)),
        ("C3", c(3)),
        ("C4", c(4)),
        ("C2xC2", GroupTable::direct_product(&c(2), &c(2))),
        ("C6", c(6)),
        ("S3", GroupTable::dihedral(3)),
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

/// Runs every invariant suite and returns the combined report.
pub fn run_selftest(config: SelftestConfig) -> VerificationReport {
    let mut checks = Vec::new();

    // Algebra layer: constructions verify their own laws; tensor is
    // associative up to the canonical reindexing.
    {
        let mut failures = Vec::new();
        let mut cases = 0;
        for p in [2u32, 3] {
            let t2 = Polynomial::variable(p, &["T"], 0).unwrap().pow(2);
            let dual = quotient_algebra(&[t2], &["T"], p).unwrap().algebra().clone();
            let ground = FiniteAlgebra::ground(p).unwrap();
            for a in [&ground, &dual] {
                for b in [&ground, &dual] {
                    for c in [&ground, &dual] {
                        cases += 1;
                        let left = algebra_tensor(&algebra_tensor(a, b).unwrap(), c).unwrap();
                        let right = algebra_tensor(a, &algebra_tensor(b, c).unwrap()).unwrap();
                        let same = (0..left.dim()).all(|i| {
                            (0..left.dim())
                                .all(|j| left.basis_product(i, j) == right.basis_product(i, j))
                        });
                        if !same || left.unit_vec() != right.unit_vec() {
                            failures.push(format!("tensor associativity over F_{p}"));
                        }
                    }
                }
            }
        }
        suite(
            &mut checks,
            "finite-algebra-laws",
            "structure-constant constructions satisfy commutativity, associativity, unit, and tensor coherence",
            cases,
            failures,
        );
    }

    // Hopf axioms for every supported kind.
    {
        let mut failures = Vec::new();
        let mut cases = 0;
        for p in [2u32, 3, 5] {
            cases += 1;
            if !hopf_of(&GroupSchemeKind::AlphaP { p })
                .map(|h| h.check_axioms().all_pass())
                .unwrap_or(false)
            {
                failures.push(format!("alpha_{p}"));
            }
            for n in 1..=4 {
                cases += 1;
                if !hopf_of(&GroupSchemeKind::MuN { n, p })
                    .map(|h| h.check_axioms().all_pass())
                    .unwrap_or(false)
                {
                    failures.push(format!("mu_{n} over F_{p}"));
                }
            }
        }
        for (name, table) in group_catalog() {
            for p in [2u32, 3] {
                cases += 1;
                if !hopf_of(&GroupSchemeKind::Constant {
                    table: table.clone(),
                    p,
                })
                .map(|h| h.check_axioms().all_pass())
                .unwrap_or(false)
                {
                    failures.push(format!("{name} over F_{p}"));
                }
            }
        }
        suite(
            &mut checks,
            "hopf-axioms",
            "coassociativity, counit, and antipode laws hold on every basis tuple",
            cases,
            failures,
        );
    }

    // Constant groups: duality and invariant subalgebras.
    {
        let mut failures = Vec::new();
        let mut cases = 0;
        for (name, table) in group_catalog() {
            let h = hopf_of(&GroupSchemeKind::Constant {
                table: table.clone(),
                p: 2,
            })
            .unwrap();
            cases += 1;
            if constant_dual_table(&h).ok().as_ref() != Some(&table) {
                failures.push(format!("dual of {name}"));
            }
            for sub in table.subgroups() {
                cases += 1;
                match invariants_subalgebra(&h, &sub) {
                    Ok((alg, incl)) => {
                        if alg.dim() != table.order() / sub.len()
                            || !check_algebra_map(&incl).is_valid()
                        {
                            failures.push(format!("{name} invariants at H = {sub:?}"));
                        }
                    }
                    Err(e) => failures.push(format!("{name}: {e}")),
                }
            }
        }
        suite(
            &mut checks,
            "constant-group-duality",
            "the dual of the function algebra recovers the group; invariants have dimension [G : H]",
            cases,
            failures,
        );
    }

    // Coaction laws, including the broken probe that must fail.
    {
        let mut failures = Vec::new();
        let p = 2;
        let h = hopf_of(&GroupSchemeKind::AlphaP { p }).unwrap();
        let t2 = Polynomial::variable(p, &["T"], 0).unwrap().pow(2);
        let q = quotient_algebra(&[t2], &["T"], p).unwrap();
        let v = q.algebra().clone();
        let tensor = algebra_tensor(&v, &h.carrier).unwrap();
        let ng = h.carrier.dim();
        let build = |with_tt: bool| {
            let mut img = tensor.zero_vec();
            img[ng] = Fp::one(p);
            img[1] = Fp::one(p);
            if with_tt {
                img[ng + 1] = Fp::one(p);
            }
            q.map_from_generator_images(&tensor, &[img])
                .map(|map| Coaction {
                    algebra: v.clone(),
                    map,
                })
        };
        match build(false) {
            Ok(c) if check_coaction(&c, &h).all_pass() => {}
            _ => failures.push("translation coaction rejected".to_string()),
        }
        match build(true) {
            Ok(c) if !check_coaction(&c, &h).all_pass() => {}
            _ => failures.push("skewed coaction accepted".to_string()),
        }
        let ground = FiniteAlgebra::ground(p).unwrap();
        let trivial_target = algebra_tensor(&ground, &h.carrier).unwrap();
        let trivial = Coaction {
            algebra: ground.clone(),
            map: AlgebraMap::new(
                ground,
                trivial_target.clone(),
                vec![trivial_target.unit_vec().to_vec()],
            )
            .unwrap(),
        };
        if !check_coaction(&trivial, &h).all_pass() {
            failures.push("trivial coaction rejected".to_string());
        }
        suite(
            &mut checks,
            "coaction-laws",
            "comodule-algebra axioms accept translation coactions and reject a skewed one",
            3,
            failures,
        );
    }

    // Hasse formula against the expansion computation, exhaustively for
    // p = 2 and completed squares over F_3. Drives the configured formula,
    // so the negated probe must fail here.
    {
        let mut failures = Vec::new();
        let mut cases = 0;
        for mask in 0..32u32 {
            let bits: Vec<i64> = (0..5).map(|i| ((mask >> i) & 1) as i64).collect();
            let c =
                WeierstrassCurve::new(2, [bits[0], bits[1], bits[2], bits[3], bits[4]]).unwrap();
            if !validate_curve(&c) {
                continue;
            }
            cases += 1;
            let formula = hasse_invariant_with(&c, config.hasse).unwrap().h;
            let oracle = cech_frobenius_h(&c).unwrap();
            if formula != oracle {
                failures.push(format!("{c:?}: formula {formula} vs expansion {oracle}"));
            }
        }
        for a2 in 0..3 {
            for a4 in 0..3 {
                for a6 in 0..3 {
                    let c = WeierstrassCurve::new(3, [0, a2, 0, a4, a6]).unwrap();
                    if !validate_curve(&c) {
                        continue;
                    }
                    cases += 1;
                    let formula = hasse_invariant_with(&c, config.hasse).unwrap().h;
                    let oracle = cech_frobenius_h(&c).unwrap();
                    if formula != oracle {
                        failures.push(format!("{c:?}: formula {formula} vs expansion {oracle}"));
                    }
                }
            }
        }
        suite(
            &mut checks,
            "hasse-cech-agreement",
            "the closed-form Frobenius scalar matches the two-chart expansion on every curve",
            cases,
            failures,
        );
    }

    // Torsor pipeline on the fixtures.
    {
        let mut failures = Vec::new();
        let ss = supersingular(2);
        match frobenius_torsor(&ss) {
            Ok((t, e)) => {
                if t.is_trivial() || h0_extension(&e) != 1 {
                    failures.push("Frobenius torsor degenerate".to_string());
                }
            }
            Err(e) => failures.push(e.to_string()),
        }
        if frobenius_torsor(&ordinary(2)).is_ok() {
            failures.push("ordinary curve accepted".to_string());
        }
        suite(
            &mut checks,
            "frobenius-torsor-pipeline",
            "a supersingular base yields the nontrivial torsor; an ordinary base is refused",
            2,
            failures,
        );
    }

    // Descent checks over all small families; the torsor axiom runs with
    // the configured twist, so the untwisted probe must fail here.
    {
        let mut failures = Vec::new();
        let mut cases = 0;
        let ss = supersingular(2);
        let torsor = AlphaTorsor::new(CohomologyClass::generator(ss)).unwrap();
        for f in all_polys(2, 3) {
            cases += 1;
            let family = build_family_torsor(&torsor, &f).unwrap();
            let datum = family.descent_datum().unwrap();
            if !check_cocycle(datum).passes() {
                failures.push(format!("cocycle at f = {f}"));
            }
            if !check_torsor_axiom_with(&family, config.twist).unwrap() {
                failures.push(format!("torsor axiom at f = {f}"));
            }
        }
        suite(
            &mut checks,
            "descent-symbolic-checks",
            "every built family satisfies the cocycle condition and the action square",
            cases,
            failures,
        );
    }

    // Fiber linearity and pushforward dimensions.
    {
        let mut failures = Vec::new();
        let mut cases = 0;
        for p in [2u32, 3, 5] {
            let curve = supersingular(p);
            let torsor = AlphaTorsor::new(CohomologyClass::generator(curve)).unwrap();
            for f in all_polys(p, 3) {
                let family = build_family_torsor(&torsor, &f).unwrap();
                for v in 0..p {
                    cases += 1;
                    let x0 = Fp::new(p, v as i64).unwrap();
                    let fiber = restrict_fiber(&family, x0);
                    let expected = f.eval_univariate(x0).unwrap() * torsor.class().coeff;
                    if fiber.class().coeff != expected {
                        failures.push(format!("linearity at f = {f}, x0 = {x0}, p = {p}"));
                    }
                    if p == 2 {
                        let dim = pushforward_fiber_h0(&family, x0).unwrap();
                        let want = if fiber.is_trivial() { 2 } else { 1 };
                        if dim != want {
                            failures.push(format!("pushforward at f = {f}, x0 = {x0}"));
                        }
                    }
                }
            }
        }
        suite(
            &mut checks,
            "fiber-linearity",
            "fiber classes are f(x0) * [a]; pushforward sections count 2 minus nontriviality",
            cases,
            failures,
        );
    }

    // Base change and Kunneth consistency across all small families.
    {
        let mut failures = Vec::new();
        let mut cases = 0;
        let ss = supersingular(2);
        let torsor = AlphaTorsor::new(CohomologyClass::generator(ss)).unwrap();
        for f in all_polys(2, 3) {
            cases += 1;
            let family = build_family_torsor(&torsor, &f).unwrap();
            let b = family.class_polynomial().clone();
            let report = base_change_check(&family).unwrap();
            for (x0, d) in &report.per_point {
                let failing = report.failing_points.contains(x0);
                if failing != (*d > report.generic_dim) {
                    failures.push(format!("base change at f = {f}"));
                }
            }
            let values: Vec<Fp> = (0..2)
                .map(|v| b.eval_univariate(Fp::new(2, v).unwrap()).unwrap())
                .collect();
            let nonconstant = values[0] != values[1];
            if kunneth_check(&family).failed() != nonconstant {
                failures.push(format!("kunneth at f = {f}"));
            }
        }
        suite(
            &mut checks,
            "base-change-kunneth-consistency",
            "failing points track dimension jumps; the Kunneth verdict tracks fiber constancy",
            cases,
            failures,
        );
    }

    // F-triviality laws on all fixtures.
    {
        let mut failures = Vec::new();
        let mut cases = 0;
        for p in [2u32, 3, 5] {
            for (curve, h_zero) in [(supersingular(p), true), (ordinary(p), false)] {
                for v in 0..p {
                    cases += 1;
                    let e = CohomologyClass::scaled(curve, Fp::new(p, v as i64).unwrap());
                    let t = f_triviality(&e).unwrap().t;
                    let want = if e.is_zero() {
                        Some(0)
                    } else if h_zero {
                        Some(1)
                    } else {
                        None
                    };
                    if t != want {
                        failures.push(format!("f-triviality over F_{p} at class {v}"));
                    }
                }
            }
        }
        suite(
            &mut checks,
            "f-triviality-laws",
            "one Frobenius pullback kills classes at h = 0; none ever does at h != 0",
            cases,
            failures,
        );
    }

    // Saturation against the splitting-root search.
    {
        let mut failures = Vec::new();
        let mut cases = 0;
        for p in [2u32, 3] {
            for f in all_polys(p, 3) {
                cases += 1;
                let verdict = saturation_check(&EtaleCoverSpec::ArtinSchreier { f: f.clone() })
                    .unwrap()
                    .saturated;
                let oracle = artin_schreier_splitting_root(&f).unwrap().is_none();
                if verdict != oracle {
                    failures.push(format!("f = {f} over F_{p}"));
                }
            }
        }
        suite(
            &mut checks,
            "saturation-agreement",
            "the witness search agrees with brute-force root search over F_p(x)",
            cases,
            failures,
        );
    }

    VerificationReport::new(
        "selftest".to_string(),
        checks,
        vec![PRIME_FIELD_CAVEAT.to_string()],
    )
}
