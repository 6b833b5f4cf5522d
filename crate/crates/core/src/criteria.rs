//! Desk-scale checkers for the exactness machinery: base change at rational
//! points, the Kunneth necessary condition, maximal trivial subbundles,
//! F-triviality, and saturation of Artin-Schreier covers via connectedness.
//!
//! Connectedness of covers is decided over `F_p(x)`. Over an algebraically
//! closed base the same statements concern geometric connectedness; reports
//! built on these checkers carry that caveat.

use thiserror::Error;

use crate::curve::{h0_extension, hasse_invariant, CohomologyClass, CurveError};
use crate::field::Fp;
use crate::poly::{Polynomial, PolynomialError};
use crate::torsor::{pushforward_fiber_h0, restrict_fiber, FamilyTorsor, TorsorError};

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum CriteriaError {
    #[error(transparent)]
    Field(#[from] crate::field::FieldError),
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Torsor(#[from] TorsorError),
    #[error(transparent)]
    Polynomial(#[from] PolynomialError),
    #[error("Artin-Schreier search supports p <= 5, got p = {p}")]
    UnsupportedPrime { p: u32 },
    #[error("degree {degree} exceeds the search bound {bound}")]
    DegreeBoundExceeded { degree: u32, bound: u32 },
}

/// Base-change behaviour of the pushforward along `A^1 x Y -> A^1`.
///
/// `generic_dim` is the fiber dimension at the generic point, read off the
/// class polynomial (2 when it vanishes identically, else 1); it can be
/// strictly below the minimum over rational points exactly when the class
/// polynomial vanishes at every rational point without being zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaseChangeReport {
    pub per_point: Vec<(Fp, usize)>,
    pub generic_dim: usize,
    pub min_rational_dim: usize,
    /// Points whose fiber dimension exceeds the generic dimension.
    pub failing_points: Vec<Fp>,
    pub passes_everywhere: bool,
}

/// Evaluates the pushforward fiber dimensions at every rational point of
/// the affine line and compares them with the generic dimension.
/// Characteristic 2 only (rank-2 pushforward model).
pub fn base_change_check(q: &FamilyTorsor) -> Result<BaseChangeReport, CriteriaError> {
    let p = q.curve().modulus();
    let mut per_point = Vec::with_capacity(p as usize);
    for v in 0..p {
        let x0 = Fp::new(p, v as i64)?;
        per_point.push((x0, pushforward_fiber_h0(q, x0)?));
    }
    let generic_dim = if q.class_polynomial().is_zero() { 2 } else { 1 };
    let min_rational_dim = per_point.iter().map(|(_, d)| *d).min().unwrap_or(2);
    let failing_points: Vec<Fp> = per_point
        .iter()
        .filter(|(_, d)| *d > generic_dim)
        .map(|(x, _)| *x)
        .collect();
    let passes_everywhere = failing_points.is_empty();
    Ok(BaseChangeReport {
        per_point,
        generic_dim,
        min_rational_dim,
        failing_points,
        passes_everywhere,
    })
}

/// Verdict of the Kunneth necessary condition: a product splitting of the
/// fundamental group forces all fibers of a torsor along rational points to
/// be isomorphic. `PassNecessary` is deliberately inconclusive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KunnethVerdict {
    Fail {
        witness: (Fp, Fp),
        classes: (Fp, Fp),
    },
    PassNecessary,
}

impl KunnethVerdict {
    pub fn failed(&self) -> bool {
        matches!(self, KunnethVerdict::Fail { .. })
    }
}

/// Compares fiber classes pairwise over all rational points, reporting the
/// first witness pair with distinct classes.
pub fn kunneth_check(q: &FamilyTorsor) -> KunnethVerdict {
    let p = q.curve().modulus();
    let points: Vec<Fp> = (0..p).map(|v| Fp::reduced(p, v as i64)).collect();
    let classes: Vec<Fp> = points
        .iter()
        .map(|x0| restrict_fiber(q, *x0).class().coeff)
        .collect();
    for i in 0..points.len() {
        for j in (i + 1)..points.len() {
            if classes[i] != classes[j] {
                return KunnethVerdict::Fail {
                    witness: (points[i], points[j]),
                    classes: (classes[i], classes[j]),
                };
            }
        }
    }
    KunnethVerdict::PassNecessary
}

/// Maximal trivial subbundle of the rank-2 extension with class `e`: the
/// image of the global sections, of rank `h^0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TrivialSubbundle {
    pub dimension: usize,
    pub split: bool,
}

pub fn maximal_trivial_subbundle(e: &CohomologyClass) -> TrivialSubbundle {
    let dimension = h0_extension(e);
    TrivialSubbundle {
        dimension,
        split: dimension == 2,
    }
}

/// Minimal Frobenius-pullback trivialization order of a class, or `None`
/// when no pullback trivializes it. `trace` records the class under
/// iterated multiplication by the Hasse scalar.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FTrivialityReport {
    pub t: Option<usize>,
    pub trace: Vec<Fp>,
}

/// Iterates `class -> h * class`; the minimal `t` with `h^t e = 0` is the
/// number of relative Frobenius pullbacks needed to trivialize the
/// extension. Over a prime field a nonzero class with `h != 0` is never
/// trivialized.
pub fn f_triviality(e: &CohomologyClass) -> Result<FTrivialityReport, CriteriaError> {
    let p = e.curve.modulus();
    let h = hasse_invariant(&e.curve)?.h;
    let mut trace = vec![e.coeff];
    let mut current = e.coeff;
    for step in 0..p as usize {
        if current.is_zero() {
            return Ok(FTrivialityReport {
                t: Some(step),
                trace,
            });
        }
        current = h * current;
        trace.push(current);
    }
    let t = current.is_zero().then_some(p as usize);
    Ok(FTrivialityReport { t, trace })
}

/// An etale cover specification for the saturation test: an Artin-Schreier
/// cover `T^p - T = f(x)` of the affine line, or an abstract cover with a
/// known component count.
#[derive(Clone, Debug, PartialEq)]
pub enum EtaleCoverSpec {
    ArtinSchreier { f: Polynomial },
    Abstract { components: usize },
}

/// Result of [`saturation_check`]: saturated iff the cover is connected.
/// For a disconnected Artin-Schreier cover, `witness` is the pair `(g, c)`
/// with `f = g^p - g + c` and `T^p - T - c` split over `F_p`.
#[derive(Clone, Debug, PartialEq)]
pub struct SaturationVerdict {
    pub saturated: bool,
    pub witness: Option<(Polynomial, Fp)>,
}

const MAX_AS_PRIME: u32 = 5;
const MAX_AS_DEGREE: u32 = 8;

/// Decides connectedness of `Spec F_p[x][T]/(T^p - T - f)` over `F_p(x)`:
/// the cover splits iff `f = g^p - g + c` with `T^p - T - c` reducible over
/// `F_p`. The search runs over `g` of degree up to `deg f`, in ascending
/// degree and lexicographic coefficient order.
pub fn saturation_check(cover: &EtaleCoverSpec) -> Result<SaturationVerdict, CriteriaError> {
    match cover {
        EtaleCoverSpec::Abstract { components } => Ok(SaturationVerdict {
            saturated: *components == 1,
            witness: None,
        }),
        EtaleCoverSpec::ArtinSchreier { f } => {
            let p = f.modulus();
            if p > MAX_AS_PRIME {
                return Err(CriteriaError::UnsupportedPrime { p });
            }
            if f.variables().len() != 1 {
                return Err(TorsorError::BaseNotUnivariate.into());
            }
            let deg_f = f.total_degree().unwrap_or(0);
            if deg_f > MAX_AS_DEGREE {
                return Err(CriteriaError::DegreeBoundExceeded {
                    degree: deg_f,
                    bound: MAX_AS_DEGREE,
                });
            }
            let var = f.variables()[0].clone();
            for deg_g in 0..=deg_f {
                // Degree comparison in g^p - g prunes impossible degrees.
                if deg_g > 0 && p * deg_g != deg_f {
                    continue;
                }
                for g in enumerate_polys(p, &var, deg_g) {
                    let diff = f.sub(&g.pow(p).sub(&g));
                    let Some(c) = diff.as_constant() else {
                        continue;
                    };
                    if additive_polynomial_splits(p, c) {
                        return Ok(SaturationVerdict {
                            saturated: false,
                            witness: Some((g, c)),
                        });
                    }
                }
            }
            Ok(SaturationVerdict {
                saturated: true,
                witness: None,
            })
        }
    }
}

/// Whether `T^p - T - c` splits over `F_p`, i.e. has a root there.
fn additive_polynomial_splits(p: u32, c: Fp) -> bool {
    (0..p).any(|g| {
        let g = Fp::reduced(p, g as i64);
        g.pow(p as u64) - g == c
    })
}

/// All polynomials over `F_p` of degree exactly `deg` (every constant for
/// `deg = 0`), lexicographic by coefficient vector.
fn enumerate_polys(p: u32, var: &str, deg: u32) -> Vec<Polynomial> {
    let len = deg as usize + 1;
    let mut out = Vec::new();
    let mut coeffs = vec![0i64; len];
    loop {
        if deg == 0 || coeffs[deg as usize] != 0 {
            out.push(Polynomial::from_univariate_coeffs(p, var, &coeffs).unwrap());
        }
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

/// Brute-force splitting-root search for `T^p - T - f` over `F_p(x)`: tries
/// every polynomial `g` of degree up to `deg f` as a root. Independent of
/// the witness-normalizing search in [`saturation_check`]; a root exists
/// iff the cover is disconnected.
pub fn artin_schreier_splitting_root(
    f: &Polynomial,
) -> Result<Option<Polynomial>, CriteriaError> {
    let p = f.modulus();
    if p > MAX_AS_PRIME {
        return Err(CriteriaError::UnsupportedPrime { p });
    }
    let deg_f = f.total_degree().unwrap_or(0);
    if deg_f > MAX_AS_DEGREE {
        return Err(CriteriaError::DegreeBoundExceeded {
            degree: deg_f,
            bound: MAX_AS_DEGREE,
        });
    }
    let var = f.variables()[0].clone();
    for deg_g in 0..=deg_f {
        for g in enumerate_polys(p, &var, deg_g) {
            if g.pow(p).sub(&g) == *f {
                return Ok(Some(g));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::WeierstrassCurve;
    use crate::torsor::{build_family_torsor, frobenius_torsor};

    fn supersingular_f2() -> WeierstrassCurve {
        WeierstrassCurve::new(2, [0, 0, 1, 0, 0]).unwrap()
    }

    fn family(fcoeffs: &[i64]) -> FamilyTorsor {
        let (t, _) = frobenius_torsor(&supersingular_f2()).unwrap();
        let f = Polynomial::from_univariate_coeffs(2, "x", fcoeffs).unwrap();
        build_family_torsor(&t, &f).unwrap()
    }

    #[test]
    fn base_change_fails_exactly_at_origin_for_the_counterexample() {
        let report = base_change_check(&family(&[0, 1])).unwrap();
        assert_eq!(report.generic_dim, 1);
        assert_eq!(report.min_rational_dim, 1);
        assert_eq!(report.failing_points.len(), 1);
        assert!(report.failing_points[0].is_zero());
        assert!(!report.passes_everywhere);
    }

    #[test]
    fn base_change_passes_for_trivial_family() {
        let report = base_change_check(&family(&[])).unwrap();
        assert_eq!(report.generic_dim, 2);
        assert_eq!(report.min_rational_dim, 2);
        assert!(report.passes_everywhere);
    }

    #[test]
    fn base_change_with_rationally_invisible_class() {
        // f = x^2 + x vanishes on F_2 but not identically: every rational
        // point jumps above the generic dimension.
        let report = base_change_check(&family(&[0, 1, 1])).unwrap();
        assert_eq!(report.generic_dim, 1);
        assert_eq!(report.min_rational_dim, 2);
        assert_eq!(report.failing_points.len(), 2);
    }

    #[test]
    fn kunneth_fails_with_witness_0_1() {
        match kunneth_check(&family(&[0, 1])) {
            KunnethVerdict::Fail { witness, classes } => {
                assert!(witness.0.is_zero());
                assert!(witness.1.is_one());
                assert!(classes.0.is_zero());
                assert!(classes.1.is_one());
            }
            KunnethVerdict::PassNecessary => panic!("expected failure"),
        }
    }

    #[test]
    fn kunneth_passes_for_constant_families() {
        assert_eq!(kunneth_check(&family(&[])), KunnethVerdict::PassNecessary);
        assert_eq!(kunneth_check(&family(&[1])), KunnethVerdict::PassNecessary);
    }

    #[test]
    fn maximal_trivial_subbundle_dimensions() {
        let ss = supersingular_f2();
        let split = maximal_trivial_subbundle(&CohomologyClass::zero(ss));
        assert_eq!(split.dimension, 2);
        assert!(split.split);
        let nonsplit = maximal_trivial_subbundle(&CohomologyClass::generator(ss));
        assert_eq!(nonsplit.dimension, 1);
        assert!(!nonsplit.split);
        // Scaling the class by a unit cannot change the answer.
        let c3 = WeierstrassCurve::new(3, [0, 0, 0, 2, 0]).unwrap();
        let gen = CohomologyClass::generator(c3);
        for unit in 1..3 {
            let e = gen.scale(Fp::new(3, unit).unwrap());
            assert_eq!(maximal_trivial_subbundle(&e).dimension, 1);
        }
    }

    #[test]
    fn f_triviality_laws() {
        let ss = supersingular_f2();
        assert_eq!(
            f_triviality(&CohomologyClass::zero(ss)).unwrap().t,
            Some(0)
        );
        assert_eq!(
            f_triviality(&CohomologyClass::generator(ss)).unwrap().t,
            Some(1)
        );
        let ord = WeierstrassCurve::new(2, [1, 0, 0, 0, 1]).unwrap();
        assert_eq!(f_triviality(&CohomologyClass::generator(ord)).unwrap().t, None);
    }

    #[test]
    fn saturation_of_linear_artin_schreier_cover() {
        let f = Polynomial::from_univariate_coeffs(2, "x", &[0, 1]).unwrap();
        let verdict = saturation_check(&EtaleCoverSpec::ArtinSchreier { f }).unwrap();
        assert!(verdict.saturated);
        assert!(verdict.witness.is_none());
    }

    #[test]
    fn saturation_detects_split_cover_with_witness() {
        // f = x^2 - x = g^2 - g with g = x.
        let f = Polynomial::from_univariate_coeffs(2, "x", &[0, 1, 1]).unwrap();
        let verdict = saturation_check(&EtaleCoverSpec::ArtinSchreier { f }).unwrap();
        assert!(!verdict.saturated);
        let (g, c) = verdict.witness.unwrap();
        assert_eq!(g, Polynomial::from_univariate_coeffs(2, "x", &[0, 1]).unwrap());
        assert!(c.is_zero());
    }

    #[test]
    fn abstract_covers() {
        assert!(
            saturation_check(&EtaleCoverSpec::Abstract { components: 1 })
                .unwrap()
                .saturated
        );
        assert!(
            !saturation_check(&EtaleCoverSpec::Abstract { components: 2 })
                .unwrap()
                .saturated
        );
    }

    #[test]
    fn saturation_agrees_with_root_search_oracle() {
        for p in [2u32, 3] {
            for f in (0..=3u32).flat_map(|d| enumerate_polys(p, "x", d)) {
                let by_check = saturation_check(&EtaleCoverSpec::ArtinSchreier { f: f.clone() })
                    .unwrap()
                    .saturated;
                let by_root = artin_schreier_splitting_root(&f).unwrap().is_none();
                assert_eq!(by_check, by_root, "disagreement at f = {f} over F_{p}");
            }
        }
    }

    #[test]
    fn degree_bound_reported() {
        let mut coeffs = vec![0i64; 10];
        coeffs[9] = 1;
        let f = Polynomial::from_univariate_coeffs(2, "x", &coeffs).unwrap();
        assert!(matches!(
            saturation_check(&EtaleCoverSpec::ArtinSchreier { f }),
            Err(CriteriaError::DegreeBoundExceeded { degree: 9, .. })
        ));
    }
}
