//! Weierstrass elliptic curves over `F_p`, the Frobenius action on
//! `H^1(E, O_E)` (the Hasse invariant), Riemann-Roch dimension counts, and
//! flat cohomology of `alpha_p`.
//!
//! `H^1(E, O_E)` is one-dimensional and is handled as an abstract line with
//! a fixed named generator. The Frobenius matrix is the single scalar `h`;
//! over the prime field, rescaling the generator multiplies `h` by
//! `c^(p-1) = 1`, so `h` is intrinsic.

use std::fmt;
use thiserror::Error;

use crate::field::{is_supported_prime, FieldError, Fp};
use crate::poly::{Polynomial, PolynomialError};

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum CurveError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Polynomial(#[from] PolynomialError),
    #[error("curve is singular: discriminant is 0")]
    SingularCurve,
    #[error("Hasse formula in odd characteristic {p} requires a1 = a3 = 0 (completed square)")]
    CompletedSquareRequired { p: u32 },
    #[error("series precision exhausted while reducing pole order {0}")]
    PrecisionExhausted(i64),
}

/// A (possibly singular) Weierstrass curve
/// `y^2 + a1 x y + a3 y = x^3 + a2 x^2 + a4 x + a6` over `F_p`.
#[derive(Clone, Copy, PartialEq, Eq)]
pub struct WeierstrassCurve {
    p: u32,
    a1: Fp,
    a2: Fp,
    a3: Fp,
    a4: Fp,
    a6: Fp,
}

impl fmt::Debug for WeierstrassCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "y^2 + {}xy + {}y = x^3 + {}x^2 + {}x + {} over F_{}",
            self.a1, self.a3, self.a2, self.a4, self.a6, self.p
        )
    }
}

impl fmt::Display for WeierstrassCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} {} {} {} {}",
            self.p, self.a1, self.a2, self.a3, self.a4, self.a6
        )
    }
}

impl WeierstrassCurve {
    /// Coefficients in the order `a1, a2, a3, a4, a6`.
    pub fn new(p: u32, coeffs: [i64; 5]) -> Result<Self, CurveError> {
        if !is_supported_prime(p) {
            return Err(FieldError::UnsupportedModulus(p).into());
        }
        let [a1, a2, a3, a4, a6] = coeffs;
        Ok(WeierstrassCurve {
            p,
            a1: Fp::new(p, a1)?,
            a2: Fp::new(p, a2)?,
            a3: Fp::new(p, a3)?,
            a4: Fp::new(p, a4)?,
            a6: Fp::new(p, a6)?,
        })
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn coefficients(&self) -> [Fp; 5] {
        [self.a1, self.a2, self.a3, self.a4, self.a6]
    }

    /// Standard Weierstrass discriminant.
    pub fn discriminant(&self) -> Fp {
        let p = self.p;
        let c = |v: i64| Fp::reduced(p, v);
        let b2 = self.a1 * self.a1 + c(4) * self.a2;
        let b4 = c(2) * self.a4 + self.a1 * self.a3;
        let b6 = self.a3 * self.a3 + c(4) * self.a6;
        let b8 = self.a1 * self.a1 * self.a6 + c(4) * self.a2 * self.a6
            - self.a1 * self.a3 * self.a4
            + self.a2 * self.a3 * self.a3
            - self.a4 * self.a4;
        -(b2 * b2 * b8) - c(8) * b4.pow(3) - c(27) * b6.pow(2) + c(9) * b2 * b4 * b6
    }

    pub fn is_smooth(&self) -> bool {
        !self.discriminant().is_zero()
    }
}

/// `true` iff the Weierstrass model is smooth (discriminant nonzero).
pub fn validate_curve(c: &WeierstrassCurve) -> bool {
    c.is_smooth()
}

/// Which formula [`hasse_invariant_with`] applies. `Negated` is a
/// deliberately wrong variant kept as a probe: the self-test must catch it
/// through the independent Cech cross-check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HasseFormula {
    Standard,
    Negated,
}

/// The matrix of Frobenius on the one-dimensional `H^1(E, O_E)`: a single
/// scalar `h`, zero exactly for supersingular curves.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FrobeniusAction {
    pub curve: WeierstrassCurve,
    pub h: Fp,
}

impl FrobeniusAction {
    /// Supersingularity is defined operationally as `h = 0`.
    pub fn is_supersingular(&self) -> bool {
        self.h.is_zero()
    }
}

/// Hasse invariant by the classical closed formula: `h = a1` for `p = 2`;
/// for odd `p` with `y^2 = f(x)` (requires `a1 = a3 = 0`), the coefficient
/// of `x^(p-1)` in `f^((p-1)/2)`.
pub fn hasse_invariant(c: &WeierstrassCurve) -> Result<FrobeniusAction, CurveError> {
    hasse_invariant_with(c, HasseFormula::Standard)
}

pub fn hasse_invariant_with(
    c: &WeierstrassCurve,
    formula: HasseFormula,
) -> Result<FrobeniusAction, CurveError> {
    if !c.is_smooth() {
        return Err(CurveError::SingularCurve);
    }
    let p = c.p;
    let h = if p == 2 {
        c.a1
    } else {
        if !c.a1.is_zero() || !c.a3.is_zero() {
            return Err(CurveError::CompletedSquareRequired { p });
        }
        let f = Polynomial::zero(p, &["x"])?
            .with_term(&[3], 1)?
            .with_term(&[2], c.a2.value() as i64)?
            .with_term(&[1], c.a4.value() as i64)?
            .with_term(&[0], c.a6.value() as i64)?;
        f.pow((p - 1) / 2).coeff(&[p - 1])
    };
    let h = match formula {
        HasseFormula::Standard => h,
        HasseFormula::Negated => -h,
    };
    Ok(FrobeniusAction { curve: *c, h })
}

/// An element of `H^1(E, O_E)` in the fixed one-dimensional basis.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct CohomologyClass {
    pub curve: WeierstrassCurve,
    pub coeff: Fp,
}

impl CohomologyClass {
    pub fn zero(curve: WeierstrassCurve) -> Self {
        CohomologyClass {
            curve,
            coeff: Fp::zero(curve.modulus()),
        }
    }

    /// The fixed generator of `H^1(E, O_E)`.
    pub fn generator(curve: WeierstrassCurve) -> Self {
        CohomologyClass {
            curve,
            coeff: Fp::one(curve.modulus()),
        }
    }

    pub fn scaled(curve: WeierstrassCurve, coeff: Fp) -> Self {
        assert_eq!(curve.modulus(), coeff.modulus());
        CohomologyClass { curve, coeff }
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    /// Coefficient vector in the fixed basis (length 1).
    pub fn vector(&self) -> [Fp; 1] {
        [self.coeff]
    }

    pub fn scale(&self, c: Fp) -> Self {
        CohomologyClass {
            curve: self.curve,
            coeff: self.coeff * c,
        }
    }
}

/// `H^1(Y, O_Y)` of the base, abstracted to what the flat-cohomology
/// computation needs: either the one-dimensional space of a smooth genus-1
/// curve with its Frobenius scalar, or a vanishing `H^1` (the projective-line
/// surrogate).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StructureSheafH1 {
    Genus1 { frobenius: FrobeniusAction },
    Vanishing { p: u32 },
}

impl StructureSheafH1 {
    pub fn of_curve(c: &WeierstrassCurve) -> Result<Self, CurveError> {
        Ok(StructureSheafH1::Genus1 {
            frobenius: hasse_invariant(c)?,
        })
    }

    pub fn vanishing(p: u32) -> Result<Self, CurveError> {
        if !is_supported_prime(p) {
            return Err(FieldError::UnsupportedModulus(p).into());
        }
        Ok(StructureSheafH1::Vanishing { p })
    }
}

/// `H^1_fl(Y, alpha_p)`, computed as the kernel of Frobenius on
/// `H^1(Y, O_Y)` via the exact sequence `0 -> alpha_p -> G_a -> G_a -> 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct FlatH1 {
    pub dim: usize,
    pub basis: Vec<CohomologyClass>,
}

/// Flat cohomology of `alpha_p` on a smooth genus-1 curve: dimension 1 with
/// the fixed generator when the curve is supersingular, otherwise 0.
pub fn h1_fl_alpha_p(c: &WeierstrassCurve) -> Result<FlatH1, CurveError> {
    Ok(h1_fl_alpha_p_of(&StructureSheafH1::of_curve(c)?))
}

/// Same computation from an abstract `H^1(O)` input; covers the vanishing
/// surrogate.
pub fn h1_fl_alpha_p_of(input: &StructureSheafH1) -> FlatH1 {
    match input {
        StructureSheafH1::Genus1 { frobenius } => {
            if frobenius.h.is_zero() {
                FlatH1 {
                    dim: 1,
                    basis: vec![CohomologyClass::generator(frobenius.curve)],
                }
            } else {
                FlatH1 {
                    dim: 0,
                    basis: vec![],
                }
            }
        }
        StructureSheafH1::Vanishing { .. } => FlatH1 {
            dim: 0,
            basis: vec![],
        },
    }
}

/// `h^0` of a degree-`deg` line bundle on a genus-1 curve by Riemann-Roch:
/// `0` for negative degree, `deg` for positive degree, and at degree zero
/// `1` exactly for the trivial (principal) bundle.
pub fn h0_line_bundle(deg: i64, principal_when_deg0: bool) -> usize {
    if deg < 0 {
        0
    } else if deg > 0 {
        deg as usize
    } else if principal_when_deg0 {
        1
    } else {
        0
    }
}

/// `h^0` of the rank-2 extension `0 -> O -> V -> O -> 0` with class `e`:
/// the connecting map in the long exact sequence sends `1` to `e`, so the
/// answer is 2 for the split extension and 1 otherwise.
pub fn h0_extension(e: &CohomologyClass) -> usize {
    if e.is_zero() {
        2
    } else {
        1
    }
}
