//! Independent computation of the Frobenius matrix on `H^1(E, O_E)` from the
//! standard two-chart cover, used to cross-check the closed-form Hasse
//! invariant.
//!
//! Classes are represented by principal parts at the point at infinity in
//! the local parameter `z = -x/y`. Functions regular away from infinity are
//! the polynomials in `x, y`; one function realizes each pole order `>= 2`
//! (the Weierstrass gap sits at order 1), so pole-order rewriting against
//! their expansions reduces any principal part to a multiple of `z^{-1}`,
//! which spans the quotient. Frobenius raises a representative to its
//! `p`-th power; the image of `z^{-1}` reduces to `h * z^{-1}`.

use crate::curve::{CurveError, WeierstrassCurve};
use crate::field::Fp;

/// A truncated Laurent series over `F_p`: coefficients for exponents in
/// `[lead, prec)`; exponents below `lead` are known to vanish, exponents at
/// or above `prec` are unknown.
#[derive(Clone, Debug)]
struct Laurent {
    p: u32,
    lead: i64,
    coeffs: Vec<Fp>,
    prec: i64,
}

impl Laurent {
    fn zero(p: u32, prec: i64) -> Self {
        Laurent {
            p,
            lead: prec,
            coeffs: vec![],
            prec,
        }
    }

    fn monomial(p: u32, c: Fp, exp: i64, prec: i64) -> Self {
        if c.is_zero() || exp >= prec {
            return Self::zero(p, prec);
        }
        let mut coeffs = vec![Fp::zero(p); (prec - exp) as usize];
        coeffs[0] = c;
        Laurent {
            p,
            lead: exp,
            coeffs,
            prec,
        }
    }

    fn coeff_at(&self, exp: i64) -> Fp {
        assert!(exp < self.prec, "coefficient beyond known precision");
        if exp < self.lead {
            Fp::zero(self.p)
        } else {
            self.coeffs[(exp - self.lead) as usize]
        }
    }

    /// Valuation: exponent of the first known nonzero coefficient, or
    /// `prec` when the series is zero to precision.
    fn valuation(&self) -> i64 {
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                return self.lead + i as i64;
            }
        }
        self.prec
    }

    fn truncate(mut self, prec: i64) -> Self {
        if prec < self.prec {
            self.prec = prec;
            if self.lead >= prec {
                self.lead = prec;
                self.coeffs.clear();
            } else {
                self.coeffs.truncate((prec - self.lead) as usize);
            }
        }
        self
    }

    fn add(&self, rhs: &Laurent) -> Laurent {
        assert_eq!(self.p, rhs.p);
        let prec = self.prec.min(rhs.prec);
        let lead = self.lead.min(rhs.lead).min(prec);
        let mut coeffs = vec![Fp::zero(self.p); (prec - lead) as usize];
        for (out, e) in coeffs.iter_mut().zip(lead..prec) {
            let a = if e < self.prec { self.coeff_at(e) } else { Fp::zero(self.p) };
            let b = if e < rhs.prec { rhs.coeff_at(e) } else { Fp::zero(self.p) };
            *out = a + b;
        }
        Laurent {
            p: self.p,
            lead,
            coeffs,
            prec,
        }
    }

    fn neg(&self) -> Laurent {
        let mut out = self.clone();
        for c in &mut out.coeffs {
            *c = -*c;
        }
        out
    }

    fn mul(&self, rhs: &Laurent) -> Laurent {
        assert_eq!(self.p, rhs.p);
        // Known terms of the product extend to min over cross precisions.
        let prec = (self.prec + rhs.valuation()).min(rhs.prec + self.valuation());
        let lead = (self.lead + rhs.lead).min(prec);
        let mut coeffs = vec![Fp::zero(self.p); (prec - lead).max(0) as usize];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let ea = self.lead + i as i64;
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let e = ea + rhs.lead + j as i64;
                if e < prec {
                    coeffs[(e - lead) as usize] = coeffs[(e - lead) as usize] + *a * *b;
                }
            }
        }
        Laurent {
            p: self.p,
            lead,
            coeffs,
            prec,
        }
    }

    fn scale(&self, c: Fp) -> Laurent {
        let mut out = self.clone();
        for x in &mut out.coeffs {
            *x = *x * c;
        }
        out
    }

    /// Multiplicative inverse of a series with known nonzero valuation.
    fn inverse(&self) -> Laurent {
        let v = self.valuation();
        assert!(v < self.prec, "cannot invert a series that is zero to precision");
        let u0 = self.coeff_at(v);
        let u0_inv = u0.inv().expect("leading coefficient nonzero");
        // Relative coefficients of self: s_m = coeff(v + m).
        let rel_terms = (self.prec - v) as usize;
        let mut r = vec![Fp::zero(self.p); rel_terms];
        r[0] = u0_inv;
        for n in 1..rel_terms {
            let mut acc = Fp::zero(self.p);
            for m in 1..=n {
                let s_m = self.coeff_at(v + m as i64);
                if !s_m.is_zero() && !r[n - m].is_zero() {
                    acc = acc + s_m * r[n - m];
                }
            }
            r[n] = -(u0_inv * acc);
        }
        Laurent {
            p: self.p,
            lead: -v,
            coeffs: r,
            prec: -v + rel_terms as i64,
        }
    }
}

/// Local expansions of `x` and `y` at infinity in the parameter `z = -x/y`,
/// obtained from the Weierstrass relation
/// `w = z^3 + a1 z w + a2 z^2 w + a3 w^2 + a4 z w^2 + a6 w^3`
/// for `w = -1/y`, then `x = z/w`, `y = -1/w`.
fn expansions_at_infinity(c: &WeierstrassCurve, prec: i64) -> (Laurent, Laurent) {
    let p = c.modulus();
    let [a1, a2, a3, a4, a6] = c.coefficients();
    let z = Laurent::monomial(p, Fp::one(p), 1, prec);
    let z2 = z.mul(&z).truncate(prec);
    let z3 = z2.mul(&z).truncate(prec);
    let term = |coef: Fp, s: &Laurent| s.scale(coef);

    let mut w = z3.clone();
    loop {
        let w2 = w.mul(&w).truncate(prec);
        let w3 = w2.mul(&w).truncate(prec);
        let next = z3
            .add(&term(a1, &z.mul(&w)))
            .add(&term(a2, &z2.mul(&w)))
            .add(&term(a3, &w2))
            .add(&term(a4, &z.mul(&w2)))
            .add(&term(a6, &w3))
            .truncate(prec);
        let stable = next.lead == w.lead && next.prec == w.prec && next.coeffs == w.coeffs;
        w = next;
        if stable {
            break;
        }
    }
    let w_inv = w.inverse();
    let x = z.mul(&w_inv);
    let y = w_inv.neg();
    (x, y)
}

/// Principal part (coefficients of `z^{-1} .. z^{-n_max}`) of a series;
/// index `m - 1` holds the coefficient of `z^{-m}`.
fn principal_part(s: &Laurent, n_max: i64) -> Result<Vec<Fp>, CurveError> {
    if s.prec < 0 {
        return Err(CurveError::PrecisionExhausted(s.prec));
    }
    Ok((1..=n_max).map(|m| s.coeff_at(-m)).collect())
}

/// The Frobenius matrix on `H^1(E, O_E)` computed from principal parts at
/// infinity. Independent of the closed-form Hasse invariant.
pub fn cech_frobenius_h(c: &WeierstrassCurve) -> Result<Fp, CurveError> {
    if !c.is_smooth() {
        return Err(CurveError::SingularCurve);
    }
    let p = c.modulus();
    let n_max = (p as i64).max(3);
    let prec = 2 * n_max + 16;
    let (x, y) = expansions_at_infinity(c, prec);

    // Internal consistency: the expansions satisfy the curve equation.
    {
        let [a1, a2, a3, a4, a6] = c.coefficients();
        let lhs = y
            .mul(&y)
            .add(&x.mul(&y).scale(a1))
            .add(&y.scale(a3));
        let rhs = x
            .mul(&x)
            .mul(&x)
            .add(&x.mul(&x).scale(a2))
            .add(&x.scale(a4))
            .add(&Laurent::monomial(p, a6, 0, prec));
        let diff = lhs.add(&rhs.neg());
        assert_eq!(diff.valuation(), diff.prec, "expansions violate the curve equation");
    }

    // One global function per pole order 2..=n_max: x^(m/2) for even m,
    // x^((m-3)/2) * y for odd m.
    let mut eliminators: Vec<(i64, Vec<Fp>)> = Vec::new();
    let mut x_pow = Laurent::monomial(p, Fp::one(p), 0, prec);
    let mut x_powers = vec![x_pow.clone()];
    for _ in 0..=(n_max / 2) {
        x_pow = x_pow.mul(&x);
        x_powers.push(x_pow.clone());
    }
    for m in 2..=n_max {
        let f = if m % 2 == 0 {
            x_powers[(m / 2) as usize].clone()
        } else {
            x_powers[((m - 3) / 2) as usize].mul(&y)
        };
        let tail = principal_part(&f, n_max)?;
        assert!(
            !tail[(m - 1) as usize].is_zero(),
            "expected exact pole order {m}"
        );
        assert!(
            tail[(m as usize)..].iter().all(Fp::is_zero),
            "pole order exceeds {m}"
        );
        eliminators.push((m, tail));
    }

    // Frobenius image of the generator [z^{-1}] is [z^{-p}]; rewrite away
    // every pole order >= 2.
    let mut target = vec![Fp::zero(p); n_max as usize];
    target[(p - 1) as usize] = Fp::one(p);
    for (m, tail) in eliminators.iter().rev() {
        let idx = (*m - 1) as usize;
        if target[idx].is_zero() {
            continue;
        }
        let factor = target[idx] * tail[idx].inv().expect("leading entry nonzero");
        for (t, e) in target.iter_mut().zip(tail) {
            *t = *t - factor * *e;
        }
    }
    assert!(
        target[1..].iter().all(Fp::is_zero),
        "reduction left a pole order above 1"
    );
    Ok(target[0])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::hasse_invariant;

    #[test]
    fn oracle_on_char_2_fixtures() {
        let ss = WeierstrassCurve::new(2, [0, 0, 1, 0, 0]).unwrap();
        assert!(cech_frobenius_h(&ss).unwrap().is_zero());
        let ord = WeierstrassCurve::new(2, [1, 0, 0, 0, 1]).unwrap();
        assert!(cech_frobenius_h(&ord).unwrap().is_one());
    }

    #[test]
    fn oracle_on_char_3_fixtures() {
        let ss = WeierstrassCurve::new(3, [0, 0, 0, 2, 0]).unwrap(); // y^2 = x^3 - x
        assert!(cech_frobenius_h(&ss).unwrap().is_zero());
        let ord = WeierstrassCurve::new(3, [0, 1, 0, 0, 2]).unwrap(); // y^2 = x^3 + x^2 - 1
        assert_eq!(cech_frobenius_h(&ord).unwrap().value(), 1);
    }

    #[test]
    fn oracle_handles_non_completed_square_forms() {
        // The expansion route has no completed-square restriction; check a
        // mixed form over F_3 against supersingularity of its square
        // completion: y^2 + y = x^3 + 2x completes to y'^2 = x^3 + 2x + 1/4.
        let c = WeierstrassCurve::new(3, [0, 0, 1, 2, 0]).unwrap();
        let completed = WeierstrassCurve::new(3, [0, 0, 0, 2, 1]).unwrap();
        assert_eq!(
            cech_frobenius_h(&c).unwrap().is_zero(),
            hasse_invariant(&completed).unwrap().h.is_zero()
        );
    }

    #[test]
    fn oracle_matches_formula_on_f5_completed_squares() {
        for a2 in 0..5 {
            for a4 in 0..5 {
                for a6 in 0..5 {
                    let c = WeierstrassCurve::new(5, [0, a2, 0, a4, a6]).unwrap();
                    if !c.is_smooth() {
                        continue;
                    }
                    assert_eq!(
                        cech_frobenius_h(&c).unwrap(),
                        hasse_invariant(&c).unwrap().h,
                        "mismatch at a2={a2} a4={a4} a6={a6}"
                    );
                }
            }
        }
    }
}
