//! Shared fixtures for the integration suites.
#![allow(dead_code)] // each suite links this module but uses a subset

use torsor_core::{Polynomial, WeierstrassCurve};

/// Supersingular (h = 0) fixtures per characteristic.
pub fn supersingular(p: u32) -> WeierstrassCurve {
    let coeffs = match p {
        2 => [0, 0, 1, 0, 0],  // y^2 + y = x^3
        3 => [0, 0, 0, 2, 0],  // y^2 = x^3 - x
        5 => [0, 0, 0, 0, 1],  // y^2 = x^3 + 1
        _ => panic!("no supersingular fixture for p = {p}"),
    };
    WeierstrassCurve::new(p, coeffs).unwrap()
}

/// Ordinary (h != 0) fixtures per characteristic.
pub fn ordinary(p: u32) -> WeierstrassCurve {
    let coeffs = match p {
        2 => [1, 0, 0, 0, 1],  // y^2 + xy = x^3 + 1
        3 => [0, 1, 0, 0, 2],  // y^2 = x^3 + x^2 - 1
        5 => [0, 1, 0, 0, 1],  // y^2 = x^3 + x^2 + 1
        _ => panic!("no ordinary fixture for p = {p}"),
    };
    WeierstrassCurve::new(p, coeffs).unwrap()
}

/// Every univariate polynomial over `F_p` in `var` of degree at most `max_deg`.
pub fn all_polys_up_to(p: u32, var: &str, max_deg: u32) -> Vec<Polynomial> {
    let len = max_deg as usize + 1;
    let mut out = Vec::new();
    let mut coeffs = vec![0i64; len];
    loop {
        out.push(Polynomial::from_univariate_coeffs(p, var, &coeffs).unwrap());
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
