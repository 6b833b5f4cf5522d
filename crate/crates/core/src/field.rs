//! Exact arithmetic in the prime fields `F_p` for `2 <= p <= 97`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use thiserror::Error;

/// Largest supported prime modulus.
pub const MAX_PRIME: u32 = 97;

const SUPPORTED_PRIMES: [u32; 25] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
];

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum FieldError {
    #[error("modulus {0} is not a prime in the supported range 2..=97")]
    UnsupportedModulus(u32),
}

/// Whether `p` is one of the supported prime moduli.
pub fn is_supported_prime(p: u32) -> bool {
    SUPPORTED_PRIMES.contains(&p)
}

/// An element of the prime field `F_p`, stored as the canonical residue in `[0, p)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp {
    p: u32,
    value: u32,
}

impl Fp {
    /// Reduces `value` into `[0, p)`. Fails if `p` is not a supported prime.
    pub fn new(p: u32, value: i64) -> Result<Self, FieldError> {
        if !is_supported_prime(p) {
            return Err(FieldError::UnsupportedModulus(p));
        }
        Ok(Self::reduced(p, value))
    }

    pub(crate) fn reduced(p: u32, value: i64) -> Self {
        debug_assert!(is_supported_prime(p));
        Fp {
            p,
            value: value.rem_euclid(p as i64) as u32,
        }
    }

    pub fn zero(p: u32) -> Self {
        Self::reduced(p, 0)
    }

    pub fn one(p: u32) -> Self {
        Self::reduced(p, 1)
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    /// Canonical residue in `[0, p)`.
    pub fn value(&self) -> u32 {
        self.value
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    pub fn is_one(&self) -> bool {
        self.value == 1
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Fp> {
        if self.is_zero() {
            return None;
        }
        // Fermat: a^(p-2) = a^{-1} for a != 0.
        Some(self.pow(self.p as u64 - 2))
    }

    pub fn pow(&self, mut e: u64) -> Fp {
        let mut base = *self;
        let mut acc = Fp::one(self.p);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    fn assert_same_field(&self, other: &Fp) {
        assert_eq!(
            self.p, other.p,
            "mixed prime moduli: {} vs {}",
            self.p, other.p
        );
    }
}

impl Add for Fp {
    type Output = Fp;
    fn add(self, rhs: Fp) -> Fp {
        self.assert_same_field(&rhs);
        Fp::reduced(self.p, self.value as i64 + rhs.value as i64)
    }
}

impl Sub for Fp {
    type Output = Fp;
    fn sub(self, rhs: Fp) -> Fp {
        self.assert_same_field(&rhs);
        Fp::reduced(self.p, self.value as i64 - rhs.value as i64)
    }
}

impl Mul for Fp {
    type Output = Fp;
    fn mul(self, rhs: Fp) -> Fp {
        self.assert_same_field(&rhs);
        Fp::reduced(self.p, self.value as i64 * rhs.value as i64)
    }
}

impl Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        Fp::reduced(self.p, -(self.value as i64))
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl fmt::Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.p)
    }
}
