//! Prime-field arithmetic on canonical `u32` residues.

use crate::error::{domain, Error, Result};

/// 2³¹ − 1.
pub const DEFAULT_MODULUS: u64 = 2_147_483_647;

/// Every factorial up to degree 60 must be a unit, so small primes are rejected.
pub const MIN_MODULUS: u64 = 1_000_000;

/// Residues are stored in `u32` and products must fit in `u64`.
pub const MAX_MODULUS: u64 = 1 << 31;

/// A prime field `Z/pZ` with `10⁶ < p < 2³¹`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

impl Default for PrimeField {
    fn default() -> Self {
        PrimeField { p: DEFAULT_MODULUS as u32 }
    }
}

impl PrimeField {
    pub fn new(modulus: u64) -> Result<Self> {
        if modulus <= MIN_MODULUS {
            return Err(Error::Config(format!("modulus {modulus} must exceed {MIN_MODULUS}")));
        }
        if modulus >= MAX_MODULUS {
            return Err(Error::Config(format!("modulus {modulus} must be below 2^31")));
        }
        if !is_prime(modulus) {
            return Err(Error::Config(format!("modulus {modulus} is not prime")));
        }
        Ok(PrimeField { p: modulus as u32 })
    }

    #[inline]
    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn is_mersenne31(&self) -> bool {
        self.p as u64 == DEFAULT_MODULUS
    }

    #[inline]
    pub fn reduce_u64(&self, x: u64) -> u32 {
        (x % self.p as u64) as u32
    }

    pub fn from_i64(&self, x: i64) -> u32 {
        x.rem_euclid(self.p as i64) as u32
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let s = a as u64 + b as u64;
        if s >= self.p as u64 {
            (s - self.p as u64) as u32
        } else {
            s as u32
        }
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            (a as u64 + self.p as u64 - b as u64) as u32
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    pub fn pow(&self, mut base: u32, mut exp: u64) -> u32 {
        let mut acc = 1u32;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: u32) -> Result<u32> {
        modular_inverse(a, self)
    }
}

/// Returns `b` with `a·b ≡ 1 (mod p)`.
pub fn modular_inverse(a: u32, field: &PrimeField) -> Result<u32> {
    let p = field.modulus() as i64;
    let a = a as i64 % p;
    if a == 0 {
        return Err(domain("zero has no inverse"));
    }
    // extended Euclid on (a, p)
    let (mut r0, mut r1) = (p, a);
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    Ok(t0.rem_euclid(p) as u32)
}

/// Deterministic trial division; moduli are below 2³¹ so this is at most ~23k divisions.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}
