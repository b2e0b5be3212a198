//! Small finite fields GF(p^e).
//!
//! An element is a coefficient vector over GF(p) of a polynomial of degree
//! below `e`, packed into an integer as `sum c_i p^i`. The modulus is the
//! lexicographically least primitive monic polynomial of degree `e`
//! (coefficients compared from the constant term up), so the residue of `x`
//! generates the multiplicative group.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::arith::{factorize, is_prime};

/// Largest field order accepted by [`FqField::new`].
pub const MAX_Q: u64 = 128;

/// Largest order for internal extension fields (Singer constructions).
pub(crate) const MAX_EXTENSION_Q: u64 = 1 << 14;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FieldError {
    NotPrime(u64),
    BadExponent,
    OrderOutOfRange { q: u128, max: u64 },
    DivisionByZero,
}

impl fmt::Display for FieldError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldError::NotPrime(p) => write!(f, "{p} is not prime"),
            FieldError::BadExponent => f.write_str("exponent must be at least 1"),
            FieldError::OrderOutOfRange { q, max } => {
                write!(f, "field order {q} outside supported range (max {max})")
            }
            FieldError::DivisionByZero => f.write_str("division by zero"),
        }
    }
}

impl core::error::Error for FieldError {}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FqElem(pub u32);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FqField {
    p: u32,
    e: u32,
    q: u32,
    /// Monic modulus, constant term first, length `e + 1`.
    modulus: Vec<u32>,
}

impl FqField {
    /// GF(p^e) for `p^e <= 128`.
    pub fn new(p: u64, e: u32) -> Result<Self, FieldError> {
        Self::with_limit(p, e, MAX_Q)
    }

    pub(crate) fn with_limit(p: u64, e: u32, max_q: u64) -> Result<Self, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        if e == 0 {
            return Err(FieldError::BadExponent);
        }
        let q = (p as u128).checked_pow(e).unwrap_or(u128::MAX);
        if q > max_q as u128 {
            return Err(FieldError::OrderOutOfRange { q, max: max_q });
        }
        let (p, q) = (p as u32, q as u32);
        let mut field = FqField { p, e, q, modulus: vec![0; e as usize + 1] };
        // candidates ordered by (c_0, c_1, ..): c_0 is the most significant digit
        for code in 0..q {
            let mut c = code;
            let mut coeffs = vec![0u32; e as usize + 1];
            for i in (0..e as usize).rev() {
                coeffs[i] = c % p;
                c /= p;
            }
            coeffs[e as usize] = 1;
            field.modulus = coeffs;
            if field.residue_of_x_is_primitive() {
                return Ok(field);
            }
        }
        unreachable!("a primitive polynomial of every degree exists")
    }

    fn residue_of_x_is_primitive(&self) -> bool {
        if self.modulus[0] == 0 {
            return false;
        }
        let x = self.gen();
        let n = (self.q - 1) as u64;
        if self.pow(x, n) != self.one() {
            return false;
        }
        factorize(n).iter().all(|&(l, _)| self.pow(x, n / l) != self.one())
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn e(&self) -> u32 {
        self.e
    }

    #[inline]
    pub fn q(&self) -> u32 {
        self.q
    }

    /// Modulus coefficients, constant term first (monic, length `e + 1`).
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn zero(&self) -> FqElem {
        FqElem(0)
    }

    pub fn one(&self) -> FqElem {
        FqElem(1)
    }

    /// The residue of `x`, a generator of the multiplicative group.
    pub fn gen(&self) -> FqElem {
        if self.e == 1 {
            // x = -c_0 modulo x + c_0
            FqElem((self.p - self.modulus[0]) % self.p)
        } else {
            FqElem(self.p)
        }
    }

    /// All elements in packed order.
    pub fn elements(&self) -> impl Iterator<Item = FqElem> {
        (0..self.q).map(FqElem)
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> FqElem {
        debug_assert!(coeffs.len() <= self.e as usize);
        FqElem(coeffs.iter().rev().fold(0, |acc, &c| acc * self.p + c % self.p))
    }

    pub fn coeffs(&self, a: FqElem) -> Vec<u32> {
        let mut v = a.0;
        (0..self.e)
            .map(|_| {
                let c = v % self.p;
                v /= self.p;
                c
            })
            .collect()
    }

    /// The image of an integer under `Z -> GF(p) -> GF(q)`.
    pub fn from_int(&self, k: i64) -> FqElem {
        FqElem(k.rem_euclid(self.p as i64) as u32)
    }

    pub fn add(&self, a: FqElem, b: FqElem) -> FqElem {
        let (mut x, mut y) = (a.0, b.0);
        let (mut out, mut scale) = (0, 1);
        for _ in 0..self.e {
            out += ((x % self.p + y % self.p) % self.p) * scale;
            x /= self.p;
            y /= self.p;
            scale *= self.p;
        }
        FqElem(out)
    }

    pub fn neg(&self, a: FqElem) -> FqElem {
        let mut x = a.0;
        let (mut out, mut scale) = (0, 1);
        for _ in 0..self.e {
            out += ((self.p - x % self.p) % self.p) * scale;
            x /= self.p;
            scale *= self.p;
        }
        FqElem(out)
    }

    pub fn sub(&self, a: FqElem, b: FqElem) -> FqElem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FqElem, b: FqElem) -> FqElem {
        let e = self.e as usize;
        let p = self.p as u64;
        let (ca, cb) = (self.coeffs(a), self.coeffs(b));
        let mut prod = vec![0u64; 2 * e - 1];
        for (i, &x) in ca.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in cb.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
            }
        }
        // reduce by the monic modulus from the top
        for top in (e..prod.len()).rev() {
            let c = prod[top];
            if c == 0 {
                continue;
            }
            prod[top] = 0;
            for i in 0..e {
                let m = self.modulus[i] as u64;
                prod[top - e + i] = (prod[top - e + i] + (p - c) * m) % p;
            }
        }
        let low: Vec<u32> = prod[..e].iter().map(|&c| c as u32).collect();
        self.from_coeffs(&low)
    }

    pub fn pow(&self, a: FqElem, mut k: u64) -> FqElem {
        let mut acc = self.one();
        let mut base = a;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: FqElem) -> Result<FqElem, FieldError> {
        if a.0 == 0 {
            return Err(FieldError::DivisionByZero);
        }
        Ok(self.pow(a, self.q as u64 - 2))
    }

    /// `a^p`, the generator of the Galois group over GF(p).
    pub fn frobenius(&self, a: FqElem) -> FqElem {
        self.pow(a, self.p as u64)
    }

    /// Multiplicative order of a nonzero element.
    pub fn order_of(&self, a: FqElem) -> u64 {
        assert!(a.0 != 0, "zero has no multiplicative order");
        let mut n = (self.q - 1) as u64;
        for (l, k) in factorize(n) {
            for _ in 0..k {
                if self.pow(a, n / l) == self.one() {
                    n /= l;
                } else {
                    break;
                }
            }
        }
        n
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn construction_examples() {
        let f8 = FqField::new(2, 3).unwrap();
        assert_eq!(f8.q(), 8);
        assert_eq!(f8.order_of(f8.gen()), 7);
        let f3 = FqField::new(3, 1).unwrap();
        assert_eq!(f3.q(), 3);
        let f4 = FqField::new(2, 2).unwrap();
        assert_eq!(f4.modulus(), &[1, 1, 1]);
        assert_eq!(FqField::new(4, 1).unwrap_err(), FieldError::NotPrime(4));
        assert!(matches!(FqField::new(2, 8), Err(FieldError::OrderOutOfRange { q: 256, .. })));
        assert_eq!(FqField::new(2, 0).unwrap_err(), FieldError::BadExponent);
    }

    #[test]
    fn arithmetic_examples() {
        let f8 = FqField::new(2, 3).unwrap();
        for a in f8.elements() {
            assert_eq!(f8.add(a, a), f8.zero());
        }
        let f9 = FqField::new(3, 2).unwrap();
        for a in f9.elements() {
            assert_eq!(f9.frobenius(f9.frobenius(a)), a);
        }
        let f7 = FqField::new(7, 1).unwrap();
        assert_eq!(f7.inv(FqElem(3)).unwrap(), FqElem(5));
        assert_eq!(f7.inv(FqElem(0)), Err(FieldError::DivisionByZero));
    }

    #[test]
    fn every_supported_field_is_sound() {
        for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97, 101, 103, 107, 109, 113, 127] {
            let mut e = 1;
            while p.pow(e) <= MAX_Q {
                let f = FqField::new(p, e).unwrap();
                assert_eq!(f.order_of(f.gen()), f.q() as u64 - 1, "GF({p}^{e})");
                for a in f.elements() {
                    assert_eq!(f.pow(a, f.q() as u64), a, "Frobenius fixes GF({p}^{e})");
                }
                e += 1;
            }
        }
    }

    /// Independent oracle: polynomial arithmetic over Z with reduction done
    /// by long division, no packing.
    fn oracle_mul(p: u32, modulus: &[u32], a: &[u32], b: &[u32]) -> Vec<u32> {
        let e = modulus.len() - 1;
        let mut prod = vec![0i64; 2 * e];
        for i in 0..e {
            for j in 0..e {
                prod[i + j] += a[i] as i64 * b[j] as i64;
            }
        }
        for top in (e..2 * e).rev() {
            let c = prod[top].rem_euclid(p as i64);
            for i in 0..=e {
                prod[top - e + i] -= c * modulus[i] as i64;
            }
        }
        prod[..e].iter().map(|&c| c.rem_euclid(p as i64) as u32).collect()
    }

    #[test]
    fn tables_match_oracle_for_small_fields() {
        for (p, e) in [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2)] {
            let f = FqField::new(p, e).unwrap();
            for a in f.elements() {
                for b in f.elements() {
                    let (ca, cb) = (f.coeffs(a), f.coeffs(b));
                    let sum: Vec<u32> = ca.iter().zip(&cb).map(|(x, y)| (x + y) % p as u32).collect();
                    assert_eq!(f.coeffs(f.add(a, b)), sum);
                    assert_eq!(f.coeffs(f.mul(a, b)), oracle_mul(p as u32, f.modulus(), &ca, &cb));
                }
            }
        }
    }

    #[test]
    fn lexicographically_least_moduli() {
        // GF(8): x^3+x^2+1 has (c0,c1,c2) = (1,0,1), which precedes x^3+x+1 at (1,1,0)
        assert_eq!(FqField::new(2, 3).unwrap().modulus(), &[1, 0, 1, 1]);
        assert_eq!(FqField::new(3, 2).unwrap().modulus(), &[2, 1, 1]);
        // GF(7): x + 2, root 5
        let f7 = FqField::new(7, 1).unwrap();
        assert_eq!(f7.modulus(), &[2, 1]);
        assert_eq!(f7.gen(), FqElem(5));
    }

    proptest! {
        #[test]
        fn frobenius_is_a_ring_map(a in 0u32..27, b in 0u32..27) {
            let f = FqField::new(3, 3).unwrap();
            let (a, b) = (FqElem(a), FqElem(b));
            prop_assert_eq!(f.frobenius(f.add(a, b)), f.add(f.frobenius(a), f.frobenius(b)));
            prop_assert_eq!(f.frobenius(f.mul(a, b)), f.mul(f.frobenius(a), f.frobenius(b)));
        }

        #[test]
        fn inverses(a in 1u32..125) {
            let f = FqField::new(5, 3).unwrap();
            let a = FqElem(a);
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), f.one());
        }
    }
}
