//! Small integer helpers.

use alloc::vec::Vec;

pub fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime factorization as `(prime, exponent)` pairs, primes ascending.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Euler's totient.
pub fn euler_phi(n: u64) -> u64 {
    assert!(n >= 1, "euler_phi(0) is undefined");
    factorize(n).iter().fold(n, |acc, &(p, _)| acc / p * (p - 1))
}

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    if m <= u32::MAX as u64 {
        (a % m) * (b % m) % m
    } else {
        ((a as u128 * b as u128) % m as u128) as u64
    }
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Inverse modulo a prime `p` (Fermat).
pub fn inv_mod_prime(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a, p - 2, p)
}

/// Units of `Z/m`, ascending.
pub fn units(m: u64) -> Vec<u64> {
    (1..=m).filter(|&u| gcd(u as u128, m as u128) == 1).map(|u| u % m).collect()
}

/// A generating set of `(Z/m)^*`: walk the units in ascending order and keep
/// each one not already in the subgroup generated so far.
pub fn unit_group_generators(m: u64) -> Vec<u64> {
    if m <= 2 {
        return Vec::new();
    }
    let mut inside = alloc::vec![false; m as usize];
    inside[1] = true;
    let mut members = alloc::vec![1u64];
    let mut gens = Vec::new();
    for u in units(m) {
        if inside[u as usize] {
            continue;
        }
        gens.push(u);
        // close the subgroup under multiplication by all generators
        let mut k = 0;
        while k < members.len() {
            let x = members[k];
            for &g in &gens {
                let y = x * g % m;
                if !inside[y as usize] {
                    inside[y as usize] = true;
                    members.push(y);
                }
            }
            k += 1;
        }
    }
    gens
}
