//! Density of primes modulo which an integer polynomial stays irreducible.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::fmt::Write as _;

use crate::arith::{euler_phi, factorize, gcd, inv_mod_prime, mul_mod};
use crate::census::{count_n_cycles, CensusError};
use crate::group::PermGroup;
use crate::rational::Ratio;

/// Largest exponent the polynomial parser accepts.
pub const MAX_POLY_DEGREE: u32 = 256;

/// All primes `<= bound`, ascending.
pub fn sieve_primes(bound: u64) -> Vec<u64> {
    if bound < 2 {
        return Vec::new();
    }
    let b = bound as usize;
    let mut composite = vec![false; b + 1];
    let mut out = Vec::new();
    for i in 2..=b {
        if composite[i] {
            continue;
        }
        out.push(i as u64);
        let mut j = i * i;
        while j <= b {
            composite[j] = true;
            j += i;
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyParseError {
    pub pos: usize,
    pub message: &'static str,
}

impl fmt::Display for PolyParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at offset {}", self.message, self.pos)
    }
}

impl core::error::Error for PolyParseError {}

/// A nonzero polynomial with integer coefficients, constant term first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct IntPoly {
    coeffs: Vec<i64>,
}

impl IntPoly {
    /// `None` for the zero polynomial. Trailing zero coefficients are dropped.
    pub fn new(mut coeffs: Vec<i64>) -> Option<Self> {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            None
        } else {
            Some(IntPoly { coeffs })
        }
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn leading(&self) -> i64 {
        self.coeffs[self.degree()]
    }

    /// Parses sums of terms such as `x^6+x^3+1`, `-3/2x^2 + 2*x - 1/4`.
    ///
    /// A term is an optional coefficient (an integer, or `a/b`) followed by
    /// an optional `x` or `X` with an optional `^k`; `*` may separate the two.
    /// Rational coefficients are cleared by multiplying through by the least
    /// common multiple of the denominators.
    pub fn parse(text: &str) -> Result<Self, PolyParseError> {
        Parser { s: text.as_bytes(), pos: 0 }.poly()
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let mut term = String::new();
            if c < 0 {
                term.push('-');
            } else if !first {
                term.push('+');
            }
            let a = c.unsigned_abs();
            if a != 1 || k == 0 {
                let _ = write!(term, "{a}");
            }
            match k {
                0 => {}
                1 => term.push('x'),
                _ => {
                    let _ = write!(term, "x^{k}");
                }
            }
            f.write_str(&term)?;
            first = false;
        }
        Ok(())
    }
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, message: &'static str) -> PolyParseError {
        PolyParseError { pos: self.pos, message }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn integer(&mut self) -> Result<i128, PolyParseError> {
        self.skip_ws();
        let start = self.pos;
        let mut v: i128 = 0;
        while let Some(&c) = self.s.get(self.pos) {
            if !c.is_ascii_digit() {
                break;
            }
            v = v
                .checked_mul(10)
                .and_then(|v| v.checked_add((c - b'0') as i128))
                .filter(|&v| v <= i64::MAX as i128)
                .ok_or(PolyParseError { pos: start, message: "number too large" })?;
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected a number"));
        }
        Ok(v)
    }

    fn poly(&mut self) -> Result<IntPoly, PolyParseError> {
        // (numerator, denominator, exponent)
        let mut terms: Vec<(i128, i128, u32)> = Vec::new();
        let mut first = true;
        loop {
            let sign = match self.peek() {
                None if !first => break,
                None => return Err(self.err("empty polynomial")),
                Some(b'+') => {
                    self.pos += 1;
                    1
                }
                Some(b'-') => {
                    self.pos += 1;
                    -1
                }
                Some(_) if first => 1,
                Some(_) => return Err(self.err("expected '+' or '-'")),
            };
            first = false;
            let (mut num, mut den, mut has_coef) = (1i128, 1i128, false);
            if matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
                num = self.integer()?;
                has_coef = true;
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    den = self.integer()?;
                    if den == 0 {
                        return Err(self.err("zero denominator"));
                    }
                }
                if self.peek() == Some(b'*') {
                    self.pos += 1;
                    if !matches!(self.peek(), Some(b'x' | b'X')) {
                        return Err(self.err("expected 'x' after '*'"));
                    }
                }
            }
            let exp = if matches!(self.peek(), Some(b'x' | b'X')) {
                self.pos += 1;
                if self.peek() == Some(b'^') {
                    self.pos += 1;
                    let e = self.integer()?;
                    if e > MAX_POLY_DEGREE as i128 {
                        return Err(self.err("exponent too large"));
                    }
                    e as u32
                } else {
                    1
                }
            } else if has_coef {
                0
            } else {
                return Err(self.err("expected a coefficient or 'x'"));
            };
            num *= sign;
            terms.push((num, den, exp));
        }
        let overflow = PolyParseError { pos: 0, message: "coefficients too large" };
        let lcm = terms.iter().try_fold(1i128, |acc, &(_, d, _)| {
            let g = gcd(acc as u128, d as u128) as i128;
            (acc / g).checked_mul(d).filter(|&l| l <= i64::MAX as i128)
        });
        let lcm = lcm.ok_or(overflow.clone())?;
        let deg = terms.iter().map(|t| t.2).max().unwrap_or(0) as usize;
        let mut acc = vec![0i128; deg + 1];
        for &(num, den, exp) in &terms {
            let scaled = num.checked_mul(lcm / den).ok_or(overflow.clone())?;
            acc[exp as usize] = acc[exp as usize].checked_add(scaled).ok_or(overflow.clone())?;
        }
        let coeffs = acc
            .into_iter()
            .map(|c| i64::try_from(c).map_err(|_| overflow.clone()))
            .collect::<Result<Vec<i64>, _>>()?;
        IntPoly::new(coeffs).ok_or(PolyParseError { pos: 0, message: "zero polynomial" })
    }
}

/// A polynomial over `GF(p)` with nonzero leading coefficient, constant
/// term first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyModP {
    p: u64,
    coeffs: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Reduction {
    Good(PolyModP),
    /// The leading coefficient vanishes mod `p`, or the reduction has a
    /// repeated factor.
    Bad,
}

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

/// `a mod m` for monic `m`.
fn rem_monic(a: &mut Vec<u64>, m: &[u64], p: u64) {
    let dm = m.len() - 1;
    while a.len() > dm {
        let c = a.pop().unwrap();
        if c == 0 {
            continue;
        }
        let shift = a.len() - dm;
        for (i, &mi) in m[..dm].iter().enumerate() {
            let t = &mut a[shift + i];
            *t = (*t + p - mul_mod(c, mi, p)) % p;
        }
    }
    trim(a);
}

fn make_monic(a: &mut [u64], p: u64) {
    let inv = inv_mod_prime(*a.last().unwrap(), p);
    for c in a.iter_mut() {
        *c = mul_mod(*c, inv, p);
    }
}

/// Monic gcd; the zero polynomial is represented by an empty vector.
fn poly_gcd(mut a: Vec<u64>, mut b: Vec<u64>, p: u64) -> Vec<u64> {
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        make_monic(&mut b, p);
        rem_monic(&mut a, &b, p);
        core::mem::swap(&mut a, &mut b);
    }
    if !a.is_empty() {
        make_monic(&mut a, p);
    }
    a
}

fn mul_rem(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mul_mod(x, y, p)) % p;
        }
    }
    rem_monic(&mut out, m, p);
    out
}

impl PolyModP {
    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Irreducibility over `GF(p)` by the distinct-degree criterion:
    /// `X^(p^n) = X mod f` and `gcd(X^(p^(n/l)) - X, f) = 1` for every prime
    /// `l` dividing `n = deg f`.
    pub fn is_irreducible(&self) -> bool {
        let n = self.degree();
        let p = self.p;
        if n <= 1 {
            return n == 1;
        }
        let mut f = self.coeffs.clone();
        make_monic(&mut f, p);
        let x = vec![0, 1];
        // X^p mod f by repeated squaring
        let mut xp = vec![1u64];
        let mut base = x.clone();
        let mut e = p;
        while e > 0 {
            if e & 1 == 1 {
                xp = mul_rem(&xp, &base, &f, p);
            }
            base = mul_rem(&base, &base, &f, p);
            e >>= 1;
        }
        // row i holds X^(ip) mod f; a(X)^p = sum a_i X^(ip) over GF(p)
        let mut rows = Vec::with_capacity(n);
        let mut r = vec![1u64];
        for _ in 0..n {
            rows.push(r.clone());
            r = mul_rem(&r, &xp, &f, p);
        }
        let frob = |a: &[u64]| -> Vec<u64> {
            let mut out = vec![0u64; n];
            for (i, &ai) in a.iter().enumerate() {
                if ai == 0 {
                    continue;
                }
                for (j, &rj) in rows[i].iter().enumerate() {
                    out[j] = (out[j] + mul_mod(ai, rj, p)) % p;
                }
            }
            trim(&mut out);
            out
        };
        let mut powers = vec![x.clone()];
        for k in 1..=n {
            let next = frob(&powers[k - 1]);
            powers.push(next);
        }
        if powers[n] != x {
            return false;
        }
        factorize(n as u64).iter().all(|&(l, _)| {
            let mut h = powers[n / l as usize].clone();
            h.resize(h.len().max(2), 0);
            h[1] = (h[1] + p - 1) % p;
            poly_gcd(h, f.clone(), p).len() == 1
        })
    }
}

/// Reduction of `f` modulo the prime `p`.
pub fn reduce_mod_p(f: &IntPoly, p: u64) -> Reduction {
    let coeffs: Vec<u64> = f.coeffs().iter().map(|&c| c.rem_euclid(p as i64) as u64).collect();
    if *coeffs.last().unwrap() == 0 {
        return Reduction::Bad;
    }
    let deriv: Vec<u64> = coeffs.iter().enumerate().skip(1).map(|(i, &c)| mul_mod(c, i as u64 % p, p)).collect();
    if poly_gcd(coeffs.clone(), deriv, p).len() > 1 {
        return Reduction::Bad;
    }
    Reduction::Good(PolyModP { p, coeffs })
}

pub fn is_irreducible_mod_p(fp: &PolyModP) -> bool {
    fp.is_irreducible()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DensityError {
    ConstantPolynomial,
    BoundTooSmall,
}

impl fmt::Display for DensityError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DensityError::ConstantPolynomial => f.write_str("polynomial must have degree at least 1"),
            DensityError::BoundTooSmall => f.write_str("prime bound must be at least 2"),
        }
    }
}

impl core::error::Error for DensityError {}

/// Additive counters over a set of primes.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct PrimeTally {
    pub tested: u64,
    pub skipped: u64,
    pub inert: u64,
}

impl PrimeTally {
    pub fn merge(&mut self, other: PrimeTally) {
        self.tested += other.tested;
        self.skipped += other.skipped;
        self.inert += other.inert;
    }
}

pub fn classify_primes(f: &IntPoly, primes: &[u64]) -> PrimeTally {
    let mut t = PrimeTally::default();
    for &p in primes {
        match reduce_mod_p(f, p) {
            Reduction::Bad => t.skipped += 1,
            Reduction::Good(fp) => {
                t.tested += 1;
                if fp.is_irreducible() {
                    t.inert += 1;
                }
            }
        }
    }
    t
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct DensityReport {
    pub polynomial: String,
    pub coefficients: Vec<i64>,
    pub degree: usize,
    pub bound: u64,
    pub floor: u64,
    pub primes_tested: u64,
    pub primes_skipped: u64,
    pub inert_count: u64,
    pub empirical_density: Ratio,
    pub ceiling: Ratio,
    pub predicted: Option<Ratio>,
}

impl DensityReport {
    /// `empirical <= ceiling + 3·sqrt(ceiling / primes_tested)`, decided in
    /// integers.
    pub fn within_statistical_bound(&self) -> bool {
        let (k, n) = (self.inert_count as u128, self.primes_tested as u128);
        let (a, b) = (self.ceiling.num(), self.ceiling.den());
        if n == 0 || k * b <= a * n {
            return true;
        }
        let excess = k * b - a * n;
        excess * excess <= 9 * a * b * n
    }
}

/// Primes in `(floor, bound]` that `density_report` classifies.
pub fn primes_in_window(bound: u64, floor: u64) -> Vec<u64> {
    let mut primes = sieve_primes(bound);
    primes.retain(|&p| p > floor);
    primes
}

pub fn check_density_input(f: &IntPoly, bound: u64) -> Result<(), DensityError> {
    if f.degree() == 0 {
        return Err(DensityError::ConstantPolynomial);
    }
    if bound < 2 {
        return Err(DensityError::BoundTooSmall);
    }
    Ok(())
}

/// Assembles the report from counters covering every prime in the window.
pub fn report_from_tally(f: &IntPoly, bound: u64, floor: u64, t: PrimeTally, predicted: Option<Ratio>) -> DensityReport {
    let n = f.degree() as u64;
    let empirical = if t.tested == 0 { Ratio::integer(0) } else { Ratio::new(t.inert as u128, t.tested as u128) };
    DensityReport {
        polynomial: alloc::format!("{f}"),
        coefficients: f.coeffs().to_vec(),
        degree: f.degree(),
        bound,
        floor,
        primes_tested: t.tested,
        primes_skipped: t.skipped,
        inert_count: t.inert,
        empirical_density: empirical,
        ceiling: Ratio::new(euler_phi(n) as u128, n as u128),
        predicted,
    }
}

/// Classifies every prime in `(floor, bound]` as skipped, inert or split.
/// Irreducibility of `f` over the rationals is the caller's concern.
pub fn density_report(f: &IntPoly, bound: u64, floor: u64) -> Result<DensityReport, DensityError> {
    check_density_input(f, bound)?;
    let t = classify_primes(f, &primes_in_window(bound, floor));
    Ok(report_from_tally(f, bound, floor, t, None))
}

/// Proportion of n-cycles in `g`.
pub fn predicted_density(g: &PermGroup, cap: u128) -> Result<Ratio, CensusError> {
    Ok(Ratio::new(count_n_cycles(g, cap)?, g.order()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use crate::catalog::{cyclic_regular, sharpness_group, symmetric};

    fn good(f: &str, p: u64) -> PolyModP {
        match reduce_mod_p(&IntPoly::parse(f).unwrap(), p) {
            Reduction::Good(fp) => fp,
            Reduction::Bad => panic!("{f} has bad reduction mod {p}"),
        }
    }

    #[test]
    fn sieve() {
        assert_eq!(sieve_primes(10), vec![2, 3, 5, 7]);
        assert_eq!(sieve_primes(2), vec![2]);
        assert_eq!(sieve_primes(1), Vec::<u64>::new());
        assert_eq!(sieve_primes(100).len(), 25);
        let trial: Vec<u64> = (2..2000).filter(|&n| crate::arith::is_prime(n)).collect();
        assert_eq!(sieve_primes(1999), trial);
    }

    #[test]
    fn parsing() {
        assert_eq!(IntPoly::parse("x^6+x^3+1").unwrap().coeffs(), &[1, 0, 0, 1, 0, 0, 1]);
        assert_eq!(IntPoly::parse(" -X^2 + 2*x - 3 ").unwrap().coeffs(), &[-3, 2, -1]);
        assert_eq!(IntPoly::parse("1/2x^2 + 1/3").unwrap().coeffs(), &[2, 0, 3]);
        assert_eq!(IntPoly::parse("x + x").unwrap().coeffs(), &[0, 2]);
        assert_eq!(IntPoly::parse("6x^3+x").unwrap().coeffs(), &[0, 1, 0, 6]);
        assert!(IntPoly::parse("").is_err());
        assert!(IntPoly::parse("x - x").is_err());
        assert!(IntPoly::parse("x^").is_err());
        assert!(IntPoly::parse("2/0x").is_err());
        assert!(IntPoly::parse("x y").is_err());
        assert!(IntPoly::parse("3*").is_err());
        assert_eq!(IntPoly::parse("x +* 1").unwrap_err().pos, 3);
        for s in ["x^6+x^3+1", "-3x^2+x-7", "x^4+1", "2x"] {
            assert_eq!(IntPoly::parse(s).unwrap().to_string(), s);
        }
    }

    #[test]
    fn reductions() {
        assert_eq!(good("x^2+1", 3).coeffs(), &[1, 0, 1]);
        assert_eq!(reduce_mod_p(&IntPoly::parse("6x^3+x").unwrap(), 3), Reduction::Bad);
        assert_eq!(reduce_mod_p(&IntPoly::parse("x^2").unwrap(), 5), Reduction::Bad);
        assert_eq!(reduce_mod_p(&IntPoly::parse("x^2+1").unwrap(), 2), Reduction::Bad);
        assert_eq!(reduce_mod_p(&IntPoly::parse("x^6+x^3+1").unwrap(), 3), Reduction::Bad);
    }

    #[test]
    fn irreducibility_examples() {
        assert!(good("x^2+1", 3).is_irreducible());
        assert!(!good("x^2+1", 5).is_irreducible());
        assert!(good("x^6+x^3+1", 2).is_irreducible());
        assert!(!good("x^4+1", 3).is_irreducible());
        assert!(good("x-5", 7).is_irreducible());
        // product of two irreducible cubics over GF(2)
        assert!(!good("x^6+x^5+x^4+x^3+x^2+x+1", 2).is_irreducible());
    }

    fn divides(d: &[u64], f: &[u64], p: u64) -> bool {
        let mut r = f.to_vec();
        rem_monic(&mut r, d, p);
        r.is_empty()
    }

    /// Irreducible iff no monic polynomial of degree `1..=n/2` divides.
    fn naive_irreducible(f: &PolyModP) -> bool {
        let (p, n) = (f.p(), f.degree());
        let mut g = f.coeffs().to_vec();
        make_monic(&mut g, p);
        for d in 1..=n / 2 {
            for code in 0..p.pow(d as u32) {
                let mut cand: Vec<u64> = (0..d).map(|i| code / p.pow(i as u32) % p).collect();
                cand.push(1);
                if divides(&cand, &g, p) {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn matches_naive_small_grid() {
        for p in [2u64, 3, 5] {
            for n in 1..=4usize {
                for code in 0..p.pow(n as u32) {
                    let mut coeffs: Vec<u64> = (0..n).map(|i| code / p.pow(i as u32) % p).collect();
                    coeffs.push(1);
                    let f = PolyModP { p, coeffs };
                    assert_eq!(f.is_irreducible(), naive_irreducible(&f), "{:?} mod {p}", f.coeffs);
                }
            }
        }
    }

    #[test]
    fn reports() {
        let f = IntPoly::parse("x^2+1").unwrap();
        let r = density_report(&f, 1000, 0).unwrap();
        assert_eq!(r.primes_tested + r.primes_skipped, 168);
        assert_eq!(r.primes_skipped, 1);
        let by_congruence = sieve_primes(1000).iter().filter(|&&p| p % 4 == 3).count() as u64;
        assert_eq!(r.inert_count, by_congruence);
        assert_eq!(r.ceiling, Ratio::new(1, 2));
        assert!(r.within_statistical_bound());
        let r = density_report(&f, 1000, 100).unwrap();
        assert_eq!(r.primes_tested + r.primes_skipped, 168 - 25);
        assert_eq!(
            density_report(&IntPoly::parse("7").unwrap(), 100, 0),
            Err(DensityError::ConstantPolynomial)
        );
    }

    #[test]
    fn statistical_bound_in_integers() {
        let f = IntPoly::parse("x^2+1").unwrap();
        let mut r = report_from_tally(&f, 10, 0, PrimeTally { tested: 100, skipped: 0, inert: 64 }, None);
        // 0.64 <= 0.5 + 3·sqrt(0.005) = 0.712
        assert!(r.within_statistical_bound());
        r.inert_count = 72;
        assert!(!r.within_statistical_bound());
    }

    #[test]
    fn predicted() {
        assert_eq!(predicted_density(&symmetric(4), 1 << 20).unwrap(), Ratio::new(1, 4));
        assert_eq!(predicted_density(&sharpness_group(1).unwrap(), 1 << 20).unwrap(), Ratio::new(1, 3));
        assert_eq!(predicted_density(&cyclic_regular(6), 1 << 20).unwrap(), Ratio::new(1, 3));
    }
}
