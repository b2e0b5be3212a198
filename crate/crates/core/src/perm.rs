//! Permutations of `{0, .., n-1}` stored as image sequences.
//!
//! Externally points are 1-based and written in disjoint-cycle notation,
//! e.g. `(1,2,3)(4,5)`. Products act left to right.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Mul;

/// Point type used in image tables. Degrees are bounded by `u16::MAX`.
pub type Point = u16;

/// Largest supported degree.
pub const MAX_DEGREE: usize = u16::MAX as usize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PermError {
    DegreeMismatch { left: usize, right: usize },
    NotBijective,
    DegreeTooLarge(usize),
}

impl fmt::Display for PermError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PermError::DegreeMismatch { left, right } => {
                write!(f, "degree mismatch: {left} vs {right}")
            }
            PermError::NotBijective => f.write_str("image sequence is not a bijection"),
            PermError::DegreeTooLarge(n) => write!(f, "degree {n} exceeds {MAX_DEGREE}"),
        }
    }
}

impl core::error::Error for PermError {}

/// Error from [`Permutation::parse`]; `pos` is a byte offset into the input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub pos: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    PointOutOfRange { point: u64, degree: usize },
    RepeatedPoint(u64),
    Expected(&'static str),
    UnexpectedChar(char),
    DegreeTooLarge(usize),
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at byte {}: ", self.pos)?;
        match &self.kind {
            ParseErrorKind::PointOutOfRange { point, degree } => {
                write!(f, "point {point} outside 1..={degree}")
            }
            ParseErrorKind::RepeatedPoint(p) => write!(f, "point {p} repeated"),
            ParseErrorKind::Expected(what) => write!(f, "expected {what}"),
            ParseErrorKind::UnexpectedChar(c) => write!(f, "unexpected character {c:?}"),
            ParseErrorKind::DegreeTooLarge(n) => write!(f, "degree {n} too large"),
        }
    }
}

impl core::error::Error for ParseError {}

/// A permutation of `{0, .., degree-1}`.
///
/// `images[i]` is the image of point `i`. The bijection invariant is checked
/// by every public constructor.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    images: Vec<Point>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        assert!(degree <= MAX_DEGREE, "degree too large");
        Permutation { images: (0..degree as Point).collect() }
    }

    /// Builds a permutation from 0-based images.
    pub fn from_images(images: Vec<usize>) -> Result<Self, PermError> {
        let n = images.len();
        if n > MAX_DEGREE {
            return Err(PermError::DegreeTooLarge(n));
        }
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(PermError::NotBijective);
            }
            seen[x] = true;
        }
        Ok(Permutation { images: images.into_iter().map(|x| x as Point).collect() })
    }

    /// Crate-internal constructor for image tables already known to be bijective.
    pub(crate) fn from_raw(images: Vec<Point>) -> Self {
        debug_assert!({
            let mut s = images.clone();
            s.sort_unstable();
            s.iter().enumerate().all(|(i, &x)| i == x as usize)
        });
        Permutation { images }
    }

    /// Builds a permutation from 1-based cycles; fixed points may be omitted.
    pub fn from_cycles(degree: usize, cycles: &[&[usize]]) -> Result<Self, PermError> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (k, &a) in cycle.iter().enumerate() {
                let b = cycle[(k + 1) % cycle.len()];
                if a == 0 || a > degree || b == 0 || b > degree || touched[a - 1] {
                    return Err(PermError::NotBijective);
                }
                touched[a - 1] = true;
                images[a - 1] = b - 1;
            }
        }
        Self::from_images(images)
    }

    /// Parses disjoint-cycle notation such as `(1,2,3)(4,5)`.
    ///
    /// Points are 1-based and separated by commas; whitespace is ignored
    /// between tokens. `""` and `"()"` denote the identity.
    pub fn parse(text: &str, degree: usize) -> Result<Self, ParseError> {
        if degree > MAX_DEGREE {
            return Err(ParseError { pos: 0, kind: ParseErrorKind::DegreeTooLarge(degree) });
        }
        let bytes = text.as_bytes();
        let mut images: Vec<Point> = (0..degree as Point).collect();
        let mut used = vec![false; degree];
        let mut i = 0;
        let skip_ws = |i: &mut usize| {
            while *i < bytes.len() && bytes[*i].is_ascii_whitespace() {
                *i += 1;
            }
        };
        let unexpected = |i: usize| {
            let c = text[i..].chars().next().unwrap_or('?');
            ParseError { pos: i, kind: ParseErrorKind::UnexpectedChar(c) }
        };
        loop {
            skip_ws(&mut i);
            if i == bytes.len() {
                break;
            }
            if bytes[i] != b'(' {
                return Err(unexpected(i));
            }
            i += 1;
            skip_ws(&mut i);
            let mut cycle: Vec<usize> = Vec::new();
            if i < bytes.len() && bytes[i] == b')' {
                i += 1;
                continue;
            }
            loop {
                skip_ws(&mut i);
                let start = i;
                let mut value: u64 = 0;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    value = value.saturating_mul(10).saturating_add(u64::from(bytes[i] - b'0'));
                    i += 1;
                }
                if i == start {
                    if i == bytes.len() {
                        return Err(ParseError { pos: i, kind: ParseErrorKind::Expected("point") });
                    }
                    return Err(unexpected(i));
                }
                if value == 0 || value > degree as u64 {
                    return Err(ParseError {
                        pos: start,
                        kind: ParseErrorKind::PointOutOfRange { point: value, degree },
                    });
                }
                let p = (value - 1) as usize;
                if used[p] {
                    return Err(ParseError { pos: start, kind: ParseErrorKind::RepeatedPoint(value) });
                }
                used[p] = true;
                cycle.push(p);
                skip_ws(&mut i);
                match bytes.get(i) {
                    Some(b',') => i += 1,
                    Some(b')') => {
                        i += 1;
                        break;
                    }
                    Some(_) => return Err(unexpected(i)),
                    None => {
                        return Err(ParseError { pos: i, kind: ParseErrorKind::Expected("')'") })
                    }
                }
            }
            for (k, &a) in cycle.iter().enumerate() {
                images[a] = cycle[(k + 1) % cycle.len()] as Point;
            }
        }
        Ok(Permutation { images })
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// 0-based image table.
    #[inline]
    pub fn images(&self) -> &[Point] {
        &self.images
    }

    /// Image of the 0-based point `x`.
    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x] as usize
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    /// `self` followed by `other`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation, PermError> {
        if self.degree() != other.degree() {
            return Err(PermError::DegreeMismatch { left: self.degree(), right: other.degree() });
        }
        Ok(self.then(other))
    }

    /// Unchecked-degree composition used on hot paths (panics on mismatch).
    #[inline]
    pub fn then(&self, other: &Permutation) -> Permutation {
        let o = &other.images;
        Permutation { images: self.images.iter().map(|&x| o[x as usize]).collect() }
    }

    /// Writes `self * other` into `out` without allocating.
    #[inline]
    pub(crate) fn then_into(&self, other: &Permutation, out: &mut Permutation) {
        let o = &other.images;
        for (dst, &x) in out.images.iter_mut().zip(self.images.iter()) {
            *dst = o[x as usize];
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0 as Point; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as Point;
        }
        Permutation { images: inv }
    }

    /// `self^k` for any integer `k`.
    pub fn pow(&self, k: i64) -> Permutation {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = Permutation::identity(self.degree());
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.then(&sq);
            }
            sq = sq.then(&sq);
            e >>= 1;
        }
        acc
    }

    /// `x^-1 * self * x`, i.e. `self` relabelled by `x`.
    pub fn conjugate_by(&self, x: &Permutation) -> Permutation {
        let mut out = vec![0 as Point; self.degree()];
        for (i, &img) in self.images.iter().enumerate() {
            out[x.images[i] as usize] = x.images[img as usize];
        }
        Permutation { images: out }
    }

    /// Cycle lengths, fixed points included, sorted ascending.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut seen = vec![false; self.degree()];
        let mut lens = Vec::new();
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.images[x] as usize;
                len += 1;
            }
            lens.push(len);
        }
        lens.sort_unstable();
        lens
    }

    /// True iff this is a single cycle through every point.
    #[inline]
    pub fn is_full_cycle(&self) -> bool {
        let n = self.images.len();
        if n == 0 {
            return false;
        }
        let mut x = self.images[0] as usize;
        let mut len = 1;
        while x != 0 {
            x = self.images[x] as usize;
            len += 1;
        }
        len == n
    }

    /// Smallest point moved, if any.
    pub fn first_moved(&self) -> Option<usize> {
        self.images.iter().enumerate().position(|(i, &x)| i != x as usize)
    }

    /// The disjoint cycles of length > 1, each starting at its smallest point,
    /// ordered by that point (0-based).
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.images[start] as usize == start {
                continue;
            }
            let mut c = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                c.push(x);
                x = self.images[x] as usize;
            }
            out.push(c);
        }
        out
    }

    /// Cycle notation with 1-based points; the identity prints as `()`.
    pub fn to_cycle_string(&self) -> String {
        use core::fmt::Write;
        let cycles = self.cycles();
        if cycles.is_empty() {
            return String::from("()");
        }
        let mut s = String::new();
        for c in cycles {
            s.push('(');
            for (k, p) in c.iter().enumerate() {
                if k > 0 {
                    s.push(',');
                }
                let _ = write!(s, "{}", p + 1);
            }
            s.push(')');
        }
        s
    }
}

impl Mul for &Permutation {
    type Output = Permutation;
    fn mul(self, rhs: &Permutation) -> Permutation {
        self.then(rhs)
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_cycle_string())
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_cycle_string())
    }
}
