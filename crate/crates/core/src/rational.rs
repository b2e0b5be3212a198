//! Non-negative exact rationals, always stored in lowest terms.

use core::cmp::Ordering;
use core::fmt;

use crate::arith::gcd;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(try_from = "RawRatio"))]
pub struct Ratio {
    num: u128,
    den: u128,
}

#[cfg(feature = "serde")]
#[derive(serde::Deserialize)]
struct RawRatio {
    num: u128,
    den: u128,
}

#[cfg(feature = "serde")]
impl TryFrom<RawRatio> for Ratio {
    type Error = &'static str;
    fn try_from(r: RawRatio) -> Result<Self, Self::Error> {
        if r.den == 0 {
            return Err("zero denominator");
        }
        let x = Ratio::new(r.num, r.den);
        if x.num != r.num {
            return Err("ratio not in lowest terms");
        }
        Ok(x)
    }
}

impl Ratio {
    /// Panics on a zero denominator.
    pub fn new(num: u128, den: u128) -> Self {
        assert!(den != 0, "zero denominator");
        let g = gcd(num, den).max(1);
        Ratio { num: num / g, den: den / g }
    }

    pub fn integer(n: u128) -> Self {
        Ratio { num: n, den: 1 }
    }

    #[inline]
    pub fn num(&self) -> u128 {
        self.num
    }

    #[inline]
    pub fn den(&self) -> u128 {
        self.den
    }

    pub fn is_integer(&self) -> bool {
        self.den == 1
    }

    pub fn to_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl PartialOrd for Ratio {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Ratio {
    fn cmp(&self, other: &Self) -> Ordering {
        // cross-multiplication fits for every value this crate produces
        (self.num * other.den).cmp(&(other.num * self.den))
    }
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn normalizes() {
        let r = Ratio::new(12, 36);
        assert_eq!((r.num(), r.den()), (1, 3));
        assert_eq!(Ratio::new(0, 5), Ratio::new(0, 1));
        assert!(Ratio::new(1, 3) < Ratio::new(1, 2));
        assert_eq!(Ratio::new(81, 9).to_string(), "9");
        assert_eq!(Ratio::new(2, 6).to_string(), "1/3");
    }
}
