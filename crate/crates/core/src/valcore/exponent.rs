//! Exponents in the ordered group `Q + Q·√2`, plus a top element.
//!
//! A radius or absolute value is stored as `base^(-e)`. Rational exponents
//! cover every value of the ground field; the `√2` component only appears for
//! radii outside the value group (type-3 points).

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{fmt_rational, parse_rational};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Exponent {
    /// `rational + sqrt2 · √2`
    Finite {
        rational: BigRational,
        sqrt2: BigRational,
    },
    /// Valuation of zero.
    Infinite,
}

/// Sign of `x + y√2`, computed exactly.
fn sign_of(x: &BigRational, y: &BigRational) -> Ordering {
    let sx = x.cmp(&BigRational::zero());
    let sy = y.cmp(&BigRational::zero());
    match (sx, sy) {
        (Ordering::Equal, s) | (s, Ordering::Equal) => s,
        (a, b) if a == b => a,
        // opposite signs: compare x^2 against 2 y^2
        (sx, _) => {
            let lhs = x * x;
            let rhs = y * y * BigRational::from_integer(BigInt::from(2));
            match lhs.cmp(&rhs) {
                Ordering::Greater => sx,
                Ordering::Less => sx.reverse(),
                // x^2 = 2y^2 has no rational solution with y != 0
                Ordering::Equal => unreachable!("√2 is irrational"),
            }
        }
    }
}

impl Exponent {
    pub fn zero() -> Self {
        Self::rational(BigRational::zero())
    }

    pub fn rational(r: BigRational) -> Self {
        Exponent::Finite {
            rational: r,
            sqrt2: BigRational::zero(),
        }
    }

    pub fn new(rational: BigRational, sqrt2: BigRational) -> Self {
        Exponent::Finite { rational, sqrt2 }
    }

    pub fn int(n: i64) -> Self {
        Self::rational(BigRational::from_integer(n.into()))
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Self::rational(BigRational::new(num.into(), den.into()))
    }

    pub fn with_sqrt2(rational: BigRational, sqrt2: BigRational) -> Self {
        Self::new(rational, sqrt2)
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Exponent::Infinite)
    }

    pub fn is_finite(&self) -> bool {
        !self.is_infinite()
    }

    /// Rational part, `None` for the top element.
    pub fn rational_part(&self) -> Option<&BigRational> {
        match self {
            Exponent::Finite { rational, .. } => Some(rational),
            Exponent::Infinite => None,
        }
    }

    pub fn sqrt2_part(&self) -> Option<&BigRational> {
        match self {
            Exponent::Finite { sqrt2, .. } => Some(sqrt2),
            Exponent::Infinite => None,
        }
    }

    /// `Some(q)` when the exponent is a finite rational.
    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Exponent::Finite { rational, sqrt2 } if sqrt2.is_zero() => Some(rational),
            _ => None,
        }
    }

    pub fn is_rational(&self) -> bool {
        self.as_rational().is_some()
    }

    pub fn is_zero(&self) -> bool {
        self.as_rational().is_some_and(|r| r.is_zero())
    }

    pub fn scale(&self, k: &BigRational) -> Exponent {
        match self {
            Exponent::Finite { rational, sqrt2 } => Exponent::Finite {
                rational: rational * k,
                sqrt2: sqrt2 * k,
            },
            Exponent::Infinite => {
                assert!(k.is_positive(), "scaling +inf by a non-positive factor");
                Exponent::Infinite
            }
        }
    }

    pub fn scale_int(&self, k: i64) -> Exponent {
        self.scale(&BigRational::from_integer(k.into()))
    }

    pub fn to_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        match self {
            Exponent::Finite { rational, sqrt2 } => {
                rational.to_f64().unwrap_or(f64::NAN)
                    + sqrt2.to_f64().unwrap_or(f64::NAN) * std::f64::consts::SQRT_2
            }
            Exponent::Infinite => f64::INFINITY,
        }
    }

    pub fn min_of<'a>(items: impl IntoIterator<Item = &'a Exponent>) -> Exponent {
        items
            .into_iter()
            .fold(Exponent::Infinite, |acc, e| if *e < acc { e.clone() } else { acc })
    }

    /// Midpoint of two finite exponents.
    pub fn midpoint(&self, other: &Exponent) -> Exponent {
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        (self + other).scale(&half)
    }
}

impl PartialOrd for Exponent {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Exponent {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Exponent::Infinite, Exponent::Infinite) => Ordering::Equal,
            (Exponent::Infinite, _) => Ordering::Greater,
            (_, Exponent::Infinite) => Ordering::Less,
            (
                Exponent::Finite {
                    rational: a1,
                    sqrt2: b1,
                },
                Exponent::Finite {
                    rational: a2,
                    sqrt2: b2,
                },
            ) => sign_of(&(a1 - a2), &(b1 - b2)),
        }
    }
}

impl Add for &Exponent {
    type Output = Exponent;
    fn add(self, rhs: &Exponent) -> Exponent {
        match (self, rhs) {
            (
                Exponent::Finite {
                    rational: a1,
                    sqrt2: b1,
                },
                Exponent::Finite {
                    rational: a2,
                    sqrt2: b2,
                },
            ) => Exponent::Finite {
                rational: a1 + a2,
                sqrt2: b1 + b2,
            },
            _ => Exponent::Infinite,
        }
    }
}

impl Add for Exponent {
    type Output = Exponent;
    fn add(self, rhs: Exponent) -> Exponent {
        &self + &rhs
    }
}

impl Sub for &Exponent {
    type Output = Exponent;
    fn sub(self, rhs: &Exponent) -> Exponent {
        match rhs {
            Exponent::Infinite => panic!("subtracting an infinite exponent"),
            _ => self + &(-rhs),
        }
    }
}

impl Sub for Exponent {
    type Output = Exponent;
    fn sub(self, rhs: Exponent) -> Exponent {
        &self - &rhs
    }
}

impl Neg for &Exponent {
    type Output = Exponent;
    fn neg(self) -> Exponent {
        match self {
            Exponent::Finite { rational, sqrt2 } => Exponent::Finite {
                rational: -rational,
                sqrt2: -sqrt2,
            },
            Exponent::Infinite => panic!("negating an infinite exponent"),
        }
    }
}

impl Neg for Exponent {
    type Output = Exponent;
    fn neg(self) -> Exponent {
        -&self
    }
}

impl From<BigRational> for Exponent {
    fn from(r: BigRational) -> Self {
        Exponent::rational(r)
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exponent::Infinite => write!(f, "inf"),
            Exponent::Finite { rational, sqrt2 } => {
                if sqrt2.is_zero() {
                    return write!(f, "{}", fmt_rational(rational));
                }
                let coeff = |b: &BigRational| {
                    if b.abs().is_one() {
                        String::new()
                    } else {
                        format!("{}*", fmt_rational(&b.abs()))
                    }
                };
                if rational.is_zero() {
                    let sign = if sqrt2.is_negative() { "-" } else { "" };
                    write!(f, "{sign}{}sqrt2", coeff(sqrt2))
                } else {
                    let sign = if sqrt2.is_negative() { '-' } else { '+' };
                    write!(f, "{}{sign}{}sqrt2", fmt_rational(rational), coeff(sqrt2))
                }
            }
        }
    }
}

impl FromStr for Exponent {
    type Err = Error;

    /// Accepts `a`, `a+b*sqrt2`, `b*sqrt2`, `sqrt2`, `-sqrt2` and `inf`.
    fn from_str(s: &str) -> Result<Self> {
        let text: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if text.is_empty() {
            return Err(Error::parse(s, "empty exponent"));
        }
        if text == "inf" || text == "+inf" {
            return Ok(Exponent::Infinite);
        }
        let mut rational = BigRational::zero();
        let mut sqrt2 = BigRational::zero();
        for (sign, term) in split_signed_terms(&text).map_err(|r| Error::parse(s, r))? {
            if let Some(head) = term.strip_suffix("sqrt2") {
                let head = head.strip_suffix('*').unwrap_or(head);
                let c = if head.is_empty() {
                    BigRational::one()
                } else {
                    parse_rational(head).map_err(|_| Error::parse(s, "bad sqrt2 coefficient"))?
                };
                sqrt2 += c * sign;
            } else {
                let c = parse_rational(term).map_err(|_| Error::parse(s, "bad rational part"))?;
                rational += c * sign;
            }
        }
        Ok(Exponent::Finite { rational, sqrt2 })
    }
}

/// Splits `"-1/2+3*sqrt2"` into `[(-1, "1/2"), (1, "3*sqrt2")]`.
pub(crate) fn split_signed_terms(text: &str) -> std::result::Result<Vec<(BigRational, &str)>, String> {
    let mut out = Vec::new();
    let bytes = text.as_bytes();
    let mut start = 0;
    let mut sign = BigRational::one();
    let mut i = 0;
    // leading sign
    if i < bytes.len() && (bytes[i] == b'+' || bytes[i] == b'-') {
        if bytes[i] == b'-' {
            sign = -sign;
        }
        i += 1;
        start = i;
    }
    let mut depth = 0i32;
    while i < bytes.len() {
        let c = bytes[i];
        match c {
            b'(' => depth += 1,
            b')' => depth -= 1,
            // a sign right after '^' belongs to the power
            b'+' | b'-' if depth == 0 && i > start && bytes[i - 1] != b'^' => {
                out.push((sign.clone(), &text[start..i]));
                sign = if c == b'-' {
                    -BigRational::one()
                } else {
                    BigRational::one()
                };
                start = i + 1;
            }
            _ => {}
        }
        i += 1;
    }
    if start >= text.len() {
        return Err("dangling sign".into());
    }
    out.push((sign, &text[start..]));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(s: &str) -> Exponent {
        s.parse().unwrap()
    }

    #[test]
    fn one_is_below_sqrt2() {
        assert_eq!(e("1").cmp(&e("sqrt2")), Ordering::Less);
    }

    #[test]
    fn three_halves_above_sqrt2() {
        assert_eq!(e("3/2").cmp(&e("sqrt2")), Ordering::Greater);
    }

    #[test]
    fn reflexive() {
        let x = e("-2/7+5/3*sqrt2");
        assert_eq!(x.cmp(&x), Ordering::Equal);
    }

    #[test]
    fn infinity_on_top() {
        assert!(Exponent::Infinite > e("1000000"));
        assert_eq!(&Exponent::Infinite + &e("3"), Exponent::Infinite);
    }

    #[test]
    fn display_roundtrip() {
        for s in ["0", "-1/2", "3+sqrt2", "1/3-2*sqrt2", "-sqrt2", "7/2*sqrt2", "inf"] {
            assert_eq!(e(s).to_string(), s);
        }
    }

    #[test]
    fn rejects_garbage() {
        assert!("".parse::<Exponent>().is_err());
        assert!("1+".parse::<Exponent>().is_err());
        assert!("x".parse::<Exponent>().is_err());
    }
}
