//! Exact scalars: rationals adjoined with one radical symbol `s`.
//!
//! In p-adic mode `s = √p` (so `s² = p` and every scalar reduces to `u + v√p`);
//! in equal-characteristic-zero mode `s = t^(1/2)` for a transcendental
//! uniformizer `t`, giving Laurent polynomials in `√t`; in trivial mode only
//! rationals occur.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::exponent::split_signed_terms;
use super::{fmt_rational, parse_rational};
use crate::error::{Error, Result};

/// Meaning of the radical symbol `s`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Radical {
    /// No symbol present: a plain rational.
    None,
    /// `s = √p`.
    Sqrt(u64),
    /// `s = √t` with `t` a formal uniformizer.
    Uniformizer,
}

impl Radical {
    fn join(self, other: Radical) -> Radical {
        match (self, other) {
            (Radical::None, r) | (r, Radical::None) => r,
            (a, b) if a == b => a,
            (a, b) => panic!("mixing scalars from different fields: {a:?} and {b:?}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Scalar {
    /// `Σ coeff · s^key`, zero coefficients never stored.
    terms: BTreeMap<i64, BigRational>,
    radical: Radical,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar {
            terms: BTreeMap::new(),
            radical: Radical::None,
        }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(n.into()))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Self::from_rational(BigRational::from_integer(n))
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Self::from_rational(BigRational::new(num.into(), den.into()))
    }

    pub fn from_rational(r: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !r.is_zero() {
            terms.insert(0, r);
        }
        Scalar {
            terms,
            radical: Radical::None,
        }
    }

    /// `u + v·√p`.
    pub fn quadratic(u: BigRational, v: BigRational, p: u64) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(0, u);
        terms.insert(1, v);
        Scalar {
            terms,
            radical: Radical::Sqrt(p),
        }
        .normalized()
    }

    pub fn sqrt_p(p: u64) -> Self {
        Self::quadratic(BigRational::zero(), BigRational::one(), p)
    }

    /// `(√t)^k`.
    pub fn sqrt_t_pow(k: i64) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(k, BigRational::one());
        Scalar {
            terms,
            radical: Radical::Uniformizer,
        }
        .normalized()
    }

    /// `t^k`.
    pub fn t_pow(k: i64) -> Self {
        Self::sqrt_t_pow(2 * k)
    }

    pub fn radical(&self) -> Radical {
        self.radical
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_rational().is_some_and(|r| r.is_one())
    }

    /// The rational value, if the scalar has no radical component.
    pub fn as_rational(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => self.terms.get(&0).cloned(),
            _ => None,
        }
    }

    pub fn is_rational(&self) -> bool {
        self.as_rational().is_some()
    }

    /// Coefficient of `s^k`.
    pub fn coeff(&self, k: i64) -> BigRational {
        self.terms.get(&k).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigRational)> {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    /// `(u, v)` with `self = u + v√p`; panics for uniformizer scalars.
    pub fn quadratic_parts(&self) -> (BigRational, BigRational) {
        assert!(
            !matches!(self.radical, Radical::Uniformizer),
            "quadratic_parts on a Laurent scalar"
        );
        (self.coeff(0), self.coeff(1))
    }

    fn normalized(mut self) -> Self {
        if let Radical::Sqrt(p) = self.radical {
            if self.terms.keys().any(|&k| !(0..=1).contains(&k)) {
                let pr = BigRational::from_integer(BigInt::from(p));
                let mut reduced: BTreeMap<i64, BigRational> = BTreeMap::new();
                for (k, c) in std::mem::take(&mut self.terms) {
                    let half = k.div_euclid(2);
                    let rem = k.rem_euclid(2);
                    let factor = if half >= 0 {
                        num_traits::pow(pr.clone(), half as usize)
                    } else {
                        num_traits::pow(pr.recip(), (-half) as usize)
                    };
                    *reduced.entry(rem).or_insert_with(BigRational::zero) += c * factor;
                }
                self.terms = reduced;
            }
        }
        self.terms.retain(|_, c| !c.is_zero());
        if self.terms.keys().all(|&k| k == 0) {
            self.radical = Radical::None;
        }
        self
    }

    pub fn scale(&self, r: &BigRational) -> Scalar {
        if r.is_zero() {
            return Scalar::zero();
        }
        Scalar {
            terms: self.terms.iter().map(|(k, c)| (*k, c * r)).collect(),
            radical: self.radical,
        }
    }

    pub fn div_rational(&self, r: &BigRational) -> Scalar {
        assert!(!r.is_zero(), "division by zero");
        self.scale(&r.recip())
    }

    /// Galois conjugate `u - v√p`; identity on rationals.
    pub fn conjugate(&self) -> Scalar {
        match self.radical {
            Radical::Sqrt(p) => {
                let (u, v) = self.quadratic_parts();
                Scalar::quadratic(u, -v, p)
            }
            _ => self.clone(),
        }
    }

    /// Multiplicative inverse when it exists inside the scalar ring.
    ///
    /// Every nonzero element of `Q(√p)` is invertible; a Laurent polynomial in
    /// `√t` is invertible only when it is a single monomial.
    pub fn checked_inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        match self.radical {
            Radical::None => self.as_rational().map(|r| Scalar::from_rational(r.recip())),
            Radical::Sqrt(p) => {
                let (u, v) = self.quadratic_parts();
                let norm = &u * &u - &v * &v * BigRational::from_integer(BigInt::from(p));
                Some(Scalar::quadratic(u / &norm, -v / &norm, p))
            }
            Radical::Uniformizer => {
                if self.terms.len() != 1 {
                    return None;
                }
                let (k, c) = self.terms.iter().next().unwrap();
                let mut terms = BTreeMap::new();
                terms.insert(-k, c.recip());
                Some(
                    Scalar {
                        terms,
                        radical: Radical::Uniformizer,
                    }
                    .normalized(),
                )
            }
        }
    }

    pub fn try_div(&self, rhs: &Scalar) -> Result<Scalar> {
        let inv = rhs
            .checked_inv()
            .ok_or_else(|| Error::NotInvertible(format!("{rhs} has no inverse in the scalar ring")))?;
        Ok(self * &inv)
    }

    pub fn pow(&self, mut e: u64) -> Scalar {
        let mut base = self.clone();
        let mut acc = Scalar::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Signed integer power; negative powers need an invertible base.
    pub fn powi(&self, e: i64) -> Result<Scalar> {
        if e >= 0 {
            Ok(self.pow(e as u64))
        } else {
            let inv = self
                .checked_inv()
                .ok_or_else(|| Error::NotInvertible(self.to_string()))?;
            Ok(inv.pow((-e) as u64))
        }
    }

    /// Approximate real value (uniformizer read as `t = 1/2`); rendering only.
    pub fn to_f64_lossy(&self) -> f64 {
        use num_traits::ToPrimitive;
        let sym = match self.radical {
            Radical::Sqrt(p) => (p as f64).sqrt(),
            _ => std::f64::consts::FRAC_1_SQRT_2,
        };
        self.terms
            .iter()
            .map(|(k, c)| c.to_f64().unwrap_or(0.0) * sym.powi(*k as i32))
            .sum()
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<BigRational> for Scalar {
    fn from(r: BigRational) -> Self {
        Scalar::from_rational(r)
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        let radical = self.radical.join(rhs.radical);
        let mut terms = self.terms.clone();
        for (k, c) in &rhs.terms {
            *terms.entry(*k).or_insert_with(BigRational::zero) += c;
        }
        Scalar { terms, radical }.normalized()
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(),
            radical: self.radical,
        }
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        let radical = self.radical.join(rhs.radical);
        let mut terms: BTreeMap<i64, BigRational> = BTreeMap::new();
        for (k1, c1) in &self.terms {
            for (k2, c2) in &rhs.terms {
                *terms.entry(k1 + k2).or_insert_with(BigRational::zero) += c1 * c2;
            }
        }
        Scalar { terms, radical }.normalized()
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar { (&self).$m(&rhs) }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar { (&self).$m(rhs) }
        }
        impl $tr<Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar { self.$m(&rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl std::iter::Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |a, b| &a + &b)
    }
}

fn atom(radical: Radical, k: i64) -> String {
    match radical {
        Radical::None => String::new(),
        Radical::Sqrt(p) => {
            if k == 1 {
                format!("sqrt({p})")
            } else {
                format!("sqrt({p})^{k}")
            }
        }
        Radical::Uniformizer => match k {
            1 => "sqrt(t)".into(),
            2 => "t".into(),
            k if k % 2 == 0 => format!("t^{}", k / 2),
            k => format!("sqrt(t)^{k}"),
        },
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in &self.terms {
            let neg = c.is_negative();
            let mag = c.abs();
            let body = if *k == 0 {
                fmt_rational(&mag)
            } else if mag.is_one() {
                atom(self.radical, *k)
            } else {
                format!("{}*{}", fmt_rational(&mag), atom(self.radical, *k))
            };
            match (first, neg) {
                (true, true) => write!(f, "-{body}")?,
                (true, false) => write!(f, "{body}")?,
                (false, true) => write!(f, "-{body}")?,
                (false, false) => write!(f, "+{body}")?,
            }
            first = false;
        }
        Ok(())
    }
}

fn parse_power(s: &str) -> std::result::Result<i64, String> {
    let s = s.trim_start_matches('(').trim_end_matches(')');
    s.parse::<i64>().map_err(|_| format!("bad power {s:?}"))
}

/// Parses one atom (`sqrt(5)`, `sqrt(t)^-3`, `t^2`, `t`) into `(radical, key)`.
fn parse_atom(a: &str) -> std::result::Result<(Radical, i64), String> {
    let (base, power) = match a.find('^') {
        Some(i) => (&a[..i], Some(parse_power(&a[i + 1..])?)),
        None => (a, None),
    };
    let power = power.unwrap_or(1);
    if base == "t" {
        return Ok((Radical::Uniformizer, 2 * power));
    }
    let inner = base
        .strip_prefix("sqrt(")
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| format!("unknown atom {base:?}"))?;
    if inner == "t" {
        return Ok((Radical::Uniformizer, power));
    }
    let p: u64 = inner
        .parse()
        .map_err(|_| format!("radicand {inner:?} is not a positive integer"))?;
    if p < 2 {
        return Err(format!("radicand {p} must be at least 2"));
    }
    if power < 0 {
        return Err("negative powers of sqrt(p) are not accepted in literals".into());
    }
    Ok((Radical::Sqrt(p), power))
}

impl FromStr for Scalar {
    type Err = Error;

    /// Literals: `u`, `u+v*sqrt(p)`, and for the equal-characteristic-zero
    /// field sums of `c*t^k` / `c*sqrt(t)^k`, with rationals written `num/den`.
    fn from_str(s: &str) -> Result<Self> {
        let text: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if text.is_empty() {
            return Err(Error::parse(s, "empty scalar"));
        }
        let mut acc = Scalar::zero();
        for (sign, term) in split_signed_terms(&text).map_err(|r| Error::parse(s, r))? {
            let split = term.find(['s', 't']);
            let (head, atom_text) = match split {
                Some(i) => (&term[..i], Some(&term[i..])),
                None => (term, None),
            };
            let head = head.strip_suffix('*').unwrap_or(head);
            let coeff = if head.is_empty() {
                if atom_text.is_none() {
                    return Err(Error::parse(s, "empty term"));
                }
                BigRational::one()
            } else {
                parse_rational(head).map_err(|_| Error::parse(s, format!("bad coefficient {head:?}")))?
            } * sign;
            let piece = match atom_text {
                None => Scalar::from_rational(coeff),
                Some(a) => {
                    let (radical, key) = parse_atom(a).map_err(|r| Error::parse(s, r))?;
                    let mut terms = BTreeMap::new();
                    terms.insert(key, coeff);
                    Scalar { terms, radical }.normalized()
                }
            };
            if piece.radical != Radical::None
                && acc.radical != Radical::None
                && piece.radical != acc.radical
            {
                return Err(Error::parse(s, "mixes two different radicals"));
            }
            acc = &acc + &piece;
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Scalar {
        s.parse().unwrap()
    }

    #[test]
    fn sqrt_reduces() {
        let r = q("sqrt(2)");
        assert_eq!(&r * &r, Scalar::from_int(2));
        let x = q("1+sqrt(3)");
        assert_eq!(&x * &x, q("4+2*sqrt(3)"));
    }

    #[test]
    fn inverse_in_quadratic_field() {
        let x = q("3/2-5*sqrt(7)");
        let inv = x.checked_inv().unwrap();
        assert!((&x * &inv).is_one());
    }

    #[test]
    fn laurent_inverse_only_for_monomials() {
        assert!(q("t^-2").checked_inv().is_some());
        assert_eq!(q("3*sqrt(t)^-3").checked_inv().unwrap(), q("1/3*sqrt(t)^3"));
        assert!(q("1+t").checked_inv().is_none());
    }

    #[test]
    fn display_roundtrip() {
        for s in [
            "0",
            "-7/3",
            "1+sqrt(2)",
            "-1/2*sqrt(5)",
            "t^-2",
            "1-3*sqrt(t)+t",
            "sqrt(t)^-3",
        ] {
            assert_eq!(q(s).to_string(), s, "literal {s}");
        }
    }

    #[test]
    fn mixing_radicals_is_rejected_at_parse() {
        assert!("sqrt(2)+sqrt(3)".parse::<Scalar>().is_err());
        assert!("sqrt(2)+t".parse::<Scalar>().is_err());
        assert!("1/0".parse::<Scalar>().is_err());
    }

    #[test]
    fn powers() {
        assert_eq!(q("sqrt(2)").pow(5), q("4*sqrt(2)"));
        assert_eq!(q("2").powi(-3).unwrap(), q("1/8"));
        assert_eq!(q("t").powi(-2).unwrap(), q("t^-2"));
    }
}
