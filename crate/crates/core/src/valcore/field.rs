use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::exponent::Exponent;
use super::radius::Radius;
use super::scalar::{Radical, Scalar};
use crate::error::{Error, Result};

/// Which ground field the computation lives over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "kebab-case", deny_unknown_fields)]
pub enum FieldMode {
    /// Mixed characteristic `(0, p)`: completion of `Q_p`, scalars in `Q(√p)`.
    PAdic { p: u64 },
    /// Residual characteristic zero with a discrete uniformizer `t`.
    EqualCharZero,
    /// Trivially valued field of characteristic zero.
    Trivial,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    mode: FieldMode,
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Exponent of `p` in a nonzero integer.
pub(crate) fn int_valuation(n: &BigInt, p: u64) -> i64 {
    debug_assert!(!n.is_zero());
    let pb = BigInt::from(p);
    let mut m = n.abs();
    let mut v = 0;
    loop {
        let (q, r) = m.div_rem(&pb);
        if !r.is_zero() {
            return v;
        }
        m = q;
        v += 1;
    }
}

pub(crate) fn rational_valuation(r: &BigRational, p: u64) -> i64 {
    int_valuation(r.numer(), p) - int_valuation(r.denom(), p)
}

fn digit_sum(mut n: u64, p: u64) -> u64 {
    let mut s = 0;
    while n > 0 {
        s += n % p;
        n /= p;
    }
    s
}

impl FieldSpec {
    pub fn new(mode: FieldMode) -> Result<Self> {
        if let FieldMode::PAdic { p } = mode {
            if !is_prime(p) {
                return Err(Error::InvalidField(format!("{p} is not a prime")));
            }
        }
        Ok(FieldSpec { mode })
    }

    pub fn p_adic(p: u64) -> Result<Self> {
        Self::new(FieldMode::PAdic { p })
    }

    pub fn equal_char_zero() -> Self {
        FieldSpec {
            mode: FieldMode::EqualCharZero,
        }
    }

    pub fn trivial() -> Self {
        FieldSpec {
            mode: FieldMode::Trivial,
        }
    }

    pub fn mode(&self) -> FieldMode {
        self.mode
    }

    pub fn prime(&self) -> Option<u64> {
        match self.mode {
            FieldMode::PAdic { p } => Some(p),
            _ => None,
        }
    }

    /// Whether the residue field has positive characteristic.
    pub fn residual_char_p(&self) -> bool {
        matches!(self.mode, FieldMode::PAdic { .. })
    }

    /// Formal base of radii: `p` in p-adic mode, 2 otherwise.
    pub fn base(&self) -> u64 {
        self.prime().unwrap_or(2)
    }

    /// Exponent of ω: `1/(p-1)` in residual characteristic `p`, else 0.
    pub fn omega_exponent(&self) -> Exponent {
        match self.mode {
            FieldMode::PAdic { p } => Exponent::ratio(1, p as i64 - 1),
            _ => Exponent::zero(),
        }
    }

    pub fn omega(&self) -> Radius {
        Radius::from_exponent(self.omega_exponent())
    }

    /// Rejects scalars that do not belong to this field's scalar ring.
    pub fn check_scalar(&self, s: &Scalar) -> Result<()> {
        match (self.mode, s.radical()) {
            (_, Radical::None) => Ok(()),
            (FieldMode::PAdic { p }, Radical::Sqrt(q)) if p == q => Ok(()),
            (FieldMode::EqualCharZero, Radical::Uniformizer) => Ok(()),
            (mode, r) => Err(Error::InvalidScalar(format!(
                "{s} uses radical {r:?}, not available in {mode:?}"
            ))),
        }
    }

    /// Valuation `v(s)` with `|s| = base^(-v(s))`.
    pub fn valuation(&self, s: &Scalar) -> Result<Exponent> {
        self.check_scalar(s)?;
        if s.is_zero() {
            return Ok(Exponent::Infinite);
        }
        Ok(match self.mode {
            FieldMode::PAdic { p } => {
                let (u, v) = s.quadratic_parts();
                // integer vs half-integer candidates never tie
                let vu = (!u.is_zero()).then(|| BigRational::from_integer(rational_valuation(&u, p).into()));
                let vv = (!v.is_zero()).then(|| {
                    BigRational::from_integer(rational_valuation(&v, p).into())
                        + BigRational::new(BigInt::one(), BigInt::from(2))
                });
                let best = match (vu, vv) {
                    (Some(a), Some(b)) => a.min(b),
                    (Some(a), None) => a,
                    (None, Some(b)) => b,
                    (None, None) => unreachable!(),
                };
                Exponent::rational(best)
            }
            FieldMode::EqualCharZero => {
                let k = s.terms().next().map(|(k, _)| k).unwrap();
                Exponent::ratio(k, 2)
            }
            FieldMode::Trivial => Exponent::zero(),
        })
    }

    /// [`valuation`](Self::valuation) for scalars already checked against the field.
    ///
    /// # Panics
    /// If `s` uses a radical foreign to this field.
    pub fn val(&self, s: &Scalar) -> Exponent {
        self.valuation(s)
            .unwrap_or_else(|e| panic!("unchecked scalar reached the valuation: {e}"))
    }

    /// `|s|` for scalars already checked against the field.
    pub fn norm(&self, s: &Scalar) -> Radius {
        Radius::from_exponent(self.val(s))
    }

    /// `|a - b|` for scalars already checked against the field.
    pub fn distance(&self, a: &Scalar, b: &Scalar) -> Radius {
        self.norm(&(a - b))
    }

    pub fn abs(&self, s: &Scalar) -> Result<Radius> {
        self.valuation(s).map(Radius::from_exponent)
    }

    /// `|a - b|`.
    pub fn dist(&self, a: &Scalar, b: &Scalar) -> Result<Radius> {
        self.abs(&(a - b))
    }

    /// `v(n!)` by Legendre's formula; zero in residual characteristic zero.
    pub fn factorial_valuation(&self, n: u64) -> Exponent {
        match self.mode {
            FieldMode::PAdic { p } => Exponent::ratio((n - digit_sum(n, p)) as i64, p as i64 - 1),
            _ => Exponent::zero(),
        }
    }

    /// Whether `base^(-e)` is an absolute value of the (algebraically closed) field.
    pub fn in_value_group(&self, e: &Exponent) -> bool {
        match self.mode {
            FieldMode::PAdic { .. } | FieldMode::EqualCharZero => e.is_rational(),
            FieldMode::Trivial => e.is_zero(),
        }
    }

    /// A scalar of exact valuation `e`, when one exists among representatives.
    pub fn realize(&self, e: &Exponent) -> Result<Scalar> {
        let unsupported = || Error::Unsupported(format!("exponent {e} is not realized by a scalar of {:?}", self.mode));
        let q = e.as_rational().ok_or_else(unsupported)?;
        let twice = q * BigRational::from_integer(2.into());
        if !twice.is_integer() {
            return Err(unsupported());
        }
        let k: i64 = twice
            .to_integer()
            .try_into()
            .map_err(|_| unsupported())?;
        match self.mode {
            FieldMode::PAdic { p } => {
                let half = Scalar::sqrt_p(p);
                let base = if k.is_even() {
                    Scalar::from_int(p as i64).powi(k / 2)?
                } else {
                    (&Scalar::from_int(p as i64).powi((k - 1) / 2)? * &half).clone()
                };
                Ok(base)
            }
            FieldMode::EqualCharZero => Ok(Scalar::sqrt_t_pow(k)),
            FieldMode::Trivial if k == 0 => Ok(Scalar::one()),
            FieldMode::Trivial => Err(unsupported()),
        }
    }

    pub fn describe(&self) -> String {
        match self.mode {
            FieldMode::PAdic { p } => format!("p-adic(p={p})"),
            FieldMode::EqualCharZero => "equal-char-zero".into(),
            FieldMode::Trivial => "trivial".into(),
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Scalar {
        s.parse().unwrap()
    }

    #[test]
    fn valuation_examples() {
        let f = FieldSpec::p_adic(2).unwrap();
        assert_eq!(f.valuation(&q("4")).unwrap(), Exponent::int(2));
        assert_eq!(f.valuation(&q("sqrt(2)")).unwrap(), Exponent::ratio(1, 2));
        assert_eq!(f.valuation(&q("0")).unwrap(), Exponent::Infinite);
        assert_eq!(f.valuation(&q("3/8+5*sqrt(2)")).unwrap(), Exponent::int(-3));
        assert_eq!(f.valuation(&q("8+5*sqrt(2)")).unwrap(), Exponent::ratio(1, 2));
        assert_eq!(f.valuation(&q("3/8+5/16*sqrt(2)")).unwrap(), Exponent::ratio(-7, 2));
    }

    #[test]
    fn radical_outside_padic_mode_is_invalid() {
        let triv = FieldSpec::trivial();
        assert!(matches!(triv.valuation(&q("1+sqrt(2)")), Err(Error::InvalidScalar(_))));
        let f3 = FieldSpec::p_adic(3).unwrap();
        assert!(f3.valuation(&q("sqrt(2)")).is_err());
        assert!(f3.valuation(&q("t")).is_err());
        assert_eq!(triv.valuation(&q("-17/4")).unwrap(), Exponent::zero());
    }

    #[test]
    fn uniformizer_valuation() {
        let f = FieldSpec::equal_char_zero();
        assert_eq!(f.valuation(&q("t^-2+5")).unwrap(), Exponent::int(-2));
        assert_eq!(f.valuation(&q("sqrt(t)+t")).unwrap(), Exponent::ratio(1, 2));
        assert_eq!(f.valuation(&q("12")).unwrap(), Exponent::zero());
    }

    #[test]
    fn factorial_examples() {
        let f = FieldSpec::p_adic(2).unwrap();
        assert_eq!(f.factorial_valuation(4), Exponent::int(3));
        assert_eq!(f.factorial_valuation(8), Exponent::int(7));
        assert_eq!(f.factorial_valuation(0), Exponent::zero());
        assert_eq!(FieldSpec::equal_char_zero().factorial_valuation(50), Exponent::zero());
    }

    #[test]
    fn omega_values() {
        assert_eq!(FieldSpec::p_adic(2).unwrap().omega_exponent(), Exponent::int(1));
        assert_eq!(FieldSpec::p_adic(3).unwrap().omega_exponent(), Exponent::ratio(1, 2));
        assert_eq!(FieldSpec::equal_char_zero().omega_exponent(), Exponent::zero());
        assert_eq!(FieldSpec::trivial().omega_exponent(), Exponent::zero());
    }

    #[test]
    fn rejects_composite() {
        assert!(FieldSpec::p_adic(4).is_err());
        assert!(FieldSpec::p_adic(1).is_err());
    }

    #[test]
    fn realize_has_requested_valuation() {
        let f = FieldSpec::p_adic(3).unwrap();
        for k in -5..=5 {
            let e = Exponent::ratio(k, 2);
            let s = f.realize(&e).unwrap();
            assert_eq!(f.valuation(&s).unwrap(), e);
        }
        assert!(f.realize(&Exponent::ratio(1, 3)).is_err());
        let g = FieldSpec::equal_char_zero();
        assert_eq!(g.valuation(&g.realize(&Exponent::ratio(-3, 2)).unwrap()).unwrap(), Exponent::ratio(-3, 2));
    }
}
