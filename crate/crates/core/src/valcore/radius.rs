use std::cmp::Ordering;
use std::fmt;

use super::exponent::Exponent;

/// A nonnegative real `base^(-e)` stored through its exponent `e`.
///
/// Ordering follows the real numbers, so it is the reverse of the exponent
/// order; `Radius::zero()` has exponent `+inf`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Radius(Exponent);

impl Radius {
    pub fn from_exponent(e: Exponent) -> Self {
        Radius(e)
    }

    pub fn zero() -> Self {
        Radius(Exponent::Infinite)
    }

    pub fn one() -> Self {
        Radius(Exponent::zero())
    }

    pub fn exponent(&self) -> &Exponent {
        &self.0
    }

    pub fn into_exponent(self) -> Exponent {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_infinite()
    }

    /// `self * other`
    pub fn times(&self, other: &Radius) -> Radius {
        Radius(&self.0 + &other.0)
    }

    /// `self / other`, with `other > 0`.
    pub fn over(&self, other: &Radius) -> Radius {
        assert!(!other.is_zero(), "division by the zero radius");
        if self.is_zero() {
            return Radius::zero();
        }
        Radius(&self.0 - &other.0)
    }

    /// `self^n`
    pub fn pow(&self, n: i64) -> Radius {
        if self.is_zero() {
            assert!(n > 0, "0^{n}");
            return Radius::zero();
        }
        Radius(self.0.scale_int(n))
    }

    /// `1 / self`
    pub fn recip(&self) -> Radius {
        Radius::one().over(self)
    }

    pub fn max_of<'a>(items: impl IntoIterator<Item = &'a Radius>) -> Radius {
        items
            .into_iter()
            .fold(Radius::zero(), |acc, r| if *r > acc { r.clone() } else { acc })
    }
}

impl PartialOrd for Radius {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Radius {
    fn cmp(&self, other: &Self) -> Ordering {
        other.0.cmp(&self.0)
    }
}

impl fmt::Display for Radius {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "base^-({})", self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_is_reversed() {
        let half = Radius::from_exponent(Exponent::int(1));
        let one = Radius::one();
        assert!(half < one);
        assert!(Radius::zero() < half);
        assert_eq!(half.recip(), Radius::from_exponent(Exponent::int(-1)));
        assert_eq!(half.times(&half), Radius::from_exponent(Exponent::int(2)));
    }
}
