use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::valcore::{Exponent, FieldSpec, Radius, Scalar};

/// One disk of a type-4 nested family.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyDisk {
    pub center: Scalar,
    pub radius_exp: Exponent,
}

/// A point of the Berkovich affine line.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case", deny_unknown_fields)]
pub enum BerkPoint {
    /// Type (1): a scalar.
    Rigid { center: Scalar },
    /// `x_{c,r}`: type (2) when `r` is in the value group, else type (3).
    Shilov { center: Scalar, radius_exp: Exponent },
    /// Type (4), presented by its radius and a finite piece of a nested family.
    Type4 {
        radius_exp: Exponent,
        family: Vec<FamilyDisk>,
    },
}

impl BerkPoint {
    pub fn rigid(c: Scalar) -> Self {
        BerkPoint::Rigid { center: c }
    }

    pub fn shilov(c: Scalar, radius_exp: Exponent) -> Self {
        BerkPoint::Shilov {
            center: c,
            radius_exp,
        }
    }

    pub fn type4(radius_exp: Exponent, family: Vec<(Scalar, Exponent)>) -> Self {
        BerkPoint::Type4 {
            radius_exp,
            family: family
                .into_iter()
                .map(|(center, radius_exp)| FamilyDisk { center, radius_exp })
                .collect(),
        }
    }

    pub fn validate(&self, f: &FieldSpec) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidDomain(m));
        match self {
            BerkPoint::Rigid { center } => f.check_scalar(center),
            BerkPoint::Shilov { center, radius_exp } => {
                f.check_scalar(center)?;
                if radius_exp.is_infinite() {
                    return bad("a Shilov point needs a positive radius".into());
                }
                Ok(())
            }
            BerkPoint::Type4 { radius_exp, family } => {
                if radius_exp.is_infinite() {
                    return bad("type-4 radius must be positive".into());
                }
                if family.is_empty() {
                    return bad("type-4 family is empty".into());
                }
                for (l, d) in family.iter().enumerate() {
                    f.check_scalar(&d.center)?;
                    if d.radius_exp >= *radius_exp {
                        return bad(format!("family disk {l} is not larger than r(x)"));
                    }
                    if l > 0 {
                        let prev = &family[l - 1];
                        if d.radius_exp <= prev.radius_exp {
                            return bad(format!("family radii do not strictly decrease at {l}"));
                        }
                        if f.val(&(&d.center - &prev.center)) < prev.radius_exp {
                            return bad(format!("family disk {l} leaves disk {}", l - 1));
                        }
                    }
                }
                Ok(())
            }
        }
    }

    /// `r(x)` as an exponent; `+inf` for rigid points.
    pub fn radius_exp(&self) -> Exponent {
        match self {
            BerkPoint::Rigid { .. } => Exponent::Infinite,
            BerkPoint::Shilov { radius_exp, .. } | BerkPoint::Type4 { radius_exp, .. } => radius_exp.clone(),
        }
    }

    pub fn radius(&self) -> Radius {
        Radius::from_exponent(self.radius_exp())
    }

    /// 1 to 4.
    pub fn point_type(&self, f: &FieldSpec) -> u8 {
        match self {
            BerkPoint::Rigid { .. } => 1,
            BerkPoint::Shilov { radius_exp, .. } if f.in_value_group(radius_exp) => 2,
            BerkPoint::Shilov { .. } => 3,
            BerkPoint::Type4 { .. } => 4,
        }
    }

    /// `|T - a|` evaluated at this point.
    ///
    /// A type-4 point is read through its deepest family center: beyond that
    /// disk the value is exact, inside it the family is assumed to keep
    /// shrinking around that center down to `r(x)`.
    pub fn abs_at(&self, f: &FieldSpec, a: &Scalar) -> Radius {
        let (c, r) = match self {
            BerkPoint::Rigid { center } => return f.distance(center, a),
            BerkPoint::Shilov { center, radius_exp } => (center, radius_exp),
            BerkPoint::Type4 { radius_exp, family } => (&family.last().expect("validated family").center, radius_exp),
        };
        f.distance(c, a).max(Radius::from_exponent(r.clone()))
    }

    /// `(c, r)` when this is a Shilov point `x_{c,r}`.
    pub fn as_shilov(&self) -> Option<(&Scalar, &Exponent)> {
        match self {
            BerkPoint::Shilov { center, radius_exp } => Some((center, radius_exp)),
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn type_tags() {
        let f = FieldSpec::p_adic(2).unwrap();
        assert_eq!(BerkPoint::shilov(Scalar::zero(), Exponent::int(1)).point_type(&f), 2);
        assert_eq!(BerkPoint::shilov(Scalar::zero(), "sqrt2".parse().unwrap()).point_type(&f), 3);
        assert_eq!(BerkPoint::rigid(Scalar::one()).point_type(&f), 1);
    }

    #[test]
    fn type4_family_checks() {
        let f = FieldSpec::equal_char_zero();
        let ok = BerkPoint::type4(
            Exponent::int(5),
            vec![
                (Scalar::zero(), Exponent::int(1)),
                (Scalar::t_pow(1), Exponent::int(2)),
                (Scalar::t_pow(1) + Scalar::t_pow(2), Exponent::int(3)),
            ],
        );
        ok.validate(&f).unwrap();
        // second center jumps outside the first disk
        let jump = BerkPoint::type4(
            Exponent::int(5),
            vec![(Scalar::zero(), Exponent::int(1)), (Scalar::one(), Exponent::int(2))],
        );
        assert!(jump.validate(&f).is_err());
        let not_decreasing = BerkPoint::type4(
            Exponent::int(5),
            vec![(Scalar::zero(), Exponent::int(2)), (Scalar::zero(), Exponent::int(1))],
        );
        assert!(not_decreasing.validate(&f).is_err());
        let below_radius = BerkPoint::type4(Exponent::int(1), vec![(Scalar::zero(), Exponent::int(2))]);
        assert!(below_radius.validate(&f).is_err());
    }
}
