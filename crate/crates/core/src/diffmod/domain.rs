use serde::{Deserialize, Serialize};

use crate::berkline::{BerkPoint, Disk};
use crate::error::{Error, Result};
use crate::valcore::{Exponent, FieldSpec, Radius, Scalar};

/// Center and radius of a disk in a domain description.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiskParams {
    pub center: Scalar,
    pub radius_exp: Exponent,
}

impl DiskParams {
    pub fn new(center: Scalar, radius_exp: Exponent) -> Self {
        DiskParams { center, radius_exp }
    }

    pub fn radius(&self) -> Radius {
        Radius::from_exponent(self.radius_exp.clone())
    }

    pub fn closed(&self) -> Disk {
        Disk::closed(self.center.clone(), self.radius_exp.clone())
    }

    fn validate(&self, f: &FieldSpec, what: &str) -> Result<()> {
        f.check_scalar(&self.center)?;
        if self.radius_exp.is_infinite() {
            return Err(Error::InvalidDomain(format!("{what} has radius zero")));
        }
        Ok(())
    }
}

/// The ring the derivation acts on: `O(X)` for an affinoid `X`, or `H(x)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum DomainSpec {
    ClosedDisk {
        center: Scalar,
        radius_exp: Exponent,
    },
    /// `D⁺(c_0, r_0) \ ⋃ D⁻(c_i, r_i)`
    Affinoid { outer: DiskParams, holes: Vec<DiskParams> },
    DisjointUnion { parts: Vec<DomainSpec> },
    Point { point: BerkPoint },
}

impl DomainSpec {
    pub fn closed_disk(center: Scalar, radius_exp: Exponent) -> Self {
        DomainSpec::ClosedDisk { center, radius_exp }
    }

    pub fn affinoid(outer: DiskParams, holes: Vec<DiskParams>) -> Self {
        DomainSpec::Affinoid { outer, holes }
    }

    pub fn point(point: BerkPoint) -> Self {
        DomainSpec::Point { point }
    }

    /// `r_1 ≤ |S| ≤ r_0` around the origin.
    pub fn annulus(inner_exp: Exponent, outer_exp: Exponent) -> Self {
        Self::affinoid(
            DiskParams::new(Scalar::zero(), outer_exp),
            vec![DiskParams::new(Scalar::zero(), inner_exp)],
        )
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            DomainSpec::ClosedDisk { .. } => "closed-disk",
            DomainSpec::Affinoid { .. } => "affinoid",
            DomainSpec::DisjointUnion { .. } => "disjoint-union",
            DomainSpec::Point { .. } => "point",
        }
    }

    /// Outer closed disk of a connected affinoid.
    fn hull(&self) -> Option<DiskParams> {
        match self {
            DomainSpec::ClosedDisk { center, radius_exp } => Some(DiskParams::new(center.clone(), radius_exp.clone())),
            DomainSpec::Affinoid { outer, .. } => Some(outer.clone()),
            _ => None,
        }
    }

    fn holes(&self) -> &[DiskParams] {
        match self {
            DomainSpec::Affinoid { holes, .. } => holes,
            _ => &[],
        }
    }

    pub fn validate(&self, f: &FieldSpec) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidDomain(m));
        match self {
            DomainSpec::ClosedDisk { center, radius_exp } => {
                DiskParams::new(center.clone(), radius_exp.clone()).validate(f, "closed disk")
            }
            DomainSpec::Affinoid { outer, holes } => {
                outer.validate(f, "outer disk")?;
                if holes.is_empty() {
                    return bad("affinoid without holes; use closed-disk".into());
                }
                for (i, h) in holes.iter().enumerate() {
                    h.validate(f, &format!("hole {i}"))?;
                    if h.radius() > outer.radius() {
                        return bad(format!("hole {i} is larger than the outer disk"));
                    }
                    if f.distance(&h.center, &outer.center) > outer.radius() {
                        return bad(format!("hole {i} lies outside the outer disk"));
                    }
                }
                for i in 0..holes.len() {
                    for j in i + 1..holes.len() {
                        let (a, b) = (&holes[i], &holes[j]);
                        // open disks are disjoint iff the centers are at least the larger radius apart
                        if f.distance(&a.center, &b.center) < a.radius().max(b.radius()) {
                            return bad(format!("holes {i} and {j} overlap"));
                        }
                    }
                }
                Ok(())
            }
            DomainSpec::DisjointUnion { parts } => {
                if parts.len() < 2 {
                    return bad("a disjoint union needs at least two parts".into());
                }
                for (i, p) in parts.iter().enumerate() {
                    if p.hull().is_none() {
                        return bad(format!("union part {i} must be a closed disk or an affinoid"));
                    }
                    p.validate(f)?;
                }
                for i in 0..parts.len() {
                    for j in i + 1..parts.len() {
                        if !Self::disjoint(f, &parts[i], &parts[j]) {
                            return bad(format!("union parts {i} and {j} intersect"));
                        }
                    }
                }
                Ok(())
            }
            DomainSpec::Point { point } => {
                if matches!(point, BerkPoint::Rigid { .. }) {
                    return bad("H(x) needs a point of type 2, 3 or 4".into());
                }
                point.validate(f)
            }
        }
    }

    /// Connected affinoids are disjoint iff their hulls are, or one hull sits inside a hole of the other.
    fn disjoint(f: &FieldSpec, a: &DomainSpec, b: &DomainSpec) -> bool {
        let (ha, hb) = (a.hull().unwrap(), b.hull().unwrap());
        let d = f.distance(&ha.center, &hb.center);
        if d > ha.radius().max(hb.radius()) {
            return true;
        }
        let inside_hole = |h: &DiskParams, holes: &[DiskParams]| {
            holes
                .iter()
                .any(|o| h.radius() < o.radius() && f.distance(&h.center, &o.center) < o.radius())
        };
        inside_hole(&hb, a.holes()) || inside_hole(&ha, b.holes())
    }

    /// `min r_i` over the outer radius and all holes.
    pub fn min_radius(&self) -> Option<Radius> {
        match self {
            DomainSpec::ClosedDisk { radius_exp, .. } => Some(Radius::from_exponent(radius_exp.clone())),
            DomainSpec::Affinoid { outer, holes } => holes.iter().map(DiskParams::radius).chain([outer.radius()]).min(),
            _ => None,
        }
    }
}
