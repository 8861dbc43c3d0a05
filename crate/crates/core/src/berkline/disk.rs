use std::fmt;

use serde::{Deserialize, Serialize};

use super::point::BerkPoint;
use crate::error::{Error, Result};
use crate::valcore::{Exponent, FieldSpec, Poly, Radius, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum DiskKind {
    /// `D⁺(c, R)`
    #[serde(rename = "closed")]
    Closed,
    /// `D⁻(c, R) ∪ {x_{c,R}}`, the topological closure of the open disk.
    #[serde(rename = "closure-open")]
    ClosureOpen,
}

/// A closed disk or the closure of an open disk, with radius `base^(-radius_exp)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawDisk")]
pub struct Disk {
    center: Scalar,
    radius_exp: Exponent,
    kind: DiskKind,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDisk {
    center: Scalar,
    radius_exp: Exponent,
    kind: DiskKind,
}

impl TryFrom<RawDisk> for Disk {
    type Error = Error;
    fn try_from(r: RawDisk) -> Result<Disk> {
        Disk::new(r.center, r.radius_exp, r.kind)
    }
}

impl Disk {
    pub fn new(center: Scalar, radius_exp: Exponent, kind: DiskKind) -> Result<Self> {
        if radius_exp.is_infinite() {
            return Err(Error::InvalidDisk(format!("disk around {center} has radius zero")));
        }
        Ok(Disk {
            center,
            radius_exp,
            kind,
        })
    }

    /// # Panics
    /// On an infinite radius exponent.
    pub fn closed(center: Scalar, radius_exp: Exponent) -> Self {
        Self::new(center, radius_exp, DiskKind::Closed).expect("finite radius")
    }

    /// # Panics
    /// On an infinite radius exponent.
    pub fn closure_open(center: Scalar, radius_exp: Exponent) -> Self {
        Self::new(center, radius_exp, DiskKind::ClosureOpen).expect("finite radius")
    }

    pub fn center(&self) -> &Scalar {
        &self.center
    }

    pub fn radius_exp(&self) -> &Exponent {
        &self.radius_exp
    }

    pub fn radius(&self) -> Radius {
        Radius::from_exponent(self.radius_exp.clone())
    }

    pub fn kind(&self) -> DiskKind {
        self.kind
    }

    pub fn is_closed(&self) -> bool {
        self.kind == DiskKind::Closed
    }

    /// The Shilov (boundary) point `x_{c,R}`.
    pub fn shilov_point(&self) -> BerkPoint {
        BerkPoint::shilov(self.center.clone(), self.radius_exp.clone())
    }

    /// Same point set with a canonical kind: when `R` is not an absolute value
    /// of the field, `D⁺(c,R)` equals the closure of `D⁻(c,R)` and is stored closed.
    pub fn canonical(&self, f: &FieldSpec) -> Disk {
        let mut d = self.clone();
        if !f.in_value_group(&d.radius_exp) {
            d.kind = DiskKind::Closed;
        }
        d
    }

    pub fn translate(&self, a: &Scalar) -> Disk {
        Disk {
            center: &self.center + a,
            ..self.clone()
        }
    }

    pub fn contains_rigid(&self, f: &FieldSpec, b: &Scalar) -> bool {
        self.contains_point(f, &BerkPoint::rigid(b.clone()))
    }

    pub fn contains_point(&self, f: &FieldSpec, pt: &BerkPoint) -> bool {
        let r = self.radius();
        let v = pt.abs_at(f, &self.center);
        match self.canonical(f).kind {
            DiskKind::Closed => v <= r,
            // the only extra point of the closure is x_{c,R}
            DiskKind::ClosureOpen => v < r || (v == r && pt.as_shilov().is_some_and(|(_, rho)| *rho == self.radius_exp)),
        }
    }

    /// Point-set inclusion `self ⊆ other`.
    pub fn is_subset_of(&self, f: &FieldSpec, other: &Disk) -> bool {
        let (a, b) = (self.canonical(f), other.canonical(f));
        let d = f.distance(&a.center, &b.center);
        let (r1, r2) = (a.radius(), b.radius());
        match (a.kind, b.kind) {
            (_, DiskKind::Closed) => r1 <= r2 && d <= r2,
            (DiskKind::Closed, DiskKind::ClosureOpen) => r1 < r2 && d < r2,
            (DiskKind::ClosureOpen, DiskKind::ClosureOpen) => r1 <= r2 && d < r2,
        }
    }

    pub fn same_set(&self, f: &FieldSpec, other: &Disk) -> bool {
        self.is_subset_of(f, other) && other.is_subset_of(f, self)
    }

    /// Whether the two disks share a point.
    pub fn meets(&self, f: &FieldSpec, other: &Disk) -> bool {
        self.is_subset_of(f, other) || other.is_subset_of(f, self) || self.touches(f, other)
    }

    /// Distinct disks meeting only in a common Shilov point.
    pub fn touches(&self, f: &FieldSpec, other: &Disk) -> bool {
        let (a, b) = (self.canonical(f), other.canonical(f));
        a.radius_exp == b.radius_exp
            && (a.kind, b.kind) != (DiskKind::Closed, DiskKind::Closed)
            && f.distance(&a.center, &b.center) == a.radius()
    }

    /// `max(|c|, R)`, the smallest closed disk at the origin containing this one.
    pub fn enclosing_radius(&self, f: &FieldSpec) -> Radius {
        f.norm(&self.center).max(self.radius())
    }

    /// Image `Q(D)`: center `Q(a)`, radius `max_i |c_i| R^i` over the Taylor
    /// coefficients `c_i` of `Q` at `a`.
    pub fn poly_image(&self, f: &FieldSpec, q: &Poly) -> Result<Disk> {
        if q.is_constant() {
            return Err(Error::ConstantPolynomial);
        }
        let shifted = q.taylor_shift(&self.center);
        let radius_exp = shifted
            .coeffs()
            .iter()
            .enumerate()
            .skip(1)
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| &f.val(c) + &self.radius_exp.scale_int(i as i64))
            .min()
            .expect("nonconstant polynomial");
        Disk::new(q.eval(&self.center), radius_exp, self.kind)
    }
}

impl fmt::Display for Disk {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            DiskKind::Closed => write!(f, "D+({}, rexp {})", self.center, self.radius_exp),
            DiskKind::ClosureOpen => write!(f, "cl D-({}, rexp {})", self.center, self.radius_exp),
        }
    }
}
