//! Open-cover neighborhoods of compact sets: `{Σ : Σ ⊆ U, Σ ∩ U_i ≠ ∅ for all i}`.

use serde::{Deserialize, Serialize};

use super::disk::Disk;
use super::point::BerkPoint;
use super::spectrum::Spectrum;
use crate::error::{Error, Result};
use crate::valcore::{Exponent, FieldSpec, Radius, Scalar};

/// An open disk `{|T-c| < R}` or an open annulus `{r_in < |T-c| < r_out}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum Region {
    OpenDisk {
        center: Scalar,
        radius_exp: Exponent,
    },
    /// `inner_exp = inf` gives a punctured disk.
    OpenAnnulus {
        center: Scalar,
        inner_exp: Exponent,
        outer_exp: Exponent,
    },
}

impl Region {
    pub fn open_disk(center: Scalar, radius_exp: Exponent) -> Self {
        Region::OpenDisk { center, radius_exp }
    }

    pub fn open_annulus(center: Scalar, inner_exp: Exponent, outer_exp: Exponent) -> Self {
        Region::OpenAnnulus {
            center,
            inner_exp,
            outer_exp,
        }
    }

    pub fn center(&self) -> &Scalar {
        match self {
            Region::OpenDisk { center, .. } | Region::OpenAnnulus { center, .. } => center,
        }
    }

    /// `(r_in, r_out)`; an open disk has inner radius zero but still contains its center.
    fn bounds(&self) -> (Radius, Radius) {
        match self {
            Region::OpenDisk { radius_exp, .. } => (Radius::zero(), Radius::from_exponent(radius_exp.clone())),
            Region::OpenAnnulus {
                inner_exp, outer_exp, ..
            } => (
                Radius::from_exponent(inner_exp.clone()),
                Radius::from_exponent(outer_exp.clone()),
            ),
        }
    }

    pub fn validate(&self, f: &FieldSpec) -> Result<()> {
        f.check_scalar(self.center())?;
        let (r_in, r_out) = self.bounds();
        if r_out.is_zero() {
            return Err(Error::InvalidDomain("open region with zero outer radius".into()));
        }
        if matches!(self, Region::OpenAnnulus { .. }) && r_in >= r_out {
            return Err(Error::InvalidDomain("annulus inner radius must be below the outer one".into()));
        }
        Ok(())
    }

    pub fn contains_point(&self, f: &FieldSpec, pt: &BerkPoint) -> bool {
        let v = pt.abs_at(f, self.center());
        let (r_in, r_out) = self.bounds();
        let above_inner = match self {
            Region::OpenDisk { .. } => true,
            Region::OpenAnnulus { .. } => v > r_in,
        };
        above_inner && v < r_out
    }

    /// Set of values of `|T - c|` on the disk, as `Ok(constant)` or `Err(R)`
    /// for the full interval `[0, R]` when `c` lies in the disk.
    fn abs_profile(f: &FieldSpec, d: &Disk, c: &Scalar) -> std::result::Result<Radius, Radius> {
        if d.contains_rigid(f, c) {
            Err(d.radius())
        } else {
            Ok(f.distance(d.center(), c).max(d.radius()))
        }
    }

    pub fn meets_disk(&self, f: &FieldSpec, d: &Disk) -> bool {
        let (r_in, r_out) = self.bounds();
        match (self, Self::abs_profile(f, d, self.center())) {
            (Region::OpenDisk { .. }, Err(_)) => true,
            (Region::OpenAnnulus { .. }, Err(r)) => r_in < r,
            (Region::OpenDisk { .. }, Ok(v)) => v < r_out,
            (Region::OpenAnnulus { .. }, Ok(v)) => r_in < v && v < r_out,
        }
    }

    /// Whether the disk is covered by this region alone.
    pub fn contains_disk(&self, f: &FieldSpec, d: &Disk) -> bool {
        let (r_in, r_out) = self.bounds();
        match (self, Self::abs_profile(f, d, self.center())) {
            (Region::OpenDisk { .. }, Err(r)) => r < r_out,
            (Region::OpenAnnulus { .. }, Err(_)) => false,
            (Region::OpenDisk { .. }, Ok(v)) => v < r_out,
            (Region::OpenAnnulus { .. }, Ok(v)) => r_in < v && v < r_out,
        }
    }

    /// Point-set inclusion between open regions.
    pub fn is_subset_of(&self, f: &FieldSpec, other: &Region) -> bool {
        let (r_in, r_out) = self.bounds();
        let (o_in, o_out) = other.bounds();
        let delta = f.distance(self.center(), other.center());
        match (self, other) {
            (Region::OpenDisk { .. }, Region::OpenDisk { .. }) => r_out <= o_out && delta < o_out,
            // |T - c'| is constant on the disk iff the disk misses c'
            (Region::OpenDisk { .. }, Region::OpenAnnulus { .. }) => delta >= r_out && o_in < delta && delta < o_out,
            (Region::OpenAnnulus { .. }, Region::OpenDisk { .. }) => r_out <= o_out && delta < o_out,
            (Region::OpenAnnulus { .. }, Region::OpenAnnulus { .. }) => {
                if delta <= r_in {
                    o_in <= r_in && r_out <= o_out
                } else if delta >= r_out {
                    o_in < delta && delta < o_out
                } else {
                    // the other center lies in this annulus
                    false
                }
            }
        }
    }
}

/// Whether the union of `regions` covers the disk.
///
/// Some region must hold the Shilov point. A disk or an annulus not centered
/// inside the disk then covers everything; an annulus centered at `c` inside
/// the disk leaves exactly `D⁺(c, r_in)` to cover.
fn covers(f: &FieldSpec, regions: &[Region], d: &Disk, depth: usize) -> bool {
    if depth == 0 {
        return false;
    }
    let shilov = d.shilov_point();
    regions.iter().filter(|v| v.contains_point(f, &shilov)).any(|v| {
        if v.contains_disk(f, d) {
            return true;
        }
        match v {
            Region::OpenAnnulus {
                center, inner_exp, ..
            } if inner_exp.is_infinite() => regions
                .iter()
                .any(|w| w.contains_point(f, &BerkPoint::rigid(center.clone()))),
            Region::OpenAnnulus {
                center, inner_exp, ..
            } => covers(f, regions, &Disk::closed(center.clone(), inner_exp.clone()), depth - 1),
            Region::OpenDisk { .. } => false,
        }
    })
}

/// Subbasic neighborhood of a compact set: `outer` plays `U`, each part an open cover `U_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Neighborhood {
    pub outer: Vec<Region>,
    pub parts: Vec<Vec<Region>>,
}

impl Neighborhood {
    pub fn new(outer: Vec<Region>, parts: Vec<Vec<Region>>) -> Self {
        Neighborhood { outer, parts }
    }

    /// Checks each region and that every part region lies inside a single region of `U`.
    pub fn validate(&self, f: &FieldSpec) -> Result<()> {
        if self.outer.is_empty() {
            return Err(Error::InvalidDomain("neighborhood with empty U".into()));
        }
        for r in self.outer.iter().chain(self.parts.iter().flatten()) {
            r.validate(f)?;
        }
        for (i, part) in self.parts.iter().enumerate() {
            if part.is_empty() {
                return Err(Error::InvalidDomain(format!("cover part {i} is empty")));
            }
            if let Some(r) = part.iter().find(|r| !self.outer.iter().any(|u| r.is_subset_of(f, u))) {
                return Err(Error::InvalidDomain(format!("cover part {i}: {r:?} is not inside U")));
            }
        }
        Ok(())
    }

    pub fn covers_disk(&self, f: &FieldSpec, d: &Disk) -> bool {
        covers(f, &self.outer, d, self.outer.len() + 1)
    }

    pub fn contains(&self, s: &Spectrum) -> bool {
        let f = s.field();
        s.disks().iter().all(|d| self.covers_disk(f, d))
            && self
                .parts
                .iter()
                .all(|part| part.iter().any(|r| s.disks().iter().any(|d| r.meets_disk(f, d))))
    }
}

/// Membership of a spectrum in a neighborhood.
pub fn neighborhood_member(s: &Spectrum, n: &Neighborhood) -> bool {
    n.contains(s)
}

/// The open disk with the same center and radius as `d`.
pub fn open_disk_of(d: &Disk) -> Region {
    Region::open_disk(d.center().clone(), d.radius_exp().clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(x: &str) -> Scalar {
        x.parse().unwrap()
    }

    fn e(x: &str) -> Exponent {
        x.parse().unwrap()
    }

    #[test]
    fn strict_radius_needed() {
        let f = FieldSpec::p_adic(2).unwrap();
        let u = Region::open_disk(s("0"), e("0"));
        let n = Neighborhood::new(vec![u.clone()], vec![vec![u]]);
        n.validate(&f).unwrap();
        let small = Spectrum::single(&f, Disk::closed(s("0"), e("1"))).unwrap();
        let unit = Spectrum::single(&f, Disk::closed(s("0"), e("0"))).unwrap();
        assert!(neighborhood_member(&small, &n));
        assert!(!neighborhood_member(&unit, &n));
    }

    #[test]
    fn missed_cover_part() {
        let f = FieldSpec::p_adic(3).unwrap();
        let sp = Spectrum::normalize(&f, [Disk::closed(s("0"), e("1")), Disk::closed(s("1"), e("1"))]).unwrap();
        let u = vec![Region::open_disk(s("0"), e("-1"))];
        let hit = Neighborhood::new(u.clone(), vec![vec![Region::open_disk(s("1"), e("1/2"))]]);
        assert!(neighborhood_member(&sp, &hit));
        // a part near 2 that neither disk reaches
        let miss = Neighborhood::new(u, vec![vec![Region::open_disk(s("2"), e("2"))]]);
        miss.validate(&f).unwrap();
        assert!(!neighborhood_member(&sp, &miss));
    }

    #[test]
    fn annulus_plus_core_covers_disk() {
        let f = FieldSpec::p_adic(2).unwrap();
        let d = Disk::closed(s("0"), e("0"));
        let ring = Region::open_annulus(s("0"), e("2"), e("-1"));
        assert!(!covers(&f, &[ring.clone()], &d, 3));
        let core = Region::open_disk(s("0"), e("1"));
        assert!(covers(&f, &[ring.clone(), core], &d, 3));
        // a core of exactly the inner radius misses the circle |T| = 1/4
        let tight = Region::open_disk(s("0"), e("2"));
        assert!(!covers(&f, &[ring, tight], &d, 3));
    }

    #[test]
    fn punctured_disk_needs_its_center() {
        let f = FieldSpec::p_adic(2).unwrap();
        let d = Disk::closed(s("0"), e("0"));
        let punctured = Region::open_annulus(s("0"), Exponent::Infinite, e("-1"));
        assert!(!covers(&f, &[punctured.clone()], &d, 3));
        assert!(covers(&f, &[punctured, Region::open_disk(s("0"), e("5"))], &d, 3));
    }

    #[test]
    fn region_inclusion() {
        let f = FieldSpec::p_adic(2).unwrap();
        let big = Region::open_disk(s("0"), e("-1"));
        let ring = Region::open_annulus(s("1"), e("3"), e("1"));
        assert!(ring.is_subset_of(&f, &big));
        assert!(!big.is_subset_of(&f, &ring));
        let far = Region::open_disk(s("1"), e("1"));
        let around_zero = Region::open_annulus(s("0"), e("1"), e("-1"));
        assert!(far.is_subset_of(&f, &around_zero));
    }
}
