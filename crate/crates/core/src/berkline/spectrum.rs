use std::cmp::Ordering;

use serde::Serialize;

use super::disk::{Disk, DiskKind};
use super::point::BerkPoint;
use crate::error::{Error, Result};
use crate::valcore::{Exponent, FieldSpec, Poly, Radius, Scalar};

/// A finite union of pairwise incomparable disks, grouped into connected components.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Spectrum {
    #[serde(skip)]
    field: FieldSpec,
    disks: Vec<Disk>,
    components: Vec<Vec<usize>>,
}

/// Outcome of measuring how far a rigid point lies from a spectrum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Separation {
    Contained,
    /// Exponent of `min_i |b - c_i|`.
    Distance(Exponent),
}

/// Canonical order: centers closest to the origin first, then the literal,
/// then larger disks first.
fn canonical_cmp(f: &FieldSpec, a: &Disk, b: &Disk) -> Ordering {
    f.val(b.center())
        .cmp(&f.val(a.center()))
        .then_with(|| a.center().cmp(b.center()))
        .then_with(|| a.radius_exp().cmp(b.radius_exp()))
        .then_with(|| a.kind().cmp(&b.kind()))
}

/// Union-find root.
fn root(parent: &mut [usize], mut i: usize) -> usize {
    while parent[i] != i {
        parent[i] = parent[parent[i]];
        i = parent[i];
    }
    i
}

impl Spectrum {
    /// Canonical form of a union of disks.
    ///
    /// Drops every disk contained in another (among equal sets the canonically
    /// smallest representative survives), groups disks touching at a Shilov
    /// point and sorts. The point set is unchanged.
    pub fn normalize(f: &FieldSpec, disks: impl IntoIterator<Item = Disk>) -> Result<Spectrum> {
        let mut all: Vec<Disk> = disks.into_iter().map(|d| d.canonical(f)).collect();
        if all.is_empty() {
            return Err(Error::EmptySpectrum);
        }
        for d in &all {
            f.check_scalar(d.center())?;
        }
        all.sort_by(|a, b| canonical_cmp(f, a, b));
        all.dedup();
        let kept: Vec<Disk> = all
            .iter()
            .enumerate()
            .filter(|(i, d)| {
                !all.iter().enumerate().any(|(j, o)| {
                    j != *i && d.is_subset_of(f, o) && (!o.is_subset_of(f, d) || j < *i)
                })
            })
            .map(|(_, d)| d.clone())
            .collect();

        let n = kept.len();
        let mut parent: Vec<usize> = (0..n).collect();
        for i in 0..n {
            for j in i + 1..n {
                if kept[i].touches(f, &kept[j]) {
                    let (ri, rj) = (root(&mut parent, i), root(&mut parent, j));
                    parent[ri.max(rj)] = ri.min(rj);
                }
            }
        }
        let mut components: Vec<Vec<usize>> = Vec::new();
        let mut slot = vec![usize::MAX; n];
        for i in 0..n {
            let r = root(&mut parent, i);
            if slot[r] == usize::MAX {
                slot[r] = components.len();
                components.push(Vec::new());
            }
            components[slot[r]].push(i);
        }
        Ok(Spectrum {
            field: f.clone(),
            disks: kept,
            components,
        })
    }

    pub fn single(f: &FieldSpec, d: Disk) -> Result<Spectrum> {
        Self::normalize(f, [d])
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn disks(&self) -> &[Disk] {
        &self.disks
    }

    pub fn components(&self) -> &[Vec<usize>] {
        &self.components
    }

    /// Components mixing closed disks with closures of open disks.
    pub fn mixed_components(&self) -> Vec<usize> {
        self.components
            .iter()
            .enumerate()
            .filter(|(_, c)| {
                let closed = c.iter().filter(|&&i| self.disks[i].is_closed()).count();
                closed != 0 && closed != c.len()
            })
            .map(|(k, _)| k)
            .collect()
    }

    pub fn contains_point(&self, pt: &BerkPoint) -> bool {
        self.disks.iter().any(|d| d.contains_point(&self.field, pt))
    }

    pub fn contains_rigid(&self, b: &Scalar) -> bool {
        self.contains_point(&BerkPoint::rigid(b.clone()))
    }

    /// A disk lies in the union iff it lies in one member: a disk is never a
    /// finite union of strictly smaller ones.
    pub fn contains_disk(&self, d: &Disk) -> bool {
        self.disks.iter().any(|o| d.is_subset_of(&self.field, o))
    }

    pub fn is_subset_of(&self, other: &Spectrum) -> bool {
        self.disks.iter().all(|d| other.contains_disk(d))
    }

    pub fn same_set(&self, other: &Spectrum) -> bool {
        self.is_subset_of(other) && other.is_subset_of(self)
    }

    pub fn separation(&self, b: &Scalar) -> Separation {
        if self.contains_rigid(b) {
            return Separation::Contained;
        }
        let nearest = self
            .disks
            .iter()
            .map(|d| self.field.distance(b, d.center()))
            .min()
            .expect("nonempty spectrum");
        Separation::Distance(nearest.into_exponent())
    }

    /// Radius of the smallest closed disk at the origin containing the spectrum.
    pub fn enclosing_radius(&self) -> Radius {
        Radius::max_of(&self.disks.iter().map(|d| d.enclosing_radius(&self.field)).collect::<Vec<_>>())
    }

    pub fn enclosing_radius_exp(&self) -> Exponent {
        self.enclosing_radius().into_exponent()
    }

    pub fn translate(&self, a: &Scalar) -> Spectrum {
        Self::normalize(&self.field, self.disks.iter().map(|d| d.translate(a))).expect("nonempty")
    }

    pub fn poly_image(&self, q: &Poly) -> Result<Spectrum> {
        let images = self
            .disks
            .iter()
            .map(|d| d.poly_image(&self.field, q))
            .collect::<Result<Vec<_>>>()?;
        Self::normalize(&self.field, images)
    }

    pub fn union(&self, other: &Spectrum) -> Spectrum {
        Self::normalize(&self.field, self.disks.iter().chain(&other.disks).cloned()).expect("nonempty")
    }

    pub fn has_kind(&self, kind: DiskKind) -> bool {
        self.disks.iter().any(|d| d.kind() == kind)
    }
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
    fn merge_by_containment() {
        let f = FieldSpec::p_adic(2).unwrap();
        let sp = Spectrum::normalize(&f, [Disk::closed(s("0"), e("1")), Disk::closed(s("2"), e("1"))]).unwrap();
        assert_eq!(sp.disks(), &[Disk::closed(s("0"), e("1"))]);
        // input order does not matter
        let sp2 = Spectrum::normalize(&f, [Disk::closed(s("2"), e("1")), Disk::closed(s("0"), e("1"))]).unwrap();
        assert_eq!(sp, sp2);
    }

    #[test]
    fn disjoint_disks_stay_apart() {
        let f = FieldSpec::p_adic(3).unwrap();
        let w = f.omega_exponent();
        let sp = Spectrum::normalize(&f, [Disk::closed(s("1"), w.clone()), Disk::closed(s("0"), w.clone())]).unwrap();
        assert_eq!(sp.disks().len(), 2);
        assert_eq!(sp.components().len(), 2);
        assert_eq!(sp.disks()[0].center(), &s("0"));
    }

    #[test]
    fn empty_is_rejected() {
        let f = FieldSpec::trivial();
        assert_eq!(Spectrum::normalize(&f, []), Err(Error::EmptySpectrum));
    }

    #[test]
    fn touching_closures_share_a_component() {
        let f = FieldSpec::trivial();
        let sp = Spectrum::normalize(&f, [Disk::closure_open(s("0"), e("0")), Disk::closure_open(s("1"), e("0"))]).unwrap();
        assert_eq!(sp.components(), &[vec![0, 1]]);
        assert!(sp.mixed_components().is_empty());
        // a closed disk absorbs a closure of equal radius at distance R
        let absorbed = Spectrum::normalize(&f, [Disk::closed(s("0"), e("0")), Disk::closure_open(s("5"), e("0"))]).unwrap();
        assert_eq!(absorbed.disks(), &[Disk::closed(s("0"), e("0"))]);
    }

    #[test]
    fn separation_examples() {
        let f = FieldSpec::p_adic(2).unwrap();
        let sp = Spectrum::single(&f, Disk::closed(s("0"), e("1"))).unwrap();
        assert_eq!(sp.separation(&s("1")), Separation::Distance(e("0")));
        assert_eq!(sp.separation(&s("0")), Separation::Contained);
        assert_eq!(sp.separation(&s("4")), Separation::Contained);
    }

    #[test]
    fn enclosing_examples() {
        let f = FieldSpec::p_adic(2).unwrap();
        let sp = Spectrum::single(&f, Disk::closed(s("2"), e("1"))).unwrap();
        assert_eq!(sp.enclosing_radius_exp(), e("1"));
        let sp = Spectrum::single(&f, Disk::closed(s("1"), e("2"))).unwrap();
        assert_eq!(sp.enclosing_radius_exp(), e("0"));
    }
}
