use std::fmt;

use serde::Serialize;

use crate::berkline::{BerkPoint, Disk, Spectrum};
use crate::diffmod::DomainSpec;
use crate::error::Result;
use crate::valcore::{Exponent, FieldSpec, Scalar};

/// Row of the closed-form table that produced a derivation spectrum.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum CaseTag {
    #[serde(rename = "char-p/closed-disk")]
    CharPDisk,
    #[serde(rename = "char-p/affinoid")]
    CharPAffinoid,
    #[serde(rename = "char-p/point-type-2-3")]
    CharPPoint23,
    #[serde(rename = "char-p/point-type-4")]
    CharPPoint4,
    #[serde(rename = "char-p/disjoint-union")]
    CharPUnion,
    #[serde(rename = "char-0/closed-disk")]
    CharZeroDisk,
    #[serde(rename = "char-0/affinoid")]
    CharZeroAffinoid,
    #[serde(rename = "char-0/point-type-2-3")]
    CharZeroPoint23,
    #[serde(rename = "char-0/point-type-4")]
    CharZeroPoint4,
    #[serde(rename = "char-0/disjoint-union")]
    CharZeroUnion,
}

impl CaseTag {
    pub const ALL: [CaseTag; 10] = [
        CaseTag::CharPDisk,
        CaseTag::CharPAffinoid,
        CaseTag::CharPPoint23,
        CaseTag::CharPPoint4,
        CaseTag::CharPUnion,
        CaseTag::CharZeroDisk,
        CaseTag::CharZeroAffinoid,
        CaseTag::CharZeroPoint23,
        CaseTag::CharZeroPoint4,
        CaseTag::CharZeroUnion,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CaseTag::CharPDisk => "char-p/closed-disk",
            CaseTag::CharPAffinoid => "char-p/affinoid",
            CaseTag::CharPPoint23 => "char-p/point-type-2-3",
            CaseTag::CharPPoint4 => "char-p/point-type-4",
            CaseTag::CharPUnion => "char-p/disjoint-union",
            CaseTag::CharZeroDisk => "char-0/closed-disk",
            CaseTag::CharZeroAffinoid => "char-0/affinoid",
            CaseTag::CharZeroPoint23 => "char-0/point-type-2-3",
            CaseTag::CharZeroPoint4 => "char-0/point-type-4",
            CaseTag::CharZeroUnion => "char-0/disjoint-union",
        }
    }
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Which table row applies; determined by the residue characteristic, the
/// domain kind and, for residue fields, the point type.
pub fn case_tag(dom: &DomainSpec, f: &FieldSpec) -> CaseTag {
    let p = f.residual_char_p();
    match dom {
        DomainSpec::ClosedDisk { .. } if p => CaseTag::CharPDisk,
        DomainSpec::ClosedDisk { .. } => CaseTag::CharZeroDisk,
        DomainSpec::Affinoid { .. } if p => CaseTag::CharPAffinoid,
        DomainSpec::Affinoid { .. } => CaseTag::CharZeroAffinoid,
        DomainSpec::DisjointUnion { .. } if p => CaseTag::CharPUnion,
        DomainSpec::DisjointUnion { .. } => CaseTag::CharZeroUnion,
        DomainSpec::Point { point } => match (p, matches!(point, BerkPoint::Type4 { .. })) {
            (true, false) => CaseTag::CharPPoint23,
            (true, true) => CaseTag::CharPPoint4,
            (false, false) => CaseTag::CharZeroPoint23,
            (false, true) => CaseTag::CharZeroPoint4,
        },
    }
}

/// `D⁺(0, R)` or the closure of `D⁻(0, R)` for `R = ω / r`, as an exponent `ω_e - ρ`.
fn at_origin(f: &FieldSpec, rho: &Exponent, closed: bool) -> Disk {
    let e = &f.omega_exponent() - rho;
    if closed {
        Disk::closed(Scalar::zero(), e)
    } else {
        Disk::closure_open(Scalar::zero(), e)
    }
}

/// Spectrum of `d/dS` on `O(X)` or `H(x)`.
pub fn derivation_spectrum(dom: &DomainSpec, f: &FieldSpec) -> Result<Spectrum> {
    dom.validate(f)?;
    Spectrum::normalize(f, derivation_disks(dom, f))
}

fn derivation_disks(dom: &DomainSpec, f: &FieldSpec) -> Vec<Disk> {
    let rho_min_radius = |d: &DomainSpec| d.min_radius().expect("connected affinoid").into_exponent();
    match (case_tag(dom, f), dom) {
        (CaseTag::CharPDisk | CaseTag::CharPAffinoid | CaseTag::CharZeroAffinoid, d) => {
            vec![at_origin(f, &rho_min_radius(d), true)]
        }
        (CaseTag::CharZeroDisk, d) => vec![at_origin(f, &rho_min_radius(d), false)],
        (CaseTag::CharPPoint23 | CaseTag::CharPPoint4 | CaseTag::CharZeroPoint23, DomainSpec::Point { point }) => {
            vec![at_origin(f, &point.radius_exp(), true)]
        }
        (CaseTag::CharZeroPoint4, DomainSpec::Point { point }) => vec![at_origin(f, &point.radius_exp(), false)],
        (_, DomainSpec::DisjointUnion { parts }) => parts.iter().flat_map(|p| derivation_disks(p, f)).collect(),
        (tag, d) => unreachable!("case {tag} does not fit domain {}", d.kind_name()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::berkline::DiskKind;
    use crate::diffmod::DiskParams;

    fn e(x: &str) -> Exponent {
        x.parse().unwrap()
    }

    fn only(s: &Spectrum) -> &Disk {
        assert_eq!(s.disks().len(), 1);
        &s.disks()[0]
    }

    #[test]
    fn table_examples() {
        let f2 = FieldSpec::p_adic(2).unwrap();
        let s = derivation_spectrum(&DomainSpec::closed_disk(Scalar::zero(), e("0")), &f2).unwrap();
        assert_eq!(only(&s), &Disk::closed(Scalar::zero(), e("1")));
        let s = derivation_spectrum(&DomainSpec::annulus(e("0"), e("0")), &f2).unwrap();
        assert_eq!(only(&s), &Disk::closed(Scalar::zero(), e("1")));

        let z = FieldSpec::equal_char_zero();
        let s = derivation_spectrum(&DomainSpec::closed_disk(Scalar::zero(), e("0")), &z).unwrap();
        assert_eq!(only(&s), &Disk::closure_open(Scalar::zero(), e("0")));

        let t = FieldSpec::trivial();
        let s = derivation_spectrum(&DomainSpec::closed_disk(Scalar::zero(), e("0")), &t).unwrap();
        assert_eq!(only(&s).kind(), DiskKind::ClosureOpen);
    }

    #[test]
    fn affinoid_uses_smallest_radius() {
        let f3 = FieldSpec::p_adic(3).unwrap();
        let dom = DomainSpec::affinoid(
            DiskParams::new(Scalar::zero(), e("-1")),
            vec![DiskParams::new(Scalar::zero(), e("1")), DiskParams::new(Scalar::one(), e("2"))],
        );
        let s = derivation_spectrum(&dom, &f3).unwrap();
        assert_eq!(only(&s), &Disk::closed(Scalar::zero(), e("1/2") - e("2")));
    }

    #[test]
    fn points() {
        let z = FieldSpec::equal_char_zero();
        let x3 = BerkPoint::shilov(Scalar::zero(), e("sqrt2"));
        let s = derivation_spectrum(&DomainSpec::point(x3), &z).unwrap();
        assert_eq!(only(&s), &Disk::closed(Scalar::zero(), -e("sqrt2")));
        let x4 = BerkPoint::type4(e("3"), vec![(Scalar::zero(), e("1")), (Scalar::t_pow(1), e("2"))]);
        let s = derivation_spectrum(&DomainSpec::point(x4.clone()), &z).unwrap();
        assert_eq!(only(&s), &Disk::closure_open(Scalar::zero(), e("-3")));
        let f2 = FieldSpec::p_adic(2).unwrap();
        let x4 = BerkPoint::type4(e("3"), vec![(Scalar::zero(), e("1")), (Scalar::from_int(2), e("2"))]);
        let s = derivation_spectrum(&DomainSpec::point(x4), &f2).unwrap();
        assert_eq!(only(&s), &Disk::closed(Scalar::zero(), e("-2")));
    }

    #[test]
    fn union_follows_larger_norm() {
        let z = FieldSpec::equal_char_zero();
        // annulus part has the larger norm: the closed disk wins
        let u = DomainSpec::DisjointUnion {
            parts: vec![DomainSpec::annulus(e("3"), e("2")), DomainSpec::closed_disk(Scalar::one(), e("1"))],
        };
        let s = derivation_spectrum(&u, &z).unwrap();
        assert_eq!(only(&s), &Disk::closed(Scalar::zero(), e("-3")));
        // disk part has the larger norm: closure of the open disk
        let u = DomainSpec::DisjointUnion {
            parts: vec![DomainSpec::annulus(e("3"), e("2")), DomainSpec::closed_disk(Scalar::one(), e("4"))],
        };
        let s = derivation_spectrum(&u, &z).unwrap();
        assert_eq!(only(&s), &Disk::closure_open(Scalar::zero(), e("-4")));
        // tie: the closed disk absorbs the closure
        let u = DomainSpec::DisjointUnion {
            parts: vec![DomainSpec::annulus(e("3"), e("2")), DomainSpec::closed_disk(Scalar::one(), e("3"))],
        };
        let s = derivation_spectrum(&u, &z).unwrap();
        assert_eq!(only(&s), &Disk::closed(Scalar::zero(), e("-3")));
    }

    #[test]
    fn invalid_domain_rejected() {
        let f2 = FieldSpec::p_adic(2).unwrap();
        let bad = DomainSpec::affinoid(DiskParams::new(Scalar::zero(), e("1")), vec![DiskParams::new(Scalar::one(), e("3"))]);
        assert!(derivation_spectrum(&bad, &f2).is_err());
    }
}
