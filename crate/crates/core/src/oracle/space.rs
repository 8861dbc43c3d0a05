use std::collections::BTreeMap;

use crate::berkline::BerkPoint;
use crate::diffmod::DomainSpec;
use crate::error::{Error, Result};
use crate::valcore::{Exponent, FieldSpec, Scalar};

/// One Mittag-Leffler summand: a disk part in powers of `S - c`, or the
/// principal part at a hole in negative powers of `S - c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Summand {
    /// `(S - c)^i`, `0 ≤ i ≤ degree`, `|(S - c)^i| = r^i`.
    Disk { center: Scalar, rho: Exponent, degree: usize },
    /// `(S - c)^{-j}`, `1 ≤ j ≤ depth`, `|(S - c)^{-j}| = r^{-j}`.
    Principal { center: Scalar, rho: Exponent, depth: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisVector {
    pub summand: usize,
    pub power: i64,
    /// Exponent of the norm of the monomial.
    pub weight: Exponent,
}

/// Finite piece of `O(X)` spanned by monomials, normed by the exact weighted
/// max-norm (the Mittag-Leffler decomposition is isometric).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSpace {
    summands: Vec<Summand>,
    basis: Vec<BasisVector>,
    index: BTreeMap<(usize, i64), usize>,
}

impl TruncatedSpace {
    pub fn new(summands: Vec<Summand>) -> Self {
        let mut basis = Vec::new();
        for (s, m) in summands.iter().enumerate() {
            let (rho, powers): (&Exponent, Vec<i64>) = match m {
                Summand::Disk { rho, degree, .. } => (rho, (0..=*degree as i64).collect()),
                Summand::Principal { rho, depth, .. } => (rho, (1..=*depth as i64).map(|j| -j).collect()),
            };
            for i in powers {
                basis.push(BasisVector {
                    summand: s,
                    power: i,
                    weight: rho.scale_int(i),
                });
            }
        }
        let index = basis.iter().enumerate().map(|(k, b)| ((b.summand, b.power), k)).collect();
        TruncatedSpace { summands, basis, index }
    }

    pub fn disk(center: Scalar, rho: Exponent, degree: usize) -> Self {
        Self::new(vec![Summand::Disk { center, rho, degree }])
    }

    /// `r1 ≤ |S - c| ≤ r0` with Laurent band `-band..=band`.
    pub fn annulus(center: Scalar, rho_outer: Exponent, rho_inner: Exponent, band: usize) -> Self {
        Self::new(vec![
            Summand::Disk {
                center: center.clone(),
                rho: rho_outer,
                degree: band,
            },
            Summand::Principal {
                center,
                rho: rho_inner,
                depth: band,
            },
        ])
    }

    /// Model of `O(X)` or of `H(x)` on polynomials, truncated at `n`.
    pub fn for_domain(dom: &DomainSpec, f: &FieldSpec, n: usize) -> Result<Self> {
        dom.validate(f)?;
        Ok(Self::new(summands_of(dom, n)))
    }

    pub fn summands(&self) -> &[Summand] {
        &self.summands
    }

    pub fn basis(&self) -> &[BasisVector] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn position(&self, summand: usize, power: i64) -> Option<usize> {
        self.index.get(&(summand, power)).copied()
    }

    /// `min_k v(x_k) + weight_k`.
    pub fn norm_exp(&self, f: &FieldSpec, x: &[Scalar]) -> Exponent {
        x.iter()
            .zip(&self.basis)
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, b)| &f.val(c) + &b.weight)
            .min()
            .unwrap_or(Exponent::Infinite)
    }
}

fn summands_of(dom: &DomainSpec, n: usize) -> Vec<Summand> {
    let disk = |center: &Scalar, rho: &Exponent| Summand::Disk {
        center: center.clone(),
        rho: rho.clone(),
        degree: n,
    };
    match dom {
        DomainSpec::ClosedDisk { center, radius_exp } => vec![disk(center, radius_exp)],
        DomainSpec::Affinoid { outer, holes } => std::iter::once(disk(&outer.center, &outer.radius_exp))
            .chain(holes.iter().map(|h| Summand::Principal {
                center: h.center.clone(),
                rho: h.radius_exp.clone(),
                depth: n,
            }))
            .collect(),
        DomainSpec::DisjointUnion { parts } => parts.iter().flat_map(|p| summands_of(p, n)).collect(),
        DomainSpec::Point { point } => match point {
            BerkPoint::Shilov { center, radius_exp } => vec![disk(center, radius_exp)],
            BerkPoint::Type4 { radius_exp, family } => {
                vec![disk(&family.last().expect("validated family").center, radius_exp)]
            }
            BerkPoint::Rigid { .. } => unreachable!("rejected by validation"),
        },
    }
}

/// Exact operator on a truncated space, stored by columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedOperator {
    space: TruncatedSpace,
    cols: Vec<BTreeMap<usize, Scalar>>,
    /// Number of images that left the band and were dropped.
    pub dropped: usize,
}

impl TruncatedOperator {
    pub fn identity(space: &TruncatedSpace) -> Self {
        let cols = (0..space.dim()).map(|k| BTreeMap::from([(k, Scalar::one())])).collect();
        TruncatedOperator {
            space: space.clone(),
            cols,
            dropped: 0,
        }
    }

    /// `d/dS` on every summand; images below the principal-part band are dropped.
    pub fn derivation(space: &TruncatedSpace) -> Self {
        let mut dropped = 0;
        let cols = space
            .basis()
            .iter()
            .map(|b| {
                let mut col = BTreeMap::new();
                if b.power != 0 {
                    match space.position(b.summand, b.power - 1) {
                        Some(k) => {
                            col.insert(k, Scalar::from_int(b.power));
                        }
                        None => dropped += 1,
                    }
                }
                col
            })
            .collect();
        TruncatedOperator {
            space: space.clone(),
            cols,
            dropped,
        }
    }

    pub fn space(&self) -> &TruncatedSpace {
        &self.space
    }

    pub fn column(&self, j: usize) -> &BTreeMap<usize, Scalar> {
        &self.cols[j]
    }

    pub fn apply(&self, x: &BTreeMap<usize, Scalar>) -> BTreeMap<usize, Scalar> {
        let mut out: BTreeMap<usize, Scalar> = BTreeMap::new();
        for (j, xj) in x {
            for (i, a) in &self.cols[*j] {
                let e = out.entry(*i).or_insert_with(Scalar::zero);
                *e = &*e + &(a * xj);
            }
        }
        out.retain(|_, v| !v.is_zero());
        out
    }

    /// `self ∘ other`
    pub fn compose(&self, other: &TruncatedOperator) -> TruncatedOperator {
        TruncatedOperator {
            space: self.space.clone(),
            cols: other.cols.iter().map(|c| self.apply(c)).collect(),
            dropped: self.dropped + other.dropped,
        }
    }

    pub fn pow(&self, mut n: u64) -> TruncatedOperator {
        let mut acc = TruncatedOperator::identity(&self.space);
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.compose(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.compose(&base);
            }
        }
        acc
    }

    /// `min over nonzero entries (i, j) of v(m_ij) + w_i - w_j`.
    pub fn norm_exp(&self, f: &FieldSpec) -> Exponent {
        let w = |k: usize| &self.space.basis()[k].weight;
        self.cols
            .iter()
            .enumerate()
            .flat_map(|(j, col)| col.iter().map(move |(i, a)| (i, j, a)))
            .map(|(i, j, a)| &(&f.val(a) + w(*i)) - w(j))
            .min()
            .unwrap_or(Exponent::Infinite)
    }
}

/// Checks a truncation size against the order of the operator power.
pub(crate) fn require_band(space: &TruncatedSpace, n: u64) -> Result<()> {
    for s in space.summands() {
        let (need, have, what) = match s {
            Summand::Disk { degree, .. } => (n, *degree as u64, "degree bound"),
            // the extremal column (S - c)^{-1} ↦ (S - c)^{-1-n} must stay in the band
            Summand::Principal { depth, .. } => (n + 1, *depth as u64, "principal-part band"),
        };
        if have < need {
            return Err(Error::DegenerateTruncation(format!("{what} {have} is below {need} for power {n}")));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(x: &str) -> Exponent {
        x.parse().unwrap()
    }

    #[test]
    fn element_norms_are_weighted_max() {
        let f = FieldSpec::p_adic(2).unwrap();
        let sp = TruncatedSpace::annulus(Scalar::zero(), e("-1"), e("2"), 3);
        assert_eq!(sp.dim(), 7);
        let mut x = vec![Scalar::zero(); sp.dim()];
        // 4·S^2 + S^{-1}
        x[sp.position(0, 2).unwrap()] = Scalar::from_int(4);
        x[sp.position(1, -1).unwrap()] = Scalar::one();
        // min(2 + 2·(-1), 0 + (-1)·2)
        assert_eq!(sp.norm_exp(&f, &x), e("-2"));
    }

    #[test]
    fn derivation_drops_band_overflow() {
        let sp = TruncatedSpace::annulus(Scalar::zero(), e("0"), e("0"), 4);
        let d = TruncatedOperator::derivation(&sp);
        assert_eq!(d.dropped, 1);
        let k = sp.position(1, -2).unwrap();
        let col = d.column(k);
        assert_eq!(col.get(&sp.position(1, -3).unwrap()), Some(&Scalar::from_int(-2)));
    }

    #[test]
    fn powers_compose() {
        let f = FieldSpec::p_adic(3).unwrap();
        let sp = TruncatedSpace::disk(Scalar::zero(), e("0"), 10);
        let d = TruncatedOperator::derivation(&sp);
        assert_eq!(d.pow(3), d.compose(&d).compose(&d));
        // d^3 (S^5) = 60 S^2
        assert_eq!(d.pow(3).column(5).get(&2), Some(&Scalar::from_int(60)));
        assert_eq!(d.pow(3).norm_exp(&f), e("1"));
        assert_eq!(d.pow(11).norm_exp(&f), Exponent::Infinite);
    }
}
