use serde::{Deserialize, Serialize};

use crate::berkline::{BerkPoint, Spectrum};
use crate::diffmod::{DiffModuleSpec, DomainSpec};
use crate::error::{Error, Result};
use crate::specengine::module_spectrum;
use crate::valcore::{Exponent, FieldSpec, Scalar};

/// The segment `[x, x_{c, r0}]` of Shilov points `x_{c, base^{-ρ}}`,
/// `ρ_low ≤ ρ ≤ ρ_high`, sampled at `grid`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SegmentSpec {
    pub center: Scalar,
    pub rho_high: Exponent,
    pub rho_low: Exponent,
    pub grid: Vec<Exponent>,
}

impl SegmentSpec {
    pub fn new(center: Scalar, rho_high: Exponent, rho_low: Exponent, grid: Vec<Exponent>) -> Self {
        SegmentSpec {
            center,
            rho_high,
            rho_low,
            grid,
        }
    }

    /// Evenly spaced grid of `n ≥ 2` points over the whole interval.
    pub fn uniform(center: Scalar, rho_high: Exponent, rho_low: Exponent, n: usize) -> Self {
        let width = &rho_high - &rho_low;
        let grid = (0..n)
            .map(|k| &rho_low + &width.scale(&num_rational::BigRational::new((k as i64).into(), (n as i64 - 1).max(1).into())))
            .collect();
        Self::new(center, rho_high, rho_low, grid)
    }

    pub fn validate(&self, f: &FieldSpec) -> Result<()> {
        f.check_scalar(&self.center)?;
        if self.rho_high.is_infinite() || self.rho_low.is_infinite() {
            return Err(Error::InvalidDomain("segment ends must have positive radius".into()));
        }
        if self.rho_high < self.rho_low {
            return Err(Error::InvalidDomain("rho_high must be at least rho_low".into()));
        }
        if self.grid.is_empty() {
            return Err(Error::InvalidDomain("empty grid".into()));
        }
        if self.grid.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidDomain("grid must be strictly increasing".into()));
        }
        if self.grid.iter().any(|g| *g > self.rho_high || *g < self.rho_low) {
            return Err(Error::InvalidDomain("grid leaves the segment".into()));
        }
        Ok(())
    }

    pub fn contains(&self, rho: &Exponent) -> bool {
        *rho <= self.rho_high && *rho >= self.rho_low
    }

    pub fn point(&self, rho: &Exponent) -> BerkPoint {
        BerkPoint::shilov(self.center.clone(), rho.clone())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Sample {
    pub rho: Exponent,
    #[serde(rename = "type")]
    pub point_type: u8,
    #[serde(serialize_with = "ser_spectrum")]
    pub spectrum: Spectrum,
    pub flags: Vec<&'static str>,
}

fn ser_spectrum<S: serde::Serializer>(sp: &Spectrum, s: S) -> std::result::Result<S::Ok, S::Error> {
    sp.disks().serialize(s)
}

/// `Σ_{∇_y}` over `H(y)` for `y = x_{c, base^{-ρ}}`.
pub fn spectrum_at(m: &DiffModuleSpec, seg: &SegmentSpec, rho: &Exponent, f: &FieldSpec) -> Result<Spectrum> {
    let report = module_spectrum(m, &DomainSpec::point(seg.point(rho)), f)?;
    if report.valuation_only() {
        return Err(Error::ValuationOnly("eigenvalues are not all resolved".into()));
    }
    Ok(report.spectrum.expect("exact report"))
}

pub fn sample_segment(m: &DiffModuleSpec, seg: &SegmentSpec, f: &FieldSpec) -> Result<Vec<Sample>> {
    seg.validate(f)?;
    if !m.analysis().is_complete() {
        return Err(Error::ValuationOnly("eigenvalues are not all resolved".into()));
    }
    seg.grid
        .iter()
        .map(|rho| {
            let report = module_spectrum(m, &DomainSpec::point(seg.point(rho)), f)?;
            let flags = report.flags();
            Ok(Sample {
                rho: rho.clone(),
                point_type: seg.point(rho).point_type(f),
                spectrum: report.spectrum.expect("complete analysis"),
                flags,
            })
        })
        .collect()
}
