use num_rational::BigRational;
use serde::Serialize;

use super::space::{require_band, TruncatedOperator, TruncatedSpace};
use crate::diffmod::DomainSpec;
use crate::error::{Error, Result};
use crate::valcore::{Exponent, FieldSpec, Radius};

/// Exact norm exponent of `(d/dS)^n` on the truncation of `O(X)` (or `H(x)`)
/// at degree / band `trunc`.
pub fn truncated_power_norm(n: u64, dom: &DomainSpec, f: &FieldSpec, trunc: usize) -> Result<Exponent> {
    let space = TruncatedSpace::for_domain(dom, f, trunc)?;
    require_band(&space, n)?;
    Ok(TruncatedOperator::derivation(&space).pow(n).norm_exp(f))
}

/// `-log ‖d‖_sp` predicted by the closed form: `ω / min r_i`.
pub fn spectral_norm_limit(dom: &DomainSpec, f: &FieldSpec) -> Result<Exponent> {
    let rho = match dom {
        DomainSpec::Point { point } => point.radius_exp(),
        DomainSpec::DisjointUnion { parts } => parts
            .iter()
            .map(|p| p.min_radius().expect("validated part").into_exponent())
            .max()
            .ok_or_else(|| Error::InvalidDomain("empty union".into()))?,
        d => d.min_radius().expect("connected affinoid").into_exponent(),
    };
    Ok(&f.omega_exponent() - &rho)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpectralEstimate {
    pub ns: Vec<u64>,
    /// `-log ‖d^n‖^{1/n}` at each `n`.
    pub exponents: Vec<Exponent>,
    pub limit: Exponent,
    /// `limit - exponents.last()`, i.e. `log(‖d^n‖^{1/n} / ‖d‖_sp)`.
    pub gap: Exponent,
    /// `‖d^n‖^{1/n}` never increases along the sampled powers and never drops below `‖d‖_sp`.
    pub monotone: bool,
}

/// `‖d^n‖^{1/n}` at `n = q, q², …, q^K` with `q = p` (or 2 without a residue prime).
pub fn spectral_norm_estimate(dom: &DomainSpec, f: &FieldSpec, k: u32) -> Result<SpectralEstimate> {
    if k == 0 {
        return Err(Error::Precondition("need at least one step".into()));
    }
    let q = f.prime().unwrap_or(2);
    let limit = spectral_norm_limit(dom, f)?;
    let ns: Vec<u64> = (1..=k).map(|i| q.pow(i)).collect();
    let mut exponents = Vec::new();
    for &n in &ns {
        let e = truncated_power_norm(n, dom, f, n as usize + 1)?;
        exponents.push(e.scale(&BigRational::new(1.into(), n.into())));
    }
    let radii: Vec<Radius> = exponents.iter().cloned().map(Radius::from_exponent).collect();
    let floor = Radius::from_exponent(limit.clone());
    let monotone = radii.windows(2).all(|w| w[1] <= w[0]) && radii.iter().all(|r| *r >= floor);
    let gap = &limit - exponents.last().expect("k ≥ 1");
    Ok(SpectralEstimate {
        ns,
        exponents,
        limit,
        gap,
        monotone,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::berkline::BerkPoint;
    use crate::valcore::Scalar;

    fn e(x: &str) -> Exponent {
        x.parse().unwrap()
    }

    fn disk(rho: &str) -> DomainSpec {
        DomainSpec::closed_disk(Scalar::zero(), e(rho))
    }

    #[test]
    fn power_norm_examples() {
        let f = FieldSpec::p_adic(2).unwrap();
        assert_eq!(truncated_power_norm(4, &disk("0"), &f, 16).unwrap(), e("3"));
        assert_eq!(truncated_power_norm(1, &DomainSpec::annulus(e("0"), e("0")), &f, 16).unwrap(), e("0"));
        assert_eq!(truncated_power_norm(0, &disk("0"), &f, 4).unwrap(), e("0"));
        assert!(matches!(
            truncated_power_norm(5, &disk("0"), &f, 4),
            Err(Error::DegenerateTruncation(_))
        ));
        assert!(matches!(
            truncated_power_norm(4, &DomainSpec::annulus(e("0"), e("0")), &f, 4),
            Err(Error::DegenerateTruncation(_))
        ));
    }

    #[test]
    fn power_norm_uses_smallest_radius() {
        let f = FieldSpec::p_adic(3).unwrap();
        // r1 = 3^-2 inside r0 = 3: |n!| / r1^n
        let dom = DomainSpec::annulus(e("2"), e("-1"));
        for n in 1..=9u64 {
            let want = &f.factorial_valuation(n) - &e("2").scale_int(n as i64);
            assert_eq!(truncated_power_norm(n, &dom, &f, n as usize + 1).unwrap(), want);
        }
        let x = DomainSpec::point(BerkPoint::shilov(Scalar::one(), e("sqrt2")));
        assert_eq!(truncated_power_norm(3, &x, &f, 3).unwrap(), &e("1") - &e("3*sqrt2"));
    }

    #[test]
    fn spectral_estimates() {
        let f2 = FieldSpec::p_adic(2).unwrap();
        let s = spectral_norm_estimate(&disk("0"), &f2, 5).unwrap();
        assert_eq!(s.exponents.last().unwrap(), &e("31/32"));
        assert_eq!(s.gap, e("1/32"));
        assert!(s.monotone);

        let f3 = FieldSpec::p_adic(3).unwrap();
        let s = spectral_norm_estimate(&disk("0"), &f3, 4).unwrap();
        assert_eq!(s.gap, e("1/162"));

        let z = FieldSpec::equal_char_zero();
        let s = spectral_norm_estimate(&disk("0"), &z, 4).unwrap();
        assert!(s.exponents.iter().all(|x| x.is_zero()));
        assert!(s.gap.is_zero());
    }
}
