use num_rational::BigRational;
use serde::Serialize;

use super::segment::{spectrum_at, SegmentSpec};
use crate::berkline::{Neighborhood, Region, Separation, Spectrum};
use crate::diffmod::DiffModuleSpec;
use crate::error::{Error, Result};
use crate::valcore::{Exponent, FieldSpec, Scalar};

const BISECTIONS: usize = 40;
const PROBES: i64 = 8;

/// Neighborhoods of `Σ` built from a margin `ε`: `U` enlarges every disk
/// `D(c, R)` to `D⁻(c, R·base^ε)`, and the parts are
/// 1. the enlarged disks themselves,
/// 2. thin annuli `R·base^{-ε} < |T - c| < R·base^ε` around each boundary,
/// 3. open residue disks `D⁻(b, R)`, `|b - c| = R`, on each closed boundary
///    whose radius lies in the value group.
pub fn margin_neighborhoods(s: &Spectrum, eps: &Exponent) -> Vec<Neighborhood> {
    let f = s.field();
    let outer: Vec<Region> = s
        .disks()
        .iter()
        .map(|d| Region::open_disk(d.center().clone(), d.radius_exp() - eps))
        .collect();
    let enlarged = outer.iter().map(|r| vec![r.clone()]).collect();
    let annuli = s
        .disks()
        .iter()
        .map(|d| {
            vec![Region::open_annulus(
                d.center().clone(),
                d.radius_exp() + eps,
                d.radius_exp() - eps,
            )]
        })
        .collect();
    let mut out = vec![Neighborhood::new(outer.clone(), enlarged), Neighborhood::new(outer.clone(), annuli)];
    let boundary: Vec<Vec<Region>> = s
        .disks()
        .iter()
        .filter(|d| d.is_closed())
        .filter_map(|d| {
            let u = f.realize(d.radius_exp()).ok()?;
            Some(vec![Region::open_disk(d.center() + &u, d.radius_exp().clone())])
        })
        .collect();
    if !boundary.is_empty() {
        out.push(Neighborhood::new(outer, boundary));
    }
    out
}

fn require_member(n: &Neighborhood, s: &Spectrum, f: &FieldSpec) -> Result<()> {
    n.validate(f)?;
    if !n.contains(s) {
        return Err(Error::Precondition("the neighborhood does not contain the spectrum at y".into()));
    }
    Ok(())
}

/// Largest `δ` found by bisection on `(0, width]` such that every probe
/// offset for `δ` lands in `n`; `None` when no `δ > 0` survives.
fn bisect(width: &Exponent, holds: impl Fn(&Exponent) -> Result<bool>) -> Result<Option<Exponent>> {
    if holds(width)? {
        return Ok(Some(width.clone()));
    }
    let mut lo = Exponent::zero();
    let mut hi = width.clone();
    for _ in 0..BISECTIONS {
        let mid = lo.midpoint(&hi);
        if holds(&mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(if lo.is_zero() { None } else { Some(lo) })
}

fn probe_offsets(delta: &Exponent) -> impl Iterator<Item = Exponent> + '_ {
    (1..=PROBES).map(move |k| delta.scale(&BigRational::new(k.into(), PROBES.into())))
}

/// Threshold `δ` with `Σ_{y'} ∈ n` for every sampled `y'` at parameter
/// `ρ' ∈ (ρ, ρ + δ]`, i.e. approaching `y` from the side of the smaller
/// points. Requires `Σ_y ∈ n`.
pub fn left_continuity_threshold(
    m: &DiffModuleSpec,
    seg: &SegmentSpec,
    rho: &Exponent,
    n: &Neighborhood,
    f: &FieldSpec,
) -> Result<Option<Exponent>> {
    seg.validate(f)?;
    if !seg.contains(rho) {
        return Err(Error::Precondition("y is not on the segment".into()));
    }
    require_member(n, &spectrum_at(m, seg, rho, f)?, f)?;
    let width = &seg.rho_high - rho;
    if width.is_zero() {
        // no approach side: the condition holds vacuously over the whole interval
        return Ok(Some(width));
    }
    bisect(&width, |delta| {
        let top = rho + delta;
        let grid = seg.grid.iter().filter(|g| *g > rho && **g <= top).cloned();
        for r in probe_offsets(delta).map(|d| rho + &d).chain(grid) {
            if !n.contains(&spectrum_at(m, seg, &r, f)?) {
                return Ok(false);
            }
        }
        Ok(true)
    })
}

/// Like [`left_continuity_threshold`] but probing both sides of `y`.
pub fn two_sided_threshold(
    m: &DiffModuleSpec,
    seg: &SegmentSpec,
    rho: &Exponent,
    n: &Neighborhood,
    f: &FieldSpec,
) -> Result<Option<Exponent>> {
    seg.validate(f)?;
    if !seg.contains(rho) {
        return Err(Error::Precondition("y is not on the segment".into()));
    }
    require_member(n, &spectrum_at(m, seg, rho, f)?, f)?;
    let width = (&seg.rho_high - rho).min(rho - &seg.rho_low);
    if width.is_zero() {
        return Ok(Some(width));
    }
    bisect(&width, |delta| {
        for d in probe_offsets(delta) {
            for r in [rho + &d, rho - &d] {
                if !n.contains(&spectrum_at(m, seg, &r, f)?) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessSample {
    pub rho: Exponent,
    /// Exponent of the distance from `b` to `Σ_{y'}`.
    pub separation_exp: Exponent,
    pub member: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiscontinuityWitness {
    pub b: Scalar,
    pub boundary_exp: Exponent,
    pub neighborhood: Neighborhood,
    pub in_spectrum_at_y: bool,
    pub samples: Vec<WitnessSample>,
    /// `b ∈ Σ_y`, the separation is constant along the samples and no sample lies in the neighborhood.
    pub holds: bool,
}

/// Exhibits the failure of continuity at a type (2) point approached from
/// the larger points: a boundary point `b` of `Σ_y` stays at distance `R`
/// from every `Σ_{y'}`, so the neighborhood asking to meet `D⁻(b, R)`
/// contains `Σ_y` and none of them.
pub fn discontinuity_witness(
    m: &DiffModuleSpec,
    seg: &SegmentSpec,
    rho: &Exponent,
    samples: usize,
    f: &FieldSpec,
) -> Result<DiscontinuityWitness> {
    seg.validate(f)?;
    if !seg.contains(rho) {
        return Err(Error::Precondition("y is not on the segment".into()));
    }
    if seg.point(rho).point_type(f) != 2 {
        return Err(Error::Precondition("witness requires type (2)".into()));
    }
    let width = rho - &seg.rho_low;
    if !(width > Exponent::zero()) || samples == 0 {
        return Err(Error::Precondition("no room above y on the segment".into()));
    }
    let sigma = spectrum_at(m, seg, rho, f)?;
    let boundary_exp = &f.omega_exponent() - rho;
    let step = f
        .realize(&boundary_exp)
        .map_err(|_| Error::Unsupported(format!("radius exponent {boundary_exp} is not realized by a scalar")))?;
    let units = match f.prime() {
        Some(p) => 1..p as i64,
        None => 1..9,
    };
    let eigen = m.eigenvalues();
    let b = eigen
        .iter()
        .flat_map(|a| {
            let step = &step;
            units.clone().map(move |u| a + &step.scale(&BigRational::from_integer(u.into())))
        })
        .find(|b| eigen.iter().all(|a| f.val(&(b - a)) <= boundary_exp))
        .ok_or_else(|| Error::Unsupported("every boundary residue class meets another eigenvalue".into()))?;

    let widen = BigRational::new(1.into(), 2.into());
    let outer: Vec<Region> = sigma
        .disks()
        .iter()
        .map(|d| Region::open_disk(d.center().clone(), &boundary_exp - &Exponent::rational(widen.clone())))
        .collect();
    let mut parts = vec![vec![Region::open_disk(b.clone(), boundary_exp.clone())]];
    parts.extend(outer.iter().map(|r| vec![r.clone()]));
    let neighborhood = Neighborhood::new(outer, parts);
    neighborhood.validate(f)?;

    let in_spectrum_at_y = sigma.contains_rigid(&b) && neighborhood.contains(&sigma);
    let mut out = Vec::with_capacity(samples);
    for k in 0..samples {
        let shrink = BigRational::new(1.into(), num_bigint::BigInt::from(2).pow(k as u32));
        let r = rho - &width.scale(&shrink);
        let s = spectrum_at(m, seg, &r, f)?;
        let separation_exp = match s.separation(&b) {
            Separation::Contained => Exponent::Infinite,
            Separation::Distance(e) => e,
        };
        out.push(WitnessSample {
            member: neighborhood.contains(&s),
            rho: r,
            separation_exp,
        });
    }
    let holds =
        in_spectrum_at_y && out.iter().all(|s| !s.member && s.separation_exp == boundary_exp);
    Ok(DiscontinuityWitness {
        b,
        boundary_exp,
        neighborhood,
        in_spectrum_at_y,
        samples: out,
        holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diffmod::Matrix;

    fn e(x: &str) -> Exponent {
        x.parse().unwrap()
    }

    fn diag(vals: &[i64], f: &FieldSpec) -> DiffModuleSpec {
        let n = vals.len();
        let rows: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| if i == j { vals[i] } else { 0 }).collect())
            .collect();
        let refs: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
        DiffModuleSpec::from_matrix(Matrix::from_ints(&refs).unwrap(), f).unwrap()
    }

    fn seg() -> SegmentSpec {
        SegmentSpec::uniform(Scalar::zero(), e("4"), e("-1"), 11)
    }

    #[test]
    fn threshold_tracks_the_margin() {
        let f = FieldSpec::p_adic(2).unwrap();
        let m = diag(&[0], &f);
        let rho = e("1");
        let sigma = spectrum_at(&m, &seg(), &rho, &f).unwrap();
        for eps in ["1/4", "1/2", "1"] {
            let eps = e(eps);
            for n in margin_neighborhoods(&sigma, &eps) {
                let t = left_continuity_threshold(&m, &seg(), &rho, &n, &f).unwrap().unwrap();
                assert!(t <= eps && (&eps - &t).to_f64() < 1e-9, "{t} vs {eps}");
            }
        }
    }

    #[test]
    fn boundary_part_breaks_from_above() {
        let f = FieldSpec::p_adic(3).unwrap();
        let m = diag(&[0, 1], &f);
        let rho = e("1");
        let sigma = spectrum_at(&m, &seg(), &rho, &f).unwrap();
        let ns = margin_neighborhoods(&sigma, &e("1/2"));
        assert_eq!(ns.len(), 3);
        assert!(two_sided_threshold(&m, &seg(), &rho, &ns[2], &f).unwrap().is_none());
        assert!(two_sided_threshold(&m, &seg(), &rho, &ns[1], &f).unwrap().is_some());
    }

    #[test]
    fn type_three_is_two_sided() {
        let f = FieldSpec::p_adic(2).unwrap();
        let m = diag(&[0, 1], &f);
        let rho = e("sqrt2");
        let sigma = spectrum_at(&m, &seg(), &rho, &f).unwrap();
        for n in margin_neighborhoods(&sigma, &e("1/4")) {
            let t = two_sided_threshold(&m, &seg(), &rho, &n, &f).unwrap().unwrap();
            assert!((&e("1/4") - &t).to_f64() < 1e-9);
        }
    }

    #[test]
    fn rejects_outside_neighborhoods() {
        let f = FieldSpec::p_adic(2).unwrap();
        let m = diag(&[0], &f);
        let small = Neighborhood::new(vec![Region::open_disk(Scalar::zero(), e("5"))], vec![]);
        assert!(matches!(
            left_continuity_threshold(&m, &seg(), &e("1"), &small, &f),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn witness_at_type_two() {
        let f = FieldSpec::p_adic(3).unwrap();
        let m = diag(&[0, 1], &f);
        let w = discontinuity_witness(&m, &seg(), &e("1"), 10, &f).unwrap();
        assert!(w.holds, "{w:?}");
        assert_eq!(w.samples.len(), 10);
        let err = discontinuity_witness(&m, &seg(), &e("sqrt2"), 10, &f).unwrap_err();
        assert_eq!(err, Error::Precondition("witness requires type (2)".into()));
    }

    #[test]
    fn witness_examples() {
        let f = FieldSpec::p_adic(2).unwrap();
        let m = diag(&[0], &f);
        let w = discontinuity_witness(&m, &seg(), &e("1"), 10, &f).unwrap();
        assert_eq!(w.b, Scalar::one());
        assert_eq!(w.boundary_exp, e("0"));
        assert!(w.samples.iter().all(|s| s.separation_exp == e("0") && !s.member));
        let w = discontinuity_witness(&m, &seg(), &e("2"), 10, &f).unwrap();
        assert_eq!(w.b, "1/2".parse().unwrap());
        assert!(w.holds);
    }

    #[test]
    fn single_point_interval() {
        let f = FieldSpec::p_adic(2).unwrap();
        let m = diag(&[0], &f);
        let seg = SegmentSpec::new(Scalar::zero(), e("1"), e("1"), vec![e("1")]);
        let sigma = spectrum_at(&m, &seg, &e("1"), &f).unwrap();
        let n = &margin_neighborhoods(&sigma, &e("1"))[0];
        assert_eq!(left_continuity_threshold(&m, &seg, &e("1"), n, &f).unwrap(), Some(e("0")));
    }

    #[test]
    fn witness_in_equal_characteristic_zero() {
        let f = FieldSpec::equal_char_zero();
        let m = diag(&[0, 1], &f);
        let w = discontinuity_witness(&m, &seg(), &e("1/2"), 10, &f).unwrap();
        assert!(w.holds, "{w:?}");
    }
}
