use serde::Serialize;
use serde_json::{json, Value};

use super::config::Probe;
use crate::berkline::{BerkPoint, Spectrum};
use crate::diffmod::DomainSpec;
use crate::error::{Error, Result};
use crate::oracle::{
    annulus_resolvent_probe, divergence_witness, kernel_witness, resolvent_radius_probe, spectral_norm_estimate,
    type4_bound_check, ProbeVerdict,
};
use crate::valcore::{Exponent, FieldSpec, Scalar};

/// Terms of the principal-part recurrence in the annulus probe.
pub const ANNULUS_TERMS: usize = 256;
/// Truncation degree of the resolvent probe.
pub const RESOLVENT_DEGREE: usize = 64;
/// Allowed gap between the resolvent radius and the distance to the spectrum.
pub const RESOLVENT_TOLERANCE: f64 = 0.1;
const TYPE4_SAMPLES: usize = 50;
const TYPE4_DEGREE: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ProbeStatus {
    Agree,
    Mismatch,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProbeOutcome {
    pub probe: Probe,
    pub status: ProbeStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    pub checks: Vec<Value>,
}

impl ProbeOutcome {
    fn skipped(probe: Probe, reason: impl Into<String>) -> Self {
        ProbeOutcome {
            probe,
            status: ProbeStatus::Skipped,
            reason: Some(reason.into()),
            checks: Vec::new(),
        }
    }

    fn judged(probe: Probe, checks: Vec<(bool, Value)>) -> Self {
        let ok = checks.iter().all(|(ok, _)| *ok);
        ProbeOutcome {
            probe,
            status: if ok { ProbeStatus::Agree } else { ProbeStatus::Mismatch },
            reason: None,
            checks: checks.into_iter().map(|(_, v)| v).collect(),
        }
    }
}

/// Rigid sample points around the boundary `|a| = base^{-e}` of a disk at the origin.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SamplePoints {
    /// `|a| < base^{-e}`, nearest the boundary first.
    pub interior: Vec<Scalar>,
    /// `|a| = base^{-e}`, when realizable.
    pub boundary: Vec<Scalar>,
    /// `|a| > base^{-e}`, nearest the boundary first.
    pub exterior: Vec<Scalar>,
}

impl SamplePoints {
    pub fn around(f: &FieldSpec, e: &Exponent, n: usize) -> Self {
        let half = |k: i64| Exponent::ratio(k, 2);
        let mut k = (2.0 * e.to_f64()).floor() as i64 - 1;
        while half(k) <= *e {
            k += 1;
        }
        let above = k;
        let mut k = above;
        while half(k) >= *e {
            k -= 1;
        }
        let below = k;
        let realize = |x: Exponent| f.realize(&x).ok();
        SamplePoints {
            interior: (0..n as i64).filter_map(|i| realize(half(above + i))).collect(),
            boundary: realize(e.clone()).into_iter().collect(),
            exterior: (0..n as i64).filter_map(|i| realize(half(below - i))).collect(),
        }
    }

    fn labelled(&self) -> impl Iterator<Item = (&'static str, &Scalar)> {
        let tag = |t: &'static str| move |a| (t, a);
        self.interior
            .iter()
            .map(tag("interior"))
            .chain(self.boundary.iter().map(tag("boundary")))
            .chain(self.exterior.iter().map(tag("exterior")))
    }
}

/// `-log` of the sup of `|S - c|` on a connected domain.
fn hull_exponent(dom: &DomainSpec) -> Option<Exponent> {
    match dom {
        DomainSpec::ClosedDisk { radius_exp, .. } => Some(radius_exp.clone()),
        DomainSpec::Affinoid { outer, .. } => Some(outer.radius_exp.clone()),
        DomainSpec::Point { point } => Some(point.radius_exp()),
        DomainSpec::DisjointUnion { .. } => None,
    }
}

fn norm_levels(f: &FieldSpec) -> u32 {
    match f.prime() {
        Some(2) | None => 5,
        _ => 4,
    }
}

fn divergence_levels(f: &FieldSpec) -> u32 {
    match f.prime() {
        Some(2) => 8,
        Some(3) => 4,
        _ => 3,
    }
}

fn err_text(e: &Error) -> String {
    e.to_string()
}

/// Runs one probe against the closed form `Σ_d` of the domain.
pub fn run_probe(probe: Probe, dom: &DomainSpec, f: &FieldSpec, sigma: &Spectrum, points: usize) -> Result<ProbeOutcome> {
    let boundary = sigma.enclosing_radius_exp();
    let pts = SamplePoints::around(f, &boundary, points);
    match probe {
        Probe::Norm => {
            let est = spectral_norm_estimate(dom, f, norm_levels(f))?;
            let ok = est.monotone;
            Ok(ProbeOutcome::judged(probe, vec![(ok, serde_json::to_value(&est).expect("serializable"))]))
        }
        Probe::Kernel => {
            let Some(rho_hull) = hull_exponent(dom) else {
                return Ok(ProbeOutcome::skipped(probe, "the kernel series needs a connected domain"));
            };
            if pts.interior.is_empty() && pts.exterior.is_empty() {
                return Ok(ProbeOutcome::skipped(probe, "no realizable sample points"));
            }
            // on the full disk of the kernel the series and the spectrum agree exactly
            let strict = boundary == &f.omega_exponent() - &rho_hull;
            let mut checks = Vec::new();
            for (side, a) in pts.labelled() {
                let w = kernel_witness(a, dom, f)?;
                let inside = sigma.contains_rigid(a);
                let ok = !(w && !inside) && !(strict && side == "interior" && !w);
                checks.push((ok, json!({"a": a, "side": side, "kernel": w, "in_spectrum": inside})));
            }
            Ok(ProbeOutcome::judged(probe, checks))
        }
        Probe::Annulus => {
            if !matches!(dom, DomainSpec::Affinoid { .. }) {
                return Ok(ProbeOutcome::skipped(probe, "the annulus probe needs an affinoid with holes"));
            }
            let mut checks = Vec::new();
            for (side, a) in pts.labelled() {
                let p = annulus_resolvent_probe(a, dom, f, ANNULUS_TERMS)?;
                let inside = sigma.contains_rigid(a);
                let ok = (p.verdict == ProbeVerdict::Converges) == !inside;
                checks.push((ok, json!({"a": a, "side": side, "verdict": p.verdict, "in_spectrum": inside})));
            }
            if checks.is_empty() {
                return Ok(ProbeOutcome::skipped(probe, "no realizable sample points"));
            }
            Ok(ProbeOutcome::judged(probe, checks))
        }
        Probe::Resolvent => {
            let supported = matches!(
                dom,
                DomainSpec::ClosedDisk { .. } | DomainSpec::Point { point: BerkPoint::Shilov { .. } }
            );
            if !supported {
                return Ok(ProbeOutcome::skipped(probe, "the resolvent probe runs on disks and type-2/3 points"));
            }
            if pts.exterior.is_empty() {
                return Ok(ProbeOutcome::skipped(probe, "no realizable exterior points"));
            }
            let mut checks = Vec::new();
            for a in &pts.exterior {
                let r = resolvent_radius_probe(a, dom, f, RESOLVENT_DEGREE)?;
                let gap = (&r.radius_exp - &r.separation_exp).to_f64().abs();
                checks.push((
                    gap <= RESOLVENT_TOLERANCE,
                    json!({"a": a, "radius_exp": r.radius_exp, "separation_exp": r.separation_exp, "gap": format!("{gap:.6}")}),
                ));
            }
            Ok(ProbeOutcome::judged(probe, checks))
        }
        Probe::Divergence => {
            if f.prime().is_none() || !f.residual_char_p() {
                return Ok(ProbeOutcome::skipped(probe, "the boundary series is p-adic"));
            }
            let rho = &f.omega_exponent() - &boundary;
            let levels = divergence_levels(f);
            let got = match divergence_witness(f, &rho, levels) {
                Ok(v) => v,
                Err(e @ (Error::Unsupported(_) | Error::InvalidScalar(_) | Error::Precondition(_))) => {
                    return Ok(ProbeOutcome::skipped(probe, err_text(&e)))
                }
                Err(e) => return Err(e),
            };
            let checks = got
                .iter()
                .enumerate()
                .map(|(l, v)| {
                    let want = &rho - &Exponent::ratio(l as i64, 2);
                    (*v == want, json!({"level": l, "exponent": v, "expected": want}))
                })
                .collect();
            Ok(ProbeOutcome::judged(probe, checks))
        }
        Probe::Type4 => {
            let DomainSpec::Point { point: x @ BerkPoint::Type4 { radius_exp, .. } } = dom else {
                return Ok(ProbeOutcome::skipped(probe, "the boundedness check needs a type-4 point"));
            };
            if f.residual_char_p() {
                return Ok(ProbeOutcome::skipped(probe, "the boundedness check needs residual characteristic 0"));
            }
            let Ok(a) = f.realize(&-radius_exp) else {
                return Ok(ProbeOutcome::skipped(probe, "1/r(x) is not realized by a scalar"));
            };
            let rep = type4_bound_check(x, &a, f, TYPE4_DEGREE, TYPE4_SAMPLES, 0)?;
            let ok = rep.holds;
            Ok(ProbeOutcome::judged(probe, vec![(ok, serde_json::to_value(&rep).expect("serializable"))]))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specengine::derivation_spectrum;

    fn e(x: &str) -> Exponent {
        x.parse().unwrap()
    }

    #[test]
    fn sample_points_straddle_the_boundary() {
        let f = FieldSpec::p_adic(2).unwrap();
        let p = SamplePoints::around(&f, &e("1"), 3);
        let vals = |v: &[Scalar]| v.iter().map(|a| f.val(a)).collect::<Vec<_>>();
        assert_eq!(vals(&p.interior), vec![e("3/2"), e("2"), e("5/2")]);
        assert_eq!(vals(&p.boundary), vec![e("1")]);
        assert_eq!(vals(&p.exterior), vec![e("1/2"), e("0"), e("-1/2")]);
        let q = SamplePoints::around(&f, &e("1-sqrt2"), 2);
        assert!(q.boundary.is_empty());
        assert_eq!(vals(&q.interior), vec![e("0"), e("1/2")]);
        assert_eq!(vals(&q.exterior), vec![e("-1/2"), e("-1")]);
    }

    #[test]
    fn probes_agree_on_the_unit_disk() {
        let f = FieldSpec::p_adic(2).unwrap();
        let dom = DomainSpec::closed_disk(Scalar::zero(), e("0"));
        let sigma = derivation_spectrum(&dom, &f).unwrap();
        for p in Probe::all() {
            let out = run_probe(p, &dom, &f, &sigma, 4).unwrap();
            assert_ne!(out.status, ProbeStatus::Mismatch, "{out:?}");
        }
        let out = run_probe(Probe::Annulus, &dom, &f, &sigma, 4).unwrap();
        assert_eq!(out.status, ProbeStatus::Skipped);
    }
}
