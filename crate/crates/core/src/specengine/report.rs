use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use super::cases::{case_tag, derivation_spectrum, CaseTag};
use crate::berkline::{DiskKind, Spectrum};
use crate::diffmod::{DiffModuleSpec, DiffPoly, DomainSpec, EigenAnalysis};
use crate::error::Result;
use crate::valcore::{Exponent, FieldSpec, Radius, Scalar};

/// Translate of `Σ_d` by a root that could not be written down exactly.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SymbolicComponent {
    pub factor: String,
    /// `-log|a|` for each root of the factor, when a Newton polygon is available.
    pub root_valuations: Option<Vec<Exponent>>,
    pub radius_exp: Exponent,
    pub kind: DiskKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectrumReport {
    /// Union over the exactly known eigenvalues; `None` when none is known.
    pub spectrum: Option<Spectrum>,
    pub symbolic: Vec<SymbolicComponent>,
    pub enclosing_radius_exp: Exponent,
    pub case: CaseTag,
    pub eigen: EigenAnalysis,
}

impl SpectrumReport {
    pub fn valuation_only(&self) -> bool {
        !self.symbolic.is_empty()
    }

    pub fn mixed_kind(&self) -> bool {
        self.spectrum.as_ref().is_some_and(|s| !s.mixed_components().is_empty())
    }

    pub fn flags(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if self.valuation_only() {
            out.push("valuation-only");
        }
        if self.mixed_kind() {
            out.push("mixed-kind");
        }
        out
    }

    /// The exact spectrum; panics on a valuation-only report.
    pub fn exact(&self) -> &Spectrum {
        assert!(!self.valuation_only(), "valuation-only report");
        self.spectrum.as_ref().expect("exact report has a spectrum")
    }

    /// Necessary condition on the eigenvalues `a'_i` of another constant
    /// basis: each must fall in a component of the spectrum, and every
    /// component contains one of the original eigenvalues.
    pub fn admits_eigenvalues(&self, alt: &[Scalar]) -> bool {
        match &self.spectrum {
            Some(s) if !self.valuation_only() => alt.iter().all(|a| s.contains_rigid(a)),
            _ => false,
        }
    }
}

impl Serialize for SpectrumReport {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(None)?;
        let empty = (Vec::new(), Vec::new());
        let (disks, comps) = self
            .spectrum
            .as_ref()
            .map(|sp| (sp.disks().to_vec(), sp.components().to_vec()))
            .unwrap_or(empty);
        m.serialize_entry("spectrum", &disks)?;
        m.serialize_entry("components", &comps)?;
        m.serialize_entry("enclosing_radius_exp", &self.enclosing_radius_exp)?;
        m.serialize_entry("case", &self.case)?;
        m.serialize_entry("flags", &self.flags())?;
        m.serialize_entry("eigenvalues", &self.eigen.eigenvalues)?;
        if !self.symbolic.is_empty() {
            m.serialize_entry("symbolic", &self.symbolic)?;
            m.serialize_entry("unresolved", &self.eigen.unresolved)?;
        }
        m.end()
    }
}

/// `Σ_∇ = ⋃ (a_i + Σ_d)` over the eigenvalues of the module.
pub fn module_spectrum(m: &DiffModuleSpec, dom: &DomainSpec, f: &FieldSpec) -> Result<SpectrumReport> {
    let sd = derivation_spectrum(dom, f)?;
    let base = &sd.disks()[0];
    let eigen = m.analysis().clone();
    let spectrum = match eigen.eigenvalues.is_empty() {
        true => None,
        false => Some(Spectrum::normalize(
            f,
            eigen
                .eigenvalues
                .iter()
                .flat_map(|e| sd.disks().iter().map(|d| d.translate(&e.value))),
        )?),
    };
    let symbolic: Vec<SymbolicComponent> = eigen
        .unresolved
        .iter()
        .map(|u| SymbolicComponent {
            factor: u.poly.to_string(),
            root_valuations: u.slopes.as_ref().map(|s| s.valuations.clone()),
            radius_exp: base.radius_exp().clone(),
            kind: base.kind(),
        })
        .collect();

    // max_i max(|a_i|, R); unresolved roots enter through their valuations
    let mut radii: Vec<Radius> = spectrum.iter().map(Spectrum::enclosing_radius).collect();
    for u in &eigen.unresolved {
        let r = base.radius();
        match &u.slopes {
            Some(s) => radii.extend(s.valuations.iter().map(|v| Radius::from_exponent(v.clone()).max(r.clone()))),
            // trivially valued: every nonzero root has absolute value 1
            None => radii.push(Radius::one().max(r)),
        }
    }
    let enclosing_radius_exp = Radius::max_of(&radii).into_exponent();
    Ok(SpectrumReport {
        spectrum,
        symbolic,
        enclosing_radius_exp,
        case: case_tag(dom, f),
        eigen,
    })
}

/// `Σ_{P(d)} = Q(Σ_d)` with `Q` the commutative transform of `P`.
pub fn diffpoly_operator_spectrum(p: &DiffPoly, dom: &DomainSpec, f: &FieldSpec) -> Result<Spectrum> {
    derivation_spectrum(dom, f)?.poly_image(&p.transform())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    #[serde(rename = "equal")]
    Equal,
    #[serde(rename = "operator ⊊ module")]
    OperatorInModule,
    #[serde(rename = "module ⊊ operator")]
    ModuleInOperator,
    #[serde(rename = "incomparable")]
    Incomparable,
    /// The module spectrum is only known up to valuations.
    #[serde(rename = "undetermined")]
    Undetermined,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComparisonReport {
    pub module: SpectrumReport,
    #[serde(serialize_with = "ser_spectrum")]
    pub operator: Spectrum,
    pub verdict: Verdict,
}

fn ser_spectrum<S: Serializer>(sp: &Spectrum, s: S) -> std::result::Result<S::Ok, S::Error> {
    let mut m = s.serialize_map(Some(3))?;
    m.serialize_entry("spectrum", sp.disks())?;
    m.serialize_entry("components", sp.components())?;
    m.serialize_entry("enclosing_radius_exp", &sp.enclosing_radius_exp())?;
    m.end()
}

pub fn compare(module: &Spectrum, operator: &Spectrum) -> Verdict {
    match (operator.is_subset_of(module), module.is_subset_of(operator)) {
        (true, true) => Verdict::Equal,
        (true, false) => Verdict::OperatorInModule,
        (false, true) => Verdict::ModuleInOperator,
        (false, false) => Verdict::Incomparable,
    }
}

/// Module spectrum of the companion system of `P` next to the spectrum of the operator `P(d)`.
pub fn spectra_report(p: &DiffPoly, dom: &DomainSpec, f: &FieldSpec) -> Result<ComparisonReport> {
    let module = module_spectrum(&DiffModuleSpec::from_diffpoly(p, f)?, dom, f)?;
    let operator = diffpoly_operator_spectrum(p, dom, f)?;
    let verdict = match (&module.spectrum, module.valuation_only()) {
        (Some(m), false) => compare(m, &operator),
        _ => Verdict::Undetermined,
    };
    Ok(ComparisonReport {
        module,
        operator,
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::berkline::Disk;
    use crate::diffmod::Matrix;

    fn e(x: &str) -> Exponent {
        x.parse().unwrap()
    }

    fn s(x: &str) -> Scalar {
        x.parse().unwrap()
    }

    fn closed(c: Scalar, e: Exponent) -> Disk {
        Disk::closed(c, e)
    }

    fn unit_disk() -> DomainSpec {
        DomainSpec::closed_disk(Scalar::zero(), e("0"))
    }

    fn spectrum_of(rows: &[&[i64]], f: &FieldSpec) -> SpectrumReport {
        let m = DiffModuleSpec::from_matrix(Matrix::from_ints(rows).unwrap(), f).unwrap();
        module_spectrum(&m, &unit_disk(), f).unwrap()
    }

    #[test]
    fn nilpotent_block_matches_derivation() {
        let f = FieldSpec::p_adic(2).unwrap();
        let r = spectrum_of(&[&[0, 1], &[0, 0]], &f);
        assert!(r.exact().same_set(&derivation_spectrum(&unit_disk(), &f).unwrap()));
        assert_eq!(r.exact().disks(), &[closed(s("0"), e("1"))]);
        assert_eq!(r.enclosing_radius_exp, e("1"));
    }

    #[test]
    fn union_and_merge() {
        let f3 = FieldSpec::p_adic(3).unwrap();
        let r = spectrum_of(&[&[0, 0], &[0, 1]], &f3);
        assert_eq!(r.exact().disks(), &[closed(s("0"), e("1/2")), closed(s("1"), e("1/2"))]);
        assert_eq!(r.exact().components().len(), 2);
        assert_eq!(r.enclosing_radius_exp, e("0"));

        let f2 = FieldSpec::p_adic(2).unwrap();
        let r = spectrum_of(&[&[0, 0], &[0, 2]], &f2);
        assert_eq!(r.exact().disks(), &[closed(s("0"), e("1"))]);
    }

    #[test]
    fn operator_examples() {
        let f = FieldSpec::p_adic(2).unwrap();
        let dom = unit_disk();
        let sd = derivation_spectrum(&dom, &f).unwrap();
        let id = diffpoly_operator_spectrum(&DiffPoly::from_ints(&[0]), &dom, &f).unwrap();
        assert!(id.same_set(&sd));
        let sq = diffpoly_operator_spectrum(&DiffPoly::from_ints(&[0, 0]), &dom, &f).unwrap();
        assert_eq!(sq.disks(), &[closed(s("0"), e("2"))]);
        let shifted = diffpoly_operator_spectrum(&DiffPoly::from_ints(&[-1]), &dom, &f).unwrap();
        assert!(shifted.same_set(&sd.translate(&s("1"))));
    }

    #[test]
    fn comparison_verdicts() {
        let f = FieldSpec::p_adic(2).unwrap();
        let dom = unit_disk();
        assert_eq!(spectra_report(&DiffPoly::from_ints(&[0]), &dom, &f).unwrap().verdict, Verdict::Equal);
        let r = spectra_report(&DiffPoly::from_ints(&[0, 0]), &dom, &f).unwrap();
        assert_eq!(r.verdict, Verdict::OperatorInModule);
        assert_eq!(r.operator.disks(), &[closed(s("0"), e("2"))]);
        assert_eq!(r.module.exact().disks(), &[closed(s("0"), e("1"))]);
        assert_eq!(spectra_report(&DiffPoly::from_ints(&[-3]), &dom, &f).unwrap().verdict, Verdict::Equal);
    }

    #[test]
    fn unresolved_eigenvalues_are_flagged() {
        let f3 = FieldSpec::p_adic(3).unwrap();
        // X^2 - 2 has no root in Q(sqrt 3)
        let r = spectrum_of(&[&[0, 2], &[1, 0]], &f3);
        assert!(r.valuation_only());
        assert!(r.spectrum.is_none());
        assert_eq!(r.symbolic[0].root_valuations.as_deref(), Some(&[e("0"), e("0")][..]));
        assert_eq!(r.enclosing_radius_exp, e("0"));
        assert_eq!(r.flags(), vec!["valuation-only"]);
        let c = spectra_report(&DiffPoly::from_ints(&[-2, 0]), &unit_disk(), &f3).unwrap();
        assert_eq!(c.verdict, Verdict::Undetermined);
    }

    #[test]
    fn alternative_basis_condition() {
        let f3 = FieldSpec::p_adic(3).unwrap();
        let r = spectrum_of(&[&[0, 0], &[0, 1]], &f3);
        assert!(r.admits_eigenvalues(&[s("3"), s("4")]));
        assert!(!r.admits_eigenvalues(&[s("2")]));
    }

    #[test]
    fn report_document_shape() {
        let f = FieldSpec::p_adic(2).unwrap();
        let r = spectrum_of(&[&[0, 1], &[0, 0]], &f);
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["case"], "char-p/closed-disk");
        assert_eq!(v["enclosing_radius_exp"], "1");
        assert_eq!(v["spectrum"][0]["kind"], "closed");
        assert_eq!(v["flags"].as_array().unwrap().len(), 0);
    }
}
