use serde::{Deserialize, Serialize};

use super::eigen::{eigenvalue_multiset, EigenAnalysis};
use super::matrix::Matrix;
use crate::error::{Error, Result};
use crate::valcore::{FieldSpec, Poly, Scalar};

/// Monic `P(D) = g_0 + g_1 D + … + g_{ν-1} D^{ν-1} + D^ν` with constant coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Scalar>", into = "Vec<Scalar>")]
pub struct DiffPoly {
    coeffs: Vec<Scalar>,
}

impl TryFrom<Vec<Scalar>> for DiffPoly {
    type Error = Error;
    fn try_from(coeffs: Vec<Scalar>) -> Result<Self> {
        DiffPoly::new(coeffs)
    }
}

impl From<DiffPoly> for Vec<Scalar> {
    fn from(p: DiffPoly) -> Self {
        p.coeffs
    }
}

impl DiffPoly {
    /// `coeffs = [g_0, …, g_{ν-1}]`; the leading 1 is implicit.
    pub fn new(coeffs: Vec<Scalar>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidDomain("a differential polynomial needs degree ≥ 1".into()));
        }
        Ok(DiffPoly { coeffs })
    }

    pub fn from_ints(cs: &[i64]) -> Self {
        Self::new(cs.iter().map(|&c| Scalar::from_int(c)).collect()).expect("nonempty")
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    /// The commutative polynomial `Q(X)` obtained by reading `D` as `X`.
    pub fn transform(&self) -> Poly {
        let mut c = self.coeffs.clone();
        c.push(Scalar::one());
        Poly::new(c)
    }

    pub fn companion(&self) -> Matrix {
        companion_matrix(self)
    }
}

/// Sub-diagonal ones and last column `(-g_0, …, -g_{ν-1})`.
pub fn companion_matrix(p: &DiffPoly) -> Matrix {
    let n = p.order();
    let mut m = Matrix::zeros(n);
    for i in 1..n {
        m.set(i, i - 1, Scalar::one());
    }
    for (i, g) in p.coeffs().iter().enumerate() {
        m.set(i, n - 1, -g);
    }
    m
}

/// How the module was given.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum ModuleSource {
    Matrix { entries: Vec<Vec<Scalar>> },
    Diffpoly { coeffs: DiffPoly },
}

/// `(M, ∇)` with `∇ = d + G` in a fixed basis, after eigenvalue analysis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiffModuleSpec {
    matrix: Matrix,
    charpoly: Poly,
    analysis: EigenAnalysis,
}

impl DiffModuleSpec {
    pub fn from_matrix(g: Matrix, f: &FieldSpec) -> Result<Self> {
        for x in g.entries() {
            f.check_scalar(x)?;
        }
        let charpoly = g.charpoly();
        let analysis = eigenvalue_multiset(&charpoly, f, &g.diag())?;
        Ok(DiffModuleSpec {
            matrix: g,
            charpoly,
            analysis,
        })
    }

    pub fn from_diffpoly(p: &DiffPoly, f: &FieldSpec) -> Result<Self> {
        Self::from_matrix(companion_matrix(p), f)
    }

    pub fn from_source(src: &ModuleSource, f: &FieldSpec) -> Result<Self> {
        match src {
            ModuleSource::Matrix { entries } => Self::from_matrix(Matrix::from_rows(entries.clone())?, f),
            ModuleSource::Diffpoly { coeffs } => Self::from_diffpoly(coeffs, f),
        }
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn rank(&self) -> usize {
        self.matrix.dim()
    }

    pub fn charpoly(&self) -> &Poly {
        &self.charpoly
    }

    pub fn analysis(&self) -> &EigenAnalysis {
        &self.analysis
    }

    pub fn eigenvalues(&self) -> Vec<Scalar> {
        self.analysis.values()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn companion_examples() {
        assert_eq!(companion_matrix(&DiffPoly::from_ints(&[3])), Matrix::from_ints(&[&[-3]]).unwrap());
        assert_eq!(
            companion_matrix(&DiffPoly::from_ints(&[0, 0])),
            Matrix::from_ints(&[&[0, 0], &[1, 0]]).unwrap()
        );
        assert_eq!(
            companion_matrix(&DiffPoly::from_ints(&[-1, 0])),
            Matrix::from_ints(&[&[0, 1], &[1, 0]]).unwrap()
        );
    }

    #[test]
    fn companion_charpoly_is_transform() {
        let p = DiffPoly::new(vec!["1/2".parse().unwrap(), "-3".parse().unwrap(), "1+sqrt(5)".parse().unwrap()]).unwrap();
        assert_eq!(p.companion().charpoly(), p.transform());
    }

    #[test]
    fn module_analysis() {
        let f = FieldSpec::p_adic(3).unwrap();
        let m = DiffModuleSpec::from_matrix(Matrix::from_ints(&[&[0, 0], &[0, 1]]).unwrap(), &f).unwrap();
        assert_eq!(m.eigenvalues(), vec![Scalar::zero(), Scalar::one()]);
        assert!(DiffPoly::new(vec![]).is_err());
        assert!(Matrix::from_ints(&[&[1, 2]]).is_err());
    }
}
