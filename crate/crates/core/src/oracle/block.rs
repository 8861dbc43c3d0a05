use std::collections::BTreeMap;

use serde::Serialize;

use crate::diffmod::{eigenvalue_multiset, Eigenvalue, Matrix};
use crate::error::Result;
use crate::valcore::{FieldSpec, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockReport {
    pub eigenvalues: Vec<Eigenvalue>,
    /// `χ_G = χ_{G1} χ_{G2}`
    pub charpoly_factors: bool,
    /// Eigenvalue multiset of `G` is the union of those of the blocks.
    pub multiset_union: bool,
}

fn multiset(m: &Matrix, f: &FieldSpec) -> Result<(BTreeMap<Scalar, usize>, Vec<String>)> {
    let a = eigenvalue_multiset(&m.charpoly(), f, &m.diag())?;
    let vals = a.eigenvalues.into_iter().map(|e| (e.value, e.multiplicity)).collect();
    let mut rest: Vec<String> = a
        .unresolved
        .iter()
        .map(|u| format!("({})^{}", u.poly, u.multiplicity))
        .collect();
    rest.sort();
    Ok((vals, rest))
}

/// `G = [[G1, C], [0, G2]]` has the eigenvalues of `G1` and `G2` together.
pub fn finite_dim_block_spectrum_check(g1: &Matrix, g2: &Matrix, c: &[Vec<Scalar>], f: &FieldSpec) -> Result<BlockReport> {
    let g = Matrix::block_upper(g1, c, g2)?;
    let charpoly_factors = g.charpoly() == &g1.charpoly() * &g2.charpoly();
    let (whole, whole_rest) = multiset(&g, f)?;
    let (m1, r1) = multiset(g1, f)?;
    let (m2, r2) = multiset(g2, f)?;
    let mut joined = m1;
    for (v, k) in m2 {
        *joined.entry(v).or_default() += k;
    }
    let mut joined_rest: Vec<String> = r1.into_iter().chain(r2).collect();
    joined_rest.sort();
    // unresolved factors may merge into powers, so compare them only when both sides are exact
    let multiset_union = joined == whole && (whole_rest.is_empty() == joined_rest.is_empty());
    Ok(BlockReport {
        eigenvalues: whole
            .into_iter()
            .map(|(value, multiplicity)| Eigenvalue { value, multiplicity })
            .collect(),
        charpoly_factors,
        multiset_union,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let f = FieldSpec::p_adic(2).unwrap();
        let one = |x: i64| Matrix::from_ints(&[&[x]]).unwrap();
        let r = finite_dim_block_spectrum_check(&one(0), &one(1), &[vec![Scalar::from_int(5)]], &f).unwrap();
        assert!(r.charpoly_factors && r.multiset_union);
        assert_eq!(r.eigenvalues.len(), 2);
        let r = finite_dim_block_spectrum_check(&one(0), &one(0), &[vec![Scalar::one()]], &f).unwrap();
        assert_eq!(r.eigenvalues, vec![Eigenvalue { value: Scalar::zero(), multiplicity: 2 }]);
        assert!(finite_dim_block_spectrum_check(&one(0), &one(0), &[vec![]], &f).is_err());
    }
}
