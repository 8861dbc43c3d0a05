use num_rational::BigRational;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::valcore::{Exponent, FieldMode, FieldSpec, Poly};

/// Root valuations read off the Newton polygon.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NewtonSlopes {
    /// Valuations of the nonzero roots, ascending, with multiplicity.
    pub valuations: Vec<Exponent>,
    /// Multiplicity of the root 0.
    pub zero_roots: usize,
}

/// Lower convex hull of `{(i, v(q_i))}`; each edge of slope `-s` and width `w`
/// contributes `w` roots of valuation `s`.
pub fn newton_polygon_slopes(q: &Poly, f: &FieldSpec) -> Result<NewtonSlopes> {
    if matches!(f.mode(), FieldMode::Trivial) {
        return Err(Error::Unsupported("Newton polygons need a nontrivial valuation".into()));
    }
    if q.is_constant() {
        return Err(Error::Precondition("Newton polygon of a constant polynomial".into()));
    }
    for c in q.coeffs() {
        f.check_scalar(c)?;
    }
    let zero_roots = q.coeffs().iter().take_while(|c| c.is_zero()).count();
    let pts: Vec<(i64, BigRational)> = q
        .coeffs()
        .iter()
        .enumerate()
        .skip(zero_roots)
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| {
            let v = f.val(c);
            (i as i64, v.as_rational().expect("scalar valuations are rational").clone())
        })
        .collect();

    // monotone chain, lower hull only
    let mut hull: Vec<(i64, BigRational)> = Vec::new();
    for p in pts {
        while hull.len() >= 2 {
            let (a, b) = (&hull[hull.len() - 2], &hull[hull.len() - 1]);
            // drop b when it lies on or above segment a -> p
            let lhs = (&b.1 - &a.1) * BigRational::from_integer((p.0 - a.0).into());
            let rhs = (&p.1 - &a.1) * BigRational::from_integer((b.0 - a.0).into());
            if lhs >= rhs {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }

    let mut valuations = Vec::new();
    for w in hull.windows(2) {
        let width = w[1].0 - w[0].0;
        let slope = (&w[1].1 - &w[0].1) / BigRational::from_integer(width.into());
        for _ in 0..width {
            valuations.push(Exponent::rational(-slope.clone()));
        }
    }
    valuations.sort();
    Ok(NewtonSlopes { valuations, zero_roots })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let f = FieldSpec::p_adic(2).unwrap();
        let s = newton_polygon_slopes(&Poly::from_ints(&[-2, 0, 1]), &f).unwrap();
        assert_eq!(s.valuations, vec![Exponent::ratio(1, 2); 2]);
        let s = newton_polygon_slopes(&Poly::from_ints(&[0, -1, 1]), &f).unwrap();
        assert_eq!(s, NewtonSlopes { valuations: vec![Exponent::zero()], zero_roots: 1 });
        let s = newton_polygon_slopes(&Poly::from_ints(&[-4, 1]), &f).unwrap();
        assert_eq!(s.valuations, vec![Exponent::int(2)]);
    }

    #[test]
    fn mixed_valuations() {
        // (X - 2)(X - 1/4)(X - 3) over p = 2: root valuations 1, -2, 0
        let f = FieldSpec::p_adic(2).unwrap();
        let q = &(&Poly::from_ints(&[-2, 1]) * &Poly::linear_root(&"1/4".parse().unwrap())) * &Poly::from_ints(&[-3, 1]);
        let s = newton_polygon_slopes(&q, &f).unwrap();
        assert_eq!(s.valuations, vec![Exponent::int(-2), Exponent::zero(), Exponent::int(1)]);
    }

    #[test]
    fn trivial_mode_unsupported() {
        assert!(matches!(
            newton_polygon_slopes(&Poly::from_ints(&[-1, 1]), &FieldSpec::trivial()),
            Err(Error::Unsupported(_))
        ));
    }
}
