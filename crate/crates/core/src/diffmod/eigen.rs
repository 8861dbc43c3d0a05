//! Exact eigenvalue extraction from a characteristic polynomial.
//!
//! Candidates come from the divisor search on the integer model, from
//! caller-supplied hints (e.g. diagonal entries) and from floating-point root
//! approximations; a candidate counts only after an exact check. Whatever
//! survives is returned as unresolved factors with Newton-polygon data.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::newton::{newton_polygon_slopes, NewtonSlopes};
use crate::error::{Error, Result};
use crate::valcore::{FieldMode, FieldSpec, Poly, Radical, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Eigenvalue {
    pub value: Scalar,
    pub multiplicity: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UnresolvedFactor {
    #[serde(serialize_with = "ser_poly")]
    pub poly: Poly,
    pub multiplicity: usize,
    /// Irreducible over the rationals by a complete argument (degree ≤ 3 with
    /// no rational root); otherwise only the numeric factor search failed.
    pub irreducibility_proven: bool,
    pub slopes: Option<NewtonSlopes>,
}

fn ser_poly<S: serde::Serializer>(p: &Poly, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(p)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EigenAnalysis {
    pub eigenvalues: Vec<Eigenvalue>,
    pub unresolved: Vec<UnresolvedFactor>,
}

impl EigenAnalysis {
    pub fn is_complete(&self) -> bool {
        self.unresolved.is_empty()
    }

    /// `Π (X - a)^m · Π g^m`, which must equal the analyzed polynomial.
    pub fn reconstruct(&self) -> Poly {
        let mut acc = Poly::one();
        for e in &self.eigenvalues {
            acc = &acc * &Poly::linear_root(&e.value).pow(e.multiplicity as u32);
        }
        for u in &self.unresolved {
            acc = &acc * &u.poly.pow(u.multiplicity as u32);
        }
        acc
    }

    pub fn values(&self) -> Vec<Scalar> {
        self.eigenvalues.iter().map(|e| e.value.clone()).collect()
    }
}

/// Divides out `X - c` as often as it goes; returns the multiplicity.
fn deflate(rest: &mut Poly, c: &Scalar) -> usize {
    let lin = Poly::linear_root(c);
    let mut m = 0;
    while rest.degree().unwrap_or(0) > 0 && rest.eval(c).is_zero() {
        let (q, _) = rest.div_rem(&lin).expect("monic divisor");
        *rest = q;
        m += 1;
    }
    m
}

fn rational_coeffs(q: &Poly) -> Option<Vec<BigRational>> {
    q.coeffs().iter().map(Scalar::as_rational).collect()
}

/// Primitive integer model `P` with `q = P / lead(P)` up to a rational unit.
fn integer_model(q: &[BigRational]) -> Vec<BigInt> {
    let l = q.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = q.iter().map(|c| (c * BigRational::from_integer(l.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    ints.into_iter().map(|c| c / &g).collect()
}

const DIVISOR_LIMIT: u64 = 1 << 40;

fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.abs().to_u64()?;
    if n > DIVISOR_LIMIT {
        return None;
    }
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(BigInt::from(d));
            if d * d != n {
                out.push(BigInt::from(n / d));
            }
        }
        d += 1;
    }
    Some(out)
}

/// Rational root theorem candidates `±d/e`, `d | a_0`, `e | a_n`; `None` when too large to enumerate.
fn rational_root_candidates(p: &[BigInt]) -> Option<Vec<Scalar>> {
    let a0 = p.first()?;
    let an = p.last()?;
    if a0.is_zero() {
        return Some(vec![Scalar::zero()]);
    }
    let (ds, es) = (divisors(a0)?, divisors(an)?);
    let mut out = Vec::new();
    for d in &ds {
        for e in &es {
            let r = BigRational::new(d.clone(), e.clone());
            out.push(Scalar::from_rational(-r.clone()));
            out.push(Scalar::from_rational(r));
        }
    }
    Some(out)
}

/// Aberth–Ehrlich iteration for all complex roots of a square-free polynomial.
fn numeric_roots(c: &[f64]) -> Vec<Complex64> {
    let n = c.len() - 1;
    if n == 0 {
        return Vec::new();
    }
    let lead = c[n];
    let a: Vec<f64> = c.iter().map(|x| x / lead).collect();
    let eval = |z: Complex64| {
        let mut v = Complex64::new(0.0, 0.0);
        let mut d = Complex64::new(0.0, 0.0);
        for &k in a.iter().rev() {
            d = d * z + v;
            v = v * z + k;
        }
        (v, d)
    };
    // Cauchy bound for the initial circle
    let bound = 1.0 + a[..n].iter().map(|x| x.abs()).fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(bound * 0.7, 0.4 + 2.0 * std::f64::consts::PI * k as f64 / n as f64))
        .collect();
    for _ in 0..500 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let (v, d) = eval(z[i]);
            if v.norm() == 0.0 {
                continue;
            }
            let ratio = v / d;
            let repulsion: Complex64 = (0..n).filter(|&j| j != i).map(|j| (z[i] - z[j]).inv()).sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            z[i] -= step;
            moved = moved.max(step.norm() / (1.0 + z[i].norm()));
        }
        if moved < 1e-15 {
            break;
        }
    }
    z
}

/// `round(x·L)/L` when `x·L` is close to an integer.
fn snap(x: f64, l: &BigInt) -> Option<BigRational> {
    let lf = l.to_f64()?;
    let y = x * lf;
    let r = y.round();
    if !r.is_finite() || (y - r).abs() > 1e-6 * (1.0 + y.abs()) {
        return None;
    }
    Some(BigRational::new(BigInt::from(r as i64), l.clone()))
}

fn exact_sqrt(r: &BigRational) -> Option<BigRational> {
    if r.is_negative() {
        return None;
    }
    let (n, d) = (r.numer().sqrt(), r.denom().sqrt());
    (&n * &n == *r.numer() && &d * &d == *r.denom()).then(|| BigRational::new(n, d))
}

fn square_free(q: &Poly) -> Result<Poly> {
    let g = q.gcd(&q.derivative())?;
    Ok(q.div_rem(&g)?.0.monic()?)
}

fn to_f64s(q: &[BigRational]) -> Vec<f64> {
    q.iter().map(|c| c.to_f64().unwrap_or(f64::NAN)).collect()
}

/// Monic rational factor `Π_{i∈S} (X - z_i)` if its coefficients snap to `1/L`.
fn snapped_factor(roots: &[Complex64], subset: &[usize], l: &BigInt) -> Option<Poly> {
    let mut c = vec![Complex64::new(1.0, 0.0)];
    for &i in subset {
        let mut next = vec![Complex64::new(0.0, 0.0); c.len() + 1];
        for (k, ck) in c.iter().enumerate() {
            next[k + 1] += ck;
            next[k] -= ck * roots[i];
        }
        c = next;
    }
    let coeffs = c
        .iter()
        .map(|z| {
            if z.im.abs() > 1e-6 * (1.0 + z.re.abs()) {
                None
            } else {
                snap(z.re, l).map(Scalar::from_rational)
            }
        })
        .collect::<Option<Vec<_>>>()?;
    Some(Poly::new(coeffs))
}

fn divides(d: &Poly, q: &Poly) -> bool {
    q.div_rem(d).map(|(_, r)| r.is_zero()).unwrap_or(false)
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Splits a monic square-free rational polynomial into rational factors by
/// grouping numeric roots and verifying each candidate factor exactly.
fn split_rational(sqf: &Poly) -> Vec<Poly> {
    let coeffs = rational_coeffs(sqf).expect("rational input");
    let model = integer_model(&coeffs);
    let l = model.last().cloned().unwrap_or_else(BigInt::one).abs();
    let roots = numeric_roots(&to_f64s(&coeffs));
    let mut free: Vec<usize> = (0..roots.len()).collect();
    let mut rest = sqf.clone();
    let mut out = Vec::new();
    let mut k = 1;
    while 2 * k <= free.len() {
        let found = subsets(free.len(), k).into_iter().find_map(|s| {
            let idx: Vec<usize> = s.iter().map(|&i| free[i]).collect();
            snapped_factor(&roots, &idx, &l)
                .filter(|g| !g.is_constant() && divides(g, &rest))
                .map(|g| (g, s))
        });
        match found {
            Some((g, s)) => {
                rest = rest.div_rem(&g).expect("monic").0;
                for i in s.into_iter().rev() {
                    free.remove(i);
                }
                out.push(g);
            }
            None => k += 1,
        }
    }
    if !rest.is_constant() {
        out.push(rest);
    }
    out
}

/// Quadratic factors `X² - 2uX + (u² - p v²)` found among pairs of real roots.
fn sqrt_p_roots(sqf: &Poly, p: u64) -> Vec<Scalar> {
    let Some(coeffs) = rational_coeffs(sqf) else {
        return Vec::new();
    };
    let model = integer_model(&coeffs);
    let l = model.last().cloned().unwrap_or_else(BigInt::one).abs();
    let roots = numeric_roots(&to_f64s(&coeffs));
    let mut out = Vec::new();
    for pair in subsets(roots.len(), 2) {
        let Some(g) = snapped_factor(&roots, &pair, &l) else {
            continue;
        };
        if !divides(&g, sqf) {
            continue;
        }
        let (m, s) = (g.coeff(0).as_rational().unwrap(), -g.coeff(1).as_rational().unwrap());
        let disc = &s * &s - BigRational::from_integer(4.into()) * &m;
        let two = BigRational::from_integer(2.into());
        let pr = BigRational::from_integer(p.into());
        if let Some(v) = exact_sqrt(&(&disc / (BigRational::from_integer(4.into()) * &pr))) {
            let u = &s / &two;
            out.push(Scalar::quadratic(u.clone(), v.clone(), p));
            out.push(Scalar::quadratic(u, -v, p));
        }
    }
    out
}

/// Multiset of eigenvalues of a monic polynomial plus its unresolved factors.
pub fn eigenvalue_multiset(q: &Poly, f: &FieldSpec, hints: &[Scalar]) -> Result<EigenAnalysis> {
    if !q.is_monic() || q.is_constant() {
        return Err(Error::Precondition(format!("{q} is not monic of positive degree")));
    }
    for c in q.coeffs() {
        f.check_scalar(c)?;
    }
    let mut rest = q.clone();
    let mut found: BTreeMap<Scalar, usize> = BTreeMap::new();
    let mut take = |rest: &mut Poly, c: &Scalar| {
        if f.check_scalar(c).is_ok() {
            let m = deflate(rest, c);
            if m > 0 {
                *found.entry(c.clone()).or_default() += m;
            }
        }
    };

    take(&mut rest, &Scalar::zero());
    for h in hints {
        take(&mut rest, h);
    }
    if !rest.is_constant() {
        match rest.coeffs().iter().fold(Radical::None, |r, c| r.max(c.radical())) {
            Radical::None => {
                let coeffs = rational_coeffs(&rest).expect("rational");
                let cands = rational_root_candidates(&integer_model(&coeffs)).unwrap_or_default();
                for c in cands {
                    take(&mut rest, &c);
                }
                // numeric fallback for huge coefficients
                if !rest.is_constant() {
                    let sqf = square_free(&rest)?;
                    for g in split_rational(&sqf).into_iter().filter(|g| g.degree() == Some(1)) {
                        take(&mut rest, &-g.coeff(0));
                    }
                }
                if let (FieldMode::PAdic { p }, false) = (f.mode(), rest.is_constant()) {
                    for c in sqrt_p_roots(&square_free(&rest)?, p) {
                        take(&mut rest, &c);
                    }
                }
            }
            Radical::Sqrt(p) => {
                // roots of q are among those of the rational norm q·q̄
                let conj = Poly::new(rest.coeffs().iter().map(Scalar::conjugate).collect());
                let norm = &rest * &conj;
                let sqf = square_free(&norm)?;
                let mut cands: Vec<Scalar> = split_rational(&sqf)
                    .into_iter()
                    .filter(|g| g.degree() == Some(1))
                    .map(|g| -g.coeff(0))
                    .collect();
                cands.extend(sqrt_p_roots(&sqf, p));
                for c in cands {
                    take(&mut rest, &c);
                }
            }
            Radical::Uniformizer => {}
        }
    }
    if rest.degree() == Some(1) {
        let c = -rest.coeff(0);
        take(&mut rest, &c);
    }

    let eigenvalues = found
        .into_iter()
        .map(|(value, multiplicity)| Eigenvalue { value, multiplicity })
        .collect();
    Ok(EigenAnalysis {
        eigenvalues,
        unresolved: unresolved_factors(&rest, f)?,
    })
}

fn unresolved_factors(rest: &Poly, f: &FieldSpec) -> Result<Vec<UnresolvedFactor>> {
    if rest.is_constant() {
        return Ok(Vec::new());
    }
    let slopes = |g: &Poly| newton_polygon_slopes(g, f).ok();
    let with_multiplicity = |g: Poly, proven: bool| {
        let mut m = 0;
        let mut r = rest.clone();
        while divides(&g, &r) {
            r = r.div_rem(&g).expect("monic").0;
            m += 1;
        }
        UnresolvedFactor {
            slopes: slopes(&g),
            poly: g,
            multiplicity: m,
            irreducibility_proven: proven,
        }
    };
    if rest.is_rational() {
        let sqf = square_free(rest)?;
        Ok(split_rational(&sqf)
            .into_iter()
            .map(|g| {
                let proven = g.degree().is_some_and(|d| d <= 3);
                with_multiplicity(g, proven)
            })
            .collect())
    } else {
        let g = match rest.coeffs().iter().any(|c| c.radical() == Radical::Uniformizer) {
            true => rest.clone(),
            false => square_free(rest)?,
        };
        Ok(vec![with_multiplicity(g, false)])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(x: &str) -> Scalar {
        x.parse().unwrap()
    }

    #[test]
    fn simple_examples() {
        let f = FieldSpec::p_adic(2).unwrap();
        let a = eigenvalue_multiset(&Poly::from_ints(&[0, -1, 1]), &f, &[]).unwrap();
        assert_eq!(a.values(), vec![s("0"), s("1")]);
        assert!(a.is_complete());
        let a = eigenvalue_multiset(&Poly::from_ints(&[0, 0, 1]), &f, &[]).unwrap();
        assert_eq!(a.eigenvalues, vec![Eigenvalue { value: s("0"), multiplicity: 2 }]);
    }

    #[test]
    fn roots_in_quadratic_extension() {
        let f = FieldSpec::p_adic(2).unwrap();
        let a = eigenvalue_multiset(&Poly::from_ints(&[-2, 0, 1]), &f, &[]).unwrap();
        assert!(a.is_complete());
        let mut v = a.values();
        v.sort();
        let mut want = vec![s("sqrt(2)"), s("-sqrt(2)")];
        want.sort();
        assert_eq!(v, want);
        // over p = 3 the same polynomial stays unresolved
        let f3 = FieldSpec::p_adic(3).unwrap();
        let b = eigenvalue_multiset(&Poly::from_ints(&[-2, 0, 1]), &f3, &[]).unwrap();
        assert_eq!(b.unresolved.len(), 1);
        assert!(b.unresolved[0].irreducibility_proven);
        assert_eq!(b.unresolved[0].slopes.as_ref().unwrap().valuations.len(), 2);
    }

    #[test]
    fn shifted_quadratic_and_repeated_factor() {
        let f = FieldSpec::p_adic(3).unwrap();
        // ((X - 1/2)^2 - 3)^2 (X + 5)
        let quad = &Poly::linear_root(&s("1/2")).pow(2) - &Poly::from_ints(&[3]);
        let q = &quad.pow(2) * &Poly::from_ints(&[5, 1]);
        let a = eigenvalue_multiset(&q, &f, &[]).unwrap();
        assert!(a.is_complete());
        assert_eq!(a.reconstruct(), q);
        assert!(a.eigenvalues.iter().any(|e| e.value == s("1/2+sqrt(3)") && e.multiplicity == 2));
    }

    #[test]
    fn quadratic_extension_coefficients() {
        let f = FieldSpec::p_adic(2).unwrap();
        // (X - sqrt 2)(X - 1)
        let q = &Poly::linear_root(&s("sqrt(2)")) * &Poly::linear_root(&s("1"));
        let a = eigenvalue_multiset(&q, &f, &[]).unwrap();
        assert!(a.is_complete());
        assert_eq!(a.reconstruct(), q);
    }

    #[test]
    fn splits_products_of_irreducibles() {
        let f = FieldSpec::p_adic(5).unwrap();
        // (X^2 + 1)(X^2 + 3)(X^3 - 2)
        let q = &(&Poly::from_ints(&[1, 0, 1]) * &Poly::from_ints(&[3, 0, 1])) * &Poly::from_ints(&[-2, 0, 0, 1]);
        let a = eigenvalue_multiset(&q, &f, &[]).unwrap();
        assert!(a.eigenvalues.is_empty());
        assert_eq!(a.unresolved.len(), 3);
        assert!(a.unresolved.iter().all(|u| u.irreducibility_proven));
        assert_eq!(a.reconstruct(), q);
    }

    #[test]
    fn uniformizer_hints() {
        let f = FieldSpec::equal_char_zero();
        let t = Scalar::t_pow(1);
        let q = &Poly::linear_root(&t) * &Poly::linear_root(&Scalar::t_pow(-2));
        let a = eigenvalue_multiset(&q, &f, &[t.clone()]).unwrap();
        // the hint finds t and the linear quotient gives the other root
        assert!(a.is_complete());
        assert_eq!(a.values(), vec![Scalar::t_pow(-2), t.clone()].into_iter().collect::<std::collections::BTreeSet<_>>().into_iter().collect::<Vec<_>>());
        let a = eigenvalue_multiset(&q, &f, &[]).unwrap();
        assert_eq!(a.unresolved.len(), 1);
        assert_eq!(a.reconstruct(), q);
    }

    #[test]
    fn rejects_non_monic() {
        let f = FieldSpec::trivial();
        assert!(eigenvalue_multiset(&Poly::from_ints(&[1, 2]), &f, &[]).is_err());
    }
}
