use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::berkline::BerkPoint;
use crate::error::{Error, Result};
use crate::valcore::{Exponent, FieldMode, FieldSpec, Poly, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Type4Report {
    /// `-log r(x)`: the bound is `|f| ≤ r |g|`.
    pub bound_exp: Exponent,
    /// Per family disk, the smallest `-log(|f| / |g|)` seen (the largest ratio).
    pub level_ratio_exps: Vec<Exponent>,
    pub samples: usize,
    pub holds: bool,
}

/// `φ^{-1}(g) = -Σ_k d^k g / a^{k+1}` on polynomials.
pub fn invert_shifted(a: &Scalar, g: &Poly) -> Result<Poly> {
    let mut acc = Poly::zero();
    let mut term = g.clone();
    let mut apow = a.clone();
    while !term.is_zero() {
        acc = &acc - &term.scale(&Scalar::one().try_div(&apow)?);
        term = term.derivative();
        apow = &apow * a;
    }
    Ok(acc)
}

/// `-log |h|_{x_{c,r}}` from the Taylor expansion at `c`.
pub fn gauss_norm_exp(f: &FieldSpec, h: &Poly, c: &Scalar, rho: &Exponent) -> Exponent {
    h.taylor_shift(c)
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| &f.val(x) + &rho.scale_int(i as i64))
        .min()
        .unwrap_or(Exponent::Infinite)
}

/// A random polynomial of degree `≤ deg` with coefficients `± m · π^k` for
/// small `m` and `k`, `π` a uniformizer (or 1 when trivially valued).
pub fn random_poly(f: &FieldSpec, rng: &mut impl Rng, deg: usize) -> Poly {
    let coeffs = (0..=deg)
        .map(|_| {
            if rng.gen_bool(0.25) {
                return Scalar::zero();
            }
            let m = Scalar::from_int(rng.gen_range(-9..=9));
            let k: i64 = rng.gen_range(-3..=3);
            let unit = match f.mode() {
                FieldMode::PAdic { p } => Scalar::from_int(p as i64).powi(k).expect("nonzero"),
                FieldMode::EqualCharZero => Scalar::t_pow(k),
                FieldMode::Trivial => Scalar::one(),
            };
            &m * &unit
        })
        .collect();
    Poly::new(coeffs)
}

/// Checks `|φ^{-1}(g)|_{x_l} ≤ r |g|_{x_l}` at every disk of the family of a
/// type-4 point, for `g = 1`, `g = S - c_l` and `samples` random polynomials
/// of degree `≤ deg`.
pub fn type4_bound_check(
    x: &BerkPoint,
    a: &Scalar,
    f: &FieldSpec,
    deg: usize,
    samples: usize,
    seed: u64,
) -> Result<Type4Report> {
    x.validate(f)?;
    f.check_scalar(a)?;
    let BerkPoint::Type4 { radius_exp, family } = x else {
        return Err(Error::Precondition("a type-4 point is required".into()));
    };
    if f.residual_char_p() {
        return Err(Error::Precondition("the boundedness argument needs residual characteristic 0".into()));
    }
    if a.is_zero() || f.val(a) != -radius_exp {
        return Err(Error::Precondition(format!("|a| must equal 1/r(x) = base^{radius_exp}")));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rhs: Vec<Poly> = vec![Poly::one()];
    rhs.extend(family.iter().map(|d| Poly::linear_root(&d.center)));
    rhs.extend((0..samples).map(|_| random_poly(f, &mut rng, deg)));
    rhs.retain(|g| !g.is_zero());

    let mut level_ratio_exps = vec![Exponent::Infinite; family.len()];
    for g in &rhs {
        let sol = invert_shifted(a, g)?;
        debug_assert_eq!(
            &sol.derivative() - &sol.scale(a),
            g.clone(),
            "inverse of d - a"
        );
        for (l, d) in family.iter().enumerate() {
            let ratio = &gauss_norm_exp(f, &sol, &d.center, &d.radius_exp) - &gauss_norm_exp(f, g, &d.center, &d.radius_exp);
            if ratio < level_ratio_exps[l] {
                level_ratio_exps[l] = ratio;
            }
        }
    }
    let holds = level_ratio_exps.iter().all(|e| e >= radius_exp);
    Ok(Type4Report {
        bound_exp: radius_exp.clone(),
        level_ratio_exps,
        samples: rhs.len(),
        holds,
    })
}
