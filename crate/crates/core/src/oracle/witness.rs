use num_rational::BigRational;
use serde::Serialize;

use crate::berkline::{BerkPoint, Separation};
use crate::diffmod::{DiskParams, DomainSpec};
use crate::error::{Error, Result};
use crate::specengine::derivation_spectrum;
use crate::valcore::{Exponent, FieldMode, FieldSpec, Scalar};

/// `-log` of the sup of `|S - c|` over a connected domain, for its natural center `c`.
fn hull_exponent(dom: &DomainSpec) -> Result<Exponent> {
    match dom {
        DomainSpec::ClosedDisk { radius_exp, .. } => Ok(radius_exp.clone()),
        DomainSpec::Affinoid { outer, .. } => Ok(outer.radius_exp.clone()),
        DomainSpec::Point { point } => Ok(point.radius_exp()),
        DomainSpec::DisjointUnion { .. } => Err(Error::Precondition("the witness needs a connected domain".into())),
    }
}

/// `-log |a^n / n!| r^n`, the size of the n-th term of `exp(a(S - c))`.
pub fn exp_term_exponent(a: &Scalar, rho: &Exponent, f: &FieldSpec, n: u64) -> Exponent {
    let n_i = n as i64;
    &(&f.val(a).scale_int(n_i) - &f.factorial_valuation(n)) + &rho.scale_int(n_i)
}

/// Whether `exp(a(S - c))` converges on the domain, making it a kernel
/// element of `d - a`.
///
/// The term exponents are bounded below by `n (v(a) + ρ - ω_e)`, and along
/// `n = p^k` they equal that plus `1/(p-1)`; they tend to `+∞` exactly when
/// `v(a) + ρ - ω_e > 0`.
pub fn kernel_witness(a: &Scalar, dom: &DomainSpec, f: &FieldSpec) -> Result<bool> {
    dom.validate(f)?;
    f.check_scalar(a)?;
    if a.is_zero() {
        return Ok(true);
    }
    let rho = hull_exponent(dom)?;
    let margin = &(&f.val(a) + &rho) - &f.omega_exponent();
    Ok(margin > Exponent::zero())
}

/// Runs `a_{n+1} = (b_n + a a_n) / (n+1)` for the right-hand side
/// `b_{p^l - 1} = β^l / α^{p^l - 1}` with `|a| = ω/r`, `|α| = r`, `|β| = |p|^{1/2}`
/// and returns `-log |a_{p^l}| r^{p^l}` for `l = 0..=levels`.
pub fn divergence_witness(f: &FieldSpec, rho: &Exponent, levels: u32) -> Result<Vec<Exponent>> {
    let FieldMode::PAdic { p } = f.mode() else {
        return Err(Error::Unsupported("the divergence witness is p-adic".into()));
    };
    let a = f.realize(&(&f.omega_exponent() - rho))?;
    let alpha = f.realize(rho)?;
    let beta = Scalar::sqrt_p(p);
    let top = p.pow(levels);
    let mut b = vec![Scalar::zero(); top as usize];
    for l in 0..=levels {
        let n = p.pow(l) - 1;
        b[n as usize] = beta.pow(l as u64).try_div(&alpha.pow(n))?;
    }
    let mut coeffs = vec![Scalar::zero()];
    for n in 0..top {
        let next = (&b[n as usize] + &(&a * &coeffs[n as usize])).div_rational(&BigRational::from_integer(
            (n + 1).into(),
        ));
        coeffs.push(next);
    }
    Ok((0..=levels)
        .map(|l| {
            let n = p.pow(l);
            &f.val(&coeffs[n as usize]) + &rho.scale_int(n as i64)
        })
        .collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ProbeVerdict {
    Converges,
    Diverges,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AnnulusProbe {
    pub verdict: ProbeVerdict,
    /// `-log |a_n| r^{-n}` for `n` in the window `[N/4, N]`.
    pub window_start: usize,
    pub tail: Vec<Exponent>,
}

/// Solves `(d - a) f = 1/(S - c)` in principal parts at the smallest hole and
/// classifies the growth of `|a_n| r^{-n}`.
///
/// The classification compares the minimum of the exponents over `[N/4, N/2)`
/// with that over `[N/2, N]`: a strict rise means the coefficients shrink
/// geometrically (convergent, `a` outside the spectrum); otherwise they stay
/// bounded away from zero or grow.
pub fn annulus_resolvent_probe(a: &Scalar, dom: &DomainSpec, f: &FieldSpec, n: usize) -> Result<AnnulusProbe> {
    dom.validate(f)?;
    f.check_scalar(a)?;
    let DomainSpec::Affinoid { holes, .. } = dom else {
        return Err(Error::Precondition("the annulus probe needs an affinoid with holes".into()));
    };
    if a.is_zero() {
        return Err(Error::Precondition("a = 0 always lies in the spectrum; probe skipped".into()));
    }
    if n < 8 {
        return Err(Error::DegenerateTruncation(format!("window of {n} terms is too short")));
    }
    let hole: &DiskParams = holes
        .iter()
        .max_by(|x, y| x.radius_exp.cmp(&y.radius_exp))
        .expect("validated affinoid has holes");
    let rho1 = &hole.radius_exp;

    // coefficient of (S - c)^{-m}: -(m-1) a_{m-1} - a a_m = b_m, b_1 = 1
    let mut coeffs = vec![Scalar::zero(), -&Scalar::one().try_div(a)?];
    for m in 2..=n {
        let prev = coeffs[m - 1].scale(&BigRational::from_integer((m as i64 - 1).into()));
        coeffs.push(-&prev.try_div(a)?);
    }
    let size = |m: usize| &f.val(&coeffs[m]) - &rho1.scale_int(m as i64);
    let start = n / 4;
    let tail: Vec<Exponent> = (start..=n).map(size).collect();
    let mid = n / 2 - start;
    let early = tail[..mid].iter().min().expect("nonempty window");
    let late = tail[mid..].iter().min().expect("nonempty window");
    let verdict = if late > early {
        ProbeVerdict::Converges
    } else {
        ProbeVerdict::Diverges
    };
    Ok(AnnulusProbe {
        verdict,
        window_start: start,
        tail,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResolventProbe {
    /// `(n, -log ‖(d - a)^{-n}‖^{1/n})`
    pub estimates: Vec<(u64, Exponent)>,
    /// `-log` of the resolvent radius, i.e. the exponent of `1 / ‖(d-a)^{-n}‖^{1/n}` at the last `n`.
    pub radius_exp: Exponent,
    /// Exponent of the distance from `a` to the closed-form spectrum.
    pub separation_exp: Exponent,
}

/// Inverts `d - a` on polynomials of degree `≤ N` around the domain center,
/// iterates it `n = 1, 2, 4, …, N` times and reads off `‖(d - a)^{-n}‖^{1/n}`,
/// whose inverse tends to the radius of the largest open disk around `a`
/// missing the spectrum.
pub fn resolvent_radius_probe(a: &Scalar, dom: &DomainSpec, f: &FieldSpec, n: usize) -> Result<ResolventProbe> {
    let spectrum = derivation_spectrum(dom, f)?;
    f.check_scalar(a)?;
    let separation_exp = match spectrum.separation(a) {
        Separation::Contained => return Err(Error::InsideSpectrum),
        Separation::Distance(e) => e,
    };
    let rho = match dom {
        DomainSpec::ClosedDisk { radius_exp, .. } => radius_exp.clone(),
        DomainSpec::Point { point: p @ BerkPoint::Shilov { .. } } => p.radius_exp(),
        _ => return Err(Error::Unsupported("the resolvent probe runs on disks and type-2/3 points".into())),
    };
    if n == 0 {
        return Err(Error::DegenerateTruncation("empty truncation".into()));
    }

    // d shifts the divided powers e_j = (S - c)^j / j!, so every power of
    // (d - a)^{-1} is Toeplitz in that basis: (d - a)^{-k} e_j = Σ_m u_m e_{j-m}.
    // The entry of (S - c)^{j-m} in the image of (S - c)^j is u_m j! / (j-m)!.
    let fact: Vec<Exponent> = (0..=n as u64).map(|j| f.factorial_valuation(j)).collect();
    // min over j ≥ m of -log |j! / (j-m)!|
    let falling: Vec<Exponent> = (0..=n)
        .map(|m| (m..=n).map(|j| &fact[j] - &fact[j - m]).min().expect("m ≤ n"))
        .collect();
    let mut u = vec![Scalar::zero(); n + 1];
    u[0] = Scalar::one();
    let mut estimates = Vec::new();
    let mut next_report = 1;
    for k in 1..=n as u64 {
        u = shift_solve(a, &u)?;
        if k == next_report || k == n as u64 {
            let norm = u
                .iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(m, x)| &(&f.val(x) + &falling[m]) - &rho.scale_int(m as i64))
                .min()
                .expect("invertible");
            estimates.push((k, norm.scale(&BigRational::new(1.into(), (k as i64).into()))));
            next_report *= 2;
        }
    }
    let radius_exp = -&estimates.last().expect("n ≥ 1").1;
    Ok(ResolventProbe {
        estimates,
        radius_exp,
        separation_exp,
    })
}

/// Solves `(d - a) y = x` in offsets from the top divided power, where `d`
/// moves offset `m` to `m + 1`: `y_m = (y_{m-1} - x_m) / a`.
fn shift_solve(a: &Scalar, x: &[Scalar]) -> Result<Vec<Scalar>> {
    let mut y: Vec<Scalar> = Vec::with_capacity(x.len());
    for (m, xm) in x.iter().enumerate() {
        let prev = if m == 0 { Scalar::zero() } else { y[m - 1].clone() };
        y.push((&prev - xm).try_div(a)?);
    }
    Ok(y)
}
