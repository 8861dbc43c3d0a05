//! Disk calculus on the Berkovich affine line.
//!
//! Every region is a finite union of closed disks and closures of open disks;
//! points are rigid, Shilov (`x_{c,r}`) or type-4 stand-ins. All comparisons
//! reduce to valuations of center differences against radius exponents.

pub mod disk;
pub mod neighborhood;
pub mod point;
pub mod spectrum;

pub use disk::{Disk, DiskKind};
pub use neighborhood::{neighborhood_member, open_disk_of, Neighborhood, Region};
pub use point::{BerkPoint, FamilyDisk};
pub use spectrum::{Separation, Spectrum};

#[cfg(test)]
mod props {
    use num_rational::BigRational;
    use proptest::prelude::*;

    use super::*;
    use crate::valcore::{Exponent, FieldSpec, Poly, Scalar};

    fn f2() -> FieldSpec {
        FieldSpec::p_adic(2).unwrap()
    }

    fn rational() -> impl Strategy<Value = BigRational> {
        (-40i64..=40, prop::sample::select(vec![1i64, 2, 3, 4, 8, 16])).prop_map(|(n, d)| BigRational::new(n.into(), d.into()))
    }

    fn scalar2() -> impl Strategy<Value = Scalar> {
        (rational(), rational(), any::<bool>()).prop_map(|(u, v, quad)| {
            if quad {
                Scalar::quadratic(u, v, 2)
            } else {
                Scalar::from_rational(u)
            }
        })
    }

    fn exponent() -> impl Strategy<Value = Exponent> {
        (-6i64..=6, prop::sample::select(vec![1i64, 2]), prop::sample::select(vec![0i64, 0, 1, -1])).prop_map(|(a, d, b)| {
            Exponent::new(BigRational::new(a.into(), d.into()), BigRational::from_integer(b.into()))
        })
    }

    fn disk() -> impl Strategy<Value = Disk> {
        (scalar2(), exponent(), any::<bool>()).prop_map(|(c, e, closed)| {
            if closed {
                Disk::closed(c, e)
            } else {
                Disk::closure_open(c, e)
            }
        })
    }

    fn point() -> impl Strategy<Value = BerkPoint> {
        prop_oneof![
            scalar2().prop_map(BerkPoint::rigid),
            (scalar2(), exponent()).prop_map(|(c, e)| BerkPoint::shilov(c, e)),
        ]
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(500))]

        #[test]
        fn normalize_is_order_free_and_idempotent(
            disks in prop::collection::vec(disk(), 1..7),
            seed in any::<u64>(),
        ) {
            let f = f2();
            let a = Spectrum::normalize(&f, disks.clone()).unwrap();
            let mut shuffled = disks;
            let n = shuffled.len();
            for i in 0..n {
                shuffled.swap(i, (seed as usize).wrapping_mul(31).wrapping_add(i * 7) % n);
            }
            let b = Spectrum::normalize(&f, shuffled).unwrap();
            prop_assert_eq!(&a, &b);
            let again = Spectrum::normalize(&f, a.disks().to_vec()).unwrap();
            prop_assert_eq!(&a, &again);
            // pairwise: nested never, otherwise disjoint or touching
            for (i, x) in a.disks().iter().enumerate() {
                for y in &a.disks()[i + 1..] {
                    prop_assert!(!x.is_subset_of(&f, y) && !y.is_subset_of(&f, x));
                }
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn membership_survives_normalize(
            disks in prop::collection::vec(disk(), 1..6),
            pts in prop::collection::vec(point(), 1..6),
        ) {
            let f = f2();
            let sp = Spectrum::normalize(&f, disks.clone()).unwrap();
            for pt in &pts {
                let raw = disks.iter().any(|d| d.contains_point(&f, pt));
                prop_assert_eq!(raw, sp.contains_point(pt));
            }
        }

        #[test]
        fn enclosing_radius_is_the_max(disks in prop::collection::vec(disk(), 1..6)) {
            let f = f2();
            let sp = Spectrum::normalize(&f, disks.clone()).unwrap();
            let brute = disks
                .iter()
                .flat_map(|d| [f.val(d.center()), d.radius_exp().clone()])
                .min()
                .unwrap();
            prop_assert_eq!(sp.enclosing_radius_exp(), brute);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]

        #[test]
        fn poly_image_is_sound(
            coeffs in prop::collection::vec(-12i64..=12, 2..6),
            center in -8i64..=8,
            rexp in -2i64..=3,
            units in prop::collection::vec((-9i64..=9).prop_map(|k| 2 * k + 1), 8),
            depth in prop::collection::vec(0i64..4, 8),
        ) {
            let f = f2();
            let mut coeffs = coeffs;
            if coeffs[1..].iter().all(|&c| c == 0) {
                coeffs[1] = 1;
            }
            let q = Poly::from_ints(&coeffs);
            let a = Scalar::from_int(center);
            let d = Disk::closed(a.clone(), Exponent::int(rexp));
            let img = d.poly_image(&f, &q).unwrap();
            let p_r = f.realize(&Exponent::int(rexp)).unwrap();
            for (u, k) in units.iter().zip(&depth) {
                let t = &a + &(&p_r * &Scalar::from_int(u << k));
                prop_assert!(d.contains_rigid(&f, &t));
                prop_assert!(img.contains_rigid(&f, &q.eval(&t)));
            }
            // a strictly dominant Taylor term is attained at |t - a| = R
            let shifted = q.taylor_shift(&a);
            let terms: Vec<Exponent> = shifted.coeffs().iter().enumerate().skip(1)
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| &f.val(c) + &Exponent::int(rexp * i as i64))
                .collect();
            let best = terms.iter().min().unwrap();
            if terms.iter().filter(|t| *t == best).count() == 1 {
                let t = &a + &p_r;
                prop_assert_eq!(&f.val(&(&q.eval(&t) - &q.eval(&a))), img.radius_exp());
            }
        }
    }
}
