use std::f64::consts::PI;

use horo_core::atlas::{atlas_map, DomainSpec, PrimeEndRef};
use horo_core::horocycle::{
    basepoint_shift, busemann, busemann_sequential, horocycle_contains, horocycle_invariance_check, GeneralHorocycle, Membership,
};
use horo_core::metric::pull_distance;
use horo_core::model::{disc_busemann, horodisc_contains, BoundaryPoint, DiscPoint, HorocycleDisc};
use horo_core::sampling::sample_interior;
use horo_core::Complex;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn c(re: f64, im: f64) -> Complex {
    Complex::new(re, im)
}

fn unbounded() -> Vec<DomainSpec> {
    vec![
        DomainSpec::RightHalfPlane,
        DomainSpec::UpperHalfPlane,
        DomainSpec::shifted(2.0),
        DomainSpec::sector(1.0, c(0.0, 1.0)),
        DomainSpec::koebe(c(1.0, 1.0)),
        DomainSpec::affine(DomainSpec::koebe(c(0.0, 0.0)), c(1.0, 0.0), c(3.0, -2.0)),
    ]
}

fn pts(spec: &DomainSpec, seed: u64, n: usize) -> Vec<Complex> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| sample_interior(spec, &mut rng)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn half_plane_horocycles_are_half_planes(x in -8.0f64..8.0, y in -50.0f64..50.0, r in prop::sample::select(vec![0.5, 1.0, 2.0, 10.0])) {
        let z = c(x.exp(), y);
        let h = GeneralHorocycle::new(DomainSpec::RightHalfPlane, PrimeEndRef::Infinity, c(1.0, 0.0), r).unwrap();
        let b = busemann(&DomainSpec::RightHalfPlane, c(1.0, 0.0), &PrimeEndRef::Infinity, z).unwrap();
        prop_assert!((b + 0.5 * z.re.ln()).abs() <= 1e-12 * (1.0 + b.abs()));
        match h.membership(z).unwrap() {
            Membership::Inside => prop_assert!(z.re > 1.0 / r),
            Membership::Outside => prop_assert!(z.re < 1.0 / r),
            Membership::Indeterminate => prop_assert!((z.re * r).ln().abs() < 1e-8),
        }
    }

    #[test]
    fn disc_horocycles_match_the_classical_formula(t in 0.0f64..2.0 * PI, rho in 0.0f64..0.999, th in 0.0f64..2.0 * PI, r in 0.01f64..20.0) {
        let sigma = Complex::from_polar(1.0, t);
        let z = Complex::from_polar(rho, th);
        let b = busemann(&DomainSpec::Disc, c(0.0, 0.0), &PrimeEndRef::Finite(sigma), z).unwrap();
        let classical = disc_busemann(BoundaryPoint::new(sigma).unwrap(), DiscPoint::new(z).unwrap());
        prop_assert!((b - classical).abs() <= 1e-9 * (1.0 + classical.abs()), "{b} vs {classical}");
        let h = GeneralHorocycle::new(DomainSpec::Disc, PrimeEndRef::Finite(sigma), c(0.0, 0.0), r).unwrap();
        let e = HorocycleDisc::new(BoundaryPoint::new(sigma).unwrap(), r).unwrap();
        let inside = horodisc_contains(&e, DiscPoint::new(z).unwrap());
        match h.membership(z).unwrap() {
            Membership::Inside => prop_assert!(inside),
            Membership::Outside => prop_assert!(!inside),
            Membership::Indeterminate => {}
        }
    }

    #[test]
    fn horocycles_are_nested(idx in 0..6usize, seed in any::<u64>(), r in 0.01f64..10.0, grow in 1.0f64..100.0) {
        let spec = &unbounded()[idx];
        let base = spec.canonical_point();
        let small = GeneralHorocycle::new(spec.clone(), PrimeEndRef::Infinity, base, r).unwrap();
        let large = GeneralHorocycle::new(spec.clone(), PrimeEndRef::Infinity, base, r * grow).unwrap();
        for z in pts(spec, seed, 20) {
            if horocycle_contains(&small, z).unwrap() {
                prop_assert!(horocycle_contains(&large, z).unwrap());
            }
        }
    }

    #[test]
    fn base_point_changes_are_bounded_by_the_distance(idx in 0..6usize, seed in any::<u64>()) {
        let spec = &unbounded()[idx];
        let p = pts(spec, seed, 3);
        let a = basepoint_shift(spec, p[0], p[1], &PrimeEndRef::Infinity).unwrap();
        prop_assert!(0.5 * a.ln().abs() <= pull_distance(spec, p[0], p[1]).unwrap() + 1e-9);
        // the shifted horocycle is the same set
        let r = 1.7;
        let h0 = GeneralHorocycle::new(spec.clone(), PrimeEndRef::Infinity, p[0], r).unwrap();
        let h1 = GeneralHorocycle::new(spec.clone(), PrimeEndRef::Infinity, p[1], a * r).unwrap();
        prop_assert!((h0.level(p[2]).unwrap() - h1.level(p[2]).unwrap()).abs() <= 1e-9 * (1.0 + h0.level(p[2]).unwrap().abs()));
    }

    #[test]
    fn sequential_limits_agree_with_the_closed_form(idx in 0..6usize, seed in any::<u64>()) {
        let spec = &unbounded()[idx];
        let p = pts(spec, seed, 2);
        let exact = busemann(spec, p[0], &PrimeEndRef::Infinity, p[1]).unwrap();
        let seq = busemann_sequential(spec, p[0], &PrimeEndRef::Infinity, p[1], 40).unwrap();
        prop_assert!((exact - seq).abs() <= 1e-6 * (1.0 + exact.abs()), "{exact} vs {seq}");
    }
}

#[test]
fn example_values() {
    let h = DomainSpec::RightHalfPlane;
    let one = c(1.0, 0.0);
    let e = GeneralHorocycle::new(h.clone(), PrimeEndRef::Infinity, one, 2.0).unwrap();
    assert!(horocycle_contains(&e, c(3.0, 0.0)).unwrap());
    // the horocycle of radius R about infinity is {Re z > 1/R}
    assert!(horocycle_contains(&e, c(1.0, 5.0)).unwrap());
    assert!(!horocycle_contains(&e, c(0.49, 5.0)).unwrap());
    assert!((busemann(&h, one, &PrimeEndRef::Infinity, c(4.0, 0.0)).unwrap() + 0.5 * 4f64.ln()).abs() < 1e-15);
    assert!((basepoint_shift(&h, one, c(4.0, 0.0), &PrimeEndRef::Infinity).unwrap() - 4.0).abs() < 1e-12);
    assert_eq!(basepoint_shift(&h, one, one, &PrimeEndRef::Infinity).unwrap(), 1.0);
    let d = DomainSpec::Disc;
    let sigma = PrimeEndRef::Finite(one);
    assert_eq!(busemann(&d, c(0.0, 0.0), &sigma, c(0.0, 0.0)).unwrap(), 0.0);
    assert!((busemann(&d, c(0.0, 0.0), &sigma, c(0.5, 0.0)).unwrap() - 0.5 * (1.0f64 / 3.0).ln()).abs() < 1e-12);
    let unit = GeneralHorocycle::new(d, sigma, c(0.0, 0.0), 1.0).unwrap();
    assert!(!horocycle_contains(&unit, c(0.0, 0.0)).unwrap());
    assert_eq!(unit.membership(c(0.0, 0.0)).unwrap(), Membership::Indeterminate);
    assert!(GeneralHorocycle::new(DomainSpec::RightHalfPlane, PrimeEndRef::Infinity, one, 0.0).is_err());
}

#[test]
fn horocycles_are_conformally_invariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let cayley = atlas_map(&DomainSpec::Disc, &DomainSpec::RightHalfPlane).unwrap();
    for r in [0.5, 1.0, 2.0, 10.0] {
        let e = GeneralHorocycle::new(DomainSpec::Disc, PrimeEndRef::Finite(c(1.0, 0.0)), c(0.0, 0.0), r).unwrap();
        assert_eq!(horocycle_invariance_check(&cayley, &e, 2000, &mut rng).unwrap(), 0);
        // the image is centred at infinity with base point C(0) = 1
        let pushed = horo_core::horocycle::push_horocycle(&cayley, &e).unwrap();
        assert_eq!(pushed.center(), PrimeEndRef::Infinity);
        assert_eq!(pushed.base(), c(1.0, 0.0));
    }
    let k = DomainSpec::koebe(c(0.0, 0.0));
    let moved = DomainSpec::affine(k.clone(), c(1.0, 0.0), c(2.0, 1.0));
    let f = atlas_map(&k, &moved).unwrap();
    let e = GeneralHorocycle::new(k.clone(), PrimeEndRef::Infinity, c(0.0, 1.0), 3.0).unwrap();
    assert_eq!(horocycle_invariance_check(&f, &e, 2000, &mut rng).unwrap(), 0);
    let id = atlas_map(&k, &k).unwrap();
    assert_eq!(horocycle_invariance_check(&id, &e, 2000, &mut rng).unwrap(), 0);
    let wrong = atlas_map(&DomainSpec::Disc, &k).unwrap();
    assert!(horocycle_invariance_check(&wrong, &e, 10, &mut rng).is_err());
}
