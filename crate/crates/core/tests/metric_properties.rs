use std::f64::consts::{E, FRAC_PI_3, FRAC_PI_4, PI};
use std::sync::Arc;

use horo_core::atlas::{DomainSpec, PrimeEndRef};
use horo_core::curve::SampledCurve;
use horo_core::metric::{
    curve_length_in, dist_to_ray, geodesic_join, geodesic_ray, pull_distance, qg_certify, qg_certify_grid, shadowing_gap, HyperbolicSector,
};
use horo_core::probes::{step1_bound, step1_probe, step2_probe, step2_threshold, step3_probe, step4_probe};
use horo_core::sampling::sample_interior;
use horo_core::Complex;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn c(re: f64, im: f64) -> Complex {
    Complex::new(re, im)
}

fn domains() -> Vec<DomainSpec> {
    vec![
        DomainSpec::Disc,
        DomainSpec::RightHalfPlane,
        DomainSpec::UpperHalfPlane,
        DomainSpec::shifted(1.0),
        DomainSpec::sector(FRAC_PI_4, c(1.0, 0.0)),
        DomainSpec::sector(2.5, c(0.0, 1.0)),
        DomainSpec::koebe(c(0.0, 0.0)),
        DomainSpec::affine(DomainSpec::koebe(c(1.0, -1.0)), c(0.0, 2.0), c(0.5, 0.0)),
    ]
}

fn two_points(spec: &DomainSpec, seed: u64) -> (Complex, Complex) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let (z, w) = (sample_interior(spec, &mut rng), sample_interior(spec, &mut rng));
        let d = pull_distance(spec, z, w).unwrap();
        if d > 1e-3 && d < 12.0 && z.norm() < 1e6 && w.norm() < 1e6 {
            return (z, w);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rays_are_unit_speed(idx in 0..8usize, s in 0.0f64..20.0, t in 0.0f64..20.0) {
        let spec = &domains()[idx];
        let end = if matches!(spec, DomainSpec::Disc) { PrimeEndRef::Finite(c(0.0, 1.0)) } else { PrimeEndRef::Infinity };
        let ray = geodesic_ray(spec, spec.canonical_point(), &end).unwrap();
        let h = DomainSpec::RightHalfPlane;
        // normalized coordinates keep far ray points representable
        let d = pull_distance(&h, ray.normalized_point(s), ray.normalized_point(t)).unwrap();
        prop_assert!((d - (s - t).abs()).abs() <= 1e-8 * (1.0 + d), "{d} vs {}", (s - t).abs());
        let (s, t) = (s / 4.0, t / 4.0);
        let d = pull_distance(&h, ray.hub_point(s), ray.hub_point(t)).unwrap();
        prop_assert!((d - (s - t).abs()).abs() <= 1e-8 * (1.0 + d));
        let d = pull_distance(spec, ray.point(s), ray.point(t)).unwrap();
        prop_assert!((d - (s - t).abs()).abs() <= 1e-8 * (1.0 + d));
    }

    #[test]
    fn distance_to_a_ray_vanishes_on_it(idx in 0..8usize, t in 0.0f64..6.0, seed in any::<u64>()) {
        let spec = &domains()[idx];
        let end = if matches!(spec, DomainSpec::Disc) { PrimeEndRef::Finite(c(1.0, 0.0)) } else { PrimeEndRef::Infinity };
        let ray = geodesic_ray(spec, spec.canonical_point(), &end).unwrap();
        let on = dist_to_ray(spec, ray.point(t), &ray).unwrap();
        prop_assert!(on <= 1e-9, "{on}");
        let (z, _) = two_points(spec, seed);
        let off = dist_to_ray(spec, z, &ray).unwrap();
        prop_assert!(off >= 0.0);
        // never larger than the distance to any sampled ray point
        for k in 0..20 {
            let p = ray.point(0.5 * k as f64);
            prop_assert!(off <= pull_distance(spec, z, p).unwrap() + 1e-9);
        }
    }

    #[test]
    fn geodesics_certify_as_exact(idx in 0..8usize, seed in any::<u64>()) {
        let spec = &domains()[idx];
        let (z, w) = two_points(spec, seed);
        let g = geodesic_join(spec, z, w).unwrap();
        let len = curve_length_in(&g, spec).unwrap();
        let d = pull_distance(spec, z, w).unwrap();
        prop_assert!((len - d).abs() <= 1e-8 * d.max(1.0));
        let cert = qg_certify_grid(&g, spec, 1.0, 0.0, 96).unwrap();
        prop_assert!(cert.is_valid(), "defect {}", cert.max_defect);
        prop_assert!(cert.max_defect <= 1e-7);
    }
}

#[test]
fn distance_to_the_real_ray() {
    let h = DomainSpec::RightHalfPlane;
    let ray = geodesic_ray(&h, c(1.0, 0.0), &PrimeEndRef::Infinity).unwrap();
    let expected = 0.5 * (2.0 + 3f64.sqrt()).ln();
    let d = dist_to_ray(&h, Complex::from_polar(1.0, FRAC_PI_3), &ray).unwrap();
    assert!((d - expected).abs() < 1e-12);
    assert!((d - 0.658_479).abs() < 1e-6);
    for (rho, theta) in [(3.0, 0.4), (50.0, -1.2), (1e4, 1.0)] {
        let z = Complex::from_polar(rho, theta);
        let want = pull_distance(&h, c(1.0, 0.0), Complex::from_polar(1.0, theta)).unwrap();
        assert!((dist_to_ray(&h, z, &ray).unwrap() - want).abs() < 1e-10);
    }
}

#[test]
fn example_rays() {
    let h = DomainSpec::RightHalfPlane;
    let ray = geodesic_ray(&h, c(1.0, 0.0), &PrimeEndRef::Infinity).unwrap();
    for t in [0.1, 1.0, 3.0] {
        assert!((ray.point(t) - c((2.0 * t).exp(), 0.0)).norm() < 1e-12 * (2.0 * t).exp());
    }
    let disc = geodesic_ray(&DomainSpec::Disc, c(0.0, 0.0), &PrimeEndRef::Finite(c(1.0, 0.0))).unwrap();
    for t in [0.1, 1.0, 3.0] {
        assert!((disc.point(t) - c(t.tanh(), 0.0)).norm() < 1e-12);
    }
    let p = c(0.3, 0.2);
    let koebe = geodesic_ray(&DomainSpec::koebe(p), p + c(0.0, 1.0), &PrimeEndRef::Infinity).unwrap();
    for t in [0.1, 1.0, 3.0] {
        assert!((koebe.point(t) - (p + c(0.0, (4.0 * t).exp()))).norm() < 1e-12 * (4.0 * t).exp());
    }
    assert!(geodesic_ray(&DomainSpec::Disc, c(0.0, 0.0), &PrimeEndRef::Infinity).is_err());
}

#[test]
fn geodesic_certificates_and_arc_controls() {
    let h = DomainSpec::RightHalfPlane;
    let g = geodesic_join(&h, c(2.0, 1.0), c(2.0, -1.0)).unwrap();
    let cert = qg_certify(&g, &h, 1.0, 0.0).unwrap();
    assert!(cert.is_valid() && cert.max_defect <= 1e-7);
    // a circle arc around a boundary point of the disc is not a geodesic
    let disc_arc = SampledCurve::from_path(
        -FRAC_PI_4,
        FRAC_PI_4,
        129,
        Arc::new(|t: f64| {
            let p = Complex::from_polar(0.5, t);
            (p, c(0.0, 1.0) * p)
        }),
    )
    .unwrap();
    let cert = qg_certify(&disc_arc, &DomainSpec::Disc, 1.0, 0.0).unwrap();
    assert!(!cert.is_valid() && cert.max_defect > 1e-3);
    // in the half-plane the arc |z - 2| = 1 is not orthogonal to the boundary
    let off_centre = SampledCurve::from_path(
        -FRAC_PI_4,
        FRAC_PI_4,
        129,
        Arc::new(|t: f64| {
            let p = Complex::from_polar(1.0, t);
            (c(2.0, 0.0) + p, c(0.0, 1.0) * p)
        }),
    )
    .unwrap();
    let cert = qg_certify(&off_centre, &h, 1.0, 0.0).unwrap();
    assert!(!cert.is_valid() && cert.max_defect > 1e-3);
    assert!(qg_certify(&g, &h, 0.5, 0.0).is_err());
}

#[test]
fn half_plane_arcs_centred_on_the_axis_are_geodesics() {
    // {2 e^{i t}} meets the imaginary axis orthogonally
    let arc = SampledCurve::from_path(
        -FRAC_PI_4,
        FRAC_PI_4,
        129,
        Arc::new(|t: f64| {
            let p = Complex::from_polar(2.0, t);
            (p, c(0.0, 1.0) * p)
        }),
    )
    .unwrap();
    let cert = qg_certify(&arc, &DomainSpec::RightHalfPlane, 1.0, 0.0).unwrap();
    assert!(cert.max_defect.abs() <= 1e-7, "{}", cert.max_defect);
}

#[test]
fn sandwiched_segment_certifies_with_some_additive_constant() {
    // the real segment [1, e^4] viewed in {Re z > 1/2}, which sits between H + 1 and H
    let spec = DomainSpec::shifted(0.5);
    let seg = SampledCurve::from_path(
        0.0,
        4.0,
        65,
        Arc::new(|s: f64| {
            let p = c(s.exp(), 0.0);
            (p, p)
        }),
    )
    .unwrap();
    let exact = qg_certify(&seg, &spec, 1.0, 0.0).unwrap();
    // a straight segment on the symmetry axis is itself a geodesic
    assert!(exact.is_valid());
    let wavy = SampledCurve::from_path(
        0.0,
        4.0,
        65,
        Arc::new(|s: f64| {
            let x = s.exp();
            let p = c(x, 0.3 * x * (3.0 * s).sin());
            (p, c(x, 0.3 * x * ((3.0 * s).sin() + 3.0 * (3.0 * s).cos())))
        }),
    )
    .unwrap();
    let strict = qg_certify(&wavy, &spec, 1.0, 0.0).unwrap();
    assert!(!strict.is_valid());
    let relaxed = qg_certify(&wavy, &spec, 1.0, strict.max_defect).unwrap();
    assert!(relaxed.is_valid());
    assert!(relaxed.max_defect.abs() < 1e-12);
}

#[test]
fn shadowing_of_a_ray_by_itself() {
    for spec in domains() {
        let end = if matches!(spec, DomainSpec::Disc) { PrimeEndRef::Finite(c(1.0, 0.0)) } else { PrimeEndRef::Infinity };
        let ray = geodesic_ray(&spec, spec.canonical_point(), &end).unwrap();
        let curve = ray.to_curve(6.0, 33).unwrap();
        let (a, b) = shadowing_gap(&curve, &ray, &spec).unwrap();
        assert!(a <= 1e-9 && b <= 1e-9, "{spec:?}: {a} {b}");
    }
    // the reals from 1 in the Koebe domain against the vertical geodesic
    let k = DomainSpec::koebe(c(0.0, 0.0));
    let ray = geodesic_ray(&k, c(0.0, 1.0), &PrimeEndRef::Infinity).unwrap();
    let reals = SampledCurve::from_samples((0..40).map(|j| j as f64).collect(), (0..40).map(|j| c(1.0 + j as f64, 0.0)).collect()).unwrap();
    let (a, b) = shadowing_gap(&reals, &ray, &k).unwrap();
    assert!(a.is_finite() && b.is_finite() && a > 0.1);
}

#[test]
fn hyperbolic_sectors() {
    let h = DomainSpec::RightHalfPlane;
    let ray = geodesic_ray(&h, c(1.0, 0.0), &PrimeEndRef::Infinity).unwrap();
    let s = HyperbolicSector::new(ray, 0.7).unwrap();
    assert!(s.contains(Complex::from_polar(100.0, FRAC_PI_3)).unwrap());
    assert!(!s.contains(Complex::from_polar(100.0, 1.4)).unwrap());
}

#[test]
fn step_probes() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let betas: Vec<f64> = (1..=10).map(|j| 0.078 * j as f64).collect();
    let mut prev = 0.0;
    for &beta in &betas {
        let k = step1_bound(beta).unwrap();
        assert!(k > prev);
        prev = k;
        assert!(step1_probe(beta, 1000, &mut rng).unwrap().holds());
    }
    let top = *betas.last().unwrap();
    assert!(step1_bound(top / 100.0).unwrap() < step1_bound(top).unwrap() / 10.0);
    assert!((step2_threshold(PI / 6.0).unwrap() - 4.0).abs() < 1e-14);
    for spec in [DomainSpec::RightHalfPlane, DomainSpec::shifted(1.0), DomainSpec::shifted(0.25)] {
        for beta in [0.2, 0.6, 1.2] {
            let alpha = step2_threshold(beta).unwrap();
            assert!(step2_probe(&spec, beta, alpha, alpha * E.powi(5)).unwrap());
        }
        let (min_mod, c0) = step3_probe(&spec, 0.5, 2.0, 1e3).unwrap();
        assert!(min_mod > c0);
        assert!(step4_probe(&spec, 2.0, 1e3, 17).unwrap().is_finite());
    }
}
