use std::f64::consts::PI;
use std::sync::Arc;

use horo_core::curve::{CurvePath, SampledCurve};
use horo_core::model::{
    curve_length, dist_disc, dist_halfplane, dist_model, geodesic_model, hyperbolic_density, orthogonality_angle, BoundaryPoint, DiscPoint,
    HalfPlanePoint, ModelDomain,
};
use horo_core::Complex;
use proptest::prelude::*;

fn hp(z: Complex) -> HalfPlanePoint {
    HalfPlanePoint::new(z).unwrap()
}

fn k(z: Complex, w: Complex) -> f64 {
    dist_halfplane(hp(z), hp(w))
}

fn half_plane_point() -> impl Strategy<Value = Complex> {
    (-6.0f64..6.0, -8.0f64..8.0).prop_map(|(l, y)| Complex::new(l.exp(), y))
}

fn disc_point() -> impl Strategy<Value = Complex> {
    (0.0f64..0.999, 0.0f64..2.0 * PI).prop_map(|(r, t)| Complex::from_polar(r, t))
}

/// The textbook closed form `artanh |(z - w)/(z + conj w)|`.
fn log_form(z: Complex, w: Complex) -> f64 {
    let rho = ((z - w) / (z + w.conj())).norm();
    0.5 * ((1.0 + rho) / (1.0 - rho)).ln()
}

fn ray_arc(beta: f64) -> CurvePath {
    // unit-speed in log(rho)
    Arc::new(move |s: f64| {
        let p = Complex::from_polar(s.exp(), beta);
        (p, p)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn half_plane_metric_axioms(z in half_plane_point(), w in half_plane_point(), v in half_plane_point()) {
        let (d, e) = (k(z, w), k(w, z));
        prop_assert_eq!(d, e);
        prop_assert!(d >= 0.0);
        prop_assert!(k(z, v) <= k(z, w) + k(w, v) + 1e-12 * (1.0 + k(z, v)));
        prop_assert_eq!(k(z, z), 0.0);
    }

    #[test]
    fn disc_metric_axioms(z in disc_point(), w in disc_point(), v in disc_point()) {
        let d = |a: Complex, b: Complex| dist_disc(DiscPoint::new(a).unwrap(), DiscPoint::new(b).unwrap());
        prop_assert_eq!(d(z, w), d(w, z));
        prop_assert!(d(z, w) >= 0.0);
        prop_assert!(d(z, v) <= d(z, w) + d(w, v) + 1e-12 * (1.0 + d(z, v)));
    }

    #[test]
    fn closed_forms_agree(z in half_plane_point(), w in half_plane_point()) {
        let d = k(z, w);
        prop_assume!(d < 15.0);
        prop_assert!((d - log_form(z, w)).abs() <= 1e-9 * d.max(1e-3));
    }

    #[test]
    fn cayley_transfers_distances(z in disc_point(), w in disc_point()) {
        let d = dist_model(ModelDomain::Disc, z, w).unwrap();
        let c = |x: Complex| (1.0 + x) / (1.0 - x);
        let e = k(c(z), c(w));
        prop_assert!((d - e).abs() <= 1e-9 * d.max(1.0));
    }

    #[test]
    fn geodesics_have_length_equal_to_distance(z in half_plane_point(), w in half_plane_point()) {
        prop_assume!(z != w && k(z, w) < 25.0);
        let g = geodesic_model(ModelDomain::HalfPlane, z, w).unwrap();
        let len = curve_length(&g, ModelDomain::HalfPlane).unwrap();
        let d = k(z, w);
        prop_assert!((len - d).abs() <= 1e-8 * d.max(1.0), "length {len} distance {d}");
    }

    #[test]
    fn disc_geodesics_have_length_equal_to_distance(z in disc_point(), w in disc_point()) {
        prop_assume!(z != w);
        let g = geodesic_model(ModelDomain::Disc, z, w).unwrap();
        let len = curve_length(&g, ModelDomain::Disc).unwrap();
        let d = dist_model(ModelDomain::Disc, z, w).unwrap();
        prop_assert!((len - d).abs() <= 1e-8 * d.max(1.0));
    }

    #[test]
    fn ray_arcs_have_logarithmic_length(beta in -1.5f64..1.5, a in -5.0f64..5.0, span in 0.01f64..8.0) {
        let curve = SampledCurve::from_path(a, a + span, 9, ray_arc(beta)).unwrap();
        let len = curve_length(&curve, ModelDomain::HalfPlane).unwrap();
        let exact = span / (2.0 * beta.cos());
        prop_assert!((len - exact).abs() <= 1e-8 * exact.max(1.0));
    }

    #[test]
    fn leaving_the_real_axis_costs_at_least(r0 in 0.01f64..100.0, r1 in 0.01f64..100.0, beta in -1.5f64..1.5) {
        let re = |x: f64| Complex::new(x, 0.0);
        let gain = k(re(r0), Complex::from_polar(r1, beta)) - k(re(r0), re(r1));
        prop_assert!(gain >= 0.5 * (1.0 / beta.cos()).ln() - 1e-12);
    }

    #[test]
    fn distance_to_a_ray_is_minimal_at_the_same_modulus(
        alpha in -1.5f64..1.5, beta in -1.5f64..1.5, l0 in -4.0f64..4.0
    ) {
        let r0 = l0.exp();
        let target = Complex::from_polar(r0, beta);
        // log-spaced grid with r0 at its centre
        let n = 41;
        let values: Vec<f64> = (0..n)
            .map(|j| k(Complex::from_polar(r0 * ((j as f64 - 20.0) * 0.1).exp(), alpha), target))
            .collect();
        let argmin = (0..n).min_by(|&i, &j| values[i].total_cmp(&values[j])).unwrap();
        prop_assert_eq!(argmin, 20);
        for j in 0..20 {
            prop_assert!(values[j] >= values[j + 1] - 1e-12);
        }
        for j in 20..n - 1 {
            prop_assert!(values[j + 1] >= values[j] - 1e-12);
        }
    }

    #[test]
    fn arc_distance_is_scale_free(t0 in -1.5f64..1.5, t1 in -1.5f64..1.5, l in -10.0f64..10.0) {
        let d1 = k(Complex::from_polar(1.0, t0), Complex::from_polar(1.0, t1));
        let dr = k(Complex::from_polar(l.exp(), t0), Complex::from_polar(l.exp(), t1));
        prop_assert!((d1 - dr).abs() <= 1e-12 * d1.max(1.0));
    }

    #[test]
    fn arc_distance_grows_with_the_angle(a in 0.0f64..1.5, b in 0.0f64..1.5) {
        prop_assume!(a < b);
        let one = Complex::new(1.0, 0.0);
        let f = |t: f64| k(one, Complex::from_polar(1.0, t));
        prop_assert!(f(a) < f(b));
        prop_assert_eq!(f(a), f(-a));
    }

    #[test]
    fn angles_never_shorten_radial_distance(
        r0 in 0.01f64..100.0, r1 in 0.01f64..100.0, b0 in -1.5f64..1.5, b1 in -1.5f64..1.5
    ) {
        let d = k(Complex::from_polar(r0, b0), Complex::from_polar(r1, b1));
        prop_assert!(d >= k(Complex::new(r0, 0.0), Complex::new(r1, 0.0)) - 1e-12);
    }

    #[test]
    fn radial_points_have_zero_angle(t in 0.0f64..2.0 * PI, r in 0.0001f64..0.9999) {
        let sigma = BoundaryPoint::new(Complex::from_polar(1.0, t)).unwrap();
        let zeta = DiscPoint::new(sigma.value() * r).unwrap();
        prop_assert_eq!(orthogonality_angle(sigma, zeta), 0.0);
    }
}

#[test]
fn example_values() {
    let one = Complex::new(1.0, 0.0);
    assert!((k(one, Complex::new(std::f64::consts::E, 0.0)) - 0.5).abs() < 1e-15);
    let golden = ((1.0 + 5f64.sqrt()) / 2.0).ln();
    assert!((k(one, Complex::new(1.0, 1.0)) - golden).abs() < 1e-15);
    assert!((k(one, Complex::new(1.0, 1.0)) - 0.481_211_825).abs() < 1e-9);
    let half = dist_model(ModelDomain::Disc, Complex::new(0.0, 0.0), Complex::new(0.5, 0.0)).unwrap();
    assert!((half - 0.5 * 3f64.ln()).abs() < 1e-15);
    assert!((half - 0.5f64.atanh()).abs() < 1e-15);
    assert_eq!(hyperbolic_density(ModelDomain::Disc, Complex::new(0.0, 0.0)).unwrap(), 1.0);
    assert!((hyperbolic_density(ModelDomain::Disc, Complex::new(0.5, 0.0)).unwrap() - 4.0 / 3.0).abs() < 1e-15);
    assert_eq!(hyperbolic_density(ModelDomain::HalfPlane, one).unwrap(), 0.5);
    assert!(HalfPlanePoint::new(Complex::new(-1.0, 0.0)).is_err());
}

#[test]
fn half_plane_density_is_the_derivative_of_distance() {
    // d/dx k(1, x) at x = 1, from the right
    let h = 1e-7;
    let one = Complex::new(1.0, 0.0);
    let slope = k(one, Complex::new(1.0 + h, 0.0)) / h;
    assert!((slope - hyperbolic_density(ModelDomain::HalfPlane, one).unwrap()).abs() < 1e-6);
}

#[test]
fn sixty_degree_ray_arc_has_unit_length() {
    let curve = SampledCurve::from_path(0.0, 1.0, 5, ray_arc(PI / 3.0)).unwrap();
    assert!((curve_length(&curve, ModelDomain::HalfPlane).unwrap() - 1.0).abs() < 1e-10);
}
