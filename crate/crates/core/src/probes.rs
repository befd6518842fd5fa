//! Numerical probes for the constants that control geodesics of domains
//! sandwiched as `H + 1 ⊆ D ⊆ H`.
//!
//! `K(beta)` bounds the distance in `H + 1` across the arc
//! `{rho e^{i theta} : |theta| <= beta}` for `rho >= 2`; `alpha_beta = 1/sin^2 beta`
//! is the real threshold beyond which geodesics joining real points stay in
//! the sector `V(beta)`.

use core::f64::consts::{FRAC_PI_2, FRAC_PI_4};

// float math for no_std; shadowed by inherent methods when std is linked
#[allow(unused_imports)]
use num_traits::Float;
use rand::Rng;

use crate::atlas::DomainSpec;
use crate::metric::{geodesic_join_sampled, pull_distance};
use crate::model::halfplane_distance;
use crate::{Complex, Error, Result};

/// Samples per geodesic in the step-2 to step-4 probes.
const PROBE_SAMPLES: usize = 257;

fn check_beta(beta: f64, upper: f64) -> Result<()> {
    if beta > 0.0 && beta < upper {
        Ok(())
    } else {
        Err(Error::InvalidParameter { name: "sector half-angle", value: beta })
    }
}

/// Sine of the largest auxiliary angle, `2 sin beta / |2 e^{i beta} - 1|`.
pub fn step1_auxiliary_sine(beta: f64) -> f64 {
    2.0 * beta.sin() / (Complex::from_polar(2.0, beta) - 1.0).norm()
}

/// The uniform constant `K(beta)` for `beta in (0, pi/4)`:
/// twice the half-plane distance across the arc of half-angle `theta`
/// (with `sin theta` from [`step1_auxiliary_sine`]) plus
/// `2 sqrt((5 - 2 sqrt 2)/(3 - 2 sqrt 2)) log |2 e^{i beta} - 1|`.
pub fn step1_bound(beta: f64) -> Result<f64> {
    check_beta(beta, FRAC_PI_4)?;
    let theta = step1_auxiliary_sine(beta).asin();
    let arcs = 2.0 * halfplane_distance(Complex::from_polar(1.0, theta), Complex::from_polar(1.0, -theta));
    let s2 = 2f64.sqrt();
    let factor = ((5.0 - 2.0 * s2) / (3.0 - 2.0 * s2)).sqrt();
    let radial = 2.0 * factor * (Complex::from_polar(2.0, beta) - 1.0).norm().ln();
    Ok(arcs + radial)
}

/// Result of a Monte Carlo probe of the step-1 bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Step1Probe {
    pub beta: f64,
    pub bound: f64,
    /// Largest sampled distance.
    pub max_distance: f64,
    /// Sample attaining it, `(rho, theta0, theta1)`.
    pub witness: (f64, f64, f64),
    pub samples: usize,
}

impl Step1Probe {
    pub fn holds(&self) -> bool {
        self.max_distance <= self.bound
    }
}

/// Samples `rho >= 2` (log-uniform up to `2 * 10^6`) and `theta0, theta1`
/// uniform in `[-beta, beta]` and records the largest distance in `H + 1`.
pub fn step1_probe<R: Rng + ?Sized>(beta: f64, samples: usize, rng: &mut R) -> Result<Step1Probe> {
    let bound = step1_bound(beta)?;
    let u = DomainSpec::shifted(1.0);
    let mut best = Step1Probe { beta, bound, max_distance: 0.0, witness: (2.0, 0.0, 0.0), samples };
    for _ in 0..samples {
        let rho = 2.0 * (6.0 * 10f64.ln() * rng.gen::<f64>()).exp();
        let t0 = beta * (2.0 * rng.gen::<f64>() - 1.0);
        let t1 = beta * (2.0 * rng.gen::<f64>() - 1.0);
        let d = pull_distance(&u, Complex::from_polar(rho, t0), Complex::from_polar(rho, t1))?;
        if d > best.max_distance {
            best.max_distance = d;
            best.witness = (rho, t0, t1);
        }
    }
    Ok(best)
}

/// `alpha_beta = 1/(1 - cos^2 beta) = 1/sin^2 beta`.
pub fn step2_threshold(beta: f64) -> Result<f64> {
    check_beta(beta, FRAC_PI_2)?;
    let s = beta.sin();
    Ok(1.0 / (s * s))
}

/// Whether the domain is one of the closed-form instances of `H + 1 ⊆ D ⊆ H`.
pub fn is_sandwiched(spec: &DomainSpec) -> bool {
    match spec {
        DomainSpec::RightHalfPlane => true,
        DomainSpec::ShiftedHalfPlane { offset } => *offset <= 1.0,
        DomainSpec::Affine { base, scale, translation } => {
            matches!(**base, DomainSpec::RightHalfPlane)
                && scale.im == 0.0
                && scale.re > 0.0
                && translation.im == 0.0
                && (0.0..=1.0).contains(&translation.re)
        }
        _ => false,
    }
}

fn require_sandwiched(spec: &DomainSpec) -> Result<()> {
    if is_sandwiched(spec) {
        Ok(())
    } else {
        Err(Error::InvalidDomain(alloc::format!("{} is not sandwiched between H + 1 and H", spec.kind_name())))
    }
}

fn require_order(x0: f64, x1: f64, floor: f64) -> Result<()> {
    if !(x0 >= floor) {
        return Err(Error::InvalidParameter { name: "probe start x0", value: x0 });
    }
    if !(x1 > x0) || !x1.is_finite() {
        return Err(Error::InvalidParameter { name: "probe end x1", value: x1 });
    }
    Ok(())
}

/// Whether every sample of the geodesic joining `x0` and `x1` lies in `V(beta)`.
pub fn step2_probe(spec: &DomainSpec, beta: f64, x0: f64, x1: f64) -> Result<bool> {
    require_sandwiched(spec)?;
    let alpha = step2_threshold(beta)?;
    require_order(x0, x1, alpha)?;
    let g = geodesic_join_sampled(spec, Complex::new(x0, 0.0), Complex::new(x1, 0.0), PROBE_SAMPLES)?;
    Ok(g.points().iter().all(|p| p.norm() > 0.0 && p.arg().abs() < beta))
}

/// Step-3 probe: `(min |sigma(t)|, x0 e^{-K(beta)})` along the geodesic from
/// `x0 >= 2` to `x1`. The claim is that the first strictly exceeds any `c`
/// below the second whenever the geodesic stays in `V(beta)`.
pub fn step3_probe(spec: &DomainSpec, beta: f64, x0: f64, x1: f64) -> Result<(f64, f64)> {
    require_sandwiched(spec)?;
    let k = step1_bound(beta)?;
    require_order(x0, x1, 2.0)?;
    let g = geodesic_join_sampled(spec, Complex::new(x0, 0.0), Complex::new(x1, 0.0), PROBE_SAMPLES)?;
    let min_mod = g.points().iter().map(|p| p.norm()).fold(f64::INFINITY, f64::min);
    Ok((min_mod, x0 * (-k).exp()))
}

/// Step-4 probe: `max_x min_t k(x, sigma(t))` for `x` on a grid of
/// `[x0, x1]`, the empirical shadowing distance of the real segment.
pub fn step4_probe(spec: &DomainSpec, x0: f64, x1: f64, grid: usize) -> Result<f64> {
    require_sandwiched(spec)?;
    require_order(x0, x1, 2.0)?;
    let (z0, z1) = (Complex::new(x0, 0.0), Complex::new(x1, 0.0));
    let g = geodesic_join_sampled(spec, z0, z1, PROBE_SAMPLES)?;
    let n = grid.max(2);
    let mut worst: f64 = 0.0;
    for i in 0..n {
        let x = Complex::new(x0 * (x1 / x0).powf(i as f64 / (n - 1) as f64), 0.0);
        let near = crate::metric::dist_to_curve(spec, x, &g)?;
        worst = worst.max(near);
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::FRAC_PI_6;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn bound_is_monotone_and_vanishes() {
        let k1 = step1_bound(0.1).unwrap();
        let k2 = step1_bound(0.2).unwrap();
        assert!(k1 < k2);
        let mut prev = f64::INFINITY;
        for j in 0..30 {
            let beta = 0.7 * 0.5f64.powi(j);
            let k = step1_bound(beta).unwrap();
            assert!(k < prev);
            prev = k;
        }
        assert!(prev < 1e-7);
        assert!(step1_bound(FRAC_PI_4).is_err());
        assert!(step1_bound(0.0).is_err());
    }

    #[test]
    fn auxiliary_sine_bounds_every_radius() {
        // sin of the auxiliary angle at radius rho is sin beta / |e^{i beta} - 1/rho|
        for beta in [0.05, 0.3, 0.7] {
            let cap = step1_auxiliary_sine(beta);
            for rho in [2.0, 3.0, 10.0, 1e4] {
                let s = beta.sin() / (Complex::from_polar(1.0, beta) - 1.0 / rho).norm();
                assert!(s <= cap + 1e-15);
            }
        }
    }

    #[test]
    fn monte_carlo_respects_bound() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for beta in [0.05, 0.2, 0.5, 0.78] {
            let p = step1_probe(beta, 2000, &mut rng).unwrap();
            assert!(p.holds(), "{p:?}");
        }
    }

    #[test]
    fn step2_examples() {
        assert!((step2_threshold(FRAC_PI_6).unwrap() - 4.0).abs() < 1e-14);
        assert!((step2_threshold(FRAC_PI_2 - 1e-9).unwrap() - 1.0).abs() < 1e-12);
        assert!(step2_threshold(FRAC_PI_2).is_err());
        let d = DomainSpec::shifted(0.5);
        assert!(step2_probe(&d, FRAC_PI_6, 4.0, 50.0).unwrap());
        assert!(step2_probe(&d, FRAC_PI_6, 3.0, 50.0).is_err());
        assert!(step2_probe(&DomainSpec::Disc, FRAC_PI_6, 4.0, 50.0).is_err());
    }

    #[test]
    fn step3_and_step4_probes() {
        let d = DomainSpec::RightHalfPlane;
        let (min_mod, c) = step3_probe(&d, 0.3, 2.0, 100.0).unwrap();
        assert!(min_mod > c);
        let gap = step4_probe(&d, 2.0, 100.0, 17).unwrap();
        assert!(gap < 1e-9);
    }
}
