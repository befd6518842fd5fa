//! Orthogonal convergence of sequences sandwiched by a horocycle.
//!
//! A scenario consists of domains `D ⊆ U`, a prime end `y` of `U`, a base
//! point `z0`, a radius `R` with `E_{z0}^U(y, R) ⊆ D`, and a sequence in `D`.
//! The sequence's preimages under the Riemann map of `D` converge
//! orthogonally exactly when its distance in `U` to a geodesic ray towards
//! `y` tends to zero. [`classify`] evaluates that criterion and checks it
//! against the direct angle test.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_2, PI};

// float math for no_std; shadowed by inherent methods when std is linked
#[allow(unused_imports)]
use num_traits::Float;
use rand::Rng;

use crate::atlas::{boundary_in_semistrip, starlike_at_infinity, DomainSpec, PrimeEndRef, Semistrip};
use crate::horocycle::{GeneralHorocycle, Membership};
use crate::metric::{dist_to_ray, geodesic_ray, GeodesicRay};
use crate::sampling::{sample_boundary, sample_interior};
use crate::{Complex, Error, Result};

/// How the inclusion `E_{z0}^U(y, R) ⊆ D ⊆ U` is justified.
#[derive(Debug, Clone, PartialEq)]
pub enum InclusionWitness {
    /// `D = U`: the inclusion is immediate.
    SameDomain,
    /// A user-supplied analytic argument, recorded verbatim.
    Declared(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SandwichScenario {
    pub inner: DomainSpec,
    pub outer: DomainSpec,
    pub center: PrimeEndRef,
    pub radius: f64,
    pub base: Complex,
    pub sequence: Vec<Complex>,
    pub witness: InclusionWitness,
}

/// Minimum growth of `k_U(z0, z_n)` between the first and last sequence
/// point for the sequence to count as escaping.
pub const ESCAPE_MARGIN: f64 = 0.5;

impl SandwichScenario {
    pub fn new(
        inner: DomainSpec,
        outer: DomainSpec,
        center: PrimeEndRef,
        radius: f64,
        base: Complex,
        sequence: Vec<Complex>,
        witness: InclusionWitness,
    ) -> Result<Self> {
        inner.validate()?;
        outer.validate()?;
        if witness == InclusionWitness::SameDomain && inner != outer {
            return Err(Error::ScenarioInvalid("same-domain witness with distinct domains".into()));
        }
        // validates the radius, base point and prime end
        GeneralHorocycle::new(outer.clone(), center, base, radius)?;
        if sequence.len() < 2 {
            return Err(Error::ScenarioInvalid("sequence needs at least two points".into()));
        }
        for &z in &sequence {
            inner.require_interior(z)?;
            outer.require_interior(z)?;
        }
        let first = crate::metric::pull_distance(&outer, base, sequence[0])?;
        let last = crate::metric::pull_distance(&outer, base, sequence[sequence.len() - 1])?;
        if !(last > first + ESCAPE_MARGIN) {
            return Err(Error::ScenarioInvalid(format!("sequence does not escape: distance from base {first} -> {last}")));
        }
        Ok(SandwichScenario { inner, outer, center, radius, base, sequence, witness })
    }

    pub fn horocycle(&self) -> Result<GeneralHorocycle> {
        GeneralHorocycle::new(self.outer.clone(), self.center, self.base, self.radius)
    }
}

/// Monte Carlo attempt to refute `E ⊆ D ⊆ U`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Falsifier {
    pub samples: usize,
}

impl Default for Falsifier {
    fn default() -> Self {
        Falsifier { samples: 10_000 }
    }
}

impl Falsifier {
    /// A counterexample point, if one is found. Three probes share the
    /// budget: horocycle points must lie in `D`, boundary points of `D` must
    /// not lie in the horocycle, and points of `D` must lie in `U`.
    pub fn falsify<R: Rng + ?Sized>(&self, s: &SandwichScenario, rng: &mut R) -> Result<Option<Complex>> {
        let horo = s.horocycle()?;
        let same = s.inner == s.outer;
        for k in 0..self.samples {
            match k % 3 {
                0 => {
                    let z = horo.sample(rng)?;
                    if !s.inner.contains(z) {
                        return Ok(Some(z));
                    }
                }
                1 => {
                    let b = sample_boundary(&s.inner, rng);
                    if !same && horo.membership_anywhere(b)? == Membership::Inside {
                        return Ok(Some(b));
                    }
                }
                _ => {
                    let z = sample_interior(&s.inner, rng);
                    if !s.outer.contains(z) {
                        return Ok(Some(z));
                    }
                }
            }
        }
        Ok(None)
    }
}

/// Classifier thresholds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassifyOptions {
    pub tol: f64,
    pub tail: usize,
    pub falsifier: Falsifier,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions { tol: 1e-2, tail: 5, falsifier: Falsifier::default() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum VerdictKind {
    Orthogonal(Complex),
    /// Sign of the limiting approach angle.
    Tangential(i8),
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceVerdict {
    pub kind: VerdictKind,
    /// Distances `k_U(z_n, ray)` over the tail.
    pub distance_tail: Vec<f64>,
    /// Approach angles `arg(1 - conj(sigma) f^{-1}(z_n))` over the tail.
    pub angle_tail: Vec<f64>,
    /// Estimated limit of `f^{-1}` along the ray.
    pub sigma: Complex,
    pub tol: f64,
    pub tail: usize,
}

impl ConvergenceVerdict {
    pub fn max_distance(&self) -> f64 {
        self.distance_tail.iter().fold(0.0, |m, d| m.max(*d))
    }

    pub fn max_angle(&self) -> f64 {
        self.angle_tail.iter().fold(0.0, |m, a| m.max(a.abs()))
    }

    pub fn is_orthogonal(&self) -> bool {
        matches!(self.kind, VerdictKind::Orthogonal(_))
    }
}

/// `arg(1 - conj(sigma) zeta)` for `zeta = C^{-1}(w)`, evaluated without
/// forming `zeta`: `1 - conj(sigma) zeta = ((w + 1) - conj(sigma)(w - 1))/(w + 1)`.
pub fn hub_approach_angle(sigma: Complex, w: Complex) -> f64 {
    let one = Complex::new(1.0, 0.0);
    let num = w * (one - sigma.conj()) + (one + sigma.conj());
    let a = num.arg() - (w + one).arg();
    if a > PI {
        a - 2.0 * PI
    } else if a <= -PI {
        a + 2.0 * PI
    } else {
        a
    }
}

/// Estimates `lim f^{-1}(ray(t))` for the Riemann map `f` of `inner`,
/// evaluating at ray points where the ray's normalized coordinate has
/// modulus `10^2, 10^3, ...`. Returns the estimate projected to the circle.
pub fn estimate_ray_limit(inner: &DomainSpec, ray: &GeodesicRay) -> Result<Complex> {
    let mut previous: Option<Complex> = None;
    let mut last_gap = f64::INFINITY;
    let base = ray.normalized_point(0.0);
    for k in 2..=14 {
        let x = 10f64.powi(k).max(2.0 * base.re);
        let t = ray.param_at_normalized_re(x);
        let p = ray.point(t);
        if inner.require_interior(p).is_err() {
            break;
        }
        let zeta = crate::model::cayley_inverse(inner.to_hub(p));
        if !(zeta.re.is_finite() && zeta.im.is_finite()) || zeta.norm() == 0.0 {
            break;
        }
        let est = zeta / zeta.norm();
        if let Some(prev) = previous {
            last_gap = (est - prev).norm();
            if last_gap < 1e-13 {
                return Ok(est);
            }
        }
        previous = Some(est);
    }
    match previous {
        Some(est) if last_gap < 1e-6 => Ok(est),
        _ => Err(Error::EstimationFailure(format!("ray limit did not settle (last successive difference {last_gap:e})"))),
    }
}

/// Largest `|arg(1 - conj(sigma) f^{-1}(z_n))|` over the last `tail` points.
pub fn verify_direct(inner: &DomainSpec, sigma: Complex, sequence: &[Complex], tail: usize) -> Result<f64> {
    Ok(direct_angles(inner, sigma, sequence, tail)?.iter().fold(0.0, |m, a| m.max(a.abs())))
}

fn direct_angles(inner: &DomainSpec, sigma: Complex, sequence: &[Complex], tail: usize) -> Result<Vec<f64>> {
    for &z in sequence {
        inner.require_interior(z)?;
    }
    let start = sequence.len().saturating_sub(tail.max(1));
    Ok(sequence[start..].iter().map(|&z| hub_approach_angle(sigma, inner.to_hub(z))).collect())
}

/// Evaluates the distance criterion and the direct angle test on a scenario.
pub fn classify<R: Rng + ?Sized>(s: &SandwichScenario, opts: &ClassifyOptions, rng: &mut R) -> Result<ConvergenceVerdict> {
    if let Some(z) = opts.falsifier.falsify(s, rng)? {
        return Err(Error::ScenarioInvalid(format!("inclusion witness refuted at {z}")));
    }
    let ray = geodesic_ray(&s.outer, s.base, &s.center)?;
    let tail = opts.tail.max(1);
    let start = s.sequence.len().saturating_sub(tail);
    let distance_tail = s.sequence[start..].iter().map(|&z| dist_to_ray(&s.outer, z, &ray)).collect::<Result<Vec<_>>>()?;
    let sigma = estimate_ray_limit(&s.inner, &ray)?;
    let angle_tail = direct_angles(&s.inner, sigma, &s.sequence, tail)?;
    let criterion = distance_tail.iter().all(|d| *d < opts.tol);
    let max_angle = angle_tail.iter().fold(0.0f64, |m, a| m.max(a.abs()));
    let kind = if criterion && max_angle <= 3.0 * opts.tol {
        VerdictKind::Orthogonal(sigma)
    } else if angle_tail.iter().all(|a| a.abs() > FRAC_PI_2 - opts.tol)
        && (angle_tail.iter().all(|a| *a > 0.0) || angle_tail.iter().all(|a| *a < 0.0))
    {
        VerdictKind::Tangential(if angle_tail[0] > 0.0 { 1 } else { -1 })
    } else {
        VerdictKind::Inconclusive
    };
    Ok(ConvergenceVerdict { kind, distance_tail, angle_tail, sigma, tol: opts.tol, tail })
}

/// Radii tried by [`betsakos_scenario`], largest first.
fn radius_grid() -> impl Iterator<Item = f64> {
    (-6..=40).map(|k| 2f64.powi(-k))
}

fn on_boundary(spec: &DomainSpec, p: Complex) -> bool {
    if spec.contains(p) {
        return false;
    }
    let eps = 1e-9 * p.norm().max(1.0);
    (0..8).any(|k| spec.contains(p + Complex::from_polar(eps, k as f64 * core::f64::consts::FRAC_PI_4)))
}

/// Builds the scenario comparing a starlike-at-infinity domain with the
/// Koebe domain slit below `p = s0 + i s1`, centred at its end at infinity.
/// The radius is the largest one on a dyadic grid (refined by bisection and
/// then halved) that survives the inclusion falsifier.
pub fn betsakos_scenario<R: Rng + ?Sized>(
    s0: f64,
    s1: f64,
    inner: &DomainSpec,
    strip: &Semistrip,
    sequence: Vec<Complex>,
    falsifier: &Falsifier,
    rng: &mut R,
) -> Result<SandwichScenario> {
    inner.validate()?;
    if !starlike_at_infinity(inner) {
        return Err(Error::ScenarioInvalid(format!("{} is not starlike at infinity", inner.kind_name())));
    }
    if !boundary_in_semistrip(inner, strip) {
        return Err(Error::ScenarioInvalid("boundary is not contained in the semistrip".into()));
    }
    let p = Complex::new(s0, s1);
    if !on_boundary(inner, p) {
        return Err(Error::ScenarioInvalid(format!("{p} is not a boundary point")));
    }
    let outer = DomainSpec::koebe(p);
    let base = outer.canonical_point();
    let witness = if *inner == outer {
        InclusionWitness::SameDomain
    } else {
        InclusionWitness::Declared("boundary contained in a vertical semistrip".into())
    };
    let build = |radius: f64| {
        SandwichScenario::new(inner.clone(), outer.clone(), PrimeEndRef::Infinity, radius, base, sequence.clone(), witness.clone())
    };
    let mut failing: Option<f64> = None;
    for r in radius_grid() {
        let s = build(r)?;
        if falsifier.falsify(&s, rng)?.is_none() {
            let Some(mut hi) = failing else { return Ok(s) };
            let mut lo = r;
            for _ in 0..20 {
                let mid = (lo * hi).sqrt();
                if falsifier.falsify(&build(mid)?, rng)?.is_none() {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            return build(lo / 2.0);
        }
        failing = Some(r);
    }
    Err(Error::ScenarioInvalid("every radius on the search grid was refuted".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::FRAC_PI_4;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    fn opts() -> ClassifyOptions {
        ClassifyOptions { falsifier: Falsifier { samples: 600 }, ..Default::default() }
    }

    fn same(domain: DomainSpec, base: Complex, sequence: Vec<Complex>) -> SandwichScenario {
        SandwichScenario::new(domain.clone(), domain, PrimeEndRef::Infinity, 1.0, base, sequence, InclusionWitness::SameDomain).unwrap()
    }

    #[test]
    fn radial_half_plane_sequence() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let seq = (1..=50).map(|n| c(n as f64, 0.0)).collect();
        let v = classify(&same(DomainSpec::RightHalfPlane, c(1.0, 0.0), seq), &opts(), &mut rng).unwrap();
        assert!((v.sigma - c(1.0, 0.0)).norm() < 1e-12);
        assert_eq!(v.kind, VerdictKind::Orthogonal(v.sigma));
        assert!(v.max_distance() < 1e-9);
    }

    #[test]
    fn vertical_koebe_sequence() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let seq = (1..=50).map(|n| c(0.0, n as f64)).collect();
        let v = classify(&same(DomainSpec::koebe(c(0.0, 0.0)), c(0.0, 1.0), seq), &opts(), &mut rng).unwrap();
        assert!(v.is_orthogonal());
    }

    #[test]
    fn fixed_angle_sequence_is_not_orthogonal() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let theta = core::f64::consts::FRAC_PI_3;
        let seq = (1..=50).map(|n| Complex::from_polar(n as f64, theta)).collect();
        let v = classify(&same(DomainSpec::RightHalfPlane, c(1.0, 0.0), seq), &opts(), &mut rng).unwrap();
        assert_eq!(v.kind, VerdictKind::Inconclusive);
        let expected = 0.5 * (2.0 + 3f64.sqrt()).ln();
        assert!(v.distance_tail.iter().all(|d| (d - expected).abs() < 1e-9));
        // arg(1 - zeta_n) = -arg(z_n + 1), which tends to -theta like 1/n
        assert!((v.max_angle() - theta).abs() < 0.03);
    }

    #[test]
    fn direct_controls() {
        let n = 1e6;
        let radial = [c(1.0 - 1.0 / n, 0.0)];
        assert!(verify_direct(&DomainSpec::Disc, c(1.0, 0.0), &radial, 1).unwrap() < 1e-12);
        let skew = [c(1.0 - 1.0 / n, -1.0 / n)];
        let a = verify_direct(&DomainSpec::Disc, c(1.0, 0.0), &skew, 1).unwrap();
        assert!((a - FRAC_PI_4).abs() < 1e-6);
        let reals = [c(n, 0.0)];
        assert_eq!(verify_direct(&DomainSpec::RightHalfPlane, c(1.0, 0.0), &reals, 1).unwrap(), 0.0);
    }

    #[test]
    fn hub_angle_matches_disc_angle() {
        let sigma = Complex::from_polar(1.0, 0.8);
        for w in [c(2.0, 1.0), c(0.3, -4.0), c(10.0, 0.0)] {
            let zeta = crate::model::cayley_inverse(w);
            let direct = crate::model::approach_angle(sigma, zeta);
            assert!((hub_approach_angle(sigma, w) - direct).abs() < 1e-12);
        }
    }

    #[test]
    fn falsified_inclusion_is_reported() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        // horocycles of H at infinity are half-planes Re > R; a big one is
        // not inside the slit plane rotated so that its slit crosses them
        let inner = DomainSpec::affine(DomainSpec::koebe(c(0.0, 0.0)), c(0.0, 1.0), c(3.0, 0.0));
        let s = SandwichScenario::new(
            inner,
            DomainSpec::RightHalfPlane,
            PrimeEndRef::Infinity,
            1.0,
            c(1.0, 0.0),
            (1..=10).map(|n| c(n as f64, 1.0)).collect(),
            InclusionWitness::Declared("false claim".into()),
        )
        .unwrap();
        assert!(matches!(classify(&s, &opts(), &mut rng), Err(Error::ScenarioInvalid(_))));
    }

    #[test]
    fn betsakos_construction() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let strip = Semistrip { a: -1.0, b: 1.0, c: 1.0 };
        let seq: Vec<Complex> = (1..=30).map(|n| c(0.0, n as f64)).collect();
        let f = Falsifier { samples: 300 };
        let k = DomainSpec::koebe(c(0.0, 0.0));
        let s = betsakos_scenario(0.0, 0.0, &k, &strip, seq.clone(), &f, &mut rng).unwrap();
        assert_eq!(s.witness, InclusionWitness::SameDomain);
        assert!(matches!(
            betsakos_scenario(0.0, 0.0, &DomainSpec::UpperHalfPlane, &strip, seq, &f, &mut rng),
            Err(Error::ScenarioInvalid(_))
        ));
    }
}
