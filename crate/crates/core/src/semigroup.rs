//! Continuous semigroups of the disc given by a canonical model
//! `h(phi_t(z)) = h(z) + it`, with `h` the Riemann map of a catalog domain
//! that is starlike at infinity.
//!
//! Trajectories are evolved and measured in hub coordinates, where the
//! Denjoy-Wolff point of every catalog model sits at infinity; this keeps
//! approach angles accurate long after `phi_t(z)` is within rounding of `tau`.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_2, PI};

use rand::Rng;

use crate::atlas::{
    atlas_map, boundary_in_semistrip, prime_end_image, starlike_at_infinity, ConformalMap, DomainSpec, PrimeEndRef, Semistrip,
};
use crate::model::{cayley_inverse, log_grid, DiscPoint};
use crate::orthogonality::{classify, hub_approach_angle, ClassifyOptions, ConvergenceVerdict, InclusionWitness, SandwichScenario};
use crate::{Complex, Error, Result};

const I: Complex = Complex::new(0.0, 1.0);

/// Canonical model `(C, h, z + it)` with `h: D -> omega`.
#[derive(Debug, Clone, PartialEq)]
pub struct KoenigsModel {
    omega: DomainSpec,
    map: ConformalMap,
    dw_estimate: Option<Complex>,
}

impl KoenigsModel {
    pub fn new(omega: DomainSpec) -> Result<Self> {
        omega.validate()?;
        if !starlike_at_infinity(&omega) {
            return Err(Error::InvalidDomain(format!("{} is not starlike at infinity", omega.kind_name())));
        }
        let map = atlas_map(&DomainSpec::Disc, &omega)?;
        Ok(KoenigsModel { omega, map, dw_estimate: None })
    }

    /// The model with its Denjoy-Wolff point estimated by [`dw_point`].
    pub fn with_dw_estimate(mut self) -> Result<Self> {
        self.dw_estimate = Some(dw_point(&self)?);
        Ok(self)
    }

    pub fn omega(&self) -> &DomainSpec {
        &self.omega
    }

    pub fn map(&self) -> &ConformalMap {
        &self.map
    }

    pub fn dw_estimate(&self) -> Option<Complex> {
        self.dw_estimate
    }

    /// The Koenigs function `h`.
    pub fn h(&self, z: Complex) -> Complex {
        self.map.forward(z)
    }

    /// Hub (Cayley) coordinate of `phi_t(z)`.
    pub fn evolve_hub(&self, z: DiscPoint, t: f64) -> Result<Complex> {
        if !(t >= 0.0) || !t.is_finite() {
            return Err(Error::InvalidParameter { name: "time", value: t });
        }
        let w = self.h(z.value()) + I * t;
        if !self.omega.contains(w) {
            return Err(Error::ModelInconsistency(format!("h(z) + it = {w} left {}", self.omega.kind_name())));
        }
        let hub = self.omega.to_hub(w);
        if !(hub.re > 0.0) || !hub.im.is_finite() {
            return Err(Error::ModelInconsistency(format!("hub image {hub} is not in the half-plane")));
        }
        Ok(hub)
    }
}

/// `phi_t(z) = h^{-1}(h(z) + it)`.
pub fn evolve(model: &KoenigsModel, z: DiscPoint, t: f64) -> Result<DiscPoint> {
    if t == 0.0 {
        return Ok(z);
    }
    let zeta = cayley_inverse(model.evolve_hub(z, t)?);
    DiscPoint::new(zeta).map_err(|_| Error::ModelInconsistency(format!("phi_t(z) = {zeta} is not inside the disc")))
}

/// `|phi_t(phi_s(z)) - phi_{s+t}(z)|`.
pub fn semigroup_defect(model: &KoenigsModel, z: DiscPoint, s: f64, t: f64) -> Result<f64> {
    let composed = evolve(model, evolve(model, z, s)?, t)?;
    Ok((composed.value() - evolve(model, z, s + t)?.value()).norm())
}

/// `|h(phi_t(z)) - h(z) - it|`.
pub fn model_equation_defect(model: &KoenigsModel, z: DiscPoint, t: f64) -> Result<f64> {
    let moved = evolve(model, z, t)?;
    Ok((model.h(moved.value()) - model.h(z.value()) - I * t).norm())
}

/// Times at which [`dw_point`] samples `phi_t(0)`.
pub const DW_TIMES: [f64; 7] = [1e2, 1e3, 1e4, 1e5, 1e6, 1e7, 1e8];

/// Stop tolerance between successive Denjoy-Wolff estimates.
pub const DW_TOL: f64 = 1e-8;

/// Denjoy-Wolff point as the limit of `phi_t(0)` on [`DW_TIMES`].
///
/// The direction of `phi_t(0)` is tracked as an angle relative to the last
/// sample and extrapolated with Aitken's delta-squared, since tangential
/// trajectories approach their limit direction only like `1/t`.
pub fn dw_point(model: &KoenigsModel) -> Result<Complex> {
    let origin = DiscPoint::new(Complex::new(0.0, 0.0))?;
    let points: Vec<Complex> = DW_TIMES.iter().map(|&t| model.evolve_hub(origin, t).map(cayley_inverse)).collect::<Result<_>>()?;
    let last = points[points.len() - 1];
    let reference = last / last.norm();
    let angles: Vec<f64> = points.iter().map(|p| (p * reference.conj()).arg()).collect();
    let mut estimates = Vec::with_capacity(angles.len());
    for k in 0..angles.len() {
        let est = if k >= 2 {
            let (a, b, c) = (angles[k - 2], angles[k - 1], angles[k]);
            let denom = (c - b) - (b - a);
            if denom.abs() > 1e-14 * (c - b).abs().max(f64::MIN_POSITIVE) && denom != 0.0 {
                c - (c - b) * (c - b) / denom
            } else {
                c
            }
        } else {
            angles[k]
        };
        estimates.push(est);
    }
    let n = estimates.len();
    let gap = (estimates[n - 1] - estimates[n - 2]).abs();
    if gap < DW_TOL {
        Ok(reference * Complex::from_polar(1.0, estimates[n - 1]))
    } else {
        Err(Error::EstimationFailure(format!("Denjoy-Wolff estimates still moving by {gap:e}")))
    }
}

/// Approach classification of a slope trace.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SlopeClass {
    Orthogonal,
    Tangential(i8),
    Undetermined,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SlopeOptions {
    pub threshold: f64,
    pub tail: usize,
}

impl Default for SlopeOptions {
    fn default() -> Self {
        SlopeOptions { threshold: 0.05, tail: 5 }
    }
}

/// Angles `arg(1 - conj(tau) phi_t(z))` along a log-spaced time grid.
#[derive(Debug, Clone, PartialEq)]
pub struct SlopeTrace {
    pub start: DiscPoint,
    pub tau: Complex,
    pub times: Vec<f64>,
    pub points: Vec<Complex>,
    pub angles: Vec<f64>,
    pub classification: SlopeClass,
}

impl SlopeTrace {
    pub fn tail_max_angle(&self, tail: usize) -> f64 {
        let start = self.angles.len().saturating_sub(tail.max(1));
        self.angles[start..].iter().fold(0.0, |m, a| m.max(a.abs()))
    }
}

fn classify_angles(angles: &[f64], opts: &SlopeOptions) -> SlopeClass {
    let start = angles.len().saturating_sub(opts.tail.max(1));
    let tail = &angles[start..];
    if tail.iter().all(|a| a.abs() < opts.threshold) {
        SlopeClass::Orthogonal
    } else if tail.iter().all(|a| a.abs() > FRAC_PI_2 - opts.threshold) {
        if tail.iter().all(|a| *a > 0.0) {
            SlopeClass::Tangential(1)
        } else if tail.iter().all(|a| *a < 0.0) {
            SlopeClass::Tangential(-1)
        } else {
            SlopeClass::Undetermined
        }
    } else {
        SlopeClass::Undetermined
    }
}

/// Slope trace on `samples` log-spaced times in `[t_min, t_max]`.
pub fn slope_trace(model: &KoenigsModel, z: DiscPoint, t_min: f64, t_max: f64, samples: usize, opts: &SlopeOptions) -> Result<SlopeTrace> {
    if !(t_min > 0.0 && t_max > t_min && t_max.is_finite()) {
        return Err(Error::InvalidParameter { name: "slope time range", value: t_max - t_min });
    }
    if samples < 8 {
        return Err(Error::InvalidParameter { name: "slope samples", value: samples as f64 });
    }
    let tau = match model.dw_estimate {
        Some(tau) => tau,
        None => dw_point(model)?,
    };
    let times = log_grid(t_min, t_max, samples);
    let mut points = Vec::with_capacity(samples);
    let mut angles = Vec::with_capacity(samples);
    for &t in &times {
        let w = model.evolve_hub(z, t)?;
        points.push(cayley_inverse(w));
        angles.push(hub_approach_angle(tau, w));
    }
    let classification = classify_angles(&angles, opts);
    Ok(SlopeTrace { start: z, tau, times, points, angles, classification })
}

/// The three sandwich hypotheses under which trajectories converge
/// orthogonally.
#[derive(Debug, Clone, PartialEq)]
pub enum CorollaryCase {
    /// `omega = {Im z > shift}`, between `iH + i a` and `iH` for any `a > shift`.
    HalfPlane { shift: f64 },
    /// `omega = i V(beta) + i shift`, between `i V(beta) + i a` and `i V(beta)`.
    Sector { beta: f64, shift: f64 },
    /// A starlike-at-infinity domain whose boundary lies in the semistrip.
    Semistrip { domain: DomainSpec, strip: Semistrip },
}

impl CorollaryCase {
    /// Case 3 for the Koebe domain slit below `p`, with the unit semistrip around `p`.
    pub fn slit(p: Complex) -> Self {
        CorollaryCase::Semistrip { domain: DomainSpec::koebe(p), strip: Semistrip { a: p.re - 1.0, b: p.re + 1.0, c: p.im + 1.0 } }
    }

    pub fn number(&self) -> u8 {
        match self {
            CorollaryCase::HalfPlane { .. } => 1,
            CorollaryCase::Sector { .. } => 2,
            CorollaryCase::Semistrip { .. } => 3,
        }
    }

    /// The Koenigs domain, after checking the case's hypotheses.
    pub fn omega(&self) -> Result<DomainSpec> {
        let shifted = |base: DomainSpec, shift: f64| {
            if !(shift >= 0.0) || !shift.is_finite() {
                Err(Error::InvalidParameter { name: "sandwich shift", value: shift })
            } else if shift == 0.0 {
                Ok(base)
            } else {
                Ok(DomainSpec::affine(base, Complex::new(1.0, 0.0), Complex::new(0.0, shift)))
            }
        };
        let omega = match self {
            CorollaryCase::HalfPlane { shift } => shifted(DomainSpec::UpperHalfPlane, *shift)?,
            CorollaryCase::Sector { beta, shift } => {
                if !(*beta > 0.0 && *beta < PI) {
                    return Err(Error::InvalidParameter { name: "sector half-angle", value: *beta });
                }
                shifted(DomainSpec::sector(*beta, I), *shift)?
            }
            CorollaryCase::Semistrip { domain, strip } => {
                if !boundary_in_semistrip(domain, strip) {
                    return Err(Error::ScenarioInvalid("boundary is not contained in the semistrip".into()));
                }
                domain.clone()
            }
        };
        omega.validate()?;
        if !starlike_at_infinity(&omega) {
            return Err(Error::ScenarioInvalid(format!("{} is not starlike at infinity", omega.kind_name())));
        }
        Ok(omega)
    }
}

/// Settings for [`corollary_runner`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorollaryOptions {
    pub t_min: f64,
    pub t_max: f64,
    pub samples: usize,
    pub slope: SlopeOptions,
    pub classify: ClassifyOptions,
}

impl Default for CorollaryOptions {
    fn default() -> Self {
        CorollaryOptions { t_min: 1.0, t_max: 1e6, samples: 61, slope: SlopeOptions::default(), classify: ClassifyOptions::default() }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CorollaryReport {
    pub case: u8,
    pub omega: DomainSpec,
    pub tau: Complex,
    /// Image of the end at infinity of `omega` in the disc.
    pub tau_symbolic: Complex,
    pub traces: Vec<SlopeTrace>,
    /// Criterion verdicts on the sequences `h(z) + it`, one per start.
    pub cross_checks: Vec<ConvergenceVerdict>,
    pub violations: Vec<String>,
}

impl CorollaryReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Runs slope traces from every start and cross-checks each trajectory
/// with the distance criterion. Any non-orthogonal outcome is recorded as a
/// violation.
pub fn corollary_runner<R: Rng + ?Sized>(
    case: &CorollaryCase,
    starts: &[DiscPoint],
    opts: &CorollaryOptions,
    rng: &mut R,
) -> Result<CorollaryReport> {
    let omega = case.omega()?;
    let model = KoenigsModel::new(omega.clone())?.with_dw_estimate()?;
    let tau = model.dw_estimate.unwrap_or(Complex::new(1.0, 0.0));
    let reverse = atlas_map(&omega, &DomainSpec::Disc)?;
    let tau_symbolic = match prime_end_image(&reverse, &PrimeEndRef::Infinity)? {
        PrimeEndRef::Finite(p) => p,
        other => return Err(Error::ModelInconsistency(format!("end at infinity maps to {other:?}"))),
    };
    let mut violations = Vec::new();
    if (tau - tau_symbolic).norm() > 1e-8 {
        violations.push(format!("Denjoy-Wolff estimate {tau} differs from the symbolic end {tau_symbolic}"));
    }
    let base = model.h(Complex::new(0.0, 0.0));
    let mut traces = Vec::with_capacity(starts.len());
    let mut cross_checks = Vec::with_capacity(starts.len());
    for &z in starts {
        let trace = slope_trace(&model, z, opts.t_min, opts.t_max, opts.samples, &opts.slope)?;
        if trace.classification != SlopeClass::Orthogonal {
            violations.push(format!(
                "start {} classified {:?} (tail max angle {:e})",
                z.value(),
                trace.classification,
                trace.tail_max_angle(opts.slope.tail)
            ));
        }
        let hz = model.h(z.value());
        let sequence: Vec<Complex> = trace.times.iter().map(|&t| hz + I * t).collect();
        let scenario =
            SandwichScenario::new(omega.clone(), omega.clone(), PrimeEndRef::Infinity, 1.0, base, sequence, InclusionWitness::SameDomain)?;
        let verdict = classify(&scenario, &opts.classify, rng)?;
        if !verdict.is_orthogonal() {
            violations.push(format!("start {} failed the distance criterion ({:?})", z.value(), verdict.kind));
        }
        traces.push(trace);
        cross_checks.push(verdict);
    }
    Ok(CorollaryReport { case: case.number(), omega, tau, tau_symbolic, traces, cross_checks, violations })
}
