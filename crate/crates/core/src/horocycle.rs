//! Horocycles of catalog domains via Busemann values.
//!
//! For a prime end `y` and base point `z0`, the Busemann value of `z` is
//! `lim [k(z, w_n) - k(z0, w_n)]` as `w_n -> y`. In the normalized hub frame
//! of `y` (where `y` is the end at infinity of the half-plane) it equals
//! `-log(Re xi) / 2 + log(Re xi0) / 2`, so the horocycle of radius `R` is the
//! half-plane `Re xi > Re xi0 / R`.

use core::f64::consts::PI;

// float math for no_std; shadowed by inherent methods when std is linked
#[allow(unused_imports)]
use num_traits::Float;
use rand::Rng;

use crate::atlas::{prime_end_image, ConformalMap, DomainSpec, PrimeEndRef};
use crate::metric::{geodesic_ray, EndFrame};
use crate::model::halfplane_distance;
use crate::sampling::sample_interior;
use crate::{Complex, Error, Result};

/// Width of the band around the horocycle boundary reported as indeterminate.
pub const MEMBERSHIP_BAND: f64 = 1e-9;

fn frame_of(spec: &DomainSpec, y: &PrimeEndRef) -> Result<EndFrame> {
    Ok(EndFrame::new(spec.prime_end_to_hub(y)?))
}

fn normalized(spec: &DomainSpec, frame: &EndFrame, z: Complex) -> Result<Complex> {
    spec.require_interior(z)?;
    Ok(frame.normalize(spec.to_hub(z)))
}

/// `lim [k(z, w_n) - k(z0, w_n)]` for `w_n -> y`.
pub fn busemann(spec: &DomainSpec, z0: Complex, y: &PrimeEndRef, z: Complex) -> Result<f64> {
    let frame = frame_of(spec, y)?;
    let xi = normalized(spec, &frame, z)?;
    let xi0 = normalized(spec, &frame, z0)?;
    Ok(0.5 * (xi0.re / xi.re).ln())
}

/// The Busemann value by explicit limit: `k(z, w_n) - k(z0, w_n)` along the
/// geodesic ray from `z0` to `y` at `t = 1, ..., terms`, accelerated by
/// Aitken's delta-squared on the last three terms.
pub fn busemann_sequential(spec: &DomainSpec, z0: Complex, y: &PrimeEndRef, z: Complex, terms: usize) -> Result<f64> {
    if terms < 3 {
        return Err(Error::InvalidParameter { name: "sequence terms", value: terms as f64 });
    }
    let ray = geodesic_ray(spec, z0, y)?;
    let xi = normalized(spec, &ray.frame(), z)?;
    let xi0 = ray.normalized_point(0.0);
    let term = |n: usize| {
        let w = ray.normalized_point(n as f64);
        halfplane_distance(xi, w) - halfplane_distance(xi0, w)
    };
    let (a, b, c) = (term(terms - 2), term(terms - 1), term(terms));
    let denom = (c - b) - (b - a);
    if denom.abs() > 1e-300 && ((c - b) * (c - b) / denom).abs() < (c - b).abs().max(1e-15) * 10.0 {
        Ok(c - (c - b) * (c - b) / denom)
    } else {
        Ok(c)
    }
}

/// `E_{z0}(y, R)`: the points whose Busemann value is below `log(R)/2`.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneralHorocycle {
    domain: DomainSpec,
    center: PrimeEndRef,
    base: Complex,
    radius: f64,
}

/// Three-valued membership; points within [`MEMBERSHIP_BAND`] of the
/// threshold are indeterminate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Membership {
    Inside,
    Outside,
    Indeterminate,
}

impl GeneralHorocycle {
    pub fn new(domain: DomainSpec, center: PrimeEndRef, base: Complex, radius: f64) -> Result<Self> {
        domain.validate()?;
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(Error::InvalidParameter { name: "horocycle radius", value: radius });
        }
        domain.require_interior(base)?;
        domain.prime_end_to_hub(&center)?;
        Ok(GeneralHorocycle { domain, center, base, radius })
    }

    pub fn domain(&self) -> &DomainSpec {
        &self.domain
    }

    pub fn center(&self) -> PrimeEndRef {
        self.center
    }

    pub fn base(&self) -> Complex {
        self.base
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    /// Busemann value of `z` minus the threshold `log(R)/2`.
    pub fn level(&self, z: Complex) -> Result<f64> {
        Ok(busemann(&self.domain, self.base, &self.center, z)? - 0.5 * self.radius.ln())
    }

    pub fn membership(&self, z: Complex) -> Result<Membership> {
        let level = self.level(z)?;
        Ok(if level.abs() <= MEMBERSHIP_BAND {
            Membership::Indeterminate
        } else if level < 0.0 {
            Membership::Inside
        } else {
            Membership::Outside
        })
    }

    /// Membership of an arbitrary plane point; points outside the domain are outside.
    pub fn membership_anywhere(&self, z: Complex) -> Result<Membership> {
        if !self.domain.contains(z) {
            return Ok(Membership::Outside);
        }
        if self.domain.require_interior(z).is_err() {
            return Ok(Membership::Indeterminate);
        }
        self.membership(z)
    }

    /// Random point of the horocycle: a heavy-tailed point of the half-plane
    /// `Re xi > Re xi0 / R` in the normalized frame, mapped back.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<Complex> {
        let frame = frame_of(&self.domain, &self.center)?;
        let xi0 = normalized(&self.domain, &frame, self.base)?;
        let edge = xi0.re / self.radius;
        for _ in 0..64 {
            let depth = (8.0 * rng.gen::<f64>() - 2.0).exp();
            let height = (PI * (rng.gen::<f64>() - 0.5)).tan() * edge * (1.0 + depth);
            let xi = Complex::new(edge * (1.0 + depth), xi0.im + height);
            let z = self.domain.from_hub(frame.denormalize(xi));
            if self.domain.require_interior(z).is_ok() {
                return Ok(z);
            }
        }
        Err(Error::EstimationFailure("could not sample an interior horocycle point".into()))
    }
}

/// Exact comparison `busemann < log(R)/2`.
pub fn horocycle_contains(h: &GeneralHorocycle, z: Complex) -> Result<bool> {
    Ok(h.level(z)? < 0.0)
}

/// Factor `A` with `E_{z0}(y, R) = E_{z1}(y, A R)`; `log(A)/2 = busemann(z1 -> z0)`.
pub fn basepoint_shift(spec: &DomainSpec, z0: Complex, z1: Complex, y: &PrimeEndRef) -> Result<f64> {
    Ok((2.0 * busemann(spec, z1, y, z0)?).exp())
}

/// Image of a horocycle under a catalog biholomorphism.
pub fn push_horocycle(map: &ConformalMap, h: &GeneralHorocycle) -> Result<GeneralHorocycle> {
    if map.source() != h.domain() {
        return Err(Error::UnsupportedPair(h.domain.kind_name().into(), map.source().kind_name().into()));
    }
    let center = prime_end_image(map, &h.center)?;
    GeneralHorocycle::new(map.target().clone(), center, map.forward(h.base), h.radius)
}

/// Number of sampled source points whose membership in `h` differs from the
/// membership of their image in the pushed-forward horocycle. Points in the
/// indeterminate band on either side are skipped.
pub fn horocycle_invariance_check<R: Rng + ?Sized>(map: &ConformalMap, h: &GeneralHorocycle, samples: usize, rng: &mut R) -> Result<usize> {
    let image = push_horocycle(map, h)?;
    let mut disagreements = 0;
    for k in 0..samples {
        // alternate between generic points and points of the horocycle itself
        let z = if k % 2 == 0 { sample_interior(map.source(), rng) } else { h.sample(rng)? };
        let w = map.forward(z);
        if map.target().require_interior(w).is_err() {
            continue;
        }
        let before = h.membership(z)?;
        let after = image.membership(w)?;
        if before == Membership::Indeterminate || after == Membership::Indeterminate {
            continue;
        }
        if before != after {
            disagreements += 1;
        }
    }
    Ok(disagreements)
}
