//! Random interior and boundary points of catalog domains.
//!
//! Interior points are drawn in the disc and pushed through the hub, so every
//! domain is sampled with the same hyperbolic profile (up to distance 3 from
//! the canonical point).

use core::f64::consts::PI;

// float math for no_std; shadowed by inherent methods when std is linked
#[allow(unused_imports)]
use num_traits::Float;
use rand::Rng;

use crate::atlas::DomainSpec;
use crate::model::cayley;
use crate::Complex;

const MAX_TRIES: usize = 64;

/// `tanh(3U) e^{2 pi i V}` with `U, V` uniform on `[0, 1)`.
pub fn sample_disc<R: Rng + ?Sized>(rng: &mut R) -> Complex {
    let r = (3.0 * rng.gen::<f64>()).tanh();
    Complex::from_polar(r, 2.0 * PI * rng.gen::<f64>())
}

/// Interior point of `spec`, at least the boundary tolerance away from the boundary.
pub fn sample_interior<R: Rng + ?Sized>(spec: &DomainSpec, rng: &mut R) -> Complex {
    for _ in 0..MAX_TRIES {
        let z = spec.from_hub(cayley(sample_disc(rng)));
        if spec.require_interior(z).is_ok() {
            return z;
        }
    }
    spec.canonical_point()
}

/// Height `y` of a hub boundary point `iy`: Cauchy-distributed half the
/// time, `sinh` of a uniform on `[-20, 20]` otherwise.
pub fn sample_boundary_height<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    if rng.gen::<bool>() {
        (PI * (rng.gen::<f64>() - 0.5)).tan()
    } else {
        (40.0 * rng.gen::<f64>() - 20.0).sinh()
    }
}

/// Point of the boundary of `spec`, the image of a random hub boundary point.
pub fn sample_boundary<R: Rng + ?Sized>(spec: &DomainSpec, rng: &mut R) -> Complex {
    spec.from_hub(Complex::new(0.0, sample_boundary_height(rng)))
}

/// Uniform point of the square `[-half, half]^2`.
pub fn sample_square<R: Rng + ?Sized>(half: f64, rng: &mut R) -> Complex {
    Complex::new(half * (2.0 * rng.gen::<f64>() - 1.0), half * (2.0 * rng.gen::<f64>() - 1.0))
}
