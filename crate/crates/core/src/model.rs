//! Closed-form hyperbolic geometry of the two model domains: the unit disc
//! and the right half-plane `{Re z > 0}`.

use alloc::sync::Arc;
use alloc::vec::Vec;

// float math for no_std; shadowed by inherent methods when std is linked
#[allow(unused_imports)]
use num_traits::Float;

use crate::curve::{CurvePath, SampledCurve};
use crate::{Complex, Error, Result, BOUNDARY_TOL};

/// Samples used by [`geodesic_model`].
pub const DEFAULT_GEODESIC_SAMPLES: usize = 65;

/// Point of the open unit disc, at least [`BOUNDARY_TOL`] from the circle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiscPoint(Complex);

impl DiscPoint {
    pub fn new(z: Complex) -> Result<Self> {
        if z.re.is_finite() && z.im.is_finite() && 1.0 - z.norm() > BOUNDARY_TOL {
            Ok(DiscPoint(z))
        } else {
            Err(Error::outside(z, "disc"))
        }
    }

    pub fn value(self) -> Complex {
        self.0
    }
}

/// Point of the unit circle (modulus within [`BOUNDARY_TOL`] of 1).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryPoint(Complex);

impl BoundaryPoint {
    pub fn new(z: Complex) -> Result<Self> {
        if (z.norm() - 1.0).abs() <= BOUNDARY_TOL {
            Ok(BoundaryPoint(z))
        } else {
            Err(Error::InvalidParameter { name: "boundary point modulus", value: z.norm() })
        }
    }

    pub fn value(self) -> Complex {
        self.0
    }
}

/// Point of the right half-plane, at least [`BOUNDARY_TOL`] from the imaginary axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HalfPlanePoint(Complex);

impl HalfPlanePoint {
    pub fn new(z: Complex) -> Result<Self> {
        if z.re.is_finite() && z.im.is_finite() && z.re > BOUNDARY_TOL {
            Ok(HalfPlanePoint(z))
        } else {
            Err(Error::outside(z, "right half-plane"))
        }
    }

    pub fn value(self) -> Complex {
        self.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModelDomain {
    Disc,
    HalfPlane,
}

impl ModelDomain {
    fn check(self, z: Complex) -> Result<Complex> {
        match self {
            ModelDomain::Disc => DiscPoint::new(z).map(DiscPoint::value),
            ModelDomain::HalfPlane => HalfPlanePoint::new(z).map(HalfPlanePoint::value),
        }
    }

    /// Density without validation; NaN outside the domain.
    pub(crate) fn raw_density(self, z: Complex) -> f64 {
        match self {
            ModelDomain::Disc => {
                let r = z.norm();
                if r < 1.0 {
                    1.0 / ((1.0 - r) * (1.0 + r))
                } else {
                    f64::NAN
                }
            }
            ModelDomain::HalfPlane => {
                if z.re > 0.0 {
                    0.5 / z.re
                } else {
                    f64::NAN
                }
            }
        }
    }
}

/// Half-plane distance without validation.
///
/// Uses `sinh k = |z - w| / (2 sqrt(Re z Re w))`, which is the same quantity
/// as `artanh |(z - w)/(z + conj w)|` but keeps full relative precision at
/// short and long range.
pub(crate) fn halfplane_distance(z: Complex, w: Complex) -> f64 {
    ((z - w).norm() / (2.0 * z.re.sqrt() * w.re.sqrt())).asinh()
}

/// Disc distance without validation: `sinh k = |z - w| / sqrt((1-|z|^2)(1-|w|^2))`.
pub(crate) fn disc_distance(z: Complex, w: Complex) -> f64 {
    let (rz, rw) = (z.norm(), w.norm());
    // grouped per point so the result is exactly symmetric
    let denom = (((1.0 - rz) * (1.0 + rz)) * ((1.0 - rw) * (1.0 + rw))).sqrt();
    ((z - w).norm() / denom).asinh()
}

/// Hyperbolic distance in the right half-plane.
pub fn dist_halfplane(z: HalfPlanePoint, w: HalfPlanePoint) -> f64 {
    halfplane_distance(z.0, w.0)
}

/// Hyperbolic distance in the unit disc.
pub fn dist_disc(z: DiscPoint, w: DiscPoint) -> f64 {
    disc_distance(z.0, w.0)
}

/// Distance in either model domain, validating both points.
pub fn dist_model(domain: ModelDomain, z: Complex, w: Complex) -> Result<f64> {
    let (z, w) = (domain.check(z)?, domain.check(w)?);
    Ok(match domain {
        ModelDomain::Disc => disc_distance(z, w),
        ModelDomain::HalfPlane => halfplane_distance(z, w),
    })
}

/// Infinitesimal density `1/(1-|z|^2)` on the disc and `1/(2 Re z)` on the half-plane.
pub fn hyperbolic_density(domain: ModelDomain, z: Complex) -> Result<f64> {
    let z = domain.check(z)?;
    Ok(domain.raw_density(z))
}

/// Cayley transform `(1 + z)/(1 - z)` from the disc onto the right half-plane.
pub fn cayley(z: Complex) -> Complex {
    (Complex::new(1.0, 0.0) + z) / (Complex::new(1.0, 0.0) - z)
}

/// Inverse Cayley transform `(w - 1)/(w + 1)`.
pub fn cayley_inverse(w: Complex) -> Complex {
    (w - 1.0) / (w + 1.0)
}

/// Hyperbolic length of a sampled curve inside a model domain.
pub fn curve_length(curve: &SampledCurve, domain: ModelDomain) -> Result<f64> {
    for &p in curve.points() {
        domain.check(p)?;
    }
    let len = curve.length(&|z| domain.raw_density(z))?;
    Ok(len)
}

/// Unit-speed parameterisation of the half-plane geodesic from `a` to `b`.
///
/// `M(x) = (x - a)/(x + conj a)` sends the half-plane to the disc with `a` at
/// the origin; the geodesic is the preimage of the radius towards `M(b)`.
pub(crate) fn halfplane_geodesic_path(a: Complex, b: Complex) -> (f64, CurvePath) {
    let m_b = (b - a) / (b + a.conj());
    let dir = m_b / m_b.norm();
    let length = halfplane_distance(a, b);
    let two_re = 2.0 * a.re;
    let path: CurvePath = Arc::new(move |s: f64| {
        let u = dir * s.tanh();
        let one_minus = Complex::new(1.0, 0.0) - u;
        let point = (a + u * a.conj()) / one_minus;
        let sech = 1.0 / s.cosh();
        let velocity = dir * (two_re * sech * sech) / (one_minus * one_minus);
        (point, velocity)
    });
    (length, path)
}

/// Unit-speed parameterisation of the disc geodesic from `a` to `b`, through
/// the disc automorphism `(x - a)/(1 - conj(a) x)`.
pub(crate) fn disc_geodesic_path(a: Complex, b: Complex) -> (f64, CurvePath) {
    let t_b = (b - a) / (Complex::new(1.0, 0.0) - a.conj() * b);
    let dir = t_b / t_b.norm();
    let length = disc_distance(a, b);
    let scale = 1.0 - a.norm_sqr();
    let path: CurvePath = Arc::new(move |s: f64| {
        let u = dir * s.tanh();
        let denom = Complex::new(1.0, 0.0) + a.conj() * u;
        let point = (u + a) / denom;
        let sech = 1.0 / s.cosh();
        let velocity = dir * (scale * sech * sech) / (denom * denom);
        (point, velocity)
    });
    (length, path)
}

/// The geodesic joining `z` and `w` in a model domain, sampled uniformly in
/// arc length (parameter `s` runs over `[0, k(z, w)]`).
pub fn geodesic_model(domain: ModelDomain, z: Complex, w: Complex) -> Result<SampledCurve> {
    geodesic_model_sampled(domain, z, w, DEFAULT_GEODESIC_SAMPLES)
}

pub fn geodesic_model_sampled(domain: ModelDomain, z: Complex, w: Complex, samples: usize) -> Result<SampledCurve> {
    let (z, w) = (domain.check(z)?, domain.check(w)?);
    if z == w {
        return Err(Error::Degenerate("geodesic endpoints coincide"));
    }
    let (length, path) = match domain {
        ModelDomain::Disc => disc_geodesic_path(z, w),
        ModelDomain::HalfPlane => halfplane_geodesic_path(z, w),
    };
    SampledCurve::from_path(0.0, length, samples, path)
}

/// `arg(1 - conj(sigma) zeta)` in `(-pi, pi]`; zero along the radius to `sigma`.
pub fn orthogonality_angle(sigma: BoundaryPoint, zeta: DiscPoint) -> f64 {
    approach_angle(sigma.0, zeta.0)
}

/// [`orthogonality_angle`] on raw complex values.
pub fn approach_angle(sigma: Complex, zeta: Complex) -> f64 {
    let rotated = sigma.conj() * zeta;
    let v = Complex::new(1.0 - rotated.re, -rotated.im);
    // zeta collinear with sigma up to rounding of the products: exactly radial
    let cross_scale = (sigma.re * zeta.im).abs() + (sigma.im * zeta.re).abs();
    if rotated.im.abs() <= 4.0 * f64::EPSILON * cross_scale && v.re > 0.0 {
        return 0.0;
    }
    v.im.atan2(v.re)
}

/// Classical horocycle `E(sigma, R) = {z : |sigma - z|^2 < R (1 - |z|^2)}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HorocycleDisc {
    center: BoundaryPoint,
    radius: f64,
}

impl HorocycleDisc {
    pub fn new(center: BoundaryPoint, radius: f64) -> Result<Self> {
        if radius > 0.0 && radius.is_finite() {
            Ok(HorocycleDisc { center, radius })
        } else {
            Err(Error::InvalidParameter { name: "horocycle radius", value: radius })
        }
    }

    pub fn center(&self) -> BoundaryPoint {
        self.center
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn contains(&self, z: DiscPoint) -> bool {
        horodisc_contains(self, z)
    }
}

pub fn horodisc_contains(h: &HorocycleDisc, z: DiscPoint) -> bool {
    (h.center.0 - z.0).norm_sqr() < h.radius * (1.0 - z.0.norm_sqr())
}

/// Busemann value `lim [k(z, w) - k(0, w)]` as `w -> sigma` in the disc:
/// `log(|sigma - z|^2 / (1 - |z|^2)) / 2`.
pub fn disc_busemann(sigma: BoundaryPoint, z: DiscPoint) -> f64 {
    let r = z.0.norm();
    0.5 * ((sigma.0 - z.0).norm_sqr() / ((1.0 - r) * (1.0 + r))).ln()
}

/// Membership in the sector `V(beta) = {rho e^{i theta} : rho > 0, |theta| < beta}`.
pub fn sector_contains(beta: f64, z: Complex) -> Result<bool> {
    if !(beta > 0.0 && beta < core::f64::consts::PI) {
        return Err(Error::InvalidParameter { name: "sector half-angle", value: beta });
    }
    Ok(z != Complex::new(0.0, 0.0) && z.arg().abs() < beta)
}

/// Log-spaced grid of `n` values from `lo` to `hi` inclusive.
pub fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => alloc::vec![lo],
        _ => {
            let (a, b) = (lo.ln(), hi.ln());
            (0..n).map(|k| if k + 1 == n { hi } else { (a + (b - a) * k as f64 / (n - 1) as f64).exp() }).collect()
        }
    }
}
