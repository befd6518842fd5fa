//! Catalog of simply connected domains with closed-form Riemann maps.
//!
//! Every catalog domain carries an explicit biholomorphism onto the right
//! half-plane `H = {Re w > 0}` (the hub). A [`ConformalMap`] between two
//! catalog domains is always routed `source -> H -> target`.
//!
//! Prime ends are symbolic. Through the hub, each one corresponds either to
//! a point `iy` of the imaginary axis or to the end at infinity of `H`.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::String;
use core::f64::consts::{FRAC_PI_2, PI};

// float math for no_std; shadowed by inherent methods when std is linked
#[allow(unused_imports)]
use num_traits::Float;

use crate::model::{cayley, cayley_inverse};
use crate::{Complex, Error, Result, BOUNDARY_TOL};

/// Maximum nesting depth of [`DomainSpec::Affine`].
pub const MAX_AFFINE_DEPTH: usize = 4;

const ONE: Complex = Complex::new(1.0, 0.0);
const I: Complex = Complex::new(0.0, 1.0);

#[derive(Debug, Clone, PartialEq)]
pub enum DomainSpec {
    /// The unit disc.
    Disc,
    /// `{Re z > 0}`.
    RightHalfPlane,
    /// `{Im z > 0}`.
    UpperHalfPlane,
    /// `{Re z > offset}`, `offset > 0`.
    ShiftedHalfPlane { offset: f64 },
    /// `rotation * V(half_angle)` with `V(b) = {|arg z| < b}`.
    Sector { half_angle: f64, rotation: Complex },
    /// The plane minus the downward ray `{tip - i t : t >= 0}`.
    KoebeSlit { tip: Complex },
    /// `scale * base + translation`.
    Affine { base: Box<DomainSpec>, scale: Complex, translation: Complex },
}

/// Boundary point reached through the hub: `iy` on the imaginary axis or infinity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum HubEnd {
    Imaginary(f64),
    Infinity,
}

/// Side of a slit from which a slit point is approached, seen in the frame
/// of the un-transformed Koebe domain (slit pointing down).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SlitSide {
    Left,
    Right,
}

/// Symbolic prime end of a catalog domain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PrimeEndRef {
    /// A boundary point with a single access.
    Finite(Complex),
    /// A non-tip point of a slit, approached from one side.
    Slit { point: Complex, side: SlitSide },
    /// The (unique) access to infinity of an unbounded catalog domain.
    Infinity,
}

fn near(a: f64, b: f64, scale: f64) -> bool {
    (a - b).abs() <= 1e-9 * scale.max(1.0)
}

impl DomainSpec {
    pub fn sector(half_angle: f64, rotation: Complex) -> Self {
        DomainSpec::Sector { half_angle, rotation }
    }

    pub fn koebe(tip: Complex) -> Self {
        DomainSpec::KoebeSlit { tip }
    }

    pub fn shifted(offset: f64) -> Self {
        DomainSpec::ShiftedHalfPlane { offset }
    }

    pub fn affine(base: DomainSpec, scale: Complex, translation: Complex) -> Self {
        DomainSpec::Affine { base: Box::new(base), scale, translation }
    }

    /// Short variant name for messages.
    pub fn kind_name(&self) -> &'static str {
        match self {
            DomainSpec::Disc => "disc",
            DomainSpec::RightHalfPlane => "halfplane",
            DomainSpec::UpperHalfPlane => "upper_halfplane",
            DomainSpec::ShiftedHalfPlane { .. } => "shifted_halfplane",
            DomainSpec::Sector { .. } => "sector",
            DomainSpec::KoebeSlit { .. } => "koebe_slit",
            DomainSpec::Affine { .. } => "affine",
        }
    }

    fn affine_depth(&self) -> usize {
        match self {
            DomainSpec::Affine { base, .. } => 1 + base.affine_depth(),
            _ => 0,
        }
    }

    /// Checks parameter ranges and the affine nesting bound.
    pub fn validate(&self) -> Result<()> {
        let finite = |z: Complex| z.re.is_finite() && z.im.is_finite();
        match self {
            DomainSpec::Disc | DomainSpec::RightHalfPlane | DomainSpec::UpperHalfPlane => Ok(()),
            DomainSpec::ShiftedHalfPlane { offset } => {
                if *offset > 0.0 && offset.is_finite() {
                    Ok(())
                } else {
                    Err(Error::InvalidParameter { name: "shifted half-plane offset", value: *offset })
                }
            }
            DomainSpec::Sector { half_angle, rotation } => {
                if !(*half_angle > 0.0 && *half_angle < PI) {
                    return Err(Error::InvalidParameter { name: "sector half-angle", value: *half_angle });
                }
                if !finite(*rotation) || (rotation.norm() - 1.0).abs() > BOUNDARY_TOL {
                    return Err(Error::InvalidParameter { name: "sector rotation modulus", value: rotation.norm() });
                }
                Ok(())
            }
            DomainSpec::KoebeSlit { tip } => {
                if finite(*tip) {
                    Ok(())
                } else {
                    Err(Error::InvalidDomain(format!("koebe slit tip {tip} is not finite")))
                }
            }
            DomainSpec::Affine { base, scale, translation } => {
                if self.affine_depth() > MAX_AFFINE_DEPTH {
                    return Err(Error::InvalidDomain(format!("affine nesting deeper than {MAX_AFFINE_DEPTH}")));
                }
                if !finite(*scale) || scale.norm() == 0.0 {
                    return Err(Error::InvalidParameter { name: "affine scale modulus", value: scale.norm() });
                }
                if !finite(*translation) {
                    return Err(Error::InvalidDomain(format!("affine translation {translation} is not finite")));
                }
                base.validate()
            }
        }
    }

    /// Exact analytic membership.
    pub fn contains(&self, z: Complex) -> bool {
        if !(z.re.is_finite() && z.im.is_finite()) {
            return false;
        }
        match self {
            DomainSpec::Disc => z.norm_sqr() < 1.0,
            DomainSpec::RightHalfPlane => z.re > 0.0,
            DomainSpec::UpperHalfPlane => z.im > 0.0,
            DomainSpec::ShiftedHalfPlane { offset } => z.re > *offset,
            DomainSpec::Sector { half_angle, rotation } => {
                let u = z * rotation.conj();
                u != Complex::new(0.0, 0.0) && u.arg().abs() < *half_angle
            }
            DomainSpec::KoebeSlit { tip } => !(z.re == tip.re && z.im <= tip.im),
            DomainSpec::Affine { base, scale, translation } => base.contains((z - translation) / scale),
        }
    }

    /// Euclidean distance from `z` to the boundary (0 outside the domain).
    pub fn boundary_distance(&self, z: Complex) -> f64 {
        if !self.contains(z) {
            return 0.0;
        }
        match self {
            DomainSpec::Disc => 1.0 - z.norm(),
            DomainSpec::RightHalfPlane => z.re,
            DomainSpec::UpperHalfPlane => z.im,
            DomainSpec::ShiftedHalfPlane { offset } => z.re - offset,
            DomainSpec::Sector { half_angle, rotation } => {
                let u = z * rotation.conj();
                let gap = half_angle - u.arg().abs();
                if gap >= FRAC_PI_2 {
                    u.norm()
                } else {
                    u.norm() * gap.sin()
                }
            }
            DomainSpec::KoebeSlit { tip } => {
                let q = z - tip;
                if q.im <= 0.0 {
                    q.re.abs()
                } else {
                    q.norm()
                }
            }
            DomainSpec::Affine { base, scale, translation } => scale.norm() * base.boundary_distance((z - translation) / scale),
        }
    }

    /// Rejects points that are outside or within [`BOUNDARY_TOL`] of the boundary.
    pub fn require_interior(&self, z: Complex) -> Result<()> {
        if self.contains(z) && self.boundary_distance(z) > BOUNDARY_TOL {
            Ok(())
        } else {
            Err(Error::outside(z, self.kind_name()))
        }
    }

    /// Riemann map onto the hub half-plane.
    pub fn to_hub(&self, z: Complex) -> Complex {
        match self {
            DomainSpec::Disc => cayley(z),
            DomainSpec::RightHalfPlane => z,
            DomainSpec::UpperHalfPlane => Complex::new(z.im, -z.re),
            DomainSpec::ShiftedHalfPlane { offset } => Complex::new(z.re - offset, z.im),
            DomainSpec::Sector { half_angle, rotation } => (z * rotation.conj()).powf(FRAC_PI_2 / half_angle),
            DomainSpec::KoebeSlit { tip } => (-I * (z - tip)).sqrt(),
            DomainSpec::Affine { base, scale, translation } => base.to_hub((z - translation) / scale),
        }
    }

    /// Derivative of [`DomainSpec::to_hub`].
    pub fn to_hub_derivative(&self, z: Complex) -> Complex {
        match self {
            DomainSpec::Disc => {
                let d = ONE - z;
                2.0 / (d * d)
            }
            DomainSpec::RightHalfPlane | DomainSpec::ShiftedHalfPlane { .. } => ONE,
            DomainSpec::UpperHalfPlane => -I,
            DomainSpec::Sector { half_angle, rotation } => {
                let k = FRAC_PI_2 / half_angle;
                let u = z * rotation.conj();
                u.powf(k - 1.0) * k * rotation.conj()
            }
            DomainSpec::KoebeSlit { tip } => -I / (2.0 * (-I * (z - tip)).sqrt()),
            DomainSpec::Affine { base, scale, translation } => base.to_hub_derivative((z - translation) / scale) / scale,
        }
    }

    /// Inverse of [`DomainSpec::to_hub`].
    pub fn from_hub(&self, w: Complex) -> Complex {
        match self {
            DomainSpec::Disc => cayley_inverse(w),
            DomainSpec::RightHalfPlane => w,
            DomainSpec::UpperHalfPlane => Complex::new(-w.im, w.re),
            DomainSpec::ShiftedHalfPlane { offset } => Complex::new(w.re + offset, w.im),
            DomainSpec::Sector { half_angle, rotation } => *rotation * w.powf(half_angle / FRAC_PI_2),
            DomainSpec::KoebeSlit { tip } => tip + I * w * w,
            DomainSpec::Affine { base, scale, translation } => scale * base.from_hub(w) + translation,
        }
    }

    /// Derivative of [`DomainSpec::from_hub`].
    pub fn from_hub_derivative(&self, w: Complex) -> Complex {
        match self {
            DomainSpec::Disc => {
                let d = w + 1.0;
                2.0 / (d * d)
            }
            DomainSpec::RightHalfPlane | DomainSpec::ShiftedHalfPlane { .. } => ONE,
            DomainSpec::UpperHalfPlane => I,
            DomainSpec::Sector { half_angle, rotation } => {
                let k = half_angle / FRAC_PI_2;
                *rotation * w.powf(k - 1.0) * k
            }
            DomainSpec::KoebeSlit { .. } => 2.0 * I * w,
            DomainSpec::Affine { base, scale, .. } => scale * base.from_hub_derivative(w),
        }
    }

    /// Unit direction of the access to infinity, if the domain is unbounded.
    pub fn infinity_direction(&self) -> Option<Complex> {
        match self {
            DomainSpec::Disc => None,
            DomainSpec::RightHalfPlane | DomainSpec::ShiftedHalfPlane { .. } => Some(ONE),
            DomainSpec::UpperHalfPlane | DomainSpec::KoebeSlit { .. } => Some(I),
            DomainSpec::Sector { rotation, .. } => Some(*rotation),
            DomainSpec::Affine { base, scale, .. } => base.infinity_direction().map(|d| d * scale / scale.norm()),
        }
    }

    /// Translates a symbolic prime end into its hub representation.
    pub fn prime_end_to_hub(&self, end: &PrimeEndRef) -> Result<HubEnd> {
        let illegal = || Error::IllegalPrimeEnd(format!("{end:?} is not a prime end of {}", self.kind_name()));
        match (self, end) {
            (DomainSpec::Affine { base, scale, translation }, _) => {
                let pulled = match *end {
                    PrimeEndRef::Finite(b) => PrimeEndRef::Finite((b - translation) / scale),
                    PrimeEndRef::Slit { point, side } => PrimeEndRef::Slit { point: (point - translation) / scale, side },
                    PrimeEndRef::Infinity => PrimeEndRef::Infinity,
                };
                base.prime_end_to_hub(&pulled).map_err(|_| illegal())
            }
            (DomainSpec::Disc, PrimeEndRef::Infinity) => Err(illegal()),
            (_, PrimeEndRef::Infinity) => Ok(HubEnd::Infinity),
            (DomainSpec::Disc, PrimeEndRef::Finite(s)) => {
                if (s.norm() - 1.0).abs() > BOUNDARY_TOL {
                    return Err(illegal());
                }
                let d = ONE - s;
                if d.norm_sqr() == 0.0 {
                    Ok(HubEnd::Infinity)
                } else {
                    // Cayley image of a circle point is 2i Im(s)/|1 - s|^2
                    Ok(HubEnd::Imaginary(2.0 * s.im / d.norm_sqr()))
                }
            }
            (DomainSpec::RightHalfPlane, PrimeEndRef::Finite(b)) if near(b.re, 0.0, b.norm()) => Ok(HubEnd::Imaginary(b.im)),
            (DomainSpec::UpperHalfPlane, PrimeEndRef::Finite(b)) if near(b.im, 0.0, b.norm()) => Ok(HubEnd::Imaginary(-b.re)),
            (DomainSpec::ShiftedHalfPlane { offset }, PrimeEndRef::Finite(b)) if near(b.re, *offset, b.norm()) => {
                Ok(HubEnd::Imaginary(b.im))
            }
            (DomainSpec::Sector { half_angle, rotation }, PrimeEndRef::Finite(b)) => {
                let u = b * rotation.conj();
                let r = u.norm();
                if r <= BOUNDARY_TOL {
                    return Ok(HubEnd::Imaginary(0.0));
                }
                let a = u.arg();
                if !near(a.abs(), *half_angle, 1.0) {
                    return Err(illegal());
                }
                let y = r.powf(FRAC_PI_2 / half_angle);
                Ok(HubEnd::Imaginary(if a > 0.0 { y } else { -y }))
            }
            (DomainSpec::KoebeSlit { tip }, PrimeEndRef::Finite(b)) if (b - tip).norm() <= BOUNDARY_TOL => Ok(HubEnd::Imaginary(0.0)),
            (DomainSpec::KoebeSlit { tip }, PrimeEndRef::Slit { point, side }) => {
                let q = point - tip;
                if !near(q.re, 0.0, q.norm()) || !(q.im < 0.0) {
                    return Err(illegal());
                }
                let y = (-q.im).sqrt();
                Ok(HubEnd::Imaginary(match side {
                    SlitSide::Left => y,
                    SlitSide::Right => -y,
                }))
            }
            _ => Err(illegal()),
        }
    }

    /// Symbolic prime end corresponding to a hub boundary point.
    pub fn hub_to_prime_end(&self, end: HubEnd) -> PrimeEndRef {
        let y = match end {
            HubEnd::Infinity => {
                return match self {
                    DomainSpec::Disc => PrimeEndRef::Finite(ONE),
                    DomainSpec::Affine { base, scale, translation } => match base.hub_to_prime_end(end) {
                        PrimeEndRef::Finite(b) => PrimeEndRef::Finite(scale * b + translation),
                        other => other,
                    },
                    _ => PrimeEndRef::Infinity,
                };
            }
            HubEnd::Imaginary(y) => y,
        };
        match self {
            DomainSpec::Disc => PrimeEndRef::Finite(cayley_inverse(Complex::new(0.0, y))),
            DomainSpec::RightHalfPlane => PrimeEndRef::Finite(Complex::new(0.0, y)),
            DomainSpec::UpperHalfPlane => PrimeEndRef::Finite(Complex::new(-y, 0.0)),
            DomainSpec::ShiftedHalfPlane { offset } => PrimeEndRef::Finite(Complex::new(*offset, y)),
            DomainSpec::Sector { half_angle, rotation } => {
                if y == 0.0 {
                    return PrimeEndRef::Finite(Complex::new(0.0, 0.0));
                }
                let r = y.abs().powf(half_angle / FRAC_PI_2);
                let a = if y > 0.0 { *half_angle } else { -half_angle };
                PrimeEndRef::Finite(*rotation * Complex::from_polar(r, a))
            }
            DomainSpec::KoebeSlit { tip } => {
                if y == 0.0 {
                    PrimeEndRef::Finite(*tip)
                } else {
                    let point = tip - I * (y * y);
                    let side = if y > 0.0 { SlitSide::Left } else { SlitSide::Right };
                    PrimeEndRef::Slit { point, side }
                }
            }
            DomainSpec::Affine { base, scale, translation } => match base.hub_to_prime_end(end) {
                PrimeEndRef::Finite(b) => PrimeEndRef::Finite(scale * b + translation),
                PrimeEndRef::Slit { point, side } => PrimeEndRef::Slit { point: scale * point + translation, side },
                PrimeEndRef::Infinity => PrimeEndRef::Infinity,
            },
        }
    }

    /// Whether `D + t * direction` stays inside `D` for all `t >= 0`.
    pub fn invariant_under_translation(&self, direction: Complex) -> bool {
        let d = direction;
        if d.norm() == 0.0 {
            return true;
        }
        let tol = 1e-12 * d.norm();
        match self {
            DomainSpec::Disc => false,
            DomainSpec::RightHalfPlane | DomainSpec::ShiftedHalfPlane { .. } => d.re >= -tol,
            DomainSpec::UpperHalfPlane => d.im >= -tol,
            DomainSpec::Sector { half_angle, rotation } => {
                let u = d * rotation.conj();
                if *half_angle <= FRAC_PI_2 {
                    // convex cone: direction must lie in its closure
                    u.arg().abs() <= half_angle + 1e-12
                } else {
                    // the complement is a convex cone and must contain -direction
                    u.arg().abs() <= PI - half_angle + 1e-12
                }
            }
            DomainSpec::KoebeSlit { .. } => d.re.abs() <= tol && d.im > 0.0,
            DomainSpec::Affine { base, scale, .. } => base.invariant_under_translation(d / scale),
        }
    }

    /// Hub point whose image is used as the default base point.
    pub fn canonical_point(&self) -> Complex {
        self.from_hub(ONE)
    }
}

/// Whether `D + it` is contained in `D` for every `t >= 0`.
pub fn starlike_at_infinity(spec: &DomainSpec) -> bool {
    spec.invariant_under_translation(I)
}

/// Exact analytic membership.
pub fn domain_contains(spec: &DomainSpec, z: Complex) -> bool {
    spec.contains(z)
}

/// Vertical semistrip `{a < Re z < b, Im z < c}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Semistrip {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl Semistrip {
    pub fn contains(&self, z: Complex) -> bool {
        self.a < z.re && z.re < self.b && z.im < self.c
    }
}

/// Decides analytically whether the whole boundary of `spec` lies in the
/// semistrip. Only (affine images of) slit domains with a downward slit can
/// qualify; every other catalog boundary is unbounded sideways or upwards.
pub fn boundary_in_semistrip(spec: &DomainSpec, strip: &Semistrip) -> bool {
    fn slit(spec: &DomainSpec) -> Option<(Complex, Complex)> {
        // (tip, direction of the slit)
        match spec {
            DomainSpec::KoebeSlit { tip } => Some((*tip, -I)),
            DomainSpec::Affine { base, scale, translation } => slit(base).map(|(tip, dir)| (scale * tip + translation, scale * dir)),
            _ => None,
        }
    }
    match slit(spec) {
        Some((tip, dir)) => {
            let dir = dir / dir.norm();
            dir.re.abs() <= 1e-12 && dir.im < 0.0 && strip.contains(tip)
        }
        None => match spec {
            DomainSpec::Disc => strip.a < -1.0 && strip.b > 1.0 && strip.c > 1.0,
            DomainSpec::Affine { base, scale, translation } if matches!(**base, DomainSpec::Disc) => {
                let r = scale.norm();
                strip.a < translation.re - r && strip.b > translation.re + r && strip.c > translation.im + r
            }
            _ => false,
        },
    }
}

/// Biholomorphism between two catalog domains, routed through the hub.
#[derive(Debug, Clone, PartialEq)]
pub struct ConformalMap {
    source: DomainSpec,
    target: DomainSpec,
}

impl ConformalMap {
    pub fn source(&self) -> &DomainSpec {
        &self.source
    }

    pub fn target(&self) -> &DomainSpec {
        &self.target
    }

    pub fn forward(&self, z: Complex) -> Complex {
        self.target.from_hub(self.source.to_hub(z))
    }

    pub fn inverse(&self, w: Complex) -> Complex {
        self.source.from_hub(self.target.to_hub(w))
    }

    pub fn derivative(&self, z: Complex) -> Complex {
        let h = self.source.to_hub(z);
        self.target.from_hub_derivative(h) * self.source.to_hub_derivative(z)
    }

    /// [`ConformalMap::forward`] with membership checks on both sides.
    pub fn apply(&self, z: Complex) -> Result<Complex> {
        self.source.require_interior(z)?;
        let w = self.forward(z);
        if self.target.contains(w) {
            Ok(w)
        } else {
            Err(Error::outside(w, self.target.kind_name()))
        }
    }

    /// [`ConformalMap::inverse`] with membership checks on both sides.
    pub fn apply_inverse(&self, w: Complex) -> Result<Complex> {
        self.target.require_interior(w)?;
        let z = self.inverse(w);
        if self.source.contains(z) {
            Ok(z)
        } else {
            Err(Error::outside(z, self.source.kind_name()))
        }
    }

    pub fn inverted(&self) -> ConformalMap {
        ConformalMap { source: self.target.clone(), target: self.source.clone() }
    }
}

/// Conformal map from `source` onto `target`.
pub fn atlas_map(source: &DomainSpec, target: &DomainSpec) -> Result<ConformalMap> {
    source.validate()?;
    target.validate()?;
    Ok(ConformalMap { source: source.clone(), target: target.clone() })
}

/// Prime end of `map.target` corresponding to `end` under `map`.
pub fn prime_end_image(map: &ConformalMap, end: &PrimeEndRef) -> Result<PrimeEndRef> {
    let hub = map.source.prime_end_to_hub(end)?;
    Ok(map.target.hub_to_prime_end(hub))
}

/// Human-readable description used in error messages.
pub fn describe(spec: &DomainSpec) -> String {
    format!("{spec:?}")
}
