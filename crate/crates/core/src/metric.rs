//! Hyperbolic geometry of catalog domains by pullback through the hub.
//!
//! Distances are computed between hub images: `k_D(z, w) = k_H(phi(z), phi(w))`
//! where `phi` is the domain's map onto the right half-plane. Rays towards a
//! prime end are handled in a normalized hub coordinate `N` in which the end
//! sits at infinity; there the ray is the horizontal line
//! `xi(t) = Re(xi0) e^{2t} + i Im(xi0)`.

use alloc::sync::Arc;
use alloc::vec::Vec;

// float math for no_std; shadowed by inherent methods when std is linked
#[allow(unused_imports)]
use num_traits::Float;

use crate::atlas::{DomainSpec, HubEnd, PrimeEndRef};
use crate::curve::{CurvePath, SampledCurve};
use crate::model::{halfplane_distance, halfplane_geodesic_path, DEFAULT_GEODESIC_SAMPLES};
use crate::{Complex, Error, Result};

/// Samples used by [`qg_certify`] unless overridden.
pub const DEFAULT_QG_GRID: usize = 512;

/// Largest bracket endpoint tried by [`dist_to_ray`].
pub const MAX_BRACKET: f64 = 256.0;

const GOLDEN: f64 = 0.618_033_988_749_894_8;

/// Density of the hyperbolic metric of `spec` at `z`.
pub fn density_in(spec: &DomainSpec, z: Complex) -> Result<f64> {
    spec.require_interior(z)?;
    Ok(raw_density(spec, z))
}

fn raw_density(spec: &DomainSpec, z: Complex) -> f64 {
    if !spec.contains(z) {
        return f64::NAN;
    }
    let w = spec.to_hub(z);
    spec.to_hub_derivative(z).norm() / (2.0 * w.re)
}

/// Hyperbolic distance in `spec`.
pub fn pull_distance(spec: &DomainSpec, z: Complex, w: Complex) -> Result<f64> {
    spec.require_interior(z)?;
    spec.require_interior(w)?;
    Ok(halfplane_distance(spec.to_hub(z), spec.to_hub(w)))
}

/// Hyperbolic length of `curve` in `spec`.
pub fn curve_length_in(curve: &SampledCurve, spec: &DomainSpec) -> Result<f64> {
    for &p in curve.points() {
        spec.require_interior(p)?;
    }
    curve.length(&|z| raw_density(spec, z))
}

fn push_path(spec: &DomainSpec, hub_path: CurvePath) -> CurvePath {
    let spec = spec.clone();
    Arc::new(move |s: f64| {
        let (p, v) = hub_path(s);
        (spec.from_hub(p), spec.from_hub_derivative(p) * v)
    })
}

/// Geodesic of `spec` joining `z` to `w`, parameterized by arc length over `[0, k(z, w)]`.
pub fn geodesic_join(spec: &DomainSpec, z: Complex, w: Complex) -> Result<SampledCurve> {
    geodesic_join_sampled(spec, z, w, DEFAULT_GEODESIC_SAMPLES)
}

pub fn geodesic_join_sampled(spec: &DomainSpec, z: Complex, w: Complex, samples: usize) -> Result<SampledCurve> {
    spec.require_interior(z)?;
    spec.require_interior(w)?;
    if z == w {
        return Err(Error::Degenerate("geodesic endpoints coincide"));
    }
    let (length, hub_path) = halfplane_geodesic_path(spec.to_hub(z), spec.to_hub(w));
    SampledCurve::from_path(0.0, length, samples, push_path(spec, hub_path))
}

/// Normalized hub frame that sends a hub boundary point to infinity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EndFrame {
    end: HubEnd,
}

impl EndFrame {
    pub fn new(end: HubEnd) -> Self {
        EndFrame { end }
    }

    pub fn end(&self) -> HubEnd {
        self.end
    }

    /// `N(w) = w` for the end at infinity, `1/(w - iy)` for `iy`.
    pub fn normalize(&self, w: Complex) -> Complex {
        match self.end {
            HubEnd::Infinity => w,
            HubEnd::Imaginary(y) => 1.0 / (w - Complex::new(0.0, y)),
        }
    }

    pub fn denormalize(&self, xi: Complex) -> Complex {
        match self.end {
            HubEnd::Infinity => xi,
            HubEnd::Imaginary(y) => Complex::new(0.0, y) + 1.0 / xi,
        }
    }

    fn denormalize_derivative(&self, xi: Complex) -> Complex {
        match self.end {
            HubEnd::Infinity => Complex::new(1.0, 0.0),
            HubEnd::Imaginary(_) => -1.0 / (xi * xi),
        }
    }
}

/// Arc-length geodesic ray from `base` to a prime end of `domain`.
#[derive(Debug, Clone, PartialEq)]
pub struct GeodesicRay {
    domain: DomainSpec,
    base: Complex,
    end: PrimeEndRef,
    frame: EndFrame,
    xi0: Complex,
}

impl GeodesicRay {
    pub fn domain(&self) -> &DomainSpec {
        &self.domain
    }

    pub fn base(&self) -> Complex {
        self.base
    }

    pub fn end(&self) -> PrimeEndRef {
        self.end
    }

    pub fn frame(&self) -> EndFrame {
        self.frame
    }

    /// Ray point in normalized hub coordinates.
    pub fn normalized_point(&self, t: f64) -> Complex {
        Complex::new(self.xi0.re * (2.0 * t).exp(), self.xi0.im)
    }

    /// Ray point in hub coordinates.
    pub fn hub_point(&self, t: f64) -> Complex {
        self.frame.denormalize(self.normalized_point(t))
    }

    /// Ray point in domain coordinates; `point(0)` is the base.
    pub fn point(&self, t: f64) -> Complex {
        if t == 0.0 {
            return self.base;
        }
        self.domain.from_hub(self.hub_point(t))
    }

    /// Parameter at which the ray's normalized coordinate reaches real part `x`.
    pub fn param_at_normalized_re(&self, x: f64) -> f64 {
        0.5 * (x / self.xi0.re).ln()
    }

    /// Distance from a point given in normalized coordinates to `point(t)`.
    pub fn normalized_distance(&self, xi: Complex, t: f64) -> f64 {
        halfplane_distance(xi, self.normalized_point(t))
    }

    /// Analytic parameterization `t -> (point, velocity)`.
    pub fn path(&self) -> CurvePath {
        let (domain, frame, xi0) = (self.domain.clone(), self.frame, self.xi0);
        Arc::new(move |t: f64| {
            let e = (2.0 * t).exp();
            let xi = Complex::new(xi0.re * e, xi0.im);
            let w = frame.denormalize(xi);
            let v = domain.from_hub_derivative(w) * frame.denormalize_derivative(xi) * (2.0 * xi0.re * e);
            (domain.from_hub(w), v)
        })
    }

    /// The ray over `[0, t_max]` sampled at `samples` equally spaced parameters.
    pub fn to_curve(&self, t_max: f64, samples: usize) -> Result<SampledCurve> {
        SampledCurve::from_path(0.0, t_max, samples, self.path())
    }
}

/// Geodesic ray of `spec` starting at `base` and converging to `end`.
pub fn geodesic_ray(spec: &DomainSpec, base: Complex, end: &PrimeEndRef) -> Result<GeodesicRay> {
    spec.validate()?;
    spec.require_interior(base)?;
    let hub_end = spec.prime_end_to_hub(end)?;
    let frame = EndFrame::new(hub_end);
    let xi0 = frame.normalize(spec.to_hub(base));
    Ok(GeodesicRay { domain: spec.clone(), base, end: *end, frame, xi0 })
}

/// Closest ray parameter to `z` and the distance attained there.
///
/// The distance to a point is convex along a geodesic, so an exponential
/// bracket over `t in {0, 1, 2, 4, ...}` followed by golden-section search
/// finds the minimum.
pub fn closest_point(spec: &DomainSpec, z: Complex, ray: &GeodesicRay) -> Result<(f64, f64)> {
    spec.require_interior(z)?;
    let xi = ray.frame.normalize(spec.to_hub(z));
    let f = |t: f64| ray.normalized_distance(xi, t);
    let mut ts: Vec<f64> = alloc::vec![0.0];
    let mut fs: Vec<f64> = alloc::vec![f(0.0)];
    let mut t = 1.0;
    let mut rises = 0;
    let mut first_rise = None;
    while t <= MAX_BRACKET {
        let v = f(t);
        let rising = v >= fs[fs.len() - 1];
        ts.push(t);
        fs.push(v);
        if rising {
            rises += 1;
            first_rise.get_or_insert(ts.len() - 1);
            if rises == 2 {
                break;
            }
        } else {
            rises = 0;
            first_rise = None;
        }
        t *= 2.0;
    }
    let Some(k) = first_rise.filter(|_| rises == 2) else {
        return Err(Error::Diverging { last_bracket: ts[ts.len() - 1] });
    };
    let lo = if k >= 2 { ts[k - 2] } else { 0.0 };
    let hi = ts[k];
    let (t_min, d_min) = golden_section(&f, lo, hi);
    // the bracket's own samples guard the endpoints
    let (t_best, d_best) = (0..ts.len()).fold((t_min, d_min), |acc, i| if fs[i] < acc.1 { (ts[i], fs[i]) } else { acc });
    Ok((t_best, d_best))
}

fn golden_section<F: Fn(f64) -> f64>(f: &F, mut a: f64, mut b: f64) -> (f64, f64) {
    let mut c = b - GOLDEN * (b - a);
    let mut d = a + GOLDEN * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..200 {
        if (b - a) <= 1e-13 * b.abs().max(1.0) {
            break;
        }
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - GOLDEN * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + GOLDEN * (b - a);
            fd = f(d);
        }
    }
    let (fa, fb) = (f(a), f(b));
    [(a, fa), (b, fb), (c, fc), (d, fd)].into_iter().fold((c, fc), |acc, p| if p.1 < acc.1 { p } else { acc })
}

/// `inf_t k(z, ray(t))`.
pub fn dist_to_ray(spec: &DomainSpec, z: Complex, ray: &GeodesicRay) -> Result<f64> {
    closest_point(spec, z, ray).map(|(_, d)| d)
}

/// Outcome of checking the `(A, B)`-quasi-geodesic inequality on a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct QuasiGeodesicCertificate {
    pub a: f64,
    pub b: f64,
    /// `max (length - A k - B)` over the tested parameter pairs.
    pub max_defect: f64,
    /// Parameter pair attaining `max_defect`.
    pub witness: (f64, f64),
    pub grid: Vec<f64>,
    /// Numerical slack allowed on top of zero defect.
    pub slack: f64,
}

impl QuasiGeodesicCertificate {
    pub fn is_valid(&self) -> bool {
        self.max_defect <= self.slack
    }
}

/// Slack absorbing quadrature and rounding error in [`qg_certify`].
pub const QG_SLACK: f64 = 1e-7;

/// Certifies `curve` as an `(A, B)`-quasi-geodesic of `spec` on the default grid.
pub fn qg_certify(curve: &SampledCurve, spec: &DomainSpec, a: f64, b: f64) -> Result<QuasiGeodesicCertificate> {
    qg_certify_grid(curve, spec, a, b, DEFAULT_QG_GRID)
}

/// As [`qg_certify`], testing every pair among `grid_size` parameters
/// (the curve's samples, or evenly spaced parameters for analytic curves).
pub fn qg_certify_grid(curve: &SampledCurve, spec: &DomainSpec, a: f64, b: f64, grid_size: usize) -> Result<QuasiGeodesicCertificate> {
    if !(a >= 1.0) || !a.is_finite() {
        return Err(Error::InvalidParameter { name: "quasi-geodesic A", value: a });
    }
    if !(b >= 0.0) || !b.is_finite() {
        return Err(Error::InvalidParameter { name: "quasi-geodesic B", value: b });
    }
    for &p in curve.points() {
        spec.require_interior(p)?;
    }
    let params = curve.params();
    let (lo, hi) = (params[0], params[params.len() - 1]);
    let grid: Vec<f64> = if curve.is_analytic() && grid_size >= 2 {
        (0..grid_size).map(|k| if k + 1 == grid_size { hi } else { lo + (hi - lo) * k as f64 / (grid_size - 1) as f64 }).collect()
    } else {
        params.to_vec()
    };
    let hubs: Vec<Complex> = grid
        .iter()
        .map(|&u| {
            let p = curve.position(u);
            spec.require_interior(p).map(|_| spec.to_hub(p))
        })
        .collect::<Result<_>>()?;
    let density = |z: Complex| raw_density(spec, z);
    let mut prefix = alloc::vec![0.0; grid.len()];
    for i in 1..grid.len() {
        prefix[i] = prefix[i - 1] + curve.length_between(&density, grid[i - 1], grid[i])?;
    }
    let mut max_defect = f64::NEG_INFINITY;
    let mut witness = (grid[0], grid[0]);
    for i in 0..grid.len() {
        for j in i + 1..grid.len() {
            let defect = (prefix[j] - prefix[i]) - a * halfplane_distance(hubs[i], hubs[j]) - b;
            if defect > max_defect {
                max_defect = defect;
                witness = (grid[i], grid[j]);
            }
        }
    }
    Ok(QuasiGeodesicCertificate { a, b, max_defect, witness, grid, slack: QG_SLACK })
}

/// Distance from `z` to a sampled curve: nearest sample, then golden-section
/// refinement over the two adjacent parameter intervals.
pub fn dist_to_curve(spec: &DomainSpec, z: Complex, curve: &SampledCurve) -> Result<f64> {
    spec.require_interior(z)?;
    let hz = spec.to_hub(z);
    let f = |u: f64| {
        let p = curve.position(u);
        if spec.contains(p) {
            halfplane_distance(hz, spec.to_hub(p))
        } else {
            f64::INFINITY
        }
    };
    let params = curve.params();
    let (i, d) = params.iter().enumerate().map(|(i, &u)| (i, f(u))).fold((0, f64::INFINITY), |acc, p| if p.1 < acc.1 { p } else { acc });
    let lo = params[i.saturating_sub(1)];
    let hi = params[(i + 1).min(params.len() - 1)];
    let left = golden_section(&f, lo, params[i]).1;
    let right = golden_section(&f, params[i], hi).1;
    Ok(d.min(left).min(right))
}

/// Empirical two-sided shadowing constants between `curve` and `ray`:
/// the largest distance from a curve sample to the ray, and the largest
/// distance from the ray (up to the projection of the curve's last point)
/// back to the curve.
pub fn shadowing_gap(curve: &SampledCurve, ray: &GeodesicRay, spec: &DomainSpec) -> Result<(f64, f64)> {
    let mut to_ray: f64 = 0.0;
    for &p in curve.points() {
        to_ray = to_ray.max(dist_to_ray(spec, p, ray)?);
    }
    let (horizon, _) = closest_point(spec, curve.last(), ray)?;
    let n = curve.len().max(2);
    let mut to_curve: f64 = 0.0;
    for k in 0..n {
        let t = horizon * k as f64 / (n - 1) as f64;
        to_curve = to_curve.max(dist_to_curve(spec, ray.point(t), curve)?);
    }
    Ok((to_ray, to_curve))
}

/// `S(ray, R) = {z : k(z, ray) < R}`.
#[derive(Debug, Clone, PartialEq)]
pub struct HyperbolicSector {
    ray: GeodesicRay,
    radius: f64,
}

impl HyperbolicSector {
    pub fn new(ray: GeodesicRay, radius: f64) -> Result<Self> {
        if radius > 0.0 && radius.is_finite() {
            Ok(HyperbolicSector { ray, radius })
        } else {
            Err(Error::InvalidParameter { name: "sector radius", value: radius })
        }
    }

    pub fn ray(&self) -> &GeodesicRay {
        &self.ray
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn contains(&self, z: Complex) -> Result<bool> {
        Ok(dist_to_ray(self.ray.domain(), z, &self.ray)? < self.radius)
    }
}
