//! Sampled piecewise-C¹ curves and hyperbolic length integration.

use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use crate::quad::{integrate, LENGTH_REL_TOL};
use crate::{Complex, Error, Result};

/// Analytic parameterisation: `u -> (gamma(u), gamma'(u))`.
pub type CurvePath = Arc<dyn Fn(f64) -> (Complex, Complex) + Send + Sync>;

/// A curve known at strictly increasing parameters.
///
/// Between samples the curve follows `path` when one is attached and straight
/// segments otherwise.
#[derive(Clone)]
pub struct SampledCurve {
    params: Vec<f64>,
    points: Vec<Complex>,
    path: Option<CurvePath>,
}

impl fmt::Debug for SampledCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SampledCurve")
            .field("params", &self.params)
            .field("points", &self.points)
            .field("analytic", &self.path.is_some())
            .finish()
    }
}

impl SampledCurve {
    /// Polygonal curve through `points`.
    pub fn from_samples(params: Vec<f64>, points: Vec<Complex>) -> Result<Self> {
        let curve = SampledCurve { params, points, path: None };
        curve.check()?;
        Ok(curve)
    }

    /// Samples `path` at `n` equally spaced parameters of `[a, b]`.
    pub fn from_path(a: f64, b: f64, n: usize, path: CurvePath) -> Result<Self> {
        if n < 2 || !(b > a) {
            return Err(Error::InvalidCurve("need n >= 2 samples on an interval with a < b"));
        }
        let params: Vec<f64> = (0..n).map(|k| if k + 1 == n { b } else { a + (b - a) * k as f64 / (n - 1) as f64 }).collect();
        Self::from_path_params(params, path)
    }

    /// Samples `path` at the given parameters.
    pub fn from_path_params(params: Vec<f64>, path: CurvePath) -> Result<Self> {
        let points = params.iter().map(|&u| path(u).0).collect();
        let curve = SampledCurve { params, points, path: Some(path) };
        curve.check()?;
        Ok(curve)
    }

    fn check(&self) -> Result<()> {
        if self.params.len() != self.points.len() {
            return Err(Error::InvalidCurve("params and points differ in length"));
        }
        if self.params.len() < 2 {
            return Err(Error::InvalidCurve("fewer than two samples"));
        }
        if self.params.iter().any(|u| !u.is_finite()) || self.points.iter().any(|p| !p.re.is_finite() || !p.im.is_finite()) {
            return Err(Error::InvalidCurve("non-finite sample"));
        }
        if self.params.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::InvalidCurve("parameters are not strictly increasing"));
        }
        if self.points.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidCurve("consecutive samples coincide"));
        }
        Ok(())
    }

    pub fn params(&self) -> &[f64] {
        &self.params
    }

    pub fn points(&self) -> &[Complex] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.params.len()
    }

    pub fn is_empty(&self) -> bool {
        self.params.is_empty()
    }

    pub fn is_analytic(&self) -> bool {
        self.path.is_some()
    }

    pub fn first(&self) -> Complex {
        self.points[0]
    }

    pub fn last(&self) -> Complex {
        self.points[self.points.len() - 1]
    }

    /// Index `i` with `params[i] <= u <= params[i + 1]`, clamped to the ends.
    fn interval_of(&self, u: f64) -> usize {
        let n = self.params.len();
        match self.params.binary_search_by(|p| p.total_cmp(&u)) {
            Ok(i) => i.min(n - 2),
            Err(0) => 0,
            Err(i) => (i - 1).min(n - 2),
        }
    }

    /// Position and velocity at parameter `u` (clamped to the parameter range).
    pub fn eval(&self, u: f64) -> (Complex, Complex) {
        let u = u.max(self.params[0]).min(self.params[self.params.len() - 1]);
        if let Some(path) = &self.path {
            return path(u);
        }
        let i = self.interval_of(u);
        let (u0, u1) = (self.params[i], self.params[i + 1]);
        let (p0, p1) = (self.points[i], self.points[i + 1]);
        let velocity = (p1 - p0) / (u1 - u0);
        (p0 + velocity * (u - u0), velocity)
    }

    pub fn position(&self, u: f64) -> Complex {
        self.eval(u).0
    }

    /// Length of the piece over `[s, t]` under the metric with the given
    /// density. The density must return NaN outside its domain.
    pub fn length_between<D: Fn(Complex) -> f64>(&self, density: &D, s: f64, t: f64) -> Result<f64> {
        if s == t {
            return Ok(0.0);
        }
        let (lo, hi) = if s < t { (s, t) } else { (t, s) };
        let i0 = self.interval_of(lo);
        let i1 = self.interval_of(hi);
        let mut total = 0.0;
        for i in i0..=i1 {
            let a = self.params[i].max(lo);
            let b = self.params[i + 1].min(hi);
            if b > a {
                total += self.piece_length(density, i, a, b)?;
            }
        }
        Ok(total)
    }

    /// Lengths of each sample-to-sample piece.
    pub fn piece_lengths<D: Fn(Complex) -> f64>(&self, density: &D) -> Result<Vec<f64>> {
        (0..self.params.len() - 1).map(|i| self.piece_length(density, i, self.params[i], self.params[i + 1])).collect()
    }

    /// Total length under the given density.
    pub fn length<D: Fn(Complex) -> f64>(&self, density: &D) -> Result<f64> {
        Ok(self.piece_lengths(density)?.iter().sum())
    }

    fn piece_length<D: Fn(Complex) -> f64>(&self, density: &D, i: usize, a: f64, b: f64) -> Result<f64> {
        match &self.path {
            Some(path) => integrate(
                |u| {
                    let (p, v) = path(u);
                    density(p) * v.norm()
                },
                a,
                b,
                LENGTH_REL_TOL,
            ),
            None => {
                let (u0, u1) = (self.params[i], self.params[i + 1]);
                let (p0, p1) = (self.points[i], self.points[i + 1]);
                let velocity = (p1 - p0) / (u1 - u0);
                let speed = velocity.norm();
                integrate(|u| density(p0 + velocity * (u - u0)) * speed, a, b, LENGTH_REL_TOL)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    #[test]
    fn rejects_malformed_samples() {
        assert!(SampledCurve::from_samples(vec![0.0], vec![c(0.0, 0.0)]).is_err());
        assert!(SampledCurve::from_samples(vec![0.0, 0.0], vec![c(0.0, 0.0), c(1.0, 0.0)]).is_err());
        assert!(SampledCurve::from_samples(vec![0.0, 1.0], vec![c(1.0, 0.0), c(1.0, 0.0)]).is_err());
        assert!(SampledCurve::from_samples(vec![0.0, 1.0, 2.0], vec![c(1.0, 0.0), c(2.0, 0.0)]).is_err());
    }

    #[test]
    fn euclidean_length_of_polyline() {
        let curve = SampledCurve::from_samples(vec![0.0, 1.0, 2.0], vec![c(0.0, 0.0), c(3.0, 4.0), c(3.0, 5.0)]).unwrap();
        let len = curve.length(&|_| 1.0).unwrap();
        assert!((len - 6.0).abs() < 1e-12);
        let part = curve.length_between(&|_| 1.0, 0.5, 1.5).unwrap();
        assert!((part - 3.0).abs() < 1e-12);
        assert_eq!(curve.length_between(&|_| 1.0, 0.7, 0.7).unwrap(), 0.0);
    }

    #[test]
    fn analytic_path_is_used_between_samples() {
        // unit circle sampled at only three points; the analytic length is pi
        let path: CurvePath = Arc::new(|u: f64| (Complex::from_polar(1.0, u), Complex::new(-u.sin(), u.cos())));
        let curve = SampledCurve::from_path(0.0, core::f64::consts::PI, 3, path).unwrap();
        let len = curve.length(&|_| 1.0).unwrap();
        assert!((len - core::f64::consts::PI).abs() < 1e-12);
        let mid = curve.position(core::f64::consts::FRAC_PI_2);
        assert!((mid - c(0.0, 1.0)).norm() < 1e-15);
    }
}
