//! Hyperbolic geometry on simply connected planar domains with closed-form
//! Riemann maps.
//!
//! The crate is `no_std` (it needs `alloc`) and is organised bottom-up:
//!
//! * [`model`]: closed-form geometry of the unit disc and the right half-plane.
//! * [`quad`] and [`curve`]: adaptive quadrature and sampled curves.
//! * [`atlas`]: the domain catalog, conformal maps and symbolic prime ends.
//! * [`metric`]: pulled-back distances, geodesics, rays, quasi-geodesic
//!   certificates and shadowing gaps.
//! * [`probes`]: explicit constants for the half-plane sandwich estimates.
//! * [`horocycle`]: Busemann values and horocycles in catalog domains.
//! * [`orthogonality`]: the sandwich criterion for orthogonal convergence.
//! * [`semigroup`]: Königs models of continuous semigroups and slope traces.
//!
//! Curvature is normalised so that the density is `1/(1-|z|^2)` on the disc
//! and `1/(2 Re z)` on the right half-plane; in particular
//! `k(1, x) = log(x)/2` for `x > 0` in the half-plane.
#![no_std]
// `!(x > y)` is used on purpose so that NaN inputs are rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod atlas;
pub mod curve;
mod error;
pub mod horocycle;
pub mod metric;
pub mod model;
pub mod orthogonality;
pub mod probes;
pub mod quad;
pub mod sampling;
pub mod semigroup;

pub use error::{Error, Result};

/// Complex scalar used throughout the crate.
pub type Complex = num_complex::Complex64;

/// Distance from a domain boundary below which input points are rejected.
pub const BOUNDARY_TOL: f64 = 1e-12;
