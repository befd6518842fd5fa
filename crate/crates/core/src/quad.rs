//! Globally adaptive Gauss–Kronrod (7/15) quadrature on finite intervals.

use alloc::collections::BinaryHeap;
use core::cmp::Ordering;

use crate::{Error, Result};

/// Default relative tolerance used for hyperbolic lengths.
pub const LENGTH_REL_TOL: f64 = 1e-10;

const MAX_SUBDIVISIONS: usize = 4000;

// Kronrod abscissae, descending; odd indices are the Gauss 7-point nodes.
// Tabulated digits are kept as published.
#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// One application of the 15-point Kronrod rule with its embedded 7-point
/// Gauss rule. Returns `(kronrod, |kronrod - gauss|)`.
pub fn gauss_kronrod15<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let dx = half * XGK[j];
        let pair = f(center - dx) + f(center + dx);
        kronrod += WGK[j] * pair;
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    (kronrod * half, ((kronrod - gauss) * half).abs())
}

#[derive(Clone, Copy)]
struct Piece {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Piece {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Piece {}
impl PartialOrd for Piece {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Piece {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

/// Integrates `f` over `[a, b]`, bisecting the piece with the largest error
/// estimate until the summed estimate drops below `rel_tol * |integral|`.
///
/// A NaN anywhere in the integrand is reported as a quadrature failure.
pub fn integrate<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64, rel_tol: f64) -> Result<f64> {
    if a == b {
        return Ok(0.0);
    }
    let (value, error) = gauss_kronrod15(&mut f, a, b);
    let mut total = value;
    let mut total_err = error;
    let mut heap = BinaryHeap::new();
    heap.push(Piece { a, b, value, error });
    let mut splits = 0;
    while total_err > rel_tol * total.abs() && total_err > f64::MIN_POSITIVE {
        if !total.is_finite() || splits >= MAX_SUBDIVISIONS {
            return Err(Error::Quadrature { estimate: total, error: total_err });
        }
        let Some(worst) = heap.pop() else { break };
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a.min(worst.b) || mid >= worst.a.max(worst.b) {
            // interval exhausted at machine resolution
            heap.push(Piece { error: 0.0, ..worst });
            if heap.iter().all(|p| p.error == 0.0) {
                break;
            }
            continue;
        }
        let (v1, e1) = gauss_kronrod15(&mut f, worst.a, mid);
        let (v2, e2) = gauss_kronrod15(&mut f, mid, worst.b);
        total += v1 + v2 - worst.value;
        total_err += e1 + e2 - worst.error;
        heap.push(Piece { a: worst.a, b: mid, value: v1, error: e1 });
        heap.push(Piece { a: mid, b: worst.b, value: v2, error: e2 });
        splits += 1;
        // running sums drift; resum occasionally
        if splits % 64 == 0 {
            total = heap.iter().map(|p| p.value).sum();
            total_err = heap.iter().map(|p| p.error).sum();
        }
    }
    let total: f64 = heap.iter().map(|p| p.value).sum();
    if total.is_nan() {
        return Err(Error::Quadrature { estimate: total, error: total_err });
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::PI;

    #[test]
    fn weights_sum_to_interval_length() {
        let k: f64 = WGK[7] + 2.0 * WGK[..7].iter().sum::<f64>();
        let g: f64 = WG[3] + 2.0 * WG[..3].iter().sum::<f64>();
        assert!((k - 2.0).abs() < 1e-15);
        assert!((g - 2.0).abs() < 1e-15);
    }

    #[test]
    fn kronrod_is_exact_for_degree_22() {
        // x^22 on [-1, 1] integrates to 2/23
        let (v, _) = gauss_kronrod15(&mut |x: f64| x.powi(22), -1.0, 1.0);
        assert!((v - 2.0 / 23.0).abs() < 1e-15);
        // the embedded Gauss rule is exact to degree 13, so the error vanishes
        let (_, e) = gauss_kronrod15(&mut |x: f64| x.powi(12) + x.powi(3), -1.0, 1.0);
        assert!(e < 1e-15);
    }

    #[test]
    fn adaptive_handles_peaked_integrand() {
        // integral of 1/(1e-4 + x^2) over [-1, 1] = 2 atan(100)/1e-2
        let exact = 2.0 * (100.0f64).atan() / 1e-2;
        let v = integrate(|x| 1.0 / (1e-4 + x * x), -1.0, 1.0, 1e-12).unwrap();
        assert!((v - exact).abs() / exact < 1e-11, "{v} vs {exact}");
    }

    #[test]
    fn reversed_and_empty_intervals() {
        let v = integrate(|x: f64| x.sin(), PI, 0.0, 1e-12).unwrap();
        assert!((v + 2.0).abs() < 1e-12);
        assert_eq!(integrate(|x: f64| x, 3.0, 3.0, 1e-12).unwrap(), 0.0);
    }

    #[test]
    fn nan_integrand_is_an_error() {
        assert!(matches!(integrate(|_| f64::NAN, 0.0, 1.0, 1e-10), Err(Error::Quadrature { .. })));
    }
}
