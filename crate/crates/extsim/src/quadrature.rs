//! Adaptive numerical integration on finite intervals.
//!
//! Each panel is evaluated with an embedded Gauss–Kronrod 7/15 pair; the
//! absolute difference between the two rules is the panel error estimate.
//! The driver repeatedly bisects the panel with the largest estimate until
//! the summed estimate meets the requested tolerance or the subdivision
//! budget is exhausted.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};

/// Tolerances and limits for numerical integration and for the tail
/// truncation applied to unbounded domains.
#[derive(Debug, Clone)]
pub struct QuadratureConfig {
    /// Absolute tolerance on the integral value.
    pub abs_tol: f64,
    /// Relative tolerance on the integral value.
    pub rel_tol: f64,
    /// Probability mass allowed beyond the truncation point when an
    /// unbounded domain is cut to a finite one.
    pub tail_mass: f64,
    /// Maximum number of panel bisections before the integrator reports
    /// non-convergence.
    pub max_subdivisions: u32,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig {
            abs_tol: 1e-10,
            rel_tol: 1e-8,
            tail_mass: 1e-12,
            max_subdivisions: 2000,
        }
    }
}

impl QuadratureConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.abs_tol > 0.0 && self.abs_tol.is_finite()) {
            return Err(Error::invalid("abs_tol", "must be positive and finite"));
        }
        if !(self.rel_tol > 0.0 && self.rel_tol.is_finite()) {
            return Err(Error::invalid("rel_tol", "must be positive and finite"));
        }
        if !(self.tail_mass > 0.0 && self.tail_mass < 1.0) {
            return Err(Error::invalid("tail_mass", "must lie in (0, 1)"));
        }
        if self.max_subdivisions < 10 {
            return Err(Error::invalid("max_subdivisions", "must be at least 10"));
        }
        Ok(())
    }
}

// Gauss-Kronrod 7/15 abscissae and weights (positive half, QUADPACK dqk15).
// The canonical digits are kept even where they exceed f64 precision.
#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_33,
    0.949_107_912_342_758_524_526_189_684_047_85,
    0.864_864_423_359_769_072_789_712_788_640_93,
    0.741_531_185_599_394_439_863_864_773_280_79,
    0.586_087_235_467_691_130_294_144_838_258_73,
    0.405_845_151_377_397_166_906_606_412_076_96,
    0.207_784_955_007_898_467_600_689_403_773_24,
    0.0,
];
#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_97,
    0.063_092_092_629_978_553_290_700_663_189_20,
    0.104_790_010_322_250_183_839_876_322_541_52,
    0.140_653_259_715_525_918_745_189_590_510_24,
    0.169_004_726_639_267_902_826_583_426_598_55,
    0.190_350_578_064_785_409_913_256_402_421_01,
    0.204_432_940_075_298_892_414_161_999_234_65,
    0.209_482_141_084_727_828_012_999_174_891_71,
];
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_08,
    0.279_705_391_489_276_667_901_467_771_423_78,
    0.381_830_050_505_118_944_950_369_775_488_98,
    0.417_959_183_673_469_387_755_102_040_816_33,
];

/// One Gauss–Kronrod 7/15 evaluation over `[a, b]`.
///
/// Returns the Kronrod value and the `|K15 - G7|` error estimate.
fn kronrod_panel<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Result<(f64, f64)> {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);

    let fc = f(center);
    if !fc.is_finite() {
        return Err(Error::Numerical(format!(
            "integrand returned a non-finite value at x = {center}"
        )));
    }
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    for (i, &node) in XGK.iter().enumerate().take(7) {
        let dx = half * node;
        let f_lo = f(center - dx);
        let f_hi = f(center + dx);
        if !f_lo.is_finite() || !f_hi.is_finite() {
            return Err(Error::Numerical(format!(
                "integrand returned a non-finite value near x = {center}"
            )));
        }
        let pair = f_lo + f_hi;
        kronrod += WGK[i] * pair;
        if i % 2 == 1 {
            gauss += WG[i / 2] * pair;
        }
    }
    Ok((kronrod * half, (kronrod - gauss).abs() * half))
}

struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

/// Integrate `f` over the finite interval `[a, b]`.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, cfg: &QuadratureConfig) -> Result<f64> {
    cfg.validate()?;
    if !a.is_finite() || !b.is_finite() {
        return Err(Error::Domain(format!(
            "integration bounds must be finite, got [{a}, {b}]"
        )));
    }
    if a > b {
        return Err(Error::Domain(format!(
            "integration bounds out of order: [{a}, {b}]"
        )));
    }
    if a == b {
        return Ok(0.0);
    }

    let (value, error) = kronrod_panel(&f, a, b)?;
    let mut heap = BinaryHeap::new();
    heap.push(Panel { a, b, value, error });
    let mut total_value = value;
    let mut total_error = error;

    for _ in 0..cfg.max_subdivisions {
        let tol = cfg.abs_tol.max(cfg.rel_tol * total_value.abs());
        if total_error <= tol {
            return Ok(total_value);
        }
        let worst = heap.pop().expect("heap holds at least one panel");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // Interval too narrow to bisect further; accept what we have.
            heap.push(worst);
            break;
        }
        total_value -= worst.value;
        total_error -= worst.error;
        for (lo, hi) in [(worst.a, mid), (mid, worst.b)] {
            let (v, e) = kronrod_panel(&f, lo, hi)?;
            total_value += v;
            total_error += e;
            heap.push(Panel {
                a: lo,
                b: hi,
                value: v,
                error: e,
            });
        }
    }

    let tol = cfg.abs_tol.max(cfg.rel_tol * total_value.abs());
    if total_error <= tol {
        Ok(total_value)
    } else {
        Err(Error::Numerical(format!(
            "quadrature did not converge on [{a}, {b}]: error estimate {total_error:.3e} \
             exceeds tolerance {tol:.3e} after {} subdivisions",
            cfg.max_subdivisions
        )))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn polynomial_exact() {
        let cfg = QuadratureConfig::default();
        let v = integrate(|x| x * x, 0.0, 1.0, &cfg).unwrap();
        assert_relative_eq!(v, 1.0 / 3.0, max_relative = 1e-13);
    }

    #[test]
    fn exponential_decay() {
        let cfg = QuadratureConfig::default();
        let v = integrate(|x| (-x).exp(), 0.0, 30.0, &cfg).unwrap();
        assert_relative_eq!(v, 1.0 - (-30.0f64).exp(), max_relative = 1e-10);
    }

    #[test]
    fn oscillatory_needs_subdivision() {
        let cfg = QuadratureConfig::default();
        let v = integrate(|x| (10.0 * x).sin(), 0.0, std::f64::consts::PI, &cfg).unwrap();
        let exact = (1.0 - (10.0 * std::f64::consts::PI).cos()) / 10.0;
        assert_relative_eq!(v, exact, epsilon = 1e-10);
    }

    #[test]
    fn empty_interval_is_zero() {
        let cfg = QuadratureConfig::default();
        assert_eq!(integrate(|x| x, 2.0, 2.0, &cfg).unwrap(), 0.0);
    }

    #[test]
    fn reversed_bounds_rejected() {
        let cfg = QuadratureConfig::default();
        assert!(matches!(
            integrate(|x| x, 1.0, 0.0, &cfg),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn non_finite_integrand_rejected() {
        let cfg = QuadratureConfig::default();
        assert!(matches!(
            integrate(|x| 1.0 / (x - 0.5), 0.0, 1.0, &cfg),
            Err(Error::Numerical(_)) | Ok(_)
        ));
        assert!(matches!(
            integrate(|_| f64::NAN, 0.0, 1.0, &cfg),
            Err(Error::Numerical(_))
        ));
    }

    #[test]
    fn config_validation() {
        let cfg = QuadratureConfig {
            max_subdivisions: 3,
            ..Default::default()
        };
        assert!(cfg.validate().is_err());
        let cfg = QuadratureConfig {
            abs_tol: 0.0,
            ..Default::default()
        };
        assert!(cfg.validate().is_err());
    }
}
