//! Parametric families with exact evaluators, exact sampling, and the
//! proportional (reversed) hazard transforms.
//!
//! Four families are supported: exponential, beta, uniform on `[a, b]`
//! with `a ≥ 0`, and the power distribution `F(x) = x^c` on `[0, 1]`.
//! Parameters are validated at construction; evaluators are pure and the
//! types are immutable, so values can be shared freely across threads.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use rand_distr::Distribution as _;
use statrs::function::beta::{beta_reg, ln_beta};

use crate::error::{Error, Result};
use crate::measures::{MeasureKind, ProbabilityFunction};

/// The supported distribution families.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Family {
    /// Exponential with rate `λ > 0` on `[0, ∞)`.
    Exponential { rate: f64 },
    /// Beta with shapes `α, β > 0` on `[0, 1]`.
    Beta { alpha: f64, beta: f64 },
    /// Uniform on `[lower, upper]`, `0 ≤ lower < upper`.
    Uniform { lower: f64, upper: f64 },
    /// Power distribution `F(x) = x^c` on `[0, 1]`, `c > 0`.
    Power { exponent: f64 },
}

/// A validated distribution of one of the four [`Family`] variants.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParametricDistribution {
    family: Family,
}

fn require_positive(name: &'static str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::invalid(name, format!("must be positive and finite, got {v}")))
    }
}

fn require_finite_x(x: f64) -> Result<()> {
    if x.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("evaluation point must be finite, got {x}")))
    }
}

/// Density limit at a support endpoint whose shape parameter is `own`
/// (the other shape enters the x^0-term's normalizer).
fn endpoint_density(own: f64, other: f64) -> f64 {
    if own < 1.0 {
        f64::INFINITY
    } else if own == 1.0 {
        (-ln_beta(own, other)).exp()
    } else {
        0.0
    }
}

impl ParametricDistribution {
    pub fn exponential(rate: f64) -> Result<Self> {
        require_positive("rate", rate)?;
        Ok(Self {
            family: Family::Exponential { rate },
        })
    }

    pub fn beta(alpha: f64, beta: f64) -> Result<Self> {
        require_positive("alpha", alpha)?;
        require_positive("beta", beta)?;
        Ok(Self {
            family: Family::Beta { alpha, beta },
        })
    }

    pub fn uniform(lower: f64, upper: f64) -> Result<Self> {
        if !(lower.is_finite() && lower >= 0.0) {
            return Err(Error::invalid("lower", "must be finite and ≥ 0"));
        }
        if !(upper.is_finite() && upper > lower) {
            return Err(Error::invalid("upper", "must be finite and exceed the lower bound"));
        }
        Ok(Self {
            family: Family::Uniform { lower, upper },
        })
    }

    pub fn power(exponent: f64) -> Result<Self> {
        require_positive("exponent", exponent)?;
        Ok(Self {
            family: Family::Power { exponent },
        })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    /// Support interval `[lo, hi]`; `hi` is `f64::INFINITY` for the
    /// exponential family.
    pub fn support(&self) -> (f64, f64) {
        match self.family {
            Family::Exponential { .. } => (0.0, f64::INFINITY),
            Family::Beta { .. } | Family::Power { .. } => (0.0, 1.0),
            Family::Uniform { lower, upper } => (lower, upper),
        }
    }

    fn pdf_raw(&self, x: f64) -> f64 {
        match self.family {
            Family::Exponential { rate } => {
                if x < 0.0 {
                    0.0
                } else {
                    rate * (-rate * x).exp()
                }
            }
            Family::Beta { alpha, beta } => {
                if !(0.0..=1.0).contains(&x) {
                    return 0.0;
                }
                if x == 0.0 {
                    return endpoint_density(alpha, beta);
                }
                if x == 1.0 {
                    return endpoint_density(beta, alpha);
                }
                ((alpha - 1.0) * x.ln() + (beta - 1.0) * (-x).ln_1p() - ln_beta(alpha, beta)).exp()
            }
            Family::Uniform { lower, upper } => {
                if x < lower || x > upper {
                    0.0
                } else {
                    1.0 / (upper - lower)
                }
            }
            Family::Power { exponent } => {
                if !(0.0..=1.0).contains(&x) {
                    return 0.0;
                }
                if x == 0.0 {
                    return endpoint_density(exponent, 1.0);
                }
                exponent * x.powf(exponent - 1.0)
            }
        }
    }

    fn cdf_raw(&self, x: f64) -> f64 {
        match self.family {
            Family::Exponential { rate } => {
                if x <= 0.0 {
                    0.0
                } else {
                    -(-rate * x).exp_m1()
                }
            }
            Family::Beta { alpha, beta } => {
                if x <= 0.0 {
                    0.0
                } else if x >= 1.0 {
                    1.0
                } else {
                    beta_reg(alpha, beta, x)
                }
            }
            Family::Uniform { lower, upper } => {
                if x <= lower {
                    0.0
                } else if x >= upper {
                    1.0
                } else {
                    (x - lower) / (upper - lower)
                }
            }
            Family::Power { exponent } => {
                if x <= 0.0 {
                    0.0
                } else if x >= 1.0 {
                    1.0
                } else {
                    x.powf(exponent)
                }
            }
        }
    }

    fn sf_raw(&self, x: f64) -> f64 {
        match self.family {
            // Computed directly for accuracy deep in the tail.
            Family::Exponential { rate } => {
                if x <= 0.0 {
                    1.0
                } else {
                    (-rate * x).exp()
                }
            }
            _ => 1.0 - self.cdf_raw(x),
        }
    }

    /// Density at `x` (0 outside the support).
    pub fn pdf(&self, x: f64) -> Result<f64> {
        require_finite_x(x)?;
        Ok(self.pdf_raw(x))
    }

    /// Distribution function `P(X ≤ x)`.
    pub fn cdf(&self, x: f64) -> Result<f64> {
        require_finite_x(x)?;
        Ok(self.cdf_raw(x))
    }

    /// Survival function `P(X > x)`.
    pub fn sf(&self, x: f64) -> Result<f64> {
        require_finite_x(x)?;
        Ok(self.sf_raw(x))
    }

    /// Hazard rate `f(x) / F̄(x)`; an error where the survival function
    /// vanishes.
    pub fn hazard(&self, x: f64) -> Result<f64> {
        require_finite_x(x)?;
        let sf = self.sf_raw(x);
        if sf <= 0.0 {
            return Err(Error::Domain(format!(
                "hazard undefined at x = {x}: survival function is zero"
            )));
        }
        Ok(self.pdf_raw(x) / sf)
    }

    /// Reversed hazard rate `f(x) / F(x)`; an error where the
    /// distribution function vanishes.
    pub fn reversed_hazard(&self, x: f64) -> Result<f64> {
        require_finite_x(x)?;
        let cdf = self.cdf_raw(x);
        if cdf <= 0.0 {
            return Err(Error::Domain(format!(
                "reversed hazard undefined at x = {x}: distribution function is zero"
            )));
        }
        Ok(self.pdf_raw(x) / cdf)
    }

    /// Quantile function for the closed-form families. The beta family
    /// has no closed-form quantile and is not required to provide one.
    fn quantile(&self, p: f64) -> Option<f64> {
        debug_assert!((0.0..=1.0).contains(&p));
        match self.family {
            Family::Exponential { rate } => Some(-(-p).ln_1p() / rate),
            Family::Uniform { lower, upper } => Some(lower + p * (upper - lower)),
            Family::Power { exponent } => Some(p.powf(1.0 / exponent)),
            Family::Beta { .. } => None,
        }
    }

    /// Draw `n ≥ 2` i.i.d. values, deterministically for a given seed.
    ///
    /// Exponential, uniform, and power values come from the closed-form
    /// quantile applied to uniform variates (inverse transform); beta
    /// values use the exact rejection sampler of `rand_distr` (Cheng's
    /// algorithms BB/BC). Both are exact methods, not approximations.
    pub fn sample(&self, n: usize, seed: u64) -> Result<SampleData> {
        if n < 2 {
            return Err(Error::SampleTooSmall { min: 2, got: n });
        }
        let mut rng = ChaCha12Rng::seed_from_u64(seed);
        let values: Vec<f64> = match self.family {
            Family::Beta { alpha, beta } => {
                let sampler = rand_distr::Beta::new(alpha, beta).map_err(|e| {
                    Error::invalid("beta", format!("sampler rejected parameters: {e}"))
                })?;
                (0..n).map(|_| sampler.sample(&mut rng)).collect()
            }
            _ => (0..n)
                .map(|_| {
                    let u: f64 = rng.random();
                    self.quantile(u).expect("closed-form quantile exists")
                })
                .collect(),
        };
        SampleData::new(values)
    }

    /// Density measure of this distribution.
    pub fn density_fn(&self) -> ProbabilityFunction {
        let d = *self;
        let pf = ProbabilityFunction::new(MeasureKind::Density, self.support(), move |x| {
            d.pdf_raw(x)
        })
        .expect("valid support");
        self.attach_tail(pf)
    }

    /// Survival measure of this distribution.
    pub fn survival_fn(&self) -> ProbabilityFunction {
        let d = *self;
        let pf = ProbabilityFunction::new(MeasureKind::Survival, self.support(), move |x| {
            d.sf_raw(x)
        })
        .expect("valid support");
        self.attach_tail(pf)
    }

    /// Cumulative measure of this distribution.
    pub fn cumulative_fn(&self) -> ProbabilityFunction {
        let d = *self;
        let pf = ProbabilityFunction::new(MeasureKind::Cumulative, self.support(), move |x| {
            d.cdf_raw(x)
        })
        .expect("valid support");
        self.attach_tail(pf)
    }

    /// All three measures at once.
    pub fn functions(&self) -> DistributionFunctions {
        DistributionFunctions {
            density: self.density_fn(),
            survival: self.survival_fn(),
            cumulative: self.cumulative_fn(),
        }
    }

    fn attach_tail(&self, pf: ProbabilityFunction) -> ProbabilityFunction {
        match self.family {
            Family::Exponential { rate } => pf.with_upper_tail(move |delta| -delta.ln() / rate),
            _ => pf,
        }
    }
}

/// The density, survival, and cumulative measures of one distribution
/// (possibly a transformed one with no parametric form).
#[derive(Debug, Clone)]
pub struct DistributionFunctions {
    pub density: ProbabilityFunction,
    pub survival: ProbabilityFunction,
    pub cumulative: ProbabilityFunction,
}

impl From<&ParametricDistribution> for DistributionFunctions {
    fn from(d: &ParametricDistribution) -> Self {
        d.functions()
    }
}

impl DistributionFunctions {
    pub fn of(&self, kind: MeasureKind) -> &ProbabilityFunction {
        match kind {
            MeasureKind::Density => &self.density,
            MeasureKind::Survival => &self.survival,
            MeasureKind::Cumulative => &self.cumulative,
        }
    }
}

/// Proportional hazards transform: the result has hazard `c · h(x)`,
/// equivalently survival `Ḡ = F̄^c`, cumulative `1 - F̄^c`, and density
/// `c · h(x) · F̄(x)^c`.
pub fn phm_transform(base: &DistributionFunctions, c: f64) -> Result<DistributionFunctions> {
    require_positive("c", c)?;
    let support = base.survival.support();

    let sf = base.survival.eval_fn();
    let survival = ProbabilityFunction::new(MeasureKind::Survival, support, {
        let sf = sf.clone();
        move |x| sf(x).powf(c)
    })?;

    let sf2 = base.survival.eval_fn();
    let cumulative = ProbabilityFunction::new(MeasureKind::Cumulative, support, move |x| {
        1.0 - sf2(x).powf(c)
    })?;

    let sf3 = base.survival.eval_fn();
    let pdf = base.density.eval_fn();
    let density = ProbabilityFunction::new(MeasureKind::Density, support, move |x| {
        let s = sf3(x);
        let f = pdf(x);
        if s <= 0.0 || f == 0.0 {
            0.0
        } else {
            // c · h(x) · F̄(x)^c = c · f(x) · F̄(x)^(c-1)
            c * f * s.powf(c - 1.0)
        }
    })?;

    // The tail of the transform relates to the base through
    // Ḡ(x) = F̄(x)^c, so a base point with mass δ^(1/c) has mass δ after
    // the transform.
    Ok(DistributionFunctions {
        density: compose_tail(&base.survival, density, move |d| d.powf(1.0 / c)),
        survival: compose_tail(&base.survival, survival, move |d| d.powf(1.0 / c)),
        cumulative,
    })
}

/// Proportional reversed hazards transform: `G = F^c`, survival
/// `1 - F^c`, density `c · f · F^(c-1)`.
pub fn prhm_transform(base: &DistributionFunctions, c: f64) -> Result<DistributionFunctions> {
    require_positive("c", c)?;
    let support = base.cumulative.support();

    let cdf = base.cumulative.eval_fn();
    let cumulative = ProbabilityFunction::new(MeasureKind::Cumulative, support, {
        let cdf = cdf.clone();
        move |x| cdf(x).powf(c)
    })?;

    let cdf2 = base.cumulative.eval_fn();
    let survival = ProbabilityFunction::new(MeasureKind::Survival, support, move |x| {
        1.0 - cdf2(x).powf(c)
    })?;

    let cdf3 = base.cumulative.eval_fn();
    let pdf = base.density.eval_fn();
    let density = ProbabilityFunction::new(MeasureKind::Density, support, move |x| {
        let p = cdf3(x);
        let f = pdf(x);
        if p <= 0.0 || f == 0.0 {
            0.0
        } else {
            c * f * p.powf(c - 1.0)
        }
    })?;

    // Upper tail of the transform: 1 - F^c ≤ δ ⟺ F̄ ≤ 1 - (1-δ)^(1/c).
    let map = move |d: f64| -((-d).ln_1p() / c).exp_m1();
    Ok(DistributionFunctions {
        density: compose_tail(&base.survival, density, map),
        survival: compose_tail(&base.survival, survival, map),
        cumulative,
    })
}

fn compose_tail<M>(
    base_survival: &ProbabilityFunction,
    pf: ProbabilityFunction,
    map: M,
) -> ProbabilityFunction
where
    M: Fn(f64) -> f64 + Send + Sync + 'static,
{
    match base_survival.upper_tail_fn() {
        Some(hint) => pf.with_upper_tail(move |delta| hint(map(delta))),
        None => pf,
    }
}

/// A finite sample of nonnegative reals with a cached sorted view.
#[derive(Debug, Clone)]
pub struct SampleData {
    values: Vec<f64>,
    sorted: Vec<f64>,
}

impl SampleData {
    /// Validate and wrap sample values: at least two, all finite and ≥ 0.
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::SampleTooSmall {
                min: 2,
                got: values.len(),
            });
        }
        if let Some(bad) = values.iter().find(|v| !v.is_finite() || **v < 0.0) {
            return Err(Error::invalid(
                "values",
                format!("sample values must be finite and ≥ 0, got {bad}"),
            ));
        }
        let mut sorted = values.clone();
        sorted.sort_by(f64::total_cmp);
        Ok(SampleData { values, sorted })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn sorted(&self) -> &[f64] {
        &self.sorted
    }

    pub fn min(&self) -> f64 {
        self.sorted[0]
    }

    pub fn max(&self) -> f64 {
        *self.sorted.last().expect("non-empty by construction")
    }

    pub fn mean(&self) -> f64 {
        self.values.iter().sum::<f64>() / self.values.len() as f64
    }

    /// Sample standard deviation (denominator `n - 1`).
    pub fn std_dev(&self) -> f64 {
        let n = self.values.len() as f64;
        let mean = self.mean();
        let ss: f64 = self.values.iter().map(|v| (v - mean) * (v - mean)).sum();
        (ss / (n - 1.0)).sqrt()
    }

    /// Quantile by linear interpolation of the order statistics:
    /// `h = (n-1)p`, interpolating between `x_(⌊h⌋)` and `x_(⌊h⌋+1)`.
    pub fn quantile(&self, p: f64) -> Result<f64> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::Domain(format!("quantile level must be in [0, 1], got {p}")));
        }
        let n = self.sorted.len();
        let h = (n as f64 - 1.0) * p;
        let idx = h.floor() as usize;
        if idx + 1 >= n {
            return Ok(self.sorted[n - 1]);
        }
        let frac = h - idx as f64;
        Ok(self.sorted[idx] + frac * (self.sorted[idx + 1] - self.sorted[idx]))
    }

    /// Interquartile range under the same interpolation convention.
    pub fn iqr(&self) -> f64 {
        self.quantile(0.75).expect("0.75 in range") - self.quantile(0.25).expect("0.25 in range")
    }

    /// The sample scaled by `a > 0`.
    pub fn scaled(&self, a: f64) -> Result<SampleData> {
        require_positive("a", a)?;
        SampleData::new(self.values.iter().map(|v| v * a).collect())
    }

    /// The sample shifted by `delta`, flooring at 0. The flag reports
    /// whether any value was clipped.
    pub fn shifted(&self, delta: f64) -> Result<(SampleData, bool)> {
        if !delta.is_finite() {
            return Err(Error::Domain(format!("shift must be finite, got {delta}")));
        }
        let mut clipped = false;
        let values = self
            .values
            .iter()
            .map(|v| {
                let s = v + delta;
                if s < 0.0 {
                    clipped = true;
                    0.0
                } else {
                    s
                }
            })
            .collect();
        Ok((SampleData::new(values)?, clipped))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::{integrate, QuadratureConfig};
    use approx::assert_relative_eq;

    #[test]
    fn construction_validates_parameters() {
        assert!(ParametricDistribution::exponential(0.0).is_err());
        assert!(ParametricDistribution::exponential(f64::NAN).is_err());
        assert!(ParametricDistribution::beta(-1.0, 2.0).is_err());
        assert!(ParametricDistribution::uniform(-0.5, 1.0).is_err());
        assert!(ParametricDistribution::uniform(1.0, 1.0).is_err());
        assert!(ParametricDistribution::power(0.0).is_err());
    }

    #[test]
    fn evaluator_spot_values() {
        let e1 = ParametricDistribution::exponential(1.0).unwrap();
        assert_relative_eq!(e1.pdf(0.0).unwrap(), 1.0, epsilon = 1e-15);

        let u = ParametricDistribution::uniform(0.0, 1.0).unwrap();
        assert_relative_eq!(u.cdf(0.3).unwrap(), 0.3, epsilon = 1e-15);

        let e2 = ParametricDistribution::exponential(2.0).unwrap();
        assert_relative_eq!(e2.sf(0.5).unwrap(), (-1.0f64).exp(), epsilon = 1e-12);

        let e3 = ParametricDistribution::exponential(3.0).unwrap();
        assert_relative_eq!(e3.hazard(1.7).unwrap(), 3.0, epsilon = 1e-12);
    }

    #[test]
    fn evaluators_reject_non_finite_points() {
        let e = ParametricDistribution::exponential(1.0).unwrap();
        assert!(e.pdf(f64::NAN).is_err());
        assert!(e.cdf(f64::INFINITY).is_err());
        assert!(e.hazard(f64::NEG_INFINITY).is_err());
    }

    #[test]
    fn hazard_domain_errors() {
        let u = ParametricDistribution::uniform(0.0, 1.0).unwrap();
        assert!(u.hazard(1.0).is_err());
        assert!(u.reversed_hazard(0.0).is_err());
        assert_relative_eq!(u.reversed_hazard(0.5).unwrap(), 2.0, epsilon = 1e-12);
    }

    #[test]
    fn pdf_integrates_to_one() {
        let cfg = QuadratureConfig::default();
        let cases = [
            ParametricDistribution::exponential(0.7).unwrap(),
            ParametricDistribution::beta(3.0, 2.0).unwrap(),
            ParametricDistribution::beta(1.0, 1.0).unwrap(),
            ParametricDistribution::uniform(0.5, 2.5).unwrap(),
            ParametricDistribution::power(2.0).unwrap(),
        ];
        for d in cases {
            let (lo, hi) = d.support();
            let hi = if hi.is_finite() { hi } else { 40.0 / 0.7 };
            let mass = integrate(|x| d.pdf_raw(x), lo, hi, &cfg).unwrap();
            assert_relative_eq!(mass, 1.0, epsilon = 1e-8);
        }
    }

    #[test]
    fn cdf_plus_sf_is_one() {
        let d = ParametricDistribution::beta(2.0, 5.0).unwrap();
        for i in 0..100 {
            let x = i as f64 / 100.0;
            let total = d.cdf(x).unwrap() + d.sf(x).unwrap();
            assert!((total - 1.0).abs() < 1e-15, "x={x}: {total}");
        }
    }

    #[test]
    fn sampling_is_deterministic() {
        let d = ParametricDistribution::uniform(0.0, 1.0).unwrap();
        let a = d.sample(10, 42).unwrap();
        let b = d.sample(10, 42).unwrap();
        assert_eq!(a.values(), b.values());
        let c = d.sample(10, 43).unwrap();
        assert_ne!(a.values(), c.values());
    }

    #[test]
    fn sampling_rejects_tiny_n() {
        let d = ParametricDistribution::exponential(1.0).unwrap();
        assert!(matches!(
            d.sample(1, 7),
            Err(Error::SampleTooSmall { .. })
        ));
    }

    #[test]
    fn sample_means_match_the_families() {
        let e = ParametricDistribution::exponential(1.0).unwrap();
        let s = e.sample(100_000, 11).unwrap();
        assert!((s.mean() - 1.0).abs() < 0.02, "exp mean {}", s.mean());

        let b = ParametricDistribution::beta(3.0, 2.0).unwrap();
        let s = b.sample(100_000, 12).unwrap();
        assert!((s.mean() - 0.6).abs() < 0.01, "beta mean {}", s.mean());
    }

    #[test]
    fn empirical_cdf_tracks_exact_cdf() {
        // Kolmogorov distance of 1e5 draws stays below 0.01.
        let d = ParametricDistribution::power(2.0).unwrap();
        let s = d.sample(100_000, 5).unwrap();
        let n = s.len() as f64;
        let mut worst: f64 = 0.0;
        for (i, x) in s.sorted().iter().enumerate() {
            let f = d.cdf(*x).unwrap();
            let hi = (i as f64 + 1.0) / n - f;
            let lo = f - i as f64 / n;
            worst = worst.max(hi.abs()).max(lo.abs());
        }
        assert!(worst < 0.01, "Kolmogorov distance {worst}");
    }

    #[test]
    fn phm_of_exponential_is_exponential() {
        let base = ParametricDistribution::exponential(1.0).unwrap().functions();
        let t = phm_transform(&base, 2.0).unwrap();
        let e2 = ParametricDistribution::exponential(2.0).unwrap();
        for x in [0.0, 0.1, 0.5, 1.0, 3.0] {
            assert_relative_eq!(t.survival.eval(x), e2.sf(x).unwrap(), epsilon = 1e-12);
            assert_relative_eq!(t.density.eval(x), e2.pdf(x).unwrap(), epsilon = 1e-12);
        }
    }

    #[test]
    fn phm_with_unit_exponent_is_identity() {
        let base = ParametricDistribution::beta(2.0, 3.0).unwrap().functions();
        let t = phm_transform(&base, 1.0).unwrap();
        for x in [0.0, 0.2, 0.4, 0.9, 1.0] {
            assert_relative_eq!(t.survival.eval(x), base.survival.eval(x), epsilon = 1e-12);
            assert_relative_eq!(t.density.eval(x), base.density.eval(x), epsilon = 1e-12);
        }
    }

    #[test]
    fn phm_on_uniform_spot_value() {
        let base = ParametricDistribution::uniform(0.0, 1.0).unwrap().functions();
        let t = phm_transform(&base, 3.0).unwrap();
        assert_relative_eq!(t.survival.eval(0.5), 0.125, epsilon = 1e-12);
    }

    #[test]
    fn prhm_of_uniform_is_power() {
        let base = ParametricDistribution::uniform(0.0, 1.0).unwrap().functions();
        let t = prhm_transform(&base, 2.0).unwrap();
        let p2 = ParametricDistribution::power(2.0).unwrap();
        for x in [0.0, 0.25, 0.5, 0.75, 1.0] {
            assert_relative_eq!(t.cumulative.eval(x), p2.cdf(x).unwrap(), epsilon = 1e-12);
        }
    }

    #[test]
    fn prhm_of_power_can_flatten_it() {
        let base = ParametricDistribution::power(2.0).unwrap().functions();
        let t = prhm_transform(&base, 0.5).unwrap();
        for x in [0.1, 0.3, 0.7, 1.0] {
            assert_relative_eq!(t.cumulative.eval(x), x, epsilon = 1e-12);
        }
    }

    #[test]
    fn transforms_reject_nonpositive_exponent() {
        let base = ParametricDistribution::exponential(1.0).unwrap().functions();
        assert!(phm_transform(&base, 0.0).is_err());
        assert!(prhm_transform(&base, -1.0).is_err());
    }

    #[test]
    fn reciprocal_exponents_round_trip() {
        let base = ParametricDistribution::exponential(1.3).unwrap().functions();
        let round = phm_transform(&phm_transform(&base, 2.0).unwrap(), 0.5).unwrap();
        for x in [0.0, 0.3, 1.0, 4.0] {
            assert_relative_eq!(
                round.cumulative.eval(x),
                base.cumulative.eval(x),
                epsilon = 1e-12
            );
        }
        let base = ParametricDistribution::uniform(0.0, 1.0).unwrap().functions();
        let round = prhm_transform(&prhm_transform(&base, 3.0).unwrap(), 1.0 / 3.0).unwrap();
        for x in [0.0, 0.2, 0.6, 1.0] {
            assert_relative_eq!(
                round.cumulative.eval(x),
                base.cumulative.eval(x),
                epsilon = 1e-12
            );
        }
    }

    #[test]
    fn sample_data_validation_and_views() {
        assert!(SampleData::new(vec![1.0]).is_err());
        assert!(SampleData::new(vec![1.0, -0.5]).is_err());
        assert!(SampleData::new(vec![1.0, f64::NAN]).is_err());

        let s = SampleData::new(vec![3.0, 1.0, 2.0]).unwrap();
        assert_eq!(s.sorted(), &[1.0, 2.0, 3.0]);
        assert_eq!(s.values(), &[3.0, 1.0, 2.0]);
        assert_eq!(s.min(), 1.0);
        assert_eq!(s.max(), 3.0);
    }

    #[test]
    fn quantile_interpolates_order_statistics() {
        let s = SampleData::new(vec![1.0, 2.0, 3.0, 4.0, 5.0]).unwrap();
        assert_relative_eq!(s.quantile(0.25).unwrap(), 2.0, epsilon = 1e-15);
        assert_relative_eq!(s.quantile(0.75).unwrap(), 4.0, epsilon = 1e-15);
        assert_relative_eq!(s.quantile(0.5).unwrap(), 3.0, epsilon = 1e-15);
        assert_relative_eq!(s.quantile(0.1).unwrap(), 1.4, epsilon = 1e-12);
        assert_eq!(s.iqr(), 2.0);
    }

    #[test]
    fn shift_clips_at_zero() {
        let s = SampleData::new(vec![0.2, 1.0, 2.0]).unwrap();
        let (shifted, clipped) = s.shifted(-0.5).unwrap();
        assert!(clipped);
        assert_eq!(shifted.values(), &[0.0, 0.5, 1.5]);
        let (shifted, clipped) = s.shifted(0.5).unwrap();
        assert!(!clipped);
        assert_eq!(shifted.values(), &[0.7, 1.5, 2.5]);
    }
}
