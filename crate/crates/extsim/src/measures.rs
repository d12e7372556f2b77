//! Population-level extropies, inaccuracies, divergence ratios, and
//! similarity ratios between probability measures.
//!
//! A *probability measure* here is any of three evaluable functions on
//! `[0, ∞)` attached to a distribution: its density `f`, its survival
//! function `F̄`, or its cumulative distribution function `F`. For a
//! measure φ the generalized extropy is
//!
//! ```text
//! U(φ) = -1/2 ∫ φ²(x) dx
//! ```
//!
//! and for two measures of the same kind the generalized inaccuracy is
//! `U(φ₁, φ₂) = -1/2 ∫ φ₁ φ₂ dx`. From these, the divergence ratios
//! `I(φ₁|φ₂) = U(φ₁,φ₂)/U(φ₁)` (asymmetric, positive, 1 for identical
//! distributions) and the similarity ratio
//! `S = U(φ₁,φ₂)² / (U(φ₁) U(φ₂))` (symmetric, in (0, 1], the squared
//! cosine of the angle between φ₁ and φ₂ in L²) are derived.
//!
//! Specializing the kind gives the three named instances: extropy
//! (densities), survival extropy (survival functions), and cumulative
//! extropy (distribution functions, finite only on bounded supports).
//!
//! All three integrals of a pairwise operation are taken over one shared
//! interval; this keeps the Cauchy–Schwarz bound, and therefore
//! `S ∈ (0, 1]`, valid even when the two supports differ.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::quadrature::integrate;

pub use crate::quadrature::QuadratureConfig;

/// Which function of a distribution a [`ProbabilityFunction`] evaluates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MeasureKind {
    /// Probability density `f`.
    Density,
    /// Survival function `F̄(x) = P(X > x)`.
    Survival,
    /// Cumulative distribution function `F(x) = P(X ≤ x)`.
    Cumulative,
}

impl fmt::Display for MeasureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MeasureKind::Density => write!(f, "density"),
            MeasureKind::Survival => write!(f, "survival"),
            MeasureKind::Cumulative => write!(f, "cumulative"),
        }
    }
}

impl MeasureKind {
    pub const ALL: [MeasureKind; 3] = [
        MeasureKind::Density,
        MeasureKind::Survival,
        MeasureKind::Cumulative,
    ];

    pub fn parse(s: &str) -> Result<MeasureKind> {
        match s.to_ascii_lowercase().as_str() {
            "density" | "e" => Ok(MeasureKind::Density),
            "survival" | "se" => Ok(MeasureKind::Survival),
            "cumulative" | "ce" => Ok(MeasureKind::Cumulative),
            other => Err(Error::invalid(
                "kind",
                format!("unknown measure kind `{other}` (expected density, survival, or cumulative)"),
            )),
        }
    }
}

type EvalFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// An evaluable probability measure on `[0, ∞)`.
///
/// The evaluator must be total on `[0, ∞)`: a density is 0 outside its
/// support, a survival function is 1 below the support and 0 above it, a
/// cumulative function is 0 below and 1 above.
///
/// For unbounded supports an optional *upper tail hint* maps a mass level
/// δ to the point beyond which the distribution carries at most δ; without
/// it, truncation points are located by a doubling search on the
/// evaluator.
#[derive(Clone)]
pub struct ProbabilityFunction {
    kind: MeasureKind,
    lo: f64,
    hi: f64,
    eval: EvalFn,
    upper_tail: Option<EvalFn>,
}

impl fmt::Debug for ProbabilityFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ProbabilityFunction")
            .field("kind", &self.kind)
            .field("support", &(self.lo, self.hi))
            .finish()
    }
}

impl ProbabilityFunction {
    /// Wrap an evaluator with its kind and support `[lo, hi]` (`hi` may be
    /// `f64::INFINITY`).
    ///
    /// The evaluator's shape is spot-checked on a small grid: a density
    /// must be nonnegative, a survival function nonincreasing with values
    /// in [0, 1], a cumulative function nondecreasing in [0, 1].
    pub fn new<F>(kind: MeasureKind, support: (f64, f64), eval: F) -> Result<Self>
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        let (lo, hi) = support;
        if !lo.is_finite() || lo < 0.0 {
            return Err(Error::invalid("support", "lower bound must be finite and ≥ 0"));
        }
        if hi <= lo || hi.is_nan() {
            return Err(Error::invalid("support", "upper bound must exceed lower bound"));
        }
        spot_check_shape(kind, lo, hi, &eval)?;
        Ok(ProbabilityFunction {
            kind,
            lo,
            hi,
            eval: Arc::new(eval),
            upper_tail: None,
        })
    }

    /// Attach an upper tail hint: `hint(δ)` returns the point `x` with
    /// `P(X > x) = δ`.
    pub fn with_upper_tail<F>(mut self, hint: F) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        self.upper_tail = Some(Arc::new(hint));
        self
    }

    pub fn kind(&self) -> MeasureKind {
        self.kind
    }

    pub fn support(&self) -> (f64, f64) {
        (self.lo, self.hi)
    }

    pub fn eval(&self, x: f64) -> f64 {
        (self.eval)(x)
    }

    pub(crate) fn eval_fn(&self) -> EvalFn {
        Arc::clone(&self.eval)
    }

    pub(crate) fn upper_tail_fn(&self) -> Option<EvalFn> {
        self.upper_tail.clone()
    }

    /// Finite upper integration limit for this measure.
    ///
    /// Bounded supports use their own upper bound. Unbounded densities are
    /// cut where the remaining mass is below `tail_mass`; unbounded
    /// survival functions where `F̄ < √tail_mass`. Unbounded cumulative
    /// measures diverge.
    fn effective_upper(&self, cfg: &QuadratureConfig) -> Result<f64> {
        if self.hi.is_finite() {
            return Ok(self.hi);
        }
        let delta = match self.kind {
            MeasureKind::Cumulative => {
                return Err(Error::DivergentMeasure(
                    "cumulative measure on an unbounded support".into(),
                ))
            }
            MeasureKind::Density => cfg.tail_mass,
            MeasureKind::Survival => cfg.tail_mass.sqrt(),
        };
        if let Some(hint) = &self.upper_tail {
            let x = hint(delta);
            if !x.is_finite() || x < self.lo {
                return Err(Error::Numerical(format!(
                    "tail hint returned an unusable truncation point {x}"
                )));
            }
            return Ok(x);
        }
        self.search_upper(delta)
    }

    /// Doubling search for a point where the evaluator has decayed below
    /// `delta` and stays there.
    fn search_upper(&self, delta: f64) -> Result<f64> {
        let mut x = (self.lo + 1.0).max(1.0);
        let mut quiet = 0u32;
        while x < 1e12 {
            if (self.eval)(x).abs() <= delta {
                quiet += 1;
                if quiet >= 3 {
                    return Ok(x);
                }
            } else {
                quiet = 0;
            }
            x *= 2.0;
        }
        Err(Error::DivergentMeasure(
            "no tail decay found below the truncation level within [0, 1e12]".into(),
        ))
    }

    fn lower(&self) -> f64 {
        match self.kind {
            // Survival functions are 1 below the support; their mass from
            // 0 counts.
            MeasureKind::Survival => 0.0,
            _ => self.lo.max(0.0),
        }
    }
}

/// Grid points used by the construction-time shape check.
const SPOT_CHECK_POINTS: usize = 17;
/// Monotonicity slack tolerated by the shape check (interpolation noise
/// on gridded estimates).
const SPOT_CHECK_SLACK: f64 = 1e-9;

fn spot_check_shape<F: Fn(f64) -> f64>(
    kind: MeasureKind,
    lo: f64,
    hi: f64,
    eval: &F,
) -> Result<()> {
    // Unbounded supports are probed over a fixed window; the shapes are
    // global properties, so any window is a legitimate spot check.
    let probe_hi = if hi.is_finite() { hi } else { lo + 16.0 };
    let mut previous: Option<f64> = None;
    for i in 0..SPOT_CHECK_POINTS {
        let x = lo + (probe_hi - lo) * i as f64 / (SPOT_CHECK_POINTS - 1) as f64;
        let v = eval(x);
        if v.is_nan() {
            return Err(Error::invalid("evaluator", format!("NaN at x = {x}")));
        }
        // Integrable endpoint singularities are legal for densities.
        if v.is_infinite() && kind == MeasureKind::Density {
            continue;
        }
        match kind {
            MeasureKind::Density => {
                if v < 0.0 {
                    return Err(Error::invalid(
                        "evaluator",
                        format!("density is negative at x = {x}: {v}"),
                    ));
                }
            }
            MeasureKind::Survival | MeasureKind::Cumulative => {
                if !(-SPOT_CHECK_SLACK..=1.0 + SPOT_CHECK_SLACK).contains(&v) {
                    return Err(Error::invalid(
                        "evaluator",
                        format!("{kind} value at x = {x} outside [0, 1]: {v}"),
                    ));
                }
                if let Some(p) = previous {
                    let rising = v - p;
                    let bad = match kind {
                        MeasureKind::Survival => rising > SPOT_CHECK_SLACK,
                        _ => rising < -SPOT_CHECK_SLACK,
                    };
                    if bad {
                        return Err(Error::invalid(
                            "evaluator",
                            format!("{kind} function is not monotone near x = {x}"),
                        ));
                    }
                }
                previous = Some(v);
            }
        }
    }
    Ok(())
}

/// One pairwise computation: the two marginal extropies, the inaccuracy,
/// both divergence ratios, the similarity ratio, and the cosine of the
/// angle between the two measures.
#[derive(Debug, Clone)]
pub struct SimilarityReport {
    pub kind: MeasureKind,
    /// Generalized extropy `U(φ₁)`, always negative.
    pub extropy_x: f64,
    /// Generalized extropy `U(φ₂)`, always negative.
    pub extropy_y: f64,
    /// Generalized inaccuracy `U(φ₁, φ₂)`, always negative.
    pub inaccuracy: f64,
    /// Divergence ratio of `X` with `Y`.
    pub divergence_xy: f64,
    /// Divergence ratio of `Y` with `X`.
    pub divergence_yx: f64,
    /// Similarity ratio in (0, 1].
    pub similarity: f64,
    /// `√S`, the cosine of the angle between the two measures.
    pub cosine: f64,
}

/// Slack granted over the analytic `S ≤ 1` bound before a value is
/// treated as a numerical failure rather than rounding noise.
const SIMILARITY_SLACK: f64 = 1e-9;

struct PairIntegrals {
    u_x: f64,
    u_y: f64,
    u_xy: f64,
}

fn check_negative(value: f64, what: &str) -> Result<f64> {
    if value < 0.0 && value.is_finite() {
        Ok(value)
    } else {
        Err(Error::DegenerateInput(format!(
            "{what} evaluated to {value}; expected a strictly negative value"
        )))
    }
}

/// The three integrals of a pairwise operation over one shared interval.
fn pair_integrals(
    phi1: &ProbabilityFunction,
    phi2: &ProbabilityFunction,
    cfg: &QuadratureConfig,
) -> Result<PairIntegrals> {
    if phi1.kind != phi2.kind {
        return Err(Error::KindMismatch {
            left: phi1.kind,
            right: phi2.kind,
        });
    }
    let hi = phi1.effective_upper(cfg)?.max(phi2.effective_upper(cfg)?);
    let lo = phi1.lower().min(phi2.lower());
    if phi1.kind == MeasureKind::Density {
        let overlap_lo = phi1.lo.max(phi2.lo);
        let overlap_hi = phi1.hi.min(phi2.hi);
        if overlap_lo >= overlap_hi {
            return Err(Error::DegenerateInput(
                "densities have disjoint supports".into(),
            ));
        }
    }
    let f1 = phi1.eval_fn();
    let f2 = phi2.eval_fn();
    let u_x = -0.5
        * integrate(
            {
                let f1 = Arc::clone(&f1);
                move |x| {
                    let v = f1(x);
                    v * v
                }
            },
            lo,
            hi,
            cfg,
        )?;
    let u_y = -0.5
        * integrate(
            {
                let f2 = Arc::clone(&f2);
                move |x| {
                    let v = f2(x);
                    v * v
                }
            },
            lo,
            hi,
            cfg,
        )?;
    let u_xy = -0.5 * integrate(move |x| f1(x) * f2(x), lo, hi, cfg)?;
    Ok(PairIntegrals {
        u_x: check_negative(u_x, "generalized extropy of the first measure")?,
        u_y: check_negative(u_y, "generalized extropy of the second measure")?,
        u_xy: check_negative(u_xy, "generalized inaccuracy")?,
    })
}

fn clamp_similarity(s: f64) -> Result<f64> {
    if !s.is_finite() || s <= 0.0 {
        return Err(Error::DegenerateInput(format!(
            "similarity ratio evaluated to {s}"
        )));
    }
    if s <= 1.0 {
        Ok(s)
    } else if s <= 1.0 + SIMILARITY_SLACK {
        Ok(1.0)
    } else {
        Err(Error::Numerical(format!(
            "similarity ratio {s} exceeds the Cauchy-Schwarz bound by more than rounding noise"
        )))
    }
}

/// Generalized extropy `U(φ) = -1/2 ∫ φ²`, strictly negative.
pub fn generalized_extropy(phi: &ProbabilityFunction, cfg: &QuadratureConfig) -> Result<f64> {
    cfg.validate()?;
    let hi = phi.effective_upper(cfg)?;
    let f = phi.eval_fn();
    let v = integrate(
        move |x| {
            let v = f(x);
            v * v
        },
        phi.lower(),
        hi,
        cfg,
    )?;
    check_negative(-0.5 * v, "generalized extropy")
}

/// Generalized inaccuracy `U(φ₁, φ₂) = -1/2 ∫ φ₁ φ₂` of two measures of
/// the same kind. Symmetric; equals [`generalized_extropy`] when the two
/// measures coincide.
pub fn generalized_inaccuracy(
    phi1: &ProbabilityFunction,
    phi2: &ProbabilityFunction,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    cfg.validate()?;
    Ok(pair_integrals(phi1, phi2, cfg)?.u_xy)
}

/// Both divergence ratios `(I(φ₁|φ₂), I(φ₂|φ₁))`.
pub fn divergence_ratio(
    phi1: &ProbabilityFunction,
    phi2: &ProbabilityFunction,
    cfg: &QuadratureConfig,
) -> Result<(f64, f64)> {
    cfg.validate()?;
    let p = pair_integrals(phi1, phi2, cfg)?;
    Ok((p.u_xy / p.u_x, p.u_xy / p.u_y))
}

/// Similarity ratio `S = U(φ₁,φ₂)² / (U(φ₁) U(φ₂)) ∈ (0, 1]`.
///
/// Values above 1 by at most 1e-9 are clamped to 1 (rounding noise on the
/// analytic bound); larger excess is reported as a numerical failure.
pub fn similarity_ratio(
    phi1: &ProbabilityFunction,
    phi2: &ProbabilityFunction,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    cfg.validate()?;
    let p = pair_integrals(phi1, phi2, cfg)?;
    clamp_similarity(p.u_xy * p.u_xy / (p.u_x * p.u_y))
}

/// `√S`: the cosine of the angle between the two measures in L².
pub fn cosine_angle(
    phi1: &ProbabilityFunction,
    phi2: &ProbabilityFunction,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    Ok(similarity_ratio(phi1, phi2, cfg)?.sqrt())
}

/// Full report for one pair of measures.
pub fn similarity_report(
    phi1: &ProbabilityFunction,
    phi2: &ProbabilityFunction,
    cfg: &QuadratureConfig,
) -> Result<SimilarityReport> {
    cfg.validate()?;
    let p = pair_integrals(phi1, phi2, cfg)?;
    let similarity = clamp_similarity(p.u_xy * p.u_xy / (p.u_x * p.u_y))?;
    Ok(SimilarityReport {
        kind: phi1.kind(),
        extropy_x: p.u_x,
        extropy_y: p.u_y,
        inaccuracy: p.u_xy,
        divergence_xy: p.u_xy / p.u_x,
        divergence_yx: p.u_xy / p.u_y,
        similarity,
        cosine: similarity.sqrt(),
    })
}

/// Closed form of the similarity ratio of two exponential distributions
/// with rates `λ₁`, `λ₂`: `4 λ₁ λ₂ / (λ₁ + λ₂)²`. The same value is
/// obtained for the density and the survival kinds.
pub fn exponential_similarity_closed_form(lambda1: f64, lambda2: f64) -> Result<f64> {
    for (name, l) in [("lambda1", lambda1), ("lambda2", lambda2)] {
        if !(l > 0.0 && l.is_finite()) {
            return Err(Error::invalid(name, "rate must be positive and finite"));
        }
    }
    let sum = lambda1 + lambda2;
    Ok(4.0 * lambda1 * lambda2 / (sum * sum))
}

/// Relative extropy `d(f, g) = 1/2 ∫ (f - g)²` of two densities. Zero iff
/// the densities coincide.
pub fn relative_extropy(
    f: &ProbabilityFunction,
    g: &ProbabilityFunction,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    cfg.validate()?;
    require_kind(f, MeasureKind::Density)?;
    require_kind(g, MeasureKind::Density)?;
    let hi = f.effective_upper(cfg)?.max(g.effective_upper(cfg)?);
    let lo = f.lower().min(g.lower());
    let (ef, eg) = (f.eval_fn(), g.eval_fn());
    let v = integrate(
        move |x| {
            let d = ef(x) - eg(x);
            d * d
        },
        lo,
        hi,
        cfg,
    )?;
    Ok(0.5 * v)
}

/// Extropy divergence `J(f|g) = 1/2 ∫ (f - g) f`; equals the inaccuracy
/// minus the extropy of `f`.
pub fn extropy_divergence(
    f: &ProbabilityFunction,
    g: &ProbabilityFunction,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    cfg.validate()?;
    require_kind(f, MeasureKind::Density)?;
    require_kind(g, MeasureKind::Density)?;
    directed_divergence(f, g, cfg)
}

/// Survival extropy divergence `SJ(F̄|Ḡ) = 1/2 ∫ (F̄ - Ḡ) F̄`; equals the
/// survival inaccuracy minus the survival extropy of `F̄`.
pub fn survival_extropy_divergence(
    sf_x: &ProbabilityFunction,
    sf_y: &ProbabilityFunction,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    cfg.validate()?;
    require_kind(sf_x, MeasureKind::Survival)?;
    require_kind(sf_y, MeasureKind::Survival)?;
    directed_divergence(sf_x, sf_y, cfg)
}

fn directed_divergence(
    phi1: &ProbabilityFunction,
    phi2: &ProbabilityFunction,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    let hi = phi1.effective_upper(cfg)?.max(phi2.effective_upper(cfg)?);
    let lo = phi1.lower().min(phi2.lower());
    let (f1, f2) = (phi1.eval_fn(), phi2.eval_fn());
    let v = integrate(
        move |x| {
            let a = f1(x);
            (a - f2(x)) * a
        },
        lo,
        hi,
        cfg,
    )?;
    Ok(0.5 * v)
}

fn require_kind(phi: &ProbabilityFunction, kind: MeasureKind) -> Result<()> {
    if phi.kind() == kind {
        Ok(())
    } else {
        Err(Error::KindMismatch {
            left: phi.kind(),
            right: kind,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distributions::ParametricDistribution;
    use approx::assert_relative_eq;

    fn cfg() -> QuadratureConfig {
        QuadratureConfig::default()
    }

    #[test]
    fn extropy_of_exponential_density() {
        // -λ/4 analytically.
        let d = ParametricDistribution::exponential(1.0).unwrap();
        let j = generalized_extropy(&d.density_fn(), &cfg()).unwrap();
        assert_relative_eq!(j, -0.25, epsilon = 1e-10);
    }

    #[test]
    fn survival_extropy_of_exponential() {
        // -1/(4λ) analytically.
        let d = ParametricDistribution::exponential(2.0).unwrap();
        let j = generalized_extropy(&d.survival_fn(), &cfg()).unwrap();
        assert_relative_eq!(j, -0.125, epsilon = 1e-10);
    }

    #[test]
    fn cumulative_extropy_of_uniform() {
        // -1/2 ∫₀¹ x² dx = -1/6.
        let d = ParametricDistribution::uniform(0.0, 1.0).unwrap();
        let j = generalized_extropy(&d.cumulative_fn(), &cfg()).unwrap();
        assert_relative_eq!(j, -1.0 / 6.0, epsilon = 1e-10);
    }

    #[test]
    fn cumulative_extropy_diverges_on_unbounded_support() {
        let d = ParametricDistribution::exponential(1.0).unwrap();
        assert!(matches!(
            generalized_extropy(&d.cumulative_fn(), &cfg()),
            Err(Error::DivergentMeasure(_))
        ));
    }

    #[test]
    fn inaccuracy_of_exponential_densities() {
        // -1/2 λ₁λ₂/(λ₁+λ₂) = -1/3 for rates 1, 2.
        let x = ParametricDistribution::exponential(1.0).unwrap();
        let y = ParametricDistribution::exponential(2.0).unwrap();
        let v = generalized_inaccuracy(&x.density_fn(), &y.density_fn(), &cfg()).unwrap();
        assert_relative_eq!(v, -1.0 / 3.0, epsilon = 1e-10);
    }

    #[test]
    fn inaccuracy_of_exponential_survivals() {
        // -1/2 / (λ₁+λ₂) = -1/6 for rates 1, 2.
        let x = ParametricDistribution::exponential(1.0).unwrap();
        let y = ParametricDistribution::exponential(2.0).unwrap();
        let v = generalized_inaccuracy(&x.survival_fn(), &y.survival_fn(), &cfg()).unwrap();
        assert_relative_eq!(v, -1.0 / 6.0, epsilon = 1e-10);
    }

    #[test]
    fn inaccuracy_of_uniform_beta_cumulatives() {
        // -1/2 (4/5 - 1/2) = -0.15.
        let x = ParametricDistribution::uniform(0.0, 1.0).unwrap();
        let y = ParametricDistribution::beta(3.0, 2.0).unwrap();
        let v = generalized_inaccuracy(&x.cumulative_fn(), &y.cumulative_fn(), &cfg()).unwrap();
        assert_relative_eq!(v, -0.15, epsilon = 1e-10);
    }

    #[test]
    fn inaccuracy_reduces_to_extropy_for_identical_measure() {
        let d = ParametricDistribution::beta(3.0, 2.0).unwrap();
        let phi = d.density_fn();
        let u = generalized_extropy(&phi, &cfg()).unwrap();
        let uxx = generalized_inaccuracy(&phi, &phi, &cfg()).unwrap();
        assert_relative_eq!(u, uxx, max_relative = 1e-10);
    }

    #[test]
    fn divergence_ratio_exponential_densities() {
        let x = ParametricDistribution::exponential(1.0).unwrap();
        let y = ParametricDistribution::exponential(2.0).unwrap();
        let (ixy, iyx) = divergence_ratio(&x.density_fn(), &y.density_fn(), &cfg()).unwrap();
        assert_relative_eq!(ixy, 4.0 / 3.0, epsilon = 1e-9);
        assert_relative_eq!(iyx, 2.0 / 3.0, epsilon = 1e-9);
    }

    #[test]
    fn divergence_ratio_exponential_survivals() {
        let x = ParametricDistribution::exponential(1.0).unwrap();
        let y = ParametricDistribution::exponential(2.0).unwrap();
        let (ixy, iyx) = divergence_ratio(&x.survival_fn(), &y.survival_fn(), &cfg()).unwrap();
        assert_relative_eq!(ixy, 2.0 / 3.0, epsilon = 1e-9);
        assert_relative_eq!(iyx, 4.0 / 3.0, epsilon = 1e-9);
    }

    #[test]
    fn divergence_ratio_uniform_beta_cumulatives() {
        let x = ParametricDistribution::uniform(0.0, 1.0).unwrap();
        let y = ParametricDistribution::beta(3.0, 2.0).unwrap();
        let (ixy, iyx) = divergence_ratio(&x.cumulative_fn(), &y.cumulative_fn(), &cfg()).unwrap();
        assert_relative_eq!(ixy, 0.9, epsilon = 1e-9);
        assert_relative_eq!(iyx, 1.05, epsilon = 1e-9);
    }

    #[test]
    fn divergence_ratio_of_identical_measure_is_unity() {
        let d = ParametricDistribution::power(2.0).unwrap();
        let phi = d.cumulative_fn();
        let (ixy, iyx) = divergence_ratio(&phi, &phi, &cfg()).unwrap();
        assert_relative_eq!(ixy, 1.0, epsilon = 1e-10);
        assert_relative_eq!(iyx, 1.0, epsilon = 1e-10);
    }

    #[test]
    fn similarity_of_beta_pair() {
        let x = ParametricDistribution::beta(3.0, 2.0).unwrap();
        let y = ParametricDistribution::beta(2.0, 3.0).unwrap();
        let s = similarity_ratio(&x.density_fn(), &y.density_fn(), &cfg()).unwrap();
        assert_relative_eq!(s, 0.5625, epsilon = 1e-9);
    }

    #[test]
    fn similarity_of_exponential_survivals() {
        let x = ParametricDistribution::exponential(1.0).unwrap();
        let y = ParametricDistribution::exponential(2.0).unwrap();
        let s = similarity_ratio(&x.survival_fn(), &y.survival_fn(), &cfg()).unwrap();
        assert_relative_eq!(s, 8.0 / 9.0, epsilon = 1e-9);
    }

    #[test]
    fn similarity_of_uniform_beta_cumulatives() {
        let x = ParametricDistribution::uniform(0.0, 1.0).unwrap();
        let y = ParametricDistribution::beta(3.0, 2.0).unwrap();
        let s = similarity_ratio(&x.cumulative_fn(), &y.cumulative_fn(), &cfg()).unwrap();
        assert_relative_eq!(s, 0.945, epsilon = 1e-9);
    }

    #[test]
    fn similarity_of_identical_measure_is_one() {
        let d = ParametricDistribution::beta(2.5, 1.5).unwrap();
        let phi = d.survival_fn();
        let s = similarity_ratio(&phi, &phi, &cfg()).unwrap();
        assert_relative_eq!(s, 1.0, epsilon = 1e-10);
    }

    #[test]
    fn cosine_matches_inner_product_route() {
        let x = ParametricDistribution::exponential(1.0).unwrap();
        let y = ParametricDistribution::exponential(2.0).unwrap();
        let c = cosine_angle(&x.survival_fn(), &y.survival_fn(), &cfg()).unwrap();
        assert_relative_eq!(c, (8.0f64 / 9.0).sqrt(), epsilon = 1e-9);

        // Independent route: <f,g> / (||f|| ||g||) from raw integrals.
        let q = cfg();
        let inner = integrate(
            |t| (-t).exp() * (-2.0 * t).exp(),
            0.0,
            60.0,
            &q,
        )
        .unwrap();
        let n1 = integrate(|t| (-2.0 * t).exp(), 0.0, 60.0, &q).unwrap().sqrt();
        let n2 = integrate(|t| (-4.0 * t).exp(), 0.0, 60.0, &q).unwrap().sqrt();
        assert_relative_eq!(c, inner / (n1 * n2), epsilon = 1e-10);
    }

    #[test]
    fn cosine_of_beta_pair() {
        let x = ParametricDistribution::beta(3.0, 2.0).unwrap();
        let y = ParametricDistribution::beta(2.0, 3.0).unwrap();
        let c = cosine_angle(&x.density_fn(), &y.density_fn(), &cfg()).unwrap();
        assert_relative_eq!(c, 0.75, epsilon = 1e-9);
    }

    #[test]
    fn closed_form_matches_quadrature_for_exponentials() {
        let s = exponential_similarity_closed_form(1.0, 2.0).unwrap();
        assert_relative_eq!(s, 8.0 / 9.0, epsilon = 1e-15);
        assert_relative_eq!(
            exponential_similarity_closed_form(3.0, 3.0).unwrap(),
            1.0,
            epsilon = 1e-15
        );
        assert_relative_eq!(
            exponential_similarity_closed_form(1.0, 3.0).unwrap(),
            0.75,
            epsilon = 1e-15
        );

        let x = ParametricDistribution::exponential(1.0).unwrap();
        let y = ParametricDistribution::exponential(2.0).unwrap();
        let numeric = similarity_ratio(&x.density_fn(), &y.density_fn(), &cfg()).unwrap();
        assert_relative_eq!(numeric, s, epsilon = 1e-8);
        assert!(exponential_similarity_closed_form(0.0, 1.0).is_err());
    }

    #[test]
    fn relative_extropy_of_exponentials() {
        let x = ParametricDistribution::exponential(1.0).unwrap();
        let y = ParametricDistribution::exponential(2.0).unwrap();
        let d = relative_extropy(&x.density_fn(), &y.density_fn(), &cfg()).unwrap();
        assert_relative_eq!(d, 1.0 / 12.0, epsilon = 1e-9);

        let z = ParametricDistribution::exponential(3.0).unwrap();
        let d13 = relative_extropy(&x.density_fn(), &z.density_fn(), &cfg()).unwrap();
        assert_relative_eq!(d13, 0.25, epsilon = 1e-9);

        let zero = relative_extropy(&x.density_fn(), &x.density_fn(), &cfg()).unwrap();
        assert!(zero.abs() < 1e-10);
    }

    #[test]
    fn directed_divergences_match_inaccuracy_identity() {
        let x = ParametricDistribution::exponential(1.0).unwrap();
        let y = ParametricDistribution::exponential(2.0).unwrap();

        let j = extropy_divergence(&x.density_fn(), &y.density_fn(), &cfg()).unwrap();
        assert_relative_eq!(j, -1.0 / 12.0, epsilon = 1e-9);
        let inacc = generalized_inaccuracy(&x.density_fn(), &y.density_fn(), &cfg()).unwrap();
        let jx = generalized_extropy(&x.density_fn(), &cfg()).unwrap();
        assert_relative_eq!(j, inacc - jx, epsilon = 1e-10);

        let sj = survival_extropy_divergence(&x.survival_fn(), &y.survival_fn(), &cfg()).unwrap();
        assert_relative_eq!(sj, 1.0 / 12.0, epsilon = 1e-9);

        let self_j = extropy_divergence(&x.density_fn(), &x.density_fn(), &cfg()).unwrap();
        assert!(self_j.abs() < 1e-10);
        let self_sj =
            survival_extropy_divergence(&x.survival_fn(), &x.survival_fn(), &cfg()).unwrap();
        assert!(self_sj.abs() < 1e-10);
    }

    #[test]
    fn construction_rejects_malformed_shapes() {
        // Negative density.
        assert!(ProbabilityFunction::new(MeasureKind::Density, (0.0, 1.0), |x| x - 0.5).is_err());
        // Increasing "survival" function.
        assert!(ProbabilityFunction::new(MeasureKind::Survival, (0.0, 1.0), |x| x).is_err());
        // Decreasing "cumulative" function.
        assert!(
            ProbabilityFunction::new(MeasureKind::Cumulative, (0.0, 1.0), |x| 1.0 - x).is_err()
        );
        // Cumulative values above 1.
        assert!(
            ProbabilityFunction::new(MeasureKind::Cumulative, (0.0, 1.0), |x| 2.0 * x).is_err()
        );
        // NaN evaluator.
        assert!(
            ProbabilityFunction::new(MeasureKind::Density, (0.0, 1.0), |_| f64::NAN).is_err()
        );
        // Well-formed shapes pass.
        assert!(ProbabilityFunction::new(MeasureKind::Survival, (0.0, 1.0), |x| 1.0 - x).is_ok());
    }

    #[test]
    fn tail_search_handles_hintless_unbounded_measures() {
        let survival =
            ProbabilityFunction::new(MeasureKind::Survival, (0.0, f64::INFINITY), |x| {
                (-x).exp()
            })
            .unwrap();
        let j = generalized_extropy(&survival, &cfg()).unwrap();
        assert_relative_eq!(j, -0.25, epsilon = 1e-8);

        let density = ProbabilityFunction::new(MeasureKind::Density, (0.0, f64::INFINITY), |x| {
            (-x).exp()
        })
        .unwrap();
        let j = generalized_extropy(&density, &cfg()).unwrap();
        assert_relative_eq!(j, -0.25, epsilon = 1e-8);
    }

    #[test]
    fn measure_types_are_shareable_across_threads() {
        fn assert_send_sync<T: Send + Sync>() {}
        assert_send_sync::<ProbabilityFunction>();
        assert_send_sync::<SimilarityReport>();
        assert_send_sync::<crate::distributions::ParametricDistribution>();
        assert_send_sync::<crate::distributions::DistributionFunctions>();
        assert_send_sync::<crate::distributions::SampleData>();
    }

    #[test]
    fn kind_mismatch_is_rejected() {
        let x = ParametricDistribution::exponential(1.0).unwrap();
        let err = generalized_inaccuracy(&x.density_fn(), &x.survival_fn(), &cfg());
        assert!(matches!(err, Err(Error::KindMismatch { .. })));
    }

    #[test]
    fn disjoint_density_supports_are_degenerate() {
        let x = ParametricDistribution::uniform(0.0, 1.0).unwrap();
        let y = ParametricDistribution::uniform(2.0, 3.0).unwrap();
        assert!(matches!(
            similarity_ratio(&x.density_fn(), &y.density_fn(), &cfg()),
            Err(Error::DegenerateInput(_))
        ));
    }

    #[test]
    fn report_is_internally_consistent() {
        let x = ParametricDistribution::exponential(1.0).unwrap();
        let y = ParametricDistribution::exponential(2.0).unwrap();
        let r = similarity_report(&x.survival_fn(), &y.survival_fn(), &cfg()).unwrap();
        assert!(r.extropy_x < 0.0 && r.extropy_y < 0.0 && r.inaccuracy < 0.0);
        assert!(r.divergence_xy > 0.0 && r.divergence_yx > 0.0);
        let product = r.divergence_xy * r.divergence_yx;
        assert_relative_eq!(r.similarity, product, max_relative = 1e-10);
        assert_relative_eq!(r.cosine, r.similarity.sqrt(), epsilon = 1e-15);
        // Ratio identity between the two orders.
        assert_relative_eq!(
            r.divergence_xy / r.divergence_yx,
            r.extropy_y / r.extropy_x,
            max_relative = 1e-10
        );
    }

    #[test]
    fn scaled_composition_similarity_identity() {
        // S(X, aX) = a·I² where I is the divergence ratio between the
        // composed evaluator x ↦ φ(a·x) and φ itself. Checked on the
        // survival measure of an exponential, where aX ~ Exp(1/a) gives
        // the closed form 4a/(1+a)².
        let a = 2.0;
        let x = ParametricDistribution::exponential(1.0).unwrap();
        let base = x.survival_fn();

        // Survival function of aX: x ↦ F̄(x/a).
        let stretch_eval = base.eval_fn();
        let survival_of_ax =
            ProbabilityFunction::new(MeasureKind::Survival, (0.0, f64::INFINITY), move |t| {
                stretch_eval(t / a)
            })
            .unwrap()
            .with_upper_tail(move |d| -(d.ln()) * a);
        let s = similarity_ratio(&base, &survival_of_ax, &cfg()).unwrap();
        assert_relative_eq!(s, 4.0 * a / ((1.0 + a) * (1.0 + a)), epsilon = 1e-8);

        // Composed evaluator x ↦ F̄(a·x).
        let compress_eval = base.eval_fn();
        let composed =
            ProbabilityFunction::new(MeasureKind::Survival, (0.0, f64::INFINITY), move |t| {
                compress_eval(t * a)
            })
            .unwrap()
            .with_upper_tail(move |d| -(d.ln()) / a);
        let u_base = generalized_extropy(&base, &cfg()).unwrap();
        let inacc = generalized_inaccuracy(&composed, &base, &cfg()).unwrap();
        let ratio = inacc / u_base;
        assert_relative_eq!(s, a * ratio * ratio, max_relative = 1e-8);
    }
}
