//! Monte Carlo harness: bias/MSE of the similarity estimators, the
//! scale/location invariance table, and the batched inequality suites for
//! the proportional-hazard and proportional-reversed-hazard transforms.
//!
//! Per-replication seeds are derived from the master seed by a fixed
//! 64-bit mix (`splitmix64` chained over master, replication index, n,
//! and stream), so results are independent of execution order and
//! reproducible byte for byte.

use crate::distributions::{phm_transform, prhm_transform, ParametricDistribution, SampleData};
use crate::error::{Error, Result};
use crate::estimators::{estimate_similarity, KdeConfig};
use crate::measures::{
    divergence_ratio, generalized_extropy, similarity_ratio, MeasureKind,
};
use crate::quadrature::QuadratureConfig;

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed for one (replication, n, stream) cell of a run.
pub fn derive_seed(master: u64, replication: u64, n: u64, stream: u64) -> u64 {
    splitmix64(splitmix64(splitmix64(splitmix64(master) ^ replication) ^ n) ^ stream)
}

/// One bias/MSE experiment: a distribution pair with a known similarity,
/// a list of sample sizes, and a replication budget.
#[derive(Debug, Clone)]
pub struct Scenario {
    pub name: String,
    pub dist_x: ParametricDistribution,
    pub dist_y: ParametricDistribution,
    pub kind: MeasureKind,
    /// Population value of the similarity ratio for this pair.
    pub true_value: f64,
    pub sizes: Vec<usize>,
    pub replications: u32,
    pub master_seed: u64,
    /// Draw both samples from the same stream, producing identical
    /// samples when the two distributions coincide.
    pub identical_streams: bool,
}

impl Scenario {
    /// Beta(3,2) vs Beta(2,3), density kind, S = 0.5625.
    pub fn table1(sizes: Vec<usize>, replications: u32, master_seed: u64) -> Result<Scenario> {
        Scenario::new(
            "table1",
            ParametricDistribution::beta(3.0, 2.0)?,
            ParametricDistribution::beta(2.0, 3.0)?,
            MeasureKind::Density,
            0.5625,
            sizes,
            replications,
            master_seed,
        )
    }

    /// Exp(1) vs Exp(2), survival kind, S = 8/9.
    pub fn table2(sizes: Vec<usize>, replications: u32, master_seed: u64) -> Result<Scenario> {
        Scenario::new(
            "table2",
            ParametricDistribution::exponential(1.0)?,
            ParametricDistribution::exponential(2.0)?,
            MeasureKind::Survival,
            8.0 / 9.0,
            sizes,
            replications,
            master_seed,
        )
    }

    /// Uniform(0,1) vs Beta(3,2), cumulative kind, S = 189/200.
    pub fn table3(sizes: Vec<usize>, replications: u32, master_seed: u64) -> Result<Scenario> {
        Scenario::new(
            "table3",
            ParametricDistribution::uniform(0.0, 1.0)?,
            ParametricDistribution::beta(3.0, 2.0)?,
            MeasureKind::Cumulative,
            189.0 / 200.0,
            sizes,
            replications,
            master_seed,
        )
    }

    #[allow(clippy::too_many_arguments)]
    pub fn new(
        name: &str,
        dist_x: ParametricDistribution,
        dist_y: ParametricDistribution,
        kind: MeasureKind,
        true_value: f64,
        sizes: Vec<usize>,
        replications: u32,
        master_seed: u64,
    ) -> Result<Scenario> {
        if sizes.is_empty() || sizes.iter().any(|n| *n < 10) {
            return Err(Error::invalid("sizes", "need at least one size, all ≥ 10"));
        }
        if replications < 1 {
            return Err(Error::invalid("replications", "need at least one replication"));
        }
        if !(true_value > 0.0 && true_value <= 1.0) {
            return Err(Error::invalid("true_value", "must lie in (0, 1]"));
        }
        Ok(Scenario {
            name: name.to_string(),
            dist_x,
            dist_y,
            kind,
            true_value,
            sizes,
            replications,
            master_seed,
            identical_streams: false,
        })
    }
}

/// Aggregated estimates for one sample size.
#[derive(Debug, Clone)]
pub struct BiasMseRow {
    pub n: usize,
    pub mean: f64,
    pub bias: f64,
    pub mse: f64,
    pub replications: u32,
    pub failures: u32,
}

/// Run the scenario: for each sample size, draw `replications` pairs of
/// samples with derived seeds and aggregate the estimates.
///
/// A size fails if more than 1% of its replications error.
pub fn run_bias_mse(scenario: &Scenario) -> Result<Vec<BiasMseRow>> {
    let kde = KdeConfig::default();
    let mut rows = Vec::with_capacity(scenario.sizes.len());
    for &n in &scenario.sizes {
        let mut estimates = Vec::with_capacity(scenario.replications as usize);
        let mut failures = 0u32;
        for rep in 0..scenario.replications {
            let seed_x = derive_seed(scenario.master_seed, rep as u64, n as u64, 0);
            let seed_y = if scenario.identical_streams {
                seed_x
            } else {
                derive_seed(scenario.master_seed, rep as u64, n as u64, 1)
            };
            let outcome = scenario
                .dist_x
                .sample(n, seed_x)
                .and_then(|x| Ok((x, scenario.dist_y.sample(n, seed_y)?)))
                .and_then(|(x, y)| estimate_similarity(&x, &y, scenario.kind, &kde));
            match outcome {
                Ok(s) => estimates.push(s),
                Err(_) => failures += 1,
            }
        }
        if failures as f64 > 0.01 * scenario.replications as f64 {
            return Err(Error::Numerical(format!(
                "scenario {} at n = {n}: {failures} of {} replications failed",
                scenario.name, scenario.replications
            )));
        }
        let count = estimates.len() as f64;
        let mean = estimates.iter().sum::<f64>() / count;
        let mse = estimates
            .iter()
            .map(|s| (s - scenario.true_value) * (s - scenario.true_value))
            .sum::<f64>()
            / count;
        rows.push(BiasMseRow {
            n,
            mean,
            bias: mean - scenario.true_value,
            mse,
            replications: scenario.replications,
            failures,
        });
    }
    Ok(rows)
}

/// CSV rows for a bias/MSE run:
/// `scenario,measure,n,mean,bias,mse,replications,seed`.
pub fn bias_mse_csv(scenario: &Scenario, rows: &[BiasMseRow]) -> String {
    let mut out = String::from("scenario,measure,n,mean,bias,mse,replications,seed\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{:.7},{:.7},{:.6e},{},{}\n",
            scenario.name, scenario.kind, r.n, r.mean, r.bias, r.mse, r.replications,
            scenario.master_seed
        ));
    }
    out
}

/// One row of the invariance table: a transformed sample pair and its
/// three similarity estimates.
#[derive(Debug, Clone)]
pub struct InvarianceRow {
    pub label: String,
    pub survival: f64,
    pub cumulative: f64,
    pub density: f64,
    /// Set when a negative shift had to floor values at 0, which breaks
    /// the exact-invariance guarantee for that row.
    pub clipped: bool,
}

/// Estimate all three similarity ratios for Exp(1)/Exp(2) samples and for
/// their scaled (×2, ×½) and shifted (±0.5) versions.
///
/// Scaling leaves all three estimates unchanged; a common positive shift
/// leaves the survival and cumulative estimates unchanged. The −0.5 row
/// floors at 0 when needed and is then marked `clipped`.
pub fn run_invariance_table(seed: u64, n: usize) -> Result<Vec<InvarianceRow>> {
    if n < 10 {
        return Err(Error::invalid("n", "need n ≥ 10"));
    }
    let x = ParametricDistribution::exponential(1.0)?.sample(n, derive_seed(seed, 0, n as u64, 0))?;
    let y = ParametricDistribution::exponential(2.0)?.sample(n, derive_seed(seed, 0, n as u64, 1))?;

    let mut rows = Vec::with_capacity(5);
    let mut push = |label: &str, a: SampleData, b: SampleData, clipped: bool| -> Result<()> {
        let kde = KdeConfig::default();
        rows.push(InvarianceRow {
            label: label.to_string(),
            survival: estimate_similarity(&a, &b, MeasureKind::Survival, &kde)?,
            cumulative: estimate_similarity(&a, &b, MeasureKind::Cumulative, &kde)?,
            density: estimate_similarity(&a, &b, MeasureKind::Density, &kde)?,
            clipped,
        });
        Ok(())
    };

    push("X,Y", x.clone(), y.clone(), false)?;
    push("2X,2Y", x.scaled(2.0)?, y.scaled(2.0)?, false)?;
    push("X/2,Y/2", x.scaled(0.5)?, y.scaled(0.5)?, false)?;
    let (xs, cx) = x.shifted(0.5)?;
    let (ys, cy) = y.shifted(0.5)?;
    push("X+0.5,Y+0.5", xs, ys, cx || cy)?;
    let (xs, cx) = x.shifted(-0.5)?;
    let (ys, cy) = y.shifted(-0.5)?;
    push("X-0.5,Y-0.5", xs, ys, cx || cy)?;
    Ok(rows)
}

/// CSV for the invariance table:
/// `pair,s_survival,s_cumulative,s_density,clipped`.
pub fn invariance_csv(rows: &[InvarianceRow]) -> String {
    let mut out = String::from("pair,s_survival,s_cumulative,s_density,clipped\n");
    for r in rows {
        out.push_str(&format!(
            "\"{}\",{:.7},{:.7},{:.7},{}\n",
            r.label, r.survival, r.cumulative, r.density, r.clipped
        ));
    }
    out
}

/// One inequality (or identity) evaluated by the theorem suites.
#[derive(Debug, Clone)]
pub struct TheoremCheck {
    pub suite: &'static str,
    pub c: f64,
    pub name: String,
    pub detail: String,
    pub passed: bool,
}

/// Outcome of [`run_theorem_suites`].
#[derive(Debug, Clone, Default)]
pub struct TheoremReport {
    pub checks: Vec<TheoremCheck>,
}

impl TheoremReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    fn push(&mut self, suite: &'static str, c: f64, name: impl Into<String>, passed: bool, detail: String) {
        self.checks.push(TheoremCheck {
            suite,
            c,
            name: name.into(),
            detail,
            passed,
        });
    }
}

/// Exponent grids for the transform suites. Exponents must stay at least
/// 0.05 away from the degenerate value 1.
#[derive(Debug, Clone)]
pub struct TheoremConfig {
    pub phm_grid: Vec<f64>,
    pub prhm_grid: Vec<f64>,
    pub quadrature: QuadratureConfig,
}

impl Default for TheoremConfig {
    fn default() -> Self {
        TheoremConfig {
            phm_grid: vec![0.25, 0.5, 2.0, 4.0],
            prhm_grid: vec![0.5, 2.0, 3.0],
            quadrature: QuadratureConfig::default(),
        }
    }
}

fn validate_grid(grid: &[f64]) -> Result<()> {
    if grid.is_empty() {
        return Err(Error::invalid("grid", "exponent grid must not be empty"));
    }
    for &c in grid {
        if !(c > 0.0 && c.is_finite()) {
            return Err(Error::invalid("grid", format!("exponent {c} must be positive")));
        }
        if (c - 1.0).abs() < 0.05 {
            return Err(Error::invalid(
                "grid",
                format!("exponent {c} is within 0.05 of the degenerate value 1"),
            ));
        }
    }
    Ok(())
}

/// Ordered comparison that flips with the side of 1 the exponent lies on.
fn directed(c: f64, lhs: f64, rhs: f64) -> bool {
    if c > 1.0 {
        lhs < rhs
    } else {
        lhs > rhs
    }
}

/// Run the inequality batteries for the hazard-proportional transform
/// (exponential base), the reversed-hazard-proportional transform
/// (uniform base), and the proportional-extropy identities.
pub fn run_theorem_suites(cfg: &TheoremConfig) -> Result<TheoremReport> {
    validate_grid(&cfg.phm_grid)?;
    validate_grid(&cfg.prhm_grid)?;
    cfg.quadrature.validate()?;
    let q = &cfg.quadrature;
    let mut report = TheoremReport::default();

    let base = ParametricDistribution::exponential(1.0)?.functions();
    for &c in &cfg.phm_grid {
        let y = phm_transform(&base, c)?;

        let (ie_xy, ie_yx) = divergence_ratio(&base.density, &y.density, q)?;
        report.push(
            "phm",
            c,
            "I_E(X|Y) vs c^2 I_E(Y|X)",
            directed(c, ie_xy, c * c * ie_yx),
            format!("{ie_xy:.9} vs {:.9}", c * c * ie_yx),
        );
        report.push(
            "phm",
            c,
            "I_E(X|Y) vs c",
            directed(c, ie_xy, c),
            format!("{ie_xy:.9} vs {c:.9}"),
        );
        report.push(
            "phm",
            c,
            "I_E(Y|X) vs 1/c",
            !directed(c, ie_yx, 1.0 / c),
            format!("{ie_yx:.9} vs {:.9}", 1.0 / c),
        );

        let j_x = generalized_extropy(&base.density, q)?;
        let j_y = generalized_extropy(&y.density, q)?;
        report.push(
            "phm",
            c,
            "J(Y) vs c^2 J(X)",
            !directed(c, j_y, c * c * j_x),
            format!("{j_y:.9} vs {:.9}", c * c * j_x),
        );

        let (ise_xy, ise_yx) = divergence_ratio(&base.survival, &y.survival, q)?;
        report.push(
            "phm",
            c,
            "I_SE(X|Y) vs 1 vs I_SE(Y|X)",
            directed(c, ise_xy, 1.0) && !directed(c, ise_yx, 1.0),
            format!("{ise_xy:.9} vs 1 vs {ise_yx:.9}"),
        );

        let js_x = generalized_extropy(&base.survival, q)?;
        let js_y = generalized_extropy(&y.survival, q)?;
        report.push(
            "phm",
            c,
            "J_s(X) vs J_s(Y)",
            directed(c, js_x, js_y),
            format!("{js_x:.9} vs {js_y:.9}"),
        );

        // Proportional-extropy identities on the survival pair: with
        // c' = U(φ₂)/U(φ₁), the reverse ratio is I/c', the similarity is
        // I²/c', and I stays below √c'.
        let c_prop = js_y / js_x;
        let s = similarity_ratio(&base.survival, &y.survival, q)?;
        let ok = (ise_yx - ise_xy / c_prop).abs() <= 1e-10 * ise_yx.abs().max(1.0)
            && (s - ise_xy * ise_xy / c_prop).abs() <= 1e-10 * s.max(1.0)
            && ise_xy <= c_prop.sqrt() + 1e-9;
        report.push(
            "proportional-extropy",
            c,
            "I(Y|X) = I(X|Y)/c', S = I(X|Y)^2/c', I(X|Y) <= sqrt(c')",
            ok,
            format!("c' = {c_prop:.9}, I_xy = {ise_xy:.9}, I_yx = {ise_yx:.9}, S = {s:.9}"),
        );
    }

    let base = ParametricDistribution::uniform(0.0, 1.0)?.functions();
    let mut by_distance: Vec<(f64, f64)> = Vec::new();
    for &c in &cfg.prhm_grid {
        let y = prhm_transform(&base, c)?;
        let (ice_xy, ice_yx) = divergence_ratio(&base.cumulative, &y.cumulative, q)?;
        report.push(
            "prhm",
            c,
            "I_CE(X|Y) vs I_CE(Y|X)",
            directed(c, ice_xy, ice_yx),
            format!("{ice_xy:.9} vs {ice_yx:.9}"),
        );
        report.push(
            "prhm",
            c,
            "I_CE(X|Y) vs 1 vs I_CE(Y|X)",
            directed(c, ice_xy, 1.0) && !directed(c, ice_yx, 1.0),
            format!("{ice_xy:.9} vs 1 vs {ice_yx:.9}"),
        );

        let xj_x = generalized_extropy(&base.cumulative, q)?;
        let xj_y = generalized_extropy(&y.cumulative, q)?;
        report.push(
            "prhm",
            c,
            "cumulative extropy ordering",
            directed(c, xj_x, xj_y),
            format!("{xj_x:.9} vs {xj_y:.9}"),
        );

        let s = similarity_ratio(&base.cumulative, &y.cumulative, q)?;
        by_distance.push(((c - 1.0).abs(), s));
    }
    by_distance.sort_by(|a, b| a.0.total_cmp(&b.0));
    let monotone = by_distance.windows(2).all(|w| w[1].1 <= w[0].1 + 1e-12);
    report.push(
        "prhm",
        f64::NAN,
        "S_CE decreases as |c-1| grows",
        monotone,
        format!("{by_distance:?}"),
    );

    Ok(report)
}

/// CSV for a theorem report: `suite,c,check,passed,detail`.
pub fn theorem_csv(report: &TheoremReport) -> String {
    let mut out = String::from("suite,c,check,passed,detail\n");
    for c in &report.checks {
        out.push_str(&format!(
            "{},{},\"{}\",{},\"{}\"\n",
            c.suite,
            if c.c.is_nan() { "-".to_string() } else { format!("{}", c.c) },
            c.name,
            c.passed,
            c.detail
        ));
    }
    out
}
