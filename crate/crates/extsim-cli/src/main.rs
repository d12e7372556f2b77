//! Command-line front end for the extsim similarity measures.
//!
//! Exit codes: 0 success, 1 usage error, 2 numeric or degenerate error,
//! 3 classification left images unmatched.

use std::collections::HashMap;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{CommandFactory, Parser, Subcommand};

use extsim::distributions::{ParametricDistribution, SampleData};
use extsim::estimators::{
    estimate_report, estimate_similarity, estimate_similarity_cumulative_with,
    estimate_similarity_survival_with, BandwidthRule, EstimateReport, KdeConfig,
    MarginalConvention,
};
use extsim::image::{classification_csv, classify, GrayscaleImage};
use extsim::measures::{similarity_ratio, similarity_report, MeasureKind, QuadratureConfig};
use extsim::simulation::{
    bias_mse_csv, invariance_csv, run_bias_mse, run_invariance_table, run_theorem_suites,
    theorem_csv, Scenario, TheoremConfig,
};

#[derive(Parser)]
#[command(
    name = "extsim",
    about = "Extropy-based divergence and similarity ratios between distributions, samples, and images",
    version
)]
struct Cli {
    /// Key-value file whose entries act as flag defaults (a flag given on
    /// the command line wins).
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,

    /// Significant digits in printed values.
    #[arg(long, global = true, default_value_t = 7)]
    precision: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Population similarity and divergence ratios of two parametric
    /// distributions.
    Similarity {
        /// First distribution, e.g. exp:1, beta:3,2, uniform:0,1, power:2.
        #[arg(long)]
        dist1: String,
        /// Second distribution.
        #[arg(long)]
        dist2: String,
        /// Comma-separated measure kinds (density, survival, cumulative)
        /// or `all`.
        #[arg(long)]
        kind: String,
        /// `plain` or `csv`.
        #[arg(long, default_value = "plain")]
        format: String,
        #[arg(long, default_value_t = 1e-10)]
        abs_tol: f64,
        #[arg(long, default_value_t = 1e-8)]
        rel_tol: f64,
        #[arg(long, default_value_t = 1e-12)]
        tail_mass: f64,
        #[arg(long, default_value_t = 2000)]
        max_subdivisions: u32,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Nonparametric similarity estimates from two sample files (one
    /// value per line, `#` comments).
    Estimate {
        #[arg(long)]
        file_x: PathBuf,
        #[arg(long)]
        file_y: PathBuf,
        /// Comma-separated measure kinds or `all`.
        #[arg(long)]
        kind: String,
        /// Marginal sums: `pooled` (shared grid) or `own-points`.
        #[arg(long, default_value = "pooled")]
        convention: String,
        /// `silverman` or a fixed positive bandwidth.
        #[arg(long, default_value = "silverman")]
        bandwidth: String,
        #[arg(long, default_value_t = 512)]
        grid_points: usize,
        /// `plain` or `csv`.
        #[arg(long, default_value = "plain")]
        format: String,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Similarity curve of Exp(λ1) against Exp(λ2) over a λ1 range.
    Sweep {
        #[arg(long, default_value_t = 3.0)]
        lambda2: f64,
        #[arg(long, default_value_t = 0.2)]
        min: f64,
        #[arg(long, default_value_t = 10.0)]
        max: f64,
        #[arg(long, default_value_t = 0.05)]
        step: f64,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Pairwise similarity matrices for several sample groups.
    Matrix {
        /// Comma-separated sample files, one per group.
        #[arg(long)]
        groups: String,
        /// Comma-separated measure kinds or `all`.
        #[arg(long, default_value = "all")]
        kind: String,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Bias/MSE study of the estimators on a named scenario.
    Simulate {
        /// `table1` (kernel, beta pair), `table2` (survival, exponential
        /// pair), or `table3` (cumulative, uniform vs beta).
        #[arg(long)]
        scenario: String,
        /// Comma-separated sample sizes.
        #[arg(long, default_value = "50,75,100,200")]
        n: String,
        #[arg(long, default_value_t = 500)]
        reps: u32,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Scale/location invariance table for an Exp(1)/Exp(2) sample pair.
    Invariance {
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        n: usize,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Inequality suites for the proportional (reversed) hazard
    /// transforms.
    Theorems {
        /// Exponents for the hazard transform (exponential base).
        #[arg(long, default_value = "0.25,0.5,2,4")]
        phm_grid: String,
        /// Exponents for the reversed-hazard transform (uniform base).
        #[arg(long, default_value = "0.5,2,3")]
        prhm_grid: String,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Classify images against one anchor image per group using the
    /// exposure-invariant reference similarity.
    Classify {
        /// Comma-separated anchor images (PGM or CSV); the file stem
        /// names the group.
        #[arg(long)]
        anchors: String,
        /// Comma-separated image files and/or directories to classify.
        #[arg(long)]
        mixed: String,
        /// Relative matching tolerance.
        #[arg(long, default_value_t = 1e-9)]
        epsilon: f64,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

enum CliError {
    Usage(String),
    Numeric(String),
    Incomplete(String),
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Numeric(_) => 2,
            CliError::Incomplete(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Numeric(m) | CliError::Incomplete(m) => m,
        }
    }
}

impl From<extsim::Error> for CliError {
    fn from(e: extsim::Error) -> Self {
        match e {
            extsim::Error::InvalidParameter { .. } | extsim::Error::Io(_) => {
                CliError::Usage(e.to_string())
            }
            other => CliError::Numeric(other.to_string()),
        }
    }
}

fn main() {
    let argv: Vec<OsString> = std::env::args_os().collect();
    let argv = match apply_config(argv) {
        Ok(argv) => argv,
        Err(e) => {
            eprintln!("error: {}", e.message());
            std::process::exit(e.exit_code());
        }
    };
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version are successful exits.
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            std::process::exit(code);
        }
    };

    match run(&cli) {
        Ok(()) => {}
        Err(e) => {
            eprintln!("error: {}", e.message());
            std::process::exit(e.exit_code());
        }
    }
}

/// Extend the command line with config-file entries for flags the user
/// did not pass, so that a given flag always wins over the file.
///
/// Every option of this tool is a long flag taking one value, which keeps
/// the scan simple; help/version requests bypass the merge.
fn apply_config(argv: Vec<OsString>) -> Result<Vec<OsString>, CliError> {
    let is_help = |s: &str| matches!(s, "--help" | "-h" | "--version" | "-V");
    if argv
        .iter()
        .any(|a| a.to_str().map(is_help).unwrap_or(false))
    {
        return Ok(argv);
    }

    let mut config: Option<PathBuf> = None;
    let mut sub_name: Option<String> = None;
    let mut i = 1;
    while i < argv.len() {
        let s = argv[i].to_str().unwrap_or("");
        if let Some(rest) = s.strip_prefix("--config=") {
            config = Some(PathBuf::from(rest));
            i += 1;
        } else if s == "--config" {
            if i + 1 < argv.len() {
                config = Some(PathBuf::from(&argv[i + 1]));
            }
            i += 2;
        } else if s.starts_with("--") {
            i += if s.contains('=') { 1 } else { 2 };
        } else {
            if sub_name.is_none() {
                sub_name = Some(s.to_string());
            }
            i += 1;
        }
    }
    let Some(path) = config else {
        return Ok(argv);
    };
    let Some(sub_name) = sub_name else {
        // No subcommand found; let clap produce the usage error.
        return Ok(argv);
    };

    let text = std::fs::read_to_string(&path)
        .map_err(|e| CliError::Usage(format!("config {}: {e}", path.display())))?;
    let mut entries: HashMap<String, String> = HashMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(CliError::Usage(format!(
                "config {}:{}: expected `key = value`",
                path.display(),
                lineno + 1
            )));
        };
        entries.insert(key.trim().to_string(), value.trim().to_string());
    }

    // Long option names understood globally and by this subcommand.
    let root = Cli::command();
    let mut known: Vec<String> = root
        .get_arguments()
        .filter_map(|a| a.get_long().map(str::to_string))
        .collect();
    if let Some(sub) = root.get_subcommands().find(|s| s.get_name() == sub_name) {
        known.extend(
            sub.get_arguments()
                .filter_map(|a| a.get_long().map(str::to_string)),
        );
    }

    let mut extended = argv.clone();
    let mut keys: Vec<&String> = entries.keys().collect();
    keys.sort();
    for key in keys {
        if key == "config" {
            continue;
        }
        if !known.contains(key) {
            eprintln!("warning: config key `{key}` does not match a {sub_name} flag; ignored");
            continue;
        }
        let flag = format!("--{key}");
        let given = argv.iter().any(|a| {
            a.to_str()
                .map(|s| s == flag || s.starts_with(&format!("{flag}=")))
                .unwrap_or(false)
        });
        if !given {
            extended.push(flag.clone().into());
            extended.push(entries[key].clone().into());
        }
    }
    Ok(extended)
}

fn run(cli: &Cli) -> Result<(), CliError> {
    let fmt = Formatter {
        digits: cli.precision.clamp(1, 17),
    };
    match &cli.command {
        Command::Similarity {
            dist1,
            dist2,
            kind,
            format,
            abs_tol,
            rel_tol,
            tail_mass,
            max_subdivisions,
            output,
        } => {
            let q = QuadratureConfig {
                abs_tol: *abs_tol,
                rel_tol: *rel_tol,
                tail_mass: *tail_mass,
                max_subdivisions: *max_subdivisions,
            };
            let dx = parse_dist(dist1)?;
            let dy = parse_dist(dist2)?;
            let kinds = parse_kinds(kind)?;
            let csv = parse_format(format)?;
            let mut out = String::new();
            if csv {
                out.push_str(
                    "kind,extropy_x,extropy_y,inaccuracy,divergence_xy,divergence_yx,similarity,cosine\n",
                );
            } else {
                let _ = writeln!(out, "X: {dist1}\nY: {dist2}");
            }
            for k in &kinds {
                let r = similarity_report(dx.functions().of(*k), dy.functions().of(*k), &q)?;
                if csv {
                    let _ = writeln!(
                        out,
                        "{},{},{},{},{},{},{},{}",
                        r.kind,
                        fmt.sig(r.extropy_x),
                        fmt.sig(r.extropy_y),
                        fmt.sig(r.inaccuracy),
                        fmt.sig(r.divergence_xy),
                        fmt.sig(r.divergence_yx),
                        fmt.sig(r.similarity),
                        fmt.sig(r.cosine)
                    );
                } else {
                    let _ = writeln!(
                        out,
                        "[{}]\nU(X)     = {}\nU(Y)     = {}\nU(X,Y)   = {}\nI(X|Y)   = {}\nI(Y|X)   = {}\nS(X,Y)   = {}\ncos      = {}",
                        r.kind,
                        fmt.sig(r.extropy_x),
                        fmt.sig(r.extropy_y),
                        fmt.sig(r.inaccuracy),
                        fmt.sig(r.divergence_xy),
                        fmt.sig(r.divergence_yx),
                        fmt.sig(r.similarity),
                        fmt.sig(r.cosine)
                    );
                }
            }
            emit(output.as_deref(), &out)
        }
        Command::Estimate {
            file_x,
            file_y,
            kind,
            convention,
            bandwidth,
            grid_points,
            format,
            output,
        } => {
            let x = read_sample_file(file_x)?;
            let y = read_sample_file(file_y)?;
            let kinds = parse_kinds(kind)?;
            let csv = parse_format(format)?;
            let convention = match convention.as_str() {
                "pooled" => MarginalConvention::PooledGrid,
                "own-points" => MarginalConvention::OwnPoints,
                other => {
                    return Err(CliError::Usage(format!(
                        "unknown convention `{other}` (expected pooled or own-points)"
                    )))
                }
            };
            let kde = KdeConfig {
                bandwidth: parse_bandwidth(bandwidth)?,
                grid_points: *grid_points,
                ..KdeConfig::default()
            };
            let mut out = String::new();
            if csv {
                out.push_str(
                    "kind,marginal_x,marginal_y,inaccuracy,divergence_xy,divergence_yx,similarity\n",
                );
            }
            for k in &kinds {
                let r = estimate_with_convention(&x, &y, *k, convention, &kde)?;
                if csv {
                    let _ = writeln!(
                        out,
                        "{},{},{},{},{},{},{}",
                        r.kind,
                        fmt.sig(r.marginal_x),
                        fmt.sig(r.marginal_y),
                        fmt.sig(r.inaccuracy),
                        fmt.sig(r.divergence_xy),
                        fmt.sig(r.divergence_yx),
                        fmt.sig(r.similarity)
                    );
                } else {
                    let _ = writeln!(
                        out,
                        "[{}]\nU^(X)    = {}\nU^(Y)    = {}\nU^(X,Y)  = {}\nI^(X|Y)  = {}\nI^(Y|X)  = {}\nS^(X,Y)  = {}",
                        r.kind,
                        fmt.sig(r.marginal_x),
                        fmt.sig(r.marginal_y),
                        fmt.sig(r.inaccuracy),
                        fmt.sig(r.divergence_xy),
                        fmt.sig(r.divergence_yx),
                        fmt.sig(r.similarity)
                    );
                }
            }
            emit(output.as_deref(), &out)
        }
        Command::Sweep {
            lambda2,
            min,
            max,
            step,
            output,
        } => {
            if !(*min > 0.0 && *max > *min && *step > 0.0 && *lambda2 > 0.0) {
                return Err(CliError::Usage(
                    "sweep needs 0 < min < max, step > 0, lambda2 > 0".into(),
                ));
            }
            let q = QuadratureConfig::default();
            let reference = ParametricDistribution::exponential(*lambda2)?;
            let mut out = String::from("lambda1,s_density,s_survival\n");
            let mut index = 0u64;
            loop {
                let lambda1 = min + index as f64 * step;
                if lambda1 > *max + 1e-12 {
                    break;
                }
                let d = ParametricDistribution::exponential(lambda1)?;
                let s_e = similarity_ratio(&d.density_fn(), &reference.density_fn(), &q)?;
                let s_se = similarity_ratio(&d.survival_fn(), &reference.survival_fn(), &q)?;
                let _ = writeln!(
                    out,
                    "{},{},{}",
                    fmt.sig(lambda1),
                    fmt.sig(s_e),
                    fmt.sig(s_se)
                );
                index += 1;
            }
            emit(output.as_deref(), &out)
        }
        Command::Matrix {
            groups,
            kind,
            output,
        } => {
            let paths: Vec<PathBuf> = groups.split(',').map(PathBuf::from).collect();
            if paths.len() < 2 {
                return Err(CliError::Usage("matrix needs at least two group files".into()));
            }
            let kinds = parse_kinds(kind)?;
            let mut names = Vec::new();
            let mut samples = Vec::new();
            for p in &paths {
                names.push(stem_of(p));
                samples.push(read_sample_file(p)?);
            }
            let kde = KdeConfig::default();
            let mut out = format!("kind,group,{}\n", names.join(","));
            for k in &kinds {
                let n = samples.len();
                let mut matrix = vec![vec![0.0; n]; n];
                for i in 0..n {
                    for j in i..n {
                        let s = estimate_similarity(&samples[i], &samples[j], *k, &kde)?;
                        matrix[i][j] = s;
                        matrix[j][i] = s;
                    }
                }
                for (i, name) in names.iter().enumerate() {
                    let row: Vec<String> = matrix[i].iter().map(|v| fmt.sig(*v)).collect();
                    let _ = writeln!(out, "{k},{name},{}", row.join(","));
                }
            }
            emit(output.as_deref(), &out)
        }
        Command::Simulate {
            scenario,
            n,
            reps,
            seed,
            output,
        } => {
            let sizes = parse_usize_list(n)?;
            let sc = match scenario.as_str() {
                "table1" => Scenario::table1(sizes, *reps, *seed)?,
                "table2" => Scenario::table2(sizes, *reps, *seed)?,
                "table3" => Scenario::table3(sizes, *reps, *seed)?,
                other => {
                    return Err(CliError::Usage(format!(
                        "unknown scenario `{other}` (expected table1, table2, or table3)"
                    )))
                }
            };
            let rows = run_bias_mse(&sc)?;
            emit(output.as_deref(), &bias_mse_csv(&sc, &rows))
        }
        Command::Invariance { seed, n, output } => {
            let rows = run_invariance_table(*seed, *n)?;
            emit(output.as_deref(), &invariance_csv(&rows))
        }
        Command::Theorems {
            phm_grid,
            prhm_grid,
            output,
        } => {
            let cfg = TheoremConfig {
                phm_grid: parse_f64_list(phm_grid)?,
                prhm_grid: parse_f64_list(prhm_grid)?,
                quadrature: QuadratureConfig::default(),
            };
            let report = run_theorem_suites(&cfg)?;
            let mut out = theorem_csv(&report);
            let failed = report.checks.iter().filter(|c| !c.passed).count();
            let _ = writeln!(out, "# {} checks, {failed} failed", report.checks.len());
            emit(output.as_deref(), &out)?;
            if report.all_passed() {
                Ok(())
            } else {
                Err(CliError::Numeric(format!("{failed} theorem checks failed")))
            }
        }
        Command::Classify {
            anchors,
            mixed,
            epsilon,
            output,
        } => {
            let anchor_list = load_images(anchors)?;
            let mixed_list = load_images(mixed)?;
            let results = classify(&mixed_list, &anchor_list, *epsilon)?;
            emit(output.as_deref(), &classification_csv(&results))?;
            let unmatched = results.iter().filter(|r| r.group.is_none()).count();
            if unmatched > 0 {
                Err(CliError::Incomplete(format!(
                    "{unmatched} of {} images unmatched",
                    results.len()
                )))
            } else {
                Ok(())
            }
        }
    }
}

fn estimate_with_convention(
    x: &SampleData,
    y: &SampleData,
    kind: MeasureKind,
    convention: MarginalConvention,
    kde: &KdeConfig,
) -> Result<EstimateReport, CliError> {
    if convention == MarginalConvention::PooledGrid || kind == MeasureKind::Density {
        return Ok(estimate_report(x, y, kind, kde)?);
    }
    let e = match kind {
        MeasureKind::Survival => estimate_similarity_survival_with(x, y, convention)?,
        MeasureKind::Cumulative => estimate_similarity_cumulative_with(x, y, convention)?,
        MeasureKind::Density => unreachable!("handled above"),
    };
    Ok(EstimateReport {
        kind,
        marginal_x: e.marginal_x,
        marginal_y: e.marginal_y,
        inaccuracy: e.inaccuracy,
        divergence_xy: e.inaccuracy / e.marginal_x,
        divergence_yx: e.inaccuracy / e.marginal_y,
        similarity: e.similarity,
    })
}

struct Formatter {
    digits: usize,
}

impl Formatter {
    /// Fixed-point rendering with `digits` significant digits.
    fn sig(&self, v: f64) -> String {
        if v == 0.0 || !v.is_finite() {
            return format!("{v}");
        }
        let exponent = v.abs().log10().floor() as i32;
        let decimals = (self.digits as i32 - 1 - exponent).max(0) as usize;
        format!("{v:.decimals$}")
    }
}

fn parse_dist(spec: &str) -> Result<ParametricDistribution, CliError> {
    let usage = || {
        CliError::Usage(format!(
            "bad distribution spec `{spec}`: expected family:params, e.g. exp:1.5, beta:3,2, \
             uniform:0,1, power:2"
        ))
    };
    let (name, params) = spec.split_once(':').ok_or_else(usage)?;
    let values: Vec<f64> = params
        .split(',')
        .map(|p| p.trim().parse::<f64>().map_err(|_| usage()))
        .collect::<Result<_, _>>()?;
    let d = match (name.to_ascii_lowercase().as_str(), values.as_slice()) {
        ("exp" | "exponential", [rate]) => ParametricDistribution::exponential(*rate),
        ("beta", [a, b]) => ParametricDistribution::beta(*a, *b),
        ("uniform" | "unif", [lo, hi]) => ParametricDistribution::uniform(*lo, *hi),
        ("power", [c]) => ParametricDistribution::power(*c),
        _ => return Err(usage()),
    };
    d.map_err(|e| CliError::Usage(format!("`{spec}`: {e}")))
}

fn parse_kinds(spec: &str) -> Result<Vec<MeasureKind>, CliError> {
    if spec.eq_ignore_ascii_case("all") {
        return Ok(MeasureKind::ALL.to_vec());
    }
    spec.split(',')
        .map(|k| MeasureKind::parse(k.trim()).map_err(|e| CliError::Usage(e.to_string())))
        .collect()
}

fn parse_format(spec: &str) -> Result<bool, CliError> {
    match spec {
        "csv" => Ok(true),
        "plain" => Ok(false),
        other => Err(CliError::Usage(format!(
            "unknown format `{other}` (expected plain or csv)"
        ))),
    }
}

fn parse_bandwidth(spec: &str) -> Result<BandwidthRule, CliError> {
    if spec.eq_ignore_ascii_case("silverman") {
        return Ok(BandwidthRule::Silverman);
    }
    spec.parse::<f64>()
        .map(BandwidthRule::Fixed)
        .map_err(|_| CliError::Usage(format!("bad bandwidth `{spec}`")))
}

fn parse_f64_list(spec: &str) -> Result<Vec<f64>, CliError> {
    spec.split(',')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .map_err(|_| CliError::Usage(format!("bad number `{}` in list", s.trim())))
        })
        .collect()
}

fn parse_usize_list(spec: &str) -> Result<Vec<usize>, CliError> {
    spec.split(',')
        .map(|s| {
            s.trim()
                .parse::<usize>()
                .map_err(|_| CliError::Usage(format!("bad count `{}` in list", s.trim())))
        })
        .collect()
}

fn read_sample_file(path: &Path) -> Result<SampleData, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    let mut values = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let v: f64 = line.parse().map_err(|_| {
            CliError::Usage(format!(
                "{}:{}: malformed value `{line}`",
                path.display(),
                lineno + 1
            ))
        })?;
        values.push(v);
    }
    SampleData::new(values).map_err(CliError::from)
}

fn stem_of(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

/// Expand a comma-separated list of image files and directories into
/// (name, image) pairs; directories contribute their .pgm/.csv files in
/// name order.
fn load_images(spec: &str) -> Result<Vec<(String, GrayscaleImage)>, CliError> {
    let mut files: Vec<PathBuf> = Vec::new();
    for entry in spec.split(',') {
        let path = PathBuf::from(entry.trim());
        if path.is_dir() {
            let mut inside: Vec<PathBuf> = std::fs::read_dir(&path)
                .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?
                .filter_map(|e| e.ok().map(|e| e.path()))
                .filter(|p| {
                    matches!(
                        p.extension().and_then(|e| e.to_str()),
                        Some("pgm") | Some("csv")
                    )
                })
                .collect();
            inside.sort();
            files.extend(inside);
        } else {
            files.push(path);
        }
    }
    if files.is_empty() {
        return Err(CliError::Usage(format!("no image files in `{spec}`")));
    }
    files
        .into_iter()
        .map(|p| {
            let img = GrayscaleImage::load_auto(&p).map_err(CliError::from)?;
            Ok((stem_of(&p), img))
        })
        .collect()
}

fn emit(output: Option<&Path>, content: &str) -> Result<(), CliError> {
    match output {
        Some(path) => std::fs::write(path, content)
            .map_err(|e| CliError::Usage(format!("{}: {e}", path.display()))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}
