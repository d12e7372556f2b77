//! Python bindings for the extsim similarity measures.
//!
//! Exposes the parametric distributions, the population-level similarity
//! and divergence ratios, the nonparametric estimators, and the
//! exposure-invariant image similarity tools as the `extsim_py` module.

use std::path::PathBuf;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use extsim::distributions::{ParametricDistribution, SampleData};
use extsim::estimators::{self, KdeConfig};
use extsim::image;
use extsim::measures::{self, MeasureKind, QuadratureConfig};

fn to_py_err(e: extsim::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse_kind(kind: &str) -> PyResult<MeasureKind> {
    MeasureKind::parse(kind).map_err(to_py_err)
}

fn sample_from(values: Vec<f64>) -> PyResult<SampleData> {
    SampleData::new(values).map_err(to_py_err)
}

/// A validated parametric distribution (exponential, beta, uniform, or
/// power family).
#[pyclass(frozen, skip_from_py_object)]
#[derive(Clone)]
struct Distribution {
    inner: ParametricDistribution,
}

#[pymethods]
impl Distribution {
    #[staticmethod]
    fn exponential(rate: f64) -> PyResult<Self> {
        Ok(Distribution {
            inner: ParametricDistribution::exponential(rate).map_err(to_py_err)?,
        })
    }

    #[staticmethod]
    fn beta(alpha: f64, beta: f64) -> PyResult<Self> {
        Ok(Distribution {
            inner: ParametricDistribution::beta(alpha, beta).map_err(to_py_err)?,
        })
    }

    #[staticmethod]
    fn uniform(lower: f64, upper: f64) -> PyResult<Self> {
        Ok(Distribution {
            inner: ParametricDistribution::uniform(lower, upper).map_err(to_py_err)?,
        })
    }

    #[staticmethod]
    fn power(exponent: f64) -> PyResult<Self> {
        Ok(Distribution {
            inner: ParametricDistribution::power(exponent).map_err(to_py_err)?,
        })
    }

    fn pdf(&self, x: f64) -> PyResult<f64> {
        self.inner.pdf(x).map_err(to_py_err)
    }

    fn cdf(&self, x: f64) -> PyResult<f64> {
        self.inner.cdf(x).map_err(to_py_err)
    }

    fn sf(&self, x: f64) -> PyResult<f64> {
        self.inner.sf(x).map_err(to_py_err)
    }

    fn hazard(&self, x: f64) -> PyResult<f64> {
        self.inner.hazard(x).map_err(to_py_err)
    }

    fn reversed_hazard(&self, x: f64) -> PyResult<f64> {
        self.inner.reversed_hazard(x).map_err(to_py_err)
    }

    fn support(&self) -> (f64, f64) {
        self.inner.support()
    }

    /// Draw `n` i.i.d. values, deterministically for a given seed.
    fn sample(&self, n: usize, seed: u64) -> PyResult<Vec<f64>> {
        Ok(self
            .inner
            .sample(n, seed)
            .map_err(to_py_err)?
            .values()
            .to_vec())
    }
}

/// Population-level quantities of one pair of measures.
#[pyclass(frozen, get_all)]
struct SimilarityReport {
    kind: String,
    extropy_x: f64,
    extropy_y: f64,
    inaccuracy: f64,
    divergence_xy: f64,
    divergence_yx: f64,
    similarity: f64,
    cosine: f64,
}

/// Full similarity report for two distributions under one measure kind
/// (`"density"`, `"survival"`, or `"cumulative"`).
#[pyfunction]
fn similarity_report(x: &Distribution, y: &Distribution, kind: &str) -> PyResult<SimilarityReport> {
    let k = parse_kind(kind)?;
    let q = QuadratureConfig::default();
    let r = measures::similarity_report(x.inner.functions().of(k), y.inner.functions().of(k), &q)
        .map_err(to_py_err)?;
    Ok(SimilarityReport {
        kind: r.kind.to_string(),
        extropy_x: r.extropy_x,
        extropy_y: r.extropy_y,
        inaccuracy: r.inaccuracy,
        divergence_xy: r.divergence_xy,
        divergence_yx: r.divergence_yx,
        similarity: r.similarity,
        cosine: r.cosine,
    })
}

/// Similarity ratio `S ∈ (0, 1]` of two distributions.
#[pyfunction]
fn similarity_ratio(x: &Distribution, y: &Distribution, kind: &str) -> PyResult<f64> {
    let k = parse_kind(kind)?;
    let q = QuadratureConfig::default();
    measures::similarity_ratio(x.inner.functions().of(k), y.inner.functions().of(k), &q)
        .map_err(to_py_err)
}

/// Both divergence ratios `(I(X|Y), I(Y|X))` of two distributions.
#[pyfunction]
fn divergence_ratio(x: &Distribution, y: &Distribution, kind: &str) -> PyResult<(f64, f64)> {
    let k = parse_kind(kind)?;
    let q = QuadratureConfig::default();
    measures::divergence_ratio(x.inner.functions().of(k), y.inner.functions().of(k), &q)
        .map_err(to_py_err)
}

/// Closed form `4λ₁λ₂/(λ₁+λ₂)²` of the exponential similarity.
#[pyfunction]
fn exponential_similarity_closed_form(lambda1: f64, lambda2: f64) -> PyResult<f64> {
    measures::exponential_similarity_closed_form(lambda1, lambda2).map_err(to_py_err)
}

/// Nonparametric similarity estimate from two samples.
#[pyfunction]
fn estimate_similarity(xs: Vec<f64>, ys: Vec<f64>, kind: &str) -> PyResult<f64> {
    let k = parse_kind(kind)?;
    estimators::estimate_similarity(&sample_from(xs)?, &sample_from(ys)?, k, &KdeConfig::default())
        .map_err(to_py_err)
}

/// Nonparametric divergence-ratio estimates `(Î(X|Y), Î(Y|X))`.
#[pyfunction]
fn estimate_divergence_ratios(xs: Vec<f64>, ys: Vec<f64>, kind: &str) -> PyResult<(f64, f64)> {
    let k = parse_kind(kind)?;
    estimators::estimate_divergence_ratios(
        &sample_from(xs)?,
        &sample_from(ys)?,
        k,
        &KdeConfig::default(),
    )
    .map_err(to_py_err)
}

/// A grayscale image with intensities in [0, 1].
#[pyclass(frozen, from_py_object)]
#[derive(Clone)]
struct GrayscaleImage {
    inner: image::GrayscaleImage,
}

#[pymethods]
impl GrayscaleImage {
    #[new]
    fn new(width: usize, height: usize, pixels: Vec<f64>) -> PyResult<Self> {
        Ok(GrayscaleImage {
            inner: image::GrayscaleImage::new(width, height, pixels).map_err(to_py_err)?,
        })
    }

    /// Load a PGM (P2/P5) or CSV-matrix image.
    #[staticmethod]
    fn load(path: PathBuf) -> PyResult<Self> {
        Ok(GrayscaleImage {
            inner: image::GrayscaleImage::load_auto(&path).map_err(to_py_err)?,
        })
    }

    fn width(&self) -> usize {
        self.inner.width()
    }

    fn height(&self) -> usize {
        self.inner.height()
    }

    fn pixels(&self) -> Vec<f64> {
        self.inner.pixels().to_vec()
    }

    /// Multiply every pixel by `c ∈ (0, 1]`.
    fn scale_exposure(&self, c: f64) -> PyResult<Self> {
        Ok(GrayscaleImage {
            inner: self.inner.scale_exposure(c).map_err(to_py_err)?,
        })
    }

    /// Exposure-invariant fingerprint: survival similarity against the
    /// uniformly black reference image.
    fn similarity_to_reference(&self) -> PyResult<f64> {
        image::similarity_to_reference(&self.inner).map_err(to_py_err)
    }

    /// Similarity of the gray levels of two images under one kind.
    fn similarity(&self, other: &GrayscaleImage, kind: &str) -> PyResult<f64> {
        let k = parse_kind(kind)?;
        image::image_similarity(&self.inner, &other.inner, k, &KdeConfig::default())
            .map_err(to_py_err)
    }
}

/// Classify `(name, image)` pairs against one anchor per group; returns
/// `(name, fingerprint, group-or-None)` triples in input order.
#[pyfunction]
#[pyo3(signature = (mixed, anchors, epsilon = 1e-9))]
fn classify_images(
    mixed: Vec<(String, GrayscaleImage)>,
    anchors: Vec<(String, GrayscaleImage)>,
    epsilon: f64,
) -> PyResult<Vec<(String, f64, Option<String>)>> {
    let mixed: Vec<(String, image::GrayscaleImage)> =
        mixed.into_iter().map(|(n, i)| (n, i.inner)).collect();
    let anchors: Vec<(String, image::GrayscaleImage)> =
        anchors.into_iter().map(|(n, i)| (n, i.inner)).collect();
    let results = image::classify(&mixed, &anchors, epsilon).map_err(to_py_err)?;
    Ok(results
        .into_iter()
        .map(|r| (r.image_id, r.similarity, r.group))
        .collect())
}

#[pymodule]
fn extsim_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Distribution>()?;
    m.add_class::<SimilarityReport>()?;
    m.add_class::<GrayscaleImage>()?;
    m.add_function(wrap_pyfunction!(similarity_report, m)?)?;
    m.add_function(wrap_pyfunction!(similarity_ratio, m)?)?;
    m.add_function(wrap_pyfunction!(divergence_ratio, m)?)?;
    m.add_function(wrap_pyfunction!(exponential_similarity_closed_form, m)?)?;
    m.add_function(wrap_pyfunction!(estimate_similarity, m)?)?;
    m.add_function(wrap_pyfunction!(estimate_divergence_ratios, m)?)?;
    m.add_function(wrap_pyfunction!(classify_images, m)?)?;
    Ok(())
}
