//! Grayscale-image similarity under exposure scaling and reference-based
//! classification.
//!
//! Multiplying every pixel of two images by the same constant `c ∈ (0, 1]`
//! (an exposure reduction) leaves their similarity ratios unchanged, since
//! the ratios are scale invariant. Comparing an image against a uniformly
//! black reference therefore yields a per-image fingerprint that is
//! constant across exposures: a mixed set of re-exposed images can be
//! classified by matching fingerprints against one anchor per group.
//!
//! The black reference has all of its mass at 0, so its survival function
//! is taken as identically 1 on `[0, m]`, where `m` is the other image's
//! maximum pixel; its marginal term is then `-m/2` and every term of the
//! ratio scales linearly with exposure, which is what makes the
//! fingerprint exactly invariant.

use std::fs::File;
use std::io::{BufRead, BufReader, Read};
use std::path::Path;

use crate::distributions::SampleData;
use crate::error::{Error, Result};
use crate::estimators::{empirical_sf, estimate_similarity, KdeConfig};
use crate::measures::MeasureKind;

/// A width × height grid of intensities in `[0, 1]`, row major.
#[derive(Debug, Clone, PartialEq)]
pub struct GrayscaleImage {
    width: usize,
    height: usize,
    pixels: Vec<f64>,
}

/// On-disk formats understood by [`GrayscaleImage::load`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ImageFormat {
    /// Plain (ASCII) portable graymap, magic `P2`.
    PgmAscii,
    /// Binary portable graymap, magic `P5`.
    PgmBinary,
    /// Comma-separated matrix of intensities already in `[0, 1]`.
    CsvMatrix,
}

impl GrayscaleImage {
    /// Validate and wrap a pixel grid: at least 4 pixels, all in `[0, 1]`.
    pub fn new(width: usize, height: usize, pixels: Vec<f64>) -> Result<Self> {
        if width * height != pixels.len() {
            return Err(Error::invalid(
                "pixels",
                format!(
                    "dimension mismatch: {width}×{height} grid vs {} pixel values",
                    pixels.len()
                ),
            ));
        }
        if pixels.len() < 4 {
            return Err(Error::invalid("pixels", "an image needs at least 4 pixels"));
        }
        if let Some(bad) = pixels.iter().find(|p| !(0.0..=1.0).contains(*p)) {
            return Err(Error::invalid(
                "pixels",
                format!("pixel intensity {bad} outside [0, 1]"),
            ));
        }
        Ok(GrayscaleImage {
            width,
            height,
            pixels,
        })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn pixels(&self) -> &[f64] {
        &self.pixels
    }

    pub fn max_pixel(&self) -> f64 {
        self.pixels.iter().copied().fold(0.0, f64::max)
    }

    /// Load from `path` in an explicitly named format.
    pub fn load(path: &Path, format: ImageFormat) -> Result<Self> {
        match format {
            ImageFormat::PgmAscii | ImageFormat::PgmBinary => load_pgm(path, format),
            ImageFormat::CsvMatrix => load_csv_matrix(path),
        }
    }

    /// Load from `path`, picking the format from the extension and, for
    /// `.pgm`, from the magic number.
    pub fn load_auto(path: &Path) -> Result<Self> {
        let ext = path
            .extension()
            .and_then(|e| e.to_str())
            .unwrap_or("")
            .to_ascii_lowercase();
        match ext.as_str() {
            "csv" => load_csv_matrix(path),
            "pgm" => {
                let mut magic = [0u8; 2];
                File::open(path)?.read_exact(&mut magic)?;
                match &magic {
                    b"P2" => load_pgm(path, ImageFormat::PgmAscii),
                    b"P5" => load_pgm(path, ImageFormat::PgmBinary),
                    other => Err(Error::ImageFormat(format!(
                        "{}: unknown PGM magic {:?}",
                        path.display(),
                        String::from_utf8_lossy(other)
                    ))),
                }
            }
            other => Err(Error::ImageFormat(format!(
                "{}: unsupported extension `{other}` (expected .pgm or .csv)",
                path.display()
            ))),
        }
    }

    /// Multiply every pixel by `c ∈ (0, 1]`.
    pub fn scale_exposure(&self, c: f64) -> Result<GrayscaleImage> {
        if !(c > 0.0 && c <= 1.0) {
            return Err(Error::invalid("c", format!("exposure factor must lie in (0, 1], got {c}")));
        }
        Ok(GrayscaleImage {
            width: self.width,
            height: self.height,
            pixels: self.pixels.iter().map(|p| p * c).collect(),
        })
    }

    /// The pixel intensities as sample data.
    pub fn sample(&self) -> Result<SampleData> {
        SampleData::new(self.pixels.clone())
    }

    fn require_contrast(&self) -> Result<()> {
        let first = self.pixels[0];
        if self.pixels.iter().all(|p| *p == first) {
            return Err(Error::DegenerateInput(
                "constant image: similarity needs at least two distinct pixel values".into(),
            ));
        }
        Ok(())
    }
}

/// Similarity ratio of the requested kind between the gray levels of two
/// images; pixels enter as plain samples.
pub fn image_similarity(
    a: &GrayscaleImage,
    b: &GrayscaleImage,
    kind: MeasureKind,
    kde: &KdeConfig,
) -> Result<f64> {
    a.require_contrast()?;
    b.require_contrast()?;
    estimate_similarity(&a.sample()?, &b.sample()?, kind, kde)
}

/// Survival-kind similarity between the uniformly black reference and an
/// image, the exposure-invariant fingerprint.
///
/// The reference survival function is 1 on `[0, m]` with `m` the image's
/// maximum pixel, its marginal term is `-m/2`, and the image sums run
/// over the 0-augmented grid `{0} ∪ sorted pixels` so the region below
/// the smallest pixel counts.
pub fn similarity_to_reference(img: &GrayscaleImage) -> Result<f64> {
    let m = img.max_pixel();
    if m <= 0.0 {
        return Err(Error::DegenerateInput(
            "all-black image has no reference similarity".into(),
        ));
    }
    img.require_contrast()?;
    let sample = img.sample()?;
    let sf = empirical_sf(&sample);

    let mut grid = Vec::with_capacity(sample.len() + 1);
    grid.push(0.0);
    grid.extend_from_slice(sample.sorted());

    let mut cross = 0.0;
    let mut marginal = 0.0;
    for k in 0..grid.len() - 1 {
        let gap = grid[k + 1] - grid[k];
        if gap <= 0.0 {
            continue;
        }
        let v = sf.eval(grid[k]);
        cross += v * gap; // reference survival ≡ 1
        marginal += v * v * gap;
    }
    let inaccuracy = -0.5 * cross;
    let marginal_img = -0.5 * marginal;
    let marginal_ref = -0.5 * m;
    if inaccuracy >= 0.0 || marginal_img >= 0.0 {
        return Err(Error::DegenerateInput(
            "image carries no survival mass above 0".into(),
        ));
    }
    Ok((inaccuracy * inaccuracy) / (marginal_ref * marginal_img))
}

/// One classified image.
#[derive(Debug, Clone)]
pub struct ReferenceResult {
    pub image_id: String,
    /// Fingerprint of the image (reference similarity).
    pub similarity: f64,
    /// Assigned group, or `None` when no anchor matched.
    pub group: Option<String>,
    /// Fingerprint of the nearest anchor.
    pub anchor_similarity: f64,
    /// Relative gap to the nearest anchor.
    pub relative_gap: f64,
}

/// Classify a mixed set of images against one anchor image per group.
///
/// Anchor fingerprints must be pairwise separated by more than `2ε`
/// relatively; each mixed image is assigned to the anchor within relative
/// tolerance `ε`, or left unmatched.
pub fn classify(
    mixed: &[(String, GrayscaleImage)],
    anchors: &[(String, GrayscaleImage)],
    epsilon: f64,
) -> Result<Vec<ReferenceResult>> {
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::invalid("epsilon", "matching tolerance must lie in (0, 1)"));
    }
    if anchors.is_empty() {
        return Err(Error::invalid("anchors", "need at least one anchor image"));
    }
    let mut anchor_s = Vec::with_capacity(anchors.len());
    for (group, img) in anchors {
        anchor_s.push((group.clone(), similarity_to_reference(img)?));
    }
    for i in 0..anchor_s.len() {
        for j in i + 1..anchor_s.len() {
            let (a, b) = (anchor_s[i].1, anchor_s[j].1);
            if (a - b).abs() <= 2.0 * epsilon * a.max(b) {
                return Err(Error::AnchorCollision(format!(
                    "groups `{}` ({a:.12e}) and `{}` ({b:.12e}) are within 2ε",
                    anchor_s[i].0, anchor_s[j].0
                )));
            }
        }
    }

    let mut results = Vec::with_capacity(mixed.len());
    for (id, img) in mixed {
        let s = similarity_to_reference(img)?;
        let (nearest, gap) = anchor_s
            .iter()
            .map(|(g, a)| (g, (s - a).abs() / a))
            .min_by(|x, y| x.1.total_cmp(&y.1))
            .expect("anchors are non-empty");
        let anchor_similarity = anchor_s
            .iter()
            .find(|(g, _)| g == nearest)
            .expect("nearest comes from the list")
            .1;
        results.push(ReferenceResult {
            image_id: id.clone(),
            similarity: s,
            group: (gap <= epsilon).then(|| nearest.clone()),
            anchor_similarity,
            relative_gap: gap,
        });
    }
    Ok(results)
}

/// CSV for classification results:
/// `image,similarity,group,anchor_similarity,relative_gap`.
pub fn classification_csv(results: &[ReferenceResult]) -> String {
    let mut out = String::from("image,similarity,group,anchor_similarity,relative_gap\n");
    for r in results {
        out.push_str(&format!(
            "\"{}\",{:.12e},{},{:.12e},{:.6e}\n",
            r.image_id,
            r.similarity,
            r.group.as_deref().unwrap_or("unmatched"),
            r.anchor_similarity,
            r.relative_gap,
        ));
    }
    out
}

// --- file formats -----------------------------------------------------

/// PGM header tokens, skipping whitespace and `#` comments.
struct PgmTokens<R: Read> {
    reader: R,
}

impl<R: Read> PgmTokens<R> {
    fn next_byte(&mut self) -> Result<Option<u8>> {
        let mut b = [0u8; 1];
        match self.reader.read(&mut b)? {
            0 => Ok(None),
            _ => Ok(Some(b[0])),
        }
    }

    fn next_token(&mut self) -> Result<String> {
        let mut tok = String::new();
        loop {
            match self.next_byte()? {
                None => {
                    if tok.is_empty() {
                        return Err(Error::ImageFormat("unexpected end of PGM header".into()));
                    }
                    return Ok(tok);
                }
                Some(b'#') => {
                    // Comment to end of line.
                    while let Some(c) = self.next_byte()? {
                        if c == b'\n' {
                            break;
                        }
                    }
                }
                Some(c) if c.is_ascii_whitespace() => {
                    if !tok.is_empty() {
                        return Ok(tok);
                    }
                }
                Some(c) => tok.push(c as char),
            }
        }
    }

    fn next_usize(&mut self, what: &str) -> Result<usize> {
        let tok = self.next_token()?;
        tok.parse()
            .map_err(|_| Error::ImageFormat(format!("malformed PGM {what}: `{tok}`")))
    }
}

fn load_pgm(path: &Path, format: ImageFormat) -> Result<GrayscaleImage> {
    let file = File::open(path)?;
    let mut tokens = PgmTokens {
        reader: BufReader::new(file),
    };
    let magic = tokens.next_token()?;
    let expected = match format {
        ImageFormat::PgmAscii => "P2",
        ImageFormat::PgmBinary => "P5",
        ImageFormat::CsvMatrix => unreachable!("handled by the caller"),
    };
    if magic != expected {
        return Err(Error::ImageFormat(format!(
            "{}: expected magic {expected}, found `{magic}`",
            path.display()
        )));
    }
    let width = tokens.next_usize("width")?;
    let height = tokens.next_usize("height")?;
    let maxval = tokens.next_usize("maxval")?;
    if width == 0 || height == 0 {
        return Err(Error::ImageFormat(format!("{}: empty image", path.display())));
    }
    if maxval == 0 || maxval > 65_535 {
        return Err(Error::ImageFormat(format!(
            "{}: maxval {maxval} outside [1, 65535]",
            path.display()
        )));
    }

    let count = width * height;
    let raw: Vec<u64> = match format {
        ImageFormat::PgmAscii => (0..count)
            .map(|_| tokens.next_usize("pixel").map(|v| v as u64))
            .collect::<Result<_>>()?,
        ImageFormat::PgmBinary => {
            // The single whitespace byte after maxval was already consumed
            // by the tokenizer.
            let mut data = Vec::new();
            tokens.reader.read_to_end(&mut data)?;
            let bytes_per = if maxval < 256 { 1 } else { 2 };
            if data.len() < count * bytes_per {
                return Err(Error::ImageFormat(format!(
                    "{}: raster too short: {} bytes for {count} pixels",
                    path.display(),
                    data.len()
                )));
            }
            (0..count)
                .map(|i| {
                    if bytes_per == 1 {
                        data[i] as u64
                    } else {
                        // Big-endian per the format.
                        ((data[2 * i] as u64) << 8) | data[2 * i + 1] as u64
                    }
                })
                .collect()
        }
        ImageFormat::CsvMatrix => unreachable!(),
    };
    if let Some(bad) = raw.iter().find(|v| **v > maxval as u64) {
        return Err(Error::ImageFormat(format!(
            "{}: pixel value {bad} exceeds maxval {maxval}",
            path.display()
        )));
    }
    let pixels = raw.iter().map(|v| *v as f64 / maxval as f64).collect();
    GrayscaleImage::new(width, height, pixels)
}

fn load_csv_matrix(path: &Path) -> Result<GrayscaleImage> {
    let file = File::open(path)?;
    let mut width = None;
    let mut pixels = Vec::new();
    let mut height = 0;
    for (lineno, line) in BufReader::new(file).lines().enumerate() {
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        let row: Vec<f64> = trimmed
            .split(',')
            .map(|cell| {
                cell.trim().parse::<f64>().map_err(|_| {
                    Error::ImageFormat(format!(
                        "{}:{}: malformed intensity `{}`",
                        path.display(),
                        lineno + 1,
                        cell.trim()
                    ))
                })
            })
            .collect::<Result<_>>()?;
        match width {
            None => width = Some(row.len()),
            Some(w) if w != row.len() => {
                return Err(Error::ImageFormat(format!(
                    "{}:{}: ragged row ({} cells, expected {w})",
                    path.display(),
                    lineno + 1,
                    row.len()
                )))
            }
            _ => {}
        }
        pixels.extend(row);
        height += 1;
    }
    let width = width.ok_or_else(|| Error::ImageFormat(format!("{}: empty image", path.display())))?;
    GrayscaleImage::new(width, height, pixels)
}
