//! Side-channel evidence: the cuBLAS kernel-time mix, batch-indexed metric
//! series, profiler ingestion, and the trend detectors the classifier reads.

use std::collections::BTreeMap;
use std::fmt;
use std::io::Read;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::FingerprintError;

/// Share (percent of one forward+backward iteration) of the three cuBLAS
/// kernels that carry the architectural signal.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct KernelMix {
    pub gemv2t_pct: f64,
    pub gemv2n_pct: f64,
    pub gemmk1_pct: f64,
}

impl KernelMix {
    pub fn new(gemv2t: f64, gemv2n: f64, gemmk1: f64) -> Result<Self, FingerprintError> {
        let m = Self {
            gemv2t_pct: gemv2t,
            gemv2n_pct: gemv2n,
            gemmk1_pct: gemmk1,
        };
        m.validate()?;
        Ok(m)
    }

    pub fn validate(&self) -> Result<(), FingerprintError> {
        for (name, v) in [
            ("gemv2t_pct", self.gemv2t_pct),
            ("gemv2n_pct", self.gemv2n_pct),
            ("gemmk1_pct", self.gemmk1_pct),
        ] {
            if !(0.0..=100.0).contains(&v) {
                return Err(FingerprintError::InvalidMix(format!(
                    "{name}={v} outside [0, 100]"
                )));
            }
        }
        if self.total() > 100.0 + 1e-9 {
            return Err(FingerprintError::InvalidMix(format!(
                "shares sum to {:.2} > 100",
                self.total()
            )));
        }
        Ok(())
    }

    /// gemv2t + gemv2n.
    pub fn gemv_total(&self) -> f64 {
        self.gemv2t_pct + self.gemv2n_pct
    }

    pub fn total(&self) -> f64 {
        self.gemv_total() + self.gemmk1_pct
    }

    /// The same iteration seen with forward and backward roles exchanged.
    pub fn role_swapped(&self) -> Self {
        Self {
            gemv2t_pct: self.gemv2n_pct,
            gemv2n_pct: self.gemv2t_pct,
            gemmk1_pct: self.gemmk1_pct,
        }
    }
}

impl fmt::Display for KernelMix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "gemv2T {:.2}% gemv2N {:.2}% gemmk1 {:.2}%",
            self.gemv2t_pct, self.gemv2n_pct, self.gemmk1_pct
        )
    }
}

/// Per-batch-size measurements. Every list present has one entry per batch
/// size; absent lists are partial evidence, not zeros.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct MetricSeries {
    pub batch_sizes: Vec<u32>,
    #[serde(rename = "FPt_ms", default, skip_serializing_if = "Option::is_none")]
    pub fpt_ms: Option<Vec<f64>>,
    #[serde(rename = "BPt_ms", default, skip_serializing_if = "Option::is_none")]
    pub bpt_ms: Option<Vec<f64>>,
    #[serde(rename = "Mfp_MiB", default, skip_serializing_if = "Option::is_none")]
    pub mfp_mib: Option<Vec<f64>>,
    #[serde(rename = "Tp_fps", default, skip_serializing_if = "Option::is_none")]
    pub tp_fps: Option<Vec<f64>>,
    #[serde(rename = "EPF_mJ", default, skip_serializing_if = "Option::is_none")]
    pub epf_mj: Option<Vec<f64>>,
    /// First batch size that did not fit in device memory; the lists stop
    /// just before it.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oom_at_batch: Option<u32>,
}

/// The metrics a series can carry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Metric {
    #[serde(rename = "FPt")]
    Fpt,
    #[serde(rename = "BPt")]
    Bpt,
    #[serde(rename = "Mfp")]
    Mfp,
    #[serde(rename = "Tp")]
    Tp,
    #[serde(rename = "EPF")]
    Epf,
}

impl Metric {
    pub const ALL: [Metric; 5] = [
        Metric::Fpt,
        Metric::Bpt,
        Metric::Mfp,
        Metric::Tp,
        Metric::Epf,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Metric::Fpt => "FPt",
            Metric::Bpt => "BPt",
            Metric::Mfp => "Mfp",
            Metric::Tp => "Tp",
            Metric::Epf => "EPF",
        }
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl MetricSeries {
    pub fn get(&self, m: Metric) -> Option<&[f64]> {
        match m {
            Metric::Fpt => self.fpt_ms.as_deref(),
            Metric::Bpt => self.bpt_ms.as_deref(),
            Metric::Mfp => self.mfp_mib.as_deref(),
            Metric::Tp => self.tp_fps.as_deref(),
            Metric::Epf => self.epf_mj.as_deref(),
        }
    }

    pub fn get_mut(&mut self, m: Metric) -> &mut Option<Vec<f64>> {
        match m {
            Metric::Fpt => &mut self.fpt_ms,
            Metric::Bpt => &mut self.bpt_ms,
            Metric::Mfp => &mut self.mfp_mib,
            Metric::Tp => &mut self.tp_fps,
            Metric::Epf => &mut self.epf_mj,
        }
    }

    pub fn has_any(&self) -> bool {
        Metric::ALL.iter().any(|&m| self.get(m).is_some())
    }

    pub fn validate(&self) -> Result<(), FingerprintError> {
        let bad = |m: String| Err(FingerprintError::InvalidSeries(m));
        if self.batch_sizes.contains(&0) {
            return bad("batch sizes must be positive".into());
        }
        if self.batch_sizes.windows(2).any(|w| w[0] >= w[1]) {
            return bad("batch sizes must be strictly increasing".into());
        }
        for m in Metric::ALL {
            if let Some(v) = self.get(m) {
                if v.len() != self.batch_sizes.len() {
                    return bad(format!(
                        "{m} has {} values for {} batch sizes",
                        v.len(),
                        self.batch_sizes.len()
                    ));
                }
                if v.iter().any(|x| !x.is_finite() || *x < 0.0) {
                    return bad(format!("{m} values must be finite and non-negative"));
                }
            }
        }
        Ok(())
    }

    /// BPt/FPt per batch size, when both are present.
    pub fn bpfp_ratio(&self) -> Option<Vec<f64>> {
        let (f, b) = (self.fpt_ms.as_ref()?, self.bpt_ms.as_ref()?);
        Some(f.iter().zip(b).map(|(f, b)| b / f).collect())
    }

    /// Multiplies one metric's list by `factor`.
    pub fn scaled(&self, m: Metric, factor: f64) -> Self {
        let mut out = self.clone();
        if let Some(v) = out.get_mut(m) {
            v.iter_mut().for_each(|x| *x *= factor);
        }
        out
    }
}

/// Everything observed about one victim run.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct Fingerprint {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kernel_mix: Option<KernelMix>,
    #[serde(default)]
    pub series: MetricSeries,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hardware: Option<String>,
}

impl Fingerprint {
    pub fn validate(&self) -> Result<(), FingerprintError> {
        if let Some(m) = &self.kernel_mix {
            m.validate()?;
        }
        self.series.validate()?;
        if self.kernel_mix.is_none() && !self.series.has_any() {
            return Err(FingerprintError::NoEvidence);
        }
        Ok(())
    }

    pub fn from_json(text: &str) -> Result<Self, FingerprintError> {
        let fp: Fingerprint =
            serde_json::from_str(text).map_err(|e| FingerprintError::Json(e.to_string()))?;
        fp.validate()?;
        Ok(fp)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, FingerprintError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|source| FingerprintError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::from_json(&text)
    }

    /// Pretty JSON with a fixed key order.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("fingerprints always serialize");
        s.push('\n');
        s
    }
}

/// Kernel mix plus any non-fatal remarks from ingestion.
#[derive(Debug, Clone, PartialEq)]
pub struct Ingested {
    pub mix: KernelMix,
    pub warnings: Vec<String>,
}

const KERNELS: [&str; 3] = ["gemv2t", "gemv2n", "gemmk1"];

fn find_column(headers: &csv::StringRecord, names: &[&str]) -> Option<usize> {
    headers.iter().position(|h| {
        let h = h.trim().to_ascii_lowercase();
        names.contains(&h.as_str())
    })
}

/// Aggregates a profiler summary (columns time-percent, total-time, calls,
/// kernel-name) into a [`KernelMix`]. Leading `==`-prefixed banner lines and
/// a units row are skipped; kernel names are matched case-insensitively.
pub fn ingest_profiler_csv_reader(reader: impl Read) -> Result<Ingested, FingerprintError> {
    let mut text = String::new();
    let mut reader = reader;
    reader
        .read_to_string(&mut text)
        .map_err(|e| FingerprintError::MalformedRow {
            row: 0,
            message: e.to_string(),
        })?;
    // Line numbers in errors refer to the original file.
    let skipped = text
        .lines()
        .take_while(|l| l.trim_start().starts_with("=="))
        .count();
    let body: String = text
        .lines()
        .skip(skipped)
        .map(|l| format!("{l}\n"))
        .collect();
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(true)
        .from_reader(body.as_bytes());
    let headers = rdr
        .headers()
        .map_err(|e| FingerprintError::MalformedRow {
            row: skipped + 1,
            message: e.to_string(),
        })?
        .clone();
    let pct_col = find_column(
        &headers,
        &["time-percent", "time(%)", "time %", "time_percent"],
    )
    .ok_or(FingerprintError::MissingColumn("time-percent"))?;
    let name_col = find_column(&headers, &["kernel-name", "name", "kernel_name"])
        .ok_or(FingerprintError::MissingColumn("kernel-name"))?;
    find_column(&headers, &["total-time", "time", "total_time"])
        .ok_or(FingerprintError::MissingColumn("total-time"))?;
    find_column(&headers, &["calls"]).ok_or(FingerprintError::MissingColumn("calls"))?;

    let mut sums = [0.0f64; 3];
    let mut kernel_rows = 0usize;
    let mut data_rows = 0usize;
    for (i, rec) in rdr.records().enumerate() {
        let row = skipped + i + 2;
        let rec = rec.map_err(|e| FingerprintError::MalformedRow {
            row,
            message: e.to_string(),
        })?;
        // Unquoted template arguments in a trailing name column split into
        // extra fields; anything else with the wrong width is malformed.
        let width = headers.len();
        if rec.len() < width || (rec.len() > width && name_col != width - 1) {
            return Err(FingerprintError::MalformedRow {
                row,
                message: format!("expected {width} fields, found {}", rec.len()),
            });
        }
        let pct_field = rec.get(pct_col).unwrap_or("").trim();
        if pct_field == "%" {
            continue;
        }
        data_rows += 1;
        let pct: f64 = pct_field.trim_end_matches('%').parse().map_err(|_| {
            FingerprintError::MalformedRow {
                row,
                message: format!("time-percent `{pct_field}` is not a number"),
            }
        })?;
        if !(0.0..=100.0).contains(&pct) {
            return Err(FingerprintError::MalformedRow {
                row,
                message: format!("time-percent {pct} outside [0, 100]"),
            });
        }
        let name = rec
            .iter()
            .skip(name_col)
            .collect::<Vec<_>>()
            .join(",")
            .to_ascii_lowercase();
        if let Some(k) = KERNELS.iter().position(|k| name.contains(k)) {
            sums[k] += pct;
            kernel_rows += 1;
        }
    }
    let mut warnings = Vec::new();
    if data_rows == 0 {
        warnings.push("profiler dump has no activity rows; kernel mix is all zero".to_string());
    } else if kernel_rows == 0 {
        warnings.push("no gemv2T/gemv2N/gemmk1 rows found; kernel mix is all zero".to_string());
    }
    let mix = KernelMix {
        gemv2t_pct: sums[0],
        gemv2n_pct: sums[1],
        gemmk1_pct: sums[2],
    };
    mix.validate()?;
    Ok(Ingested { mix, warnings })
}

pub fn ingest_profiler_csv(path: impl AsRef<Path>) -> Result<Ingested, FingerprintError> {
    let path = path.as_ref();
    let file = std::fs::File::open(path).map_err(|source| FingerprintError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    ingest_profiler_csv_reader(file)
}

/// Reads a metrics table with a `batch_size` column and any of
/// `FPt_ms, BPt_ms, Mfp_MiB, Tp_fps, EPF_mJ` (header names case-insensitive).
pub fn ingest_series_csv_reader(reader: impl Read) -> Result<MetricSeries, FingerprintError> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .from_reader(reader);
    let headers = rdr
        .headers()
        .map_err(|e| FingerprintError::MalformedRow {
            row: 1,
            message: e.to_string(),
        })?
        .clone();
    let b_col = find_column(&headers, &["batch_size", "b", "batch"])
        .ok_or(FingerprintError::MissingColumn("batch_size"))?;
    let cols: Vec<(Metric, usize)> = Metric::ALL
        .into_iter()
        .filter_map(|m| {
            let names: &[&str] = match m {
                Metric::Fpt => &["fpt_ms", "fpt"],
                Metric::Bpt => &["bpt_ms", "bpt"],
                Metric::Mfp => &["mfp_mib", "mfp"],
                Metric::Tp => &["tp_fps", "tp"],
                Metric::Epf => &["epf_mj", "epf"],
            };
            find_column(&headers, names).map(|c| (m, c))
        })
        .collect();
    let mut series = MetricSeries::default();
    for &(m, _) in &cols {
        *series.get_mut(m) = Some(Vec::new());
    }
    for (i, rec) in rdr.records().enumerate() {
        let row = i + 2;
        let rec = rec.map_err(|e| FingerprintError::MalformedRow {
            row,
            message: e.to_string(),
        })?;
        let field = |c: usize| rec.get(c).unwrap_or("").trim().to_string();
        let b = field(b_col);
        series
            .batch_sizes
            .push(b.parse().map_err(|_| FingerprintError::MalformedRow {
                row,
                message: format!("batch size `{b}` is not a positive integer"),
            })?);
        for &(m, c) in &cols {
            let v = field(c);
            let x: f64 = v.parse().map_err(|_| FingerprintError::MalformedRow {
                row,
                message: format!("{m} value `{v}` is not a number"),
            })?;
            series
                .get_mut(m)
                .as_mut()
                .expect("initialized above")
                .push(x);
        }
    }
    series.validate()?;
    Ok(series)
}

pub fn ingest_series_csv(path: impl AsRef<Path>) -> Result<MetricSeries, FingerprintError> {
    let path = path.as_ref();
    let file = std::fs::File::open(path).map_err(|source| FingerprintError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    ingest_series_csv_reader(file)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Direction {
    Decreasing,
    Constant,
    Increasing,
    Unknown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Growth {
    Linear,
    Exponential,
    Unknown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TpTrend {
    Constant,
    RisingThenPlateau,
    Rising,
    Falling,
    Unknown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EpfTrend {
    Constant,
    Decreasing,
    Increasing,
    Unknown,
}

/// Qualitative reading of a [`MetricSeries`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TrendSummary {
    pub bpfp_trend: Direction,
    pub mfp_growth: Growth,
    pub tp_trend: TpTrend,
    pub epf_trend: EpfTrend,
    /// BPt/FPt strictly above one at every observed batch size.
    pub bpfp_above_one: bool,
}

/// Detector thresholds. Defaults: 10% constant band, 1.5 residual ratio,
/// plateau = final gain below 5% after earlier gains of at least 15%.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TrendConfig {
    pub constant_band: f64,
    pub residual_ratio: f64,
    pub plateau_final_gain: f64,
    pub plateau_earlier_gain: f64,
    pub min_points: usize,
}

impl Default for TrendConfig {
    fn default() -> Self {
        Self {
            constant_band: 0.10,
            residual_ratio: 1.5,
            plateau_final_gain: 0.05,
            plateau_earlier_gain: 0.15,
            min_points: 3,
        }
    }
}

/// Constant when every point is within `band` of the mean, otherwise the
/// sign of last minus first.
pub fn direction(y: &[f64], cfg: &TrendConfig) -> Direction {
    if y.len() < cfg.min_points {
        return Direction::Unknown;
    }
    let mean = y.iter().sum::<f64>() / y.len() as f64;
    if mean <= 0.0 {
        return Direction::Unknown;
    }
    let dev = y
        .iter()
        .map(|v| (v - mean).abs() / mean)
        .fold(0.0, f64::max);
    if dev <= cfg.constant_band {
        return Direction::Constant;
    }
    let (first, last) = (y[0], y[y.len() - 1]);
    if last > first {
        Direction::Increasing
    } else if last < first {
        Direction::Decreasing
    } else {
        Direction::Constant
    }
}

/// Least-squares fit of y = a + b·x; returns (a, b).
fn fit_line(x: &[f64], y: &[f64]) -> (f64, f64) {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxx: f64 = x.iter().map(|v| (v - mx).powi(2)).sum();
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let b = if sxx > 0.0 { sxy / sxx } else { 0.0 };
    (my - b * mx, b)
}

/// RMS of the residuals divided by the mean of `y`.
fn relative_rms(y: &[f64], fitted: impl Iterator<Item = f64>) -> f64 {
    let n = y.len() as f64;
    let mean = y.iter().sum::<f64>() / n;
    let ss: f64 = y.iter().zip(fitted).map(|(v, f)| (v - f).powi(2)).sum();
    (ss / n).sqrt() / mean
}

/// Normalized residuals of the linear and exponential fits, in that order.
pub fn growth_residuals(batch: &[u32], y: &[f64]) -> Option<(f64, f64)> {
    if batch.len() != y.len() || y.iter().any(|v| *v <= 0.0) || y.is_empty() {
        return None;
    }
    let x: Vec<f64> = batch.iter().map(|&b| f64::from(b)).collect();
    let (a, b) = fit_line(&x, y);
    let lin = relative_rms(y, x.iter().map(|xi| a + b * xi));
    let logs: Vec<f64> = y.iter().map(|v| v.ln()).collect();
    let (la, lc) = fit_line(&x, &logs);
    let exp = relative_rms(y, x.iter().map(|xi| (la + lc * xi).exp()));
    Some((lin, exp))
}

/// Linear vs exponential growth: the better fit must beat the other by the
/// configured residual ratio, otherwise the answer is unknown.
pub fn growth(batch: &[u32], y: &[f64], cfg: &TrendConfig) -> Growth {
    if y.len() < cfg.min_points {
        return Growth::Unknown;
    }
    let Some((lin, exp)) = growth_residuals(batch, y) else {
        return Growth::Unknown;
    };
    const EXACT: f64 = 1e-9;
    if lin <= EXACT && exp <= EXACT {
        Growth::Unknown
    } else if lin * cfg.residual_ratio <= exp || (lin <= EXACT && exp > EXACT) {
        Growth::Linear
    } else if exp * cfg.residual_ratio <= lin || (exp <= EXACT && lin > EXACT) {
        Growth::Exponential
    } else {
        Growth::Unknown
    }
}

pub fn tp_trend(y: &[f64], cfg: &TrendConfig) -> TpTrend {
    match direction(y, cfg) {
        Direction::Unknown => TpTrend::Unknown,
        Direction::Constant => TpTrend::Constant,
        Direction::Decreasing => TpTrend::Falling,
        Direction::Increasing => {
            let n = y.len();
            let final_gain = y[n - 1] / y[n - 2] - 1.0;
            let earlier_gain = y[n - 2] / y[0] - 1.0;
            if final_gain < cfg.plateau_final_gain && earlier_gain >= cfg.plateau_earlier_gain {
                TpTrend::RisingThenPlateau
            } else {
                TpTrend::Rising
            }
        }
    }
}

pub fn epf_trend(y: &[f64], cfg: &TrendConfig) -> EpfTrend {
    match direction(y, cfg) {
        Direction::Unknown => EpfTrend::Unknown,
        Direction::Constant => EpfTrend::Constant,
        Direction::Decreasing => EpfTrend::Decreasing,
        Direction::Increasing => EpfTrend::Increasing,
    }
}

pub fn extract_trends(series: &MetricSeries) -> TrendSummary {
    extract_trends_with(series, &TrendConfig::default())
}

pub fn extract_trends_with(series: &MetricSeries, cfg: &TrendConfig) -> TrendSummary {
    let ratio = series.bpfp_ratio();
    TrendSummary {
        bpfp_trend: ratio
            .as_deref()
            .map_or(Direction::Unknown, |r| direction(r, cfg)),
        bpfp_above_one: ratio
            .as_deref()
            .is_some_and(|r| !r.is_empty() && r.iter().all(|v| *v > 1.0)),
        mfp_growth: series
            .mfp_mib
            .as_deref()
            .map_or(Growth::Unknown, |y| growth(&series.batch_sizes, y, cfg)),
        tp_trend: series
            .tp_fps
            .as_deref()
            .map_or(TpTrend::Unknown, |y| tp_trend(y, cfg)),
        epf_trend: series
            .epf_mj
            .as_deref()
            .map_or(EpfTrend::Unknown, |y| epf_trend(y, cfg)),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    HigherAtAllB,
    LowerAtAllB,
    HigherAtHighB,
    /// Within the equality band at every overlapping batch size.
    Similar,
    Mixed,
}

/// One metric compared at the overlapping batch sizes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricComparison {
    pub verdict: Verdict,
    pub batch_sizes: Vec<u32>,
    /// victim / reference at each overlapping batch size.
    pub ratios: Vec<f64>,
}

impl MetricComparison {
    /// Ratio at the largest overlapping batch size.
    pub fn high_b_ratio(&self) -> f64 {
        *self.ratios.last().expect("comparisons are never empty")
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct ComparisonVerdict {
    pub metrics: BTreeMap<Metric, MetricComparison>,
}

impl ComparisonVerdict {
    pub fn get(&self, m: Metric) -> Option<&MetricComparison> {
        self.metrics.get(&m)
    }
    pub fn verdict(&self, m: Metric) -> Option<Verdict> {
        self.get(m).map(|c| c.verdict)
    }
}

/// Compares one metric list pair; `band` is the relative difference treated
/// as equal (0.10 = 10%).
pub fn compare_metric(ratios: &[f64], band: f64) -> Verdict {
    let higher = |r: &f64| *r > 1.0 + band;
    let lower = |r: &f64| *r < 1.0 - band;
    if ratios.iter().all(higher) {
        Verdict::HigherAtAllB
    } else if ratios.iter().all(lower) {
        Verdict::LowerAtAllB
    } else if ratios.last().is_some_and(higher) {
        Verdict::HigherAtHighB
    } else if ratios.iter().all(|r| !higher(r) && !lower(r)) {
        Verdict::Similar
    } else {
        Verdict::Mixed
    }
}

/// Per-metric verdicts for every metric both fingerprints carry, over the
/// batch sizes they share.
pub fn compare_to_reference(
    victim: &Fingerprint,
    reference: &Fingerprint,
    band: f64,
) -> Result<ComparisonVerdict, FingerprintError> {
    let (vs, rs) = (&victim.series, &reference.series);
    let shared: Vec<(usize, usize, u32)> = vs
        .batch_sizes
        .iter()
        .enumerate()
        .filter_map(|(i, b)| {
            rs.batch_sizes
                .iter()
                .position(|rb| rb == b)
                .map(|j| (i, j, *b))
        })
        .collect();
    let mut out = ComparisonVerdict::default();
    let mut any_common_metric = false;
    for m in Metric::ALL {
        let (Some(v), Some(r)) = (vs.get(m), rs.get(m)) else {
            continue;
        };
        any_common_metric = true;
        let pairs: Vec<(u32, f64)> = shared
            .iter()
            .filter(|(i, j, _)| r[*j] > 0.0 && *i < v.len())
            .map(|&(i, j, b)| (b, v[i] / r[j]))
            .collect();
        if pairs.is_empty() {
            return Err(FingerprintError::NoOverlap { metric: m.as_str() });
        }
        let ratios: Vec<f64> = pairs.iter().map(|p| p.1).collect();
        out.metrics.insert(
            m,
            MetricComparison {
                verdict: compare_metric(&ratios, band),
                batch_sizes: pairs.iter().map(|p| p.0).collect(),
                ratios,
            },
        );
    }
    if !any_common_metric {
        return Err(FingerprintError::NoOverlap { metric: "any" });
    }
    Ok(out)
}
