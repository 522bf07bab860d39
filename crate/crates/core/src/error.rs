use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ArchError {
    #[error("invalid layer: {reason}")]
    InvalidLayer { reason: String },
    #[error("{what} must be positive, got {value}")]
    NonPositive { what: &'static str, value: f64 },
    #[error("architecture `{name}` has no parametric layers")]
    EmptyArchitecture { name: String },
    #[error("layer `{layer}`: {reason}")]
    Node { layer: String, reason: String },
    #[error("shape mismatch between `{from}` and `{to}`: {detail}")]
    ShapeMismatch {
        from: String,
        to: String,
        detail: String,
    },
    #[error("unknown component `{0}`")]
    UnknownComponent(String),
}

#[derive(Debug, Error)]
pub enum ZooError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{origin}: parse error at line {line}, column {column}: {message}")]
    Parse {
        origin: String,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{origin}: field `{field}`: {message}")]
    Field {
        origin: String,
        field: String,
        message: String,
    },
    #[error("{origin}: unsupported schema_version {found} (expected {expected})")]
    SchemaVersion {
        origin: String,
        found: u32,
        expected: u32,
    },
    #[error("{origin}: {source}")]
    Arch {
        origin: String,
        #[source]
        source: ArchError,
    },
    #[error("{model}: component set {found:?} disagrees with the reference taxonomy {expected:?}")]
    ComponentMismatch {
        model: String,
        found: Vec<String>,
        expected: Vec<String>,
    },
    #[error("no bundled architecture named `{0}`")]
    UnknownModel(String),
}

#[derive(Debug, Error)]
pub enum FingerprintError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("row {row}: {message}")]
    MalformedRow { row: usize, message: String },
    #[error("missing required column `{0}`")]
    MissingColumn(&'static str),
    #[error("invalid kernel mix: {0}")]
    InvalidMix(String),
    #[error("invalid metric series: {0}")]
    InvalidSeries(String),
    #[error("fingerprint has no evidence channel (needs a kernel mix or a metric series)")]
    NoEvidence,
    #[error("no overlapping batch sizes for {metric}")]
    NoOverlap { metric: &'static str },
    #[error("fingerprint JSON: {0}")]
    Json(String),
}

#[derive(Debug, Error)]
pub enum ClassifyError {
    #[error("insufficient evidence: missing {channel}")]
    InsufficientEvidence { channel: &'static str },
    #[error("no reference fingerprint for group {group}")]
    MissingReference { group: String },
    #[error("group is unknown; intra-group prediction needs a known group")]
    UnknownGroup,
    #[error("threshold config: {0}")]
    Config(String),
    #[error(transparent)]
    Fingerprint(#[from] FingerprintError),
    #[error(transparent)]
    Synth(#[from] SynthError),
    #[error(transparent)]
    Zoo(#[from] ZooError),
}

#[derive(Debug, Error)]
pub enum SynthError {
    #[error("no kernel-mix band for component set {0:?}")]
    UnmappedComponents(Vec<String>),
    #[error("batch sizes must be a non-empty ascending list of positive integers")]
    BadBatchSizes,
    #[error("invalid hardware profile: {0}")]
    BadHardware(String),
    #[error(transparent)]
    Arch(#[from] ArchError),
}

#[derive(Debug, Error)]
pub enum DefenseError {
    #[error("`{name}` has no depthwise layers to transform")]
    NoDepthwise { name: String },
    #[error("layer `{layer}`: channels-per-group {g} does not divide M={m}")]
    Divisibility { layer: String, g: u32, m: u32 },
    #[error("channels-per-group must be positive")]
    ZeroG,
    #[error(transparent)]
    Arch(#[from] ArchError),
    #[error(transparent)]
    Synth(#[from] SynthError),
    #[error(transparent)]
    Classify(#[from] ClassifyError),
}
