//! Layer-level cost algebra: parameter, activation and MAC counts for
//! convolution variants, plus the energy metrics derived from them.
//!
//! Every count is an exact `u64`. Scaling to millions happens only when a
//! [`ModelStats`] is rendered.

use serde::{Deserialize, Serialize};
use std::fmt;

use crate::error::ArchError;

/// The parametric layer variants the cost model understands.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LayerKind {
    StandardConv,
    PointwiseConv,
    DepthwiseConv,
    GroupConv,
    FullyConnected,
}

impl LayerKind {
    pub fn as_str(self) -> &'static str {
        match self {
            LayerKind::StandardConv => "standard-conv",
            LayerKind::PointwiseConv => "pointwise-conv",
            LayerKind::DepthwiseConv => "depthwise-conv",
            LayerKind::GroupConv => "group-conv",
            LayerKind::FullyConnected => "fully-connected",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "standard-conv" => LayerKind::StandardConv,
            "pointwise-conv" => LayerKind::PointwiseConv,
            "depthwise-conv" => LayerKind::DepthwiseConv,
            "group-conv" => LayerKind::GroupConv,
            "fully-connected" => LayerKind::FullyConnected,
            _ => return None,
        })
    }
}

impl fmt::Display for LayerKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Spatial padding rule, stored per layer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Padding {
    /// No padding: `floor((in - filter) / stride) + 1`.
    Valid,
    /// Output side is `ceil(in / stride)`.
    Same,
    /// Symmetric zero padding of `p` pixels: `floor((in + 2p - filter) / stride) + 1`.
    Explicit(u32),
}

impl Padding {
    pub fn output_side(self, input: u32, filter: u32, stride: u32) -> Option<u32> {
        match self {
            Padding::Same => Some(input.div_ceil(stride)),
            Padding::Valid => (input >= filter).then(|| (input - filter) / stride + 1),
            Padding::Explicit(p) => {
                let padded = input + 2 * p;
                (padded >= filter).then(|| (padded - filter) / stride + 1)
            }
        }
    }
}

impl Serialize for Padding {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Padding::Valid => s.serialize_str("valid"),
            Padding::Same => s.serialize_str("same"),
            Padding::Explicit(p) => s.serialize_u32(*p),
        }
    }
}

impl<'de> Deserialize<'de> for Padding {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Mode(String),
            Pad(u32),
        }
        match Repr::deserialize(d)? {
            Repr::Pad(p) => Ok(Padding::Explicit(p)),
            Repr::Mode(m) => match m.as_str() {
                "same" => Ok(Padding::Same),
                "valid" => Ok(Padding::Valid),
                other => Err(serde::de::Error::custom(format!(
                    "unknown padding `{other}` (expected \"same\", \"valid\" or an integer)"
                ))),
            },
        }
    }
}

/// Construction parameters for a [`LayerSpec`]. `Default` gives a 1×1,
/// stride-1, ungrouped, bias-free layer with "same" padding.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LayerParams {
    pub kind: LayerKind,
    pub in_channels: u32,
    pub out_channels: u32,
    pub in_size: u32,
    pub filter_size: u32,
    /// Width of a non-square (asymmetric) filter; `None` for square filters.
    pub filter_width: Option<u32>,
    pub stride: u32,
    pub groups: u32,
    pub padding: Padding,
    pub has_bias: bool,
}

impl Default for LayerParams {
    fn default() -> Self {
        Self {
            kind: LayerKind::StandardConv,
            in_channels: 1,
            out_channels: 1,
            in_size: 1,
            filter_size: 1,
            filter_width: None,
            stride: 1,
            groups: 1,
            padding: Padding::Same,
            has_bias: false,
        }
    }
}

/// One parametric layer. Fields are private so the shape invariants checked
/// in [`LayerSpec::new`] always hold.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LayerSpec {
    kind: LayerKind,
    in_channels: u32,
    out_channels: u32,
    in_size: u32,
    filter_size: u32,
    filter_width: Option<u32>,
    out_size: u32,
    stride: u32,
    groups: u32,
    padding: Padding,
    has_bias: bool,
}

impl LayerSpec {
    pub fn new(p: LayerParams) -> Result<Self, ArchError> {
        let bad = |reason: String| ArchError::InvalidLayer { reason };
        if p.in_channels == 0 || p.out_channels == 0 {
            return Err(bad("channel counts must be positive".into()));
        }
        if p.in_size == 0 || p.filter_size == 0 || p.stride == 0 || p.groups == 0 {
            return Err(bad("sizes, stride and groups must be positive".into()));
        }
        if p.filter_width == Some(0) {
            return Err(bad("filter width must be positive".into()));
        }
        if !p.in_channels.is_multiple_of(p.groups) || !p.out_channels.is_multiple_of(p.groups) {
            return Err(bad(format!(
                "groups {} must divide M={} and N={}",
                p.groups, p.in_channels, p.out_channels
            )));
        }
        let square = p.filter_width.is_none_or(|w| w == p.filter_size);
        match p.kind {
            LayerKind::DepthwiseConv => {
                if p.groups != p.in_channels || p.out_channels != p.in_channels {
                    return Err(bad(format!(
                        "depthwise layer needs groups == M == N (got M={}, N={}, groups={})",
                        p.in_channels, p.out_channels, p.groups
                    )));
                }
            }
            LayerKind::PointwiseConv => {
                if p.filter_size != 1 || !square {
                    return Err(bad("pointwise layer needs a 1x1 filter".into()));
                }
            }
            LayerKind::FullyConnected => {
                if p.filter_size != 1 || !square || p.in_size != 1 || p.stride != 1 || p.groups != 1
                {
                    return Err(bad(
                        "fully-connected layer is a 1x1 ungrouped conv on a 1x1 extent".into(),
                    ));
                }
            }
            LayerKind::StandardConv | LayerKind::GroupConv => {}
        }
        if !square && p.padding != Padding::Same {
            return Err(bad("non-square filters require \"same\" padding".into()));
        }
        let out_size = p
            .padding
            .output_side(p.in_size, p.filter_size, p.stride)
            .filter(|&s| s > 0)
            .ok_or_else(|| {
                bad(format!(
                    "filter {} larger than padded input {}",
                    p.filter_size, p.in_size
                ))
            })?;
        Ok(Self {
            kind: p.kind,
            in_channels: p.in_channels,
            out_channels: p.out_channels,
            in_size: p.in_size,
            filter_size: p.filter_size,
            filter_width: if square { None } else { p.filter_width },
            out_size,
            stride: p.stride,
            groups: p.groups,
            padding: p.padding,
            has_bias: p.has_bias,
        })
    }

    /// Fully-connected layer with `inputs` features and `outputs` neurons.
    pub fn fully_connected(inputs: u32, outputs: u32, has_bias: bool) -> Result<Self, ArchError> {
        Self::new(LayerParams {
            kind: LayerKind::FullyConnected,
            in_channels: inputs,
            out_channels: outputs,
            has_bias,
            ..LayerParams::default()
        })
    }

    pub fn params(&self) -> LayerParams {
        LayerParams {
            kind: self.kind,
            in_channels: self.in_channels,
            out_channels: self.out_channels,
            in_size: self.in_size,
            filter_size: self.filter_size,
            filter_width: self.filter_width,
            stride: self.stride,
            groups: self.groups,
            padding: self.padding,
            has_bias: self.has_bias,
        }
    }

    pub fn kind(&self) -> LayerKind {
        self.kind
    }
    /// M: input feature maps.
    pub fn in_channels(&self) -> u32 {
        self.in_channels
    }
    /// N: output feature maps.
    pub fn out_channels(&self) -> u32 {
        self.out_channels
    }
    /// S_M: input spatial side.
    pub fn in_size(&self) -> u32 {
        self.in_size
    }
    /// S_F: filter spatial side (height for asymmetric filters).
    pub fn filter_size(&self) -> u32 {
        self.filter_size
    }
    pub fn filter_width(&self) -> u32 {
        self.filter_width.unwrap_or(self.filter_size)
    }
    pub fn is_asymmetric(&self) -> bool {
        self.filter_width.is_some()
    }
    /// S_N: output spatial side.
    pub fn out_size(&self) -> u32 {
        self.out_size
    }
    pub fn stride(&self) -> u32 {
        self.stride
    }
    pub fn groups(&self) -> u32 {
        self.groups
    }
    pub fn padding(&self) -> Padding {
        self.padding
    }
    pub fn has_bias(&self) -> bool {
        self.has_bias
    }

    /// Filter taps per (input channel, output channel) pair.
    fn filter_area(&self) -> u64 {
        u64::from(self.filter_size) * u64::from(self.filter_width())
    }

    /// Returns a copy with a different group count, keeping everything else.
    pub fn with_groups(&self, kind: LayerKind, groups: u32) -> Result<Self, ArchError> {
        Self::new(LayerParams {
            kind,
            groups,
            ..self.params()
        })
    }
}

/// N × (M/groups) × S_F² weights, plus N biases when present.
pub fn count_params(layer: &LayerSpec) -> u64 {
    let n = u64::from(layer.out_channels);
    let per_group_in = u64::from(layer.in_channels / layer.groups);
    let weights = n * per_group_in * layer.filter_area();
    if layer.has_bias {
        weights + n
    } else {
        weights
    }
}

/// N × S_N².
pub fn count_activations(layer: &LayerSpec) -> u64 {
    let s = u64::from(layer.out_size);
    u64::from(layer.out_channels) * s * s
}

/// N × (M/groups) × S_N² × S_F².
pub fn count_macs(layer: &LayerSpec) -> u64 {
    let s = u64::from(layer.out_size);
    let per_group_in = u64::from(layer.in_channels / layer.groups);
    u64::from(layer.out_channels) * per_group_in * s * s * layer.filter_area()
}

/// Whole-network counts. `activations` follows the per-blob convention
/// described on [`crate::graph::ArchitectureSpec::aggregate_stats`];
/// `layer_activations` is the plain sum of N×S_N² over parametric layers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ModelStats {
    pub params: u64,
    pub activations: u64,
    pub layer_activations: u64,
    pub macs: u64,
}

impl ModelStats {
    pub fn params_m(&self) -> f64 {
        self.params as f64 / 1e6
    }
    pub fn activations_m(&self) -> f64 {
        self.activations as f64 / 1e6
    }
    pub fn macs_m(&self) -> f64 {
        self.macs as f64 / 1e6
    }

    fn ratio(num: u64, den: u64) -> Option<f64> {
        (den > 0).then(|| num as f64 / den as f64)
    }

    /// A/P.
    pub fn activations_per_param(&self) -> Option<f64> {
        Self::ratio(self.activations, self.params)
    }
    /// Mc/P, weight reuse.
    pub fn weight_reuse(&self) -> Option<f64> {
        Self::ratio(self.macs, self.params)
    }
    /// Mc/A, activation reuse.
    pub fn activation_reuse(&self) -> Option<f64> {
        Self::ratio(self.macs, self.activations)
    }
}

impl std::ops::Add for ModelStats {
    type Output = ModelStats;
    fn add(self, o: ModelStats) -> ModelStats {
        ModelStats {
            params: self.params + o.params,
            activations: self.activations + o.activations,
            layer_activations: self.layer_activations + o.layer_activations,
            macs: self.macs + o.macs,
        }
    }
}

impl fmt::Display for ModelStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = |v: Option<f64>| v.map_or_else(|| "n/a".to_string(), |x| format!("{x:.2}"));
        write!(
            f,
            "P={:.2}M A={:.2}M Mc={:.0}M A/P={} Mc/P={} Mc/A={}",
            self.params_m(),
            self.activations_m(),
            self.macs_m(),
            r(self.activations_per_param()),
            r(self.weight_reuse()),
            r(self.activation_reuse()),
        )
    }
}

/// Energy per frame in millijoules: average power (W) × forward time (ms).
pub fn energy_per_frame(avg_power_watts: f64, fpt_ms: f64) -> Result<f64, ArchError> {
    positive("average power", avg_power_watts)?;
    positive("forward-pass time", fpt_ms)?;
    Ok(avg_power_watts * fpt_ms)
}

/// Energy efficiency in GMACs/J: B × Mc / EPF.
pub fn energy_efficiency(batch: f64, gmacs: f64, epf_joule: f64) -> Result<f64, ArchError> {
    positive("batch size", batch)?;
    positive("MAC count", gmacs)?;
    positive("energy per frame", epf_joule)?;
    Ok(batch * gmacs / epf_joule)
}

fn positive(what: &'static str, v: f64) -> Result<(), ArchError> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(ArchError::NonPositive { what, value: v })
    }
}
