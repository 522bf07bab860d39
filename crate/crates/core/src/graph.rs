//! Architecture graphs: an ordered list of nodes (parametric layers and
//! the non-parametric glue between them) with explicit fan-in lists, plus
//! the building-block flags and group label attached to each network.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arch::{
    count_activations, count_macs, count_params, LayerKind, LayerParams, LayerSpec, ModelStats,
    Padding,
};
use crate::error::ArchError;

/// Id of the implicit network-input node.
pub const INPUT_ID: &str = "input";

/// Fine-grained architectural ingredients and building blocks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Component {
    FireModule,
    Dwconv,
    ChannelShuffling,
    DenseBlock,
    InceptionModule,
    Pwconv,
    Branching,
    ResidualSkip,
    AsymmetricFilterDecomposition,
    /// Constant channels-per-group convolution produced by the defense transform.
    GroupConv,
}

impl Component {
    pub const ALL: [Component; 10] = [
        Component::FireModule,
        Component::Dwconv,
        Component::ChannelShuffling,
        Component::DenseBlock,
        Component::InceptionModule,
        Component::Pwconv,
        Component::Branching,
        Component::ResidualSkip,
        Component::AsymmetricFilterDecomposition,
        Component::GroupConv,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Component::FireModule => "fire-module",
            Component::Dwconv => "dwconv",
            Component::ChannelShuffling => "channel-shuffling",
            Component::DenseBlock => "dense-block",
            Component::InceptionModule => "inception-module",
            Component::Pwconv => "pwconv",
            Component::Branching => "branching",
            Component::ResidualSkip => "residual-skip",
            Component::AsymmetricFilterDecomposition => "asymmetric-filter-decomposition",
            Component::GroupConv => "group-conv",
        }
    }

    pub fn parse(s: &str) -> Result<Self, ArchError> {
        Component::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| ArchError::UnknownComponent(s.to_string()))
    }
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Ordered set of components; serializes as a sorted list of names.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ComponentSet(BTreeSet<Component>);

impl ComponentSet {
    pub fn new() -> Self {
        Self::default()
    }
    pub fn contains(&self, c: Component) -> bool {
        self.0.contains(&c)
    }
    pub fn insert(&mut self, c: Component) -> bool {
        self.0.insert(c)
    }
    pub fn remove(&mut self, c: Component) -> bool {
        self.0.remove(&c)
    }
    pub fn iter(&self) -> impl Iterator<Item = Component> + '_ {
        self.0.iter().copied()
    }
    pub fn len(&self) -> usize {
        self.0.len()
    }
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
    pub fn names(&self) -> Vec<String> {
        self.iter().map(|c| c.as_str().to_string()).collect()
    }
    pub fn parse_all<S: AsRef<str>>(names: &[S]) -> Result<Self, ArchError> {
        names.iter().map(|n| Component::parse(n.as_ref())).collect()
    }
}

impl FromIterator<Component> for ComponentSet {
    fn from_iter<I: IntoIterator<Item = Component>>(iter: I) -> Self {
        Self(iter.into_iter().collect())
    }
}

impl<const K: usize> From<[Component; K]> for ComponentSet {
    fn from(a: [Component; K]) -> Self {
        a.into_iter().collect()
    }
}

impl fmt::Display for ComponentSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, c) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str(c.as_str())?;
        }
        f.write_str("}")
    }
}

/// DNN families that share a building block.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Group {
    SqueezeNet,
    SqueezeNext,
    MobileNet,
    ShuffleNet,
    DenseNet,
    InceptionNet,
    NonCompact,
}

impl Group {
    pub const ALL: [Group; 7] = [
        Group::SqueezeNet,
        Group::SqueezeNext,
        Group::MobileNet,
        Group::ShuffleNet,
        Group::DenseNet,
        Group::InceptionNet,
        Group::NonCompact,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Group::SqueezeNet => "SqueezeNet",
            Group::SqueezeNext => "SqueezeNext",
            Group::MobileNet => "MobileNet",
            Group::ShuffleNet => "ShuffleNet",
            Group::DenseNet => "DenseNet",
            Group::InceptionNet => "InceptionNet",
            Group::NonCompact => "NonCompact",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Group::ALL.into_iter().find(|g| g.as_str() == s)
    }

    /// Members of the group, reference model first.
    pub fn members(self) -> &'static [&'static str] {
        match self {
            Group::SqueezeNet => &["SqueezeNet-V1.0", "SqueezeNet-V1.1"],
            Group::SqueezeNext => &[
                "1.0-SqNxt-23",
                "1.0-G-SqNxt-23",
                "1.0-SqNxt-23v5",
                "2.0-SqNxt-23",
                "2.0-SqNxt-23v5",
            ],
            Group::MobileNet => &["MobileNet-V1", "MobileNet-V2"],
            Group::ShuffleNet => &["ShuffleNet-V1", "ShuffleNet-V2"],
            Group::DenseNet => &["DenseNet-121"],
            Group::InceptionNet => &["GoogLeNet", "Inception-V2", "SE-BN-Inception"],
            Group::NonCompact => &["AlexNet"],
        }
    }

    /// The model every intra-group comparison is made against.
    pub fn reference_model(self) -> &'static str {
        self.members()[0]
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Shape-preserving single-input operations. Used both as standalone nodes
/// and as in-place post-ops attached to a parametric layer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ElementwiseOp {
    BatchNorm,
    Scale,
    Relu,
    Relu6,
    Sigmoid,
    Lrn,
    Dropout,
    Softmax,
    Shuffle,
}

impl ElementwiseOp {
    const ALL: [ElementwiseOp; 9] = [
        ElementwiseOp::BatchNorm,
        ElementwiseOp::Scale,
        ElementwiseOp::Relu,
        ElementwiseOp::Relu6,
        ElementwiseOp::Sigmoid,
        ElementwiseOp::Lrn,
        ElementwiseOp::Dropout,
        ElementwiseOp::Softmax,
        ElementwiseOp::Shuffle,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ElementwiseOp::BatchNorm => "bn",
            ElementwiseOp::Scale => "scale",
            ElementwiseOp::Relu => "relu",
            ElementwiseOp::Relu6 => "relu6",
            ElementwiseOp::Sigmoid => "sigmoid",
            ElementwiseOp::Lrn => "lrn",
            ElementwiseOp::Dropout => "dropout",
            ElementwiseOp::Softmax => "softmax",
            ElementwiseOp::Shuffle => "shuffle",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|o| o.as_str() == s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PoolMode {
    Max,
    Avg,
}

/// Pooling window. `global` collapses the spatial extent to 1×1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PoolSpec {
    pub mode: PoolMode,
    pub window: u32,
    pub stride: u32,
    pub pad: u32,
    /// Round the output side up (framework "ceil mode") instead of down.
    pub ceil: bool,
    pub global: bool,
}

impl PoolSpec {
    fn output_side(&self, input: u32) -> Option<u32> {
        if self.global {
            return Some(1);
        }
        let padded = input + 2 * self.pad;
        if padded < self.window || self.stride == 0 {
            return None;
        }
        let span = padded - self.window;
        let mut out = if self.ceil {
            span.div_ceil(self.stride) + 1
        } else {
            span / self.stride + 1
        };
        // Last window must start inside the (left-padded) input.
        if self.ceil && self.pad > 0 && (out - 1) * self.stride >= input + self.pad {
            out -= 1;
        }
        Some(out)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NodeOp {
    Layer(LayerSpec),
    Pool(PoolSpec),
    /// Channel-wise concatenation.
    Concat,
    /// Element-wise sum (residual merge).
    Add,
    /// Channel-wise product; the second input may be a 1×1 gate.
    Mul,
    /// Keep `channels` of the input channels (one side of a channel split).
    Slice {
        channels: u32,
    },
    Elementwise(ElementwiseOp),
}

impl NodeOp {
    pub fn kind_name(&self) -> &'static str {
        match self {
            NodeOp::Layer(l) => l.kind().as_str(),
            NodeOp::Pool(_) => "pool",
            NodeOp::Concat => "concat",
            NodeOp::Add => "add",
            NodeOp::Mul => "mul",
            NodeOp::Slice { .. } => "slice",
            NodeOp::Elementwise(e) => e.as_str(),
        }
    }
}

/// A resolved graph node with its output shape.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Node {
    pub id: String,
    pub op: NodeOp,
    pub fan_in: Vec<String>,
    pub post_ops: Vec<ElementwiseOp>,
    pub out_channels: u32,
    pub out_size: u32,
}

impl Node {
    pub fn layer(&self) -> Option<&LayerSpec> {
        match &self.op {
            NodeOp::Layer(l) => Some(l),
            _ => None,
        }
    }

    /// Elements in this node's output tensor for one sample.
    pub fn out_elems(&self) -> u64 {
        let s = u64::from(self.out_size);
        u64::from(self.out_channels) * s * s
    }
}

/// Serialized form of one node in an architecture file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NodeDef {
    pub id: String,
    pub kind: String,
    #[serde(rename = "M", default, skip_serializing_if = "Option::is_none")]
    pub in_channels: Option<u32>,
    #[serde(rename = "N", default, skip_serializing_if = "Option::is_none")]
    pub out_channels: Option<u32>,
    #[serde(rename = "S_F", default, skip_serializing_if = "Option::is_none")]
    pub filter_size: Option<u32>,
    #[serde(rename = "S_Fw", default, skip_serializing_if = "Option::is_none")]
    pub filter_width: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stride: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub groups: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub padding: Option<Padding>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub has_bias: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mode: Option<PoolMode>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ceil: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub global: Option<bool>,
    /// Explicit input list; absent means "the previous node".
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fan_in: Option<Vec<String>>,
    /// In-place operations applied to this node's output (bn, scale, relu, ...).
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub post: Vec<String>,
}

impl NodeDef {
    pub fn new(id: impl Into<String>, kind: impl Into<String>) -> Self {
        Self {
            id: id.into(),
            kind: kind.into(),
            in_channels: None,
            out_channels: None,
            filter_size: None,
            filter_width: None,
            stride: None,
            groups: None,
            padding: None,
            has_bias: None,
            mode: None,
            ceil: None,
            global: None,
            fan_in: None,
            post: Vec::new(),
        }
    }
}

impl From<&Node> for NodeDef {
    fn from(n: &Node) -> Self {
        let mut d = NodeDef::new(n.id.clone(), n.op.kind_name());
        d.fan_in = Some(n.fan_in.clone());
        d.post = n.post_ops.iter().map(|o| o.as_str().to_string()).collect();
        match &n.op {
            NodeOp::Layer(l) => {
                d.in_channels = Some(l.in_channels());
                d.out_channels = Some(l.out_channels());
                d.filter_size = Some(l.filter_size());
                d.filter_width = l.is_asymmetric().then(|| l.filter_width());
                d.stride = Some(l.stride());
                d.groups = Some(l.groups());
                d.padding = Some(l.padding());
                d.has_bias = Some(l.has_bias());
            }
            NodeOp::Pool(p) => {
                d.mode = Some(p.mode);
                if p.global {
                    d.global = Some(true);
                } else {
                    d.filter_size = Some(p.window);
                    d.stride = Some(p.stride);
                    d.padding = Some(Padding::Explicit(p.pad));
                    d.ceil = Some(p.ceil);
                }
            }
            NodeOp::Slice { channels } => d.out_channels = Some(*channels),
            NodeOp::Concat | NodeOp::Add | NodeOp::Mul | NodeOp::Elementwise(_) => {}
        }
        d
    }
}

/// Header fields of an architecture, everything except the node list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArchHeader {
    pub name: String,
    pub group: Group,
    pub input_size: u32,
    pub input_channels: u32,
    pub components: ComponentSet,
    pub provenance: String,
    pub approximate: bool,
}

/// A validated network: every node's fan-in exists earlier in the list and
/// every shape chains.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArchitectureSpec {
    header: ArchHeader,
    nodes: Vec<Node>,
    index: HashMap<String, usize>,
}

impl ArchitectureSpec {
    pub fn empty(header: ArchHeader) -> Self {
        Self {
            header,
            nodes: Vec::new(),
            index: HashMap::new(),
        }
    }

    pub fn from_defs(header: ArchHeader, defs: &[NodeDef]) -> Result<Self, ArchError> {
        let mut spec = Self::empty(header);
        for d in defs {
            spec.push(d)?;
        }
        Ok(spec)
    }

    pub fn header(&self) -> &ArchHeader {
        &self.header
    }
    pub fn name(&self) -> &str {
        &self.header.name
    }
    pub fn group(&self) -> Group {
        self.header.group
    }
    pub fn components(&self) -> &ComponentSet {
        &self.header.components
    }
    pub fn input_size(&self) -> u32 {
        self.header.input_size
    }
    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }
    pub fn node(&self, id: &str) -> Option<&Node> {
        self.index.get(id).map(|&i| &self.nodes[i])
    }

    /// Parametric layers in declaration order, with their node ids.
    pub fn layers(&self) -> impl Iterator<Item = (&str, &LayerSpec)> + '_ {
        self.nodes
            .iter()
            .filter_map(|n| n.layer().map(|l| (n.id.as_str(), l)))
    }

    pub fn to_defs(&self) -> Vec<NodeDef> {
        self.nodes.iter().map(NodeDef::from).collect()
    }

    fn input_shape(&self) -> (u32, u32) {
        (self.header.input_channels, self.header.input_size)
    }

    fn shape_of(&self, id: &str) -> Option<(u32, u32)> {
        if id == INPUT_ID {
            return Some(self.input_shape());
        }
        self.node(id).map(|n| (n.out_channels, n.out_size))
    }

    /// Resolves a node definition against the nodes already present and
    /// appends it. Returns the new node's id.
    pub fn push(&mut self, def: &NodeDef) -> Result<&Node, ArchError> {
        let err = |reason: String| ArchError::Node {
            layer: def.id.clone(),
            reason,
        };
        if def.id.is_empty() || def.id == INPUT_ID || self.index.contains_key(&def.id) {
            return Err(err(
                "node id must be non-empty, unique and not `input`".into()
            ));
        }
        let fan_in = match &def.fan_in {
            Some(f) if !f.is_empty() => f.clone(),
            _ => vec![self
                .nodes
                .last()
                .map_or_else(|| INPUT_ID.to_string(), |n| n.id.clone())],
        };
        let mut inputs = Vec::with_capacity(fan_in.len());
        for f in &fan_in {
            let shape = self
                .shape_of(f)
                .ok_or_else(|| err(format!("fan_in `{f}` is not an earlier node")))?;
            inputs.push((f.as_str(), shape));
        }
        let single = |what: &str| -> Result<(&str, (u32, u32)), ArchError> {
            if inputs.len() == 1 {
                Ok(inputs[0])
            } else {
                Err(err(format!("{what} takes exactly one input")))
            }
        };
        let post_ops = def
            .post
            .iter()
            .map(|p| ElementwiseOp::parse(p).ok_or_else(|| err(format!("unknown post-op `{p}`"))))
            .collect::<Result<Vec<_>, _>>()?;

        let (op, out_channels, out_size) = if let Some(kind) = LayerKind::parse(&def.kind) {
            let (src, (c, s)) = single("a parametric layer")?;
            let need = |v: Option<u32>, f: &str| v.ok_or_else(|| err(format!("missing `{f}`")));
            let m = need(def.in_channels, "M")?;
            let n = need(def.out_channels, "N")?;
            let (expected_m, in_size) = if kind == LayerKind::FullyConnected {
                (u64::from(c) * u64::from(s) * u64::from(s), 1)
            } else {
                (u64::from(c), s)
            };
            if u64::from(m) != expected_m {
                return Err(ArchError::ShapeMismatch {
                    from: src.to_string(),
                    to: def.id.clone(),
                    detail: format!(
                        "`{}` declares M={m} but `{src}` produces {expected_m}",
                        def.id
                    ),
                });
            }
            let layer = LayerSpec::new(LayerParams {
                kind,
                in_channels: m,
                out_channels: n,
                in_size,
                filter_size: def.filter_size.unwrap_or(1),
                filter_width: def.filter_width,
                stride: def.stride.unwrap_or(1),
                groups: def.groups.unwrap_or(match kind {
                    LayerKind::DepthwiseConv => m,
                    _ => 1,
                }),
                padding: def.padding.unwrap_or(Padding::Same),
                has_bias: def.has_bias.unwrap_or(false),
            })
            .map_err(|e| err(e.to_string()))?;
            let (n, s_n) = (layer.out_channels(), layer.out_size());
            (NodeOp::Layer(layer), n, s_n)
        } else {
            match def.kind.as_str() {
                "pool" => {
                    let (_, (c, s)) = single("pool")?;
                    let global = def.global.unwrap_or(false);
                    let pad = match def.padding {
                        None | Some(Padding::Valid) => 0,
                        Some(Padding::Explicit(p)) => p,
                        Some(Padding::Same) => {
                            return Err(err("pool padding must be an explicit count".into()))
                        }
                    };
                    let spec = PoolSpec {
                        mode: def.mode.unwrap_or(PoolMode::Max),
                        window: def.filter_size.unwrap_or(if global { s } else { 2 }),
                        stride: def.stride.unwrap_or(if global { 1 } else { 2 }),
                        pad,
                        ceil: def.ceil.unwrap_or(false),
                        global,
                    };
                    let out = spec
                        .output_side(s)
                        .ok_or_else(|| err(format!("pool window does not fit input side {s}")))?;
                    (NodeOp::Pool(spec), c, out)
                }
                "concat" | "add" | "mul" => {
                    if inputs.len() < 2 {
                        return Err(err(format!("{} needs at least two inputs", def.kind)));
                    }
                    let (first, (c0, s0)) = inputs[0];
                    let mut channels = 0u32;
                    for &(other, (c, s)) in &inputs {
                        let mismatch = |detail: String| ArchError::ShapeMismatch {
                            from: other.to_string(),
                            to: def.id.clone(),
                            detail,
                        };
                        match def.kind.as_str() {
                            "concat" if s != s0 => return Err(mismatch(format!(
                                "concat inputs differ in spatial side ({s} vs {s0} from `{first}`)"
                            ))),
                            "add" if (c, s) != (c0, s0) => return Err(mismatch(format!(
                                "add inputs differ: {c}x{s}x{s} vs {c0}x{s0}x{s0} from `{first}`"
                            ))),
                            "mul" if c != c0 || (s != s0 && s != 1) => {
                                return Err(mismatch(format!(
                                    "mul gate {c}x{s}x{s} does not broadcast onto {c0}x{s0}x{s0}"
                                )))
                            }
                            _ => {}
                        }
                        channels += c;
                    }
                    let op = match def.kind.as_str() {
                        "concat" => NodeOp::Concat,
                        "add" => NodeOp::Add,
                        _ => NodeOp::Mul,
                    };
                    let out_c = if op == NodeOp::Concat { channels } else { c0 };
                    (op, out_c, s0)
                }
                "slice" => {
                    let (_, (c, s)) = single("slice")?;
                    let keep = def
                        .out_channels
                        .ok_or_else(|| err("slice needs `N`".into()))?;
                    if keep == 0 || keep > c {
                        return Err(err(format!("slice keeps {keep} of {c} channels")));
                    }
                    (NodeOp::Slice { channels: keep }, keep, s)
                }
                other => {
                    let e = ElementwiseOp::parse(other)
                        .ok_or_else(|| err(format!("unknown node kind `{other}`")))?;
                    let (_, (c, s)) = single(other)?;
                    (NodeOp::Elementwise(e), c, s)
                }
            }
        };

        self.index.insert(def.id.clone(), self.nodes.len());
        self.nodes.push(Node {
            id: def.id.clone(),
            op,
            fan_in,
            post_ops,
            out_channels,
            out_size,
        });
        Ok(self.nodes.last().expect("just pushed"))
    }

    /// Sums the per-layer cost model over the whole network.
    ///
    /// `activations` counts one blob per produced tensor: the network input,
    /// every node output, and one more copy of a node's output for each
    /// attached post-op. `layer_activations` is the bare N×S_N² sum over
    /// parametric layers.
    pub fn aggregate_stats(&self) -> Result<ModelStats, ArchError> {
        let mut stats = ModelStats::default();
        let mut saw_layer = false;
        let (c, s) = self.input_shape();
        stats.activations = u64::from(c) * u64::from(s) * u64::from(s);
        for n in &self.nodes {
            stats.activations += n.out_elems() * (1 + n.post_ops.len() as u64);
            if let Some(l) = n.layer() {
                saw_layer = true;
                stats.params += count_params(l);
                stats.macs += count_macs(l);
                stats.layer_activations += count_activations(l);
            }
        }
        if !saw_layer {
            return Err(ArchError::EmptyArchitecture {
                name: self.header.name.clone(),
            });
        }
        Ok(stats)
    }

    /// Per-sample tensors that stay resident across a training iteration:
    /// the input plus every distinct (not in-place) node output, weighted by
    /// the node's fan-in degree.
    pub fn concurrent_activation_elems(&self) -> u64 {
        let (c, s) = self.input_shape();
        let input = u64::from(c) * u64::from(s) * u64::from(s);
        input
            + self
                .nodes
                .iter()
                .map(|n| n.out_elems() * n.fan_in.len().max(1) as u64)
                .sum::<u64>()
    }

    /// Number of concatenations that take another concatenation as input:
    /// the length of the densely connected chains.
    pub fn dense_depth(&self) -> usize {
        self.nodes
            .iter()
            .filter(|n| n.op == NodeOp::Concat)
            .filter(|n| {
                n.fan_in
                    .iter()
                    .any(|f| self.node(f).is_some_and(|p| p.op == NodeOp::Concat))
            })
            .count()
    }
}
