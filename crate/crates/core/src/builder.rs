//! A small fluent DSL for writing architectures in code. Input channel
//! counts are filled in from the producing node, so recipes only state
//! what changes.
//!
//! ```
//! use peepkit::builder::NetBuilder;
//! use peepkit::graph::{ArchHeader, ComponentSet, Group};
//!
//! let mut b = NetBuilder::new(ArchHeader {
//!     name: "tiny".into(),
//!     group: Group::NonCompact,
//!     input_size: 32,
//!     input_channels: 3,
//!     components: ComponentSet::new(),
//!     provenance: "doc example".into(),
//!     approximate: false,
//! });
//! b.conv("c1", 16, 3).post(&["relu"]).add();
//! b.global_avg("gap");
//! b.fc("fc", 10).bias().add();
//! let net = b.finish().unwrap();
//! assert_eq!(net.aggregate_stats().unwrap().params, 3 * 16 * 9 + 16 * 10 + 10);
//! ```

use crate::arch::{LayerKind, Padding};
use crate::error::ArchError;
use crate::graph::{ArchHeader, ArchitectureSpec, NodeDef, PoolMode, INPUT_ID};

pub struct NetBuilder {
    spec: ArchitectureSpec,
    error: Option<ArchError>,
}

/// One pending node; call [`NodeBuild::add`] to resolve and append it.
#[must_use = "call .add() to append the node"]
pub struct NodeBuild<'a> {
    b: &'a mut NetBuilder,
    def: NodeDef,
}

impl NetBuilder {
    pub fn new(header: ArchHeader) -> Self {
        Self {
            spec: ArchitectureSpec::empty(header),
            error: None,
        }
    }

    /// Id of the most recently added node (or `input`).
    pub fn last(&self) -> String {
        self.spec
            .nodes()
            .last()
            .map_or_else(|| INPUT_ID.to_string(), |n| n.id.clone())
    }

    /// Output channels of a node, 0 if the id is unknown.
    pub fn channels(&self, id: &str) -> u32 {
        if id == INPUT_ID {
            return self.spec.header().input_channels;
        }
        self.spec.node(id).map_or(0, |n| n.out_channels)
    }

    pub fn size(&self, id: &str) -> u32 {
        if id == INPUT_ID {
            return self.spec.header().input_size;
        }
        self.spec.node(id).map_or(0, |n| n.out_size)
    }

    fn node(&mut self, id: &str, kind: &str) -> NodeBuild<'_> {
        NodeBuild {
            b: self,
            def: NodeDef::new(id, kind),
        }
    }

    fn layer(&mut self, id: &str, kind: LayerKind, n: u32, k: u32) -> NodeBuild<'_> {
        let mut nb = self.node(id, kind.as_str());
        nb.def.out_channels = Some(n);
        nb.def.filter_size = Some(k);
        nb
    }

    /// Standard k×k convolution producing `n` maps.
    pub fn conv(&mut self, id: &str, n: u32, k: u32) -> NodeBuild<'_> {
        self.layer(id, LayerKind::StandardConv, n, k)
    }

    pub fn pwconv(&mut self, id: &str, n: u32) -> NodeBuild<'_> {
        self.layer(id, LayerKind::PointwiseConv, n, 1)
    }

    /// Depthwise k×k convolution; channel count follows the input.
    pub fn dwconv(&mut self, id: &str, k: u32) -> NodeBuild<'_> {
        let mut nb = self.node(id, LayerKind::DepthwiseConv.as_str());
        nb.def.filter_size = Some(k);
        nb
    }

    pub fn gconv(&mut self, id: &str, n: u32, k: u32, groups: u32) -> NodeBuild<'_> {
        let mut nb = self.layer(id, LayerKind::GroupConv, n, k);
        nb.def.groups = Some(groups);
        nb
    }

    pub fn fc(&mut self, id: &str, n: u32) -> NodeBuild<'_> {
        self.layer(id, LayerKind::FullyConnected, n, 1)
    }

    pub fn max_pool(&mut self, id: &str, k: u32, stride: u32) -> NodeBuild<'_> {
        self.pool(id, PoolMode::Max, k, stride)
    }

    pub fn avg_pool(&mut self, id: &str, k: u32, stride: u32) -> NodeBuild<'_> {
        self.pool(id, PoolMode::Avg, k, stride)
    }

    fn pool(&mut self, id: &str, mode: PoolMode, k: u32, stride: u32) -> NodeBuild<'_> {
        let mut nb = self.node(id, "pool");
        nb.def.mode = Some(mode);
        nb.def.filter_size = Some(k);
        nb.def.stride = Some(stride);
        nb
    }

    /// Global average pool over the previous node.
    pub fn global_avg(&mut self, id: &str) -> String {
        let mut nb = self.node(id, "pool");
        nb.def.mode = Some(PoolMode::Avg);
        nb.def.global = Some(true);
        nb.add()
    }

    pub fn concat(&mut self, id: &str, inputs: &[&str]) -> String {
        self.node(id, "concat").from(inputs).add()
    }

    pub fn sum(&mut self, id: &str, inputs: &[&str]) -> String {
        self.node(id, "add").from(inputs).add()
    }

    /// Channel-wise gating of `x` by a C×1×1 `gate`.
    pub fn scale_by(&mut self, id: &str, x: &str, gate: &str) -> String {
        self.node(id, "mul").from(&[x, gate]).add()
    }

    pub fn slice(&mut self, id: &str, from: &str, channels: u32) -> String {
        let mut nb = self.node(id, "slice").from(&[from]);
        nb.def.out_channels = Some(channels);
        nb.add()
    }

    /// Standalone shape-preserving op (relu, lrn, dropout, shuffle, ...).
    pub fn op(&mut self, id: &str, kind: &str) -> NodeBuild<'_> {
        self.node(id, kind)
    }

    /// The first error encountered, or the finished architecture.
    pub fn finish(self) -> Result<ArchitectureSpec, ArchError> {
        match self.error {
            Some(e) => Err(e),
            None => Ok(self.spec),
        }
    }

    fn append(&mut self, mut def: NodeDef) -> String {
        let id = def.id.clone();
        if self.error.is_some() {
            return id;
        }
        if let Some(kind) = LayerKind::parse(&def.kind) {
            if def.in_channels.is_none() {
                let src = def
                    .fan_in
                    .as_ref()
                    .and_then(|f| f.first().cloned())
                    .unwrap_or_else(|| self.last());
                let c = self.channels(&src);
                def.in_channels = Some(if kind == LayerKind::FullyConnected {
                    let s = self.size(&src);
                    c * s * s
                } else {
                    c
                });
            }
            if kind == LayerKind::DepthwiseConv && def.out_channels.is_none() {
                def.out_channels = def.in_channels;
            }
        }
        if let Err(e) = self.spec.push(&def) {
            self.error = Some(e);
        }
        id
    }
}

impl NodeBuild<'_> {
    pub fn stride(mut self, s: u32) -> Self {
        self.def.stride = Some(s);
        self
    }
    /// Explicit symmetric zero padding.
    pub fn pad(mut self, p: u32) -> Self {
        self.def.padding = Some(Padding::Explicit(p));
        self
    }
    pub fn valid(mut self) -> Self {
        self.def.padding = Some(Padding::Valid);
        self
    }
    /// Filter width for non-square filters (the builder's `k` is the height).
    pub fn width(mut self, w: u32) -> Self {
        self.def.filter_width = Some(w);
        self
    }
    pub fn groups(mut self, g: u32) -> Self {
        self.def.groups = Some(g);
        self
    }
    pub fn bias(mut self) -> Self {
        self.def.has_bias = Some(true);
        self
    }
    pub fn ceil(mut self) -> Self {
        self.def.ceil = Some(true);
        self
    }
    pub fn post(mut self, ops: &[&str]) -> Self {
        self.def.post = ops.iter().map(|s| s.to_string()).collect();
        self
    }
    pub fn from(mut self, inputs: &[&str]) -> Self {
        self.def.fan_in = Some(inputs.iter().map(|s| s.to_string()).collect());
        self
    }
    pub fn add(self) -> String {
        self.b.append(self.def)
    }
}
