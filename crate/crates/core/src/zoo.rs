//! Architecture files: the JSON schema, a validating loader, the bundled
//! model zoo and the building-block taxonomy every named model must match.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::arch::ModelStats;
use crate::error::{ArchError, ZooError};
use crate::graph::{ArchHeader, ArchitectureSpec, Component, ComponentSet, Group, NodeDef};
use crate::recipes::RECIPES;

use Component::*;

pub const SCHEMA_VERSION: u32 = 1;

/// On-disk form of an architecture.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArchFile {
    pub schema_version: u32,
    pub name: String,
    pub group: String,
    pub input_size: u32,
    #[serde(default = "default_channels")]
    pub input_channels: u32,
    pub components: Vec<String>,
    #[serde(default)]
    pub provenance: String,
    #[serde(default)]
    pub approximate: bool,
    pub layers: Vec<NodeDef>,
}

fn default_channels() -> u32 {
    3
}

impl ArchFile {
    pub fn from_spec(spec: &ArchitectureSpec) -> Self {
        let h = spec.header();
        Self {
            schema_version: SCHEMA_VERSION,
            name: h.name.clone(),
            group: h.group.as_str().to_string(),
            input_size: h.input_size,
            input_channels: h.input_channels,
            components: h.components.names(),
            provenance: h.provenance.clone(),
            approximate: h.approximate,
            layers: spec.to_defs(),
        }
    }

    /// Validates the header and resolves every layer.
    pub fn into_spec(self, origin: &str) -> Result<ArchitectureSpec, ZooError> {
        let field = |field: &str, message: String| ZooError::Field {
            origin: origin.to_string(),
            field: field.to_string(),
            message,
        };
        if self.schema_version != SCHEMA_VERSION {
            return Err(ZooError::SchemaVersion {
                origin: origin.to_string(),
                found: self.schema_version,
                expected: SCHEMA_VERSION,
            });
        }
        let group = Group::parse(&self.group)
            .ok_or_else(|| field("group", format!("unknown group `{}`", self.group)))?;
        if self.input_size == 0 || self.input_channels == 0 {
            return Err(field("input_size", "must be positive".into()));
        }
        let arch = |source: ArchError| ZooError::Arch {
            origin: origin.to_string(),
            source,
        };
        let components = ComponentSet::parse_all(&self.components).map_err(arch)?;
        let header = ArchHeader {
            name: self.name,
            group,
            input_size: self.input_size,
            input_channels: self.input_channels,
            components,
            provenance: self.provenance,
            approximate: self.approximate,
        };
        ArchitectureSpec::from_defs(header, &self.layers).map_err(arch)
    }
}

/// Parses an architecture from JSON text. `origin` labels error messages.
pub fn parse_architecture(text: &str, origin: &str) -> Result<ArchitectureSpec, ZooError> {
    let file: ArchFile = serde_json::from_str(text).map_err(|e| ZooError::Parse {
        origin: origin.to_string(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    file.into_spec(origin)
}

/// Loads and validates an architecture file. Named models must also carry
/// the component set and group of the reference taxonomy.
pub fn load_architecture(path: impl AsRef<Path>) -> Result<ArchitectureSpec, ZooError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| ZooError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let spec = parse_architecture(&text, &path.display().to_string())?;
    check_taxonomy(&spec)?;
    Ok(spec)
}

pub fn to_json(spec: &ArchitectureSpec) -> String {
    let mut s = serde_json::to_string_pretty(&ArchFile::from_spec(spec))
        .expect("architecture files always serialize");
    s.push('\n');
    s
}

/// Building blocks per named model, the validation table for zoo files.
pub fn expected_components(name: &str) -> Option<(Group, ComponentSet)> {
    let squeezenext = [
        FireModule,
        Pwconv,
        Branching,
        ResidualSkip,
        AsymmetricFilterDecomposition,
    ];
    let shufflenet = [Dwconv, ChannelShuffling, Pwconv, Branching, ResidualSkip];
    Some(match name {
        "SqueezeNet-V1.0" | "SqueezeNet-V1.1" => {
            (Group::SqueezeNet, [FireModule, Pwconv, Branching].into())
        }
        "1.0-SqNxt-23" | "1.0-G-SqNxt-23" | "1.0-SqNxt-23v5" | "2.0-SqNxt-23"
        | "2.0-SqNxt-23v5" => (Group::SqueezeNext, squeezenext.into()),
        "MobileNet-V1" => (Group::MobileNet, [Dwconv, Pwconv].into()),
        "MobileNet-V2" => (Group::MobileNet, [Dwconv, Pwconv, ResidualSkip].into()),
        "ShuffleNet-V1" | "ShuffleNet-V2" => (Group::ShuffleNet, shufflenet.into()),
        "DenseNet-121" => (Group::DenseNet, [DenseBlock, Pwconv, ResidualSkip].into()),
        "GoogLeNet" => (
            Group::InceptionNet,
            [InceptionModule, Pwconv, Branching].into(),
        ),
        "Inception-V2" => (
            Group::InceptionNet,
            [
                InceptionModule,
                Pwconv,
                Branching,
                AsymmetricFilterDecomposition,
            ]
            .into(),
        ),
        "SE-BN-Inception" => (
            Group::InceptionNet,
            [
                InceptionModule,
                Pwconv,
                Branching,
                ResidualSkip,
                AsymmetricFilterDecomposition,
            ]
            .into(),
        ),
        "AlexNet" => (Group::NonCompact, ComponentSet::new()),
        _ => return None,
    })
}

/// Names not in the taxonomy pass unchecked; named models must match it.
pub fn check_taxonomy(spec: &ArchitectureSpec) -> Result<(), ZooError> {
    let Some((group, expected)) = expected_components(spec.name()) else {
        return Ok(());
    };
    if spec.components() != &expected || spec.group() != group {
        let mut found = spec.components().names();
        found.insert(0, format!("group={}", spec.group()));
        let mut want = expected.names();
        want.insert(0, format!("group={group}"));
        return Err(ZooError::ComponentMismatch {
            model: spec.name().to_string(),
            found,
            expected: want,
        });
    }
    Ok(())
}

macro_rules! bundled {
    ($($stem:literal),* $(,)?) => {
        &[$(($stem, include_str!(concat!("../zoo/", $stem, ".json")))),*]
    };
}

/// (file stem, JSON text) for every bundled model.
pub const BUNDLED: &[(&str, &str)] = bundled!(
    "alexnet",
    "squeezenet_v1_0",
    "squeezenet_v1_1",
    "sqnxt_1_0_g_23",
    "sqnxt_1_0_23",
    "sqnxt_1_0_23v5",
    "sqnxt_2_0_23",
    "sqnxt_2_0_23v5",
    "mobilenet_v1",
    "mobilenet_v2",
    "shufflenet_v1",
    "shufflenet_v2",
    "densenet121",
    "googlenet",
    "inception_v2",
    "se_bn_inception",
);

/// All bundled model names, in table order.
pub fn model_names() -> Vec<&'static str> {
    RECIPES.iter().map(|(name, _, _)| *name).collect()
}

fn stem_for(name: &str) -> Option<&'static str> {
    RECIPES
        .iter()
        .find(|(n, stem, _)| *n == name || *stem == name)
        .map(|(_, stem, _)| *stem)
}

/// Loads a bundled model by name (`MobileNet-V1`) or file stem (`mobilenet_v1`).
pub fn bundled(name: &str) -> Result<ArchitectureSpec, ZooError> {
    let stem = stem_for(name).ok_or_else(|| ZooError::UnknownModel(name.to_string()))?;
    let (_, text) = BUNDLED
        .iter()
        .find(|(s, _)| *s == stem)
        .ok_or_else(|| ZooError::UnknownModel(name.to_string()))?;
    let spec = parse_architecture(text, &format!("zoo/{stem}.json"))?;
    check_taxonomy(&spec)?;
    Ok(spec)
}

/// Every bundled model, validated.
pub fn load_zoo() -> Result<Vec<ArchitectureSpec>, ZooError> {
    model_names().into_iter().map(bundled).collect()
}

/// Aggregate cost statistics for every bundled model.
pub fn zoo_table() -> Result<Vec<(String, ModelStats)>, ZooError> {
    load_zoo()?
        .into_iter()
        .map(|spec| {
            let stats = spec.aggregate_stats().map_err(|source| ZooError::Arch {
                origin: spec.name().to_string(),
                source,
            })?;
            Ok((spec.name().to_string(), stats))
        })
        .collect()
}
