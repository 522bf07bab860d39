//! The group-convolution countermeasure: depthwise layers become group
//! convolutions with a constant number of channels per group `G`, which
//! hides the depthwise kernel signature at a modest compute cost.

use std::fmt;

use serde::Serialize;

use crate::arch::{count_macs, count_params};
use crate::classifier::{Classifier, PredictionReport, References};
use crate::error::DefenseError;
use crate::graph::{ArchitectureSpec, Component};
use crate::synth::{synth_fingerprint, synth_series, HardwareProfile};

/// Channel counts per group swept by default.
pub const DEFAULT_SWEEP: [u32; 6] = [1, 2, 4, 8, 16, 32];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DefenseConfig {
    /// Channels per group.
    pub g: u32,
}

impl DefenseConfig {
    pub fn new(g: u32) -> Result<Self, DefenseError> {
        if g == 0 {
            return Err(DefenseError::ZeroG);
        }
        Ok(Self { g })
    }
}

const DEPTHWISE: &str = "depthwise-conv";
const GROUP: &str = "group-conv";

/// Replaces every depthwise layer with a group convolution of `M/G`
/// groups. `G = 1` returns the input unchanged; an already secured network
/// (group convolutions, no depthwise layers) is also returned unchanged.
pub fn secure_transform(
    arch: &ArchitectureSpec,
    cfg: DefenseConfig,
) -> Result<ArchitectureSpec, DefenseError> {
    let mut defs = arch.to_defs();
    let depthwise: Vec<usize> = (0..defs.len())
        .filter(|&i| defs[i].kind == DEPTHWISE)
        .collect();
    if depthwise.is_empty() {
        let secured = arch.components().contains(Component::GroupConv)
            && !arch.components().contains(Component::Dwconv);
        return if secured {
            Ok(arch.clone())
        } else {
            Err(DefenseError::NoDepthwise {
                name: arch.name().to_string(),
            })
        };
    }
    for &i in &depthwise {
        let (_, layer) = arch
            .layers()
            .find(|(id, _)| *id == defs[i].id)
            .expect("depthwise defs come from layers");
        let m = layer.in_channels();
        if m % cfg.g != 0 {
            return Err(DefenseError::Divisibility {
                layer: defs[i].id.clone(),
                g: cfg.g,
                m,
            });
        }
    }
    if cfg.g == 1 {
        return Ok(arch.clone());
    }
    for &i in &depthwise {
        let m = defs[i]
            .in_channels
            .or_else(|| {
                arch.layers()
                    .find(|(id, _)| *id == defs[i].id)
                    .map(|(_, l)| l.in_channels())
            })
            .expect("layer has input channels");
        defs[i].kind = GROUP.into();
        defs[i].in_channels = Some(m);
        defs[i].out_channels = Some(m);
        defs[i].groups = Some(m / cfg.g);
    }
    let mut header = arch.header().clone();
    header.name = format!("{}-secure-G{}", header.name, cfg.g);
    header.components.remove(Component::Dwconv);
    header.components.insert(Component::GroupConv);
    header.components.insert(Component::Pwconv);
    Ok(ArchitectureSpec::from_defs(header, &defs)?)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LayerOverhead {
    pub layer: String,
    pub macs_before: u64,
    pub macs_after: u64,
    pub params_before: u64,
    pub params_after: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OverheadReport {
    pub base: String,
    pub secured: String,
    #[serde(rename = "delta_Mc_pct")]
    pub delta_mc_pct: f64,
    #[serde(rename = "delta_P_pct")]
    pub delta_p_pct: f64,
    pub layers: Vec<LayerOverhead>,
}

/// Whole-network relative increase of MACs and parameters, in percent,
/// with a breakdown over the layers whose cost changed.
pub fn overhead_report(
    base: &ArchitectureSpec,
    secured: &ArchitectureSpec,
) -> Result<OverheadReport, DefenseError> {
    let (b, s) = (base.aggregate_stats()?, secured.aggregate_stats()?);
    let rel = |after: u64, before: u64| 100.0 * (after as f64 - before as f64) / before as f64;
    let layers = base
        .layers()
        .filter_map(|(id, before)| {
            let (_, after) = secured.layers().find(|(sid, _)| *sid == id)?;
            let row = LayerOverhead {
                layer: id.to_string(),
                macs_before: count_macs(before),
                macs_after: count_macs(after),
                params_before: count_params(before),
                params_after: count_params(after),
            };
            (row.macs_before != row.macs_after || row.params_before != row.params_after)
                .then_some(row)
        })
        .collect();
    Ok(OverheadReport {
        base: base.name().to_string(),
        secured: secured.name().to_string(),
        delta_mc_pct: rel(s.macs, b.macs),
        delta_p_pct: rel(s.params, b.params),
        layers,
    })
}

impl fmt::Display for OverheadReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} -> {}", self.base, self.secured)?;
        writeln!(
            f,
            "ΔMc {:.1}%  ΔP {:.1}%",
            self.delta_mc_pct, self.delta_p_pct
        )?;
        for l in &self.layers {
            writeln!(
                f,
                "  {:<20} Mc {:>11} -> {:>11}  P {:>9} -> {:>9}",
                l.layer, l.macs_before, l.macs_after, l.params_before, l.params_after
            )?;
        }
        Ok(())
    }
}

/// Overhead for each `G` in the sweep.
pub fn overhead_sweep(
    base: &ArchitectureSpec,
    sweep: &[u32],
) -> Result<Vec<(u32, OverheadReport)>, DefenseError> {
    sweep
        .iter()
        .map(|&g| {
            let secured = secure_transform(base, DefenseConfig::new(g)?)?;
            Ok((g, overhead_report(base, &secured)?))
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConfusabilityReport {
    pub true_model: String,
    pub prediction: PredictionReport,
    /// The true model is still among the candidates.
    pub true_model_in_candidates: bool,
    /// The classifier no longer returns the true model alone.
    pub defended: bool,
    /// BPt/FPt − 1 at the largest batch size, secured and undefended.
    pub disparity: f64,
    pub baseline_disparity: f64,
}

impl fmt::Display for ConfusabilityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "true model: {}", self.true_model)?;
        writeln!(
            f,
            "defended: {}  (true model in candidates: {})",
            self.defended, self.true_model_in_candidates
        )?;
        writeln!(
            f,
            "BPt/FPt disparity at max B: {:.3} (undefended {:.3})",
            self.disparity, self.baseline_disparity
        )?;
        write!(f, "{}", self.prediction)
    }
}

fn disparity(
    arch: &ArchitectureSpec,
    hw: &HardwareProfile,
    batches: &[u32],
) -> Result<f64, DefenseError> {
    let s = synth_series(arch, hw, batches)?;
    let r = s.bpfp_ratio().unwrap_or_default();
    Ok(r.last().map_or(0.0, |v| v - 1.0))
}

/// Runs the attack on a synthesized fingerprint of the secured network.
pub fn evaluate_confusability(
    base: &ArchitectureSpec,
    secured: &ArchitectureSpec,
    hw: &HardwareProfile,
    classifier: &Classifier,
    seed: u64,
) -> Result<ConfusabilityReport, DefenseError> {
    let batches = hw.default_batch_sizes();
    let refs = References::synthesized(hw, &batches)?;
    let fp = synth_fingerprint(secured, hw, &batches, seed)?;
    let prediction = classifier.classify(&fp, &refs)?;
    let truth = base.name().to_string();
    let in_candidates = prediction.candidates.contains(&truth);
    let defended = prediction.model() != Some(truth.as_str());
    Ok(ConfusabilityReport {
        true_model: truth,
        true_model_in_candidates: in_candidates,
        defended,
        disparity: disparity(secured, hw, &batches)?,
        baseline_disparity: disparity(base, hw, &batches)?,
        prediction,
    })
}
