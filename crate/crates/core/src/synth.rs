//! Deterministic fingerprint synthesis: kernel mix from the architecture's
//! building blocks, metric series from a kernel-class utilization model and
//! the cost model, seeded jitter on top.
//!
//! None of the absolute numbers mean anything physical. Only orderings and
//! trend shapes are intended to carry over to real measurements.

use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::arch::LayerKind;
use crate::error::SynthError;
use crate::fingerprint::{Fingerprint, KernelMix, Metric, MetricSeries};
use crate::graph::{ArchitectureSpec, Component, ComponentSet};
use crate::zoo::expected_components;

/// GPU description used by the series model.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HardwareProfile {
    pub id: String,
    pub sm_count: u32,
    pub core_count: u32,
    #[serde(rename = "global_memory_MiB")]
    pub global_memory_mib: f64,
    #[serde(rename = "peak_bandwidth_GBps")]
    pub peak_bandwidth_gbps: f64,
    #[serde(rename = "peak_throughput_TFLOPS")]
    pub peak_throughput_tflops: f64,
    pub tdp_watts: f64,
    /// Batch sizes swept when none are given.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub batch_sizes: Vec<u32>,
}

impl HardwareProfile {
    pub fn p100() -> Self {
        Self {
            id: "p100".into(),
            sm_count: 56,
            core_count: 3584,
            global_memory_mib: 12193.0,
            peak_bandwidth_gbps: 549.0,
            peak_throughput_tflops: 9.3,
            tdp_watts: 250.0,
            batch_sizes: vec![1, 4, 8, 16, 32, 56],
        }
    }

    pub fn p4000() -> Self {
        Self {
            id: "p4000".into(),
            sm_count: 14,
            core_count: 1792,
            global_memory_mib: 8118.0,
            peak_bandwidth_gbps: 243.0,
            peak_throughput_tflops: 5.2,
            tdp_watts: 105.0,
            batch_sizes: vec![1, 4, 8, 14, 28],
        }
    }

    pub fn builtin(id: &str) -> Option<Self> {
        match id.to_ascii_lowercase().as_str() {
            "p100" => Some(Self::p100()),
            "p4000" => Some(Self::p4000()),
            _ => None,
        }
    }

    /// A built-in id (`p100`, `p4000`) or a path to a JSON profile.
    pub fn resolve(id_or_path: &str) -> Result<Self, SynthError> {
        if let Some(hw) = Self::builtin(id_or_path) {
            return Ok(hw);
        }
        let path = Path::new(id_or_path);
        let text = std::fs::read_to_string(path).map_err(|e| {
            SynthError::BadHardware(format!(
                "`{id_or_path}` is neither p100, p4000 nor a readable file: {e}"
            ))
        })?;
        let hw: Self = serde_json::from_str(&text)
            .map_err(|e| SynthError::BadHardware(format!("{}: {e}", path.display())))?;
        hw.validate()?;
        Ok(hw)
    }

    pub fn validate(&self) -> Result<(), SynthError> {
        let positive = [
            self.global_memory_mib,
            self.peak_bandwidth_gbps,
            self.peak_throughput_tflops,
            self.tdp_watts,
        ]
        .iter()
        .all(|v| v.is_finite() && *v > 0.0);
        if !positive || self.sm_count == 0 || self.core_count == 0 {
            return Err(SynthError::BadHardware(format!(
                "profile `{}` needs positive resources",
                self.id
            )));
        }
        validate_batches(&self.batch_sizes).or_else(|e| {
            if self.batch_sizes.is_empty() {
                Ok(())
            } else {
                Err(e)
            }
        })
    }

    pub fn default_batch_sizes(&self) -> Vec<u32> {
        if self.batch_sizes.is_empty() {
            vec![1, 4, 8, 16, 32]
        } else {
            self.batch_sizes.clone()
        }
    }
}

fn validate_batches(b: &[u32]) -> Result<(), SynthError> {
    if b.is_empty() || b[0] == 0 || b.windows(2).any(|w| w[0] >= w[1]) {
        return Err(SynthError::BadBatchSizes);
    }
    Ok(())
}

/// Measured per-model kernel shares: (model, gemv2T, gemv2N, gemmk1).
pub const KERNEL_MIX_TABLE: [(&str, f64, f64, f64); 15] = [
    ("SqueezeNet-V1.0", 0.0, 0.0, 0.0),
    ("SqueezeNet-V1.1", 0.0, 0.0, 0.0),
    ("1.0-G-SqNxt-23", 34.53, 5.33, 9.13),
    ("1.0-SqNxt-23", 36.53, 5.64, 9.66),
    ("1.0-SqNxt-23v5", 27.78, 6.35, 10.85),
    ("2.0-SqNxt-23", 30.65, 4.75, 8.25),
    ("2.0-SqNxt-23v5", 21.49, 4.94, 8.35),
    ("MobileNet-V1", 59.23, 30.55, 0.63),
    ("MobileNet-V2", 60.31, 28.79, 0.80),
    ("ShuffleNet-V1", 45.37, 29.50, 4.39),
    ("ShuffleNet-V2", 43.81, 30.58, 3.39),
    ("DenseNet-121", 18.19, 3.66, 7.32),
    ("GoogLeNet", 0.18, 0.18, 0.05),
    ("Inception-V2", 5.12, 0.03, 3.69),
    ("SE-BN-Inception", 5.75, 0.03, 3.35),
];

/// The measured mix of a named model.
pub fn calibration_mix(name: &str) -> Option<KernelMix> {
    KERNEL_MIX_TABLE
        .iter()
        .find(|r| r.0 == name)
        .map(|r| KernelMix {
            gemv2t_pct: r.1,
            gemv2n_pct: r.2,
            gemmk1_pct: r.3,
        })
}

/// Mean of the measured mixes whose models share this component set. The
/// empty set (a plain conv/FC stack) maps to an all-zero mix.
pub fn band_center(components: &ComponentSet) -> Option<KernelMix> {
    if components.is_empty() {
        return Some(KernelMix::default());
    }
    let rows: Vec<KernelMix> = KERNEL_MIX_TABLE
        .iter()
        .filter(|r| expected_components(r.0).is_some_and(|(_, c)| &c == components))
        .filter_map(|r| calibration_mix(r.0))
        .collect();
    if rows.is_empty() {
        return None;
    }
    let n = rows.len() as f64;
    Some(KernelMix {
        gemv2t_pct: rows.iter().map(|m| m.gemv2t_pct).sum::<f64>() / n,
        gemv2n_pct: rows.iter().map(|m| m.gemv2n_pct).sum::<f64>() / n,
        gemmk1_pct: rows.iter().map(|m| m.gemmk1_pct).sum::<f64>() / n,
    })
}

/// Channels per group of the spatial group convolutions a secured network
/// carries in place of depthwise layers.
pub fn channels_per_group(arch: &ArchitectureSpec) -> Option<u32> {
    arch.layers()
        .filter(|(_, l)| l.kind() == LayerKind::GroupConv && l.filter_size() > 1)
        .map(|(_, l)| l.in_channels() / l.groups())
        .max()
}

/// Total gemv share reached at `G = 32` by the group-conv interpolation.
pub const GROUP_CONV_FLOOR_PCT: f64 = 10.0;

/// Kernel mix for an architecture: the measured row when the model is a
/// known one with its reference building blocks, else the band center of
/// its component set, else (for group-conv networks) a log2(G)
/// interpolation from the depthwise band toward a 10% gemv share.
pub fn synth_kernel_mix(arch: &ArchitectureSpec) -> Result<KernelMix, SynthError> {
    let comps = arch.components();
    let known = expected_components(arch.name()).is_some_and(|(_, c)| &c == comps);
    if known {
        if let Some(m) = calibration_mix(arch.name()) {
            return Ok(m);
        }
    }
    if let Some(m) = band_center(comps) {
        return Ok(m);
    }
    if comps.contains(Component::GroupConv) {
        let mut base = comps.clone();
        base.remove(Component::GroupConv);
        base.insert(Component::Dwconv);
        if let (Some(m), Some(g)) = (band_center(&base), channels_per_group(arch)) {
            let t = (f64::from(g).log2() / 5.0).clamp(0.0, 1.0);
            let total = m.gemv_total();
            let target = total * (1.0 - t) + GROUP_CONV_FLOOR_PCT * t;
            let k = target / total;
            return Ok(KernelMix {
                gemv2t_pct: m.gemv2t_pct * k,
                gemv2n_pct: m.gemv2n_pct * k,
                gemmk1_pct: m.gemmk1_pct,
            });
        }
    }
    Err(SynthError::UnmappedComponents(comps.names()))
}

/// Constants of the series model. Defaults are what the bundled golden
/// trend table was generated with.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SeriesModel {
    /// Gemv share (gemv2T + gemv2N, percent) from which every gemv kernel
    /// is treated as non-improvable.
    pub gemv_stuck_threshold_pct: f64,
    /// Utilization of non-improvable gemv work.
    pub u_stuck: f64,
    /// Improvable gemv work: utilization at small and saturated batch.
    pub u_gemv: (f64, f64),
    pub u_gemmk1: (f64, f64),
    /// Everything outside the three cuBLAS kernels (forward pass).
    pub u_other: (f64, f64),
    /// Backward-pass utilization multiplier for the non-cuBLAS work.
    pub bwd_other_gain: f64,
    /// Backward work relative to forward work.
    pub bwd_work: f64,
    /// Bytes of activation traffic per blob element per forward pass.
    pub activation_bytes: f64,
    /// Passes over the parameters in forward and backward.
    pub fwd_param_passes: f64,
    pub bwd_param_passes: f64,
    /// Framework and context memory before any tensor is allocated (MiB).
    pub mfp_base_mib: f64,
    /// Parameter-sized buffers resident during training (weights, grads, momentum).
    pub param_copies: f64,
    /// Bytes per concurrent activation element.
    pub bytes_per_concurrent: f64,
    /// Per-chained-concatenation growth of the dense over-provisioning base.
    pub dense_growth_per_concat: f64,
    /// Fraction of TDP drawn at zero utilization.
    pub idle_power_fraction: f64,
    /// Batch size (as a fraction of SM count) at which utilization saturates.
    pub saturation_per_sm: f64,
    /// MobileNet-V1 forward time at B=1 on the P100 profile, in ms.
    pub anchor_fpt_ms: f64,
}

impl Default for SeriesModel {
    fn default() -> Self {
        Self {
            gemv_stuck_threshold_pct: 60.0,
            u_stuck: 0.1,
            u_gemv: (0.1, 0.5),
            u_gemmk1: (0.02, 1.0),
            u_other: (0.15, 0.4),
            bwd_other_gain: 2.2,
            bwd_work: 2.0,
            activation_bytes: 32.0,
            fwd_param_passes: 1.0,
            bwd_param_passes: 3.0,
            mfp_base_mib: 500.0,
            param_copies: 3.0,
            bytes_per_concurrent: 4.0,
            dense_growth_per_concat: 1.5e-3,
            idle_power_fraction: 0.4,
            saturation_per_sm: 0.5,
            anchor_fpt_ms: 29.4,
        }
    }
}

/// Forward and backward utilization as a function of batch size, derived
/// from a kernel mix. Backward sees gemv2T and gemv2N with roles exchanged.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UtilizationModel {
    mix: KernelMix,
    b_sat: f64,
    model: SeriesModel,
}

impl UtilizationModel {
    pub fn new(mix: KernelMix, hw: &HardwareProfile, model: SeriesModel) -> Self {
        Self {
            mix,
            b_sat: f64::from(hw.sm_count) * model.saturation_per_sm,
            model,
        }
    }

    /// 0 at B=1, 1 from the saturation batch on.
    fn ramp(&self, b: u32) -> f64 {
        if self.b_sat <= 1.0 {
            return 1.0;
        }
        ((f64::from(b) - 1.0) / (self.b_sat - 1.0)).clamp(0.0, 1.0)
    }

    /// Harmonic combination over kernel classes for one pass. `stuck` is
    /// the gemv kernel that cannot be improved in this pass, `free` the
    /// other one.
    fn pass_util(&self, stuck: f64, free: f64, other_gain: f64, b: u32) -> f64 {
        let m = &self.model;
        let r = self.ramp(b);
        let lerp = |(lo, hi): (f64, f64)| lo + (hi - lo) * r;
        let (stuck, free) = if self.mix.gemv_total() >= m.gemv_stuck_threshold_pct {
            (stuck + free, 0.0)
        } else {
            (stuck, free)
        };
        let k = self.mix.gemmk1_pct / 100.0;
        let (s, f) = (stuck / 100.0, free / 100.0);
        let other = (1.0 - s - f - k).max(0.0);
        let u_other = (lerp(m.u_other) * other_gain).min(1.0);
        let inv = s / m.u_stuck + f / lerp(m.u_gemv) + k / lerp(m.u_gemmk1) + other / u_other;
        1.0 / inv
    }

    pub fn fwd_util(&self, b: u32) -> f64 {
        self.pass_util(self.mix.gemv2n_pct, self.mix.gemv2t_pct, 1.0, b)
    }

    /// Backward utilization without the non-cuBLAS gain, i.e. the forward
    /// formula under exchanged gemv roles.
    pub fn bwd_gemv_util(&self, b: u32) -> f64 {
        self.pass_util(self.mix.gemv2t_pct, self.mix.gemv2n_pct, 1.0, b)
    }

    pub fn bwd_util(&self, b: u32) -> f64 {
        self.pass_util(
            self.mix.gemv2t_pct,
            self.mix.gemv2n_pct,
            self.model.bwd_other_gain,
            b,
        )
    }
}

/// Per-sample quantities the series model needs from an architecture.
#[derive(Debug, Clone, Copy, PartialEq)]
struct Workload {
    macs: f64,
    params: f64,
    blob_activations: f64,
    concurrent: f64,
    dense_depth: f64,
}

impl Workload {
    fn of(arch: &ArchitectureSpec) -> Result<Self, SynthError> {
        let s = arch.aggregate_stats()?;
        Ok(Self {
            macs: s.macs as f64,
            params: s.params as f64,
            blob_activations: s.activations as f64,
            concurrent: arch.concurrent_activation_elems() as f64,
            dense_depth: arch.dense_depth() as f64,
        })
    }
}

/// Uncalibrated forward/backward times in ms and Mfp in MiB at one batch size.
struct RawPoint {
    fpt: f64,
    bpt: f64,
    mfp: f64,
    u_f: f64,
}

fn raw_point(
    w: &Workload,
    util: &UtilizationModel,
    hw: &HardwareProfile,
    m: &SeriesModel,
    b: u32,
) -> RawPoint {
    let flops_per_ms = hw.peak_throughput_tflops * 1e9;
    let bytes_per_ms = hw.peak_bandwidth_gbps * 1e6;
    let per_sample =
        2.0 * w.macs / flops_per_ms + m.activation_bytes * w.blob_activations / bytes_per_ms;
    let param_ms = 4.0 * w.params / bytes_per_ms;
    let bf = f64::from(b);
    let u_f = util.fwd_util(b);
    let fpt = bf * per_sample / u_f + m.fwd_param_passes * param_ms;
    let bpt = m.bwd_work * bf * per_sample / util.bwd_util(b) + m.bwd_param_passes * param_ms;
    let rho = 1.0 + m.dense_growth_per_concat * w.dense_depth;
    let act_bytes = bf * w.concurrent * m.bytes_per_concurrent * rho.powf(bf - 1.0);
    let mib = 1024.0 * 1024.0;
    let mfp = m.mfp_base_mib + (m.param_copies * 4.0 * w.params + act_bytes) / mib;
    RawPoint { fpt, bpt, mfp, u_f }
}

/// Scale that maps raw MobileNet-V1 forward time at B=1 on the P100 profile
/// to the anchor value.
fn calibration(m: &SeriesModel) -> Result<f64, SynthError> {
    let anchor = crate::recipes::mobilenet_v1()?;
    let w = Workload::of(&anchor)?;
    let hw = HardwareProfile::p100();
    let mix = calibration_mix("MobileNet-V1").expect("anchor row present");
    let util = UtilizationModel::new(mix, &hw, *m);
    Ok(m.anchor_fpt_ms / raw_point(&w, &util, &hw, m, 1).fpt)
}

/// Noise-free metric series. Batch sizes whose Mfp exceeds device memory
/// end the series and are recorded in `oom_at_batch`.
pub fn synth_series(
    arch: &ArchitectureSpec,
    hw: &HardwareProfile,
    batch_sizes: &[u32],
) -> Result<MetricSeries, SynthError> {
    synth_series_with(arch, hw, batch_sizes, &SeriesModel::default())
}

pub fn synth_series_with(
    arch: &ArchitectureSpec,
    hw: &HardwareProfile,
    batch_sizes: &[u32],
    model: &SeriesModel,
) -> Result<MetricSeries, SynthError> {
    validate_batches(batch_sizes)?;
    hw.validate()?;
    let mix = synth_kernel_mix(arch)?;
    let util = UtilizationModel::new(mix, hw, *model);
    let w = Workload::of(arch)?;
    let cal = calibration(model)?;
    let mut s = MetricSeries {
        fpt_ms: Some(Vec::new()),
        bpt_ms: Some(Vec::new()),
        mfp_mib: Some(Vec::new()),
        tp_fps: Some(Vec::new()),
        epf_mj: Some(Vec::new()),
        ..Default::default()
    };
    for &b in batch_sizes {
        let p = raw_point(&w, &util, hw, model, b);
        if p.mfp > hw.global_memory_mib {
            s.oom_at_batch = Some(b);
            break;
        }
        let fpt = p.fpt * cal;
        let power =
            hw.tdp_watts * (model.idle_power_fraction + (1.0 - model.idle_power_fraction) * p.u_f);
        s.batch_sizes.push(b);
        push(&mut s.fpt_ms, fpt);
        push(&mut s.bpt_ms, p.bpt * cal);
        push(&mut s.mfp_mib, p.mfp);
        push(&mut s.tp_fps, 1000.0 * f64::from(b) / fpt);
        push(&mut s.epf_mj, power * fpt / f64::from(b));
    }
    Ok(s)
}

fn push(v: &mut Option<Vec<f64>>, x: f64) {
    v.as_mut().expect("initialized").push(x);
}

/// Relative jitter amplitudes (0.05 = ±5%, uniform).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct JitterConfig {
    /// Independent factor per kernel share.
    pub mix: f64,
    /// One factor per timing/energy metric, shared by all its points.
    pub series: f64,
    /// Independent factor per point on top of `series`.
    pub point: f64,
}

impl Default for JitterConfig {
    fn default() -> Self {
        Self {
            mix: 0.01,
            series: 0.05,
            point: 0.01,
        }
    }
}

impl JitterConfig {
    pub fn none() -> Self {
        Self {
            mix: 0.0,
            series: 0.0,
            point: 0.0,
        }
    }
}

fn factor(rng: &mut ChaCha8Rng, amp: f64) -> f64 {
    if amp > 0.0 {
        1.0 + rng.gen_range(-amp..=amp)
    } else {
        1.0
    }
}

/// Kernel mix plus series with seeded jitter; identical inputs and seed
/// give identical output. Mfp is never jittered.
pub fn synth_fingerprint(
    arch: &ArchitectureSpec,
    hw: &HardwareProfile,
    batch_sizes: &[u32],
    seed: u64,
) -> Result<Fingerprint, SynthError> {
    synth_fingerprint_with(
        arch,
        hw,
        batch_sizes,
        seed,
        &JitterConfig::default(),
        &SeriesModel::default(),
    )
}

pub fn synth_fingerprint_with(
    arch: &ArchitectureSpec,
    hw: &HardwareProfile,
    batch_sizes: &[u32],
    seed: u64,
    jitter: &JitterConfig,
    model: &SeriesModel,
) -> Result<Fingerprint, SynthError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mix = synth_kernel_mix(arch)?;
    let mut mix = KernelMix {
        gemv2t_pct: mix.gemv2t_pct * factor(&mut rng, jitter.mix),
        gemv2n_pct: mix.gemv2n_pct * factor(&mut rng, jitter.mix),
        gemmk1_pct: mix.gemmk1_pct * factor(&mut rng, jitter.mix),
    };
    let total = mix.total();
    if total > 100.0 {
        let k = 100.0 / total;
        mix.gemv2t_pct *= k;
        mix.gemv2n_pct *= k;
        mix.gemmk1_pct *= k;
    }
    let mut series = synth_series_with(arch, hw, batch_sizes, model)?;
    for m in [Metric::Fpt, Metric::Bpt, Metric::Tp, Metric::Epf] {
        let common = factor(&mut rng, jitter.series);
        if let Some(v) = series.get_mut(m) {
            for x in v.iter_mut() {
                *x *= common * factor(&mut rng, jitter.point);
            }
        }
    }
    Ok(Fingerprint {
        kernel_mix: Some(mix),
        series,
        hardware: Some(hw.id.clone()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::recipes;

    #[test]
    fn table_two_profiles() {
        let p = HardwareProfile::p100();
        assert_eq!((p.sm_count, p.core_count), (56, 3584));
        assert_eq!(p.global_memory_mib, 12193.0);
        let q = HardwareProfile::p4000();
        assert_eq!((q.sm_count, q.core_count), (14, 1792));
        assert_eq!(q.peak_bandwidth_gbps, 243.0);
        assert!(HardwareProfile::resolve("P100").is_ok());
        assert!(HardwareProfile::resolve("/nonexistent/gpu.json").is_err());
    }

    #[test]
    fn known_models_get_their_measured_mix() {
        let m = synth_kernel_mix(&recipes::mobilenet_v1().unwrap()).unwrap();
        assert_eq!(m, KernelMix::new(59.23, 30.55, 0.63).unwrap());
        let s = synth_kernel_mix(&recipes::squeezenet_v1_1().unwrap()).unwrap();
        assert_eq!(s, KernelMix::default());
        let d = synth_kernel_mix(&recipes::densenet121().unwrap()).unwrap();
        assert_eq!(d, KernelMix::new(18.19, 3.66, 7.32).unwrap());
    }

    #[test]
    fn band_center_averages_rows_with_the_same_blocks() {
        let shuffle: ComponentSet = [
            Component::Dwconv,
            Component::ChannelShuffling,
            Component::Pwconv,
            Component::Branching,
            Component::ResidualSkip,
        ]
        .into();
        let c = band_center(&shuffle).unwrap();
        assert!((c.gemv2t_pct - (45.37 + 43.81) / 2.0).abs() < 1e-9);
        let novel: ComponentSet = [Component::DenseBlock, Component::Dwconv].into();
        assert!(band_center(&novel).is_none());
    }

    #[test]
    fn role_swap_exchanges_pass_utilization() {
        let hw = HardwareProfile::p100();
        let m = SeriesModel::default();
        for mix in [
            KernelMix::new(36.53, 5.64, 9.66).unwrap(),
            KernelMix::new(59.23, 30.55, 0.63).unwrap(),
            KernelMix::new(3.0, 20.0, 1.0).unwrap(),
        ] {
            let a = UtilizationModel::new(mix, &hw, m);
            let b = UtilizationModel::new(mix.role_swapped(), &hw, m);
            for bs in [1, 8, 56] {
                assert!((a.fwd_util(bs) - b.bwd_gemv_util(bs)).abs() < 1e-12);
                assert!((a.bwd_gemv_util(bs) - b.fwd_util(bs)).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn utilization_is_monotone_in_batch() {
        let hw = HardwareProfile::p4000();
        let u = UtilizationModel::new(
            KernelMix::new(18.19, 3.66, 7.32).unwrap(),
            &hw,
            SeriesModel::default(),
        );
        let mut last = (0.0, 0.0);
        for b in 1..64 {
            let now = (u.fwd_util(b), u.bwd_util(b));
            assert!(now.0 >= last.0 && now.1 >= last.1);
            assert!(now.0 > 0.0 && now.0 <= 1.0 && now.1 <= 1.0);
            last = now;
        }
    }

    #[test]
    fn anchor_forward_time() {
        let s = synth_series(
            &recipes::mobilenet_v1().unwrap(),
            &HardwareProfile::p100(),
            &[1],
        )
        .unwrap();
        assert!((s.fpt_ms.unwrap()[0] - 29.4).abs() < 1e-9);
    }

    #[test]
    fn same_seed_same_fingerprint() {
        let arch = recipes::mobilenet_v1().unwrap();
        let hw = HardwareProfile::p100();
        let a = synth_fingerprint(&arch, &hw, &hw.default_batch_sizes(), 0).unwrap();
        let b = synth_fingerprint(&arch, &hw, &hw.default_batch_sizes(), 0).unwrap();
        assert_eq!(a.to_json(), b.to_json());
        let c = synth_fingerprint(&arch, &hw, &hw.default_batch_sizes(), 1).unwrap();
        assert_ne!(a.to_json(), c.to_json());
        assert_eq!(a.series.mfp_mib, c.series.mfp_mib);
    }

    #[test]
    fn bad_batches_are_rejected() {
        let arch = recipes::mobilenet_v1().unwrap();
        let hw = HardwareProfile::p100();
        assert!(synth_series(&arch, &hw, &[]).is_err());
        assert!(synth_series(&arch, &hw, &[4, 2]).is_err());
        assert!(synth_series(&arch, &hw, &[0, 2]).is_err());
    }
}
