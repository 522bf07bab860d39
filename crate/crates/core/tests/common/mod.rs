//! Oracles shared by the integration tests: published table values typed in
//! by hand, and fingerprints built from documented trend classes without
//! going through the synthesizer.

#![allow(dead_code)]

use peepkit::classifier::References;
use peepkit::fingerprint::{Fingerprint, KernelMix, MetricSeries};
use peepkit::graph::Group;

/// (model, Mc in millions, P in millions, A in millions).
pub const COST_TABLE: [(&str, f64, f64, f64); 7] = [
    ("AlexNet", 723.0, 60.97, 2.05),
    ("SqueezeNet-V1.0", 848.0, 1.25, 12.3),
    ("SqueezeNet-V1.1", 349.0, 1.24, 7.2),
    ("MobileNet-V1", 574.0, 4.23, 20.32),
    ("MobileNet-V2", 300.0, 3.40, 35.45),
    ("DenseNet-121", 3080.0, 7.98, 69.99),
    ("GoogLeNet", 1590.0, 7.00, 10.06),
];

/// (G, ΔMc %, ΔP %) for the secured MobileNet-V1.
pub const OVERHEAD_TABLE: [(u32, f64, f64); 5] = [
    (2, 3.0, 1.2),
    (4, 8.8, 3.3),
    (8, 19.4, 7.3),
    (16, 37.6, 15.8),
    (32, 64.2, 32.9),
];

/// Profiled kernel shares (gemv2T, gemv2N, gemmk1) in percent. AlexNet was
/// not profiled; a plain conv/FC stack is given an empty mix, which is the
/// hardest case since it matches the SqueezeNet mix exactly.
pub const KERNEL_TABLE: [(&str, f64, f64, f64); 16] = [
    ("AlexNet", 0.0, 0.0, 0.0),
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

pub fn kernel_mix(name: &str) -> KernelMix {
    let (_, t, n, k) = *KERNEL_TABLE
        .iter()
        .find(|r| r.0 == name)
        .unwrap_or_else(|| panic!("{name} not in kernel table"));
    KernelMix::new(t, n, k).expect("table shares are valid")
}

pub const BATCHES: [u32; 6] = [1, 4, 8, 16, 32, 56];

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Bpfp {
    Constant(f64),
    Increasing,
    Decreasing,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Tp {
    Constant,
    Plateau,
    Rising,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Epf {
    Constant,
    Decreasing,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Mfp {
    /// `level × 885 + slope × 50 × B` MiB.
    Linear { level: f64, slope: f64 },
    /// Grows by e^0.12 per sample and stops before B = 32.
    Exponential,
}

/// Documented behaviour of one model, relative to its group reference where
/// a scale is given.
#[derive(Debug, Clone, Copy)]
pub struct GoldenRow {
    pub name: &'static str,
    pub group: Group,
    pub bpfp: Bpfp,
    pub tp: Tp,
    pub epf: Epf,
    pub mfp: Mfp,
    pub tp_scale: f64,
    pub epf_scale: f64,
}

const fn row(
    name: &'static str,
    group: Group,
    bpfp: Bpfp,
    tp: Tp,
    epf: Epf,
    mfp: Mfp,
) -> GoldenRow {
    GoldenRow {
        name,
        group,
        bpfp,
        tp,
        epf,
        mfp,
        tp_scale: 1.0,
        epf_scale: 1.0,
    }
}

const fn lin(level: f64, slope: f64) -> Mfp {
    Mfp::Linear { level, slope }
}

/// Mfp levels are the B = 1 footprints relative to 885 MiB and slopes the
/// activation counts relative to the group reference. EPF and Tp scales
/// follow the measured energy-efficiency and throughput ratios; ShuffleNet-V2
/// only has the qualitative "higher at high B" reading.
pub fn golden_rows() -> Vec<GoldenRow> {
    use Bpfp::*;
    let below = Constant(0.85);
    let sqnxt = |name, level, slope| {
        row(
            name,
            Group::SqueezeNext,
            Increasing,
            Tp::Rising,
            Epf::Decreasing,
            lin(level, slope),
        )
    };
    vec![
        row(
            "AlexNet",
            Group::NonCompact,
            Decreasing,
            Tp::Rising,
            Epf::Decreasing,
            lin(1.15, 0.17),
        ),
        row(
            "SqueezeNet-V1.0",
            Group::SqueezeNet,
            below,
            Tp::Rising,
            Epf::Decreasing,
            lin(0.69, 1.0),
        ),
        GoldenRow {
            epf_scale: 0.62,
            ..row(
                "SqueezeNet-V1.1",
                Group::SqueezeNet,
                below,
                Tp::Rising,
                Epf::Decreasing,
                lin(0.66, 0.585),
            )
        },
        sqnxt("1.0-G-SqNxt-23", 1.151, 1.0),
        sqnxt("1.0-SqNxt-23", 1.0, 1.0),
        sqnxt("1.0-SqNxt-23v5", 0.98, 0.79),
        sqnxt("2.0-SqNxt-23", 1.124, 1.81),
        sqnxt("2.0-SqNxt-23v5", 1.081, 1.38),
        row(
            "MobileNet-V1",
            Group::MobileNet,
            Constant(1.6),
            Tp::Constant,
            Epf::Constant,
            lin(0.83, 1.0),
        ),
        GoldenRow {
            tp_scale: 0.67,
            epf_scale: 1.25,
            ..row(
                "MobileNet-V2",
                Group::MobileNet,
                Constant(1.6),
                Tp::Constant,
                Epf::Constant,
                lin(1.10, 1.74),
            )
        },
        row(
            "ShuffleNet-V1",
            Group::ShuffleNet,
            Constant(1.4),
            Tp::Plateau,
            Epf::Decreasing,
            lin(0.8, 1.0),
        ),
        row(
            "ShuffleNet-V2",
            Group::ShuffleNet,
            Constant(1.4),
            Tp::Plateau,
            Epf::Decreasing,
            lin(0.8, 1.3),
        ),
        row(
            "DenseNet-121",
            Group::DenseNet,
            Increasing,
            Tp::Rising,
            Epf::Decreasing,
            Mfp::Exponential,
        ),
        row(
            "GoogLeNet",
            Group::InceptionNet,
            below,
            Tp::Rising,
            Epf::Decreasing,
            lin(0.91, 1.0),
        ),
        row(
            "Inception-V2",
            Group::InceptionNet,
            Constant(1.05),
            Tp::Rising,
            Epf::Decreasing,
            lin(1.12, 1.79),
        ),
        row(
            "SE-BN-Inception",
            Group::InceptionNet,
            Constant(1.05),
            Tp::Rising,
            Epf::Decreasing,
            lin(1.2, 1.9),
        ),
    ]
}

fn ramp(i: usize, n: usize) -> f64 {
    i as f64 / (n - 1) as f64
}

/// Series whose shapes encode the row's trend classes exactly.
pub fn golden_series(r: &GoldenRow) -> MetricSeries {
    let (batches, oom) = match r.mfp {
        Mfp::Exponential => (&BATCHES[..4], Some(32)),
        Mfp::Linear { .. } => (&BATCHES[..], None),
    };
    let n = batches.len();
    let tp: Vec<f64> = batches
        .iter()
        .enumerate()
        .map(|(i, &b)| {
            let shape = match r.tp {
                Tp::Constant => 1.0,
                Tp::Plateau => [1.0, 1.25, 1.4, 1.5, 1.53, 1.54][i],
                Tp::Rising => 1.0 + f64::from(b) / 10.0,
            };
            100.0 * shape * r.tp_scale
        })
        .collect();
    let fpt: Vec<f64> = batches
        .iter()
        .zip(&tp)
        .map(|(&b, t)| 1000.0 * f64::from(b) / t)
        .collect();
    let bpfp: Vec<f64> = (0..n)
        .map(|i| match r.bpfp {
            Bpfp::Constant(v) => v,
            Bpfp::Increasing => 1.2 + 0.6 * ramp(i, n),
            Bpfp::Decreasing => 1.3 - 0.4 * ramp(i, n),
        })
        .collect();
    let epf: Vec<f64> = (0..n)
        .map(|i| {
            let shape = match r.epf {
                Epf::Constant => 1.0,
                Epf::Decreasing => [1.0, 0.8, 0.65, 0.55, 0.5, 0.48][i],
            };
            50.0 * shape * r.epf_scale
        })
        .collect();
    let mfp: Vec<f64> = batches
        .iter()
        .map(|&b| match r.mfp {
            Mfp::Linear { level, slope } => level * 885.0 + slope * 50.0 * f64::from(b),
            Mfp::Exponential => 1405.0 * (0.12 * f64::from(b - 1)).exp(),
        })
        .collect();
    MetricSeries {
        batch_sizes: batches.to_vec(),
        bpt_ms: Some(fpt.iter().zip(&bpfp).map(|(f, r)| f * r).collect()),
        fpt_ms: Some(fpt),
        mfp_mib: Some(mfp),
        tp_fps: Some(tp),
        epf_mj: Some(epf),
        oom_at_batch: oom,
    }
}

pub fn golden_fingerprint(r: &GoldenRow) -> Fingerprint {
    Fingerprint {
        kernel_mix: Some(kernel_mix(r.name)),
        series: golden_series(r),
        hardware: Some("P100".into()),
    }
}

/// Reference fingerprints built the same way from each group's reference row.
pub fn golden_references() -> References {
    let rows = golden_rows();
    let mut refs = References::new();
    for g in Group::ALL {
        let r = rows
            .iter()
            .find(|r| r.name == g.reference_model())
            .expect("every group has a reference row");
        refs.insert(g, golden_fingerprint(r));
    }
    refs
}
