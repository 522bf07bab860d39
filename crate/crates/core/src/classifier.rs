//! The attack: building blocks from the kernel mix, the DNN group from the
//! mix and the metric trends, and the exact model from comparisons against
//! the group's reference fingerprint. Every decision leaves an evidence
//! record.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};
use std::path::Path;

use serde::{Deserialize, Serialize, Serializer};

use crate::error::ClassifyError;
use crate::fingerprint::{
    compare_to_reference, extract_trends_with, ComparisonVerdict, Direction, Fingerprint, Growth,
    KernelMix, Metric, TpTrend, TrendConfig, TrendSummary, Verdict,
};
use crate::graph::{Component, ComponentSet, Group};
use crate::synth::{synth_fingerprint_with, HardwareProfile, JitterConfig, SeriesModel};

/// Environment variable naming a JSON file with threshold overrides.
pub const THRESHOLDS_ENV: &str = "PEEPKIT_THRESHOLDS";

/// Every numeric edge the rules use. Fields missing from an override file
/// keep their defaults.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Thresholds {
    /// gemv2T + gemv2N at or above this marks depthwise convolution.
    pub very_high_gemv_pct: f64,
    /// Below this total the network is SqueezeNet or Inception-like.
    pub low_total_pct: f64,
    /// Shares under this are negligible.
    pub negligible_pct: f64,
    pub mobilenet_gemmk1_max: f64,
    pub shufflenet_gemmk1_min: f64,
    /// gemv2T must be this many times gemv2N for asymmetric filters.
    pub dominance_ratio: f64,
    /// gemv2N at or above this (with dominance) marks asymmetric filters.
    pub asymmetric_gemv2n_min: f64,
    /// gemv2T needed on top of dominance for the asymmetric band; a lower
    /// gemv2T in [10, 60) reads as dense blocks.
    pub asymmetric_gemv2t_min: f64,
    /// Lower edge of the moderate gemv2T bands.
    pub moderate_gemv2t_min: f64,
    /// Victim/reference Mfp at the largest shared batch for the 2.0 width.
    pub wide_mfp_ratio: f64,
    pub wide_gemv2n_max: f64,
    /// gemv2T + gemv2N under this separates 2.0-SqNxt-23v5.
    pub v5_gemv_total_max: f64,
    /// Relative band within which a kernel share matches the reference.
    pub share_match_band: f64,
    /// Relative band for higher/lower metric verdicts.
    pub metric_band: f64,
    pub trend: TrendConfig,
}

impl Default for Thresholds {
    fn default() -> Self {
        Self {
            very_high_gemv_pct: 60.0,
            low_total_pct: 10.0,
            negligible_pct: 1.0,
            mobilenet_gemmk1_max: 1.0,
            shufflenet_gemmk1_min: 3.0,
            dominance_ratio: 3.0,
            asymmetric_gemv2n_min: 3.0,
            asymmetric_gemv2t_min: 20.0,
            moderate_gemv2t_min: 10.0,
            wide_mfp_ratio: 1.10,
            wide_gemv2n_max: 5.0,
            v5_gemv_total_max: 30.0,
            share_match_band: 0.025,
            metric_band: 0.10,
            trend: TrendConfig::default(),
        }
    }
}

impl Thresholds {
    pub fn from_json(text: &str) -> Result<Self, ClassifyError> {
        serde_json::from_str(text).map_err(|e| ClassifyError::Config(e.to_string()))
    }

    /// Defaults, overridden by the file named in `PEEPKIT_THRESHOLDS` if set.
    pub fn from_env() -> Result<Self, ClassifyError> {
        match std::env::var_os(THRESHOLDS_ENV) {
            None => Ok(Self::default()),
            Some(path) => {
                let text = std::fs::read_to_string(&path).map_err(|e| {
                    ClassifyError::Config(format!("{}: {e}", Path::new(&path).display()))
                })?;
                Self::from_json(&text)
            }
        }
    }
}

/// Rule ids and what they decide.
pub const RULES: &[(&str, &str)] = &[
    ("components.a", "gemv2T+gemv2N very high: depthwise with pointwise convolution"),
    ("components.b", "moderate gemv2T dominating a non-trivial gemv2N: asymmetric filters, residual skips, branching"),
    ("components.c", "moderate gemv2T without the asymmetric signature: dense blocks or residual skips"),
    ("components.d", "low gemv2T: asymmetric filters with branching"),
    ("components.e", "negligible gemv: branching only"),
    ("group.case1.mix", "very high gemv: gemmk1 votes MobileNet or ShuffleNet"),
    ("group.case1.tp", "very high gemv: Tp trend votes MobileNet or ShuffleNet"),
    ("group.case1.conflict", "kernel mix and Tp disagree; the mix decides the group"),
    ("group.noncompact", "BPt/FPt decreasing with B: non-compact network"),
    ("group.case3", "low total cuBLAS share: SqueezeNet or Inception-like"),
    ("group.case2", "BPt/FPt increasing: Mfp growth separates DenseNet from SqueezeNext"),
    ("group.unknown", "no group rule fired"),
    ("model.mobilenet", "EPF higher at all B and Tp lower: MobileNet-V2"),
    ("model.mobilenet.mfp", "Mfp higher at high B corroborates MobileNet-V2"),
    ("model.shufflenet", "Mfp higher at high B: ShuffleNet-V2"),
    ("model.squeezenext.width", "Mfp well above reference with low gemv2N: width 2.0"),
    ("model.squeezenext.wide", "gemv total under 30: 2.0-SqNxt-23v5"),
    ("model.squeezenext.narrow", "best-effort kernel-share comparison against 1.0-SqNxt-23"),
    ("model.squeezenet", "EPF or Mfp lower at all B: SqueezeNet-V1.1"),
    ("model.inception", "gemv2T negligible: GoogLeNet, else the indistinguishable pair"),
    ("model.single", "group with a single member"),
];

/// One fired rule: what it looked at and what it concluded.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Evidence {
    pub rule: String,
    pub inputs: BTreeMap<String, String>,
    pub verdict: String,
}

impl Evidence {
    fn new(rule: &'static str, inputs: &[(&str, String)], verdict: impl Into<String>) -> Self {
        debug_assert!(
            RULES.iter().any(|(id, _)| *id == rule),
            "undocumented rule {rule}"
        );
        Self {
            rule: rule.to_string(),
            inputs: inputs
                .iter()
                .map(|(k, v)| ((*k).to_string(), v.clone()))
                .collect(),
            verdict: verdict.into(),
        }
    }
}

fn pct(v: f64) -> String {
    format!("{v:.2}")
}

fn serialize_group<S: Serializer>(g: &Option<Group>, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(g.map_or("unknown", Group::as_str))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PredictionReport {
    pub components: ComponentSet,
    #[serde(serialize_with = "serialize_group")]
    pub group: Option<Group>,
    pub candidates: Vec<String>,
    pub ambiguous: bool,
    pub evidence: Vec<Evidence>,
}

impl PredictionReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports always serialize");
        s.push('\n');
        s
    }

    /// The single candidate, if the prediction is unambiguous.
    pub fn model(&self) -> Option<&str> {
        match self.candidates.as_slice() {
            [one] => Some(one),
            _ => None,
        }
    }
}

impl fmt::Display for PredictionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "components: {}", self.components)?;
        writeln!(
            f,
            "group:      {}",
            self.group.map_or("unknown", Group::as_str)
        )?;
        let mut c = self.candidates.join(", ");
        if self.ambiguous {
            c.push_str("  (ambiguous)");
        }
        writeln!(f, "candidates: {c}")?;
        writeln!(f, "evidence:")?;
        for (i, e) in self.evidence.iter().enumerate() {
            let inputs = e
                .inputs
                .iter()
                .map(|(k, v)| format!("{k}={v}"))
                .collect::<Vec<_>>()
                .join(" ");
            let mut line = String::new();
            let _ = write!(
                line,
                "  {:>2}. {:<26} {} -> {}",
                i + 1,
                e.rule,
                inputs,
                e.verdict
            );
            writeln!(f, "{line}")?;
        }
        Ok(())
    }
}

/// Reference fingerprints, one per group (the group's first member).
#[derive(Debug, Clone, Default, PartialEq)]
pub struct References {
    by_group: BTreeMap<Group, Fingerprint>,
}

impl References {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, group: Group, fp: Fingerprint) {
        self.by_group.insert(group, fp);
    }

    pub fn get(&self, group: Group) -> Option<&Fingerprint> {
        self.by_group.get(&group)
    }

    /// Noise-free synthesized references for a hardware profile.
    pub fn synthesized(hw: &HardwareProfile, batch_sizes: &[u32]) -> Result<Self, ClassifyError> {
        let mut refs = Self::new();
        for group in Group::ALL {
            let arch = crate::zoo::bundled(group.reference_model())?;
            let fp = synth_fingerprint_with(
                &arch,
                hw,
                batch_sizes,
                0,
                &JitterConfig::none(),
                &SeriesModel::default(),
            )?;
            refs.insert(group, fp);
        }
        Ok(refs)
    }

    /// Loads `<stem>.json` for each group's reference model from `dir`
    /// (e.g. `mobilenet_v1.json`). Missing files are skipped.
    pub fn load_dir(dir: impl AsRef<Path>) -> Result<Self, ClassifyError> {
        let mut refs = Self::new();
        for group in Group::ALL {
            let name = group.reference_model();
            let Some(stem) = crate::recipes::RECIPES
                .iter()
                .find(|(n, _, _)| *n == name)
                .map(|(_, s, _)| *s)
            else {
                continue;
            };
            let path = dir.as_ref().join(format!("{stem}.json"));
            if path.exists() {
                refs.insert(group, Fingerprint::load(&path)?);
            }
        }
        Ok(refs)
    }
}

/// The rule cascade with a fixed threshold set.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Classifier {
    pub thresholds: Thresholds,
}

impl Classifier {
    pub fn new(thresholds: Thresholds) -> Self {
        Self { thresholds }
    }

    pub fn predict_components(&self, mix: &KernelMix) -> (ComponentSet, Evidence) {
        use Component::*;
        let th = &self.thresholds;
        let (t, n, k) = (mix.gemv2t_pct, mix.gemv2n_pct, mix.gemmk1_pct);
        let moderate = t >= th.moderate_gemv2t_min && t < th.very_high_gemv_pct;
        let (rule, set): (_, ComponentSet) = if mix.gemv_total() >= th.very_high_gemv_pct {
            ("components.a", [Dwconv, Pwconv].into())
        } else if moderate
            && t >= th.asymmetric_gemv2t_min
            && t >= th.dominance_ratio * n
            && n >= th.asymmetric_gemv2n_min
        {
            (
                "components.b",
                [AsymmetricFilterDecomposition, ResidualSkip, Branching].into(),
            )
        } else if moderate {
            ("components.c", [DenseBlock, ResidualSkip].into())
        } else if t >= th.negligible_pct {
            (
                "components.d",
                [AsymmetricFilterDecomposition, Branching].into(),
            )
        } else {
            ("components.e", [Branching].into())
        };
        let ev = Evidence::new(
            rule,
            &[("gemv2T", pct(t)), ("gemv2N", pct(n)), ("gemmk1", pct(k))],
            set.to_string(),
        );
        (set, ev)
    }

    fn trends(&self, fp: &Fingerprint) -> Option<TrendSummary> {
        fp.series
            .has_any()
            .then(|| extract_trends_with(&fp.series, &self.thresholds.trend))
    }

    /// Inter-group stage. `Ok((None, _))` means no rule fired.
    pub fn predict_group(
        &self,
        fp: &Fingerprint,
    ) -> Result<(Option<Group>, Vec<Evidence>), ClassifyError> {
        let th = &self.thresholds;
        let mix = fp.kernel_mix.ok_or(ClassifyError::InsufficientEvidence {
            channel: "kernel_mix",
        })?;
        let trends = self.trends(fp);
        let mut ev = Vec::new();
        let (t, n, k) = (mix.gemv2t_pct, mix.gemv2n_pct, mix.gemmk1_pct);

        if mix.gemv_total() >= th.very_high_gemv_pct {
            let mix_vote = if k < th.mobilenet_gemmk1_max {
                Some(Group::MobileNet)
            } else if k >= th.shufflenet_gemmk1_min {
                Some(Group::ShuffleNet)
            } else {
                None
            };
            ev.push(Evidence::new(
                "group.case1.mix",
                &[("gemv_total", pct(mix.gemv_total())), ("gemmk1", pct(k))],
                vote_str(mix_vote),
            ));
            let tp_vote = trends.and_then(|tr| match tr.tp_trend {
                TpTrend::Constant => Some(Group::MobileNet),
                TpTrend::RisingThenPlateau | TpTrend::Rising => Some(Group::ShuffleNet),
                _ => None,
            });
            if let Some(tr) = trends {
                ev.push(Evidence::new(
                    "group.case1.tp",
                    &[("tp_trend", format!("{:?}", tr.tp_trend))],
                    vote_str(tp_vote),
                ));
            }
            return match (mix_vote, tp_vote) {
                (Some(m), Some(s)) if m != s => {
                    ev.push(Evidence::new(
                        "group.case1.conflict",
                        &[("mix", m.to_string()), ("tp", s.to_string())],
                        m.to_string(),
                    ));
                    Ok((Some(m), ev))
                }
                (Some(g), _) | (None, Some(g)) => Ok((Some(g), ev)),
                (None, None) if trends.is_none() => {
                    Err(ClassifyError::InsufficientEvidence { channel: "series" })
                }
                (None, None) => {
                    ev.push(Evidence::new("group.unknown", &[], "unknown"));
                    Ok((None, ev))
                }
            };
        }

        if let Some(tr) = trends {
            if tr.bpfp_trend == Direction::Decreasing {
                ev.push(Evidence::new(
                    "group.noncompact",
                    &[("bpfp_trend", "Decreasing".into())],
                    Group::NonCompact.to_string(),
                ));
                return Ok((Some(Group::NonCompact), ev));
            }
        }

        if mix.total() < th.low_total_pct {
            let inputs = [
                ("total", pct(mix.total())),
                ("gemv2T", pct(t)),
                ("gemv2N", pct(n)),
                ("gemmk1", pct(k)),
            ];
            let negligible = [t, n, k].iter().all(|v| *v < th.negligible_pct);
            let group = if negligible && mix.total() == 0.0 {
                // A plain conv stack shows the same empty mix; only the
                // BPt/FPt trend (checked above) rules it out.
                if trends.is_none() {
                    return Err(ClassifyError::InsufficientEvidence { channel: "series" });
                }
                Some(Group::SqueezeNet)
            } else if negligible || t >= th.negligible_pct {
                Some(Group::InceptionNet)
            } else {
                None
            };
            if let Some(g) = group {
                ev.push(Evidence::new("group.case3", &inputs, g.to_string()));
                return Ok((Some(g), ev));
            }
        }

        let tr = trends.ok_or(ClassifyError::InsufficientEvidence { channel: "series" })?;
        if tr.bpfp_trend == Direction::Increasing {
            let group = match tr.mfp_growth {
                Growth::Exponential => Some(Group::DenseNet),
                Growth::Linear => Some(Group::SqueezeNext),
                Growth::Unknown => None,
            };
            ev.push(Evidence::new(
                "group.case2",
                &[
                    ("bpfp_trend", "Increasing".into()),
                    ("mfp_growth", format!("{:?}", tr.mfp_growth)),
                ],
                vote_str(group),
            ));
            if group.is_some() {
                return Ok((group, ev));
            }
        }
        ev.push(Evidence::new(
            "group.unknown",
            &[("bpfp_trend", format!("{:?}", tr.bpfp_trend))],
            "unknown",
        ));
        Ok((None, ev))
    }

    fn compare(
        &self,
        fp: &Fingerprint,
        reference: &Fingerprint,
    ) -> Result<ComparisonVerdict, ClassifyError> {
        Ok(compare_to_reference(
            fp,
            reference,
            self.thresholds.metric_band,
        )?)
    }

    /// Intra-group stage against the group's reference fingerprint.
    pub fn predict_model(
        &self,
        fp: &Fingerprint,
        group: Group,
        reference: Option<&Fingerprint>,
    ) -> Result<(Vec<String>, Vec<Evidence>), ClassifyError> {
        let th = &self.thresholds;
        let names = |v: &[&str]| v.iter().map(|s| (*s).to_string()).collect::<Vec<_>>();
        let need_ref = || {
            reference.ok_or_else(|| ClassifyError::MissingReference {
                group: group.to_string(),
            })
        };
        let need_mix = || {
            fp.kernel_mix.ok_or(ClassifyError::InsufficientEvidence {
                channel: "kernel_mix",
            })
        };
        let need_metric = |c: &ComparisonVerdict, m: Metric| {
            c.get(m)
                .cloned()
                .ok_or(ClassifyError::InsufficientEvidence { channel: "series" })
        };
        let mut ev = Vec::new();
        let candidates = match group {
            Group::DenseNet | Group::NonCompact => {
                let only = group.members();
                ev.push(Evidence::new("model.single", &[], only[0]));
                names(only)
            }
            Group::InceptionNet => {
                let t = need_mix()?.gemv2t_pct;
                let c = if t < th.negligible_pct {
                    names(&["GoogLeNet"])
                } else {
                    names(&["Inception-V2", "SE-BN-Inception"])
                };
                ev.push(Evidence::new(
                    "model.inception",
                    &[("gemv2T", pct(t))],
                    c.join(" | "),
                ));
                c
            }
            Group::MobileNet => {
                let cmp = self.compare(fp, need_ref()?)?;
                let epf = need_metric(&cmp, Metric::Epf)?;
                let tp = need_metric(&cmp, Metric::Tp)?;
                let v2 = epf.verdict == Verdict::HigherAtAllB && tp.verdict == Verdict::LowerAtAllB;
                let pick = if v2 { "MobileNet-V2" } else { "MobileNet-V1" };
                ev.push(Evidence::new(
                    "model.mobilenet",
                    &[
                        ("EPF", format!("{:?}", epf.verdict)),
                        ("Tp", format!("{:?}", tp.verdict)),
                    ],
                    pick,
                ));
                if let Some(m) = cmp.get(Metric::Mfp) {
                    let higher = higher_at_high_b(m.verdict);
                    ev.push(Evidence::new(
                        "model.mobilenet.mfp",
                        &[("Mfp", format!("{:?}", m.verdict))],
                        if higher == v2 {
                            "consistent"
                        } else {
                            "inconsistent"
                        },
                    ));
                }
                names(&[pick])
            }
            Group::ShuffleNet => {
                let cmp = self.compare(fp, need_ref()?)?;
                let m = need_metric(&cmp, Metric::Mfp)?;
                let pick = if higher_at_high_b(m.verdict) {
                    "ShuffleNet-V2"
                } else {
                    "ShuffleNet-V1"
                };
                ev.push(Evidence::new(
                    "model.shufflenet",
                    &[
                        ("Mfp", format!("{:?}", m.verdict)),
                        ("Mfp_ratio_high_B", format!("{:.3}", m.high_b_ratio())),
                    ],
                    pick,
                ));
                names(&[pick])
            }
            Group::SqueezeNet => {
                let cmp = self.compare(fp, need_ref()?)?;
                let epf = cmp.verdict(Metric::Epf);
                let mfp = cmp.verdict(Metric::Mfp);
                if epf.is_none() && mfp.is_none() {
                    return Err(ClassifyError::InsufficientEvidence { channel: "series" });
                }
                let lower = |v: Option<Verdict>| v == Some(Verdict::LowerAtAllB);
                let pick = if lower(epf) || lower(mfp) {
                    "SqueezeNet-V1.1"
                } else {
                    "SqueezeNet-V1.0"
                };
                ev.push(Evidence::new(
                    "model.squeezenet",
                    &[("EPF", format!("{epf:?}")), ("Mfp", format!("{mfp:?}"))],
                    pick,
                ));
                names(&[pick])
            }
            Group::SqueezeNext => {
                let reference = need_ref()?;
                let mix = need_mix()?;
                let cmp = self.compare(fp, reference)?;
                let m = need_metric(&cmp, Metric::Mfp)?;
                let wide =
                    m.high_b_ratio() >= th.wide_mfp_ratio && mix.gemv2n_pct < th.wide_gemv2n_max;
                ev.push(Evidence::new(
                    "model.squeezenext.width",
                    &[
                        ("Mfp_ratio_high_B", format!("{:.3}", m.high_b_ratio())),
                        ("gemv2N", pct(mix.gemv2n_pct)),
                    ],
                    if wide { "2.0" } else { "1.0" },
                ));
                if wide {
                    let pick = if mix.gemv_total() < th.v5_gemv_total_max {
                        "2.0-SqNxt-23v5"
                    } else {
                        "2.0-SqNxt-23"
                    };
                    ev.push(Evidence::new(
                        "model.squeezenext.wide",
                        &[("gemv_total", pct(mix.gemv_total()))],
                        pick,
                    ));
                    names(&[pick])
                } else {
                    let r = reference
                        .kernel_mix
                        .ok_or(ClassifyError::InsufficientEvidence {
                            channel: "reference kernel_mix",
                        })?;
                    let c = self.narrow_squeezenext(&mix, &r);
                    ev.push(Evidence::new(
                        "model.squeezenext.narrow",
                        &[
                            (
                                "gemv2T",
                                format!("{} vs {}", pct(mix.gemv2t_pct), pct(r.gemv2t_pct)),
                            ),
                            (
                                "gemv2N",
                                format!("{} vs {}", pct(mix.gemv2n_pct), pct(r.gemv2n_pct)),
                            ),
                            (
                                "gemmk1",
                                format!("{} vs {}", pct(mix.gemmk1_pct), pct(r.gemmk1_pct)),
                            ),
                        ],
                        format!("{} (best-effort)", c.join(" | ")),
                    ));
                    c
                }
            }
        };
        Ok((candidates, ev))
    }

    /// Width-1.0 SqueezeNext siblings, told apart by kernel shares relative
    /// to the reference; no match leaves all three.
    fn narrow_squeezenext(&self, mix: &KernelMix, r: &KernelMix) -> Vec<String> {
        let band = self.thresholds.share_match_band;
        let cmp = |v: f64, reference: f64| {
            if v > reference * (1.0 + band) {
                1
            } else if v < reference * (1.0 - band) {
                -1
            } else {
                0
            }
        };
        let (t, n, k) = (
            cmp(mix.gemv2t_pct, r.gemv2t_pct),
            cmp(mix.gemv2n_pct, r.gemv2n_pct),
            cmp(mix.gemmk1_pct, r.gemmk1_pct),
        );
        let pick: &[&str] = match (t, n, k) {
            (_, 1, 1) => &["1.0-SqNxt-23v5"],
            (-1, _, -1) => &["1.0-G-SqNxt-23"],
            (0, 0, 0) => &["1.0-SqNxt-23"],
            _ => &["1.0-SqNxt-23", "1.0-G-SqNxt-23", "1.0-SqNxt-23v5"],
        };
        pick.iter().map(|s| (*s).to_string()).collect()
    }

    /// Components, group and model with the full evidence chain.
    pub fn classify(
        &self,
        fp: &Fingerprint,
        refs: &References,
    ) -> Result<PredictionReport, ClassifyError> {
        if fp.kernel_mix.is_none() && !fp.series.has_any() {
            return Err(ClassifyError::InsufficientEvidence {
                channel: "kernel_mix and series",
            });
        }
        fp.validate()?;
        let mut evidence = Vec::new();
        let components = match &fp.kernel_mix {
            Some(mix) => {
                let (set, ev) = self.predict_components(mix);
                evidence.push(ev);
                set
            }
            None => ComponentSet::new(),
        };
        let (group, ev) = self.predict_group(fp)?;
        evidence.extend(ev);
        let candidates = match group {
            Some(g) => {
                let (c, ev) = self.predict_model(fp, g, refs.get(g))?;
                evidence.extend(ev);
                c
            }
            None => Vec::new(),
        };
        Ok(PredictionReport {
            components,
            group,
            ambiguous: candidates.len() > 1,
            candidates,
            evidence,
        })
    }
}

fn higher_at_high_b(v: Verdict) -> bool {
    matches!(v, Verdict::HigherAtHighB | Verdict::HigherAtAllB)
}

fn vote_str(g: Option<Group>) -> String {
    g.map_or_else(|| "no vote".to_string(), |g| g.to_string())
}

/// Building blocks implied by a kernel mix, with default thresholds.
pub fn predict_components(mix: &KernelMix) -> ComponentSet {
    Classifier::default().predict_components(mix).0
}

pub fn predict_group(fp: &Fingerprint) -> Result<(Option<Group>, Vec<Evidence>), ClassifyError> {
    Classifier::default().predict_group(fp)
}

/// Intra-group prediction as a standalone report.
pub fn predict_model(
    fp: &Fingerprint,
    group: Group,
    reference: &Fingerprint,
) -> Result<PredictionReport, ClassifyError> {
    let c = Classifier::default();
    let (candidates, evidence) = c.predict_model(fp, group, Some(reference))?;
    Ok(PredictionReport {
        components: fp
            .kernel_mix
            .map(|m| c.predict_components(&m).0)
            .unwrap_or_default(),
        group: Some(group),
        ambiguous: candidates.len() > 1,
        candidates,
        evidence,
    })
}

pub fn classify(fp: &Fingerprint, refs: &References) -> Result<PredictionReport, ClassifyError> {
    Classifier::default().classify(fp, refs)
}
