//! Synthesizes side-channel series for every bundled model on both GPU
//! profiles and prints the trend classes the attack reads.
//!
//! cargo run --example synth_sweep

use peepkit::fingerprint::extract_trends;
use peepkit::synth::{synth_kernel_mix, synth_series, HardwareProfile};
use peepkit::zoo;

fn main() -> anyhow::Result<()> {
    for hw in [HardwareProfile::p100(), HardwareProfile::p4000()] {
        let batches = hw.default_batch_sizes();
        println!("{} (B = {batches:?})", hw.id);
        for arch in zoo::load_zoo()? {
            let s = synth_series(&arch, &hw, &batches)?;
            let t = extract_trends(&s);
            let ratio = s.bpfp_ratio().unwrap_or_default();
            println!(
                "  {:<16} mix {:<28} BPt/FPt {:.2}..{:.2} {:<11} Mfp {:<11} Tp {:<20} EPF {:<10}{}",
                arch.name(),
                synth_kernel_mix(&arch)?.to_string(),
                ratio.first().copied().unwrap_or(f64::NAN),
                ratio.last().copied().unwrap_or(f64::NAN),
                format!("{:?}", t.bpfp_trend),
                format!("{:?}", t.mfp_growth),
                format!("{:?}", t.tp_trend),
                format!("{:?}", t.epf_trend),
                s.oom_at_batch
                    .map(|b| format!(" OOM at B={b}"))
                    .unwrap_or_default(),
            );
        }
    }
    Ok(())
}
