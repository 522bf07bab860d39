//! Secures MobileNet-V1 with group convolutions across the default sweep of
//! channels per group, then checks whether the attack still identifies it.
//!
//! cargo run --example defense_sweep

use peepkit::classifier::Classifier;
use peepkit::defense::{
    evaluate_confusability, overhead_report, secure_transform, DefenseConfig, DEFAULT_SWEEP,
};
use peepkit::synth::HardwareProfile;
use peepkit::zoo;

fn main() -> anyhow::Result<()> {
    let base = zoo::bundled("MobileNet-V1")?;
    let classifier = Classifier::default();
    println!(
        "{:>3} {:>8} {:>7}  {:<8} {:>10}  prediction",
        "G", "ΔMc %", "ΔP %", "defended", "disparity"
    );
    for hw in [HardwareProfile::p100(), HardwareProfile::p4000()] {
        println!("{}", hw.id);
        for g in DEFAULT_SWEEP {
            let secured = secure_transform(&base, DefenseConfig::new(g)?)?;
            let cost = overhead_report(&base, &secured)?;
            let c = evaluate_confusability(&base, &secured, &hw, &classifier, 0)?;
            println!(
                "{g:>3} {:>8.2} {:>7.2}  {:<8} {:>10.3}  {}",
                cost.delta_mc_pct,
                cost.delta_p_pct,
                c.defended,
                c.disparity,
                c.prediction.candidates.join(" | ")
            );
        }
    }
    Ok(())
}
