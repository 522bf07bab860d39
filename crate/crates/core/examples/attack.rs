//! Runs the two-stage attack on synthesized fingerprints of every bundled
//! model and prints the prediction with its evidence chain for one victim.
//!
//! cargo run --example attack [-- ShuffleNet-V2]

use peepkit::classifier::{Classifier, References};
use peepkit::synth::{synth_fingerprint, HardwareProfile};
use peepkit::zoo;

fn main() -> anyhow::Result<()> {
    let hw = HardwareProfile::p100();
    let batches = hw.default_batch_sizes();
    let refs = References::synthesized(&hw, &batches)?;
    let classifier = Classifier::default();

    for (seed, arch) in zoo::load_zoo()?.iter().enumerate() {
        let fp = synth_fingerprint(arch, &hw, &batches, seed as u64)?;
        let report = classifier.classify(&fp, &refs)?;
        let group = report
            .group
            .map_or("unknown".to_string(), |g| g.to_string());
        println!(
            "{:<16} -> {group:<12} {}",
            arch.name(),
            report.candidates.join(" | ")
        );
    }

    let name = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "MobileNet-V2".into());
    let victim = zoo::bundled(&name)?;
    let report = classifier.classify(&synth_fingerprint(&victim, &hw, &batches, 7)?, &refs)?;
    println!("\n{name}:\n{report}");
    Ok(())
}
