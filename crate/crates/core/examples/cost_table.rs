//! Parameters, activations and MACs for every bundled model, plus the
//! per-layer breakdown of one of them.
//!
//! cargo run --example cost_table [-- MobileNet-V1]

use peepkit::arch::{count_activations, count_macs, count_params};
use peepkit::zoo;

fn main() -> anyhow::Result<()> {
    println!(
        "{:<16} {:>8} {:>8} {:>8} {:>7} {:>8} {:>7}",
        "model", "P(M)", "A(M)", "Mc(M)", "A/P", "Mc/P", "Mc/A"
    );
    for (name, s) in zoo::zoo_table()? {
        println!(
            "{name:<16} {:>8.2} {:>8.2} {:>8.0} {:>7.2} {:>8.2} {:>7.2}",
            s.params_m(),
            s.activations_m(),
            s.macs_m(),
            s.activations_per_param().unwrap_or(f64::NAN),
            s.weight_reuse().unwrap_or(f64::NAN),
            s.activation_reuse().unwrap_or(f64::NAN),
        );
    }

    let name = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "MobileNet-V1".into());
    let arch = zoo::bundled(&name)?;
    println!("\n{name}: per-layer costs");
    for (id, l) in arch.layers() {
        println!(
            "  {id:<24} {:<16} {:>4}x{:<4} -> {:>4}x{:<4} P {:>9} A {:>9} Mc {:>11}",
            l.kind(),
            l.in_channels(),
            l.in_size(),
            l.out_channels(),
            l.out_size(),
            count_params(l),
            count_activations(l),
            count_macs(l)
        );
    }
    Ok(())
}
