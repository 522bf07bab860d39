//! Rewrites the bundled `zoo/*.json` files from the in-code recipes and
//! prints the resulting cost table.
//!
//! cargo run --example regenerate_zoo

use std::path::Path;

use anyhow::Context;
use peepkit::recipes::RECIPES;
use peepkit::zoo::to_json;

fn main() -> anyhow::Result<()> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("zoo");
    for (name, stem, recipe) in RECIPES {
        let spec = recipe().with_context(|| format!("building {name}"))?;
        let path = dir.join(format!("{stem}.json"));
        std::fs::write(&path, to_json(&spec))
            .with_context(|| format!("writing {}", path.display()))?;
        println!("{name:<16} {}", spec.aggregate_stats()?);
    }
    Ok(())
}
