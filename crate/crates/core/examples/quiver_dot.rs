//! Writes the Ext quiver of a preset as Graphviz, one cluster per block.
//!
//!     cargo run --example quiver_dot -- u11:3 | dot -Tsvg > u11.svg

use hecke_ext::{build_quiver, presets, Engine};

fn main() -> hecke_ext::Result<()> {
    let spec = std::env::args().nth(1).unwrap_or_else(|| "sl2:5".into());
    let d = presets::parse(&spec)?.datum;
    let quiver = build_quiver(&d, Engine::Formula, false, 100_000)?;
    print!("{}", quiver.to_dot(&d));
    Ok(())
}
