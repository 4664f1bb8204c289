//! Scans presets for ordered pairs where the closed form and the oracle disagree.
//!
//!     cargo run --example formula_vs_oracle -- sl2:5 sln:4:3

use hecke_ext::ext_oracle::build_system;
use hecke_ext::{enumerate_hecke_characters, ext_dimension, is_supersingular, oracle_ext_dimension, presets};

fn main() -> hecke_ext::Result<()> {
    let mut specs: Vec<String> = std::env::args().skip(1).collect();
    if specs.is_empty() {
        specs = ["sl2:5", "sl2:7", "sln:3:2", "sln:3:3", "sln:4:3", "u11:2", "u11:3", "u11:4", "u21:2", "u21:3"]
            .map(String::from)
            .to_vec();
    }
    for spec in &specs {
        let d = presets::parse(spec)?.datum;
        let chars = enumerate_hecke_characters(&d, false, 100_000)?;
        let mut total = 0;
        let mut bad = Vec::new();
        for a in &chars {
            for b in &chars {
                total += 1;
                let f = ext_dimension(&d, a, b);
                let o = oracle_ext_dimension(&d, a, b)?;
                if f.dimension != o {
                    bad.push((a, b, f, o));
                }
            }
        }
        println!("{spec}: {} of {total} ordered pairs disagree", bad.len());
        for (a, b, f, o) in bad {
            let ss = is_supersingular(&d, a) && is_supersingular(&d, b);
            let kernel = build_system(&d, a, b).kernel_basis();
            println!(
                "  ({}, {})  formula {} [{} hyp2={}]  oracle {o}  supersingular={ss}  kernel={kernel:?}",
                a.display(&d),
                b.display(&d),
                f.dimension,
                f.case_tag,
                f.hyp2
            );
        }
    }
    Ok(())
}
