//! The Ext table of the supersingular characters of affine SL_2 over F_5,
//! computed with both engines.
//!
//!     cargo run --example sl2_example -- 7

use hecke_ext::{enumerate_hecke_characters, ext_dimension, oracle_ext_dimension, presets};

fn main() -> hecke_ext::Result<()> {
    let q = std::env::args().nth(1).map_or(Ok(5), |s| s.parse()).expect("q must be an integer");
    let d = presets::sl2(q)?.datum;
    let all = enumerate_hecke_characters(&d, false, 10_000)?;
    let ss = enumerate_hecke_characters(&d, true, 10_000)?;
    println!("{}: {} characters, {} supersingular", d.name(), all.len(), ss.len());

    for a in &ss {
        for b in &ss {
            let f = ext_dimension(&d, a, b);
            let o = oracle_ext_dimension(&d, a, b)?;
            if f.dimension > 0 || o > 0 {
                println!(
                    "  Ext^1({:>6}, {:>6}) = {}  (oracle {o}, case {})",
                    a.display(&d),
                    b.display(&d),
                    f.dimension,
                    f.case_tag
                );
            }
        }
    }
    Ok(())
}
