//! For trivial lambda on SL_3, disjoint nonempty I1, I2 always give a
//! one-dimensional Ext^1, because every pair of reflections has order 3.

use hecke_ext::{ext_dimension, make_character, oracle_ext_dimension, presets};

fn main() -> hecke_ext::Result<()> {
    for q in [2, 3, 4] {
        let d = presets::sl_n(3, q)?.datum;
        let cox = d.coxeter();
        let trivial = d.torus().trivial_character();
        println!("{}", d.name());
        for i1 in cox.all().subsets() {
            for i2 in cox.all().subsets() {
                if i1.is_empty() || i2.is_empty() || !i1.intersection(i2).is_empty() {
                    continue;
                }
                let a = make_character(&d, trivial.clone(), i1)?;
                let b = make_character(&d, trivial.clone(), i2)?;
                let f = ext_dimension(&d, &a, &b);
                let o = oracle_ext_dimension(&d, &a, &b)?;
                println!(
                    "  I1 = {{{}}}, I2 = {{{}}}: {} (oracle {o})",
                    cox.format_set(i1),
                    cox.format_set(i2),
                    f.dimension
                );
            }
        }
    }
    Ok(())
}
