//! Supersingular characters of U(1,1) and U(2,1), their Ext quivers, and the
//! comparison of blocks with diagram-orbit packets.
//!
//!     cargo run --example unitary_groups -- 3

use hecke_ext::quiver::supersingular_nodes;
use hecke_ext::{blocks, build_quiver, compare_partitions, l_packets, presets, Engine};

fn main() -> hecke_ext::Result<()> {
    let q = std::env::args().nth(1).map_or(Ok(3), |s| s.parse()).expect("q must be an integer");
    for preset in [presets::u11(q)?, presets::u21(q)?] {
        let d = &preset.datum;
        let quiver = build_quiver(d, Engine::Oracle, false, 100_000)?;
        let bl = blocks(&quiver);
        println!("{}: {} supersingular characters, {} blocks", d.name(), quiver.nodes.len(), bl.len());
        for (i, j) in quiver.edges.keys() {
            let (a, b) = (&quiver.nodes[*i], &quiver.nodes[*j]);
            let s_a = d.coxeter().format_set(d.s_lambda(a.lambda()));
            println!("  {} -> {}: {}   S_lambda = {{{s_a}}}", a.display(d), b.display(d), quiver.edge(*i, *j));
        }
        let packets = l_packets(d, &preset.automorphisms, &supersingular_nodes(d, 100_000)?)?;
        let cmp = compare_partitions(&bl, &packets)?;
        println!("  blocks {} packets", if cmp.equal { "equal" } else { "differ from" });
    }
    Ok(())
}
