//! SL_3 over F_2: xi_{1,{s1}} and xi_{1,{s2,s3}} are linked by an extension
//! but no diagram rotation moves one to the other, so blocks are coarser
//! than packets.

use hecke_ext::quiver::supersingular_nodes;
use hecke_ext::{blocks, build_quiver, compare_partitions, l_packets, presets, Engine};

fn main() -> hecke_ext::Result<()> {
    let preset = presets::sl_n(3, 2)?;
    let d = &preset.datum;
    let quiver = build_quiver(d, Engine::Formula, false, 1000)?;
    let show = |part: &[hecke_ext::HeckeCharacter]| part.iter().map(|x| x.display(d)).collect::<Vec<_>>().join("  ");

    let bl = blocks(&quiver);
    for b in &bl {
        println!("block   {}", show(b));
    }
    let packets = l_packets(d, &preset.automorphisms, &supersingular_nodes(d, 1000)?)?;
    for p in &packets {
        println!("packet  {}", show(p));
    }
    let cmp = compare_partitions(&bl, &packets)?;
    println!("equal: {}", cmp.equal);
    for i in cmp.mixed_blocks {
        println!("block {i} meets several packets");
    }
    Ok(())
}
