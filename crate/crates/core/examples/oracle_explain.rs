//! Shows the linear system the oracle solves for one pair, its kernel, and a
//! check of each kernel vector against the full module relations.
//!
//!     cargo run --example oracle_explain -- sln:3:2 "0,0;s1" "0,0;s2,s3"

use hecke_ext::ext_oracle::{build_system, coboundary, verify_solution};
use hecke_ext::{ext_dimension, oracle_ext_dimension, parse_character, presets};

fn main() -> hecke_ext::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let (spec, from, to) = match args.as_slice() {
        [s, f, t] => (s.as_str(), f.as_str(), t.as_str()),
        _ => ("sl2:5", "0;s0", "0;s1"),
    };
    let d = presets::parse(spec)?.datum;
    let (a, b) = (parse_character(&d, from)?, parse_character(&d, to)?);

    let sys = build_system(&d, &a, &b);
    print!("{}", sys.explain_tsv(&d));
    let kernel = sys.kernel_basis();
    println!("kernel basis over F_{}: {kernel:?}", d.p());
    for v in &kernel {
        println!("  {v:?} defines a module: {}", verify_solution(&d, &a, &b, v));
    }
    if a.lambda() == b.lambda() && a.subset() != b.subset() {
        println!("coboundary {:?} (quotiented out)", coboundary(&d, &a, &b));
    }

    let f = ext_dimension(&d, &a, &b);
    println!("oracle {}, formula {}", oracle_ext_dimension(&d, &a, &b)?, f.dimension);
    for (s, status) in &f.per_reflection {
        println!("  a_{}: {status}", d.coxeter().label(*s));
    }
    Ok(())
}
