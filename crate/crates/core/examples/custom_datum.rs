//! Builds a group datum from JSON, here a rank-one torus with a pair of
//! reflections of order 4, which lies outside the range the closed form
//! covers. The formula answers with a warning; the oracle is exact.

use hecke_ext::document::GroupDatumDocument;
use hecke_ext::{enumerate_hecke_characters, ext_dimension, oracle_ext_dimension};

const DOC: &str = r#"{
  "name": "order-4 toy",
  "p": 3,
  "reflections": ["a", "b"],
  "coxeter": [[1, 4], [4, 1]],
  "zk_orders": [2],
  "actions": { "a": [[1]], "b": [[1]] },
  "subgroups": { "a": [[1]], "b": [[0]] }
}"#;

fn main() -> hecke_ext::Result<()> {
    let (d, _) = GroupDatumDocument::parse(DOC)?.build(1000)?;
    let chars = enumerate_hecke_characters(&d, false, 1000)?;
    for x in &chars {
        for y in &chars {
            let f = ext_dimension(&d, x, y);
            let o = oracle_ext_dimension(&d, x, y)?;
            let flag = if f.dimension == o { "" } else { "  <- differs" };
            println!("{:>6} -> {:>6}: formula {} oracle {o}{flag}", x.display(&d), y.display(&d), f.dimension);
        }
    }
    let warning = ext_dimension(&d, &chars[0], &chars[0]).warnings;
    println!("{}", warning.join("\n"));
    println!("\nround trip:\n{}", GroupDatumDocument::from_datum(&d, &[]).to_json());
    Ok(())
}
