//! The `hecke-ext` command line, callable in-process through [`run`].

use std::fmt::Write as _;
use std::io::{Read, Write};

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use crate::datum::GroupDatum;
use crate::document::GroupDatumDocument;
use crate::error::{Error, Result};
use crate::ext_formula::{ext_dimension, ExtResult};
use crate::ext_oracle::{build_system, oracle_ext_dimension};
use crate::hecke_chars::{enumerate_hecke_characters, parse_character};
use crate::presets;
use crate::quiver::{blocks, compare_partitions, l_packets, DiagramAutomorphism, ExtQuiver};
use crate::torus::DEFAULT_ENUMERATION_BOUND;

pub const TSV_HEADER: &str = "# hecke-ext table v1";
pub const TSV_COLUMNS: &str = "from\tto\tdim\tcase\ti_lambda_i2\tdelta1\tdelta2\thyp2\twarnings";

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_BOUND: i32 = 3;
pub const EXIT_MISMATCH: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "hecke-ext", version, about = "Ext^1 between characters of affine pro-p Iwahori-Hecke algebras")]
struct Cli {
    /// Built-in datum, e.g. sl2:5, sln:3:2, u11:3, u21:2
    #[arg(long, global = true, conflicts_with = "datum")]
    preset: Option<String>,
    /// JSON group-datum document
    #[arg(long, global = true)]
    datum: Option<String>,
    /// Refuse to enumerate more than this many characters
    #[arg(long, global = true, default_value_t = DEFAULT_ENUMERATION_BOUND)]
    max_characters: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check every invariant of a group-datum document (`-` reads stdin)
    Validate { path: String },
    /// Dimension of Ext^1(FROM, TO); characters are written `phases;reflections`
    Ext {
        from: String,
        to: String,
        /// Also run the brute-force oracle and compare
        #[arg(long)]
        oracle: bool,
        /// Dump the oracle's constraint rows
        #[arg(long)]
        explain: bool,
        /// Exit 4 on engine mismatch; use the oracle for unverified Coxeter orders
        #[arg(long)]
        strict: bool,
    },
    /// All ordered pairs with nonzero Ext^1
    Table {
        #[arg(long)]
        oracle: bool,
        #[arg(long)]
        supersingular_only: bool,
        #[arg(long, value_enum, default_value_t = Format::Tsv)]
        format: Format,
        #[arg(long)]
        strict: bool,
    },
    /// Block decomposition of the supersingular characters
    Blocks {
        #[arg(long)]
        compare_l_packets: bool,
        #[arg(long)]
        oracle: bool,
    },
    /// Built-in data
    Presets {
        #[command(subcommand)]
        action: PresetAction,
    },
}

#[derive(Debug, Subcommand)]
enum PresetAction {
    List,
    Show {
        name: String,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Tsv,
    Dot,
}

/// Maps an error to the documented exit status.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_) | Error::Preset(_) => EXIT_PARSE,
        Error::BoundExceeded { .. } => EXIT_BOUND,
        Error::TheoryMismatch(_) => EXIT_MISMATCH,
        _ => EXIT_INVALID,
    }
}

/// Runs the CLI on `args` (program name first) and returns the exit status.
pub fn run<I, S>(args: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = err.write_all(text.as_bytes());
                return EXIT_PARSE;
            }
            let _ = out.write_all(text.as_bytes());
            return EXIT_OK;
        }
    };
    let mut report = Report::default();
    let code = match execute(&cli, stdin, &mut report) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(report.err, "error: {e}");
            exit_code(&e)
        }
    };
    let _ = out.write_all(report.out.as_bytes());
    let _ = err.write_all(report.err.as_bytes());
    code
}

// Output is buffered so that it is emitted in one piece, in order.
#[derive(Default)]
struct Report {
    out: String,
    err: String,
}

fn load(cli: &Cli, stdin: &mut dyn Read) -> Result<(GroupDatum, Vec<DiagramAutomorphism>)> {
    match (&cli.preset, &cli.datum) {
        (Some(spec), _) => {
            let p = presets::parse(spec)?;
            Ok((p.datum, p.automorphisms))
        }
        (None, Some(path)) => GroupDatumDocument::parse(&read_source(path, stdin)?)?.build(cli.max_characters),
        (None, None) => Err(Error::Parse("no datum given; pass --preset or --datum".into())),
    }
}

fn read_source(path: &str, stdin: &mut dyn Read) -> Result<String> {
    let mut text = String::new();
    if path == "-" {
        stdin.read_to_string(&mut text).map_err(|e| Error::Parse(format!("stdin: {e}")))?;
    } else {
        text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{path}: {e}")))?;
    }
    Ok(text)
}

fn execute(cli: &Cli, stdin: &mut dyn Read, r: &mut Report) -> Result<i32> {
    match &cli.command {
        Command::Validate { path } => validate(path, cli.max_characters, stdin, r),
        Command::Ext { from, to, oracle, explain, strict } => {
            let (datum, _) = load(cli, stdin)?;
            ext(&datum, from, to, *oracle, *explain, *strict, r)
        }
        Command::Table { oracle, supersingular_only, format, strict } => {
            let (datum, _) = load(cli, stdin)?;
            table(&datum, *oracle, *supersingular_only, *format, *strict, cli.max_characters, r)
        }
        Command::Blocks { compare_l_packets, oracle } => {
            let (datum, autos) = load(cli, stdin)?;
            blocks_report(&datum, &autos, *compare_l_packets, *oracle, cli.max_characters, r)
        }
        Command::Presets { action: PresetAction::List } => {
            for (spec, about) in presets::list() {
                let _ = writeln!(r.out, "{spec}\t{about}");
            }
            Ok(EXIT_OK)
        }
        Command::Presets { action: PresetAction::Show { name, json } } => {
            let preset = presets::parse(name)?;
            let doc = GroupDatumDocument::from_preset(&preset);
            if *json {
                r.out.push_str(&doc.to_json());
            } else {
                let _ = writeln!(r.out, "name\t{}", doc.name);
                let _ = writeln!(r.out, "p\t{}", doc.p);
                let _ = writeln!(r.out, "reflections\t{}", doc.reflections.join(","));
                let _ = writeln!(r.out, "zk_orders\t{:?}", doc.zk_orders);
                let _ = writeln!(r.out, "automorphisms\t{}", doc.automorphisms.len());
            }
            Ok(EXIT_OK)
        }
    }
}

fn unverified_warning(datum: &GroupDatum, r: &mut Report) -> bool {
    let cox = datum.coxeter();
    let pairs = cox.unverified_pairs();
    for (s, t, m) in &pairs {
        let _ = writeln!(
            r.err,
            "WARNING: UNVERIFIED m({},{}) = {m}: the closed form is only established for m in {{2,3,inf}}",
            cox.label(*s),
            cox.label(*t)
        );
    }
    !pairs.is_empty()
}

fn validate(path: &str, bound: u64, stdin: &mut dyn Read, r: &mut Report) -> Result<i32> {
    let doc = GroupDatumDocument::parse(&read_source(path, stdin)?)?;
    match doc.build(bound).and_then(|(d, autos)| {
        if !autos.is_empty() {
            crate::quiver::check_closed(&d, &autos)?;
        }
        Ok((d, autos))
    }) {
        Ok((datum, autos)) => {
            unverified_warning(&datum, r);
            let _ = writeln!(
                r.out,
                "valid\t{}\treflections={}\t|Z_k|={}\tautomorphisms={}",
                datum.name(),
                datum.coxeter().len(),
                datum.torus().group_order(),
                autos.len()
            );
            Ok(EXIT_OK)
        }
        Err(e) => {
            let _ = writeln!(r.out, "invalid\t{e}");
            Ok(exit_code(&e))
        }
    }
}

fn ext(
    datum: &GroupDatum,
    from: &str,
    to: &str,
    oracle: bool,
    explain: bool,
    strict: bool,
    r: &mut Report,
) -> Result<i32> {
    let xi1 = parse_character(datum, from)?;
    let xi2 = parse_character(datum, to)?;
    let unverified = unverified_warning(datum, r);
    let formula = ext_dimension(datum, &xi1, &xi2);
    let run_oracle = oracle || (strict && unverified);
    let oracle_dim = if run_oracle { Some(oracle_ext_dimension(datum, &xi1, &xi2)?) } else { None };
    let dim = match oracle_dim {
        Some(d) if strict && unverified => d,
        _ => formula.dimension,
    };

    let _ = writeln!(r.out, "from\t{}", xi1.display(datum));
    let _ = writeln!(r.out, "to\t{}", xi2.display(datum));
    let _ = writeln!(r.out, "dim\t{dim}");
    let _ = writeln!(r.out, "formula\t{}", formula.dimension);
    let _ = writeln!(r.out, "case\t{}", formula.case_tag);
    let _ = writeln!(r.out, "i_lambda_i2\t{}", datum.coxeter().format_set(formula.i_lambda_i2));
    let _ = writeln!(r.out, "delta1\t{}", formula.delta1);
    let _ = writeln!(r.out, "delta2\t{}", formula.delta2);
    let _ = writeln!(r.out, "hyp2\t{}", u8::from(formula.hyp2));
    for (s, status) in &formula.per_reflection {
        let _ = writeln!(r.out, "ledger\t{}\t{status}", datum.coxeter().label(*s));
    }
    for w in &formula.warnings {
        let _ = writeln!(r.out, "warning\t{w}");
    }
    let mut code = EXIT_OK;
    if let Some(o) = oracle_dim {
        let verdict = if o == formula.dimension { "MATCH" } else { "MISMATCH" };
        let _ = writeln!(r.out, "oracle\t{o}");
        let _ = writeln!(r.out, "verdict\t{verdict}");
        if strict && o != formula.dimension {
            code = EXIT_MISMATCH;
        }
    }
    if explain {
        r.out.push_str(&build_system(datum, &xi1, &xi2).explain_tsv(datum));
    }
    Ok(code)
}

struct Row {
    from: usize,
    to: usize,
    formula: ExtResult,
    oracle: Option<u32>,
}

fn table(
    datum: &GroupDatum,
    oracle: bool,
    supersingular_only: bool,
    format: Format,
    strict: bool,
    bound: u64,
    r: &mut Report,
) -> Result<i32> {
    let unverified = unverified_warning(datum, r);
    let use_oracle = oracle || (strict && unverified);
    let nodes = enumerate_hecke_characters(datum, supersingular_only, bound)?;
    let n = nodes.len();
    let rows = (0..n * n)
        .into_par_iter()
        .map(|k| {
            let (from, to) = (k / n, k % n);
            let formula = ext_dimension(datum, &nodes[from], &nodes[to]);
            let oracle = if use_oracle { Some(oracle_ext_dimension(datum, &nodes[from], &nodes[to])?) } else { None };
            Ok(Row { from, to, formula, oracle })
        })
        .collect::<Result<Vec<_>>>()?;

    let dim = |row: &Row| row.oracle.unwrap_or(row.formula.dimension);
    let mismatches = rows.iter().filter(|row| row.oracle.is_some_and(|o| o != row.formula.dimension)).count();
    match format {
        Format::Tsv => {
            let engine = if use_oracle { "oracle" } else { "formula" };
            let _ = writeln!(r.out, "{TSV_HEADER}\tdatum={}\tengine={engine}", datum.name());
            let _ = writeln!(r.out, "{TSV_COLUMNS}");
            for row in rows.iter().filter(|row| dim(row) > 0 || row.formula.dimension > 0) {
                let f = &row.formula;
                let mut warnings = f.warnings.clone();
                if let Some(o) = row.oracle.filter(|&o| o != f.dimension) {
                    warnings.push(format!("MISMATCH formula={} oracle={o}", f.dimension));
                }
                let _ = writeln!(
                    r.out,
                    "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
                    nodes[row.from].display(datum),
                    nodes[row.to].display(datum),
                    dim(row),
                    f.case_tag,
                    f.i_lambda_i2.len(),
                    f.delta1,
                    f.delta2,
                    u8::from(f.hyp2),
                    if warnings.is_empty() { "-".to_string() } else { warnings.join("; ") }
                );
            }
        }
        Format::Dot => {
            let edges = rows.iter().filter(|row| dim(row) > 0).map(|row| ((row.from, row.to), dim(row))).collect();
            let quiver = ExtQuiver { nodes: nodes.clone(), edges };
            r.out.push_str(&quiver.to_dot(datum));
        }
    }
    if mismatches > 0 {
        let _ = writeln!(r.err, "{mismatches} ordered pair(s) where formula and oracle disagree");
        if strict {
            return Ok(EXIT_MISMATCH);
        }
    }
    Ok(EXIT_OK)
}

fn blocks_report(
    datum: &GroupDatum,
    autos: &[DiagramAutomorphism],
    compare: bool,
    oracle: bool,
    bound: u64,
    r: &mut Report,
) -> Result<i32> {
    unverified_warning(datum, r);
    let engine = if oracle { crate::quiver::Engine::Oracle } else { crate::quiver::Engine::Formula };
    let nodes = enumerate_hecke_characters(datum, true, bound)?;
    let quiver = ExtQuiver::on_nodes(datum, nodes.clone(), engine)?;
    let show = |part: &[crate::HeckeCharacter]| part.iter().map(|x| x.display(datum)).collect::<Vec<_>>().join(" ");
    let bl = blocks(&quiver);
    let _ = writeln!(r.out, "# hecke-ext blocks v1\tdatum={}\tnodes={}", datum.name(), nodes.len());
    for (i, b) in bl.iter().enumerate() {
        let _ = writeln!(r.out, "block {i}\t{}", show(b));
    }
    for (i, j) in quiver.asymmetric_pairs() {
        let _ = writeln!(
            r.err,
            "note: Ext^1 is asymmetric on ({}, {})",
            quiver.nodes[i].display(datum),
            quiver.nodes[j].display(datum)
        );
    }
    if compare {
        let packets = l_packets(datum, autos, &nodes)?;
        for (i, p) in packets.iter().enumerate() {
            let _ = writeln!(r.out, "packet {i}\t{}", show(p));
        }
        let cmp = compare_partitions(&bl, &packets)?;
        let _ = writeln!(r.out, "verdict\t{}", if cmp.equal { "EQUAL" } else { "NOT EQUAL" });
        for &i in &cmp.mixed_blocks {
            let _ = writeln!(r.out, "witness\tblock {i} meets several packets\t{}", show(&bl[i]));
        }
        for &i in &cmp.split_packets {
            let _ = writeln!(r.out, "witness\tpacket {i} spans several blocks\t{}", show(&packets[i]));
        }
    }
    Ok(EXIT_OK)
}
