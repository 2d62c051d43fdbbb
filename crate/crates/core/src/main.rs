use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use fgaut::automorphisms::Automorphism;
use fgaut::characterization::decompose_inverted;
use fgaut::error::{Error, Result};
use fgaut::harness::{emit_report, meskin_census, run, ReportFormat, Suite};
use fgaut::involutions::{
    extract_invariants_with, find_canonical_basis, CanonicalData, SearchConfig,
};
use fgaut::stallings::{fixed_subgroup_approx, graph_rank};
use fgaut::whitehead::{is_primitive, whitehead_minimize};
use fgaut::words::Word;

/// Rank assumed for words given without `--rank` before it is inferred.
const PARSE_RANK: usize = 1 << 16;

#[derive(Parser)]
#[command(
    name = "fgaut",
    version,
    about = "Words and automorphisms of free groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Rank of the free group; inferred from the input when omitted.
    #[arg(long, global = true)]
    rank: Option<usize>,

    #[arg(long, global = true, env = "FGAUT_SEED", default_value_t = 0)]
    seed: u64,

    /// Trials per suite; each suite has its own default.
    #[arg(long, global = true)]
    trials: Option<usize>,

    /// Word-length budget for fixed-word enumeration.
    #[arg(long, global = true, default_value_t = 10)]
    max_len: usize,

    /// Plateau depth of the canonical-basis search.
    #[arg(long, global = true, default_value_t = 4)]
    depth: usize,

    #[arg(long, global = true)]
    json: bool,

    #[arg(long, global = true)]
    word: Option<String>,

    /// Path to an automorphism in JSON form; repeat for `compose`.
    #[arg(long, global = true)]
    aut: Vec<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Free and cyclic reduction of a word.
    Reduce,
    /// Image of a word under an automorphism.
    Apply,
    /// Composite of the given automorphisms, the last one acting first.
    Compose,
    /// Conjugacy invariants and canonical basis of an involution.
    ClassifyInvolution,
    /// Whitehead minimization and primitivity.
    IsPrimitive,
    /// Subgroup generated by the short fixed words of an automorphism.
    FixSubgroup,
    /// Writes an element inverted by a canonical involution as phi(w) x w^-1.
    DecomposeInverted,
    /// Runs a verification suite, or `all` of them.
    Verify { suite: String },
    /// Counts conjugacy classes of involutions by canonical shape.
    Census,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn word_arg(cli: &Cli, rank: Option<usize>) -> Result<Word> {
    let text = cli
        .word
        .as_deref()
        .ok_or_else(|| Error::Precondition("--word is required".into()))?;
    if let Some(r) = rank.or(cli.rank) {
        return Word::parse(text, r);
    }
    let w = Word::parse(text, PARSE_RANK)?;
    let used = w.letters().iter().map(|l| l.index()).max().unwrap_or(1);
    w.with_rank(used)
}

fn load(path: &Path) -> Result<Automorphism> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Precondition(format!("cannot read {}: {e}", path.display())))?;
    Automorphism::from_json(&text)
}

fn single_aut(cli: &Cli) -> Result<Automorphism> {
    match cli.aut.as_slice() {
        [p] => load(p),
        _ => Err(Error::Precondition("exactly one --aut is required".into())),
    }
}

fn print(cli: &Cli, value: serde_json::Value, text: String) {
    if cli.json {
        println!(
            "{}",
            serde_json::to_string_pretty(&value).expect("serializable")
        );
    } else {
        print!("{text}");
    }
}

fn execute(cli: &Cli) -> Result<bool> {
    let config = SearchConfig {
        depth: cli.depth,
        ..SearchConfig::default()
    };
    match &cli.command {
        Command::Reduce => {
            let w = word_arg(cli, None)?;
            let (core, conj) = w.cyclic_reduce();
            print(
                cli,
                json!({"rank": w.rank(), "reduced": w, "length": w.len(),
                       "cyclic_core": core, "conjugator": conj}),
                format!("{w}\ncyclic core {core}, conjugator {conj}\n"),
            );
        }
        Command::Apply => {
            let f = single_aut(cli)?;
            let w = word_arg(cli, Some(f.rank()))?;
            let image = f.try_apply(&w)?;
            print(
                cli,
                json!({"word": w, "image": image}),
                format!("{image}\n"),
            );
        }
        Command::Compose => {
            if cli.aut.is_empty() {
                return Err(Error::Precondition("at least one --aut is required".into()));
            }
            let mut maps = cli.aut.iter().map(|p| load(p));
            let mut acc = maps.next().expect("nonempty")?;
            for g in maps {
                acc = acc.compose(&g?)?;
            }
            let value: serde_json::Value =
                serde_json::from_str(&acc.to_json()).expect("valid json");
            print(cli, value, format!("{acc}\n"));
        }
        Command::ClassifyInvolution => {
            let f = single_aut(cli)?;
            let inv = extract_invariants_with(&f, cli.max_len, &config)?;
            let basis = find_canonical_basis(&f, &config).map(|b| b.basis());
            let mut text = format!(
                "soft: {}\nfix rank: {:?}\nblocks: {:?}\n",
                inv.soft, inv.fix_rank, inv.blocks
            );
            match (&inv.canonical, &basis) {
                (Some(d), Some(b)) => {
                    let b: Vec<String> = b.iter().map(Word::to_string).collect();
                    text += &format!("canonical shape {d}\nbasis [{}]\n", b.join(", "));
                }
                _ => text += "no canonical basis found within the search budget\n",
            }
            print(cli, json!({"invariants": inv, "basis": basis}), text);
        }
        Command::IsPrimitive => {
            let w = word_arg(cli, None)?;
            let trace = whitehead_minimize(&w);
            let primitive = is_primitive(&w);
            print(
                cli,
                json!({"word": w, "primitive": primitive, "minimal": trace.end,
                       "moves": trace.move_labels()}),
                format!(
                    "{}\nminimal cyclic form {} after {} moves\n",
                    if primitive {
                        "primitive"
                    } else {
                        "not primitive"
                    },
                    trace.end,
                    trace.moves.len()
                ),
            );
        }
        Command::FixSubgroup => {
            let f = single_aut(cli)?;
            let g = fixed_subgroup_approx(&f, cli.max_len)?;
            let basis: Vec<String> = g.basis().iter().map(Word::to_string).collect();
            print(
                cli,
                json!({"max_len": cli.max_len, "rank": graph_rank(&g), "basis": basis,
                       "edges": g.edges()}),
                format!(
                    "rank {} (fixed words up to length {})\nbasis [{}]\n{g}",
                    graph_rank(&g),
                    cli.max_len,
                    basis.join(", ")
                ),
            );
        }
        Command::DecomposeInverted => {
            let phi = single_aut(cli)?;
            let a = word_arg(cli, Some(phi.rank()))?;
            let d = decompose_inverted(&phi, &a)?;
            let head = d
                .head
                .map(|h| format!("x{h}"))
                .unwrap_or_else(|| "1".into());
            print(
                cli,
                json!({"a": a, "w": d.w, "head": d.head.map(|h| format!("x{h}"))}),
                format!("w = {}\nhead = {head}\n", d.w),
            );
        }
        Command::Verify { suite } => return verify(cli, suite),
        Command::Census => {
            let rank = cli.rank.unwrap_or(2);
            let c = meskin_census(rank);
            let shapes: Vec<String> = CanonicalData::enumerate(rank)
                .iter()
                .map(|d| format!("{d}{}", if d.is_soft() { " soft" } else { "" }))
                .collect();
            print(
                cli,
                json!({"rank": rank, "total": c.total(), "soft": c.soft,
                       "non_soft": c.non_soft, "classes": shapes}),
                format!(
                    "rank {rank}: {} classes ({} soft, {} non-soft)\n{}\n",
                    c.total(),
                    c.soft,
                    c.non_soft,
                    shapes.join("\n")
                ),
            );
        }
    }
    Ok(true)
}

fn verify(cli: &Cli, name: &str) -> Result<bool> {
    let suites: Vec<Suite> = if name == "all" {
        Suite::ALL.to_vec()
    } else {
        vec![name.parse()?]
    };
    let format = if cli.json {
        ReportFormat::Json
    } else {
        ReportFormat::Text
    };
    let mut ok = true;
    for s in suites {
        let rank = match cli.rank {
            Some(r) if s.supports_rank(r) => r,
            Some(r) if name == "all" => {
                eprintln!("skipping {}: rank {r} unsupported", s.name());
                continue;
            }
            Some(r) => r,
            None => s.min_rank(),
        };
        let report = run(s, rank, cli.trials.unwrap_or(s.default_trials()), cli.seed)?;
        ok &= report.ok();
        print!("{}", emit_report(&report, format));
    }
    Ok(ok)
}
