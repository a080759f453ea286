//! Batch front end: parse JSON inputs, run checks and normalizations,
//! render diagrams and movies, and execute the built-in verification
//! suites.
//!
//! Exit codes: 0 equal/ok, 1 unequal or suite failures, 2 input or
//! precondition error.

mod dto;
mod render;
mod selftest;

use clap::{Args, Parser, Subcommand};
use dto::*;
use graycalc_core::gray::Computad;
use graycalc_core::movie::Movie;
use graycalc_core::normalize::{
    composition_iso, decide_2cell_equality, decompose_1cell, eliminate_units, iso_1cells,
    loop_invariant, table_computad, to_normal_form_N, tsnf,
};
use graycalc_core::pseudomonoid::{maclane_check, MacLaneFlavor};
use serde::de::DeserializeOwned;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "graycalc", version, about)]
struct Cli {
    /// Step budget scale for long-running procedures and suites.
    #[arg(long, global = true, default_value_t = 1)]
    budget: usize,
    /// Seed for randomized suites.
    #[arg(long, global = true, default_value_t = 2026)]
    seed: u64,
    /// Emit machine-readable JSON even for textual commands.
    #[arg(long, global = true, default_value_t = false)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct TableArgs {
    /// Ambient flavor: naked | braided | symmetric.
    #[arg(long)]
    row: String,
    /// Pseudomonoid computad: p | pbr | psym.
    #[arg(long)]
    col: String,
}

#[derive(Subcommand)]
enum Command {
    /// Decide isomorphism of 1-cells or equality of 2-cells, or run the
    /// internal-data coherence check.
    #[command(subcommand)]
    Check(CheckCommand),
    /// Rewriting procedures on movies.
    #[command(subcommand)]
    Normalize(NormalizeCommand),
    /// Compute the absorbed-braid invariant of a loop.
    Invariant {
        #[command(flatten)]
        table: TableArgs,
        movie: PathBuf,
    },
    /// The composition 2-cell of two standard-form 1-cells.
    Compose {
        #[command(flatten)]
        table: TableArgs,
        f: PathBuf,
        g: PathBuf,
    },
    /// Decompose a 1-cell diagram into its combinatorial morphism.
    Decompose {
        #[command(flatten)]
        table: TableArgs,
        diagram: PathBuf,
    },
    /// Render a diagram or movie as ASCII text.
    Render {
        #[command(flatten)]
        table: TableArgs,
        file: PathBuf,
    },
    /// Run the built-in verification suites.
    Selftest {
        /// equalities | roundtrip | braid-oracle | all
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 4)]
        max_fiber: usize,
    },
}

#[derive(Subcommand)]
enum CheckCommand {
    /// Isomorphism of two 1-cell diagrams.
    #[command(name = "1cell")]
    OneCell {
        #[command(flatten)]
        table: TableArgs,
        a: PathBuf,
        b: PathBuf,
    },
    /// Equality of two parallel 2-cells.
    #[command(name = "2cell")]
    TwoCell {
        #[command(flatten)]
        table: TableArgs,
        a: PathBuf,
        b: PathBuf,
    },
    /// MacLane coherence for two internal-move routes.
    Maclane {
        /// braided | symmetric.
        #[arg(long)]
        flavor: String,
        src: PathBuf,
        l1: PathBuf,
        l2: PathBuf,
    },
}

#[derive(Subcommand)]
enum NormalizeCommand {
    /// Put an occurrence into top-string normal form.
    Tsnf {
        #[command(flatten)]
        table: TableArgs,
        /// Level of the occurrence in the source frame (0-indexed).
        #[arg(long)]
        occurrence: usize,
        movie: PathBuf,
    },
    /// Remove all unitor steps from a loop.
    Units {
        #[command(flatten)]
        table: TableArgs,
        movie: PathBuf,
    },
    /// Rewrite a unit-free loop into normal form N.
    Nf {
        #[command(flatten)]
        table: TableArgs,
        movie: PathBuf,
    },
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| format!("cannot parse {}: {e}", path.display()))
}

fn computad_for(table: &TableArgs) -> Result<Computad, String> {
    let row = parse_row(&table.row)?;
    let col = parse_col(&table.col)?;
    table_computad(row, col).ok_or_else(|| format!("invalid table entry {}/{}", table.row, table.col))
}

fn load_movie(c: &Computad, path: &Path) -> Result<Movie, String> {
    let dto: MovieDto = read_json(path)?;
    let movie = dto.to_core()?;
    movie.frames(c).map_err(|e| e.to_string())?;
    Ok(movie)
}

fn print_verdict(ok: bool, detail: serde_json::Value, certificate: Option<serde_json::Value>) -> ExitCode {
    let v = VerdictDto {
        ok,
        detail,
        certificate,
    };
    println!("{}", serde_json::to_string(&v).expect("serializable"));
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn input_error(e: String) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(2)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => input_error(e),
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match &cli.command {
        Command::Check(check) => run_check(&cli, check),
        Command::Normalize(norm) => run_normalize(&cli, norm),
        Command::Invariant { table, movie } => {
            let c = computad_for(table)?;
            let m = load_movie(&c, movie)?;
            let inv = loop_invariant(&c, &m).map_err(|e| e.to_string())?;
            let dto = InvariantDto::from_core(&inv);
            println!("{}", serde_json::to_string(&dto).expect("serializable"));
            Ok(ExitCode::SUCCESS)
        }
        Command::Compose { table, f, g } => {
            let c = computad_for(table)?;
            let col = parse_col(&table.col)?;
            let fd: DiagramDto = read_json(f)?;
            let gd: DiagramDto = read_json(g)?;
            let (dec, movie) = composition_iso(&c, &fd.to_core()?, &gd.to_core()?, col)
                .map_err(|e| e.to_string())?;
            let out = serde_json::json!({
                "morphism": ProMorphismDto::from_core(&dec.morphism),
                "function": dec.function.as_ref().map(MapDto::from_fs),
                "movie": MovieDto::from_core(&movie),
            });
            println!("{out}");
            Ok(ExitCode::SUCCESS)
        }
        Command::Decompose { table, diagram } => {
            let c = computad_for(table)?;
            let col = parse_col(&table.col)?;
            let dd: DiagramDto = read_json(diagram)?;
            let (dec, movie) =
                decompose_1cell(&c, &dd.to_core()?, col).map_err(|e| e.to_string())?;
            let out = serde_json::json!({
                "morphism": ProMorphismDto::from_core(&dec.morphism),
                "function": dec.function.as_ref().map(MapDto::from_fs),
                "movie": MovieDto::from_core(&movie),
            });
            println!("{out}");
            Ok(ExitCode::SUCCESS)
        }
        Command::Render { table, file } => {
            let c = computad_for(table)?;
            let text = std::fs::read_to_string(file)
                .map_err(|e| format!("cannot read {}: {e}", file.display()))?;
            let rendered = if let Ok(movie) = serde_json::from_str::<MovieDto>(&text) {
                if movie.steps.is_empty() {
                    // might be a bare diagram too; render as movie anyway
                }
                render::render_movie(&c, &movie.to_core()?)?
            } else {
                let d: DiagramDto = serde_json::from_str(&text)
                    .map_err(|e| format!("not a diagram or movie: {e}"))?;
                render::render_diagram(&c, &d.to_core()?)?
            };
            if cli.json {
                println!(
                    "{}",
                    serde_json::json!({ "rendered": rendered })
                );
            } else {
                print!("{rendered}");
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Selftest { suite, max_fiber } => {
            let reports = selftest::run_suite(suite, cli.seed, *max_fiber, cli.budget);
            let mut failed = 0usize;
            for r in &reports {
                println!(
                    "{}",
                    serde_json::json!({
                        "suite": r.name,
                        "passed": r.passed,
                        "failed": r.failed,
                        "notes": r.notes,
                    })
                );
                failed += r.failed;
            }
            Ok(if failed == 0 {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
    }
}

fn run_check(cli: &Cli, check: &CheckCommand) -> Result<ExitCode, String> {
    let _ = cli;
    match check {
        CheckCommand::OneCell { table, a, b } => {
            let c = computad_for(table)?;
            let col = parse_col(&table.col)?;
            let da: DiagramDto = read_json(a)?;
            let db: DiagramDto = read_json(b)?;
            let verdict =
                iso_1cells(&c, col, &da.to_core()?, &db.to_core()?).map_err(|e| e.to_string())?;
            Ok(print_verdict(
                verdict,
                serde_json::json!({ "kind": "1cell-isomorphism" }),
                None,
            ))
        }
        CheckCommand::TwoCell { table, a, b } => {
            let c = computad_for(table)?;
            let row = parse_row(&table.row)?;
            let col = parse_col(&table.col)?;
            let ma = load_movie(&c, a)?;
            let mb = load_movie(&c, b)?;
            let (verdict, invariants) =
                decide_2cell_equality(&c, &ma, &mb, row, col).map_err(|e| e.to_string())?;
            let detail = match invariants {
                Some((ia, ib)) => serde_json::json!({
                    "kind": "2cell-equality",
                    "invariant_a": InvariantDto::from_core(&ia),
                    "invariant_b": InvariantDto::from_core(&ib),
                }),
                None => serde_json::json!({
                    "kind": "2cell-equality",
                    "note": "locally discrete entry: parallel 2-cells are equal",
                }),
            };
            Ok(print_verdict(verdict, detail, None))
        }
        CheckCommand::Maclane { flavor, src, l1, l2 } => {
            let flavor = match flavor.as_str() {
                "braided" => MacLaneFlavor::Braided,
                "symmetric" => MacLaneFlavor::Symmetric,
                other => return Err(format!("unknown flavor {other}")),
            };
            let sd: InternalDataDto = read_json(src)?;
            let m1: Vec<InternalMoveDto> = read_json(l1)?;
            let m2: Vec<InternalMoveDto> = read_json(l2)?;
            let src = sd.to_core()?;
            let l1 = m1
                .iter()
                .map(|m| m.to_core())
                .collect::<Result<Vec<_>, _>>()?;
            let l2 = m2
                .iter()
                .map(|m| m.to_core())
                .collect::<Result<Vec<_>, _>>()?;
            let verdict = maclane_check(flavor, &src, &l1, &l2).map_err(|e| e.to_string())?;
            Ok(print_verdict(
                verdict,
                serde_json::json!({ "kind": "maclane" }),
                None,
            ))
        }
    }
}

fn run_normalize(cli: &Cli, norm: &NormalizeCommand) -> Result<ExitCode, String> {
    let _ = cli;
    let emit = |movie: &Movie, cert: &graycalc_core::normalize::Certificate| -> ExitCode {
        let out = serde_json::json!({
            "movie": MovieDto::from_core(movie),
            "certificate_moves": cert.moves.len(),
        });
        println!("{out}");
        ExitCode::SUCCESS
    };
    match norm {
        NormalizeCommand::Tsnf {
            table,
            occurrence,
            movie,
        } => {
            let c = computad_for(table)?;
            let m = load_movie(&c, movie)?;
            let (out, cert) = tsnf(&c, &m, *occurrence).map_err(|e| e.to_string())?;
            Ok(emit(&out, &cert))
        }
        NormalizeCommand::Units { table, movie } => {
            let c = computad_for(table)?;
            let m = load_movie(&c, movie)?;
            let (out, cert) = eliminate_units(&c, &m).map_err(|e| e.to_string())?;
            Ok(emit(&out, &cert))
        }
        NormalizeCommand::Nf { table, movie } => {
            let c = computad_for(table)?;
            let m = load_movie(&c, movie)?;
            let (out, cert) = to_normal_form_N(&c, &m).map_err(|e| e.to_string())?;
            Ok(emit(&out, &cert))
        }
    }
}
