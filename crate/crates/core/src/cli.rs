//! Command-line front end.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::engine::{decode_state, initial_state, observe, perft_parallel, GameState, Rules, Side};
use crate::enumeration::{count_information_sets_with, BranchReading, CountParams};
use crate::infoset::infoset_size;
use crate::simulator::{
    format_sig6, games_csv, run_simulation, series_csv, summary_json, RevealMode, SimConfig,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_BAD_STATE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "jieqi", version, about = "Dark Chinese chess complexity toolkit")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Play uniform-random self-play games and write games.csv, series.csv and summary.json.
    Simulate {
        #[arg(long, default_value_t = 10_000, value_parser = clap::value_parser!(u64).range(1..))]
        games: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Plies without a capture before the game is drawn.
        #[arg(long, default_value_t = 40, value_parser = clap::value_parser!(u32).range(1..))]
        draw_plies: u32,
        /// Worker threads (default: all available cores).
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        workers: Option<u64>,
        #[arg(long, default_value = "out")]
        out_dir: PathBuf,
        /// Keep face-down guard-role pieces inside the palace.
        #[arg(long)]
        classic_dark_roles: bool,
        #[arg(long, value_enum, default_value_t = RevealArg::Eager)]
        reveal: RevealArg,
    },
    /// Count information sets over the whole game.
    CountInfosets {
        #[arg(long, default_value_t = 15)]
        pieces: u32,
        #[arg(long, default_value_t = 88)]
        squares: u32,
        #[arg(long, default_value_t = 15)]
        dark: u32,
    },
    /// Exact information-set size for a JFEN position.
    InfosetSize {
        #[arg(long)]
        state: String,
        /// Perspective (default: the side to move).
        #[arg(long, value_enum)]
        viewer: Option<SideArg>,
    },
    /// Game-tree complexity of other games next to this one.
    Compare {
        #[arg(long, value_enum, default_value_t = Format::Md)]
        format: Format,
        /// summary.json of a simulate run, appended as an extra row.
        #[arg(long)]
        measured: Option<PathBuf>,
    },
    /// Count move-sequence leaves to each depth.
    Perft {
        /// JFEN with hidden assignment (default: the opening for --seed).
        #[arg(long)]
        state: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=4))]
        depth: u32,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        workers: Option<u64>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum RevealArg {
    Eager,
    Lazy,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum SideArg {
    Red,
    Black,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Md,
    Json,
}

/// Reference rows: branching factor, average length in plies and log10 of
/// game-tree complexity as published alongside the dark variant's estimate.
pub const REFERENCE_GAMES: [(&str, f64, f64, f64); 5] = [
    ("Gomoku(15x15)", 210.0, 30.0, 70.0),
    ("Chess", 35.0, 70.0, 123.0),
    ("Chinese chess", 38.0, 95.0, 150.0),
    ("Dark Chinese chess", 35.0, 133.0, 205.0),
    ("Go", 250.0, 150.0, 360.0),
];

pub const COMPARE_CSV_HEADER: &str = "game,branching_factor,avg_game_length,log10_gtc";

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CompareRow {
    pub game: String,
    pub branching_factor: f64,
    pub avg_game_length: f64,
    pub log10_gtc: f64,
}

pub fn compare_rows(measured: Option<CompareRow>) -> Vec<CompareRow> {
    let mut rows: Vec<CompareRow> = REFERENCE_GAMES
        .iter()
        .map(|&(game, b, p, g)| CompareRow {
            game: game.into(),
            branching_factor: b,
            avg_game_length: p,
            log10_gtc: g,
        })
        .collect();
    rows.extend(measured);
    rows
}

fn number(x: f64) -> String {
    if x.fract() == 0.0 && x.abs() < 1e15 {
        format!("{}", x as i64)
    } else {
        format_sig6(x)
    }
}

pub fn render_compare(rows: &[CompareRow], format: Format) -> String {
    let mut out = String::new();
    match format {
        Format::Csv => {
            out.push_str(COMPARE_CSV_HEADER);
            out.push('\n');
            for r in rows {
                out.push_str(&format!(
                    "{},{},{},{}\n",
                    r.game,
                    number(r.branching_factor),
                    number(r.avg_game_length),
                    number(r.log10_gtc)
                ));
            }
        }
        Format::Md => {
            out.push_str("| Game | Branching factor | Average game length | log10 GTC |\n");
            out.push_str("|---|---:|---:|---:|\n");
            for r in rows {
                out.push_str(&format!(
                    "| {} | {} | {} | {} |\n",
                    r.game,
                    number(r.branching_factor),
                    number(r.avg_game_length),
                    number(r.log10_gtc)
                ));
            }
        }
        Format::Json => {
            out.push_str(&serde_json::to_string_pretty(rows).expect("rows serialise"));
            out.push('\n');
        }
    }
    out
}

fn measured_row(path: &Path) -> Result<CompareRow, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let json: serde_json::Value = serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    let field = |name: &str| {
        json.get(name)
            .and_then(|v| v.as_f64())
            .ok_or_else(|| format!("{}: missing numeric field '{name}'", path.display()))
    };
    Ok(CompareRow {
        game: "Dark Chinese chess (measured)".into(),
        branching_factor: field("mean_branching")?,
        avg_game_length: field("mean_length_plies")?,
        log10_gtc: field("log10_gtc")?,
    })
}

fn default_workers() -> usize {
    std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)
}

/// Parses `args` (program name first), runs the command and returns the
/// process exit code.
pub fn run_cli<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{e}");
                    EXIT_USAGE
                }
            };
        }
    };
    match dispatch(cli.command, out) {
        Ok(()) => EXIT_OK,
        Err(Failure { code, message }) => {
            let _ = writeln!(err, "error: {message}");
            code
        }
    }
}

struct Failure {
    code: i32,
    message: String,
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: EXIT_USAGE, message: message.into() }
}

fn bad_state(message: impl Into<String>) -> Failure {
    Failure { code: EXIT_BAD_STATE, message: message.into() }
}

fn parse_state(text: &str) -> Result<GameState, Failure> {
    decode_state(text).map_err(|e| bad_state(e.to_string()))
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<(), Failure> {
    let io = |e: std::io::Error| usage(e.to_string());
    match command {
        Command::Simulate { games, seed, draw_plies, workers, out_dir, classic_dark_roles, reveal } => {
            let config = SimConfig {
                rules: Rules { draw_plies, classic_dark_roles },
                reveal: match reveal {
                    RevealArg::Eager => RevealMode::Eager,
                    RevealArg::Lazy => RevealMode::Lazy,
                },
            };
            let workers = workers.map(|w| w as usize).unwrap_or_else(default_workers);
            let sim = run_simulation(games, seed, workers, &config).map_err(|e| usage(e.to_string()))?;
            fs::create_dir_all(&out_dir).map_err(io)?;
            fs::write(out_dir.join("games.csv"), games_csv(&sim.records)).map_err(io)?;
            fs::write(out_dir.join("series.csv"), series_csv(&sim.series)).map_err(io)?;
            fs::write(out_dir.join("summary.json"), summary_json(&sim.summary)).map_err(io)?;
            let s = &sim.summary;
            writeln!(
                out,
                "games={} mean_branching={} mean_length_plies={} mean_log10_infoset={} log10_mean_infoset={} log10_gtc={}",
                s.games,
                format_sig6(s.mean_branching),
                format_sig6(s.mean_length_plies),
                format_sig6(s.mean_log10_infoset),
                format_sig6(s.log10_mean_infoset),
                format_sig6(s.log10_gtc)
            )
            .map_err(io)?;
        }
        Command::CountInfosets { pieces, squares, dark } => {
            let params = CountParams::new(pieces, squares, dark);
            let collapsed =
                count_information_sets_with(&params, BranchReading::Collapsed).map_err(|e| usage(e.to_string()))?;
            let summed = count_information_sets_with(&params, BranchReading::AlwaysSummed)
                .map_err(|e| usage(e.to_string()))?;
            writeln!(out, "information_sets={collapsed}").map_err(io)?;
            writeln!(out, "log10={}", format_sig6(collapsed.log10())).map_err(io)?;
            writeln!(out, "information_sets_always_summed={summed}").map_err(io)?;
            writeln!(out, "log10_always_summed={}", format_sig6(summed.log10())).map_err(io)?;
        }
        Command::InfosetSize { state, viewer } => {
            let state = parse_state(&state)?;
            let viewer = match viewer {
                Some(SideArg::Red) => Side::Red,
                Some(SideArg::Black) => Side::Black,
                None => state.side_to_move(),
            };
            let size = infoset_size(&observe(&state, viewer)).map_err(|e| bad_state(e.to_string()))?;
            writeln!(out, "{size}").map_err(io)?;
            writeln!(out, "log10={}", format_sig6(size.log10())).map_err(io)?;
        }
        Command::Compare { format, measured } => {
            let extra = measured.as_deref().map(measured_row).transpose().map_err(usage)?;
            write!(out, "{}", render_compare(&compare_rows(extra), format)).map_err(io)?;
        }
        Command::Perft { state, seed, depth, workers } => {
            let state = match state {
                Some(text) => parse_state(&text)?,
                None => initial_state(seed),
            };
            if !state.hidden_known() {
                return Err(bad_state("perft needs the hidden-assignment field"));
            }
            let workers = workers.map(|w| w as usize).unwrap_or_else(default_workers);
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(workers)
                .build()
                .map_err(|e| usage(e.to_string()))?;
            let counts = pool
                .install(|| perft_parallel(&state, depth))
                .map_err(|e| bad_state(e.to_string()))?;
            for (i, n) in counts.iter().enumerate() {
                writeln!(out, "depth={} nodes={n}", i + 1).map_err(io)?;
            }
        }
    }
    Ok(())
}
