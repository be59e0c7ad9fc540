//! Uniform-random self-play.
//!
//! Every ply records the number of legal moves and the exact size of the
//! mover's information set; a move is then drawn uniformly at random. Game
//! `i` of a run gets its own seed derived from the master seed, so a run is
//! reproducible regardless of how many worker threads play it.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::combinatorics::BigCount;
use crate::engine::{observe, GameState, Rules, Side, TerminalStatus, WinReason};
use crate::infoset::infoset_size;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SimError {
    #[error("branching factor must exceed 1, got {0}")]
    Branching(f64),
    #[error("game length must be positive, got {0}")]
    Length(f64),
    #[error("need at least one game and one worker")]
    EmptyRun,
    #[error("could not start worker pool: {0}")]
    Pool(String),
}

/// Decimal log of the b^p lower bound on game-tree size.
pub fn estimate_gtc_log10(branching: f64, length: f64) -> Result<f64, SimError> {
    if branching.is_nan() || branching <= 1.0 {
        return Err(SimError::Branching(branching));
    }
    if length.is_nan() || length <= 0.0 {
        return Err(SimError::Length(length));
    }
    Ok(length * branching.log10())
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RevealMode {
    /// Identities fixed at setup from the game seed.
    #[default]
    Eager,
    /// Identities drawn from the remaining pool when they become known.
    Lazy,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SimConfig {
    pub rules: Rules,
    pub reveal: RevealMode,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GameRecord {
    pub game_index: u64,
    pub seed: u64,
    pub plies: u32,
    pub result: TerminalStatus,
    pub branching_per_ply: Vec<u32>,
    pub log10_infoset_per_ply: Vec<f64>,
    /// Sum of the exact per-ply information-set sizes.
    pub infoset_total: BigCount,
}

impl GameRecord {
    pub fn mean_branching(&self) -> f64 {
        self.branching_per_ply.iter().map(|&b| b as f64).sum::<f64>() / self.plies as f64
    }

    pub fn mean_log10_infoset(&self) -> f64 {
        self.log10_infoset_per_ply.iter().sum::<f64>() / self.plies as f64
    }
}

/// Cap on game length; the no-capture rule ends every game well before it.
pub const MAX_PLIES: u32 = 1500;

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of game `index` within a run started from `master_seed`.
pub fn derive_game_seed(master_seed: u64, index: u64) -> u64 {
    splitmix64(master_seed ^ splitmix64(index))
}

pub fn play_random_game(game_seed: u64, config: &SimConfig) -> GameRecord {
    play_indexed(0, game_seed, config)
}

fn play_indexed(game_index: u64, seed: u64, config: &SimConfig) -> GameRecord {
    let mut state = GameState::initial(seed, config.rules);
    // Setup consumes stream 0 of this seed; move choice uses stream 1.
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(1);

    let mut branching_per_ply = Vec::with_capacity(160);
    let mut log10_infoset_per_ply = Vec::with_capacity(160);
    let mut infoset_total = BigCount::zero();
    while !state.terminal_status().is_over() {
        assert!(state.ply_count() < MAX_PLIES, "game {game_index} ran past {MAX_PLIES} plies");
        let moves = state.legal_moves().expect("ongoing game");
        let size = infoset_size(&observe(&state, state.side_to_move())).expect("consistent observation");
        branching_per_ply.push(moves.len() as u32);
        log10_infoset_per_ply.push(size.log10());
        infoset_total += &size;

        let mv = moves[rng.random_range(0..moves.len())];
        let next = match config.reveal {
            RevealMode::Eager => state.apply_move(mv),
            RevealMode::Lazy => state.apply_move_lazy(mv, &mut rng),
        };
        state = next.expect("generated move is legal").0;
    }
    GameRecord {
        game_index,
        seed,
        plies: branching_per_ply.len() as u32,
        result: state.terminal_status(),
        branching_per_ply,
        log10_infoset_per_ply,
        infoset_total,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RulesFlags {
    pub classic_dark_roles: bool,
    pub reveal_mode: RevealMode,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SimulationSummary {
    pub games: u64,
    pub mean_branching: f64,
    pub mean_length_plies: f64,
    pub mean_log10_infoset: f64,
    pub log10_mean_infoset: f64,
    pub log10_gtc: f64,
    pub result_breakdown: BTreeMap<String, u64>,
    pub master_seed: u64,
    pub draw_plies: u32,
    pub rules_flags: RulesFlags,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SeriesRow {
    pub games_completed: u64,
    pub cum_avg_branching: f64,
    pub cum_avg_length: f64,
    pub cum_avg_log10_infoset: f64,
    pub cum_log10_gtc: f64,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct RunningSeries {
    pub rows: Vec<SeriesRow>,
}

impl RunningSeries {
    pub fn at(&self, games_completed: u64) -> Option<&SeriesRow> {
        self.rows.iter().find(|r| r.games_completed == games_completed)
    }
}

pub const CHECKPOINT_EVERY: u64 = 100;

pub struct Simulation {
    pub summary: SimulationSummary,
    pub series: RunningSeries,
    pub records: Vec<GameRecord>,
}

/// Every outcome label, so breakdowns always list the same keys.
pub fn all_outcomes() -> Vec<TerminalStatus> {
    let mut out = vec![TerminalStatus::Draw];
    for side in Side::BOTH {
        for reason in [WinReason::KingCaptured, WinReason::MeetMarshals, WinReason::OpponentStalemated] {
            out.push(TerminalStatus::Win(side, reason));
        }
    }
    out
}

#[derive(Default)]
struct Totals {
    games: u64,
    plies: u64,
    branching: u64,
    log10_infoset: f64,
    infoset: BigCount,
}

impl Totals {
    fn add(&mut self, r: &GameRecord) {
        self.games += 1;
        self.plies += r.plies as u64;
        self.branching += r.branching_per_ply.iter().map(|&b| b as u64).sum::<u64>();
        for &x in &r.log10_infoset_per_ply {
            self.log10_infoset += x;
        }
        self.infoset += &r.infoset_total;
    }

    fn mean_branching(&self) -> f64 {
        self.branching as f64 / self.plies as f64
    }

    fn mean_length(&self) -> f64 {
        self.plies as f64 / self.games as f64
    }

    fn row(&self) -> SeriesRow {
        let b = self.mean_branching();
        let p = self.mean_length();
        SeriesRow {
            games_completed: self.games,
            cum_avg_branching: b,
            cum_avg_length: p,
            cum_avg_log10_infoset: self.log10_infoset / self.plies as f64,
            cum_log10_gtc: estimate_gtc_log10(b, p).unwrap_or(0.0),
        }
    }
}

pub fn run_simulation(
    games: u64,
    master_seed: u64,
    workers: usize,
    config: &SimConfig,
) -> Result<Simulation, SimError> {
    if games == 0 || workers == 0 {
        return Err(SimError::EmptyRun);
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| SimError::Pool(e.to_string()))?;
    let records: Vec<GameRecord> = pool.install(|| {
        (0..games)
            .into_par_iter()
            .map(|i| play_indexed(i, derive_game_seed(master_seed, i), config))
            .collect()
    });

    let mut totals = Totals::default();
    let mut series = RunningSeries::default();
    let mut breakdown: BTreeMap<String, u64> =
        all_outcomes().into_iter().map(|s| (s.label().to_string(), 0)).collect();
    for r in &records {
        totals.add(r);
        *breakdown.get_mut(r.result.label()).expect("finished game") += 1;
        if totals.games % CHECKPOINT_EVERY == 0 || totals.games == games {
            series.rows.push(totals.row());
        }
    }

    let last = totals.row();
    let mean_exact = totals.infoset.log10() - (totals.plies as f64).log10();
    let summary = SimulationSummary {
        games,
        mean_branching: last.cum_avg_branching,
        mean_length_plies: last.cum_avg_length,
        mean_log10_infoset: last.cum_avg_log10_infoset,
        log10_mean_infoset: mean_exact,
        log10_gtc: last.cum_log10_gtc,
        result_breakdown: breakdown,
        master_seed,
        draw_plies: config.rules.draw_plies,
        rules_flags: RulesFlags {
            classic_dark_roles: config.rules.classic_dark_roles,
            reveal_mode: config.reveal,
        },
    };
    Ok(Simulation { summary, series, records })
}

/// Fixed-point rendering with six significant digits.
pub fn format_sig6(x: f64) -> String {
    if x == 0.0 {
        return "0.00000".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let magnitude = x.abs().log10().floor() as i32;
    let decimals = (5 - magnitude).max(0) as usize;
    let text = format!("{x:.decimals$}");
    // Rounding can carry into a new leading digit (9.999996 -> 10.00000).
    let rounded: f64 = text.parse().expect("formatted float");
    if decimals > 0 && rounded.abs() >= 10f64.powi(magnitude + 1) {
        format!("{x:.prec$}", prec = decimals - 1)
    } else {
        text
    }
}

pub const GAMES_CSV_HEADER: &str = "game_index,seed,plies,result,mean_branching,mean_log10_infoset";
pub const SERIES_CSV_HEADER: &str =
    "games_completed,cum_avg_branching,cum_avg_length,cum_avg_log10_infoset,cum_log10_gtc";

pub fn games_csv(records: &[GameRecord]) -> String {
    let mut out = String::with_capacity(records.len() * 64);
    out.push_str(GAMES_CSV_HEADER);
    out.push('\n');
    for r in records {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{}",
            r.game_index,
            r.seed,
            r.plies,
            r.result.label(),
            format_sig6(r.mean_branching()),
            format_sig6(r.mean_log10_infoset())
        );
    }
    out
}

pub fn series_csv(series: &RunningSeries) -> String {
    let mut out = String::new();
    out.push_str(SERIES_CSV_HEADER);
    out.push('\n');
    for row in &series.rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            row.games_completed,
            format_sig6(row.cum_avg_branching),
            format_sig6(row.cum_avg_length),
            format_sig6(row.cum_avg_log10_infoset),
            format_sig6(row.cum_log10_gtc)
        );
    }
    out
}

pub fn summary_json(summary: &SimulationSummary) -> String {
    let mut text = serde_json::to_string_pretty(summary).expect("summary serialises");
    text.push('\n');
    text
}
