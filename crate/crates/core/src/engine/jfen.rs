//! JFEN: single-line text form of a [`GameState`].
//!
//! ```text
//! <board> <side> <plies-since-capture> <ply-count> <captured-by-red> <captured-by-black> <hidden>
//! ```
//!
//! The board lists ranks 9 down to 0 separated by `/`. Digits run-length
//! encode empty squares, `KGMRHCP` are face-up Red pieces (lowercase for
//! Black) and `X`/`x` are face-down Red/Black pieces. Capture lists
//! concatenate the captured kinds, `*` marking a piece taken face down.
//! The hidden field lists `square=KIND` for every face-down square, or is
//! `-` when omitted.

use std::fmt;

use thiserror::Error;

use super::state::{GameState, Rules};
use super::types::*;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("JFEN parse error at byte {position}: {message}")]
pub struct JfenError {
    pub position: usize,
    pub message: String,
}

fn err<T>(position: usize, message: impl Into<String>) -> Result<T, JfenError> {
    Err(JfenError { position, message: message.into() })
}

pub fn encode_state(state: &GameState, include_hidden: bool) -> String {
    let mut out = String::with_capacity(96);
    for rank in (0..RANKS).rev() {
        let mut empty = 0;
        for file in 0..FILES {
            match state.piece_at(Square::new(file, rank).unwrap()) {
                None => empty += 1,
                Some(p) => {
                    if empty > 0 {
                        out.push(char::from(b'0' + empty));
                        empty = 0;
                    }
                    out.push(piece_char(p));
                }
            }
        }
        if empty > 0 {
            out.push(char::from(b'0' + empty));
        }
        if rank > 0 {
            out.push('/');
        }
    }
    out.push(' ');
    out.push(match state.side_to_move() {
        Side::Red => 'r',
        Side::Black => 'b',
    });
    out.push_str(&format!(" {} {} ", state.plies_since_capture(), state.ply_count()));
    push_captures(&mut out, state.captured_by(Side::Red));
    out.push(' ');
    push_captures(&mut out, state.captured_by(Side::Black));
    out.push(' ');

    let hidden = board_order()
        .filter_map(|sq| state.piece_at(sq).filter(|p| p.is_dark()).map(|p| (sq, p)))
        .map(|(sq, p)| format!("{sq}={}", p.kind.side_letter(p.side)))
        .collect::<Vec<_>>();
    if include_hidden && state.hidden_known() && !hidden.is_empty() {
        out.push_str(&hidden.join(","));
    } else {
        out.push('-');
    }
    out
}

/// Squares in text order: rank 9 first, files a to i.
fn board_order() -> impl Iterator<Item = Square> {
    (0..RANKS).rev().flat_map(|r| (0..FILES).map(move |f| Square::new(f, r).unwrap()))
}

fn piece_char(p: Piece) -> char {
    match (p.face, p.side) {
        (Face::Dark, Side::Red) => 'X',
        (Face::Dark, Side::Black) => 'x',
        (Face::Revealed, side) => p.kind.side_letter(side),
    }
}

fn push_captures(out: &mut String, list: &[CapturedPiece]) {
    if list.is_empty() {
        out.push('-');
        return;
    }
    for c in list {
        out.push(c.kind.side_letter(c.side));
        if c.face == Face::Dark {
            out.push('*');
        }
    }
}

pub fn decode_state(text: &str) -> Result<GameState, JfenError> {
    decode_state_with(text, Rules::default())
}

pub fn decode_state_with(text: &str, rules: Rules) -> Result<GameState, JfenError> {
    let fields = split_fields(text)?;
    if fields.len() != 7 {
        return err(text.len(), format!("expected 7 fields, found {}", fields.len()));
    }
    let (board_at, board) = fields[0];
    let mut grid = [None; NUM_SQUARES];
    let ranks: Vec<&str> = board.split('/').collect();
    if ranks.len() != RANKS as usize {
        return err(board_at, format!("expected 10 ranks, found {}", ranks.len()));
    }
    let mut at = board_at;
    for (i, row) in ranks.iter().enumerate() {
        let rank = RANKS - 1 - i as u8;
        let mut file: u32 = 0;
        for (j, c) in row.char_indices() {
            let pos = at + j;
            if let Some(d) = c.to_digit(10) {
                if d == 0 {
                    return err(pos, format!("zero run length in rank {rank}"));
                }
                file += d;
            } else {
                let piece = match c {
                    'X' => Piece::dark(Side::Red, PieceKind::King),
                    'x' => Piece::dark(Side::Black, PieceKind::King),
                    _ => match PieceKind::from_letter(c) {
                        Some(kind) if c.is_ascii_uppercase() => Piece::revealed(Side::Red, kind),
                        Some(kind) => Piece::revealed(Side::Black, kind),
                        None => return err(pos, format!("unknown piece '{c}' in rank {rank}")),
                    },
                };
                if file >= FILES as u32 {
                    return err(pos, format!("rank {rank} is wider than 9 files"));
                }
                let sq = Square::new(file as u8, rank).unwrap();
                if piece.is_dark() {
                    if home_side(sq) != Some(piece.side) || role_of_square(sq) == Some(PieceKind::King) {
                        return err(pos, format!("face-down piece on {sq}, not one of its side's opening squares"));
                    }
                    // Placeholder until the hidden field is read.
                    grid[sq.index()] = Some(Piece::dark(piece.side, role_of_square(sq).unwrap()));
                } else {
                    grid[sq.index()] = Some(piece);
                }
                file += 1;
            }
        }
        if file != FILES as u32 {
            return err(at, format!("rank {rank} has width {file}, expected 9"));
        }
        at += row.len() + 1;
    }

    let (side_at, side) = fields[1];
    let side_to_move = match side {
        "r" => Side::Red,
        "b" => Side::Black,
        _ => return err(side_at, format!("side to move must be 'r' or 'b', found '{side}'")),
    };
    let plies_since_capture = parse_number(fields[2], "plies since capture")?;
    let ply_count = parse_number(fields[3], "ply count")?;
    let captured_by_red = parse_captures(fields[4], Side::Black)?;
    let captured_by_black = parse_captures(fields[5], Side::Red)?;

    let (hidden_at, hidden) = fields[6];
    // With nothing face down there is nothing to withhold.
    let hidden_known = hidden != "-" || grid.iter().flatten().all(|p| !p.is_dark());
    if hidden != "-" {
        let mut assigned = [false; NUM_SQUARES];
        let mut pos = hidden_at;
        for entry in hidden.split(',') {
            let Some((sq_text, kind_text)) = entry.split_once('=') else {
                return err(pos, format!("hidden entry '{entry}' is not square=KIND"));
            };
            let sq: Square = sq_text.parse().map_err(|e: String| JfenError { position: pos, message: e })?;
            let mut chars = kind_text.chars();
            let (Some(c), None) = (chars.next(), chars.next()) else {
                return err(pos, format!("hidden entry '{entry}' needs one kind letter"));
            };
            let Some(Piece { side, face: Face::Dark, .. }) = grid[sq.index()] else {
                return err(pos, format!("hidden entry for {sq}, which is not face down"));
            };
            let kind = match PieceKind::from_letter(c) {
                Some(PieceKind::King) | None => return err(pos, format!("bad hidden kind '{c}' on {sq}")),
                Some(k) if k.side_letter(side) == c => k,
                Some(_) => return err(pos, format!("letter case of '{c}' does not match the piece on {sq}")),
            };
            if std::mem::replace(&mut assigned[sq.index()], true) {
                return err(pos, format!("{sq} assigned twice"));
            }
            grid[sq.index()] = Some(Piece::dark(side, kind));
            pos += entry.len() + 1;
        }
        if let Some(missing) = Square::all().find(|sq| {
            grid[sq.index()].is_some_and(|p| p.is_dark()) && !assigned[sq.index()]
        }) {
            return err(hidden_at, format!("hidden field has no entry for {missing}"));
        }
    }

    let mut state = GameState {
        grid,
        side_to_move,
        ply_count,
        plies_since_capture,
        captured_by_red,
        captured_by_black,
        status: TerminalStatus::Ongoing,
        rules,
        hidden_known,
    };
    state.status = state.derive_status();
    Ok(state)
}

/// Splits on single spaces, keeping each field's byte offset.
fn split_fields(text: &str) -> Result<Vec<(usize, &str)>, JfenError> {
    let mut fields = Vec::new();
    let mut start = 0;
    for part in text.split(' ') {
        if part.is_empty() {
            return err(start, "empty field (leading, trailing or doubled space)");
        }
        fields.push((start, part));
        start += part.len() + 1;
    }
    Ok(fields)
}

fn parse_number((at, text): (usize, &str), what: &str) -> Result<u32, JfenError> {
    if !text.bytes().all(|b| b.is_ascii_digit()) {
        return err(at, format!("{what} must be a decimal number, found '{text}'"));
    }
    text.parse().or_else(|_| err(at, format!("{what} out of range: '{text}'")))
}

fn parse_captures((at, text): (usize, &str), victim: Side) -> Result<Vec<CapturedPiece>, JfenError> {
    if text == "-" {
        return Ok(Vec::new());
    }
    let mut out: Vec<CapturedPiece> = Vec::new();
    for (i, c) in text.char_indices() {
        if c == '*' {
            match out.last_mut() {
                Some(last) if last.face == Face::Revealed && last.kind != PieceKind::King => {
                    last.face = Face::Dark
                }
                _ => return err(at + i, "misplaced '*'"),
            }
            continue;
        }
        match PieceKind::from_letter(c) {
            Some(kind) if kind.side_letter(victim) == c => {
                out.push(CapturedPiece { side: victim, kind, face: Face::Revealed })
            }
            _ => {
                return err(
                    at + i,
                    format!("'{c}' is not a {} piece letter", victim.name()),
                )
            }
        }
    }
    Ok(out)
}

/// Wrapper that prints a state as JFEN with its hidden assignment.
pub struct Jfen<'a>(pub &'a GameState);

impl fmt::Display for Jfen<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&encode_state(self.0, true))
    }
}
