//! Ground-truth arbiter state.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use super::movegen::{kings_facing, MoveBoard, Occupant};
use super::types::*;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EngineError {
    #[error("game is already over ({0:?})")]
    GameOver(TerminalStatus),
    #[error("illegal move {0}")]
    IllegalMove(Move),
    #[error("hidden identity on {0} is not known to this state")]
    HiddenUnknown(Square),
    #[error("invalid position: {0}")]
    BadPosition(String),
}

/// Plain description of a position, for building states by hand.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Position {
    pub pieces: Vec<(Square, Piece)>,
    pub side_to_move: Option<Side>,
    pub captured_by_red: Vec<CapturedPiece>,
    pub captured_by_black: Vec<CapturedPiece>,
    pub plies_since_capture: u32,
    pub ply_count: u32,
}

/// Rule switches. The defaults are the variant measured by the toolkit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Rules {
    /// Plies without a capture after which the game is drawn.
    pub draw_plies: u32,
    /// Confine face-down guard-role pieces to the palace.
    pub classic_dark_roles: bool,
}

impl Default for Rules {
    fn default() -> Self {
        Rules { draw_plies: 40, classic_dark_roles: false }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GameState {
    pub(crate) grid: [Option<Piece>; NUM_SQUARES],
    pub(crate) side_to_move: Side,
    pub(crate) ply_count: u32,
    pub(crate) plies_since_capture: u32,
    pub(crate) captured_by_red: Vec<CapturedPiece>,
    pub(crate) captured_by_black: Vec<CapturedPiece>,
    pub(crate) status: TerminalStatus,
    pub(crate) rules: Rules,
    /// False for states decoded without their hidden assignment; the kinds of
    /// face-down pieces are then placeholders.
    pub(crate) hidden_known: bool,
}

/// Opening position for `seed` under the default rules.
pub fn initial_state(seed: u64) -> GameState {
    GameState::initial(seed, Rules::default())
}

impl GameState {
    /// Kings face up on their home squares; each side's 15 other kinds are
    /// shuffled over that side's 15 remaining opening squares, face down.
    pub fn initial(seed: u64, rules: Rules) -> GameState {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut grid = [None; NUM_SQUARES];
        for side in Side::BOTH {
            grid[king_home(side).index()] = Some(Piece::revealed(side, PieceKind::King));
            let squares = dark_home_squares(side);
            let mut kinds: Vec<PieceKind> =
                squares.iter().map(|&sq| role_of_square(sq).unwrap()).collect();
            kinds.shuffle(&mut rng);
            for (sq, kind) in squares.into_iter().zip(kinds) {
                grid[sq.index()] = Some(Piece::dark(side, kind));
            }
        }
        GameState {
            grid,
            side_to_move: Side::Red,
            ply_count: 0,
            plies_since_capture: 0,
            captured_by_red: Vec::new(),
            captured_by_black: Vec::new(),
            status: TerminalStatus::Ongoing,
            rules,
            hidden_known: true,
        }
    }

    /// Builds a state from `pos` and derives its status. Face-down pieces
    /// must stand on their own side's opening squares; piece counts are not
    /// checked (see [`GameState::check_invariants`]).
    pub fn from_position(pos: Position, rules: Rules) -> Result<GameState, EngineError> {
        let mut grid = [None; NUM_SQUARES];
        for (sq, p) in pos.pieces {
            if p.is_dark()
                && (home_side(sq) != Some(p.side)
                    || role_of_square(sq) == Some(PieceKind::King)
                    || p.kind == PieceKind::King)
            {
                return Err(EngineError::BadPosition(format!("face-down piece on {sq}")));
            }
            if grid[sq.index()].replace(p).is_some() {
                return Err(EngineError::BadPosition(format!("two pieces on {sq}")));
            }
        }
        let mut state = GameState {
            grid,
            side_to_move: pos.side_to_move.unwrap_or(Side::Red),
            ply_count: pos.ply_count,
            plies_since_capture: pos.plies_since_capture,
            captured_by_red: pos.captured_by_red,
            captured_by_black: pos.captured_by_black,
            status: TerminalStatus::Ongoing,
            rules,
            hidden_known: true,
        };
        state.status = state.derive_status();
        Ok(state)
    }

    pub fn position(&self) -> Position {
        Position {
            pieces: self.pieces().collect(),
            side_to_move: Some(self.side_to_move),
            captured_by_red: self.captured_by_red.clone(),
            captured_by_black: self.captured_by_black.clone(),
            plies_since_capture: self.plies_since_capture,
            ply_count: self.ply_count,
        }
    }

    #[inline]
    pub fn piece_at(&self, sq: Square) -> Option<Piece> {
        self.grid[sq.index()]
    }

    pub fn side_to_move(&self) -> Side {
        self.side_to_move
    }

    pub fn ply_count(&self) -> u32 {
        self.ply_count
    }

    pub fn plies_since_capture(&self) -> u32 {
        self.plies_since_capture
    }

    pub fn rules(&self) -> Rules {
        self.rules
    }

    pub fn hidden_known(&self) -> bool {
        self.hidden_known
    }

    /// Pieces captured by `side` (all belong to the opponent).
    pub fn captured_by(&self, side: Side) -> &[CapturedPiece] {
        match side {
            Side::Red => &self.captured_by_red,
            Side::Black => &self.captured_by_black,
        }
    }

    pub fn terminal_status(&self) -> TerminalStatus {
        self.status
    }

    pub fn pieces(&self) -> impl Iterator<Item = (Square, Piece)> + '_ {
        Square::all().filter_map(move |sq| self.piece_at(sq).map(|p| (sq, p)))
    }

    pub fn king_square(&self, side: Side) -> Option<Square> {
        self.pieces()
            .find(|(_, p)| p.side == side && p.kind == PieceKind::King && !p.is_dark())
            .map(|(sq, _)| sq)
    }

    /// Face-down squares with their true kinds, in square order.
    pub fn hidden_assignment(&self) -> Vec<(Square, PieceKind)> {
        self.pieces().filter(|(_, p)| p.is_dark()).map(|(sq, p)| (sq, p.kind)).collect()
    }

    pub(crate) fn move_board(&self) -> MoveBoard {
        let mut cells = [None; NUM_SQUARES];
        for (sq, p) in self.pieces() {
            let movement = if p.is_dark() {
                role_of_square(sq).expect("face-down piece off its opening square")
            } else {
                p.kind
            };
            cells[sq.index()] = Some(Occupant { side: p.side, movement, dark: p.is_dark() });
        }
        MoveBoard::new(cells)
    }

    fn moves_for(&self, side: Side) -> Vec<Move> {
        self.move_board().legal_moves(side, self.rules.classic_dark_roles)
    }

    pub fn legal_moves(&self) -> Result<Vec<Move>, EngineError> {
        if self.status.is_over() {
            return Err(EngineError::GameOver(self.status));
        }
        Ok(self.moves_for(self.side_to_move))
    }

    /// Recomputes the status from the position alone, using the same order
    /// of checks as [`GameState::apply_move`].
    pub(crate) fn derive_status(&self) -> TerminalStatus {
        let red = self.king_square(Side::Red);
        let black = self.king_square(Side::Black);
        let (red, black) = match (red, black) {
            (Some(r), Some(b)) => (r, b),
            (Some(_), None) => return TerminalStatus::Win(Side::Red, WinReason::KingCaptured),
            (None, Some(_)) => return TerminalStatus::Win(Side::Black, WinReason::KingCaptured),
            // Not reachable by play; treat as a finished game.
            (None, None) => return TerminalStatus::Draw,
        };
        if kings_facing(|sq| self.piece_at(sq).is_some(), red, black) {
            // The side that just moved created the file opening and loses.
            return TerminalStatus::Win(self.side_to_move, WinReason::MeetMarshals);
        }
        if self.plies_since_capture >= self.rules.draw_plies {
            return TerminalStatus::Draw;
        }
        if self.moves_for(self.side_to_move).is_empty() {
            return TerminalStatus::Win(self.side_to_move.opponent(), WinReason::OpponentStalemated);
        }
        TerminalStatus::Ongoing
    }

    pub fn apply_move(&self, mv: Move) -> Result<(GameState, MoveOutcome), EngineError> {
        if !self.legal_moves()?.contains(&mv) {
            return Err(EngineError::IllegalMove(mv));
        }
        let mover = self.side_to_move;
        let piece = self.piece_at(mv.from).expect("legal move has a piece");
        let target = self.piece_at(mv.to);
        if !self.hidden_known {
            if piece.is_dark() {
                return Err(EngineError::HiddenUnknown(mv.from));
            }
            if target.is_some_and(|t| t.is_dark()) {
                return Err(EngineError::HiddenUnknown(mv.to));
            }
        }

        let mut next = self.clone();
        let revealed = piece.is_dark().then_some(piece.kind);
        next.grid[mv.from.index()] = None;
        next.grid[mv.to.index()] = Some(Piece::revealed(mover, piece.kind));

        let captured = target.map(|t| CapturedPiece { side: t.side, kind: t.kind, face: t.face });
        if let Some(c) = captured {
            match mover {
                Side::Red => next.captured_by_red.push(c),
                Side::Black => next.captured_by_black.push(c),
            }
            next.plies_since_capture = 0;
        } else {
            next.plies_since_capture += 1;
        }
        next.ply_count += 1;
        next.side_to_move = mover.opponent();

        next.status = if captured.is_some_and(|c| c.kind == PieceKind::King) {
            TerminalStatus::Win(mover, WinReason::KingCaptured)
        } else {
            next.derive_status()
        };
        let game_ended = next.status;
        Ok((next, MoveOutcome { revealed, captured, game_ended }))
    }

    /// Like [`GameState::apply_move`], but every face-down identity that
    /// becomes known through this move is first redrawn uniformly from its
    /// side's unresolved pool (the face-down pieces still on the board).
    pub fn apply_move_lazy<R: Rng + ?Sized>(
        &self,
        mv: Move,
        rng: &mut R,
    ) -> Result<(GameState, MoveOutcome), EngineError> {
        if !self.legal_moves()?.contains(&mv) {
            return Err(EngineError::IllegalMove(mv));
        }
        let mut state = self.clone();
        if self.hidden_known {
            for sq in [mv.from, mv.to] {
                if state.piece_at(sq).is_some_and(|p| p.is_dark()) {
                    state.redraw_hidden(sq, rng);
                }
            }
        }
        state.apply_move(mv)
    }

    /// Swaps the hidden kind on `sq` with that of a uniformly chosen
    /// face-down piece of the same side (possibly itself).
    fn redraw_hidden<R: Rng + ?Sized>(&mut self, sq: Square, rng: &mut R) {
        let side = self.piece_at(sq).expect("occupied").side;
        let pool: Vec<Square> = self
            .pieces()
            .filter(|(_, p)| p.side == side && p.is_dark())
            .map(|(s, _)| s)
            .collect();
        let other = pool[rng.random_range(0..pool.len())];
        let (a, b) = (self.grid[sq.index()].unwrap(), self.grid[other.index()].unwrap());
        self.grid[sq.index()] = Some(Piece { kind: b.kind, ..a });
        self.grid[other.index()] = Some(Piece { kind: a.kind, ..b });
    }

    /// Checks piece conservation and that face-down pieces sit on their own
    /// opening squares. Intended for tests and debugging.
    pub fn check_invariants(&self) -> Result<(), String> {
        for side in Side::BOTH {
            let mut counts = [0u8; 7];
            for (sq, p) in self.pieces().filter(|(_, p)| p.side == side) {
                counts[p.kind.index()] += 1;
                if p.is_dark() {
                    if home_side(sq) != Some(side) || role_of_square(sq) == Some(PieceKind::King) {
                        return Err(format!("face-down {} piece on {sq}", side.name()));
                    }
                    if p.kind == PieceKind::King {
                        return Err(format!("face-down king on {sq}"));
                    }
                }
            }
            for c in self.captured_by(side.opponent()) {
                if c.side != side {
                    return Err(format!("{} captured its own piece", side.opponent().name()));
                }
                counts[c.kind.index()] += 1;
            }
            for kind in PieceKind::ALL {
                if counts[kind.index()] != kind.initial_count() {
                    return Err(format!(
                        "{} has {} {:?}, expected {}",
                        side.name(),
                        counts[kind.index()],
                        kind,
                        kind.initial_count()
                    ));
                }
            }
        }
        if self.plies_since_capture > self.rules.draw_plies {
            return Err("no-capture counter past the draw limit".into());
        }
        Ok(())
    }
}
