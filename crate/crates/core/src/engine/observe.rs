//! One player's view of a game.

use super::movegen::{MoveBoard, Occupant};
use super::state::{GameState, Rules};
use super::types::*;
use crate::combinatorics::KindMultiset;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CellView {
    Empty,
    Dark(Side),
    Revealed(Side, PieceKind),
}

/// Everything `viewer` knows. Contains no face-down identity other than the
/// opponent pieces the viewer captured while they were face down.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Observation {
    pub viewer: Side,
    pub view: [CellView; NUM_SQUARES],
    /// Viewer's pieces the opponent captured face up.
    pub own_revealed_captured_by_opp: KindMultiset,
    /// Viewer's face-down pieces the opponent captured; kinds unknown.
    pub own_dark_lost_count: u8,
    /// Opponent pieces the viewer captured face up.
    pub opp_revealed_captured: KindMultiset,
    /// Opponent pieces the viewer captured face down, seen on capture.
    pub opp_dark_captured_by_viewer: KindMultiset,
    pub side_to_move: Side,
    pub plies_since_capture: u32,
    pub rules: Rules,
}

pub fn observe(state: &GameState, viewer: Side) -> Observation {
    let mut view = [CellView::Empty; NUM_SQUARES];
    for (sq, p) in state.pieces() {
        view[sq.index()] = match p.face {
            Face::Dark => CellView::Dark(p.side),
            Face::Revealed => CellView::Revealed(p.side, p.kind),
        };
    }
    let mut obs = Observation {
        viewer,
        view,
        own_revealed_captured_by_opp: KindMultiset::empty(),
        own_dark_lost_count: 0,
        opp_revealed_captured: KindMultiset::empty(),
        opp_dark_captured_by_viewer: KindMultiset::empty(),
        side_to_move: state.side_to_move(),
        plies_since_capture: state.plies_since_capture(),
        rules: state.rules(),
    };
    // A captured king shows as a missing king on the board; pools never hold kings.
    let captured = |side: Side| state.captured_by(side).iter().filter(|c| c.kind != PieceKind::King);
    for c in captured(viewer.opponent()) {
        match c.face {
            Face::Revealed => obs.own_revealed_captured_by_opp.add(c.kind, 1),
            Face::Dark => obs.own_dark_lost_count += 1,
        }
    }
    for c in captured(viewer) {
        match c.face {
            Face::Revealed => obs.opp_revealed_captured.add(c.kind, 1),
            Face::Dark => obs.opp_dark_captured_by_viewer.add(c.kind, 1),
        }
    }
    obs
}

impl Observation {
    #[inline]
    pub fn cell(&self, sq: Square) -> CellView {
        self.view[sq.index()]
    }

    /// Number of face-down pieces of `side` on the board.
    pub fn dark_count(&self, side: Side) -> usize {
        self.view.iter().filter(|&&c| c == CellView::Dark(side)).count()
    }

    /// Non-king kinds of `side` currently face up on the board.
    pub fn revealed_on_board(&self, side: Side) -> KindMultiset {
        let mut m = KindMultiset::empty();
        for c in &self.view {
            if let CellView::Revealed(s, k) = *c {
                if s == side && k != PieceKind::King {
                    m.add(k, 1);
                }
            }
        }
        m
    }

    /// Moves available to the side to move, computed from this view alone.
    pub fn legal_moves(&self) -> Vec<Move> {
        let mut cells = [None; NUM_SQUARES];
        for sq in Square::all() {
            cells[sq.index()] = match self.cell(sq) {
                CellView::Empty => None,
                CellView::Dark(side) => Some(Occupant {
                    side,
                    movement: role_of_square(sq).expect("face-down piece off its opening square"),
                    dark: true,
                }),
                CellView::Revealed(side, kind) => Some(Occupant { side, movement: kind, dark: false }),
            };
        }
        MoveBoard::new(cells).legal_moves(self.side_to_move, self.rules.classic_dark_roles)
    }

    /// The same observation with colours swapped and the board reflected
    /// across the river.
    pub fn mirrored(&self) -> Observation {
        let mut view = [CellView::Empty; NUM_SQUARES];
        for sq in Square::all() {
            view[sq.mirror().index()] = match self.cell(sq) {
                CellView::Empty => CellView::Empty,
                CellView::Dark(s) => CellView::Dark(s.opponent()),
                CellView::Revealed(s, k) => CellView::Revealed(s.opponent(), k),
            };
        }
        Observation {
            viewer: self.viewer.opponent(),
            view,
            side_to_move: self.side_to_move.opponent(),
            ..self.clone()
        }
    }
}
