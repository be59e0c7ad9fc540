//! Move generation over the publicly visible board.
//!
//! The generator only ever sees an [`Occupant`] per square: side, the kind
//! that governs movement (positional role for face-down pieces, true kind
//! otherwise) and whether the piece is face down. Hidden identities never
//! reach this module, so two positions that look the same to the mover
//! produce the same move list.

use super::types::{Move, PieceKind, Side, Square, NUM_SQUARES};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Occupant {
    pub side: Side,
    pub movement: PieceKind,
    pub dark: bool,
}

const ORTHOGONAL: [(i8, i8); 4] = [(0, 1), (0, -1), (-1, 0), (1, 0)];
const DIAGONAL: [(i8, i8); 4] = [(-1, 1), (1, 1), (-1, -1), (1, -1)];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MoveBoard {
    cells: [Option<Occupant>; NUM_SQUARES],
}

impl MoveBoard {
    pub fn new(cells: [Option<Occupant>; NUM_SQUARES]) -> MoveBoard {
        MoveBoard { cells }
    }

    #[inline]
    pub fn at(&self, sq: Square) -> Option<Occupant> {
        self.cells[sq.index()]
    }

    #[inline]
    fn empty(&self, sq: Square) -> bool {
        self.cells[sq.index()].is_none()
    }

    /// Destination is empty or holds an enemy piece.
    #[inline]
    fn enterable(&self, sq: Square, side: Side) -> bool {
        self.at(sq).is_none_or(|o| o.side != side)
    }

    /// All moves for `side`, ordered by origin square then direction.
    pub fn legal_moves(&self, side: Side, classic_dark_roles: bool) -> Vec<Move> {
        let mut moves = Vec::with_capacity(64);
        for from in Square::all() {
            let Some(occ) = self.at(from) else { continue };
            if occ.side != side {
                continue;
            }
            self.piece_moves(from, occ, classic_dark_roles, &mut moves);
        }
        moves
    }

    fn piece_moves(&self, from: Square, occ: Occupant, classic: bool, out: &mut Vec<Move>) {
        let side = occ.side;
        let mut push = |to: Square| out.push(Move::new(from, to));
        match occ.movement {
            PieceKind::King => {
                for (df, dr) in ORTHOGONAL {
                    if let Some(to) = from.offset(df, dr) {
                        if side.in_palace(to) && self.enterable(to, side) {
                            push(to);
                        }
                    }
                }
            }
            PieceKind::Guard => {
                let palace_only = classic && occ.dark;
                for (df, dr) in DIAGONAL {
                    if let Some(to) = from.offset(df, dr) {
                        if (!palace_only || side.in_palace(to)) && self.enterable(to, side) {
                            push(to);
                        }
                    }
                }
            }
            PieceKind::Minister => {
                for (df, dr) in DIAGONAL {
                    let (Some(eye), Some(to)) = (from.offset(df, dr), from.offset(2 * df, 2 * dr))
                    else {
                        continue;
                    };
                    if self.empty(eye) && self.enterable(to, side) {
                        push(to);
                    }
                }
            }
            PieceKind::Horse => {
                for (df, dr) in ORTHOGONAL {
                    let Some(leg) = from.offset(df, dr) else { continue };
                    if !self.empty(leg) {
                        continue;
                    }
                    // Outward diagonal: keep the orthogonal component, branch sideways.
                    let turns = if df == 0 { [(-1, 2 * dr), (1, 2 * dr)] } else { [(2 * df, -1), (2 * df, 1)] };
                    for (tf, tr) in turns {
                        if let Some(to) = from.offset(tf, tr) {
                            if self.enterable(to, side) {
                                push(to);
                            }
                        }
                    }
                }
            }
            PieceKind::Rook => {
                for (df, dr) in ORTHOGONAL {
                    let mut cur = from;
                    while let Some(to) = cur.offset(df, dr) {
                        match self.at(to) {
                            None => push(to),
                            Some(o) => {
                                if o.side != side {
                                    push(to);
                                }
                                break;
                            }
                        }
                        cur = to;
                    }
                }
            }
            PieceKind::Cannon => {
                for (df, dr) in ORTHOGONAL {
                    let mut cur = from;
                    let mut screened = false;
                    while let Some(to) = cur.offset(df, dr) {
                        match (self.at(to), screened) {
                            (None, false) => push(to),
                            (None, true) => {}
                            (Some(_), false) => screened = true,
                            (Some(o), true) => {
                                if o.side != side {
                                    push(to);
                                }
                                break;
                            }
                        }
                        cur = to;
                    }
                }
            }
            PieceKind::Pawn => {
                if let Some(to) = from.offset(0, side.forward()) {
                    if self.enterable(to, side) {
                        push(to);
                    }
                }
                if !side.own_half(from) {
                    for df in [-1, 1] {
                        if let Some(to) = from.offset(df, 0) {
                            if self.enterable(to, side) {
                                push(to);
                            }
                        }
                    }
                }
            }
        }
    }
}

/// True when both kings stand on one file with nothing in between.
pub fn kings_facing(occupied: impl Fn(Square) -> bool, red_king: Square, black_king: Square) -> bool {
    if red_king.file() != black_king.file() {
        return false;
    }
    let (lo, hi) = if red_king.rank() < black_king.rank() {
        (red_king.rank(), black_king.rank())
    } else {
        (black_king.rank(), red_king.rank())
    };
    (lo + 1..hi).all(|r| !occupied(Square::new(red_king.file(), r).unwrap()))
}
