//! Helpers shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;

use jieqi::engine::*;
use rand::seq::SliceRandom;
use rand::Rng;

pub fn sq(s: &str) -> Square {
    s.parse().unwrap()
}

/// Kind that governs how the piece on `sq` moves.
fn movement(state: &GameState, sq: Square) -> Option<(Side, PieceKind, bool)> {
    let p = state.piece_at(sq)?;
    let kind = if p.is_dark() { role_of_square(sq).unwrap() } else { p.kind };
    Some((p.side, kind, p.is_dark()))
}

fn pieces_between(state: &GameState, a: Square, b: Square) -> usize {
    let (df, dr) = (b.file() as i8 - a.file() as i8, b.rank() as i8 - a.rank() as i8);
    let steps = df.abs().max(dr.abs());
    (1..steps)
        .filter(|&i| {
            let s = a.offset(df.signum() * i, dr.signum() * i).unwrap();
            state.piece_at(s).is_some()
        })
        .count()
}

/// Second move generator: tests every (from, to) pair against the movement
/// rules written as geometric predicates.
pub fn naive_moves(state: &GameState) -> BTreeSet<(Square, Square)> {
    let side = state.side_to_move();
    let classic = state.rules().classic_dark_roles;
    let mut out = BTreeSet::new();
    for from in Square::all() {
        let Some((owner, kind, dark)) = movement(state, from) else { continue };
        if owner != side {
            continue;
        }
        for to in Square::all() {
            if to == from {
                continue;
            }
            let target = state.piece_at(to);
            if target.is_some_and(|t| t.side == side) {
                continue;
            }
            let df = to.file() as i8 - from.file() as i8;
            let dr = to.rank() as i8 - from.rank() as i8;
            let ok = match kind {
                PieceKind::King => df.abs() + dr.abs() == 1 && side.in_palace(to),
                PieceKind::Guard => df.abs() == 1 && dr.abs() == 1 && (!(classic && dark) || side.in_palace(to)),
                PieceKind::Minister => {
                    df.abs() == 2 && dr.abs() == 2 && state.piece_at(from.offset(df / 2, dr / 2).unwrap()).is_none()
                }
                PieceKind::Horse => {
                    let leg = if df.abs() == 2 && dr.abs() == 1 {
                        from.offset(df / 2, 0)
                    } else if df.abs() == 1 && dr.abs() == 2 {
                        from.offset(0, dr / 2)
                    } else {
                        None
                    };
                    leg.is_some_and(|l| state.piece_at(l).is_none())
                }
                PieceKind::Rook => (df == 0 || dr == 0) && pieces_between(state, from, to) == 0,
                PieceKind::Cannon => {
                    (df == 0 || dr == 0)
                        && matches!((pieces_between(state, from, to), target), (0, None) | (1, Some(_)))
                }
                PieceKind::Pawn => {
                    let crossed = match side {
                        Side::Red => from.rank() >= 5,
                        Side::Black => from.rank() <= 4,
                    };
                    (df == 0 && dr == side.forward()) || (crossed && dr == 0 && df.abs() == 1)
                }
            };
            if ok {
                out.insert((from, to));
            }
        }
    }
    out
}

pub fn move_set(moves: &[Move]) -> BTreeSet<(Square, Square)> {
    moves.iter().map(|m| (m.from, m.to)).collect()
}

/// A state whose mover sees exactly the same observation as in `state`:
/// the mover's unresolved identities (face-down on board plus face-down
/// losses) and the opponent's face-down identities are shuffled.
pub fn hidden_twin<R: Rng>(state: &GameState, rng: &mut R) -> GameState {
    let mover = state.side_to_move();
    let mut pos = state.position();

    let mut own: Vec<PieceKind> = pos
        .pieces
        .iter()
        .filter(|(_, p)| p.side == mover && p.is_dark())
        .map(|(_, p)| p.kind)
        .collect();
    let lost = match mover {
        Side::Red => &mut pos.captured_by_black,
        Side::Black => &mut pos.captured_by_red,
    };
    own.extend(lost.iter().filter(|c| c.face == Face::Dark).map(|c| c.kind));
    own.shuffle(rng);
    let mut own = own.into_iter();
    for c in lost.iter_mut().filter(|c| c.face == Face::Dark) {
        c.kind = own.next().unwrap();
    }
    for (_, p) in pos.pieces.iter_mut().filter(|(_, p)| p.side == mover && p.is_dark()) {
        p.kind = own.next().unwrap();
    }

    let mut opp: Vec<PieceKind> = pos
        .pieces
        .iter()
        .filter(|(_, p)| p.side != mover && p.is_dark())
        .map(|(_, p)| p.kind)
        .collect();
    opp.shuffle(rng);
    let mut opp = opp.into_iter();
    for (_, p) in pos.pieces.iter_mut().filter(|(_, p)| p.side != mover && p.is_dark()) {
        p.kind = opp.next().unwrap();
    }
    let twin = GameState::from_position(pos, state.rules()).unwrap();
    assert_eq!(twin.terminal_status(), state.terminal_status());
    twin
}

/// A consistent late-game position with at most `max_dark_per_side`
/// face-down pieces per side. Face-up pieces are scattered on empty squares;
/// everything else is captured, face up or face down.
pub fn sparse_state<R: Rng>(rng: &mut R, max_dark_per_side: usize) -> GameState {
    let mut pieces: Vec<(Square, Piece)> = Vec::new();
    let mut captured = [Vec::new(), Vec::new()];
    let mut taken = [false; NUM_SQUARES];
    for side in Side::BOTH {
        let king = king_home(side);
        pieces.push((king, Piece::revealed(side, PieceKind::King)));
        taken[king.index()] = true;
    }
    for side in Side::BOTH {
        let mut kinds: Vec<PieceKind> = PieceKind::HIDDEN
            .iter()
            .flat_map(|&k| std::iter::repeat_n(k, k.initial_count() as usize))
            .collect();
        kinds.shuffle(rng);
        let mut homes = dark_home_squares(side);
        homes.shuffle(rng);
        let dark = rng.random_range(0..=max_dark_per_side);
        for (i, kind) in kinds.into_iter().enumerate() {
            if i < dark {
                let s = homes[i];
                taken[s.index()] = true;
                pieces.push((s, Piece::dark(side, kind)));
                continue;
            }
            match rng.random_range(0..3) {
                0 => {
                    // Face up somewhere off the opening squares of either side.
                    let s = loop {
                        let s = Square::from_index(rng.random_range(0..NUM_SQUARES));
                        if !taken[s.index()] && home_side(s).is_none() {
                            break s;
                        }
                    };
                    taken[s.index()] = true;
                    pieces.push((s, Piece::revealed(side, kind)));
                }
                1 => captured[side.opponent().index()].push(CapturedPiece { side, kind, face: Face::Revealed }),
                _ => captured[side.opponent().index()].push(CapturedPiece { side, kind, face: Face::Dark }),
            }
        }
    }
    let [captured_by_red, captured_by_black] = captured;
    let pos = Position {
        pieces,
        side_to_move: Some(if rng.random_bool(0.5) { Side::Red } else { Side::Black }),
        captured_by_red,
        captured_by_black,
        plies_since_capture: 0,
        ply_count: 200,
    };
    let state = GameState::from_position(pos, Rules::default()).unwrap();
    state.check_invariants().unwrap();
    state
}

/// Plays uniformly random moves from `state`, calling `visit` on every
/// position reached before the move is made.
pub fn random_walk<R: Rng>(mut state: GameState, rng: &mut R, mut visit: impl FnMut(&GameState)) -> GameState {
    while !state.terminal_status().is_over() {
        visit(&state);
        let moves = state.legal_moves().unwrap();
        let mv = moves[rng.random_range(0..moves.len())];
        state = state.apply_move(mv).unwrap().0;
    }
    state
}
