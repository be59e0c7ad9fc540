//! Size of the information set behind an observation.
//!
//! The size counts the distinct ways to assign identities to the face-down
//! squares on the board that agree with everything the viewer knows. Both
//! sides' face-down pieces are unknown to the viewer, including its own.
//! Identities of the viewer's own face-down pieces that were captured only
//! shrink the pool; they are not placed anywhere.

use std::collections::HashSet;

use thiserror::Error;

use crate::combinatorics::{multiset_arrangements, BigCount, KindMultiset};
use crate::engine::{CellView, Observation, PieceKind, Side, Square};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InfosetError {
    #[error("observation is inconsistent: {0}")]
    Corrupt(String),
    #[error("{0} face-down squares exceed the brute-force limit of {1}")]
    TooManySlots(usize, usize),
}

/// Unresolved identities for each side, seen from one viewer.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HiddenPools {
    pub own_pool: KindMultiset,
    pub own_slots: u32,
    pub opp_pool: KindMultiset,
    pub opp_slots: u32,
}

pub fn hidden_pools(obs: &Observation) -> Result<HiddenPools, InfosetError> {
    let own = obs.viewer;
    let opp = own.opponent();
    let full = KindMultiset::initial();

    let own_seen = obs.revealed_on_board(own).union(&obs.own_revealed_captured_by_opp);
    let own_pool = full
        .checked_sub(&own_seen)
        .ok_or_else(|| InfosetError::Corrupt(format!("{} shows more pieces than it owns", own.name())))?;
    let own_slots = obs.dark_count(own) as u32;
    if own_pool.total() != own_slots + obs.own_dark_lost_count as u32 {
        return Err(InfosetError::Corrupt(format!(
            "{} has {} unresolved identities for {} face-down squares and {} face-down losses",
            own.name(),
            own_pool.total(),
            own_slots,
            obs.own_dark_lost_count
        )));
    }

    let opp_seen = obs
        .revealed_on_board(opp)
        .union(&obs.opp_revealed_captured)
        .union(&obs.opp_dark_captured_by_viewer);
    let opp_pool = full
        .checked_sub(&opp_seen)
        .ok_or_else(|| InfosetError::Corrupt(format!("{} shows more pieces than it owns", opp.name())))?;
    let opp_slots = obs.dark_count(opp) as u32;
    if opp_pool.total() != opp_slots {
        return Err(InfosetError::Corrupt(format!(
            "{} has {} unresolved identities for {} face-down squares",
            opp.name(),
            opp_pool.total(),
            opp_slots
        )));
    }
    Ok(HiddenPools { own_pool, own_slots, opp_pool, opp_slots })
}

impl HiddenPools {
    pub fn size(&self) -> BigCount {
        let own = multiset_arrangements(&self.own_pool, self.own_slots).expect("slots fit pool");
        let opp = multiset_arrangements(&self.opp_pool, self.opp_slots).expect("slots fit pool");
        &own * &opp
    }
}

pub fn infoset_size(obs: &Observation) -> Result<BigCount, InfosetError> {
    Ok(hidden_pools(obs)?.size())
}

pub const BRUTEFORCE_MAX_SLOTS: usize = 8;

/// Lists every identity assignment to the face-down squares explicitly and
/// counts the distinct ones. Reference oracle for [`infoset_size`].
pub fn infoset_size_bruteforce(obs: &Observation) -> Result<BigCount, InfosetError> {
    let pools = hidden_pools(obs)?;
    let slots: Vec<(Square, Side)> = Square::all()
        .filter_map(|sq| match obs.cell(sq) {
            CellView::Dark(side) => Some((sq, side)),
            _ => None,
        })
        .collect();
    if slots.len() > BRUTEFORCE_MAX_SLOTS {
        return Err(InfosetError::TooManySlots(slots.len(), BRUTEFORCE_MAX_SLOTS));
    }
    let mut remaining = [[0u8; 7]; 2];
    for (side, pool) in [(obs.viewer, pools.own_pool), (obs.viewer.opponent(), pools.opp_pool)] {
        for (kind, n) in pool.iter() {
            remaining[side.index()][kind.index()] = n;
        }
    }
    let mut seen: HashSet<Vec<PieceKind>> = HashSet::new();
    let mut current = Vec::with_capacity(slots.len());
    assign(&slots, &mut remaining, &mut current, &mut seen);
    Ok(BigCount::from(seen.len() as u64))
}

fn assign(
    slots: &[(Square, Side)],
    remaining: &mut [[u8; 7]; 2],
    current: &mut Vec<PieceKind>,
    seen: &mut HashSet<Vec<PieceKind>>,
) {
    let Some(&(_, side)) = slots.get(current.len()) else {
        seen.insert(current.clone());
        return;
    };
    for kind in PieceKind::HIDDEN {
        let left = &mut remaining[side.index()][kind.index()];
        if *left == 0 {
            continue;
        }
        *left -= 1;
        current.push(kind);
        assign(slots, remaining, current, seen);
        current.pop();
        remaining[side.index()][kind.index()] += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{initial_state, observe, Face, GameState, Piece, Rules};
    use PieceKind::*;

    #[test]
    fn initial_pools_and_size() {
        let obs = observe(&initial_state(0), Side::Red);
        let pools = hidden_pools(&obs).unwrap();
        assert_eq!(pools.own_pool, KindMultiset::initial());
        assert_eq!(pools.opp_pool, KindMultiset::initial());
        assert_eq!((pools.own_slots, pools.opp_slots), (15, 15));
        let size = infoset_size(&obs).unwrap();
        let per_side = 340_540_200u128;
        assert_eq!(size.to_u128(), Some(per_side * per_side));
        assert!((size.log10() - 17.0644).abs() < 1e-4);
    }

    fn reveal(state: &GameState, mut pred: impl FnMut(Square, Piece) -> bool) -> GameState {
        let mut pos = state.position();
        for (sq, p) in pos.pieces.iter_mut() {
            if pred(*sq, *p) {
                p.face = Face::Revealed;
            }
        }
        GameState::from_position(pos, Rules::default()).unwrap()
    }

    #[test]
    fn own_reveals_shrink_own_pool() {
        let start = initial_state(17);
        let mut cannons = 0;
        let state = reveal(&start, |_, p| {
            p.side == Side::Red
                && (p.kind == Rook || (p.kind == Cannon && {
                    cannons += 1;
                    cannons == 1
                }))
        });
        let obs = observe(&state, Side::Red);
        let pools = hidden_pools(&obs).unwrap();
        assert_eq!(
            pools.own_pool,
            KindMultiset::from_pairs(&[(Cannon, 1), (Horse, 2), (Guard, 2), (Minister, 2), (Pawn, 5)])
        );
        assert_eq!(pools.own_slots, 12);
        // 12! / (1! 2! 2! 2! 5!)
        let expected = 498_960u128 * 340_540_200;
        assert_eq!(infoset_size(&obs).unwrap().to_u128(), Some(expected));
    }

    #[test]
    fn dark_capture_shrinks_opponent_pool() {
        let start = initial_state(1);
        let mut pos = start.position();
        let victim_sq: Square = "b9".parse().unwrap();
        pos.pieces.retain(|(sq, _)| *sq != victim_sq);
        pos.captured_by_red.push(crate::engine::CapturedPiece {
            side: Side::Black,
            kind: Horse,
            face: Face::Dark,
        });
        // Keep the capture consistent: the removed piece must have been a horse.
        let mut swapped = false;
        let victim_kind = start.piece_at(victim_sq).unwrap().kind;
        if victim_kind != Horse {
            for (_, p) in pos.pieces.iter_mut() {
                if !swapped && p.side == Side::Black && p.is_dark() && p.kind == Horse {
                    p.kind = victim_kind;
                    swapped = true;
                }
            }
        }
        let state = GameState::from_position(pos, Rules::default()).unwrap();
        state.check_invariants().unwrap();
        let pools = hidden_pools(&observe(&state, Side::Red)).unwrap();
        assert_eq!(pools.opp_slots, 14);
        assert_eq!(pools.opp_pool.get(Horse), 1);
        // Black does not learn the identity: its own pool keeps all 15.
        let black = hidden_pools(&observe(&state, Side::Black)).unwrap();
        assert_eq!(black.own_pool, KindMultiset::initial());
        assert_eq!(black.own_slots, 14);
    }

    #[test]
    fn fully_revealed_is_one() {
        let state = reveal(&initial_state(3), |_, _| true);
        let obs = observe(&state, Side::Black);
        assert_eq!(infoset_size(&obs).unwrap(), BigCount::one());
        assert_eq!(infoset_size_bruteforce(&obs).unwrap(), BigCount::one());
    }

    #[test]
    fn identical_identities_count_once() {
        // Two red face-down pawns left, everything else face up.
        let start = initial_state(5);
        let mut kept = 0;
        let state = reveal(&start, |_, p| {
            !(p.side == Side::Red && p.kind == Pawn && {
                kept += 1;
                kept <= 2
            })
        });
        let obs = observe(&state, Side::Red);
        assert_eq!(hidden_pools(&obs).unwrap().own_slots, 2);
        assert_eq!(infoset_size_bruteforce(&obs).unwrap(), BigCount::one());
        assert_eq!(infoset_size(&obs).unwrap(), BigCount::one());
    }

    #[test]
    fn bruteforce_rejects_many_slots() {
        let obs = observe(&initial_state(0), Side::Red);
        assert_eq!(infoset_size_bruteforce(&obs), Err(InfosetError::TooManySlots(30, 8)));
    }

    #[test]
    fn corrupt_observation_is_an_error() {
        let mut obs = observe(&initial_state(0), Side::Red);
        obs.own_dark_lost_count = 1;
        assert!(matches!(hidden_pools(&obs), Err(InfosetError::Corrupt(_))));
        let mut obs = observe(&initial_state(0), Side::Red);
        obs.opp_revealed_captured.add(Pawn, 6);
        assert!(matches!(hidden_pools(&obs), Err(InfosetError::Corrupt(_))));
    }

    #[test]
    fn mirrored_observation_has_same_size() {
        let mut state = initial_state(21);
        for mv in ["b2b9", "h7h0", "a3a4"] {
            state = state.apply_move(mv.parse().unwrap()).unwrap().0;
        }
        for viewer in Side::BOTH {
            let obs = observe(&state, viewer);
            assert_eq!(infoset_size(&obs).unwrap(), infoset_size(&obs.mirrored()).unwrap());
        }
    }
}
