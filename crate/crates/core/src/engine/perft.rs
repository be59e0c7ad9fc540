//! Leaf counting over the ground-truth game tree.

use rayon::prelude::*;

use super::state::{EngineError, GameState};

/// Number of move sequences of each length `1..=depth` from `state`.
/// Finished games have no children. Face-down identities resolve from the
/// state's fixed hidden assignment.
pub fn perft(state: &GameState, depth: u32) -> Result<Vec<u64>, EngineError> {
    let mut counts = vec![0u64; depth as usize];
    walk(state, depth, 0, &mut counts)?;
    Ok(counts)
}

fn walk(state: &GameState, depth: u32, ply: usize, counts: &mut [u64]) -> Result<(), EngineError> {
    if ply as u32 == depth || state.terminal_status().is_over() {
        return Ok(());
    }
    for mv in state.legal_moves()? {
        counts[ply] += 1;
        let (child, _) = state.apply_move(mv)?;
        walk(&child, depth, ply + 1, counts)?;
    }
    Ok(())
}

/// [`perft`] with root moves spread over the current rayon pool. The result
/// does not depend on the pool size.
pub fn perft_parallel(state: &GameState, depth: u32) -> Result<Vec<u64>, EngineError> {
    if depth == 0 || state.terminal_status().is_over() {
        return Ok(vec![0; depth as usize]);
    }
    let moves = state.legal_moves()?;
    let subtrees = moves
        .par_iter()
        .map(|&mv| {
            let (child, _) = state.apply_move(mv)?;
            perft(&child, depth - 1)
        })
        .collect::<Result<Vec<_>, _>>()?;
    let mut counts = vec![0u64; depth as usize];
    counts[0] = moves.len() as u64;
    for sub in subtrees {
        for (i, n) in sub.into_iter().enumerate() {
            counts[i + 1] += n;
        }
    }
    Ok(counts)
}
