//! Rules of dark Chinese chess.
//!
//! Face-down pieces move according to the opening role of the square they
//! stand on and turn face up after their first move. Guards and ministers
//! may go anywhere on the board. A game ends on king capture, when a move
//! leaves the two kings facing each other on an open file (the mover loses),
//! after a run of plies without capture, or when the side to move has no
//! move.

mod jfen;
mod movegen;
mod observe;
mod perft;
mod state;
mod types;

pub use jfen::{decode_state, decode_state_with, encode_state, Jfen, JfenError};
pub use movegen::{kings_facing, MoveBoard, Occupant};
pub use observe::{observe, CellView, Observation};
pub use perft::{perft, perft_parallel};
pub use state::{initial_state, EngineError, GameState, Position, Rules};
pub use types::*;
