//! Dark Chinese chess (JieQi): a rules engine plus tools that measure the
//! game's size: branching factor and game length from random self-play,
//! exact information-set sizes, and the total number of information sets.

pub mod cli;
pub mod combinatorics;
pub mod engine;
pub mod enumeration;
pub mod infoset;
pub mod simulator;
