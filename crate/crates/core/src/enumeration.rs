//! Total number of information sets, counted from Red's side.
//!
//! Kings are fixed and left out, so 30 pieces share the remaining 88
//! squares, and the 15 non-king pieces of each side are treated as
//! distinguishable. A configuration is described by how many pieces of
//! each side are on the board, how many of those are face down, and (for
//! Red only, when it has face-down pieces on the board) how many of its
//! captured pieces were taken face down. Face-down pieces occupy a choice of
//! their side's opening squares; face-up pieces are placed injectively on
//! the squares left over.
//!
//! The counting runs over precomputed tables:
//!
//! * `red[i][j][k] = C(n, i) C(i, j) C(n - i, k)`: Red identity subsets with
//!   `i` on board, `j` of them face down, `k` of the off-board ones face down;
//! * `black[i][j] = C(n, i) C(i, j)`: the same for Black without the
//!   off-board split, which Red cannot observe;
//! * `bright[a][d] = (S - d)! / (S - a)!`: placements of the `a - d` face-up
//!   pieces when `a` pieces are on board and `d` are face down.

use thiserror::Error;

use crate::combinatorics::{binomial, falling_factorial, BigCount};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EnumerationError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("parameters {0:?} exceed the brute-force limits (pieces <= 3, squares <= 10)")]
    TooLarge(CountParams),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CountParams {
    pub pieces_per_side: u32,
    pub board_squares: u32,
    pub dark_squares_per_side: u32,
}

impl CountParams {
    /// 15 pieces per side, 88 free squares, 15 opening squares per side.
    pub const STANDARD: CountParams =
        CountParams { pieces_per_side: 15, board_squares: 88, dark_squares_per_side: 15 };

    pub fn new(pieces_per_side: u32, board_squares: u32, dark_squares_per_side: u32) -> CountParams {
        CountParams { pieces_per_side, board_squares, dark_squares_per_side }
    }

    pub fn validate(&self) -> Result<(), EnumerationError> {
        if self.dark_squares_per_side > self.pieces_per_side {
            return Err(EnumerationError::InvalidParams(format!(
                "{} face-down squares per side exceeds {} pieces per side",
                self.dark_squares_per_side, self.pieces_per_side
            )));
        }
        if self.board_squares < 2 * self.pieces_per_side {
            return Err(EnumerationError::InvalidParams(format!(
                "{} squares cannot hold 2 x {} pieces",
                self.board_squares, self.pieces_per_side
            )));
        }
        Ok(())
    }
}

/// How to treat the off-board face-down split when Red has no face-down
/// piece on the board.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BranchReading {
    /// The split is ignored: with all on-board Red pieces face up, Red's
    /// captured pieces contribute a single configuration.
    Collapsed,
    /// The split is summed in every case.
    AlwaysSummed,
}

pub struct CountTables {
    n: usize,
    red: Vec<Vec<Vec<BigCount>>>,
    black: Vec<Vec<BigCount>>,
    bright: Vec<Vec<BigCount>>,
}

impl CountTables {
    pub fn new(params: &CountParams) -> CountTables {
        let n = params.pieces_per_side as usize;
        let c = |a: usize, b: usize| binomial(a as u64, b as i64);
        let red = (0..=n)
            .map(|i| (0..=n).map(|j| (0..=n).map(|k| &(&c(n, i) * &c(i, j)) * &c(n - i, k)).collect()).collect())
            .collect();
        let black = (0..=n).map(|i| (0..=n).map(|j| &c(n, i) * &c(i, j)).collect()).collect();
        let squares = params.board_squares as u64;
        let bright = (0..=2 * n)
            .map(|a| {
                (0..=2 * n)
                    .map(|d| {
                        if d > a {
                            BigCount::zero()
                        } else {
                            falling_factorial(squares - d as u64, (a - d) as u64).unwrap_or_default()
                        }
                    })
                    .collect()
            })
            .collect();
        CountTables { n, red, black, bright }
    }

    pub fn red(&self, on: usize, on_dark: usize, off_dark: usize) -> &BigCount {
        &self.red[on][on_dark][off_dark]
    }

    pub fn black(&self, on: usize, on_dark: usize) -> &BigCount {
        &self.black[on][on_dark]
    }

    pub fn bright(&self, on: usize, dark: usize) -> &BigCount {
        &self.bright[on][dark]
    }

    pub fn pieces_per_side(&self) -> usize {
        self.n
    }
}

pub fn count_information_sets(params: &CountParams) -> Result<BigCount, EnumerationError> {
    count_information_sets_with(params, BranchReading::Collapsed)
}

pub fn count_information_sets_with(
    params: &CountParams,
    reading: BranchReading,
) -> Result<BigCount, EnumerationError> {
    params.validate()?;
    let tables = CountTables::new(params);
    let n = params.pieces_per_side as usize;
    let dark_squares = params.dark_squares_per_side as u64;
    let c = |a: u64, b: usize| binomial(a, b as i64);

    let mut total = BigCount::zero();
    for red_on in 0..=n {
        for black_on in 0..=n {
            let all_on = red_on + black_on;
            for black_dark in 0..=black_on {
                for red_dark in 0..=red_on {
                    let all_dark = red_dark + black_dark;
                    let shared = &(&(tables.black(black_on, black_dark) * tables.bright(all_on, all_dark))
                        * &c(dark_squares, black_dark))
                        * &c(dark_squares, red_dark);
                    if shared.is_zero() {
                        continue;
                    }
                    let red_factor = if red_dark == 0 && reading == BranchReading::Collapsed {
                        c(n as u64, red_on)
                    } else {
                        (0..=n - red_on).map(|off| tables.red(red_on, red_dark, off).clone()).sum()
                    };
                    total += &(&red_factor * &shared);
                }
            }
        }
    }
    Ok(total)
}

/// Walks every configuration the closed form counts, one by one: identity
/// subsets as bit masks, square subsets as bit masks and each injective
/// placement of the face-up pieces. Checks the counting identity on small
/// parameters; it says nothing about which positions are reachable.
pub fn count_information_sets_bruteforce(
    params: &CountParams,
    reading: BranchReading,
) -> Result<BigCount, EnumerationError> {
    params.validate()?;
    if params.pieces_per_side > 3 || params.board_squares > 10 {
        return Err(EnumerationError::TooLarge(*params));
    }
    let n = params.pieces_per_side;
    let d = params.dark_squares_per_side;
    let squares = params.board_squares;
    let all_pieces: u32 = (1 << n) - 1;
    let red_dark_squares: u32 = (1 << d) - 1;
    let black_dark_squares: u32 = red_dark_squares << d;

    let mut total: u64 = 0;
    for red_on in subsets(all_pieces) {
        for red_dark in subsets(red_on) {
            let off_board = all_pieces & !red_on;
            let off_splits: Vec<u32> = if red_dark == 0 && reading == BranchReading::Collapsed {
                vec![0]
            } else {
                subsets(off_board).collect()
            };
            for _off_dark in off_splits {
                for black_on in subsets(all_pieces) {
                    for black_dark in subsets(black_on) {
                        for red_sq in subsets(red_dark_squares).filter(|s| s.count_ones() == red_dark.count_ones()) {
                            for black_sq in
                                subsets(black_dark_squares).filter(|s| s.count_ones() == black_dark.count_ones())
                            {
                                let bright =
                                    (red_on & !red_dark).count_ones() + (black_on & !black_dark).count_ones();
                                total += placements(bright, red_sq | black_sq, squares);
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(BigCount::from(total))
}

/// All subsets of `mask`, including the empty set and `mask` itself.
fn subsets(mask: u32) -> impl Iterator<Item = u32> {
    let mut next = Some(mask);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == 0 { None } else { Some((cur - 1) & mask) };
        Some(cur)
    })
}

/// Enumerates every way to put `pieces` labelled pieces on distinct free squares.
fn placements(pieces: u32, occupied: u32, squares: u32) -> u64 {
    if pieces == 0 {
        return 1;
    }
    (0..squares)
        .filter(|s| occupied & (1 << s) == 0)
        .map(|s| placements(pieces - 1, occupied | (1 << s), squares))
        .sum()
}
