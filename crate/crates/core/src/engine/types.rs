//! Board geometry and the basic value types shared by the engine.

use std::fmt;
use std::str::FromStr;

pub const FILES: u8 = 9;
pub const RANKS: u8 = 10;
pub const NUM_SQUARES: usize = 90;

/// A square on the 9x10 board. Files run a..i, rank 0 is Red's back rank.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Square(u8);

impl Square {
    pub fn new(file: u8, rank: u8) -> Option<Square> {
        (file < FILES && rank < RANKS).then(|| Square(rank * FILES + file))
    }

    pub fn from_index(index: usize) -> Square {
        assert!(index < NUM_SQUARES, "square index {index} out of range");
        Square(index as u8)
    }

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub fn file(self) -> u8 {
        self.0 % FILES
    }

    #[inline]
    pub fn rank(self) -> u8 {
        self.0 / FILES
    }

    /// Shifts by (df, dr), returning `None` when leaving the board.
    #[inline]
    pub fn offset(self, df: i8, dr: i8) -> Option<Square> {
        let f = self.file() as i8 + df;
        let r = self.rank() as i8 + dr;
        if (0..FILES as i8).contains(&f) && (0..RANKS as i8).contains(&r) {
            Some(Square(r as u8 * FILES + f as u8))
        } else {
            None
        }
    }

    /// Same file, rank reflected (a0 <-> a9).
    pub fn mirror(self) -> Square {
        Square((RANKS - 1 - self.rank()) * FILES + self.file())
    }

    pub fn all() -> impl Iterator<Item = Square> {
        (0..NUM_SQUARES as u8).map(Square)
    }
}

impl fmt::Display for Square {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", (b'a' + self.file()) as char, self.rank())
    }
}

impl FromStr for Square {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bytes = s.as_bytes();
        if bytes.len() != 2 {
            return Err(format!("bad square '{s}'"));
        }
        let file = bytes[0].wrapping_sub(b'a');
        let rank = bytes[1].wrapping_sub(b'0');
        Square::new(file, rank).ok_or_else(|| format!("bad square '{s}'"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    Red,
    Black,
}

impl Side {
    pub const BOTH: [Side; 2] = [Side::Red, Side::Black];

    #[inline]
    pub fn opponent(self) -> Side {
        match self {
            Side::Red => Side::Black,
            Side::Black => Side::Red,
        }
    }

    #[inline]
    pub fn index(self) -> usize {
        self as usize
    }

    /// Rank direction of a forward pawn step.
    #[inline]
    pub fn forward(self) -> i8 {
        match self {
            Side::Red => 1,
            Side::Black => -1,
        }
    }

    /// Whether `sq` lies on this side's own half of the river.
    #[inline]
    pub fn own_half(self, sq: Square) -> bool {
        match self {
            Side::Red => sq.rank() <= 4,
            Side::Black => sq.rank() >= 5,
        }
    }

    #[inline]
    pub fn in_palace(self, sq: Square) -> bool {
        let rank_ok = match self {
            Side::Red => sq.rank() <= 2,
            Side::Black => sq.rank() >= 7,
        };
        rank_ok && (3..=5).contains(&sq.file())
    }

    pub fn name(self) -> &'static str {
        match self {
            Side::Red => "red",
            Side::Black => "black",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PieceKind {
    King,
    Guard,
    Minister,
    Rook,
    Horse,
    Cannon,
    Pawn,
}

impl PieceKind {
    pub const ALL: [PieceKind; 7] = [
        PieceKind::King,
        PieceKind::Guard,
        PieceKind::Minister,
        PieceKind::Rook,
        PieceKind::Horse,
        PieceKind::Cannon,
        PieceKind::Pawn,
    ];

    /// The six kinds that start face down.
    pub const HIDDEN: [PieceKind; 6] = [
        PieceKind::Guard,
        PieceKind::Minister,
        PieceKind::Rook,
        PieceKind::Horse,
        PieceKind::Cannon,
        PieceKind::Pawn,
    ];

    #[inline]
    pub fn index(self) -> usize {
        self as usize
    }

    /// Number of pieces of this kind each side starts with.
    pub fn initial_count(self) -> u8 {
        match self {
            PieceKind::King => 1,
            PieceKind::Pawn => 5,
            _ => 2,
        }
    }

    /// Upper-case letter used by the text format.
    pub fn letter(self) -> char {
        match self {
            PieceKind::King => 'K',
            PieceKind::Guard => 'G',
            PieceKind::Minister => 'M',
            PieceKind::Rook => 'R',
            PieceKind::Horse => 'H',
            PieceKind::Cannon => 'C',
            PieceKind::Pawn => 'P',
        }
    }

    pub fn from_letter(c: char) -> Option<PieceKind> {
        Some(match c.to_ascii_uppercase() {
            'K' => PieceKind::King,
            'G' => PieceKind::Guard,
            'M' => PieceKind::Minister,
            'R' => PieceKind::Rook,
            'H' => PieceKind::Horse,
            'C' => PieceKind::Cannon,
            'P' => PieceKind::Pawn,
            _ => return None,
        })
    }

    pub fn side_letter(self, side: Side) -> char {
        match side {
            Side::Red => self.letter(),
            Side::Black => self.letter().to_ascii_lowercase(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Face {
    Dark,
    Revealed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Piece {
    pub side: Side,
    pub kind: PieceKind,
    pub face: Face,
}

impl Piece {
    pub fn revealed(side: Side, kind: PieceKind) -> Piece {
        Piece { side, kind, face: Face::Revealed }
    }

    pub fn dark(side: Side, kind: PieceKind) -> Piece {
        Piece { side, kind, face: Face::Dark }
    }

    #[inline]
    pub fn is_dark(&self) -> bool {
        self.face == Face::Dark
    }
}

/// A piece that left the board, as remembered by the capturer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CapturedPiece {
    pub side: Side,
    pub kind: PieceKind,
    pub face: Face,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Move {
    pub from: Square,
    pub to: Square,
}

impl Move {
    pub fn new(from: Square, to: Square) -> Move {
        Move { from, to }
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.from, self.to)
    }
}

impl FromStr for Move {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.len() != 4 || !s.is_ascii() {
            return Err(format!("bad move '{s}'"));
        }
        let from: Square = s[..2].parse()?;
        let to: Square = s[2..].parse()?;
        if from == to {
            return Err(format!("null move '{s}'"));
        }
        Ok(Move { from, to })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum WinReason {
    KingCaptured,
    MeetMarshals,
    OpponentStalemated,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TerminalStatus {
    Ongoing,
    Win(Side, WinReason),
    Draw,
}

impl TerminalStatus {
    pub fn is_over(self) -> bool {
        self != TerminalStatus::Ongoing
    }

    /// Stable snake_case label used in CSV and JSON output.
    pub fn label(self) -> &'static str {
        use Side::*;
        use WinReason::*;
        match self {
            TerminalStatus::Ongoing => "ongoing",
            TerminalStatus::Draw => "draw",
            TerminalStatus::Win(Red, KingCaptured) => "red_king_captured",
            TerminalStatus::Win(Black, KingCaptured) => "black_king_captured",
            TerminalStatus::Win(Red, MeetMarshals) => "red_meet_marshals",
            TerminalStatus::Win(Black, MeetMarshals) => "black_meet_marshals",
            TerminalStatus::Win(Red, OpponentStalemated) => "red_stalemate",
            TerminalStatus::Win(Black, OpponentStalemated) => "black_stalemate",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MoveOutcome {
    /// True kind of the moved piece when it was face down before the move.
    pub revealed: Option<PieceKind>,
    pub captured: Option<CapturedPiece>,
    pub game_ended: TerminalStatus,
}

/// Chinese-chess opening layout: the kind that starts on `sq`, if any.
pub fn role_of_square(sq: Square) -> Option<PieceKind> {
    // Normalise to Red's half; the layout is symmetric under rank mirroring.
    let sq = if sq.rank() >= 5 { sq.mirror() } else { sq };
    let (file, rank) = (sq.file(), sq.rank());
    match rank {
        0 => Some(match file {
            0 | 8 => PieceKind::Rook,
            1 | 7 => PieceKind::Horse,
            2 | 6 => PieceKind::Minister,
            3 | 5 => PieceKind::Guard,
            _ => PieceKind::King,
        }),
        2 if file == 1 || file == 7 => Some(PieceKind::Cannon),
        3 if file % 2 == 0 => Some(PieceKind::Pawn),
        _ => None,
    }
}

/// Side whose opening layout contains `sq`, for the 32 initial squares.
pub fn home_side(sq: Square) -> Option<Side> {
    role_of_square(sq)?;
    Some(if sq.rank() <= 4 { Side::Red } else { Side::Black })
}

/// The 15 initial non-king squares of `side`, in ascending index order.
pub fn dark_home_squares(side: Side) -> Vec<Square> {
    Square::all()
        .filter(|&sq| {
            home_side(sq) == Some(side) && role_of_square(sq) != Some(PieceKind::King)
        })
        .collect()
}

pub fn king_home(side: Side) -> Square {
    match side {
        Side::Red => Square::new(4, 0).unwrap(),
        Side::Black => Square::new(4, 9).unwrap(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sq(s: &str) -> Square {
        s.parse().unwrap()
    }

    #[test]
    fn roles_of_opening_squares() {
        assert_eq!(role_of_square(sq("b2")), Some(PieceKind::Cannon));
        assert_eq!(role_of_square(sq("a3")), Some(PieceKind::Pawn));
        assert_eq!(role_of_square(sq("e4")), None);
        assert_eq!(role_of_square(sq("i9")), Some(PieceKind::Rook));
        assert_eq!(role_of_square(sq("h7")), Some(PieceKind::Cannon));
        assert_eq!(role_of_square(sq("g6")), Some(PieceKind::Pawn));
        assert_eq!(role_of_square(sq("e9")), Some(PieceKind::King));
        assert_eq!(role_of_square(sq("b6")), None);
        let roles = Square::all().filter_map(role_of_square).count();
        assert_eq!(roles, 32);
    }

    #[test]
    fn dark_home_squares_match_initial_multiset() {
        for side in Side::BOTH {
            let squares = dark_home_squares(side);
            assert_eq!(squares.len(), 15);
            for kind in PieceKind::HIDDEN {
                let n = squares.iter().filter(|&&s| role_of_square(s) == Some(kind)).count();
                assert_eq!(n as u8, kind.initial_count());
            }
        }
    }

    #[test]
    fn square_text_round_trip() {
        for s in Square::all() {
            assert_eq!(s.to_string().parse::<Square>().unwrap(), s);
        }
        assert!("j0".parse::<Square>().is_err());
        assert!("a10".parse::<Square>().is_err());
    }

    #[test]
    fn palace_and_river() {
        assert!(Side::Red.in_palace(sq("d2")));
        assert!(!Side::Red.in_palace(sq("c1")));
        assert!(Side::Black.in_palace(sq("f7")));
        assert!(Side::Red.own_half(sq("a4")));
        assert!(!Side::Red.own_half(sq("a5")));
    }
}
