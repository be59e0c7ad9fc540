//! Exact counting primitives.
//!
//! Everything here works on arbitrary-precision integers; the `log10` view
//! of a [`BigCount`] is derived from the exact value at the very end.

use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Mul};
use std::sync::OnceLock;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use crate::engine::PieceKind;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CountError {
    #[error("cannot take {k} items from {n}")]
    TooMany { n: u64, k: u64 },
}

/// Non-negative integer of unbounded size.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BigCount(BigUint);

impl BigCount {
    pub fn zero() -> BigCount {
        BigCount(BigUint::zero())
    }

    pub fn one() -> BigCount {
        BigCount(BigUint::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn as_biguint(&self) -> &BigUint {
        &self.0
    }

    pub fn to_u128(&self) -> Option<u128> {
        self.0.to_u128()
    }

    /// Decimal logarithm; `-inf` for zero.
    pub fn log10(&self) -> f64 {
        if self.0.is_zero() {
            return f64::NEG_INFINITY;
        }
        let bits = self.0.bits();
        if bits <= 1000 {
            return self.0.to_f64().expect("fits in f64").log10();
        }
        let shift = bits - 64;
        let top = (&self.0 >> shift).to_f64().expect("64-bit head");
        top.log10() + shift as f64 * std::f64::consts::LOG10_2
    }

    /// Number of decimal digits (1 for zero).
    pub fn decimal_digits(&self) -> usize {
        self.0.to_str_radix(10).len()
    }

    /// Exact integer quotient, rounding down.
    pub fn div_floor(&self, divisor: u64) -> BigCount {
        BigCount(&self.0 / divisor)
    }
}

impl From<u64> for BigCount {
    fn from(v: u64) -> Self {
        BigCount(BigUint::from(v))
    }
}

impl From<BigUint> for BigCount {
    fn from(v: BigUint) -> Self {
        BigCount(v)
    }
}

impl fmt::Display for BigCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl Add<&BigCount> for &BigCount {
    type Output = BigCount;
    fn add(self, rhs: &BigCount) -> BigCount {
        BigCount(&self.0 + &rhs.0)
    }
}

impl Add for BigCount {
    type Output = BigCount;
    fn add(self, rhs: BigCount) -> BigCount {
        BigCount(self.0 + rhs.0)
    }
}

impl AddAssign<&BigCount> for BigCount {
    fn add_assign(&mut self, rhs: &BigCount) {
        self.0 += &rhs.0;
    }
}

impl Mul<&BigCount> for &BigCount {
    type Output = BigCount;
    fn mul(self, rhs: &BigCount) -> BigCount {
        BigCount(&self.0 * &rhs.0)
    }
}

impl Mul for BigCount {
    type Output = BigCount;
    fn mul(self, rhs: BigCount) -> BigCount {
        BigCount(self.0 * rhs.0)
    }
}

impl Sum for BigCount {
    fn sum<I: Iterator<Item = BigCount>>(iter: I) -> BigCount {
        iter.fold(BigCount::zero(), |acc, x| acc + x)
    }
}

impl Product for BigCount {
    fn product<I: Iterator<Item = BigCount>>(iter: I) -> BigCount {
        iter.fold(BigCount::one(), |acc, x| acc * x)
    }
}

const MEMO_ROWS: usize = 129;

fn pascal() -> &'static Vec<Vec<BigUint>> {
    static TABLE: OnceLock<Vec<Vec<BigUint>>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut rows: Vec<Vec<BigUint>> = Vec::with_capacity(MEMO_ROWS);
        rows.push(vec![BigUint::one()]);
        for n in 1..MEMO_ROWS {
            let prev = &rows[n - 1];
            let mut row = Vec::with_capacity(n + 1);
            row.push(BigUint::one());
            for k in 1..n {
                row.push(&prev[k - 1] + &prev[k]);
            }
            row.push(BigUint::one());
            rows.push(row);
        }
        rows
    })
}

/// C(n, k), zero when `k` is outside `0..=n`. Rows up to n = 128 are memoised.
pub fn binomial(n: u64, k: i64) -> BigCount {
    if k < 0 || k as u64 > n {
        return BigCount::zero();
    }
    let k = k as u64;
    if (n as usize) < MEMO_ROWS {
        return BigCount(pascal()[n as usize][k as usize].clone());
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    BigCount(acc)
}

/// n (n-1) ... (n-k+1); the number of injective placements of k labelled
/// items into n slots.
pub fn falling_factorial(n: u64, k: u64) -> Result<BigCount, CountError> {
    if k > n {
        return Err(CountError::TooMany { n, k });
    }
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
    }
    Ok(BigCount(acc))
}

/// Counts of the six non-king piece kinds.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct KindMultiset {
    counts: [u8; 6],
}

fn slot(kind: PieceKind) -> usize {
    assert!(kind != PieceKind::King, "kings are never pooled");
    kind.index() - 1
}

impl KindMultiset {
    pub fn empty() -> KindMultiset {
        KindMultiset::default()
    }

    /// One side's 15 non-king pieces at the start of a game.
    pub fn initial() -> KindMultiset {
        let mut m = KindMultiset::empty();
        for kind in PieceKind::HIDDEN {
            m.add(kind, kind.initial_count());
        }
        m
    }

    pub fn from_pairs(pairs: &[(PieceKind, u8)]) -> KindMultiset {
        let mut m = KindMultiset::empty();
        for &(kind, n) in pairs {
            m.add(kind, n);
        }
        m
    }

    pub fn get(&self, kind: PieceKind) -> u8 {
        self.counts[slot(kind)]
    }

    pub fn add(&mut self, kind: PieceKind, n: u8) {
        self.counts[slot(kind)] += n;
    }

    pub fn total(&self) -> u32 {
        self.counts.iter().map(|&c| c as u32).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.total() == 0
    }

    /// Number of kinds with a non-zero count.
    pub fn distinct_kinds(&self) -> usize {
        self.counts.iter().filter(|&&c| c > 0).count()
    }

    /// `self - other`, or `None` if any count would go negative.
    pub fn checked_sub(&self, other: &KindMultiset) -> Option<KindMultiset> {
        let mut out = *self;
        for (a, b) in out.counts.iter_mut().zip(other.counts) {
            *a = a.checked_sub(b)?;
        }
        Some(out)
    }

    pub fn union(&self, other: &KindMultiset) -> KindMultiset {
        let mut out = *self;
        for (a, b) in out.counts.iter_mut().zip(other.counts) {
            *a += b;
        }
        out
    }

    /// Non-zero `(kind, count)` pairs in kind order.
    pub fn iter(&self) -> impl Iterator<Item = (PieceKind, u8)> + '_ {
        PieceKind::HIDDEN
            .iter()
            .zip(self.counts)
            .filter(|(_, c)| *c > 0)
            .map(|(&k, c)| (k, c))
    }
}

impl fmt::Debug for KindMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.iter()).finish()
    }
}

/// Number of distinct kind sequences of length `k` drawn without
/// replacement from `pool`: the sum over admissible count vectors `a` of
/// k! / prod(a_i!). Equals the multinomial coefficient when `k = |pool|`.
pub fn multiset_arrangements(pool: &KindMultiset, k: u32) -> Result<BigCount, CountError> {
    let size = pool.total();
    if k > size {
        return Err(CountError::TooMany { n: size as u64, k: k as u64 });
    }
    match arrangements_u128(pool, k as usize) {
        Some(v) => Ok(BigCount(BigUint::from(v))),
        None => Ok(arrangements_big(pool, k as usize)),
    }
}

fn arrangements_big(pool: &KindMultiset, k: usize) -> BigCount {
    // ways[j]: sequences of length j using the kinds processed so far.
    let mut ways = vec![BigUint::zero(); k + 1];
    ways[0] = BigUint::one();
    for (_, count) in pool.iter() {
        let mut next = vec![BigUint::zero(); k + 1];
        for (j, slot) in next.iter_mut().enumerate() {
            for used in 0..=(count as usize).min(j) {
                if ways[j - used].is_zero() {
                    continue;
                }
                *slot += &ways[j - used] * binomial(j as u64, used as i64).0;
            }
        }
        ways = next;
    }
    BigCount(ways.swap_remove(k))
}

fn pascal_u128() -> &'static Vec<Vec<u128>> {
    static TABLE: OnceLock<Vec<Vec<u128>>> = OnceLock::new();
    TABLE.get_or_init(|| {
        pascal()
            .iter()
            .map(|row| row.iter().map(|c| c.to_u128().expect("C(128, k) fits in u128")).collect())
            .collect()
    })
}

/// Same recurrence in checked machine arithmetic; `None` on overflow.
fn arrangements_u128(pool: &KindMultiset, k: usize) -> Option<u128> {
    if k >= MEMO_ROWS {
        return None;
    }
    let table = pascal_u128();
    let mut ways = [0u128; MEMO_ROWS];
    ways[0] = 1;
    for (_, count) in pool.iter() {
        for j in (0..=k).rev() {
            let mut acc: u128 = 0;
            for used in 0..=(count as usize).min(j) {
                let term = ways[j - used].checked_mul(table[j][used])?;
                acc = acc.checked_add(term)?;
            }
            ways[j] = acc;
        }
    }
    Some(ways[k])
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use PieceKind::*;

    fn big(v: u64) -> BigCount {
        BigCount::from(v)
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(15, 2), big(105));
        assert_eq!(binomial(5, 7), big(0));
        assert_eq!(binomial(10, 5), big(252));
        assert_eq!(binomial(10, -1), big(0));
        assert_eq!(binomial(0, 0), big(1));
        // Beyond the memo table.
        assert_eq!(binomial(200, 2), big(19_900));
        assert_eq!(binomial(200, 198), big(19_900));
    }

    #[test]
    fn binomial_symmetry_and_pascal() {
        for n in 0..=40u64 {
            for k in 0..=n as i64 {
                assert_eq!(binomial(n, k), binomial(n, n as i64 - k));
                if n > 0 {
                    assert_eq!(binomial(n, k), &binomial(n - 1, k - 1) + &binomial(n - 1, k));
                }
            }
        }
    }

    #[test]
    fn falling_factorial_values() {
        assert_eq!(falling_factorial(88, 0).unwrap(), big(1));
        assert_eq!(falling_factorial(5, 2).unwrap(), big(20));
        assert_eq!(falling_factorial(3, 4), Err(CountError::TooMany { n: 3, k: 4 }));
        let f = falling_factorial(88, 30).unwrap();
        // Independent product loop.
        let mut direct = BigUint::one();
        for i in 59..=88u32 {
            direct *= i;
        }
        assert_eq!(f.as_biguint(), &direct);
        assert!((55.5..=56.5).contains(&f.log10()), "{}", f.log10());
        assert_eq!(f.decimal_digits(), 56);
    }

    #[test]
    fn arrangements_examples() {
        let full = KindMultiset::initial();
        assert_eq!(full.total(), 15);
        assert_eq!(multiset_arrangements(&full, 15).unwrap(), big(340_540_200));
        assert_eq!(multiset_arrangements(&full, 0).unwrap(), big(1));
        assert_eq!(multiset_arrangements(&KindMultiset::empty(), 0).unwrap(), big(1));
        let rp = KindMultiset::from_pairs(&[(Rook, 1), (Pawn, 2)]);
        assert_eq!(multiset_arrangements(&rp, 2).unwrap(), big(3));
        assert!(multiset_arrangements(&rp, 4).is_err());
    }

    #[test]
    fn log10_of_large_values() {
        let mut v = BigCount::one();
        for _ in 0..400 {
            v = &v * &big(10);
        }
        assert!((v.log10() - 400.0).abs() < 1e-9);
        assert!(big(0).log10().is_infinite());
        assert!((big(340_540_200).log10() - 8.532_168_386_755_869).abs() < 1e-12);
    }

    /// Counts kind sequences by walking every slot choice.
    fn brute_arrangements(pool: [u8; 4], k: usize) -> u64 {
        fn walk(left: &mut [u8; 4], k: usize) -> u64 {
            if k == 0 {
                return 1;
            }
            let mut n = 0;
            for i in 0..4 {
                if left[i] > 0 {
                    left[i] -= 1;
                    n += walk(left, k - 1);
                    left[i] += 1;
                }
            }
            n
        }
        walk(&mut pool.clone(), k)
    }

    #[test]
    fn arrangements_match_enumeration_exhaustively() {
        let kinds = [Rook, Horse, Cannon, Pawn];
        for a in 0..=8u8 {
            for b in 0..=8 - a {
                for c in 0..=8 - a - b {
                    for d in 0..=8 - a - b - c {
                        let counts = [a, b, c, d];
                        let pool = KindMultiset::from_pairs(
                            &kinds.iter().copied().zip(counts).collect::<Vec<_>>(),
                        );
                        for k in 0..=pool.total() as usize {
                            assert_eq!(
                                multiset_arrangements(&pool, k as u32).unwrap(),
                                big(brute_arrangements(counts, k)),
                                "{counts:?} k={k}"
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn machine_and_bignum_paths_agree() {
        let pool = KindMultiset::from_pairs(&[(Rook, 3), (Horse, 2), (Pawn, 5), (Guard, 1)]);
        for k in 0..=11 {
            assert_eq!(Some(arrangements_big(&pool, k).to_u128().unwrap()), arrangements_u128(&pool, k));
        }
        // Large enough to overflow u128 and take the fallback.
        let wide = KindMultiset::from_pairs(&PieceKind::HIDDEN.map(|kd| (kd, 40)));
        assert_eq!(arrangements_u128(&wide, 120), None);
        let v = multiset_arrangements(&wide, 120).unwrap();
        assert_eq!(v, arrangements_big(&wide, 120));
        assert!(v.log10() > 38.0);
    }

    proptest! {
        #[test]
        fn distinct_pool_gives_falling_factorial(n in 0u32..=6, k in 0u32..=6) {
            prop_assume!(k <= n);
            let pool = KindMultiset::from_pairs(
                &PieceKind::HIDDEN[..n as usize].iter().map(|&kd| (kd, 1)).collect::<Vec<_>>(),
            );
            prop_assert_eq!(
                multiset_arrangements(&pool, k).unwrap(),
                falling_factorial(n as u64, k as u64).unwrap()
            );
        }

        #[test]
        fn full_draw_is_multinomial(counts in proptest::array::uniform6(0u8..=5)) {
            let pool = KindMultiset::from_pairs(
                &PieceKind::HIDDEN.iter().copied().zip(counts).collect::<Vec<_>>(),
            );
            let n = pool.total() as u64;
            let mut expect = falling_factorial(n, n).unwrap();
            for c in counts {
                expect = BigCount(expect.0 / falling_factorial(c as u64, c as u64).unwrap().0);
            }
            prop_assert_eq!(multiset_arrangements(&pool, n as u32).unwrap(), expect);
        }
    }
}
