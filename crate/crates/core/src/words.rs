//! Freely reduced words over a finite ranked basis.
//!
//! A [`Word`] always carries the rank of its ambient free group and is kept
//! freely reduced by every constructor, so two words are equal as group
//! elements iff they are equal as values.
//!
//! Text form: letters separated by single spaces, generator `i` written
//! `x<i>` and its inverse `X<i>`, the identity written `1`.

use std::fmt;
use std::ops::Mul;
use std::sync::atomic::{AtomicUsize, Ordering};

use rand::Rng;

use crate::error::{Error, Result};

/// Default limit on the number of letters a checked operation may produce.
pub const DEFAULT_MAX_WORD_LEN: usize = 1_000_000;

static MAX_WORD_LEN: AtomicUsize = AtomicUsize::new(DEFAULT_MAX_WORD_LEN);

/// Current limit enforced by the checked (`try_*`) word operations.
pub fn max_word_len() -> usize {
    MAX_WORD_LEN.load(Ordering::Relaxed)
}

/// Changes the limit enforced by the checked word operations.
pub fn set_max_word_len(limit: usize) {
    MAX_WORD_LEN.store(limit, Ordering::Relaxed);
}

/// A basis letter or its inverse, stored as a nonzero signed index
/// (`+i` is generator `i`, `-i` its inverse).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter(i32);

impl Letter {
    /// Generator `index` (1-based), inverted when `inverse` is set.
    pub fn new(index: usize, inverse: bool) -> Letter {
        assert!(index >= 1, "generator indices are 1-based");
        let i = i32::try_from(index).expect("generator index fits in i32");
        Letter(if inverse { -i } else { i })
    }

    pub fn gen(index: usize) -> Letter {
        Letter::new(index, false)
    }

    pub fn from_signed(value: i32) -> Option<Letter> {
        (value != 0).then_some(Letter(value))
    }

    pub fn signed(self) -> i32 {
        self.0
    }

    pub fn index(self) -> usize {
        self.0.unsigned_abs() as usize
    }

    /// `+1` for a generator, `-1` for an inverse letter.
    pub fn sign(self) -> i32 {
        self.0.signum()
    }

    pub fn is_inverse(self) -> bool {
        self.0 < 0
    }

    pub fn inverse(self) -> Letter {
        Letter(-self.0)
    }

    /// Position in the order `x1, X1, x2, X2, ...`, starting at 0.
    pub fn ordinal(self) -> usize {
        2 * (self.index() - 1) + usize::from(self.is_inverse())
    }

    pub fn from_ordinal(ordinal: usize) -> Letter {
        Letter::new(ordinal / 2 + 1, ordinal % 2 == 1)
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_inverse() {
            write!(f, "X{}", self.index())
        } else {
            write!(f, "x{}", self.index())
        }
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Appends `letter` to an already reduced buffer, cancelling if possible.
#[inline]
pub(crate) fn push_reduced(buf: &mut Vec<Letter>, letter: Letter) {
    if buf.last() == Some(&letter.inverse()) {
        buf.pop();
    } else {
        buf.push(letter);
    }
}

/// An element of the free group of rank `rank`, as a freely reduced word.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    rank: usize,
    letters: Vec<Letter>,
}

impl Word {
    pub fn identity(rank: usize) -> Word {
        Word {
            rank,
            letters: Vec::new(),
        }
    }

    /// The one-letter word for generator `index` (1-based).
    pub fn generator(rank: usize, index: usize) -> Word {
        assert!(
            (1..=rank).contains(&index),
            "generator {index} out of range for rank {rank}"
        );
        Word {
            rank,
            letters: vec![Letter::gen(index)],
        }
    }

    pub fn from_letter(rank: usize, letter: Letter) -> Result<Word> {
        Word::from_letters(rank, [letter])
    }

    /// Freely reduces an arbitrary letter sequence.
    pub fn from_letters<I: IntoIterator<Item = Letter>>(rank: usize, letters: I) -> Result<Word> {
        let mut buf = Vec::new();
        for l in letters {
            if l.index() > rank {
                return Err(Error::LetterOutOfRange {
                    index: l.index(),
                    rank,
                });
            }
            push_reduced(&mut buf, l);
        }
        Ok(Word { rank, letters: buf })
    }

    /// Builds a word from signed indices, e.g. `[1, 2, -1]` for `x1 x2 X1`.
    pub fn from_signed(rank: usize, letters: &[i32]) -> Result<Word> {
        let mut ls = Vec::with_capacity(letters.len());
        for &v in letters {
            ls.push(Letter::from_signed(v).ok_or(Error::Syntax {
                token: "0".into(),
                reason: "generator indices are 1-based",
            })?);
        }
        Word::from_letters(rank, ls)
    }

    /// Internal constructor for sequences known to be reduced and in range.
    pub(crate) fn from_reduced(rank: usize, letters: Vec<Letter>) -> Word {
        debug_assert!(letters.windows(2).all(|p| p[0] != p[1].inverse()));
        debug_assert!(letters.iter().all(|l| l.index() <= rank));
        Word { rank, letters }
    }

    /// Parses the text form and freely reduces the result.
    pub fn parse(text: &str, rank: usize) -> Result<Word> {
        if text == "1" {
            return Ok(Word::identity(rank));
        }
        if text.is_empty() {
            return Err(Error::Syntax {
                token: String::new(),
                reason: "empty input; the identity is written 1",
            });
        }
        let mut letters = Vec::new();
        for token in text.split(' ') {
            letters.push(parse_letter(token)?);
        }
        Word::from_letters(rank, letters)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn first(&self) -> Option<Letter> {
        self.letters.first().copied()
    }

    pub fn last(&self) -> Option<Letter> {
        self.letters.last().copied()
    }

    /// True iff every letter comes from `indices`.
    pub fn uses_only(&self, indices: impl Fn(usize) -> bool) -> bool {
        self.letters.iter().all(|l| indices(l.index()))
    }

    pub fn inverse(&self) -> Word {
        Word {
            rank: self.rank,
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    fn check_rank(&self, other: &Word) -> Result<()> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch {
                expected: self.rank,
                found: other.rank,
            });
        }
        Ok(())
    }

    /// Product `self * other`, checking ranks and the length limit.
    pub fn try_mul(&self, other: &Word) -> Result<Word> {
        self.mul_with_limit(other, max_word_len())
    }

    pub(crate) fn mul_with_limit(&self, other: &Word, limit: usize) -> Result<Word> {
        self.check_rank(other)?;
        let w = self.mul_unchecked(other);
        if w.len() > limit {
            return Err(Error::LengthLimit {
                len: w.len(),
                limit,
            });
        }
        Ok(w)
    }

    fn mul_unchecked(&self, other: &Word) -> Word {
        let common = self
            .letters
            .iter()
            .rev()
            .zip(other.letters.iter())
            .take_while(|(a, b)| **a == b.inverse())
            .count();
        let mut letters = Vec::with_capacity(self.len() + other.len() - 2 * common);
        letters.extend_from_slice(&self.letters[..self.len() - common]);
        letters.extend_from_slice(&other.letters[common..]);
        Word {
            rank: self.rank,
            letters,
        }
    }

    /// `t * self * t^-1`.
    pub fn try_conjugate(&self, t: &Word) -> Result<Word> {
        t.try_mul(self)?.try_mul(&t.inverse())
    }

    pub fn conjugate(&self, t: &Word) -> Word {
        self.try_conjugate(t).expect("conjugate: rank mismatch")
    }

    pub fn pow(&self, n: i64) -> Word {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut out = Word::identity(self.rank);
        for _ in 0..n.unsigned_abs() {
            out = &out * &base;
        }
        out
    }

    /// Splits `self` as `conjugator * core * conjugator^-1` with `core`
    /// cyclically reduced.
    pub fn cyclic_reduce(&self) -> (Word, Word) {
        let n = self.len();
        let mut k = 0;
        while 2 * k + 1 < n && self.letters[k] == self.letters[n - 1 - k].inverse() {
            k += 1;
        }
        let core = Word {
            rank: self.rank,
            letters: self.letters[k..n - k].to_vec(),
        };
        let conjugator = Word {
            rank: self.rank,
            letters: self.letters[..k].to_vec(),
        };
        (core, conjugator)
    }

    pub fn cyclic_len(&self) -> usize {
        self.cyclic_reduce().0.len()
    }

    /// Same letters viewed in a free group of a different rank.
    pub fn with_rank(&self, rank: usize) -> Result<Word> {
        Word::from_letters(rank, self.letters.iter().copied())
    }

    /// Renames generators through `map` (old index to new letter) and
    /// reduces in the free group of rank `rank`.
    pub fn relabel(&self, rank: usize, map: impl Fn(usize) -> Letter) -> Result<Word> {
        Word::from_letters(
            rank,
            self.letters.iter().map(|l| {
                let m = map(l.index());
                if l.is_inverse() {
                    m.inverse()
                } else {
                    m
                }
            }),
        )
    }

    /// Uniformly random reduced word of exactly `len` letters.
    pub fn random<R: Rng + ?Sized>(rank: usize, len: usize, rng: &mut R) -> Word {
        assert!(rank >= 1 || len == 0);
        let mut letters: Vec<Letter> = Vec::with_capacity(len);
        while letters.len() < len {
            let l = Letter::from_ordinal(rng.gen_range(0..2 * rank));
            if letters.last() != Some(&l.inverse()) {
                letters.push(l);
            }
        }
        Word { rank, letters }
    }
}

fn parse_letter(token: &str) -> Result<Letter> {
    let syntax = |reason| Error::Syntax {
        token: token.to_string(),
        reason,
    };
    let mut chars = token.chars();
    let inverse = match chars.next() {
        Some('x') => false,
        Some('X') => true,
        Some('1') if token.len() == 1 => return Err(syntax("identity token 1 must stand alone")),
        _ => return Err(syntax("expected x<i> or X<i>")),
    };
    let digits = chars.as_str();
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(syntax("expected a decimal generator index"));
    }
    if digits.starts_with('0') {
        return Err(syntax(
            "generator indices are positive without leading zeros",
        ));
    }
    let index: usize = digits
        .parse()
        .map_err(|_| syntax("generator index too large"))?;
    if index > i32::MAX as usize {
        return Err(syntax("generator index too large"));
    }
    Ok(Letter::new(index, inverse))
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("1");
        }
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// Serialized as its text form.
impl serde::Serialize for Word {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

/// Panics on rank mismatch; use [`Word::try_mul`] for the checked product.
impl Mul<&Word> for &Word {
    type Output = Word;

    fn mul(self, rhs: &Word) -> Word {
        assert_eq!(self.rank, rhs.rank, "word product: rank mismatch");
        self.mul_unchecked(rhs)
    }
}

impl Mul<Word> for Word {
    type Output = Word;

    fn mul(self, rhs: Word) -> Word {
        &self * &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn w(text: &str, rank: usize) -> Word {
        Word::parse(text, rank).unwrap()
    }

    #[test]
    fn parse_examples() {
        assert!(w("1", 2).is_identity());
        assert_eq!(w("x1 X1 x2", 2), w("x2", 2));
        let u = w("x1 x2 X1", 3);
        assert_eq!(u.len(), 3);
        assert_eq!(u.to_string(), "x1 x2 X1");
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(
            Word::parse("x3", 2),
            Err(Error::LetterOutOfRange { index: 3, rank: 2 })
        ));
        for bad in [
            "", "x0", "x01", "y1", "x1  x2", " x1", "x1 ", "x", "1 x1", "x1 1", "x-1",
        ] {
            assert!(
                matches!(Word::parse(bad, 3), Err(Error::Syntax { .. })),
                "{bad:?} should be rejected"
            );
        }
    }

    #[test]
    fn multiply_examples() {
        assert!((&w("x1 x2", 2) * &w("X2 X1", 2)).is_identity());
        assert_eq!(&w("x1", 2) * &w("x1", 2), w("x1 x1", 2));
        assert_eq!(&w("x1 x2 X1", 2) * &w("x1 X2", 2), w("x1", 2));
        assert!(matches!(
            w("x1", 2).try_mul(&w("x1", 3)),
            Err(Error::RankMismatch { .. })
        ));
    }

    #[test]
    fn length_limit_is_enforced() {
        let x = w("x1 x1 x1", 2);
        assert!(x.try_mul(&x).is_ok());
        assert_eq!(max_word_len(), DEFAULT_MAX_WORD_LEN);
        let r = x.mul_with_limit(&x, 5);
        assert!(matches!(r, Err(Error::LengthLimit { len: 6, limit: 5 })));
    }

    #[test]
    fn invert_examples() {
        assert!(Word::identity(2).inverse().is_identity());
        assert_eq!(w("x1 x2", 2).inverse(), w("X2 X1", 2));
        assert_eq!(w("x1 x2 X1 X2", 2).inverse(), w("x2 x1 X2 X1", 2));
    }

    #[test]
    fn cyclic_reduce_examples() {
        let (core, conj) = w("x1 x2 X1", 2).cyclic_reduce();
        assert_eq!((core, conj), (w("x2", 2), w("x1", 2)));
        let (core, conj) = w("x2", 2).cyclic_reduce();
        assert_eq!((core, conj), (w("x2", 2), Word::identity(2)));
        let (core, conj) = w("x1 x2 X2 X1", 2).cyclic_reduce();
        assert!(core.is_identity() && conj.is_identity());
    }

    #[test]
    fn conjugate_examples() {
        assert_eq!(w("x2", 2).conjugate(&w("x1", 2)), w("x1 x2 X1", 2));
        assert!(Word::identity(2).conjugate(&w("x1 x2", 2)).is_identity());
        assert_eq!(w("x1", 2).conjugate(&w("x1 x1", 2)), w("x1", 2));
    }

    #[test]
    fn pow_and_relabel() {
        assert_eq!(w("x1 x2", 2).pow(-2), w("X2 X1 X2 X1", 2));
        assert!(w("x1 x2", 2).pow(0).is_identity());
        let r = w("x1 X2", 2).relabel(3, |i| Letter::gen(i + 1)).unwrap();
        assert_eq!(r, w("x2 X3", 3));
    }

    /// Cancels adjacent inverse pairs in a random order until none remain.
    fn reduce_random_order(seq: &[Letter], rng: &mut ChaCha8Rng) -> Vec<Letter> {
        let mut v = seq.to_vec();
        loop {
            let spots: Vec<usize> = (0..v.len().saturating_sub(1))
                .filter(|&i| v[i] == v[i + 1].inverse())
                .collect();
            match spots.choose(rng) {
                Some(&i) => {
                    v.drain(i..i + 2);
                }
                None => return v,
            }
        }
    }

    #[test]
    fn free_reduction_is_confluent() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..1000 {
            let n = rng.gen_range(0..24);
            let seq: Vec<Letter> = (0..n)
                .map(|_| Letter::from_ordinal(rng.gen_range(0..4)))
                .collect();
            let scanned = Word::from_letters(2, seq.iter().copied()).unwrap();
            let shuffled = reduce_random_order(&seq, &mut rng);
            assert_eq!(scanned.letters(), &shuffled[..]);
        }
    }

    #[test]
    fn associativity_on_random_triples() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..10_000 {
            let rank = rng.gen_range(1..=4);
            let [a, b, c] = [0; 3].map(|_| {
                let n = rng.gen_range(0..10);
                Word::random(rank, n, &mut rng)
            });
            assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        }
    }
}
