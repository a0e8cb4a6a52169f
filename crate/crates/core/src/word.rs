//! Alphabets, partial words and the cover relation.
//!
//! Letters of an alphabet of size `a` are the integers `0..a`. In text they
//! are written as base-36 digits (`0`-`9`, then `a`-`z`), and the diamond
//! (the wildcard character) is written `*`.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// Largest supported size of `A^n`; word ranks always fit in `0..MAX_WORD_COUNT`.
pub const MAX_WORD_COUNT: u64 = 1 << 40;

/// Text symbol for the diamond.
pub const DIAMOND_CHAR: char = '*';

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Alphabet(u8);

impl Alphabet {
    pub const MIN_SIZE: usize = 2;
    pub const MAX_SIZE: usize = 36;

    pub fn new(size: usize) -> Result<Self> {
        if (Self::MIN_SIZE..=Self::MAX_SIZE).contains(&size) {
            Ok(Alphabet(size as u8))
        } else {
            Err(Error::AlphabetSize(size))
        }
    }

    pub fn size(self) -> u8 {
        self.0
    }

    pub fn contains(self, letter: u8) -> bool {
        letter < self.0
    }

    pub fn letters(self) -> impl DoubleEndedIterator<Item = u8> + Clone {
        0..self.0
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A letter or the diamond.
///
/// Characters order as their text encoding does: the diamond (`*`) sorts
/// before every letter, and letters sort by value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Character {
    Letter(u8),
    Diamond,
}

impl Character {
    pub fn is_diamond(self) -> bool {
        matches!(self, Character::Diamond)
    }

    pub fn letter(self) -> Option<u8> {
        match self {
            Character::Letter(l) => Some(l),
            Character::Diamond => None,
        }
    }

    pub fn to_char(self) -> char {
        match self {
            Character::Diamond => DIAMOND_CHAR,
            Character::Letter(l) => std::char::from_digit(u32::from(l), 36).expect("letter < 36"),
        }
    }

    /// Decodes one text symbol, without an alphabet range check.
    pub fn from_char(c: char) -> Option<Self> {
        if c == DIAMOND_CHAR {
            return Some(Character::Diamond);
        }
        // Upper case is not part of the encoding.
        if c.is_ascii_uppercase() {
            return None;
        }
        c.to_digit(36).map(|d| Character::Letter(d as u8))
    }

    fn sort_key(self) -> u16 {
        match self {
            Character::Diamond => 0,
            Character::Letter(l) => u16::from(l) + 1,
        }
    }
}

impl PartialOrd for Character {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Character {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_char())
    }
}

/// A nonempty sequence of characters over a fixed alphabet.
///
/// Ordering is lexicographic on the characters, which matches the ordering
/// of the encoded strings.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PartialWord {
    chars: Vec<Character>,
    alphabet: Alphabet,
}

impl PartialWord {
    pub fn new(chars: Vec<Character>, alphabet: Alphabet) -> Result<Self> {
        if chars.is_empty() {
            return Err(Error::Empty);
        }
        for (pos, c) in chars.iter().enumerate() {
            if let Character::Letter(l) = *c {
                if !alphabet.contains(l) {
                    return Err(Error::LetterOutOfRange { letter: l, pos, size: alphabet.size() });
                }
            }
        }
        Ok(PartialWord { chars, alphabet })
    }

    /// Builds a word from characters already known to be in range.
    pub(crate) fn from_valid(chars: Vec<Character>, alphabet: Alphabet) -> Self {
        debug_assert!(!chars.is_empty());
        debug_assert!(chars.iter().all(|c| c.letter().is_none_or(|l| alphabet.contains(l))));
        PartialWord { chars, alphabet }
    }

    pub fn parse(text: &str, alphabet: Alphabet) -> Result<Self> {
        let chars = text
            .chars()
            .enumerate()
            .map(|(pos, ch)| Character::from_char(ch).ok_or(Error::InvalidChar { ch, pos }))
            .collect::<Result<Vec<_>>>()?;
        Self::new(chars, alphabet)
    }

    pub fn chars(&self) -> &[Character] {
        &self.chars
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn len(&self) -> usize {
        self.chars.len()
    }

    /// Always false; kept for API symmetry with `len`.
    pub fn is_empty(&self) -> bool {
        self.chars.is_empty()
    }

    pub fn diamond_count(&self) -> usize {
        self.chars.iter().filter(|c| c.is_diamond()).count()
    }

    pub fn is_total(&self) -> bool {
        self.diamond_count() == 0
    }

    pub fn is_all_diamonds(&self) -> bool {
        self.diamond_count() == self.len()
    }

    pub fn slice(&self, start: usize, end: usize) -> PartialWord {
        PartialWord::from_valid(self.chars[start..end].to_vec(), self.alphabet)
    }
}

impl fmt::Display for PartialWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.chars.iter().try_for_each(|c| write!(f, "{c}"))
    }
}

pub fn parse_partial_word(text: &str, alphabet: Alphabet) -> Result<PartialWord> {
    PartialWord::parse(text, alphabet)
}

pub fn format_partial_word(w: &PartialWord) -> String {
    w.to_string()
}

/// The alphabet and window length that fix the word set `A^n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct WordContext {
    alphabet: Alphabet,
    n: usize,
    word_count: u64,
}

impl WordContext {
    /// Fails when `n == 0` or when `a^n` exceeds [`MAX_WORD_COUNT`].
    pub fn new(alphabet: Alphabet, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroWindow);
        }
        let word_count = checked_pow(u64::from(alphabet.size()), n)
            .filter(|&c| c <= MAX_WORD_COUNT)
            .ok_or(Error::RankOverflow { a: alphabet.size(), n })?;
        Ok(WordContext { alphabet, n, word_count })
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn a(&self) -> u8 {
        self.alphabet.size()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `a^n`.
    pub fn word_count(&self) -> u64 {
        self.word_count
    }

    fn check_alphabet(&self, w: &PartialWord) -> Result<()> {
        if w.alphabet() != self.alphabet {
            return Err(Error::AlphabetMismatch { left: w.alphabet().size(), right: self.alphabet.size() });
        }
        Ok(())
    }
}

pub(crate) fn checked_pow(base: u64, exp: usize) -> Option<u64> {
    u32::try_from(exp).ok().and_then(|e| base.checked_pow(e))
}

/// `u ⊂ v`: some alignment of `u` inside `v` agrees with every letter of `v`.
///
/// A diamond in `v` accepts any character of `u`; a diamond in `u` is only
/// accepted by a diamond in `v`. Returns false when `u` is longer than `v`.
pub fn is_factor(u: &PartialWord, v: &PartialWord) -> Result<bool> {
    if u.alphabet() != v.alphabet() {
        return Err(Error::AlphabetMismatch { left: u.alphabet().size(), right: v.alphabet().size() });
    }
    if u.len() > v.len() {
        return Ok(false);
    }
    Ok(v.chars().windows(u.len()).any(|seg| {
        seg.iter().zip(u.chars()).all(|(vc, uc)| match vc {
            Character::Diamond => true,
            Character::Letter(_) => vc == uc,
        })
    }))
}

/// The contiguous length-`n` windows of `w`, in order.
pub fn windows(w: &PartialWord, n: usize) -> Result<Vec<PartialWord>> {
    if n == 0 {
        return Err(Error::ZeroWindow);
    }
    Ok(w.chars()
        .windows(n)
        .map(|seg| PartialWord::from_valid(seg.to_vec(), w.alphabet()))
        .collect())
}

/// Base-`a` value of a total word of length `n`, most significant letter first.
pub fn word_rank(v: &PartialWord, ctx: &WordContext) -> Result<u64> {
    ctx.check_alphabet(v)?;
    if v.len() != ctx.n() {
        return Err(Error::WrongLength { expected: ctx.n(), actual: v.len() });
    }
    let a = u64::from(ctx.a());
    v.chars().iter().enumerate().try_fold(0u64, |acc, (pos, c)| match c {
        Character::Letter(l) => Ok(acc * a + u64::from(*l)),
        Character::Diamond => Err(Error::DiamondPresent(pos)),
    })
}

/// Inverse of [`word_rank`].
pub fn word_unrank(rank: u64, ctx: &WordContext) -> Result<PartialWord> {
    if rank >= ctx.word_count() {
        return Err(Error::InvalidParameters(format!(
            "rank {rank} is outside 0..{}",
            ctx.word_count()
        )));
    }
    let a = u64::from(ctx.a());
    let mut chars = vec![Character::Letter(0); ctx.n()];
    let mut r = rank;
    for slot in chars.iter_mut().rev() {
        *slot = Character::Letter((r % a) as u8);
        r /= a;
    }
    Ok(PartialWord::from_valid(chars, ctx.alphabet()))
}

/// Ranks of every total word covered by a length-`n` window, ascending.
///
/// A window with `j` diamonds covers exactly `a^j` words.
pub fn covered_words(win: &PartialWord, ctx: &WordContext) -> Result<Vec<u64>> {
    ctx.check_alphabet(win)?;
    if win.len() != ctx.n() {
        return Err(Error::WrongLength { expected: ctx.n(), actual: win.len() });
    }
    let mut out = Vec::with_capacity(checked_pow(u64::from(ctx.a()), win.diamond_count()).unwrap_or(0) as usize);
    WindowExpander::new(u64::from(ctx.a())).expand(win.chars(), |r| out.push(r));
    Ok(out)
}

/// Enumerates the ranks covered by a window, reusing its scratch buffers.
///
/// The leftmost diamond is the most significant digit of the odometer, so
/// ranks come out in ascending order.
#[derive(Debug, Clone)]
pub(crate) struct WindowExpander {
    a: u64,
    weights: Vec<u64>,
    digits: Vec<u64>,
}

impl WindowExpander {
    pub(crate) fn new(a: u64) -> Self {
        WindowExpander { a, weights: Vec::new(), digits: Vec::new() }
    }

    pub(crate) fn expand(&mut self, window: &[Character], mut emit: impl FnMut(u64)) {
        let mut base = 0u64;
        self.weights.clear();
        let mut weight = 1u64;
        for c in window.iter().rev() {
            match c {
                Character::Letter(l) => base += u64::from(*l) * weight,
                Character::Diamond => self.weights.push(weight),
            }
            weight *= self.a;
        }
        // weights were collected right to left; index 0 is the least significant.
        self.digits.clear();
        self.digits.resize(self.weights.len(), 0);
        let mut rank = base;
        loop {
            emit(rank);
            let mut k = 0;
            loop {
                if k == self.digits.len() {
                    return;
                }
                if self.digits[k] + 1 < self.a {
                    self.digits[k] += 1;
                    rank += self.weights[k];
                    break;
                }
                rank -= self.digits[k] * self.weights[k];
                self.digits[k] = 0;
                k += 1;
            }
        }
    }
}
