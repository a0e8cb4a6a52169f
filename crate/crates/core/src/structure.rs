//! Frames, diamondicity, borders and periods, and the symmetries of partial words.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::word::{Character, PartialWord};

/// Text symbol for a solid (letter) position in a frame.
pub const SOLID_CHAR: char = '_';

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Mark {
    Solid,
    Diamond,
}

/// The shape of a partial word: which positions hold letters and which hold diamonds.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Frame {
    marks: Vec<Mark>,
}

impl Frame {
    pub fn new(marks: Vec<Mark>) -> Result<Self> {
        if marks.is_empty() {
            return Err(Error::Empty);
        }
        Ok(Frame { marks })
    }

    pub fn marks(&self) -> &[Mark] {
        &self.marks
    }

    pub fn len(&self) -> usize {
        self.marks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.marks.is_empty()
    }

    pub fn diamond_count(&self) -> usize {
        self.marks.iter().filter(|m| **m == Mark::Diamond).count()
    }

    pub fn is_diamond(&self, i: usize) -> bool {
        self.marks[i] == Mark::Diamond
    }

    /// Left cyclic shift by `i` positions.
    pub fn rotate_left(&self, i: usize) -> Frame {
        let mut marks = self.marks.clone();
        let k = i % marks.len();
        marks.rotate_left(k);
        Frame { marks }
    }

    /// This frame repeated to exactly `len` marks (truncating the last copy).
    pub fn extend_periodic(&self, len: usize) -> Result<Frame> {
        Frame::new(self.marks.iter().copied().cycle().take(len).collect())
    }

    pub fn window(&self, start: usize, n: usize) -> Frame {
        Frame { marks: self.marks[start..start + n].to_vec() }
    }
}

impl fmt::Display for Frame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for m in &self.marks {
            let c = match m {
                Mark::Solid => SOLID_CHAR,
                Mark::Diamond => crate::word::DIAMOND_CHAR,
            };
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl FromStr for Frame {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let marks = s
            .chars()
            .enumerate()
            .map(|(pos, ch)| match ch {
                SOLID_CHAR => Ok(Mark::Solid),
                crate::word::DIAMOND_CHAR => Ok(Mark::Diamond),
                _ => Err(Error::InvalidFrameChar { ch, pos }),
            })
            .collect::<Result<Vec<_>>>()?;
        Frame::new(marks)
    }
}

impl Serialize for Frame {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Frame {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Common diamond count of all length-`n` windows, when there is one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Diamondicity {
    Defined(usize),
    Undefined,
}

impl Diamondicity {
    pub fn value(self) -> Option<usize> {
        match self {
            Diamondicity::Defined(d) => Some(d),
            Diamondicity::Undefined => None,
        }
    }

    pub fn is_defined(self) -> bool {
        self.value().is_some()
    }
}

pub fn frame_of(w: &PartialWord) -> Frame {
    let marks = w
        .chars()
        .iter()
        .map(|c| if c.is_diamond() { Mark::Diamond } else { Mark::Solid })
        .collect();
    Frame { marks }
}

pub fn diamondicity_of(w: &PartialWord, n: usize) -> Result<Diamondicity> {
    if n == 0 {
        return Err(Error::ZeroWindow);
    }
    if w.len() < n {
        return Err(Error::TooShort { len: w.len(), n });
    }
    let chars = w.chars();
    let first = chars[..n].iter().filter(|c| c.is_diamond()).count();
    // Sliding count: constant iff each entering character has the leaving one's type.
    let constant = (n..chars.len()).all(|j| chars[j].is_diamond() == chars[j - n].is_diamond());
    Ok(if constant { Diamondicity::Defined(first) } else { Diamondicity::Undefined })
}

pub fn frame_has_period(f: &Frame, p: usize) -> Result<bool> {
    if p == 0 {
        return Err(Error::ZeroPeriod);
    }
    Ok(has_period(f.marks(), p))
}

pub(crate) fn has_period<T: PartialEq>(s: &[T], p: usize) -> bool {
    (p..s.len()).all(|j| s[j] == s[j - p])
}

/// Failure function: `pi[i]` is the length of the longest proper border of `s[..=i]`.
pub fn failure_function<T: PartialEq>(s: &[T]) -> Vec<usize> {
    let mut pi = vec![0; s.len()];
    for i in 1..s.len() {
        let mut k = pi[i - 1];
        while k > 0 && s[i] != s[k] {
            k = pi[k - 1];
        }
        if s[i] == s[k] {
            k += 1;
        }
        pi[i] = k;
    }
    pi
}

/// All proper border lengths of `s`, ascending.
pub(crate) fn borders_of<T: PartialEq>(s: &[T]) -> BTreeSet<usize> {
    let mut out = BTreeSet::new();
    if s.is_empty() {
        return out;
    }
    let pi = failure_function(s);
    let mut k = pi[s.len() - 1];
    while k > 0 {
        out.insert(k);
        k = pi[k - 1];
    }
    out
}

/// Lengths `k` in `1..|w|` whose prefix and suffix are equal character for character.
///
/// Diamonds compare equal only to diamonds.
pub fn border_lengths(w: &PartialWord) -> BTreeSet<usize> {
    borders_of(w.chars())
}

/// All periods of a total word, including the trivial period `|w|`.
pub fn periods_of(w: &PartialWord) -> Result<BTreeSet<usize>> {
    if let Some(pos) = w.chars().iter().position(|c| c.is_diamond()) {
        return Err(Error::DiamondPresent(pos));
    }
    let len = w.len();
    let mut out: BTreeSet<usize> = border_lengths(w).into_iter().map(|b| len - b).collect();
    out.insert(len);
    Ok(out)
}

/// First and last `n - 1` characters agree, whether or not they overlap.
pub fn is_pseudocyclic(w: &PartialWord, n: usize) -> Result<bool> {
    if n == 0 {
        return Err(Error::ZeroWindow);
    }
    if w.len() < n {
        return Err(Error::TooShort { len: w.len(), n });
    }
    let c = w.chars();
    let k = n - 1;
    Ok(c[..k] == c[c.len() - k..])
}

/// Pseudocyclic, with the two `n - 1` blocks not overlapping.
pub fn is_cyclic(w: &PartialWord, n: usize) -> Result<bool> {
    Ok(is_pseudocyclic(w, n)? && w.len() + 2 >= 2 * n)
}

/// Length of the shortest `r` with `s = r^k`.
pub(crate) fn primitive_root_len<T: PartialEq>(s: &[T]) -> usize {
    if s.is_empty() {
        return 0;
    }
    let pi = failure_function(s);
    let p = s.len() - pi[s.len() - 1];
    if s.len().is_multiple_of(p) {
        p
    } else {
        s.len()
    }
}

/// Shortest frame `r` and exponent `s` with `f = r^s`.
pub fn minimal_frame_root(f: &Frame) -> (Frame, usize) {
    let m = primitive_root_len(f.marks());
    (Frame { marks: f.marks()[..m].to_vec() }, f.len() / m)
}

pub fn reverse(w: &PartialWord) -> PartialWord {
    let mut chars = w.chars().to_vec();
    chars.reverse();
    PartialWord::from_valid(chars, w.alphabet())
}

/// Applies the letter map `perm` (letter `l` becomes `perm[l]`); diamonds are fixed.
pub fn relabel(w: &PartialWord, perm: &[u8]) -> Result<PartialWord> {
    let a = w.alphabet().size();
    if perm.len() != usize::from(a) {
        return Err(Error::NotAPermutation(a));
    }
    let mut seen = vec![false; perm.len()];
    for &p in perm {
        if p >= a || std::mem::replace(&mut seen[usize::from(p)], true) {
            return Err(Error::NotAPermutation(a));
        }
    }
    let chars = w
        .chars()
        .iter()
        .map(|c| match c {
            Character::Letter(l) => Character::Letter(perm[usize::from(*l)]),
            Character::Diamond => Character::Diamond,
        })
        .collect();
    Ok(PartialWord::from_valid(chars, w.alphabet()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::Alphabet;

    fn pw(s: &str, a: usize) -> PartialWord {
        PartialWord::parse(s, Alphabet::new(a).unwrap()).unwrap()
    }

    fn fr(s: &str) -> Frame {
        s.parse().unwrap()
    }

    fn set(v: &[usize]) -> BTreeSet<usize> {
        v.iter().copied().collect()
    }

    #[test]
    fn frames() {
        assert_eq!(frame_of(&pw("01*2*", 3)).to_string(), "__*_*");
        assert_eq!(frame_of(&pw("0111", 2)).to_string(), "____");
        assert_eq!(frame_of(&pw("***", 2)).to_string(), "***");
        assert!("_x".parse::<Frame>().is_err());
        assert!("".parse::<Frame>().is_err());
    }

    #[test]
    fn diamondicity() {
        assert_eq!(diamondicity_of(&pw("01*110*001*", 2), 4).unwrap(), Diamondicity::Defined(1));
        assert_eq!(diamondicity_of(&pw("**0111", 2), 3).unwrap(), Diamondicity::Undefined);
        assert_eq!(diamondicity_of(&pw("0000", 2), 2).unwrap(), Diamondicity::Defined(0));
        assert_eq!(diamondicity_of(&pw("00", 2), 3), Err(Error::TooShort { len: 2, n: 3 }));
    }

    #[test]
    fn frame_periods() {
        assert!(frame_has_period(&frame_of(&pw("01*110*001*", 2)), 4).unwrap());
        assert!(!frame_has_period(&fr("__*_"), 2).unwrap());
        assert!(frame_has_period(&fr("__*_"), 4).unwrap());
        assert_eq!(frame_has_period(&fr("_"), 0), Err(Error::ZeroPeriod));
    }

    #[test]
    fn borders() {
        assert!(border_lengths(&pw("001*110*001", 2)).contains(&3));
        assert_eq!(border_lengths(&pw("0110", 2)), set(&[1]));
        assert_eq!(border_lengths(&pw("aaaa", 11)), set(&[1, 2, 3]));
        assert_eq!(border_lengths(&pw("*0*", 2)), set(&[1]));
        assert_eq!(border_lengths(&pw("1", 2)), set(&[]));
    }

    #[test]
    fn periods() {
        assert_eq!(periods_of(&pw("0101", 2)).unwrap(), set(&[2, 4]));
        assert_eq!(periods_of(&pw("000", 2)).unwrap(), set(&[1, 2, 3]));
        assert_eq!(periods_of(&pw("0010", 2)).unwrap(), set(&[3, 4]));
        assert_eq!(periods_of(&pw("0*0", 2)), Err(Error::DiamondPresent(1)));
    }

    #[test]
    fn cyclicity() {
        assert!(is_pseudocyclic(&pw("001*110*001", 2), 4).unwrap());
        assert!(!is_pseudocyclic(&pw("**0111", 2), 3).unwrap());
        assert!(!is_pseudocyclic(&pw("*001011*", 2), 3).unwrap());
        assert!(is_cyclic(&pw("001*110*001", 2), 4).unwrap());
        assert!(!is_cyclic(&pw("**0111", 2), 3).unwrap());
        assert!(is_cyclic(&pw("aaa", 11), 2).unwrap());
        // overlapping blocks: pseudocyclic but not cyclic
        assert!(is_pseudocyclic(&pw("****", 3), 4).unwrap());
        assert!(!is_cyclic(&pw("****", 3), 4).unwrap());
        assert!(is_cyclic(&pw("00", 2), 1).unwrap());
    }

    #[test]
    fn roots() {
        assert_eq!(minimal_frame_root(&fr("_*_*_*")), (fr("_*"), 3));
        assert_eq!(minimal_frame_root(&fr("__*_")), (fr("__*_"), 1));
        assert_eq!(minimal_frame_root(&fr("***_***_")), (fr("***_"), 2));
        assert_eq!(minimal_frame_root(&fr("***")), (fr("*"), 3));
        // period 2 but 2 does not divide 5
        assert_eq!(minimal_frame_root(&fr("_*_*_")), (fr("_*_*_"), 1));
    }

    #[test]
    fn symmetries() {
        let w = pw("**0111", 2);
        assert_eq!(reverse(&w).to_string(), "1110**");
        assert_eq!(reverse(&reverse(&w)), w);
        assert_eq!(relabel(&w, &[1, 0]).unwrap().to_string(), "**1000");
        assert_eq!(relabel(&w, &[0, 0]), Err(Error::NotAPermutation(2)));
        assert_eq!(relabel(&w, &[0, 1, 2]), Err(Error::NotAPermutation(2)));
        assert_eq!(relabel(&w, &[0, 2]), Err(Error::NotAPermutation(2)));
    }

    #[test]
    fn rotation() {
        assert_eq!(fr("__*_").rotate_left(1), fr("_*__"));
        assert_eq!(fr("__*_").rotate_left(6), fr("*___"));
        assert_eq!(fr("_*").extend_periodic(5).unwrap(), fr("_*_*_"));
    }
}
