//! Explicit universal partial words for `A^4` over even alphabets, and the
//! classical de Bruijn / universal word baseline.

use crate::error::{Error, Result};
use crate::word::{checked_pow, Alphabet, Character, PartialWord, WordContext};

/// The three letter sequences interleaved by [`construct_n4`], each of length `a^3/4`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct XyzSequences {
    pub x: Vec<u8>,
    pub y: Vec<u8>,
    pub z: Vec<u8>,
}

impl XyzSequences {
    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }

    /// `x_i y_i z_i` for 1-based `i`.
    pub fn block(&self, i: usize) -> [u8; 3] {
        [self.x[i - 1], self.y[i - 1], self.z[i - 1]]
    }
}

fn check_even(a: usize) -> Result<()> {
    if a < 2 || !a.is_multiple_of(2) {
        return Err(Error::InvalidParameters(format!("alphabet size {a} is not even and at least 2")));
    }
    Alphabet::new(a)?;
    Ok(())
}

/// Builds the `x`, `y`, `z` sequences for an even alphabet size `a`.
///
/// With 1-based index `i`:
/// - `x` runs through blocks of `a^2/2` letters alternating `2b, 2b+1`, for `b = 0..a/2`;
/// - `y` repeats `a/2` times a pattern of blocks of `a` letters alternating `2c, 2c+1`;
/// - `z` repeats `a^2/4` times the pattern `1, 0, 3, 2, ..., a-1, a-2`.
pub fn xyz_sequences(a: usize) -> Result<XyzSequences> {
    check_even(a)?;
    let len = a * a * a / 4;
    let half_square = a * a / 2;
    let mut seq = XyzSequences { x: Vec::with_capacity(len), y: Vec::with_capacity(len), z: Vec::with_capacity(len) };
    for i in 1..=len {
        let parity = (i - 1) % 2;
        let block = (i - 1) / half_square;
        seq.x.push((2 * block + parity) as u8);
        let inner = ((i - 1) % half_square) / a;
        seq.y.push((2 * inner + parity) as u8);
        seq.z.push((((i - 1) % a) ^ 1) as u8);
    }
    Ok(seq)
}

/// `w_1 * w_2 * ... * w_{a^3/4} * w_1` with `w_i = x_i y_i z_i`.
///
/// The result has length `a^3 + 3` and is a universal partial word for
/// `A^4` with diamondicity 1.
pub fn construct_n4(a: usize) -> Result<PartialWord> {
    let seq = xyz_sequences(a)?;
    let alphabet = Alphabet::new(a)?;
    let mut chars = Vec::with_capacity(4 * seq.len() + 3);
    for i in 1..=seq.len() {
        chars.extend(seq.block(i).map(Character::Letter));
        chars.push(Character::Diamond);
    }
    chars.extend(seq.block(1).map(Character::Letter));
    Ok(PartialWord::from_valid(chars, alphabet))
}

/// The lexicographically least de Bruijn sequence for `A^n`, as a linear
/// word of length `a^n` to be read cyclically.
///
/// Built by concatenating, in lexicographic order, the Lyndon words whose
/// length divides `n` (generated with the FKM successor rule).
pub fn debruijn_sequence(a: usize, n: usize) -> Result<PartialWord> {
    let alphabet = Alphabet::new(a)?;
    let ctx = WordContext::new(alphabet, n)?;
    let top = (a - 1) as u8;
    let mut out = Vec::with_capacity(ctx.word_count() as usize);
    // prenecklace in positions 1..=n; position 0 is a sentinel
    let mut word = vec![0u8; n + 1];
    out.push(Character::Letter(0));
    let mut len = 1;
    word[1] = 0;
    // The first Lyndon word is "0"; walk successors until the last one, "top".
    loop {
        // successor: extend periodically to length n, then increment the last non-top letter
        for j in len + 1..=n {
            word[j] = word[j - len];
        }
        let mut k = n;
        while k > 0 && word[k] == top {
            k -= 1;
        }
        if k == 0 {
            break;
        }
        word[k] += 1;
        len = k;
        if n.is_multiple_of(len) {
            out.extend(word[1..=len].iter().map(|&l| Character::Letter(l)));
        }
    }
    debug_assert_eq!(out.len() as u64, ctx.word_count());
    Ok(PartialWord::from_valid(out, alphabet))
}

/// A universal word for `A^n`: the de Bruijn sequence followed by its first `n - 1` letters.
pub fn universal_word(a: usize, n: usize) -> Result<PartialWord> {
    let db = debruijn_sequence(a, n)?;
    let mut chars = db.chars().to_vec();
    chars.extend_from_within(..n - 1);
    Ok(PartialWord::from_valid(chars, db.alphabet()))
}

/// Length of [`construct_n4`]'s output, `a^3 + 3`.
pub fn construct_n4_len(a: usize) -> Option<u64> {
    checked_pow(a as u64, 3).map(|c| c + 3)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sequences_a4() {
        let s = xyz_sequences(4).unwrap();
        assert_eq!(s.x, [0, 1, 0, 1, 0, 1, 0, 1, 2, 3, 2, 3, 2, 3, 2, 3]);
        assert_eq!(s.y, [0, 1, 0, 1, 2, 3, 2, 3, 0, 1, 0, 1, 2, 3, 2, 3]);
        assert_eq!(s.z, [1, 0, 3, 2, 1, 0, 3, 2, 1, 0, 3, 2, 1, 0, 3, 2]);
    }

    #[test]
    fn sequences_a2() {
        let s = xyz_sequences(2).unwrap();
        assert_eq!((s.x.as_slice(), s.y.as_slice(), s.z.as_slice()), (&[0, 1][..], &[0, 1][..], &[1, 0][..]));
    }

    #[test]
    fn rejects_odd() {
        assert!(xyz_sequences(3).is_err());
        assert!(construct_n4(5).is_err());
        assert!(construct_n4(0).is_err());
        assert!(construct_n4(38).is_err());
    }

    #[test]
    fn words() {
        assert_eq!(
            construct_n4(4).unwrap().to_string(),
            "001*110*003*112*021*130*023*132*201*310*203*312*221*330*223*332*001"
        );
        assert_eq!(construct_n4(2).unwrap().to_string(), "001*110*001");
        assert_eq!(construct_n4(6).unwrap().len() as u64, construct_n4_len(6).unwrap());
    }

    #[test]
    fn debruijn() {
        assert_eq!(debruijn_sequence(2, 3).unwrap().to_string(), "00010111");
        assert_eq!(debruijn_sequence(2, 1).unwrap().to_string(), "01");
        assert_eq!(debruijn_sequence(3, 2).unwrap().to_string(), "001021122");
        assert_eq!(universal_word(2, 3).unwrap().to_string(), "0001011100");
        assert_eq!(universal_word(2, 1).unwrap().to_string(), "01");
        assert!(debruijn_sequence(2, 0).is_err());
        assert!(debruijn_sequence(1, 3).is_err());
    }
}
