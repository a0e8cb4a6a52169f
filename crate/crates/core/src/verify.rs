//! Exact coverage accounting and the universality decision.

use crate::error::{Error, Result};
use crate::structure::{diamondicity_of, Diamondicity};
use crate::word::{checked_pow, PartialWord, WindowExpander, WordContext};

/// Diagnostic lists in a [`CoverageReport`] are cut to this many entries.
pub const DIAGNOSTIC_LIMIT: usize = 32;

/// How much accounting backs a report.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Accounting {
    /// Every window was expanded and counted.
    Full,
    /// Diamondicity is defined but the length is not `a^(n-d) + n - 1`, so
    /// the word was rejected without counting.
    LengthMismatch,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverageReport {
    pub is_universal: bool,
    /// `a^n`.
    pub total_words: u64,
    pub covered_once: u64,
    /// First [`DIAGNOSTIC_LIMIT`] uncovered ranks, ascending.
    pub missing: Vec<u64>,
    pub missing_count: u64,
    /// First [`DIAGNOSTIC_LIMIT`] ranks covered more than once, with
    /// multiplicity (saturating at 255).
    pub duplicated: Vec<(u64, u8)>,
    pub duplicated_count: u64,
    pub window_count: usize,
    pub diamondicity: Diamondicity,
    pub length_expected_if_d: Option<u64>,
    pub accounting: Accounting,
}

fn check_alphabet(w: &PartialWord, ctx: &WordContext) -> Result<()> {
    if w.alphabet() != ctx.alphabet() {
        return Err(Error::AlphabetMismatch { left: w.alphabet().size(), right: ctx.a() });
    }
    Ok(())
}

/// Number of windows of `w` covering each word of `A^n`, indexed by rank.
///
/// Counts saturate at 255. A word shorter than `n` gives all zeros.
pub fn coverage_multiplicities(w: &PartialWord, ctx: &WordContext) -> Result<Vec<u8>> {
    check_alphabet(w, ctx)?;
    let mut counts = vec![0u8; ctx.word_count() as usize];
    let mut expander = WindowExpander::new(u64::from(ctx.a()));
    for win in w.chars().windows(ctx.n()) {
        expander.expand(win, |r| {
            let c = &mut counts[r as usize];
            *c = c.saturating_add(1);
        });
    }
    Ok(counts)
}

/// Universality check on a bit array, stopping at the first repeated word.
pub fn is_universal(w: &PartialWord, ctx: &WordContext) -> Result<bool> {
    check_alphabet(w, ctx)?;
    let total = ctx.word_count();
    let mut seen = vec![0u64; total.div_ceil(64) as usize];
    let mut covered = 0u64;
    let mut repeated = false;
    let mut expander = WindowExpander::new(u64::from(ctx.a()));
    for win in w.chars().windows(ctx.n()) {
        expander.expand(win, |r| {
            let (word, bit) = ((r / 64) as usize, r % 64);
            if seen[word] >> bit & 1 == 1 {
                repeated = true;
            } else {
                seen[word] |= 1 << bit;
                covered += 1;
            }
        });
        if repeated {
            return Ok(false);
        }
    }
    Ok(covered == total)
}

/// Verifies `w` against `A^n`, rejecting early on a length mismatch.
pub fn verify(w: &PartialWord, ctx: &WordContext) -> Result<CoverageReport> {
    verify_with(w, ctx, true)
}

/// Verifies `w` against `A^n` with full accounting regardless of length.
pub fn verify_full(w: &PartialWord, ctx: &WordContext) -> Result<CoverageReport> {
    verify_with(w, ctx, false)
}

fn verify_with(w: &PartialWord, ctx: &WordContext, fast_reject: bool) -> Result<CoverageReport> {
    check_alphabet(w, ctx)?;
    let n = ctx.n();
    let window_count = (w.len() + 1).saturating_sub(n);
    let diamondicity = if w.len() >= n { diamondicity_of(w, n)? } else { Diamondicity::Undefined };
    let length_expected_if_d = diamondicity
        .value()
        .and_then(|d| checked_pow(u64::from(ctx.a()), n - d))
        .map(|p| p + n as u64 - 1);

    let mut report = CoverageReport {
        is_universal: false,
        total_words: ctx.word_count(),
        covered_once: 0,
        missing: Vec::new(),
        missing_count: 0,
        duplicated: Vec::new(),
        duplicated_count: 0,
        window_count,
        diamondicity,
        length_expected_if_d,
        accounting: Accounting::Full,
    };

    if fast_reject {
        if let Some(expected) = length_expected_if_d {
            if expected != w.len() as u64 {
                report.accounting = Accounting::LengthMismatch;
                return Ok(report);
            }
        }
    }

    let counts = coverage_multiplicities(w, ctx)?;
    for (rank, &m) in counts.iter().enumerate() {
        match m {
            0 => {
                if report.missing.len() < DIAGNOSTIC_LIMIT {
                    report.missing.push(rank as u64);
                }
                report.missing_count += 1;
            }
            1 => report.covered_once += 1,
            _ => {
                if report.duplicated.len() < DIAGNOSTIC_LIMIT {
                    report.duplicated.push((rank as u64, m));
                }
                report.duplicated_count += 1;
            }
        }
    }
    report.is_universal = report.missing_count == 0 && report.duplicated_count == 0;
    Ok(report)
}

/// No diamonds at all, or nothing but diamonds.
pub fn is_trivial_upword(w: &PartialWord) -> bool {
    let d = w.diamond_count();
    d == 0 || d == w.len()
}
