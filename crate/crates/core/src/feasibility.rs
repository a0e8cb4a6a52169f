//! Refutation rules that rule out parameters `(a, n, d)` or word shapes
//! before any search is run.
//!
//! Each rule has its own hypotheses. The parameter rules hold for
//! pseudocyclic universal partial words; over alphabets of size at least 3
//! every universal partial word is pseudocyclic, so they apply
//! unconditionally there. For the binary alphabet the caller has to state
//! pseudocyclicity through [`Hypotheses`]. A verdict of
//! [`FeasibilityVerdict::NotRefuted`] never asserts existence.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::structure::{has_period, minimal_frame_root, reverse, Frame};
use crate::word::{checked_pow, Character, PartialWord, MAX_WORD_COUNT};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Rule {
    /// No nontrivial words for `n <= 3` when `a >= 3`.
    SmallN,
    /// The first window frame's root length divides `gcd(a^(n-d), n)`.
    Divisibility,
    /// `gcd(a^(n-d), n) = 2` admits no nontrivial words.
    Gcd2,
    /// `gcd(a^(n-d), n) = p` prime forces `d` to be a multiple of `n/p`.
    GcdPrime,
    /// Diamondicity below `n - k` whenever `n >= k(k-1) + 2`.
    DiamBound,
    /// A single run of consecutive diamonds.
    DiamondRun,
    /// `u *^k v` with `|u| = p <= k` and `v` of length `n - k` with period `p`.
    PeriodicSuffix,
}

impl Rule {
    pub const ALL: [Rule; 7] = [
        Rule::SmallN,
        Rule::Divisibility,
        Rule::Gcd2,
        Rule::GcdPrime,
        Rule::DiamBound,
        Rule::DiamondRun,
        Rule::PeriodicSuffix,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Rule::SmallN => "SMALL_N",
            Rule::Divisibility => "DIVISIBILITY",
            Rule::Gcd2 => "GCD2",
            Rule::GcdPrime => "GCD_PRIME",
            Rule::DiamBound => "DIAM_BOUND",
            Rule::DiamondRun => "DIAMOND_RUN",
            Rule::PeriodicSuffix => "PERIODIC_SUFFIX",
        }
    }

    pub fn citation(self) -> &'static str {
        match self {
            Rule::SmallN => "no nontrivial universal partial word exists for n <= 3 over an alphabet of size >= 3",
            Rule::Divisibility => {
                "the root length i of the first window frame of a pseudocyclic word must divide gcd(a^(n-d), n)"
            }
            Rule::Gcd2 => "if gcd(a^(n-d), n) = 2 there is no nontrivial universal partial word with diamondicity d",
            Rule::GcdPrime => "for a >= 3 and gcd(a^(n-d), n) = p prime, d must lie in {kn/p : 1 <= k <= p-1}",
            Rule::DiamBound => {
                "a pseudocyclic universal partial word has d < n - k for every k with n >= k(k-1) + 2"
            }
            Rule::DiamondRun => {
                "no universal partial word u *^k v with total u, v, when 2 <= k <= n/2 (any a) or 1 <= k <= n-1 (a >= 3)"
            }
            Rule::PeriodicSuffix => {
                "no universal partial word contains u *^k v with total u, v, |u| = p <= k, |v| = n-k and v of period p"
            }
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FeasibilityVerdict {
    NotRefuted,
    /// Always carries at least one rule.
    RefutedBy(Vec<Rule>),
}

impl FeasibilityVerdict {
    /// `RefutedBy` the sorted, deduplicated rules, or `NotRefuted` if there are none.
    pub fn from_rules(mut rules: Vec<Rule>) -> Self {
        rules.sort();
        rules.dedup();
        if rules.is_empty() {
            FeasibilityVerdict::NotRefuted
        } else {
            FeasibilityVerdict::RefutedBy(rules)
        }
    }

    pub fn is_refuted(&self) -> bool {
        matches!(self, FeasibilityVerdict::RefutedBy(_))
    }

    pub fn rules(&self) -> &[Rule] {
        match self {
            FeasibilityVerdict::NotRefuted => &[],
            FeasibilityVerdict::RefutedBy(r) => r,
        }
    }

    pub fn fired(&self, rule: Rule) -> bool {
        self.rules().contains(&rule)
    }
}

/// Assumptions the caller vouches for beyond what the alphabet size implies.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Hypotheses {
    /// Only pseudocyclic words are of interest (automatic for `a >= 3`).
    pub pseudocyclic: bool,
}

fn gcd(mut x: u64, mut y: u64) -> u64 {
    while y != 0 {
        (x, y) = (y, x % y);
    }
    x
}

/// `gcd(a^e, n)` without forming `a^e`.
pub fn gcd_power(a: u64, e: usize, n: u64) -> u64 {
    if n == 0 {
        return 0;
    }
    let mut r = 1 % n;
    for _ in 0..e {
        r = ((u128::from(r) * u128::from(a)) % u128::from(n)) as u64;
    }
    gcd(r, n)
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|q| q * q <= p).all(|q| !p.is_multiple_of(q))
}

/// `a^(n-d) + n - 1`, the length of any universal partial word with diamondicity `d`.
pub fn expected_length(a: u64, n: usize, d: usize) -> Result<u64> {
    if a < 2 {
        return Err(Error::InvalidParameters(format!("alphabet size {a} is below 2")));
    }
    if d > n {
        return Err(Error::InvalidParameters(format!("diamondicity {d} exceeds n = {n}")));
    }
    checked_pow(a, n - d)
        .filter(|&p| p <= MAX_WORD_COUNT)
        .map(|p| p + n as u64 - 1)
        .ok_or_else(|| Error::InvalidParameters(format!("{a}^{} exceeds the supported rank range", n - d)))
}

/// The least diamondicity forbidden for nontrivial pseudocyclic words: `n - k`
/// for the largest `k >= 1` with `k(k-1) + 2 <= n`, or `n` when there is no such `k`.
pub fn diamondicity_bound(n: usize) -> usize {
    let mut k = 0;
    while (k + 1) * k + 2 <= n {
        k += 1;
    }
    n - k
}

fn check_nonbinary(a: u64) -> Result<()> {
    if a < 3 {
        return Err(Error::InvalidParameters(format!(
            "alphabet size {a}: the diamondicity rules need a >= 3"
        )));
    }
    Ok(())
}

/// Some candidate root length `i > 1` with `i | gcd(a^(n-d), n)` carries a
/// whole number `d i / n` of diamonds.
fn divisibility_admits(a: u64, n: usize, d: usize) -> bool {
    let g = gcd_power(a, n - d, n as u64) as usize;
    (2..=g).any(|i| g.is_multiple_of(i) && (d * i).is_multiple_of(n))
}

/// Diamondicities in `1..n` not excluded by the small-`n`, bound and divisibility rules.
pub fn admissible_diamondicities(a: u64, n: usize) -> Result<BTreeSet<usize>> {
    check_nonbinary(a)?;
    if n <= 3 {
        return Ok(BTreeSet::new());
    }
    let bound = diamondicity_bound(n);
    Ok((1..n).filter(|&d| d < bound && divisibility_admits(a, n, d)).collect())
}

/// The divisibility rule applied to a candidate first window frame.
///
/// Valid for frames of pseudocyclic words. All-solid and all-diamond frames
/// are outside its scope and never refuted.
pub fn check_frame_divisibility(f: &Frame, a: u64, n: usize) -> Result<FeasibilityVerdict> {
    if f.len() != n {
        return Err(Error::WrongLength { expected: n, actual: f.len() });
    }
    let d = f.diamond_count();
    if d == 0 || d == n {
        return Ok(FeasibilityVerdict::NotRefuted);
    }
    let (root, _) = minimal_frame_root(f);
    let g = gcd_power(a, n - d, n as u64);
    let rules = if !g.is_multiple_of(root.len() as u64) { vec![Rule::Divisibility] } else { vec![] };
    Ok(FeasibilityVerdict::from_rules(rules))
}

pub fn refute_gcd2(a: u64, n: usize, d: usize) -> FeasibilityVerdict {
    let hit = d <= n && gcd_power(a, n - d, n as u64) == 2;
    FeasibilityVerdict::from_rules(if hit { vec![Rule::Gcd2] } else { vec![] })
}

/// For `a >= 3`: refutes when `gcd(a^(n-d), n)` is a prime `p` and `d` is not a multiple of `n/p`.
pub fn refute_gcd_prime(a: u64, n: usize, d: usize) -> FeasibilityVerdict {
    if a < 3 || d == 0 || d >= n {
        return FeasibilityVerdict::NotRefuted;
    }
    let p = gcd_power(a, n - d, n as u64);
    let hit = is_prime(p) && !d.is_multiple_of(n / p as usize);
    FeasibilityVerdict::from_rules(if hit { vec![Rule::GcdPrime] } else { vec![] })
}

/// All parameter rules whose hypotheses hold, for nontrivial words with
/// diamondicity `d`. `d = 0` and `d = n` are trivial and never refuted.
pub fn check_parameters(a: u64, n: usize, d: usize, hyp: Hypotheses) -> Result<FeasibilityVerdict> {
    if a < 2 {
        return Err(Error::InvalidParameters(format!("alphabet size {a} is below 2")));
    }
    if n == 0 {
        return Err(Error::ZeroWindow);
    }
    if d > n {
        return Err(Error::InvalidParameters(format!("diamondicity {d} exceeds n = {n}")));
    }
    if d == 0 || d == n {
        return Ok(FeasibilityVerdict::NotRefuted);
    }
    let pseudocyclic = a >= 3 || hyp.pseudocyclic;
    let mut rules = Vec::new();
    if a >= 3 && n <= 3 {
        rules.push(Rule::SmallN);
    }
    if pseudocyclic {
        if d >= diamondicity_bound(n) {
            rules.push(Rule::DiamBound);
        }
        if !divisibility_admits(a, n, d) {
            rules.push(Rule::Divisibility);
        }
        rules.extend_from_slice(refute_gcd2(a, n, d).rules());
    }
    rules.extend_from_slice(refute_gcd_prime(a, n, d).rules());
    Ok(FeasibilityVerdict::from_rules(rules))
}

/// Verdicts for every nontrivial diamondicity `1..n`, plus a summary.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParameterReport {
    pub a: u64,
    pub n: usize,
    pub per_diamondicity: Vec<(usize, FeasibilityVerdict)>,
    /// Refuted only if every diamondicity is; the rules are those that
    /// refute every diamondicity on their own, or the union when none does.
    pub summary: FeasibilityVerdict,
}

pub fn check_parameter_pair(a: u64, n: usize, hyp: Hypotheses) -> Result<ParameterReport> {
    let per_diamondicity = (1..n)
        .map(|d| check_parameters(a, n, d, hyp).map(|v| (d, v)))
        .collect::<Result<Vec<_>>>()?;
    let summary = if per_diamondicity.is_empty() {
        if n == 0 {
            return Err(Error::ZeroWindow);
        }
        // n = 1: no nontrivial diamondicity exists
        FeasibilityVerdict::from_rules(if a >= 3 { vec![Rule::SmallN] } else { vec![] })
    } else if per_diamondicity.iter().all(|(_, v)| v.is_refuted()) {
        let common: Vec<Rule> = Rule::ALL
            .into_iter()
            .filter(|r| per_diamondicity.iter().all(|(_, v)| v.fired(*r)))
            .collect();
        if common.is_empty() {
            FeasibilityVerdict::from_rules(per_diamondicity.iter().flat_map(|(_, v)| v.rules().to_vec()).collect())
        } else {
            FeasibilityVerdict::from_rules(common)
        }
    } else {
        FeasibilityVerdict::NotRefuted
    };
    Ok(ParameterReport { a, n, per_diamondicity, summary })
}

/// Maximal runs of diamonds as `(start, length)`.
pub(crate) fn diamond_runs(chars: &[Character]) -> Vec<(usize, usize)> {
    let mut runs = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        if chars[i].is_diamond() {
            let start = i;
            while i < chars.len() && chars[i].is_diamond() {
                i += 1;
            }
            runs.push((start, i - start));
        } else {
            i += 1;
        }
    }
    runs
}

/// Whether `chars` contains `u *^k v` with total `u` of length `p <= k`
/// and total `v` of length `n - k` with period `p`.
pub(crate) fn has_periodic_suffix_pattern(chars: &[Character], n: usize) -> bool {
    diamond_runs(chars).into_iter().any(|(s, run)| {
        // a run longer than n still contains u *^n followed by more diamonds
        let k = run.min(n);
        if s + n > chars.len() {
            return false;
        }
        let v = &chars[s + k..s + n];
        if v.iter().any(|c| c.is_diamond()) {
            return false;
        }
        (1..=k.min(s)).any(|p| chars[s - p..s].iter().all(|c| !c.is_diamond()) && has_period(v, p))
    })
}

/// Shape rules on a whole candidate word. Sound for any alphabet; the
/// periodic-suffix rule is also checked on the reversal.
pub fn refute_shape(w: &PartialWord, n: usize) -> FeasibilityVerdict {
    let mut rules = Vec::new();
    let runs = diamond_runs(w.chars());
    if let [(_, k)] = runs[..] {
        let nontrivial = k < w.len();
        let binary_rule = k >= 2 && 2 * k <= n;
        let nonbinary_rule = w.alphabet().size() >= 3 && nontrivial && k < n;
        if binary_rule || nonbinary_rule {
            rules.push(Rule::DiamondRun);
        }
    }
    if n >= 1 && (has_periodic_suffix_pattern(w.chars(), n) || has_periodic_suffix_pattern(reverse(w).chars(), n)) {
        rules.push(Rule::PeriodicSuffix);
    }
    FeasibilityVerdict::from_rules(rules)
}
