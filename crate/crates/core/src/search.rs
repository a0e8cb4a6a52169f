//! Exhaustive depth-first enumeration of universal partial words.
//!
//! The search extends a prefix one character at a time, trying the diamond
//! first and then the letters in increasing order, so complete words are
//! produced in lexicographic order of their text encoding. A prefix is
//! abandoned as soon as one of its windows covers a word already covered.
//! No universal partial word is a proper prefix of another, so a prefix
//! that covers all of `A^n` is a leaf.
//!
//! Optional structure pruning layers proven necessary conditions on top:
//!
//! * frame law (`a >= 3`): the frame has period `n`, the length is
//!   `a^(n-d) + n - 1`, and the last `n - 1` characters repeat the first;
//! * parameter rules (`a >= 3`): the first window frame must survive
//!   [`check_parameters`] and [`check_frame_divisibility`];
//! * shape rules (any `a`): no prefix may contain a periodic-suffix
//!   pattern, and complete words must pass [`refute_shape`].
//!
//! Each layer only removes prefixes that cannot lead to a universal partial
//! word, so pruned and unpruned runs emit the same words.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::feasibility::{check_frame_divisibility, check_parameters, refute_shape, Hypotheses};
use crate::structure::{has_period, reverse, Frame, Mark};
use crate::verify::is_trivial_upword;
use crate::word::{checked_pow, Alphabet, Character, PartialWord, WindowExpander, WordContext};

/// Default cap on the estimated number of search tree nodes.
pub const DEFAULT_NODE_BUDGET: u128 = 1_000_000_000;

/// Individually switchable structure pruning layers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Pruning {
    pub frame_law: bool,
    pub parameter_rules: bool,
    pub shape_rules: bool,
}

impl Pruning {
    pub const ALL: Pruning = Pruning { frame_law: true, parameter_rules: true, shape_rules: true };
    pub const NONE: Pruning = Pruning { frame_law: false, parameter_rules: false, shape_rules: false };
}

impl Default for Pruning {
    fn default() -> Self {
        Pruning::ALL
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchConfig {
    /// Longest word considered; `None` means `a^n + n - 1`, which is also the cap.
    pub max_length: Option<usize>,
    pub min_diamonds: usize,
    pub require_nontrivial: bool,
    /// Only words with exactly this frame are considered.
    pub fixed_frame: Option<Frame>,
    /// Master switch for [`SearchConfig::pruning`].
    pub use_structure_pruning: bool,
    pub pruning: Pruning,
    /// Emit one representative per orbit under letter permutations and reversal.
    pub canonicalize: bool,
    pub limit: Option<usize>,
    pub workers: usize,
    pub node_budget: u128,
    pub override_budget: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            max_length: None,
            min_diamonds: 0,
            require_nontrivial: false,
            fixed_frame: None,
            use_structure_pruning: false,
            pruning: Pruning::ALL,
            canonicalize: false,
            limit: None,
            workers: 1,
            node_budget: DEFAULT_NODE_BUDGET,
            override_budget: false,
        }
    }
}

impl SearchConfig {
    fn effective_pruning(&self) -> Pruning {
        if self.use_structure_pruning {
            self.pruning
        } else {
            Pruning::NONE
        }
    }
}

fn length_cap(ctx: &WordContext) -> usize {
    (ctx.word_count() as usize).saturating_add(ctx.n() - 1)
}

fn max_length(ctx: &WordContext, cfg: &SearchConfig) -> usize {
    let cap = length_cap(ctx);
    match &cfg.fixed_frame {
        Some(f) => f.len(),
        None => cfg.max_length.map_or(cap, |m| m.min(cap)),
    }
}

/// Upper bound on search tree nodes before any pruning.
///
/// Without a fixed frame this is the number of strings over the `a + 1`
/// characters with lengths `n..=max_length`; with one it is `a` to the
/// number of solid positions. Saturates at `u128::MAX`.
pub fn estimate_space(ctx: &WordContext, cfg: &SearchConfig) -> u128 {
    let a = u128::from(ctx.a());
    if let Some(f) = &cfg.fixed_frame {
        let solid = (f.len() - f.diamond_count()) as u32;
        return a.checked_pow(solid).unwrap_or(u128::MAX);
    }
    let top = max_length(ctx, cfg);
    (ctx.n()..=top).fold(0u128, |acc, len| {
        let term = u32::try_from(len).ok().and_then(|l| (a + 1).checked_pow(l)).unwrap_or(u128::MAX);
        acc.saturating_add(term)
    })
}

/// Letters renamed in order of first occurrence: the least word under letter permutations.
pub fn relabel_normal_form(w: &PartialWord) -> PartialWord {
    let mut map = vec![u8::MAX; usize::from(w.alphabet().size())];
    let mut next = 0u8;
    let chars = w
        .chars()
        .iter()
        .map(|c| match *c {
            Character::Diamond => Character::Diamond,
            Character::Letter(l) => {
                let slot = &mut map[usize::from(l)];
                if *slot == u8::MAX {
                    *slot = next;
                    next += 1;
                }
                Character::Letter(*slot)
            }
        })
        .collect();
    PartialWord::from_valid(chars, w.alphabet())
}

/// Least word in the orbit of `w` under letter permutations and reversal.
///
/// Works for every alphabet size: renaming letters by first occurrence
/// gives the least relabeling directly, without enumerating permutations.
pub fn canonical_form(w: &PartialWord) -> PartialWord {
    let forward = relabel_normal_form(w);
    let backward = relabel_normal_form(&reverse(w));
    forward.min(backward)
}

/// Runs the search. With one worker, words are produced lazily; with more,
/// the tree is split at its first levels and the results are merged in order.
pub fn search(ctx: &WordContext, cfg: &SearchConfig) -> Result<SearchResults> {
    let top = max_length(ctx, cfg);
    if top < ctx.n() {
        return Err(Error::InvalidParameters(format!(
            "max length {top} is below the window length {}",
            ctx.n()
        )));
    }
    if cfg.workers == 0 {
        return Err(Error::InvalidParameters("at least one worker is required".into()));
    }
    if let Some(f) = &cfg.fixed_frame {
        if f.len() > length_cap(ctx) {
            return Ok(SearchResults::collected(Vec::new()));
        }
    }
    let estimate = estimate_space(ctx, cfg);
    if estimate > cfg.node_budget && !cfg.override_budget {
        return Err(Error::OverBudget { estimate, budget: cfg.node_budget });
    }
    let limit = cfg.limit.unwrap_or(usize::MAX);
    if cfg.workers == 1 {
        return Ok(SearchResults { inner: Inner::Lazy(Dfs::new(ctx, cfg, &[])), remaining: limit });
    }

    let branch = usize::from(ctx.a()) + 1;
    let mut depth = 1;
    while depth < ctx.n() && depth < top && branch.pow(depth as u32) < 8 * cfg.workers {
        depth += 1;
    }
    let prefixes: Vec<Vec<Character>> = (0..branch.pow(depth as u32))
        .map(|mut code| {
            let mut p = vec![Character::Diamond; depth];
            for slot in p.iter_mut().rev() {
                *slot = decode((code % branch) as u8);
                code /= branch;
            }
            p
        })
        .collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers)
        .build()
        .map_err(|e| Error::InvalidParameters(format!("thread pool: {e}")))?;
    let chunks: Vec<Vec<PartialWord>> = pool.install(|| {
        prefixes
            .par_iter()
            .map(|p| Dfs::new(ctx, cfg, p).take(limit).collect())
            .collect()
    });
    let words = chunks.into_iter().flatten().take(limit).collect();
    Ok(SearchResults::collected(words))
}

/// Convenience wrapper collecting every result.
pub fn search_all(ctx: &WordContext, cfg: &SearchConfig) -> Result<Vec<PartialWord>> {
    Ok(search(ctx, cfg)?.collect())
}

pub struct SearchResults {
    inner: Inner,
    remaining: usize,
}

enum Inner {
    Lazy(Box<Dfs>),
    Collected(std::vec::IntoIter<PartialWord>),
}

impl SearchResults {
    fn collected(words: Vec<PartialWord>) -> Self {
        SearchResults { inner: Inner::Collected(words.into_iter()), remaining: usize::MAX }
    }
}

impl Iterator for SearchResults {
    type Item = PartialWord;

    fn next(&mut self) -> Option<PartialWord> {
        if self.remaining == 0 {
            return None;
        }
        let item = match &mut self.inner {
            Inner::Lazy(dfs) => dfs.next(),
            Inner::Collected(it) => it.next(),
        }?;
        self.remaining -= 1;
        Some(item)
    }
}

fn decode(choice: u8) -> Character {
    if choice == 0 {
        Character::Diamond
    } else {
        Character::Letter(choice - 1)
    }
}

/// The depth-first walker. Choice `0` is the diamond and `c + 1` is letter `c`.
struct Dfs {
    alphabet: Alphabet,
    a: u8,
    n: usize,
    total: u64,
    max_len: usize,
    frame: Option<Vec<Mark>>,
    /// Whether the reversal of a result can itself be a result.
    reversal_closed: bool,
    prune: Pruning,
    require_nontrivial: bool,
    min_diamonds: usize,
    canonicalize: bool,
    /// `a^(n-d) + n - 1` for each `d`, saturating.
    target_by_d: Vec<usize>,

    word: Vec<Character>,
    /// Distinct letters in `word[..=i]`.
    distinct: Vec<u8>,
    /// Next choice to try at each open position below the current one.
    choice: Vec<u8>,
    seen: Vec<u64>,
    covered: u64,
    expander: WindowExpander,
    buf: Vec<u64>,
    pending_leaf: bool,
    initial_leaf: Option<PartialWord>,
}

impl Dfs {
    fn new(ctx: &WordContext, cfg: &SearchConfig, prefix: &[Character]) -> Box<Self> {
        let n = ctx.n();
        let a = ctx.a();
        let frame = cfg.fixed_frame.as_ref().map(|f| f.marks().to_vec());
        let reversal_closed = frame.as_ref().is_none_or(|f| f.iter().eq(f.iter().rev()));
        let target_by_d = (0..=n)
            .map(|d| {
                checked_pow(u64::from(a), n - d)
                    .and_then(|p| usize::try_from(p).ok())
                    .map_or(usize::MAX, |p| p.saturating_add(n - 1))
            })
            .collect();
        let mut dfs = Box::new(Dfs {
            alphabet: ctx.alphabet(),
            a,
            n,
            total: ctx.word_count(),
            max_len: max_length(ctx, cfg),
            frame,
            reversal_closed,
            prune: cfg.effective_pruning(),
            require_nontrivial: cfg.require_nontrivial,
            min_diamonds: cfg.min_diamonds,
            canonicalize: cfg.canonicalize,
            target_by_d,
            word: Vec::new(),
            distinct: Vec::new(),
            choice: Vec::new(),
            seen: vec![0; ctx.word_count().div_ceil(64) as usize],
            covered: 0,
            expander: WindowExpander::new(u64::from(a)),
            buf: Vec::new(),
            pending_leaf: false,
            initial_leaf: None,
        });
        for &c in prefix {
            if dfs.word.len() >= dfs.depth_limit() || dfs.is_complete() || !dfs.push(c) {
                return dfs;
            }
        }
        if dfs.is_complete() {
            if dfs.accept_leaf() {
                dfs.initial_leaf = Some(dfs.current());
            }
        } else if dfs.word.len() < dfs.depth_limit() {
            dfs.choice.push(0);
        }
        dfs
    }

    fn nonbinary(&self) -> bool {
        self.a >= 3
    }

    fn first_window_diamonds(&self) -> usize {
        self.word[..self.n].iter().filter(|c| c.is_diamond()).count()
    }

    /// Length forced by the frame law once the first window is known.
    fn target_len(&self) -> Option<usize> {
        (self.prune.frame_law && self.nonbinary() && self.word.len() >= self.n)
            .then(|| self.target_by_d[self.first_window_diamonds()])
    }

    fn depth_limit(&self) -> usize {
        self.target_len().map_or(self.max_len, |t| t.min(self.max_len))
    }

    fn is_complete(&self) -> bool {
        self.covered == self.total
    }

    fn current(&self) -> PartialWord {
        PartialWord::from_valid(self.word.clone(), self.alphabet)
    }

    /// Collects the ranks covered by the window ending at the last position into `buf`.
    fn last_window_ranks(&mut self) {
        let start = self.word.len() - self.n;
        self.buf.clear();
        let buf = &mut self.buf;
        self.expander.expand(&self.word[start..], |r| buf.push(r));
    }

    fn push(&mut self, ch: Character) -> bool {
        let pos = self.word.len();
        let n = self.n;
        if let Some(f) = &self.frame {
            if (f[pos] == Mark::Diamond) != ch.is_diamond() {
                return false;
            }
        }
        let distinct_before = self.distinct.last().copied().unwrap_or(0);
        if let Character::Letter(l) = ch {
            if self.canonicalize && l > distinct_before {
                return false;
            }
        }
        if self.prune.frame_law && self.nonbinary() && pos >= n {
            if ch.is_diamond() != self.word[pos - n].is_diamond() {
                return false;
            }
            let t = self.target_by_d[self.first_window_diamonds()];
            if pos >= t {
                return false;
            }
            // last n - 1 characters repeat the first n - 1
            if pos + n > t && ch != self.word[pos + n - 1 - t] {
                return false;
            }
        }

        self.word.push(ch);
        let new_letter = match ch {
            Character::Letter(l) => {
                // letters below distinct_before may or may not be new without canonical order
                !self.word[..pos].contains(&Character::Letter(l))
            }
            Character::Diamond => false,
        };
        self.distinct.push(distinct_before + u8::from(new_letter));

        if pos + 1 >= n {
            self.last_window_ranks();
            let clash = self.buf.iter().any(|&r| self.seen[(r / 64) as usize] >> (r % 64) & 1 == 1);
            if clash {
                self.word.pop();
                self.distinct.pop();
                return false;
            }
            for &r in &self.buf {
                self.seen[(r / 64) as usize] |= 1 << (r % 64);
            }
            self.covered += self.buf.len() as u64;
        }

        if !self.prefix_ok(pos) {
            self.pop();
            return false;
        }
        true
    }

    /// Structure checks that only become decidable once position `pos` is placed.
    fn prefix_ok(&self, pos: usize) -> bool {
        let n = self.n;
        if pos + 1 == n && self.nonbinary() {
            let d = self.first_window_diamonds();
            let nontrivial = d > 0 && d < n;
            if self.prune.frame_law {
                let t = self.target_by_d[d];
                if t > self.max_len {
                    return false;
                }
                if let Some(f) = &self.frame {
                    if t != f.len() {
                        return false;
                    }
                }
                if self.require_nontrivial && !nontrivial {
                    return false;
                }
                // short targets make the repeated block overlap the first window
                let shift = t + 1 - n;
                if (shift..n).any(|p| self.word[p] != self.word[p - shift]) {
                    return false;
                }
            }
            if self.prune.parameter_rules && nontrivial {
                if check_parameters(u64::from(self.a), n, d, Hypotheses::default()).map_or(true, |v| v.is_refuted()) {
                    return false;
                }
                let marks = self.word.iter().map(|c| if c.is_diamond() { Mark::Diamond } else { Mark::Solid }).collect();
                let first = Frame::new(marks).expect("n >= 1");
                if check_frame_divisibility(&first, u64::from(self.a), n).map_or(true, |v| v.is_refuted()) {
                    return false;
                }
            }
        }
        if self.prune.shape_rules && periodic_suffix_ending_at(&self.word, pos, n) {
            return false;
        }
        true
    }

    fn pop(&mut self) {
        if self.word.len() >= self.n {
            self.last_window_ranks();
            for &r in &self.buf {
                self.seen[(r / 64) as usize] &= !(1 << (r % 64));
            }
            self.covered -= self.buf.len() as u64;
        }
        self.word.pop();
        self.distinct.pop();
    }

    fn accept_leaf(&self) -> bool {
        if let Some(f) = &self.frame {
            if self.word.len() != f.len() {
                return false;
            }
        }
        let w = self.current();
        if self.require_nontrivial && is_trivial_upword(&w) {
            return false;
        }
        if w.diamond_count() < self.min_diamonds {
            return false;
        }
        if self.prune.shape_rules && refute_shape(&w, self.n).is_refuted() {
            return false;
        }
        if self.canonicalize && self.reversal_closed && relabel_normal_form(&reverse(&w)) < w {
            return false;
        }
        true
    }
}

impl Iterator for Dfs {
    type Item = PartialWord;

    fn next(&mut self) -> Option<PartialWord> {
        if let Some(w) = self.initial_leaf.take() {
            return Some(w);
        }
        if self.pending_leaf {
            self.pop();
            self.pending_leaf = false;
        }
        loop {
            let c = self.choice.last_mut()?;
            if *c > self.a {
                self.choice.pop();
                if self.choice.is_empty() {
                    return None;
                }
                self.pop();
                continue;
            }
            let ch = decode(*c);
            *c += 1;
            if !self.push(ch) {
                continue;
            }
            if self.is_complete() {
                if self.accept_leaf() {
                    self.pending_leaf = true;
                    return Some(self.current());
                }
                self.pop();
            } else if self.word.len() < self.depth_limit() {
                self.choice.push(0);
            } else {
                self.pop();
            }
        }
    }
}

/// Whether a periodic-suffix pattern `u *^k v` (or its mirror `v *^k u`)
/// ends exactly at `pos`: `u`, `v` total, `|u| = p <= k`, `|v| = n - k`, `v`
/// of period `p`.
fn periodic_suffix_ending_at(w: &[Character], pos: usize, n: usize) -> bool {
    let total = |s: &[Character]| s.iter().all(|c| !c.is_diamond());

    // u *^k v: the run starts n - 1 positions back.
    if pos + 1 > n {
        let s = pos + 1 - n;
        if w[s].is_diamond() && !w[s - 1].is_diamond() {
            let k = w[s..=pos].iter().take_while(|c| c.is_diamond()).count();
            let v = &w[s + k..=pos];
            if total(v) && (1..=k.min(s)).any(|p| total(&w[s - p..s]) && has_period(v, p)) {
                return true;
            }
        }
    }

    // v *^k u: u is the last p characters.
    for p in 1..=pos.min(n) {
        let e = pos + 1 - p;
        if !total(&w[e..=pos]) {
            break;
        }
        if !w[e - 1].is_diamond() {
            continue;
        }
        let k = w[..e].iter().rev().take_while(|c| c.is_diamond()).count().min(n);
        let s = e - k;
        if k < p || s < n - k {
            continue;
        }
        let v = &w[s - (n - k)..s];
        if total(v) && has_period(v, p) {
            return true;
        }
    }
    false
}
