//! JSON documents emitted by the CLI and their text renderings.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;
use upword::{
    border_lengths, canonical_form, check_frame_divisibility, check_parameters, expected_length, frame_of,
    is_cyclic, is_pseudocyclic, is_trivial_upword, minimal_frame_root, refute_shape, verify_full, word_unrank,
    FeasibilityVerdict, Hypotheses, ParameterReport, PartialWord, Result, Rule, WordContext,
};

pub const SCHEMA_VERSION: u32 = 1;

/// A word of `A^n`, either by rank or spelled out.
#[derive(Debug, Clone, Serialize)]
#[serde(untagged)]
pub enum RankRef {
    Rank(u64),
    Word(String),
}

impl RankRef {
    fn new(rank: u64, ctx: &WordContext, expand: bool) -> Result<Self> {
        Ok(if expand { RankRef::Word(word_unrank(rank, ctx)?.to_string()) } else { RankRef::Rank(rank) })
    }
}

impl std::fmt::Display for RankRef {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RankRef::Rank(r) => write!(f, "{r}"),
            RankRef::Word(w) => f.write_str(w),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub schema_version: u32,
    pub word: String,
    pub alphabet: u8,
    pub n: usize,
    pub is_universal: bool,
    pub diamondicity: Option<usize>,
    pub pseudocyclic: bool,
    pub cyclic: bool,
    pub missing_count: u64,
    pub missing: Vec<RankRef>,
    pub duplicated_count: u64,
    pub duplicated: Vec<(RankRef, u8)>,
    pub length: usize,
    pub expected_length: Option<u64>,
    pub rules_fired: Vec<Rule>,
}

/// Rules that rule the word out as a universal partial word, given what can
/// be read off the word itself.
fn rules_for_word(w: &PartialWord, n: usize, d: Option<usize>, pseudocyclic: bool) -> Result<Vec<Rule>> {
    let mut rules = refute_shape(w, n).rules().to_vec();
    let a = u64::from(w.alphabet().size());
    if let Some(d) = d.filter(|&d| d > 0 && d < n && !is_trivial_upword(w)) {
        if a >= 3 || pseudocyclic {
            let hyp = Hypotheses { pseudocyclic };
            if let Ok(v) = check_parameters(a, n, d, hyp) {
                rules.extend_from_slice(v.rules());
            }
            let first = frame_of(&w.slice(0, n));
            rules.extend_from_slice(check_frame_divisibility(&first, a, n)?.rules());
        }
    }
    Ok(FeasibilityVerdict::from_rules(rules).rules().to_vec())
}

pub fn verify_report(w: &PartialWord, ctx: &WordContext, expand: bool) -> Result<VerifyReport> {
    let n = ctx.n();
    let r = verify_full(w, ctx)?;
    let long_enough = w.len() >= n;
    let pseudocyclic = long_enough && is_pseudocyclic(w, n)?;
    let cyclic = long_enough && is_cyclic(w, n)?;
    let diamondicity = r.diamondicity.value();
    Ok(VerifyReport {
        schema_version: SCHEMA_VERSION,
        word: w.to_string(),
        alphabet: ctx.a(),
        n,
        is_universal: r.is_universal,
        diamondicity,
        pseudocyclic,
        cyclic,
        missing_count: r.missing_count,
        missing: r.missing.iter().map(|&m| RankRef::new(m, ctx, expand)).collect::<Result<_>>()?,
        duplicated_count: r.duplicated_count,
        duplicated: r
            .duplicated
            .iter()
            .map(|&(rank, m)| RankRef::new(rank, ctx, expand).map(|x| (x, m)))
            .collect::<Result<_>>()?,
        length: w.len(),
        expected_length: r.length_expected_if_d,
        rules_fired: if long_enough { rules_for_word(w, n, diamondicity, pseudocyclic)? } else { Vec::new() },
    })
}

fn opt<T: ToString>(v: &Option<T>, none: &str) -> String {
    v.as_ref().map_or_else(|| none.to_string(), ToString::to_string)
}

fn rule_list(rules: &[Rule]) -> String {
    if rules.is_empty() {
        "none".into()
    } else {
        rules.iter().map(|r| r.id()).collect::<Vec<_>>().join(",")
    }
}

impl VerifyReport {
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "word: {}", self.word);
        let _ = writeln!(s, "alphabet: {}", self.alphabet);
        let _ = writeln!(s, "n: {}", self.n);
        let _ = writeln!(s, "is_universal: {}", self.is_universal);
        let _ = writeln!(s, "diamondicity: {}", opt(&self.diamondicity, "undefined"));
        let _ = writeln!(s, "pseudocyclic: {}", self.pseudocyclic);
        let _ = writeln!(s, "cyclic: {}", self.cyclic);
        let _ = writeln!(s, "length: {}", self.length);
        let _ = writeln!(s, "expected_length: {}", opt(&self.expected_length, "none"));
        let _ = writeln!(s, "missing_count: {}", self.missing_count);
        let missing: Vec<String> = self.missing.iter().map(ToString::to_string).collect();
        let _ = writeln!(s, "missing: {}", missing.join(","));
        let _ = writeln!(s, "duplicated_count: {}", self.duplicated_count);
        let dup: Vec<String> = self.duplicated.iter().map(|(r, m)| format!("{r}x{m}")).collect();
        let _ = writeln!(s, "duplicated: {}", dup.join(","));
        let _ = writeln!(s, "rules_fired: {}", rule_list(&self.rules_fired));
        s
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct AnalysisReport {
    #[serde(flatten)]
    pub verify: VerifyReport,
    pub trivial: bool,
    pub diamond_count: usize,
    pub frame: String,
    pub first_window_frame: Option<String>,
    pub first_window_root: Option<String>,
    pub first_window_root_exponent: Option<usize>,
    pub borders: Vec<usize>,
    pub canonical_form: String,
}

pub fn analysis_report(w: &PartialWord, ctx: &WordContext, expand: bool) -> Result<AnalysisReport> {
    let verify = verify_report(w, ctx, expand)?;
    let first = (w.len() >= ctx.n()).then(|| frame_of(&w.slice(0, ctx.n())));
    let root = first.as_ref().map(minimal_frame_root);
    Ok(AnalysisReport {
        verify,
        trivial: is_trivial_upword(w),
        diamond_count: w.diamond_count(),
        frame: frame_of(w).to_string(),
        first_window_frame: first.map(|f| f.to_string()),
        first_window_root: root.as_ref().map(|(r, _)| r.to_string()),
        first_window_root_exponent: root.map(|(_, e)| e),
        borders: border_lengths(w).into_iter().collect(),
        canonical_form: canonical_form(w).to_string(),
    })
}

impl AnalysisReport {
    pub fn to_text(&self) -> String {
        let mut s = self.verify.to_text();
        let _ = writeln!(s, "trivial: {}", self.trivial);
        let _ = writeln!(s, "diamond_count: {}", self.diamond_count);
        let _ = writeln!(s, "frame: {}", self.frame);
        let _ = writeln!(s, "first_window_frame: {}", opt(&self.first_window_frame, "none"));
        let _ = writeln!(s, "first_window_root: {}", opt(&self.first_window_root, "none"));
        let _ = writeln!(s, "first_window_root_exponent: {}", opt(&self.first_window_root_exponent, "none"));
        let borders: Vec<String> = self.borders.iter().map(ToString::to_string).collect();
        let _ = writeln!(s, "borders: {}", borders.join(","));
        let _ = writeln!(s, "canonical_form: {}", self.canonical_form);
        s
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct DiamondicityVerdict {
    pub d: usize,
    pub expected_length: Option<u64>,
    pub refuted: bool,
    pub rules: Vec<Rule>,
}

#[derive(Debug, Clone, Serialize)]
pub struct FeasibilityReport {
    pub schema_version: u32,
    pub alphabet: u64,
    pub n: usize,
    pub diamondicity: Option<usize>,
    pub pseudocyclic_assumed: bool,
    pub feasible: bool,
    pub rules_fired: Vec<Rule>,
    pub per_diamondicity: Vec<DiamondicityVerdict>,
    pub admissible: Option<Vec<usize>>,
    pub citations: BTreeMap<Rule, &'static str>,
}

fn diamondicity_verdict(a: u64, n: usize, d: usize, v: &FeasibilityVerdict) -> DiamondicityVerdict {
    DiamondicityVerdict { d, expected_length: expected_length(a, n, d).ok(), refuted: v.is_refuted(), rules: v.rules().to_vec() }
}

pub fn feasibility_report(
    a: u64,
    n: usize,
    d: Option<usize>,
    pseudocyclic: bool,
    pair: Option<&ParameterReport>,
    single: Option<&FeasibilityVerdict>,
    admissible: Option<Vec<usize>>,
) -> FeasibilityReport {
    let (summary, per_diamondicity) = match (pair, single, d) {
        (Some(p), _, _) => (
            p.summary.clone(),
            p.per_diamondicity.iter().map(|(d, v)| diamondicity_verdict(a, n, *d, v)).collect(),
        ),
        (None, Some(v), Some(d)) => (v.clone(), vec![diamondicity_verdict(a, n, d, v)]),
        _ => (FeasibilityVerdict::NotRefuted, Vec::new()),
    };
    let rules_fired = summary.rules().to_vec();
    let mut cited: Vec<Rule> = per_diamondicity.iter().flat_map(|v: &DiamondicityVerdict| v.rules.clone()).collect();
    cited.extend_from_slice(&rules_fired);
    FeasibilityReport {
        schema_version: SCHEMA_VERSION,
        alphabet: a,
        n,
        diamondicity: d,
        pseudocyclic_assumed: pseudocyclic,
        feasible: !summary.is_refuted(),
        rules_fired,
        per_diamondicity,
        admissible,
        citations: cited.into_iter().map(|r| (r, r.citation())).collect(),
    }
}

impl FeasibilityReport {
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "alphabet: {}", self.alphabet);
        let _ = writeln!(s, "n: {}", self.n);
        let _ = writeln!(s, "diamondicity: {}", opt(&self.diamondicity, "any"));
        let _ = writeln!(s, "feasible: {}", self.feasible);
        let _ = writeln!(s, "rules_fired: {}", rule_list(&self.rules_fired));
        for v in &self.per_diamondicity {
            let len = opt(&v.expected_length, "overflow");
            let _ = writeln!(s, "d={} length={} refuted={} rules={}", v.d, len, v.refuted, rule_list(&v.rules));
        }
        if let Some(adm) = &self.admissible {
            let adm: Vec<String> = adm.iter().map(ToString::to_string).collect();
            let _ = writeln!(s, "admissible: {}", adm.join(","));
        }
        for (rule, text) in &self.citations {
            let _ = writeln!(s, "{rule}: {text}");
        }
        s
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct WordDocument {
    pub schema_version: u32,
    pub kind: &'static str,
    pub alphabet: u8,
    pub n: usize,
    pub word: String,
    pub length: usize,
    pub cyclic_representative: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct SearchDocument {
    pub schema_version: u32,
    pub alphabet: u8,
    pub n: usize,
    pub estimate: String,
    pub count: usize,
    pub words: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Example {
    pub word: &'static str,
    pub alphabet: u8,
    pub n: usize,
    pub universal: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ExampleDocument {
    pub schema_version: u32,
    pub examples: Vec<Example>,
}

pub const EXAMPLES: &[(&str, u8, usize, bool)] = &[
    ("**0111", 2, 3, true),
    ("*001011*", 2, 3, true),
    ("0001011100", 2, 3, true),
    ("0010111000", 2, 3, true),
    ("1011100010", 2, 3, true),
    ("**011", 2, 3, false),
    ("01*110*001*", 2, 4, true),
    ("001*110*001", 2, 4, true),
    ("001*110*003*112*021*130*023*132*201*310*203*312*221*330*223*332*001", 4, 4, true),
    ("***", 3, 3, true),
];

pub fn examples() -> ExampleDocument {
    ExampleDocument {
        schema_version: SCHEMA_VERSION,
        examples: EXAMPLES
            .iter()
            .map(|&(word, alphabet, n, universal)| Example { word, alphabet, n, universal })
            .collect(),
    }
}
