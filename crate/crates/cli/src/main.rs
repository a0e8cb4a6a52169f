use std::io::{ErrorKind, Read, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use upword::search::DEFAULT_NODE_BUDGET;
use upword::{
    admissible_diamondicities, check_parameter_pair, check_parameters, construct_n4, debruijn_sequence,
    estimate_space, search, universal_word, Alphabet, Frame, Hypotheses, PartialWord, Pruning, SearchConfig,
    WordContext,
};

mod report;

use report::{SearchDocument, WordDocument, SCHEMA_VERSION};

#[derive(Debug, Parser)]
#[command(name = "upword", version, about = "Universal partial words: verify, analyze, construct and search")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    /// Shorthand for `--format json`.
    #[arg(long, global = true)]
    json: bool,

    /// Render ranks in reports as words instead of integers.
    #[arg(long, global = true)]
    expand_ranks: bool,

    /// Print the built-in example words and exit.
    #[arg(long)]
    seed_examples: bool,

    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check whether a partial word covers every word of A^n exactly once.
    Verify(WordArgs),
    /// Verify plus frame, border and canonical-form details.
    Analyze(WordArgs),
    /// Run the refutation rules on (a, n) or (a, n, d).
    Feasible(FeasibleArgs),
    /// Build the diamondicity-1 universal partial word for A^4 (even a).
    ConstructN4 {
        #[arg(short = 'a', long = "alphabet")]
        alphabet: usize,
    },
    /// Lexicographically least de Bruijn sequence (cyclic).
    Debruijn(SizeArgs),
    /// De Bruijn sequence linearized into a universal word.
    UniversalWord(SizeArgs),
    /// Exhaustive search for universal partial words.
    Search(SearchArgs),
}

#[derive(Debug, Args)]
struct SizeArgs {
    #[arg(short = 'a', long = "alphabet")]
    alphabet: usize,
    #[arg(short = 'n', long = "window")]
    n: usize,
}

#[derive(Debug, Args)]
struct WordArgs {
    #[command(flatten)]
    size: SizeArgs,
    /// The partial word, `*` for the diamond; `-` reads standard input.
    #[arg(short = 'w', long = "word")]
    word: String,
}

#[derive(Debug, Args)]
struct FeasibleArgs {
    #[command(flatten)]
    size: SizeArgs,
    /// Check a single diamondicity instead of all of 1..n.
    #[arg(short = 'd', long = "diamondicity")]
    d: Option<usize>,
    /// Assume the word is pseudocyclic (enables the parameter rules for a = 2).
    #[arg(long)]
    pseudocyclic: bool,
}

#[derive(Debug, Args)]
struct SearchArgs {
    #[command(flatten)]
    size: SizeArgs,
    #[arg(long)]
    max_length: Option<usize>,
    #[arg(long, default_value_t = 0)]
    min_diamonds: usize,
    /// Skip words with no diamonds or only diamonds.
    #[arg(long)]
    nontrivial: bool,
    /// Only consider words with this frame (`_` letter, `*` diamond).
    #[arg(long)]
    frame: Option<Frame>,
    /// Enable the structure pruning layers.
    #[arg(long)]
    prune: bool,
    #[arg(long, requires = "prune")]
    no_frame_law: bool,
    #[arg(long, requires = "prune")]
    no_parameter_rules: bool,
    #[arg(long, requires = "prune")]
    no_shape_rules: bool,
    /// One word per orbit under letter permutations and reversal.
    #[arg(long)]
    canonicalize: bool,
    #[arg(long)]
    limit: Option<usize>,
    #[arg(long, default_value_t = 1)]
    workers: usize,
    /// Maximum estimated search tree size.
    #[arg(long, env = "UPWORD_BUDGET", default_value_t = DEFAULT_NODE_BUDGET)]
    budget: u128,
    /// Run even when the estimate exceeds the budget.
    #[arg(long, env = "UPWORD_OVERRIDE_BUDGET", value_parser = clap::builder::BoolishValueParser::new())]
    override_budget: bool,
}

enum Failure {
    Usage(String),
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<bool, Failure>;

struct Output {
    json: bool,
    expand_ranks: bool,
}

impl Output {
    fn emit<T: Serialize>(&self, doc: &T, text: impl FnOnce() -> String) -> Result<(), Failure> {
        if self.json {
            write_stdout(&format!("{}\n", serde_json::to_string_pretty(doc)?))?;
        } else {
            write_stdout(&text())?;
        }
        Ok(())
    }
}

/// Writes to standard output. Returns false once the reader has closed the pipe.
fn write_stdout(s: &str) -> Result<bool, Failure> {
    match std::io::stdout().lock().write_all(s.as_bytes()) {
        Ok(()) => Ok(true),
        Err(e) if e.kind() == ErrorKind::BrokenPipe => Ok(false),
        Err(e) => Err(e.into()),
    }
}

fn context(size: &SizeArgs) -> Result<WordContext, Failure> {
    Ok(WordContext::new(Alphabet::new(size.alphabet)?, size.n)?)
}

fn read_word(args: &WordArgs, ctx: &WordContext) -> Result<PartialWord, Failure> {
    let text = if args.word == "-" {
        let mut buf = String::new();
        std::io::stdin().read_to_string(&mut buf)?;
        buf.trim().to_string()
    } else {
        args.word.clone()
    };
    Ok(PartialWord::parse(&text, ctx.alphabet())?)
}

fn run_verify(args: &WordArgs, out: &Output, detailed: bool) -> Outcome {
    let ctx = context(&args.size)?;
    let w = read_word(args, &ctx)?;
    if detailed {
        let r = report::analysis_report(&w, &ctx, out.expand_ranks)?;
        out.emit(&r, || r.to_text())?;
        Ok(r.verify.is_universal)
    } else {
        let r = report::verify_report(&w, &ctx, out.expand_ranks)?;
        out.emit(&r, || r.to_text())?;
        Ok(r.is_universal)
    }
}

fn run_feasible(args: &FeasibleArgs, out: &Output) -> Outcome {
    let (a, n) = (args.size.alphabet as u64, args.size.n);
    Alphabet::new(args.size.alphabet)?;
    if n == 0 {
        return Err(Failure::Usage("n must be at least 1".into()));
    }
    let hyp = Hypotheses { pseudocyclic: args.pseudocyclic };
    let admissible = if a >= 3 { Some(admissible_diamondicities(a, n)?.into_iter().collect()) } else { None };
    let r = match args.d {
        Some(d) => {
            if d > n {
                return Err(Failure::Usage(format!("diamondicity {d} exceeds n = {n}")));
            }
            let v = check_parameters(a, n, d, hyp)?;
            report::feasibility_report(a, n, Some(d), args.pseudocyclic, None, Some(&v), admissible)
        }
        None => {
            let p = check_parameter_pair(a, n, hyp)?;
            report::feasibility_report(a, n, None, args.pseudocyclic, Some(&p), None, admissible)
        }
    };
    out.emit(&r, || r.to_text())?;
    Ok(r.feasible)
}

fn emit_word(out: &Output, kind: &'static str, n: usize, w: &PartialWord, cyclic: bool) -> Outcome {
    let doc = WordDocument {
        schema_version: SCHEMA_VERSION,
        kind,
        alphabet: w.alphabet().size(),
        n,
        word: w.to_string(),
        length: w.len(),
        cyclic_representative: cyclic,
    };
    out.emit(&doc, || format!("{w}\n"))?;
    Ok(true)
}

fn run_search(args: &SearchArgs, out: &Output) -> Outcome {
    let ctx = context(&args.size)?;
    let cfg = SearchConfig {
        max_length: args.max_length,
        min_diamonds: args.min_diamonds,
        require_nontrivial: args.nontrivial,
        fixed_frame: args.frame.clone(),
        use_structure_pruning: args.prune,
        pruning: Pruning {
            frame_law: !args.no_frame_law,
            parameter_rules: !args.no_parameter_rules,
            shape_rules: !args.no_shape_rules,
        },
        canonicalize: args.canonicalize,
        limit: args.limit,
        workers: args.workers,
        node_budget: args.budget,
        override_budget: args.override_budget,
    };
    let estimate = estimate_space(&ctx, &cfg);
    let found = search(&ctx, &cfg)?;
    if out.json {
        let words: Vec<String> = found.map(|w| w.to_string()).collect();
        let doc = SearchDocument {
            schema_version: SCHEMA_VERSION,
            alphabet: ctx.a(),
            n: ctx.n(),
            estimate: estimate.to_string(),
            count: words.len(),
            words,
        };
        out.emit(&doc, String::new)?;
        Ok(doc.count > 0)
    } else {
        // stream results as they are found
        let mut count = 0;
        for w in found {
            count += 1;
            if !write_stdout(&format!("{w}\n"))? {
                break;
            }
        }
        Ok(count > 0)
    }
}

fn run(cli: &Cli) -> Outcome {
    let out = Output { json: cli.json || cli.format == Format::Json, expand_ranks: cli.expand_ranks };
    if cli.seed_examples {
        let doc = report::examples();
        out.emit(&doc, || {
            doc.examples.iter().map(|e| format!("{} {} {} {}\n", e.word, e.alphabet, e.n, e.universal)).collect()
        })?;
        return Ok(true);
    }
    let Some(command) = &cli.command else {
        return Err(Failure::Usage("a subcommand or --seed-examples is required".into()));
    };
    match command {
        Command::Verify(args) => run_verify(args, &out, false),
        Command::Analyze(args) => run_verify(args, &out, true),
        Command::Feasible(args) => run_feasible(args, &out),
        Command::ConstructN4 { alphabet } => emit_word(&out, "construct-n4", 4, &construct_n4(*alphabet)?, false),
        Command::Debruijn(s) => emit_word(&out, "debruijn", s.n, &debruijn_sequence(s.alphabet, s.n)?, true),
        Command::UniversalWord(s) => emit_word(&out, "universal-word", s.n, &universal_word(s.alphabet, s.n)?, false),
        Command::Search(args) => run_search(args, &out),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
