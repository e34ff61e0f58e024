//! Command-line front end: load a space definition, parse expressions,
//! run the algebra, print canonical text.
//!
//! Output is deterministic: the same space file and command line always
//! produce byte-identical output. Scalar results (products, ordinals,
//! words, booleans) print the same way in both formats; list results
//! (union members, enumerated words) print one item per line, with a
//! `- ` prefix under `--format pretty` and bare under `--format machine`.
//!
//! Exit codes: 0 success, 2 usage or expression/space-file parse error,
//! 3 semantic error (unknown point, space mismatch, invalid exponent),
//! 4 input/output error.

use std::collections::BTreeMap;
use std::io::{BufRead, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};

use transword::oracle;
use transword::text::{self, TextError};
use transword::{Bound, Product, ProductUnion, Space};

#[derive(Parser)]
#[command(
    name = "transword",
    version,
    about = "Symbolic closed sets of transfinite words: reduce, compare, intersect, rank.",
    after_help = "Expressions use the library's text grammar: products like \
'[a]^{<w} [a,b]^{<w^2}' or 'eps', symbolic words like 'a b (a,b)^w (a)^(w^2)', \
ordinals like 'w^2+w*3+1'. Multi-factor expressions may be split across \
arguments or quoted; where a command takes two expressions the first one \
must be a single argument."
)]
struct Cli {
    /// Space definition file: `kind:`, `elements:`, `order:` lines.
    #[arg(long, global = true, value_name = "FILE")]
    space: Option<PathBuf>,

    /// Length cap for word enumeration in `words`.
    #[arg(long, global = true, default_value_t = 6, value_name = "N")]
    oracle_depth: usize,

    /// Output style; `machine` is line-oriented for diff-based tests.
    #[arg(long, global = true, value_enum, default_value_t = Format::Pretty)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Pretty,
    Machine,
}

#[derive(Subcommand)]
enum Command {
    /// Print the canonical reduced form of a product.
    Reduce {
        #[arg(required = true, value_name = "EXPR")]
        expr: Vec<String>,
    },
    /// Decide whether the left product is included in the right one.
    /// Prints a shortest finite witness when the answer is `false`, the
    /// alphabet is finite, and a finite witness exists.
    Includes {
        #[arg(value_name = "LEFT")]
        left: String,
        #[arg(required = true, value_name = "RIGHT")]
        right: Vec<String>,
    },
    /// Intersect two products into a union of reduced products.
    Intersect {
        #[arg(value_name = "LEFT")]
        left: String,
        #[arg(required = true, value_name = "RIGHT")]
        right: Vec<String>,
    },
    /// Reduce a product and print its ordinal rank.
    Rank {
        #[arg(required = true, value_name = "EXPR")]
        expr: Vec<String>,
    },
    /// Print the closure of a symbolic word as a reduced product.
    Closure {
        #[arg(required = true, value_name = "WORD")]
        word: Vec<String>,
    },
    /// Decide the specialization order between two symbolic words.
    Leq {
        #[arg(value_name = "LEFT")]
        left: String,
        #[arg(required = true, value_name = "RIGHT")]
        right: Vec<String>,
    },
    /// Clamp exponents to α and rewrite as an equal union of α-products.
    AlphaNormalize {
        #[arg(value_name = "ALPHA")]
        alpha: String,
        #[arg(required = true, value_name = "EXPR")]
        expr: Vec<String>,
    },
    /// Parse an expression and print its canonical form.
    Canon {
        #[arg(value_enum, value_name = "KIND")]
        kind: Kind,
        #[arg(required = true, value_name = "EXPR")]
        expr: Vec<String>,
    },
    /// List the finite words of a product, shortlex, up to --oracle-depth.
    Words {
        #[arg(required = true, value_name = "EXPR")]
        expr: Vec<String>,
    },
    /// Read commands from standard input, one per line. Lines look like
    /// the single-shot commands (`reduce [a]^{<w} [a]^{<2}`); blank lines
    /// and `#` comments are skipped, `let name = <command>` stores a
    /// single-line result for reuse as `$name`, `exit` stops.
    Repl,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Ordinal,
    Product,
    Word,
}

/// Errors grouped by exit code. Usage and parse problems share code 2,
/// matching clap's own usage-error convention.
enum CliError {
    Usage(String),
    Parse(String),
    Semantic(String),
    Io(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Parse(_) => 2,
            CliError::Semantic(_) => 3,
            CliError::Io(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m)
            | CliError::Parse(m)
            | CliError::Semantic(m)
            | CliError::Io(m) => m,
        }
    }
}

impl From<TextError> for CliError {
    fn from(e: TextError) -> Self {
        match e {
            TextError::Parse(p) => CliError::Parse(p.to_string()),
            TextError::Semantic(s) => CliError::Semantic(s.to_string()),
        }
    }
}

impl From<transword::Error> for CliError {
    fn from(e: transword::Error) -> Self {
        CliError::Semantic(e.to_string())
    }
}

struct Session {
    space: Option<Arc<Space>>,
    oracle_depth: usize,
    format: Format,
    bindings: BTreeMap<String, String>,
}

impl Session {
    fn space(&self) -> Result<&Arc<Space>, CliError> {
        self.space
            .as_ref()
            .ok_or_else(|| CliError::Usage("--space <FILE> is required for this command".into()))
    }

    /// Lines for a list-valued result: `- ` prefixed when pretty.
    fn list(&self, items: impl IntoIterator<Item = String>) -> String {
        let mut out = String::new();
        for item in items {
            if self.format == Format::Pretty {
                out.push_str("- ");
            }
            out.push_str(&item);
            out.push('\n');
        }
        out
    }

    fn union_output(&self, union: &ProductUnion) -> String {
        if union.is_empty_set() {
            return "empty\n".into();
        }
        self.list(union.members().iter().map(|m| m.to_string()))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut session = Session {
        space: None,
        oracle_depth: cli.oracle_depth,
        format: cli.format,
        bindings: BTreeMap::new(),
    };
    if let Some(path) = &cli.space {
        match load_space(path) {
            Ok(space) => session.space = Some(space),
            Err(e) => return fail(&e),
        }
    }
    let result = match &cli.command {
        Command::Repl => return repl(&mut session),
        other => run(&session, other),
    };
    match result {
        Ok(output) => {
            print!("{output}");
            ExitCode::SUCCESS
        }
        Err(e) => fail(&e),
    }
}

fn fail(e: &CliError) -> ExitCode {
    eprintln!("error: {}", e.message());
    ExitCode::from(e.code())
}

fn load_space(path: &PathBuf) -> Result<Arc<Space>, CliError> {
    let source = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    Ok(text::parse_space(&source)?)
}

fn run(session: &Session, command: &Command) -> Result<String, CliError> {
    match command {
        Command::Reduce { expr } => cmd_reduce(session, &expr.join(" ")),
        Command::Includes { left, right } => cmd_includes(session, left, &right.join(" ")),
        Command::Intersect { left, right } => cmd_intersect(session, left, &right.join(" ")),
        Command::Rank { expr } => cmd_rank(session, &expr.join(" ")),
        Command::Closure { word } => cmd_closure(session, &word.join(" ")),
        Command::Leq { left, right } => cmd_leq(session, left, &right.join(" ")),
        Command::AlphaNormalize { alpha, expr } => {
            cmd_alpha_normalize(session, alpha, &expr.join(" "))
        }
        Command::Canon { kind, expr } => cmd_canon(session, *kind, &expr.join(" ")),
        Command::Words { expr } => cmd_words(session, &expr.join(" ")),
        Command::Repl => unreachable!("handled in main"),
    }
}

fn parse_product(session: &Session, input: &str) -> Result<Product, CliError> {
    Ok(text::parse_product(session.space()?, input)?)
}

fn cmd_reduce(session: &Session, expr: &str) -> Result<String, CliError> {
    let product = parse_product(session, expr)?;
    Ok(format!("{}\n", product.reduced()))
}

fn cmd_includes(session: &Session, left: &str, right: &str) -> Result<String, CliError> {
    let l = parse_product(session, left)?;
    let r = parse_product(session, right)?;
    if l.included_in(&r)? {
        return Ok("true\n".into());
    }
    let mut out = String::from("false\n");
    // A finite witness illustrates the refusal when one exists; with
    // exponents above ω the two sides can disagree on transfinite words
    // only, and on the cofinite alphabet the search does not apply.
    if l.atoms().len() < 64 && r.atoms().len() < 64 {
        match oracle::refute_inclusion(&l, std::slice::from_ref(&r)) {
            Ok(Some(witness)) => out.push_str(&format!("witness: {witness}\n")),
            Ok(None) => {}
            Err(transword::Error::InfiniteAlphabet) => {}
            Err(e) => return Err(e.into()),
        }
    }
    Ok(out)
}

fn cmd_intersect(session: &Session, left: &str, right: &str) -> Result<String, CliError> {
    let l = parse_product(session, left)?;
    let r = parse_product(session, right)?;
    Ok(session.union_output(&l.intersect(&r)?))
}

fn cmd_rank(session: &Session, expr: &str) -> Result<String, CliError> {
    let product = parse_product(session, expr)?;
    Ok(format!("{}\n", product.reduced().rank()?))
}

fn cmd_closure(session: &Session, expr: &str) -> Result<String, CliError> {
    let word = text::parse_word(session.space()?, expr)?;
    Ok(format!("{}\n", word.closure()))
}

fn cmd_leq(session: &Session, left: &str, right: &str) -> Result<String, CliError> {
    let space = session.space()?;
    let l = text::parse_word(space, left)?;
    let r = text::parse_word(space, right)?;
    Ok(format!("{}\n", l.leq(&r)?))
}

fn cmd_alpha_normalize(session: &Session, alpha: &str, expr: &str) -> Result<String, CliError> {
    let ordinal = text::parse_ordinal(alpha)?;
    let alpha = Bound::from_ordinal(&ordinal)
        .ok_or_else(|| CliError::Semantic(format!("not a bound: {ordinal}")))?;
    let product = parse_product(session, expr)?;
    let space = session.space()?;
    // Exponents above α are clamped to α first: lengths below the clamp
    // stay below α anyway. Clamping may strand a reducible support on a
    // unit exponent, so it goes through the preatom pipeline.
    let clamped = transword::algebra::normalize(space, &product.clamped_preatoms(&alpha))?;
    let mut result = ProductUnion::empty(space);
    for member in clamped.members() {
        result = result.union(&member.to_alpha_products(&alpha)?)?;
    }
    Ok(session.union_output(&result))
}

fn cmd_canon(session: &Session, kind: Kind, expr: &str) -> Result<String, CliError> {
    match kind {
        Kind::Ordinal => Ok(format!("{}\n", text::parse_ordinal(expr)?)),
        Kind::Product => Ok(format!("{}\n", text::parse_product(session.space()?, expr)?)),
        Kind::Word => Ok(format!("{}\n", text::parse_word(session.space()?, expr)?)),
    }
}

fn cmd_words(session: &Session, expr: &str) -> Result<String, CliError> {
    let product = parse_product(session, expr)?;
    let words = oracle::enumerate(session.space()?, session.oracle_depth)?;
    Ok(session.list(
        words
            .filter(|w| oracle::matches(w, &product))
            .map(|w| w.to_string()),
    ))
}

/// One command per line against a shared session. Results print as they
/// are produced; errors go to stderr and the loop continues, so a REPL
/// run exits 0 unless reading stdin itself fails.
fn repl(session: &mut Session) -> ExitCode {
    let stdin = std::io::stdin();
    let mut lines = stdin.lock().lines();
    loop {
        let line = match lines.next() {
            None => return ExitCode::SUCCESS,
            Some(Ok(line)) => line,
            Some(Err(e)) => return fail(&CliError::Io(e.to_string())),
        };
        match handle_line(session, &line) {
            Ok(None) => return ExitCode::SUCCESS,
            Ok(Some(output)) => {
                print!("{output}");
                let _ = std::io::stdout().flush();
            }
            Err(e) => eprintln!("error: {}", e.message()),
        }
    }
}

/// Runs one REPL line. `Ok(None)` means exit; the empty string means the
/// line produced no output (comments, blanks, `let`).
fn handle_line(session: &mut Session, line: &str) -> Result<Option<String>, CliError> {
    let trimmed = line.trim();
    if trimmed.is_empty() || trimmed.starts_with('#') {
        return Ok(Some(String::new()));
    }
    if trimmed == "exit" || trimmed == "quit" {
        return Ok(None);
    }
    if let Some(rest) = trimmed.strip_prefix("let ") {
        let (name, command) = rest
            .split_once('=')
            .ok_or_else(|| CliError::Usage("expected `let name = <command>`".into()))?;
        let name = name.trim();
        if name.is_empty() || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
            return Err(CliError::Usage(format!("invalid binding name: {name}")));
        }
        let value = dispatch(session, command.trim())?;
        let value = value.trim_end_matches('\n');
        if value.contains('\n') {
            return Err(CliError::Usage(
                "multi-line results cannot be bound; bind the members one by one".into(),
            ));
        }
        session.bindings.insert(name.to_string(), value.to_string());
        return Ok(Some(String::new()));
    }
    dispatch(session, trimmed).map(Some)
}

/// Parses a REPL command line: whitespace-split tokens, `$name` tokens
/// replaced by their bound text, first token selecting the command. For
/// two-expression commands the first expression is the first token
/// (bindings let it stand for a whole product).
fn dispatch(session: &Session, input: &str) -> Result<String, CliError> {
    let mut tokens = Vec::new();
    for raw in input.split_whitespace() {
        if let Some(name) = raw.strip_prefix('$') {
            let value = session
                .bindings
                .get(name)
                .ok_or_else(|| CliError::Usage(format!("unknown binding: ${name}")))?;
            tokens.push(value.clone());
        } else {
            tokens.push(raw.to_string());
        }
    }
    let (head, args) = tokens
        .split_first()
        .ok_or_else(|| CliError::Usage("empty command".into()))?;
    let two = |label: &str| -> Result<(String, String), CliError> {
        match args.split_first() {
            Some((first, rest)) if !rest.is_empty() => Ok((first.clone(), rest.join(" "))),
            _ => Err(CliError::Usage(format!("{label} takes two expressions"))),
        }
    };
    let one = |label: &str| -> Result<String, CliError> {
        if args.is_empty() {
            return Err(CliError::Usage(format!("{label} takes an expression")));
        }
        Ok(args.join(" "))
    };
    match head.as_str() {
        "reduce" => cmd_reduce(session, &one("reduce")?),
        "includes" => {
            let (l, r) = two("includes")?;
            cmd_includes(session, &l, &r)
        }
        "intersect" => {
            let (l, r) = two("intersect")?;
            cmd_intersect(session, &l, &r)
        }
        "rank" => cmd_rank(session, &one("rank")?),
        "closure" => cmd_closure(session, &one("closure")?),
        "leq" => {
            let (l, r) = two("leq")?;
            cmd_leq(session, &l, &r)
        }
        "alpha-normalize" => {
            let (alpha, expr) = two("alpha-normalize")?;
            cmd_alpha_normalize(session, &alpha, &expr)
        }
        "canon" => {
            let (kind, expr) = two("canon")?;
            let kind = match kind.as_str() {
                "ordinal" => Kind::Ordinal,
                "product" => Kind::Product,
                "word" => Kind::Word,
                other => {
                    return Err(CliError::Usage(format!(
                        "unknown canon kind: {other} (expected ordinal, product, word)"
                    )))
                }
            };
            cmd_canon(session, kind, &expr)
        }
        "words" => cmd_words(session, &one("words")?),
        other => Err(CliError::Usage(format!("unknown command: {other}"))),
    }
}
