//! `ordcond`: evaluate condensation expressions and run the law checkers.
//!
//! Exit codes: 0 ok, 1 a checked property failed, 2 parse error,
//! 3 outside the supported fragment.

use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use ordcond::generate::enumerate;
use ordcond::parse::Func;
use ordcond::points::{class_frame, interval_class, sample_points};
use ordcond::{
    cc, check_left_regular_band, check_semigroup, check_tfae, closure_table, embed_into_u,
    parse_expr, profile, CondResult, EmbedOutcome, Error, Expr, LawReport, Level, OrderTerm,
    PointCode,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

/// Seed used when `--seed` is not given.
const DEFAULT_SEED: u64 = 1;
const SCHEMA: u32 = 1;
/// Spine points and gaps shown in text output of `embed`.
const LISTED: usize = 10;

#[derive(Parser)]
#[command(
    name = "ordcond",
    version,
    about = "Condensations of linear order types"
)]
struct Cli {
    /// Print a JSON document instead of text
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate an expression such as `cc(w1 + 1)` or `mulw(q, w1)`
    Eval { expr: String },
    /// Print the profile of an order type
    Classify { expr: String },
    /// Evaluate the three right-identity characterizations
    Tfae { expr: String },
    /// Check band or semigroup laws on a sample
    Check {
        #[arg(value_enum)]
        law: Law,
        /// Sample terms
        #[arg(long, num_args = 1.., conflicts_with = "depth", required_unless_present = "depth")]
        gens: Vec<String>,
        /// Draw the sample from all generated terms up to this depth
        #[arg(long)]
        depth: Option<u32>,
        /// Sample size with --depth
        #[arg(long, default_value_t = 12)]
        size: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Print the product table of the generators
    Table {
        #[arg(long, num_args = 0.., required = true)]
        gens: Vec<String>,
        #[arg(long, value_enum, default_value = "cc")]
        level: LevelArg,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// Embed an order condensing to 1 into the ω₁-lengthened rational line
    Embed {
        expr: String,
        /// Number of random point pairs to verify
        #[arg(long, default_value_t = 500)]
        samples: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Compare class indices with interval cardinalities on sampled points
    Oracle {
        expr: String,
        #[arg(long, default_value_t = 1000)]
        pairs: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Level to check; both when omitted
        #[arg(long, value_enum)]
        level: Option<LevelArg>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Law {
    Band,
    Semigroup,
}

#[derive(Clone, Copy, ValueEnum)]
enum LevelArg {
    Cc,
    Fc,
}

impl From<LevelArg> for Level {
    fn from(l: LevelArg) -> Level {
        match l {
            LevelArg::Cc => Level::Countable,
            LevelArg::Fc => Level::Finite,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Status {
    Ok,
    Violation,
    ParseError,
    Unsupported,
}

impl Status {
    fn code(self) -> u8 {
        match self {
            Status::Ok => 0,
            Status::Violation => 1,
            Status::ParseError => 2,
            Status::Unsupported => 3,
        }
    }
}

struct Output {
    status: Status,
    text: String,
    json: Value,
}

impl Output {
    fn new(status: Status, text: String, json: Value) -> Output {
        Output { status, text, json }
    }
}

/// A failed command: the status and a message for stderr.
struct Failure {
    status: Status,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let status = match e {
            Error::Syntax { .. } | Error::Arity { .. } | Error::InvalidCode(_) => {
                Status::ParseError
            }
            Error::Unsupported(_) | Error::NoEndpoint(_) => Status::Unsupported,
            Error::InvalidSample(_) | Error::VerificationFailed(_) => Status::Violation,
        };
        Failure {
            status,
            message: e.to_string(),
        }
    }
}

type Run = Result<Output, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let status = match run(&cli.command) {
        Ok(out) => {
            let mut stdout = io::stdout().lock();
            let written = if cli.json {
                let mut doc = out.json;
                doc["schema"] = json!(SCHEMA);
                writeln!(
                    stdout,
                    "{}",
                    serde_json::to_string_pretty(&doc).expect("json")
                )
            } else {
                write!(stdout, "{}", out.text)
            };
            if written.is_err() {
                return ExitCode::from(1);
            }
            out.status
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.status
        }
    };
    ExitCode::from(status.code())
}

fn run(command: &Command) -> Run {
    match command {
        Command::Eval { expr } => eval(expr),
        Command::Classify { expr } => classify(expr),
        Command::Tfae { expr } => tfae(expr),
        Command::Check {
            law,
            gens,
            depth,
            size,
            seed,
        } => check(*law, gens, *depth, *size, *seed),
        Command::Table {
            gens,
            level,
            format,
        } => table(gens, (*level).into(), *format),
        Command::Embed {
            expr,
            samples,
            seed,
        } => embed(expr, *samples, *seed),
        Command::Oracle {
            expr,
            pairs,
            seed,
            level,
        } => oracle(expr, *pairs, *seed, level.map(Level::from)),
    }
}

fn parse_with_context(text: &str) -> Result<Expr, Failure> {
    parse_expr(text).map_err(|e| {
        let mut f = Failure::from(e.clone());
        if let Error::Syntax { pos, .. } = e {
            f.message = format!("{}\n  {text}\n  {}^", f.message, " ".repeat(pos));
        }
        f
    })
}

fn term_of(text: &str) -> Result<OrderTerm, Failure> {
    Ok(parse_with_context(text)?.eval()?)
}

fn flags_json(r: &CondResult) -> Value {
    json!({"mergeLeft": r.merge_left, "mergeRight": r.merge_right})
}

fn eval(text: &str) -> Run {
    let expr = parse_with_context(text)?;
    // a top-level condensation also reports its boundary flags
    let (normalized, result, flags) = match &expr {
        Expr::Call(f @ (Func::Cc | Func::Fc), args) => {
            let level = if *f == Func::Cc {
                Level::Countable
            } else {
                Level::Finite
            };
            let arg = args[0].eval()?;
            let r = cc(&arg, level)?;
            (format!("{}({arg})", f.name()), r.quotient.clone(), Some(r))
        }
        e => {
            let t = e.eval()?;
            (t.to_string(), t, None)
        }
    };
    let p = profile(&result)?;
    let json = json!({
        "input": text,
        "normalized": normalized,
        "result": result.to_string(),
        "flags": flags.as_ref().map(flags_json),
        "profile": p,
    });
    Ok(Output::new(Status::Ok, format!("{result}\n"), json))
}

fn classify(text: &str) -> Run {
    let t = term_of(text)?;
    let p = profile(&t)?;
    let mut out = format!("term          {t}\n");
    out += &format!("cardinality   {}\n", p.card);
    out += &format!("cofinality    {}\n", p.cofin);
    out += &format!("coinitiality  {}\n", p.coin);
    out += &format!("first, last   {}, {}\n", p.has_first, p.has_last);
    let mut flags = Value::Null;
    for level in Level::BOTH {
        let r = cc(&t, level)?;
        out += &format!(
            "{:<14}quotient {}, small head {}, small tail {}, condenses to 1 {}, right identity {}\n",
            level.to_string(),
            r.quotient,
            p.small_head.get(level),
            p.small_tail.get(level),
            p.condenses_to_one.get(level),
            p.right_identity.get(level),
        );
        if level == Level::Countable {
            flags = flags_json(&r);
        }
    }
    let json = json!({
        "input": text,
        "normalized": t.to_string(),
        "result": cc(&t, Level::Countable)?.quotient.to_string(),
        "flags": flags,
        "profile": p,
    });
    Ok(Output::new(Status::Ok, out, json))
}

fn tfae(text: &str) -> Run {
    let t = term_of(text)?;
    let r = check_tfae(&t)?;
    let verdict = if r.consistent {
        "consistent"
    } else {
        "inconsistent"
    };
    let out = format!(
        "condenses to 1 with cofinality or coinitiality w1: {}\n\
         condenses to 1 without a countable head or tail:  {}\n\
         condenses to 1 and is uncountable:                 {}\n\
         {verdict}\n",
        r.cofinality_condition, r.tail_condition, r.cardinality_condition
    );
    let json = json!({
        "input": text,
        "normalized": t.to_string(),
        "result": verdict,
        "tfae": r,
        "profile": profile(&t)?,
    });
    let status = if r.consistent {
        Status::Ok
    } else {
        Status::Violation
    };
    Ok(Output::new(status, out, json))
}

/// Draws `size` members of `pool` with a seeded shuffle, keeping both
/// right identities and other orders condensing to 1 when `mixed`.
fn draw(
    pool: Vec<OrderTerm>,
    size: usize,
    seed: u64,
    mixed: bool,
) -> Result<Vec<OrderTerm>, Failure> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pool = pool;
    pool.shuffle(&mut rng);
    if !mixed {
        pool.truncate(size);
        return Ok(pool);
    }
    let mut ri = Vec::new();
    let mut rest = Vec::new();
    for t in pool {
        if profile(&t)?.right_identity.countable {
            ri.push(t);
        } else {
            rest.push(t);
        }
    }
    let half = size.div_ceil(2).min(ri.len());
    let mut out: Vec<OrderTerm> = ri.into_iter().take(half).collect();
    out.extend(rest.into_iter().take(size - half));
    Ok(out)
}

fn check(law: Law, gens: &[String], depth: Option<u32>, size: usize, seed: u64) -> Run {
    let sample = match depth {
        None => gens
            .iter()
            .map(|g| term_of(g))
            .collect::<Result<Vec<_>, _>>()?,
        Some(d) => {
            let mut pool = Vec::new();
            for t in enumerate(d) {
                let p = profile(&t)?;
                let keep = match law {
                    Law::Band => p.right_identity.countable,
                    Law::Semigroup => p.condenses_to_one.countable,
                };
                if keep {
                    pool.push(t);
                }
            }
            draw(pool, size, seed, matches!(law, Law::Semigroup))?
        }
    };
    let report = match law {
        Law::Band => check_left_regular_band(&sample)?,
        Law::Semigroup => check_semigroup(&sample)?,
    };
    let ok = report.passed() && report.unverified() == 0;
    let status = if ok { Status::Ok } else { Status::Violation };
    Ok(Output::new(
        status,
        report_text(&report, ok),
        json!({"report": report, "passed": ok}),
    ))
}

fn report_text(r: &LawReport, ok: bool) -> String {
    let mut out = format!("{} on {}\n", r.structure, r.sample_description);
    for c in &r.checks {
        out += &format!(
            "  {:<14} {:>6} trials  {} refuted  {} unknown\n",
            c.name,
            c.trials,
            c.refuted.len(),
            c.unverified.len()
        );
        for (kind, list) in [("refuted", &c.refuted), ("unknown", &c.unverified)] {
            for ce in list.iter().take(5) {
                let inputs: Vec<String> = ce.inputs.iter().map(|t| t.to_string()).collect();
                out += &format!(
                    "    {kind}: [{}]  {}  vs  {}\n",
                    inputs.join(", "),
                    ce.lhs,
                    ce.rhs
                );
            }
        }
    }
    if !r.case_hits.is_empty() {
        let hits: Vec<String> = r
            .case_hits
            .iter()
            .enumerate()
            .map(|(i, n)| format!("{}:{n}", i + 1))
            .collect();
        out += &format!("  cases hit      {}\n", hits.join(" "));
    }
    out += if ok { "pass\n" } else { "FAIL\n" };
    out
}

fn table(gens: &[String], level: Level, format: Format) -> Run {
    let gens = gens
        .iter()
        .map(|g| term_of(g))
        .collect::<Result<Vec<_>, _>>()?;
    let t = closure_table(&gens, level)?;
    let json = json!({"table": t});
    let text = match format {
        Format::Json => format!("{}\n", serde_json::to_string_pretty(&t).expect("json")),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let mut header = vec![String::new()];
            header.extend(t.generators.iter().map(|g| g.to_string()));
            let rows =
                std::iter::once(header).chain(t.generators.iter().zip(&t.cells).map(|(g, row)| {
                    std::iter::once(g.to_string())
                        .chain(row.iter().map(|c| c.to_string()))
                        .collect()
                }));
            for row in rows {
                w.write_record(&row).map_err(|e| Failure {
                    status: Status::Violation,
                    message: e.to_string(),
                })?;
            }
            String::from_utf8(w.into_inner().expect("flush to memory")).expect("utf-8")
        }
    };
    Ok(Output::new(Status::Ok, text, json))
}

fn embed(text: &str, samples: usize, seed: u64) -> Run {
    let t = term_of(text)?;
    let outcome = embed_into_u(&t, samples, seed)?;
    let out = match &outcome {
        EmbedOutcome::NotEmbeddable(q) => {
            format!("not embeddable: {t} condenses to {q}, not 1\n")
        }
        EmbedOutcome::Embedded(c) => {
            let mut out = format!(
                "embedded {t} ({:?}): {} spine points, {} gap blocks, {} pairs verified\n",
                c.case,
                c.spine.len(),
                c.gaps.len(),
                c.verified_pairs
            );
            for e in c.spine.iter().take(LISTED) {
                let src = match &e.source {
                    ordcond::embed::SpineSource::Point(p) => code(p),
                    ordcond::embed::SpineSource::New => "NEW".to_string(),
                };
                out += &format!("  {src} -> {}\n", upoint(&e.target));
            }
            if c.spine.len() > LISTED {
                out += &format!("  ... {} more spine points\n", c.spine.len() - LISTED);
            }
            for g in c.gaps.iter().take(LISTED) {
                out += &format!("  gap {:?} {}: {}\n", g.side, g.index, g.description);
            }
            out
        }
    };
    let json = json!({
        "input": text,
        "normalized": t.to_string(),
        "result": match outcome { EmbedOutcome::Embedded(_) => "embedded", _ => "not embeddable" },
        "certificate": outcome,
    });
    Ok(Output::new(Status::Ok, out, json))
}

fn upoint(u: &ordcond::UPoint) -> String {
    let sign = match u.side {
        ordcond::Side::Neg => "-",
        _ => "",
    };
    match &u.slot {
        ordcond::Slot::Spine => format!("{sign}u[{}]", u.index),
        ordcond::Slot::Rat(q) if u.side == ordcond::Side::Mid => format!("{q} in Q(mid)"),
        ordcond::Slot::Rat(q) => format!("{q} in Q({sign}{})", u.index),
    }
}

fn code(p: &PointCode) -> String {
    match p {
        PointCode::Unit => "*".into(),
        PointCode::Nat(n) => n.to_string(),
        PointCode::Int(n) => n.to_string(),
        PointCode::Rat(q) => q.to_string(),
        PointCode::Ord(a) => a.to_string(),
        PointCode::Ord2(d, r) => format!("w1*({d}) + {r}"),
        PointCode::U(u) => upoint(u),
        PointCode::Part(i, x) => format!("#{i}:{}", code(x)),
        PointCode::Pair(a, b) => format!("({}, {})", code(a), code(b)),
    }
}

fn oracle(text: &str, pairs: usize, seed: u64, level: Option<Level>) -> Run {
    let t = term_of(text)?;
    let points = sample_points(&t, 48, seed);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut chosen: Vec<(usize, usize)> =
        (1..points.len()).map(|i| (i - 1, i)).take(pairs).collect();
    while chosen.len() < pairs && !points.is_empty() {
        chosen.push((
            rng.random_range(0..points.len()),
            rng.random_range(0..points.len()),
        ));
    }
    let levels: Vec<Level> = level.map_or(Level::BOTH.to_vec(), |l| vec![l]);
    let mut out = String::new();
    let mut per_level = Vec::new();
    let mut total = 0;
    for level in levels {
        let frame = class_frame(&t, level)?;
        let mut mismatches = Vec::new();
        for &(i, j) in &chosen {
            let (p, q) = (&points[i], &points[j]);
            let small = level.is_small(interval_class(&t, p, q)?);
            let same = frame.index(p)? == frame.index(q)?;
            if small != same {
                mismatches.push(json!({"p": p, "q": q, "small": small, "sameClass": same}));
            }
        }
        out += &format!(
            "{level}: {} pairs, {} mismatches\n",
            chosen.len(),
            mismatches.len()
        );
        for m in mismatches.iter().take(5) {
            out += &format!("  {m}\n");
        }
        total += mismatches.len();
        per_level.push(
            json!({"level": level.to_string(), "pairs": chosen.len(), "mismatches": mismatches}),
        );
    }
    let json = json!({
        "input": text,
        "normalized": t.to_string(),
        "result": if total == 0 { "agree" } else { "mismatch" },
        "levels": per_level,
    });
    let status = if total == 0 {
        Status::Ok
    } else {
        Status::Violation
    };
    Ok(Output::new(status, out, json))
}
