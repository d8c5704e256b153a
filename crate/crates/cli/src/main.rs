//! `gns`: command-line front end for generalized numerical semigroups.
//!
//! Exit codes: 0 success, 2 invalid mathematical input, 3 overflow or
//! resource limit, 64 usage error, 74 output failure.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::process::ExitCode;
use std::time::Duration;

use clap::{error::ErrorKind, Args, Parser, Subcommand, ValueEnum};
use gns_core::{
    build_genus_polynomial, format_point_list, gaps_to_generators, generators_to_gaps,
    parse_point_list, random_gns, ratio_table, ConvertError, CountReport, Engine, EnumError,
    FrobeniusValue, Gns, GnsError, LatticeError, OrderKind, Point, PolyError, RelaxedOrder,
};
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(
    name = "gns",
    version,
    about = "Generalized numerical semigroups in ℕ^d"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Relaxed monomial order: lex, grlex, minlex or mingrlex.
    #[arg(long, global = true, default_value = "lex")]
    order: String,
    #[arg(long, global = true, value_enum, default_value_t = Format::Plain)]
    format: Format,
    /// Worker threads for enumeration (default: available parallelism).
    #[arg(long, global = true, env = "GNS_THREADS", value_parser = clap::value_parser!(u32).range(1..))]
    threads: Option<u32>,
    /// Abort enumeration with exit code 3 after this many seconds.
    #[arg(long, global = true)]
    limit_seconds: Option<f64>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Plain,
    Json,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Method {
    Tree,
    Ord,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Gap set of the monoid generated by a finite set.
    GensToGaps {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        dim: u32,
        /// Generators as `a,b;c,d;…`.
        #[arg(long, allow_hyphen_values = true)]
        gens: String,
    },
    /// Minimal generators of the complement of a gap set.
    GapsToGens {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        dim: u32,
        /// Gaps as `a,b;c,d;…` (empty for ℕ^d).
        #[arg(long, allow_hyphen_values = true)]
        gaps: String,
    },
    /// Number of semigroups of a genus in a dimension.
    Count {
        #[arg(long)]
        genus: usize,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        dim: u32,
        #[arg(long, value_enum, default_value_t = Method::Ord)]
        method: Method,
        /// Also split the count by rank of the gap set (ord method only).
        #[arg(long)]
        by_rank: bool,
    },
    /// Every semigroup of a genus, one JSON object per line.
    Enumerate {
        #[arg(long)]
        genus: usize,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        dim: u32,
        /// Write the semigroups here and print the count; stdout otherwise.
        #[arg(long)]
        out: Option<String>,
    },
    /// Invariants of one semigroup.
    Info {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        dim: u32,
        #[arg(long, allow_hyphen_values = true)]
        gaps: String,
    },
    /// Counting polynomial F_g(x), or its value at a dimension.
    Polynomial {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        genus: u32,
        #[arg(long)]
        eval: Option<u64>,
    },
    /// A pseudo-random semigroup of the given genus.
    Random {
        #[arg(long)]
        genus: usize,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        dim: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Squares of one-dimensional counts against two-dimensional counts.
    RatioTable {
        #[arg(long)]
        max_genus: usize,
    },
}

/// A failure with its exit code and a short machine-readable reason.
struct Failure {
    code: u8,
    reason: String,
    message: String,
}

const INVALID: u8 = 2;
const LIMIT: u8 = 3;
const USAGE: u8 = 64;
const IO: u8 = 74;

impl Failure {
    fn new(code: u8, reason: impl Into<String>, message: impl ToString) -> Self {
        Failure {
            code,
            reason: reason.into(),
            message: message.to_string(),
        }
    }
}

impl From<LatticeError> for Failure {
    fn from(e: LatticeError) -> Self {
        match e {
            LatticeError::Overflow => Failure::new(LIMIT, "overflow", e),
            LatticeError::UnsupportedOrder(..) => Failure::new(INVALID, "unsupported-order", e),
            _ => Failure::new(USAGE, "bad-input", e),
        }
    }
}

impl From<GnsError> for Failure {
    fn from(e: GnsError) -> Self {
        match e {
            GnsError::Lattice(l) => l.into(),
            GnsError::DimensionMismatch { .. } => Failure::new(USAGE, "bad-input", e),
            GnsError::ZeroGap => Failure::new(INVALID, "zero-gap", e),
            _ => Failure::new(INVALID, "not-a-gap-set", e),
        }
    }
}

impl From<ConvertError> for Failure {
    fn from(e: ConvertError) -> Self {
        let reason = match &e {
            ConvertError::Lattice(l) => return l.clone().into(),
            ConvertError::DimensionMismatch { .. } => return Failure::new(USAGE, "bad-input", e),
            ConvertError::BoxTooLarge(_) => return Failure::new(LIMIT, "box-too-large", e),
            ConvertError::NotAGns(_) => "not-a-gap-set".to_string(),
            ConvertError::ZeroGap => "zero-gap".to_string(),
            ConvertError::AxisNotNumerical(i) => format!("axis-not-numerical({i})"),
            ConvertError::MissingMixedGenerator(i, k) => {
                format!("missing-mixed-generator({i},{k})")
            }
            ConvertError::EmptyGenerators => "empty-generators".to_string(),
        };
        Failure::new(INVALID, reason, e)
    }
}

impl From<EnumError> for Failure {
    fn from(e: EnumError) -> Self {
        match e {
            EnumError::Overflow => Failure::new(LIMIT, "overflow", e),
            EnumError::TimeLimit => Failure::new(LIMIT, "time-limit", e),
            EnumError::Lattice(l) => l.into(),
            EnumError::OrderDimension { .. } => Failure::new(USAGE, "bad-input", e),
            EnumError::Sink(_) => Failure::new(IO, "io", e),
            EnumError::ThreadPool(_) => Failure::new(USAGE, "threads", e),
        }
    }
}

impl From<PolyError> for Failure {
    fn from(e: PolyError) -> Self {
        Failure::new(INVALID, "polynomial", e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::new(IO, "io", e)
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(USAGE),
            };
        }
    };
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let result = run(&cli, &mut out).and_then(|()| out.flush().map_err(Failure::from));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            drop(out);
            if cli.global.format == Format::Json {
                eprintln!("{}", json!({"error": f.reason, "message": f.message}));
            } else {
                eprintln!("error[{}]: {}", f.reason, f.message);
            }
            ExitCode::from(f.code)
        }
    }
}

fn order(global: &Global, dim: usize) -> Result<RelaxedOrder, Failure> {
    let kind: OrderKind = global.order.parse()?;
    Ok(RelaxedOrder::new(kind, dim))
}

fn engine(global: &Global) -> Result<Engine, Failure> {
    let limit = match global.limit_seconds {
        None => None,
        Some(s) if s.is_finite() && s >= 0.0 => Some(Duration::from_secs_f64(s)),
        Some(s) => {
            return Err(Failure::new(
                USAGE,
                "bad-input",
                format!("invalid time limit {s}"),
            ))
        }
    };
    Ok(Engine::new()
        .with_threads(global.threads.map(|t| t as usize))
        .with_time_limit(limit))
}

fn coords(points: &[Point]) -> Vec<Vec<usize>> {
    points.iter().map(|p| p.coords().to_vec()).collect()
}

fn sorted(mut points: Vec<Point>) -> Vec<Point> {
    points.sort();
    points
}

fn run(cli: &Cli, out: &mut dyn Write) -> Outcome {
    let global = &cli.global;
    let json = global.format == Format::Json;
    match &cli.command {
        Command::GensToGaps { dim, gens } => {
            let dim = *dim as usize;
            let gens = parse_point_list(gens, dim)?;
            let result = generators_to_gaps(&gens, dim)?;
            if json {
                writeln!(
                    out,
                    "{}",
                    json!({"dim": dim, "gaps": coords(&result.gaps), "bound": result.bound.v.coords()})
                )?;
            } else {
                writeln!(out, "{}", format_point_list(&result.gaps))?;
                writeln!(out, "bound: {}", result.bound.v)?;
            }
        }
        Command::GapsToGens { dim, gaps } => {
            let dim = *dim as usize;
            let ord = order(global, dim)?;
            let gaps = parse_point_list(gaps, dim)?;
            let gens = sorted(gaps_to_generators(&gaps, dim, &ord)?);
            if json {
                writeln!(out, "{}", json!({"dim": dim, "min_gens": coords(&gens)}))?;
            } else {
                writeln!(out, "{}", format_point_list(&gens))?;
            }
        }
        Command::Count {
            genus,
            dim,
            method,
            by_rank,
        } => {
            let dim = *dim as usize;
            if *by_rank && *method == Method::Tree {
                return Err(Failure::new(
                    USAGE,
                    "bad-input",
                    "--by-rank needs --method ord",
                ));
            }
            let ord = order(global, dim)?;
            let engine = engine(global)?;
            let report = match method {
                Method::Tree => engine.count_genus_tree(*genus, dim, &ord)?,
                Method::Ord => engine.count_ordinarization(*genus, dim, &ord)?,
            };
            write_count(out, &report, *method, *by_rank, json)?;
        }
        Command::Enumerate {
            genus,
            dim,
            out: path,
        } => {
            let dim = *dim as usize;
            let ord = order(global, dim)?;
            let engine = engine(global)?;
            let emit = |w: &mut dyn Write| {
                engine.enumerate_genus(*genus, dim, &ord, &mut |s: &Gns| {
                    writeln!(w, "{}", s.to_json(false))
                })
            };
            match path {
                Some(path) => {
                    let mut file = BufWriter::new(File::create(path)?);
                    let n = emit(&mut file)?;
                    file.flush()?;
                    if json {
                        writeln!(out, "{}", json!({"count": n, "out": path}))?;
                    } else {
                        writeln!(out, "{n}")?;
                    }
                }
                None => {
                    emit(out)?;
                }
            }
        }
        Command::Info { dim, gaps } => {
            let dim = *dim as usize;
            let ord = order(global, dim)?;
            let s = Gns::from_gaps(parse_point_list(gaps, dim)?, dim)?;
            write_info(out, &s, &ord, json)?;
        }
        Command::Polynomial { genus, eval } => {
            let genus = *genus as usize;
            let engine = engine(global)?;
            let mut ranks = Vec::with_capacity(genus);
            for i in 1..=genus {
                let ord = order(global, i)?;
                let report = engine.count_ordinarization(genus, i, &ord)?;
                ranks.push(report.by_rank.expect("ordinarization reports ranks")[i - 1]);
            }
            let poly = build_genus_polynomial(genus, &ranks)?;
            match (eval, json) {
                (Some(d), false) => writeln!(out, "{}", poly.evaluate(*d)?)?,
                (Some(d), true) => writeln!(
                    out,
                    "{}",
                    json!({"genus": genus, "d": d, "value": big_json(&poly.evaluate(*d)?.to_string())})
                )?,
                (None, false) => writeln!(out, "{poly}")?,
                (None, true) => writeln!(
                    out,
                    "{}",
                    json!({
                        "genus": genus,
                        "binomial_coeffs": ranks,
                        "monomial_coeffs": poly.monomial_coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                        "text": poly.to_string(),
                    })
                )?,
            }
        }
        Command::Random { genus, dim, seed } => {
            let s = random_gns(*genus, *dim as usize, *seed);
            writeln!(out, "{}", s.to_json(false))?;
        }
        Command::RatioTable { max_genus } => {
            let engine = engine(global)?;
            let per_genus = |d: usize| -> Result<Vec<u64>, Failure> {
                let report = engine.count_genus_tree(*max_genus, d, &RelaxedOrder::lex(d))?;
                Ok(report.per_genus.expect("genus tree reports levels")[1..].to_vec())
            };
            let rows = ratio_table(*max_genus, &per_genus(1)?, &per_genus(2)?);
            if json {
                let rows: Vec<Value> = rows
                    .iter()
                    .map(|r| {
                        json!({
                            "genus": r.genus,
                            "n_g1": r.n1,
                            "n_g1_squared": big_json(&r.n1_squared.to_string()),
                            "n_g2": r.n2,
                            "ratio": r.ratio.to_string(),
                            "ratio_decimal": r.ratio_decimal(),
                            "growth": r.growth.to_string(),
                            "growth_decimal": r.growth_decimal(),
                        })
                    })
                    .collect();
                writeln!(out, "{}", Value::Array(rows))?;
            } else {
                writeln!(out, "g\tN_g1\tN_g1^2\tN_g2\tratio\tgrowth")?;
                for r in &rows {
                    writeln!(
                        out,
                        "{}\t{}\t{}\t{}\t{}\t{}",
                        r.genus,
                        r.n1,
                        r.n1_squared,
                        r.n2,
                        r.ratio_decimal(),
                        r.growth_decimal()
                    )?;
                }
            }
        }
    }
    Ok(())
}

/// JSON number when the integer fits in 64 bits, decimal string otherwise.
fn big_json(digits: &str) -> Value {
    digits
        .parse::<u64>()
        .map(Value::from)
        .unwrap_or_else(|_| Value::from(digits))
}

fn write_count(
    out: &mut dyn Write,
    report: &CountReport,
    method: Method,
    by_rank: bool,
    json: bool,
) -> io::Result<()> {
    if json {
        let mut obj = json!({
            "genus": report.genus,
            "dim": report.dim,
            "method": match method { Method::Tree => "tree", Method::Ord => "ord" },
            "total": report.total,
        });
        if by_rank {
            obj["by_rank"] = json!(report.by_rank);
        }
        if let Some(levels) = &report.per_genus {
            obj["per_genus"] = json!(levels);
        }
        return writeln!(out, "{obj}");
    }
    writeln!(out, "{}", report.total)?;
    if let (true, Some(ranks)) = (by_rank, &report.by_rank) {
        let ranks: Vec<String> = ranks.iter().map(u64::to_string).collect();
        writeln!(out, "by_rank: {}", ranks.join(","))?;
    }
    Ok(())
}

fn write_info(out: &mut dyn Write, s: &Gns, ord: &RelaxedOrder, json: bool) -> Outcome {
    let gens = s.minimal_generators().to_vec();
    let mult = s.multiplicity(ord);
    let frob = s.frobenius_element(ord);
    let pf = sorted(s.pseudo_frobenius().unwrap_or_default());
    let sg = sorted(s.special_gaps());
    let ordinary = s.is_ordinary(ord);
    if json {
        let frob_json = match &frob {
            FrobeniusValue::At(p) => json!(p.coords()),
            FrobeniusValue::SentinelAllOfNd => Value::Null,
        };
        writeln!(
            out,
            "{}",
            json!({
                "dim": s.dim(),
                "gaps": coords(s.gaps()),
                "genus": s.genus(),
                "order": ord.kind().to_string(),
                "multiplicity": mult.coords(),
                "frobenius": frob_json,
                "min_gens": coords(&gens),
                "pseudo_frobenius": coords(&pf),
                "special_gaps": coords(&sg),
                "ordinary": ordinary,
                "rank": s.rank(),
            })
        )?;
    } else {
        writeln!(out, "genus: {}", s.genus())?;
        writeln!(out, "multiplicity: {mult}")?;
        writeln!(out, "frobenius: {frob}")?;
        writeln!(out, "min_gens: {}", format_point_list(&gens))?;
        writeln!(out, "pseudo_frobenius: {}", format_point_list(&pf))?;
        writeln!(out, "special_gaps: {}", format_point_list(&sg))?;
        writeln!(out, "ordinary: {ordinary}")?;
        writeln!(out, "rank: {}", s.rank())?;
    }
    Ok(())
}
