//! Command-line front end for the `a2skein` library: invariants of 2-bridge
//! links, torus-link tail series, the identity and stabilization checks, the
//! coefficient-pattern report, the direct skein evaluator, and an on-disk
//! recoupling-table cache.
//!
//! Output discipline: standard output carries exactly the selected payload
//! serialization and nothing else, so runs are byte-reproducible and
//! pipeable. Parameter echo and timing go to standard error. Exit codes:
//! 0 success or true verdict, 1 false verdict, 2 usage error, 3 internal
//! failure (broken invariant, corrupt cache, panic).

use std::env;
use std::fmt::Write as _;
use std::fs;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;
use std::time::Instant;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::{BigInt, Sign};
use rand::Rng;

use a2skein::jones::{
    g_full_twist_form, jones_two_bridge, jones_two_bridge_with_table, psi_closed_form,
    FramedInvariant, TwoBridgeWord,
};
use a2skein::qexact::{RationalQ, SixthPowerLaurent, TruncatedSeries};
use a2skein::skein::{torus_invariant, DEFAULT_COLOR_LIMIT};
use a2skein::tails::{pattern_analysis, stabilization_check, tail_g, tail_psi, verify_identity};
use a2skein::websym::{sixj, SixJTable};

/// Hard cap on truncation orders; computing further is a deliberate act
/// (edit here), not a typo on the command line.
const ORDER_CAP: usize = 2000;

/// Environment variable naming the recoupling-table cache file. `--path`
/// overrides it where both apply.
const CACHE_ENV: &str = "A2SKEIN_SIXJ_CACHE";

const CACHE_FORMAT: &str = "a2skein-sixj-v1";

#[derive(Parser)]
#[command(
    name = "a2skein",
    version,
    about = "Exact sl3 link invariants, torus-link tail series, and their cross-checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Colored invariant of a 2-bridge link given by its even twist word
    Jones(JonesArgs),
    /// Invariant of the (2,2m) torus link, by one of three routes
    Torus(TorusArgs),
    /// Stabilized tail series of the (2,2m) torus-link invariants
    Tail(TailArgs),
    /// Check that the two tail routes agree coefficient by coefficient
    Verify(VerifyArgs),
    /// Check that the normalized finite invariants stabilize to the tails
    Stability(StabilityArgs),
    /// Run-length report of a tail against the conjectured sign pattern
    Pattern(PatternArgs),
    /// Evaluate a link diagram directly in the web skein relations
    Oracle(OracleArgs),
    /// Build or validate the on-disk recoupling-table cache
    Cache(CacheArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum TorusRoute {
    /// Single-sum closed form
    Closed,
    /// Full-twist chain expansion
    Fulltwist,
    /// Recoupling sum for the one-entry twist word
    Recoupling,
}

#[derive(Clone, Copy, ValueEnum)]
enum TailRoute {
    /// Direct limit sum
    Psi,
    /// Chain enumeration against the infinite Pochhammer
    G,
}

#[derive(Clone, Copy, ValueEnum)]
enum LinkKind {
    Torus,
}

#[derive(Args)]
struct JonesArgs {
    /// Twist word a1,a2,...,al (nonzero integers; use --word=-1,2 for
    /// leading negatives)
    #[arg(long, allow_hyphen_values = true)]
    word: String,
    /// Color n of the symmetric-power labelling
    #[arg(long)]
    color: i64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct TorusArgs {
    /// Half the number of crossings: the link is T(2,2m)
    #[arg(long)]
    m: i64,
    /// Color of both components
    #[arg(long)]
    n: i64,
    #[arg(long, value_enum, default_value_t = TorusRoute::Closed)]
    method: TorusRoute,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct TailArgs {
    #[arg(long)]
    m: i64,
    /// Truncation order (series exact modulo q^{order+1})
    #[arg(long, default_value_t = 150)]
    order: usize,
    #[arg(long, value_enum, default_value_t = TailRoute::Psi)]
    method: TailRoute,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    m: i64,
    #[arg(long, default_value_t = 150)]
    order: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct StabilityArgs {
    #[arg(long)]
    m: i64,
    /// Largest color checked against its successor and the limit
    #[arg(long)]
    nmax: i64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct PatternArgs {
    #[arg(long)]
    m: i64,
    #[arg(long, default_value_t = 150)]
    order: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct OracleArgs {
    #[arg(long, value_enum, default_value_t = LinkKind::Torus)]
    link: LinkKind,
    #[arg(long)]
    m: i64,
    /// Cable width of both components
    #[arg(long)]
    color: i64,
    /// Largest clasp color the evaluator will expand
    #[arg(long, default_value_t = DEFAULT_COLOR_LIMIT)]
    limit: i64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct CacheArgs {
    /// Cache file; defaults to $A2SKEIN_SIXJ_CACHE
    #[arg(long)]
    path: Option<PathBuf>,
    /// Recompute tables and overwrite the file instead of validating it
    #[arg(long)]
    rebuild: bool,
    /// Largest color to build tables for
    #[arg(long, default_value_t = 8)]
    nmax: i64,
}

/// A failed run, attributed to either the caller or the implementation.
enum Failure {
    Usage(String),
    Internal(anyhow::Error),
}

type CmdResult = Result<u8, Failure>;

fn usage<T>(msg: impl Into<String>) -> Result<T, Failure> {
    Err(Failure::Usage(msg.into()))
}

impl From<a2skein::qexact::QError> for Failure {
    fn from(e: a2skein::qexact::QError) -> Self {
        Failure::Internal(anyhow::Error::new(e))
    }
}

impl From<a2skein::skein::SkeinError> for Failure {
    fn from(e: a2skein::skein::SkeinError) -> Self {
        Failure::Internal(anyhow::Error::new(e))
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Internal(e)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    // Library invariants are enforced with assertions; report a broken one
    // compactly and fold it into the internal-failure exit code.
    std::panic::set_hook(Box::new(|info| {
        eprintln!("a2skein: internal failure: {info}");
    }));
    let started = Instant::now();
    let outcome = catch_unwind(AssertUnwindSafe(|| dispatch(&cli.command)));
    let code = match outcome {
        Ok(Ok(code)) => code,
        Ok(Err(Failure::Usage(msg))) => {
            eprintln!("a2skein: {msg}");
            2
        }
        Ok(Err(Failure::Internal(err))) => {
            eprintln!("a2skein: {err:#}");
            3
        }
        Err(_) => 3,
    };
    eprintln!(
        "a2skein {} {}: {:.1?}",
        env!("CARGO_PKG_VERSION"),
        echo(&cli.command),
        started.elapsed()
    );
    ExitCode::from(code)
}

/// Parameter echo for the stderr timing line.
fn echo(cmd: &Cmd) -> String {
    match cmd {
        Cmd::Jones(a) => format!("jones word={} color={}", a.word, a.color),
        Cmd::Torus(a) => format!("torus m={} n={}", a.m, a.n),
        Cmd::Tail(a) => format!("tail m={} order={}", a.m, a.order),
        Cmd::Verify(a) => format!("verify m={} order={}", a.m, a.order),
        Cmd::Stability(a) => format!("stability m={} nmax={}", a.m, a.nmax),
        Cmd::Pattern(a) => format!("pattern m={} order={}", a.m, a.order),
        Cmd::Oracle(a) => format!("oracle m={} color={} limit={}", a.m, a.color, a.limit),
        Cmd::Cache(a) => format!("cache rebuild={} nmax={}", a.rebuild, a.nmax),
    }
}

fn dispatch(cmd: &Cmd) -> CmdResult {
    match cmd {
        Cmd::Jones(a) => run_jones(a),
        Cmd::Torus(a) => run_torus(a),
        Cmd::Tail(a) => run_tail(a),
        Cmd::Verify(a) => run_verify(a),
        Cmd::Stability(a) => run_stability(a),
        Cmd::Pattern(a) => run_pattern(a),
        Cmd::Oracle(a) => run_oracle(a),
        Cmd::Cache(a) => run_cache(a),
    }
}

fn check_m(m: i64) -> Result<(), Failure> {
    if m < 1 {
        return usage(format!("m={m}: the twist count must be at least 1"));
    }
    Ok(())
}

fn check_order(order: usize) -> Result<(), Failure> {
    if order > ORDER_CAP {
        return usage(format!("order={order} exceeds the hard cap {ORDER_CAP}"));
    }
    Ok(())
}

fn parse_word(raw: &str) -> Result<TwoBridgeWord, Failure> {
    let mut entries = Vec::new();
    for part in raw.split(',') {
        let part = part.trim();
        let a: i64 = match part.parse() {
            Ok(a) => a,
            Err(_) => return usage(format!("word entry {part:?} is not an integer")),
        };
        if a == 0 {
            return usage("word entries must be nonzero");
        }
        entries.push(a);
    }
    TwoBridgeWord::new(entries).map_err(|e| Failure::Usage(e.to_string()))
}

fn run_jones(a: &JonesArgs) -> CmdResult {
    let word = parse_word(&a.word)?;
    if a.color < 0 {
        return usage(format!("color={}: the color must be nonnegative", a.color));
    }
    let inv = match cached_table(a.color) {
        Some(table) => jones_two_bridge_with_table(&word, &table)?,
        None => jones_two_bridge(&word, a.color)?,
    };
    emit_laurent(&inv.value, a.format);
    Ok(0)
}

fn run_torus(a: &TorusArgs) -> CmdResult {
    check_m(a.m)?;
    if a.n < 0 {
        return usage(format!("n={}: the color must be nonnegative", a.n));
    }
    let inv: FramedInvariant = match a.method {
        TorusRoute::Closed => psi_closed_form(a.n, a.m)?,
        TorusRoute::Fulltwist => g_full_twist_form(a.n, a.m)?,
        TorusRoute::Recoupling => {
            let word = TwoBridgeWord::new(vec![a.m]).map_err(|e| Failure::Usage(e.to_string()))?;
            match cached_table(a.n) {
                Some(table) => jones_two_bridge_with_table(&word, &table)?,
                None => jones_two_bridge(&word, a.n)?,
            }
        }
    };
    emit_laurent(&inv.value, a.format);
    Ok(0)
}

fn run_tail(a: &TailArgs) -> CmdResult {
    check_m(a.m)?;
    check_order(a.order)?;
    let tail = match a.method {
        TailRoute::Psi => tail_psi(a.m, a.order),
        TailRoute::G => tail_g(a.m, a.order),
    };
    emit_series(&tail.series, a.format);
    Ok(0)
}

fn run_verify(a: &VerifyArgs) -> CmdResult {
    check_m(a.m)?;
    check_order(a.order)?;
    let report = verify_identity(a.m, a.order);
    match a.format {
        Format::Text => {
            println!("verdict: {}", report.verdict);
            if let Some(mm) = &report.mismatch {
                println!(
                    "first mismatch at degree {}: psi {}, g {}",
                    mm.degree, mm.psi_coeff, mm.g_coeff
                );
            }
        }
        Format::Json => {
            let mismatch = match &report.mismatch {
                None => "null".to_string(),
                Some(mm) => format!(
                    "{{\"degree\":{},\"psi\":\"{}\",\"g\":\"{}\"}}",
                    mm.degree, mm.psi_coeff, mm.g_coeff
                ),
            };
            println!(
                "{{\"m\":{},\"order\":{},\"verdict\":{},\"mismatch\":{}}}",
                report.m, report.order, report.verdict, mismatch
            );
        }
        Format::Csv => return usage("verify has no csv payload; use text or json"),
    }
    Ok(u8::from(!report.verdict))
}

fn run_stability(a: &StabilityArgs) -> CmdResult {
    check_m(a.m)?;
    if a.nmax < 1 {
        return usage(format!("nmax={}: need at least one color step", a.nmax));
    }
    let verdict = stabilization_check(a.m, a.nmax)?;
    match a.format {
        Format::Text => println!("verdict: {verdict}"),
        Format::Json => println!(
            "{{\"m\":{},\"nmax\":{},\"verdict\":{}}}",
            a.m, a.nmax, verdict
        ),
        Format::Csv => return usage("stability has no csv payload; use text or json"),
    }
    Ok(u8::from(!verdict))
}

fn run_pattern(a: &PatternArgs) -> CmdResult {
    check_m(a.m)?;
    check_order(a.order)?;
    let report = pattern_analysis(a.m, a.order);
    match a.format {
        Format::Text => {
            println!("verdict: {}", report.verdict);
            let runs: Vec<String> = report
                .runs
                .iter()
                .map(|(nz, z)| format!("({nz},{z})"))
                .collect();
            println!("runs: {}", runs.join(" "));
        }
        Format::Json => {
            let runs: Vec<String> = report
                .runs
                .iter()
                .map(|(nz, z)| format!("[{nz},{z}]"))
                .collect();
            println!(
                "{{\"m\":{},\"order\":{},\"verdict\":{},\"runs\":[{}]}}",
                report.m,
                report.order,
                report.verdict,
                runs.join(",")
            );
        }
        Format::Csv => return usage("pattern has no csv payload; use text or json"),
    }
    Ok(u8::from(!report.verdict))
}

fn run_oracle(a: &OracleArgs) -> CmdResult {
    let LinkKind::Torus = a.link;
    check_m(a.m)?;
    if a.color < 0 {
        return usage(format!("color={}: the color must be nonnegative", a.color));
    }
    if a.limit < 0 {
        return usage(format!("limit={}: the limit must be nonnegative", a.limit));
    }
    if a.color > a.limit {
        return usage(format!(
            "color={} exceeds the expansion limit {}; raise --limit knowingly",
            a.color, a.limit
        ));
    }
    let value = torus_invariant(a.m, a.color, a.limit)?;
    emit_laurent(&value, a.format);
    Ok(0)
}

// ---------------------------------------------------------------------------
// Payload rendering. The JSON strings are assembled by hand so the key order
// of the documented schema is reproduced byte for byte; all content is
// numerals, so no escaping arises.

fn gcd64(mut a: i64, mut b: i64) -> i64 {
    while b != 0 {
        (a, b) = (b, a.rem_euclid(b));
    }
    a.abs()
}

/// `q^e` for an exponent of e sixths: integer exponents plain, fractional
/// ones as a reduced parenthesized fraction. None for e = 0.
fn power_text(e: i64) -> Option<String> {
    if e == 0 {
        return None;
    }
    Some(if e % 6 == 0 {
        let k = e / 6;
        if k == 1 {
            "q".to_string()
        } else {
            format!("q^{k}")
        }
    } else {
        let g = gcd64(e, 6);
        format!("q^({}/{})", e / g, 6 / g)
    })
}

fn laurent_text(p: &SixthPowerLaurent) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let one = num_bigint::BigUint::from(1u32);
    let mut out = String::new();
    for (i, (e, c)) in p.iter_terms().enumerate() {
        let neg = c.sign() == Sign::Minus;
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        match power_text(e) {
            Some(pow) => {
                if *c.magnitude() != one {
                    let _ = write!(out, "{}", c.magnitude());
                }
                out.push_str(&pow);
            }
            None => {
                let _ = write!(out, "{}", c.magnitude());
            }
        }
    }
    out
}

fn laurent_json(p: &SixthPowerLaurent) -> String {
    let terms: Vec<String> = p
        .iter_terms()
        .map(|(e, c)| format!("[{e},\"{c}\"]"))
        .collect();
    format!(
        "{{\"variable\":\"q\",\"exponent_denominator\":6,\"terms\":[{}]}}",
        terms.join(",")
    )
}

fn laurent_csv(p: &SixthPowerLaurent) -> String {
    let mut out = String::from("exponent_sixths,coefficient\n");
    for (e, c) in p.iter_terms() {
        let _ = writeln!(out, "{e},{c}");
    }
    out
}

fn emit_laurent(p: &SixthPowerLaurent, format: Format) {
    match format {
        Format::Text => println!("{}", laurent_text(p)),
        Format::Json => println!("{}", laurent_json(p)),
        Format::Csv => print!("{}", laurent_csv(p)),
    }
}

fn emit_series(s: &TruncatedSeries, format: Format) {
    match format {
        // A series prints like the polynomial of its nonzero terms.
        Format::Text => println!("{}", laurent_text(&s.to_laurent())),
        Format::Json => println!("{}", laurent_json(&s.to_laurent())),
        Format::Csv => {
            let mut out = String::from("degree,coefficient\n");
            for (k, c) in s.coeffs().iter().enumerate() {
                let _ = writeln!(out, "{k},{c}");
            }
            print!("{out}");
        }
    }
}

// ---------------------------------------------------------------------------
// Recoupling-table cache. JSON with decimal-string coefficients:
// {"format":…,"tables":{"n":[[{"num":[[exp,"coeff"],…],"den":[…]},…],…]}}.
// Loads are validated by recomputing one randomly chosen entry per table, so
// a corrupt file fails loudly instead of poisoning results.

fn terms_json(p: &SixthPowerLaurent) -> serde_json::Value {
    serde_json::Value::Array(
        p.iter_terms()
            .map(|(e, c)| serde_json::json!([e, c.to_string()]))
            .collect(),
    )
}

fn rational_json(r: &RationalQ) -> serde_json::Value {
    serde_json::json!({
        "num": terms_json(r.numerator()),
        "den": terms_json(r.denominator()),
    })
}

fn parse_terms(v: &serde_json::Value) -> anyhow::Result<SixthPowerLaurent> {
    let arr = v.as_array().context("term list must be an array")?;
    let mut terms = Vec::with_capacity(arr.len());
    for t in arr {
        let pair = t.as_array().filter(|p| p.len() == 2).context("term must be [exp, coeff]")?;
        let e = pair[0].as_i64().context("exponent must be an integer")?;
        let c = pair[1].as_str().context("coefficient must be a string")?;
        terms.push((e, BigInt::from_str(c).context("bad coefficient digits")?));
    }
    Ok(SixthPowerLaurent::from_terms(terms))
}

fn parse_rational(v: &serde_json::Value) -> anyhow::Result<RationalQ> {
    let num = parse_terms(v.get("num").context("missing num")?)?;
    let den = parse_terms(v.get("den").context("missing den")?)?;
    RationalQ::new(num, den).map_err(|e| anyhow!("bad rational: {e}"))
}

fn cache_to_json(tables: &[SixJTable]) -> serde_json::Value {
    let mut map = serde_json::Map::new();
    for t in tables {
        let matrix: Vec<serde_json::Value> = t
            .rows()
            .iter()
            .map(|row| serde_json::Value::Array(row.iter().map(rational_json).collect()))
            .collect();
        map.insert(t.color().to_string(), serde_json::Value::Array(matrix));
    }
    serde_json::json!({ "format": CACHE_FORMAT, "tables": map })
}

fn cache_from_json(text: &str) -> anyhow::Result<Vec<SixJTable>> {
    let root: serde_json::Value = serde_json::from_str(text).context("cache is not valid JSON")?;
    if root.get("format").and_then(|f| f.as_str()) != Some(CACHE_FORMAT) {
        return Err(anyhow!("cache format tag is not {CACHE_FORMAT:?}"));
    }
    let tables = root
        .get("tables")
        .and_then(|t| t.as_object())
        .context("cache has no tables object")?;
    let mut out = Vec::new();
    for (key, matrix) in tables {
        let n: i64 = key.parse().context("table key must be a color")?;
        let rows = matrix.as_array().context("table must be an array of rows")?;
        let mut entries = Vec::with_capacity(rows.len());
        for row in rows {
            let row = row.as_array().context("row must be an array")?;
            entries.push(row.iter().map(parse_rational).collect::<Result<Vec<_>, _>>()?);
        }
        out.push(SixJTable::from_entries(n, entries).map_err(|e| anyhow!("table {n}: {e}"))?);
    }
    out.sort_by_key(|t| t.color());
    Ok(out)
}

/// Recompute one random entry; a mismatch means the file does not hold the
/// recoupling table it claims to.
fn validate_table(table: &SixJTable) -> anyhow::Result<()> {
    let n = table.color();
    let mut rng = rand::thread_rng();
    let i = rng.gen_range(0..=n);
    let j = rng.gen_range(0..=n);
    if sixj(n, i, j) != *table.entry(i, j) {
        return Err(anyhow!("cached table for color {n} fails spot check at ({i},{j})"));
    }
    Ok(())
}

/// Load a validated table for the given color from the cache named by the
/// environment, if one is there. Any problem falls back to recomputation
/// with a note on stderr; a cache must never change results.
fn cached_table(n: i64) -> Option<SixJTable> {
    let path = env::var_os(CACHE_ENV)?;
    let path = Path::new(&path);
    let attempt = || -> anyhow::Result<SixJTable> {
        let text = fs::read_to_string(path)
            .with_context(|| format!("reading cache {}", path.display()))?;
        let tables = cache_from_json(&text)?;
        let table = tables
            .into_iter()
            .find(|t| t.color() == n)
            .ok_or_else(|| anyhow!("cache has no table for color {n}"))?;
        validate_table(&table)?;
        Ok(table)
    };
    match attempt() {
        Ok(table) => Some(table),
        Err(err) => {
            eprintln!("a2skein: ignoring cache: {err:#}");
            None
        }
    }
}

fn run_cache(a: &CacheArgs) -> CmdResult {
    let path = match &a.path {
        Some(p) => p.clone(),
        None => match env::var_os(CACHE_ENV) {
            Some(p) => PathBuf::from(p),
            None => return usage(format!("cache path required: --path or ${CACHE_ENV}")),
        },
    };
    if a.nmax < 0 {
        return usage(format!("nmax={}: need a nonnegative color", a.nmax));
    }
    if a.rebuild {
        let tables: Vec<SixJTable> = (0..=a.nmax).map(SixJTable::build).collect();
        let text = serde_json::to_string(&cache_to_json(&tables))
            .map_err(|e| Failure::Internal(anyhow!(e)))?;
        fs::write(&path, text)
            .with_context(|| format!("writing cache {}", path.display()))
            .map_err(Failure::Internal)?;
        println!("wrote tables for colors 0..={} to {}", a.nmax, path.display());
    } else {
        let text = fs::read_to_string(&path)
            .with_context(|| format!("reading cache {}", path.display()))
            .map_err(Failure::Internal)?;
        let tables = cache_from_json(&text).map_err(Failure::Internal)?;
        for table in &tables {
            validate_table(table).map_err(Failure::Internal)?;
        }
        let colors: Vec<String> = tables.iter().map(|t| t.color().to_string()).collect();
        println!("cache valid: tables for colors {}", colors.join(", "));
    }
    Ok(0)
}
