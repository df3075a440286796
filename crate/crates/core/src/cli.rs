//! Command-line front end.
//!
//! Exit codes: 0 for pass/success verdicts, 1 for fail/obstructed verdicts,
//! 2 for usage, input and budget errors. Every verdict is also written in
//! the report body.

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::{BigInt, BigUint};

use crate::congruence::{self, CongruenceReport, IdentityId, SweepBounds};
use crate::explore::{self, join_seed, ObstructionStatus};
use crate::realizability::{
    build_witness, check_exact_realizability, cycle_counts, fixed_point_counts, SequencePrefix,
};
use crate::recurrence::{fib_like_prefix, kbonacci_prefix, lucas_prefix, FibPair, KStepSeed};
use crate::sft::{self, ZeroOneMatrix};
use crate::Error;

#[derive(Debug, Parser)]
#[command(
    name = "lucas-realize",
    version,
    about = "Exact realizability of periodic-point sequences, subshift counts and Lucas congruences"
)]
pub struct Cli {
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Table)]
    pub output: OutputFormat,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Table,
    Csv,
    JsonLines,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check exact realizability of a sequence prefix.
    Check(SequenceArgs),
    /// Build a witness permutation and recount its periodic points.
    Witness(WitnessArgs),
    /// Count periodic points of a subshift of finite type.
    Sft(SftArgs),
    /// Sweep the Lucas/Fibonacci congruences.
    Congruence(CongruenceArgs),
    /// Run the obstruction argument on a single Fibonacci-type seed.
    Obstruct(ObstructArgs),
    /// Scan a grid of Fibonacci-type seeds (a, b).
    Scan(ScanArgs),
    /// Scan k-bonacci seeds for survivors of the criterion.
    Kscan(KscanArgs),
}

#[derive(Debug, Args)]
#[group(id = "source", required = true, multiple = false)]
pub struct SourceArgs {
    /// The Lucas numbers 1, 3, 4, 7, ...
    #[arg(long, group = "source")]
    pub lucas: bool,
    /// Fibonacci-type seed `a,b`.
    #[arg(long, value_name = "A,B", group = "source")]
    pub fib_seed: Option<String>,
    /// Order-k all-ones recurrence `k,a_1,...,a_k`.
    #[arg(long, value_name = "K,A1,..,AK", group = "source")]
    pub kbonacci: Option<String>,
    /// Sequence file: one nonnegative integer per line.
    #[arg(long, value_name = "PATH", group = "source")]
    pub file: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SequenceArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    /// Prefix length (default 50 for builtin sequences, whole file otherwise).
    #[arg(long)]
    pub max_n: Option<usize>,
}

#[derive(Debug, Args)]
pub struct WitnessArgs {
    #[command(flatten)]
    pub sequence: SequenceArgs,
    /// Print the cycles of the witness permutation.
    #[arg(long)]
    pub show_cycles: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SftAction {
    /// trace(A^n)
    Count,
    /// Brute-force count of cyclic admissible words
    Enumerate,
    /// Period and least-period counts for n = 1..max-n
    Table,
}

#[derive(Debug, Args)]
#[group(id = "matrix_source", required = true, multiple = false)]
pub struct MatrixSource {
    /// Matrix file.
    #[arg(long, value_name = "PATH", group = "matrix_source")]
    pub matrix: Option<PathBuf>,
    /// The golden-mean matrix [[1,1],[1,0]].
    #[arg(long, group = "matrix_source")]
    pub golden: bool,
    /// The k-step matrix.
    #[arg(long, value_name = "K", group = "matrix_source")]
    pub kstep: Option<usize>,
}

#[derive(Debug, Args)]
pub struct SftArgs {
    #[arg(value_enum)]
    pub action: SftAction,
    #[command(flatten)]
    pub matrix: MatrixSource,
    /// Period for count/enumerate.
    #[arg(long)]
    pub n: Option<u64>,
    /// Largest period for table.
    #[arg(long, default_value_t = 20)]
    pub max_n: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum IdentityArg {
    All,
    Corollary,
    A,
    B,
    C,
    D,
    Lemma31,
    RemarkB,
}

#[derive(Debug, Args)]
pub struct CongruenceArgs {
    #[arg(long, value_enum, default_value_t = IdentityArg::All)]
    pub identity: IdentityArg,
    /// Largest n for the Möbius-sum corollary.
    #[arg(long, default_value_t = 2000)]
    pub max_n: usize,
    /// Largest prime for the prime-indexed identities.
    #[arg(long, default_value_t = 100_000)]
    pub max_prime: u64,
    /// Largest modulus p^k for the prime-power identity.
    #[arg(long, default_value_t = 1_000_000)]
    pub max_prime_power: u64,
    /// Largest modulus pq for the product identity.
    #[arg(long, default_value_t = 100_000)]
    pub max_product: u64,
    /// Print only the aggregate summary and any failing records.
    #[arg(long)]
    pub summary_only: bool,
}

#[derive(Debug, Args)]
pub struct ObstructArgs {
    #[arg(long, value_name = "A,B")]
    pub fib_seed: String,
    #[arg(long, default_value_t = explore::DEFAULT_HORIZON)]
    pub horizon: usize,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    #[arg(long, default_value_t = 10)]
    pub a_max: u64,
    #[arg(long, default_value_t = 30)]
    pub b_max: u64,
    #[arg(long, default_value_t = explore::DEFAULT_HORIZON)]
    pub horizon: usize,
    /// Write the survivor set to this file.
    #[arg(long, value_name = "PATH")]
    pub fixture: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct KscanArgs {
    #[arg(long, default_value_t = 3)]
    pub k: usize,
    #[arg(long, default_value_t = 7)]
    pub bound: u64,
    #[arg(long, default_value_t = explore::DEFAULT_HORIZON)]
    pub horizon: usize,
    /// Write the survivor set to this file.
    #[arg(long, value_name = "PATH")]
    pub fixture: Option<PathBuf>,
}

/// Failures that end a run with exit code 2.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Read {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("cannot write {path}: {source}")]
    Write {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("malformed {kind} file {path}: {source}")]
    Malformed {
        kind: &'static str,
        path: PathBuf,
        source: Error,
    },
    #[error("invalid argument: {0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] Error),
    #[error("output error: {0}")]
    Output(String),
}

#[derive(Debug, Clone, PartialEq)]
enum Cell {
    Int(String),
    Text(String),
    Bool(bool),
    Empty,
}

impl Cell {
    fn int(x: impl ToString) -> Cell {
        Cell::Int(x.to_string())
    }

    fn text(x: impl Into<String>) -> Cell {
        Cell::Text(x.into())
    }

    fn opt_int<T: ToString>(x: Option<T>) -> Cell {
        x.map_or(Cell::Empty, Cell::int)
    }

    fn render(&self) -> String {
        match self {
            Cell::Int(s) | Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
            Cell::Empty => String::new(),
        }
    }

    fn json(&self) -> serde_json::Value {
        use serde_json::Value;
        match self {
            Cell::Int(s) => s
                .parse::<serde_json::Number>()
                .map(Value::Number)
                .unwrap_or_else(|_| Value::String(s.clone())),
            Cell::Text(s) => Value::String(s.clone()),
            Cell::Bool(b) => Value::Bool(*b),
            Cell::Empty => Value::Null,
        }
    }
}

/// Records plus an aggregate summary, rendered in any output format.
struct Report {
    columns: Vec<&'static str>,
    rows: Vec<Vec<Cell>>,
    summary: Vec<(&'static str, Cell)>,
}

impl Report {
    fn new(columns: Vec<&'static str>) -> Self {
        Report {
            columns,
            rows: Vec::new(),
            summary: Vec::new(),
        }
    }

    fn row(&mut self, cells: Vec<Cell>) {
        debug_assert_eq!(cells.len(), self.columns.len());
        self.rows.push(cells);
    }

    fn summary(&mut self, key: &'static str, value: Cell) {
        self.summary.push((key, value));
    }

    fn render(&self, format: OutputFormat) -> Result<String, CliError> {
        match format {
            OutputFormat::Table => Ok(self.render_table()),
            OutputFormat::Csv => self.render_csv(),
            OutputFormat::JsonLines => self.render_json_lines(),
        }
    }

    fn render_table(&self) -> String {
        let mut out = String::new();
        if !self.columns.is_empty() {
            let rendered: Vec<Vec<String>> = self
                .rows
                .iter()
                .map(|r| r.iter().map(Cell::render).collect())
                .collect();
            let widths: Vec<usize> = (0..self.columns.len())
                .map(|i| {
                    rendered
                        .iter()
                        .map(|r| r[i].len())
                        .chain([self.columns[i].len()])
                        .max()
                        .unwrap_or(0)
                })
                .collect();
            let line = |cells: Vec<&str>| -> String {
                let padded: Vec<String> = cells
                    .iter()
                    .zip(&widths)
                    .map(|(c, w)| format!("{c:<w$}"))
                    .collect();
                padded.join("  ").trim_end().to_string()
            };
            out.push_str(&line(self.columns.clone()));
            out.push('\n');
            for r in &rendered {
                out.push_str(&line(r.iter().map(String::as_str).collect()));
                out.push('\n');
            }
            if !self.summary.is_empty() {
                out.push('\n');
            }
        }
        for (k, v) in &self.summary {
            let _ = writeln!(out, "{k}: {}", v.render());
        }
        out
    }

    fn render_csv(&self) -> Result<String, CliError> {
        let mut writer = csv::Writer::from_writer(Vec::new());
        let out_err = |e: csv::Error| CliError::Output(e.to_string());
        if !self.columns.is_empty() {
            writer.write_record(&self.columns).map_err(out_err)?;
            for r in &self.rows {
                writer
                    .write_record(r.iter().map(Cell::render))
                    .map_err(out_err)?;
            }
        }
        let bytes = writer
            .into_inner()
            .map_err(|e| CliError::Output(e.to_string()))?;
        let mut out = String::from_utf8(bytes).map_err(|e| CliError::Output(e.to_string()))?;
        for (k, v) in &self.summary {
            let _ = writeln!(out, "# {k}={}", v.render());
        }
        Ok(out)
    }

    fn render_json_lines(&self) -> Result<String, CliError> {
        let mut out = String::new();
        for r in &self.rows {
            let obj: serde_json::Map<String, serde_json::Value> = self
                .columns
                .iter()
                .zip(r)
                .map(|(c, v)| (c.to_string(), v.json()))
                .collect();
            out.push_str(
                &serde_json::to_string(&obj).map_err(|e| CliError::Output(e.to_string()))?,
            );
            out.push('\n');
        }
        if !self.summary.is_empty() {
            let obj: serde_json::Map<String, serde_json::Value> = self
                .summary
                .iter()
                .map(|(k, v)| (k.to_string(), v.json()))
                .collect();
            let wrapped = serde_json::json!({ "summary": obj });
            out.push_str(&wrapped.to_string());
            out.push('\n');
        }
        Ok(out)
    }
}

fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.to_path_buf(),
        source,
    })
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|source| CliError::Write {
        path: path.to_path_buf(),
        source,
    })
}

fn parse_list(text: &str, what: &str) -> Result<Vec<u64>, CliError> {
    text.split(',')
        .map(|t| {
            t.trim()
                .parse::<u64>()
                .map_err(|_| CliError::Usage(format!("{what}: {t:?} is not a nonnegative integer")))
        })
        .collect()
}

fn parse_fib_seed(text: &str) -> Result<FibPair, CliError> {
    match parse_list(text, "--fib-seed")?[..] {
        [a, b] => Ok(FibPair::new(a, b)?),
        _ => Err(CliError::Usage(format!(
            "--fib-seed expects a,b, got {text:?}"
        ))),
    }
}

fn parse_kbonacci(text: &str) -> Result<KStepSeed, CliError> {
    let list = parse_list(text, "--kbonacci")?;
    let (&k, initial) = list
        .split_first()
        .ok_or_else(|| CliError::Usage("--kbonacci needs k,a_1,...,a_k".into()))?;
    if initial.len() as u64 != k {
        return Err(CliError::Usage(format!(
            "--kbonacci declares k={k} but lists {} seed values",
            initial.len()
        )));
    }
    Ok(KStepSeed::new(initial.to_vec())?)
}

fn positive(value: usize, flag: &str) -> Result<usize, CliError> {
    if value == 0 {
        return Err(CliError::Usage(format!("{flag} must be positive")));
    }
    Ok(value)
}

/// Resolves the sequence source into a label and a prefix.
fn load_sequence(args: &SequenceArgs) -> Result<(String, SequencePrefix), CliError> {
    let builtin_len = positive(args.max_n.unwrap_or(50), "--max-n")?;
    let src = &args.source;
    if src.lucas {
        return Ok(("lucas".into(), lucas_prefix(builtin_len)?));
    }
    if let Some(text) = &src.fib_seed {
        let seed = parse_fib_seed(text)?;
        return Ok((
            format!("fib-seed {},{}", seed.a(), seed.b()),
            fib_like_prefix(seed, builtin_len)?,
        ));
    }
    if let Some(text) = &src.kbonacci {
        let seed = parse_kbonacci(text)?;
        return Ok((
            format!("kbonacci {},{}", seed.k(), join_seed(seed.initial())),
            kbonacci_prefix(&seed, builtin_len)?,
        ));
    }
    let path = src
        .file
        .as_ref()
        .ok_or_else(|| CliError::Usage("no sequence source given".into()))?;
    let prefix: SequencePrefix =
        read_file(path)?
            .parse()
            .map_err(|source| CliError::Malformed {
                kind: "sequence",
                path: path.clone(),
                source,
            })?;
    let prefix = match args.max_n {
        Some(n) if n < prefix.len() => prefix.truncated(positive(n, "--max-n")?)?,
        Some(n) if n > prefix.len() => {
            return Err(CliError::Usage(format!(
                "--max-n {n} exceeds the {} values in {}",
                prefix.len(),
                path.display()
            )))
        }
        _ => prefix,
    };
    Ok((format!("file {}", path.display()), prefix))
}

fn load_matrix(src: &MatrixSource) -> Result<(String, ZeroOneMatrix), CliError> {
    if src.golden {
        return Ok(("golden".into(), sft::golden_mean_matrix()));
    }
    if let Some(k) = src.kstep {
        return Ok((format!("kstep {k}"), sft::kstep_matrix(k)?));
    }
    let path = src
        .matrix
        .as_ref()
        .ok_or_else(|| CliError::Usage("no matrix source given".into()))?;
    let matrix = read_file(path)?
        .parse()
        .map_err(|source| CliError::Malformed {
            kind: "matrix",
            path: path.clone(),
            source,
        })?;
    Ok((format!("file {}", path.display()), matrix))
}

fn verdict_code(pass: bool) -> i32 {
    if pass {
        0
    } else {
        1
    }
}

fn run_check(args: &SequenceArgs) -> Result<(Report, i32), CliError> {
    let (label, prefix) = load_sequence(args)?;
    let report = check_exact_realizability(&prefix);
    let mut out = Report::new(vec![
        "sequence",
        "checked_up_to",
        "verdict",
        "first_failure_n",
        "failure_kind",
        "failure_value",
    ]);
    out.row(vec![
        Cell::text(label),
        Cell::int(report.checked_up_to),
        Cell::text(report.verdict().as_str()),
        Cell::opt_int(report.first_failure_n()),
        report
            .failure_kind()
            .map_or(Cell::Empty, |k| Cell::text(k.as_str())),
        Cell::opt_int(report.failure_value()),
    ]);
    Ok((out, verdict_code(report.passed())))
}

fn run_witness(args: &WitnessArgs) -> Result<(Report, i32), CliError> {
    let (label, prefix) = load_sequence(&args.sequence)?;
    let spec = match cycle_counts(&prefix) {
        Ok(spec) => spec,
        Err(Error::NotRealizable(report)) => {
            let mut out = Report::new(vec![]);
            out.summary("sequence", Cell::text(label));
            out.summary("verdict", Cell::text("not_realizable"));
            out.summary("detail", Cell::text(report.to_string()));
            return Ok((out, 1));
        }
        Err(e) => return Err(e.into()),
    };
    let witness = build_witness(&spec)?;
    let fixed = fixed_point_counts(&witness, prefix.len());
    let mut out = Report::new(vec!["n", "u_n", "cycles_n", "fixed_points_of_power"]);
    let mut verified = true;
    for (i, (u, c)) in prefix.values().iter().zip(spec.counts()).enumerate() {
        verified &= BigUint::from(fixed[i]) == *u;
        out.row(vec![
            Cell::int(i + 1),
            Cell::int(u),
            Cell::int(c),
            Cell::int(fixed[i]),
        ]);
    }
    out.summary("sequence", Cell::text(label));
    out.summary("domain_size", Cell::int(witness.domain_size()));
    if args.show_cycles {
        let cycles: Vec<String> = witness
            .cycles()
            .iter()
            .map(|c| {
                format!(
                    "({})",
                    c.iter().map(u32::to_string).collect::<Vec<_>>().join(" ")
                )
            })
            .collect();
        out.summary("cycles", Cell::text(cycles.join("")));
    }
    out.summary(
        "verdict",
        Cell::text(if verified { "verified" } else { "mismatch" }),
    );
    Ok((out, verdict_code(verified)))
}

fn run_sft(args: &SftArgs) -> Result<(Report, i32), CliError> {
    let (label, matrix) = load_matrix(&args.matrix)?;
    let mut out;
    match args.action {
        SftAction::Count | SftAction::Enumerate => {
            let n = args.n.ok_or_else(|| {
                CliError::Usage(format!("sft {:?} needs --n", args.action).to_lowercase())
            })?;
            let count = if args.action == SftAction::Count {
                sft::trace_power(&matrix, n)?
            } else {
                BigUint::from(sft::enumerate_periodic_points(&matrix, n)?)
            };
            out = Report::new(vec!["matrix", "n", "periodic_points"]);
            out.row(vec![Cell::text(label), Cell::int(n), Cell::int(count)]);
        }
        SftAction::Table => {
            let len = positive(args.max_n, "--max-n")?;
            let traces = sft::trace_prefix(&matrix, len)?;
            let least = sft::least_period_counts(&matrix, len)?;
            out = Report::new(vec![
                "n",
                "periodic_points",
                "least_period_points",
                "orbits",
            ]);
            for (i, (t, l)) in traces.values().iter().zip(&least).enumerate() {
                out.row(vec![
                    Cell::int(i + 1),
                    Cell::int(t),
                    Cell::int(l),
                    Cell::int(l / (i + 1)),
                ]);
            }
            out.summary("matrix", Cell::text(label));
        }
    }
    Ok((out, 0))
}

fn congruence_row(r: &CongruenceReport) -> Vec<Cell> {
    vec![
        Cell::text(r.identity.as_str()),
        Cell::text(r.context.to_string()),
        Cell::int(r.modulus),
        Cell::int(r.lhs),
        Cell::int(r.rhs),
        Cell::Bool(r.holds),
    ]
}

fn run_congruence(args: &CongruenceArgs) -> Result<(Report, i32), CliError> {
    let bounds = SweepBounds {
        max_n: positive(args.max_n, "--max-n")?,
        max_prime: args.max_prime,
        max_prime_power: args.max_prime_power,
        max_product: args.max_product,
    };
    let reports = match args.identity {
        IdentityArg::All => congruence::sweep_all(&bounds)?,
        IdentityArg::Corollary => congruence::sweep(IdentityId::Corollary, &bounds)?,
        IdentityArg::A => congruence::sweep(IdentityId::A, &bounds)?,
        IdentityArg::B => congruence::sweep(IdentityId::BEquiv, &bounds)?,
        IdentityArg::C => congruence::sweep(IdentityId::CPrimePower, &bounds)?,
        IdentityArg::D => congruence::sweep(IdentityId::DProduct, &bounds)?,
        IdentityArg::Lemma31 => congruence::sweep(IdentityId::Lemma31, &bounds)?,
        IdentityArg::RemarkB => {
            let mut both = congruence::sweep_remark_b(bounds.max_prime)?;
            both.sort_by_key(|r| r.identity);
            both
        }
    };
    let mut out = Report::new(vec![
        "identity_id",
        "context",
        "modulus",
        "lhs",
        "rhs",
        "holds",
    ]);
    for r in &reports {
        if !args.summary_only || !r.holds {
            out.row(congruence_row(r));
        }
    }
    let failures = reports.iter().filter(|r| !r.holds).count();
    for id in IdentityId::ALL {
        let checked = reports.iter().filter(|r| r.identity == id).count();
        if checked > 0 {
            out.summary(id.as_str(), Cell::int(checked));
        }
    }
    out.summary("checked", Cell::int(reports.len()));
    out.summary("failures", Cell::int(failures));
    out.summary(
        "verdict",
        Cell::text(if failures == 0 { "pass" } else { "fail" }),
    );
    Ok((out, verdict_code(failures == 0)))
}

const OBSTRUCTION_COLUMNS: [&str; 8] = [
    "a",
    "b",
    "horizon",
    "status",
    "first_failure_n",
    "failure_kind",
    "failure_value",
    "obstructing_prime",
];

fn obstruction_row(r: &explore::ObstructionResult) -> Vec<Cell> {
    vec![
        Cell::int(r.seed.a()),
        Cell::int(r.seed.b()),
        Cell::int(r.horizon),
        Cell::text(r.status.as_str()),
        Cell::opt_int(r.first_failure_n()),
        r.report
            .failure_kind()
            .map_or(Cell::Empty, |k| Cell::text(k.as_str())),
        Cell::opt_int(r.report.failure_value().map(BigInt::to_string)),
        Cell::opt_int(r.obstructing_prime),
    ]
}

fn run_obstruct(args: &ObstructArgs) -> Result<(Report, i32), CliError> {
    let seed = parse_fib_seed(&args.fib_seed)?;
    let result = explore::obstruct(seed, positive(args.horizon, "--horizon")?)?;
    let mut out = Report::new(OBSTRUCTION_COLUMNS.to_vec());
    out.row(obstruction_row(&result));
    Ok((
        out,
        verdict_code(result.status == ObstructionStatus::RealizablePrefix),
    ))
}

fn run_scan(args: &ScanArgs) -> Result<(Report, i32), CliError> {
    let grid = explore::scan_theorem(args.a_max, args.b_max, positive(args.horizon, "--horizon")?)?;
    let mut out = Report::new(OBSTRUCTION_COLUMNS.to_vec());
    let mut survivors = Vec::new();
    let mut off_line = 0usize;
    for r in &grid {
        out.row(obstruction_row(r));
        let on_line = r.seed.b() == 3 * r.seed.a();
        let survived = r.status == ObstructionStatus::RealizablePrefix;
        if survived {
            survivors.push((r.seed.a(), r.seed.b()));
        }
        if survived != on_line {
            off_line += 1;
        }
    }
    if let Some(path) = &args.fixture {
        let mut text = format!(
            "# scan a_max={} b_max={} horizon={}\n",
            args.a_max, args.b_max, args.horizon
        );
        for (a, b) in &survivors {
            let _ = writeln!(text, "{a},{b}");
        }
        write_file(path, &text)?;
    }
    let list: Vec<String> = survivors
        .iter()
        .map(|(a, b)| format!("({a},{b})"))
        .collect();
    out.summary("cells", Cell::int(grid.len()));
    out.summary("survivors", Cell::text(list.join(" ")));
    out.summary("cells_off_b_eq_3a_pattern", Cell::int(off_line));
    out.summary(
        "verdict",
        Cell::text(if off_line == 0 { "pass" } else { "fail" }),
    );
    Ok((out, verdict_code(off_line == 0)))
}

fn run_kscan(args: &KscanArgs) -> Result<(Report, i32), CliError> {
    let result = explore::kbonacci_scan(args.k, args.bound, positive(args.horizon, "--horizon")?)?;
    if let Some(path) = &args.fixture {
        write_file(path, &result.fixture_text())?;
    }
    let base = explore::kbonacci_realizable_seed(args.k)?;
    let mut out = Report::new(vec!["seed", "multiple_of_mersenne_seed"]);
    for s in &result.survivors {
        let multiple = scalar_multiple(s.initial(), base.initial()).is_some();
        out.row(vec![
            Cell::text(join_seed(s.initial())),
            Cell::Bool(multiple),
        ]);
    }
    out.summary("k", Cell::int(result.k));
    out.summary("bound", Cell::int(result.bound));
    out.summary("horizon", Cell::int(result.horizon));
    out.summary("survivors", Cell::int(result.survivors.len()));
    out.summary("note", Cell::text("empirical evidence only"));
    Ok((out, 0))
}

/// `Some(c)` when `values = c * base` termwise.
pub fn scalar_multiple(values: &[u64], base: &[u64]) -> Option<u64> {
    if values.len() != base.len() || base.is_empty() || !values[0].is_multiple_of(base[0]) {
        return None;
    }
    let c = values[0] / base[0];
    values
        .iter()
        .zip(base)
        .all(|(v, b)| b.checked_mul(c) == Some(*v))
        .then_some(c)
}

fn execute(cli: &Cli) -> Result<(Report, i32), CliError> {
    match &cli.command {
        Command::Check(a) => run_check(a),
        Command::Witness(a) => run_witness(a),
        Command::Sft(a) => run_sft(a),
        Command::Congruence(a) => run_congruence(a),
        Command::Obstruct(a) => run_obstruct(a),
        Command::Scan(a) => run_scan(a),
        Command::Kscan(a) => run_kscan(a),
    }
}

/// Parses `args` (including the program name), runs, and writes the report
/// to `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let sink: &mut dyn Write = if code == 0 { out } else { err };
            let _ = sink.write_all(text.as_bytes());
            return code;
        }
    };
    let result = execute(&cli).and_then(|(report, code)| Ok((report.render(cli.output)?, code)));
    match result {
        Ok((text, code)) => match out.write_all(text.as_bytes()) {
            Ok(()) => code,
            Err(e) => {
                let _ = writeln!(err, "error: cannot write report: {e}");
                2
            }
        },
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

pub fn main_entry() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}
