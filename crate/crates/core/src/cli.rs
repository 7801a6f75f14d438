//! Command-line front end.
//!
//! Exit codes: `0` success, `1` a check failed, `2` usage, parse or guard
//! error, `3` retries or pool exhausted.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::algebra::{Instance, RealSet};
use crate::error::Error;
use crate::exec::{init_threads, Exec};
use crate::families::Family;
use crate::oracle::{anticoncentration_estimate, spectrum_bruteforce, SpectrumResult};
use crate::pools::{
    pool_construct, rect_area_set, two_area_set, two_area_warmup, TWO_AREA_PAIR_CAP,
};
use crate::scalar::{parse_list, Scalar};
use crate::sumset::{
    additive_energy, is_dissociated, subset_sum_count, supportive_halasz_lower_bound, EnergyReport,
    IncrementSet,
};
use crate::witness::{run_witness, verify_certificate, Mode, RunConfig, WitnessCertificate};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_EXHAUSTED: i32 = 3;

/// Environment variable capping the worker count (`0` = automatic).
pub const THREADS_ENV: &str = "PERMDOT_THREADS";

#[derive(Debug, Parser)]
#[command(
    name = "permdot",
    version,
    about = "Exact spectra, sumset bounds and witness certificates for permutation dot products",
    after_help = "Rationals are read as p, p/q or finite decimals and always written as p/q.\n\
                  Set PERMDOT_THREADS to cap the worker count (0 = automatic)."
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Enumerate Σ(A,B) over all permutations.
    ///
    /// CSV columns with --range: n,size,min,max.
    Spectrum(SpectrumArgs),
    /// Build and verify a witness certificate.
    Witness(WitnessArgs),
    /// Re-run every check of a stored certificate.
    Verify(VerifyArgs),
    /// Additive energy, subset-sum count and block bound of a set D.
    Energy(EnergyArgs),
    /// The two-area pool U(A,B) with one representation per value.
    Pool(PoolArgs),
    /// The rectangular area set (A−A)(B−B).
    ///
    /// CSV columns: value.
    Areas(AreasArgs),
    /// Largest atom of S(π) for a uniform permutation.
    ///
    /// CSV columns: n,samples,max_atom_frequency,estimate,exact.
    Anticonc(AnticoncArgs),
    /// Scaling sweep over a builtin family.
    ///
    /// CSV columns: n,rect_area_size,two_area_pool_size,pool_lower_bound,m,
    /// energy2,sigma_d_size,sigma_over_n3,checks. Cells that could not be
    /// computed are left empty.
    Scale(ScaleArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Write here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
}

/// Exactly one of: --a/--b, --file, or a builtin family with --n.
#[derive(Debug, Clone, Args)]
pub struct InstanceArgs {
    /// Comma-separated elements of A.
    #[arg(long, allow_hyphen_values = true, conflicts_with_all = ["file", "family"])]
    pub a: Option<String>,
    /// Comma-separated elements of B; defaults to A.
    #[arg(long, allow_hyphen_values = true, requires = "a")]
    pub b: Option<String>,
    /// JSON file with fields "a" and "b".
    #[arg(long, conflicts_with_all = ["family", "n"])]
    pub file: Option<PathBuf>,
    /// Builtin family: interval, geometric, sidon, random-rational.
    #[arg(long)]
    pub family: Option<Family>,
    #[arg(long)]
    pub n: Option<usize>,
    /// Seed for random families and randomized commands.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Clone, Args)]
pub struct SpectrumArgs {
    #[command(flatten)]
    pub instance: InstanceArgs,
    /// Sweep n over `lo..hi` (inclusive) or a comma list; needs a family.
    #[arg(long)]
    pub range: Option<String>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct RunArgs {
    #[arg(long, default_value = "cubic")]
    pub mode: Mode,
    /// Pool-size constant c0 in R = c0 n²/ln n.
    #[arg(long)]
    pub c0: Option<Scalar>,
    /// Switch-count constant c in m = c √R (lossy mode).
    #[arg(long)]
    pub lossy_c: Option<Scalar>,
    /// Accept when E_2(D) ≤ slack · m².
    #[arg(long)]
    pub energy_slack: Option<Scalar>,
    #[arg(long)]
    pub max_retries: Option<usize>,
    /// Random subsets checked when m is too large for all 2^m.
    #[arg(long)]
    pub verify_samples: Option<usize>,
    /// Override m = ⌊n/32⌋ in cubic mode.
    #[arg(long)]
    pub switches: Option<usize>,
}

impl RunArgs {
    pub fn config(&self, n: usize, seed: u64) -> RunConfig {
        let mut c = RunConfig::new(n, seed, self.mode);
        if let Some(v) = &self.c0 {
            c.c0 = v.clone();
        }
        if let Some(v) = &self.lossy_c {
            c.lossy_c = v.clone();
        }
        if let Some(v) = &self.energy_slack {
            c.energy_slack = v.clone();
        }
        if let Some(v) = self.max_retries {
            c.max_retries = v;
        }
        if let Some(v) = self.verify_samples {
            c.verify_samples = v;
        }
        c.switch_count = self.switches;
        c
    }
}

#[derive(Debug, Clone, Args)]
pub struct WitnessArgs {
    #[command(flatten)]
    pub instance: InstanceArgs,
    #[command(flatten)]
    pub run: RunArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    /// Certificate JSON file.
    pub path: PathBuf,
    /// Random subsets checked when m is too large for all 2^m.
    #[arg(long, default_value_t = 10_000)]
    pub samples: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct EnergyArgs {
    /// Comma-separated elements of D.
    #[arg(long, allow_hyphen_values = true)]
    pub d: String,
    #[arg(long, default_value_t = 2)]
    pub k: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct PoolArgs {
    #[command(flatten)]
    pub instance: InstanceArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct AreasArgs {
    #[command(flatten)]
    pub instance: InstanceArgs,
    /// Also count the full two-area set (A−A)(B−B) + (A−A)(B−B).
    #[arg(long)]
    pub two_area: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct AnticoncArgs {
    #[command(flatten)]
    pub instance: InstanceArgs,
    #[arg(long, default_value_t = 1_000_000)]
    pub samples: u64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct ScaleArgs {
    #[arg(long, default_value = "interval")]
    pub family: Family,
    /// `lo..hi` (inclusive) or a comma list of n.
    #[arg(long)]
    pub range: String,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub run: RunArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

/// A failed command: message plus exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::RetriesExhausted { .. } | Error::PoolExhausted { .. } => EXIT_EXHAUSTED,
            Error::InvariantViolated(_) | Error::InjectivityViolation(_) => EXIT_CHECK_FAILED,
            _ => EXIT_USAGE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

type CmdResult = std::result::Result<Outcome, Failure>;

/// Rendered output and the exit code it implies.
struct Outcome {
    body: String,
    code: i32,
    /// Printed to stderr, e.g. the first failing check.
    note: Option<String>,
}

impl Outcome {
    fn ok(body: String) -> Self {
        Outcome {
            body,
            code: EXIT_OK,
            note: None,
        }
    }
}

/// Parses `args` (including the program name), runs the command and returns
/// the exit code. Normal output goes to `out`, diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{rendered}");
                EXIT_USAGE
            } else {
                let _ = write!(out, "{rendered}");
                EXIT_OK
            };
        }
    };
    if let Ok(v) = std::env::var(THREADS_ENV) {
        match v.trim().parse::<usize>() {
            Ok(t) => init_threads(t),
            Err(_) => {
                let _ = writeln!(err, "error: {THREADS_ENV} must be a non-negative integer");
                return EXIT_USAGE;
            }
        }
    }
    let output = match &cli.command {
        Command::Spectrum(a) => &a.output,
        Command::Witness(a) => &a.output,
        Command::Verify(a) => &a.output,
        Command::Energy(a) => &a.output,
        Command::Pool(a) => &a.output,
        Command::Areas(a) => &a.output,
        Command::Anticonc(a) => &a.output,
        Command::Scale(a) => &a.output,
    }
    .clone();
    let result = match cli.command {
        Command::Spectrum(a) => cmd_spectrum(&a),
        Command::Witness(a) => cmd_witness(&a),
        Command::Verify(a) => cmd_verify(&a),
        Command::Energy(a) => cmd_energy(&a),
        Command::Pool(a) => cmd_pool(&a),
        Command::Areas(a) => cmd_areas(&a),
        Command::Anticonc(a) => cmd_anticonc(&a),
        Command::Scale(a) => cmd_scale(&a),
    };
    match result {
        Ok(outcome) => {
            if let Err(e) = emit(&output, &outcome.body, out) {
                let _ = writeln!(err, "error: {e}");
                return EXIT_USAGE;
            }
            if let Some(note) = outcome.note {
                let _ = writeln!(err, "{note}");
            }
            outcome.code
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn emit(output: &OutputArgs, body: &str, out: &mut dyn Write) -> std::io::Result<()> {
    match &output.out {
        Some(path) => std::fs::write(path, body),
        None => out.write_all(body.as_bytes()),
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report serializes");
    s.push('\n');
    s
}

fn csv_table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for r in rows {
        w.write_record(r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
}

fn json_only(output: &OutputArgs, command: &str) -> std::result::Result<(), Failure> {
    match output.format {
        Format::Json => Ok(()),
        Format::Csv => Err(usage(format!("{command} writes JSON only"))),
    }
}

fn parse_set(s: &str) -> std::result::Result<RealSet, Failure> {
    Ok(RealSet::from_unsorted(parse_list(s)?)?)
}

fn load_instance(args: &InstanceArgs) -> std::result::Result<Instance, Failure> {
    if let Some(a) = &args.a {
        let a = parse_set(a)?;
        let b = match &args.b {
            Some(b) => parse_set(b)?,
            None => a.clone(),
        };
        return Ok(Instance::new(a, b)?);
    }
    if let Some(path) = &args.file {
        let text = read_file(path)?;
        return serde_json::from_str(&text).map_err(|e| usage(format!("{}: {e}", path.display())));
    }
    let family = args.family.unwrap_or(Family::Interval);
    let n = args
        .n
        .ok_or_else(|| usage("give --a, --file, or --n with an optional --family"))?;
    Ok(family.instance(n, args.seed)?)
}

fn read_file(path: &Path) -> std::result::Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

/// `lo..hi` inclusive, or `n1,n2,…`.
pub fn parse_range(s: &str) -> std::result::Result<Vec<usize>, String> {
    let bad = || format!("bad range {s:?}; expected lo..hi or a comma list");
    let ns: Vec<usize> = if let Some((lo, hi)) = s.split_once("..") {
        let lo: usize = lo.trim().parse().map_err(|_| bad())?;
        let hi: usize = hi
            .trim()
            .trim_start_matches('=')
            .parse()
            .map_err(|_| bad())?;
        (lo..=hi).collect()
    } else {
        s.split(',')
            .map(|t| t.trim().parse().map_err(|_| bad()))
            .collect::<std::result::Result<_, _>>()?
    };
    if ns.is_empty() {
        return Err(bad());
    }
    Ok(ns)
}

fn cmd_spectrum(args: &SpectrumArgs) -> CmdResult {
    if let Some(range) = &args.range {
        if args.instance.a.is_some() || args.instance.file.is_some() {
            return Err(usage("--range needs a builtin family"));
        }
        let family = args.instance.family.unwrap_or(Family::Interval);
        let ns = parse_range(range).map_err(usage)?;
        let mut rows = Vec::with_capacity(ns.len());
        for n in ns {
            let r = spectrum_bruteforce(&family.instance(n, args.instance.seed)?)?;
            rows.push((n, r));
        }
        let body = match args.output.format {
            Format::Csv => csv_table(
                &["n", "size", "min", "max"],
                &rows
                    .iter()
                    .map(|(n, r)| {
                        vec![
                            n.to_string(),
                            r.size.to_string(),
                            r.min.to_string(),
                            r.max.to_string(),
                        ]
                    })
                    .collect::<Vec<_>>(),
            ),
            Format::Json => {
                #[derive(Serialize)]
                struct Row<'a> {
                    n: usize,
                    #[serde(flatten)]
                    spectrum: &'a SpectrumResult,
                }
                to_json(
                    &rows
                        .iter()
                        .map(|(n, r)| Row { n: *n, spectrum: r })
                        .collect::<Vec<_>>(),
                )
            }
        };
        return Ok(Outcome::ok(body));
    }
    let inst = load_instance(&args.instance)?;
    let r = spectrum_bruteforce(&inst)?;
    let body = match args.output.format {
        Format::Json => to_json(&r),
        Format::Csv => csv_table(
            &["n", "size", "min", "max"],
            &[vec![
                inst.n().to_string(),
                r.size.to_string(),
                r.min.to_string(),
                r.max.to_string(),
            ]],
        ),
    };
    Ok(Outcome::ok(body))
}

fn certificate_outcome(body: String, checks: &[crate::witness::Check]) -> Outcome {
    match checks.iter().find(|c| !c.pass) {
        None => Outcome::ok(body),
        Some(c) => Outcome {
            body,
            code: EXIT_CHECK_FAILED,
            note: Some(format!("check failed: {}: {}", c.name, c.detail)),
        },
    }
}

fn cmd_witness(args: &WitnessArgs) -> CmdResult {
    json_only(&args.output, "witness")?;
    let inst = load_instance(&args.instance)?;
    let config = args.run.config(inst.n(), args.instance.seed);
    let cert = run_witness(&inst, &config)?;
    Ok(certificate_outcome(cert.to_json(), &cert.checks))
}

fn cmd_verify(args: &VerifyArgs) -> CmdResult {
    json_only(&args.output, "verify")?;
    let text = read_file(&args.path)?;
    let cert = WitnessCertificate::from_json(&text)
        .map_err(|e| usage(format!("{}: not a certificate: {e}", args.path.display())))?;
    let inst = cert.instance()?;
    let report = verify_certificate(&inst, &cert, args.samples);
    Ok(certificate_outcome(to_json(&report), &report.checks))
}

#[derive(Serialize)]
struct EnergySummary {
    d: Vec<Scalar>,
    #[serde(flatten)]
    energy: EnergyReport,
    sigma_d_size: Option<u64>,
    dissociated: Option<bool>,
    halasz_bound: Option<u64>,
}

fn cmd_energy(args: &EnergyArgs) -> CmdResult {
    json_only(&args.output, "energy")?;
    let d = IncrementSet::new(parse_list(&args.d)?)?;
    let energy = additive_energy(&d, args.k)?;
    let sigma = subset_sum_count(&d, None).ok().map(|c| c as u64);
    let dissociated = is_dissociated(&d).ok();
    let halasz = supportive_halasz_lower_bound(&d, args.k)
        .ok()
        .map(|h| h.bound);
    if let (Some(s), Some(h)) = (sigma, halasz) {
        if h > s {
            return Err(Failure::from(Error::InvariantViolated(format!(
                "block bound {h} exceeds |Σ(D)| = {s}"
            ))));
        }
    }
    Ok(Outcome::ok(to_json(&EnergySummary {
        d: d.as_slice().to_vec(),
        energy,
        sigma_d_size: sigma,
        dissociated,
        halasz_bound: halasz,
    })))
}

#[derive(Serialize)]
struct PoolEntry<'a> {
    value: &'a Scalar,
    a_indices: [usize; 4],
    b_indices: [usize; 4],
}

#[derive(Serialize)]
struct PoolSummary<'a> {
    n: usize,
    size: usize,
    lower_bound: usize,
    gap: &'a Scalar,
    gap_index: usize,
    diameter: &'a Scalar,
    anchor_index: usize,
    warmup_size: usize,
    entries: Vec<PoolEntry<'a>>,
}

fn cmd_pool(args: &PoolArgs) -> CmdResult {
    json_only(&args.output, "pool")?;
    let inst = load_instance(&args.instance)?;
    let pool = pool_construct(inst.a(), inst.b())?;
    for rep in pool.entries() {
        rep.check(inst.a(), inst.b())?;
    }
    let warmup = two_area_warmup(inst.a(), inst.b())?;
    Ok(Outcome::ok(to_json(&PoolSummary {
        n: inst.n(),
        size: pool.len(),
        lower_bound: pool.size_lower_bound(),
        gap: &pool.gap,
        gap_index: pool.gap_index,
        diameter: &pool.diameter,
        anchor_index: pool.anchor_index,
        warmup_size: warmup.values.len(),
        entries: pool
            .entries()
            .map(|r| PoolEntry {
                value: &r.value,
                a_indices: r.a_indices,
                b_indices: r.b_indices,
            })
            .collect(),
    })))
}

#[derive(Serialize)]
struct AreasSummary {
    n: usize,
    size: usize,
    two_area_size: Option<usize>,
    values: Vec<Scalar>,
}

fn cmd_areas(args: &AreasArgs) -> CmdResult {
    let inst = load_instance(&args.instance)?;
    let values = rect_area_set(inst.a(), inst.b())?;
    let two_area_size = if args.two_area {
        Some(two_area_set(inst.a(), inst.b(), TWO_AREA_PAIR_CAP)?.len())
    } else {
        None
    };
    let body = match args.output.format {
        Format::Json => to_json(&AreasSummary {
            n: inst.n(),
            size: values.len(),
            two_area_size,
            values,
        }),
        Format::Csv => csv_table(
            &["value"],
            &values
                .iter()
                .map(|v| vec![v.to_string()])
                .collect::<Vec<_>>(),
        ),
    };
    Ok(Outcome::ok(body))
}

fn cmd_anticonc(args: &AnticoncArgs) -> CmdResult {
    let inst = load_instance(&args.instance)?;
    let e = anticoncentration_estimate(&inst, args.samples, args.instance.seed)?;
    let body = match args.output.format {
        Format::Json => {
            #[derive(Serialize)]
            struct Row<'a> {
                n: usize,
                #[serde(flatten)]
                estimate: &'a crate::oracle::AtomEstimate,
            }
            to_json(&Row {
                n: inst.n(),
                estimate: &e,
            })
        }
        Format::Csv => csv_table(
            &["n", "samples", "max_atom_frequency", "estimate", "exact"],
            &[vec![
                inst.n().to_string(),
                e.samples.to_string(),
                e.max_atom_frequency.to_string(),
                e.estimate.to_string(),
                e.exact.to_string(),
            ]],
        ),
    };
    Ok(Outcome::ok(body))
}

/// One row of a scaling sweep; `None` renders as an empty cell.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScaleRow {
    pub n: usize,
    pub rect_area_size: Option<usize>,
    pub two_area_pool_size: Option<usize>,
    pub pool_lower_bound: Option<usize>,
    pub m: Option<usize>,
    pub energy2: Option<u64>,
    pub sigma_d_size: Option<u64>,
    pub sigma_over_n3: Option<Scalar>,
    /// `pass` or `fail` for a completed witness.
    pub checks: Option<String>,
}

pub const SCALE_COLUMNS: [&str; 9] = [
    "n",
    "rect_area_size",
    "two_area_pool_size",
    "pool_lower_bound",
    "m",
    "energy2",
    "sigma_d_size",
    "sigma_over_n3",
    "checks",
];

impl ScaleRow {
    fn cells(&self) -> Vec<String> {
        fn cell<T: ToString>(v: &Option<T>) -> String {
            v.as_ref().map(T::to_string).unwrap_or_default()
        }
        vec![
            self.n.to_string(),
            cell(&self.rect_area_size),
            cell(&self.two_area_pool_size),
            cell(&self.pool_lower_bound),
            cell(&self.m),
            cell(&self.energy2),
            cell(&self.sigma_d_size),
            cell(&self.sigma_over_n3),
            cell(&self.checks),
        ]
    }
}

/// Computes one sweep row; stages that fail leave their cells empty.
pub fn scale_row(family: Family, n: usize, seed: u64, run: &RunArgs) -> ScaleRow {
    let mut row = ScaleRow {
        n,
        rect_area_size: None,
        two_area_pool_size: None,
        pool_lower_bound: None,
        m: None,
        energy2: None,
        sigma_d_size: None,
        sigma_over_n3: None,
        checks: None,
    };
    let Ok(inst) = family.instance(n, seed) else {
        return row;
    };
    row.rect_area_size = rect_area_set(inst.a(), inst.b()).ok().map(|v| v.len());
    if let Ok(pool) = pool_construct(inst.a(), inst.b()) {
        row.two_area_pool_size = Some(pool.len());
        row.pool_lower_bound = Some(pool.size_lower_bound());
    }
    if let Ok(cert) = run_witness(&inst, &run.config(n, seed)) {
        row.m = Some(cert.m);
        row.energy2 = Some(cert.energy2);
        row.sigma_d_size = Some(cert.sigma_d_size);
        row.sigma_over_n3 = Some(cert.ratios.sigma_over_n3.clone());
        row.checks = Some(if cert.all_passed() { "pass" } else { "fail" }.to_string());
    }
    row
}

fn cmd_scale(args: &ScaleArgs) -> CmdResult {
    let ns = parse_range(&args.range).map_err(usage)?;
    let rows: Vec<ScaleRow> = Exec::default().map_range(ns.len(), |i| {
        scale_row(args.family, ns[i], args.seed, &args.run)
    });
    let body = match args.output.format {
        Format::Csv => csv_table(
            &SCALE_COLUMNS,
            &rows.iter().map(ScaleRow::cells).collect::<Vec<_>>(),
        ),
        Format::Json => to_json(&rows),
    };
    let failed = rows.iter().find(|r| r.checks.as_deref() == Some("fail"));
    Ok(match failed {
        None => Outcome::ok(body),
        Some(r) => Outcome {
            body,
            code: EXIT_CHECK_FAILED,
            note: Some(format!("witness checks failed at n = {}", r.n)),
        },
    })
}

/// Entry point for the binary.
pub fn main_with_env() -> i32 {
    let mut out = std::io::stdout().lock();
    let mut err = std::io::stderr().lock();
    run(std::env::args_os(), &mut out, &mut err)
}
