//! `qpart`: compute partition statistic tables, run identity sweeps, export data.
//!
//! Exit codes: 0 success, 1 identity failure, 2 usage or invalid parameters,
//! 3 I/O error.

mod range;

use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qpart_core::report;
use qpart_core::table::table_key;
use qpart_core::verify::{run_suites, Suite};
use qpart_core::{Params, StatId, StatTable, SweepConfig};
use rayon::prelude::*;
use serde_json::{Map, Value};

use range::IntRange;

#[derive(Parser)]
#[command(
    name = "qpart",
    version,
    about = "Exact partition statistics and identity sweeps"
)]
struct Cli {
    /// Worker threads for parallel work (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print one statistic for n = 0..=N.
    Compute(ComputeArgs),
    /// Run identity suites and report failing cells.
    Verify(VerifyArgs),
    /// Dump several tables into one JSON document.
    Export(ExportArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Args)]
struct Output {
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Write to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ComputeArgs {
    /// a, b, c, m, mp, q, p or cn (the subset count c(n)). `a` with `--p`
    /// gives a_{k,p}; canonical names such as `a_kp` are accepted too.
    stat: String,
    #[arg(long)]
    k: Option<u32>,
    #[arg(long)]
    p: Option<u32>,
    #[arg(long)]
    ell: Option<u32>,
    #[arg(long, default_value_t = 60)]
    n_max: usize,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long, default_value_t = 60)]
    n_max: usize,
    /// Inclusive range `lo..hi`, or a single value.
    #[arg(long, default_value = "1..4")]
    k: IntRange,
    /// Inclusive range `lo..hi`, or a single value.
    #[arg(long, default_value = "1..3")]
    ell: IntRange,
    /// Largest n for suites that enumerate partitions.
    #[arg(long, default_value_t = qpart_core::enumerate::DEFAULT_ENUM_CAP)]
    enum_cap: usize,
    /// Largest n for the 2^n subset oracle.
    #[arg(long, default_value_t = qpart_core::enumerate::DEFAULT_SUBSET_CAP)]
    subset_cap: usize,
}

impl SweepArgs {
    fn config(&self) -> Result<SweepConfig, Failure> {
        let cfg = SweepConfig {
            n_max: self.n_max,
            k_range: self.k.inclusive(),
            ell_range: self.ell.inclusive(),
            enum_cap: self.enum_cap,
            subset_cap: self.subset_cap,
        };
        cfg.validate().map_err(|e| Failure::Usage(e.to_string()))?;
        let k_max = *cfg.k_range.end() as usize;
        if cfg.n_max < k_max {
            return Err(Failure::Usage(format!(
                "--n-max {} must be at least the largest k ({k_max})",
                cfg.n_max
            )));
        }
        Ok(cfg)
    }
}

#[derive(Args)]
struct VerifyArgs {
    /// `all`, or a comma-separated list of suites: gf, comb, trunc,
    /// trunc-corollaries, gen17, overpartition, m-routes, c-bridge, euler,
    /// gen17-displayed, bad-exponent.
    suites: String,
    #[command(flatten)]
    sweep: SweepArgs,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct ExportArgs {
    /// Comma-separated statistics (a, b, c, m, mp, q, p, cn); may be empty.
    selector: String,
    /// Export a_{k,p} for this residue only instead of every residue.
    #[arg(long)]
    p: Option<u32>,
    #[command(flatten)]
    sweep: SweepArgs,
    #[command(flatten)]
    output: Output,
}

enum Failure {
    Usage(String),
    Io(String),
    /// Suites ran and some identity failed; the report was already written.
    Identity,
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Identity => 1,
            Failure::Usage(_) => 2,
            Failure::Io(_) => 3,
        }
    }
}

fn usage(e: qpart_core::Error) -> Failure {
    Failure::Usage(e.to_string())
}

fn emit(output: &Output, bytes: &[u8]) -> Result<(), Failure> {
    let result = match &output.out {
        Some(path) => File::create(path)
            .and_then(|mut f| f.write_all(bytes))
            .map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => {
            let mut stdout = io::stdout().lock();
            stdout
                .write_all(bytes)
                .and_then(|()| stdout.flush())
                .map_err(|e| format!("cannot write to stdout: {e}"))
        }
    };
    result.map_err(Failure::Io)
}

fn json_bytes(v: &Value) -> Vec<u8> {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s.into_bytes()
}

fn resolve_stat(name: &str, args: &ComputeArgs) -> Result<(StatId, Params), Failure> {
    let stat = match name {
        "a" if args.p.is_some() => StatId::Akp,
        "a" => StatId::Ak,
        "b" => StatId::Bk,
        "c" => StatId::Ck,
        "m" => StatId::MEll,
        "mp" => StatId::MpEll,
        "q" => StatId::Q,
        "p" => StatId::P,
        "cn" => StatId::C,
        other => other.parse().map_err(usage)?,
    };
    let (k, p, ell) = match stat {
        StatId::Ak | StatId::Bk | StatId::Ck => (true, false, false),
        StatId::Akp => (true, true, false),
        StatId::MEll | StatId::MpEll => (false, false, true),
        StatId::Q | StatId::P | StatId::C => (false, false, false),
    };
    let require = |present: bool, wanted: bool, flag: &str| match (present, wanted) {
        (false, true) => Err(Failure::Usage(format!("{stat} requires --{flag}"))),
        (true, false) => Err(Failure::Usage(format!("{stat} does not take --{flag}"))),
        _ => Ok(()),
    };
    require(args.k.is_some(), k, "k")?;
    require(args.p.is_some(), p, "p")?;
    require(args.ell.is_some(), ell, "ell")?;
    Ok((
        stat,
        Params {
            k: args.k,
            p: args.p,
            ell: args.ell,
        },
    ))
}

fn cmd_compute(args: &ComputeArgs) -> Result<(), Failure> {
    let (stat, params) = resolve_stat(&args.stat, args)?;
    let table = qpart_core::stats::compute(stat, params, args.n_max).map_err(usage)?;
    let mut buf = Vec::new();
    match args.output.format.unwrap_or(Format::Csv) {
        Format::Csv => table
            .write_csv(&mut buf)
            .map_err(|e| Failure::Io(e.to_string()))?,
        Format::Text => table
            .write_text(&mut buf)
            .map_err(|e| Failure::Io(e.to_string()))?,
        Format::Json => buf = json_bytes(&table.to_json()),
    }
    emit(&args.output, &buf)
}

fn parse_suites(selector: &str) -> Result<Vec<Suite>, Failure> {
    if selector == "all" {
        return Ok(Suite::IDENTITIES.to_vec());
    }
    let mut suites = Vec::new();
    for name in selector.split(',').map(str::trim) {
        let suite = Suite::from_name(name)
            .ok_or_else(|| Failure::Usage(format!("unknown suite '{name}'")))?;
        if !suites.contains(&suite) {
            suites.push(suite);
        }
    }
    Ok(suites)
}

fn cmd_verify(args: &VerifyArgs) -> Result<(), Failure> {
    let suites = parse_suites(&args.suites)?;
    let cfg = args.sweep.config()?;
    let reports = run_suites(&cfg, &suites).map_err(usage)?;
    let mut buf = Vec::new();
    match args.output.format.unwrap_or(Format::Text) {
        Format::Json => buf = report::to_json_string(&reports).into_bytes(),
        Format::Text => {
            report::write_text(&reports, &mut buf).map_err(|e| Failure::Io(e.to_string()))?
        }
        Format::Csv => {
            return Err(Failure::Usage(
                "verify reports are json or text, not csv".into(),
            ))
        }
    }
    emit(&args.output, &buf)?;
    if report::all_passed(&reports) {
        return Ok(());
    }
    for r in reports.iter().filter(|r| !r.passed) {
        let first = r.first_failure().expect("failed report has a failure");
        let at = &first.params;
        if r.suite == Suite::BadExponent {
            let ell = at.ell.expect("bad-exponent cells carry ell");
            eprintln!("{}: smallest failing (n, ell) = ({}, {ell})", r.suite, at.n);
        } else {
            eprintln!(
                "{}: {} failing cell(s), smallest {} at {at}",
                r.suite, r.failed, first.identity
            );
        }
    }
    Err(Failure::Identity)
}

fn export_keys(args: &ExportArgs, cfg: &SweepConfig) -> Result<Vec<(StatId, Params)>, Failure> {
    let mut keys = Vec::new();
    let ks = cfg.k_range.clone();
    let ells = cfg.ell_range.clone();
    for name in args
        .selector
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
    {
        match name {
            "a" => {
                keys.extend(ks.clone().map(|k| (StatId::Ak, Params::k(k))));
                for k in ks.clone() {
                    match args.p {
                        Some(p) if p < k => keys.push((StatId::Akp, Params::kp(k, p))),
                        Some(_) => {}
                        None => keys.extend((0..k).map(|p| (StatId::Akp, Params::kp(k, p)))),
                    }
                }
            }
            "b" => keys.extend(ks.clone().map(|k| (StatId::Bk, Params::k(k)))),
            "c" => keys.extend(ks.clone().map(|k| (StatId::Ck, Params::k(k)))),
            "m" => keys.extend(ells.clone().map(|l| (StatId::MEll, Params::ell(l)))),
            "mp" => keys.extend(ells.clone().map(|l| (StatId::MpEll, Params::ell(l)))),
            "q" => keys.push((StatId::Q, Params::none())),
            "p" => keys.push((StatId::P, Params::none())),
            "cn" => keys.push((StatId::C, Params::none())),
            other => return Err(Failure::Usage(format!("unknown export selector '{other}'"))),
        }
    }
    if let Some(p) = args.p {
        if !ks.clone().any(|k| p < k) {
            return Err(Failure::Usage(format!(
                "--p {p} must be below some k in {ks:?}"
            )));
        }
    }
    keys.sort_unstable();
    keys.dedup();
    Ok(keys)
}

fn cmd_export(args: &ExportArgs) -> Result<(), Failure> {
    let cfg = args.sweep.config()?;
    if matches!(args.output.format, Some(Format::Csv | Format::Text)) {
        return Err(Failure::Usage("export writes json only".into()));
    }
    let keys = export_keys(args, &cfg)?;
    let tables: Vec<StatTable> = keys
        .into_par_iter()
        .map(|(stat, params)| qpart_core::stats::compute(stat, params, cfg.n_max))
        .collect::<qpart_core::Result<_>>()
        .map_err(usage)?;
    let doc: Map<String, Value> = tables
        .iter()
        .map(|t| (table_key(t.stat(), t.params()), t.to_json()))
        .collect();
    emit(&args.output, &json_bytes(&Value::Object(doc)))
}

fn run(cli: &Cli) -> Result<(), Failure> {
    match &cli.command {
        Command::Compute(a) => cmd_compute(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Export(a) => cmd_export(a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(n) = cli.threads {
        if n == 0 {
            eprintln!("qpart: --threads must be at least 1");
            return ExitCode::from(2);
        }
        pool = pool.num_threads(n);
    }
    let pool = match pool.build() {
        Ok(pool) => pool,
        Err(e) => {
            eprintln!("qpart: cannot start worker threads: {e}");
            return ExitCode::from(3);
        }
    };
    match pool.install(|| run(&cli)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            match &f {
                Failure::Usage(msg) | Failure::Io(msg) => eprintln!("qpart: {msg}"),
                Failure::Identity => {}
            }
            ExitCode::from(f.exit_code())
        }
    }
}
