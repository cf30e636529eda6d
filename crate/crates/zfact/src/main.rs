//! Command-line front end: single queries, grid sweeps, conjecture
//! verification suites, and machine-readable output.
//!
//! Exit codes: 0 success, 1 failed non-conjecture check, 2 usage error.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand};

use zfact::arith::{self, Natural};
use zfact::cli::{self, CheckKind, KSpec, OutputFormat, SweepSpec};
use zfact::error::Error;
use zfact::theta::{expand_rational, Representation};
use zfact::{anomaly, legendre, suites, theta};

/// Power exponents above this need --force: b^k materialization cost grows
/// quadratically in k.
const POWER_GUARD: u64 = 1_000_000;

#[derive(Parser)]
#[command(
    name = "zfact",
    version,
    about = "Trailing zeroes of n! in any base: exact counts, the density constant theta(b), \
             periodic expansions, and digit-anomaly sweeps"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Z_b(n): the number of trailing zeroes of n! in base b
    Zeros {
        #[arg(long)]
        base: u64,
        /// Explicit n as a decimal string
        #[arg(long, conflicts_with = "power")]
        n: Option<String>,
        /// Power form: n = base^k
        #[arg(long)]
        power: Option<u64>,
        /// Also print the base-b digits of the result
        #[arg(long)]
        digits: bool,
        /// Allow power exponents above 10^6
        #[arg(long)]
        force: bool,
    },
    /// theta(b) as an exact rational, with its base-b expansion
    Theta {
        #[arg(long)]
        base: u64,
    },
    /// First fractional digits of theta(b) in base b
    Stream {
        #[arg(long)]
        base: u64,
        #[arg(long)]
        count: u64,
    },
    /// Anomaly report for the cell (b, k)
    Report {
        #[arg(long)]
        base: u64,
        #[arg(long)]
        k: u64,
        /// Emit one JSON object instead of text
        #[arg(long)]
        json: bool,
    },
    /// Sweep a (b, k) grid evaluating checks per cell
    Scan {
        /// Inclusive base range LO..HI
        #[arg(long)]
        bases: String,
        /// Inclusive exponent range LO..HI, or b-1
        #[arg(long)]
        ks: String,
        /// Check to run per cell (repeatable)
        #[arg(long = "check", required = true)]
        checks: Vec<String>,
        /// Row output path (stdout when omitted)
        #[arg(long)]
        out: Option<PathBuf>,
        /// Row format: csv or jsonl
        #[arg(long, default_value = "csv")]
        format: String,
        /// Worker threads (default: machine parallelism)
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Prime-power bases whose theta digit streams coincide
    Coincidences {
        /// Largest base scanned (inclusive)
        #[arg(long)]
        limit: u64,
    },
    /// Bases b < limit where eta(b, b-1) attains the bound 2
    #[command(name = "tight-eta")]
    TightEta {
        #[arg(long)]
        limit: u64,
    },
    /// Run verification suites (all by default)
    Verify {
        /// Suite name (repeatable); see --list
        #[arg(long = "suite")]
        suites: Vec<String>,
        /// List available suites and exit
        #[arg(long)]
        list: bool,
        /// Worker threads (default: machine parallelism)
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// The sequence 1/theta(n) for n = 2..=limit, one value per line
    Oeis {
        #[arg(long)]
        limit: u64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> zfact::Result<ExitCode> {
    match cli.cmd {
        Cmd::Zeros {
            base,
            n,
            power,
            digits,
            force,
        } => cmd_zeros(base, n, power, digits, force),
        Cmd::Theta { base } => cmd_theta(base),
        Cmd::Stream { base, count } => cmd_stream(base, count),
        Cmd::Report { base, k, json } => cmd_report(base, k, json),
        Cmd::Scan {
            bases,
            ks,
            checks,
            out,
            format,
            jobs,
        } => cmd_scan(&bases, &ks, &checks, out.as_deref(), &format, jobs),
        Cmd::Coincidences { limit } => cmd_coincidences(limit),
        Cmd::TightEta { limit } => cmd_tight_eta(limit),
        Cmd::Verify { suites, list, jobs } => cmd_verify(&suites, list, jobs),
        Cmd::Oeis { limit } => cmd_oeis(limit),
    }
}

fn set_jobs(jobs: Option<usize>) {
    if let Some(n) = jobs {
        // Ignore the error when a global pool already exists.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
}

fn cmd_zeros(
    base: u64,
    n: Option<String>,
    power: Option<u64>,
    digits: bool,
    force: bool,
) -> zfact::Result<ExitCode> {
    let value = match (n, power) {
        (Some(text), None) => {
            let n = Natural::from_str(text.trim()).map_err(|_| {
                Error::InvalidArgument(format!("--n expects a decimal integer, got `{text}`"))
            })?;
            legendre::z_base_n(base, &n)?
        }
        (None, Some(k)) => {
            if k > POWER_GUARD && !force {
                return Err(Error::InvalidArgument(format!(
                    "--power {k} exceeds {POWER_GUARD}; pass --force to proceed"
                )));
            }
            legendre::z_base_power(base, k)?
        }
        _ => {
            return Err(Error::InvalidArgument(
                "exactly one of --n or --power is required".into(),
            ))
        }
    };
    println!("{value}");
    if digits {
        println!("{}", arith::to_digits(&value, base)?);
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_theta(base: u64) -> zfact::Result<ExitCode> {
    let (th, (p, r)) = theta::theta(base)?;
    println!("theta({base}) = {th}");
    println!("argmin factor: {p}^{r}");
    let canonical = expand_rational(&th, base, Representation::Canonical)?;
    println!("exact in base {base}: {}", canonical.is_exact());
    println!(
        "canonical: t={} preperiod {} period {}",
        canonical.t(),
        fmt_digits(canonical.preperiod()),
        fmt_digits(canonical.period()),
    );
    if canonical.is_exact() {
        let tail = expand_rational(&th, base, Representation::RepeatingTail)?;
        println!(
            "repeating-tail: t={} preperiod {} period {}",
            tail.t(),
            fmt_digits(tail.preperiod()),
            fmt_digits(tail.period()),
        );
    }
    Ok(ExitCode::SUCCESS)
}

fn fmt_digits(digits: &[u64]) -> String {
    let inner: Vec<String> = digits.iter().map(|d| d.to_string()).collect();
    format!("{{{}}}", inner.join(","))
}

fn cmd_stream(base: u64, count: u64) -> zfact::Result<ExitCode> {
    let digits = theta::theta_digit_stream(base, count)?;
    let inner: Vec<String> = digits.iter().map(|d| d.to_string()).collect();
    println!("{{{}}}_{base}", inner.join(","));
    Ok(ExitCode::SUCCESS)
}

fn cmd_report(base: u64, k: u64, json: bool) -> zfact::Result<ExitCode> {
    let r = anomaly::report(base, k)?;
    if json {
        let value = serde_json::json!({
            "b": r.b,
            "k": r.k,
            "z": r.z_value.to_string(),
            "theta_floor": r.theta_floor.to_string(),
            "alpha": r.alpha.to_string(),
            "eta": r.eta,
            "eta_bound": r.eta_bound,
            "unequal_digits": r.unequal_digits,
        });
        println!("{value}");
    } else {
        println!("b                {}", r.b);
        println!("k                {}", r.k);
        println!("z                {}", r.z_value);
        println!("theta_floor      {}", r.theta_floor);
        println!("alpha            {}", r.alpha);
        println!("eta              {}", r.eta);
        println!("eta_bound        {}", r.eta_bound);
        println!("unequal_digits   {}", r.unequal_digits);
        if let Some(excess) = &r.squarefree_excess {
            println!("squarefree_excess {excess}");
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_scan(
    bases: &str,
    ks: &str,
    checks: &[String],
    out: Option<&std::path::Path>,
    format: &str,
    jobs: Option<usize>,
) -> zfact::Result<ExitCode> {
    set_jobs(jobs);
    let spec = SweepSpec {
        bases: cli::parse_range(bases)?,
        ks: if ks == "b-1" {
            KSpec::BMinusOne
        } else {
            let (lo, hi) = cli::parse_range(ks)?;
            KSpec::Range(lo, hi)
        },
        checks: checks
            .iter()
            .map(|c| CheckKind::parse(c))
            .collect::<zfact::Result<Vec<_>>>()?,
        format: OutputFormat::parse(format)?,
    };
    let summary = match out {
        Some(path) => {
            let file = std::fs::File::create(path).map_err(|e| {
                Error::InvalidArgument(format!("cannot write {}: {e}", path.display()))
            })?;
            let mut writer = std::io::BufWriter::new(file);
            cli::run_scan(&spec, &mut writer)?
        }
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            cli::run_scan(&spec, &mut lock)?
        }
    };
    let mut line = format!(
        "scan: cells={} rows={} violations={} conjecture_violations={}",
        summary.cells, summary.rows, summary.violations, summary.conjecture_violations
    );
    if summary.hits > 0 {
        line.push_str(&format!(" hits={}", summary.hits));
    }
    if let Some(m) = summary.max_unequal {
        line.push_str(&format!(" max_unequal={m}"));
    }
    eprintln!("{line}");
    Ok(if summary.violations > 0 {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    })
}

fn cmd_coincidences(limit: u64) -> zfact::Result<ExitCode> {
    if limit < 4 {
        return Err(Error::InvalidArgument("--limit must be at least 4".into()));
    }
    let pairs = anomaly::find_coincidence_pairs(limit)?;
    for p in &pairs {
        println!(
            "({}, {}): preperiod {} period {}",
            p.b1,
            p.b2,
            fmt_digits(&p.preperiod),
            fmt_digits(&p.period)
        );
    }
    println!(
        "{} pair(s) among prime-power bases <= {limit}; the all-ones stream shared by every \
         prime is excluded",
        pairs.len()
    );
    Ok(ExitCode::SUCCESS)
}

fn cmd_tight_eta(limit: u64) -> zfact::Result<ExitCode> {
    for b in anomaly::find_tight_eta(limit)? {
        println!("{b}");
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(names: &[String], list: bool, jobs: Option<usize>) -> zfact::Result<ExitCode> {
    if list {
        for name in suites::SUITE_NAMES {
            println!("{name}");
        }
        return Ok(ExitCode::SUCCESS);
    }
    set_jobs(jobs);
    let selected: Vec<&str> = if names.is_empty() {
        suites::SUITE_NAMES.to_vec()
    } else {
        names.iter().map(|s| s.as_str()).collect()
    };
    let mut failed = false;
    for name in selected {
        let started = std::time::Instant::now();
        let rep = suites::run_suite(name)?;
        let mut line = format!(
            "{}: {} cells={} violations={}",
            rep.name,
            if rep.passed() { "PASS" } else { "FAIL" },
            rep.cells,
            rep.violations
        );
        if rep.conjecture_violations > 0 || name.starts_with("conjecture") || name == "squarefree"
        {
            line.push_str(&format!(
                " conjecture_violations={}",
                rep.conjecture_violations
            ));
        }
        if let Some(m) = rep.max_unequal {
            line.push_str(&format!(" max_unequal={m}"));
        }
        println!("{line}");
        for s in &rep.samples {
            println!("  {s}");
        }
        eprintln!("({name} took {:?})", started.elapsed());
        if !rep.passed() {
            failed = true;
        }
        let _ = std::io::stdout().flush();
    }
    Ok(if failed {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    })
}

fn cmd_oeis(limit: u64) -> zfact::Result<ExitCode> {
    if limit < 2 {
        return Err(Error::InvalidArgument("--limit must be at least 2".into()));
    }
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    for n in 2..=limit {
        let v = theta::inverse_theta(n)?;
        writeln!(lock, "{v}").map_err(|e| Error::InvalidArgument(format!("write failed: {e}")))?;
    }
    Ok(ExitCode::SUCCESS)
}
