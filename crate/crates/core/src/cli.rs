//! `farey-lt` command line: argument validation, dispatch and CSV/JSON output.
//!
//! Exit codes: 0 success, 1 computation or I/O failure, 2 usage error.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::arith::{is_prime, squarefree_kernel};
use crate::elliptic::{read_trace_cache, trace_table, write_trace_cache, CurveFamily, TraceEntry, TraceTable};
use crate::error::Error;
use crate::farey::{
    count_coprime_pairs, l1_deviation, m_counts_unit, residue_histogram, COPRIME_DENSITY,
    L2_MAX_PRIME, L2_MAX_WIDTH,
};
use crate::langtrotter::{
    average_pi_a, average_pi_field, chebotarev_from_table, theorem2_envelope, EnvelopePart,
};
use crate::quadratic::{field_discriminant, field_of, lemma_poly};

/// Environment variable that overrides `--cache-dir`.
pub const CACHE_ENV: &str = "FAREY_LT_CACHE";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "farey-lt", version, about = "Farey fractions mod p and averaged Lang-Trotter counts")]
struct RawArgs {
    #[command(subcommand)]
    command: RawCommand,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,

    /// Directory for trace-table cache files.
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,

    /// Worker threads (default: available parallelism).
    #[arg(long, global = true)]
    threads: Option<usize>,
}

#[derive(Debug, Subcommand)]
enum RawCommand {
    /// Residue histogram R_{T,p}(v) of the Farey fractions of order T.
    FareyHist {
        #[arg(long)]
        t: u64,
        #[arg(long)]
        p: u64,
    },
    /// L1 discrepancy of the residue histogram for each order in --t-list.
    Discrepancy {
        #[arg(long, value_delimiter = ',', required = true)]
        t_list: Vec<u64>,
        #[arg(long)]
        p: u64,
    },
    /// M_{W,p,d}(v) for every residue v.
    MCount {
        #[arg(long)]
        w: u64,
        #[arg(long)]
        p: u64,
        /// Common divisor d of numerator and denominator.
        #[arg(long, default_value_t = 1)]
        div: u64,
    },
    /// Trace table a_p(v), v = 0..p-1, in the trace-cache format.
    Traces {
        #[arg(long)]
        family: String,
        #[arg(long)]
        p: u64,
    },
    /// Average of Π(a, x) over Farey fractions of order T.
    LtAvg {
        #[arg(long)]
        family: String,
        #[arg(long, allow_hyphen_values = true)]
        a: i64,
        #[arg(long)]
        x: u64,
        #[arg(long)]
        t: u64,
    },
    /// Average of Π(Q(√d), x) over Farey fractions of order T.
    LtField {
        #[arg(long)]
        family: String,
        #[arg(long, allow_hyphen_values = true)]
        d: i64,
        #[arg(long)]
        x: u64,
        #[arg(long)]
        t: u64,
    },
    /// Distribution of a_p(v) mod ell over good residues v.
    Chebotarev {
        #[arg(long)]
        family: String,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        ell: u64,
    },
    /// Coefficients of P with (a^n + b^n)^2/(ab)^n = P((a+b)^2/(ab)), n = hw.
    LemmaPoly {
        #[arg(long)]
        hw: u32,
    },
    /// Class numbers and unit counts of imaginary quadratic fields with |D| <= dmax.
    Classnum {
        #[arg(long)]
        dmax: u64,
    },
    /// Shape of the averaged Lang-Trotter bounds.
    Envelope {
        #[arg(long)]
        t: u64,
        #[arg(long)]
        x: u64,
        #[arg(long)]
        part: u8,
    },
}

/// A validated subcommand.
#[derive(Debug, Clone)]
pub enum Command {
    FareyHist { t: u64, p: u64 },
    Discrepancy { t_list: Vec<u64>, p: u64 },
    MCount { w: u64, p: u64, div: u64 },
    Traces { family: CurveFamily, p: u64 },
    LtAvg { family: CurveFamily, a: i64, x: u64, t: u64 },
    LtField { family: CurveFamily, d: i64, x: u64, t: u64 },
    Chebotarev { family: CurveFamily, p: u64, ell: u64 },
    LemmaPoly { hw: u32 },
    Classnum { dmax: u64 },
    Envelope { t: u64, x: u64, part: EnvelopePart },
}

#[derive(Debug, Clone)]
pub struct CliConfig {
    pub command: Command,
    pub format: Format,
    pub cache_dir: Option<PathBuf>,
    pub threads: usize,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Help or version text requested.
    #[error("{0}")]
    Info(String),
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Compute(#[from] Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Info(_) => 0,
            CliError::Compute(_) => 1,
            CliError::Usage(_) => 2,
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Compute(e.into())
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn prime(flag: &str, p: u64) -> Result<u64, CliError> {
    if is_prime(p) {
        Ok(p)
    } else {
        Err(usage(format!("{flag} must be prime, got {p}")))
    }
}

fn curve_prime(flag: &str, p: u64) -> Result<u64, CliError> {
    prime(flag, p)?;
    if p < 5 {
        return Err(usage(format!("{flag} must be at least 5, got {p}")));
    }
    Ok(p)
}

fn positive(flag: &str, n: u64) -> Result<u64, CliError> {
    if n == 0 {
        return Err(usage(format!("{flag} must be positive")));
    }
    Ok(n)
}

fn family(s: &str) -> Result<CurveFamily, CliError> {
    CurveFamily::parse(s).map_err(|e| usage(format!("invalid --family {s:?}: {e}")))
}

/// Parses arguments (without the program name), reading the cache override from the environment.
pub fn parse_args<I, S>(argv: I) -> Result<CliConfig, CliError>
where
    I: IntoIterator<Item = S>,
    S: Into<OsString> + Clone,
{
    parse_args_with_env(argv, std::env::var_os(CACHE_ENV))
}

pub fn parse_args_with_env<I, S>(argv: I, cache_env: Option<OsString>) -> Result<CliConfig, CliError>
where
    I: IntoIterator<Item = S>,
    S: Into<OsString> + Clone,
{
    let args = std::iter::once(OsString::from("farey-lt")).chain(argv.into_iter().map(Into::into));
    let raw = RawArgs::try_parse_from(args).map_err(|e| {
        use clap::error::ErrorKind;
        match e.kind() {
            ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => CliError::Info(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    })?;

    let command = match raw.command {
        RawCommand::FareyHist { t, p } => Command::FareyHist {
            t: positive("--t", t)?,
            p: prime("--p", p)?,
        },
        RawCommand::Discrepancy { t_list, p } => {
            for &t in &t_list {
                positive("--t-list entries", t)?;
            }
            Command::Discrepancy { t_list, p: prime("--p", p)? }
        }
        RawCommand::MCount { w, p, div } => Command::MCount {
            w,
            p: prime("--p", p)?,
            div: positive("--div", div)?,
        },
        RawCommand::Traces { family: f, p } => Command::Traces {
            family: family(&f)?,
            p: curve_prime("--p", p)?,
        },
        RawCommand::LtAvg { family: f, a, x, t } => Command::LtAvg {
            family: family(&f)?,
            a,
            x: positive("--x", x)?,
            t: positive("--t", t)?,
        },
        RawCommand::LtField { family: f, d, x, t } => {
            if d >= 0 || squarefree_kernel(d).ok() != Some(d) {
                return Err(usage(format!("--d must be a squarefree negative integer, got {d}")));
            }
            Command::LtField {
                family: family(&f)?,
                d,
                x: positive("--x", x)?,
                t: positive("--t", t)?,
            }
        }
        RawCommand::Chebotarev { family: f, p, ell } => {
            let p = curve_prime("--p", p)?;
            let ell = prime("--ell", ell)?;
            if ell == p {
                return Err(usage("--ell must differ from --p"));
            }
            Command::Chebotarev { family: family(&f)?, p, ell }
        }
        RawCommand::LemmaPoly { hw } => {
            if hw == 0 {
                return Err(usage("--hw must be positive"));
            }
            Command::LemmaPoly { hw }
        }
        RawCommand::Classnum { dmax } => Command::Classnum { dmax },
        RawCommand::Envelope { t, x, part } => Command::Envelope {
            t,
            x,
            part: EnvelopePart::try_from(part).map_err(|e| usage(format!("--part: {e}")))?,
        },
    };

    let threads = match raw.threads {
        Some(0) => return Err(usage("--threads must be positive")),
        Some(n) => n,
        None => std::thread::available_parallelism().map_or(1, |n| n.get()),
    };
    let cache_dir = match cache_env {
        Some(dir) if !dir.is_empty() => Some(PathBuf::from(dir)),
        _ => raw.cache_dir,
    };
    Ok(CliConfig { command, format: raw.format, cache_dir, threads })
}

/// Runs the command on a dedicated pool of `config.threads` workers.
pub fn run(config: &CliConfig, out: &mut dyn Write) -> Result<(), CliError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.threads)
        .build()
        .map_err(|e| CliError::Compute(Error::Io(e.to_string())))?;
    let text = pool.install(|| render(config))?;
    out.write_all(text.as_bytes())?;
    out.flush()?;
    Ok(())
}

/// Parses, runs and reports; returns the process exit code.
pub fn main_with_args<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<OsString> + Clone,
{
    let result = parse_args(argv).and_then(|config| run(&config, out));
    match result {
        Ok(()) => 0,
        Err(CliError::Info(text)) => {
            let _ = out.write_all(text.as_bytes());
            0
        }
        Err(e) => {
            let _ = writeln!(err, "farey-lt: {e}");
            e.exit_code()
        }
    }
}

fn to_json(value: &impl Serialize) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serializes");
    s.push('\n');
    s
}

fn load_or_build_table(cache_dir: Option<&Path>, family: &CurveFamily, p: u64) -> Result<TraceTable, Error> {
    let Some(dir) = cache_dir else {
        return trace_table(family, p);
    };
    if let Some(table) = read_trace_cache(dir, family, p)? {
        return Ok(table);
    }
    let table = trace_table(family, p)?;
    write_trace_cache(dir, family, &table)?;
    Ok(table)
}

fn render(config: &CliConfig) -> Result<String, Error> {
    let json = config.format == Format::Json;
    let cache = config.cache_dir.as_deref();
    Ok(match &config.command {
        &Command::FareyHist { t, p } => {
            let hist = residue_histogram(t, p)?;
            if json {
                let rows: Vec<_> = hist
                    .counts
                    .iter()
                    .enumerate()
                    .map(|(v, c)| json!({ "v": v, "count": c }))
                    .collect();
                to_json(&json!({ "T": t, "p": p, "main_term": hist.main_term(), "rows": rows }))
            } else {
                hist.to_csv()
            }
        }
        Command::Discrepancy { t_list, p } => {
            let mut rows = Vec::new();
            for &t in t_list {
                let hist = residue_histogram(t, *p)?;
                let l1 = l1_deviation(&hist.counts[1..], hist.main_term());
                let count = count_coprime_pairs(t)?;
                rows.push((t, count, l1, l1 / count as f64));
            }
            if json {
                let rows: Vec<_> = rows
                    .iter()
                    .map(|&(t, c, l1, n)| json!({ "T": t, "farey_count": c, "l1": l1, "l1_normalized": n }))
                    .collect();
                to_json(&json!({ "p": p, "density": COPRIME_DENSITY, "rows": rows }))
            } else {
                let mut out = String::from("T,farey_count,l1,l1_normalized\n");
                for (t, c, l1, n) in rows {
                    let _ = writeln!(out, "{t},{c},{l1},{n}");
                }
                let _ = writeln!(out, "# p={p} density={COPRIME_DENSITY}");
                out
            }
        }
        &Command::MCount { w, p, div } => {
            // M_{W,p,d} vanishes when p | d and equals M_{W/d,p,1} otherwise
            let counts = if div % p == 0 {
                vec![0; p as usize]
            } else {
                m_counts_unit(w / div, p)?
            };
            let l2 = (div == 1 && w >= 1 && w <= L2_MAX_WIDTH && p <= L2_MAX_PRIME).then(|| {
                let mean = (w as f64) * (w as f64) / p as f64;
                let dev: f64 = counts[1..].iter().map(|&c| (c as f64 - mean).powi(2)).sum();
                (dev, dev / (w as f64 * w as f64))
            });
            if json {
                let rows: Vec<_> = counts
                    .iter()
                    .enumerate()
                    .map(|(v, c)| json!({ "v": v, "count": c }))
                    .collect();
                to_json(&json!({
                    "W": w, "p": p, "d": div, "rows": rows,
                    "l2_deviation": l2.map(|x| x.0), "l2_ratio": l2.map(|x| x.1),
                }))
            } else {
                let mut out = String::from("v,count\n");
                for (v, c) in counts.iter().enumerate() {
                    let _ = writeln!(out, "{v},{c}");
                }
                let _ = write!(out, "# W={w} p={p} d={div}");
                if let Some((dev, ratio)) = l2 {
                    let _ = write!(out, " l2_deviation={dev} ratio={ratio}");
                }
                out.push('\n');
                out
            }
        }
        Command::Traces { family, p } => {
            let table = load_or_build_table(cache, family, *p)?;
            if json {
                let rows: Vec<_> = table
                    .entries
                    .iter()
                    .enumerate()
                    .map(|(v, e)| match e {
                        TraceEntry::Good(a) => json!({ "v": v, "a_or_BAD": a }),
                        TraceEntry::Bad => json!({ "v": v, "a_or_BAD": "BAD" }),
                    })
                    .collect();
                to_json(&json!({
                    "family": family.serialize(), "p": p, "hash": family.id(), "rows": rows,
                }))
            } else {
                table.to_cache_string(family)
            }
        }
        &Command::LtAvg { ref family, a, x, t } => {
            let report = average_pi_a(family, a, x, t)?;
            if json { to_json(&report) } else { report.to_csv() }
        }
        &Command::LtField { ref family, d, x, t } => {
            let report = average_pi_field(family, d, x, t)?;
            if json { to_json(&report) } else { report.to_csv() }
        }
        &Command::Chebotarev { ref family, p, ell } => {
            let table = load_or_build_table(cache, family, p)?;
            let report = chebotarev_from_table(&table, ell)?;
            if json { to_json(&report) } else { report.to_csv() }
        }
        &Command::LemmaPoly { hw } => {
            let poly = lemma_poly(hw)?;
            if json {
                to_json(&json!({ "hw": hw, "coeffs": poly.to_string() }))
            } else {
                format!("{poly}\n")
            }
        }
        &Command::Classnum { dmax } => {
            let mut rows = Vec::new();
            let mut d = -1i64;
            // |D| >= |d| for every field, so stop once |d| exceeds dmax
            while d.unsigned_abs() <= dmax {
                if squarefree_kernel(d)? == d && field_discriminant(d).unsigned_abs() <= dmax {
                    rows.push(field_of(d)?);
                }
                d -= 1;
            }
            rows.sort_by_key(|f| (f.disc.unsigned_abs(), f.d));
            if json {
                let rows: Vec<_> = rows
                    .iter()
                    .map(|f| json!({ "D": f.disc, "d": f.d, "h": f.class_number, "w": f.unit_count }))
                    .collect();
                to_json(&json!({ "dmax": dmax, "rows": rows }))
            } else {
                let mut out = String::from("D,d,h,w\n");
                for f in rows {
                    let _ = writeln!(out, "{},{},{},{}", f.disc, f.d, f.class_number, f.unit_count);
                }
                out
            }
        }
        &Command::Envelope { t, x, part } => {
            let value = theorem2_envelope(t, x, part);
            let part = part as u8;
            if json {
                to_json(&json!({ "part": part, "T": t, "x": x, "envelope": value }))
            } else {
                format!("part,T,x,envelope\n{part},{t},{x},{value}\n")
            }
        }
    })
}
