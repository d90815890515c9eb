use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigUint;
use serde_json::json;

use exlie::engine::{counting_engine, CountingEngine, ENGINES};
use exlie::eigenposet::{eigen_counter, CACHE_DIR_ENV};
use exlie::oracle::orbit_census;
use exlie::ordercount::n_gm_quasipoly;
use exlie::quasipoly::{emit_table, EmitOptions, QuasiPolynomial, TableFormat};
use exlie::rootdata::GroupType;
use exlie::verify::{run_suite, Suite, VerifyOptions, SUITES};
use exlie::Error;

const EXIT_USAGE: u8 = 1;
const EXIT_MISMATCH: u8 = 2;
const EXIT_INTEGRITY: u8 = 3;

/// Exact counts of finite-order conjugacy classes in G2, F4, E6, E7 and E8.
#[derive(Debug, Parser)]
#[command(name = "exlie", version)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Global {
    /// Output format for tables and values.
    #[arg(long, global = true, default_value = "markdown")]
    format: TableFormat,
    /// Directory for the F4 poset cache [default: <tmp>/exlie-cache].
    #[arg(long, global = true, env = CACHE_DIR_ENV)]
    cache_dir: Option<PathBuf>,
    /// Worker threads (results do not depend on this).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Allow enumerating all 2903040 elements of W(E7) (about 200 MB).
    #[arg(long, global = true)]
    opt_in_e7_enumeration: bool,
    /// Counting engine for single values.
    #[arg(long, global = true, default_value = "burnside", value_parser = clap::builder::PossibleValuesParser::new(ENGINES))]
    engine: String,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Classes of elements with x^m = 1.
    Ngm {
        group: GroupType,
        #[arg(required_unless_present = "table", conflicts_with = "table")]
        m: Option<u64>,
        /// Print the quasi-polynomial in m instead of one value.
        #[arg(long)]
        table: bool,
    },
    /// Classes of elements with x^m = 1 and s distinct eigenvalues (G2, F4).
    Ngms {
        group: GroupType,
        #[arg(requires = "s", conflicts_with_all = ["column", "all"])]
        m: Option<u64>,
        s: Option<u32>,
        /// Quasi-polynomial column for one s.
        #[arg(long, value_name = "S", conflicts_with = "all")]
        column: Option<u32>,
        /// Every column as a gcd expression in m.
        #[arg(long)]
        all: bool,
    },
    /// Check against the embedded tables, the oracle or structural identities.
    Verify {
        /// Suites to run; all of them when omitted.
        #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(SUITES))]
        suite: Vec<String>,
        /// Validate this class data file instead of the shipped one.
        #[arg(long, value_name = "FILE")]
        class_data: Option<PathBuf>,
    },
    /// Brute-force orbit count on the torus grid (G2: m <= 24, F4: m <= 6).
    Oracle { group: GroupType, m: u64, s: Option<u32> },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_USAGE) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", e);
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Integrity(_) | Error::FitMismatch(_) => EXIT_INTEGRITY,
        _ => EXIT_USAGE,
    }
}

fn run(cli: Cli) -> exlie::Result<ExitCode> {
    let g = &cli.global;
    if let Some(n) = g.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Error::Parse(format!("--jobs: {}", e)))?;
    }
    let cache_dir = Some(g.cache_dir.clone().unwrap_or_else(|| std::env::temp_dir().join("exlie-cache")));
    let engine = counting_engine(&g.engine, cache_dir.clone())?;
    let out = match cli.command {
        Command::Ngm { group, m: Some(m), .. } => value_output(g.format, group, m, None, engine.n_gm(group, m)?),
        Command::Ngm { group, .. } => {
            let qp = n_gm_quasipoly(group)?;
            emit(&qp, g.format, format!("N({},m)", group))?
        }
        Command::Ngms { group, m: Some(m), s: Some(s), .. } => {
            value_output(g.format, group, m, Some(s), ngms_value(engine.as_ref(), group, m, s, &cache_dir)?)
        }
        Command::Ngms { group, column: Some(s), .. } => {
            let qp = eigen_counter(group, cache_dir.as_deref())?.n_gms_symbolic(s)?.to_quasipolynomial();
            emit(&qp, g.format, format!("N({},m,{})", group, s))?
        }
        Command::Ngms { group, all: true, .. } => dump_all(group, g.format, &cache_dir)?,
        Command::Ngms { .. } => {
            return Err(Error::Parse("ngms needs `M S`, `--column S` or `--all`".into()));
        }
        Command::Verify { suite, class_data } => {
            let opts = VerifyOptions {
                cache_dir,
                class_data: class_data.map(std::fs::read_to_string).transpose()?,
                opt_in_e7: g.opt_in_e7_enumeration,
            };
            let suites: Vec<&str> = if suite.is_empty() { SUITES.to_vec() } else { suite.iter().map(String::as_str).collect() };
            let mut ok = true;
            for name in suites {
                let report = run_suite(name.parse::<Suite>()?, &opts)?;
                println!("{}", report);
                ok &= report.passed();
            }
            return Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(EXIT_MISMATCH) });
        }
        Command::Oracle { group, m, s: Some(s) } => {
            let census = orbit_census(group, m)?;
            value_output(g.format, group, m, Some(s), BigUint::from(census.by_s.get(&s).copied().unwrap_or(0)))
        }
        Command::Oracle { group, m, s: None } => {
            let census = orbit_census(group, m)?;
            match g.format {
                TableFormat::Json => {
                    let by_s: Vec<_> = census.by_s.iter().map(|(s, n)| json!({"s": s, "orbits": n})).collect();
                    let doc = json!({"group": group.to_string(), "m": m, "orbits": census.orbits, "by_s": by_s});
                    format!("{}\n", serde_json::to_string_pretty(&doc)?)
                }
                TableFormat::Csv => {
                    let mut t = String::from("s,orbits\n");
                    for (s, n) in &census.by_s {
                        t.push_str(&format!("{},{}\n", s, n));
                    }
                    t
                }
                TableFormat::Markdown => {
                    let mut t = String::from("| s | orbits |\n|---|---|\n");
                    for (s, n) in &census.by_s {
                        t.push_str(&format!("| {} | {} |\n", s, n));
                    }
                    t.push_str(&format!("| all | {} |\n", census.orbits));
                    t
                }
            }
        }
    };
    print!("{}", out);
    Ok(ExitCode::SUCCESS)
}

fn ngms_value(engine: &dyn CountingEngine, g: GroupType, m: u64, s: u32, cache_dir: &Option<PathBuf>) -> exlie::Result<BigUint> {
    // The oracle has no notion of the s range, so check it against the poset.
    let s_max = eigen_counter(g, cache_dir.as_deref())?.s_max();
    if s == 0 || s > s_max {
        return Err(Error::OutOfRange(format!("s = {} is outside 1..={} for {}", s, s_max, g)));
    }
    engine.n_gms(g, m, s)
}

fn value_output(format: TableFormat, g: GroupType, m: u64, s: Option<u32>, v: BigUint) -> String {
    match format {
        TableFormat::Json => {
            let value = u64::try_from(&v).map(serde_json::Value::from).unwrap_or_else(|_| v.to_string().into());
            let mut doc = json!({"group": g.to_string(), "m": m, "value": value});
            if let Some(s) = s {
                doc["s"] = s.into();
            }
            format!("{}\n", doc)
        }
        _ => format!("{}\n", v),
    }
}

fn emit(qp: &QuasiPolynomial, format: TableFormat, label: String) -> exlie::Result<String> {
    emit_table(qp, format, &EmitOptions { label, var: "m".into(), denominator: None })
}

fn dump_all(g: GroupType, format: TableFormat, cache_dir: &Option<PathBuf>) -> exlie::Result<String> {
    let counter = eigen_counter(g, cache_dir.as_deref())?;
    let mut columns = Vec::new();
    for s in 1..=counter.s_max() {
        let e = counter.n_gms_symbolic(s)?;
        let qp = e.to_quasipolynomial();
        columns.push((s, e, qp));
    }
    Ok(match format {
        TableFormat::Json => {
            let cols = columns
                .iter()
                .map(|(s, e, qp)| Ok(json!({"s": s, "expression": e.to_string(), "quasi_polynomial": qp.to_json_value()?})))
                .collect::<exlie::Result<Vec<_>>>()?;
            format!("{}\n", serde_json::to_string_pretty(&json!({"group": g.to_string(), "columns": cols}))?)
        }
        TableFormat::Csv => {
            let mut t = String::from("s,period,expression\n");
            for (s, e, qp) in &columns {
                t.push_str(&format!("{},{},\"{}\"\n", s, qp.period(), e));
            }
            t
        }
        TableFormat::Markdown => {
            let mut t = String::from("| s | period | N(G,m,s) |\n|---|---|---|\n");
            for (s, e, qp) in &columns {
                let shown = if e.is_zero() { "0".to_string() } else { e.to_string() };
                t.push_str(&format!("| {} | {} | {} |\n", s, qp.period(), shown));
            }
            t
        }
    })
}
