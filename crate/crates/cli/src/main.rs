use clap::{Parser, Subcommand};
use std::collections::BTreeMap;
use std::process::ExitCode;
use thetahyp::catalog::Registry;
use thetahyp::report::Report;
use thetahyp::suite::{run_suite, RunConfig};
use thetahyp::Error;

#[derive(Parser)]
#[command(name = "thetahyp", version, about = "Verify elliptic hypergeometric identities numerically and as exact series")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run numeric identities and series checks over seeded samples.
    Verify {
        /// Comma-separated check ids.
        #[arg(long, value_delimiter = ',')]
        ids: Vec<String>,
        #[arg(long)]
        all: bool,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        /// Tolerance for every numeric identity.
        #[arg(long)]
        tol: Option<f64>,
        /// Per-id tolerance, `id=value`; may be repeated.
        #[arg(long = "tol-for", value_parser = parse_override)]
        tol_for: Vec<(String, f64)>,
        #[arg(long)]
        order: Option<i64>,
        #[arg(long)]
        threads: Option<usize>,
        /// JSON run config; flags override its values.
        #[arg(long)]
        config: Option<String>,
        #[arg(long)]
        out: Option<String>,
    },
    /// List registered checks.
    List {
        #[arg(long)]
        json: bool,
    },
    /// Run exact series checks only.
    SeriesCheck {
        #[arg(long, value_delimiter = ',', required = true)]
        ids: Vec<String>,
        #[arg(long)]
        order: Option<i64>,
        #[arg(long)]
        out: Option<String>,
    },
}

fn parse_override(s: &str) -> Result<(String, f64), String> {
    let (id, v) = s.split_once('=').ok_or("expected id=value")?;
    let v: f64 = v.parse().map_err(|e| format!("{e}"))?;
    Ok((id.to_string(), v))
}

fn load_config(path: &Option<String>) -> Result<RunConfig, Error> {
    match path {
        None => Ok(RunConfig::default()),
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| Error::Config(format!("{p}: {e}")))?;
            serde_json::from_str(&text).map_err(|e| Error::Config(format!("{p}: {e}")))
        }
    }
}

fn print_summary(report: &Report) {
    for r in &report.results {
        let status = format!("{:?}", r.status).to_uppercase();
        let err = match (&r.rel_error, &r.abs_error, &r.error, &r.detail) {
            (_, _, Some(e), _) => format!("error: {e}"),
            (_, _, _, Some(d)) => d.clone(),
            (Some(rel), _, _, _) => format!("rel {rel:.2e}"),
            (None, Some(abs), _, _) => format!("abs {abs:.2e}"),
            _ => String::new(),
        };
        println!("{status:5} {}[{}] {err}", r.id, r.index);
    }
    let s = report.summary;
    println!(
        "{} checks: {} passed, {} failed, {} errors ({:.1}s wall)",
        s.total, s.passed, s.failed, s.errors, report.timings.wall_seconds
    );
}

fn finish(report: Report, out: Option<String>) -> Result<ExitCode, Error> {
    print_summary(&report);
    if let Some(path) = out.or_else(|| report.config.output_path.clone()) {
        std::fs::write(&path, report.to_json()).map_err(|e| Error::Config(format!("{path}: {e}")))?;
    }
    Ok(if report.all_passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    let registry = Registry::standard();
    match cli.command {
        Command::List { json } => {
            let manifest = registry.manifest();
            if json {
                println!("{}", serde_json::to_string_pretty(&manifest).expect("manifest serialises"));
            } else {
                for m in manifest {
                    println!("{:28} {:8} {}", m.id, m.kind, m.statement);
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            ids,
            all,
            samples,
            seed,
            tol,
            tol_for,
            order,
            threads,
            config,
            out,
        } => {
            let mut c = load_config(&config)?;
            if !ids.is_empty() {
                c.identity_ids = ids;
            }
            c.all |= all;
            c.samples_per_identity = samples.or(c.samples_per_identity);
            c.seed = seed.unwrap_or(c.seed);
            c.tolerance = tol.or(c.tolerance);
            let extra: BTreeMap<String, f64> = tol_for.into_iter().collect();
            c.tolerance_overrides.extend(extra);
            c.series_order = order.or(c.series_order);
            c.threads = threads.unwrap_or(c.threads);
            if out.is_some() {
                c.output_path = out.clone();
            }
            let report = run_suite(&registry, &c)?;
            finish(report, out)
        }
        Command::SeriesCheck { ids, order, out } => {
            for id in &ids {
                if registry.series(id).is_none() {
                    return Err(Error::UnknownId(id.clone()));
                }
            }
            let c = RunConfig {
                series_order: order,
                ..RunConfig::for_ids(&ids)
            };
            let report = run_suite(&registry, &c)?;
            finish(report, out)
        }
    }
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
