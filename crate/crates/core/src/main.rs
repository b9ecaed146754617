use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use bispec::bounds::{simplified_bound, EQUALITY_BAND};
use bispec::extremal::{
    extremal_graph, reproduce_table, rho_e_oracle, verify_twin_characterization, OracleLimits, OracleMode,
};
use bispec::graph::from_partition;
use bispec::report::{self, BoundReport, ReportRow, RhoReport};
use bispec::spectral::{self, power_iteration, MAX_ITERATIONS};
use bispec::{BipartiteGraph, Error, ExactRadical, Family, Partition, Result};

const CAP_ENV: &str = "SPECTRAL_MAX_E";

#[derive(Parser)]
#[command(name = "bispec", version, about = "Spectral radii of bipartite graphs with e edges")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Spectral radius of a graph file, a named family, or the graph of a partition.
    Rho(RhoArgs),
    /// Extremal non-complete graph with e edges.
    Extremal {
        #[arg(long)]
        e: u64,
    },
    /// K- versus K+ for every even e <= max-e with e-1 and e+1 composite.
    Table {
        #[arg(long, default_value_t = 100)]
        max_e: u64,
    },
    /// Check that the maximum spectral radius falls below B(e) exactly for twin-prime e.
    VerifyTwin {
        #[arg(long, default_value_t = 4)]
        from: u64,
        #[arg(long, default_value_t = 40)]
        to: u64,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Maximum spectral radius over non-complete graphs with e edges, by search.
    Oracle {
        #[arg(long)]
        e: u64,
        /// Search every 0/1 matrix instead of partition graphs.
        #[arg(long)]
        exhaustive: bool,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Degree-sequence bound of the graph of a partition at descent s.
    Bound {
        #[arg(long)]
        partition: Partition,
        #[arg(long)]
        s: usize,
    },
}

#[derive(Args)]
struct RunArgs {
    /// Worker threads (default: all cores).
    #[arg(long)]
    jobs: Option<usize>,
    /// Raise the largest e the search accepts.
    #[arg(long)]
    max_e_cap: Option<u64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyName {
    Complete,
    Kminus,
    Kplus,
    Ksube,
    Esubk,
}

#[derive(Args)]
struct RhoArgs {
    /// Graph file: a line `p q`, then p rows of q 0/1 digits.
    #[arg(long, conflicts_with_all = ["family", "partition"])]
    file: Option<PathBuf>,
    #[arg(long, value_enum, requires_all = ["p", "q"], conflicts_with = "partition")]
    family: Option<FamilyName>,
    #[arg(long)]
    p: Option<usize>,
    #[arg(long)]
    q: Option<usize>,
    /// Edge count, for ksube and esubk.
    #[arg(long)]
    e: Option<usize>,
    /// Comma-separated nonincreasing parts.
    #[arg(long)]
    partition: Option<Partition>,
    /// Relative residual at which power iteration stops.
    #[arg(long, default_value_t = spectral::DEFAULT_TOL)]
    tol: f64,
    /// Also print the closed form, when one is known.
    #[arg(long)]
    exact: bool,
}

fn limits(run: &RunArgs) -> Result<OracleLimits> {
    if let Some(cap) = run.max_e_cap {
        return Ok(OracleLimits::uniform(cap));
    }
    match std::env::var(CAP_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map(OracleLimits::uniform)
            .map_err(|_| Error::InvalidInput(format!("{CAP_ENV}={v:?} is not a nonnegative integer"))),
        Err(_) => Ok(OracleLimits::default()),
    }
}

fn thread_pool(run: &RunArgs) -> Result<rayon::ThreadPool> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Some(j) = run.jobs {
        if j == 0 {
            return Err(Error::InvalidInput("--jobs must be at least 1".into()));
        }
        b = b.num_threads(j);
    }
    b.build().map_err(|e| Error::InvalidInput(format!("thread pool: {e}")))
}

fn family(args: &RhoArgs, name: FamilyName) -> Result<Family> {
    let (p, q) = (args.p.unwrap_or(0), args.q.unwrap_or(0));
    let need_e = || args.e.ok_or_else(|| Error::InvalidInput("--e is required for ksube and esubk".into()));
    Ok(match name {
        FamilyName::Complete => Family::Complete { p, q },
        FamilyName::Kminus => Family::KMinus { p, q },
        FamilyName::Kplus => Family::KPlus { p, q },
        FamilyName::Ksube => Family::KSubE { p, q, e: need_e()? },
        FamilyName::Esubk => Family::ESubK { p, q, e: need_e()? },
    })
}

fn closed_form(f: &Family) -> Result<Option<ExactRadical>> {
    Ok(Some(match *f {
        Family::Complete { p, q } => spectral::rho_complete(p, q)?,
        Family::KMinus { p, q } => spectral::rho_k_minus(p, q)?,
        Family::KPlus { p, q } => spectral::rho_k_plus(p, q)?,
        Family::KSubE { p, q, e } => spectral::rho_k_sub_e(p, q, e)?,
        Family::ESubK { p, q, e } => spectral::rho_e_sub_k(p, q, e)?,
        Family::FromPartition { ref partition } => return Ok(bispec::bounds::exact_for_partition(partition)),
    }))
}

fn rho(args: &RhoArgs) -> Result<RhoReport> {
    if !(args.tol > 0.0 && args.tol < 1.0) {
        return Err(Error::InvalidInput(format!("--tol must lie in (0, 1), got {}", args.tol)));
    }
    let (source, g, fam): (String, BipartiteGraph, Option<Family>) = if let Some(path) = &args.file {
        (path.display().to_string(), BipartiteGraph::read_file(path)?, None)
    } else if let Some(name) = args.family {
        let f = family(args, name)?;
        (f.to_string(), f.build()?, Some(f))
    } else if let Some(d) = &args.partition {
        let f = Family::FromPartition { partition: d.clone() };
        (f.to_string(), from_partition(d), Some(f))
    } else {
        return Err(Error::InvalidInput("give one of --file, --family or --partition".into()));
    };
    let exact = match (&fam, args.exact) {
        (Some(f), true) => closed_form(f)?,
        _ => None,
    };
    let r = power_iteration(&g, args.tol, MAX_ITERATIONS, false)?;
    Ok(RhoReport {
        source,
        p: g.p(),
        q: g.q(),
        edges: g.edge_count(),
        isolated_vertices: g.has_isolated_vertices(),
        rho: r.rho,
        residual: r.residual,
        iterations: r.iterations,
        exact,
    })
}

fn bound(d: &Partition, s: usize) -> Result<BoundReport> {
    let b = simplified_bound(d, s)?;
    let rho = spectral::spectral_radius(&from_partition(d), spectral::DEFAULT_TOL)?.rho;
    Ok(BoundReport {
        partition: d.clone(),
        equality: (b.phi - rho).abs() <= EQUALITY_BAND,
        bound: b,
        rho,
        distinct_values: d.distinct_values(),
    })
}

fn run(cli: &Cli) -> Result<(String, bool)> {
    let fmt = cli.format;
    let out = match &cli.command {
        Command::Rho(args) => {
            let r = rho(args)?;
            match fmt {
                Format::Text => r.text(),
                Format::Csv => r.csv()?,
                Format::Json => report::to_json(&r)?,
            }
        }
        Command::Extremal { e } => {
            let v = extremal_graph(*e)?;
            match fmt {
                Format::Text => report::extremal_text(&v),
                Format::Csv => report::to_csv([ReportRow::from(&v)])?,
                Format::Json => report::to_json(&v)?,
            }
        }
        Command::Table { max_e } => {
            let rows = reproduce_table(*max_e)?;
            match fmt {
                Format::Text => report::table_text(&rows),
                Format::Csv => report::to_csv(rows.iter().map(ReportRow::from))?,
                Format::Json => report::to_json(&rows)?,
            }
        }
        Command::VerifyTwin { from, to, run } => {
            let limits = limits(run)?;
            let rows = thread_pool(run)?.install(|| verify_twin_characterization(*from, *to, limits))?;
            let ok = rows.iter().all(|r| r.pass);
            let out = match fmt {
                Format::Text => report::verify_text(&rows),
                Format::Csv => report::to_csv(rows.iter().map(ReportRow::from))?,
                Format::Json => report::to_json(&rows)?,
            };
            return Ok((out, ok));
        }
        Command::Oracle { e, exhaustive, run } => {
            let mode = if *exhaustive { OracleMode::Exhaustive } else { OracleMode::PartitionLevel };
            let limits = limits(run)?;
            let r = thread_pool(run)?.install(|| rho_e_oracle(*e, mode, limits))?;
            match fmt {
                Format::Text => report::oracle_text(&r),
                Format::Csv => report::oracle_csv(&r)?,
                Format::Json => report::to_json(&r)?,
            }
        }
        Command::Bound { partition, s } => {
            let b = bound(partition, *s)?;
            match fmt {
                Format::Text => b.text(),
                Format::Csv => b.csv()?,
                Format::Json => report::to_json(&b)?,
            }
        }
    };
    Ok((out, true))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((out, ok)) => {
            print!("{out}");
            if !out.ends_with('\n') {
                println!();
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
