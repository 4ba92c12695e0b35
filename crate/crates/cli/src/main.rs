//! Command-line front end over the simplex mean-value toolkit.
//!
//! Subcommands: `family` (enumerate the Δ^[K] family), `verify` (run the
//! inequality campaign), `subdivide` (barycenter-average series). Reports
//! are deterministic: identical config, seed, and `--workers 1` produce
//! byte-identical files.
//!
//! Exit codes: 0 success, 1 verification failures (report still written),
//! 2 invalid configuration, 3 degenerate geometry or resource cap.

mod commands;
mod config;
mod output;

use clap::{Args, Parser, Subcommand, ValueEnum};

use hh_core::MethodChoice;

use config::{
    build_simplex, parse_simplex_source, resolve_seed, run_catalog, select_functions, CliError,
    OutputFormat, RunConfig, MAX_FAMILY_DIM,
};

#[derive(Parser)]
#[command(
    name = "hh",
    version,
    about = "Nested subsimplex families and mean-value inequality verification for convex functions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate all family members of the configured simplex.
    Family(CommonArgs),
    /// Run the verification campaign and write a JSON report.
    Verify(CommonArgs),
    /// Write the barycenter-average convergence series as CSV.
    Subdivide(CommonArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum MethodArg {
    Auto,
    Exact,
    Mc,
}

impl From<MethodArg> for MethodChoice {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Auto => MethodChoice::Auto,
            MethodArg::Exact => MethodChoice::Exact,
            MethodArg::Mc => MethodChoice::MonteCarlo,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

#[derive(Args)]
struct CommonArgs {
    /// Simplex dimension n (default 2; fixed by the file for file sources).
    #[arg(long)]
    dim: Option<usize>,

    /// Simplex source: standard | random | file:PATH.
    #[arg(long, default_value = "standard")]
    simplex: String,

    /// Master seed; overrides the HH_SEED environment variable.
    #[arg(long)]
    seed: Option<u64>,

    /// Catalog functions: comma-separated names or "all".
    #[arg(long, default_value = "all")]
    func: String,

    /// Mean-value method.
    #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
    method: MethodArg,

    /// Monte Carlo sample count.
    #[arg(long, default_value_t = 100_000)]
    samples: u64,

    /// Confidence multiplier for Monte Carlo error bounds.
    #[arg(long, default_value_t = 3.0)]
    z: f64,

    /// Deepest subdivision level for `subdivide`.
    #[arg(long, default_value_t = 4)]
    pmax: u32,

    /// Output path (default: family.json / verify_report.json / subdivide.csv).
    #[arg(long)]
    out: Option<String>,

    /// Output format; family and verify emit json, subdivide emits csv.
    #[arg(long, value_enum)]
    format: Option<FormatArg>,

    /// Add the non-convex control to an `all` selection.
    #[arg(long)]
    include_nonconvex: bool,

    /// Monte Carlo worker count; 1 is the bit-reproducible mode.
    #[arg(long, default_value_t = 1)]
    workers: usize,

    /// Progress lines on stdout.
    #[arg(long)]
    verbose: bool,
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {}", e.message());
            std::process::exit(e.exit_code());
        }
    }
}

fn run(cli: Cli) -> Result<i32, CliError> {
    let (args, kind) = match &cli.command {
        Command::Family(a) => (a, "family"),
        Command::Verify(a) => (a, "verify"),
        Command::Subdivide(a) => (a, "subdivide"),
    };

    let seed = resolve_seed(args.seed)?;
    let source = parse_simplex_source(&args.simplex, seed)?;
    let (base, dim) = build_simplex(&source, args.dim)?;

    if matches!(kind, "family" | "verify") && dim > MAX_FAMILY_DIM {
        return Err(CliError::Config(format!(
            "{kind} enumerates subsets exhaustively and supports --dim up to {MAX_FAMILY_DIM}"
        )));
    }
    if args.workers == 0 {
        return Err(CliError::Config("--workers must be at least 1".into()));
    }
    if args.samples < 2 {
        return Err(CliError::Config("--samples must be at least 2".into()));
    }
    if !(args.z.is_finite() && args.z >= 0.0) {
        return Err(CliError::Config("--z must be a nonnegative number".into()));
    }

    let default_format = if kind == "subdivide" { OutputFormat::Csv } else { OutputFormat::Json };
    let format = match args.format {
        None => default_format,
        Some(FormatArg::Json) => OutputFormat::Json,
        Some(FormatArg::Csv) => OutputFormat::Csv,
    };
    if format != default_format {
        return Err(CliError::Config(format!(
            "{kind} only supports the {} format",
            match default_format {
                OutputFormat::Json => "json",
                OutputFormat::Csv => "csv",
            }
        )));
    }

    let entries = run_catalog(dim, seed);
    let selected = select_functions(&args.func, &entries, args.include_nonconvex)?;
    if selected.is_empty() {
        return Err(CliError::Config("no functions selected".into()));
    }
    let method: MethodChoice = args.method.into();
    if method == MethodChoice::Exact {
        for &i in &selected {
            if entries[i].polynomial().is_none() {
                return Err(CliError::Config(format!(
                    "--method exact requires polynomial functions, {} has no polynomial form",
                    entries[i].name()
                )));
            }
        }
    }

    let out = args.out.clone().unwrap_or_else(|| {
        match kind {
            "family" => "family.json",
            "verify" => "verify_report.json",
            _ => "subdivide.csv",
        }
        .to_string()
    });

    let config = RunConfig {
        dim,
        simplex: source,
        seed,
        functions: selected.iter().map(|&i| entries[i].name().to_string()).collect(),
        include_nonconvex: args.include_nonconvex,
        method,
        mc_samples: args.samples,
        z: args.z,
        p_max: args.pmax,
        out,
        format,
        workers: args.workers,
    };

    match kind {
        "family" => commands::family::run(&config, &base),
        "verify" => commands::verify::run(&config, &base, &entries, &selected, args.verbose),
        _ => commands::subdivide::run(&config, &base, &entries, &selected, args.verbose),
    }
}
