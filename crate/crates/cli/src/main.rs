mod campaigns;
mod config;
mod range;
mod report;

use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use campaigns::BasisArg;
use range::Range;
use report::Report;

const SUBCOMMANDS: &[&str] = &[
    "jack",
    "char",
    "verify-main",
    "verify-jack-basis",
    "presentation",
    "coinvariants",
    "semiinfinite",
    "fusion-scan",
    "odd-scan",
    "all",
];

const WORKERS_VAR: &str = "PRINSPACE_WORKERS";

/// Exact verification campaigns for principal subspaces, Jack polynomials and fusion ideals.
#[derive(Parser, Debug)]
#[command(name = "prinspace", version, arg_required_else_help = true)]
#[command(after_help = "Exit status: 0 all checks passed, 1 a check failed, 2 usage error.\n\
    Flags may also come from --config FILE (lines of `key = value`); explicit flags win.\n\
    PRINSPACE_WORKERS caps the number of worker threads.")]
struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Shorthand for --format json
    #[arg(long, global = true)]
    json: bool,
    /// Shorthand for --format csv
    #[arg(long, global = true)]
    csv: bool,
    /// Seed for randomized sampling
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Read flags from a `key = value` file
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Jack polynomials: expansion, norm, triangularity, orthogonality
    #[command(args_override_self = true)]
    Jack(JackArgs),
    /// Characters as q-series, with cross-checks
    #[command(args_override_self = true)]
    Char(CharArgs),
    /// a_0^k v_p against the rectangular Jack vector
    #[command(name = "verify-main", args_override_self = true)]
    VerifyMain(GridArgs),
    /// Heisenberg closure against the span of Jack vectors
    #[command(name = "verify-jack-basis", args_override_self = true)]
    VerifyJackBasis(JackBasisArgs),
    /// Quadratic presentation: graded dimensions, relations, normal forms
    #[command(args_override_self = true)]
    Presentation(PresArgs),
    /// Coinvariant bases and finitized subalgebras
    #[command(args_override_self = true)]
    Coinvariants(CoinvArgs),
    /// Semi-infinite monomial bases of level-one modules
    #[command(args_override_self = true)]
    Semiinfinite(SemiArgs),
    /// Fusion ideals and their limits (report only)
    #[command(name = "fusion-scan", args_override_self = true)]
    FusionScan(FusionArgs),
    /// Exterior principal subspaces of odd lattices (report only)
    #[command(name = "odd-scan", args_override_self = true)]
    OddScan(OddArgs),
    /// Every campaign on a small default grid
    #[command(args_override_self = true)]
    All,
}

#[derive(Args, Debug)]
pub struct JackArgs {
    /// A single partition, e.g. "2,1"
    #[arg(long)]
    pub lambda: Option<String>,
    /// All partitions of these sizes
    #[arg(long)]
    pub n: Option<Range>,
    /// Comma-separated positive rationals
    #[arg(long, value_delimiter = ',', default_value = "1")]
    pub alpha: Vec<String>,
    /// Basis for the printed expansion
    #[arg(long, value_enum, default_value_t = BasisArg::M)]
    pub basis: BasisArg,
}

#[derive(Args, Debug)]
#[command(group = clap::ArgGroup::new("kind").required(true).args(["a", "principal", "finite", "coinv", "l"]))]
pub struct CharArgs {
    /// Character of A_(m)
    #[arg(long = "A", id = "a")]
    pub a: bool,
    /// Character of the principal subspace W_(m)
    #[arg(long)]
    pub principal: bool,
    /// Character of the finite window V_(m)(p)
    #[arg(long)]
    pub finite: bool,
    /// Coinvariant character
    #[arg(long)]
    pub coinv: bool,
    /// Level-one module L_i
    #[arg(long = "L", id = "l")]
    pub l: bool,
    #[arg(long, default_value = "1")]
    pub m: Range,
    #[arg(long, default_value_t = 4)]
    pub kmax: usize,
    /// Highest q power kept
    #[arg(long, default_value = "10")]
    pub qmax: String,
    #[arg(long)]
    pub p: Option<Range>,
    #[arg(long)]
    pub n: Option<Range>,
    #[arg(long)]
    pub i: Option<Range>,
}

impl CharArgs {
    pub fn kind(&self) -> &'static str {
        if self.a {
            "A"
        } else if self.principal {
            "principal"
        } else if self.finite {
            "finite"
        } else if self.coinv {
            "coinv"
        } else {
            "L"
        }
    }
}

#[derive(Args, Debug, Clone)]
pub struct GridArgs {
    #[arg(long, default_value = "1..2")]
    pub m: Range,
    #[arg(long, default_value = "1..5")]
    pub p: Range,
    #[arg(long, default_value = "1..2")]
    pub k: Range,
}

#[derive(Args, Debug)]
pub struct JackBasisArgs {
    #[command(flatten)]
    pub grid: GridArgs,
    /// Also rebuild every Jack polynomial in the rectangle from the vertex operator
    #[arg(long)]
    pub reconstruct: bool,
}

#[derive(Args, Debug)]
pub struct PresArgs {
    #[arg(long, default_value = "1..2")]
    pub m: Range,
    #[arg(long, default_value_t = 4)]
    pub kmax: usize,
    #[arg(long, default_value_t = 12)]
    pub smax: usize,
    /// Fermionic truncation order
    #[arg(long, default_value_t = 8)]
    pub zmax: usize,
    /// Random normal-form samples
    #[arg(long, default_value_t = 32)]
    pub samples: usize,
}

#[derive(Args, Debug)]
pub struct CoinvArgs {
    #[arg(long, default_value = "1..2")]
    pub m: Range,
    /// Top index N of the coinvariant quotient
    #[arg(long = "N", default_value = "0..5")]
    pub top: Range,
    /// Window sizes for the finitized subalgebra
    #[arg(long, default_value = "1..5")]
    pub n: Range,
}

#[derive(Args, Debug)]
pub struct SemiArgs {
    #[arg(long, default_value = "1..2")]
    pub m: Range,
    #[arg(long, default_value = "6")]
    pub qmax: String,
}

#[derive(Args, Debug)]
pub struct FusionArgs {
    #[arg(long, default_value = "1..2")]
    pub m: Range,
    #[arg(long, default_value = "1..4")]
    pub n: Range,
    #[arg(long, default_value_t = 4)]
    pub kmax: usize,
    /// canonical or weighted:w1,w2,... (repeatable)
    #[arg(long, default_value = "canonical")]
    pub family: Vec<String>,
    /// Extra weighted families drawn from the seed
    #[arg(long, default_value_t = 0)]
    pub random_families: usize,
}

#[derive(Args, Debug)]
pub struct OddArgs {
    #[arg(long, default_value = "1..2")]
    pub m: Range,
    #[arg(long, default_value = "1..4")]
    pub n: Range,
}

fn parse_cli(argv: Vec<String>) -> Result<Cli, ExitCode> {
    let argv = match config::splice(argv, SUBCOMMANDS) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("prinspace: {e}");
            return Err(ExitCode::from(2));
        }
    };
    Cli::try_parse_from(argv).map_err(|e| {
        let _ = e.print();
        ExitCode::from(if e.use_stderr() { 2 } else { 0 })
    })
}

fn init_workers() -> Result<(), String> {
    let Ok(v) = std::env::var(WORKERS_VAR) else { return Ok(()) };
    let n: usize = v.trim().parse().ok().filter(|&n| n > 0).ok_or(format!("{WORKERS_VAR} must be a positive integer, got {v:?}"))?;
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| e.to_string())
}

fn desk(seed: u64) -> Result<Report, String> {
    let parse = |s: &str| s.parse::<Range>();
    let grid = GridArgs { m: parse("1..2")?, p: parse("1..5")?, k: parse("1..2")? };
    let reports = vec![
        campaigns::jack_campaign(
            &JackArgs { lambda: None, n: Some(parse("1..5")?), alpha: vec!["1".into(), "2".into(), "1/2".into()], basis: BasisArg::M },
            seed,
        )?,
        campaigns::char_campaign(
            &CharArgs {
                a: false,
                principal: true,
                finite: false,
                coinv: false,
                l: false,
                m: parse("1..2")?,
                kmax: 3,
                qmax: "6".into(),
                p: None,
                n: None,
                i: None,
            },
            seed,
        )?,
        campaigns::main_campaign(&grid, seed)?,
        campaigns::jack_basis_campaign(&JackBasisArgs { grid: grid.clone(), reconstruct: true }, seed)?,
        campaigns::presentation_campaign(
            &PresArgs { m: parse("1..2")?, kmax: 3, smax: 10, zmax: 8, samples: 16 },
            seed,
        )?,
        campaigns::coinvariant_campaign(&CoinvArgs { m: parse("1..2")?, top: parse("0..4")?, n: parse("1..4")? }, seed)?,
        campaigns::semiinfinite_campaign(&SemiArgs { m: parse("1..2")?, qmax: "6".into() }, seed)?,
        campaigns::fusion_campaign(
            &FusionArgs { m: parse("1..2")?, n: parse("1..3")?, kmax: 3, family: vec!["canonical".into()], random_families: 0 },
            seed,
        )?,
        campaigns::odd_campaign(&OddArgs { m: parse("1..2")?, n: parse("1..4")? }, seed)?,
    ];
    let mut params = campaigns::Params::new();
    let mut checks = Vec::new();
    for r in reports {
        for (k, v) in r.parameters {
            params.insert(format!("{}.{k}", r.command), v);
        }
        checks.extend(r.checks);
    }
    Ok(Report::new("all", params, seed, checks))
}

fn run(cli: &Cli) -> Result<Report, String> {
    let seed = cli.seed;
    match &cli.command {
        Command::Jack(a) => campaigns::jack_campaign(a, seed),
        Command::Char(a) => campaigns::char_campaign(a, seed),
        Command::VerifyMain(a) => campaigns::main_campaign(a, seed),
        Command::VerifyJackBasis(a) => campaigns::jack_basis_campaign(a, seed),
        Command::Presentation(a) => campaigns::presentation_campaign(a, seed),
        Command::Coinvariants(a) => campaigns::coinvariant_campaign(a, seed),
        Command::Semiinfinite(a) => campaigns::semiinfinite_campaign(a, seed),
        Command::FusionScan(a) => campaigns::fusion_campaign(a, seed),
        Command::OddScan(a) => campaigns::odd_campaign(a, seed),
        Command::All => desk(seed),
    }
}

fn main() -> ExitCode {
    let cli = match parse_cli(std::env::args().collect()) {
        Ok(c) => c,
        Err(code) => return code,
    };
    if let Err(e) = init_workers() {
        eprintln!("prinspace: {e}");
        return ExitCode::from(2);
    }
    let report = match run(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("prinspace: {e}");
            return ExitCode::from(2);
        }
    };
    let format = match (cli.json, cli.csv) {
        (true, true) => {
            eprintln!("prinspace: --json and --csv are exclusive");
            return ExitCode::from(2);
        }
        (true, false) => Format::Json,
        (false, true) => Format::Csv,
        _ => cli.format,
    };
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let written = match format {
        Format::Table => report.write_table(&mut out),
        Format::Json => report.write_json(&mut out),
        Format::Csv => report.write_csv(&mut out),
    };
    if let Err(e) = written.and_then(|_| out.flush()) {
        if e.kind() != io::ErrorKind::BrokenPipe {
            eprintln!("prinspace: {e}");
            return ExitCode::from(2);
        }
    }
    if report.ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
