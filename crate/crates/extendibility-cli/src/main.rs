//! `brauer`: command-line access to the extendibility library.
//!
//! Exit codes: 0 success, 1 a validation check failed, 2 usage or input error, 3 internal
//! assertion.

use std::collections::BTreeMap;
use std::fs::{self, File, OpenOptions};
use std::io::{Read, Seek, SeekFrom, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use extendibility::brauer::{brauer_triangle, is_physical, isotropic_line, separable_region, werner_line};
use extendibility::casimir::{chi_u, xi_so};
use extendibility::definetti::{region_definetti_with, region_limit};
use extendibility::geometry::{Point, Region};
use extendibility::ogroup::{branch_u_to_o, modify, newell_littlewood, tensor_o, OLabel};
use extendibility::oracle::{region_oracle, Mode, OracleConfig};
use extendibility::partitions::{lr_cache_export, lr_cache_import, lr_coefficient, tensor_u, Partition};
use extendibility::twosided::{region_closed_form_with, Case, CurveForm};
use extendibility::validation::{invariant_suites, run_acceptance, Options, LIMIT_SEED};
use extendibility::Error;

#[derive(Parser, Debug)]
#[command(name = "brauer", version, about = "Extendibility regions of Brauer states")]
struct Cli {
    #[command(flatten)]
    config: Config,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Config {
    /// Curve samples for closed-form regions.
    #[arg(long, global = true, env = "BRAUER_RESOLUTION", default_value_t = 720)]
    resolution: usize,
    /// Angles in the oracle sweep.
    #[arg(long, global = true, env = "BRAUER_ANGLES", default_value_t = 720)]
    angles: usize,
    /// Geometric tolerance for membership queries.
    #[arg(long, global = true, env = "BRAUER_TOL", default_value_t = 1e-9)]
    tol: f64,
    /// Largest matrix dimension the oracle may build.
    #[arg(long, global = true, env = "BRAUER_CAP", default_value_t = 1024)]
    cap: usize,
    /// JSON file persisting Littlewood–Richardson coefficients between runs.
    #[arg(long, global = true, env = "BRAUER_CACHE")]
    cache: Option<PathBuf>,
    #[arg(long, global = true, env = "BRAUER_FORMAT", value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Seed for sampled regions.
    #[arg(long, global = true, env = "BRAUER_SEED", default_value_t = LIMIT_SEED)]
    seed: u64,
    /// Write the result here instead of standard output.
    #[arg(long, global = true, env = "BRAUER_OUTPUT")]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Svg,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Littlewood–Richardson coefficient c^λ_{μν}.
    Lr(Triple),
    /// Newell–Littlewood coefficient N_{λμν}.
    Nl(Triple),
    /// U(d) tensor product of two irreps.
    TensorU {
        #[arg(long)]
        mu: Partition,
        #[arg(long)]
        nu: Partition,
        #[arg(long)]
        d: usize,
    },
    /// O(d) tensor product of two irreps.
    TensorO {
        #[arg(long)]
        a: OLabel,
        #[arg(long)]
        b: OLabel,
        #[arg(long)]
        d: usize,
    },
    /// Restriction of a U(d) irrep to O(d).
    Branch {
        #[arg(long)]
        label: Partition,
        #[arg(long)]
        d: usize,
    },
    /// Modification rule for a possibly non-standard O(d) label.
    Modify {
        #[arg(long)]
        label: OLabel,
        #[arg(long)]
        d: usize,
    },
    /// Quadratic Casimir eigenvalue.
    Casimir {
        #[arg(long, value_enum)]
        algebra: AlgebraArg,
        #[arg(long)]
        label: Partition,
        #[arg(long)]
        d: usize,
    },
    /// Compute a region in the (f, b) plane.
    Region {
        #[command(subcommand)]
        which: RegionCommand,
    },
    /// Test a point against a reference set.
    Check {
        #[arg(long, allow_hyphen_values = true)]
        f: f64,
        #[arg(long, allow_hyphen_values = true)]
        b: f64,
        #[arg(long)]
        d: usize,
        #[arg(long, value_enum)]
        query: Query,
    },
    /// Render a region JSON file as SVG.
    Plot {
        #[arg(long)]
        input: PathBuf,
        /// Dimension for the separable reference rectangle.
        #[arg(long)]
        d: Option<usize>,
    },
    /// Run the invariant suites and the acceptance criteria.
    Validate {
        /// Only these acceptance criteria (1–9); all when omitted.
        #[arg(long, value_delimiter = ',')]
        criteria: Vec<u8>,
        /// Skip the acceptance criteria.
        #[arg(long)]
        suites_only: bool,
        /// Report runtime budgets without failing on them.
        #[arg(long)]
        no_budgets: bool,
    },
}

#[derive(Args, Debug)]
struct Triple {
    #[arg(long)]
    lambda: Partition,
    #[arg(long)]
    mu: Partition,
    #[arg(long)]
    nu: Partition,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum AlgebraArg {
    U,
    So,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Query {
    Triangle,
    Separable,
    Werner,
    Isotropic,
}

#[derive(Subcommand, Debug)]
enum RegionCommand {
    /// n-extendible de Finetti region.
    Definetti {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        d: usize,
        /// Evaluate every O(d) restriction, not only the extremal ones.
        #[arg(long)]
        exhaustive: bool,
    },
    /// Closed-form (n,m)-extendible region.
    Twosided {
        /// `1,2`, `1,3` or `2,2`.
        #[arg(long)]
        case: Case,
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = CurveForm::Printed)]
        curve: CurveForm,
    },
    /// Numerical range of the pair-averaged operators.
    Oracle {
        /// `definetti:N` or `twosided:N,M`.
        #[arg(long)]
        mode: Mode,
        #[arg(long)]
        d: usize,
    },
    /// Sampled n → ∞ de Finetti region.
    Limit {
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = 100_000)]
        samples: usize,
    },
}

/// A failure mapped to an exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure { code: if e.is_internal() { 3 } else { 2 }, message: e.to_string() }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure { code: 2, message: e.to_string() }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: 2, message: message.into() }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: &Cli) -> Result<u8, Failure> {
    let cfg = &cli.config;
    if cfg.resolution == 0 || cfg.angles == 0 || cfg.cap == 0 || !(cfg.tol > 0.0) {
        return Err(usage("resolution, angles, cap and tol must be positive"));
    }
    if let Some(path) = &cfg.cache {
        load_cache(path)?;
    }
    let (text, code) = execute(cfg, &cli.command)?;
    emit(cfg, &text)?;
    if let Some(path) = &cfg.cache {
        store_cache(path)?;
    }
    Ok(code)
}

fn execute(cfg: &Config, command: &Command) -> Result<(String, u8), Failure> {
    let value = |v: Value| Ok((v.to_string(), 0));
    match command {
        Command::Lr(t) => value(json!(lr_coefficient(&t.lambda, &t.mu, &t.nu))),
        Command::Nl(t) => value(json!(newell_littlewood(&t.lambda, &t.mu, &t.nu))),
        Command::TensorU { mu, nu, d } => value(tensor_u(mu, nu, *d).to_json()),
        Command::TensorO { a, b, d } => value(tensor_o(a, b, *d)?.to_json()),
        Command::Branch { label, d } => value(branch_u_to_o(label, *d)?.to_json()),
        Command::Modify { label, d } => value(match modify(&label.shape, label.associate, *d) {
            Some((sign, l)) => json!({ "sign": sign, "label": l.to_string() }),
            None => Value::Null,
        }),
        Command::Casimir { algebra, label, d } => value(json!(match algebra {
            AlgebraArg::U => chi_u(label, *d)?,
            AlgebraArg::So => xi_so(label, *d)?,
        })),
        Command::Region { which } => Ok((render(cfg, &region(cfg, which)?, None), 0)),
        Command::Check { f, b, d, query } => value(check(cfg, Point::new(*f, *b), *d, *query)?),
        Command::Plot { input, d } => {
            let text = fs::read_to_string(input)?;
            let v: Value = serde_json::from_str(&text).map_err(|e| usage(format!("{}: {e}", input.display())))?;
            let r = Region::from_json(&v)?;
            Ok((r.to_svg(*d), 0))
        }
        Command::Validate { criteria, suites_only, no_budgets } => Ok(validate(criteria, *suites_only, *no_budgets)),
    }
}

fn region(cfg: &Config, which: &RegionCommand) -> Result<Region, Failure> {
    Ok(match which {
        RegionCommand::Definetti { n, d, exhaustive } => region_definetti_with(*n, *d, *exhaustive)?,
        RegionCommand::Twosided { case, d, curve } => region_closed_form_with(*case, *d, cfg.resolution, *curve)?,
        RegionCommand::Oracle { mode, d } => {
            let config = OracleConfig { cap: cfg.cap, angles: cfg.angles, ..OracleConfig::default() };
            region_oracle(*mode, *d, &config)?
        }
        RegionCommand::Limit { d, samples } => region_limit(*d, *samples, cfg.seed)?,
    })
}

fn render(cfg: &Config, r: &Region, d: Option<usize>) -> String {
    match cfg.format {
        Format::Json => r.to_json().to_string(),
        Format::Csv => r.to_csv(),
        Format::Svg => {
            let d = d.or_else(|| r.meta().get("d").and_then(Value::as_u64).map(|d| d as usize));
            r.to_svg(d)
        }
    }
}

fn check(cfg: &Config, p: Point, d: usize, query: Query) -> Result<Value, Failure> {
    let tol = cfg.tol;
    let (inside, distance) = match query {
        Query::Triangle => {
            let t = brauer_triangle();
            (is_physical(p, tol), t.distance(p))
        }
        Query::Separable => {
            let s = separable_region(d)?;
            (s.contains(p, tol), s.distance(p))
        }
        Query::Werner => {
            let dist = werner_line(d)?.distance(p);
            (dist <= tol, dist)
        }
        Query::Isotropic => {
            let dist = isotropic_line(d)?.distance(p);
            (dist <= tol, dist)
        }
    };
    let name = format!("{query:?}").to_lowercase();
    Ok(json!({ "query": name, "f": p.f, "b": p.b, "d": d, "inside": inside, "distance": distance }))
}

fn validate(criteria: &[u8], suites_only: bool, no_budgets: bool) -> (String, u8) {
    let mut lines = Vec::new();
    let mut ok = true;
    for r in invariant_suites() {
        ok &= r.passed;
        lines.push(r.to_string());
        lines.extend(r.notes.iter().map(|n| format!("    {n}")));
    }
    if !suites_only {
        let opts = Options { enforce_budgets: !no_budgets, ..Options::default() };
        for r in run_acceptance(&opts, criteria, |r| eprintln!("{r}")) {
            ok &= r.passed;
            lines.push(r.to_string());
            lines.extend(r.notes.iter().map(|n| format!("    {n}")));
        }
    }
    (lines.join("\n"), if ok { 0 } else { 1 })
}

fn emit(cfg: &Config, text: &str) -> Result<(), Failure> {
    match &cfg.output {
        Some(path) => {
            let mut body = text.to_string();
            if !body.ends_with('\n') {
                body.push('\n');
            }
            fs::write(path, body)?;
        }
        None => {
            let mut out = std::io::stdout().lock();
            match writeln!(out, "{}", text.trim_end_matches('\n')) {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => return Err(e.into()),
                _ => {}
            }
        }
    }
    Ok(())
}

fn load_cache(path: &Path) -> Result<(), Failure> {
    if !path.exists() {
        return Ok(());
    }
    let file = File::open(path)?;
    file.lock_shared()?;
    let mut text = String::new();
    (&file).read_to_string(&mut text)?;
    file.unlock()?;
    if text.trim().is_empty() {
        return Ok(());
    }
    let entries: BTreeMap<String, u64> =
        serde_json::from_str(&text).map_err(|e| usage(format!("cache {}: {e}", path.display())))?;
    lr_cache_import(&entries)?;
    Ok(())
}

fn store_cache(path: &Path) -> Result<(), Failure> {
    let mut file = OpenOptions::new().create(true).truncate(false).read(true).write(true).open(path)?;
    file.lock()?;
    let mut existing = String::new();
    file.read_to_string(&mut existing)?;
    let mut merged: BTreeMap<String, u64> = serde_json::from_str(&existing).unwrap_or_default();
    merged.extend(lr_cache_export());
    let body = serde_json::to_string_pretty(&merged).expect("string keys serialize");
    file.set_len(0)?;
    file.seek(SeekFrom::Start(0))?;
    file.write_all(body.as_bytes())?;
    file.write_all(b"\n")?;
    file.unlock()?;
    Ok(())
}
