//! Command implementations for the `poisson-stencil` binary.
//!
//! Every command renders its whole output into a string first, so it can go
//! to stdout or to `--out` unchanged. Outputs start with a comment header
//! (the run manifest); the wall time is the only line in it that varies
//! between identical runs.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use poisson_stencil::benchmark::{run_table, BenchTable};
use poisson_stencil::scheme::{scheme_by_name, SchemeSpec};
use poisson_stencil::simulator::{run_with_observer, Boundary, SimConfig};
use poisson_stencil::stability::lambda_max;
use poisson_stencil::Error;

pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_UNKNOWN_SCHEME: i32 = 3;
pub const EXIT_RADIUS_UNSUPPORTED: i32 = 4;
pub const EXIT_DEGENERATE_NORM: i32 = 5;
pub const EXIT_NEVER_STABLE: i32 = 6;

#[derive(Debug, Parser)]
#[command(
    name = "poisson-stencil",
    version,
    about = "Explicit stencil schemes for the 2D wave equation"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the exact coefficient tables of a scheme.
    Generate {
        /// P5, C5, P9, C9, P13 or C13.
        scheme: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Search for the largest stable Courant number.
    Stability {
        #[command(flatten)]
        source: NamedOrFile,
        #[arg(long, default_value_t = 1e-7)]
        tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the standing-wave problem and report the relative L² error.
    Simulate(SimulateArgs),
    /// Reproduce one of the reference error tables.
    Bench {
        /// 1 (five-point), 2 (nine-point) or 3 (thirteen-point).
        #[arg(value_parser = clap::value_parser!(u8).range(1..=3))]
        table: u8,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct SchemeSource {
    /// Scheme name.
    #[arg(long)]
    pub scheme: Option<String>,
    /// Scheme table file in the `generate` format.
    #[arg(long)]
    pub table: Option<PathBuf>,
}

impl SchemeSource {
    fn load(&self) -> anyhow::Result<SchemeSpec> {
        match (&self.scheme, &self.table) {
            (Some(name), _) => Ok(scheme_by_name(name)?),
            (None, Some(path)) => {
                let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
                Ok(SchemeSpec::from_text(&text)?)
            }
            (None, None) => bail!("no scheme given"),
        }
    }
}

/// Positional scheme name or `--table FILE`.
#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct NamedOrFile {
    pub scheme: Option<String>,
    #[arg(long)]
    pub table: Option<PathBuf>,
}

impl From<&NamedOrFile> for SchemeSource {
    fn from(s: &NamedOrFile) -> Self {
        SchemeSource {
            scheme: s.scheme.clone(),
            table: s.table.clone(),
        }
    }
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub source: SchemeSource,
    #[arg(long)]
    pub n: usize,
    #[arg(long = "nt")]
    pub n_t: usize,
    #[arg(long)]
    pub lambda: f64,
    #[arg(long, value_enum, default_value_t = Bc::Dirichlet)]
    pub bc: Bc,
    /// Write every k-th level (and the last) as CSV into `--dump-dir`.
    #[arg(long)]
    pub dump_every: Option<usize>,
    #[arg(long, default_value = ".")]
    pub dump_dir: PathBuf,
    /// Replace the initial data and the reference solution by zero.
    #[arg(long)]
    pub zero_ic: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Bc {
    Dirichlet,
    Periodic,
}

impl From<Bc> for Boundary {
    fn from(bc: Bc) -> Self {
        match bc {
            Bc::Dirichlet => Boundary::Dirichlet,
            Bc::Periodic => Boundary::Periodic,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Md,
}

/// Provenance header written at the top of every output.
#[derive(Debug, Clone)]
pub struct RunManifest {
    pub command: String,
    pub flags: Vec<(String, String)>,
    pub outputs: Vec<String>,
    pub wall_time_s: f64,
}

impl RunManifest {
    fn new(command: &str) -> Self {
        Self {
            command: command.to_string(),
            flags: Vec::new(),
            outputs: Vec::new(),
            wall_time_s: 0.0,
        }
    }

    fn flag(mut self, name: &str, value: impl ToString) -> Self {
        self.flags.push((name.to_string(), value.to_string()));
        self
    }

    fn lines(&self) -> Vec<String> {
        let flags: Vec<String> = self.flags.iter().map(|(k, v)| format!("--{k} {v}")).collect();
        let mut lines = vec![
            format!("tool: poisson-stencil {}", env!("CARGO_PKG_VERSION")),
            format!("command: {}", self.command),
            format!("flags: {}", flags.join(" ")),
            "determinism: no randomness; identical flags give identical output apart from wall_time_s".into(),
        ];
        if !self.outputs.is_empty() {
            lines.push(format!("outputs: {}", self.outputs.join(" ")));
        }
        lines.push(format!("wall_time_s: {:.3}", self.wall_time_s));
        lines
    }

    /// `#`-prefixed comment lines.
    pub fn render_hash(&self) -> String {
        self.lines().iter().map(|l| format!("# {l}\n")).collect()
    }

    /// An HTML comment block, invisible in rendered markdown.
    pub fn render_markdown(&self) -> String {
        let mut out = String::from("<!--\n");
        for l in self.lines() {
            out.push_str(&format!("{l}\n"));
        }
        out.push_str("-->\n");
        out
    }
}

/// Five significant digits in scientific notation, e.g. `6.8938e-2`.
pub fn sci(x: f64) -> String {
    format!("{x:.4e}")
}

/// Maps an error to the process exit code.
pub fn exit_code(err: &anyhow::Error) -> i32 {
    match err.downcast_ref::<Error>() {
        Some(Error::UnknownScheme(_)) => EXIT_UNKNOWN_SCHEME,
        Some(Error::RadiusUnsupported { .. }) => EXIT_RADIUS_UNSUPPORTED,
        Some(Error::DegenerateNorm) => EXIT_DEGENERATE_NORM,
        Some(Error::NeverStable(_)) => EXIT_NEVER_STABLE,
        _ => EXIT_FAILURE,
    }
}

/// Runs a command and returns the text destined for stdout (empty when the
/// output went to `--out`).
pub fn execute(cli: &Cli) -> anyhow::Result<String> {
    let start = Instant::now();
    let (mut manifest, body, out, markdown) = match &cli.command {
        Command::Generate { scheme, out } => {
            let spec = scheme_by_name(scheme)?;
            (
                RunManifest::new("generate").flag("scheme", scheme),
                spec.to_text(),
                out,
                false,
            )
        }
        Command::Stability { source, tol, out } => {
            let (manifest, body) = stability(&source.into(), *tol)?;
            (manifest, body, out, false)
        }
        Command::Simulate(args) => {
            let (manifest, body) = simulate(args)?;
            (manifest, body, &args.out, false)
        }
        Command::Bench { table, format, out } => {
            let body = bench(*table, *format)?;
            let manifest = RunManifest::new("bench")
                .flag("table", table)
                .flag("format", format!("{format:?}").to_lowercase());
            (manifest, body, out, *format == Format::Md)
        }
    };
    if let Some(path) = out {
        manifest.outputs.insert(0, path.display().to_string());
    }
    manifest.wall_time_s = start.elapsed().as_secs_f64();
    let header = if markdown {
        manifest.render_markdown()
    } else {
        manifest.render_hash()
    };
    let text = header + &body;
    match out {
        Some(path) => {
            fs::write(path, &text).with_context(|| format!("writing {}", path.display()))?;
            Ok(String::new())
        }
        None => Ok(text),
    }
}

fn source_flags(manifest: RunManifest, source: &SchemeSource) -> RunManifest {
    match (&source.scheme, &source.table) {
        (Some(name), _) => manifest.flag("scheme", name),
        (None, Some(path)) => manifest.flag("table", path.display()),
        (None, None) => manifest,
    }
}

fn stability(source: &SchemeSource, tol: f64) -> anyhow::Result<(RunManifest, String)> {
    let spec = source.load()?;
    let limit = lambda_max(&spec, tol)?;
    let manifest = source_flags(RunManifest::new("stability"), source).flag("tol", tol);
    let body = format!(
        "scheme: {}\nlambda_max: {:.6}\nmarginal: {}\n",
        spec.name,
        limit.lambda,
        if limit.marginal { "yes" } else { "no" }
    );
    Ok((manifest, body))
}

fn simulate(args: &SimulateArgs) -> anyhow::Result<(RunManifest, String)> {
    let spec = args.source.load()?;
    let mut config = SimConfig::standing_wave(spec, args.n, args.n_t, args.lambda, args.bc.into());
    if args.zero_ic {
        config = config.with_zero_data();
    }
    if args.dump_every == Some(0) {
        bail!("--dump-every must be positive");
    }

    let mut manifest = source_flags(RunManifest::new("simulate"), &args.source)
        .flag("n", args.n)
        .flag("nt", args.n_t)
        .flag("lambda", args.lambda)
        .flag("bc", config.bc);
    if args.zero_ic {
        manifest = manifest.flag("zero-ic", true);
    }

    let mut dumps: Vec<(PathBuf, String)> = Vec::new();
    let report = run_with_observer(&config, |k, grid| {
        if let Some(every) = args.dump_every {
            if k % every == 0 || k == args.n_t {
                dumps.push((snapshot_path(&args.dump_dir, k), grid.to_csv()));
            }
        }
    })?;
    if let Some(every) = args.dump_every {
        manifest = manifest
            .flag("dump-every", every)
            .flag("dump-dir", args.dump_dir.display());
        fs::create_dir_all(&args.dump_dir).with_context(|| format!("creating {}", args.dump_dir.display()))?;
        for (path, csv) in &dumps {
            fs::write(path, csv).with_context(|| format!("writing {}", path.display()))?;
            manifest.outputs.push(path.display().to_string());
        }
    }

    let mut body = String::new();
    writeln!(body, "scheme: {}", report.scheme)?;
    writeln!(body, "n: {}", report.n)?;
    writeln!(body, "n_t: {}", report.n_t)?;
    writeln!(body, "lambda: {}", report.lambda)?;
    writeln!(body, "tau: {}", sci(report.tau))?;
    writeln!(body, "bc: {}", report.bc)?;
    writeln!(body, "E: {}", sci(report.error))?;
    writeln!(body, "unstable: {}", if report.unstable { "yes" } else { "no" })?;
    Ok((manifest, body))
}

fn snapshot_path(dir: &Path, k: usize) -> PathBuf {
    dir.join(format!("u_{k:06}.csv"))
}

fn bench(table: u8, format: Format) -> anyhow::Result<String> {
    let table = BenchTable::from_number(table).context("table must be 1, 2 or 3")?;
    let (p, c) = table.schemes();
    let rows = run_table(table)?;
    let header = [
        "n".to_string(),
        "n_t".into(),
        "lambda".into(),
        format!("E_{p}"),
        format!("E_{c}"),
        format!("ref_E_{p}"),
        format!("ref_E_{c}"),
        format!("dev_{p}"),
        format!("dev_{c}"),
    ];
    let cells: Vec<[String; 9]> = rows
        .iter()
        .map(|r| {
            [
                r.reference.n.to_string(),
                r.reference.n_t.to_string(),
                r.reference.lambda.to_string(),
                sci(r.poisson.error),
                sci(r.conventional.error),
                sci(r.reference.poisson),
                sci(r.reference.conventional),
                sci(r.poisson_deviation()),
                sci(r.conventional_deviation()),
            ]
        })
        .collect();

    let mut out = String::new();
    match format {
        Format::Csv => {
            writeln!(out, "{}", header.join(","))?;
            for row in &cells {
                writeln!(out, "{}", row.join(","))?;
            }
        }
        Format::Md => {
            writeln!(out, "Boundary: {}. Deviations are |E − ref| / ref.\n", table.boundary())?;
            writeln!(out, "| {} |", header.join(" | "))?;
            writeln!(out, "|{}", "---:|".repeat(header.len()))?;
            for row in &cells {
                writeln!(out, "| {} |", row.join(" | "))?;
            }
        }
    }
    Ok(out)
}
