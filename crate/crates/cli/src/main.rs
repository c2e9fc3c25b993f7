//! `bandcert` command-line interface.

mod path;

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use bandcert::analysis::{analyze, certify, verify, AnalysisOptions};
use bandcert::floquet::band_values;
use bandcert::graph::{builtin, parse_graph, FundamentalGraph, BUILTIN_NAMES};
use bandcert::report::{render_checks, render_text, SpectrumReport};
use bandcert::spectrum::{sample_bands, BandOptions, DEFAULT_FLAT_TOL};
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "bandcert", version, about = "Certified band spectra of periodic graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify, compute all spectra and certify every estimate.
    Analyze(RunArgs),
    /// Sweep band functions along a piecewise-linear quasimomentum path (CSV).
    Bands {
        #[command(flatten)]
        run: RunArgs,
        /// Waypoints separated by ';', components by ',' (e.g. "0,0;2pi/3,4pi/3").
        #[arg(long)]
        path: String,
        /// Samples per path segment, endpoints included.
        #[arg(long, default_value_t = 65)]
        samples: usize,
    },
    /// Certification plus torus oracle and the random preimage suite.
    Verify(RunArgs),
    /// Print the names of the built-in graphs.
    ListBuiltins,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct RunArgs {
    /// Graph file.
    #[arg(conflicts_with_all = ["builtin", "file"])]
    input: Option<PathBuf>,
    #[arg(long, conflicts_with = "file")]
    builtin: Option<String>,
    #[arg(long)]
    file: Option<PathBuf>,
    /// Grid points per dimension.
    #[arg(long)]
    grid: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_FLAT_TOL)]
    flat_tol: f64,
    /// Momentum cutoff (default 4π).
    #[arg(long)]
    zmax: Option<f64>,
    /// Energy cutoff (default (4π)²).
    #[arg(long)]
    emax: Option<f64>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Torus cells per dimension for the oracle.
    #[arg(long)]
    oracle_n: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// CSV destination for band samples.
    #[arg(long)]
    sweep_out: Option<PathBuf>,
}

enum Failure {
    Input(String),
    Certification,
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Input(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

impl RunArgs {
    fn load(&self) -> Result<(String, FundamentalGraph), Failure> {
        if let Some(name) = &self.builtin {
            return Ok((name.clone(), builtin(name)?));
        }
        let Some(path) = self.file.as_ref().or(self.input.as_ref()) else {
            return Err(Failure::Input("no input: pass a graph file or --builtin NAME".into()));
        };
        let text = fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
        let g = parse_graph(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
        Ok((path.display().to_string(), g))
    }

    fn options(&self) -> Result<AnalysisOptions, Failure> {
        let mut opts = AnalysisOptions {
            bands: BandOptions { grid: self.grid, flat_tol: self.flat_tol, ..BandOptions::default() },
            ..AnalysisOptions::default()
        };
        if let Some(n) = self.grid {
            if n < 2 {
                return Err(Failure::Input(format!("--grid must be at least 2, got {n}")));
            }
        }
        if let Some(n) = self.oracle_n {
            if n < 3 {
                return Err(Failure::Input(format!("--oracle-n must be at least 3, got {n}")));
            }
        }
        for (flag, v) in [("--flat-tol", Some(self.flat_tol)), ("--zmax", self.zmax), ("--emax", self.emax)] {
            if let Some(v) = v {
                if !(v > 0.0 && v.is_finite()) {
                    return Err(Failure::Input(format!("{flag} must be positive, got {v}")));
                }
            }
        }
        if let Some(z) = self.zmax {
            opts.z_max = z;
        }
        if let Some(e) = self.emax {
            opts.e_max = e;
        }
        Ok(opts)
    }
}

fn write_csv(dest: Option<&PathBuf>, header: Vec<String>, rows: impl Iterator<Item = Vec<f64>>) -> Outcome {
    let sink: Box<dyn Write> = match dest {
        Some(p) => Box::new(fs::File::create(p).map_err(|e| Failure::Input(format!("{}: {e}", p.display())))?),
        None => Box::new(io::stdout().lock()),
    };
    let mut w = csv::Writer::from_writer(sink);
    w.write_record(&header)?;
    for row in rows {
        w.write_record(row.iter().map(|x| format!("{x:?}")))?;
    }
    w.flush()?;
    Ok(())
}

fn header(first: &[&str], dim: usize, nu: usize) -> Vec<String> {
    first
        .iter()
        .map(|s| s.to_string())
        .chain((1..=dim).map(|i| format!("theta{i}")))
        .chain((1..=nu).map(|n| format!("lambda{n}")))
        .collect()
}

fn emit(report: &SpectrumReport, format: Format, text: impl FnOnce(&SpectrumReport) -> String) -> Outcome {
    let out = match format {
        Format::Json => report.to_json() + "\n",
        Format::Text => text(report),
    };
    io::stdout().lock().write_all(out.as_bytes())?;
    if report.all_passed {
        Ok(())
    } else {
        Err(Failure::Certification)
    }
}

fn cmd_analyze(args: &RunArgs) -> Outcome {
    let (label, g) = args.load()?;
    let opts = args.options()?;
    if let Some(dest) = &args.sweep_out {
        let samples = sample_bands(&g, opts.bands.grid.unwrap_or_else(|| bandcert::spectrum::default_grid(g.dim())))?;
        let rows = samples.into_iter().map(|s| s.theta.into_iter().chain(s.lambdas).collect());
        write_csv(Some(dest), header(&[], g.dim(), g.num_vertices()), rows)?;
    }
    let a = analyze(g, &opts)?;
    let cert = certify(&a)?;
    emit(&SpectrumReport::new(label, &a, cert), args.format, render_text)
}

fn cmd_bands(args: &RunArgs, path: &str, samples: usize) -> Outcome {
    let (_, g) = args.load()?;
    args.options()?;
    if samples < 2 {
        return Err(Failure::Input(format!("--samples must be at least 2, got {samples}")));
    }
    let waypoints = path::parse_path(path, g.dim()).map_err(Failure::Input)?;
    let mut rows = Vec::new();
    for (s, theta) in path::sample_path(&waypoints, samples) {
        let l = band_values(&g, &theta)?;
        rows.push(std::iter::once(s).chain(l.theta).chain(l.lambdas).collect());
    }
    write_csv(args.sweep_out.as_ref(), header(&["s"], g.dim(), g.num_vertices()), rows.into_iter())
}

fn cmd_verify(args: &RunArgs) -> Outcome {
    let (label, g) = args.load()?;
    let opts = args.options()?;
    let a = analyze(g, &opts)?;
    let cert = verify(&a, args.oracle_n, args.seed)?;
    let report = SpectrumReport::new(label, &a, cert);
    emit(&report, args.format, |r| {
        let verdict = if r.all_passed { "PASS" } else { "FAIL" };
        format!("verify {}: {verdict}\n{}", r.input, render_checks(&r.certification))
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let outcome = match &cli.command {
        Command::Analyze(args) => cmd_analyze(args),
        Command::Bands { run, path, samples } => cmd_bands(run, path, *samples),
        Command::Verify(args) => cmd_verify(args),
        Command::ListBuiltins => {
            BUILTIN_NAMES.iter().for_each(|n| println!("{n}"));
            Ok(())
        }
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Certification) => {
            eprintln!("error: certification failed");
            ExitCode::from(2)
        }
    }
}
