//! Command-line front end. [`run`] does all the work and returns the text to
//! print, so the binary is a thin shell and tests can call it in-process.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::engine::{
    betti_series, chi_y_exp, chi_y_from_hodge, chi_y_product, deformation_dims, hh_dims,
    hilb_hodge, hilb_series, nested_hodge, sym_power_twisted_hodge, EngineError,
};
use crate::render::{render_polynomial, render_series, RenderFormat};
use crate::series::Monomial;
use crate::surface::{load_dataset, preset, DataError, SurfaceDataset, PRESET_NAMES};
use crate::verify::verify_dataset;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_POWERS: i32 = 2;
pub const EXIT_VERIFY: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "hilbhodge", version, about = "Twisted Hodge numbers of Hilbert schemes of points on surfaces")]
pub struct Cli {
    /// Worker threads for the parallel sums (results do not depend on it).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct Source {
    /// Built-in dataset (see `hilbhodge presets`).
    #[arg(long)]
    pub preset: Option<String>,
    /// Dataset JSON file.
    #[arg(long)]
    pub input: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ChiYMethod {
    Product,
    Exp,
    Hodge,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Hodge numbers of Hilb^n S with coefficients in L_n.
    Hilb {
        #[command(flatten)]
        source: Source,
        /// A single n.
        #[arg(short = 'n', required_unless_present = "upto", conflicts_with = "upto")]
        n: Option<u32>,
        /// The whole series up to t^N.
        #[arg(short = 'N', id = "upto")]
        upto: Option<u32>,
        #[arg(long, value_enum)]
        format: Option<RenderFormat>,
    },
    /// Hodge numbers of S^(a) with coefficients in (L^k)_(a).
    Sym {
        #[command(flatten)]
        source: Source,
        #[arg(short = 'a')]
        a: u32,
        #[arg(short = 'k', default_value_t = 1)]
        k: u32,
        #[arg(long, value_enum, default_value = "diamond")]
        format: RenderFormat,
    },
    /// Hodge numbers of the nested Hilbert scheme Hilb^{n,n+1} S.
    Nested {
        #[command(flatten)]
        source: Source,
        #[arg(short = 'n')]
        n: u32,
        #[arg(long, value_enum, default_value = "diamond")]
        format: RenderFormat,
    },
    /// chi_{-y} genera of Hilb^n S with coefficients, up to t^N.
    Chiy {
        #[command(flatten)]
        source: Source,
        #[arg(short = 'N')]
        upto: u32,
        #[arg(long, value_enum, default_value = "product")]
        method: ChiYMethod,
        #[arg(long, value_enum, default_value = "json")]
        format: RenderFormat,
    },
    /// Betti numbers of Hilb^n S for n <= N.
    Betti {
        #[command(flatten)]
        source: Source,
        #[arg(short = 'N')]
        upto: u32,
    },
    /// Hochschild homology of Hilb^n S with coefficients in L_n.
    Hh {
        #[command(flatten)]
        source: Source,
        #[arg(short = 'n')]
        n: u32,
    },
    /// Cohomology of the tangent bundle of Hilb^n S.
    Deform {
        #[command(flatten)]
        source: Source,
        #[arg(short = 'n')]
        n: u32,
        #[arg(long, default_value_t = 3)]
        qmax: u32,
    },
    /// Run every consistency check up to t^N.
    Verify {
        #[command(flatten)]
        source: Source,
        #[arg(short = 'N', default_value_t = 6)]
        upto: u32,
    },
    /// List the built-in datasets.
    Presets,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Data(#[from] DataError),
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error("{0}")]
    Input(String),
    #[error("verification failed: {0}")]
    Verify(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Engine(EngineError::InsufficientPowers { .. }) => EXIT_POWERS,
            CliError::Verify(_) => EXIT_VERIFY,
            _ => EXIT_INPUT,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

fn load(source: &Source, stderr: &mut String) -> Result<SurfaceDataset, CliError> {
    let ds = match (&source.preset, &source.input) {
        (Some(name), _) => preset(name)?,
        (None, Some(path)) => load_dataset(path)?,
        (None, None) => return Err(CliError::Input("either --preset or --input is required".into())),
    };
    let report = ds.validate()?;
    for w in report.warnings {
        stderr.push_str(&format!("warning: {w}\n"));
    }
    Ok(ds)
}

fn execute(command: &Command, stderr: &mut String) -> Result<String, CliError> {
    match command {
        Command::Hilb { source, n, upto, format } => {
            let ds = load(source, stderr)?;
            match (n, upto) {
                (Some(n), _) => {
                    let poly = hilb_hodge(&ds.table, *n)?;
                    Ok(render_polynomial(*n, &poly, format.unwrap_or(RenderFormat::Diamond)))
                }
                (None, Some(upto)) => {
                    let series = hilb_series(&ds.table, *upto)?;
                    Ok(render_series(&series, format.unwrap_or(RenderFormat::Json)))
                }
                (None, None) => Err(CliError::Input("one of -n or -N is required".into())),
            }
        }
        Command::Sym { source, a, k, format } => {
            let ds = load(source, stderr)?;
            let d = ds.table.diamond(*k).ok_or(EngineError::InsufficientPowers {
                table: "diamonds",
                required: *k,
                available: ds.table.max_power(),
            })?;
            Ok(render_polynomial(*a, &sym_power_twisted_hodge(d, *a), *format))
        }
        Command::Nested { source, n, format } => {
            let ds = load(source, stderr)?;
            let poly = nested_hodge(&ds.table, ds.nested_or_main(), *n)?;
            Ok(render_polynomial(*n, &poly, *format))
        }
        Command::Chiy { source, upto, method, format } => {
            let ds = load(source, stderr)?;
            let series = match method {
                ChiYMethod::Product => chi_y_product(&ds.table, *upto)?,
                ChiYMethod::Exp => chi_y_exp(&ds.table, *upto)?,
                ChiYMethod::Hodge => chi_y_from_hodge(&ds.table, *upto)?,
            };
            Ok(render_series(&series, *format))
        }
        Command::Betti { source, upto } => {
            let ds = load(source, stderr)?;
            let b = ds
                .betti_numbers()
                .ok_or_else(|| CliError::Input("dataset has no Hodge diamond".into()))?;
            let series = betti_series(&b, *upto);
            let mut out = String::new();
            for n in 0..=*upto {
                let row: Vec<String> = (0..=4 * n)
                    .map(|i| series.coefficient(Monomial::new(i, 0, n)).to_string())
                    .collect();
                out.push_str(&format!("n={n}: {}\n", row.join(" ")));
            }
            Ok(out)
        }
        Command::Hh { source, n } => {
            let ds = load(source, stderr)?;
            let dims = hh_dims(&ds.table, *n)?;
            let span = 2 * *n as i64;
            let mut out = String::from("i\tdim HH_i\n");
            for i in -span..=span {
                out.push_str(&format!("{i}\t{}\n", dims.get(i)));
            }
            Ok(out)
        }
        Command::Deform { source, n, qmax } => {
            let ds = load(source, stderr)?;
            let din = ds
                .deformation
                .ok_or_else(|| CliError::Input("dataset has no deformation data".into()))?;
            if *n >= 2 && !din.connected {
                stderr.push_str("warning: the formula assumes a connected surface\n");
            }
            let dims = deformation_dims(&din, *n, *qmax);
            let mut out = format!("q\th^q(Hilb^{n} S, T)\n");
            for (q, v) in dims {
                if q >= 3 && *n >= 2 {
                    out.push_str(&format!("{q}\t{v}\t(derived convention)\n"));
                } else {
                    out.push_str(&format!("{q}\t{v}\n"));
                }
            }
            Ok(out)
        }
        Command::Verify { source, upto } => {
            let ds = load(source, stderr)?;
            let report = verify_dataset(&ds, *upto)?;
            let text = report.to_string();
            match report.first_failure() {
                None => Ok(text),
                Some(f) => {
                    let name = f.name;
                    stderr.push_str(&text);
                    Err(CliError::Verify(format!("first failing check: {name}")))
                }
            }
        }
        Command::Presets => Ok(PRESET_NAMES.iter().map(|n| format!("{n}\n")).collect()),
    }
}

/// Parse `args` (including the program name) and run the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { stdout: String::new(), stderr: text, code: EXIT_INPUT }
            } else {
                Outcome { stdout: text, stderr: String::new(), code: EXIT_OK }
            };
        }
    };
    let mut stderr = String::new();
    let result = match cli.threads {
        Some(t) => match rayon::ThreadPoolBuilder::new().num_threads(t).build() {
            Ok(pool) => pool.install(|| execute(&cli.command, &mut stderr)),
            Err(e) => Err(CliError::Input(format!("cannot start {t} threads: {e}"))),
        },
        None => execute(&cli.command, &mut stderr),
    };
    match result {
        Ok(stdout) => Outcome { stdout, stderr, code: EXIT_OK },
        Err(e) => {
            stderr.push_str(&format!("error: {e}\n"));
            Outcome { stdout: String::new(), stderr, code: e.exit_code() }
        }
    }
}
