//! Command-line front end shared by the `fractal-calc` binary.
//!
//! Grid commands write CSV (`x,value[,value2,…]`) or an SVG plot to
//! `--output` or standard output. Exit codes: 0 success, 1 verification
//! failure or runtime error, 2 usage error.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::{Error, Result};
use crate::expr::Expr;
use crate::falpha::{linspace, FractalFn};
use crate::figures::{write_figures, FigureFormat, FigureOptions};
use crate::laplace::{laplace_numeric, LaplaceOptions};
use crate::operators::{self, KernelConvention, OperatorKind, OperatorSpec, Scheme, Side, DEFAULT_OPERATOR_TOL};
use crate::output::Table;
use crate::solutions::{default_grid, solve_problem, ExampleProblem, DEFAULT_LAMBDA};
use crate::special::{beta_fractal, beta_fractal_quadrature, gamma_fractal, mittag_leffler, GammaMode, MLParams};
use crate::staircase::{ExtensionRule, StaircaseFn};
use crate::verify;

/// Environment variable overriding the default operator tolerance.
pub const TOL_ENV: &str = "FRACTAL_CALC_TOL";

pub const EXIT_SUCCESS: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AlphaMode {
    /// The triadic Cantor staircase.
    Cantor,
    /// `S(x) = x`: classical fractional calculus.
    Identity,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KernelArg {
    /// Kernel exponent β − 1.
    Conjugacy,
    /// Kernel exponent β − α.
    DimensionShifted,
}

impl From<KernelArg> for KernelConvention {
    fn from(k: KernelArg) -> Self {
        match k {
            KernelArg::Conjugacy => KernelConvention::ConjugacyBeta1,
            KernelArg::DimensionShifted => KernelConvention::DimensionShifted,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Csv,
    Svg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SideArg {
    Left,
    Right,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SchemeArg {
    /// Product integration on a graded grid.
    Product,
    /// Tanh–sinh quadrature.
    DoubleExponential,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GammaModeArg {
    /// `Γ(S(x))`.
    Staircase,
    /// `Γ(x)`.
    Raw,
}

#[derive(Debug, Clone, PartialEq, Args)]
pub struct OperatorArgs {
    /// Order β.
    #[arg(long)]
    pub beta: f64,
    /// Operand, e.g. "S(x)^2" or "exp(-x)".
    #[arg(long = "f", value_name = "EXPR", allow_hyphen_values = true)]
    pub f: String,
    #[arg(long, value_enum, default_value = "left")]
    pub side: SideArg,
    /// Terminal point; 0 for left-sided and 1 for right-sided operators by default.
    #[arg(long)]
    pub terminal: Option<f64>,
    #[arg(long, value_enum, default_value = "product")]
    pub scheme: SchemeArg,
}

#[derive(Debug, Clone, PartialEq, Subcommand)]
pub enum Command {
    /// Staircase S(x).
    Staircase,
    /// Fractal Gamma function.
    Gamma {
        #[arg(long, value_enum, default_value = "staircase")]
        mode: GammaModeArg,
    },
    /// Fractal Beta B(r, w) over a grid of w: closed form and quadrature.
    Beta {
        #[arg(long)]
        r: f64,
    },
    /// Mittag-Leffler E_{η,ν}(c·S(x)).
    Ml {
        #[arg(long)]
        eta: f64,
        #[arg(long)]
        nu: f64,
        #[arg(long, default_value_t = 1.0)]
        scale: f64,
    },
    /// Riemann–Liouville fractal integral.
    RlInt(OperatorArgs),
    /// Riemann–Liouville fractal derivative.
    RlDer(OperatorArgs),
    /// Caputo fractal derivative.
    Caputo(OperatorArgs),
    /// Numeric fractal Laplace transform over a grid of σ.
    Laplace {
        #[arg(long = "f", value_name = "EXPR", allow_hyphen_values = true)]
        f: String,
    },
    /// Derived and printed solutions of a worked example, with residuals.
    Solve {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=4))]
        id: u8,
        /// λ of the fourth example.
        #[arg(long, default_value_t = DEFAULT_LAMBDA, allow_hyphen_values = true)]
        lambda: f64,
    },
    /// Writes the seven figure datasets into the output directory.
    Figures,
    /// Runs the acceptance criteria.
    Verify,
}

#[derive(Debug, Clone, PartialEq, Parser)]
#[command(name = "fractal-calc", version, about = "Calculus on the triadic Cantor set")]
struct RawCli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, value_enum, default_value = "cantor", global = true)]
    alpha_mode: AlphaMode,
    /// Ternary digits retained by the staircase.
    #[arg(long, default_value_t = 53, global = true)]
    depth: u32,
    /// Evaluation grid: start, stop and point count.
    #[arg(long, num_args = 3, value_names = ["START", "STOP", "COUNT"], allow_hyphen_values = true, global = true)]
    grid: Option<Vec<f64>>,
    #[arg(long, value_enum, default_value = "conjugacy", global = true)]
    kernel: KernelArg,
    /// Finite-difference agreement tolerance of the derivative operators.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Output file (directory for `figures`); standard output if absent.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv", global = true)]
    format: FormatArg,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub start: f64,
    pub stop: f64,
    pub count: usize,
}

impl Grid {
    pub fn new(start: f64, stop: f64, count: usize) -> Result<Self> {
        if count < 2 || !(start < stop) || !start.is_finite() || !stop.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "grid needs start < stop and count >= 2 (got {start} {stop} {count})"
            )));
        }
        Ok(Grid { start, stop, count })
    }

    pub fn points(&self) -> Result<Vec<f64>> {
        linspace(self.start, self.stop, self.count)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CliConfig {
    pub command: Command,
    pub alpha_mode: AlphaMode,
    pub depth: u32,
    /// `None` selects the command's default grid.
    pub grid: Option<Grid>,
    pub kernel: KernelConvention,
    pub tol: f64,
    pub output: Option<PathBuf>,
    pub format: FormatArg,
}

impl CliConfig {
    /// Parses command-line arguments (including the program name). The
    /// tolerance falls back to `FRACTAL_CALC_TOL`, then the library default.
    pub fn parse_from<I, T>(args: I) -> std::result::Result<CliConfig, ConfigError>
    where
        I: IntoIterator<Item = T>,
        T: Into<OsString> + Clone,
    {
        let raw = RawCli::try_parse_from(args).map_err(ConfigError::Clap)?;
        let env_tol = std::env::var(TOL_ENV).ok();
        let tol = match (raw.tol, env_tol) {
            (Some(t), _) => t,
            (None, Some(s)) => s
                .trim()
                .parse::<f64>()
                .map_err(|_| ConfigError::Invalid(format!("{TOL_ENV}='{s}' is not a number")))?,
            (None, None) => DEFAULT_OPERATOR_TOL,
        };
        if !(tol > 0.0) || !tol.is_finite() {
            return Err(ConfigError::Invalid(format!("tolerance must be positive, got {tol}")));
        }
        let grid = match raw.grid {
            None => None,
            Some(v) => {
                let count = v[2];
                if count.fract() != 0.0 || count < 0.0 {
                    return Err(ConfigError::Invalid(format!("grid count must be an integer, got {count}")));
                }
                Some(Grid::new(v[0], v[1], count as usize).map_err(|e| ConfigError::Invalid(e.to_string()))?)
            }
        };
        if raw.depth == 0 {
            return Err(ConfigError::Invalid("depth must be at least 1".into()));
        }
        Ok(CliConfig {
            command: raw.command,
            alpha_mode: raw.alpha_mode,
            depth: raw.depth,
            grid,
            kernel: raw.kernel.into(),
            tol,
            output: raw.output,
            format: raw.format,
        })
    }

    pub fn staircase(&self) -> Result<StaircaseFn> {
        match self.alpha_mode {
            AlphaMode::Identity => Ok(StaircaseFn::Identity),
            AlphaMode::Cantor => StaircaseFn::cantor(self.depth, ExtensionRule::SelfSimilarTiling),
        }
    }

    fn grid_or(&self, start: f64, stop: f64, count: usize) -> Result<Vec<f64>> {
        self.grid.unwrap_or(Grid { start, stop, count }).points()
    }
}

#[derive(Debug)]
pub enum ConfigError {
    Clap(clap::Error),
    Invalid(String),
}

/// What a command produced.
#[derive(Debug, Clone, PartialEq)]
pub enum Outcome {
    /// Data for the output sink.
    Table { table: Table, title: String },
    /// Figure files written.
    Files(Vec<PathBuf>),
    /// Verification report; `passed` decides the exit status.
    Report { lines: Vec<String>, passed: bool },
}

/// Runs the command and returns its outcome without writing it anywhere.
pub fn execute(config: &CliConfig) -> Result<Outcome> {
    let sf = config.staircase()?;
    let table = |table: Table, title: String| Ok(Outcome::Table { table, title });
    match &config.command {
        Command::Staircase => {
            let xs = config.grid_or(0.0, 1.0, 101)?;
            let s = xs.iter().map(|&x| sf.eval(x)).collect::<Result<_>>()?;
            table(Table::new(xs).with_column("S(x)", s)?, "staircase".into())
        }
        Command::Gamma { mode } => {
            let mode = match mode {
                GammaModeArg::Staircase => GammaMode::StaircaseComposed,
                GammaModeArg::Raw => GammaMode::RawArgument,
            };
            let xs = config.grid_or(0.1, 3.0, 30)?;
            let g = xs.iter().map(|&x| gamma_fractal(x, mode, &sf)).collect::<Result<_>>()?;
            table(Table::new(xs).with_column("Gamma", g)?, "fractal Gamma".into())
        }
        Command::Beta { r } => {
            let ws = config.grid_or(0.5, 2.0, 4)?;
            let closed = ws.iter().map(|&w| beta_fractal(*r, w)).collect::<Result<_>>()?;
            let quad = ws
                .iter()
                .map(|&w| beta_fractal_quadrature(&sf, *r, w))
                .collect::<Result<_>>()?;
            table(
                Table::new(ws).with_column("closed form", closed)?.with_column("quadrature", quad)?,
                format!("fractal Beta B({r}, w)"),
            )
        }
        Command::Ml { eta, nu, scale } => {
            let params = MLParams::new(*eta, *nu)?;
            let xs = config.grid_or(0.0, 1.0, 101)?;
            let v = xs
                .iter()
                .map(|&x| mittag_leffler(&params, scale * sf.eval(x)?))
                .collect::<Result<_>>()?;
            table(Table::new(xs).with_column("E", v)?, format!("E_{{{eta},{nu}}}"))
        }
        Command::RlInt(args) => operator_table(config, &sf, OperatorKind::RLIntegral, args),
        Command::RlDer(args) => operator_table(config, &sf, OperatorKind::RLDerivative, args),
        Command::Caputo(args) => operator_table(config, &sf, OperatorKind::Caputo, args),
        Command::Laplace { f } => {
            let f = Expr::parse(f)?.to_fractal_fn(sf);
            let sigmas = config.grid_or(1.0, 5.0, 5)?;
            let mut values = Vec::new();
            let mut tails = Vec::new();
            for &s in &sigmas {
                let v = laplace_numeric(&f, &sf, s, LaplaceOptions::default())?;
                values.push(v.value);
                tails.push(v.tail_bound);
            }
            table(
                Table::new(sigmas).with_column("transform", values)?.with_column("tail bound", tails)?,
                "fractal Laplace transform".into(),
            )
        }
        Command::Solve { id, lambda } => {
            let mut problem = ExampleProblem::paper(*id, *lambda)?;
            problem.operator = problem.operator.with_convention(config.kernel).with_tol(config.tol)?;
            let grid = match config.grid {
                Some(g) => g.points()?,
                None => default_grid(&problem, &sf, 16)?,
            };
            let report = solve_problem(&problem, &sf, &grid)?;
            table(
                Table::new(grid)
                    .with_column("derived", report.solution.values().to_vec())?
                    .with_column("printed", report.paper_formula_solution.values().to_vec())?
                    .with_column("residual", report.residual.values().to_vec())?,
                format!("example {id}"),
            )
        }
        Command::Figures => {
            let dir = config.output.clone().unwrap_or_else(|| PathBuf::from("figures"));
            let format = match config.format {
                FormatArg::Csv => FigureFormat::Csv,
                FormatArg::Svg => FigureFormat::Svg,
            };
            let opts = FigureOptions {
                sf,
                convention: config.kernel,
            };
            Ok(Outcome::Files(write_figures(&dir, format, &opts)?))
        }
        Command::Verify => {
            let results = verify::run_all();
            let passed = results.iter().all(|r| r.passed);
            Ok(Outcome::Report {
                lines: results.iter().map(|r| r.to_string()).collect(),
                passed,
            })
        }
    }
}

fn operator_table(config: &CliConfig, sf: &StaircaseFn, kind: OperatorKind, args: &OperatorArgs) -> Result<Outcome> {
    let side = match args.side {
        SideArg::Left => Side::Left,
        SideArg::Right => Side::Right,
    };
    let terminal = args.terminal.unwrap_or(if side == Side::Left { 0.0 } else { 1.0 });
    let scheme = match args.scheme {
        SchemeArg::Product => Scheme::ProductTrapezoid,
        SchemeArg::DoubleExponential => Scheme::DoubleExponential,
    };
    let spec = OperatorSpec::new(kind, side, terminal, args.beta)?
        .with_convention(config.kernel)
        .with_scheme(scheme)
        .with_tol(config.tol)?;
    let f: FractalFn = Expr::parse(&args.f)?.to_fractal_fn(*sf);
    let xs = match (config.grid, side) {
        (Some(g), _) => g.points()?,
        (None, Side::Left) => linspace(terminal + 0.1, terminal + 1.0, 10)?,
        (None, Side::Right) => linspace(terminal - 1.0, terminal - 0.1, 10)?,
    };
    let values = xs.iter().map(|&x| operators::apply(&spec, &f, sf, x)).collect::<Result<_>>()?;
    Ok(Outcome::Table {
        table: Table::new(xs).with_column(args.f.clone(), values)?,
        title: format!("{kind:?} of order {} of {}", args.beta, args.f),
    })
}

/// Runs the command, writing data to `--output` or `stdout` and diagnostics
/// to `stderr`. Returns the process exit code.
pub fn run(config: &CliConfig, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let outcome = match execute(config) {
        Ok(o) => o,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return match e {
                Error::Parse { .. } | Error::InvalidParameter(_) => EXIT_USAGE,
                _ => EXIT_FAILURE,
            };
        }
    };
    let written = match &outcome {
        Outcome::Table { table, title } => {
            let text = match config.format {
                FormatArg::Csv => table.to_csv(),
                FormatArg::Svg => table.to_svg(title),
            };
            match &config.output {
                Some(path) => std::fs::write(path, text),
                None => stdout.write_all(text.as_bytes()),
            }
        }
        Outcome::Files(paths) => paths.iter().try_for_each(|p| writeln!(stdout, "{}", p.display())),
        Outcome::Report { lines, .. } => lines.iter().try_for_each(|l| writeln!(stdout, "{l}")),
    };
    if let Err(e) = written {
        let _ = writeln!(stderr, "error: {e}");
        return EXIT_FAILURE;
    }
    match outcome {
        Outcome::Report { passed: false, .. } => EXIT_FAILURE,
        _ => EXIT_SUCCESS,
    }
}

/// Entry point of the binary: parses `args`, runs, returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let config = match CliConfig::parse_from(args) {
        Ok(c) => c,
        Err(ConfigError::Clap(e)) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_SUCCESS };
        }
        Err(ConfigError::Invalid(msg)) => {
            eprintln!("error: {msg}");
            return EXIT_USAGE;
        }
    };
    run(&config, &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}
