use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use hypspeed::comb_builder::{build_comb, verify_comb, ASpec, GSpec};
use hypspeed::domains::DomainSpec;
use hypspeed::experiments::run_experiment;
use hypspeed::semigroups::KoenigsSemigroup;
use hypspeed::speeds::{
    default_window, fit_speeds, geometric_grid, linear_grid, sample_speeds, Basis, SpeedColumn,
    SpeedSample,
};
use hypspeed::verify::{run_suite, SUITES};
use hypspeed::HypError;

mod svg;

const DEFAULT_SEED: u64 = 42;

#[derive(Parser, Debug)]
#[command(name = "hypspeed", version, about = "Hyperbolic speeds of semigroup orbits in the unit disc")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Sample v, v° and vᵀ along the orbit of 0.
    Speeds {
        #[command(flatten)]
        grid: GridArgs,
        /// Emit an experiment preset instead of a single domain's speeds.
        #[arg(long, value_name = "NAME")]
        experiment: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Run a named verification suite and print its JSON report.
    Verify {
        #[arg(long)]
        suite: Option<String>,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        /// Defaults to $HYPSPEED_SEED, then 42.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        /// List the available suites and exit.
        #[arg(long)]
        list: bool,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Fit `coefficient · basis(t) + intercept` to one speed column.
    Fit {
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long, value_enum, default_value_t = Column::V)]
        column: Column,
        #[arg(long, value_enum, default_value_t = FitBasis::LogT)]
        basis: FitBasis,
        /// Window start; defaults to t_max / 100.
        #[arg(long)]
        window_lo: Option<f64>,
        /// Window end; defaults to t_max.
        #[arg(long)]
        window_hi: Option<f64>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Build a comb domain and tabulate its lower-bound ratios.
    Comb {
        /// log1p, sqrt, pow:<p> or table:<t>=<g>,<t>=<g>,...
        #[arg(long, default_value = "log1p")]
        g: String,
        /// linear, geometric:<ratio> or explicit:<a1>,<a2>,...
        #[arg(long, default_value = "linear")]
        a: String,
        #[arg(long, default_value_t = 10)]
        steps: usize,
        /// Writes <output>.json and <output>_ratios.csv; stdout otherwise.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Draw selected speed columns against log t as an SVG line chart.
    Plot {
        #[command(flatten)]
        grid: GridArgs,
        /// Comma separated subset of v, v_o, v_T.
        #[arg(long, default_value = "v,v_o,v_T")]
        columns: String,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
struct GridArgs {
    /// Domain JSON, inline (starting with `{`) or a file path.
    #[arg(long)]
    domain: Option<String>,
    #[arg(long, default_value_t = 1.0)]
    t_min: f64,
    #[arg(long, default_value_t = 1e8)]
    t_max: f64,
    #[arg(long, default_value_t = 512)]
    points: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
    Svg,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Column {
    V,
    #[value(name = "v_o")]
    VO,
    #[value(name = "v_T", alias = "v_t")]
    VT,
}

impl Column {
    fn speed_column(self) -> SpeedColumn {
        match self {
            Column::V => SpeedColumn::V,
            Column::VO => SpeedColumn::VO,
            Column::VT => SpeedColumn::VT,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FitBasis {
    #[value(name = "log_t")]
    LogT,
    T,
}

/// Failure with its exit status.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self { code: 2, message: message.into() }
    }
}

impl From<HypError> for Failure {
    fn from(e: HypError) -> Self {
        let code = match e {
            HypError::Unsupported(_) => 3,
            _ => 2,
        };
        Self { code, message: e.to_string() }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Self { code: 1, message: e.to_string() }
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: Cli) -> CliResult<u8> {
    match cli.command {
        Command::Speeds { grid, experiment, format, output } => {
            let times = time_grid(&grid)?;
            if let Some(name) = experiment {
                let e = run_experiment(&name, &times)?;
                let text = match format {
                    Format::Json => serde_json::to_string_pretty(&e).expect("serializable") + "\n",
                    Format::Csv => e.to_csv(),
                    Format::Svg => return Err(Failure::usage("experiments are emitted as csv or json")),
                };
                emit(output.as_deref(), &text)?;
                return Ok(0);
            }
            let rows = speeds_for(&grid, &times)?;
            let text = match format {
                Format::Csv => speeds_csv(&rows),
                Format::Json => serde_json::to_string_pretty(&rows).expect("serializable") + "\n",
                Format::Svg => svg::line_chart(&rows, &all_columns()),
            };
            emit(output.as_deref(), &text)?;
            Ok(0)
        }
        Command::Verify { suite, samples, seed, tol, list, output } => {
            if list {
                for s in SUITES {
                    println!("{:20} {}", s.name, s.about);
                }
                return Ok(0);
            }
            let name = suite.ok_or_else(|| Failure::usage("--suite is required"))?;
            let seed = match seed {
                Some(s) => s,
                None => env_seed()?,
            };
            let report = run_suite(&name, samples, seed, tol)?;
            emit(output.as_deref(), &(report.to_json() + "\n"))?;
            Ok(if report.passed() { 0 } else { 1 })
        }
        Command::Fit { grid, column, basis, window_lo, window_hi, format } => {
            let times = time_grid(&grid)?;
            let rows = speeds_for(&grid, &times)?;
            let (lo, hi) = default_window(grid.t_max);
            let window = (window_lo.unwrap_or(lo), window_hi.unwrap_or(hi));
            let basis = match basis {
                FitBasis::LogT => Basis::LogT,
                FitBasis::T => Basis::T,
            };
            let fit = fit_speeds(&rows, column.speed_column(), basis, window)?;
            match format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&fit).expect("serializable")),
                _ => {
                    println!("coefficient {:.16e}", fit.coefficient);
                    println!("intercept {:.16e}", fit.intercept);
                    println!("sup_residual {:.16e}", fit.sup_residual);
                    println!("points {}", fit.points);
                }
            }
            Ok(0)
        }
        Command::Comb { g, a, steps, output } => {
            let cc = build_comb(parse_g(&g)?, &parse_a(&a)?, steps)?;
            let rows = verify_comb(&cc)?;
            let json = serde_json::to_string_pretty(&cc.to_json()).expect("serializable") + "\n";
            let mut csv = String::from("j,ratio,plateau_ratio,bound,constraint\n");
            for r in &rows {
                csv.push_str(&format!(
                    "{},{:.16e},{:.16e},{:.16e},{:.16e}\n",
                    r.j,
                    r.ratio,
                    r.plateau_ratio,
                    r.bound,
                    cc.constraint(r.j)
                ));
            }
            match output {
                Some(prefix) => {
                    fs::write(with_suffix(&prefix, ".json"), json)?;
                    fs::write(with_suffix(&prefix, "_ratios.csv"), csv)?;
                }
                None => {
                    emit(None, &json)?;
                    emit(None, &csv)?;
                }
            }
            Ok(if rows.iter().all(|r| r.passes()) { 0 } else { 1 })
        }
        Command::Plot { grid, columns, output } => {
            let cols = parse_columns(&columns)?;
            let times = time_grid(&grid)?;
            let rows = speeds_for(&grid, &times)?;
            emit(output.as_deref(), &svg::line_chart(&rows, &cols))?;
            Ok(0)
        }
    }
}

fn env_seed() -> CliResult<u64> {
    match std::env::var("HYPSPEED_SEED") {
        Ok(s) => s
            .trim()
            .parse()
            .map_err(|_| Failure::usage(format!("HYPSPEED_SEED is not an integer: {s:?}"))),
        Err(_) => Ok(DEFAULT_SEED),
    }
}

fn time_grid(g: &GridArgs) -> CliResult<Vec<f64>> {
    if !(g.t_min >= 0.0) || !(g.t_max > g.t_min) || !g.t_max.is_finite() {
        return Err(Failure::usage(format!(
            "need 0 <= t_min < t_max, got t_min = {}, t_max = {}",
            g.t_min, g.t_max
        )));
    }
    if g.points < 2 {
        return Err(Failure::usage("need at least 2 points"));
    }
    let grid = if g.t_min == 0.0 {
        linear_grid(g.t_min, g.t_max, g.points)?
    } else {
        geometric_grid(g.t_min, g.t_max, g.points)?
    };
    Ok(grid)
}

fn read_domain(arg: Option<&str>) -> CliResult<DomainSpec<f64>> {
    let arg = arg.ok_or_else(|| Failure::usage("--domain is required"))?;
    let text = if arg.trim_start().starts_with('{') {
        arg.to_string()
    } else {
        fs::read_to_string(arg).map_err(|e| Failure::usage(format!("cannot read {arg}: {e}")))?
    };
    Ok(DomainSpec::from_json(&text)?)
}

fn speeds_for(g: &GridArgs, times: &[f64]) -> CliResult<Vec<SpeedSample<f64>>> {
    let sg = KoenigsSemigroup::new(read_domain(g.domain.as_deref())?)?;
    Ok(sample_speeds(&sg, times)?)
}

fn speeds_csv(rows: &[SpeedSample<f64>]) -> String {
    let mut out = String::from("t,v,v_o,v_T,log_rho,theta\n");
    for s in rows {
        out.push_str(&format!(
            "{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}\n",
            s.t, s.v, s.v_o, s.v_t, s.log_rho, s.theta
        ));
    }
    out
}

fn all_columns() -> Vec<SpeedColumn> {
    vec![SpeedColumn::V, SpeedColumn::VO, SpeedColumn::VT]
}

fn parse_columns(s: &str) -> CliResult<Vec<SpeedColumn>> {
    let cols = s
        .split(',')
        .map(|c| match c.trim() {
            "v" => Ok(SpeedColumn::V),
            "v_o" => Ok(SpeedColumn::VO),
            "v_T" | "v_t" => Ok(SpeedColumn::VT),
            other => Err(Failure::usage(format!("unknown column {other:?}"))),
        })
        .collect::<CliResult<Vec<_>>>()?;
    if cols.is_empty() {
        return Err(Failure::usage("no columns selected"));
    }
    Ok(cols)
}

fn number(s: &str) -> CliResult<f64> {
    s.trim()
        .parse()
        .map_err(|_| Failure::usage(format!("not a number: {s:?}")))
}

fn parse_g(s: &str) -> CliResult<GSpec<f64>> {
    match s.split_once(':') {
        None if s == "log1p" => Ok(GSpec::Log1p),
        None if s == "sqrt" => Ok(GSpec::Sqrt),
        Some(("pow", p)) => Ok(GSpec::Pow(number(p)?)),
        Some(("table", rows)) => {
            let table = rows
                .split(',')
                .map(|kv| {
                    let (t, g) = kv
                        .split_once('=')
                        .ok_or_else(|| Failure::usage(format!("table entry {kv:?} is not t=g")))?;
                    Ok((number(t)?, number(g)?))
                })
                .collect::<CliResult<Vec<_>>>()?;
            Ok(GSpec::Table(table))
        }
        _ => Err(Failure::usage(format!("unknown g {s:?}"))),
    }
}

fn parse_a(s: &str) -> CliResult<ASpec<f64>> {
    match s.split_once(':') {
        None if s == "linear" => Ok(ASpec::Linear),
        Some(("geometric", r)) => Ok(ASpec::Geometric(number(r)?)),
        Some(("explicit", list)) => Ok(ASpec::Explicit(
            list.split(',').map(number).collect::<CliResult<Vec<_>>>()?,
        )),
        _ => Err(Failure::usage(format!("unknown a_j spec {s:?}"))),
    }
}

fn with_suffix(prefix: &Path, suffix: &str) -> PathBuf {
    let mut s = prefix.as_os_str().to_owned();
    s.push(suffix);
    PathBuf::from(s)
}

fn emit(path: Option<&Path>, text: &str) -> CliResult<()> {
    match path {
        Some(p) => fs::write(p, text)?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}
