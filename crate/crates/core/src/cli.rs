//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 on usage or configuration errors, 2 when a
//! computation or output step fails.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::constellation::InputAlphabet;
use crate::mi::{mi_cross, mi_joint, mi_single, EstimatorConfig, Method, ReceiverModel};
use crate::region::{finite_region, gaussian_region, ChannelConfig, Topology};
use crate::rotation::{optimize_rotation, ObjectiveKind, RotationSearch};
use crate::sweep::{gnuplot_hint, run_sweep, write_csv, Cache, SweepOptions, SweepSpec};
use crate::vsi::{find_threshold, ThresholdQuery};
use crate::{db_to_linear, Error, C64};

#[derive(Debug, Parser)]
#[command(
    name = "ic-rates",
    version,
    about = "Achievable rates of QAM-input interference channels"
)]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct GlobalArgs {
    /// Base seed for Monte Carlo estimation.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Expectation backend.
    #[arg(long, global = true, value_enum)]
    method: Option<MethodArg>,
    /// Monte Carlo sample budget per expectation.
    #[arg(long, global = true)]
    samples: Option<usize>,
    /// Gauss-Hermite order per real dimension.
    #[arg(long = "quad-order", global = true)]
    quad_order: Option<usize>,
    /// Write the result to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Neither read nor write the sweep cache.
    #[arg(long = "no-cache", global = true)]
    no_cache: bool,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum MethodArg {
    Mc,
    Quad,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Mc => Method::MonteCarlo,
            MethodArg::Quad => Method::GaussHermite,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Term {
    Single,
    Cross,
    Joint,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate one mutual-information term.
    Mi(MiArgs),
    /// Rate region of one channel as JSON.
    Region(RegionArgs),
    /// Grid search for the best rotation of transmitter two.
    OptimizeRotation(RotationArgs),
    /// Very-strong-interference threshold on |h|.
    Vsi(VsiArgs),
    /// Run a parameter sweep from a JSON config and emit CSV.
    Sweep(SweepArgs),
}

#[derive(Debug, Args)]
struct MiArgs {
    #[arg(long, default_value = "qam4")]
    alphabet: String,
    #[arg(long = "power-db", allow_negative_numbers = true)]
    power_db: f64,
    #[arg(long, value_enum, default_value = "single")]
    term: Term,
    /// Interference magnitude (cross and joint terms).
    #[arg(long = "h-abs", default_value_t = 1.0)]
    h_abs: f64,
    /// Effective interference angle in radians, e.g. `0.3` or `pi/8`.
    #[arg(long, default_value = "0", value_parser = parse_angle, allow_negative_numbers = true)]
    rho: f64,
}

#[derive(Debug, Args)]
struct ChannelArgs {
    #[arg(long, default_value = "two_ic")]
    topology: Topology,
    #[arg(long, default_value = "qam4")]
    alphabet: String,
    #[arg(long = "power-db", allow_negative_numbers = true)]
    power_db: f64,
    #[arg(long = "h-abs", default_value_t = 1.0)]
    h_abs: f64,
    /// Channel phase in radians, e.g. `0.3` or `pi/8`.
    #[arg(long, default_value = "0", value_parser = parse_angle, allow_negative_numbers = true)]
    psi: f64,
}

#[derive(Debug, Args)]
struct RegionArgs {
    #[command(flatten)]
    channel: ChannelArgs,
    /// Rotation of transmitter two in radians.
    #[arg(long, default_value = "0", value_parser = parse_angle, allow_negative_numbers = true)]
    phi: f64,
}

#[derive(Debug, Args)]
struct RotationArgs {
    #[command(flatten)]
    channel: ChannelArgs,
    #[arg(long = "grid-points", default_value_t = 64)]
    grid_points: usize,
    /// Skip the local refinement around the best grid point.
    #[arg(long = "no-refine")]
    no_refine: bool,
}

#[derive(Debug, Args)]
struct VsiArgs {
    #[arg(long, default_value = "two_ic")]
    topology: Topology,
    #[arg(long, default_value = "qam4")]
    alphabet: String,
    #[arg(long = "power-db", allow_negative_numbers = true)]
    power_db: f64,
    #[arg(long, default_value = "0", value_parser = parse_angle, allow_negative_numbers = true)]
    psi: f64,
    /// Optimize the rotation at every probed |h|.
    #[arg(long)]
    rotation: bool,
    /// Bracket width on |h|.
    #[arg(long = "tol-h", default_value_t = 1e-2)]
    tol_h: f64,
    /// Slack in bits on the threshold condition.
    #[arg(long = "mi-tol", default_value_t = 0.01)]
    mi_tol: f64,
    /// Print the full result as JSON instead of the bare threshold.
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Args)]
struct SweepArgs {
    #[arg(long)]
    config: PathBuf,
    /// Print a gnuplot recipe for the produced CSV.
    #[arg(long = "gnuplot-hint")]
    gnuplot_hint: bool,
    /// Evaluate grid points one at a time.
    #[arg(long)]
    serial: bool,
}

/// Parses radians given as a number or as `[k*]pi[/n]`.
pub fn parse_angle(s: &str) -> Result<f64, String> {
    let t = s.trim();
    if let Ok(v) = t.parse::<f64>() {
        return Ok(v);
    }
    let err = || format!("invalid angle {s:?}; use radians such as 0.39 or pi/8");
    let lower = t.to_ascii_lowercase();
    let (num, den) = match lower.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim().parse::<f64>().map_err(|_| err())?),
        None => (lower.as_str(), 1.0),
    };
    let (sign, num) = match num.strip_prefix('-') {
        Some(rest) => (-1.0, rest.trim()),
        None => (1.0, num),
    };
    let k = match num.strip_suffix("pi") {
        Some("") => 1.0,
        Some(k) => k.trim_end_matches('*').trim().parse::<f64>().map_err(|_| err())?,
        None => return Err(err()),
    };
    Ok(sign * k * std::f64::consts::PI / den)
}

/// Runs the CLI with process stdout/stderr and returns the exit code.
pub fn cli_main<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(args, &mut stdout.lock(), &mut stderr.lock())
}

/// Runs the CLI against the given writers and returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                stderr.write_all(text.as_bytes())
            } else {
                stdout.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match execute(cli, stdout, stderr) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            exit_code(&e)
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::UnsupportedAlphabet(_) | Error::InvalidInput(_) | Error::InvalidConfig(_) | Error::Json(_) => 1,
        _ => 2,
    }
}

impl GlobalArgs {
    fn estimator(&self) -> EstimatorConfig {
        let d = EstimatorConfig::default();
        EstimatorConfig {
            method: self.method.map_or(d.method, Method::from),
            samples: self.samples.unwrap_or(d.samples),
            quadrature_order: self.quad_order.unwrap_or(d.quadrature_order),
            seed: self.seed.unwrap_or(d.seed),
        }
    }
}

fn emit_text(text: &str, out: Option<&Path>, stdout: &mut dyn Write) -> crate::Result<()> {
    match out {
        Some(path) => fs::write(path, text).map_err(|source| Error::Output {
            path: path.to_path_buf(),
            source,
        }),
        None => Ok(stdout.write_all(text.as_bytes())?),
    }
}

fn emit_json<T: Serialize>(value: &T, out: Option<&Path>, stdout: &mut dyn Write) -> crate::Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    emit_text(&text, out, stdout)
}

fn finite(alphabet: &InputAlphabet, what: &str) -> crate::Result<crate::Constellation> {
    alphabet
        .as_finite()
        .cloned()
        .ok_or_else(|| Error::UnsupportedAlphabet(format!("{what} needs a finite alphabet")))
}

fn execute(cli: Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> crate::Result<()> {
    let g = &cli.global;
    let cfg = g.estimator();
    let out = g.out.as_deref();
    match cli.command {
        Command::Mi(a) => {
            cfg.validate()?;
            let alphabet = finite(&a.alphabet.parse()?, "mi")?;
            let power = db_to_linear(a.power_db);
            let model = ReceiverModel::symmetric(&alphabet, power, a.h_abs, a.rho);
            let est = match a.term {
                Term::Single => mi_single(&alphabet, C64::new(power.sqrt(), 0.0), &cfg)?,
                Term::Cross => mi_cross(&model, &cfg)?,
                Term::Joint => mi_joint(&model, &cfg)?,
            };
            emit_json(&est, out, stdout)
        }
        Command::Region(a) => {
            let c = &a.channel;
            let power = db_to_linear(c.power_db);
            let region = match c.alphabet.parse()? {
                InputAlphabet::Gaussian => {
                    let mut r = gaussian_region(c.h_abs, power)?;
                    r.topology = Some(c.topology);
                    if c.topology == Topology::ZIc {
                        r.sum_rx2 = None;
                    }
                    r
                }
                InputAlphabet::Finite(alphabet) => {
                    cfg.validate()?;
                    let ch = ChannelConfig::new(c.topology, c.h_abs, c.psi, a.phi, power)?;
                    finite_region(&ch, &alphabet, &cfg)?
                }
            };
            emit_json(&region, out, stdout)
        }
        Command::OptimizeRotation(a) => {
            cfg.validate()?;
            let c = &a.channel;
            let alphabet = finite(&c.alphabet.parse()?, "optimize-rotation")?;
            let ch = ChannelConfig::new(c.topology, c.h_abs, c.psi, 0.0, db_to_linear(c.power_db))?;
            let search = RotationSearch {
                grid_points: a.grid_points,
                refine: !a.no_refine,
            };
            let result = optimize_rotation(&ch, &alphabet, ObjectiveKind::for_topology(c.topology), &search, &cfg)?;
            emit_json(&result, out, stdout)
        }
        Command::Vsi(a) => {
            let mut q = ThresholdQuery::new(db_to_linear(a.power_db), a.alphabet.parse()?, a.psi, a.rotation);
            q.topology = a.topology;
            q.tolerance_h = a.tol_h;
            q.mi_tolerance = a.mi_tol;
            let result = find_threshold(&q, &cfg)?;
            if a.json {
                emit_json(&result, out, stdout)
            } else {
                emit_text(&format!("{}\n", result.h_vsi), out, stdout)
            }
        }
        Command::Sweep(a) => {
            let mut spec = SweepSpec::from_file(&a.config).map_err(|e| match e {
                Error::Io(io) => Error::InvalidConfig(format!("cannot read {}: {io}", a.config.display())),
                other => other,
            })?;
            if let Some(seed) = g.seed {
                spec.seed = seed;
            }
            if let Some(m) = g.method {
                spec.estimator.method = m.into();
            }
            if let Some(s) = g.samples {
                spec.estimator.samples = s;
            }
            if let Some(q) = g.quad_order {
                spec.estimator.quadrature_order = q;
            }
            if let Some(path) = out {
                spec.output = Some(path.to_path_buf());
            }
            let opts = SweepOptions {
                cache: (!g.no_cache).then(Cache::from_env),
                parallel: !a.serial,
            };
            let records = run_sweep(&spec, &opts)?;
            match &spec.output {
                Some(path) => {
                    if a.gnuplot_hint {
                        stdout.write_all(gnuplot_hint(&path.display().to_string()).as_bytes())?;
                    }
                }
                None => {
                    write_csv(&records, &mut *stdout)?;
                    if a.gnuplot_hint {
                        stderr.write_all(gnuplot_hint("sweep.csv").as_bytes())?;
                    }
                }
            }
            Ok(())
        }
    }
}
