//! The `boole` command line.
//!
//! Exit status: `0` when every estimate or check was produced and passed,
//! `1` when a verification check failed or a computation broke down (the
//! partial report is still written), `2` for usage errors.

use std::f64::consts::LN_2;
use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::dynamics::{exceptional_set, iterate_orbit, BooleMap, DEFAULT_POLE_TOLERANCE};
use crate::ergodic::{
    birkhoff_average, cauchy_start, lyapunov_exponent, observable_by_name, BirkhoffResult,
    ErgodicError, Observable,
};
use crate::measures::{cauchy_sample, write_samples_csv, CauchyDist};
use crate::verify::{run_verification, VerifyConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "boole",
    version,
    about = "Affine Boole maps: Lyapunov exponents, ergodic averages, exceptional sets"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Lyapunov exponent as a Birkhoff average of ln φ'.
    Lyapunov(CommonArgs),
    /// Birkhoff average of a built-in observable.
    Birkhoff(CommonArgs),
    /// Run the quadrature and measure-preservation checks.
    Verify(CommonArgs),
    /// Dump an orbit.
    Orbit(CommonArgs),
    /// Enumerate starts whose orbit under φ_{0,1} hits the pole within k steps.
    Exceptional(CommonArgs),
    /// Draw seeded Cauchy(a, b) samples.
    Sample(CommonArgs),
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Lyapunov(_) => "lyapunov",
            Command::Birkhoff(_) => "birkhoff",
            Command::Verify(_) => "verify",
            Command::Orbit(_) => "orbit",
            Command::Exceptional(_) => "exceptional",
            Command::Sample(_) => "sample",
        }
    }

    fn args(&self) -> &CommonArgs {
        match self {
            Command::Lyapunov(a)
            | Command::Birkhoff(a)
            | Command::Verify(a)
            | Command::Orbit(a)
            | Command::Exceptional(a)
            | Command::Sample(a) => a,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

/// Flags shared by every subcommand. Unset flags fall back to the `--config`
/// file, then to built-in defaults.
#[derive(Debug, Clone, Default, Args)]
#[command(allow_negative_numbers = true)]
pub struct CommonArgs {
    /// Location parameter of the map.
    #[arg(long)]
    pub a: Option<f64>,
    /// Scale parameter of the map, positive.
    #[arg(long)]
    pub b: Option<f64>,
    /// Number of terms, points or samples. Accepts forms like 1e7.
    #[arg(long, value_parser = parse_count)]
    pub n: Option<usize>,
    /// Random seed [default: 1].
    #[arg(long)]
    pub seed: Option<u64>,
    /// Initial point; drawn from Cauchy(a, b) with the seed when absent.
    #[arg(long)]
    pub x0: Option<f64>,
    /// Observable name, optionally with arguments, e.g. mean_extractor(2).
    #[arg(long)]
    pub observable: Option<String>,
    /// Quadrature tolerance [default: 1e-10].
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Write to this file instead of standard output.
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Orbit steps discarded before averaging [default: 0].
    #[arg(long, value_parser = parse_count)]
    pub burn_in: Option<usize>,
    /// Independent runs with seeds seed, seed+1, ... [default: 1].
    #[arg(long, value_parser = parse_count)]
    pub replicas: Option<usize>,
    /// Depth for `exceptional` [default: 1].
    #[arg(long)]
    pub k: Option<usize>,
    /// JSON file supplying any of the other options.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

fn parse_count(s: &str) -> Result<usize, String> {
    if let Ok(n) = s.parse::<usize>() {
        return Ok(n);
    }
    match s.parse::<f64>() {
        Ok(x) if x >= 0.0 && x.fract() == 0.0 && x <= 9.0e15 => Ok(x as usize),
        _ => Err(format!("`{s}` is not a non-negative integer")),
    }
}

/// Contents of a `--config` file.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub a: Option<f64>,
    pub b: Option<f64>,
    pub n: Option<usize>,
    pub seed: Option<u64>,
    pub x0: Option<f64>,
    pub observable: Option<String>,
    pub tol: Option<f64>,
    pub format: Option<Format>,
    pub output: Option<PathBuf>,
    pub burn_in: Option<usize>,
    pub replicas: Option<usize>,
    pub k: Option<usize>,
}

/// Fully resolved and validated options.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub subcommand: &'static str,
    pub map: BooleMap,
    pub n: usize,
    pub seed: u64,
    pub x0: Option<f64>,
    pub observable: Option<Observable>,
    pub tol: f64,
    pub format: Format,
    pub output: Option<PathBuf>,
    pub burn_in: usize,
    pub replicas: usize,
    pub k: usize,
}

#[derive(Debug)]
struct UsageError(String);

fn default_n(subcommand: &str) -> usize {
    match subcommand {
        "lyapunov" | "birkhoff" => 1_000_000,
        "orbit" => 10,
        "verify" => 100_000,
        _ => 1000,
    }
}

fn resolve(command: &Command) -> Result<RunConfig, UsageError> {
    let cli = command.args();
    let file = match &cli.config {
        Some(path) => read_config(path)?,
        None => ConfigFile::default(),
    };
    let subcommand = command.name();
    let a = cli.a.or(file.a).unwrap_or(0.0);
    let b = cli.b.or(file.b).unwrap_or(1.0);
    let map = BooleMap::new(a, b).map_err(|e| UsageError(e.to_string()))?;
    let n = cli.n.or(file.n).unwrap_or_else(|| default_n(subcommand));
    if n == 0 {
        return Err(UsageError("--n must be at least 1".into()));
    }
    let x0 = cli.x0.or(file.x0);
    if let Some(x) = x0 {
        if !x.is_finite() {
            return Err(UsageError(format!("--x0 must be finite, got {x}")));
        }
    }
    let tol = cli.tol.or(file.tol).unwrap_or(1e-10);
    if !(tol > 0.0) || !tol.is_finite() {
        return Err(UsageError(format!("--tol must be positive, got {tol}")));
    }
    let replicas = cli.replicas.or(file.replicas).unwrap_or(1);
    if replicas == 0 {
        return Err(UsageError("--replicas must be at least 1".into()));
    }
    let k = cli.k.or(file.k).unwrap_or(1);

    let observable_name = cli.observable.clone().or(file.observable);
    let observable = match (subcommand, observable_name) {
        ("birkhoff", None) => Some(Observable::lyapunov(map)),
        (_, Some(name)) => Some(observable_by_name(&name, a, b).map_err(|e| match e {
            ErgodicError::UnknownObservable(_) => UsageError(format!(
                "{e}; known observables: {}",
                crate::ergodic::OBSERVABLE_NAMES.join(", ")
            )),
            other => UsageError(other.to_string()),
        })?),
        (_, None) => None,
    };

    Ok(RunConfig {
        subcommand,
        map,
        n,
        seed: cli.seed.or(file.seed).unwrap_or(1),
        x0,
        observable,
        tol,
        format: cli.format.or(file.format).unwrap_or(Format::Json),
        output: cli.output.clone().or(file.output),
        burn_in: cli.burn_in.or(file.burn_in).unwrap_or(0),
        replicas,
        k,
    })
}

fn read_config(path: &Path) -> Result<ConfigFile, UsageError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| UsageError(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| UsageError(format!("invalid config {}: {e}", path.display())))
}

/// Parse `args` (including the program name) and run the subcommand.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = sink.write_all(text.as_bytes());
            return code;
        }
    };
    let config = match resolve(&cli.command) {
        Ok(c) => c,
        Err(UsageError(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            return EXIT_USAGE;
        }
    };
    match execute(&config, stdout, stderr) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Io(e)) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_FAILURE
        }
    }
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Io(io::Error),
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

/// What a subcommand produced, ready to be written in either format.
struct Output {
    json: Value,
    csv: Box<dyn FnOnce(&mut dyn Write) -> io::Result<()>>,
    code: i32,
}

fn execute(
    config: &RunConfig,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<i32, Failure> {
    let out = match config.subcommand {
        "lyapunov" | "birkhoff" => cmd_average(config, stderr),
        "verify" => cmd_verify(config),
        "orbit" => cmd_orbit(config)?,
        "exceptional" => cmd_exceptional(config)?,
        "sample" => cmd_sample(config)?,
        other => unreachable!("unknown subcommand {other}"),
    };
    match &config.output {
        Some(path) => {
            let mut file = BufWriter::new(File::create(path)?);
            emit(out.json, out.csv, config.format, &mut file)?;
            file.flush()?;
        }
        None => emit(out.json, out.csv, config.format, stdout)?,
    }
    Ok(out.code)
}

fn emit(
    json: Value,
    csv: Box<dyn FnOnce(&mut dyn Write) -> io::Result<()>>,
    format: Format,
    sink: &mut dyn Write,
) -> io::Result<()> {
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut *sink, &json)?;
            writeln!(sink)
        }
        Format::Csv => csv(sink),
    }
}

fn start_point(config: &RunConfig, replica: usize) -> f64 {
    match config.x0 {
        Some(x) if replica == 0 => x,
        _ => cauchy_start(&config.map, config.seed.wrapping_add(replica as u64)),
    }
}

/// `lyapunov` and `birkhoff`. With several replicas, replica `i` uses seed
/// `seed + i`; an explicit `--x0` applies to replica 0 only.
fn cmd_average(config: &RunConfig, stderr: &mut dyn Write) -> Output {
    let map = config.map;
    let observable = config.observable.clone();
    let target = match &observable {
        Some(o) if config.subcommand == "birkhoff" => o.target,
        _ => Some(LN_2),
    };
    let name = match &observable {
        Some(o) if config.subcommand == "birkhoff" => o.name.clone(),
        _ => format!("lyapunov({},{})", map.a(), map.b()),
    };

    let runs: Vec<Result<BirkhoffResult, ErgodicError>> = {
        use rayon::prelude::*;
        (0..config.replicas)
            .into_par_iter()
            .map(|i| {
                let x0 = start_point(config, i);
                match (&observable, config.subcommand) {
                    (Some(o), "birkhoff") => {
                        birkhoff_average(&map, o, x0, config.n, config.burn_in)
                    }
                    _ => lyapunov_exponent(&map, x0, config.n, config.burn_in),
                }
            })
            .collect()
    };

    let mut code = EXIT_OK;
    let mut results = Vec::with_capacity(runs.len());
    for (i, r) in runs.into_iter().enumerate() {
        match r {
            Ok(r) => results.push(r),
            Err(ErgodicError::Overflow { index, partial }) => {
                let _ = writeln!(
                    stderr,
                    "replica {i}: orbit overflowed at step {index}; partial result reported"
                );
                code = EXIT_FAILURE;
                results.push(*partial);
            }
            Err(e) => {
                let _ = writeln!(stderr, "replica {i}: {e}");
                code = EXIT_FAILURE;
            }
        }
    }

    let abs_error = |est: f64| target.map(|t| (est - t).abs());
    let json = if config.replicas == 1 && results.len() == 1 {
        let r = &results[0];
        let mut v = serde_json::to_value(r).expect("plain data");
        let obj = v.as_object_mut().expect("struct");
        obj.insert("a".into(), json!(map.a()));
        obj.insert("b".into(), json!(map.b()));
        obj.insert("observable".into(), json!(name));
        obj.insert("seed".into(), json!(config.seed));
        obj.insert("target".into(), json!(target));
        obj.insert("abs_error".into(), json!(abs_error(r.estimate)));
        v
    } else {
        let estimates: Vec<f64> = results.iter().map(|r| r.estimate).collect();
        let mean = estimates.iter().sum::<f64>() / estimates.len().max(1) as f64;
        json!({
            "a": map.a(),
            "b": map.b(),
            "observable": name,
            "seed": config.seed,
            "target": target,
            "replicas": results,
            "mean": mean,
            "abs_error": abs_error(mean),
        })
    };
    let multi = config.replicas > 1;
    let csv = Box::new(move |w: &mut dyn Write| -> io::Result<()> {
        if multi {
            writeln!(w, "replica,k,running_average")?;
            for (i, r) in results.iter().enumerate() {
                for (k, avg) in &r.trace {
                    writeln!(w, "{i},{k},{avg:?}")?;
                }
            }
            Ok(())
        } else {
            match results.first() {
                Some(r) => r.write_csv(w),
                None => writeln!(w, "k,running_average"),
            }
        }
    });
    Output { json, csv, code }
}

fn cmd_verify(config: &RunConfig) -> Output {
    let report = run_verification(&VerifyConfig {
        tol: config.tol,
        seed: config.seed,
        ks_samples: config.n,
    });
    let code = if report.all_pass() {
        EXIT_OK
    } else {
        EXIT_FAILURE
    };
    let json = serde_json::to_value(&report).expect("plain data");
    let csv = Box::new(move |w: &mut dyn Write| -> io::Result<()> {
        writeln!(w, "check,value,target,abs_error,tolerance,converged,pass")?;
        for (name, c) in &report.checks {
            writeln!(
                w,
                "\"{name}\",{:?},{:?},{:?},{:?},{},{}",
                c.value, c.target, c.abs_error, c.tolerance, c.converged, c.pass
            )?;
        }
        Ok(())
    });
    Output { json, csv, code }
}

fn cmd_orbit(config: &RunConfig) -> Result<Output, Failure> {
    let x0 = start_point(config, 0);
    let orbit = iterate_orbit(&config.map, x0, config.n, DEFAULT_POLE_TOLERANCE)
        .map_err(|e| Failure::Usage(e.to_string()))?;
    let json = json!({
        "a": config.map.a(),
        "b": config.map.b(),
        "x0": orbit.x0,
        "points": orbit.points,
        "pole_hit": orbit.pole_hit,
        "truncated": orbit.truncated,
    });
    let code = if orbit.truncated {
        EXIT_FAILURE
    } else {
        EXIT_OK
    };
    let csv = Box::new(move |w: &mut dyn Write| -> io::Result<()> {
        writeln!(w, "k,x")?;
        for (k, x) in orbit.points.iter().enumerate() {
            writeln!(w, "{k},{x:?}")?;
        }
        Ok(())
    });
    Ok(Output { json, csv, code })
}

fn cmd_exceptional(config: &RunConfig) -> Result<Output, Failure> {
    let set = exceptional_set(config.k).map_err(|e| Failure::Usage(e.to_string()))?;
    let json = serde_json::to_value(&set).expect("plain data");
    let csv = Box::new(move |w: &mut dyn Write| -> io::Result<()> {
        writeln!(w, "root,lo,hi,level")?;
        for r in &set.roots {
            writeln!(w, "{:?},{:?},{:?},{}", r.value, r.lo, r.hi, r.level)?;
        }
        Ok(())
    });
    Ok(Output {
        json,
        csv,
        code: EXIT_OK,
    })
}

fn cmd_sample(config: &RunConfig) -> Result<Output, Failure> {
    let dist = CauchyDist::new(config.map.a(), config.map.b()).expect("validated with the map");
    let samples =
        cauchy_sample(&dist, config.seed, config.n).map_err(|e| Failure::Usage(e.to_string()))?;
    let json = json!({
        "a": dist.a(),
        "b": dist.b(),
        "seed": config.seed,
        "n": samples.len(),
        "samples": samples,
    });
    let csv = Box::new(move |w: &mut dyn Write| write_samples_csv(w, &samples));
    Ok(Output {
        json,
        csv,
        code: EXIT_OK,
    })
}
