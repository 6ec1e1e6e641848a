//! `hypervol`: volumes of hyperbolic solids from the command line.
//!
//! Exit codes: 0 success, 1 a cross-check or Monte Carlo comparison failed,
//! 2 invalid input, 3 not realizable, 4 quadrature did not converge,
//! 5 I/O failure.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod crosscheck;
mod jobs;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use hypervol_core::orthoscheme::{
    angles_to_edges, edges_to_angles, OrthoschemeAngles, OrthoschemeEdges,
};
use hypervol_core::{Curvature, Error};

use crosscheck::{Grid, Suite};
use jobs::{Job, JobSpec};
use output::{emit, OutputArgs};

#[derive(Debug)]
pub enum CliError {
    Invalid(String),
    Core(Error),
    Io(String),
    Failed(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Failed(_) => 1,
            CliError::Invalid(_) => 2,
            CliError::Core(Error::Domain(_) | Error::Unsupported(_)) => 2,
            CliError::Core(Error::NotRealizable(_)) => 3,
            CliError::Core(Error::Convergence { .. }) => 4,
            CliError::Io(_) => 5,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Invalid(m) | CliError::Io(m) | CliError::Failed(m) => f.write_str(m),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

#[derive(Debug, Parser)]
#[command(name = "hypervol", version, about = "Volumes of hyperbolic solids")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate the volume of one shape.
    Vol {
        #[command(flatten)]
        job: JobSpec,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Convert orthoscheme edges to dihedral angles or back.
    Convert(ConvertArgs),
    /// Run a cross-validation suite; exits 1 if any row fails.
    Crosscheck {
        #[arg(value_enum)]
        suite: Suite,
        #[arg(long, value_enum, default_value_t = Grid::Coarse)]
        grid: Grid,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Compare a Monte Carlo estimate with the analytic value; exits 1 if |z| > 4.
    Mc {
        #[command(flatten)]
        job: JobSpec,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Run an array of jobs from a JSON file; jobs with `samples` run Monte Carlo.
    Batch {
        path: PathBuf,
        #[command(flatten)]
        out: OutputArgs,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Direction {
    EdgesToAngles,
    AnglesToEdges,
}

#[derive(Debug, Args)]
struct ConvertArgs {
    #[arg(value_enum)]
    direction: Direction,
    #[arg(long, allow_hyphen_values = true)]
    a: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    b: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    c: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    beta: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    gamma: Option<f64>,
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    k: f64,
    #[arg(long)]
    degrees: bool,
    #[command(flatten)]
    out: OutputArgs,
}

fn need(name: &str, v: Option<f64>) -> Result<f64, CliError> {
    v.ok_or_else(|| CliError::Invalid(format!("missing --{name}")))
}

fn convert(args: &ConvertArgs) -> Result<Map<String, Value>, CliError> {
    let k = Curvature::new(args.k).map_err(|e| CliError::Invalid(e.to_string()))?;
    let kk = k.get();
    let (edges, angles) = match args.direction {
        Direction::EdgesToAngles => {
            if args.alpha.is_some() || args.beta.is_some() || args.gamma.is_some() {
                return Err(CliError::Invalid(
                    "edges-to-angles takes --a, --b, --c only".into(),
                ));
            }
            let e = OrthoschemeEdges::new(
                need("a", args.a)? / kk,
                need("b", args.b)? / kk,
                need("c", args.c)? / kk,
            )
            .map_err(|e| CliError::Invalid(e.to_string()))?;
            (e, edges_to_angles(&e))
        }
        Direction::AnglesToEdges => {
            if args.a.is_some() || args.b.is_some() || args.c.is_some() {
                return Err(CliError::Invalid(
                    "angles-to-edges takes --alpha, --beta, --gamma only".into(),
                ));
            }
            let unit = |v: f64| if args.degrees { v.to_radians() } else { v };
            let ang = OrthoschemeAngles::new(
                unit(need("alpha", args.alpha)?),
                unit(need("beta", args.beta)?),
                unit(need("gamma", args.gamma)?),
            )?;
            (angles_to_edges(&ang)?, ang)
        }
    };
    let mut m = Map::new();
    m.insert(
        "direction".into(),
        json!(args
            .direction
            .to_possible_value()
            .expect("named")
            .get_name()),
    );
    m.insert("k".into(), json!(kk));
    m.insert("a".into(), json!(kk * edges.a()));
    m.insert("b".into(), json!(kk * edges.b()));
    m.insert("c".into(), json!(kk * edges.c()));
    m.insert("z".into(), json!(kk * edges.hypotenuse()));
    m.insert("diagonal".into(), json!(kk * edges.diagonal()));
    m.insert("alpha".into(), json!(angles.alpha()));
    m.insert("beta".into(), json!(angles.beta()));
    m.insert("gamma".into(), json!(angles.gamma()));
    m.insert("delta".into(), json!(angles.delta()));
    Ok(m)
}

fn vol_record(job: &Job) -> Result<Map<String, Value>, CliError> {
    let ev = job.evaluate()?;
    let mut m = Map::new();
    m.insert("shape".into(), json!(job.shape.name()));
    m.insert("params".into(), job.params_json());
    m.insert("volume".into(), json!(ev.volume));
    m.insert("method".into(), json!(ev.method));
    m.insert("error_estimate".into(), json!(ev.error_estimate));
    Ok(m)
}

fn mc_record(job: &Job) -> Result<(Map<String, Value>, bool), CliError> {
    let (analytic, e) = job.run_mc()?;
    let z = e.z_score(analytic);
    let pass = z.abs() <= 4.0;
    let mut m = Map::new();
    m.insert("shape".into(), json!(job.shape.name()));
    m.insert("params".into(), job.params_json());
    m.insert("analytic".into(), json!(analytic));
    m.insert("mean".into(), json!(e.mean));
    m.insert("stderr".into(), json!(e.stderr));
    m.insert("z".into(), json!(z));
    m.insert("samples".into(), json!(e.samples));
    m.insert("seed".into(), json!(e.seed));
    m.insert("shards".into(), json!(e.shards));
    m.insert("pass".into(), json!(pass));
    Ok((m, pass))
}

type Record = Map<String, Value>;

/// Records of every job, plus the first failure if any job failed.
fn batch(path: &PathBuf) -> Result<(Vec<Record>, Option<CliError>), CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    let specs: Vec<JobSpec> = serde_json::from_str(&text)
        .map_err(|e| CliError::Invalid(format!("{}: {e}", path.display())))?;
    let jobs: Vec<(Job, bool)> = specs
        .iter()
        .enumerate()
        .map(|(i, s)| {
            s.validate()
                .map(|j| (j, s.samples.is_some() || s.seed.is_some()))
                .map_err(|e| CliError::Invalid(format!("job {i}: {e}")))
        })
        .collect::<Result<_, _>>()?;
    let mut records = Vec::new();
    let mut first_error = None;
    for (i, (job, is_mc)) in jobs.iter().enumerate() {
        let result = if *is_mc {
            mc_record(job).map(|(m, pass)| {
                if !pass && first_error.is_none() {
                    first_error = Some(CliError::Failed(format!("job {i}: Monte Carlo |z| > 4")));
                }
                m
            })
        } else {
            vol_record(job)
        };
        match result {
            Ok(m) => records.push(m),
            Err(e) => {
                let mut m = Map::new();
                m.insert("shape".into(), json!(job.shape.name()));
                m.insert("params".into(), job.params_json());
                m.insert("error".into(), json!(e.to_string()));
                m.insert("exit_code".into(), json!(e.code()));
                records.push(m);
                if first_error.is_none() {
                    first_error = Some(e);
                }
            }
        }
    }
    Ok((records, first_error))
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Vol { job, out } => {
            let job = job.validate()?;
            emit(&[vol_record(&job)?], &out)
        }
        Command::Convert(args) => {
            let m = convert(&args)?;
            emit(&[m], &args.out)
        }
        Command::Crosscheck { suite, grid, out } => {
            let rows = crosscheck::run(suite, grid)?;
            emit(&rows, &out)?;
            let failed = rows.iter().filter(|r| r["pass"] != json!(true)).count();
            if failed > 0 {
                return Err(CliError::Failed(format!(
                    "{failed} of {} cross-check rows failed",
                    rows.len()
                )));
            }
            Ok(())
        }
        Command::Mc { job, out } => {
            let job = job.validate()?;
            let (m, pass) = mc_record(&job)?;
            emit(&[m], &out)?;
            if !pass {
                return Err(CliError::Failed(
                    "Monte Carlo estimate differs by more than 4 standard errors".into(),
                ));
            }
            Ok(())
        }
        Command::Batch { path, out } => {
            let (records, err) = batch(&path)?;
            emit(&records, &out)?;
            err.map_or(Ok(()), Err)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
