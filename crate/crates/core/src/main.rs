use clap::{Parser, Subcommand};
use serde_json::{json, Value};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use modelspace::cli_io::{self, CliError, CommandOutput, FileDigest, RunManifest};
use modelspace::pipeline::PipelineConfig;
use modelspace::shortproof::{HALFPLANE_RADIUS, HALFPLANE_SAMPLES};

/// Bounded univalent functions in model spaces of singular inner functions.
///
/// Exit codes: 0 pass, 1 certified failure, 2 inconclusive or bad input.
#[derive(Parser)]
#[command(version)]
struct Cli {
    /// Directory for result.json, command outputs and manifest.json.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Seed for sampled checks.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Print the structured result instead of the summary.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Entropy of a closed set and its largest complementary arcs.
    Entropy { set: PathBuf },
    /// Values of S_μ at the given points, inside or outside the disc.
    InnerEval { measure: PathBuf, points: PathBuf },
    /// Residual of f against K_Θ.
    Membership {
        function: PathBuf,
        theta: PathBuf,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
    },
    /// Full construction of a bounded univalent g ∈ K_{S_μ}.
    Construct {
        measure: PathBuf,
        #[arg(long)]
        config: Option<PathBuf>,
    },
    /// Construction from a seed with a large exterior value.
    Shortproof { measure: PathBuf },
    /// Validation of the explicit Paley–Wiener function.
    PwExample {
        #[arg(long, default_value_t = HALFPLANE_RADIUS)]
        radius: f64,
        #[arg(long, default_value_t = HALFPLANE_SAMPLES)]
        samples: usize,
    },
    /// Whether K_Θ contains a bounded univalent function.
    Decide { theta: PathBuf },
}

struct Inputs(Vec<FileDigest>);

impl Inputs {
    fn read(&mut self, path: &Path) -> Result<Vec<u8>, CliError> {
        let bytes = cli_io::read_input(path)?;
        self.0.push(FileDigest { path: path.display().to_string(), sha256: cli_io::digest_hex(&bytes) });
        Ok(bytes)
    }
}

fn dispatch(cli: &Cli, inputs: &mut Inputs) -> Result<(&'static str, Value, CommandOutput), CliError> {
    Ok(match &cli.command {
        Command::Entropy { set } => {
            let s = cli_io::parse_set(set, &inputs.read(set)?)?;
            ("entropy", Value::Null, cli_io::cmd_entropy(&s)?)
        }
        Command::InnerEval { measure, points } => {
            let mu = cli_io::parse_measure(measure, &inputs.read(measure)?)?;
            let pts = cli_io::parse_points(points, &inputs.read(points)?)?;
            ("inner-eval", Value::Null, cli_io::cmd_inner_eval(&mu, &pts)?)
        }
        Command::Membership { function, theta, tol } => {
            let f = cli_io::parse_series(function, &inputs.read(function)?)?;
            let t = cli_io::parse_theta(theta, &inputs.read(theta)?)?;
            ("membership", json!({ "tol": tol }), cli_io::cmd_membership(&f, &t, *tol)?)
        }
        Command::Construct { measure, config } => {
            let mu = cli_io::parse_measure(measure, &inputs.read(measure)?)?;
            let cfg = match config {
                Some(p) => cli_io::parse_config(p, &inputs.read(p)?)?,
                None => PipelineConfig::default(),
            };
            ("construct", serde_json::to_value(&cfg)?, cli_io::cmd_construct(&mu, &cfg)?)
        }
        Command::Shortproof { measure } => {
            let mu = cli_io::parse_measure(measure, &inputs.read(measure)?)?;
            ("shortproof", json!({ "seed": cli.seed }), cli_io::cmd_shortproof(&mu, cli.seed)?)
        }
        Command::PwExample { radius, samples } => {
            ("pw-example", json!({ "radius": radius, "samples": samples }), cli_io::cmd_pw_example(*radius, *samples)?)
        }
        Command::Decide { theta } => {
            let t = cli_io::parse_theta(theta, &inputs.read(theta)?)?;
            ("decide", Value::Null, cli_io::cmd_decide(&t)?)
        }
    })
}

fn run(cli: &Cli) -> Result<i32, CliError> {
    let start = Instant::now();
    let threads = cli_io::thread_cap()?;
    let mut inputs = Inputs(Vec::new());
    let (command, config, output) = dispatch(cli, &mut inputs)?;
    let result = serde_json::to_vec_pretty(&output.result)?;
    if cli.json {
        println!("{}", String::from_utf8_lossy(&result));
    } else {
        print!("{}", output.summary);
    }
    if let Some(dir) = &cli.out {
        let mut files = vec![("result.json".to_string(), result)];
        files.extend(output.files);
        let mut manifest = RunManifest {
            command: command.into(),
            args: std::env::args().skip(1).collect(),
            tool_version: env!("CARGO_PKG_VERSION").into(),
            seed: cli.seed,
            threads,
            inputs: inputs.0,
            config,
            wall_clock_seconds: start.elapsed().as_secs_f64(),
            outputs: vec![],
        };
        let path = cli_io::write_outputs(dir, &files, &mut manifest)?;
        eprintln!("manifest: {}", path.display());
    }
    Ok(output.status.exit_code())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
