use std::fmt;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use qdeph::campaign::{emit_report, render_report, run_campaign, CampaignConfig, OutputFormat, TheoremId};
use qdeph::channel::{
    classify_phase_damping, depolarizing_channel, identity_channel, phase_damping_channel,
    random_channel, shift_representation, Classification, ProbabilityDistribution, QuantumChannel,
};
use qdeph::entropy::check_theorem1;
use qdeph::io::{parse_lambda, read_json, to_json, write_json, StateFile};
use qdeph::math::{partial_trace, ComplexMatrix, Subsystem};
use qdeph::roof::{default_ensemble_size, roof_upper_bound};
use qdeph::state::{random_correlated_spec, random_density_with_rank, CorrelatedStateSpec, DensityMatrix};
use qdeph::C64;

#[derive(Parser)]
#[command(name = "qdeph", version, about = "Entropy-gain bounds for dephasing channels")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a randomized verification campaign.
    Verify(VerifyArgs),
    /// Decide whether a λ sequence is a phase-damping kernel.
    Classify {
        #[arg(long)]
        input: PathBuf,
    },
    /// Write the phase-damping channel of a distribution.
    BuildChannel {
        #[arg(long)]
        distribution: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Upper-estimate the convex closure of the output entropy.
    Roof(RoofArgs),
    /// Print the equality-case showcases.
    Demo,
}

#[derive(clap::Args)]
struct VerifyArgs {
    #[arg(long, value_parser = parse_theorem)]
    theorem: TheoremId,
    #[arg(long, default_value_t = 100)]
    trials: usize,
    #[arg(long, default_value_t = 4)]
    dim_h: usize,
    #[arg(long, default_value_t = 3)]
    dim_k: usize,
    #[arg(long, default_value_t = 3)]
    kraus: usize,
    /// Defaults to 1e-10 for thm4/thm5 and 1e-8 otherwise.
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Report path; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long)]
    ensemble_size: Option<usize>,
    #[arg(long, default_value_t = 4)]
    restarts: usize,
}

#[derive(clap::Args)]
struct RoofArgs {
    #[arg(long)]
    state: PathBuf,
    #[arg(long)]
    channel: PathBuf,
    /// Defaults to rank(σ)².
    #[arg(long)]
    ensemble_size: Option<usize>,
    #[arg(long, default_value_t = 4)]
    restarts: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

impl From<Format> for OutputFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Json => OutputFormat::Json,
            Format::Csv => OutputFormat::Csv,
        }
    }
}

fn parse_theorem(s: &str) -> Result<TheoremId, String> {
    s.parse().map_err(|e: qdeph::Error| e.to_string())
}

enum Failure {
    /// Bad input or arguments (exit 2).
    Input(String),
    /// Theorem-backed trials failed (exit 1).
    Trials(usize),
}

impl From<qdeph::Error> for Failure {
    fn from(e: qdeph::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Input(msg) => f.write_str(msg),
            Failure::Trials(n) => write!(f, "{n} theorem-backed trial(s) failed"),
        }
    }
}

fn read<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    read_json(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn verify(args: VerifyArgs) -> Result<(), Failure> {
    let format = OutputFormat::from(args.format);
    let cfg = CampaignConfig {
        theorem: args.theorem,
        trials: args.trials,
        dim_h: args.dim_h,
        dim_k: args.dim_k,
        num_kraus: args.kraus,
        tolerance: args.tol.unwrap_or(args.theorem.default_tolerance()),
        master_seed: args.seed,
        ensemble_size: args.ensemble_size,
        restarts: args.restarts,
        output: args.out.clone(),
        format,
    };
    let report = run_campaign(&cfg)?;
    match &args.out {
        Some(path) => emit_report(&report, format, path)?,
        None => print!("{}", render_report(&report, format)?),
    }
    let s = &report.summary;
    eprintln!(
        "{} {}: {}/{} passed, min margin {}{}",
        report.kind,
        cfg.theorem,
        s.passed,
        s.trials,
        s.min_margin.map_or("n/a".to_string(), |m| format!("{m:e}")),
        s.argmin_seed.map_or(String::new(), |seed| format!(" (trial seed {seed})")),
    );
    match report.theorem_backed_failures() {
        0 => Ok(()),
        n => Err(Failure::Trials(n)),
    }
}

fn classify(input: &Path) -> Result<(), Failure> {
    let text = std::fs::read_to_string(input)
        .map_err(|e| Failure::Input(format!("{}: {e}", input.display())))?;
    let lambda = parse_lambda(&text).map_err(|e| Failure::Input(format!("{}: {e}", input.display())))?;
    let verdict = match classify_phase_damping(&lambda) {
        Classification::PhaseDamping(pi) => json!({"phase_damping": true, "pi": pi.weights()}),
        Classification::NotPhaseDamping(v) => json!({"phase_damping": false, "violation": v}),
    };
    println!("{}", to_json(&verdict)?);
    Ok(())
}

fn build_channel(distribution: &Path, out: &Path) -> Result<(), Failure> {
    let pi: ProbabilityDistribution = read(distribution)?;
    write_json(out, &phase_damping_channel(&pi)?)?;
    Ok(())
}

fn roof(args: RoofArgs) -> Result<(), Failure> {
    let file: StateFile = read(&args.state)?;
    let channel: QuantumChannel = read(&args.channel)?;
    // A bipartite state whose second factor matches the channel is reduced to Tr_H ρ.
    let sigma = match file.dims {
        Some((h, k)) if k == channel.dim_in() && h * k != channel.dim_in() => DensityMatrix::new(
            partial_trace(file.state.matrix(), h, k, Subsystem::Second)?,
        )?,
        _ => file.state,
    };
    let m = match args.ensemble_size {
        Some(m) => m,
        None => default_ensemble_size(&sigma)?,
    };
    let est = roof_upper_bound(&sigma, &channel, m, args.restarts, args.seed)?;
    println!("{}", to_json(&est)?);
    Ok(())
}

fn demo() -> Result<(), Failure> {
    let r = |re| C64::new(re, 0.0);
    println!("Fourier classification");
    let lambda = [r(1.0), r(0.5), r(0.0), r(0.5)];
    let pi = classify_phase_damping(&lambda)
        .distribution()
        .cloned()
        .ok_or_else(|| Failure::Input("demo kernel rejected".into()))?;
    println!("  λ = (1, 1/2, 0, 1/2)  ->  π = {:?}", pi.weights());
    if let Classification::NotPhaseDamping(v) = classify_phase_damping(&[r(1.0), r(2.0)]) {
        println!("  λ = (1, 2)           ->  rejected: {v:?}");
    }
    let dist = phase_damping_channel(&pi)?.choi_distance(&shift_representation(&pi));
    println!("  kernel vs shift-unitary mixture: Choi distance {dist:e}");

    println!("Correlated-state bound, equality cases");
    let spec = random_correlated_spec(3, 2, 1);
    let id = check_theorem1(&spec, &identity_channel(2))?;
    println!("  Ω = Id:              lhs {:.12}  rhs {:.12}  margin {:e}", id.lhs, id.rhs, id.margin);
    let diag = CorrelatedStateSpec::new(
        ComplexMatrix::from_real_diag(&spec.weights()),
        spec.vectors().to_vec(),
    )?;
    let d = check_theorem1(&diag, &random_channel(2, 2, 2))?;
    println!("  diagonal coefficients: lhs {:.12}  rhs {:.12}  margin {:e}", d.lhs, d.rhs, d.margin);
    let g = check_theorem1(&spec, &random_channel(2, 2, 2))?;
    println!("  generic instance:     lhs {:.12}  rhs {:.12}  margin {:e}", g.lhs, g.rhs, g.margin);

    println!("Convex closure of the output entropy");
    let sigma = random_density_with_rank(3, 2, 3);
    let id = roof_upper_bound(&sigma, &identity_channel(3), 4, 2, 0)?;
    println!("  Ω = Id:              {:e}", id.value);
    let dep = roof_upper_bound(&sigma, &depolarizing_channel(3, 1.0)?, 4, 2, 0)?;
    println!("  fully depolarizing:  {:.12}  (log 3 = {:.12})", dep.value, 3f64.ln());
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Verify(args) => verify(args),
        Command::Classify { input } => classify(&input),
        Command::BuildChannel { distribution, out } => build_channel(&distribution, &out),
        Command::Roof(args) => roof(args),
        Command::Demo => demo(),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("qdeph: {f}");
            match f {
                Failure::Input(_) => ExitCode::from(2),
                Failure::Trials(_) => ExitCode::from(1),
            }
        }
    }
}
