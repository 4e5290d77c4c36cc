use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use wsnsim::demo::demo_config;
use wsnsim::output::{topology_csv, write_outputs};
use wsnsim::schema::{load_config, LoadError};
use wsnsim_core::config::ScenarioConfig;
use wsnsim_core::crypto::standard_vector_checks;
use wsnsim_core::engine::{run, RunError, RunOutput};
use wsnsim_core::rng::Substreams;
use wsnsim_core::topology::{deploy, neighbors};

const EXIT_OK: u8 = 0;
const EXIT_INVALID: u8 = 1;
const EXIT_IO: u8 = 2;

#[derive(Parser)]
#[command(
    name = "wsnsim",
    about = "Deterministic single-hop sensor-network security simulator",
    version
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run a scenario file and write trace/events/summary outputs.
    Run {
        /// Scenario TOML file.
        #[arg(long)]
        config: PathBuf,
        /// Output directory (created if needed).
        #[arg(long)]
        out: PathBuf,
        /// Override the scenario's master seed.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Check the cipher and MAC against their standard reference vectors.
    Vectors,
    /// Write and run the built-in demo scenario.
    Demo {
        /// Output directory (created if needed).
        #[arg(long, default_value = "demo-out")]
        out: PathBuf,
        /// Master seed for the demo run.
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
    /// Print the deployed topology as CSV (node, position, peripheral flag,
    /// neighbor list).
    DumpTopology {
        /// Scenario TOML file.
        #[arg(long)]
        config: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // clap renders help/version through the error path too
            let is_help = matches!(
                e.kind(),
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
            );
            let _ = e.print();
            return if is_help { ExitCode::from(EXIT_OK) } else { ExitCode::from(EXIT_INVALID) };
        }
    };
    let code = match cli.cmd {
        Cmd::Run { config, out, seed } => cmd_run(&config, &out, seed),
        Cmd::Vectors => cmd_vectors(),
        Cmd::Demo { out, seed } => cmd_demo(&out, seed),
        Cmd::DumpTopology { config } => cmd_dump_topology(&config),
    };
    ExitCode::from(code)
}

fn load_or_report(path: &Path) -> Result<ScenarioConfig, u8> {
    match load_config(path) {
        Ok(cfg) => Ok(cfg),
        Err(LoadError::Io(e)) => {
            eprintln!("error: cannot read {}: {e}", path.display());
            Err(EXIT_IO)
        }
        Err(e) => {
            eprintln!("error: {e}");
            Err(EXIT_INVALID)
        }
    }
}

fn execute(cfg: &ScenarioConfig) -> Result<RunOutput, u8> {
    run(cfg).map_err(|e| {
        eprintln!("error: {e}");
        match e {
            RunError::Config(_) | RunError::Deploy(_) | RunError::Keying(_) => EXIT_INVALID,
        }
    })
}

fn persist(dir: &Path, cfg: &ScenarioConfig, out: &RunOutput) -> Result<(), u8> {
    write_outputs(dir, cfg, out).map_err(|e| {
        eprintln!("error: cannot write outputs under {}: {e}", dir.display());
        EXIT_IO
    })
}

fn report(out: &RunOutput, dir: &Path) {
    let s = &out.summary;
    println!(
        "run complete: {} trace rows, {} events -> {}",
        out.trace.len(),
        out.events.len(),
        dir.display()
    );
    println!(
        "messages: sent {} accepted {} rejected {} dropped {}",
        s.messages.sent, s.messages.accepted, s.messages.rejected, s.messages.dropped
    );
    for d in &s.detections {
        match d.latency() {
            Some(lat) => println!(
                "capture target {}: quarantined at t={} (latency {lat})",
                d.node,
                d.quarantined_at.expect("latency implies time")
            ),
            None => println!("capture target {}: not detected", d.node),
        }
    }
    if s.false_positives > 0 {
        println!("honest quarantines: {}", s.false_positives);
    }
}

fn cmd_run(config: &Path, out_dir: &Path, seed: Option<u64>) -> u8 {
    let mut cfg = match load_or_report(config) {
        Ok(cfg) => cfg,
        Err(code) => return code,
    };
    if let Some(seed) = seed {
        cfg.seed = seed;
    }
    let out = match execute(&cfg) {
        Ok(out) => out,
        Err(code) => return code,
    };
    if let Err(code) = persist(out_dir, &cfg, &out) {
        return code;
    }
    report(&out, out_dir);
    EXIT_OK
}

fn cmd_vectors() -> u8 {
    let mut all_ok = true;
    for (name, ok) in standard_vector_checks() {
        println!("{} {name}", if ok { "ok  " } else { "FAIL" });
        all_ok &= ok;
    }
    if all_ok {
        EXIT_OK
    } else {
        EXIT_INVALID
    }
}

fn cmd_demo(out_dir: &Path, seed: u64) -> u8 {
    let cfg = demo_config(seed);
    if let Err(e) = std::fs::create_dir_all(out_dir) {
        eprintln!("error: cannot create {}: {e}", out_dir.display());
        return EXIT_IO;
    }
    let scenario_path = out_dir.join("scenario.toml");
    if let Err(e) = std::fs::write(&scenario_path, wsnsim::schema::echo_toml(&cfg)) {
        eprintln!("error: cannot write {}: {e}", scenario_path.display());
        return EXIT_IO;
    }
    let out = match execute(&cfg) {
        Ok(out) => out,
        Err(code) => return code,
    };
    if let Err(code) = persist(out_dir, &cfg, &out) {
        return code;
    }
    println!("demo scenario written to {}", scenario_path.display());
    report(&out, out_dir);
    EXIT_OK
}

fn cmd_dump_topology(config: &Path) -> u8 {
    let cfg = match load_or_report(config) {
        Ok(cfg) => cfg,
        Err(code) => return code,
    };
    // identical placement stream to an actual run of the same config
    let subs = Substreams::new(cfg.seed);
    let deployment = match deploy(&cfg.deployment, &mut subs.stream("placement", &[])) {
        Ok(d) => d,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_INVALID;
        }
    };
    let adjacency = neighbors(&deployment);
    print!("{}", topology_csv(&deployment, &adjacency));
    EXIT_OK
}
