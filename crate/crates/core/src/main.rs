use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use bdchoquet::cli::catalog::list_catalog;
use bdchoquet::cli::config::RawConfig;
use bdchoquet::cli::runner::{run, EXIT_CONFIG};

/// Choquet-type Bernstein-Durrmeyer experiments.
#[derive(Parser, Debug)]
#[command(name = "bdchoquet", version)]
struct Args {
    /// Experiment config, flat `key = value` lines.
    #[arg(long, required_unless_present = "list")]
    config: Option<PathBuf>,
    /// CSV destination; overrides `output` in the config. Stdout if neither is set.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Overrides `seed` in the config.
    #[arg(long)]
    seed: Option<u64>,
    /// Worker threads.
    #[arg(long)]
    jobs: Option<usize>,
    /// Print built-in functions, capacities, operators and checks.
    #[arg(long)]
    list: bool,
}

fn fail(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(EXIT_CONFIG as u8)
}

fn main() -> ExitCode {
    let args = Args::parse();
    if args.list {
        print!("{}", list_catalog());
        return ExitCode::SUCCESS;
    }
    if let Some(j) = args.jobs {
        if j == 0 {
            return fail("--jobs must be positive");
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(j).build_global() {
            return fail(e);
        }
    }
    let path = args.config.expect("required unless --list");
    let text = match std::fs::read_to_string(&path) {
        Ok(t) => t,
        Err(e) => return fail(format!("cannot read {}: {e}", path.display())),
    };
    let mut cfg = match RawConfig::parse(&text) {
        Ok(c) => c,
        Err(e) => return fail(e),
    };
    if let Some(s) = args.seed {
        cfg.set("seed", s.to_string());
    }
    let out = args.out.or_else(|| cfg.get("output").map(PathBuf::from));
    let outcome = match run(&cfg) {
        Ok(o) => o,
        Err(e) => return fail(e),
    };

    // Render fully before touching the destination so a failure leaves no partial file.
    let mut buf = Vec::new();
    if let Err(e) = outcome.report.write_to(&mut buf) {
        return fail(e);
    }
    let written = match &out {
        Some(p) => File::create(p).and_then(|f| {
            let mut w = BufWriter::new(f);
            w.write_all(&buf)?;
            w.flush()
        }),
        None => std::io::stdout().lock().write_all(&buf),
    };
    if let Err(e) = written {
        return fail(format!("cannot write output: {e}"));
    }
    if !outcome.all_passed {
        eprintln!("one or more checks failed");
    }
    ExitCode::from(outcome.exit_code() as u8)
}
