use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use srtool::manifest::resolve_budget;
use srtool::render;
use srtool::sweep::run_sweep;
use srtool::{ComplexDocument, SweepManifest};
use srtool_core::betti::hochster_betti_multi;
use srtool_core::conjecture::{verify, verify_subdivision_theorem};
use srtool_core::{FieldSpec, InvariantBundle, SimplicialComplex, SweepOptions};

/// Exit status for malformed input or any other error.
const EXIT_ERROR: u8 = 2;
/// Exit status when the subset budget is exceeded.
const EXIT_BUDGET: u8 = 3;

#[derive(Parser)]
#[command(name = "srtool", version, about = "Stanley-Reisner rings of simplicial complexes and their subdivisions")]
struct Cli {
    /// Worker threads (default: available cores). Output does not depend on it.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Write the output to this path instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Complex document (TOML).
    file: PathBuf,
    /// Coefficient field: Q, or a prime p / GF(p).
    #[arg(long, default_value = "Q")]
    field: FieldSpec,
    /// Work with the barycentric subdivision instead.
    #[arg(long)]
    subdivide: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Depth, regularity, multiplicity and the ring predicates.
    Invariants(Common),
    /// Graded Betti numbers by Hochster's formula.
    Betti {
        #[command(flatten)]
        common: Common,
        /// Only internal degrees j <= cap.
        #[arg(long)]
        cap: Option<usize>,
    },
    /// The barycentric subdivision, as a document.
    Sd {
        file: PathBuf,
    },
    /// Multiplicity bounds for k[Δ], or for k[sd Δ] with --subdivide.
    Conjecture(Common),
    /// Run property suites over a corpus described by a manifest.
    Sweep {
        manifest: PathBuf,
    },
}

fn load(c: &Common) -> Result<SimplicialComplex> {
    let doc = ComplexDocument::read(&c.file)?;
    c.field.validate()?;
    let complex = doc.to_complex().with_context(|| format!("building {}", c.file.display()))?;
    Ok(if c.subdivide {
        complex.barycentric_subdivision()
    } else {
        complex
    })
}

fn emit(out: Option<&Path>, text: String) -> Result<()> {
    match out {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn json_text(v: &impl serde::Serialize) -> Result<String> {
    Ok(serde_json::to_string_pretty(v)? + "\n")
}

fn options(cap: Option<usize>) -> Result<SweepOptions> {
    Ok(SweepOptions {
        cap,
        budget: resolve_budget(None)?,
    })
}

fn run(cli: &Cli) -> Result<u8> {
    let out = cli.out.as_deref();
    match &cli.command {
        Command::Invariants(c) => {
            let b = InvariantBundle::compute(&load(c)?, c.field)?;
            let text = if cli.json {
                json_text(&render::invariants_json(&b))?
            } else {
                render::invariants_text(&b)
            };
            emit(out, text)?;
        }
        Command::Betti { common, cap } => {
            let complex = load(common)?;
            let table = hochster_betti_multi(&complex, &[common.field], &options(*cap)?)?.remove(0);
            let text = if cli.json {
                json_text(&render::betti_json(&table))?
            } else {
                render::betti_text(&table)
            };
            emit(out, text)?;
        }
        Command::Sd { file } => {
            let doc = ComplexDocument::read(file)?;
            let sd = doc.to_complex()?.barycentric_subdivision();
            let name = doc.name.map(|n| format!("sd({n})"));
            emit(out, ComplexDocument::from_complex(&sd, name).to_canonical_string())?;
        }
        Command::Conjecture(c) => {
            let doc = ComplexDocument::read(&c.file)?;
            c.field.validate()?;
            let complex = doc.to_complex()?;
            let opts = options(None)?;
            let report = if c.subdivide {
                verify_subdivision_theorem(&complex, c.field, &opts)?
            } else {
                verify(&complex, c.field, &opts)?
            };
            let text = if cli.json {
                json_text(&render::conjecture_json(&report))?
            } else {
                render::conjecture_text(&report)
            };
            emit(out, text)?;
            let holds = report.upper_holds && report.lower_holds != Some(false);
            return Ok(if holds { 0 } else { 1 });
        }
        Command::Sweep { manifest } => {
            let m = SweepManifest::read(manifest)?;
            let result = run_sweep(&m)?;
            let text = if cli.json {
                json_text(&result)?
            } else {
                result.summary_text()
            };
            emit(out, text)?;
            return Ok(result.exit_code());
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_ERROR);
        }
    }
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            let budget = matches!(
                e.downcast_ref::<srtool_core::Error>(),
                Some(srtool_core::Error::BudgetExceeded { .. })
            );
            ExitCode::from(if budget { EXIT_BUDGET } else { EXIT_ERROR })
        }
    }
}
