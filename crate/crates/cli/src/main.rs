use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use spanrel::pipeline::{self, CategoryKind, Command, PipelineConfig, RelationTag};
use spanrel::report::{self, Format};

#[derive(Parser)]
#[command(name = "spanrel", version, about = "Check allegory laws on span quotients of finite categories")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
    #[command(flatten)]
    opts: Opts,
}

#[derive(Subcommand)]
enum Cmd {
    /// Category laws, factorization-system axioms and the split-epi lemma.
    Validate,
    /// Allegory laws and the equivalent characterizations of allegoricity.
    CheckAllegory,
    /// Dump M*, E∘ and E• and check E• stability.
    Ebullet,
    /// Hom-class counts, and the canonical representative of `--file`.
    Quotient,
    /// Tabulations, pullback preservation and M-tabulation.
    Tabulate,
    /// The map category, covers and monos, and the counit.
    MapCounit,
    /// Re-run the failing checks of a report (`--file`) in isolation.
    Replay,
}

#[derive(Clone, Copy, ValueEnum)]
enum CategoryArg {
    Finset,
    Fincat,
    Table,
}

#[derive(Clone, Copy, ValueEnum)]
enum RelationArg {
    #[value(name = "simE")]
    SimE,
    #[value(name = "simEo")]
    SimEo,
    #[value(name = "simEbullet")]
    SimEbullet,
    #[value(name = "approx")]
    Approx,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Text,
}

#[derive(Args)]
struct Opts {
    #[arg(long, global = true, value_enum, default_value = "finset")]
    category: CategoryArg,
    #[arg(long, global = true, default_value_t = 2)]
    max_size: usize,
    #[arg(long, global = true, default_value_t = 2)]
    max_objects: usize,
    #[arg(long, global = true, default_value_t = 3)]
    max_morphisms: usize,
    /// Table category, span or relation JSON; a report for `replay`.
    #[arg(long, global = true)]
    file: Option<PathBuf>,
    /// Factorization system name; defaults to surj-inj on finset.
    #[arg(long, global = true)]
    system: Option<String>,
    #[arg(long, global = true, value_enum, default_value = "simE")]
    relation: RelationArg,
    /// Carrier bound for closures and witness searches.
    #[arg(long, global = true, default_value_t = 3)]
    bound: usize,
    #[arg(long, global = true, default_value_t = 2)]
    apex_bound: usize,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, default_value_t = 200)]
    samples: usize,
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: FormatArg,
    /// Run sweeps on one thread.
    #[arg(long, global = true)]
    sequential: bool,
    /// Record wall-clock time per check (makes reports nondeterministic).
    #[arg(long, global = true)]
    timing: bool,
}

impl Opts {
    fn config(&self) -> PipelineConfig {
        PipelineConfig {
            category: match self.category {
                CategoryArg::Finset => CategoryKind::Finset,
                CategoryArg::Fincat => CategoryKind::Fincat,
                CategoryArg::Table => CategoryKind::Table,
            },
            max_size: self.max_size,
            max_objects: self.max_objects,
            max_morphisms: self.max_morphisms,
            file: self.file.as_ref().map(|p| p.display().to_string()),
            system: self.system.clone(),
            relation: match self.relation {
                RelationArg::SimE => RelationTag::SimE,
                RelationArg::SimEo => RelationTag::SimEo,
                RelationArg::SimEbullet => RelationTag::SimEbullet,
                RelationArg::Approx => RelationTag::Approx,
            },
            bound: self.bound,
            apex_bound: self.apex_bound,
            seed: self.seed,
            samples: self.samples,
            sequential: self.sequential,
            timing: self.timing,
        }
    }
}

fn run(cli: &Cli) -> Result<i32> {
    let cfg = cli.opts.config();
    let lines = match cli.command {
        Cmd::Validate => pipeline::run(Command::Validate, &cfg)?,
        Cmd::CheckAllegory => pipeline::run(Command::CheckAllegory, &cfg)?,
        Cmd::Ebullet => pipeline::run(Command::Ebullet, &cfg)?,
        Cmd::Quotient => pipeline::run(Command::Quotient, &cfg)?,
        Cmd::Tabulate => pipeline::run(Command::Tabulate, &cfg)?,
        Cmd::MapCounit => pipeline::run(Command::MapCounit, &cfg)?,
        Cmd::Replay => {
            let path = cli.opts.file.as_ref().context("replay needs --file REPORT")?;
            let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            pipeline::replay(&report::parse_lines(&text)?)?
        }
    };
    let format = match cli.opts.format {
        FormatArg::Json => Format::Json,
        FormatArg::Text => Format::Text,
    };
    let mut out: Box<dyn Write> = match &cli.opts.out {
        Some(p) => Box::new(BufWriter::new(File::create(p).with_context(|| format!("creating {}", p.display()))?)),
        None => Box::new(io::stdout().lock()),
    };
    report::write_lines(&mut out, &lines, format)?;
    out.flush()?;
    Ok(report::exit_code(&lines))
}

fn main() -> ExitCode {
    // Exit code 2 means "unknown"; usage errors exit 3 like other errors.
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(3)
        }
    }
}
