mod axioms;
mod commands;
mod parse;
mod report;

use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use commands::{CliError, Context, Kind};
use report::{render_json, render_text, Outcome};

#[derive(Parser, Debug)]
#[command(name = "homalg", version, about = "Relative homological algebra over Z and Z/n")]
struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Maximum number of cell-attaching stages.
    #[arg(long, global = true, default_value_t = 8)]
    stage_bound: usize,
    /// Largest cyclic order tested by the pure class over Z.
    #[arg(long, global = true, default_value_t = 16)]
    torsion_bound: u64,
    /// Report wall-clock time.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args, Debug)]
struct Setting {
    #[arg(long)]
    ring: String,
    #[arg(long, default_value = "categorical")]
    class: String,
}

#[derive(Args, Debug)]
struct MapArgs {
    /// Source complex.
    #[arg(long)]
    source: String,
    /// Target complex.
    #[arg(long)]
    target: String,
    /// Components as `n: [[..]]; m: [[..]]`.
    #[arg(long, default_value = "")]
    map: String,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Ext^n_P(A, B).
    Ext {
        #[command(flatten)]
        setting: Setting,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        #[arg(long)]
        degree: usize,
    },
    /// A P-projective resolution of a module.
    Resolve {
        #[command(flatten)]
        setting: Setting,
        #[arg(long)]
        module: String,
        #[arg(long, default_value_t = 3)]
        length: usize,
    },
    /// Homology of a complex, or P-homology against a test module.
    Homology {
        #[command(flatten)]
        setting: Setting,
        #[arg(long)]
        complex: String,
        #[arg(long)]
        degree: Option<i64>,
        #[arg(long)]
        test: Option<String>,
    },
    /// Factor a chain map by the small-object argument.
    Factor {
        #[command(flatten)]
        setting: Setting,
        #[command(flatten)]
        map: MapArgs,
        #[arg(long, value_enum, default_value_t = Kind::CofAcyclic)]
        kind: Kind,
        /// Only attach cells up to this degree.
        #[arg(long)]
        window: Option<i64>,
    },
    /// Lifting properties of a map against the generating cofibrations.
    Lift {
        #[command(flatten)]
        setting: Setting,
        #[command(flatten)]
        map: MapArgs,
    },
    /// Randomized check of the model-structure axioms.
    CheckAxioms {
        #[command(flatten)]
        setting: Setting,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 50)]
        cases: usize,
    },
    /// Pure against categorical Ext with the comparison map.
    Compare {
        #[arg(long)]
        ring: String,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        #[arg(long)]
        degree: usize,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Ext { .. } => "ext",
            Command::Resolve { .. } => "resolve",
            Command::Homology { .. } => "homology",
            Command::Factor { .. } => "factor",
            Command::Lift { .. } => "lift",
            Command::CheckAxioms { .. } => "check-axioms",
            Command::Compare { .. } => "compare",
        }
    }
}

fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let ctx = |s: &Setting| Context::new(&s.ring, &s.class, cli.stage_bound, cli.torsion_bound);
    match &cli.command {
        Command::Ext { setting, from, to, degree } => commands::ext_cmd(&ctx(setting)?, from, to, *degree),
        Command::Resolve { setting, module, length } => commands::resolve_cmd(&ctx(setting)?, module, *length),
        Command::Homology { setting, complex, degree, test } => {
            commands::homology_cmd(&ctx(setting)?, complex, *degree, test.as_deref())
        }
        Command::Factor { setting, map, kind, window } => {
            commands::factor_cmd(&ctx(setting)?, &map.source, &map.target, &map.map, *kind, *window)
        }
        Command::Lift { setting, map } => commands::lift_cmd(&ctx(setting)?, &map.source, &map.target, &map.map),
        Command::CheckAxioms { setting, seed, cases } => commands::check_axioms_cmd(&ctx(setting)?, *seed, *cases),
        Command::Compare { ring, from, to, degree } => {
            let c = Context::new(ring, "categorical", cli.stage_bound, cli.torsion_bound)?;
            commands::compare_cmd(&c, from, to, *degree)
        }
    }
}

fn configure_threads() {
    let threads = std::env::var("HOMALG_THREADS").ok().and_then(|t| t.parse::<usize>().ok());
    if let Some(n) = threads.filter(|&n| n > 0) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    configure_threads();
    let start = Instant::now();
    let result = run(&cli);
    let timing = cli.timing.then(|| start.elapsed().as_millis());
    match result {
        Ok(out) => {
            let text = match cli.format {
                Format::Text => render_text(&out, timing),
                Format::Json => render_json(cli.command.name(), &out, timing),
            };
            println!("{text}");
            if out.success {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
