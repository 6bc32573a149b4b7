use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

mod cache;
mod commands;
mod output;

use cache::Cache;
use commands::{Family, Object, SpecArgs, Suite, VerifyArgs};
use output::{Format, Output};

#[derive(Parser)]
#[command(name = "rbloch", version)]
#[command(about = "Refined Bloch and scissors congruence groups of finite local rings")]
struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,

    /// Worker threads (0 uses every core)
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,

    /// Directory of the persistent result cache
    #[arg(long, global = true, env = "RBLOCH_CACHE_DIR")]
    cache_dir: Option<PathBuf>,

    /// Disable the persistent cache
    #[arg(long, global = true)]
    no_cache: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Structure of one object across a family of rings
    Table {
        #[arg(long, value_enum, default_value = "fq")]
        family: Family,
        /// `a..b` or `a..=b`; q for fields and dual numbers, p for Z/p^2
        #[arg(long)]
        range: String,
        #[arg(long, value_enum, default_value = "b")]
        object: Object,
    },
    /// Structure of an object for the given rings
    Group {
        #[arg(long = "ring", required = true)]
        rings: Vec<String>,
        #[arg(long, value_enum, default_value = "rb")]
        object: Object,
    },
    /// Run a verification suite
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long = "ring")]
        rings: Vec<String>,
        /// Largest configuration length for the configurations suite
        #[arg(long, default_value_t = 5)]
        max_n: usize,
        /// Base field sizes for the spec suite
        #[arg(long = "q")]
        qs: Vec<u64>,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        /// Random inputs for the equivariance and compatibility checks of the spec suite
        #[arg(long, default_value_t = 1000)]
        aux_samples: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Degree bound for sampled numerators and denominators
        #[arg(long, default_value_t = 4)]
        degree: usize,
        /// `t`, `inf` or a monic irreducible polynomial in t
        #[arg(long, default_value = "t")]
        place: String,
    },
    /// Eigen decomposition of the odd part of a module
    Eigen {
        #[arg(long = "ring", required = true)]
        rings: Vec<String>,
        #[arg(long, value_enum, default_value = "rp")]
        object: Object,
    },
    /// Orbit counts of unimodular configurations
    Orbits {
        #[arg(long = "ring", required = true)]
        rings: Vec<String>,
        #[arg(long = "n", default_values_t = [3usize, 4, 5])]
        ns: Vec<usize>,
    },
    /// Specialize a combination of symbols over F_q(t) at a place
    Specialize {
        #[arg(long)]
        q: u64,
        #[arg(long, default_value = "t")]
        place: String,
        /// Terms `c*{f}[g]` joined by + or -
        #[arg(long)]
        expr: String,
    },
}

fn run(cli: Cli) -> anyhow::Result<(Output, bool)> {
    let cache = Cache::open(if cli.no_cache { None } else { cli.cache_dir });
    Ok(match cli.command {
        Command::Table { family, range, object } => (commands::table(&cache, family, &range, object)?, true),
        Command::Group { rings, object } => (commands::group(&cache, &rings, object)?, true),
        Command::Verify { suite, rings, max_n, qs, samples, aux_samples, seed, degree, place } => {
            commands::verify(&VerifyArgs {
                suite,
                rings,
                max_n,
                spec: SpecArgs { qs, samples, seed, degree, place, aux_samples },
            })?
        }
        Command::Eigen { rings, object } => (commands::eigen(&rings, object)?, true),
        Command::Orbits { rings, ns } => (commands::orbits(&rings, &ns)?, true),
        Command::Specialize { q, place, expr } => (commands::specialize(q, &place, &expr)?, true),
    })
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let format = cli.format;
    if cli.threads > 0 {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(cli.threads).build_global() {
            log::warn!("could not configure the thread pool: {e}");
        }
    }
    match run(cli).and_then(|(out, pass)| Ok((out.render(format)?, pass))) {
        Ok((text, pass)) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(2);
            }
            if pass { ExitCode::SUCCESS } else { ExitCode::from(1) }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
