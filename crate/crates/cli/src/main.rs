//! `fermat53`: traces, conductors, ghost searches, bounds and newform elimination
//! for x^5 + y^p + z^3 = 0 from the command line.

mod commands;
mod config;
mod source;

use clap::{Parser, Subcommand, ValueEnum};
use std::path::PathBuf;
use std::process::ExitCode;

use config::{Format, RunConfig};

#[derive(Parser, Debug)]
#[command(name = "fermat53", version, about)]
pub struct Cli {
    /// JSON file with run settings
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// output format
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// largest norm of a prime of K to use
    #[arg(long, global = true)]
    norm_cap: Option<u64>,
    /// directory for downloaded data
    #[arg(long, global = true, env = "FERMAT53_CACHE_DIR")]
    cache_dir: Option<PathBuf>,
    /// worker threads
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Route {
    Count,
    Sum,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum DegeneratePoint {
    #[value(name = "0")]
    Zero,
    Inf,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Frobenius trace at a prime of K for a residue t0
    Trace {
        /// hypergeometric parameters a,b,c,d
        #[arg(long, default_value = "1/5,-1/5,1/3,-1/3")]
        params: String,
        #[arg(long)]
        ell: u64,
        #[arg(long, allow_hyphen_values = true)]
        t0: i64,
        #[arg(long, value_enum, default_value = "both")]
        route: Route,
    },
    /// Traces at the degenerate fibres t = 0 and t = infinity
    Degenerate {
        #[arg(long)]
        ell: u64,
        #[arg(long, value_enum)]
        point: DegeneratePoint,
    },
    /// Predicted conductor exponents for a putative solution or a ghost
    Conductor {
        #[arg(long, allow_hyphen_values = true, requires = "c", conflicts_with = "t0")]
        a: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        c: Option<String>,
        /// the exponent p of a putative solution
        #[arg(long, default_value_t = 7)]
        p: u32,
        #[arg(long, allow_hyphen_values = true)]
        t0: Option<String>,
        #[arg(long, default_value_t = 5)]
        q: u32,
        #[arg(long, default_value_t = 3)]
        r: u32,
    },
    /// Search for ghost solutions of a signature
    Ghost {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        r: u32,
        /// a_max,c_max,e_max
        #[arg(long = "box")]
        search_box: Option<String>,
        #[arg(long)]
        allow_two: bool,
    },
    /// Irreducibility bound C(ell)
    Bound {
        #[arg(long)]
        ell: u64,
    },
    /// Eliminate the newforms of a space
    Eliminate {
        #[arg(long, num_args = 2, value_names = ["I", "J"])]
        level: Vec<u32>,
        /// file path or http(s) URL
        #[arg(long)]
        data: String,
        /// rational primes whose slots are used
        #[arg(long, value_delimiter = ',')]
        primes: Vec<u64>,
        /// cases to use
        #[arg(long, value_delimiter = ',', default_value = "1,2,3")]
        cases: Vec<u8>,
        /// prefix of the TSV and JSON report files
        #[arg(long)]
        out: Option<PathBuf>,
        /// never touch the network
        #[arg(long)]
        offline: bool,
    },
    /// Local data of an elliptic curve from Tate's algorithm
    Tate {
        /// e3-plus, e3-minus, e2, frey-ppp or e-t
        #[arg(long)]
        curve: String,
        #[arg(long, allow_hyphen_values = true)]
        t: String,
        /// a prime; the global conductor when omitted
        #[arg(long)]
        p: Option<u64>,
    },
    /// Igusa invariants of the genus-2 fibre and its reduction at 3 and 5
    Igusa {
        #[arg(long, allow_hyphen_values = true)]
        t: String,
    },
}

fn settings(cli: &Cli) -> fermat53::Result<RunConfig> {
    let mut cfg = match &cli.config {
        Some(p) => RunConfig::load(p)?,
        None => RunConfig::default(),
    };
    if let Some(f) = cli.format {
        cfg.format = f;
    }
    if let Some(n) = cli.norm_cap {
        cfg.norm_cap = n;
    }
    if let Some(d) = &cli.cache_dir {
        cfg.cache_dir = Some(d.clone());
    }
    if let Some(t) = cli.threads {
        cfg.threads = Some(t);
    }
    Ok(cfg)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = settings(&cli).and_then(|cfg| {
        if let Some(n) = cfg.threads {
            // only fails if a pool already exists
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
        }
        commands::run(&cli.command, &cfg)
    });
    match result {
        Ok(out) => {
            print!("{}", out);
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {}", e);
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
