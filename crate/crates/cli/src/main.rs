//! pff: tables, AGR scans, spaces of initial conditions and KdV grids over
//! finite, p-adic and rational-function fields.

mod cmd;
mod error;
mod output;
mod parse;

use clap::{Parser, Subcommand, ValueEnum};
use std::path::PathBuf;

#[derive(Parser, Debug)]
#[command(name = "pff", version, about = "Discrete integrable maps over finite fields")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Tsv,
    Json,
    Pgm,
    Dot,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    /// strict arithmetic on F_p
    Fp,
    /// projective line PF_p with ∞ and indeterminate forms
    Pfp,
    /// p-adic orbit, reduced at every step
    Qp,
    /// symbolic parameter, reduced at the end
    Ratfunc,
    /// exact rationals
    Rational,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MapKind {
    Dp2,
    Psi,
    Qp1,
    Qp2,
}

/// Map family and parameters shared by `agr` and `traj`.
#[derive(clap::Args, Debug, Clone)]
pub struct MapArgs {
    #[arg(long, value_enum)]
    pub map: MapKind,
    /// Ψ_γ exponent
    #[arg(long, default_value_t = 2)]
    pub gamma: u32,
    #[arg(long, default_value_t = 2, allow_hyphen_values = true)]
    pub a: i64,
    #[arg(long, default_value_t = 3, allow_hyphen_values = true)]
    pub b: i64,
    #[arg(long, default_value_t = 2, allow_hyphen_values = true)]
    pub q: i64,
    #[arg(long, default_value_t = 5, allow_hyphen_values = true)]
    pub tau0: i64,
    /// dP_II step of z_n
    #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
    pub delta: i64,
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    pub z0: i64,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Reduced rational solutions of dP_II with the tau conditions.
    Dp2Table {
        /// odd primes; repeat for several rows
        #[arg(long = "p", required = true)]
        p: Vec<u64>,
        #[arg(long = "big-n", default_value_t = 3)]
        big_n: usize,
        #[arg(long, default_value = "1")]
        lambda: String,
        /// terms per row (default 2p)
        #[arg(long)]
        steps: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Tsv)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Almost-good-reduction scan over random lifts, or a single query.
    Agr {
        #[command(flatten)]
        map: MapArgs,
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long = "m-max", default_value_t = 32)]
        m_max: usize,
        #[arg(long, default_value_t = 64)]
        precision: u32,
        /// draw fresh dP_II parameters per sample
        #[arg(long)]
        randomize_params: bool,
        /// single starting point (rationals in Z_p)
        #[arg(long, allow_hyphen_values = true, requires = "y")]
        x: Option<String>,
        #[arg(long, allow_hyphen_values = true, requires = "x")]
        y: Option<String>,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        n: i64,
        #[arg(long, value_enum, default_value_t = Format::Tsv)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Discrete KdV grid over PF_r from an initial-data file or a soliton.
    Kdv {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        m: u32,
        #[arg(long = "delta0")]
        delta0: String,
        /// TSV: first line x_1^0..x_N^0, then one y_1^t per line
        #[arg(long, conflicts_with = "soliton")]
        init: Option<PathBuf>,
        #[arg(long)]
        soliton: bool,
        /// soliton γ_i, comma separated
        #[arg(long, requires = "soliton")]
        gammas: Option<String>,
        /// soliton l_i, comma separated
        #[arg(long, requires = "soliton")]
        ls: Option<String>,
        /// soliton grid width (sites n = 1..width)
        #[arg(long, default_value_t = 20)]
        width: usize,
        #[arg(long, default_value_t = 10)]
        steps: usize,
        #[arg(long, value_enum, default_value_t = Mode::Ratfunc)]
        mode: Mode,
        #[arg(long, value_enum, default_value_t = Format::Tsv)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Points of the space of initial conditions of dP_II and the step on it.
    Omega {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        m: u32,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        n: i64,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        a: String,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        delta: String,
        #[arg(long, default_value = "-1", allow_hyphen_values = true)]
        z0: String,
        #[arg(long)]
        minimal: bool,
        /// print the cycle decomposition (over one period when δ ≠ 0)
        #[arg(long)]
        orbits: bool,
        #[arg(long, value_enum, default_value_t = Format::Tsv)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Orbit of one starting point in a chosen arithmetic.
    Traj {
        #[command(flatten)]
        map: MapArgs,
        #[arg(long)]
        p: u64,
        #[arg(long, value_enum, default_value_t = Mode::Pfp)]
        mode: Mode,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, allow_hyphen_values = true)]
        y: String,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        n: i64,
        #[arg(long, default_value_t = 10)]
        steps: usize,
        #[arg(long, default_value_t = 64)]
        precision: u32,
        #[arg(long, value_enum, default_value_t = Format::Tsv)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn run(cli: Cli) -> error::CliResult<()> {
    match cli.command {
        Command::Dp2Table {
            p,
            big_n,
            lambda,
            steps,
            format,
            out,
        } => cmd::dp2_table::run(&p, big_n, &lambda, steps, format, &out),
        Command::Agr {
            map,
            p,
            samples,
            seed,
            m_max,
            precision,
            randomize_params,
            x,
            y,
            n,
            format,
            out,
        } => {
            let opts = cmd::agr::AgrOpts {
                samples,
                seed,
                m_max,
                precision,
                randomize_params,
            };
            match (x, y) {
                (Some(x), Some(y)) => cmd::agr::run_point(&map, p, &x, &y, n, &opts, format, &out),
                _ => cmd::agr::run_scan(&map, p, &opts, format, &out),
            }
        }
        Command::Kdv {
            p,
            m,
            delta0,
            init,
            soliton,
            gammas,
            ls,
            width,
            steps,
            mode,
            format,
            out,
        } => {
            let ctx = parse::field(p, m)?;
            let d0 = parse::fq(&ctx, &delta0)?;
            if soliton {
                let (Some(g), Some(l)) = (gammas, ls) else {
                    return error::invalid("soliton mode needs --gammas and --ls");
                };
                cmd::kdv::run_soliton(&ctx, &d0, &g, &l, width, steps, format, &out)
            } else {
                let Some(init) = init else {
                    return error::invalid("give --init FILE or --soliton");
                };
                cmd::kdv::run_init(&ctx, &d0, &init, steps, mode, format, &out)
            }
        }
        Command::Omega {
            p,
            m,
            n,
            a,
            delta,
            z0,
            minimal,
            orbits,
            format,
            out,
        } => cmd::omega::run(p, m, n, [&a, &delta, &z0], minimal, orbits, format, &out),
        Command::Traj {
            map,
            p,
            mode,
            x,
            y,
            n,
            steps,
            precision,
            format,
            out,
        } => cmd::traj::run(&map, p, mode, &x, &y, n, steps, precision, format, &out),
    }
}

fn main() {
    let cli = Cli::parse();
    if let Err(e) = run(cli) {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}
