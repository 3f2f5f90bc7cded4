//! Batch experiment runner. Every subcommand reads its own section of a TOML
//! config, writes CSV tables into `--out` and prints one summary line per
//! verdict. Exit codes: 0 pass, 1 failed verdict or computation, 2 bad config.

pub mod commands;
pub mod config;
pub mod output;

use std::path::PathBuf;

use clap::{Parser, Subcommand};

pub use commands::{CommandError, Outcome};
pub use config::{ConfigError, ConfigFile};

#[derive(Debug, Parser)]
#[command(name = "plate-lab", version, about = "Decay, optimality and nonexistence experiments for u_tt + Δ²u + u = f(u)")]
pub struct Cli {
    /// TOML file with one section per subcommand, e.g. [linear-decay].
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,
    /// Directory for CSV output.
    #[arg(long, global = true, value_name = "DIR", default_value = ".")]
    pub out: PathBuf,
    /// Worker threads; 0 uses every core.
    #[arg(long, global = true, value_name = "N", default_value_t = 0)]
    pub jobs: usize,
    /// Overrides the seed of every configured datum.
    #[arg(long, global = true, value_name = "N")]
    pub seed: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exponent table over the (1/p, 1/q) square, 1/p >= 1/q.
    #[command(after_help = "Writes theory_table.csv:\n  n,1/p,1/q,d_pl,beta,gamma,class,region,large_exp,small_exp\n\
        Exponents are exact fractions. class: strict | boundary | boundary-log-unknown | inadmissible.\n\
        region: q-branch | p-branch | central.\n\
        Config keys [theory-table]: n, grid (flags take precedence).")]
    TheoryTable {
        #[arg(long)]
        n: Option<u32>,
        /// Grid step; must be 1/k.
        #[arg(long)]
        grid: Option<f64>,
    },
    /// Fitted decay rates of the linear solution against the predictions.
    #[command(after_help = "Writes linear_decay_series.csv: t,1/q,norm\n\
        and linear_decay_fit.csv: pair,1/p,1/q,predicted,fitted,r_squared,samples,gamma,log_fitted,verdict\n\
        Config keys [linear-decay]: n, points, half_width, datum, datum parameters\n\
        (width | radius | k | lo, hi | scale | cutoff), amplitude, seed, pairs = [\"1,4\", ...],\n\
        t_min, t_max, samples, regime = large | small, tolerance.")]
    LinearDecay,
    /// Lower bound on the kernel's sup norm over a moving annulus.
    #[command(after_help = "Writes optimality.csv: t,x_star,value,scaled,sine\n\
        value = |K(t)*f| at x_star, scaled = value * t^(n/2).\n\
        Config keys [optimality]: n, a, profile_lo, profile_hi, t_min, t_max, per_decade, tolerance.")]
    Optimality,
    /// Time-marching of the semilinear equation with f(u) = |u|^alpha.
    #[command(after_help = "Writes semilinear_series.csv: t,1/q,norm,weighted,running_sup\n\
        semilinear_fit.csv: 1/q,predicted,fitted,r_squared,weighted_sup,verdict\n\
        and, with a threshold search, semilinear_threshold.csv: epsilon,passed\n\
        Config keys [semilinear]: n, points, half_width, alpha, epsilon, dt, horizon,\n\
        quadrature = trapezoid | simpson, blowup_threshold, t_min, samples,\n\
        sampling = phase_locked | geometric, q = [\"inf\", \"2\"], datum and its parameters (u1),\n\
        u0_factor, coupling, fit_start, fit_end, tolerance,\n\
        search_lo, search_hi, search_factor, search_per_round, search_rounds, search_fraction.")]
    Semilinear,
    /// Exponent bookkeeping and datum pairings for the nonexistence argument.
    #[command(after_help = "Writes nonexistence_verdicts.csv: n,m,alpha,threshold,window_lo,window_hi,k,exponent,verdict\n\
        datum_scaling.csv: n,k,tau,pairing\n\
        and datum_scaling_fit.csv: n,k,predicted,fitted,verdict\n\
        Config keys [nonexistence]: dims, m, alpha (lists of fractions), scaling = [[n, k], ...],\n\
        tau_min, tau_max, taus, tolerance.")]
    Nonexistence,
    /// Bessel-quadrature solution against the FFT solution for radial data.
    #[command(after_help = "Writes radial_crosscheck.csv: t,r,fft,quadrature,rel_err\n\
        Config keys [radial-crosscheck]: n, points, half_width, profile_lo, profile_hi,\n\
        times, per_time, level, tolerance.")]
    RadialCrosscheck,
}

fn execute(cli: &Cli) -> Result<Outcome, CommandError> {
    let file = match &cli.config {
        Some(path) => ConfigFile::load(path)?,
        None => ConfigFile::default(),
    };
    use config::require;
    match &cli.command {
        Command::TheoryTable { n, grid } => commands::theory_table_cmd(file.theory_table, *n, *grid),
        Command::LinearDecay => commands::linear_decay_cmd(require(file.linear_decay, "linear-decay")?, cli.seed),
        Command::Optimality => commands::optimality_cmd(require(file.optimality, "optimality")?),
        Command::Semilinear => commands::semilinear_cmd(require(file.semilinear, "semilinear")?, cli.seed),
        Command::Nonexistence => commands::nonexistence_cmd(require(file.nonexistence, "nonexistence")?),
        Command::RadialCrosscheck => {
            commands::radial_crosscheck_cmd(require(file.radial_crosscheck, "radial-crosscheck")?)
        }
    }
}

/// Parses `args` (program name first), runs the subcommand and returns the exit code.
pub fn run_cli<I: IntoIterator<Item = String>>(args: I) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.jobs).build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: cannot start {} workers: {e}", cli.jobs);
            return 2;
        }
    };
    match pool.install(|| execute(&cli)) {
        Ok(outcome) => {
            for table in &outcome.tables {
                match table.write_atomic(&cli.out) {
                    Ok(path) => println!("wrote {}", path.display()),
                    Err(e) => {
                        eprintln!("error: writing {}: {e}", table.name);
                        return 1;
                    }
                }
            }
            for line in &outcome.summary {
                println!("{line}");
            }
            if outcome.pass {
                println!("verdict: pass");
                0
            } else {
                println!("verdict: fail");
                1
            }
        }
        Err(CommandError::Config(msg)) => {
            eprintln!("config error: {msg}");
            2
        }
        Err(CommandError::Run(msg)) => {
            eprintln!("run failed: {msg}");
            1
        }
    }
}
