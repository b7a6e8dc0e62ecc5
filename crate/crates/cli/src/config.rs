//! Command-line flags and the validated job they describe.

use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use free_series::Word;
use iterated_sums::SumCtx;
use mzv_closed_forms::Mzv;
use padic_core::{build_ring, Exec, Zq, DEFAULT_PRECISION};

use crate::CliError;

/// Largest number of summation terms a `q^N` ladder may use by default.
pub const DEFAULT_TERMS: u64 = 1_000_000;

#[derive(Parser, Debug)]
#[command(name = "padic-mzv", version, about = "Cyclotomic p-adic multiple zeta values in depth at most two")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub opts: Opts,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    /// One coefficient g_base[word].
    Compute,
    /// Every distinct-letter depth-two coefficient with s + t <= word cap, as JSON lines.
    Table,
    /// Run verification suites; exit 1 on the first failing audit.
    Verify,
}

#[derive(Args, Debug, Clone)]
pub struct Opts {
    /// The prime p.
    #[arg(long, global = true, default_value_t = 2)]
    pub p: u64,
    /// The level M (coprime to p).
    #[arg(long = "M", global = true, default_value_t = 3)]
    pub m: u64,
    /// Reporting precision in p-adic digits.
    #[arg(long, global = true, default_value_t = DEFAULT_PRECISION)]
    pub precision: u32,
    /// Ladder length: limits use q^N for N <= N_max.  Default: largest with q^N <= 10^6.
    #[arg(long = "N-max", global = true)]
    pub ladder: Option<u32>,
    /// Degree bound of the ODE solver.  Default depends on the suite.
    #[arg(long, global = true)]
    pub n_max: Option<u64>,
    /// Longest word considered.
    #[arg(long, global = true, default_value_t = 5)]
    pub word_cap: usize,
    /// Index i of g_i.
    #[arg(long, global = true, default_value_t = 1)]
    pub base: u8,
    /// Word such as "e2 e0^1 e3 e0^1".
    #[arg(long, global = true)]
    pub word: Option<String>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Suites to run: padic, sums, shuffle, dual, ode-match, residue, funprop, or all.
    #[arg(long, global = true, value_delimiter = ',')]
    pub suite: Vec<String>,
    /// Digits required of every certificate and audit.
    #[arg(long, global = true, default_value_t = 4)]
    pub threshold: i32,
    /// Worker threads; 1 runs everything sequentially.
    #[arg(long, global = true, env = "PADIC_MZV_THREADS")]
    pub threads: Option<usize>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

/// A validated configuration with the shared computation state.
pub struct Job {
    pub opts: Opts,
    pub ring: Arc<Zq>,
    pub ctx: Arc<SumCtx>,
    pub exec: Exec,
    /// `q^N_max`.
    pub budget: u64,
    pub ladder: u32,
}

impl Job {
    pub fn new(opts: Opts) -> Result<Job, CliError> {
        let ring = Arc::new(build_ring(opts.p, opts.m, opts.precision)?);
        if opts.word_cap == 0 || opts.word_cap > 8 {
            return Err(CliError::Usage(format!("word cap {} outside 1..=8", opts.word_cap)));
        }
        if opts.threshold < 1 {
            return Err(CliError::Usage("threshold must be positive".into()));
        }
        let q = ring.q();
        let ladder = match opts.ladder {
            Some(n) => n,
            None => {
                (1..).take_while(|&n| q.checked_pow(n).is_some_and(|x| x <= DEFAULT_TERMS as u128)).last().unwrap_or(0)
            }
        };
        if ladder < 3 {
            return Err(CliError::Usage(format!("N_max = {ladder}: a limit needs at least three ladder points")));
        }
        let budget =
            q.checked_pow(ladder)
                .filter(|&b| b <= u64::MAX as u128 / 4)
                .ok_or_else(|| CliError::Usage(format!("q^N_max = {q}^{ladder} is too large")))? as u64;
        let exec = if opts.threads == Some(1) { Exec::Sequential } else { Exec::Parallel };
        if let Some(t) = opts.threads {
            if t == 0 {
                return Err(CliError::Usage("--threads must be at least 1".into()));
            }
            #[cfg(feature = "parallel")]
            {
                // Only the first call can configure the global pool.
                let _ = rayon::ThreadPoolBuilder::new().num_threads(t).build_global();
            }
        }
        let ctx = Arc::new(SumCtx::with_exec(ring.clone(), exec));
        Ok(Job { opts, ring, ctx, exec, budget, ladder })
    }

    pub fn engine(&self) -> Mzv {
        Mzv::new(self.ctx.clone(), self.budget).with_floor(1)
    }

    pub fn m(&self) -> u64 {
        self.opts.m
    }

    pub fn word(&self) -> Result<Word, CliError> {
        let s = self.opts.word.as_deref().ok_or_else(|| CliError::Usage("--word is required".into()))?;
        let w = Word::parse_checked(s, self.m()).map_err(|e| CliError::Domain(e.to_string()))?;
        if w.len() > self.opts.word_cap {
            return Err(CliError::Domain(format!("word of length {} exceeds the cap {}", w.len(), self.opts.word_cap)));
        }
        Ok(w)
    }
}
