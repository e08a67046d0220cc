//! `permsim`: randomized permutation-similarity / graph-isomorphism test.
//!
//! Exit codes: `test` returns 1 for DISTINCT and 0 otherwise; `oracle`
//! returns 0 when a witness exists and 1 when none does. Every command
//! returns 2 on usage, parse or parameter errors.

mod input;

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use num_traits::ToPrimitive;
use permsim::bench::{run_bench, DEFAULT_SIZES};
use permsim::detsim::DEFAULT_TRIALS;
use permsim::hunter::DEFAULT_BUDGET;
use permsim::oracle::ORACLE_GUARD;
use permsim::{
    brute_force_similar, equality_test, hunt, isomorphism_classes, permutation_similarity_test, Decision, Draw,
    HuntConfig, IntMatrix, PrimeField, TestParams, Verdict, VerdictKind, MERSENNE_61,
};

use crate::input::Format;

/// Largest vertex count `hunt --n` enumerates.
const HUNT_ENUMERATION_CEILING: usize = 6;

#[derive(Parser, Debug)]
#[command(name = "permsim", version, about = "Randomized determinant test for permutation-similar matrices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Prime modulus p.
    #[arg(long = "prime", default_value_t = MERSENNE_61)]
    prime: u64,
    /// Random seed; every run is a pure function of its flags and inputs.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
struct Inputs {
    a: PathBuf,
    b: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Auto)]
    format: Format,
    /// Graph to use from the first graph6 file (1-based).
    #[arg(long, default_value_t = 1)]
    line_a: usize,
    /// Graph to use from the second graph6 file (1-based).
    #[arg(long, default_value_t = 1)]
    line_b: usize,
    /// Keep matrix entries as exact integers instead of reducing them mod p on load.
    #[arg(long)]
    exact: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Randomized determinant test (exit 1 = DISTINCT, 0 = INDISTINGUISHABLE).
    Test {
        #[command(flatten)]
        inputs: Inputs,
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = DEFAULT_TRIALS)]
        trials: usize,
        /// Run the matrix-equality test (random additive shift) instead.
        #[arg(long)]
        equality: bool,
    },
    /// Brute-force search over all n! permutations (exit 0 = similar, 1 = not).
    Oracle {
        #[command(flatten)]
        inputs: Inputs,
        #[command(flatten)]
        common: Common,
        /// Run the oracle above n = 10.
        #[arg(long)]
        force_oracle: bool,
    },
    /// Search for co-det and strongly-co-det candidate pairs.
    Hunt {
        /// graph6 (or DIMACS) corpus file.
        corpus: Option<PathBuf>,
        /// Enumerate every isomorphism class on this many vertices instead.
        #[arg(long, conflicts_with = "corpus")]
        n: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Auto)]
        format: Format,
        #[command(flatten)]
        common: Common,
        /// Independent trials per co-det pair.
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
        /// Skip the diagonal-perturbation re-stress of candidates.
        #[arg(long)]
        no_perturb: bool,
    },
    /// Time one similarity trial per size and fit the log-log slope.
    Bench {
        #[arg(long, value_delimiter = ',', default_values_t = DEFAULT_SIZES)]
        sizes: Vec<usize>,
        #[command(flatten)]
        common: Common,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<u8> {
    match command {
        Command::Test {
            inputs,
            common,
            trials,
            equality,
        } => run_test(&inputs, &common, trials, equality),
        Command::Oracle {
            inputs,
            common,
            force_oracle,
        } => run_oracle(&inputs, &common, force_oracle),
        Command::Hunt {
            corpus,
            n,
            format,
            common,
            budget,
            no_perturb,
        } => run_hunt(corpus, n, format, &common, budget, !no_perturb),
        Command::Bench { sizes, common } => run_bench_cmd(&sizes, &common),
    }
}

fn emit(common: &Common, text: &str) -> Result<()> {
    match &common.out {
        Some(path) => fs::write(path, text).with_context(|| format!("cannot write {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load_pair(inputs: &Inputs, field: PrimeField) -> Result<(IntMatrix, IntMatrix)> {
    let load = |path, line| -> Result<IntMatrix> {
        let m = input::load_matrix(path, inputs.format, line)?;
        Ok(if inputs.exact { m } else { m.reduce_mod(field).lift() })
    };
    Ok((load(&inputs.a, inputs.line_a)?, load(&inputs.b, inputs.line_b)?))
}

fn run_test(inputs: &Inputs, common: &Common, trials: usize, equality: bool) -> Result<u8> {
    let params = TestParams::new(common.prime, trials, common.seed)?;
    let (a, b) = load_pair(inputs, params.field())?;
    let verdict = if equality {
        equality_test(&a, &b, &params)?
    } else {
        permutation_similarity_test(&a, &b, &params)?
    };
    emit(common, &render_verdict(&verdict, &a, &b, &params, equality))?;
    Ok(if verdict.is_distinct() { 1 } else { 0 })
}

fn render_verdict(v: &Verdict, a: &IntMatrix, b: &IntMatrix, params: &TestParams, equality: bool) -> String {
    let mut s = String::new();
    let kind = match v.kind {
        VerdictKind::Distinct => "DISTINCT",
        VerdictKind::Indistinguishable => "INDISTINGUISHABLE",
    };
    let decision = match v.decision {
        Decision::Randomized if equality => "randomized-equality",
        Decision::Randomized => "randomized",
        Decision::DimensionMismatch => "dimension-mismatch",
        Decision::DirectComparison => "direct-comparison",
    };
    let _ = writeln!(s, "verdict: {kind}");
    let _ = writeln!(s, "decision: {decision}");
    let _ = writeln!(s, "n: {} vs {}", a.n(), b.n());
    let _ = writeln!(s, "p: {}", params.p());
    let _ = writeln!(s, "seed: {}", params.seed());
    let _ = writeln!(s, "trials_run: {}", v.trials_run);
    let label = if equality { "det(.+X)" } else { "det f(.)" };
    for (t, (x, y)) in v.per_trial_dets.iter().enumerate() {
        let _ = writeln!(s, "trial {t}: {label} A = {x}, B = {y}");
    }
    let approx = v.error_bound.numer().to_f64().unwrap_or(f64::NAN) / v.error_bound.denom().to_f64().unwrap_or(f64::NAN);
    let _ = writeln!(s, "error_bound: {} (~{approx:.3e})", v.error_bound);
    if let Some(w) = &v.witness {
        match &w.draw {
            Draw::Coefficients(d) => {
                let _ = writeln!(s, "witness: trial {} c = {} coeffs = {:?}", w.trial, d.c, d.coeffs);
            }
            Draw::Shift(x) => {
                let _ = writeln!(s, "witness: trial {} X = {:?}", w.trial, x.entries());
            }
        }
    }
    s
}

fn run_oracle(inputs: &Inputs, common: &Common, force: bool) -> Result<u8> {
    let field = PrimeField::new(common.prime)?;
    let (a, b) = load_pair(inputs, field)?;
    if a.n() != b.n() {
        emit(common, &format!("NOT SIMILAR (dimensions {} and {})\n", a.n(), b.n()))?;
        return Ok(1);
    }
    if force && a.n() > ORACLE_GUARD {
        eprintln!("warning: brute-force oracle at n = {} may enumerate up to {}! permutations", a.n(), a.n());
    }
    match brute_force_similar(&a, &b, force)? {
        Some(p) => {
            emit(common, &format!("{p}\n"))?;
            Ok(0)
        }
        None => {
            emit(common, "NOT SIMILAR\n")?;
            Ok(1)
        }
    }
}

fn run_hunt(
    corpus: Option<PathBuf>,
    n: Option<usize>,
    format: Format,
    common: &Common,
    budget: usize,
    perturb: bool,
) -> Result<u8> {
    let graphs = match (corpus, n) {
        (Some(path), _) => input::load_corpus(&path, format)?,
        (None, Some(n)) => {
            if n > HUNT_ENUMERATION_CEILING {
                bail!("enumeration corpus n = {n} exceeds the ceiling of {HUNT_ENUMERATION_CEILING}; supply a graph6 file instead");
            }
            isomorphism_classes(n)?
        }
        (None, None) => bail!("hunt needs a corpus file or --n"),
    };
    let config = HuntConfig {
        params: TestParams::new(common.prime, DEFAULT_TRIALS, common.seed)?,
        budget,
        perturb,
    };
    let report = hunt(&graphs, &config)?;
    match &common.out {
        Some(_) => {
            emit(common, &report.to_tsv())?;
            print!("{}", report.summary());
        }
        None => print!("{}", report.to_tsv()),
    }
    Ok(0)
}

fn run_bench_cmd(sizes: &[usize], common: &Common) -> Result<u8> {
    let params = TestParams::new(common.prime, 1, common.seed)?;
    let report = run_bench(sizes, &params)?;
    emit(common, &report.to_string())?;
    Ok(0)
}
