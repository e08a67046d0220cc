//! Wall-clock scaling of one similarity trial.

use std::fmt;
use std::time::{Duration, Instant};

use rand::Rng;

use crate::detsim::{sample_coefficients, similarity_trial, TestParams};
use crate::error::Result;
use crate::matrix::{Matrix, ModMatrix};

pub const DEFAULT_SIZES: [usize; 4] = [64, 128, 256, 512];

pub const COMPLEXITY_NOTE: &str = "note: the claimed end-to-end O(n^2.373) running time is NOT reproduced. \
Forming f(A) = q(A + cJ) - diag(q(A + cJ)) by Horner's rule takes n - 1 matrix products, \
so one trial costs Theta(n^4) with schoolbook multiplication (Omega(n^(1 + omega)) with any fast \
multiplication), on top of the O(n^3) determinant.";

#[derive(Clone, Debug)]
pub struct BenchRow {
    pub n: usize,
    pub elapsed: Duration,
}

#[derive(Clone, Debug)]
pub struct BenchReport {
    pub rows: Vec<BenchRow>,
    pub parallel: bool,
}

impl BenchReport {
    /// Least-squares slope of log(time) against log(n); `None` with fewer than two sizes.
    pub fn slope(&self) -> Option<f64> {
        let pts: Vec<(f64, f64)> = self
            .rows
            .iter()
            .map(|r| ((r.n as f64).ln(), r.elapsed.as_secs_f64().max(1e-9).ln()))
            .collect();
        fit_slope(&pts)
    }
}

pub fn fit_slope(pts: &[(f64, f64)]) -> Option<f64> {
    if pts.len() < 2 {
        return None;
    }
    let k = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / k;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / k;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

impl fmt::Display for BenchReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "backend: {}",
            if self.parallel { "rayon" } else { "sequential" }
        )?;
        writeln!(f, "{:>6}  {:>12}", "n", "trial_secs")?;
        for r in &self.rows {
            writeln!(f, "{:>6}  {:>12.4}", r.n, r.elapsed.as_secs_f64())?;
        }
        match self.slope() {
            Some(s) => writeln!(f, "log-log slope: {s:.3}")?,
            None => writeln!(f, "log-log slope: n/a (need two sizes)")?,
        }
        writeln!(f, "{COMPLEXITY_NOTE}")
    }
}

/// Uniform random 0/1 matrix reduced into the field of `params`.
pub fn random_01_matrix<G: Rng + ?Sized>(params: &TestParams, n: usize, rng: &mut G) -> ModMatrix {
    Matrix::from_fn(params.field(), n, |_, _| rng.random_range(0..2u64))
}

/// Times one full similarity trial (two f-constructions and two
/// determinants) for each size.
pub fn run_bench(sizes: &[usize], params: &TestParams) -> Result<BenchReport> {
    let mut rows = Vec::with_capacity(sizes.len());
    for &n in sizes {
        params.check(n)?;
        let mut rng = params.trial_rng(n);
        let a = random_01_matrix(params, n, &mut rng);
        let b = random_01_matrix(params, n, &mut rng);
        let draw = sample_coefficients(params, n, 0);
        let start = Instant::now();
        std::hint::black_box(similarity_trial(&a, &b, &draw)?);
        rows.push(BenchRow {
            n,
            elapsed: start.elapsed(),
        });
    }
    Ok(BenchReport {
        rows,
        parallel: crate::parallel::is_parallel(),
    })
}
