//! The randomized permutation-similarity test.
//!
//! For random `c, c_1, ..., c_n` in Z_p let
//!
//! ```text
//! f(A) = q(A + cJ) - diag(q(A + cJ)),   q(x) = c_1 x + c_2 x^2 + ... + c_n x^n.
//! ```
//!
//! If `A = P B Pᵗ` then `f(A) = P f(B) Pᵗ` (J is fixed by conjugation and
//! diag commutes with it), so `det f(A) = det f(B)` for every draw and in
//! every commutative ring. An unequal pair of determinants therefore proves
//! that A and B are not permutation-similar. Equal determinants are
//! inconclusive: the pair may be similar, may be one for which
//! `det f(A) - det f(B)` vanishes identically as a polynomial in the draw,
//! or the draw may have hit a root of a non-zero difference polynomial.
//!
//! The last case is bounded by Schwartz-Zippel. Every entry of
//! `c_i (A + cJ)^i` has total degree at most `i + 1 <= n + 1` in
//! `(c, c_1, ..., c_n)`, and a determinant is a sum of products of `n`
//! entries, so the difference polynomial has total degree at most `n(n+1)`.
//! A uniform draw from Z_p is a root with probability at most `n(n+1)/p`,
//! and `t` independent trials all miss with probability at most
//! `(n(n+1)/p)^t`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Pow, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::det::det_mod_p;
use crate::error::{Error, Result};
use crate::matrix::{IntMatrix, ModMatrix};
use crate::parallel;
use crate::ring::{degree_bound, PrimeField};

pub const DEFAULT_TRIALS: usize = 3;

/// Sampling context for the randomized test: modulus, trial count and seed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TestParams {
    field: PrimeField,
    trials: usize,
    seed: u64,
}

impl TestParams {
    pub fn new(p: u64, trials: usize, seed: u64) -> Result<Self> {
        Self::with_field(PrimeField::new(p)?, trials, seed)
    }

    pub fn with_field(field: PrimeField, trials: usize, seed: u64) -> Result<Self> {
        if trials == 0 {
            return Err(Error::ZeroTrials);
        }
        Ok(Self {
            field,
            trials,
            seed,
        })
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn p(&self) -> u64 {
        self.field.modulus()
    }

    pub fn trials(&self) -> usize {
        self.trials
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Binds the parameters to a dimension, rejecting `p <= n(n+1)`.
    pub fn check(&self, n: usize) -> Result<()> {
        self.field.check_dimension(n)
    }

    /// Same parameters with a different trial count.
    pub fn with_trials(&self, trials: usize) -> Result<Self> {
        Self::with_field(self.field, trials, self.seed)
    }

    /// The RNG stream for one trial: keyed by the seed, stream id = trial index,
    /// so a trial's draw never depends on execution order.
    pub fn trial_rng(&self, trial: usize) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(trial as u64);
        rng
    }
}

impl Default for TestParams {
    fn default() -> Self {
        Self {
            field: PrimeField::mersenne61(),
            trials: DEFAULT_TRIALS,
            seed: 0,
        }
    }
}

/// The random shift `c` and polynomial coefficients `c_1..c_n` of one trial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoefficientDraw {
    pub c: u64,
    pub coeffs: Vec<u64>,
}

impl CoefficientDraw {
    pub fn n(&self) -> usize {
        self.coeffs.len()
    }
}

/// Draws `c, c_1, ..., c_n` uniformly from `[0, p)` for trial `trial`.
pub fn sample_coefficients(params: &TestParams, n: usize, trial: usize) -> CoefficientDraw {
    let p = params.p();
    let mut rng = params.trial_rng(trial);
    let c = rng.random_range(0..p);
    let coeffs = (0..n).map(|_| rng.random_range(0..p)).collect();
    CoefficientDraw { c, coeffs }
}

/// f(A) = q(A + cJ) - diag(q(A + cJ)).
pub fn randomized_f(a: &ModMatrix, draw: &CoefficientDraw) -> Result<ModMatrix> {
    if draw.n() != a.n() {
        return Err(Error::DimensionMismatch {
            left: a.n(),
            right: draw.n(),
        });
    }
    Ok(a
        .add_scaled_all_ones(&draw.c)
        .horner_poly_eval(&draw.coeffs)?
        .zero_diagonal())
}

/// `(det f(A), det f(B))` under one shared draw.
pub fn similarity_trial(a: &ModMatrix, b: &ModMatrix, draw: &CoefficientDraw) -> Result<(u64, u64)> {
    if a.n() != b.n() {
        return Err(Error::DimensionMismatch {
            left: a.n(),
            right: b.n(),
        });
    }
    if a.field() != b.field() {
        return Err(Error::RingMismatch {
            left: a.field().to_string(),
            right: b.field().to_string(),
        });
    }
    let fa = det_mod_p(&randomized_f(a, draw)?);
    let fb = det_mod_p(&randomized_f(b, draw)?);
    Ok((fa, fb))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerdictKind {
    /// Proven not permutation-similar (or not equal, for the equality test).
    Distinct,
    /// No trial separated the inputs.
    Indistinguishable,
}

/// The random data that separated two matrices.
#[derive(Clone, Debug, PartialEq)]
pub enum Draw {
    Coefficients(CoefficientDraw),
    /// The additive matrix X of the equality test.
    Shift(ModMatrix),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Witness {
    pub trial: usize,
    pub draw: Draw,
}

/// How a verdict was reached.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Decision {
    /// Randomized determinant trials.
    Randomized,
    /// Dimensions differ.
    DimensionMismatch,
    /// 1 x 1 inputs compared entry to entry; f is identically zero there.
    DirectComparison,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Verdict {
    pub kind: VerdictKind,
    pub decision: Decision,
    pub witness: Option<Witness>,
    pub trials_run: usize,
    /// `(det f(A), det f(B))` per trial, in trial order.
    pub per_trial_dets: Vec<(u64, u64)>,
    /// Upper bound on the probability that a non-similar pair which is not
    /// degenerate for the test is reported Indistinguishable.
    pub error_bound: BigRational,
}

impl Verdict {
    pub fn is_distinct(&self) -> bool {
        self.kind == VerdictKind::Distinct
    }

    fn exact(kind: VerdictKind, decision: Decision) -> Self {
        Self {
            kind,
            decision,
            witness: None,
            trials_run: 0,
            per_trial_dets: Vec::new(),
            error_bound: BigRational::zero(),
        }
    }
}

/// `(n(n+1)/p)^t`, the Schwartz-Zippel bound for `t` independent trials.
///
/// Fails when `n(n+1) >= p`, where the bound says nothing.
pub fn failure_bound(n: usize, p: u64, t: usize) -> Result<BigRational> {
    let bound = degree_bound(n);
    if bound >= u128::from(p) {
        return Err(Error::ModulusTooSmall { p, n, bound });
    }
    let ratio = BigRational::new(BigInt::from(bound), BigInt::from(p));
    Ok(Pow::pow(ratio, t as u32))
}

/// Runs trials `0..params.trials` with `trial_fn`, one pool-sized batch at a
/// time, and stops after the batch holding the lowest distinguishing trial.
fn run_trials<F>(n: usize, params: &TestParams, trial_fn: F) -> Result<Verdict>
where
    F: Fn(usize) -> Result<((u64, u64), Draw)> + Sync + Send,
{
    let mut per_trial_dets = Vec::with_capacity(params.trials());
    let mut witness = None;
    let width = parallel::batch_width();
    'batches: for start in (0..params.trials()).step_by(width) {
        let len = width.min(params.trials() - start);
        let results = parallel::map_indexed(len, |k| trial_fn(start + k));
        for (k, result) in results.into_iter().enumerate() {
            let (dets, draw) = result?;
            per_trial_dets.push(dets);
            if dets.0 != dets.1 {
                witness = Some(Witness {
                    trial: start + k,
                    draw,
                });
                break 'batches;
            }
        }
    }
    let trials_run = per_trial_dets.len();
    Ok(Verdict {
        kind: if witness.is_some() {
            VerdictKind::Distinct
        } else {
            VerdictKind::Indistinguishable
        },
        decision: Decision::Randomized,
        witness,
        trials_run,
        per_trial_dets,
        error_bound: failure_bound(n, params.p(), trials_run)?,
    })
}

/// Decides whether `a` and `b` could be permutation-similar.
///
/// `Distinct` is a proof of non-similarity. `Indistinguishable` means
/// similar, degenerate for the test, or a miss with probability at most
/// `error_bound`. Inputs are reduced mod p before the trials.
pub fn permutation_similarity_test(a: &IntMatrix, b: &IntMatrix, params: &TestParams) -> Result<Verdict> {
    if a.n() != b.n() {
        return Ok(Verdict::exact(VerdictKind::Distinct, Decision::DimensionMismatch));
    }
    let n = a.n();
    params.check(n)?;
    if n == 1 {
        let kind = if a == b {
            VerdictKind::Indistinguishable
        } else {
            VerdictKind::Distinct
        };
        return Ok(Verdict::exact(kind, Decision::DirectComparison));
    }
    let field = params.field();
    let (ma, mb) = (a.reduce_mod(field), b.reduce_mod(field));
    run_trials(n, params, |trial| {
        let draw = sample_coefficients(params, n, trial);
        let dets = similarity_trial(&ma, &mb, &draw)?;
        Ok((dets, Draw::Coefficients(draw)))
    })
}

/// Uniformly random n x n matrix over Z_p for the equality test.
pub fn sample_shift_matrix(params: &TestParams, n: usize, trial: usize) -> ModMatrix {
    let p = params.p();
    let mut rng = params.trial_rng(trial);
    let entries = (0..n * n).map(|_| rng.random_range(0..p)).collect();
    ModMatrix::from_residues(params.field(), n, entries).expect("entries are reduced")
}

/// Matrix-equality test by random additive shifts: compares
/// `det(A + X)` with `det(B + X)` for random X.
///
/// The difference of the two determinants has degree at most n in the
/// entries of X, so the reported bound `(n(n+1)/p)^t` is conservative.
pub fn equality_test(a: &IntMatrix, b: &IntMatrix, params: &TestParams) -> Result<Verdict> {
    if a.n() != b.n() {
        return Ok(Verdict::exact(VerdictKind::Distinct, Decision::DimensionMismatch));
    }
    let n = a.n();
    params.check(n)?;
    let field = params.field();
    let (ma, mb) = (a.reduce_mod(field), b.reduce_mod(field));
    run_trials(n, params, |trial| {
        let x = sample_shift_matrix(params, n, trial);
        let da = det_mod_p(&ma.add(&x)?);
        let db = det_mod_p(&mb.add(&x)?);
        Ok(((da, db), Draw::Shift(x)))
    })
}
