//! Search for pairs the randomized test cannot separate.
//!
//! Two non-isomorphic graphs are *co-det* when their adjacency matrices have
//! the same determinant. A co-det pair that survives every one of a large
//! budget of independent similarity trials is reported as a
//! *strongly-co-det candidate*: evidence, not proof, that
//! `det f(A) - det f(B)` vanishes identically in the draw.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use num_bigint::BigInt;
use num_traits::Zero;

use crate::det::det_exact;
use crate::detsim::{sample_coefficients, similarity_trial, TestParams};
use crate::error::{Error, Result};
use crate::graphio::{adjacency_matrix, dedup_isomorphic, Graph};
use crate::matrix::IntMatrix;
use crate::oracle::brute_force_similar;
use crate::parallel;

pub const DEFAULT_BUDGET: usize = 100;

/// A non-isomorphic pair with equal exact adjacency determinants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodetPair {
    /// Indices into the corpus, `a < b`.
    pub a: usize,
    pub b: usize,
    pub det: BigInt,
}

/// All co-det pairs among `graphs`, which must share one vertex count.
/// Isomorphic pairs are dropped. Output is ordered by `(a, b)`.
pub fn find_codet_pairs(graphs: &[Graph]) -> Result<Vec<CodetPair>> {
    let Some(first) = graphs.first() else {
        return Ok(Vec::new());
    };
    if let Some(g) = graphs.iter().find(|g| g.n() != first.n()) {
        return Err(Error::MixedSizes(first.n(), g.n()));
    }
    let adj: Vec<IntMatrix> = parallel::map_slice(graphs, adjacency_matrix);
    let dets: Vec<BigInt> = parallel::map_slice(&adj, det_exact);

    let mut by_det: BTreeMap<&BigInt, Vec<usize>> = BTreeMap::new();
    for (i, d) in dets.iter().enumerate() {
        by_det.entry(d).or_default().push(i);
    }
    let candidates: Vec<(usize, usize)> = by_det
        .values()
        .flat_map(|ids| {
            ids.iter()
                .enumerate()
                .flat_map(move |(k, &a)| ids[k + 1..].iter().map(move |&b| (a, b)))
        })
        .collect();
    let similar = parallel::map_slice(&candidates, |&(a, b)| {
        brute_force_similar(&adj[a], &adj[b], true)
            .expect("same size")
            .is_some()
    });
    let mut pairs: Vec<CodetPair> = candidates
        .into_iter()
        .zip(similar)
        .filter(|(_, sim)| !sim)
        .map(|((a, b), _)| CodetPair {
            a,
            b,
            det: dets[a].clone(),
        })
        .collect();
    pairs.sort_by_key(|p| (p.a, p.b));
    Ok(pairs)
}

/// Outcome of `budget` independent similarity trials on one pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StressOutcome {
    pub attempted: usize,
    pub distinguished: usize,
    /// Lowest trial index whose determinants differed.
    pub first_distinguishing: Option<usize>,
}

impl StressOutcome {
    pub fn classification(&self) -> Classification {
        if self.distinguished == 0 {
            Classification::StronglyCodetCandidate
        } else {
            Classification::Distinguished
        }
    }
}

/// Runs trials `0..budget` of the randomized test on a pair the oracle has
/// already found non-similar, counting how many separate it.
pub fn stress_pair(a: &IntMatrix, b: &IntMatrix, budget: usize, params: &TestParams) -> Result<StressOutcome> {
    if budget == 0 {
        return Err(Error::ZeroBudget);
    }
    if a.n() != b.n() {
        return Err(Error::DimensionMismatch {
            left: a.n(),
            right: b.n(),
        });
    }
    let n = a.n();
    params.check(n)?;
    let field = params.field();
    let (ma, mb) = (a.reduce_mod(field), b.reduce_mod(field));
    let hits = parallel::map_indexed(budget, |t| {
        let draw = sample_coefficients(params, n, t);
        similarity_trial(&ma, &mb, &draw).map(|(x, y)| x != y)
    })
    .into_iter()
    .collect::<Result<Vec<bool>>>()?;
    Ok(StressOutcome {
        attempted: budget,
        distinguished: hits.iter().filter(|&&h| h).count(),
        first_distinguishing: hits.iter().position(|&h| h),
    })
}

/// Copy of `a` with `value` added to the diagonal entry at `index`.
pub fn diagonal_perturbation(a: &IntMatrix, index: usize, value: &BigInt) -> Result<IntMatrix> {
    if value.is_zero() {
        return Err(Error::ZeroPerturbation);
    }
    if index >= a.n() {
        return Err(Error::IndexOutOfRange { index, n: a.n() });
    }
    let mut out = a.clone();
    out.set(index, index, a.get(index, index) + value);
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Classification {
    Distinguished,
    StronglyCodetCandidate,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Classification::Distinguished => "distinguished",
            Classification::StronglyCodetCandidate => "strongly-co-det-candidate",
        })
    }
}

/// Re-stress of a candidate after adding the same non-zero value at the same
/// diagonal position of both matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PerturbationOutcome {
    pub index: usize,
    pub value: BigInt,
    pub stress: StressOutcome,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairRecord {
    pub n: usize,
    pub id_a: usize,
    pub id_b: usize,
    pub graph6_a: String,
    pub graph6_b: String,
    pub det_a: BigInt,
    pub det_b: BigInt,
    /// Oracle found a witness permutation. Always false in a report.
    pub oracle_similar: bool,
    pub stress: StressOutcome,
    pub classification: Classification,
    pub perturbed: Option<PerturbationOutcome>,
}

#[derive(Clone, Debug)]
pub struct HuntConfig {
    pub params: TestParams,
    pub budget: usize,
    /// Re-stress candidates after a matched diagonal perturbation.
    pub perturb: bool,
}

impl Default for HuntConfig {
    fn default() -> Self {
        Self {
            params: TestParams::default(),
            budget: DEFAULT_BUDGET,
            perturb: true,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HuntReport {
    pub seed: u64,
    pub p: u64,
    pub budget: usize,
    pub graphs: usize,
    pub classes: usize,
    /// Unordered pairs of non-isomorphic classes of equal size.
    pub pairs_examined: usize,
    pub records: Vec<PairRecord>,
}

/// Runs the hunt over a corpus of graphs (mixed sizes allowed).
///
/// Graph ids in the report are positions in `corpus`. Isomorphic duplicates
/// in the corpus are collapsed onto their first occurrence before pairing.
pub fn hunt(corpus: &[Graph], config: &HuntConfig) -> Result<HuntReport> {
    if config.budget == 0 {
        return Err(Error::ZeroBudget);
    }
    let mut by_n: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (i, g) in corpus.iter().enumerate() {
        by_n.entry(g.n()).or_default().push(i);
    }

    let mut records = Vec::new();
    let mut classes = 0;
    let mut pairs_examined = 0;
    for (&n, ids) in &by_n {
        let reps = dedup_isomorphic(ids.iter().map(|&i| corpus[i].clone()));
        // Map each representative back to its first position in the corpus.
        let rep_ids: Vec<usize> = reps
            .iter()
            .map(|r| ids.iter().copied().find(|&i| &corpus[i] == r).expect("rep from corpus"))
            .collect();
        classes += reps.len();
        pairs_examined += reps.len() * reps.len().saturating_sub(1) / 2;
        if reps.len() < 2 {
            continue;
        }
        config.params.check(n)?;
        let pairs = find_codet_pairs(&reps)?;
        let stressed = parallel::map_slice(&pairs, |pair| stress_record(n, &reps, &rep_ids, pair, config));
        for r in stressed {
            records.push(r?);
        }
    }
    records.sort_by_key(|r| (r.n, r.id_a, r.id_b));
    Ok(HuntReport {
        seed: config.params.seed(),
        p: config.params.p(),
        budget: config.budget,
        graphs: corpus.len(),
        classes,
        pairs_examined,
        records,
    })
}

fn stress_record(
    n: usize,
    reps: &[Graph],
    rep_ids: &[usize],
    pair: &CodetPair,
    config: &HuntConfig,
) -> Result<PairRecord> {
    let (ga, gb) = (&reps[pair.a], &reps[pair.b]);
    let (a, b) = (adjacency_matrix(ga), adjacency_matrix(gb));
    let stress = stress_pair(&a, &b, config.budget, &config.params)?;
    let classification = stress.classification();
    let perturbed = if config.perturb && classification == Classification::StronglyCodetCandidate {
        let value = BigInt::from(1);
        let pa = diagonal_perturbation(&a, 0, &value)?;
        let pb = diagonal_perturbation(&b, 0, &value)?;
        Some(PerturbationOutcome {
            index: 0,
            value,
            stress: stress_pair(&pa, &pb, config.budget, &config.params)?,
        })
    } else {
        None
    };
    let (id_a, id_b) = (rep_ids[pair.a], rep_ids[pair.b]);
    let g6 = |g: &Graph| g.to_graph6().unwrap_or_else(|_| "-".into());
    Ok(PairRecord {
        n,
        id_a: id_a.min(id_b),
        id_b: id_a.max(id_b),
        graph6_a: g6(if id_a <= id_b { ga } else { gb }),
        graph6_b: g6(if id_a <= id_b { gb } else { ga }),
        det_a: pair.det.clone(),
        det_b: pair.det.clone(),
        oracle_similar: false,
        stress,
        classification,
        perturbed,
    })
}

pub const REPORT_COLUMNS: [&str; 14] = [
    "n",
    "id_a",
    "id_b",
    "graph6_a",
    "graph6_b",
    "det_a",
    "det_b",
    "oracle",
    "trials",
    "distinguished",
    "first_trial",
    "classification",
    "perturbed_trials",
    "perturbed_distinguished",
];

impl HuntReport {
    pub fn candidates(&self) -> impl Iterator<Item = &PairRecord> {
        self.records
            .iter()
            .filter(|r| r.classification == Classification::StronglyCodetCandidate)
    }

    /// Tab-separated report: `#` metadata lines, a column header, one line
    /// per record, then `#` summary lines. Contains no timing data, so equal
    /// inputs give byte-identical output.
    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        out.push_str("# permsim hunt report v1\n");
        let _ = writeln!(
            out,
            "# seed={}\tp={}\tbudget={}\tgraphs={}\tclasses={}",
            self.seed, self.p, self.budget, self.graphs, self.classes
        );
        out.push_str("# a strongly-co-det-candidate survived every trial of the budget; this is evidence, not proof\n");
        out.push_str(&REPORT_COLUMNS.join("\t"));
        out.push('\n');
        for r in &self.records {
            let opt = |x: Option<usize>| x.map_or_else(|| "-".to_string(), |v| v.to_string());
            let _ = writeln!(
                out,
                "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
                r.n,
                r.id_a,
                r.id_b,
                r.graph6_a,
                r.graph6_b,
                r.det_a,
                r.det_b,
                if r.oracle_similar { "similar" } else { "non-similar" },
                r.stress.attempted,
                r.stress.distinguished,
                opt(r.stress.first_distinguishing),
                r.classification,
                opt(r.perturbed.as_ref().map(|p| p.stress.attempted)),
                opt(r.perturbed.as_ref().map(|p| p.stress.distinguished)),
            );
        }
        for line in self.summary().lines() {
            let _ = writeln!(out, "# {line}");
        }
        out
    }

    pub fn summary(&self) -> String {
        let candidates = self.candidates().count();
        let rescued = self
            .candidates()
            .filter(|r| r.perturbed.as_ref().is_some_and(|p| p.stress.distinguished > 0))
            .count();
        let mut s = String::new();
        let _ = writeln!(s, "graphs: {}", self.graphs);
        let _ = writeln!(s, "isomorphism classes: {}", self.classes);
        let _ = writeln!(s, "pairs examined: {}", self.pairs_examined);
        let _ = writeln!(s, "co-det pairs: {}", self.records.len());
        let _ = writeln!(s, "strongly-co-det candidates (budget {}): {}", self.budget, candidates);
        let _ = writeln!(s, "candidates separated after diagonal perturbation: {rescued}");
        s
    }
}
