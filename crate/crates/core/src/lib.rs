//! Randomized determinant test for permutation-similarity of square
//! matrices, and hence for graph isomorphism.
//!
//! Two matrices are permutation-similar when `A = P B Pᵗ` for a permutation
//! matrix P. The test maps each matrix through a random
//! `f(A) = q(A + cJ) - diag(q(A + cJ))` over Z_p and compares determinants:
//! different determinants prove non-similarity, equal ones are inconclusive
//! with an explicit error bound. See [`detsim`] for the argument.
//!
//! The crate also ships a brute-force oracle ([`oracle`]), graph and matrix
//! readers ([`graphio`]), a search harness for pairs the test cannot
//! separate ([`hunter`]) and a timing harness ([`bench`]).
//!
//! With the default `parallel` feature, matrix products, eliminations,
//! trials, oracle branches and hunter pairs run on the rayon pool. Results
//! never depend on scheduling.

pub mod bench;
pub mod det;
pub mod detsim;
pub mod error;
pub mod graphio;
pub mod hunter;
pub mod matrix;
pub mod oracle;
pub mod parallel;
pub mod ring;

pub use det::{det_exact, det_mod_p};
pub use detsim::{
    equality_test, failure_bound, permutation_similarity_test, randomized_f, sample_coefficients,
    similarity_trial, CoefficientDraw, Decision, Draw, TestParams, Verdict, VerdictKind, Witness,
};
pub use error::{Error, Result};
pub use graphio::{adjacency_matrix, enumerate_graphs, isomorphism_classes, parse_dimacs, parse_graph6, parse_matrix_text, Graph};
pub use hunter::{diagonal_perturbation, find_codet_pairs, hunt, stress_pair, HuntConfig, HuntReport};
pub use matrix::{IntMatrix, Matrix, ModMatrix};
pub use oracle::{apply_permutation, brute_force_similar, check_diag_conjugation_identity, random_conjugate, Permutation};
pub use ring::{Integers, PrimeField, Ring, RingConfig, MERSENNE_61};
