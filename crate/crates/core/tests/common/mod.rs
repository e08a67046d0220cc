//! Independent oracles shared by the integration tests. Nothing here calls
//! the elimination, Horner or relabeling code paths it is used to check.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use permsim::{IntMatrix, Matrix, ModMatrix, Permutation, PrimeField, Ring};
use rand::Rng;

/// Leibniz expansion over all n! permutations, sign by inversion count.
pub fn leibniz_det(m: &IntMatrix) -> BigInt {
    let n = m.n();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut total = BigInt::from(0);
    loop {
        let inversions = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .filter(|&(i, j)| perm[i] > perm[j])
            .count();
        let term: BigInt = (0..n).map(|i| m.get(i, perm[i]).clone()).product();
        if inversions % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
        if !next_permutation(&mut perm) {
            return total;
        }
    }
}

/// Lexicographic successor; false after the last permutation.
pub fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Naive A == P B Pᵗ search over every permutation in lexicographic order,
/// with P B Pᵗ formed by permutation-matrix products.
pub fn naive_similar(a: &IntMatrix, b: &IntMatrix) -> Option<Vec<usize>> {
    let n = a.n();
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        let pm = Permutation::new(perm.clone()).unwrap().to_matrix(permsim::Integers);
        let conj = pm.mul(b).unwrap().mul(&pm.transpose()).unwrap();
        if &conj == a {
            return Some(perm);
        }
        if !next_permutation(&mut perm) {
            return None;
        }
    }
}

/// sum_i coeffs[i-1] * M^i with M^i formed by repeated multiplication.
pub fn naive_poly<R: Ring>(m: &Matrix<R>, coeffs: &[R::Elem]) -> Matrix<R> {
    let ring = m.ring().clone();
    let mut power = m.clone();
    let mut acc = Matrix::zeros(ring.clone(), m.n());
    for (i, c) in coeffs.iter().enumerate() {
        if i > 0 {
            power = power.mul(m).unwrap();
        }
        acc = acc.add(&power.scale(c)).unwrap();
    }
    acc
}

/// Triple-loop product with explicit k-summation, independent of the transposed-dot kernel.
pub fn naive_mul<R: Ring>(a: &Matrix<R>, b: &Matrix<R>) -> Matrix<R> {
    let ring = a.ring().clone();
    let n = a.n();
    Matrix::from_fn(ring.clone(), n, |i, j| {
        let mut s = ring.zero();
        for k in 0..n {
            s = ring.add(&s, &ring.mul(a.get(i, k), b.get(k, j)));
        }
        s
    })
}

pub fn random_int_matrix<G: Rng>(rng: &mut G, n: usize, lo: i64, hi: i64) -> IntMatrix {
    IntMatrix::from_i64_fn(n, |_, _| rng.random_range(lo..=hi))
}

pub fn random_mod_matrix<G: Rng>(rng: &mut G, field: PrimeField, n: usize) -> ModMatrix {
    let p = field.modulus();
    Matrix::from_fn(field, n, |_, _| rng.random_range(0..p))
}

/// (n(n+1)/p)^t by repeated rational multiplication.
pub fn rational_bound(n: u64, p: u64, t: u32) -> BigRational {
    let ratio = BigRational::new(BigInt::from(n * (n + 1)), BigInt::from(p));
    (0..t).fold(BigRational::from_integer(BigInt::from(1)), |acc, _| acc * &ratio)
}

/// Prints one PASS/FAIL line and returns whether it passed.
pub fn report(id: &str, name: &str, ok: bool, detail: &str) -> bool {
    println!("[{}] {id} {name}: {detail}", if ok { "PASS" } else { "FAIL" });
    ok
}
