//! Ground truth by exhaustive search over permutations.

use std::fmt;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::parallel;
use crate::ring::Ring;

/// Largest n the brute-force oracle accepts without an override (10! = 3.6M).
pub const ORACLE_GUARD: usize = 10;

/// A permutation of `0..n`; `mapping[i]` is the image of `i`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    mapping: Vec<usize>,
}

impl Permutation {
    pub fn new(mapping: Vec<usize>) -> Result<Self> {
        let n = mapping.len();
        let mut seen = vec![false; n];
        for &m in &mapping {
            if m >= n || std::mem::replace(&mut seen[m], true) {
                return Err(Error::InvalidPermutation(format!("{mapping:?}")));
            }
        }
        Ok(Self { mapping })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            mapping: (0..n).collect(),
        }
    }

    /// Transposition of `a` and `b`.
    pub fn swap(n: usize, a: usize, b: usize) -> Self {
        let mut p = Self::identity(n);
        p.mapping.swap(a, b);
        p
    }

    /// Uniformly random permutation (Fisher-Yates).
    pub fn random<G: Rng + ?Sized>(n: usize, rng: &mut G) -> Self {
        let mut p = Self::identity(n);
        p.mapping.shuffle(rng);
        p
    }

    pub fn n(&self) -> usize {
        self.mapping.len()
    }

    pub fn mapping(&self) -> &[usize] {
        &self.mapping
    }

    #[inline]
    pub fn image(&self, i: usize) -> usize {
        self.mapping[i]
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.n()];
        for (i, &m) in self.mapping.iter().enumerate() {
            inv[m] = i;
        }
        Self { mapping: inv }
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Self) -> Self {
        Self {
            mapping: other.mapping.iter().map(|&i| self.mapping[i]).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.mapping.iter().enumerate().all(|(i, &m)| i == m)
    }

    /// The permutation matrix with `P[image(i)][i] = 1`.
    pub fn to_matrix<R: Ring>(&self, ring: R) -> Matrix<R> {
        let (z, o) = (ring.zero(), ring.one());
        Matrix::from_fn(ring, self.n(), |r, c| {
            if self.mapping[c] == r {
                o.clone()
            } else {
                z.clone()
            }
        })
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation{:?}", self.mapping)
    }
}

/// One-line image notation: `1 0 2`.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, m) in self.mapping.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{m}")?;
        }
        Ok(())
    }
}

/// P B Pᵗ, computed by relabeling: `out[P(i)][P(j)] = B[i][j]`.
pub fn apply_permutation<R: Ring>(p: &Permutation, b: &Matrix<R>) -> Result<Matrix<R>> {
    if p.n() != b.n() {
        return Err(Error::DimensionMismatch {
            left: p.n(),
            right: b.n(),
        });
    }
    let inv = p.inverse();
    Ok(Matrix::from_fn(b.ring().clone(), b.n(), |r, c| {
        b.get(inv.image(r), inv.image(c)).clone()
    }))
}

/// Lexicographically smallest permutation P with `a == P b Pᵗ`, if any.
///
/// Refuses `n > ORACLE_GUARD` unless `force` is set. The search extends a
/// partial assignment `P(0), P(1), ...` in increasing order and abandons it
/// as soon as an assigned pair disagrees, so the first complete assignment
/// found is the lexicographic minimum. The branches on `P(0)` are searched
/// in parallel and the lowest successful branch wins.
pub fn brute_force_similar<R: Ring>(
    a: &Matrix<R>,
    b: &Matrix<R>,
    force: bool,
) -> Result<Option<Permutation>> {
    let n = a.n();
    if n != b.n() {
        return Err(Error::DimensionMismatch {
            left: n,
            right: b.n(),
        });
    }
    if n > ORACLE_GUARD && !force {
        return Err(Error::OracleGuard {
            n,
            limit: ORACLE_GUARD,
        });
    }
    if a.ring() != b.ring() {
        return Err(Error::RingMismatch {
            left: a.ring().to_string(),
            right: b.ring().to_string(),
        });
    }
    Ok(parallel::find_map_first(n, |first| {
        let mut search = Search {
            a,
            b,
            mapping: Vec::with_capacity(n),
            used: vec![false; n],
        };
        search.try_assign(first).then_some(Permutation {
            mapping: search.mapping,
        })
    }))
}

struct Search<'m, R: Ring> {
    a: &'m Matrix<R>,
    b: &'m Matrix<R>,
    mapping: Vec<usize>,
    used: Vec<bool>,
}

impl<R: Ring> Search<'_, R> {
    /// Tries `P(i) = image` for the next index `i`; on success `mapping` is complete.
    fn try_assign(&mut self, image: usize) -> bool {
        let i = self.mapping.len();
        let consistent = self.a.get(image, image) == self.b.get(i, i)
            && self.mapping.iter().enumerate().all(|(j, &pj)| {
                self.a.get(image, pj) == self.b.get(i, j) && self.a.get(pj, image) == self.b.get(j, i)
            });
        if !consistent {
            return false;
        }
        self.mapping.push(image);
        self.used[image] = true;
        if self.mapping.len() == self.a.n() {
            return true;
        }
        for next in 0..self.a.n() {
            if !self.used[next] && self.try_assign(next) {
                return true;
            }
        }
        self.mapping.pop();
        self.used[image] = false;
        false
    }
}

/// (P A Pᵗ, P) for a uniformly random P.
pub fn random_conjugate<R: Ring, G: Rng + ?Sized>(
    a: &Matrix<R>,
    rng: &mut G,
) -> (Matrix<R>, Permutation) {
    let p = Permutation::random(a.n(), rng);
    let conj = apply_permutation(&p, a).expect("sizes match");
    (conj, p)
}

/// Checks the two conjugation identities the invariance argument rests on,
/// using genuine permutation-matrix products:
/// `diag(P A Pᵗ) == P diag(A) Pᵗ` and `P J Pᵗ == J`.
pub fn check_diag_conjugation_identity<R: Ring>(a: &Matrix<R>, p: &Permutation) -> bool {
    if a.n() != p.n() {
        return false;
    }
    let ring = a.ring().clone();
    let pm = p.to_matrix(ring.clone());
    let pt = pm.transpose();
    let conj = |x: &Matrix<R>| pm.mul(x).and_then(|y| y.mul(&pt));
    let (Ok(lhs_a), Ok(rhs_diag)) = (conj(a), conj(&a.diagonal())) else {
        return false;
    };
    let j = Matrix::all_ones(ring, a.n());
    lhs_a.diagonal() == rhs_diag && conj(&j).is_ok_and(|pj| pj == j)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::IntMatrix;
    use crate::ring::Integers;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn int(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_i64_rows(rows).unwrap()
    }

    fn path_012() -> IntMatrix {
        // 0 - 1 - 2
        int(&[&[0, 1, 0], &[1, 0, 1], &[0, 1, 0]])
    }

    fn path_102() -> IntMatrix {
        // 1 - 0 - 2
        int(&[&[0, 1, 1], &[1, 0, 0], &[1, 0, 0]])
    }

    #[test]
    fn permutation_validation() {
        assert!(Permutation::new(vec![1, 0, 2]).is_ok());
        assert!(Permutation::new(vec![1, 1, 2]).is_err());
        assert!(Permutation::new(vec![0, 3, 1]).is_err());
    }

    #[test]
    fn apply_examples() {
        let b = int(&[&[0, 1], &[0, 0]]);
        assert_eq!(apply_permutation(&Permutation::identity(2), &b).unwrap(), b);
        assert_eq!(
            apply_permutation(&Permutation::swap(2, 0, 1), &b).unwrap(),
            int(&[&[0, 0], &[1, 0]])
        );
        let p = Permutation::new(vec![2, 0, 3, 1]).unwrap();
        let m = IntMatrix::from_i64_fn(4, |i, j| (i * 4 + j) as i64);
        let back = apply_permutation(&p, &apply_permutation(&p.inverse(), &m).unwrap()).unwrap();
        assert_eq!(back, m);
        assert!(matches!(
            apply_permutation(&Permutation::identity(3), &m),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn apply_agrees_with_matrix_product() {
        let p = Permutation::new(vec![2, 0, 3, 1]).unwrap();
        let m = IntMatrix::from_i64_fn(4, |i, j| (i * 4 + j) as i64 - 5);
        let pm = p.to_matrix(Integers);
        let prod = pm.mul(&m).unwrap().mul(&pm.transpose()).unwrap();
        assert_eq!(apply_permutation(&p, &m).unwrap(), prod);
    }

    #[test]
    fn brute_force_examples() {
        let a = path_012();
        assert_eq!(
            brute_force_similar(&a, &a, false).unwrap(),
            Some(Permutation::identity(3))
        );
        let k2 = int(&[&[0, 1], &[1, 0]]);
        let empty = IntMatrix::zeros(Integers, 2);
        assert_eq!(brute_force_similar(&k2, &empty, false).unwrap(), None);
        let w = brute_force_similar(&path_012(), &path_102(), false)
            .unwrap()
            .unwrap();
        assert_eq!(w, Permutation::swap(3, 0, 1));
        assert_eq!(apply_permutation(&w, &path_102()).unwrap(), path_012());
    }

    #[test]
    fn brute_force_returns_lexicographic_minimum() {
        // Complete graph K_4: every permutation works, so the identity is the minimum.
        let k4 = IntMatrix::from_i64_fn(4, |i, j| (i != j) as i64);
        assert_eq!(
            brute_force_similar(&k4, &k4, false).unwrap(),
            Some(Permutation::identity(4))
        );
        // Star centered at 3 vs star centered at 0: P(0) must be 3; minimum is [3,0,1,2].
        let star0 = IntMatrix::from_i64_fn(4, |i, j| ((i == 0) ^ (j == 0)) as i64);
        let star3 = IntMatrix::from_i64_fn(4, |i, j| ((i == 3) ^ (j == 3)) as i64);
        assert_eq!(
            brute_force_similar(&star3, &star0, false).unwrap().unwrap().mapping(),
            &[3, 0, 1, 2]
        );
    }

    #[test]
    fn brute_force_guard() {
        let big = IntMatrix::zeros(Integers, 11);
        assert_eq!(
            brute_force_similar(&big, &big, false),
            Err(Error::OracleGuard { n: 11, limit: 10 })
        );
        assert_eq!(
            brute_force_similar(&big, &big, true).unwrap(),
            Some(Permutation::identity(11))
        );
    }

    #[test]
    fn random_conjugate_is_similar() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let a = IntMatrix::from_i64_fn(6, |i, j| ((i * 3 + j * 5) % 4) as i64);
        for _ in 0..10 {
            let (c, p) = random_conjugate(&a, &mut rng);
            assert_eq!(apply_permutation(&p, &a).unwrap(), c);
            let w = brute_force_similar(&c, &a, false).unwrap().unwrap();
            assert_eq!(apply_permutation(&w, &a).unwrap(), c);
        }
    }

    #[test]
    fn diag_identity_holds() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in 1..=8 {
            let a = IntMatrix::from_i64_fn(n, |i, j| (i * 31 + j * 17) as i64 % 11 - 5);
            assert!(check_diag_conjugation_identity(&a, &Permutation::identity(n)));
            assert!(check_diag_conjugation_identity(&a, &Permutation::random(n, &mut rng)));
            let j = IntMatrix::all_ones(Integers, n);
            assert!(check_diag_conjugation_identity(&j, &Permutation::random(n, &mut rng)));
        }
    }
}
