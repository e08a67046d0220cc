//! Determinants: Gaussian elimination over Z_p and Bareiss fraction-free
//! elimination over the integers.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::matrix::{IntMatrix, ModMatrix};
use crate::parallel;

/// Determinant in Z_p by row reduction to upper-triangular form.
///
/// Pivots on the first non-zero entry of each column; a row swap multiplies
/// the running sign by p - 1. A singular matrix has determinant 0.
pub fn det_mod_p(m: &ModMatrix) -> u64 {
    let field = m.field();
    let n = m.n();
    let mut a = m.entries().to_vec();
    let mut det = 1 % field.modulus();

    for col in 0..n {
        let Some(pivot_row) = (col..n).find(|&r| a[r * n + col] != 0) else {
            return 0;
        };
        if pivot_row != col {
            for k in 0..n {
                a.swap(col * n + k, pivot_row * n + k);
            }
            det = field.neg(det);
        }
        let pivot = a[col * n + col];
        det = field.mul(det, pivot);
        let inv = field.inv(pivot).expect("pivot is non-zero");

        let (head, tail) = a.split_at_mut((col + 1) * n);
        let pivot_tail = &head[col * n + col..];
        parallel::for_each_row_mut(tail, n, |_, row| {
            let factor = field.mul(row[col], inv);
            if factor == 0 {
                return;
            }
            for (x, &p) in row[col..].iter_mut().zip(pivot_tail) {
                *x = field.sub(*x, field.mul(factor, p));
            }
        });
    }
    det
}

/// Exact integer determinant by Bareiss elimination. Every division in the
/// update step is exact, so intermediates stay bounded by minors of `m`.
pub fn det_exact(m: &IntMatrix) -> BigInt {
    let n = m.n();
    let mut a: Vec<BigInt> = m.entries().to_vec();
    let mut negate = false;
    let mut prev = BigInt::one();

    for k in 0..n.saturating_sub(1) {
        if a[k * n + k].is_zero() {
            let Some(r) = (k + 1..n).find(|&r| !a[r * n + k].is_zero()) else {
                return BigInt::zero();
            };
            for j in 0..n {
                a.swap(k * n + j, r * n + j);
            }
            negate = !negate;
        }
        let (head, tail) = a.split_at_mut((k + 1) * n);
        let pivot_row = &head[k * n..];
        let pivot = &pivot_row[k];
        parallel::for_each_row_mut(tail, n, |_, row| {
            let lead = row[k].clone();
            for j in k + 1..n {
                let v = &row[j] * pivot - &lead * &pivot_row[j];
                row[j] = v / &prev;
            }
            row[k] = BigInt::zero();
        });
        prev = pivot.clone();
    }

    let d = a[n * n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::Matrix;
    use crate::ring::{Integers, PrimeField};

    // Leibniz expansion over all permutations (Heap's algorithm tracks parity).
    fn leibniz(m: &IntMatrix) -> BigInt {
        let n = m.n();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut c = vec![0usize; n];
        let mut sign = 1i32;
        let term = |perm: &[usize]| -> BigInt {
            (0..n).map(|i| m.get(i, perm[i]).clone()).product()
        };
        let mut total = term(&perm);
        let mut i = 0;
        while i < n {
            if c[i] < i {
                if i % 2 == 0 {
                    perm.swap(0, i);
                } else {
                    perm.swap(c[i], i);
                }
                sign = -sign;
                let t = term(&perm);
                total += if sign > 0 { t } else { -t };
                c[i] += 1;
                i = 0;
            } else {
                c[i] = 0;
                i += 1;
            }
        }
        total
    }

    fn cycle(n: usize) -> IntMatrix {
        IntMatrix::from_i64_fn(n, |i, j| ((i + 1) % n == j || (j + 1) % n == i) as i64)
    }

    #[test]
    fn mod_p_examples() {
        let f = PrimeField::new(101).unwrap();
        for n in 1..6 {
            assert_eq!(det_mod_p(&Matrix::identity(f, n)), 1);
        }
        let swap = ModMatrix::from_i64_rows(f, &[&[0, 1], &[1, 0]]).unwrap();
        assert_eq!(det_mod_p(&swap), 100);
        let m = ModMatrix::from_i64_rows(f, &[&[2, 3], &[1, 4]]).unwrap();
        assert_eq!(det_mod_p(&m), 5);
        let singular = ModMatrix::from_i64_rows(f, &[&[1, 2], &[2, 4]]).unwrap();
        assert_eq!(det_mod_p(&singular), 0);
    }

    #[test]
    fn exact_examples() {
        for n in 1..6 {
            assert_eq!(det_exact(&Matrix::identity(Integers, n)), BigInt::one());
        }
        let swap = IntMatrix::from_i64_rows(&[&[0, 1], &[1, 0]]).unwrap();
        assert_eq!(det_exact(&swap), BigInt::from(-1));
        assert_eq!(leibniz(&cycle(5)), BigInt::from(2));
        assert_eq!(det_exact(&cycle(5)), BigInt::from(2));
    }

    #[test]
    fn exact_matches_leibniz_on_fixed_matrices() {
        let ms = [
            IntMatrix::from_i64_rows(&[&[0, 0, 1], &[0, 1, 0], &[1, 0, 0]]).unwrap(),
            IntMatrix::from_i64_rows(&[&[0, 2, -1], &[3, 0, 5], &[-7, 4, 0]]).unwrap(),
            IntMatrix::from_i64_fn(6, |i, j| ((i * 7 + j * 3) % 5) as i64 - 2),
            IntMatrix::from_i64_fn(6, |i, j| (i as i64 - j as i64).pow(2) - 3),
            IntMatrix::from_i64_fn(4, |i, _| i as i64),
        ];
        for m in &ms {
            assert_eq!(det_exact(m), leibniz(m), "{m:?}");
        }
    }
}
