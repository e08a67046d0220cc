//! Dense square matrices over a [`Ring`].

use std::fmt;
use std::ops::Index;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::parallel;
use crate::ring::{Integers, PrimeField, Ring};

/// An n x n matrix stored row-major, tagged with the ring it lives in.
#[derive(Clone, PartialEq)]
pub struct Matrix<R: Ring> {
    ring: R,
    n: usize,
    entries: Vec<R::Elem>,
}

pub type ModMatrix = Matrix<PrimeField>;
pub type IntMatrix = Matrix<Integers>;

impl<R: Ring> Matrix<R> {
    pub fn from_entries(ring: R, n: usize, entries: Vec<R::Elem>) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyMatrix);
        }
        if entries.len() != n * n {
            return Err(Error::EntryCount {
                expected: n * n,
                got: entries.len(),
            });
        }
        Ok(Self { ring, n, entries })
    }

    pub fn from_rows(ring: R, rows: Vec<Vec<R::Elem>>) -> Result<Self> {
        let n = rows.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::EntryCount {
                expected: n,
                got: bad.len(),
            });
        }
        Self::from_entries(ring, n, rows.into_iter().flatten().collect())
    }

    pub fn from_fn(ring: R, n: usize, mut f: impl FnMut(usize, usize) -> R::Elem) -> Self {
        assert!(n > 0, "matrix dimension must be at least 1");
        let entries = (0..n * n).map(|k| f(k / n, k % n)).collect();
        Self { ring, n, entries }
    }

    pub fn zeros(ring: R, n: usize) -> Self {
        let z = ring.zero();
        Self::from_fn(ring, n, |_, _| z.clone())
    }

    pub fn identity(ring: R, n: usize) -> Self {
        let (z, o) = (ring.zero(), ring.one());
        Self::from_fn(ring, n, |i, j| if i == j { o.clone() } else { z.clone() })
    }

    /// The all-ones matrix J.
    pub fn all_ones(ring: R, n: usize) -> Self {
        let o = ring.one();
        Self::from_fn(ring, n, |_, _| o.clone())
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn entries(&self) -> &[R::Elem] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<R::Elem> {
        self.entries
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &R::Elem {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: R::Elem) {
        self.entries[i * self.n + j] = value;
    }

    pub fn row(&self, i: usize) -> &[R::Elem] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[R::Elem]> {
        self.entries.chunks(self.n)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.ring.clone(), self.n, |i, j| self.get(j, i).clone())
    }

    pub fn map(&self, mut f: impl FnMut(&R::Elem) -> R::Elem) -> Self {
        Self {
            ring: self.ring.clone(),
            n: self.n,
            entries: self.entries.iter().map(&mut f).collect(),
        }
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: other.n,
            });
        }
        if self.ring != other.ring {
            return Err(Error::RingMismatch {
                left: self.ring.to_string(),
                right: other.ring.to_string(),
            });
        }
        Ok(())
    }

    /// Entrywise sum.
    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(Self {
            ring: self.ring.clone(),
            n: self.n,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| self.ring.add(a, b))
                .collect(),
        })
    }

    /// Entrywise difference.
    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(Self {
            ring: self.ring.clone(),
            n: self.n,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| self.ring.sub(a, b))
                .collect(),
        })
    }

    pub fn scale(&self, c: &R::Elem) -> Self {
        self.map(|e| self.ring.mul(c, e))
    }

    /// Schoolbook product. Rows of the result are computed in parallel when
    /// the `parallel` feature is on.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let n = self.n;
        let bt = other.transpose();
        let mut entries = vec![self.ring.zero(); n * n];
        parallel::for_each_row_mut(&mut entries, n, |i, out| {
            let a = self.row(i);
            for (j, slot) in out.iter_mut().enumerate() {
                *slot = self.ring.dot(a, bt.row(j));
            }
        });
        Ok(Self {
            ring: self.ring.clone(),
            n,
            entries,
        })
    }

    /// A + cJ.
    pub fn add_scaled_all_ones(&self, c: &R::Elem) -> Self {
        self.map(|e| self.ring.add(e, c))
    }

    /// Adds `c` to every diagonal entry (A + cI).
    pub fn add_scalar_diagonal(&self, c: &R::Elem) -> Self {
        let mut out = self.clone();
        for i in 0..self.n {
            let k = i * self.n + i;
            out.entries[k] = self.ring.add(&out.entries[k], c);
        }
        out
    }

    /// Evaluates sum_{i=1..n} coeffs[i-1] * M^i with Horner's rule:
    /// `((c_n M + c_{n-1} I) M + ... + c_1 I) M`. There is no constant term.
    pub fn horner_poly_eval(&self, coeffs: &[R::Elem]) -> Result<Self> {
        if coeffs.len() != self.n {
            return Err(Error::CoefficientCount {
                expected: self.n,
                got: coeffs.len(),
            });
        }
        let (last, rest) = coeffs.split_last().expect("n >= 1");
        let mut acc = self.scale(last);
        for c in rest.iter().rev() {
            acc = acc.add_scalar_diagonal(c).mul(self)?;
        }
        Ok(acc)
    }

    /// M - diag(M).
    pub fn zero_diagonal(&self) -> Self {
        let mut out = self.clone();
        for i in 0..self.n {
            out.entries[i * self.n + i] = self.ring.zero();
        }
        out
    }

    /// diag(M): the diagonal part of M as a matrix.
    pub fn diagonal(&self) -> Self {
        let z = self.ring.zero();
        Self::from_fn(self.ring.clone(), self.n, |i, j| {
            if i == j {
                self.get(i, i).clone()
            } else {
                z.clone()
            }
        })
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }
}

impl<R: Ring> Index<(usize, usize)> for Matrix<R> {
    type Output = R::Elem;

    fn index(&self, (i, j): (usize, usize)) -> &R::Elem {
        self.get(i, j)
    }
}

impl<R: Ring> fmt::Debug for Matrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix<{}>[", self.ring)?;
        for (k, row) in self.rows().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{row:?}")?;
        }
        f.write_str("]")
    }
}

/// Plain-matrix text: `n` on the first line, then one row per line.
impl<R: Ring> fmt::Display for Matrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.n)?;
        for row in self.rows() {
            let mut first = true;
            for e in row {
                if !first {
                    f.write_str(" ")?;
                }
                first = false;
                write!(f, "{e}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

impl ModMatrix {
    /// Builds a Z_p matrix, rejecting unreduced entries.
    pub fn from_residues(field: PrimeField, n: usize, entries: Vec<u64>) -> Result<Self> {
        if let Some(&bad) = entries.iter().find(|e| !field.is_canonical(e)) {
            return Err(Error::UnreducedEntry {
                value: bad,
                p: field.modulus(),
            });
        }
        Self::from_entries(field, n, entries)
    }

    /// Reduces signed integer rows into Z_p.
    pub fn from_i64_rows(field: PrimeField, rows: &[&[i64]]) -> Result<Self> {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&x| field.reduce_i64(x)).collect())
            .collect();
        Self::from_rows(field, rows)
    }

    pub fn field(&self) -> PrimeField {
        *self.ring()
    }

    /// Canonical residues in `[0, p)` as integers.
    pub fn lift(&self) -> IntMatrix {
        Matrix {
            ring: Integers,
            n: self.n,
            entries: self.entries.iter().map(|&e| BigInt::from(e)).collect(),
        }
    }
}

impl IntMatrix {
    pub fn from_i64_rows(rows: &[&[i64]]) -> Result<Self> {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        Self::from_rows(Integers, rows)
    }

    pub fn from_i64_fn(n: usize, mut f: impl FnMut(usize, usize) -> i64) -> Self {
        Self::from_fn(Integers, n, |i, j| BigInt::from(f(i, j)))
    }

    pub fn reduce_mod(&self, field: PrimeField) -> ModMatrix {
        Matrix {
            ring: field,
            n: self.n,
            entries: self.entries.iter().map(|e| field.reduce_bigint(e)).collect(),
        }
    }
}
