//! Scalar rings for the dense matrix kernels: the prime field Z_p with
//! 64-bit residues, and the arbitrary-precision integers.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// 2^61 - 1, the default modulus.
pub const MERSENNE_61: u64 = (1 << 61) - 1;

/// Arithmetic shared by every ring a [`crate::Matrix`] can live over.
pub trait Ring: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync {
    type Elem: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    /// Whether `e` is a canonical representative (always true for the integers).
    fn is_canonical(&self, _e: &Self::Elem) -> bool {
        true
    }

    /// Inner product of two equal-length slices.
    fn dot(&self, a: &[Self::Elem], b: &[Self::Elem]) -> Self::Elem {
        a.iter()
            .zip(b)
            .fold(self.zero(), |acc, (x, y)| self.add(&acc, &self.mul(x, y)))
    }
}

/// The prime field Z_p for a prime p < 2^64.
///
/// Residues are stored as `u64` in `[0, p)`. Products are formed in `u128`
/// and inner products reduce lazily, once per block of `lazy_block` terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
    lazy_block: usize,
}

impl PrimeField {
    /// Checks primality (deterministic Miller-Rabin for 64-bit inputs).
    pub fn new(p: u64) -> Result<Self> {
        if !primal_check::miller_rabin(p) {
            return Err(Error::NotPrime(p));
        }
        let max_product = u128::from(p - 1) * u128::from(p - 1);
        // Number of products whose sum cannot overflow u128.
        let lazy_block = (u128::MAX / max_product.max(1)).min(1 << 20) as usize;
        Ok(Self { p, lazy_block })
    }

    pub fn mersenne61() -> Self {
        Self::new(MERSENNE_61).expect("2^61 - 1 is prime")
    }

    #[inline]
    pub fn modulus(&self) -> u64 {
        self.p
    }

    /// Rejects moduli that make the Schwartz-Zippel bound for dimension `n` vacuous.
    pub fn check_dimension(&self, n: usize) -> Result<()> {
        let bound = degree_bound(n);
        if u128::from(self.p) <= bound {
            return Err(Error::ModulusTooSmall { p: self.p, n, bound });
        }
        Ok(())
    }

    #[inline]
    pub fn reduce_u128(&self, x: u128) -> u64 {
        if self.p == MERSENNE_61 {
            let m = u128::from(MERSENNE_61);
            let r = (x & m) + (x >> 61);
            let r = ((r & m) + (r >> 61)) as u64;
            if r >= MERSENNE_61 {
                r - MERSENNE_61
            } else {
                r
            }
        } else {
            (x % u128::from(self.p)) as u64
        }
    }

    #[inline]
    pub fn reduce_u64(&self, x: u64) -> u64 {
        x % self.p
    }

    pub fn reduce_i64(&self, x: i64) -> u64 {
        i128::from(x).rem_euclid(i128::from(self.p)) as u64
    }

    pub fn reduce_bigint(&self, x: &BigInt) -> u64 {
        let p = BigInt::from(self.p);
        let r = ((x % &p) + &p) % &p;
        u64::try_from(&r).expect("residue fits in u64")
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let (s, carry) = a.overflowing_add(b);
        if carry || s >= self.p {
            s.wrapping_sub(self.p)
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a.wrapping_sub(b).wrapping_add(self.p)
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        self.reduce_u128(u128::from(a) * u128::from(b))
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1 % self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse by Fermat's little theorem; `None` for zero.
    pub fn inv(&self, a: u64) -> Option<u64> {
        (a != 0).then(|| self.pow(a, self.p - 2))
    }

    /// Inner product with one reduction per block of products.
    pub fn dot_u64(&self, a: &[u64], b: &[u64]) -> u64 {
        debug_assert_eq!(a.len(), b.len());
        let mut acc = 0u64;
        for (xs, ys) in a.chunks(self.lazy_block).zip(b.chunks(self.lazy_block)) {
            let raw = xs
                .iter()
                .zip(ys)
                .fold(0u128, |s, (&x, &y)| s + u128::from(x) * u128::from(y));
            acc = self.add(acc, self.reduce_u128(raw));
        }
        acc
    }

    /// Centered representative in `(-p/2, p/2]`.
    pub fn to_signed(&self, a: u64) -> BigInt {
        if a > self.p / 2 {
            BigInt::from(a) - BigInt::from(self.p)
        } else {
            BigInt::from(a)
        }
    }
}

impl fmt::Display for PrimeField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z_{}", self.p)
    }
}

impl Ring for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        PrimeField::add(self, *a, *b)
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        PrimeField::sub(self, *a, *b)
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        PrimeField::mul(self, *a, *b)
    }
    fn is_canonical(&self, e: &u64) -> bool {
        *e < self.p
    }
    fn dot(&self, a: &[u64], b: &[u64]) -> u64 {
        self.dot_u64(a, b)
    }
}

/// The ring of integers, backed by `BigInt`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Integers;

impl fmt::Display for Integers {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("Z")
    }
}

impl Ring for Integers {
    type Elem = BigInt;

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a - b
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
}

/// Which ring a computation runs in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RingConfig {
    ModP(PrimeField),
    Exact,
}

impl RingConfig {
    pub fn mod_p(p: u64) -> Result<Self> {
        PrimeField::new(p).map(RingConfig::ModP)
    }

    pub fn field(&self) -> Option<PrimeField> {
        match self {
            RingConfig::ModP(f) => Some(*f),
            RingConfig::Exact => None,
        }
    }
}

impl Default for RingConfig {
    fn default() -> Self {
        RingConfig::ModP(PrimeField::mersenne61())
    }
}

/// n(n+1): total-degree bound of det f(A) - det f(B) in (c, c_1, ..., c_n).
pub fn degree_bound(n: usize) -> u128 {
    let n = n as u128;
    n * (n + 1)
}
