//! Multi-indices: exponent vectors for monomials and partial derivatives.

use std::cmp::Ordering;
use std::fmt;

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{powi_c, Real};

/// Largest entry whose factorial fits in `u128` (34! < 2^128 < 35!).
pub const MAX_FACTORIAL_ENTRY: u32 = 34;

/// Tuple of nonnegative exponents `(alpha_1, ..., alpha_n)`.
///
/// Ordered graded-lexicographically: total degree first, then the exponent
/// vectors lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(exponents: Vec<u32>) -> Self {
        MultiIndex(exponents)
    }

    pub fn zero(dim: usize) -> Self {
        MultiIndex(vec![0; dim])
    }

    /// `e_j` scaled by `k`.
    pub fn unit(dim: usize, j: usize, k: u32) -> Self {
        let mut v = vec![0; dim];
        v[j] = k;
        MultiIndex(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&a| a == 0)
    }

    /// `|alpha| = alpha_1 + ... + alpha_n`.
    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&a| a as u64).sum()
    }

    /// `alpha! = alpha_1! ... alpha_n!`, exactly.
    pub fn factorial(&self) -> Result<u128> {
        let mut acc: u128 = 1;
        for &a in &self.0 {
            let f = factorial_u128(a)?;
            acc = acc
                .checked_mul(f)
                .ok_or(Error::FactorialOverflow { entry: a, max: MAX_FACTORIAL_ENTRY })?;
        }
        Ok(acc)
    }

    pub fn checked_add(&self, other: &MultiIndex) -> Result<MultiIndex> {
        check_dim(self.dim(), other.dim())?;
        Ok(MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect()))
    }

    /// `self - other` when `other <= self` componentwise.
    pub fn checked_sub(&self, other: &MultiIndex) -> Option<MultiIndex> {
        if self.dim() != other.dim() {
            return None;
        }
        self.0
            .iter()
            .zip(&other.0)
            .map(|(&a, &b)| a.checked_sub(b))
            .collect::<Option<Vec<_>>>()
            .map(MultiIndex)
    }

    /// Componentwise `self <= other`.
    pub fn le(&self, other: &MultiIndex) -> bool {
        self.dim() == other.dim() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// All `(beta, gamma)` with `beta + gamma = self`, beta in graded-lex order.
    pub fn splits(&self) -> Vec<(MultiIndex, MultiIndex)> {
        let mut out = Vec::new();
        let mut beta = vec![0u32; self.dim()];
        loop {
            let b = MultiIndex(beta.clone());
            let g = self.checked_sub(&b).expect("beta <= alpha");
            out.push((b, g));
            // odometer increment bounded by self
            let mut j = 0;
            loop {
                if j == beta.len() {
                    out.sort_by(|x, y| x.0.cmp(&y.0));
                    return out;
                }
                if beta[j] < self.0[j] {
                    beta[j] += 1;
                    break;
                }
                beta[j] = 0;
                j += 1;
            }
        }
    }

    /// Every multi-index in `dim` variables with degree at most `max_degree`,
    /// in graded-lex order.
    pub fn all_up_to_degree(dim: usize, max_degree: u32) -> Vec<MultiIndex> {
        let mut out = Vec::new();
        let mut cur = vec![0u32; dim];
        fn rec(j: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<MultiIndex>) {
            if j == cur.len() {
                out.push(MultiIndex(cur.clone()));
                return;
            }
            for a in 0..=left {
                cur[j] = a;
                rec(j + 1, left - a, cur, out);
            }
            cur[j] = 0;
        }
        if dim == 0 {
            return vec![MultiIndex(Vec::new())];
        }
        rec(0, max_degree, &mut cur, &mut out);
        out.sort();
        out
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl From<Vec<u32>> for MultiIndex {
    fn from(v: Vec<u32>) -> Self {
        MultiIndex(v)
    }
}

impl<const N: usize> From<[u32; N]> for MultiIndex {
    fn from(v: [u32; N]) -> Self {
        MultiIndex(v.to_vec())
    }
}

pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::DimensionMismatch { expected, found });
    }
    Ok(())
}

pub fn factorial_u128(n: u32) -> Result<u128> {
    if n > MAX_FACTORIAL_ENTRY {
        return Err(Error::FactorialOverflow { entry: n, max: MAX_FACTORIAL_ENTRY });
    }
    Ok((1..=n as u128).product())
}

fn binomial_u128(n: u32, k: u32) -> Option<u128> {
    let k = k.min(n - k);
    let mut c: u128 = 1;
    for i in 0..k as u128 {
        // c * (n - i) is divisible by (i + 1) at every step
        c = c.checked_mul(n as u128 - i)? / (i + 1);
    }
    Some(c)
}

/// `alpha! / (beta! gamma!)` for `beta + gamma = alpha`, computed exactly as a
/// product of binomial coefficients.
pub fn multinomial(alpha: &MultiIndex, beta: &MultiIndex, gamma: &MultiIndex) -> Result<u128> {
    check_dim(alpha.dim(), beta.dim())?;
    check_dim(alpha.dim(), gamma.dim())?;
    if beta.checked_add(gamma)? != *alpha {
        return Err(Error::SplitMismatch);
    }
    let mut acc: u128 = 1;
    for (&a, &b) in alpha.0.iter().zip(&beta.0) {
        let c = binomial_u128(a, b).ok_or(Error::FactorialOverflow { entry: a, max: MAX_FACTORIAL_ENTRY })?;
        acc = acc
            .checked_mul(c)
            .ok_or(Error::FactorialOverflow { entry: a, max: MAX_FACTORIAL_ENTRY })?;
    }
    Ok(acc)
}

/// `x^alpha = x_1^{alpha_1} ... x_n^{alpha_n}` with `0^0 = 1`.
pub fn monomial_eval<T: Real>(x: &[Complex<T>], alpha: &MultiIndex) -> Result<Complex<T>> {
    check_dim(alpha.dim(), x.len())?;
    Ok(x.iter()
        .zip(alpha.exponents())
        .fold(Complex::new(T::one(), T::zero()), |acc, (&xj, &aj)| acc * powi_c(xj, aj as u64)))
}

/// Falling factorial `a (a-1) ... (a-k+1)`; zero when `k > a`.
pub(crate) fn falling_factorial(a: u32, k: u32) -> u128 {
    if k > a {
        return 0;
    }
    ((a - k + 1)..=a).map(|v| v as u128).product()
}
