use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{cis, pairwise_sum, Real};

/// Truncated Abel sum `A(r) = sum_{j <= J} a_j r^j` with its tail bound.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AbelSum<T: Real> {
    pub value: Complex<T>,
    /// `sup_j |a_j| r^{J+1} / (1 - r)`, valid when the omitted terms obey the same bound.
    pub tail_bound: T,
}

/// Abel sum of the given terms, `J = a.len() - 1`.
pub fn abel_sum<T: Real>(a: &[Complex<T>], r: T) -> Result<AbelSum<T>> {
    if !(r >= T::zero() && r < T::one()) {
        return Err(Error::OutOfRange(format!("Abel parameter r = {r} must lie in [0, 1)")));
    }
    let mut pow = T::one();
    let mut terms = Vec::with_capacity(a.len());
    let mut sup = T::zero();
    for &aj in a {
        terms.push(aj * pow);
        sup = sup.max(aj.norm());
        pow *= r;
    }
    // pow is now r^{J+1}
    Ok(AbelSum { value: pairwise_sum(&terms), tail_bound: sup * pow / (T::one() - r) })
}

/// `c_n = sum_{k <= n} a_k b_{n-k}` for `n` below the shorter length.
pub fn cauchy_product<T: Real>(a: &[Complex<T>], b: &[Complex<T>]) -> Vec<Complex<T>> {
    let len = a.len().min(b.len());
    (0..len)
        .map(|n| {
            let terms: Vec<Complex<T>> = (0..=n).map(|k| a[k] * b[n - k]).collect();
            pairwise_sum(&terms)
        })
        .collect()
}

/// Uniform samples `f(r e^{2 pi i k / N})`, `k = 0..N`, on a circle of radius `r`.
#[derive(Clone, Debug, PartialEq)]
pub struct CircleSamples<T: Real> {
    radius: T,
    values: Vec<Complex<T>>,
}

impl<T: Real> CircleSamples<T> {
    pub fn new(radius: T, values: Vec<Complex<T>>) -> Result<Self> {
        if !(radius > T::zero()) || !radius.is_finite() {
            return Err(Error::NonPositiveParameter(format!("radius {radius}")));
        }
        if values.is_empty() {
            return Err(Error::TooFewSamples { needed: 0, have: 0 });
        }
        Ok(CircleSamples { radius, values })
    }

    pub fn from_fn(radius: T, n: usize, f: impl Fn(Complex<T>) -> Complex<T>) -> Result<Self> {
        let nn = T::from_usize_lossy(n);
        let values = (0..n).map(|k| f(cis(T::two_pi() * T::from_usize_lossy(k) / nn) * radius)).collect();
        Self::new(radius, values)
    }

    pub fn radius(&self) -> T {
        self.radius
    }

    pub fn values(&self) -> &[Complex<T>] {
        &self.values
    }

    pub fn sup(&self) -> T {
        self.values.iter().fold(T::zero(), |m, v| m.max(v.norm()))
    }
}

/// `a_j = (1/N) sum_k f(r e^{i theta_k}) r^{-j} e^{-i j theta_k}`, the trapezoid
/// rule for the Cauchy/Laurent coefficient integral.
pub fn laurent_coeff<T: Real>(f: &CircleSamples<T>, j: i64) -> Result<Complex<T>> {
    let n = f.values.len();
    let needed = 2 * j.unsigned_abs() as usize;
    if n <= needed {
        return Err(Error::TooFewSamples { needed, have: n });
    }
    let nn = T::from_usize_lossy(n);
    let terms: Vec<Complex<T>> = f
        .values
        .iter()
        .enumerate()
        .map(|(k, &v)| {
            let m = (-(j as i128) * k as i128).rem_euclid(n as i128) as usize;
            v * cis(T::two_pi() * T::from_usize_lossy(m) / nn)
        })
        .collect();
    Ok(pairwise_sum(&terms) / nn * f.radius.powi(-(j as i32)))
}

/// Cauchy estimate `|a_j| <= r^{-j} sup_{|w| = r} |f|`, with the sup taken over the samples.
pub fn laurent_coeff_bound<T: Real>(f: &CircleSamples<T>, j: i64) -> T {
    f.radius.powi(-(j as i32)) * f.sup()
}
