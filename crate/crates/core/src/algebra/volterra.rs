use num_complex::Complex;

use super::Matrix;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Cumulative trapezoid `(V f)_i = int_0^{x_i} f` on the nodes `x_i = i / M`,
/// `i = 0..=M`.
pub fn volterra_apply<T: Real>(f: &[T]) -> Vec<T> {
    let m = f.len() - 1;
    let half_h = T::lit(0.5) / T::from_usize_lossy(m);
    let mut out = Vec::with_capacity(f.len());
    let mut acc = T::zero();
    out.push(acc);
    for w in f.windows(2) {
        acc += half_h * (w[0] + w[1]);
        out.push(acc);
    }
    out
}

/// The `(M + 1) x (M + 1)` matrix of [`volterra_apply`].
pub fn volterra_matrix<T: Real>(m: usize) -> Matrix<T> {
    let h = T::from_usize_lossy(m).recip();
    let d = m + 1;
    let mut entries = vec![Complex::new(T::zero(), T::zero()); d * d];
    for i in 1..d {
        for j in 0..=i {
            let w = if j == 0 || j == i { h * T::lit(0.5) } else { h };
            entries[i * d + j] = Complex::new(w, T::zero());
        }
    }
    Matrix::new(d, entries).expect("square and finite")
}

/// Sup-norm operator norm of `V^n`, the maximum absolute row sum of the
/// `n`-fold trapezoid matrix. Every entry of `V^n` is nonnegative, so the
/// row sums are `V^n 1` and the maximum sits at `x = 1`:
/// `||V^n|| = (V^n 1)(1)`, which tends to `1/n!`.
pub fn volterra_power_norm<T: Real>(n: usize, m: usize) -> Result<T> {
    if !(1..=12).contains(&n) {
        return Err(Error::OutOfRange(format!("power must lie in 1..=12, got {n}")));
    }
    if m < 500 {
        return Err(Error::OutOfRange(format!("grid size must be at least 500, got {m}")));
    }
    let mut v = vec![T::one(); m + 1];
    for _ in 0..n {
        v = volterra_apply(&v);
    }
    Ok(v.iter().fold(T::zero(), |a, &b| a.max(b.abs())))
}
