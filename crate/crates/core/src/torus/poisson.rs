use num_complex::Complex;

use super::{analyze, discrete_spectrum, TorusFunction};
use crate::error::{Error, Result};
use crate::multiindex::check_dim;
use crate::scalar::{pairwise_sum, Real};

fn check_interior<T: Real>(z: &[Complex<T>]) -> Result<()> {
    if z.iter().any(|w| !(w.norm() < T::one())) {
        return Err(Error::NotInterior);
    }
    Ok(())
}

/// One-variable Poisson kernel `P(z, w) = (1 - |z|^2) / (2 pi |w - z|^2)`
/// for `|z| < 1` and `|w| = 1`.
pub fn poisson_kernel<T: Real>(z: Complex<T>, w: Complex<T>) -> Result<T> {
    check_interior(&[z])?;
    if (w.norm() - T::one()).abs() > T::lit(1e-12) {
        return Err(Error::InvalidInput(format!("boundary point has modulus {}", w.norm())));
    }
    Ok((T::one() - z.norm_sqr()) / (T::two_pi() * (w - z).norm_sqr()))
}

/// Product kernel `P_n(z, w) = prod_j P(z_j, w_j)`.
pub fn poisson_kernel_n<T: Real>(z: &[Complex<T>], w: &[Complex<T>]) -> Result<T> {
    check_dim(z.len(), w.len())?;
    z.iter().zip(w).try_fold(T::one(), |acc, (&zj, &wj)| Ok(acc * poisson_kernel(zj, wj)?))
}

/// Grid quadrature of `int_{T^n} P_n(z, w) f(w) |dw|`.
pub fn poisson_extend<T: Real>(f: &TorusFunction<T>, z: &[Complex<T>]) -> Result<Complex<T>> {
    let grid = f.grid();
    check_dim(grid.dim(), z.len())?;
    check_interior(z)?;
    let roots = grid.roots::<T>();
    let n = T::from_usize_lossy(grid.samples_per_dim());
    // factors[j][k] = (2 pi / N) P(z_j, w_k) = (1 - |z_j|^2) / (N |w_k - z_j|^2)
    let factors: Vec<Vec<T>> = z
        .iter()
        .map(|&zj| {
            let num = T::one() - zj.norm_sqr();
            roots.iter().map(|&w| num / (n * (w - zj).norm_sqr())).collect()
        })
        .collect();
    let terms: Vec<Complex<T>> = f
        .values()
        .iter()
        .enumerate()
        .map(|(flat, &v)| {
            let k = grid.multi_index(flat);
            v * k.iter().enumerate().fold(T::one(), |acc, (j, &kj)| acc * factors[j][kj])
        })
        .collect();
    Ok(pairwise_sum(&terms))
}

/// Bound on `|poisson_extend(f, z) - synthesize(analyze(f, N/2 - 1), z)|`.
///
/// The quadrature applies the full kernel series to the discrete spectrum
/// `F(b)`, `b` in `Z_N^n`, so it sees every alias `a = b + l N`; the series
/// path keeps only representatives in `[-K, K]^n`. The difference is bounded
/// by `sum_b |F(b)| (prod_j S_j(b_j) - prod_j s_j(b_j))` with
/// `S_j(b) = (rho_j^b + rho_j^{N-b}) / (1 - rho_j^N)` summing `rho_j^{|a|}` over
/// all aliases and `s_j(b)` the retained one. A small roundoff allowance is
/// added. For band-limited `f` this decays like `rho^{N-K_f}`.
pub fn poisson_agreement_tolerance<T: Real>(f: &TorusFunction<T>, z: &[Complex<T>]) -> Result<T> {
    let grid = f.grid();
    check_dim(grid.dim(), z.len())?;
    check_interior(z)?;
    let n = grid.samples_per_dim();
    let k = grid.max_band() as usize;
    let spectrum = discrete_spectrum(f);
    let tables: Vec<(Vec<T>, Vec<T>)> = z
        .iter()
        .map(|zj| {
            let rho = zj.norm();
            let denom = T::one() - rho.powi(n as i32);
            let full = (0..n).map(|b| (rho.powi(b as i32) + rho.powi((n - b) as i32)) / denom).collect();
            let kept = (0..n)
                .map(|b| {
                    if b <= k {
                        rho.powi(b as i32)
                    } else if b >= n - k {
                        rho.powi((n - b) as i32)
                    } else {
                        T::zero()
                    }
                })
                .collect();
            (full, kept)
        })
        .collect();
    let mut bound = T::zero();
    let mut l1 = T::zero();
    for (flat, c) in spectrum.iter().enumerate() {
        let b = grid.multi_index(flat);
        let full = b.iter().enumerate().fold(T::one(), |acc, (j, &bj)| acc * tables[j].0[bj]);
        let kept = b.iter().enumerate().fold(T::one(), |acc, (j, &bj)| acc * tables[j].1[bj]);
        bound += c.norm() * (full - kept).max(T::zero());
        l1 += c.norm();
    }
    let roundoff = T::lit(64.0) * T::epsilon() * T::from_usize_lossy(grid.len()).sqrt() * (l1 + f.sup_norm());
    Ok(bound + roundoff)
}

/// Series path: synthesis of the full-band coefficient table at `z`.
pub fn poisson_series<T: Real>(f: &TorusFunction<T>, z: &[Complex<T>]) -> Result<Complex<T>> {
    analyze(f, f.grid().max_band())?.synthesize(z)
}
