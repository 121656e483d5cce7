//! Fourier analysis on the torus `T^n`.
//!
//! Functions are sampled on the uniform grid `z_k = (e^{2 pi i k_1/N}, ...)`
//! and stored row-major with the first coordinate varying slowest. Fourier
//! coefficients are uniform Riemann sums, which are exact for trigonometric
//! polynomials whose band stays below `N/2`. All sums are direct; no FFT.

mod measure;
mod poisson;
mod series;

pub use measure::TorusAtomicMeasure;
pub use poisson::{poisson_agreement_tolerance, poisson_extend, poisson_kernel, poisson_kernel_n, poisson_series};
pub use series::{abel_sum, cauchy_product, laurent_coeff, laurent_coeff_bound, AbelSum, CircleSamples};

use num_complex::Complex;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::multiindex::check_dim;
use crate::scalar::{cis, pairwise_sum, powi_c, Real};

/// Uniform `N^n` grid on the torus. `N` is even and at least 4.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TorusGrid {
    dim: usize,
    n: usize,
}

impl TorusGrid {
    pub fn new(dim: usize, samples_per_dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidInput("torus dimension must be positive".into()));
        }
        if samples_per_dim < 4 || !samples_per_dim.is_multiple_of(2) {
            return Err(Error::InvalidInput(format!(
                "samples per dimension must be even and >= 4, got {samples_per_dim}"
            )));
        }
        if samples_per_dim.checked_pow(dim as u32).is_none() {
            return Err(Error::InvalidInput("grid too large".into()));
        }
        Ok(TorusGrid { dim, n: samples_per_dim })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn samples_per_dim(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.n.pow(self.dim as u32)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Largest admissible band, `N/2 - 1`. The Nyquist bin is excluded.
    pub fn max_band(&self) -> i64 {
        (self.n / 2) as i64 - 1
    }

    /// Per-axis grid indices of a flat index.
    pub fn multi_index(&self, mut flat: usize) -> Vec<usize> {
        let mut k = vec![0; self.dim];
        for j in (0..self.dim).rev() {
            k[j] = flat % self.n;
            flat /= self.n;
        }
        k
    }

    pub fn flat_index(&self, k: &[usize]) -> usize {
        k.iter().fold(0, |acc, &kj| acc * self.n + kj)
    }

    /// `e^{2 pi i m / N}` for `m = 0..N`.
    pub fn roots<T: Real>(&self) -> Vec<Complex<T>> {
        let n = T::from_usize_lossy(self.n);
        (0..self.n).map(|m| cis(T::two_pi() * T::from_usize_lossy(m) / n)).collect()
    }

    pub fn point<T: Real>(&self, flat: usize) -> Vec<Complex<T>> {
        let n = T::from_usize_lossy(self.n);
        self.multi_index(flat)
            .into_iter()
            .map(|kj| cis(T::two_pi() * T::from_usize_lossy(kj) / n))
            .collect()
    }

    fn check_band(&self, alpha: &[i64]) -> Result<()> {
        check_dim(self.dim, alpha.len())?;
        let band = self.max_band();
        if alpha.iter().any(|a| a.abs() > band) {
            return Err(Error::OutsideBand { index: alpha.to_vec(), band });
        }
        Ok(())
    }
}

/// Complex samples of a function on a [`TorusGrid`].
#[derive(Clone, Debug, PartialEq)]
pub struct TorusFunction<T: Real> {
    grid: TorusGrid,
    values: Vec<Complex<T>>,
}

impl<T: Real> TorusFunction<T> {
    pub fn new(grid: TorusGrid, values: Vec<Complex<T>>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::DimensionMismatch { expected: grid.len(), found: values.len() });
        }
        if values.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidInput("torus samples must be finite".into()));
        }
        Ok(TorusFunction { grid, values })
    }

    pub fn from_fn(grid: TorusGrid, f: impl Fn(&[Complex<T>]) -> Complex<T> + Sync) -> Result<Self> {
        let values = (0..grid.len()).into_par_iter().map(|k| f(&grid.point::<T>(k))).collect();
        Self::new(grid, values)
    }

    pub fn grid(&self) -> TorusGrid {
        self.grid
    }

    pub fn values(&self) -> &[Complex<T>] {
        &self.values
    }

    /// Normalized integral `(2 pi)^{-n} int f |dz|` on the grid.
    pub fn mean(&self) -> Complex<T> {
        pairwise_sum(&self.values) / T::from_usize_lossy(self.grid.len())
    }

    /// `sup |f|` over the grid.
    pub fn sup_norm(&self) -> T {
        self.values.iter().fold(T::zero(), |m, z| m.max(z.norm()))
    }

    /// Pointwise product.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.grid != other.grid {
            return Err(Error::GridMismatch);
        }
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a * b).collect();
        Ok(TorusFunction { grid: self.grid, values })
    }
}

/// Fourier coefficients `c(alpha)` for `alpha` in `[-K, K]^n`, stored densely.
///
/// Also represents finitely supported elements `a(alpha)` of `l^1(Z^n)`.
#[derive(Clone, Debug, PartialEq)]
pub struct CoeffTable<T: Real> {
    dim: usize,
    band: i64,
    coeffs: Vec<Complex<T>>,
}

impl<T: Real> CoeffTable<T> {
    pub fn zeros(dim: usize, band: i64) -> Self {
        assert!(dim > 0 && band >= 0);
        let side = (2 * band + 1) as usize;
        CoeffTable { dim, band, coeffs: vec![Complex::new(T::zero(), T::zero()); side.pow(dim as u32)] }
    }

    /// Unit mass `delta(alpha)`.
    pub fn delta(alpha: &[i64]) -> Self {
        let band = alpha.iter().map(|a| a.abs()).max().unwrap_or(0);
        let mut t = Self::zeros(alpha.len(), band);
        t.set(alpha, Complex::new(T::one(), T::zero())).expect("inside band");
        t
    }

    pub fn from_entries<I>(dim: usize, band: i64, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<i64>, Complex<T>)>,
    {
        if dim == 0 || band < 0 {
            return Err(Error::InvalidInput("coefficient table needs dim > 0 and band >= 0".into()));
        }
        let mut t = Self::zeros(dim, band);
        for (alpha, c) in entries {
            let cur = t.get(&alpha)?;
            t.set(&alpha, cur + c)?;
        }
        Ok(t)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn band(&self) -> i64 {
        self.band
    }

    fn side(&self) -> usize {
        (2 * self.band + 1) as usize
    }

    fn offset(&self, alpha: &[i64]) -> Result<usize> {
        check_dim(self.dim, alpha.len())?;
        let mut off = 0usize;
        for &a in alpha {
            if a.abs() > self.band {
                return Err(Error::OutsideBand { index: alpha.to_vec(), band: self.band });
            }
            off = off * self.side() + (a + self.band) as usize;
        }
        Ok(off)
    }

    fn index_of(&self, mut off: usize) -> Vec<i64> {
        let side = self.side();
        let mut alpha = vec![0i64; self.dim];
        for j in (0..self.dim).rev() {
            alpha[j] = (off % side) as i64 - self.band;
            off /= side;
        }
        alpha
    }

    /// Coefficient at `alpha`; zero outside the band is not inferred, it is an error.
    pub fn get(&self, alpha: &[i64]) -> Result<Complex<T>> {
        Ok(self.coeffs[self.offset(alpha)?])
    }

    /// Coefficient at `alpha`, zero when `alpha` lies outside the band.
    pub fn get_or_zero(&self, alpha: &[i64]) -> Complex<T> {
        self.offset(alpha).map(|o| self.coeffs[o]).unwrap_or_else(|_| Complex::new(T::zero(), T::zero()))
    }

    pub fn set(&mut self, alpha: &[i64], c: Complex<T>) -> Result<()> {
        let o = self.offset(alpha)?;
        self.coeffs[o] = c;
        Ok(())
    }

    /// `(alpha, c(alpha))` in row-major order of `alpha`.
    pub fn iter(&self) -> impl Iterator<Item = (Vec<i64>, Complex<T>)> + '_ {
        self.coeffs.iter().enumerate().map(|(o, &c)| (self.index_of(o), c))
    }

    pub fn l1_norm(&self) -> T {
        self.coeffs.iter().map(|c| c.norm()).sum()
    }

    pub fn l2_norm_sq(&self) -> T {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum()
    }

    /// The same coefficients embedded in a wider band.
    pub fn widen(&self, band: i64) -> Self {
        assert!(band >= self.band);
        let mut t = Self::zeros(self.dim, band);
        for (alpha, c) in self.iter() {
            t.set(&alpha, c).expect("wider band");
        }
        t
    }

    /// `sum_alpha c(alpha) z~^alpha` with the modified monomials
    /// `z~_j^{a} = z_j^a` for `a >= 0` and `conj(z_j)^{-a}` for `a < 0`.
    ///
    /// On the torus this is the ordinary Fourier partial sum; inside the
    /// polydisk it is the Poisson extension of that partial sum.
    pub fn synthesize(&self, z: &[Complex<T>]) -> Result<Complex<T>> {
        check_dim(self.dim, z.len())?;
        let slack = T::lit(1e-12);
        if z.iter().any(|w| w.norm() > T::one() + slack) {
            return Err(Error::OutsidePolydisk);
        }
        let side = self.side();
        // powers[j][a + K] = z~_j^a
        let powers: Vec<Vec<Complex<T>>> = z
            .iter()
            .map(|&zj| {
                (-self.band..=self.band)
                    .map(|a| if a >= 0 { powi_c(zj, a as u64) } else { powi_c(zj.conj(), (-a) as u64) })
                    .collect()
            })
            .collect();
        let terms: Vec<Complex<T>> = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(mut off, &c)| {
                let mut m = c;
                for j in (0..self.dim).rev() {
                    m *= powers[j][off % side];
                    off /= side;
                }
                m
            })
            .collect();
        Ok(pairwise_sum(&terms))
    }

    /// Synthesizes the table at every point of `grid`.
    pub fn synthesize_on_grid(&self, grid: TorusGrid) -> Result<TorusFunction<T>> {
        check_dim(self.dim, grid.dim())?;
        TorusFunction::from_fn(grid, |z| self.synthesize(z).expect("grid points lie on the torus"))
    }
}

/// `f^(alpha) = N^{-n} sum_k f(z_k) z_k^{-alpha}`.
pub fn fourier_coeff<T: Real>(f: &TorusFunction<T>, alpha: &[i64]) -> Result<Complex<T>> {
    f.grid.check_band(alpha)?;
    Ok(raw_coeff(f, &f.grid.roots(), alpha))
}

/// Discrete coefficient without the band check; `alpha` is read mod `N`.
fn raw_coeff<T: Real>(f: &TorusFunction<T>, roots: &[Complex<T>], alpha: &[i64]) -> Complex<T> {
    let grid = f.grid;
    let n = grid.n as i64;
    let terms: Vec<Complex<T>> = f
        .values
        .iter()
        .enumerate()
        .map(|(flat, &v)| {
            let k = grid.multi_index(flat);
            let phase: i64 = k.iter().zip(alpha).map(|(&kj, &aj)| kj as i64 * aj).sum();
            v * roots[(-phase).rem_euclid(n) as usize]
        })
        .collect();
    pairwise_sum(&terms) / T::from_usize_lossy(grid.len())
}

/// Coefficient table of `f` over the band `[-K, K]^n`, `K <= N/2 - 1`.
pub fn analyze<T: Real>(f: &TorusFunction<T>, band: i64) -> Result<CoeffTable<T>> {
    if band < 0 || band > f.grid.max_band() {
        return Err(Error::OutsideBand { index: vec![band], band: f.grid.max_band() });
    }
    let roots = f.grid.roots();
    let mut table = CoeffTable::zeros(f.grid.dim, band);
    let coeffs: Vec<Complex<T>> = (0..table.coeffs.len())
        .into_par_iter()
        .map(|o| raw_coeff(f, &roots, &table.index_of(o)))
        .collect();
    table.coeffs = coeffs;
    Ok(table)
}

/// All `N^n` discrete coefficients, indexed by residues `b` in `[0, N)^n`.
pub(crate) fn discrete_spectrum<T: Real>(f: &TorusFunction<T>) -> Vec<Complex<T>> {
    let roots = f.grid.roots();
    (0..f.grid.len())
        .into_par_iter()
        .map(|b| {
            let alpha: Vec<i64> = f.grid.multi_index(b).into_iter().map(|x| x as i64).collect();
            raw_coeff(f, &roots, &alpha)
        })
        .collect()
}

/// Grid convolution `(f * g)(z) = N^{-n} sum_w f(z w^{-1}) g(w)`.
///
/// The two products belonging to each pair `{w, z w^{-1}}` are added before
/// the pair enters the sum, in a fixed order, so `f * g` and `g * f` agree
/// bit for bit.
pub fn convolve_torus<T: Real>(f: &TorusFunction<T>, g: &TorusFunction<T>) -> Result<TorusFunction<T>> {
    if f.grid != g.grid {
        return Err(Error::GridMismatch);
    }
    let grid = f.grid;
    let n = grid.n;
    let scale = T::from_usize_lossy(grid.len());
    let values: Vec<Complex<T>> = (0..grid.len())
        .into_par_iter()
        .map(|flat_k| {
            let k = grid.multi_index(flat_k);
            let mut terms = Vec::with_capacity(grid.len() / 2 + 1);
            for m in 0..grid.len() {
                let mk = grid.multi_index(m);
                let partner: Vec<usize> = k.iter().zip(&mk).map(|(&a, &b)| (a + n - b) % n).collect();
                let p = grid.flat_index(&partner);
                if m < p {
                    terms.push(f.values[p] * g.values[m] + f.values[m] * g.values[p]);
                } else if m == p {
                    terms.push(f.values[m] * g.values[m]);
                }
            }
            pairwise_sum(&terms) / scale
        })
        .collect();
    TorusFunction::new(grid, values)
}

/// Convolution in `l^1(Z^n)`: `(a * b)(gamma) = sum_beta a(gamma - beta) b(beta)`.
/// The output band is the sum of the input bands.
pub fn z_convolve<T: Real>(a: &CoeffTable<T>, b: &CoeffTable<T>) -> Result<CoeffTable<T>> {
    check_dim(a.dim, b.dim)?;
    let mut out = CoeffTable::zeros(a.dim, a.band + b.band);
    let nonzero_b: Vec<(Vec<i64>, Complex<T>)> =
        b.iter().filter(|(_, c)| *c != Complex::new(T::zero(), T::zero())).collect();
    let coeffs: Vec<Complex<T>> = (0..out.coeffs.len())
        .into_par_iter()
        .map(|o| {
            let gamma = out.index_of(o);
            let terms: Vec<Complex<T>> = nonzero_b
                .iter()
                .map(|(beta, cb)| {
                    let diff: Vec<i64> = gamma.iter().zip(beta).map(|(g, b)| g - b).collect();
                    a.get_or_zero(&diff) * cb
                })
                .collect();
            pairwise_sum(&terms)
        })
        .collect();
    out.coeffs = coeffs;
    Ok(out)
}

/// Both sides of Parseval's identity on the grid.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Parseval<T: Real> {
    /// `sum |f^(alpha)|^2` over the band `|alpha_j| <= N/2 - 1`.
    pub sum_of_squares: T,
    /// `(2 pi)^{-n} int |f|^2` by the grid rule.
    pub energy_integral: T,
}

pub fn parseval<T: Real>(f: &TorusFunction<T>) -> Result<Parseval<T>> {
    let table = analyze(f, f.grid.max_band())?;
    let sq: Vec<T> = f.values.iter().map(|z| z.norm_sqr()).collect();
    Ok(Parseval {
        sum_of_squares: table.l2_norm_sq(),
        energy_integral: crate::scalar::pairwise_sum_real(&sq) / T::from_usize_lossy(f.grid.len()),
    })
}

/// Outcome of [`analytic_type_test`].
#[derive(Clone, Debug, PartialEq)]
pub struct AnalyticTypeReport {
    pub analytic: bool,
    /// Indices with a negative component whose coefficient exceeds the tolerance.
    pub offending: Vec<Vec<i64>>,
}

/// True iff every coefficient at an index with some negative component has
/// modulus at most `tol`.
pub fn analytic_type_test<T: Real>(c: &CoeffTable<T>, tol: T) -> AnalyticTypeReport {
    let offending: Vec<Vec<i64>> = c
        .iter()
        .filter(|(alpha, v)| alpha.iter().any(|&a| a < 0) && v.norm() > tol)
        .map(|(alpha, _)| alpha)
        .collect();
    AnalyticTypeReport { analytic: offending.is_empty(), offending }
}

/// `max_interior |phi| - sup_{T^n} |phi|` for the synthesis `phi` of an
/// analytic-type table.
///
/// The boundary supremum is taken over a `boundary_samples^n` grid and then
/// refined by coordinate golden-section search around the best grid points.
pub fn max_principle_gap<T: Real>(c: &CoeffTable<T>, interior: &[Vec<Complex<T>>], boundary_samples: usize) -> Result<T> {
    let report = analytic_type_test(c, T::zero());
    if !report.analytic {
        return Err(Error::InvalidInput(format!(
            "table is not of analytic type; offending indices {:?}",
            report.offending
        )));
    }
    let mut interior_max = T::zero();
    for z in interior {
        if z.iter().any(|w| w.norm() >= T::one()) {
            return Err(Error::NotInterior);
        }
        interior_max = interior_max.max(c.synthesize(z)?.norm());
    }
    Ok(interior_max - boundary_sup(c, boundary_samples)?)
}

/// `sup_{T^n} |phi|` for the synthesis of `c`, grid search plus local refinement.
pub fn boundary_sup<T: Real>(c: &CoeffTable<T>, samples: usize) -> Result<T> {
    let grid = TorusGrid::new(c.dim, samples.max(4) + samples % 2)?;
    let step = T::two_pi() / T::from_usize_lossy(grid.n);
    let eval = |theta: &[T]| -> T {
        let z: Vec<Complex<T>> = theta.iter().map(|&t| cis(t)).collect();
        c.synthesize(&z).expect("torus point").norm()
    };
    let mut scored: Vec<(T, Vec<T>)> = (0..grid.len())
        .into_par_iter()
        .map(|k| {
            let theta: Vec<T> = grid.multi_index(k).into_iter().map(|kj| step * T::from_usize_lossy(kj)).collect();
            (eval(&theta), theta)
        })
        .collect();
    scored.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap_or(std::cmp::Ordering::Equal));
    let mut best = scored[0].0;
    for (_, start) in scored.into_iter().take(8) {
        let mut theta = start;
        let mut width = step;
        for _ in 0..6 {
            for j in 0..theta.len() {
                let center = theta[j];
                theta[j] = golden_max(center - width, center + width, |t| {
                    let mut th = theta.clone();
                    th[j] = t;
                    eval(&th)
                });
            }
            width *= T::lit(0.5);
        }
        best = best.max(eval(&theta));
    }
    Ok(best)
}

pub(crate) fn golden_max<T: Real>(mut lo: T, mut hi: T, f: impl Fn(T) -> T) -> T {
    let r = T::lit(0.618_033_988_749_894_9);
    let mut x1 = hi - r * (hi - lo);
    let mut x2 = lo + r * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    for _ in 0..100 {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + r * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - r * (hi - lo);
            f1 = f(x1);
        }
        if hi - lo <= T::epsilon() * (T::one() + lo.abs()) {
            break;
        }
    }
    if f1 > f2 {
        x1
    } else {
        x2
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    #[test]
    fn grid_validation() {
        assert!(TorusGrid::new(1, 3).is_err());
        assert!(TorusGrid::new(1, 2).is_err());
        assert!(TorusGrid::new(0, 8).is_err());
        let g = TorusGrid::new(2, 8).unwrap();
        assert_eq!(g.len(), 64);
        assert_eq!(g.max_band(), 3);
        assert_eq!(g.flat_index(&g.multi_index(37)), 37);
    }

    #[test]
    fn monomial_coefficients() {
        let grid = TorusGrid::new(1, 16).unwrap();
        for l in -7i64..=7 {
            let f = TorusFunction::<f64>::from_fn(grid, |z| if l >= 0 { powi_c(z[0], l as u64) } else { powi_c(z[0].conj(), (-l) as u64) })
                .unwrap();
            for j in -7i64..=7 {
                let v = fourier_coeff(&f, &[j]).unwrap();
                let expect = if j == l { 1.0 } else { 0.0 };
                assert!((v - c(expect, 0.0)).norm() < 1e-13, "l={l} j={j}");
            }
        }
        let one = TorusFunction::<f64>::from_fn(grid, |_| c(1.0, 0.0)).unwrap();
        assert!((fourier_coeff(&one, &[0]).unwrap() - c(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn two_dim_product_monomial() {
        let grid = TorusGrid::new(2, 8).unwrap();
        let f = TorusFunction::<f64>::from_fn(grid, |z| z[0] * z[1].conj()).unwrap();
        assert!((fourier_coeff(&f, &[1, -1]).unwrap() - c(1.0, 0.0)).norm() < 1e-14);
        assert!(fourier_coeff(&f, &[1, 1]).unwrap().norm() < 1e-14);
    }

    #[test]
    fn nyquist_band_rejected() {
        let grid = TorusGrid::new(1, 8).unwrap();
        let f = TorusFunction::<f64>::from_fn(grid, |_| c(1.0, 0.0)).unwrap();
        assert!(matches!(fourier_coeff(&f, &[4]), Err(Error::OutsideBand { .. })));
        assert!(fourier_coeff(&f, &[3]).is_ok());
    }

    #[test]
    fn aliasing_is_exact() {
        let grid = TorusGrid::new(1, 8).unwrap();
        let f = TorusFunction::<f64>::from_fn(grid, |z| powi_c(z[0], 8)).unwrap();
        assert!((fourier_coeff(&f, &[0]).unwrap() - c(1.0, 0.0)).norm() < 1e-13);
    }

    #[test]
    fn synthesize_examples() {
        let unit = CoeffTable::<f64>::delta(&[0]);
        assert_eq!(unit.synthesize(&[c(0.3, -0.2)]).unwrap(), c(1.0, 0.0));
        let conj = CoeffTable::<f64>::delta(&[-1]);
        assert!((conj.synthesize(&[c(0.4, 0.0)]).unwrap() - c(0.4, 0.0)).norm() < 1e-15);
        assert!((conj.synthesize(&[c(0.0, 0.5)]).unwrap() - c(0.0, -0.5)).norm() < 1e-15);
        assert!(matches!(unit.synthesize(&[c(1.1, 0.0)]), Err(Error::OutsidePolydisk)));
    }

    #[test]
    fn analyze_then_synthesize_roundtrip() {
        let grid = TorusGrid::new(1, 16).unwrap();
        let f = TorusFunction::<f64>::from_fn(grid, |z| {
            c(0.5, 0.0) + z[0] * c(0.0, 2.0) + powi_c(z[0].conj(), 3) * c(-1.0, 0.25)
        })
        .unwrap();
        let t = analyze(&f, grid.max_band()).unwrap();
        let back = t.synthesize_on_grid(grid).unwrap();
        for (a, b) in f.values().iter().zip(back.values()) {
            assert!((a - b).norm() < 1e-12);
        }
    }

    #[test]
    fn convolution_examples() {
        let grid = TorusGrid::new(1, 16).unwrap();
        let f = TorusFunction::<f64>::from_fn(grid, |z| z[0] + c(0.5, 0.0) * z[0].conj()).unwrap();
        let one = TorusFunction::<f64>::from_fn(grid, |_| c(1.0, 0.0)).unwrap();
        let fg = convolve_torus(&f, &one).unwrap();
        let mean = fourier_coeff(&f, &[0]).unwrap();
        assert!(fg.values().iter().all(|v| (v - mean).norm() < 1e-14));

        let z = TorusFunction::<f64>::from_fn(grid, |z| z[0]).unwrap();
        let zz = convolve_torus(&z, &z).unwrap();
        for (a, b) in zz.values().iter().zip(z.values()) {
            assert!((a - b).norm() < 1e-14);
        }
    }

    #[test]
    fn convolution_commutes_bitwise() {
        let grid = TorusGrid::new(2, 8).unwrap();
        let f = TorusFunction::<f64>::from_fn(grid, |z| z[0] * c(1.3, 0.1) + z[1].conj() * z[0] + c(0.2, 0.0)).unwrap();
        let g = TorusFunction::<f64>::from_fn(grid, |z| z[1] * z[1] * c(-0.4, 0.9) + z[0].conj()).unwrap();
        assert_eq!(convolve_torus(&f, &g).unwrap(), convolve_torus(&g, &f).unwrap());
        let other = TorusFunction::<f64>::from_fn(TorusGrid::new(2, 4).unwrap(), |_| c(1.0, 0.0)).unwrap();
        assert!(matches!(convolve_torus(&f, &other), Err(Error::GridMismatch)));
    }

    #[test]
    fn z_convolution_deltas() {
        let a = CoeffTable::<f64>::from_entries(1, 2, [(vec![-2], c(1.0, 1.0)), (vec![1], c(0.5, 0.0))]).unwrap();
        let d0 = CoeffTable::delta(&[0]);
        let prod = z_convolve(&d0, &a).unwrap();
        for (alpha, v) in prod.iter() {
            assert_eq!(v, a.get_or_zero(&alpha));
        }
        let dn = CoeffTable::<f64>::delta(&[2]);
        let dr = CoeffTable::<f64>::delta(&[-3]);
        let s = z_convolve(&dn, &dr).unwrap();
        for (alpha, v) in s.iter() {
            let expect = if alpha == vec![-1] { 1.0 } else { 0.0 };
            assert_eq!(v, c(expect, 0.0));
        }
    }

    #[test]
    fn parseval_examples() {
        let grid = TorusGrid::new(1, 16).unwrap();
        let f = TorusFunction::<f64>::from_fn(grid, |z| z[0] + z[0] * z[0]).unwrap();
        let p = parseval(&f).unwrap();
        assert!((p.sum_of_squares - 2.0).abs() < 1e-13);
        assert!((p.energy_integral - 2.0).abs() < 1e-13);
        let k = TorusFunction::<f64>::from_fn(grid, |_| c(0.6, -0.8)).unwrap();
        let p = parseval(&k).unwrap();
        assert!((p.sum_of_squares - 1.0).abs() < 1e-14);
        assert!((p.energy_integral - 1.0).abs() < 1e-14);
    }

    #[test]
    fn analytic_type_examples() {
        let grid = TorusGrid::new(2, 8).unwrap();
        let f = TorusFunction::<f64>::from_fn(grid, |z| z[0] * z[0] * z[1]).unwrap();
        let t = analyze(&f, 3).unwrap();
        assert!(analytic_type_test(&t, 1e-12).analytic);
        let g = TorusFunction::<f64>::from_fn(grid, |z| z[0].conj()).unwrap();
        let r = analytic_type_test(&analyze(&g, 3).unwrap(), 1e-12);
        assert!(!r.analytic);
        assert_eq!(r.offending, vec![vec![-1, 0]]);
    }

    #[test]
    fn maximum_principle_examples() {
        let mono = CoeffTable::<f64>::delta(&[3]);
        let interior: Vec<Vec<Complex<f64>>> = (0..50).map(|k| vec![cis(k as f64) * (k as f64 / 51.0)]).collect();
        assert!(max_principle_gap(&mono, &interior, 64).unwrap() <= 0.0);

        let half = CoeffTable::from_entries(1, 1, [(vec![0], c(0.5, 0.0)), (vec![1], c(0.5, 0.0))]).unwrap();
        let gap = max_principle_gap(&half, &interior, 64).unwrap();
        assert!(gap < 0.0);
        assert!((boundary_sup(&half, 64).unwrap() - 1.0).abs() < 1e-14);

        let bad = CoeffTable::<f64>::delta(&[-1]);
        assert!(max_principle_gap(&bad, &interior, 64).is_err());
    }
}
