//! Fourier analysis on `R^n` at desk scale.
//!
//! A [`LineFunction`] holds samples on the box `[-L, L]^n` at the nodes
//! `x_k = -L + k h`, `k = 0..=M`, `h = 2L/M`. Integrals use the trapezoid
//! rule, so the end nodes carry weight `1/2` per axis. The sampled function
//! is treated as the discrete measure `h^n sum_k w_k f(x_k) delta_{x_k}`,
//! which makes the convolution and transform identities hold to roundoff.

mod closed_form;
mod kernel;
mod measure;
mod profile;

pub use closed_form::{
    cr_residual, cr_residual_max, ft_closed_form, pa_transform_integral, ClosedFormFn, HalfPlanePoint, TailCorrected,
};
pub use kernel::{
    approx_identity, approx_identity_error, inversion_check, poisson_mass, poisson_rn, InversionCheck,
};
pub use measure::{closed_form_measure_convolve, fn_measure_convolve, LineAtomicMeasure};
pub use profile::{rl_profile_closed_form, rl_profile_measure, rl_profile_sampled, RlProfile};

use num_complex::Complex;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::multiindex::check_dim;
use crate::scalar::{cis, pairwise_sum, Real};

/// Decay class of a sampled function outside its box.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Decay<T> {
    /// Vanishes outside the box.
    Compact,
    /// Bounded by `B exp(-rate (|x|_inf - L))` outside the box, `B` the largest boundary sample.
    Exponential { rate: T },
}

/// Samples of a function on a uniform grid over `[-L, L]^n`.
#[derive(Clone, Debug, PartialEq)]
pub struct LineFunction<T: Real> {
    dim: usize,
    half_width: T,
    intervals: usize,
    decay: Decay<T>,
    values: Vec<Complex<T>>,
}

impl<T: Real> LineFunction<T> {
    pub fn new(dim: usize, half_width: T, intervals: usize, decay: Decay<T>, values: Vec<Complex<T>>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidInput("dimension must be positive".into()));
        }
        if !(half_width > T::zero()) || !half_width.is_finite() {
            return Err(Error::NonPositiveParameter(format!("half width {half_width}")));
        }
        if intervals < 8 {
            return Err(Error::InvalidInput(format!("need at least 8 intervals per axis, got {intervals}")));
        }
        if let Decay::Exponential { rate } = decay {
            if !(rate > T::zero()) {
                return Err(Error::NonPositiveParameter(format!("decay rate {rate}")));
            }
        }
        let len = (intervals + 1)
            .checked_pow(dim as u32)
            .ok_or_else(|| Error::InvalidInput("grid too large".into()))?;
        if values.len() != len {
            return Err(Error::DimensionMismatch { expected: len, found: values.len() });
        }
        if values.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidInput("samples must be finite".into()));
        }
        Ok(LineFunction { dim, half_width, intervals, decay, values })
    }

    /// Samples `f` at every node.
    pub fn sample(
        dim: usize,
        half_width: T,
        intervals: usize,
        decay: Decay<T>,
        f: impl Fn(&[T]) -> Complex<T> + Sync,
    ) -> Result<Self> {
        let side = intervals + 1;
        let len = side.checked_pow(dim as u32).ok_or_else(|| Error::InvalidInput("grid too large".into()))?;
        let values = (0..len)
            .into_par_iter()
            .map(|flat| {
                let x: Vec<T> = unflatten(flat, side, dim).into_iter().map(|k| node(half_width, intervals, k)).collect();
                f(&x)
            })
            .collect();
        Self::new(dim, half_width, intervals, decay, values)
    }

    /// Samples a closed-form function; the decay class follows from its kind.
    pub fn from_closed_form(g: &ClosedFormFn<T>, half_width: T, intervals: usize) -> Result<Self> {
        Self::sample(g.dim(), half_width, intervals, g.decay(), |x| Complex::new(g.eval(x), T::zero()))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn half_width(&self) -> T {
        self.half_width
    }

    pub fn intervals(&self) -> usize {
        self.intervals
    }

    pub fn decay(&self) -> Decay<T> {
        self.decay
    }

    pub fn values(&self) -> &[Complex<T>] {
        &self.values
    }

    /// Grid spacing `h = 2L/M`.
    pub fn spacing(&self) -> T {
        T::lit(2.0) * self.half_width / T::from_usize_lossy(self.intervals)
    }

    fn side(&self) -> usize {
        self.intervals + 1
    }

    /// Coordinates of node `k` on one axis.
    pub fn node(&self, k: usize) -> T {
        node(self.half_width, self.intervals, k)
    }

    pub fn point(&self, flat: usize) -> Vec<T> {
        unflatten(flat, self.side(), self.dim).into_iter().map(|k| self.node(k)).collect()
    }

    /// Trapezoid weight of a flat index, without the `h^n` factor.
    fn weight(&self, flat: usize) -> T {
        let half = T::lit(0.5);
        unflatten(flat, self.side(), self.dim)
            .into_iter()
            .fold(T::one(), |w, k| if k == 0 || k == self.intervals { w * half } else { w })
    }

    fn cell(&self) -> T {
        self.spacing().powi(self.dim as i32)
    }

    /// Trapezoid value of `int f`.
    pub fn integral(&self) -> Complex<T> {
        let terms: Vec<Complex<T>> = self.values.iter().enumerate().map(|(k, &v)| v * self.weight(k)).collect();
        pairwise_sum(&terms) * self.cell()
    }

    /// Trapezoid value of `int |f|`.
    pub fn l1_norm(&self) -> T {
        let terms: Vec<T> = self.values.iter().enumerate().map(|(k, v)| v.norm() * self.weight(k)).collect();
        crate::scalar::pairwise_sum_real(&terms) * self.cell()
    }

    pub fn sup_norm(&self) -> T {
        self.values.iter().fold(T::zero(), |m, v| m.max(v.norm()))
    }

    /// Bound on `int |f|` outside the box implied by the decay class.
    pub fn tail_bound(&self) -> T {
        match self.decay {
            Decay::Compact => T::zero(),
            Decay::Exponential { rate } => {
                let boundary = self
                    .values
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| unflatten(*k, self.side(), self.dim).iter().any(|&i| i == 0 || i == self.intervals))
                    .fold(T::zero(), |m, (_, v)| m.max(v.norm()));
                // int_0^inf e^{-rate s} d/ds (2L + 2s)^n ds, expanded binomially
                let n = self.dim;
                let two_l = T::lit(2.0) * self.half_width;
                let mut acc = T::zero();
                let mut binom = T::one();
                let mut fact = T::one();
                for i in 0..n {
                    if i > 0 {
                        binom = binom * T::from_usize_lossy(n - i) / T::from_usize_lossy(i);
                        fact *= T::from_usize_lossy(i);
                    }
                    acc += binom * two_l.powi((n - 1 - i) as i32) * T::lit(2.0).powi(i as i32) * fact
                        / rate.powi(i as i32 + 1);
                }
                boundary * T::from_usize_lossy(2 * n) * acc
            }
        }
    }

    /// Sum of `alpha f + beta g` on a common grid.
    pub fn linear_combination(&self, alpha: Complex<T>, other: &Self, beta: Complex<T>) -> Result<Self> {
        self.check_same_grid(other)?;
        let values = self.values.iter().zip(&other.values).map(|(a, b)| alpha * a + beta * b).collect();
        Ok(LineFunction { values, ..self.clone() })
    }

    fn check_same_grid(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim || self.half_width != other.half_width || self.intervals != other.intervals {
            return Err(Error::GridMismatch);
        }
        Ok(())
    }

    /// `f(x - t)` for `t` a multiple of `h` on every axis. The box grows by
    /// `max |t_j|` so that no samples are lost.
    pub fn translate(&self, t: &[T]) -> Result<Self> {
        check_dim(self.dim, t.len())?;
        let shifts = t.iter().map(|&tj| self.grid_steps(tj)).collect::<Result<Vec<i64>>>()?;
        let pad = shifts.iter().map(|s| s.unsigned_abs() as usize).max().unwrap_or(0);
        let out = self.padded(pad);
        let side = out.side();
        let mut values = vec![Complex::new(T::zero(), T::zero()); out.values.len()];
        for (flat, v) in out.values.iter().enumerate() {
            let k = unflatten(flat, side, self.dim);
            let target: Option<Vec<usize>> = k
                .iter()
                .zip(&shifts)
                .map(|(&kj, &s)| {
                    let m = kj as i64 + s;
                    (0..side as i64).contains(&m).then_some(m as usize)
                })
                .collect();
            if let Some(target) = target {
                values[flatten(&target, side)] = *v;
            }
        }
        Ok(LineFunction { values, ..out })
    }

    /// Number of grid steps in `t`, rejecting off-grid values.
    pub(crate) fn grid_steps(&self, t: T) -> Result<i64> {
        let s = t / self.spacing();
        let r = s.round();
        if (s - r).abs() > T::lit(1e-9) * T::one().max(r.abs()) {
            return Err(Error::OffGridTranslation(t.to_f64_lossy()));
        }
        r.to_i64().ok_or(Error::OffGridTranslation(t.to_f64_lossy()))
    }

    /// The same function on a box widened by `pad` grid steps per side.
    pub(crate) fn padded(&self, pad: usize) -> Self {
        if pad == 0 {
            return self.clone();
        }
        let h = self.spacing();
        let intervals = self.intervals + 2 * pad;
        let half_width = self.half_width + h * T::from_usize_lossy(pad);
        let side = intervals + 1;
        let mut values = vec![Complex::new(T::zero(), T::zero()); side.pow(self.dim as u32)];
        for (flat, &v) in self.values.iter().enumerate() {
            let k: Vec<usize> = unflatten(flat, self.side(), self.dim).into_iter().map(|x| x + pad).collect();
            values[flatten(&k, side)] = v;
        }
        LineFunction { dim: self.dim, half_width, intervals, decay: self.decay, values }
    }

    /// `M_w(f)(x) = e^{i w . x} f(x)`. Complex `w` is admitted only for
    /// compactly supported samples.
    pub fn modulate(&self, w: &[Complex<T>]) -> Result<Self> {
        check_dim(self.dim, w.len())?;
        if w.iter().any(|wj| wj.im != T::zero()) && self.decay != Decay::Compact {
            return Err(Error::NonCompactModulation);
        }
        let i = Complex::new(T::zero(), T::one());
        let values = self
            .values
            .iter()
            .enumerate()
            .map(|(flat, &v)| {
                let x = self.point(flat);
                let phase: Complex<T> = w.iter().zip(&x).map(|(wj, &xj)| wj * xj).sum();
                v * (i * phase).exp()
            })
            .collect();
        Ok(LineFunction { values, ..self.clone() })
    }

    pub(crate) fn check_adequate(&self, xi: &[T]) -> Result<()> {
        check_dim(self.dim, xi.len())?;
        let h = self.spacing();
        let limit = T::FRAC_PI_4() * (T::one() + T::lit(1e-12));
        for &x in xi {
            if !((x.abs() * h) <= limit) {
                return Err(Error::SamplingInadequate { product: (x.abs() * h).to_f64_lossy() });
            }
        }
        Ok(())
    }

    /// Largest `|xi_j|` allowed by the sampling rule `|xi_j| h <= pi/4`.
    pub fn max_frequency(&self) -> T {
        T::FRAC_PI_4() / self.spacing()
    }
}

fn node<T: Real>(half_width: T, intervals: usize, k: usize) -> T {
    // L (2k - M) / M is exact at the box ends, the origin and dyadic points
    half_width * T::from_i64_lossy(2 * k as i64 - intervals as i64) / T::from_usize_lossy(intervals)
}

pub(crate) fn unflatten(mut flat: usize, side: usize, dim: usize) -> Vec<usize> {
    let mut k = vec![0; dim];
    for j in (0..dim).rev() {
        k[j] = flat % side;
        flat /= side;
    }
    k
}

pub(crate) fn flatten(k: &[usize], side: usize) -> usize {
    k.iter().fold(0, |acc, &kj| acc * side + kj)
}

/// Trapezoid transform `h^n sum_k w_k f(x_k) e^{-i xi . x_k}`.
pub fn ft_quadrature<T: Real>(f: &LineFunction<T>, xi: &[T]) -> Result<Complex<T>> {
    f.check_adequate(xi)?;
    Ok(ft_unchecked(f, xi))
}

pub(crate) fn ft_unchecked<T: Real>(f: &LineFunction<T>, xi: &[T]) -> Complex<T> {
    let side = f.side();
    let half = T::lit(0.5);
    // tables[j][k] = w_k e^{-i xi_j x_k}
    let tables: Vec<Vec<Complex<T>>> = xi
        .iter()
        .map(|&x| {
            (0..side)
                .map(|k| {
                    let e = cis(-x * f.node(k));
                    if k == 0 || k == f.intervals {
                        e * half
                    } else {
                        e
                    }
                })
                .collect()
        })
        .collect();
    let mut terms = Vec::with_capacity(f.values.len());
    let mut k = vec![0usize; f.dim];
    for &v in &f.values {
        terms.push(k.iter().enumerate().fold(v, |acc, (j, &kj)| acc * tables[j][kj]));
        for j in (0..f.dim).rev() {
            k[j] += 1;
            if k[j] < side {
                break;
            }
            k[j] = 0;
        }
    }
    pairwise_sum(&terms) * f.cell()
}

/// Discrete convolution of the trapezoid measures, divided by `h^n`:
/// `(f * g)(y_m) = h^n sum_{k + l = m} w_k w_l f(x_k) g(x_l)` on the box
/// `[-2L, 2L]^n` with `2M` intervals.
///
/// The pair `{k, l}` enters as one summand, so `f * g` and `g * f` agree
/// bit for bit. The transform of the result is exactly the product of the
/// transforms whenever the end samples vanish.
pub fn convolve_line<T: Real>(f: &LineFunction<T>, g: &LineFunction<T>) -> Result<LineFunction<T>> {
    f.check_same_grid(g)?;
    let dim = f.dim;
    let side = f.side();
    let out_intervals = 2 * f.intervals;
    let out_side = out_intervals + 1;
    let fw: Vec<Complex<T>> = f.values.iter().enumerate().map(|(k, &v)| v * f.weight(k)).collect();
    let gw: Vec<Complex<T>> = g.values.iter().enumerate().map(|(k, &v)| v * g.weight(k)).collect();
    let cell = f.cell();
    let values: Vec<Complex<T>> = (0..out_side.pow(dim as u32))
        .into_par_iter()
        .map(|flat_m| {
            let m = unflatten(flat_m, out_side, dim);
            // k ranges over max(0, m - M) ..= min(M, m) on each axis
            let lo: Vec<usize> = m.iter().map(|&mj| mj.saturating_sub(f.intervals)).collect();
            let hi: Vec<usize> = m.iter().map(|&mj| mj.min(f.intervals)).collect();
            let mut terms = Vec::new();
            let mut k = lo.clone();
            loop {
                let l: Vec<usize> = m.iter().zip(&k).map(|(a, b)| a - b).collect();
                let (fk, fl) = (flatten(&k, side), flatten(&l, side));
                if fk < fl {
                    terms.push(fw[fk] * gw[fl] + fw[fl] * gw[fk]);
                } else if fk == fl {
                    terms.push(fw[fk] * gw[fk]);
                }
                let mut j = dim;
                loop {
                    if j == 0 {
                        return pairwise_sum(&terms) * cell;
                    }
                    j -= 1;
                    if k[j] < hi[j] {
                        k[j] += 1;
                        break;
                    }
                    k[j] = lo[j];
                }
            }
        })
        .collect();
    let decay = match (f.decay, g.decay) {
        (Decay::Compact, Decay::Compact) => Decay::Compact,
        (Decay::Exponential { rate }, Decay::Compact) | (Decay::Compact, Decay::Exponential { rate }) => {
            Decay::Exponential { rate }
        }
        (Decay::Exponential { rate: a }, Decay::Exponential { rate: b }) => Decay::Exponential { rate: a.min(b) },
    };
    LineFunction::new(dim, T::lit(2.0) * f.half_width, out_intervals, decay, values)
}

/// Both sides of `int f^(xi) g(xi) d xi = int f(x) g^(x) dx` by nested
/// trapezoid sums, the left side summed over the nodes of `g` and the right
/// side over the nodes of `f`.
pub fn multiplication_formula_check<T: Real>(
    f: &LineFunction<T>,
    g: &LineFunction<T>,
) -> Result<(Complex<T>, Complex<T>)> {
    check_dim(f.dim, g.dim)?;
    let side_sum = |outer: &LineFunction<T>, inner: &LineFunction<T>| -> Complex<T> {
        let terms: Vec<Complex<T>> = (0..outer.values.len())
            .into_par_iter()
            .map(|flat| {
                let v = outer.values[flat];
                if v == Complex::new(T::zero(), T::zero()) {
                    return v;
                }
                v * outer.weight(flat) * ft_unchecked(inner, &outer.point(flat))
            })
            .collect();
        pairwise_sum(&terms) * outer.cell()
    };
    Ok((side_sum(g, f), side_sum(f, g)))
}
