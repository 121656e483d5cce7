use num_complex::Complex;

use super::{ClosedFormFn, HalfPlanePoint, LineFunction};
use crate::error::{Error, Result};
use crate::multiindex::check_dim;
use crate::scalar::{pairwise_sum, Real};

/// Finite atomic measure `sum_k c_k delta_{u_k}` on `R^n`. Atoms at the same
/// location are merged by adding weights.
#[derive(Clone, Debug, PartialEq)]
pub struct LineAtomicMeasure<T: Real> {
    dim: usize,
    atoms: Vec<(Vec<T>, Complex<T>)>,
}

impl<T: Real> LineAtomicMeasure<T> {
    pub fn new(dim: usize, atoms: Vec<(Vec<T>, Complex<T>)>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidInput("measure dimension must be positive".into()));
        }
        let mut merged: Vec<(Vec<T>, Complex<T>)> = Vec::with_capacity(atoms.len());
        for (u, c) in atoms {
            check_dim(dim, u.len())?;
            if u.iter().any(|x| !x.is_finite()) || !c.re.is_finite() || !c.im.is_finite() {
                return Err(Error::InvalidInput("atoms must be finite".into()));
            }
            match merged.iter_mut().find(|(p, _)| *p == u) {
                Some(atom) => atom.1 += c,
                None => merged.push((u, c)),
            }
        }
        Ok(LineAtomicMeasure { dim, atoms: merged })
    }

    /// `delta_u`.
    pub fn delta(u: Vec<T>) -> Self {
        let dim = u.len();
        LineAtomicMeasure { dim, atoms: vec![(u, Complex::new(T::one(), T::zero()))] }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn atoms(&self) -> &[(Vec<T>, Complex<T>)] {
        &self.atoms
    }

    /// `||mu|| = sum |c_k|`.
    pub fn total_variation(&self) -> T {
        self.atoms.iter().map(|(_, c)| c.norm()).sum()
    }

    /// `mu^(zeta) = sum_k c_k e^{-i zeta . u_k}`.
    ///
    /// For non-real `zeta` in the closure of `H_{n,eps}` every atom must lie
    /// in the quadrant `Q_{n,-eps}`, which keeps each exponential bounded by 1.
    pub fn ft(&self, zeta: &HalfPlanePoint<T>) -> Result<Complex<T>> {
        check_dim(self.dim, zeta.dim())?;
        if !zeta.is_real() {
            for (u, _) in &self.atoms {
                for (&uj, &e) in u.iter().zip(zeta.signature()) {
                    if T::from_i64_lossy(e as i64) * uj > T::zero() {
                        return Err(Error::OutsideAdmissibleRegion(format!(
                            "atom at {uj} lies outside the quadrant for signature {e}"
                        )));
                    }
                }
            }
        }
        let i = Complex::new(T::zero(), T::one());
        let terms: Vec<Complex<T>> = self
            .atoms
            .iter()
            .map(|(u, c)| {
                let dot: Complex<T> = zeta.zeta().iter().zip(u).map(|(z, &x)| z * x).sum();
                c * (-(i * dot)).exp()
            })
            .collect();
        Ok(pairwise_sum(&terms))
    }

    /// Atoms at `u_k + v_l` with weights `c_k d_l`.
    pub fn convolve(&self, other: &Self) -> Result<Self> {
        check_dim(self.dim, other.dim)?;
        let mut atoms = Vec::with_capacity(self.atoms.len() * other.atoms.len());
        for (u, c) in &self.atoms {
            for (v, d) in &other.atoms {
                atoms.push((u.iter().zip(v).map(|(a, b)| *a + *b).collect(), c * d));
            }
        }
        Self::new(self.dim, atoms)
    }

    /// Same atoms in a canonical (lexicographic) order, for comparisons.
    pub fn canonical(&self) -> Self {
        let mut atoms = self.atoms.clone();
        atoms.sort_by(|a, b| {
            a.0.iter()
                .zip(&b.0)
                .map(|(x, y)| x.partial_cmp(y).unwrap_or(std::cmp::Ordering::Equal))
                .find(|o| o.is_ne())
                .unwrap_or(std::cmp::Ordering::Equal)
        });
        LineAtomicMeasure { dim: self.dim, atoms }
    }
}

/// `x -> sum_k c_k f(x - u_k)` for atoms on the grid of `f`. The box grows
/// to hold every shifted copy.
pub fn fn_measure_convolve<T: Real>(f: &LineFunction<T>, mu: &LineAtomicMeasure<T>) -> Result<LineFunction<T>> {
    check_dim(f.dim(), mu.dim)?;
    let mut pad = 0usize;
    for (u, _) in &mu.atoms {
        for &uj in u {
            pad = pad.max(f.grid_steps(uj)?.unsigned_abs() as usize);
        }
    }
    let base = f.padded(pad);
    let mut acc: Option<Vec<Complex<T>>> = None;
    for (u, c) in &mu.atoms {
        let shifted = base.translate(u)?;
        // translate pads by the shift again; cut back to the common box
        let trimmed = trim(&shifted, base.intervals());
        let contrib: Vec<Complex<T>> = trimmed.into_iter().map(|v| *c * v).collect();
        acc = Some(match acc {
            None => contrib,
            Some(prev) => prev.into_iter().zip(contrib).map(|(a, b)| a + b).collect(),
        });
    }
    let values = acc.unwrap_or_else(|| vec![Complex::new(T::zero(), T::zero()); base.values().len()]);
    LineFunction::new(base.dim(), base.half_width(), base.intervals(), base.decay(), values)
}

/// Samples of `g` restricted to the centered sub-box with `intervals` intervals.
fn trim<T: Real>(g: &LineFunction<T>, intervals: usize) -> Vec<Complex<T>> {
    let pad = (g.intervals() - intervals) / 2;
    let side = g.intervals() + 1;
    let out_side = intervals + 1;
    (0..out_side.pow(g.dim() as u32))
        .map(|flat| {
            let k: Vec<usize> = super::unflatten(flat, out_side, g.dim()).into_iter().map(|x| x + pad).collect();
            g.values()[super::flatten(&k, side)]
        })
        .collect()
}

/// `(g * mu)(x) = sum_k c_k g(x - u_k)` for a closed-form `g`.
pub fn closed_form_measure_convolve<T: Real>(g: &ClosedFormFn<T>, mu: &LineAtomicMeasure<T>, x: &[T]) -> Result<Complex<T>> {
    check_dim(g.dim(), mu.dim)?;
    check_dim(g.dim(), x.len())?;
    let terms: Vec<Complex<T>> = mu
        .atoms
        .iter()
        .map(|(u, c)| {
            let y: Vec<T> = x.iter().zip(u).map(|(a, b)| *a - *b).collect();
            c * g.eval(&y)
        })
        .collect();
    Ok(pairwise_sum(&terms))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::line::Decay;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    #[test]
    fn delta_transform_has_unit_modulus() {
        let d = LineAtomicMeasure::delta(vec![0.75]);
        for xi in [0.0f64, 1.0, -3.5, 100.0] {
            let v = d.ft(&HalfPlanePoint::real(&[xi])).unwrap();
            assert!((v - c((0.75 * xi).cos(), -(0.75 * xi).sin())).norm() < 1e-15);
            assert!((v.norm() - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn delta_identities() {
        let mu = LineAtomicMeasure::new(1, vec![(vec![0.5], c(1.0, -2.0)), (vec![-1.25], c(0.25, 0.0))]).unwrap();
        assert_eq!(mu.convolve(&LineAtomicMeasure::delta(vec![0.0])).unwrap(), mu);
        let uv = LineAtomicMeasure::delta(vec![0.5]).convolve(&LineAtomicMeasure::delta(vec![1.25])).unwrap();
        assert_eq!(uv, LineAtomicMeasure::delta(vec![1.75]));
    }

    #[test]
    fn function_times_delta_is_a_shift() {
        let f = LineFunction::sample(1, 2.0, 64, Decay::Compact, |x: &[f64]| c((1.0 - x[0].abs()).max(0.0), 0.0)).unwrap();
        let shifted = fn_measure_convolve(&f, &LineAtomicMeasure::delta(vec![0.5])).unwrap();
        assert_eq!(shifted, f.translate(&[0.5]).unwrap());
        assert!(fn_measure_convolve(&f, &LineAtomicMeasure::delta(vec![0.01])).is_err());
    }

    #[test]
    fn quadrant_rule_for_complex_arguments() {
        let mu = LineAtomicMeasure::new(1, vec![(vec![2.0], c(1.0, 0.0))]).unwrap();
        // atoms in x >= 0 need Im zeta <= 0
        let lower = HalfPlanePoint::lower(vec![c(1.0, -1.0)]).unwrap();
        assert!(mu.ft(&lower).unwrap().norm() <= mu.total_variation());
        let upper = HalfPlanePoint::new(vec![c(1.0, 1.0)], vec![1]).unwrap();
        assert!(matches!(mu.ft(&upper), Err(Error::OutsideAdmissibleRegion(_))));
    }

    #[test]
    fn closed_form_shift() {
        let g = ClosedFormFn::PA { a: 1.0 };
        let mu = LineAtomicMeasure::new(1, vec![(vec![1.0], c(2.0, 0.0)), (vec![-1.0], c(0.0, 1.0))]).unwrap();
        let v = closed_form_measure_convolve(&g, &mu, &[0.5]).unwrap();
        let expect = c(2.0, 0.0) * (-0.5f64).exp() + c(0.0, 1.0) * (-1.5f64).exp();
        assert!((v - expect).norm() < 1e-15);
    }
}
