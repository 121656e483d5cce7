use num_complex::Complex;

use super::{TorusFunction, TorusGrid};
use crate::error::{Error, Result};
use crate::multiindex::check_dim;
use crate::scalar::{pairwise_sum, powi_c, Real};

/// Finite atomic measure `sum_k c_k delta_{z_k}` on `T^n`.
///
/// Atom locations are divided by their modulus on construction, and atoms
/// at identical locations are merged by adding weights.
#[derive(Clone, Debug, PartialEq)]
pub struct TorusAtomicMeasure<T: Real> {
    dim: usize,
    atoms: Vec<(Vec<Complex<T>>, Complex<T>)>,
}

impl<T: Real> TorusAtomicMeasure<T> {
    pub fn new(dim: usize, atoms: Vec<(Vec<Complex<T>>, Complex<T>)>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidInput("measure dimension must be positive".into()));
        }
        let mut merged: Vec<(Vec<Complex<T>>, Complex<T>)> = Vec::with_capacity(atoms.len());
        for (z, c) in atoms {
            check_dim(dim, z.len())?;
            let mut unit = Vec::with_capacity(dim);
            for zj in z {
                let m = zj.norm();
                if !(m > T::zero()) || !m.is_finite() {
                    return Err(Error::InvalidInput("atom location must be a nonzero finite point".into()));
                }
                unit.push(zj / m);
            }
            match merged.iter_mut().find(|(p, _)| *p == unit) {
                Some(atom) => atom.1 += c,
                None => merged.push((unit, c)),
            }
        }
        Ok(TorusAtomicMeasure { dim, atoms: merged })
    }

    pub fn point_mass(z: Vec<Complex<T>>) -> Result<Self> {
        Self::new(z.len(), vec![(z, Complex::new(T::one(), T::zero()))])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn atoms(&self) -> &[(Vec<Complex<T>>, Complex<T>)] {
        &self.atoms
    }

    /// `|mu|(T^n) = sum |c_k|`.
    pub fn total_variation(&self) -> T {
        self.atoms.iter().map(|(_, c)| c.norm()).sum()
    }

    /// `mu^(alpha) = sum_k c_k z_k^{-alpha}`.
    pub fn fourier_coeff(&self, alpha: &[i64]) -> Result<Complex<T>> {
        check_dim(self.dim, alpha.len())?;
        let terms: Vec<Complex<T>> = self
            .atoms
            .iter()
            .map(|(z, c)| {
                z.iter().zip(alpha).fold(*c, |acc, (&zj, &a)| {
                    // z^{-a} = conj(z)^a on the circle
                    acc * if a >= 0 { powi_c(zj.conj(), a as u64) } else { powi_c(zj, (-a) as u64) }
                })
            })
            .collect();
        Ok(pairwise_sum(&terms))
    }

    /// `sum_k c_k f(z_k)`.
    pub fn integrate(&self, f: impl Fn(&[Complex<T>]) -> Complex<T>) -> Complex<T> {
        let terms: Vec<Complex<T>> = self.atoms.iter().map(|(z, c)| *c * f(z)).collect();
        pairwise_sum(&terms)
    }

    /// Atoms at coordinatewise products `z_k w_l` with weights `c_k d_l`.
    pub fn convolve(&self, other: &Self) -> Result<Self> {
        check_dim(self.dim, other.dim)?;
        let mut atoms = Vec::with_capacity(self.atoms.len() * other.atoms.len());
        for (z, c) in &self.atoms {
            for (w, d) in &other.atoms {
                atoms.push((z.iter().zip(w).map(|(a, b)| a * b).collect(), c * d));
            }
        }
        Self::new(self.dim, atoms)
    }

    /// `sum_k c_k (2 pi)^n P_n(r z, z_k)` on the grid, the Poisson smoothing
    /// `rho_{n,r} * mu` of the measure.
    pub fn poisson_smooth(&self, r: T, grid: TorusGrid) -> Result<TorusFunction<T>> {
        check_dim(self.dim, grid.dim())?;
        if !(r >= T::zero() && r < T::one()) {
            return Err(Error::OutOfRange(format!("smoothing radius {r} must lie in [0, 1)")));
        }
        let num = T::one() - r * r;
        TorusFunction::from_fn(grid, |z| {
            let terms: Vec<Complex<T>> = self
                .atoms
                .iter()
                .map(|(a, c)| {
                    *c * z
                        .iter()
                        .zip(a)
                        .fold(T::one(), |acc, (&zj, &aj)| acc * num / (aj - zj * r).norm_sqr())
                })
                .collect();
            pairwise_sum(&terms)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::cis;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    #[test]
    fn point_mass_at_one() {
        let mu = TorusAtomicMeasure::point_mass(vec![c(1.0, 0.0)]).unwrap();
        for a in -5..=5 {
            assert_eq!(mu.fourier_coeff(&[a]).unwrap(), c(1.0, 0.0));
        }
    }

    #[test]
    fn construction_normalizes_and_merges() {
        let mu = TorusAtomicMeasure::new(1, vec![(vec![c(2.0, 0.0)], c(1.0, 0.0)), (vec![c(1.0, 0.0)], c(0.5, 0.0))])
            .unwrap();
        assert_eq!(mu.atoms().len(), 1);
        assert_eq!(mu.atoms()[0].1, c(1.5, 0.0));
        assert!(TorusAtomicMeasure::new(1, vec![(vec![c(0.0, 0.0)], c(1.0, 0.0))]).is_err());
    }

    #[test]
    fn convolution_theorem() {
        let mu = TorusAtomicMeasure::new(
            2,
            vec![(vec![cis(0.3), cis(1.1)], c(0.5, 0.2)), (vec![cis(-2.0), cis(0.4)], c(-1.0, 0.0))],
        )
        .unwrap();
        let nu = TorusAtomicMeasure::new(2, vec![(vec![cis(0.9), cis(2.2)], c(0.0, 1.5))]).unwrap();
        let conv = mu.convolve(&nu).unwrap();
        for alpha in [[0, 0], [1, -2], [3, 1], [-4, 2]] {
            let lhs = conv.fourier_coeff(&alpha).unwrap();
            let rhs = mu.fourier_coeff(&alpha).unwrap() * nu.fourier_coeff(&alpha).unwrap();
            assert!((lhs - rhs).norm() < 1e-13);
            assert!(mu.fourier_coeff(&alpha).unwrap().norm() <= mu.total_variation() + 1e-14);
        }
    }

    #[test]
    fn smoothing_converges_weakly() {
        let grid = TorusGrid::new(1, 2048).unwrap();
        let mu = TorusAtomicMeasure::point_mass(vec![c(0.0, 1.0)]).unwrap();
        for r in [0.5, 0.9, 0.99] {
            let s = mu.poisson_smooth(r, grid).unwrap();
            let id = TorusFunction::<f64>::from_fn(grid, |z| z[0]).unwrap();
            let pairing = id.mul(&s).unwrap().mean();
            assert!((pairing - c(0.0, r)).norm() < 1e-8, "r={r}: {pairing}");
        }
    }
}
