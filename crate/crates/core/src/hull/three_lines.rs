use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Grid on the strip `0 <= Re tau <= 1`, `|Im tau| <= y_max`: `nx`
/// intervals in `x` and `ny` in `y`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StripGrid<T: Real> {
    pub nx: usize,
    pub ny: usize,
    pub y_max: T,
}

impl<T: Real> StripGrid<T> {
    fn check(&self) -> Result<()> {
        if self.nx < 2 || self.ny < 1 || !(self.y_max >= T::zero()) {
            return Err(Error::InvalidInput("strip grid needs nx >= 2, ny >= 1, y_max >= 0".into()));
        }
        Ok(())
    }

    fn ys(&self) -> impl Iterator<Item = T> + '_ {
        (0..=self.ny).map(|l| -self.y_max + T::lit(2.0) * self.y_max * T::from_usize_lossy(l) / T::from_usize_lossy(self.ny))
    }
}

/// `(sup |f(iy)|, sup |f(1 + iy)|)` over the grid's `y` values.
pub fn boundary_sups<T: Real>(f: impl Fn(Complex<T>) -> Complex<T>, grid: &StripGrid<T>) -> Result<(T, T)> {
    grid.check()?;
    let side = |x: T| grid.ys().map(|y| f(Complex::new(x, y)).norm()).fold(T::zero(), T::max);
    Ok((side(T::zero()), side(T::one())))
}

/// `max (|f(x + iy)| - A_0^{1-x} A_1^x)` over interior grid points.
pub fn three_lines_check<T: Real>(a0: T, a1: T, f: impl Fn(Complex<T>) -> Complex<T>, grid: &StripGrid<T>) -> Result<T> {
    grid.check()?;
    if !(a0 >= T::zero()) || !(a1 >= T::zero()) {
        return Err(Error::InvalidInput("boundary bounds must be nonnegative".into()));
    }
    let mut worst = T::neg_infinity();
    for k in 1..grid.nx {
        let x = T::from_usize_lossy(k) / T::from_usize_lossy(grid.nx);
        let bound = a0.powf(T::one() - x) * a1.powf(x);
        for y in grid.ys() {
            worst = worst.max(f(Complex::new(x, y)).norm() - bound);
        }
    }
    Ok(worst)
}

/// `g_j(tau) = u_j |z_j|^tau |w_j|^{1 - tau}`, holomorphic in `tau`, with
/// `|g_j(x + iy)| = |z_j|^x |w_j|^{1-x}`.
#[derive(Clone, Debug, PartialEq)]
pub struct MultiplicativePath<T: Real> {
    log_z: Vec<T>,
    log_w: Vec<T>,
    phases: Vec<Complex<T>>,
}

impl<T: Real> MultiplicativePath<T> {
    /// Needs nonzero coordinates; `phases` defaults to all ones.
    pub fn new(z: &[Complex<T>], w: &[Complex<T>], phases: Option<Vec<Complex<T>>>) -> Result<Self> {
        if z.len() != w.len() {
            return Err(Error::DimensionMismatch { expected: z.len(), found: w.len() });
        }
        if z.iter().chain(w).any(|v| v.norm() == T::zero()) {
            return Err(Error::InvalidInput("multiplicative paths need nonzero coordinates".into()));
        }
        let phases = phases.unwrap_or_else(|| vec![Complex::new(T::one(), T::zero()); z.len()]);
        if phases.len() != z.len() || phases.iter().any(|u| u.norm() > T::one() + T::lit(1e-12)) {
            return Err(Error::InvalidInput("phases must satisfy |u_j| <= 1".into()));
        }
        Ok(MultiplicativePath {
            log_z: z.iter().map(|v| v.norm().ln()).collect(),
            log_w: w.iter().map(|v| v.norm().ln()).collect(),
            phases,
        })
    }

    pub fn eval(&self, tau: Complex<T>) -> Vec<Complex<T>> {
        let one = Complex::new(T::one(), T::zero());
        self.log_z
            .iter()
            .zip(&self.log_w)
            .zip(&self.phases)
            .map(|((&lz, &lw), u)| u * (tau * lz + (one - tau) * lw).exp())
            .collect()
    }

    /// `|z_j|^a |w_j|^{1-a}` for real `a`.
    pub fn moduli(&self, a: T) -> Vec<T> {
        self.log_z.iter().zip(&self.log_w).map(|(&lz, &lw)| (a * lz + (T::one() - a) * lw).exp()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid() -> StripGrid<f64> {
        StripGrid { nx: 20, ny: 80, y_max: 20.0 }
    }

    #[test]
    fn constants_and_exponentials_are_extremal() {
        let c = Complex::new(0.3, -0.4);
        assert!(three_lines_check(0.5, 0.5, |_| c, &grid()).unwrap().abs() < 1e-15);
        let e = std::f64::consts::E;
        let v = three_lines_check(1.0 / e, 1.0, |t: Complex<f64>| (t - 1.0).exp(), &grid()).unwrap();
        assert!(v.abs() < 1e-14);
    }

    #[test]
    fn monomial_along_a_multiplicative_path() {
        let z = [Complex::new(0.3, 0.2), Complex::new(-0.9, 0.1)];
        let w = [Complex::new(0.0, 0.7), Complex::new(0.2, 0.0)];
        let path = MultiplicativePath::new(&z, &w, None).unwrap();
        let f = |t: Complex<f64>| {
            let g = path.eval(t);
            g[0] * g[1]
        };
        let (a0, a1) = boundary_sups(f, &grid()).unwrap();
        assert!((a0 - (w[0] * w[1]).norm()).abs() < 1e-12);
        assert!((a1 - (z[0] * z[1]).norm()).abs() < 1e-12);
        assert!(three_lines_check(a0, a1, f, &grid()).unwrap() <= 1e-9);
    }

    #[test]
    fn violations_are_detected() {
        // |f| = 1 inside but the bounds claim 0.5
        let v = three_lines_check(0.5, 0.5, |_| Complex::new(1.0, 0.0), &grid()).unwrap();
        assert!((v - 0.5).abs() < 1e-15);
    }
}
