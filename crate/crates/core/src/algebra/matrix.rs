use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{NormMethod, NormReport};
use crate::error::{Error, Result};
use crate::scalar::{is_finite_c, Real};

const POWER_ITERATIONS: usize = 10_000;

/// Square complex matrix, entries stored row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<T: Real> {
    d: usize,
    entries: Vec<Complex<T>>,
}

impl<T: Real> Matrix<T> {
    pub fn new(d: usize, entries: Vec<Complex<T>>) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidInput("matrix dimension must be positive".into()));
        }
        if entries.len() != d * d {
            return Err(Error::DimensionMismatch { expected: d * d, found: entries.len() });
        }
        if !entries.iter().all(|z| is_finite_c(*z)) {
            return Err(Error::InvalidInput("matrix entries must be finite".into()));
        }
        Ok(Matrix { d, entries })
    }

    /// Builds a matrix from real rows.
    pub fn from_real_rows(rows: &[Vec<T>]) -> Result<Self> {
        let d = rows.len();
        let mut entries = Vec::with_capacity(d * d);
        for row in rows {
            if row.len() != d {
                return Err(Error::DimensionMismatch { expected: d, found: row.len() });
            }
            entries.extend(row.iter().map(|&x| Complex::new(x, T::zero())));
        }
        Self::new(d, entries)
    }

    pub fn zeros(d: usize) -> Self {
        Matrix { d, entries: vec![Complex::new(T::zero(), T::zero()); d * d] }
    }

    pub fn identity(d: usize) -> Self {
        Self::diagonal(&vec![Complex::new(T::one(), T::zero()); d])
    }

    pub fn diagonal(diag: &[Complex<T>]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &z) in diag.iter().enumerate() {
            m.entries[i * m.d + i] = z;
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn entries(&self) -> &[Complex<T>] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> Complex<T> {
        self.entries[i * self.d + j]
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.d != other.d {
            return Err(Error::DimensionMismatch { expected: self.d, found: other.d });
        }
        Ok(())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let d = self.d;
        let mut out = Self::zeros(d);
        for i in 0..d {
            for k in 0..d {
                let a = self.entries[i * d + k];
                if a == Complex::new(T::zero(), T::zero()) {
                    continue;
                }
                for j in 0..d {
                    out.entries[i * d + j] += a * other.entries[k * d + j];
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(Matrix { d: self.d, entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect() })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(Matrix { d: self.d, entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a - b).collect() })
    }

    pub fn scale(&self, s: Complex<T>) -> Self {
        Matrix { d: self.d, entries: self.entries.iter().map(|z| z * s).collect() }
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let d = self.d;
        let mut out = Self::zeros(d);
        for i in 0..d {
            for j in 0..d {
                out.entries[j * d + i] = self.entries[i * d + j].conj();
            }
        }
        out
    }

    pub fn apply(&self, v: &[Complex<T>]) -> Vec<Complex<T>> {
        (0..self.d)
            .map(|i| self.entries[i * self.d..(i + 1) * self.d].iter().zip(v).map(|(a, x)| a * x).sum())
            .collect()
    }

    /// Maximum absolute row sum, the operator norm for the sup norm on `C^d`.
    pub fn max_row_sum(&self) -> T {
        self.entries.chunks(self.d).map(|row| row.iter().map(|z| z.norm()).sum::<T>()).fold(T::zero(), T::max)
    }

    pub fn frobenius(&self) -> T {
        let scale = self.entries.iter().fold(T::zero(), |m, z| m.max(z.re.abs()).max(z.im.abs()));
        if scale == T::zero() {
            return T::zero();
        }
        scale * self.entries.iter().map(|z| (z / scale).norm_sqr()).sum::<T>().sqrt()
    }

    /// Largest singular value by power iteration on `x* x`.
    ///
    /// Starts from the all-ones vector and restarts from a seeded random
    /// vector if the iterate collapses. Stops when the extrapolated
    /// remaining change (from the ratio of successive changes) drops below
    /// the relative tolerance `max(1e-12, 16 eps)`, or once successive
    /// values agree to roundoff. If that takes too long (a cluster of top
    /// singular values) the answer comes from the eigenvalues of `x* x`.
    pub fn op_norm(&self) -> Result<NormReport<T>> {
        let tol = T::lit(1e-12).max(T::epsilon() * T::lit(16.0));
        let fro = self.frobenius();
        if fro == T::zero() {
            return Ok(NormReport { value: T::zero(), method: NormMethod::PowerIteration { iterations: 0, tolerance: tol } });
        }
        let m = self.scale(Complex::new(fro.recip(), T::zero()));
        let gram = m.adjoint().mul(&m)?;
        let d = self.d;
        let mut rng: Option<ChaCha8Rng> = None;
        let mut v = vec![Complex::new(T::one(), T::zero()); d];
        normalize(&mut v);
        let mut prev = T::zero();
        let mut prev_change = T::infinity();
        for it in 1..=POWER_ITERATIONS {
            let mut w = gram.apply(&v);
            if vec_norm(&w) <= T::epsilon() * T::epsilon() {
                // the iterate sits in the null space of x; restart elsewhere
                let r = rng.get_or_insert_with(|| ChaCha8Rng::seed_from_u64(0x0b5e_55ed));
                v = (0..d)
                    .map(|_| Complex::new(T::lit(r.gen_range(-1.0..1.0)), T::lit(r.gen_range(-1.0..1.0))))
                    .collect();
                normalize(&mut v);
                continue;
            }
            normalize(&mut w);
            v = w;
            let value = vec_norm(&m.apply(&v));
            let change = (value - prev).abs();
            prev = value;
            let ratio = change / prev_change;
            prev_change = change;
            let remaining = if ratio < T::one() { change * ratio / (T::one() - ratio) } else { T::infinity() };
            // changes at roundoff level cannot shrink further
            let stalled = change <= T::lit(8.0) * T::epsilon() * value;
            if stalled || (it > 2 && remaining <= tol * value) {
                return Ok(NormReport { value: value * fro, method: NormMethod::PowerIteration { iterations: it, tolerance: tol } });
            }
        }
        let top = gram.eigenvalues()?.into_iter().fold(T::zero(), |m, z| m.max(z.re));
        Ok(NormReport { value: top.max(T::zero()).sqrt() * fro, method: NormMethod::GramEigenvalues })
    }

    /// Eigenvalues by Householder reduction to Hessenberg form followed by
    /// shifted complex QR sweeps (Wilkinson shift, with an exceptional
    /// shift every tenth stalled sweep).
    pub fn eigenvalues(&self) -> Result<Vec<Complex<T>>> {
        let n = self.d;
        let mut h = self.entries.clone();
        let at = |i: usize, j: usize| i * n + j;
        let zero = Complex::new(T::zero(), T::zero());

        for k in 0..n.saturating_sub(2) {
            let x: Vec<Complex<T>> = (k + 1..n).map(|i| h[at(i, k)]).collect();
            let xn = vec_norm(&x);
            if xn == T::zero() {
                continue;
            }
            let phase = if x[0].norm() > T::zero() { x[0] / x[0].norm() } else { Complex::new(T::one(), T::zero()) };
            let mut v = x;
            v[0] += phase * xn;
            normalize(&mut v);
            // H <- (I - 2 v v*) H (I - 2 v v*) on the trailing block
            for j in 0..n {
                let dot: Complex<T> = v.iter().enumerate().map(|(r, vr)| vr.conj() * h[at(k + 1 + r, j)]).sum();
                for (r, vr) in v.iter().enumerate() {
                    h[at(k + 1 + r, j)] -= vr * dot * T::lit(2.0);
                }
            }
            for i in 0..n {
                let dot: Complex<T> = v.iter().enumerate().map(|(r, vr)| h[at(i, k + 1 + r)] * vr).sum();
                for (r, vr) in v.iter().enumerate() {
                    h[at(i, k + 1 + r)] -= dot * vr.conj() * T::lit(2.0);
                }
            }
            for i in k + 2..n {
                h[at(i, k)] = zero;
            }
        }

        let eps = T::epsilon();
        let mut eig = vec![zero; n];
        let mut hi = n - 1;
        let mut stalled = 0usize;
        let mut total = 0usize;
        let cap = 100 * n.max(1);
        while hi > 0 {
            let mut l = hi;
            while l > 0 {
                let sub = h[at(l, l - 1)].norm();
                if sub <= eps * (h[at(l, l)].norm() + h[at(l - 1, l - 1)].norm()) || sub < T::min_positive_value() {
                    h[at(l, l - 1)] = zero;
                    break;
                }
                l -= 1;
            }
            if l == hi {
                eig[hi] = h[at(hi, hi)];
                hi -= 1;
                stalled = 0;
                continue;
            }
            stalled += 1;
            total += 1;
            if total > cap {
                return Err(Error::NonConvergence { what: "Hessenberg QR", iterations: cap });
            }
            let a = h[at(hi - 1, hi - 1)];
            let b = h[at(hi - 1, hi)];
            let c = h[at(hi, hi - 1)];
            let dd = h[at(hi, hi)];
            let mu = if stalled.is_multiple_of(10) {
                dd + Complex::new(h[at(hi, hi - 1)].norm() * T::lit(0.75), h[at(hi, hi - 1)].norm() * T::lit(0.4))
            } else {
                let half = (a - dd) * T::lit(0.5);
                let disc = (half * half + b * c).sqrt();
                let m1 = (a + dd) * T::lit(0.5) + disc;
                let m2 = (a + dd) * T::lit(0.5) - disc;
                if (m1 - dd).norm() <= (m2 - dd).norm() { m1 } else { m2 }
            };
            for k in l..=hi {
                h[at(k, k)] -= mu;
            }
            let mut rots = Vec::with_capacity(hi - l);
            for k in l..hi {
                let p = h[at(k, k)];
                let q = h[at(k + 1, k)];
                let r = (p.norm_sqr() + q.norm_sqr()).sqrt();
                let (cs, sn) = if r == T::zero() { (Complex::new(T::one(), T::zero()), zero) } else { (p / r, q / r) };
                for j in k..=hi {
                    let x = h[at(k, j)];
                    let y = h[at(k + 1, j)];
                    h[at(k, j)] = cs.conj() * x + sn.conj() * y;
                    h[at(k + 1, j)] = -sn * x + cs * y;
                }
                rots.push((cs, sn));
            }
            for (off, (cs, sn)) in rots.into_iter().enumerate() {
                let k = l + off;
                for i in l..=(k + 1).min(hi) {
                    let x = h[at(i, k)];
                    let y = h[at(i, k + 1)];
                    h[at(i, k)] = x * cs + y * sn;
                    h[at(i, k + 1)] = -x * sn.conj() + y * cs.conj();
                }
            }
            for k in l..=hi {
                h[at(k, k)] += mu;
            }
        }
        eig[0] = h[0];
        Ok(eig)
    }

    /// `max |lambda|` over the eigenvalues; supports `d <= 8`.
    pub fn spectral_radius_eig(&self) -> Result<T> {
        if self.d > 8 {
            return Err(Error::OutOfRange(format!("eigenvalue oracle supports d <= 8, got {}", self.d)));
        }
        Ok(self.eigenvalues()?.iter().fold(T::zero(), |m, z| m.max(z.norm())))
    }
}

fn vec_norm<T: Real>(v: &[Complex<T>]) -> T {
    v.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt()
}

fn normalize<T: Real>(v: &mut [Complex<T>]) {
    let n = vec_norm(v);
    for z in v.iter_mut() {
        *z /= n;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    fn random(d: usize, seed: u64) -> Matrix<f64> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Matrix::new(d, (0..d * d).map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect()).unwrap()
    }

    #[test]
    fn norms_of_simple_matrices() {
        assert!((Matrix::<f64>::identity(3).op_norm().unwrap().value - 1.0).abs() < 1e-14);
        let m = Matrix::diagonal(&[c(2.0, 0.0), c(0.0, -3.0)]);
        assert!((m.op_norm().unwrap().value - 3.0).abs() < 1e-12);
        assert_eq!(Matrix::<f64>::zeros(2).op_norm().unwrap().value, 0.0);
        // all-ones start vector is in the kernel of this one
        let m = Matrix::from_real_rows(&[vec![1.0f64, -1.0], vec![1.0, -1.0]]).unwrap();
        assert!((m.op_norm().unwrap().value - 2.0).abs() < 1e-12);
    }

    #[test]
    fn op_norm_matches_two_by_two_formula() {
        // sigma_max^2 of a 2x2 is the top root of t^2 - |A|_F^2 t + |det|^2
        for seed in 0..50 {
            let m = random(2, seed);
            let f2 = m.frobenius().powi(2);
            let det = (m.get(0, 0) * m.get(1, 1) - m.get(0, 1) * m.get(1, 0)).norm();
            let top = (0.5 * (f2 + (f2 * f2 - 4.0 * det * det).max(0.0).sqrt())).sqrt();
            let got = m.op_norm().unwrap().value;
            assert!((got - top).abs() <= 1e-9 * top, "seed {seed}: {got} vs {top}");
        }
    }

    #[test]
    fn eigenvalues_of_known_matrices() {
        let m = Matrix::diagonal(&[c(2.0, 0.0), c(0.0, -3.0)]);
        assert!((m.spectral_radius_eig().unwrap() - 3.0).abs() < 1e-14);
        let t = 0.7f64;
        let rot = Matrix::from_real_rows(&[vec![t.cos(), -t.sin()], vec![t.sin(), t.cos()]]).unwrap();
        let eig = rot.eigenvalues().unwrap();
        for z in &eig {
            assert!((z.norm() - 1.0).abs() < 1e-13);
        }
        assert!((eig[0].im.abs() - t.sin()).abs() < 1e-13);
        let companion = Matrix::from_real_rows(&[vec![0.0, 0.0, 6.0], vec![1.0, 0.0, -11.0], vec![0.0, 1.0, 6.0]]).unwrap();
        let mut roots: Vec<f64> = companion.eigenvalues().unwrap().iter().map(|z| z.re).collect();
        roots.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for (r, e) in roots.iter().zip([1.0, 2.0, 3.0]) {
            assert!((r - e).abs() < 1e-10, "{roots:?}");
        }
    }

    #[test]
    fn eigenvalues_reproduce_trace_and_determinant() {
        for seed in 0..40 {
            let d = 2 + (seed as usize % 7);
            let m = random(d, 100 + seed);
            let eig = m.eigenvalues().unwrap();
            let trace: Complex<f64> = (0..d).map(|i| m.get(i, i)).sum();
            let sum: Complex<f64> = eig.iter().sum();
            assert!((trace - sum).norm() < 1e-11 * (1.0 + trace.norm()), "seed {seed}");
            // each eigenvalue makes m - lambda singular
            let scale = (1.0 + m.frobenius()).powi(d as i32);
            for &lam in &eig {
                let shifted = m.sub(&Matrix::identity(d).scale(lam)).unwrap();
                let det = det(&shifted);
                assert!(det < 1e-11 * scale, "seed {seed}: {det}");
            }
        }
    }

    /// `|det m|` by partial pivoting.
    fn det(m: &Matrix<f64>) -> f64 {
        let d = m.dim();
        let mut a = m.entries().to_vec();
        let mut det = c(1.0, 0.0);
        for k in 0..d {
            let p = (k..d).max_by(|&i, &j| a[i * d + k].norm().partial_cmp(&a[j * d + k].norm()).unwrap()).unwrap();
            if p != k {
                for j in 0..d {
                    a.swap(k * d + j, p * d + j);
                }
                det = -det;
            }
            let piv = a[k * d + k];
            det *= piv;
            if piv.norm() == 0.0 {
                return 0.0;
            }
            for i in k + 1..d {
                let f = a[i * d + k] / piv;
                for j in k..d {
                    let v = a[k * d + j];
                    a[i * d + j] -= f * v;
                }
            }
        }
        det.norm()
    }
}
