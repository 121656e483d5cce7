use num_complex::Complex;
use rayon::prelude::*;

use super::{flatten, ft_unchecked, unflatten, LineFunction, TailCorrected};
use crate::error::{Error, Result};
use crate::multiindex::check_dim;
use crate::scalar::{cis, pairwise_sum, pairwise_sum_real, Real};

fn check_positive<T: Real>(a: &[T]) -> Result<()> {
    if a.is_empty() {
        return Err(Error::InvalidInput("need at least one kernel parameter".into()));
    }
    for &aj in a {
        if !(aj > T::zero()) || !aj.is_finite() {
            return Err(Error::NonPositiveParameter(format!("kernel parameter {aj}")));
        }
    }
    Ok(())
}

/// `P_{n,a}(x) = pi^{-n} prod_j a_j / (a_j^2 + x_j^2)`.
pub fn poisson_rn<T: Real>(a: &[T], x: &[T]) -> Result<T> {
    check_positive(a)?;
    check_dim(a.len(), x.len())?;
    Ok(a.iter().zip(x).fold(T::one(), |acc, (&aj, &xj)| acc * aj / (T::PI() * (aj * aj + xj * xj))))
}

/// `int P_{n,a}`: trapezoid over `[-L, L]^n` with `M` intervals per axis,
/// completed by the exact per-axis tail `1 - (2/pi) arctan(L/a_j)`.
pub fn poisson_mass<T: Real>(a: &[T], half_width: T, intervals: usize) -> Result<TailCorrected<T>> {
    check_positive(a)?;
    if !(half_width > T::zero()) || intervals < 2 {
        return Err(Error::InvalidInput("need L > 0 and at least 2 intervals".into()));
    }
    let m = T::from_usize_lossy(intervals);
    let h = T::lit(2.0) * half_width / m;
    let mut inside = T::one();
    let mut total = T::one();
    for &aj in a {
        let terms: Vec<T> = (0..=intervals)
            .map(|k| {
                let x = half_width * T::from_i64_lossy(2 * k as i64 - intervals as i64) / m;
                let w = if k == 0 || k == intervals { T::lit(0.5) } else { T::one() };
                w * aj / (T::PI() * (aj * aj + x * x))
            })
            .collect();
        let trap = pairwise_sum_real(&terms) * h;
        // 1 - (2/pi) arctan(L/a) = (2/pi) arctan(a/L)
        let tail = T::lit(2.0) / T::PI() * (aj / half_width).atan();
        inside *= trap;
        total *= trap + tail;
    }
    Ok(TailCorrected { quadrature: inside, tail: total - inside, total })
}

fn atan_diff<T: Real>(t1: T, t2: T, a: T) -> T {
    // arctan(t1/a) - arctan(t2/a)
    let den = a * a + t1 * t2;
    if den > T::zero() {
        (a * (t1 - t2) / den).atan()
    } else {
        (t1 / a).atan() - (t2 / a).atan()
    }
}

fn log_diff<T: Real>(t1: T, t2: T, a: T) -> T {
    // ln(a^2 + t1^2) - ln(a^2 + t2^2)
    ((t1 - t2) * (t1 + t2) / (a * a + t2 * t2)).ln_1p()
}

/// `int P_a(s - y) phi(y) dy` for the unit hat `phi` of half-width `h` centred at 0.
fn hat_weight<T: Real>(s: T, h: T, a: T) -> T {
    let pi = T::PI();
    let df = |t1: T, t2: T| atan_diff(t1, t2, a) / pi;
    let dg = |t1: T, t2: T| a / (T::lit(2.0) * pi) * log_diff(t1, t2, a);
    // with t = s - y: the hat is (t - (s - h))/h on [s-h, s] and ((s + h) - t)/h on [s, s+h]
    let left = dg(s, s - h) - (s - h) * df(s, s - h);
    let right = (s + h) * df(s + h, s) - dg(s + h, s);
    ((left + right) / h).max(T::zero())
}

/// `P_{n,a} * f` at the grid nodes, integrating the kernel exactly against
/// the piecewise multilinear interpolant of the samples.
///
/// Every node carries a full hat, including the box ends, so samples are
/// not assumed to vanish there. The kernel factorizes, so the convolution
/// runs one axis at a time.
pub fn approx_identity<T: Real>(f: &LineFunction<T>, a: &[T]) -> Result<LineFunction<T>> {
    check_positive(a)?;
    check_dim(f.dim(), a.len())?;
    let m = f.intervals();
    let side = m + 1;
    let h = f.spacing();
    let mut values = f.values().to_vec();
    for (axis, &aj) in a.iter().enumerate() {
        // table[d + M] = weight of node offset d = m - k
        let table: Vec<T> = (0..=2 * m)
            .map(|d| hat_weight(h * T::from_i64_lossy(d as i64 - m as i64), h, aj))
            .collect();
        let current = values.clone();
        values = (0..current.len())
            .into_par_iter()
            .map(|flat| {
                let idx = unflatten(flat, side, f.dim());
                let mut k = idx.clone();
                let terms: Vec<Complex<T>> = (0..side)
                    .map(|kj| {
                        k[axis] = kj;
                        current[flatten(&k, side)] * table[idx[axis] + m - kj]
                    })
                    .collect();
                pairwise_sum(&terms)
            })
            .collect();
    }
    LineFunction::new(f.dim(), f.half_width(), m, f.decay(), values)
}

/// `sup_k |(P_{n,a} * f)(x_k) - f(x_k)|` over the grid nodes.
pub fn approx_identity_error<T: Real>(f: &LineFunction<T>, a: &[T]) -> Result<T> {
    let g = approx_identity(f, a)?;
    Ok(g.values().iter().zip(f.values()).fold(T::zero(), |m, (x, y)| m.max((x - y).norm())))
}

/// Both sides of the inversion identity
/// `int f^(xi) e^{i xi . w} e^{-sum a_j |xi_j|} d xi = (2 pi)^n (P_{n,a} * f)(w)`.
#[derive(Clone, Debug, PartialEq)]
pub struct InversionCheck<T: Real> {
    /// Trapezoid in `xi` over the box `|xi_j| <= xi_box[j]` with steps `xi_step`.
    pub lhs: Complex<T>,
    /// `(2 pi)^n` times the trapezoid sum of `P_{n,a}(w - x) f(x)`.
    pub rhs: Complex<T>,
    pub xi_box: Vec<T>,
    pub xi_step: Vec<T>,
    /// Bound on the omitted `xi` tail.
    pub tail_bound: T,
    /// Bound on the periodization error of the `xi` trapezoid.
    pub alias_bound: T,
    /// Declared tolerance `1e-5 (1 + ||f||_1)`.
    pub tolerance: T,
}

impl<T: Real> InversionCheck<T> {
    pub fn discrepancy(&self) -> T {
        (self.lhs - self.rhs).norm()
    }

    pub fn agrees(&self) -> bool {
        self.discrepancy() <= self.tolerance
    }
}

/// Evaluates both sides of the inversion identity at `w`.
///
/// The `xi` box is sized so that the exponential tail stays below a quarter
/// of the tolerance; the step is chosen so that the images of the Poisson
/// kernel produced by the discrete `xi` sum (Poisson summation) stay below
/// another quarter. Fails if the box violates the sampling rule of `f`.
pub fn inversion_check<T: Real>(f: &LineFunction<T>, a: &[T], w: &[T]) -> Result<InversionCheck<T>> {
    check_positive(a)?;
    let n = f.dim();
    check_dim(n, a.len())?;
    check_dim(n, w.len())?;
    let l1 = f.l1_norm();
    let tolerance = T::lit(1e-5) * (T::one() + l1);
    let two = T::lit(2.0);
    let mass: T = a.iter().fold(T::one(), |acc, &aj| acc * two / aj);
    // tail: l1 * (prod 2/a_j - prod (2/a_j)(1 - eps)) <= l1 * mass * n * eps
    let eps = (tolerance / (T::lit(4.0) * T::from_usize_lossy(n) * (l1 * mass).max(T::min_positive_value())))
        .min(T::lit(0.5));
    let xi_box: Vec<T> = a.iter().map(|&aj| -eps.ln() / aj).collect();
    f.check_adequate(&xi_box)?;
    let tail_bound = l1 * (mass - a.iter().fold(T::one(), |acc, &aj| acc * two / aj * (T::one() - eps)));

    // images at distance D_j = 2 pi / step - (|w_j| + L) contribute at most
    // a_j pi / (3 D_j^2) per axis next to the peak 1 / (pi a_j)
    let alias = |d: &[T]| -> T {
        let peak: T = a.iter().fold(T::one(), |acc, &aj| acc / (T::PI() * aj));
        let with: T = a.iter().zip(d).fold(T::one(), |acc, (&aj, &dj)| {
            acc * (T::one() / (T::PI() * aj) + aj * T::PI() / (T::lit(3.0) * dj * dj))
        });
        T::two_pi().powi(n as i32) * l1 * (with - peak)
    };
    let mut dist: Vec<T> = w.iter().map(|&wj| wj.abs() + f.half_width() + T::one()).collect();
    let reach: Vec<T> = w.iter().map(|&wj| wj.abs() + f.half_width()).collect();
    let mut alias_bound = alias(&dist.iter().zip(&reach).map(|(d, r)| *d - *r).collect::<Vec<_>>());
    for _ in 0..60 {
        if alias_bound <= tolerance / T::lit(4.0) {
            break;
        }
        dist.iter_mut().for_each(|d| *d *= T::lit(1.5));
        alias_bound = alias(&dist.iter().zip(&reach).map(|(d, r)| *d - *r).collect::<Vec<_>>());
    }
    // step = 2 pi / dist, rounded so that the box holds a whole number of steps
    let counts: Vec<usize> = xi_box
        .iter()
        .zip(&dist)
        .map(|(&xb, &d)| {
            let c = (xb * d / T::two_pi()).ceil();
            c.to_usize().unwrap_or(usize::MAX).max(1)
        })
        .collect();
    let total = counts.iter().try_fold(1usize, |acc, &c| acc.checked_mul(2 * c + 1));
    if total.is_none_or(|t| t > 50_000_000) {
        return Err(Error::InvalidInput("inversion quadrature grid too large".into()));
    }
    let xi_step: Vec<T> = xi_box.iter().zip(&counts).map(|(&xb, &c)| xb / T::from_usize_lossy(c)).collect();
    let sides: Vec<usize> = counts.iter().map(|&c| 2 * c + 1).collect();
    let total = total.expect("checked above");

    let terms: Vec<Complex<T>> = (0..total)
        .into_par_iter()
        .map(|flat| {
            let mut rest = flat;
            let mut idx = vec![0usize; n];
            for j in (0..n).rev() {
                idx[j] = rest % sides[j];
                rest /= sides[j];
            }
            let mut weight = T::one();
            let mut damp = T::zero();
            let mut phase = T::zero();
            let mut xi = vec![T::zero(); n];
            for j in 0..n {
                let k = idx[j] as i64 - counts[j] as i64;
                xi[j] = xi_step[j] * T::from_i64_lossy(k);
                if idx[j] == 0 || idx[j] == sides[j] - 1 {
                    weight *= T::lit(0.5);
                }
                damp += a[j] * xi[j].abs();
                phase += xi[j] * w[j];
            }
            ft_unchecked(f, &xi) * cis(phase) * (weight * (-damp).exp())
        })
        .collect();
    let cell: T = xi_step.iter().fold(T::one(), |acc, &s| acc * s);
    let lhs = pairwise_sum(&terms) * cell;

    let rhs_terms: Vec<Complex<T>> = (0..f.values().len())
        .map(|flat| {
            let x = f.point(flat);
            let d: Vec<T> = w.iter().zip(&x).map(|(wj, xj)| *wj - *xj).collect();
            f.values()[flat] * f.weight(flat) * poisson_rn(a, &d).expect("validated")
        })
        .collect();
    let rhs = pairwise_sum(&rhs_terms) * f.cell() * T::two_pi().powi(n as i32);
    Ok(InversionCheck { lhs, rhs, xi_box, xi_step, tail_bound, alias_bound, tolerance })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::line::{ClosedFormFn, Decay};
    use std::f64::consts::PI;

    fn tent(l: f64, m: usize) -> LineFunction<f64> {
        LineFunction::sample(1, l, m, Decay::Compact, |x| Complex::new((1.0 - x[0].abs()).max(0.0), 0.0)).unwrap()
    }

    #[test]
    fn kernel_examples() {
        assert!((poisson_rn(&[1.0], &[0.0]).unwrap() - 1.0 / PI).abs() < 1e-16);
        assert!(poisson_rn(&[0.0], &[0.0]).is_err());
        let m = poisson_mass::<f64>(&[1.0], 1e4, 80_000).unwrap();
        assert!((m.total - 1.0).abs() < 1e-8, "{}", m.total);
        let m2 = poisson_mass::<f64>(&[0.5, 2.0], 100.0, 4000).unwrap();
        assert!((m2.total - 1.0).abs() < 1e-8);
    }

    #[test]
    fn hat_weights_partition_unity() {
        let h = 0.01;
        for a in [0.001, 0.05, 1.0] {
            let total: f64 = (-40_000i64..=40_000).map(|d| hat_weight(d as f64 * h, h, a)).sum();
            let tail = 2.0 / PI * (a / (40_000.5 * h)).atan();
            assert!((total + tail - 1.0).abs() < 1e-6, "a={a}: {total}");
        }
    }

    #[test]
    fn approx_identity_of_tent_at_origin() {
        // (P_a * tent)(0) = (2/pi) arctan(1/a) - (a/pi) ln(1 + 1/a^2)
        let f = tent(2.0, 512);
        for a in [0.5, 0.05, 0.001] {
            let g = approx_identity(&f, &[a]).unwrap();
            let expect = 2.0 / PI * (1.0 / a).atan() - a / PI * (1.0 + 1.0 / (a * a)).ln();
            assert!((g.values()[256].re - expect).abs() < 1e-12, "a={a}");
        }
    }

    #[test]
    fn approx_identity_error_decreases() {
        let f = tent(2.0, 1024);
        let e: Vec<f64> = [0.1, 0.01, 0.001].iter().map(|&a| approx_identity_error(&f, &[a]).unwrap()).collect();
        assert!(e[0] > e[1] && e[1] > e[2] && e[2] < 0.02, "{e:?}");
    }

    #[test]
    fn inversion_identity() {
        let f = tent(2.0, 2048);
        let chk = inversion_check(&f, &[0.05], &[0.0]).unwrap();
        assert!(chk.agrees(), "{} vs {}: {}", chk.lhs, chk.rhs, chk.discrepancy());
        let expect = 2.0 / PI * 20f64.atan() - 0.05 / PI * (1.0 + 400.0f64).ln();
        assert!((chk.lhs.re / (2.0 * PI) - expect).abs() < 1e-4);

        let ind = LineFunction::from_closed_form(&ClosedFormFn::Indicator { a: -1.0, b: 1.0 }, 4.0, 4096).unwrap();
        let far: Vec<f64> = [0.5, 0.1]
            .iter()
            .map(|&a| {
                let c = inversion_check(&ind, &[a], &[3.0]).unwrap();
                assert!(c.agrees());
                c.lhs.norm() / (2.0 * PI)
            })
            .collect();
        assert!(far[1] < far[0] && far[1] < 0.02, "{far:?}");
    }

    #[test]
    fn inversion_rejects_coarse_grids() {
        let f = tent(2.0, 64);
        assert!(matches!(inversion_check(&f, &[0.05], &[0.0]), Err(Error::SamplingInadequate { .. })));
    }
}
