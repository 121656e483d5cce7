use num_complex::Complex;
use serde::{Deserialize, Serialize};

use super::Decay;
use crate::error::{Error, Result};
use crate::multiindex::check_dim;
use crate::scalar::Real;

/// Functions on `R^n` with closed-form transforms.
///
/// Jump points are assigned the midpoint value `1/2`, which is what the
/// trapezoid rule needs for second-order accuracy.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum ClosedFormFn<T> {
    /// `e^{-a x}` for `x > 0`, zero for `x < 0`.
    QPlus { a: T },
    /// `e^{a x}` for `x < 0`, zero for `x > 0`.
    QMinus { a: T },
    /// `e^{-a |x|}`.
    PA { a: T },
    /// Indicator of `[a, b]`.
    Indicator { a: T, b: T },
    /// `prod_j g_j(x_j)` with one-dimensional factors.
    Product { factors: Vec<ClosedFormFn<T>> },
}

impl<T: Real> ClosedFormFn<T> {
    /// Checks the parameter invariants.
    pub fn validate(&self) -> Result<()> {
        match self {
            ClosedFormFn::QPlus { a } | ClosedFormFn::QMinus { a } | ClosedFormFn::PA { a } => {
                if !(*a > T::zero()) || !a.is_finite() {
                    return Err(Error::NonPositiveParameter(format!("decay parameter a = {a}")));
                }
            }
            ClosedFormFn::Indicator { a, b } => {
                if !(a < b) || !a.is_finite() || !b.is_finite() {
                    return Err(Error::InvalidInput(format!("indicator needs a < b, got [{a}, {b}]")));
                }
            }
            ClosedFormFn::Product { factors } => {
                if factors.is_empty() {
                    return Err(Error::InvalidInput("product needs at least one factor".into()));
                }
                for g in factors {
                    if matches!(g, ClosedFormFn::Product { .. }) {
                        return Err(Error::InvalidInput("product factors must be one-dimensional".into()));
                    }
                    g.validate()?;
                }
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        match self {
            ClosedFormFn::Product { factors } => factors.len(),
            _ => 1,
        }
    }

    fn factors(&self) -> Vec<&ClosedFormFn<T>> {
        match self {
            ClosedFormFn::Product { factors } => factors.iter().collect(),
            g => vec![g],
        }
    }

    pub fn decay(&self) -> Decay<T> {
        let rates: Vec<T> = self
            .factors()
            .into_iter()
            .filter_map(|g| match g {
                ClosedFormFn::QPlus { a } | ClosedFormFn::QMinus { a } | ClosedFormFn::PA { a } => Some(*a),
                _ => None,
            })
            .collect();
        if rates.is_empty() {
            Decay::Compact
        } else {
            Decay::Exponential { rate: rates.into_iter().fold(T::infinity(), T::min) }
        }
    }

    /// Pointwise value; panics if `x` has the wrong length.
    pub fn eval(&self, x: &[T]) -> T {
        let fs = self.factors();
        assert_eq!(fs.len(), x.len(), "point dimension");
        fs.iter().zip(x).map(|(g, &xj)| g.eval_1d(xj)).fold(T::one(), |a, b| a * b)
    }

    fn eval_1d(&self, x: T) -> T {
        let half = T::lit(0.5);
        match *self {
            ClosedFormFn::QPlus { a } => {
                if x > T::zero() {
                    (-a * x).exp()
                } else if x == T::zero() {
                    half
                } else {
                    T::zero()
                }
            }
            ClosedFormFn::QMinus { a } => {
                if x < T::zero() {
                    (a * x).exp()
                } else if x == T::zero() {
                    half
                } else {
                    T::zero()
                }
            }
            ClosedFormFn::PA { a } => (-a * x.abs()).exp(),
            ClosedFormFn::Indicator { a, b } => {
                if x > a && x < b {
                    T::one()
                } else if x == a || x == b {
                    half
                } else {
                    T::zero()
                }
            }
            ClosedFormFn::Product { .. } => unreachable!("factors are one-dimensional"),
        }
    }

    /// `int |g|`.
    pub fn l1_norm(&self) -> T {
        self.factors()
            .into_iter()
            .map(|g| match *g {
                ClosedFormFn::QPlus { a } | ClosedFormFn::QMinus { a } => a.recip(),
                ClosedFormFn::PA { a } => T::lit(2.0) / a,
                ClosedFormFn::Indicator { a, b } => b - a,
                ClosedFormFn::Product { .. } => unreachable!(),
            })
            .fold(T::one(), |a, b| a * b)
    }

    /// `int |g|` outside `[-L, L]^n`.
    pub fn tail_mass(&self, half_width: T) -> T {
        let mut total = T::one();
        let mut inside = T::one();
        for g in self.factors() {
            let (t, i) = match *g {
                ClosedFormFn::QPlus { a } | ClosedFormFn::QMinus { a } => {
                    (a.recip(), (T::one() - (-a * half_width).exp()) / a)
                }
                ClosedFormFn::PA { a } => (T::lit(2.0) / a, T::lit(2.0) * (T::one() - (-a * half_width).exp()) / a),
                ClosedFormFn::Indicator { a, b } => (b - a, (b.min(half_width) - a.max(-half_width)).max(T::zero())),
                ClosedFormFn::Product { .. } => unreachable!(),
            };
            total *= t;
            inside *= i;
        }
        (total - inside).max(T::zero())
    }

    /// Upper envelope of `|g^(xi)|` for real `|xi| >= r`, one-dimensional kinds only.
    pub(crate) fn envelope_1d(&self, r: T) -> T {
        let r = r.abs();
        match *self {
            ClosedFormFn::QPlus { a } | ClosedFormFn::QMinus { a } => (a * a + r * r).sqrt().recip(),
            ClosedFormFn::PA { a } => T::lit(2.0) * a / (a * a + r * r),
            ClosedFormFn::Indicator { a, b } => {
                if r == T::zero() {
                    b - a
                } else {
                    (T::lit(2.0) / r).min(b - a)
                }
            }
            ClosedFormFn::Product { .. } => T::infinity(),
        }
    }
}

/// A point `zeta = xi + i eta` of `C^n` with signature `epsilon`, lying in
/// the closed region `eps_j eta_j >= 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct HalfPlanePoint<T: Real> {
    zeta: Vec<Complex<T>>,
    signature: Vec<i8>,
}

impl<T: Real> HalfPlanePoint<T> {
    pub fn new(zeta: Vec<Complex<T>>, signature: Vec<i8>) -> Result<Self> {
        check_dim(zeta.len(), signature.len())?;
        if signature.iter().any(|&e| e != 1 && e != -1) {
            return Err(Error::InvalidInput("signature entries must be +1 or -1".into()));
        }
        for (z, &e) in zeta.iter().zip(&signature) {
            if T::from_i64_lossy(e as i64) * z.im < T::zero() {
                return Err(Error::OutsideAdmissibleRegion(format!(
                    "Im zeta = {} has the wrong sign for signature {e}",
                    z.im
                )));
            }
        }
        Ok(HalfPlanePoint { zeta, signature })
    }

    /// A real frequency, with signature `+1` on every axis.
    pub fn real(xi: &[T]) -> Self {
        HalfPlanePoint { zeta: xi.iter().map(|&x| Complex::new(x, T::zero())).collect(), signature: vec![1; xi.len()] }
    }

    /// Closed lower half-plane in each variable, signature `-1`.
    pub fn lower(zeta: Vec<Complex<T>>) -> Result<Self> {
        let n = zeta.len();
        Self::new(zeta, vec![-1; n])
    }

    pub fn zeta(&self) -> &[Complex<T>] {
        &self.zeta
    }

    pub fn signature(&self) -> &[i8] {
        &self.signature
    }

    pub fn dim(&self) -> usize {
        self.zeta.len()
    }

    pub fn is_real(&self) -> bool {
        self.zeta.iter().all(|z| z.im == T::zero())
    }
}

/// Closed-form transform `g^(zeta) = int g(x) e^{-i zeta . x} dx`, extended
/// holomorphically where the support of `g` allows it.
pub fn ft_closed_form<T: Real>(g: &ClosedFormFn<T>, zeta: &HalfPlanePoint<T>) -> Result<Complex<T>> {
    g.validate()?;
    check_dim(g.dim(), zeta.dim())?;
    let mut acc = Complex::new(T::one(), T::zero());
    for (f, &z) in g.factors().into_iter().zip(zeta.zeta()) {
        acc *= ft_1d(f, z)?;
    }
    Ok(acc)
}

fn ft_1d<T: Real>(g: &ClosedFormFn<T>, z: Complex<T>) -> Result<Complex<T>> {
    let i = Complex::new(T::zero(), T::one());
    let one = Complex::new(T::one(), T::zero());
    let outside = |what: &str| Err(Error::OutsideAdmissibleRegion(format!("{what}, got Im zeta = {}", z.im)));
    match *g {
        ClosedFormFn::QPlus { a } => {
            if z.im > T::zero() {
                return outside("q_+ extends to Im zeta <= 0");
            }
            Ok(one / (i * z + a))
        }
        ClosedFormFn::QMinus { a } => {
            if z.im < T::zero() {
                return outside("q_- extends to Im zeta >= 0");
            }
            Ok(one / (-(i * z) + a))
        }
        ClosedFormFn::PA { a } => {
            if z.im != T::zero() {
                return outside("p_a needs a real argument");
            }
            Ok(Complex::new(T::lit(2.0) * a / (a * a + z.re * z.re), T::zero()))
        }
        ClosedFormFn::Indicator { a, b } => {
            let ok = z.im == T::zero() || (a >= T::zero() && z.im < T::zero()) || (b <= T::zero() && z.im > T::zero());
            if !ok {
                return outside("indicator of [a, b] extends off the real axis only for a >= 0 (below) or b <= 0 (above)");
            }
            let scale = a.abs().max(b.abs());
            if z.norm() * scale < T::lit(1e-4) {
                // Taylor series avoids the 0/0 cancellation near zeta = 0
                let (a2, b2) = (a * a, b * b);
                let (a3, b3) = (a2 * a, b2 * b);
                return Ok(Complex::new(b - a, T::zero()) - i * z * ((b2 - a2) / T::lit(2.0))
                    - z * z * ((b3 - a3) / T::lit(6.0))
                    + i * z * z * z * ((b2 * b2 - a2 * a2) / T::lit(24.0)));
            }
            Ok(i / z * ((-(i * z) * b).exp() - (-(i * z) * a).exp()))
        }
        ClosedFormFn::Product { .. } => Err(Error::InvalidInput("nested product".into())),
    }
}

/// Centered-difference Cauchy-Riemann residual
/// `|i (F(zeta + h e_j) - F(zeta - h e_j)) - (F(zeta + i h e_j) - F(zeta - i h e_j))| / (2h)`
/// of the closed-form transform along axis `j`.
pub fn cr_residual<T: Real>(g: &ClosedFormFn<T>, zeta: &[Complex<T>], axis: usize, h: T) -> Result<T> {
    check_dim(g.dim(), zeta.len())?;
    if axis >= zeta.len() {
        return Err(Error::OutOfRange(format!("axis {axis}")));
    }
    let eval = |dz: Complex<T>| -> Result<Complex<T>> {
        let mut z = zeta.to_vec();
        z[axis] += dz;
        let signature = z.iter().map(|w| if w.im > T::zero() { 1 } else { -1 }).collect();
        ft_closed_form(g, &HalfPlanePoint::new(z, signature)?)
    };
    let i = Complex::new(T::zero(), T::one());
    let dx = eval(Complex::new(h, T::zero()))? - eval(Complex::new(-h, T::zero()))?;
    let dy = eval(Complex::new(T::zero(), h))? - eval(Complex::new(T::zero(), -h))?;
    Ok((i * dx - dy).norm() / (T::lit(2.0) * h))
}

/// Largest [`cr_residual`] over a `samples x samples` grid of the rectangle
/// `xi in [xi_lo, xi_hi]`, `eta in [eta_lo, eta_hi]` in every variable
/// (one variable at a time, the others held at the rectangle's lower corner).
pub fn cr_residual_max<T: Real>(
    g: &ClosedFormFn<T>,
    xi: (T, T),
    eta: (T, T),
    samples: usize,
    h: T,
) -> Result<T> {
    let samples = samples.max(2);
    let step = |lo: T, hi: T, k: usize| lo + (hi - lo) * T::from_usize_lossy(k) / T::from_usize_lossy(samples - 1);
    let mut worst = T::zero();
    for axis in 0..g.dim() {
        for a in 0..samples {
            for b in 0..samples {
                let mut zeta = vec![Complex::new(xi.0, eta.0); g.dim()];
                zeta[axis] = Complex::new(step(xi.0, xi.1, a), step(eta.0, eta.1, b));
                worst = worst.max(cr_residual(g, &zeta, axis, h)?);
            }
        }
    }
    Ok(worst)
}

/// A quadrature value with the analytic tail added.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TailCorrected<T: Real> {
    pub quadrature: T,
    pub tail: T,
    pub total: T,
}

/// `int_R p_a^(xi) d xi` with `p_a^(xi) = 2a / (a^2 + xi^2)`: trapezoid on
/// `[-X, X]` plus the exact tail `4 (pi/2 - arctan(X/a))`. The exact value is `2 pi`.
pub fn pa_transform_integral<T: Real>(a: T, xi_max: T, intervals: usize) -> Result<TailCorrected<T>> {
    if !(a > T::zero()) {
        return Err(Error::NonPositiveParameter(format!("a = {a}")));
    }
    if !(xi_max > T::zero()) || intervals < 2 {
        return Err(Error::InvalidInput("need X > 0 and at least 2 intervals".into()));
    }
    let h = T::lit(2.0) * xi_max / T::from_usize_lossy(intervals);
    let f = |x: T| T::lit(2.0) * a / (a * a + x * x);
    let terms: Vec<T> = (0..=intervals)
        .map(|k| {
            let x = xi_max * T::from_i64_lossy(2 * k as i64 - intervals as i64) / T::from_usize_lossy(intervals);
            let w = if k == 0 || k == intervals { T::lit(0.5) } else { T::one() };
            w * f(x)
        })
        .collect();
    let quadrature = crate::scalar::pairwise_sum_real(&terms) * h;
    // pi/2 - arctan(X/a) = arctan(a/X) without cancellation
    let tail = T::lit(4.0) * (a / xi_max).atan();
    Ok(TailCorrected { quadrature, tail, total: quadrature + tail })
}
