//! Normed-algebra numerics over three carriers: square complex matrices
//! with the operator norm, sampled functions on `[0, 1]` with the sup
//! norm, and `C^1` pairs `(f, f')` with `||f||_sup + ||f'||_sup`.

mod matrix;
mod volterra;

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{is_finite_c, Real};

pub use matrix::Matrix;
pub use volterra::{volterra_apply, volterra_matrix, volterra_power_norm};

/// How a norm value was obtained.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum NormMethod<T: Real> {
    Exact,
    PowerIteration { iterations: usize, tolerance: T },
    /// Largest eigenvalue of `x* x` by QR, used when power iteration stalls
    /// on nearly equal top singular values.
    GramEigenvalues,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NormReport<T: Real> {
    pub value: T,
    pub method: NormMethod<T>,
}

fn sup<T: Real>(v: &[Complex<T>]) -> T {
    v.iter().fold(T::zero(), |m, z| m.max(z.norm()))
}

fn check_samples<T: Real>(v: &[Complex<T>]) -> Result<()> {
    if v.len() < 2 {
        return Err(Error::TooFewSamples { needed: 1, have: v.len() });
    }
    if !v.iter().all(|z| is_finite_c(*z)) {
        return Err(Error::InvalidInput("samples must be finite".into()));
    }
    Ok(())
}

/// Grid nodes `k / (M - 1)`, `k = 0..M`.
pub fn unit_grid<T: Real>(m: usize) -> Vec<T> {
    let last = T::from_usize_lossy(m - 1);
    (0..m).map(|k| T::from_usize_lossy(k) / last).collect()
}

/// Samples of a continuous function on the uniform `M`-point grid over `[0, 1]`.
#[derive(Clone, Debug, PartialEq)]
pub struct GridFn<T: Real> {
    values: Vec<Complex<T>>,
}

impl<T: Real> GridFn<T> {
    pub fn new(values: Vec<Complex<T>>) -> Result<Self> {
        check_samples(&values)?;
        Ok(GridFn { values })
    }

    pub fn from_fn(m: usize, f: impl Fn(T) -> Complex<T>) -> Result<Self> {
        if m < 2 {
            return Err(Error::TooFewSamples { needed: 1, have: m });
        }
        Self::new(unit_grid(m).into_iter().map(f).collect())
    }

    pub fn constant(m: usize, c: Complex<T>) -> Result<Self> {
        Self::from_fn(m, |_| c)
    }

    pub fn values(&self) -> &[Complex<T>] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn sup_norm(&self) -> T {
        sup(&self.values)
    }
}

/// A `C^1` function stored as value and derivative samples on the
/// uniform `M`-point grid over `[0, 1]`.
#[derive(Clone, Debug, PartialEq)]
pub struct C1Fn<T: Real> {
    values: Vec<Complex<T>>,
    derivs: Vec<Complex<T>>,
}

impl<T: Real> C1Fn<T> {
    /// Takes the samples as given; only lengths and finiteness are checked.
    pub fn new(values: Vec<Complex<T>>, derivs: Vec<Complex<T>>) -> Result<Self> {
        check_samples(&values)?;
        check_samples(&derivs)?;
        if values.len() != derivs.len() {
            return Err(Error::GridMismatch);
        }
        Ok(C1Fn { values, derivs })
    }

    /// Samples `f` and `f'` from closed forms and checks that the stored
    /// derivative agrees with centered differences of the values within
    /// `10 h^2`.
    pub fn from_fn(m: usize, f: impl Fn(T) -> Complex<T>, df: impl Fn(T) -> Complex<T>) -> Result<Self> {
        if m < 3 {
            return Err(Error::TooFewSamples { needed: 2, have: m });
        }
        let xs = unit_grid(m);
        let g = Self::new(xs.iter().map(|&x| f(x)).collect(), xs.iter().map(|&x| df(x)).collect())?;
        let h = T::from_usize_lossy(m - 1).recip();
        let defect = g.difference_defect();
        if defect > T::lit(10.0) * h * h {
            return Err(Error::InvalidInput(format!(
                "derivative samples disagree with centered differences by {defect}"
            )));
        }
        Ok(g)
    }

    pub fn constant(m: usize, c: Complex<T>) -> Result<Self> {
        let zero = Complex::new(T::zero(), T::zero());
        Self::from_fn(m, |_| c, |_| zero)
    }

    /// `max_k |(f_{k+1} - f_{k-1}) / 2h - f'_k|` over interior nodes.
    pub fn difference_defect(&self) -> T {
        let m = self.values.len();
        let two_h = T::lit(2.0) / T::from_usize_lossy(m - 1);
        (1..m - 1).fold(T::zero(), |acc, k| {
            acc.max(((self.values[k + 1] - self.values[k - 1]) / two_h - self.derivs[k]).norm())
        })
    }

    pub fn values(&self) -> &[Complex<T>] {
        &self.values
    }

    pub fn derivs(&self) -> &[Complex<T>] {
        &self.derivs
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `||f||_sup + ||f'||_sup`.
    pub fn c1_norm(&self) -> T {
        sup(&self.values) + sup(&self.derivs)
    }
}

/// Pointwise product with derivative `f' g + f g'` from the stored samples.
pub fn c1_product<T: Real>(f: &C1Fn<T>, g: &C1Fn<T>) -> Result<C1Fn<T>> {
    if f.len() != g.len() {
        return Err(Error::GridMismatch);
    }
    let values = f.values.iter().zip(&g.values).map(|(a, b)| a * b).collect();
    let derivs = (0..f.len()).map(|k| f.derivs[k] * g.values[k] + f.values[k] * g.derivs[k]).collect();
    Ok(C1Fn { values, derivs })
}

/// An element of one of the three carrier algebras.
#[derive(Clone, Debug, PartialEq)]
pub enum AlgebraElement<T: Real> {
    Matrix(Matrix<T>),
    GridFn(GridFn<T>),
    C1Fn(C1Fn<T>),
}

impl<T: Real> AlgebraElement<T> {
    /// Unit of the carrier `self` lives in.
    pub fn identity_like(&self) -> Self {
        let one = Complex::new(T::one(), T::zero());
        let zero = Complex::new(T::zero(), T::zero());
        match self {
            AlgebraElement::Matrix(m) => AlgebraElement::Matrix(Matrix::identity(m.dim())),
            AlgebraElement::GridFn(f) => AlgebraElement::GridFn(GridFn { values: vec![one; f.len()] }),
            AlgebraElement::C1Fn(f) => AlgebraElement::C1Fn(C1Fn { values: vec![one; f.len()], derivs: vec![zero; f.len()] }),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        match (self, other) {
            (AlgebraElement::Matrix(a), AlgebraElement::Matrix(b)) => Ok(AlgebraElement::Matrix(a.mul(b)?)),
            (AlgebraElement::GridFn(a), AlgebraElement::GridFn(b)) => {
                if a.len() != b.len() {
                    return Err(Error::GridMismatch);
                }
                Ok(AlgebraElement::GridFn(GridFn { values: a.values.iter().zip(&b.values).map(|(x, y)| x * y).collect() }))
            }
            (AlgebraElement::C1Fn(a), AlgebraElement::C1Fn(b)) => Ok(AlgebraElement::C1Fn(c1_product(a, b)?)),
            _ => Err(Error::InvalidInput("elements live in different carriers".into())),
        }
    }

    fn zip_with(&self, other: &Self, op: impl Fn(Complex<T>, Complex<T>) -> Complex<T>) -> Result<Self> {
        let zip = |a: &[Complex<T>], b: &[Complex<T>]| -> Vec<Complex<T>> { a.iter().zip(b).map(|(x, y)| op(*x, *y)).collect() };
        match (self, other) {
            (AlgebraElement::Matrix(a), AlgebraElement::Matrix(b)) => {
                if a.dim() != b.dim() {
                    return Err(Error::DimensionMismatch { expected: a.dim(), found: b.dim() });
                }
                Ok(AlgebraElement::Matrix(Matrix::new(a.dim(), zip(a.entries(), b.entries()))?))
            }
            (AlgebraElement::GridFn(a), AlgebraElement::GridFn(b)) if a.len() == b.len() => {
                Ok(AlgebraElement::GridFn(GridFn { values: zip(&a.values, &b.values) }))
            }
            (AlgebraElement::C1Fn(a), AlgebraElement::C1Fn(b)) if a.len() == b.len() => Ok(AlgebraElement::C1Fn(C1Fn {
                values: zip(&a.values, &b.values),
                derivs: zip(&a.derivs, &b.derivs),
            })),
            (AlgebraElement::GridFn(_), AlgebraElement::GridFn(_)) | (AlgebraElement::C1Fn(_), AlgebraElement::C1Fn(_)) => {
                Err(Error::GridMismatch)
            }
            _ => Err(Error::InvalidInput("elements live in different carriers".into())),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, s: Complex<T>) -> Self {
        let sc = |v: &[Complex<T>]| -> Vec<Complex<T>> { v.iter().map(|z| z * s).collect() };
        match self {
            AlgebraElement::Matrix(m) => AlgebraElement::Matrix(m.scale(s)),
            AlgebraElement::GridFn(f) => AlgebraElement::GridFn(GridFn { values: sc(&f.values) }),
            AlgebraElement::C1Fn(f) => AlgebraElement::C1Fn(C1Fn { values: sc(&f.values), derivs: sc(&f.derivs) }),
        }
    }

    /// Cheap upper bound for the norm: Frobenius for matrices, the exact
    /// norm otherwise.
    fn norm_upper(&self) -> T {
        match self {
            AlgebraElement::Matrix(m) => m.frobenius(),
            AlgebraElement::GridFn(f) => f.sup_norm(),
            AlgebraElement::C1Fn(f) => f.c1_norm(),
        }
    }
}

/// Norm of `x` in its carrier.
pub fn alg_norm<T: Real>(x: &AlgebraElement<T>) -> Result<NormReport<T>> {
    match x {
        AlgebraElement::Matrix(m) => m.op_norm(),
        AlgebraElement::GridFn(f) => Ok(NormReport { value: f.sup_norm(), method: NormMethod::Exact }),
        AlgebraElement::C1Fn(f) => Ok(NormReport { value: f.c1_norm(), method: NormMethod::Exact }),
    }
}

/// `ln ||x^n||` for `n = 1..=count` (`-inf` once a power vanishes).
///
/// Each power is renormalized by the norm of the previous one so nothing
/// overflows; `stop` sees each log norm and may end the scan early.
fn power_log_norms<T: Real>(x: &AlgebraElement<T>, count: usize, stop: impl Fn(T) -> bool) -> Result<Vec<T>> {
    let nx = alg_norm(x)?.value;
    let mut out = Vec::with_capacity(count);
    if nx == T::zero() {
        out.resize(count, T::neg_infinity());
        return Ok(out);
    }
    let y = x.scale(Complex::new(nx.recip(), T::zero()));
    let mut p = y.clone();
    let mut log_scale = T::zero();
    for n in 1..=count {
        if n > 1 {
            p = p.mul(&y)?;
        }
        let np = alg_norm(&p)?.value;
        if np == T::zero() {
            out.resize(count, T::neg_infinity());
            break;
        }
        let log_norm = np.ln() + log_scale + T::from_usize_lossy(n) * nx.ln();
        out.push(log_norm);
        if stop(log_norm) {
            break;
        }
        p = p.scale(Complex::new(np.recip(), T::zero()));
        log_scale += np.ln();
    }
    Ok(out)
}

/// Gelfand sequence `||x^n||^{1/n}` for `n = 1..=max_power` and its minimum,
/// an upper bound for the spectral radius.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectralRadius<T: Real> {
    pub estimate: T,
    pub sequence: Vec<T>,
}

/// Every power `n <= max_power` is formed (a superset of the dyadic
/// powers), with the norms tracked in log space.
pub fn spectral_radius<T: Real>(x: &AlgebraElement<T>, max_power: usize) -> Result<SpectralRadius<T>> {
    if max_power < 8 {
        return Err(Error::OutOfRange(format!("max power must be at least 8, got {max_power}")));
    }
    let sequence: Vec<T> = power_log_norms(x, max_power, |_| false)?
        .into_iter()
        .enumerate()
        .map(|(i, l)| (l / T::from_usize_lossy(i + 1)).exp())
        .collect();
    let estimate = sequence.iter().fold(T::infinity(), |m, &v| m.min(v));
    Ok(SpectralRadius { estimate, sequence })
}

/// Result of summing the Neumann series for `(e - a)^{-1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct NeumannInverse<T: Real> {
    pub inverse: AlgebraElement<T>,
    /// `sum_{j<k} ||a^j|| / (1 - ||a^k||)` for the first `k` with
    /// `||a^k|| < 1`; equals `1 / (1 - ||a||)` when `||a|| < 1`.
    pub bound: T,
    /// Number of summands `a^0, ..., a^{terms-1}`.
    pub terms: usize,
    /// `||(e - a) S - e||`.
    pub residual: T,
}

const NEUMANN_MAX_TERMS: usize = 100_000;
const NEUMANN_MAX_POWER: usize = 64;

/// Partial sum `S = sum_{j<J} a^j` with `||(e - a) S - e|| <= tol`.
///
/// Requires `||a^k|| < 1` for some `k <= 64`. Since `(e - a) S = e - a^J`,
/// summation stops once an upper bound for `||a^J||` is below `tol / 2`;
/// the residual is then measured directly.
pub fn neumann_inverse<T: Real>(a: &AlgebraElement<T>, tol: T) -> Result<NeumannInverse<T>> {
    if !(tol > T::zero()) {
        return Err(Error::NonPositiveParameter(format!("tolerance {tol}")));
    }
    let norms: Vec<T> =
        power_log_norms(a, NEUMANN_MAX_POWER, |l| l < T::zero())?.into_iter().map(|l| l.exp()).collect();
    let k = norms
        .iter()
        .position(|&v| v < T::one())
        .ok_or(Error::NeumannPrecondition { max_power: NEUMANN_MAX_POWER })?;
    let head = T::one() + norms[..k].iter().copied().sum::<T>();
    let bound = head / (T::one() - norms[k]);

    let e = a.identity_like();
    let mut sum = e.clone();
    let mut power = e.clone();
    let mut terms = 1;
    loop {
        power = power.mul(a)?;
        if power.norm_upper() <= tol * T::lit(0.5) {
            break;
        }
        if terms >= NEUMANN_MAX_TERMS {
            return Err(Error::NonConvergence { what: "Neumann series", iterations: NEUMANN_MAX_TERMS });
        }
        sum = sum.add(&power)?;
        terms += 1;
    }
    let residual = alg_norm(&e.sub(a)?.mul(&sum)?.sub(&e)?)?.value;
    if residual > tol {
        return Err(Error::NonConvergence { what: "Neumann series residual", iterations: terms });
    }
    Ok(NeumannInverse { inverse: sum, bound, terms, residual })
}

/// `||a|| ||b^{-1}|| < 1`, the condition under which `b - a` is invertible.
pub fn perturb_invertible<T: Real>(b_inv_norm: T, a_norm: T) -> Result<bool> {
    if !(b_inv_norm >= T::zero()) || !(a_norm >= T::zero()) {
        return Err(Error::InvalidInput("norms must be nonnegative".into()));
    }
    Ok(a_norm * b_inv_norm < T::one())
}

/// `(b - a)^{-1} = b^{-1} (e - a b^{-1})^{-1}`, the second factor by the
/// Neumann series. Fails unless `||a|| ||b^{-1}|| < 1`.
pub fn invert_perturbed<T: Real>(
    b_inv: &AlgebraElement<T>,
    a: &AlgebraElement<T>,
    tol: T,
) -> Result<AlgebraElement<T>> {
    let nb = alg_norm(b_inv)?.value;
    let na = alg_norm(a)?.value;
    if !perturb_invertible(nb, na)? {
        return Err(Error::NeumannPrecondition { max_power: 1 });
    }
    // ||b^{-1}|| tol keeps the final residual of (b - a) X - e at tol
    let inner_tol = tol / (T::one() + nb * (T::one() + na));
    let s = neumann_inverse(&a.mul(b_inv)?, inner_tol)?;
    b_inv.mul(&s.inverse)
}

/// Norm identities for the adjoint on matrices.
#[derive(Clone, Debug, PartialEq)]
pub struct CStarReport<T: Real> {
    pub norm: T,
    pub adjoint_norm: T,
    /// `||T* T||`.
    pub star_product_norm: T,
    /// `||T* T - T T*||`.
    pub normal_defect: T,
    pub normal: bool,
    /// `(l, ||T^l||, ||T||^l)` for `l = 1..=8`, only for normal `T`.
    pub powers: Vec<(usize, T, T)>,
    /// `|  ||T*|| - ||T|| | <= 1e-10 (1 + ||T||)`.
    pub adjoint_ok: bool,
    /// `||T* T|| = ||T||^2` to `1e-9` relative.
    pub cstar_ok: bool,
    /// Power identity to `1e-8` relative; `None` when `T` is not normal.
    pub powers_ok: Option<bool>,
}

/// Normality is declared when `||T* T - T T*|| <= 1e-12 max(1, ||T||^2)`.
pub fn cstar_checks<T: Real>(t: &Matrix<T>) -> Result<CStarReport<T>> {
    if t.dim() > 16 {
        return Err(Error::OutOfRange(format!("C* checks support d <= 16, got {}", t.dim())));
    }
    let adj = t.adjoint();
    let norm = t.op_norm()?.value;
    let adjoint_norm = adj.op_norm()?.value;
    let star_product_norm = adj.mul(t)?.op_norm()?.value;
    let normal_defect = adj.mul(t)?.sub(&t.mul(&adj)?)?.op_norm()?.value;
    let sq = norm * norm;
    let normal = normal_defect <= T::lit(1e-12) * sq.max(T::one());
    let rel = |a: T, b: T, tol: f64| (a - b).abs() <= T::lit(tol) * a.abs().max(b.abs()).max(T::min_positive_value());
    let mut powers = Vec::new();
    let mut powers_ok = None;
    if normal {
        let mut p = t.clone();
        let mut ok = true;
        for l in 1..=8usize {
            if l > 1 {
                p = p.mul(t)?;
            }
            let lhs = p.op_norm()?.value;
            let rhs = norm.powi(l as i32);
            ok &= rel(lhs, rhs, 1e-8) || (lhs == T::zero() && rhs == T::zero());
            powers.push((l, lhs, rhs));
        }
        powers_ok = Some(ok);
    }
    Ok(CStarReport {
        norm,
        adjoint_norm,
        star_product_norm,
        normal_defect,
        normal,
        powers,
        adjoint_ok: (adjoint_norm - norm).abs() <= T::lit(1e-10) * (T::one() + norm),
        cstar_ok: rel(star_product_norm, sq, 1e-9) || (sq == T::zero() && star_product_norm == T::zero()),
        powers_ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    fn rmat(d: usize, rng: &mut ChaCha8Rng, s: f64) -> Matrix<f64> {
        Matrix::new(d, (0..d * d).map(|_| c(rng.gen_range(-s..s), rng.gen_range(-s..s))).collect()).unwrap()
    }

    #[test]
    fn norms_of_carrier_units() {
        let m = AlgebraElement::Matrix(Matrix::<f64>::identity(3));
        assert!((alg_norm(&m).unwrap().value - 1.0).abs() < 1e-14);
        let g = AlgebraElement::GridFn(GridFn::constant(50, c(3.0, 4.0)).unwrap());
        assert_eq!(alg_norm(&g).unwrap().value, 5.0);
        assert_eq!(alg_norm(&g.identity_like()).unwrap().value, 1.0);
        let x = C1Fn::from_fn(101, |x: f64| c(x, 0.0), |_| c(1.0, 0.0)).unwrap();
        assert_eq!(x.c1_norm(), 2.0);
        assert_eq!(C1Fn::constant(11, c(-2.0, 0.0)).unwrap().c1_norm(), 2.0);
    }

    #[test]
    fn c1_constructor_checks_derivative() {
        assert!(C1Fn::from_fn(101, |x: f64| c(x * x, 0.0), |x| c(2.0 * x, 0.0)).is_ok());
        assert!(C1Fn::from_fn(101, |x: f64| c(x * x, 0.0), |x| c(x, 0.0)).is_err());
    }

    #[test]
    fn c1_product_of_identity_functions() {
        let x = C1Fn::from_fn(101, |x: f64| c(x, 0.0), |_| c(1.0, 0.0)).unwrap();
        let p = c1_product(&x, &x).unwrap();
        assert!((p.c1_norm() - 3.0).abs() < 1e-15);
        assert!(p.c1_norm() <= x.c1_norm() * x.c1_norm());
        let short = C1Fn::constant(11, c(1.0, 0.0)).unwrap();
        assert_eq!(c1_product(&x, &short), Err(Error::GridMismatch));
    }

    #[test]
    fn neumann_examples() {
        let zero = AlgebraElement::Matrix(Matrix::<f64>::zeros(3));
        let r = neumann_inverse(&zero, 1e-12).unwrap();
        assert_eq!(r.inverse, zero.identity_like());
        assert_eq!((r.bound, r.terms), (1.0, 1));

        let half = AlgebraElement::Matrix(Matrix::<f64>::identity(3).scale(c(0.5, 0.0)));
        let r = neumann_inverse(&half, 1e-10).unwrap();
        let AlgebraElement::Matrix(inv) = &r.inverse else { unreachable!() };
        assert!(inv.sub(&Matrix::identity(3).scale(c(2.0, 0.0))).unwrap().frobenius() < 1e-9);
        assert!((r.bound - 2.0).abs() < 1e-12);

        // nilpotent with a large norm: exact after d terms
        let n = Matrix::from_real_rows(&[vec![0.0, 5.0, -3.0], vec![0.0, 0.0, 7.0], vec![0.0, 0.0, 0.0]]).unwrap();
        let r = neumann_inverse(&AlgebraElement::Matrix(n.clone()), 1e-12).unwrap();
        assert_eq!(r.terms, 3);
        assert_eq!(r.residual, 0.0);
        let AlgebraElement::Matrix(inv) = &r.inverse else { unreachable!() };
        // (e - n)^{-1} = e + n + n^2, n^2 has the single entry 35 at (0, 2)
        let expect = Matrix::from_real_rows(&[vec![1.0, 5.0, 32.0], vec![0.0, 1.0, 7.0], vec![0.0, 0.0, 1.0]]).unwrap();
        assert_eq!(inv, &expect);
    }

    #[test]
    fn neumann_rejects_large_spectrum() {
        let a = AlgebraElement::Matrix(Matrix::<f64>::identity(2).scale(c(1.5, 0.0)));
        assert!(matches!(neumann_inverse(&a, 1e-10), Err(Error::NeumannPrecondition { .. })));
    }

    #[test]
    fn neumann_uses_a_later_power() {
        // ||a|| > 1 but ||a^2|| < 1
        let a = Matrix::from_real_rows(&[vec![0.3, 2.0], vec![0.0, 0.3]]).unwrap();
        let r = neumann_inverse(&AlgebraElement::Matrix(a.clone()), 1e-10).unwrap();
        assert!(r.residual <= 1e-10);
        let AlgebraElement::Matrix(inv) = &r.inverse else { unreachable!() };
        let prod = Matrix::identity(2).sub(&a).unwrap().mul(inv).unwrap();
        assert!(prod.sub(&Matrix::identity(2)).unwrap().frobenius() < 1e-9);
        assert!(inv.op_norm().unwrap().value <= r.bound);
    }

    #[test]
    fn neumann_on_functions() {
        let f = GridFn::from_fn(64, |x: f64| c(0.9 * x, 0.0)).unwrap();
        let r = neumann_inverse(&AlgebraElement::GridFn(f), 1e-12).unwrap();
        let AlgebraElement::GridFn(inv) = &r.inverse else { unreachable!() };
        for (k, x) in unit_grid::<f64>(64).into_iter().enumerate() {
            assert!((inv.values()[k] - c(1.0 / (1.0 - 0.9 * x), 0.0)).norm() < 1e-10);
        }
        assert!((r.bound - 10.0).abs() < 1e-9);
    }

    #[test]
    fn perturbation_predicate() {
        assert_eq!(perturb_invertible(1.0, 0.0), Ok(true));
        assert_eq!(perturb_invertible(0.5, 1.9), Ok(true));
        assert_eq!(perturb_invertible(0.5, 2.0), Ok(false));
        assert!(perturb_invertible(-1.0, 0.0).is_err());
    }

    #[test]
    fn perturbed_inverse_of_random_matrices() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let b = Matrix::identity(4).add(&rmat(4, &mut rng, 0.2)).unwrap();
            let b_inv = neumann_inverse(&AlgebraElement::Matrix(Matrix::identity(4).sub(&b).unwrap()), 1e-14).unwrap().inverse;
            let nb = alg_norm(&b_inv).unwrap().value;
            let a = rmat(4, &mut rng, 1.0);
            let na = a.op_norm().unwrap().value;
            let a = a.scale(c(0.9 / (na * nb), 0.0));
            let x = invert_perturbed(&b_inv, &AlgebraElement::Matrix(a.clone()), 1e-9).unwrap();
            let AlgebraElement::Matrix(x) = x else { unreachable!() };
            let res = b.sub(&a).unwrap().mul(&x).unwrap().sub(&Matrix::identity(4)).unwrap().op_norm().unwrap().value;
            assert!(res <= 1e-8, "{res}");
        }
    }

    #[test]
    fn gelfand_sequences() {
        let f = GridFn::from_fn(33, |x: f64| c(1.0 - 2.0 * x, x)).unwrap();
        let s = spectral_radius(&AlgebraElement::GridFn(f.clone()), 40).unwrap();
        for v in &s.sequence {
            assert!((v - f.sup_norm()).abs() <= 1e-14 * f.sup_norm());
        }
        let x = C1Fn::from_fn(201, |x: f64| c(x, 0.0), |_| c(1.0, 0.0)).unwrap();
        let s = spectral_radius(&AlgebraElement::C1Fn(x), 64).unwrap();
        for (i, v) in s.sequence.iter().enumerate() {
            let n = (i + 1) as f64;
            assert!((v - (1.0 + n).powf(1.0 / n)).abs() < 1e-12, "n={n}: {v}");
        }
        let nil = Matrix::from_real_rows(&[vec![0.0, 1.0], vec![0.0, 0.0]]).unwrap();
        let s = spectral_radius(&AlgebraElement::Matrix(nil), 8).unwrap();
        assert_eq!(s.sequence[1], 0.0);
        assert_eq!(s.estimate, 0.0);
        assert!(spectral_radius(&AlgebraElement::Matrix(Matrix::<f64>::identity(2)), 4).is_err());
    }

    #[test]
    fn gelfand_sandwich_against_eigenvalues() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..10 {
            let m = rmat(4, &mut rng, 1.0);
            let r = m.spectral_radius_eig().unwrap();
            let s = spectral_radius(&AlgebraElement::Matrix(m), 256).unwrap();
            assert!(s.sequence.iter().all(|&v| v >= r * (1.0 - 1e-9)));
            assert!((s.estimate - r).abs() <= 1e-2 * (1.0 + r));
        }
    }

    #[test]
    fn clustered_singular_values() {
        let m = Matrix::diagonal(&[c(1.0, 0.0), c(1.0 / (1.0 + 7.6e-5), 0.0)]);
        let r = m.op_norm().unwrap();
        assert_eq!(r.method, NormMethod::GramEigenvalues);
        assert!((r.value - 1.0).abs() <= 1e-14);
    }

    #[test]
    fn huge_matrices_do_not_overflow() {
        let m = Matrix::<f64>::identity(2).scale(c(1e200, 0.0));
        let s = spectral_radius(&AlgebraElement::Matrix(m), 16).unwrap();
        assert!((s.estimate / 1e200 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn cstar_examples() {
        let t = 0.4f64;
        let u = Matrix::from_real_rows(&[vec![t.cos(), -t.sin()], vec![t.sin(), t.cos()]]).unwrap();
        let r = cstar_checks(&u).unwrap();
        assert!((r.norm - 1.0).abs() < 1e-12 && (r.star_product_norm - 1.0).abs() < 1e-12);
        assert_eq!(r.powers_ok, Some(true));

        let d = Matrix::diagonal(&[c(1.0, 0.0), c(-2.0, 0.0)]);
        let r = cstar_checks(&d).unwrap();
        assert!((r.powers[1].1 - 4.0).abs() < 4e-11, "{r:?}");
        assert!(r.adjoint_ok && r.cstar_ok && r.powers_ok == Some(true));

        let n = Matrix::from_real_rows(&[vec![0.0, 2.0], vec![0.0, 0.0]]).unwrap();
        let r = cstar_checks(&n).unwrap();
        assert!(!r.normal && r.powers_ok.is_none());
        assert!(r.cstar_ok && r.adjoint_ok);
        assert_eq!(n.mul(&n).unwrap().op_norm().unwrap().value, 0.0);
    }
}
