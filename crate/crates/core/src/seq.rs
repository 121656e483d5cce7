//! Finite-index sequence spaces: `l^p` norms and quasi-norms, the bilinear
//! pairing, the inner product, dual norms and the seminorm-family metric.

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::multiindex::check_dim;
use crate::scalar::{cis, Real};

/// Complex vector indexed by a finite set `E = {0, ..., len - 1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct SeqVector<T: Real> {
    entries: Vec<Complex<T>>,
}

/// Exponent `p` in `(0, inf]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Exponent<T: Real> {
    Finite(T),
    Infinity,
}

impl<T: Real> Exponent<T> {
    pub fn new(p: T) -> Result<Self> {
        if p.is_infinite() && p > T::zero() {
            return Ok(Exponent::Infinity);
        }
        if !(p > T::zero()) || !p.is_finite() {
            return Err(Error::InvalidExponent(format!("p must be positive, got {p}")));
        }
        Ok(Exponent::Finite(p))
    }

    pub fn value(&self) -> T {
        match *self {
            Exponent::Finite(p) => p,
            Exponent::Infinity => T::infinity(),
        }
    }

    /// Conjugate exponent `q` with `1/p + 1/q = 1`; requires `p >= 1`.
    pub fn conjugate(&self) -> Result<Self> {
        match *self {
            Exponent::Infinity => Ok(Exponent::Finite(T::one())),
            Exponent::Finite(p) if p == T::one() => Ok(Exponent::Infinity),
            Exponent::Finite(p) if p > T::one() => Ok(Exponent::Finite(p / (p - T::one()))),
            Exponent::Finite(p) => Err(Error::InvalidExponent(format!("conjugate needs p >= 1, got {p}"))),
        }
    }

    fn at_least_one(&self) -> Result<()> {
        match *self {
            Exponent::Finite(p) if p < T::one() => {
                Err(Error::InvalidExponent(format!("need p >= 1, got {p}")))
            }
            _ => Ok(()),
        }
    }
}

impl<T: Real> SeqVector<T> {
    pub fn new(entries: Vec<Complex<T>>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::InvalidInput("sequence vector must have at least one entry".into()));
        }
        if entries.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidInput("sequence vector entries must be finite".into()));
        }
        Ok(SeqVector { entries })
    }

    pub fn from_real(values: &[T]) -> Result<Self> {
        Self::new(values.iter().map(|&x| Complex::new(x, T::zero())).collect())
    }

    pub fn zeros(len: usize) -> Self {
        assert!(len > 0);
        SeqVector { entries: vec![Complex::new(T::zero(), T::zero()); len] }
    }

    pub fn entries(&self) -> &[Complex<T>] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        check_dim(self.len(), other.len())?;
        Ok(SeqVector { entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect() })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        check_dim(self.len(), other.len())?;
        Ok(SeqVector { entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a - b).collect() })
    }

    /// Pointwise product `f g`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        check_dim(self.len(), other.len())?;
        Ok(SeqVector { entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a * b).collect() })
    }

    pub fn scale(&self, s: Complex<T>) -> Self {
        SeqVector { entries: self.entries.iter().map(|a| a * s).collect() }
    }

    fn max_modulus(&self) -> T {
        self.entries.iter().fold(T::zero(), |m, z| m.max(z.norm()))
    }

    /// `||f||_p`; for `p < 1` this is the quasi-norm `(sum |f|^p)^{1/p}`.
    ///
    /// Powers are accumulated relative to the largest modulus, which keeps
    /// large `p` and widely spread entries away from overflow and underflow.
    pub fn lp_norm(&self, p: Exponent<T>) -> T {
        let m = self.max_modulus();
        match p {
            Exponent::Infinity => m,
            Exponent::Finite(p) => {
                if m == T::zero() {
                    return T::zero();
                }
                let s: T = self.entries.iter().map(|z| (z.norm() / m).powf(p)).sum();
                m * s.powf(p.recip())
            }
        }
    }

    /// `sum |f(x)|^p` for finite `p`.
    pub fn lp_norm_pow(&self, p: T) -> T {
        self.entries.iter().map(|z| z.norm().powf(p)).sum()
    }
}

/// Bilinear pairing `sum f(x) g(x)` (no conjugation).
pub fn pairing<T: Real>(f: &SeqVector<T>, g: &SeqVector<T>) -> Result<Complex<T>> {
    check_dim(f.len(), g.len())?;
    Ok(f.entries.iter().zip(&g.entries).map(|(a, b)| a * b).sum())
}

/// Inner product `<f, g> = sum f(x) conj(g(x))`.
pub fn inner_product<T: Real>(f: &SeqVector<T>, g: &SeqVector<T>) -> Result<Complex<T>> {
    check_dim(f.len(), g.len())?;
    Ok(f.entries.iter().zip(&g.entries).map(|(a, b)| a * b.conj()).sum())
}

/// Dual norm of `lambda_g(f) = pairing(f, g)` on `l^p`, with an extremizer.
#[derive(Clone, Debug, PartialEq)]
pub struct DualNorm<T: Real> {
    pub value: T,
    /// `f` with `||f||_p = 1` (or `f = 0` when `g = 0`) and `pairing(f, g) = value`.
    pub extremizer: SeqVector<T>,
}

/// Dual norm `||g||_q` of the functional `f -> sum f g` on `l^p`, `p >= 1`.
///
/// The extremizer follows the equality case of Hölder's inequality:
/// `f(x) g(x) = |f(x)|^p = |g(x)|^q` up to normalization, with `0/0 -> 0`.
pub fn dual_norm<T: Real>(g: &SeqVector<T>, p: Exponent<T>) -> Result<DualNorm<T>> {
    p.at_least_one()?;
    let q = p.conjugate()?;
    let value = g.lp_norm(q);
    let n = g.len();
    let zero = Complex::new(T::zero(), T::zero());
    if value == T::zero() {
        return Ok(DualNorm { value, extremizer: SeqVector::zeros(n) });
    }
    let phase = |z: Complex<T>| if z == zero { zero } else { cis(-z.arg()) };
    let entries: Vec<Complex<T>> = match (p, q) {
        (Exponent::Finite(one), Exponent::Infinity) if one == T::one() => {
            let (jmax, _) = g
                .entries
                .iter()
                .enumerate()
                .fold((0, T::neg_infinity()), |(bj, bv), (j, z)| if z.norm() > bv { (j, z.norm()) } else { (bj, bv) });
            (0..n).map(|j| if j == jmax { phase(g.entries[j]) } else { zero }).collect()
        }
        (Exponent::Infinity, _) => g.entries.iter().map(|&z| phase(z)).collect(),
        (Exponent::Finite(_), Exponent::Finite(q)) => {
            let m = g.max_modulus();
            g.entries
                .iter()
                .map(|&z| phase(z) * (z.norm() / m).powf(q - T::one()))
                .collect()
        }
        _ => unreachable!("conjugate of a finite p > 1 is finite"),
    };
    let f = SeqVector { entries };
    let norm = f.lp_norm(p);
    let extremizer = f.scale(Complex::new(norm.recip(), T::zero()));
    Ok(DualNorm { value, extremizer })
}

/// Direct numerical maximization of `|pairing(f, g)|` over the `l^p` unit
/// sphere, independent of the closed form in [`dual_norm`].
///
/// Real `g`: every sign pattern on the support (at most 12 entries), with the
/// magnitudes optimized by coordinate ascent. Complex `g`: a 64-point phase
/// grid per support coordinate (at most 3) and a coarse magnitude grid,
/// followed by coordinate golden-section refinement.
pub fn brute_force_dual_norm<T: Real>(g: &SeqVector<T>, p: Exponent<T>) -> Result<T> {
    p.at_least_one()?;
    let support: Vec<Complex<T>> = g.entries.iter().copied().filter(|z| z.norm() > T::zero()).collect();
    let k = support.len();
    if k == 0 {
        return Ok(T::zero());
    }
    let is_real = support.iter().all(|z| z.im == T::zero());
    if is_real && k > 12 || !is_real && k > 3 {
        return Err(Error::OutOfRange(format!(
            "brute-force oracle supports at most 12 real or 3 complex nonzero entries, got {k}"
        )));
    }
    let oracle = Oracle { g: &support, p };
    Ok(if is_real { oracle.real() } else { oracle.complex() })
}

struct Oracle<'a, T: Real> {
    g: &'a [Complex<T>],
    p: Exponent<T>,
}

impl<T: Real> Oracle<'_, T> {
    /// `|sum_j v_j e^{i theta_j} g_j| / ||v||_p`.
    fn objective(&self, theta: &[T], v: &[T]) -> T {
        let mut s = Complex::new(T::zero(), T::zero());
        for ((&g, &t), &m) in self.g.iter().zip(theta).zip(v) {
            s += g * cis(t) * m;
        }
        let nv = match self.p {
            Exponent::Infinity => v.iter().fold(T::zero(), |a, &b| a.max(b.abs())),
            Exponent::Finite(p) => v.iter().map(|x| x.abs().powf(p)).sum::<T>().powf(p.recip()),
        };
        if nv == T::zero() {
            T::zero()
        } else {
            s.norm() / nv
        }
    }

    fn real(&self) -> T {
        let k = self.g.len();
        let pi = T::PI();
        let mut best = T::zero();
        // global sign flips leave |pairing| unchanged, so fix the first sign
        for mask in 0..(1u32 << (k - 1)) {
            let theta: Vec<T> = (0..k)
                .map(|j| if j > 0 && mask >> (j - 1) & 1 == 1 { pi } else { T::zero() })
                .collect();
            let val = match self.p {
                Exponent::Finite(one) if one == T::one() => self.best_basis_vector(),
                // sign vectors are the extreme points of the l^inf ball
                Exponent::Infinity => self.objective(&theta, &vec![T::one(); k]),
                Exponent::Finite(_) => {
                    let mut v = vec![T::one(); k];
                    self.refine_magnitudes(&theta, &mut v)
                }
            };
            best = best.max(val);
        }
        best
    }

    fn best_basis_vector(&self) -> T {
        let k = self.g.len();
        let grid = 64;
        let mut best = T::zero();
        for j in 0..k {
            for s in 0..grid {
                let mut v = vec![T::zero(); k];
                v[j] = T::one();
                let mut theta = vec![T::zero(); k];
                theta[j] = T::two_pi() * T::from_usize_lossy(s) / T::from_usize_lossy(grid);
                best = best.max(self.objective(&theta, &v));
            }
        }
        best
    }

    fn complex(&self) -> T {
        if let Exponent::Finite(one) = self.p {
            if one == T::one() {
                return self.best_basis_vector();
            }
        }
        let k = self.g.len();
        let grid = 64usize;
        let step = T::two_pi() / T::from_usize_lossy(grid);
        let levels: Vec<T> = match self.p {
            Exponent::Infinity => vec![T::one()],
            // strictly positive levels keep every phase relevant during refinement
            Exponent::Finite(_) => (1..=5).map(|l| T::from_usize_lossy(l) / T::lit(5.0)).collect(),
        };
        let mut best = (T::neg_infinity(), vec![T::zero(); k], vec![T::one(); k]);
        let mut theta = vec![T::zero(); k];
        let mut v = vec![T::zero(); k];
        let phase_count = grid.pow(k as u32 - 1);
        let level_count = levels.len().pow(k as u32);
        for pc in 0..phase_count {
            let mut r = pc;
            for t in theta.iter_mut().skip(1) {
                *t = step * T::from_usize_lossy(r % grid);
                r /= grid;
            }
            for lc in 0..level_count {
                let mut r = lc;
                for m in v.iter_mut() {
                    *m = levels[r % levels.len()];
                    r /= levels.len();
                }
                let val = self.objective(&theta, &v);
                if val > best.0 {
                    best = (val, theta.clone(), v.clone());
                }
            }
        }
        let (_, mut theta, mut v) = best;
        let mut val = self.objective(&theta, &v);
        let mut stalled = 0;
        for _ in 0..500 {
            let (theta_prev, v_prev) = (theta.clone(), v.clone());
            for j in 1..k {
                let c = theta[j];
                theta[j] = golden_max(c - step, c + step, |t| {
                    let mut th = theta.clone();
                    th[j] = t;
                    self.objective(&th, &v)
                });
            }
            if !matches!(self.p, Exponent::Infinity) {
                self.refine_magnitudes(&theta, &mut v);
            }
            // pattern move on the joint state: each phase only aligns with
            // the resultant of the others, so plain sweeps converge slowly
            let along = |t: T| -> (Vec<T>, Vec<T>) {
                let th = theta_prev.iter().zip(&theta).map(|(&a, &b)| a + t * (b - a)).collect();
                let vv = v_prev.iter().zip(&v).map(|(&a, &b)| (a + t * (b - a)).max(T::zero())).collect();
                (th, vv)
            };
            let t = golden_max(T::one(), T::lit(8.0), |t| {
                let (th, vv) = along(t);
                self.objective(&th, &vv)
            });
            let (th, vv) = along(t);
            if self.objective(&th, &vv) > self.objective(&theta, &v) {
                theta = th;
                v = vv;
            }
            let next = self.objective(&theta, &v);
            stalled = if next - val <= T::epsilon() * next { stalled + 1 } else { 0 };
            val = val.max(next);
            if stalled >= 2 {
                break;
            }
        }
        val
    }

    /// Coordinate ascent on the magnitudes with phases held fixed, finite
    /// `p`. Each sweep ends with a line search along the sweep's
    /// displacement (a Hooke-Jeeves pattern move); without it the ascent
    /// crawls along the curved valley that appears when `p` is near 1.
    fn refine_magnitudes(&self, theta: &[T], v: &mut [T]) -> T {
        let Exponent::Finite(p) = self.p else { return self.objective(theta, v) };
        let terms: Vec<Complex<T>> = self.g.iter().zip(theta).map(|(&g, &t)| g * cis(t)).collect();
        let mut val = self.objective(theta, v);
        let mut prev = v.to_vec();
        for _ in 0..2000 {
            prev.copy_from_slice(v);
            for j in 0..v.len() {
                let mut rest = Complex::new(T::zero(), T::zero());
                let mut rest_p = T::zero();
                for (i, (&c, &m)) in terms.iter().zip(v.iter()).enumerate() {
                    if i != j {
                        rest += c * m;
                        rest_p += m.powf(p);
                    }
                }
                let hi = T::lit(2.0) * v.iter().fold(T::zero(), |a, &b| a.max(b)).max(T::one());
                let cj = terms[j];
                v[j] = golden_max(T::zero(), hi, |x| {
                    let n = (rest_p + x.powf(p)).powf(p.recip());
                    if n == T::zero() {
                        T::zero()
                    } else {
                        (rest + cj * x).norm() / n
                    }
                });
            }
            let moved = |t: T| -> Vec<T> { prev.iter().zip(v.iter()).map(|(&a, &b)| (a + t * (b - a)).max(T::zero())).collect() };
            let t = golden_max(T::one(), T::lit(8.0), |t| self.objective(theta, &moved(t)));
            let jumped = moved(t);
            if self.objective(theta, &jumped) > self.objective(theta, v) {
                v.copy_from_slice(&jumped);
            }
            let m = v.iter().fold(T::zero(), |a, &b| a.max(b));
            if m > T::zero() {
                v.iter_mut().for_each(|x| *x /= m);
            }
            let next = self.objective(theta, v);
            let done = next - val <= T::lit(1e-15) * next.max(T::one());
            val = val.max(next);
            if done {
                break;
            }
        }
        val
    }
}

/// Golden-section search for the maximizer of a unimodal function on `[lo, hi]`.
fn golden_max<T: Real>(mut lo: T, mut hi: T, f: impl Fn(T) -> T) -> T {
    let r = T::lit(0.618_033_988_749_894_9);
    let mut x1 = hi - r * (hi - lo);
    let mut x2 = lo + r * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    for _ in 0..80 {
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
    let mid = (lo + hi) * T::lit(0.5);
    [lo, mid, hi].into_iter().fold(mid, |b, x| if f(x) > f(b) { x } else { b })
}

/// A seminorm evaluator on sequence vectors.
pub type SeminormFn<'a, T> = &'a dyn Fn(&SeqVector<T>) -> T;

/// `d(v, w) = max_{l >= 1} min(N_l(v - w), 1/l)` over the supplied finite
/// family `N_1, N_2, ...`.
///
/// Each evaluator is spot-checked for absolute homogeneity and subadditivity
/// on 10 seeded random pairs before use.
pub fn seminorm_family_metric<T: Real>(
    v: &SeqVector<T>,
    w: &SeqVector<T>,
    seminorms: &[SeminormFn<'_, T>],
) -> Result<T> {
    check_dim(v.len(), w.len())?;
    if seminorms.is_empty() {
        return Err(Error::InvalidInput("seminorm family must be nonempty".into()));
    }
    for (l, n) in seminorms.iter().enumerate() {
        spot_check_seminorm(*n, v.len()).map_err(|msg| Error::SeminormAxiom(format!("N_{}: {msg}", l + 1)))?;
    }
    let diff = v.sub(w)?;
    let mut d = T::zero();
    for (l, n) in seminorms.iter().enumerate() {
        let cap = T::from_usize_lossy(l + 1).recip();
        d = d.max(n(&diff).min(cap));
    }
    Ok(d)
}

fn spot_check_seminorm<T: Real>(n: SeminormFn<'_, T>, len: usize) -> std::result::Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5e41);
    let rand_vec = |rng: &mut ChaCha8Rng| {
        SeqVector::new(
            (0..len)
                .map(|_| Complex::new(T::lit(rng.gen_range(-1.0..1.0)), T::lit(rng.gen_range(-1.0..1.0))))
                .collect(),
        )
        .expect("finite entries")
    };
    let tol = T::lit(1e-9);
    for _ in 0..10 {
        let a = rand_vec(&mut rng);
        let b = rand_vec(&mut rng);
        let c = Complex::new(T::lit(rng.gen_range(-3.0..3.0)), T::lit(rng.gen_range(-3.0..3.0)));
        let na = n(&a);
        let nb = n(&b);
        if na < T::zero() || !na.is_finite() {
            return Err(format!("negative or non-finite value {na}"));
        }
        let nca = n(&a.scale(c));
        if (nca - c.norm() * na).abs() > tol * (T::one() + c.norm() * na) {
            return Err(format!("not absolutely homogeneous: N(ca) = {nca}, |c| N(a) = {}", c.norm() * na));
        }
        let nab = n(&a.add(&b).expect("same length"));
        if nab > na + nb + tol * (T::one() + na + nb) {
            return Err(format!("not subadditive: N(a+b) = {nab} > {}", na + nb));
        }
    }
    // disjointly supported pairs catch quasi-norms that random pairs miss
    let basis = |i: usize| {
        let mut e = vec![Complex::new(T::zero(), T::zero()); len];
        e[i] = Complex::new(T::one(), T::zero());
        SeqVector::new(e).expect("finite entries")
    };
    for i in 0..len.min(4) {
        for j in (i + 1)..len.min(4) {
            let (a, b) = (basis(i), basis(j));
            let (na, nb) = (n(&a), n(&b));
            let nab = n(&a.add(&b).expect("same length"));
            if nab > na + nb + tol * (T::one() + na + nb) {
                return Err(format!("not subadditive: N(e_{i} + e_{j}) = {nab} > {}", na + nb));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rv(xs: &[f64]) -> SeqVector<f64> {
        SeqVector::from_real(xs).unwrap()
    }

    fn fin(p: f64) -> Exponent<f64> {
        Exponent::new(p).unwrap()
    }

    #[test]
    fn lp_norm_examples() {
        assert_eq!(rv(&[1.0, 1.0, 1.0]).lp_norm(fin(1.0)), 3.0);
        assert!((rv(&[3.0, 4.0]).lp_norm(fin(2.0)) - 5.0).abs() < 1e-15);
        assert_eq!(rv(&[1.0, -2.0, 2.0]).lp_norm(Exponent::Infinity), 2.0);
        assert_eq!(rv(&[0.0, 0.0]).lp_norm(fin(0.5)), 0.0);
    }

    #[test]
    fn lp_norm_survives_extreme_scales() {
        let v = rv(&[1e200, 1e-200, 3e199]);
        let n = v.lp_norm(fin(40.0));
        assert!(n.is_finite() && n >= 1e200);
        let tiny = rv(&[1e-300, 1e-300]);
        assert!((tiny.lp_norm(fin(2.0)) - 2f64.sqrt() * 1e-300).abs() < 1e-313);
    }

    #[test]
    fn exponent_validation() {
        assert!(Exponent::new(0.0).is_err());
        assert!(Exponent::new(-1.0).is_err());
        assert!(Exponent::new(f64::NAN).is_err());
        assert_eq!(Exponent::new(f64::INFINITY).unwrap(), Exponent::Infinity);
    }

    #[test]
    fn conjugate_examples() {
        assert_eq!(fin(2.0).conjugate().unwrap(), fin(2.0));
        assert_eq!(fin(1.0).conjugate().unwrap(), Exponent::Infinity);
        assert_eq!(Exponent::<f64>::Infinity.conjugate().unwrap(), fin(1.0));
        assert!((fin(3.0).conjugate().unwrap().value() - 1.5).abs() < 1e-15);
        assert!(fin(0.5).conjugate().is_err());
    }

    #[test]
    fn pairing_examples() {
        assert_eq!(pairing(&rv(&[1.0, 1.0]), &rv(&[1.0, 1.0])).unwrap().re, 2.0);
        assert_eq!(pairing(&rv(&[1.0, 0.0]), &rv(&[0.0, 1.0])).unwrap().re, 0.0);
        assert!(pairing(&rv(&[1.0]), &rv(&[1.0, 2.0])).is_err());
        // no conjugation
        let i = SeqVector::new(vec![Complex::new(0.0, 1.0)]).unwrap();
        assert_eq!(pairing(&i, &i).unwrap(), Complex::new(-1.0, 0.0));
        assert_eq!(inner_product(&i, &i).unwrap(), Complex::new(1.0, 0.0));
    }

    #[test]
    fn dual_norm_examples() {
        let d = dual_norm(&rv(&[1.0, 1.0]), Exponent::Infinity).unwrap();
        assert!((d.value - 2.0).abs() < 1e-15);
        let d = dual_norm(&rv(&[3.0, 4.0]), fin(2.0)).unwrap();
        assert!((d.value - 5.0).abs() < 1e-14);
        let g = rv(&[2.0, -1.0, 1.0]);
        let d = dual_norm(&g, fin(1.0)).unwrap();
        assert_eq!(d.value, 2.0);
        assert!((brute_force_dual_norm(&g, fin(1.0)).unwrap() - 2.0).abs() < 1e-12);
        assert!(dual_norm(&g, fin(0.5)).is_err());
    }

    #[test]
    fn extremizer_attains_the_dual_norm() {
        let g = SeqVector::new(vec![
            Complex::new(0.3, -1.1),
            Complex::new(0.0, 0.0),
            Complex::new(-2.0, 0.4),
        ])
        .unwrap();
        for p in [fin(1.0), fin(1.3), fin(2.0), fin(5.0), Exponent::Infinity] {
            let d = dual_norm(&g, p).unwrap();
            let val = pairing(&d.extremizer, &g).unwrap();
            assert!((val.re - d.value).abs() < 1e-12 * d.value, "p = {p:?}");
            assert!(val.im.abs() < 1e-12 * d.value);
            assert!((d.extremizer.lp_norm(p) - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn brute_force_agrees_on_small_cases() {
        let g = SeqVector::new(vec![Complex::new(1.0, 2.0), Complex::new(-0.5, 0.25)]).unwrap();
        for p in [fin(1.5), fin(2.0), fin(3.0), Exponent::Infinity] {
            let a = dual_norm(&g, p).unwrap().value;
            let b = brute_force_dual_norm(&g, p).unwrap();
            assert!((a - b).abs() <= 1e-6 * a, "p = {p:?}: {a} vs {b}");
        }
        let g = rv(&[0.7, -1.3, 2.2, 0.1]);
        for p in [fin(4.0 / 3.0), fin(2.5), Exponent::Infinity] {
            let a = dual_norm(&g, p).unwrap().value;
            let b = brute_force_dual_norm(&g, p).unwrap();
            assert!((a - b).abs() <= 1e-6 * a, "p = {p:?}: {a} vs {b}");
        }
    }

    #[test]
    fn seminorm_metric_examples() {
        let sup: &dyn Fn(&SeqVector<f64>) -> f64 = &|f| f.lp_norm(Exponent::Infinity);
        let v = rv(&[1.0, 2.0, 3.0]);
        assert_eq!(seminorm_family_metric(&v, &v, &[sup]).unwrap(), 0.0);
        let w = rv(&[1.0, 2.0, 5.0]);
        assert_eq!(seminorm_family_metric(&v, &w, &[sup]).unwrap(), 1.0);
    }

    #[test]
    fn weighted_sup_family() {
        // N_k(f) = sup_j j^k |f(j)| with j starting at 1
        let fam: Vec<Box<dyn Fn(&SeqVector<f64>) -> f64>> = (0..4)
            .map(|k| {
                Box::new(move |f: &SeqVector<f64>| {
                    f.entries()
                        .iter()
                        .enumerate()
                        .map(|(j, z)| ((j + 1) as f64).powi(k) * z.norm())
                        .fold(0.0, f64::max)
                }) as Box<dyn Fn(&SeqVector<f64>) -> f64>
            })
            .collect();
        let refs: Vec<&dyn Fn(&SeqVector<f64>) -> f64> = fam.iter().map(|b| b.as_ref()).collect();
        let f = rv(&[0.0, 1e-3, 0.0]);
        let g = rv(&[0.0, 0.0, 0.0]);
        let d = seminorm_family_metric(&f, &g, &refs).unwrap();
        let expect = (1..=4)
            .map(|l: i32| (2f64.powi(l - 1) * 1e-3).min(1.0 / l as f64))
            .fold(0.0, f64::max);
        assert!((d - expect).abs() < 1e-15);
        assert!((d - 8e-3).abs() < 1e-15);
    }

    #[test]
    fn rejects_non_seminorm() {
        let bad: &dyn Fn(&SeqVector<f64>) -> f64 = &|f| f.lp_norm(fin(2.0)).powi(2);
        let v = rv(&[1.0]);
        assert!(matches!(seminorm_family_metric(&v, &v, &[bad]), Err(Error::SeminormAxiom(_))));
        let quasi: &dyn Fn(&SeqVector<f64>) -> f64 = &|f| f.lp_norm(fin(0.5));
        let v = rv(&[1.0, 2.0]);
        assert!(seminorm_family_metric(&v, &v, &[quasi]).is_err());
    }
}
