//! Sparse polynomials and truncated power series over `C^n`.

use std::collections::BTreeMap;

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::multiindex::{check_dim, falling_factorial, monomial_eval, multinomial, MultiIndex};
use crate::scalar::Real;

/// Finite linear combination of monomials `sum a_alpha z^alpha`.
///
/// Terms with a coefficient of exactly zero are never stored.
#[derive(Clone, Debug, PartialEq)]
pub struct Polynomial<T: Real> {
    dim: usize,
    terms: BTreeMap<MultiIndex, Complex<T>>,
}

impl<T: Real> Polynomial<T> {
    pub fn zero(dim: usize) -> Self {
        assert!(dim > 0, "polynomial dimension must be positive");
        Polynomial { dim, terms: BTreeMap::new() }
    }

    pub fn constant(dim: usize, c: Complex<T>) -> Self {
        Self::monomial(MultiIndex::zero(dim), c)
    }

    pub fn monomial(alpha: MultiIndex, c: Complex<T>) -> Self {
        let mut p = Self::zero(alpha.dim());
        p.add_term(alpha, c);
        p
    }

    /// Builds a polynomial from `(alpha, coefficient)` pairs, summing repeated
    /// keys.
    pub fn from_terms<I>(dim: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (MultiIndex, Complex<T>)>,
    {
        let mut p = Self::zero(dim);
        for (alpha, c) in terms {
            check_dim(dim, alpha.dim())?;
            p.add_term(alpha, c);
        }
        Ok(p)
    }

    fn add_term(&mut self, alpha: MultiIndex, c: Complex<T>) {
        let entry = self.terms.entry(alpha).or_insert_with(|| Complex::new(T::zero(), T::zero()));
        *entry += c;
        self.purge();
    }

    fn purge(&mut self) {
        let zero = Complex::new(T::zero(), T::zero());
        self.terms.retain(|_, c| *c != zero);
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in graded-lexicographic order.
    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Complex<T>)> {
        self.terms.iter()
    }

    pub fn coeff(&self, alpha: &MultiIndex) -> Complex<T> {
        self.terms.get(alpha).copied().unwrap_or_else(|| Complex::new(T::zero(), T::zero()))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> Option<u64> {
        self.terms.keys().map(MultiIndex::degree).max()
    }

    pub fn eval(&self, z: &[Complex<T>]) -> Result<Complex<T>> {
        check_dim(self.dim, z.len())?;
        let mut acc = Complex::new(T::zero(), T::zero());
        for (alpha, c) in &self.terms {
            acc += *c * monomial_eval(z, alpha)?;
        }
        Ok(acc)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        check_dim(self.dim, other.dim)?;
        let mut out = self.clone();
        for (alpha, c) in &other.terms {
            let e = out.terms.entry(alpha.clone()).or_insert_with(|| Complex::new(T::zero(), T::zero()));
            *e += *c;
        }
        out.purge();
        Ok(out)
    }

    pub fn scale(&self, s: Complex<T>) -> Self {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c *= s;
        }
        out.purge();
        out
    }

    /// Cauchy product: `c_gamma = sum_{alpha + beta = gamma} a_alpha b_beta`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        check_dim(self.dim, other.dim)?;
        let mut out: BTreeMap<MultiIndex, Complex<T>> = BTreeMap::new();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let g = a.checked_add(b)?;
                let e = out.entry(g).or_insert_with(|| Complex::new(T::zero(), T::zero()));
                *e += *ca * *cb;
            }
        }
        let mut p = Polynomial { dim: self.dim, terms: out };
        p.purge();
        Ok(p)
    }

    /// `partial^alpha p`, term by term.
    pub fn derivative(&self, alpha: &MultiIndex) -> Result<Self> {
        check_dim(self.dim, alpha.dim())?;
        let mut out = BTreeMap::new();
        for (beta, c) in &self.terms {
            let Some(rest) = beta.checked_sub(alpha) else { continue };
            let factor: u128 = beta
                .exponents()
                .iter()
                .zip(alpha.exponents())
                .map(|(&b, &a)| falling_factorial(b, a))
                .product();
            out.insert(rest, *c * T::lit(factor as f64));
        }
        let mut p = Polynomial { dim: self.dim, terms: out };
        p.purge();
        Ok(p)
    }
}

/// General Leibniz rule:
/// `partial^alpha (p q) = sum_{beta + gamma = alpha} alpha!/(beta! gamma!) partial^beta p partial^gamma q`.
pub fn leibniz_expand<T: Real>(p: &Polynomial<T>, q: &Polynomial<T>, alpha: &MultiIndex) -> Result<Polynomial<T>> {
    check_dim(p.dim(), q.dim())?;
    check_dim(p.dim(), alpha.dim())?;
    let mut acc = Polynomial::zero(p.dim());
    for (beta, gamma) in alpha.splits() {
        let m = multinomial(alpha, &beta, &gamma)?;
        let term = p.derivative(&beta)?.mul(&q.derivative(&gamma)?)?;
        acc = acc.add(&term.scale(Complex::new(T::lit(m as f64), T::zero())))?;
    }
    Ok(acc)
}

/// Power series truncated at total degree `max_degree`.
#[derive(Clone, Debug, PartialEq)]
pub struct PowerSeriesTrunc<T: Real> {
    dim: usize,
    max_degree: u32,
    terms: BTreeMap<MultiIndex, Complex<T>>,
}

impl<T: Real> PowerSeriesTrunc<T> {
    pub fn new<I>(dim: usize, max_degree: u32, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (MultiIndex, Complex<T>)>,
    {
        let mut map = BTreeMap::new();
        for (alpha, c) in terms {
            check_dim(dim, alpha.dim())?;
            if alpha.degree() > max_degree as u64 {
                return Err(Error::OutOfRange(format!(
                    "term of degree {} exceeds truncation {}",
                    alpha.degree(),
                    max_degree
                )));
            }
            let e = map.entry(alpha).or_insert_with(|| Complex::new(T::zero(), T::zero()));
            *e += c;
        }
        let zero = Complex::new(T::zero(), T::zero());
        map.retain(|_, c| *c != zero);
        Ok(PowerSeriesTrunc { dim, max_degree, terms: map })
    }

    /// Drops every term of `p` above `max_degree`.
    pub fn from_polynomial(p: &Polynomial<T>, max_degree: u32) -> Self {
        let terms = p
            .terms()
            .filter(|(a, _)| a.degree() <= max_degree as u64)
            .map(|(a, c)| (a.clone(), *c))
            .collect();
        PowerSeriesTrunc { dim: p.dim(), max_degree, terms }
    }

    /// `sum_{l <= D} z^l` in one variable.
    pub fn geometric(max_degree: u32) -> Self {
        let one = Complex::new(T::one(), T::zero());
        Self::new(1, max_degree, (0..=max_degree).map(|l| (MultiIndex::new(vec![l]), one)))
            .expect("valid geometric series")
    }

    /// `sum_{l <= D} z^l / l!` in one variable.
    pub fn exponential(max_degree: u32) -> Self {
        let mut c = T::one();
        let mut terms = Vec::new();
        for l in 0..=max_degree {
            if l > 0 {
                c /= T::from_usize_lossy(l as usize);
            }
            terms.push((MultiIndex::new(vec![l]), Complex::new(c, T::zero())));
        }
        Self::new(1, max_degree, terms).expect("valid exponential series")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Complex<T>)> {
        self.terms.iter()
    }

    pub fn to_polynomial(&self) -> Polynomial<T> {
        Polynomial::from_terms(self.dim, self.terms.iter().map(|(a, c)| (a.clone(), *c)))
            .expect("keys share the series dimension")
    }

    /// `p_l(z) = sum_{|alpha| = l} a_alpha z^alpha` for `l = 0..=max_degree`.
    pub fn homogeneous_parts(&self) -> Vec<Polynomial<T>> {
        let mut parts: Vec<Polynomial<T>> = (0..=self.max_degree).map(|_| Polynomial::zero(self.dim)).collect();
        for (alpha, c) in &self.terms {
            parts[alpha.degree() as usize].terms.insert(alpha.clone(), *c);
        }
        parts
    }

    /// Finite-order surrogate for `limsup_l |p_l(z)|^{1/l}`: the maximum of
    /// `|p_l(z)|^{1/l}` over `l` in `[ceil(D/2), D]`. This is an estimate, not
    /// the limit itself.
    pub fn root_test_estimate(&self, z: &[Complex<T>]) -> Result<T> {
        if self.max_degree < 4 {
            return Err(Error::OutOfRange(format!(
                "root test needs max degree >= 4, have {}",
                self.max_degree
            )));
        }
        check_dim(self.dim, z.len())?;
        let parts = self.homogeneous_parts();
        let lo = self.max_degree.div_ceil(2).max(1);
        let mut best = T::zero();
        for l in lo..=self.max_degree {
            let v = parts[l as usize].eval(z)?.norm();
            let r = if v == T::zero() {
                T::zero()
            } else {
                (v.ln() / T::from_usize_lossy(l as usize)).exp()
            };
            best = best.max(r);
        }
        Ok(best)
    }
}

/// Partial sum of the exponential series with its truncation bound.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ExpSeries<T: Real> {
    pub value: Complex<T>,
    /// `|z|^{N+1}/(N+1)! * E(|z|)`, an upper bound for `|E(z) - value|`.
    pub remainder_bound: T,
    pub order: usize,
}

/// `E(z) = sum_{j <= N} z^j / j!` together with its remainder bound.
pub fn exp_series<T: Real>(z: Complex<T>, order: usize) -> ExpSeries<T> {
    let mut term = Complex::new(T::one(), T::zero());
    let mut sum = term;
    for j in 1..=order {
        term = term * z / T::from_usize_lossy(j);
        sum += term;
    }
    let r = z.norm();
    // |z|^{N+1}/(N+1)! built incrementally so it cannot overflow early
    let mut tail = T::one();
    for j in 1..=order + 1 {
        tail = tail * r / T::from_usize_lossy(j);
    }
    ExpSeries { value: sum, remainder_bound: tail * r.exp(), order }
}
