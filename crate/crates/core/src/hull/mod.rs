//! Convex-hull membership with separating functionals, and polynomial
//! hulls of completely circular sets through the convexity of their
//! log-modulus images.
//!
//! Sets are finite samples plus structure flags; every answer comes with a
//! certificate that can be re-checked against the sample.

mod convex;
mod eb;
mod pol;
mod simplex;
mod three_lines;

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{is_finite_c, Real};

pub use convex::{convex_membership, downward_membership, exp_certificate, exp_membership, mu_from_functional};
pub use eb::{eb_dichotomy, eb_exterior_witness, eb_ray_sample, EbParam, EbReport, EbStatus};
pub use pol::{classify_many, monomial_certificate, monomial_sup, poly_hull_membership, rationalize, torus_invariance_check};
pub use three_lines::{boundary_sups, three_lines_check, MultiplicativePath, StripGrid};

/// Finite set of real vectors.
#[derive(Clone, Debug, PartialEq)]
pub struct PointCloud<T: Real> {
    dim: usize,
    points: Vec<Vec<T>>,
}

impl<T: Real> PointCloud<T> {
    pub fn new(points: Vec<Vec<T>>) -> Result<Self> {
        let dim = points.first().ok_or_else(|| Error::InvalidInput("point cloud is empty".into()))?.len();
        for p in &points {
            if p.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: p.len() });
            }
            if !p.iter().all(|x| x.is_finite()) {
                return Err(Error::InvalidInput("points must be finite".into()));
            }
        }
        Ok(PointCloud { dim, points })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn points(&self) -> &[Vec<T>] {
        &self.points
    }

    /// `C^n` sample viewed in `R^{2n}` as `(Re w_1, Im w_1, ...)`.
    pub fn from_complex(sample: &CircularSample<T>) -> Self {
        PointCloud { dim: 2 * sample.n, points: sample.points.iter().map(|w| realify(w)).collect() }
    }
}

pub(crate) fn realify<T: Real>(w: &[Complex<T>]) -> Vec<T> {
    w.iter().flat_map(|z| [z.re, z.im]).collect()
}

/// Finite sample of a set in `C^n`, with structure declared by the caller.
#[derive(Clone, Debug, PartialEq)]
pub struct CircularSample<T: Real> {
    n: usize,
    points: Vec<Vec<Complex<T>>>,
    /// The set is taken to be closed under `w -> (u_1 w_1, ..., u_n w_n)`, `|u_j| <= 1`.
    pub completely_circular: bool,
    pub bounded: bool,
}

impl<T: Real> CircularSample<T> {
    pub fn new(points: Vec<Vec<Complex<T>>>, completely_circular: bool, bounded: bool) -> Result<Self> {
        let n = points.first().ok_or_else(|| Error::InvalidInput("sample is empty".into()))?.len();
        for p in &points {
            if p.len() != n {
                return Err(Error::DimensionMismatch { expected: n, found: p.len() });
            }
            if !p.iter().all(|z| is_finite_c(*z)) {
                return Err(Error::InvalidInput("sample points must be finite".into()));
            }
        }
        Ok(CircularSample { n, points, completely_circular, bounded })
    }

    /// Products of the given per-coordinate moduli with a grid of `phases`
    /// unit-modulus factors in every coordinate.
    pub fn from_moduli(moduli: &[Vec<T>], phases: usize) -> Result<Self> {
        let n = moduli.first().map_or(0, |m| m.len());
        let phases = phases.max(1);
        let mut points = Vec::new();
        for m in moduli {
            for flat in 0..phases.pow(n as u32) {
                let mut rest = flat;
                let w: Vec<Complex<T>> = m
                    .iter()
                    .map(|&r| {
                        let k = rest % phases;
                        rest /= phases;
                        Complex::from_polar(r, T::two_pi() * T::from_usize_lossy(k) / T::from_usize_lossy(phases))
                    })
                    .collect();
                points.push(w);
            }
        }
        Self::new(points, true, true)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn points(&self) -> &[Vec<Complex<T>>] {
        &self.points
    }
}

/// `A_I`: log-moduli `(log|w_j|)_{j in I}` of the samples with `w_j != 0`
/// for every `j` in the pattern `I`.
#[derive(Clone, Debug, PartialEq)]
pub struct LogRegion<T: Real> {
    pub pattern: Vec<usize>,
    pub points: Vec<Vec<T>>,
    /// Index of each point's sample.
    pub sources: Vec<usize>,
}

impl<T: Real> LogRegion<T> {
    pub fn from_sample(sample: &CircularSample<T>, pattern: &[usize]) -> Self {
        let mut points = Vec::new();
        let mut sources = Vec::new();
        for (k, w) in sample.points.iter().enumerate() {
            if pattern.iter().all(|&j| w[j].norm() > T::zero()) {
                points.push(pattern.iter().map(|&j| w[j].norm().ln()).collect());
                sources.push(k);
            }
        }
        LogRegion { pattern: pattern.to_vec(), points, sources }
    }
}

/// The point a certificate speaks about.
#[derive(Clone, Debug, PartialEq)]
pub enum Query<T: Real> {
    /// Membership in the convex hull of a point cloud.
    Point(Vec<T>),
    /// Membership in the downward closure `Con(A) - R_+^d` of a point cloud.
    Dominated(Vec<T>),
    /// Membership of `z` in the polynomial hull of a complex sample.
    Complex(Vec<Complex<T>>),
}

#[derive(Clone, Debug, PartialEq)]
pub enum Evidence<T: Real> {
    /// Weights on sample points (by index). For complex queries the
    /// combination lives in log-modulus coordinates over the support
    /// pattern of `z`.
    InsideConvexCombination { weights: Vec<T>, support: Vec<usize>, residual: T },
    /// `lambda(y) = <y, lambda>` with `lambda(x) - max_S lambda = margin`.
    SeparatingFunctional { lambda: Vec<T>, margin: T },
    /// `log|z^alpha| > log sup_E |w^alpha|`; logs keep large exponents finite.
    MonomialWitness { alpha: Vec<u32>, log_sup_on_e: T, log_value_at_z: T },
    /// `|1 + t mu(z)| > sup_E |1 + t mu(w)|` with `mu(w) = sum mu_j w_j`.
    ExponentialWitness { mu: Vec<Complex<T>>, t: T, boundary_sup: T, value_at_z: T },
}

#[derive(Clone, Debug, PartialEq)]
pub struct HullCertificate<T: Real> {
    pub query: Query<T>,
    pub tol: T,
    pub evidence: Evidence<T>,
}

fn fail<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::CertificateFailure(msg.into()))
}

/// Relative agreement used when re-deriving recorded numbers.
fn close<T: Real>(a: T, b: T) -> bool {
    if a == b {
        return true;
    }
    (a - b).abs() <= T::lit(1e-9) * (T::one() + a.abs().max(b.abs()))
}

/// Inside threshold: `residual^2 <= tol (1 + |x|)`, or reproduction to
/// `1e-9 (1 + |x|)`.
pub(crate) fn inside_ok<T: Real>(residual: T, tol: T, x_norm: T) -> bool {
    let s = T::one() + x_norm;
    residual * residual <= tol * s || residual <= T::lit(1e-9) * s
}

fn check_weights<T: Real>(weights: &[T], support: &[usize], len: usize) -> Result<()> {
    if weights.len() != support.len() || weights.is_empty() {
        return fail("weights and support differ in length");
    }
    if support.iter().any(|&i| i >= len) {
        return fail("support index outside the sample");
    }
    if weights.iter().any(|&w| !(w >= T::zero())) {
        return fail("negative weight");
    }
    let total: T = weights.iter().copied().sum();
    if (total - T::one()).abs() > T::lit(1e-12) * T::from_usize_lossy(weights.len()).max(T::one()) {
        return fail(format!("weights sum to {total}"));
    }
    Ok(())
}

pub(crate) fn log_monomial<T: Real>(w: &[Complex<T>], alpha: &[u32]) -> T {
    let mut acc = T::zero();
    for (z, &a) in w.iter().zip(alpha) {
        if a > 0 {
            let m = z.norm();
            if m == T::zero() {
                return T::neg_infinity();
            }
            acc += T::from_usize_lossy(a as usize) * m.ln();
        }
    }
    acc
}

pub(crate) fn affine_modulus<T: Real>(mu: &[Complex<T>], t: T, w: &[Complex<T>]) -> T {
    let m: Complex<T> = mu.iter().zip(w).map(|(a, b)| a * b).sum();
    (Complex::new(T::one(), T::zero()) + m * t).norm()
}

impl<T: Real> HullCertificate<T> {
    pub fn is_inside(&self) -> bool {
        matches!(self.evidence, Evidence::InsideConvexCombination { .. })
    }

    /// Re-checks a certificate about a real query against the cloud.
    pub fn verify_cloud(&self, cloud: &PointCloud<T>) -> Result<()> {
        let (x, dominated) = match &self.query {
            Query::Point(x) => (x, false),
            Query::Dominated(x) => (x, true),
            Query::Complex(_) => return fail("complex query checked against a real point cloud"),
        };
        if x.len() != cloud.dim {
            return Err(Error::DimensionMismatch { expected: cloud.dim, found: x.len() });
        }
        let xn = simplex::norm(x);
        match &self.evidence {
            Evidence::InsideConvexCombination { weights, support, residual } => {
                check_weights(weights, support, cloud.points.len())?;
                if !dominated && support.len() > cloud.dim + 1 {
                    return fail("more than d + 1 support points");
                }
                let mut y = vec![T::zero(); x.len()];
                for (&w, &i) in weights.iter().zip(support) {
                    for (yj, pj) in y.iter_mut().zip(&cloud.points[i]) {
                        *yj += w * *pj;
                    }
                }
                let target = if dominated { simplex::Target::Dominated } else { simplex::Target::Point };
                let r = simplex::norm(&simplex::residual(target, x, &y));
                if !close(r, *residual) && r > *residual {
                    return fail(format!("recorded residual {residual}, recomputed {r}"));
                }
                if !inside_ok(r, self.tol, xn) {
                    return fail(format!("combination misses the point by {r}"));
                }
                Ok(())
            }
            Evidence::SeparatingFunctional { lambda, margin } => {
                if lambda.len() != x.len() {
                    return Err(Error::DimensionMismatch { expected: x.len(), found: lambda.len() });
                }
                if dominated && lambda.iter().any(|&l| l < T::zero()) {
                    return fail("functional separating a downward closure must be nonnegative");
                }
                let top = cloud.points.iter().map(|p| simplex::dot(lambda, p)).fold(T::neg_infinity(), T::max);
                let m = simplex::dot(lambda, x) - top;
                if !close(m, *margin) {
                    return fail(format!("recorded margin {margin}, recomputed {m}"));
                }
                if !(m > self.tol * (T::one() + xn)) {
                    return fail(format!("margin {m} does not exceed the tolerance"));
                }
                Ok(())
            }
            _ => fail("polynomial-hull evidence checked against a real point cloud"),
        }
    }

    /// Re-checks a certificate about a point of `C^n` against the sample.
    pub fn verify_sample(&self, sample: &CircularSample<T>) -> Result<()> {
        let Query::Complex(z) = &self.query else {
            return fail("real query checked against a complex sample");
        };
        if z.len() != sample.n {
            return Err(Error::DimensionMismatch { expected: sample.n, found: z.len() });
        }
        match &self.evidence {
            Evidence::InsideConvexCombination { weights, support, residual } => {
                if !sample.completely_circular {
                    return fail("log-domain combinations need a completely circular sample");
                }
                check_weights(weights, support, sample.points.len())?;
                let pattern: Vec<usize> = (0..z.len()).filter(|&j| z[j].norm() > T::zero()).collect();
                let zeta: Vec<T> = pattern.iter().map(|&j| z[j].norm().ln()).collect();
                let mut y = vec![T::zero(); pattern.len()];
                for (&w, &i) in weights.iter().zip(support) {
                    for (yj, &j) in y.iter_mut().zip(&pattern) {
                        let m = sample.points[i][j].norm();
                        if m == T::zero() {
                            return fail("support sample vanishes on the pattern of z");
                        }
                        *yj += w * m.ln();
                    }
                }
                let r = simplex::norm(&simplex::residual(simplex::Target::Dominated, &zeta, &y));
                if !close(r, *residual) && r > *residual {
                    return fail(format!("recorded residual {residual}, recomputed {r}"));
                }
                if !inside_ok(r, self.tol, simplex::norm(&zeta)) {
                    return fail(format!("log-moduli exceed the combination by {r}"));
                }
                Ok(())
            }
            Evidence::MonomialWitness { alpha, log_sup_on_e, log_value_at_z } => {
                if alpha.len() != z.len() || alpha.iter().all(|&a| a == 0) {
                    return fail("monomial exponent must be nonzero and match the dimension");
                }
                let value = log_monomial(z, alpha);
                let sup = sample.points.iter().map(|w| log_monomial(w, alpha)).fold(T::neg_infinity(), T::max);
                if !close(value, *log_value_at_z) || !(close(sup, *log_sup_on_e) || sup == *log_sup_on_e) {
                    return fail("recorded monomial values do not match the sample");
                }
                if !(value > sup) {
                    return fail(format!("|z^alpha| does not exceed the sample sup (logs {value} vs {sup})"));
                }
                Ok(())
            }
            Evidence::ExponentialWitness { mu, t, boundary_sup, value_at_z } => {
                if mu.len() != z.len() || !(*t > T::zero()) {
                    return fail("malformed exponential witness");
                }
                let value = affine_modulus(mu, *t, z);
                let sup = sample.points.iter().map(|w| affine_modulus(mu, *t, w)).fold(T::zero(), T::max);
                if !close(value, *value_at_z) || !close(sup, *boundary_sup) {
                    return fail("recorded witness values do not match the sample");
                }
                if !(value > sup) {
                    return fail(format!("|1 + t mu(z)| = {value} does not exceed the sample sup {sup}"));
                }
                Ok(())
            }
            Evidence::SeparatingFunctional { .. } => fail("separating functionals certify real queries"),
        }
    }
}
