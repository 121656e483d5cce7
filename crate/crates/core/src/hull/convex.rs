use num_complex::Complex;

use super::simplex::{self, caratheodory, project, Target};
use super::{affine_modulus, inside_ok, realify, CircularSample, Evidence, HullCertificate, LogRegion, PointCloud, Query};
use crate::error::{Error, Result};
use crate::scalar::Real;

fn check_tol<T: Real>(tol: T) -> Result<()> {
    if !(tol > T::zero()) || !tol.is_finite() {
        return Err(Error::NonPositiveParameter(format!("tolerance {tol}")));
    }
    Ok(())
}

/// Distinct points and, for each, the index of its first occurrence.
fn dedupe<T: Real>(points: &[Vec<T>]) -> (Vec<Vec<T>>, Vec<usize>) {
    let mut unique: Vec<Vec<T>> = Vec::new();
    let mut origin = Vec::new();
    for (i, p) in points.iter().enumerate() {
        if !unique.iter().any(|q| q == p) {
            unique.push(p.clone());
            origin.push(i);
        }
    }
    (unique, origin)
}

/// Projects, then reads off the decision: the residual direction separates
/// with margin `lambda(x) - max lambda` (the squared distance at the
/// optimum); margins within `tol (1 + |x|)` count as inside.
fn decide<T: Real>(points: &[Vec<T>], x: &[T], target: Target, tol: T) -> Result<Evidence<T>> {
    let (unique, origin) = dedupe(points);
    let proj = project(&unique, x, target, tol)?;
    let lambda = proj.residual;
    let top = unique.iter().map(|p| simplex::dot(&lambda, p)).fold(T::neg_infinity(), T::max);
    let margin = simplex::dot(&lambda, x) - top;
    let xn = simplex::norm(x);
    if margin > tol * (T::one() + xn) && !inside_ok(simplex::norm(&lambda), tol, xn) {
        return Ok(Evidence::SeparatingFunctional { lambda, margin });
    }
    let mut weights = proj.weights;
    caratheodory(&unique, &mut weights);
    let mut y = vec![T::zero(); x.len()];
    let mut w_out = Vec::new();
    let mut support = Vec::new();
    for (k, &w) in weights.iter().enumerate() {
        if w > T::zero() {
            for (yj, pj) in y.iter_mut().zip(&unique[k]) {
                *yj += w * *pj;
            }
            w_out.push(w);
            support.push(origin[k]);
        }
    }
    let residual = simplex::norm(&simplex::residual(target, x, &y));
    Ok(Evidence::InsideConvexCombination { weights: w_out, support, residual })
}

/// Decides `x in Con(S)`.
///
/// Inside: a convex combination of at most `d + 1` sample points (after
/// Caratheodory reduction). Outside: `lambda = x - u` with `u` the
/// projection of `x` onto the hull, margin above `tol (1 + |x|)`.
pub fn convex_membership<T: Real>(x: &[T], cloud: &PointCloud<T>, tol: T) -> Result<HullCertificate<T>> {
    check_tol(tol)?;
    if x.len() != cloud.dim() {
        return Err(Error::DimensionMismatch { expected: cloud.dim(), found: x.len() });
    }
    if !x.iter().all(|v| v.is_finite()) {
        return Err(Error::InvalidInput("query point must be finite".into()));
    }
    let evidence = decide(cloud.points(), x, Target::Point, tol)?;
    Ok(HullCertificate { query: Query::Point(x.to_vec()), tol, evidence })
}

/// Decides `r <= c` for some `c in Con(A)`. Separating functionals are
/// nonnegative. Support indices refer to `region.points`.
pub fn downward_membership<T: Real>(r: &[T], region: &LogRegion<T>, tol: T) -> Result<HullCertificate<T>> {
    check_tol(tol)?;
    if region.points.is_empty() {
        return Err(Error::InvalidInput("log region has no points".into()));
    }
    if r.len() != region.pattern.len() {
        return Err(Error::DimensionMismatch { expected: region.pattern.len(), found: r.len() });
    }
    let evidence = decide(&region.points, r, Target::Dominated, tol)?;
    Ok(HullCertificate { query: Query::Dominated(r.to_vec()), tol, evidence })
}

/// `mu_j = lambda_{2j} - i lambda_{2j+1}`, so that `Re mu(w) = <lambda, (Re w, Im w)>`.
pub fn mu_from_functional<T: Real>(lambda: &[T]) -> Vec<Complex<T>> {
    lambda.chunks(2).map(|c| Complex::new(c[0], -c[1])).collect()
}

/// `|1 + t mu(z)| > sup_E |1 + t mu(w)|` from a complex-linear `mu` with
/// `sup_E Re mu < Re mu(z)`, taking
/// `t = min(1, gap / (2C + 2|mu(z)|^2 + 1))`, `C = sup_E |mu|^2`.
pub fn exp_certificate<T: Real>(z: &[Complex<T>], sample: &CircularSample<T>, mu: &[Complex<T>]) -> Result<HullCertificate<T>> {
    if z.len() != sample.n() || mu.len() != sample.n() {
        return Err(Error::DimensionMismatch { expected: sample.n(), found: z.len().max(mu.len()) });
    }
    let apply = |w: &[Complex<T>]| -> Complex<T> { mu.iter().zip(w).map(|(a, b)| a * b).sum() };
    let mz = apply(z);
    let sup_re = sample.points().iter().map(|w| apply(w).re).fold(T::neg_infinity(), T::max);
    if !(mz.re > sup_re) {
        return Err(Error::NotApplicable("Re mu does not separate z from the sample".into()));
    }
    let c = sample.points().iter().map(|w| apply(w).norm_sqr()).fold(T::zero(), T::max);
    let t = T::one().min((mz.re - sup_re) / (T::lit(2.0) * c + T::lit(2.0) * mz.norm_sqr() + T::one()));
    let value_at_z = affine_modulus(mu, t, z);
    let boundary_sup = sample.points().iter().map(|w| affine_modulus(mu, t, w)).fold(T::zero(), T::max);
    if !(value_at_z > boundary_sup) {
        return Err(Error::CertificateFailure(format!(
            "exponential witness fails: {value_at_z} <= {boundary_sup}"
        )));
    }
    Ok(HullCertificate {
        query: Query::Complex(z.to_vec()),
        tol: T::zero(),
        evidence: Evidence::ExponentialWitness { mu: mu.to_vec(), t, boundary_sup, value_at_z },
    })
}

/// Separates `z` from the convex hull of the sample in `R^{2n}` and turns
/// the functional into an exponential witness. Points of the closed convex
/// hull get `NotApplicable`.
pub fn exp_membership<T: Real>(z: &[Complex<T>], sample: &CircularSample<T>, tol: T) -> Result<HullCertificate<T>> {
    let cloud = PointCloud::from_complex(sample);
    let cert = convex_membership(&realify(z), &cloud, tol)?;
    match cert.evidence {
        Evidence::SeparatingFunctional { lambda, .. } => exp_certificate(z, sample, &mu_from_functional(&lambda)),
        _ => Err(Error::NotApplicable("z lies in the closed convex hull of the sample".into())),
    }
}
