use num_complex::Complex;
use num_integer::Integer;
use rayon::prelude::*;

use super::convex::downward_membership;
use super::{log_monomial, CircularSample, Evidence, HullCertificate, LogRegion, Query};
use crate::error::{Error, Result};
use crate::multiindex::MultiIndex;
use crate::scalar::{is_finite_c, Real};

/// `max_w |w^alpha|` over the samples (`alpha = 0` gives 1).
pub fn monomial_sup<T: Real>(sample: &CircularSample<T>, alpha: &MultiIndex) -> Result<T> {
    if alpha.dim() != sample.n() {
        return Err(Error::DimensionMismatch { expected: sample.n(), found: alpha.dim() });
    }
    Ok(sample.points().iter().map(|w| log_monomial(w, alpha.exponents())).fold(T::neg_infinity(), T::max).exp())
}

/// Monomial certificate for `alpha`, computed in logs; fails unless
/// `|z^alpha|` strictly exceeds the sample sup.
pub fn monomial_certificate<T: Real>(z: &[Complex<T>], alpha: &[u32], sample: &CircularSample<T>) -> Result<HullCertificate<T>> {
    let log_value_at_z = log_monomial(z, alpha);
    let log_sup_on_e = sample.points().iter().map(|w| log_monomial(w, alpha)).fold(T::neg_infinity(), T::max);
    if !(log_value_at_z > log_sup_on_e) {
        return Err(Error::CertificateFailure(format!(
            "monomial {alpha:?} does not separate: log|z^alpha| = {log_value_at_z}, log sup = {log_sup_on_e}"
        )));
    }
    Ok(HullCertificate {
        query: Query::Complex(z.to_vec()),
        tol: T::zero(),
        evidence: Evidence::MonomialWitness { alpha: alpha.to_vec(), log_sup_on_e, log_value_at_z },
    })
}

/// Best rational approximation `p/q` of `x >= 0` with `q <= cap`, from the
/// continued-fraction convergents.
fn convergent(x: f64, cap: u64) -> (u64, u64) {
    let (mut p0, mut q0, mut p1, mut q1) = (0u64, 1u64, 1u64, 0u64);
    let mut r = x;
    for _ in 0..64 {
        let a = r.floor();
        if a > 1e15 {
            break;
        }
        let a = a as u64;
        let (Some(p2), Some(q2)) = (a.checked_mul(p1).and_then(|v| v.checked_add(p0)), a.checked_mul(q1).and_then(|v| v.checked_add(q0)))
        else {
            break;
        };
        if q2 > cap {
            break;
        }
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
        let frac = r - a as f64;
        if frac < 1e-15 {
            break;
        }
        r = 1.0 / frac;
    }
    if q1 == 0 {
        (x.round() as u64, 1)
    } else {
        (p1, q1)
    }
}

const EXPONENT_CAP: u64 = 1_000_000;

/// Integer exponents proportional (approximately) to a nonnegative `lambda`.
///
/// The ratios `lambda_j / max lambda` are replaced by convergents with
/// denominators at most `cap`, scaled by the least common denominator.
/// Caps double from 1 up to `10^6` (the exponent cap); `accept` decides
/// each candidate and the first accepted one is returned.
pub fn rationalize(lambda: &[f64], mut accept: impl FnMut(&[u32]) -> bool) -> Option<Vec<u32>> {
    let top = lambda.iter().copied().fold(0.0f64, f64::max);
    if !(top > 0.0) || lambda.iter().any(|&l| l < 0.0 || !l.is_finite()) {
        return None;
    }
    let mut cap = 1u64;
    let mut last: Option<Vec<u32>> = None;
    while cap <= EXPONENT_CAP {
        let fracs: Vec<(u64, u64)> = lambda.iter().map(|&l| convergent(l / top, cap)).collect();
        let den = fracs.iter().fold(1u64, |acc, &(_, q)| acc.lcm(&q));
        if den <= EXPONENT_CAP {
            let alpha: Vec<u32> = fracs.iter().map(|&(p, q)| (p * (den / q)) as u32).collect();
            if last.as_ref() != Some(&alpha) {
                if accept(&alpha) {
                    return Some(alpha);
                }
                last = Some(alpha);
            }
        }
        cap *= 2;
    }
    None
}

/// Decides whether `z` lies in the polynomial hull of the completely
/// circular set generated by the sample.
///
/// With `I` the support of `z`: if no sample is nonzero on all of `I`,
/// the monomial `prod_{j in I} w_j` separates. Otherwise `z` is inside iff
/// `(log|z_j|)_{j in I}` lies in the downward-closed convex hull of `A_I`;
/// outside, the nonnegative separating functional is rationalized into a
/// monomial witness.
pub fn poly_hull_membership<T: Real>(z: &[Complex<T>], sample: &CircularSample<T>, tol: T) -> Result<HullCertificate<T>> {
    if !sample.completely_circular || !sample.bounded {
        return Err(Error::NotApplicable("polynomial hulls are computed for bounded completely circular samples".into()));
    }
    if z.len() != sample.n() {
        return Err(Error::DimensionMismatch { expected: sample.n(), found: z.len() });
    }
    if !z.iter().all(|v| is_finite_c(*v)) {
        return Err(Error::InvalidInput("query point must be finite".into()));
    }
    let pattern: Vec<usize> = (0..z.len()).filter(|&j| z[j].norm() > T::zero()).collect();
    if pattern.is_empty() {
        // 0 lies in every nonempty completely circular set
        return Ok(HullCertificate {
            query: Query::Complex(z.to_vec()),
            tol,
            evidence: Evidence::InsideConvexCombination { weights: vec![T::one()], support: vec![0], residual: T::zero() },
        });
    }
    let region = LogRegion::from_sample(sample, &pattern);
    if region.points.is_empty() {
        let alpha: Vec<u32> = (0..z.len()).map(|j| pattern.contains(&j) as u32).collect();
        return monomial_certificate(z, &alpha, sample);
    }
    let zeta: Vec<T> = pattern.iter().map(|&j| z[j].norm().ln()).collect();
    let cert = downward_membership(&zeta, &region, tol)?;
    match cert.evidence {
        Evidence::InsideConvexCombination { weights, support, residual } => Ok(HullCertificate {
            query: Query::Complex(z.to_vec()),
            tol,
            evidence: Evidence::InsideConvexCombination {
                weights,
                support: support.into_iter().map(|k| region.sources[k]).collect(),
                residual,
            },
        }),
        Evidence::SeparatingFunctional { lambda, .. } => {
            let lam: Vec<f64> = lambda.iter().map(|l| l.to_f64_lossy()).collect();
            let mut found = None;
            rationalize(&lam, |a| {
                let mut alpha = vec![0u32; z.len()];
                for (&j, &aj) in pattern.iter().zip(a) {
                    alpha[j] = aj;
                }
                match monomial_certificate(z, &alpha, sample) {
                    Ok(c) => {
                        found = Some(c);
                        true
                    }
                    Err(_) => false,
                }
            });
            found.ok_or_else(|| {
                Error::CertificateFailure(format!("no integer exponent up to {EXPONENT_CAP} verifies against the sample"))
            })
        }
        _ => unreachable!("downward membership returns a combination or a functional"),
    }
}

/// Membership of many points, in parallel.
pub fn classify_many<T: Real>(zs: &[Vec<Complex<T>>], sample: &CircularSample<T>, tol: T) -> Vec<Result<HullCertificate<T>>> {
    zs.par_iter().map(|z| poly_hull_membership(z, sample, tol)).collect()
}

/// Whether every `T_t(z) = (t_1 z_1, ..., t_n z_n)` gets the same decision
/// as `z`. Each `t_j` must have unit modulus to `1e-12`.
pub fn torus_invariance_check<T: Real>(
    sample: &CircularSample<T>,
    z: &[Complex<T>],
    ts: &[Vec<Complex<T>>],
    tol: T,
) -> Result<bool> {
    let base = poly_hull_membership(z, sample, tol)?.is_inside();
    for t in ts {
        if t.len() != z.len() {
            return Err(Error::DimensionMismatch { expected: z.len(), found: t.len() });
        }
        if t.iter().any(|u| (u.norm() - T::one()).abs() > T::lit(1e-12)) {
            return Err(Error::InvalidInput("torus elements must have unit modulus".into()));
        }
        let moved: Vec<Complex<T>> = t.iter().zip(z).map(|(u, w)| u * w).collect();
        if poly_hull_membership(&moved, sample, tol)?.is_inside() != base {
            return Ok(false);
        }
    }
    Ok(true)
}
